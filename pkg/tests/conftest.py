import pytest

from fusionrules import (
    builtin_group,
    builtin_group_names,
    drinfeld_double,
    fixture_names,
    named_fixture,
    pointed,
    su2k,
)

# groups whose doubles build in well under a second; the full catalogue
# (orders up to 16) is exercised by the acceptance suite
SMALL_DOUBLE_GROUPS = ("z2", "z3", "z4", "z5", "z6", "z2xz2", "s3", "d4", "d5", "q8", "a4")


@pytest.fixture(scope="session")
def fixture_rules():
    return {name: named_fixture(name) for name in fixture_names()}


@pytest.fixture(scope="session")
def pointed_rules():
    return {name: pointed(builtin_group(name)) for name in builtin_group_names()}


@pytest.fixture(scope="session")
def su2k_rules():
    return {k: su2k(k) for k in range(1, 21)}


@pytest.fixture(scope="session")
def double_rules():
    return {name: drinfeld_double(builtin_group(name)) for name in SMALL_DOUBLE_GROUPS}


@pytest.fixture(scope="session")
def corpus(fixture_rules, pointed_rules, su2k_rules, double_rules):
    """Every named rule used across the test suite."""
    rules = {}
    rules.update({f"fixture:{k}": v for k, v in fixture_rules.items()})
    rules.update({f"pointed:{k}": v for k, v in pointed_rules.items()})
    rules.update({f"su2k:{k}": v for k, v in su2k_rules.items()})
    rules.update({f"double:{k}": v for k, v in double_rules.items()})
    return rules
