import numpy as np
import pytest

from fusionrules import (
    CapacityError,
    UnknownFixtureError,
    adjoint_subrule,
    builtin_group,
    central_series,
    drinfeld_double,
    fixture_names,
    fp_dimensions,
    is_acyclic,
    is_nilpotent,
    named_fixture,
    pointed,
    su2k,
    validate,
)
from fusionrules.groups import cyclic, symmetric

from oracles import commuting_pair_orbit_count, so8_level2_tensor, verlinde_su2k


class TestPointed:
    def test_z2(self):
        rule = pointed(builtin_group("z2"))
        assert rule.rank == 2
        assert rule.tensor[1, 1, 0] == 1
        series = central_series(rule)
        assert series.nilpotency_class == 1

    def test_s3_pointed_is_acyclic(self):
        rule = pointed(builtin_group("s3"))
        assert rule.rank == 6
        assert is_acyclic(rule)
        assert adjoint_subrule(rule).members == (0,)

    def test_trivial_group(self):
        rule = pointed(builtin_group("z1"))
        assert rule.rank == 1
        assert central_series(rule).nilpotency_class == 0

    def test_all_pointed_valid_and_pointed(self, pointed_rules):
        for name, rule in pointed_rules.items():
            assert rule.is_pointed, name
            if rule.rank <= 16:
                assert validate(rule).valid, name

    def test_dual_is_group_inverse(self):
        g = builtin_group("z5")
        rule = pointed(g)
        assert rule.dual == g.inverses


class TestSu2k:
    def test_level_one_is_pointed(self):
        rule = su2k(1)
        assert rule.rank == 2
        assert rule.is_pointed
        assert rule.tensor[1, 1, 0] == 1 and rule.tensor[1, 1, 1] == 0

    def test_level_two_is_ising(self):
        assert np.array_equal(su2k(2).tensor, named_fixture("ising").tensor)

    def test_rank_and_self_duality(self, su2k_rules):
        for k, rule in su2k_rules.items():
            assert rule.rank == k + 1
            assert rule.dual == tuple(range(k + 1))

    def test_matches_verlinde_oracle(self):
        for k in range(1, 9):
            assert np.array_equal(su2k(k).tensor, verlinde_su2k(k)), k

    def test_validity_up_to_twenty(self, su2k_rules):
        for k, rule in su2k_rules.items():
            assert validate(rule).valid, k

    def test_acyclic_iff_level_at_most_two(self, su2k_rules):
        for k, rule in su2k_rules.items():
            assert is_acyclic(rule) == (k <= 2), k

    def test_level_must_be_positive(self):
        with pytest.raises(ValueError):
            su2k(0)


class TestNamedFixture:
    def test_catalogue(self):
        assert set(fixture_names()) == {"trivial", "ising", "fibonacci", "toric", "so8_2"}
        for name in fixture_names():
            assert validate(named_fixture(name)).valid, name

    def test_unknown_name_lists_catalogue(self):
        with pytest.raises(UnknownFixtureError) as err:
            named_fixture("su2")
        assert "fibonacci" in str(err.value)

    def test_fibonacci_tensor(self):
        fib = named_fixture("fibonacci")
        assert fib.rank == 2
        assert fib.outcomes(1, 1) == {0: 1, 1: 1}

    def test_toric_is_double_of_z2(self):
        toric = named_fixture("toric")
        dd = drinfeld_double(builtin_group("z2"))
        assert np.array_equal(toric.tensor, dd.tensor)
        assert toric.dual == dd.dual

    def test_so8_2_known_invariants(self):
        rule = named_fixture("so8_2")
        assert rule.rank == 11
        assert rule.dual == tuple(range(11))
        dims = fp_dimensions(rule, tolerance=1e-6)
        assert sorted(round(d) for d in dims.dims) == [1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2]
        assert abs(dims.global_dim - 32.0) <= 1e-6
        assert is_acyclic(rule)

    def test_so8_2_matches_affine_verlinde_oracle(self):
        assert np.array_equal(named_fixture("so8_2").tensor, so8_level2_tensor())

    def test_so8_2_boson_group(self):
        rule = named_fixture("so8_2")
        b1, b2, b3 = 1, 2, 3
        assert rule.outcomes(b1, b2) == {b3: 1}
        assert rule.outcomes(b1, b1) == {0: 1}


class TestDrinfeldDouble:
    def test_z2_is_toric_code(self):
        dd = drinfeld_double(builtin_group("z2"))
        assert dd.rank == 4
        assert dd.is_pointed
        assert is_acyclic(dd)

    def test_s3(self):
        dd = drinfeld_double(builtin_group("s3"))
        assert dd.rank == 8
        dims = fp_dimensions(dd)
        assert sorted(round(d) for d in dims.dims) == [1, 1, 2, 2, 2, 2, 3, 3]
        assert abs(dims.global_dim - 36.0) <= 1e-6
        assert not is_acyclic(dd)

    def test_q8(self):
        dd = drinfeld_double(builtin_group("q8"))
        assert dd.rank == 22
        assert abs(fp_dimensions(dd).global_dim - 64.0) <= 1e-6
        assert is_acyclic(dd)

    def test_doubles_validate_and_square_global_dim(self, double_rules):
        for name, rule in double_rules.items():
            order = builtin_group(name).order
            assert validate(rule).valid, name
            assert abs(fp_dimensions(rule).global_dim - order ** 2) <= 1e-6, name

    def test_double_acyclic_iff_group_nilpotent(self, double_rules):
        for name, rule in double_rules.items():
            nilpotent, _ = is_nilpotent(builtin_group(name))
            assert is_acyclic(rule) == nilpotent, name

    def test_rank_matches_orbit_count(self, double_rules):
        for name, rule in double_rules.items():
            assert rule.rank == commuting_pair_orbit_count(builtin_group(name)), name

    def test_double_fusion_is_commutative(self, double_rules):
        for name, rule in double_rules.items():
            assert np.array_equal(rule.tensor, rule.tensor.transpose(1, 0, 2)), name

    def test_vacuum_is_trivial_pair(self):
        dd = drinfeld_double(builtin_group("s3"))
        assert dd.labels[0] == "(0,0)"

    def test_order_cap(self):
        with pytest.raises(CapacityError):
            drinfeld_double(cyclic(5), max_order=4)

    def test_abelian_doubles_are_pointed(self):
        for n in (3, 4):
            dd = drinfeld_double(cyclic(n))
            assert dd.rank == n * n
            assert dd.is_pointed

    def test_s4_double_builds_at_cap(self):
        dd = drinfeld_double(symmetric(4))
        assert abs(fp_dimensions(dd).global_dim - 576.0) <= 1e-6
        assert not is_acyclic(dd)
