import random
from fractions import Fraction as F

import pytest

from nilpoisson.algebra import (
    Bracket,
    CommAlgebra,
    PoissonPair,
    basis,
    bracket_apply,
    check_identity,
    multiply,
    power_dims,
)
from nilpoisson.exactnum import DomainError, MPoly
from nilpoisson.families import FamilySpec, instantiate
from nilpoisson.nullfiliform import mu0


def tp0(n, *alphas):
    return instantiate(FamilySpec("TP0", n, F(0), tuple(F(a) for a in alphas)))


# --- products ---------------------------------------------------------------


def test_mu0_products():
    alg = mu0(5)
    assert multiply(alg, basis(2), basis(3)) == {5: F(1)}
    assert multiply(alg, basis(3), basis(3)) == {}  # index 6 > 5
    assert multiply(alg, {}, basis(2)) == {}


def test_mu0_3_table():
    alg = mu0(3)
    assert alg.prod_basis(1, 1) == {2: F(1)}
    assert alg.prod_basis(1, 2) == {3: F(1)} == alg.prod_basis(2, 1)
    for i in range(1, 4):
        for j in range(1, 4):
            if (i, j) not in ((1, 1), (1, 2), (2, 1)):
                assert alg.prod_basis(i, j) == {}


def test_mu0_1_and_nonzero_pair_count():
    assert mu0(1).product == {}
    # unordered pairs (i <= j) with i + j <= 5: (1,1),(1,2),(1,3),(1,4),(2,2),(2,3)
    alg = mu0(5)
    unordered = {(i, j) for (i, j) in alg.product if i <= j}
    assert unordered == {(1, 1), (1, 2), (1, 3), (1, 4), (2, 2), (2, 3)}
    assert len(unordered) == 6


def test_multiply_dimension_mismatch():
    with pytest.raises(DomainError):
        multiply(mu0(3), {4: F(1)}, basis(1))


# --- bracket ------------------------------------------------------------------


def test_bracket_antisymmetry_structural():
    br = Bracket(3, {(1, 2): {1: F(1)}})
    assert bracket_apply(br, basis(2), basis(1)) == {1: F(-1)}
    x = {1: F(2), 2: F(1), 3: F(-3)}
    assert bracket_apply(br, x, x) == {}


def test_bracket_apply_bilinear():
    pair = tp0(5, 1, 0, 0, 0, 0)
    x = {1: F(1), 2: F(1)}
    assert bracket_apply(pair.bracket, x, basis(2)) == {1: F(1)}


def test_bracket_rejects_nonzero_diagonal():
    with pytest.raises(DomainError):
        Bracket(3, {(2, 2): {1: F(1)}})


def test_bracket_apply_antisymmetric_random():
    rng = random.Random(3)
    br = Bracket(4)
    for i in range(1, 5):
        for j in range(i + 1, 5):
            br.set_entry(i, j, {t: F(rng.randint(-4, 4)) for t in range(1, 5)})
    for _ in range(20):
        x = {t: F(rng.randint(-3, 3)) for t in range(1, 5)}
        y = {t: F(rng.randint(-3, 3)) for t in range(1, 5)}
        lhs = bracket_apply(br, x, y)
        rhs = bracket_apply(br, y, x)
        assert {t: -c for t, c in rhs.items()} == lhs


# --- identity checkers ---------------------------------------------------------


def test_mu0_commutative_associative():
    for n in range(2, 9):
        pair = PoissonPair(mu0(n), Bracket(n), F(0))
        assert check_identity(pair, "commutative").all_zero
        assert check_identity(pair, "associative").all_zero


def test_tp0_transposed_all_zero():
    rep = check_identity(tp0(5, 1, 0, 0, 0, 0), "transposed")
    assert rep.all_zero


def test_zero_bracket_delta_poisson():
    for d in (F(0), F(1), F(5, 3)):
        pair = PoissonPair(mu0(4), Bracket(4), d)
        assert check_identity(pair, "delta_poisson").all_zero


def test_dim2_transposed_poisson():
    # e1.e1 = e2, [e1,e2] = e2 is a transposed Poisson algebra (delta = 2)
    spec = FamilySpec("Dim2", 2, F(2), (F(0), F(1)))
    assert check_identity(instantiate(spec), "transposed").all_zero


def test_commutativity_check_detects_asymmetry():
    alg = CommAlgebra(2, {(1, 1): {2: F(1)}, (1, 2): {2: F(1)}})
    pair = PoissonPair(alg, Bracket(2), F(0))
    rep = check_identity(pair, "commutative")
    assert not rep.all_zero
    assert ((1, 2), 2, F(1)) in rep.residuals or ((2, 1), 2, F(-1)) in rep.residuals


def test_symbolic_delta_residuals_are_polynomials():
    d = MPoly.var("delta")
    spec = FamilySpec("Dim2", 2, d, (F(1), F(0)))  # alpha_1 = 1 needs delta = 0
    rep = check_identity(instantiate(spec), "transposed")
    assert not rep.all_zero
    assert all(isinstance(v, MPoly) for _, _, v in rep.residuals)
    # every residual is a multiple of delta: it vanishes at delta = 0
    assert all(v.substitute({"delta": 0}).is_zero for _, _, v in rep.residuals)


# --- derived identities ---------------------------------------------------------


def _family_samples():
    yield instantiate(FamilySpec("TP1", 5, F(1), (F(2), F(0), F(1), F(-3))))
    yield instantiate(FamilySpec("TP2", 5, F(2), (F(1), F(2), F(0), F(5))))
    yield instantiate(FamilySpec("TPdelta", 5, F(3), (F(1), F(-2), F(7))))
    yield instantiate(FamilySpec("TPdelta", 6, F(1, 2), (F(4), F(1), F(0))))


def test_transposed_implies_cyclic_for_nonzero_delta():
    for pair in _family_samples():
        assert check_identity(pair, "transposed").all_zero
        assert check_identity(pair, "cyclic_tdp").all_zero


def test_cyclic_tdp_fails_at_delta_zero():
    # the cyclic consequence x.[y,z] + y.[z,x] + z.[x,y] = 0 relies on
    # dividing by delta, and genuinely fails for transposed 0-structures
    pair = tp0(5, 1, 0, 0, 0, 0)
    assert check_identity(pair, "transposed").all_zero
    rep = check_identity(pair, "cyclic_tdp")
    assert not rep.all_zero
    # at (x, y, z) = (e1, e2, e3) the sum collapses to e3 . e1 = e4
    assert ((1, 2, 3), 4, F(1)) in rep.residuals


def test_delta_poisson_implies_cyclic():
    for n, d in ((4, F(0)), (5, F(2)), (5, F(1))):
        pair = PoissonPair(mu0(n), Bracket(n), d)
        assert check_identity(pair, "delta_poisson").all_zero
        assert check_identity(pair, "cyclic_dp").all_zero


def test_mixed_trivial():
    pair = PoissonPair(mu0(5), Bracket(5), F(3))
    assert check_identity(pair, "mixed_trivial").all_zero
    # zero product with any antisymmetric bracket satisfies both identities
    zero_prod = CommAlgebra(3, {})
    br = Bracket(3, {(1, 2): {3: F(1)}, (1, 3): {1: F(2)}})
    pair = PoissonPair(zero_prod, br, F(5))
    assert check_identity(pair, "delta_poisson").all_zero
    assert check_identity(pair, "transposed").all_zero
    assert check_identity(pair, "mixed_trivial").all_zero
    # nonzero product against a bracket that multiplies into it fails
    bad = PoissonPair(mu0(3), Bracket(3, {(1, 2): {1: F(1)}}), F(3))
    assert not check_identity(bad, "mixed_trivial").all_zero


def test_unknown_kind_rejected():
    with pytest.raises(DomainError):
        check_identity(PoissonPair(mu0(2), Bracket(2), F(0)), "nope")


# --- power dimensions ------------------------------------------------------------


def test_power_dims_mu0():
    pd = power_dims(mu0(4))
    assert pd.dims == [4, 3, 2, 1, 0]
    assert pd.is_null_filiform
    assert pd.nilpotency_index == 5
    assert power_dims(mu0(6)).dims == [6, 5, 4, 3, 2, 1, 0]


def test_power_dims_zero_algebra():
    pd = power_dims(CommAlgebra(3, {}))
    assert pd.dims == [3, 0]
    assert not pd.is_null_filiform
    assert pd.nilpotency_index == 2


def test_poisson_pair_json_schema():
    spec = FamilySpec("TP0", 5, F(0), (F(1), F(0), F(0), F(0), F(0)))
    obj = instantiate(spec).to_json()
    assert obj["n"] == 5
    assert obj["delta"] == "0"
    assert obj["product"]["1,1"] == {"2": "1"}
    assert obj["product"]["2,3"] == {"5": "1"}
    assert obj["bracket"] == {"1,2": {"1": "1"}}


def test_power_dims_non_nilpotent():
    alg = CommAlgebra(1, {(1, 1): {1: F(1)}})  # idempotent generator
    pd = power_dims(alg)
    assert not pd.nilpotent
    assert pd.nilpotency_index is None
    assert all(d == 1 for d in pd.dims)
