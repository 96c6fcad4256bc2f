from fractions import Fraction as F

import pytest

from nilpoisson.algebra import check_identity
from nilpoisson.exactnum import DomainError, MPoly
from nilpoisson.families import (
    FamilySpec,
    canonical_catalog,
    delta_special_values,
    instantiate,
    param_positions,
)


def test_param_positions():
    assert param_positions("TP0", 5) == (1, 2, 3, 4, 5)
    assert param_positions("TP1", 5) == (2, 3, 4, 5)
    assert param_positions("TPdelta", 6) == (4, 5, 6)
    assert param_positions("TrivialDeltaPoisson", 4) == ()


def test_spec_validation():
    with pytest.raises(DomainError):
        FamilySpec("TPdelta", 4, F(3), (F(1), F(0), F(0)))
    with pytest.raises(DomainError):
        FamilySpec("TP0", 5, F(0), (F(1), F(0)))
    with pytest.raises(DomainError):
        FamilySpec("TP1", 5, F(0), (F(0),) * 4)
    with pytest.raises(DomainError):
        FamilySpec("TPdelta", 5, F(2), (F(1), F(0), F(0)))
    with pytest.raises(DomainError):
        FamilySpec("nope", 5, F(0), ())


def test_tp0_instance():
    pair = instantiate(FamilySpec("TP0", 5, F(0), (F(1), F(0), F(0), F(0), F(0))))
    assert pair.bracket.entries == {(1, 2): {1: F(1)}}


def test_tp1_zero_parameters():
    pair = instantiate(FamilySpec("TP1", 5, F(1), (F(0),) * 4))
    assert pair.bracket.is_zero()


def test_tp1_shape():
    # [e1, e_i] = sum_{t=i..n} alpha_{t-i+2} e_t
    a = (F(2), F(3), F(5), F(7))
    pair = instantiate(FamilySpec("TP1", 5, F(1), a))
    assert pair.bracket.entry(1, 2) == {2: F(2), 3: F(3), 4: F(5), 5: F(7)}
    assert pair.bracket.entry(1, 4) == {4: F(2), 5: F(3)}
    assert pair.bracket.entry(1, 5) == {5: F(2)}
    assert pair.bracket.entry(2, 3) == {}


def test_tpdelta_example():
    pair = instantiate(FamilySpec("TPdelta", 5, F(3), (F(1), F(0), F(0))))
    assert pair.bracket.entry(1, 2) == {3: F(1)}
    assert pair.bracket.entry(1, 3) == {4: F(3)}
    assert pair.bracket.entry(2, 3) == {5: F(3)}   # (9 - 3)/2
    assert pair.bracket.entry(1, 4) == {5: F(6)}   # (9 + 3)/2
    assert pair.bracket.entry(1, 5) == {}


def test_per_delta_bracket_shapes():
    # delta = 2: [e1, e_i] = (i-1) sum alpha_{t-i+2} e_t
    a = (F(1), F(4), F(0), F(2))
    tp2 = instantiate(FamilySpec("TP2", 5, F(2), a))
    spec = dict(zip((2, 3, 4, 5), a))
    for i in range(2, 6):
        expected = {}
        for t in range(i, 6):
            c = (i - 1) * spec.get(t - i + 2, F(0))
            if c:
                expected[t] = c
        assert tp2.bracket.entry(1, i) == expected, i
    # delta = 1: same sums without the (i-1) factor
    tp1 = instantiate(FamilySpec("TP1", 5, F(1), a))
    for i in range(2, 6):
        expected = {t: spec.get(t - i + 2, F(0)) for t in range(i, 6) if spec.get(t - i + 2, F(0)) != 0}
        assert tp1.bracket.entry(1, i) == expected, i
    # delta = 0: [e1, e_i] = 0 for i >= 3
    tp0 = instantiate(FamilySpec("TP0", 5, F(0), (F(0),) + a))
    for i in range(3, 6):
        assert tp0.bracket.entry(1, i) == {}


def test_dim_tags_match_general_families_when_special():
    # the dimension-4 general form specializes to TP1 / TP2 / TP0 shapes
    vals = (F(0), F(2), F(-1), F(3))
    for d, tag in ((F(1), "TP1"), (F(2), "TP2")):
        dim4 = instantiate(FamilySpec("Dim4", 4, d, vals))
        other = instantiate(FamilySpec(tag, 4, d, vals[1:]))
        assert dim4.bracket == other.bracket
    dim4 = instantiate(FamilySpec("Dim4", 4, F(0), (F(5), F(2), F(-1), F(3))))
    tp0 = instantiate(FamilySpec("TP0", 4, F(0), (F(5), F(2), F(-1), F(3))))
    assert dim4.bracket == tp0.bracket


def test_dim3_relations():
    pair = instantiate(FamilySpec("Dim3", 3, F(5), (F(0), F(2), F(7))))
    assert pair.bracket.entry(1, 3) == {3: F(10)}  # delta * alpha_2
    assert pair.bracket.entry(2, 3) == {}


# --- catalogs ------------------------------------------------------------------


def _descr(entries):
    return [e.describe() for e in entries]


def test_catalog_n5_delta0():
    cat = canonical_catalog(5, F(0))
    assert _descr(cat) == [
        "TP0[n=5, delta=0](1,0,0,0,0)",
        "TP0[n=5, delta=0](0,1,0,0,0)",
        "TP0[n=5, delta=0](0,0,alpha_3,0,0)",
        "TP0[n=5, delta=0](0,0,0,1,0)",
        "TP0[n=5, delta=0](0,0,0,0,1)",
        "TP0[n=5, delta=0](0,0,0,0,0)",
    ]


def test_catalog_n2():
    assert _descr(canonical_catalog(2, F(0))) == [
        "Dim2[n=2, delta=0](1,0)",
        "Dim2[n=2, delta=0](0,1)",
        "Dim2[n=2, delta=0](0,0)",
    ]
    assert _descr(canonical_catalog(2, F(2))) == [
        "Dim2[n=2, delta=2](0,1)",
        "Dim2[n=2, delta=2](0,0)",
    ]


def test_catalog_n4_special_deltas():
    names = _descr(canonical_catalog(4, F(3, 2)))
    assert "Dim4[n=4, delta=3/2](0,0,alpha_3,1)" in names
    assert "Dim4[n=4, delta=3/2](0,0,alpha_3,0)" in names
    # alpha_2 entries fail the Jacobi identity away from delta in {0,1,2,-1}
    assert not any("(0,1" in d for d in names)
    names = _descr(canonical_catalog(4, F(-1)))
    assert "Dim4[n=4, delta=-1](0,1,0,0)" in names


def test_catalog_tp2_secondary_slot():
    names = _descr(canonical_catalog(6, F(2)))
    assert "TP2[n=6, delta=2](0,0,1,alpha_5,0)" in names
    assert "TP2[n=6, delta=2](0,0,0,1,0)" in names  # s = 5: slot 2s-3 = 7 exceeds n
    assert "TP2[n=6, delta=2](0,0,0,0,1)" in names


def test_catalog_identities_sample():
    for n, d in ((3, F(1)), (4, F(-4)), (5, F(3, 2)), (6, F(3))):
        for entry in canonical_catalog(n, d):
            spec = entry.specialize({t: F(2) for t, _ in entry.moduli})
            pair = instantiate(spec)
            for kind in ("commutative", "associative", "jacobi", "transposed"):
                assert check_identity(pair, kind).all_zero, (n, d, entry.describe(), kind)


def test_specialize():
    entry = next(e for e in canonical_catalog(5, F(0)) if e.moduli)
    spec = entry.specialize({3: F(7)})
    assert spec.alphas[2] == F(7)
    assert all(not isinstance(a, MPoly) for a in spec.alphas)


def test_delta_special_values():
    sp4 = delta_special_values(4)
    assert sp4["half_n_minus_2"] == F(1)
    assert sp4["half_n_minus_1"] == F(3, 2)
    assert sp4["quadratic_roots"] == [F(-4), F(1)]
    sp5 = delta_special_values(5)
    assert sp5["quadratic_roots"] == []  # delta^2 + 3 delta = 6 has no rational root
    assert delta_special_values(7)["quadratic_roots"] == [F(-5), F(2)]
