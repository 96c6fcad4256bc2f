"""Acceptance suite: the classification results this library must reproduce,
each as one exact check (tolerance is literal zero throughout).

Run with `pytest tests/test_acceptance.py -v -s` to see one line per criterion.
"""

import random
from fractions import Fraction as F

from nilpoisson.algebra import check_identity, multiply, vec_add, vec_scale, vec_sub
from nilpoisson.classify import canonicalize, catalog_match, invariants, verify_transform_formula
from nilpoisson.exactnum import MPoly, sc_zero
from nilpoisson.families import FamilySpec, canonical_catalog, instantiate, param_positions
from nilpoisson.nullfiliform import build_automorphism, mu0, push_bracket
from nilpoisson.solver import match_family, solve

TAG_FOR_DELTA = {F(0): "TP0", F(1): "TP1", F(2): "TP2"}


def sym_family(tag, n, delta):
    return FamilySpec(tag, n, delta, tuple(MPoly.var(f"alpha_{t}") for t in param_positions(tag, n)))


def poly_zero(v):
    return v.is_zero if isinstance(v, MPoly) else v == 0


def test_criterion_1_solution_space_dimensions():
    expected = {F(0): "n", F(1): "n-1", F(2): "n-1", F(3): 3, F(1, 2): 3, F(-1): 3, F(5, 2): 3}
    for n in (5, 6):
        for d, count in expected.items():
            space = solve(n, d, "transposed")
            want = {"n": n, "n-1": n - 1}.get(count, count)
            assert space.free_count == want, (n, d, space.free_count, want)
            assert space.residual_conditions == []
            tag = TAG_FOR_DELTA.get(d, "TPdelta")
            rep = match_family(space, sym_family(tag, n, d))
            assert rep.matched is True, (n, d, tag, rep.note)
    print("criterion 1 PASS: solution-space dimensions and family shapes for n in {5,6}")


def test_criterion_2_discriminant_theorem():
    for n in (5, 6, 7):
        for d in (F(3), F(1, 2), F(-1), F(5, 2)):
            space = solve(n, d, "transposed")
            for t in range(1, n - 2):
                assert space.entry_poly(1, 2, t).is_zero, (n, d, t)
            a_n2 = space.entry_poly(1, 2, n - 2)
            a_n1 = space.entry_poly(1, 2, n - 1)
            # [e1,e3] = delta (alpha_{n-2} e_{n-1} + alpha_{n-1} e_n)
            for t in range(1, n + 1):
                got = space.entry_poly(1, 3, t)
                want = d * a_n2 if t == n - 1 else d * a_n1 if t == n else MPoly.zero()
                assert (got - want).is_zero, ("e1e3", n, d, t)
            # [e1,e4] = (d^2+d)/2 alpha_{n-2} e_n ; [e2,e3] = (d^2-d)/2 alpha_{n-2} e_n
            for (i, j), coef in (((1, 4), (d * d + d) / 2), ((2, 3), (d * d - d) / 2)):
                for t in range(1, n + 1):
                    got = space.entry_poly(i, j, t)
                    want = coef * a_n2 if t == n else MPoly.zero()
                    assert (got - want).is_zero, ((i, j), n, d, t)
    print("criterion 2 PASS: discriminant support and closed bracket forms for n in {5,6,7}")


def test_criterion_3_delta_poisson_trivial():
    for n in (4, 5, 6, 7):
        for d in (F(0), F(1), F(2), F(3), F(1, 2)):
            space = solve(n, d, "delta_poisson")
            assert space.free_count == 0, (n, d, space.free_count)
            assert space.parametrized_bracket().is_zero()
    print("criterion 3 PASS: every delta-Poisson structure on the null-filiform algebra is trivial")


def test_criterion_4_transformation_laws():
    for n in (5, 6):
        for tag in ("TP0", "TP1", "TP2"):
            rep = verify_transform_formula(tag, n)
            assert rep.all_zero, (tag, n, rep.residuals[:3])
        rep = verify_transform_formula("TPdelta", n)  # delta stays symbolic
        assert rep.all_zero, ("TPdelta", n, rep.residuals[:3])
    print("criterion 4 PASS: closed transformation laws verified symbolically at n in {5,6}")


def test_criterion_5_catalog_soundness():
    samples = [F(0), F(1), F(-1), F(2), F(7)]
    checked = 0
    for n in range(2, 8):
        for d in (F(0), F(1), F(2), F(3), F(3, 2), F(-4)):
            for entry in canonical_catalog(n, d):
                variants = [entry.specialize({t: v for t, _ in entry.moduli})
                            for v in samples] if entry.moduli else [entry]
                for spec in variants:
                    pair = instantiate(spec)
                    for kind in ("commutative", "associative", "jacobi", "transposed"):
                        rep = check_identity(pair, kind)
                        assert rep.all_zero, (n, d, spec.describe(), kind, rep.residuals[:3])
                    checked += 1
    print(f"criterion 5 PASS: {checked} catalog instantiations satisfy all four identities")


def test_criterion_6_orbit_reduction():
    rng = random.Random(20260810)
    for n in (5, 6):
        for d in (F(0), F(1), F(2), F(3)):
            tag = TAG_FOR_DELTA.get(d, "TPdelta")
            width = len(param_positions(tag, n))
            groups = {}
            for _ in range(200):
                alphas = tuple(F(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(width))
                spec = FamilySpec(tag, n, d, alphas)
                form = canonicalize(spec, check=False)
                # the witness replays exactly, over its recorded radical extension
                replay = push_bracket(form.witness.total, instantiate(spec))
                assert replay.bracket == instantiate(form.spec).bracket, (n, d, alphas)
                assert catalog_match(form.spec) is not None, (n, d, form.spec.describe())
                key = form.spec.alphas
                groups.setdefault(key, set()).add(invariants(spec))
            for key, invs in groups.items():
                assert len(invs) == 1, (n, d, key, invs)
            tuples = [next(iter(v)) for v in groups.values()]
            assert len(set(tuples)) == len(tuples), (n, d)
    print("criterion 6 PASS: 1600 random members canonicalize into the catalogs with exact witnesses")


def test_criterion_7_low_dimensional_catalogs():
    # dimension 2: e1.e1 = e2 with [e1,e2] = e2 for any delta; plus the
    # delta = 0 extra [e1,e2] = e1
    for d in (F(2), F(1), F(5)):
        pair = instantiate(FamilySpec("Dim2", 2, d, (F(0), F(1))))
        assert check_identity(pair, "transposed").all_zero
        assert check_identity(pair, "jacobi").all_zero
    pair = instantiate(FamilySpec("Dim2", 2, F(0), (F(1), F(0))))
    assert check_identity(pair, "transposed").all_zero

    # dimension 3 catalogs verify
    for d in (F(0), F(1), F(2), F(3)):
        for entry in canonical_catalog(3, d):
            spec = entry.specialize({t: F(2) for t, _ in entry.moduli})
            pair = instantiate(spec)
            assert check_identity(pair, "transposed").all_zero
            assert check_identity(pair, "jacobi").all_zero

    # the dimension-4 family list verifies against the transposed identity,
    # including TP_{-4}(0,1,0,alpha) and TP_{3/2}(0,0,alpha,1); the former
    # fails the Jacobi identity, which is why the catalog excludes it
    for alpha in (F(0), F(2), F(-3)):
        spec = FamilySpec("Dim4", 4, F(-4), (F(0), F(1), F(0), alpha))
        pair = instantiate(spec)
        assert check_identity(pair, "transposed").all_zero
        assert not check_identity(pair, "jacobi").all_zero
        spec = FamilySpec("Dim4", 4, F(3, 2), (F(0), F(0), alpha, F(1)))
        pair = instantiate(spec)
        assert check_identity(pair, "transposed").all_zero
        assert check_identity(pair, "jacobi").all_zero

    # the solver reproduces the pre-classification parametrized forms
    from nilpoisson.solver import assemble, nullspace

    for d in (F(1), F(2), F(3), F(7)):
        space = solve(3, d, "transposed")
        assert space.free_count == 2
        assert space.entry_poly(1, 2, 1).is_zero  # delta alpha_1 = 0
        a2 = space.entry_poly(1, 2, 2)
        assert (space.entry_poly(1, 3, 3) - d * a2).is_zero  # [e1,e3] = delta alpha_2 e3
        for t in (1, 2):
            assert space.entry_poly(1, 3, t).is_zero
        for t in (1, 2, 3):
            assert space.entry_poly(2, 3, t).is_zero  # [e2,e3] = 0
    assert solve(3, F(0), "transposed").free_count == 3
    assert solve(2, F(0), "transposed").free_count == 2
    assert solve(2, F(3), "transposed").free_count == 1

    # n = 4: the linear layer gives the four-parameter general form with
    # delta alpha_1 = 0; the alpha_2^2 Jacobi obstruction then fires exactly
    # when delta(delta-1)(delta-2)(delta+1) != 0
    for d, lin_free, solved_free in ((F(1), 3, 3), (F(2), 3, 3), (F(-1), 3, 3), (F(3), 3, 2), (F(3, 2), 3, 2)):
        linear = nullspace(assemble(4, d, "transposed"))
        assert linear.free_count == lin_free
        dim4 = FamilySpec(
            "Dim4", 4, d, (F(0), MPoly.var("alpha_2"), MPoly.var("alpha_3"), MPoly.var("alpha_4"))
        )
        assert match_family(linear, dim4).matched is True, d
        assert solve(4, d, "transposed").free_count == solved_free
    assert solve(4, F(0), "transposed").free_count == 4
    print("criterion 7 PASS: low-dimensional catalogs and pre-classification solver forms")


def test_criterion_8_derived_identities():
    # solved delta-Poisson spaces satisfy the cyclic consequence identity
    for n in (4, 5, 6):
        for d in (F(0), F(1), F(3)):
            space = solve(n, d, "delta_poisson")
            assert check_identity(space.pair(), "cyclic_dp").all_zero
    # solved transposed spaces satisfy theirs for every nonzero delta tested;
    # at delta = 0 the consequence genuinely fails (see test_algebra for the
    # counterexample), matching its derivation which divides by delta
    for n in (5, 6):
        for d in (F(1), F(2), F(3), F(1, 2), F(-1), F(5, 2)):
            space = solve(n, d, "transposed")
            assert check_identity(space.pair(), "cyclic_tdp").all_zero, (n, d)
    # the intersection of both identity classes is the zero bracket, which
    # satisfies x.[y,z] = [x.y, z] = 0
    for n in (4, 5):
        for d in (F(2), F(3)):
            space = solve(n, d, "delta_poisson")
            pair = space.pair()
            assert pair.bracket.is_zero()
            assert check_identity(pair, "transposed").all_zero
            assert check_identity(pair, "mixed_trivial").all_zero
    print("criterion 8 PASS: derived identities on all solved spaces")


def test_criterion_9_null_filiform_structure():
    from nilpoisson.algebra import power_dims, vec_eq

    for n in range(2, 9):
        pd = power_dims(mu0(n))
        assert pd.dims == list(range(n, -1, -1)), n
        assert pd.is_null_filiform
        assert pd.nilpotency_index == n + 1
    rng = random.Random(97)
    for n in range(2, 9):
        alg = mu0(n)
        for _ in range(5):
            params = [F(0)] * n
            params[0] = F(rng.randint(1, 9), rng.randint(1, 5))
            for k in range(1, min(5, n)):
                params[k] = F(rng.randint(-9, 9), rng.randint(1, 5))
            aut = build_automorphism(params)  # raises unless multiplicative
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    assert vec_eq(
                        aut.apply(alg.prod_basis(i, j)),
                        alg.multiply(aut.column(i), aut.column(j)),
                    )
    print("criterion 9 PASS: power dimensions and automorphism verification up to n = 8")
