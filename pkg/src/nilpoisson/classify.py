"""Parameter transformation laws, canonical forms with automorphism
witnesses, isomorphism invariants, and a three-valued isomorphism test.

The orientation convention everywhere: transform_params(spec, A) returns the
parameters of push_bracket(build_automorphism(A), instantiate(spec)), i.e.
the coefficients of the transported bracket read in the new basis.  The
agreement of the closed forms with the transport map is itself a checkable
statement (verify_transform_formula) rather than an assumption.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import List, Optional, Tuple

from .algebra import ResidualReport
from .exactnum import DomainError, MPoly, RadExt, TowerError, rat_nth_root, rat_root, sc_zero
from .families import FamilySpec, canonical_catalog, delta_special_values, instantiate, param_positions
from .nullfiliform import Automorphism, build_automorphism, compose, identity_automorphism, invert, push_bracket

CLOSED_FORM_TAGS = ("TP0", "TP1", "TP2", "TPdelta")


def _series_powers(A, n: int):
    """P[i][t-1] = sum over compositions of t into i positive parts of
    A_{k_1} ... A_{k_i}, for 0 <= i <= n (P[0] is the empty product row)."""
    P = [[Fraction(0)] * n for _ in range(n + 1)]
    cur = {0: Fraction(1)}
    for i in range(1, n + 1):
        nxt = {}
        for e, c in cur.items():
            for k in range(1, n + 1 - e):
                ak = A[k - 1]
                if sc_zero(ak):
                    continue
                s = nxt.get(e + k, 0) + c * ak
                if sc_zero(s):
                    nxt.pop(e + k, None)
                else:
                    nxt[e + k] = s
        cur = nxt
        for e, c in cur.items():
            P[i][e - 1] = c
    return P


def transform_params(spec: FamilySpec, aut_params) -> tuple:
    """New family parameters after transporting along the automorphism with
    parameters A_1..A_n (A_1 invertible).

    TP0, TP1, TP2 solve their triangular change-of-basis relations from the
    lowest coefficient up; TPdelta uses its closed three-parameter law; the
    low-dimensional tags fall back to transporting the full bracket.
    """
    A = list(aut_params)
    n = spec.n
    if len(A) != n:
        raise DomainError(f"need {n} automorphism parameters")
    if sc_zero(A[0]):
        raise DomainError("A_1 must be nonzero")
    tag = spec.tag
    if tag not in CLOSED_FORM_TAGS:
        return _transform_by_push(spec, A)
    d = spec.delta
    a = {t: spec.alpha(t) for t in spec.positions()}

    if tag == "TPdelta":
        A1, A2 = A[0], A[1]
        A3 = A[2] if n >= 3 else Fraction(0)
        p2 = a[n - 2] / A1 ** (n - 5) if n != 5 else a[n - 2]
        p1 = (A1 * a[n - 1] + A2 * a[n - 2] * (2 * d - n + 2)) / A1 ** (n - 3)
        p0 = (
            2 * a[n] * A1**2
            + 2 * a[n - 1] * A1 * A2 * (2 * d - n + 1)
            + a[n - 2]
            * (A1 * A3 * (d * d + 3 * d - (2 * n - 4)) + A2**2 * (3 * d * d + d * (3 - 4 * n) + n * n - n - 2))
        ) / (2 * A1 ** (n - 1))
        return (p2, p1, p0)

    P = _series_powers(A, n)
    A1 = A[0]
    if tag == "TP0":
        out: List[object] = []
        for t in range(1, n + 1):
            rhs = A1**3 * a[t]
            for i in range(1, t):
                rhs = rhs - P[i][t - 1] * out[i - 1]
            out.append(rhs / A1**t)
        return tuple(out)

    if tag == "TP1":
        out = []
        for t in range(2, n + 1):
            rhs = Fraction(0)
            for j in range(2, t + 1):
                s = t - j + 2
                rhs = rhs + A1 * P[2][s - 1] * a[j]
            for i in range(2, t):
                rhs = rhs - P[i][t - 1] * out[i - 2]
            out.append(rhs / A1**t)
        return tuple(out)

    # TP2
    out = []
    for t in range(2, n + 1):
        rhs = Fraction(0)
        for j in range(2, t + 1):
            for i in range(1, t - j + 2):
                s = t - i - j + 3
                if s < 2:
                    continue
                coef = t - 2 * i - j + 3
                if coef == 0:
                    continue
                rhs = rhs + coef * A[i - 1] * P[2][s - 1] * a[j]
        for i in range(2, t):
            rhs = rhs - P[i][t - 1] * out[i - 2]
        out.append(rhs / A1**t)
    return tuple(out)


def _transform_by_push(spec: FamilySpec, A, check_form: bool = True) -> tuple:
    aut = build_automorphism(A, verify=False)
    pushed = push_bracket(aut, instantiate(spec))
    vec = pushed.bracket.entry(1, 2)
    new_alphas = tuple(vec.get(t, Fraction(0)) for t in spec.positions())
    if check_form:
        again = instantiate(replace(spec, alphas=new_alphas, moduli=()))
        if again.bracket != pushed.bracket:
            raise DomainError(
                f"transported bracket left the {spec.tag} family shape; "
                "the input is not a valid member (e.g. a Jacobi-violating parameter)"
            )
    return new_alphas


def verify_transform_formula(tag: str, n: int, delta=None) -> ResidualReport:
    """Symbolically check the closed transformation law against transport.

    All of A_1..A_n and the family parameters stay symbolic (and delta too,
    for TPdelta unless a rational is given); the report carries every nonzero
    polynomial residual between push_bracket of the family and the family
    rebuilt at the transformed parameters.
    """
    if tag not in CLOSED_FORM_TAGS:
        raise DomainError("closed transformation laws exist for TP0/TP1/TP2/TPdelta")
    if tag == "TPdelta":
        d = MPoly.var("delta") if delta is None else Fraction(delta)
    else:
        d = {"TP0": Fraction(0), "TP1": Fraction(1), "TP2": Fraction(2)}[tag]
    positions = param_positions(tag, n)
    spec = FamilySpec(tag, n, d, tuple(MPoly.var(f"alpha_{t}") for t in positions))
    A = [MPoly.var(f"A_{k}") for k in range(1, n + 1)]
    new_alphas = transform_params(spec, A)
    candidate = instantiate(replace(spec, alphas=new_alphas, moduli=()))
    pushed = push_bracket(build_automorphism(A, verify=False), instantiate(spec))
    rep = ResidualReport(f"transform_law:{tag}")
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            pv, cv = pushed.bracket.entry(i, j), candidate.bracket.entry(i, j)
            for t in sorted(set(pv) | set(cv)):
                diff = pv.get(t, MPoly.zero()) - cv.get(t, MPoly.zero())
                rep.add((i, j), t, diff)
    return rep


# --- canonicalization -------------------------------------------------------


@dataclass
class IsoWitness:
    """A chain of scalings / shifts whose composite carries the input bracket
    onto the canonical one (composition checked by transport replay)."""

    steps: List[Automorphism] = field(default_factory=list)
    total: Automorphism = None
    radical: Optional[Tuple[int, Fraction]] = None

    def to_json(self):
        return {
            "steps": [a.to_json() for a in self.steps],
            "total": self.total.to_json() if self.total else None,
            "radical": None
            if self.radical is None
            else {"m": self.radical[0], "q": str(self.radical[1])},
        }


@dataclass
class CanonicalForm:
    spec: FamilySpec
    witness: IsoWitness

    def to_json(self):
        return {"family": self.spec.to_json(), "witness": self.witness.to_json()}


def _validate_member(spec: FamilySpec):
    for a in spec.alphas:
        if isinstance(a, MPoly):
            raise DomainError("canonicalization needs concrete parameters")
    d = spec.delta
    if spec.tag in ("Dim2", "Dim3", "Dim4") and d != 0 and not sc_zero(spec.alpha(1)):
        raise DomainError("delta * alpha_1 = 0 is required: alpha_1 must vanish for nonzero delta")
    if spec.tag == "Dim4" and d not in (0, 1, 2, -1) and not sc_zero(spec.alpha(2)):
        raise DomainError(
            "alpha_2 != 0 violates the Jacobi identity at n = 4 unless "
            "delta(delta-1)(delta-2)(delta+1) = 0"
        )
    if spec.tag == "Dim3" and d == -1 and not sc_zero(spec.alpha(1)):
        raise DomainError("alpha_1 != 0 at delta = -1, n = 3 is outside the classified catalog")


def _shift_params(n: int, k: int, c):
    params = [Fraction(0)] * n
    params[0] = Fraction(1)
    params[k - 1] = c
    return params


def _scaling_params(n: int, a1):
    params = [Fraction(0)] * n
    params[0] = a1
    return params


def _poly_from_samples(samples):
    """Newton interpolation through (x, f(x)) with small integer nodes;
    returns dense coefficients (degree ascending) over the sample field."""
    xs = [x for x, _ in samples]
    divided = [y for _, y in samples]
    for level in range(1, len(samples)):
        for i in range(len(samples) - 1, level - 1, -1):
            divided[i] = (divided[i] - divided[i - 1]) / Fraction(xs[i] - xs[i - level])
    coeffs = [Fraction(0)] * len(samples)
    acc = [Fraction(1)]  # product (x - x_0)...(x - x_{k-1})
    for k, dk in enumerate(divided):
        for p, ac in enumerate(acc):
            coeffs[p] += dk * ac
        nxt = [Fraction(0)] * (len(acc) + 1)
        for p, ac in enumerate(acc):
            nxt[p] -= xs[k] * ac
            nxt[p + 1] += ac
        acc = nxt
    while len(coeffs) > 1 and sc_zero(coeffs[-1]):
        coeffs.pop()
    return coeffs


def _quad_roots(a0, a1, a2):
    if not all(isinstance(v, Fraction) for v in (a0, a1, a2)):
        return []
    disc = a1 * a1 - 4 * a2 * a0
    if disc < 0:
        return []
    r = rat_nth_root(disc, 2)
    if r is None:
        return []
    return [(-a1 + r) / (2 * a2), (-a1 - r) / (2 * a2)]


def _kill_candidates(trial, f0, positions, m, k, n, s):
    """Candidate constants c for the shift e_1 -> e_1 + c e_k that could make
    the transformed parameter at position m vanish.

    A c^r term only reaches position m through a nonzero parameter at
    position m - r(k-1) >= s, so the dependence has degree at most
    (m - s) // (k - 1); degree 1 is solved from a two-point slope, degree 2
    exactly from three points, anything higher by interpolation."""

    def value_at(c):
        out = transform_params(trial, _shift_params(n, k, c))
        return dict(zip(positions, out))[m]

    degree = (m - s) // (k - 1)
    f1 = value_at(Fraction(1))
    if degree <= 1:
        slope = f1 - f0
        if not sc_zero(slope):
            c = -f0 / slope
            if not sc_zero(c):
                yield c
        return
    if degree == 2:
        fm1 = value_at(Fraction(-1))
        g1 = (f1 - fm1) / 2
        g2 = (f1 + fm1 - 2 * f0) / 2
        if sc_zero(g2):
            if not sc_zero(g1):
                c = -f0 / g1
                if not sc_zero(c):
                    yield c
        else:
            for c in _quad_roots(f0, g1, g2):
                if not sc_zero(c):
                    yield c
        return
    slope = f1 - f0
    linear = None
    if not sc_zero(slope):
        linear = -f0 / slope
        if not sc_zero(linear):
            yield linear
    samples = [(0, f0), (1, f1)] + [(x, value_at(Fraction(x))) for x in range(2, degree + 2)]
    coeffs = _poly_from_samples(samples)
    if len(coeffs) == 2:
        c = -coeffs[0] / coeffs[1]
        if not sc_zero(c) and c != linear:
            yield c
    elif len(coeffs) == 3:
        for c in _quad_roots(*coeffs):
            if not sc_zero(c) and c != linear:
                yield c


def canonicalize(spec: FamilySpec, check: bool = True) -> CanonicalForm:
    """Reduce to the canonical orbit representative, with an explicit witness.

    The reduction replays the classical lemma order: normalize the leading
    parameter to 1 when its scaling weight 3 - s is nondegenerate (adjoining
    at most one radical), then kill higher parameters in ascending position
    by shifts e_1 -> e_1 + c e_k.  Positions no shift can reach stay behind
    as moduli; a single leftover position whose weight is nonzero while all
    other surviving ones sit at the weight-0 slot gets normalized to 1.
    """
    _validate_member(spec)
    n = spec.n
    positions = spec.positions()
    cur = {t: Fraction(a) if not isinstance(a, RadExt) else a for t, a in zip(positions, spec.alphas)}
    witness = IsoWitness(total=identity_automorphism(n))
    work = replace(spec, moduli=())

    def apply(aut_params):
        step = build_automorphism(aut_params, verify=False)
        out = transform_params(replace(work, alphas=tuple(cur[t] for t in positions), moduli=()), aut_params)
        for t, v in zip(positions, out):
            cur[t] = v
        witness.steps.append(step)

    s = next((t for t in positions if not sc_zero(cur[t])), None)
    if s is None:
        return CanonicalForm(replace(spec, alphas=tuple(Fraction(0) for _ in positions), moduli=()), witness)

    def normalize_to_one(t0):
        if isinstance(cur[t0], RadExt):
            raise TowerError("cannot normalize a parameter already living in a radical extension")
        w = 3 - t0
        if w > 0:
            a1 = rat_root(1 / Fraction(cur[t0]), w)
        else:
            a1 = rat_root(Fraction(cur[t0]), -w)
        if isinstance(a1, RadExt):
            if witness.radical is not None:
                raise TowerError("a second radical adjunction is not supported")
            witness.radical = (a1.m, a1.q)
        apply(_scaling_params(n, a1))

    if s != 3 and cur[s] != 1:
        normalize_to_one(s)

    for m in positions:
        if m <= s or sc_zero(cur[m]):
            continue
        killed = False
        for j in positions:
            if killed or j >= m or sc_zero(cur[j]):
                continue
            k = m - j + 1
            if not 2 <= k <= n:
                continue
            trial = replace(work, alphas=tuple(cur[t] for t in positions), moduli=())
            for c in _kill_candidates(trial, cur[m], positions, m, k, n, s):
                before = dict(cur)
                saved_steps = len(witness.steps)
                apply(_shift_params(n, k, c))
                if sc_zero(cur[m]) and all(
                    sc_zero(cur[t] - before[t]) for t in positions if t < m
                ):
                    killed = True
                    break
                cur = before  # undo: the candidate damaged lower positions
                del witness.steps[saved_steps:]

    survivors = [t for t in positions if not sc_zero(cur[t])]
    hot = [t for t in survivors if t != 3]
    if len(hot) == 1 and cur[hot[0]] != 1:
        normalize_to_one(hot[0])

    # right fold: each compose only expands an elementary (sparse) step matrix
    for step in reversed(witness.steps):
        witness.total = compose(step, witness.total)
    canonical = replace(spec, alphas=tuple(cur[t] for t in positions), moduli=())
    if check:
        replay = push_bracket(witness.total, instantiate(spec))
        target = instantiate(canonical)
        if replay.bracket != target.bracket:
            raise DomainError("witness replay failed to reproduce the canonical bracket")
    return CanonicalForm(canonical, witness)


# --- invariants --------------------------------------------------------------


@dataclass(frozen=True)
class InvariantTuple:
    """Quantities constant on automorphism orbits, computable over Q.

    ``s`` is the first nonzero parameter position (None for the zero
    bracket).  ``extras`` lists (position, value) pairs for the retained
    moduli; a value of "*" records a slot that is nonzero but normalizable
    to 1, where only the zero pattern is invariant.
    """

    n: int
    delta: Fraction
    s: object
    extras: tuple = ()

    def to_json(self):
        return {
            "n": self.n,
            "delta": str(self.delta),
            "s": self.s,
            "extras": [[p, v if isinstance(v, str) else str(v)] for p, v in self.extras],
        }


def invariants(spec: FamilySpec) -> InvariantTuple:
    """The isomorphism invariants of a concrete family member."""
    _validate_member(spec)
    n, d = spec.n, Fraction(spec.delta)
    al = {t: Fraction(a) for t, a in zip(spec.positions(), spec.alphas)}
    s = next((t for t in spec.positions() if al[t] != 0), None)
    base = dict(n=n, delta=d, s=s)
    if s is None:
        return InvariantTuple(**base)
    tag = spec.tag
    if tag in ("Dim2", "Dim3", "Dim4"):
        tag = {0: "TP0", 1: "TP1", 2: "TP2"}.get(d if d in (0, 1, 2) else None, "lowdim")

    if tag == "TP0":
        extras = ((3, al[3]),) if s == 3 else ()
        return InvariantTuple(extras=extras, **base)

    if tag == "TP1":
        if s == 2:
            s2 = next((t for t in spec.positions() if t > 2 and al[t] != 0), None)
            extras = ((s2, al[s2] * al[2] ** (s2 - 3)),) if s2 is not None else ()
        elif s == 3:
            extras = ((3, al[3]),)
        else:
            extras = ()
        return InvariantTuple(extras=extras, **base)

    if tag == "TP2":
        if s == 3:
            extras = ((3, al[3]),)
        elif s >= 4 and 2 * s - 3 <= n:
            extras = ((2 * s - 3, al[2 * s - 3] / al[s] ** 2),)
        else:
            extras = ()
        return InvariantTuple(extras=extras, **base)

    if tag == "TPdelta":
        special = delta_special_values(n)
        extras = ()
        if s == n - 2:
            if n == 5:
                extras = ((3, al[3]),)
                if d == special["half_n_minus_2"] and al[4] != 0:
                    extras = extras + ((4, "*"),)
            elif d == special["half_n_minus_2"]:
                extras = ((n - 1, al[n - 1] ** (n - 5) / al[n - 2] ** (n - 4)),)
            elif d in special["quadratic_roots"]:
                # rational shift killing alpha_{n-1}; the leftover alpha_n is
                # shift-invariant and scales with weight 3 - n
                shift = Fraction(al[n - 1]) / (al[n - 2] * (n - 2 - 2 * d))
                moved = dict(zip(spec.positions(), transform_params(spec, _shift_params(n, 2, shift))))
                if moved[n - 1] != 0:
                    raise DomainError("internal: shift failed to clear alpha_{n-1}")
                extras = ((n, Fraction(moved[n]) ** (n - 5) / al[n - 2] ** (n - 3)),)
        elif s == n - 1:
            if d == special["half_n_minus_1"]:
                extras = ((n, al[n] ** (n - 4) / al[n - 1] ** (n - 3)),)
        return InvariantTuple(extras=extras, **base)

    # low-dimensional tags at delta outside {0, 1, 2}
    if spec.tag == "Dim2":
        return InvariantTuple(**base)
    if spec.tag == "Dim3":
        extras = ((3, al[3]),) if s == 3 else ()
        return InvariantTuple(extras=extras, **base)
    # Dim4, delta not in {0, 1, 2}
    if s == 2:
        # only delta = -1 admits this (validated above); fully normalizable
        return InvariantTuple(**base)
    if s == 3:
        extras = ((3, al[3]),)
        if d == Fraction(3, 2) and al[4] != 0:
            extras = extras + ((4, "*"),)
        return InvariantTuple(extras=extras, **base)
    return InvariantTuple(**base)


# --- isomorphism decision -----------------------------------------------------


@dataclass
class IsoDecision:
    verdict: str  # "isomorphic" | "not_isomorphic" | "inconclusive"
    witness: Optional[Automorphism] = None
    canonical_a: Optional[CanonicalForm] = None
    canonical_b: Optional[CanonicalForm] = None
    note: str = ""

    def to_json(self):
        return {
            "verdict": self.verdict,
            "witness": self.witness.to_json() if self.witness else None,
            "note": self.note,
        }


def _specs_equal(a: FamilySpec, b: FamilySpec):
    if (a.tag, a.n) != (b.tag, b.n) or a.delta != b.delta:
        return False
    try:
        return all(sc_zero(x - y) for x, y in zip(a.alphas, b.alphas))
    except TowerError:
        return None  # values live in incomparable radical extensions


def iso_test(a: FamilySpec, b: FamilySpec) -> IsoDecision:
    """Decide isomorphism inside one family at fixed (n, delta).

    Unequal invariant tuples certify non-isomorphism; equal canonical forms
    certify isomorphism with an explicit witness; anything else is reported
    inconclusive rather than guessed.
    """
    if a.tag != b.tag or a.n != b.n or a.delta != b.delta:
        raise DomainError("iso_test compares members of one family at one (n, delta)")
    inv_a, inv_b = invariants(a), invariants(b)
    if inv_a != inv_b:
        return IsoDecision(verdict="not_isomorphic", note="invariant tuples differ")
    ca, cb = canonicalize(a), canonicalize(b)
    eq = _specs_equal(ca.spec, cb.spec)
    if eq is True:
        witness = None
        note = "canonical forms coincide"
        ra, rb = ca.witness.radical, cb.witness.radical
        if ra is None or rb is None or ra == rb:
            witness = compose(ca.witness.total, invert(cb.witness.total))
        else:
            note += "; witnesses use different radical extensions, returning the chains only"
        return IsoDecision(
            verdict="isomorphic", witness=witness, canonical_a=ca, canonical_b=cb, note=note
        )
    if eq is None:
        return IsoDecision(
            verdict="inconclusive",
            canonical_a=ca,
            canonical_b=cb,
            note="canonical moduli live in different radical extensions",
        )
    return IsoDecision(
        verdict="inconclusive",
        canonical_a=ca,
        canonical_b=cb,
        note="equal invariants but distinct canonical forms; the invariant set "
        "is only proven complete on the classified families",
    )


def catalog_match(canon: FamilySpec) -> Optional[FamilySpec]:
    """The catalog entry whose pattern the canonical form fits, if any."""
    for entry in canonical_catalog(canon.n, canon.delta):
        if entry.tag != canon.tag:
            continue
        ok = True
        for t in entry.positions():
            ev, cv = entry.alpha(t), canon.alpha(t)
            if isinstance(ev, MPoly) and ev.constant_value() is None:
                domain = dict(entry.moduli).get(t, "any")
                if domain == "nonzero" and sc_zero(cv):
                    ok = False
                    break
            else:
                if not sc_zero(cv - ev):
                    ok = False
                    break
        if ok:
            return entry
    return None
