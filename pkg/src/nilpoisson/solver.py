"""Solve for all bracket structures on the null-filiform algebra.

Pipeline: put unknowns c_{i,j,t} on every bracket entry [e_i, e_j] =
sum_t c_{i,j,t} e_t (i < j, antisymmetry structural), generate one linear
row per (ordered basis triple, output coordinate) from the chosen
compatibility identity, compute the exact kernel, then close the remaining
quadratic Jacobi obstructions under the forced-zero rule
(c * p^k = 0 over a field forces p = 0).

Everything is exact over Q and fully deterministic: rows keep their
triple-lexicographic provenance order, elimination pivots on the first
nonzero column with smallest provenance, and free kernel columns are named
p0, p1, ... in unknown-registry order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Tuple

from .algebra import Bracket, PoissonPair, check_identity, vec_add, vec_scale
from .exactnum import DomainError, MPoly, sc_json, sc_zero
from .families import FamilySpec, instantiate
from .nullfiliform import mu0

SOLVE_KINDS = ("delta_poisson", "transposed")


class UnsupportedModeError(DomainError):
    """Solving needs a rational delta; symbolic delta works in verify mode
    (instantiate a candidate family and run the identity checkers)."""


def unknown_registry(n: int) -> List[Tuple[int, int, int]]:
    """Unknown order: (i, j) lexicographic with i < j, then coordinate t."""
    return [(i, j, t) for i in range(1, n + 1) for j in range(i + 1, n + 1) for t in range(1, n + 1)]


@dataclass
class AnsatzBracket:
    """The fully general antisymmetric bracket with named unknowns c_i_j_t."""

    n: int

    @property
    def unknowns(self) -> List[Tuple[int, int, int]]:
        return unknown_registry(self.n)

    def names(self) -> List[str]:
        return [f"c_{i}_{j}_{t}" for (i, j, t) in self.unknowns]

    def bracket(self) -> Bracket:
        br = Bracket(self.n)
        for i in range(1, self.n + 1):
            for j in range(i + 1, self.n + 1):
                br.set_entry(i, j, {t: MPoly.var(f"c_{i}_{j}_{t}") for t in range(1, self.n + 1)})
        return br


@dataclass
class LinearSystem:
    """Homogeneous rows over the unknown registry; rows are sorted sparse
    (column, coefficient) tuples, deduplicated after leading-1 normalization."""

    n: int
    delta: Fraction
    kind: str
    unknowns: List[Tuple[int, int, int]]
    rows: List[Tuple[Tuple[int, Fraction], ...]] = field(default_factory=list)

    @property
    def num_unknowns(self) -> int:
        return len(self.unknowns)


def _coeff_accessor(n: int):
    index = {key: k for k, key in enumerate(unknown_registry(n))}

    def unk(i: int, j: int, t: int):
        # signed unknown index of the e_t coefficient of [e_i, e_j]
        if i == j or not (1 <= t <= n):
            return None
        if i < j:
            return index[(i, j, t)], Fraction(1)
        return index[(j, i, t)], Fraction(-1)

    return unk


def assemble(n: int, delta, kind: str) -> LinearSystem:
    """Rows of the chosen identity over all ordered basis triples.

    transposed, triple (z, x, y) = (a, b, c), coordinate t:
        delta * (e_a . [e_b, e_c])_t - [e_a.e_b, e_c]_t - [e_b, e_a.e_c]_t
    delta_poisson, triple (x, y, z) = (a, b, c), coordinate t:
        [e_a, e_b.e_c]_t - delta [e_a,e_b]_t-after-.e_c - delta (e_b.[e_a,e_c])_t
    """
    if kind not in SOLVE_KINDS:
        raise DomainError(f"unknown solve kind {kind!r}")
    if n < 2:
        raise DomainError("need dimension >= 2")
    if isinstance(delta, MPoly):
        raise UnsupportedModeError(
            "symbolic delta cannot be solved for; use verify mode (check_identity on a family)"
        )
    delta = Fraction(delta)
    unk = _coeff_accessor(n)
    rows: List[Tuple[Tuple[int, Fraction], ...]] = []
    seen = set()

    def emit(parts: List[Tuple[object, Fraction]]):
        # parts: ((i, j, t), coefficient) contributions; collect and normalize
        acc: Dict[int, Fraction] = {}
        for key, coef in parts:
            if coef == 0 or key is None:
                continue
            idx, sign = key
            c = acc.get(idx, Fraction(0)) + coef * sign
            if c == 0:
                acc.pop(idx, None)
            else:
                acc[idx] = c
        if not acc:
            return
        items = sorted(acc.items())
        lead = items[0][1]
        items = tuple((k, v / lead) for k, v in items)
        if items not in seen:
            seen.add(items)
            rows.append(items)

    rng = range(1, n + 1)
    for a in rng:
        for b in rng:
            for c in rng:
                for t in rng:
                    parts = []
                    if kind == "transposed":
                        # delta e_a.[e_b,e_c] : e_a e_u = e_{a+u}; want a+u = t
                        if delta != 0 and t - a >= 1:
                            parts.append((unk(b, c, t - a), delta))
                        if a + b <= n:
                            parts.append((unk(a + b, c, t), Fraction(-1)))
                        if a + c <= n:
                            parts.append((unk(b, a + c, t), Fraction(-1)))
                    else:
                        if b + c <= n:
                            parts.append((unk(a, b + c, t), Fraction(1)))
                        if delta != 0:
                            if t - c >= 1:
                                parts.append((unk(a, b, t - c), -delta))
                            if t - b >= 1:
                                parts.append((unk(a, c, t - b), -delta))
                    emit(parts)
    return LinearSystem(n=n, delta=delta, kind=kind, unknowns=unknown_registry(n), rows=rows)


@dataclass
class SolutionSpace:
    """A parametrized family of brackets solving the linear layer, plus any
    residual Jacobi conditions that the forced-zero closure could not clear."""

    n: int
    delta: Fraction
    kind: str
    params: List[str]
    basis: List[Bracket]
    residual_conditions: List[MPoly] = field(default_factory=list)
    forced: List[str] = field(default_factory=list)

    @property
    def free_count(self) -> int:
        return len(self.params)

    def parametrized_bracket(self) -> Bracket:
        br = Bracket(self.n)
        for i in range(1, self.n + 1):
            for j in range(i + 1, self.n + 1):
                vec = {}
                for name, bk in zip(self.params, self.basis):
                    for t, c in bk.entry(i, j).items():
                        term = MPoly.var(name) * c
                        vec[t] = vec.get(t, MPoly.zero()) + term
                br.set_entry(i, j, {t: v for t, v in vec.items() if not sc_zero(v)})
        return br

    def entry_poly(self, i: int, j: int, t: int) -> MPoly:
        acc = MPoly.zero()
        for name, bk in zip(self.params, self.basis):
            c = bk.entry(i, j).get(t, Fraction(0))
            if not sc_zero(c):
                acc = acc + MPoly.var(name) * c
        return acc

    def pair(self) -> PoissonPair:
        return PoissonPair(mu0(self.n), self.parametrized_bracket(), self.delta)

    def instance(self, values: Dict[str, Fraction]) -> PoissonPair:
        br = Bracket(self.n)
        for i in range(1, self.n + 1):
            for j in range(i + 1, self.n + 1):
                vec = {}
                for name, bk in zip(self.params, self.basis):
                    v = Fraction(values.get(name, 0))
                    for t, c in bk.entry(i, j).items():
                        vec[t] = vec.get(t, Fraction(0)) + v * c
                br.set_entry(i, j, vec)
        return PoissonPair(mu0(self.n), br, self.delta)

    def to_json(self):
        return {
            "n": self.n,
            "delta": sc_json(self.delta),
            "kind": self.kind,
            "free": list(self.params),
            "basis": [b.to_json() for b in self.basis],
            "residual_conditions": [p.to_json() for p in self.residual_conditions],
            "forced": list(self.forced),
        }


def nullspace(sys: LinearSystem) -> SolutionSpace:
    """Exact kernel of the homogeneous system, as a parametrized bracket space.

    Rows are reduced online into a fully back-substituted echelon basis
    (leading coefficient 1, leading column cleared everywhere else), which is
    the unique reduced form of the row space; free columns become parameters
    p0, p1, ... in registry order.
    """
    # online full reduction: every stored pivot row is {pivot column: 1} plus
    # free columns only, so kernel vectors can be read off directly
    pivots: Dict[int, Dict[int, Fraction]] = {}
    for row in sys.rows:
        work = dict(row)
        for col in [c for c in sorted(work) if c in pivots]:
            f = work.pop(col)
            for c, v in pivots[col].items():
                if c == col:
                    continue
                s = work.get(c, Fraction(0)) - f * v
                if s == 0:
                    work.pop(c, None)
                else:
                    work[c] = s
        if not work:
            continue
        lead = min(work)
        f = work[lead]
        newrow = {c: v / f for c, v in work.items()}
        for prow in pivots.values():
            if lead in prow:
                g = prow.pop(lead)
                for c, v in newrow.items():
                    if c == lead:
                        continue
                    s = prow.get(c, Fraction(0)) - g * v
                    if s == 0:
                        prow.pop(c, None)
                    else:
                        prow[c] = s
        pivots[lead] = newrow
    free_cols = [k for k in range(sys.num_unknowns) if k not in pivots]
    params = [f"p{idx}" for idx in range(len(free_cols))]
    basis = []
    for f in free_cols:
        vec = {f: Fraction(1)}
        for plead, prow in pivots.items():
            c = prow.get(f, Fraction(0))
            if c != 0:
                vec[plead] = -c
        br = Bracket(sys.n)
        acc: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
        for col, v in vec.items():
            i, j, t = sys.unknowns[col]
            acc.setdefault((i, j), {})[t] = v
        for (i, j), coeffs in acc.items():
            br.set_entry(i, j, coeffs)
        basis.append(br)
    return SolutionSpace(
        n=sys.n, delta=sys.delta, kind=sys.kind, params=params, basis=basis
    )


def _jacobi_residual_polys(space: SolutionSpace) -> List[MPoly]:
    br = space.parametrized_bracket()
    polys = []
    for a, b, c in combinations(range(1, space.n + 1), 3):
        res = vec_add(
            br.apply(br.entry(a, b), {c: Fraction(1)}),
            vec_add(
                br.apply(br.entry(b, c), {a: Fraction(1)}),
                br.apply(br.entry(c, a), {b: Fraction(1)}),
            ),
        )
        for t in sorted(res):
            v = res[t]
            if not sc_zero(v):
                polys.append(v if isinstance(v, MPoly) else MPoly.const(v))
    return polys


def _forced_param(poly: MPoly):
    # matches (nonzero rational) * p^k for a single parameter p
    if len(poly.terms) != 1:
        return None
    (exps,), = (list(poly.terms.keys()),)
    live = [(v, e) for v, e in zip(poly.vars, exps) if e != 0]
    if len(live) == 1 and live[0][1] > 0:
        return live[0][0]
    return None


def jacobi_reduce(space: SolutionSpace) -> SolutionSpace:
    """Close Jacobi obstructions under the forced-zero rule.

    Residuals of the parametrized bracket are polynomials in the free
    parameters.  Any residual of shape c * p^k forces p = 0; substitution
    re-expands, to a fixed point.  Whatever remains is reported verbatim as
    residual conditions; nothing is solved heuristically.
    """
    forced: List[str] = list(space.forced)
    current = space
    while True:
        residuals = _jacobi_residual_polys(current)
        new_forced = sorted({p for r in residuals if (p := _forced_param(r)) is not None})
        if not new_forced:
            conditions = []
            seen = set()
            for r in residuals:
                key = str(r)
                if key not in seen:
                    seen.add(key)
                    conditions.append(r)
            return SolutionSpace(
                n=current.n,
                delta=current.delta,
                kind=current.kind,
                params=current.params,
                basis=current.basis,
                residual_conditions=conditions,
                forced=forced,
            )
        forced.extend(f"{p}=0" for p in new_forced)
        keep = [(p, b) for p, b in zip(current.params, current.basis) if p not in new_forced]
        current = SolutionSpace(
            n=current.n,
            delta=current.delta,
            kind=current.kind,
            params=[p for p, _ in keep],
            basis=[b for _, b in keep],
            forced=forced,
        )


def solve(n: int, delta, kind: str) -> SolutionSpace:
    """assemble -> nullspace -> jacobi_reduce, all exact and deterministic."""
    return jacobi_reduce(nullspace(assemble(n, delta, kind)))


@dataclass
class MatchReport:
    matched: object  # True / False / None (inconclusive)
    substitution: Dict[str, Dict[str, Fraction]] = field(default_factory=dict)
    witness_coord: Tuple[int, int, int] = None
    note: str = ""

    def to_json(self):
        out = {"matched": self.matched, "note": self.note}
        if self.substitution:
            out["substitution"] = {
                p: {a: str(c) for a, c in combo.items()} for p, combo in self.substitution.items()
            }
        if self.witness_coord:
            out["witness_coord"] = list(self.witness_coord)
        return out


def _bracket_vector(br: Bracket, coords: List[Tuple[int, int, int]]) -> List[Fraction]:
    return [br.entry(i, j).get(t, Fraction(0)) for (i, j, t) in coords]


def _rref(vectors: List[List[Fraction]]):
    rows = []
    for vec in vectors:
        row = list(vec)
        for prow in rows:
            lead = next(k for k, v in enumerate(prow) if v != 0)
            if row[lead] != 0:
                f = row[lead]
                row = [a - f * b for a, b in zip(row, prow)]
        if any(v != 0 for v in row):
            lead = next(k for k, v in enumerate(row) if v != 0)
            inv = row[lead]
            row = [v / inv for v in row]
            for idx, prow in enumerate(rows):
                if prow[lead] != 0:
                    f = prow[lead]
                    rows[idx] = [a - f * b for a, b in zip(prow, row)]
            rows.append(row)
    rows.sort(key=lambda r: next(k for k, v in enumerate(r) if v != 0))
    return rows

def match_family(space: SolutionSpace, spec: FamilySpec) -> MatchReport:
    """Is the solved space the same parametrized bracket family as ``spec``?

    The family must carry symbolic parameters.  Both sides are linear in
    their parameters, so equality of the two spans decides it; a match comes
    with the invertible substitution space-parameter -> family-parameters.
    """
    if spec.n != space.n:
        raise DomainError("dimension mismatch")
    if space.residual_conditions:
        return MatchReport(
            matched=None,
            note="space carries residual conditions beyond forced zeros; comparing spans "
            "on the constrained subvariety is not meaningful here",
        )
    pair = instantiate(spec)
    family_params = []
    for pos, a in zip(spec.positions(), spec.alphas):
        if isinstance(a, MPoly) and a.constant_value() is None:
            used = a.vars_used()
            if len(used) != 1:
                raise DomainError("family parameters must be fresh single variables")
            family_params.append(used[0])
        elif not sc_zero(a):
            raise DomainError("family slots must be symbolic parameters or exact zeros")
    coords = [(i, j, t) for i in range(1, space.n + 1) for j in range(i + 1, space.n + 1)
              for t in range(1, space.n + 1)]
    fam_vectors = []
    for name in family_params:
        vec = []
        for (i, j, t) in coords:
            entry = pair.bracket.entry(i, j).get(t, MPoly.zero())
            if isinstance(entry, MPoly):
                dd = entry.poly_in(name).get(1, MPoly.zero()).substitute(
                    {v: 0 for v in entry.vars_used() if v != name}
                )
                c = dd.constant_value()
                vec.append(Fraction(0) if c is None else c)
            else:
                vec.append(Fraction(0))
        fam_vectors.append(vec)
    space_vectors = [_bracket_vector(b, coords) for b in space.basis]
    r1, r2 = _rref(space_vectors), _rref(fam_vectors)
    if r1 == r2:
        # express each space basis vector over the family basis
        sub = {}
        for pname, svec in zip(space.params, space_vectors):
            combo = _solve_in_span(fam_vectors, svec)
            sub[pname] = {family_params[k]: c for k, c in enumerate(combo) if c != 0}
        return MatchReport(matched=True, substitution=sub, note="parametrized brackets coincide")
    # find a coordinate witnessing the difference
    for row1, row2 in zip(r1 + [None] * len(r2), r2 + [None] * len(r1)):
        if row1 != row2:
            row = row1 if row1 is not None else row2
            lead = next(k for k, v in enumerate(row) if v != 0)
            return MatchReport(matched=False, witness_coord=coords[lead], note="spans differ")
    return MatchReport(matched=False, note="spans differ in dimension")


def _solve_in_span(basis_vectors, target):
    # least-structure exact solve: reduce target against the basis rows
    if not basis_vectors:
        return []
    aug = [list(v) + [Fraction(1) if k == i else Fraction(0) for k in range(len(basis_vectors))]
           for i, v in enumerate(basis_vectors)]
    reduced = _rref(aug)
    width = len(target)
    combo = [Fraction(0)] * len(basis_vectors)
    work = list(target)
    for row in reduced:
        lead = next(k for k, v in enumerate(row) if v != 0)
        if lead >= width:
            continue
        if work[lead] != 0:
            f = work[lead]
            for k in range(width):
                work[k] -= f * row[k]
            for k in range(len(basis_vectors)):
                combo[k] += f * row[width + k]
    if any(v != 0 for v in work):
        raise DomainError("target not in span")
    return combo
