"""Structure-constant algebras, antisymmetric brackets, and identity checkers.

Vectors are sparse dicts ``{basis index: scalar}`` with 1-based indices.
Scalars may be rationals, radical-extension elements, or polynomials; every
checker reports residuals exactly, without short-circuiting, so a report can
double as a regression fixture.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Tuple

from .exactnum import DomainError, MPoly, sc_json, sc_str, sc_zero

Vec = Dict[int, object]

IDENTITY_KINDS = (
    "commutative",
    "associative",
    "jacobi",
    "delta_poisson",
    "transposed",
    "cyclic_dp",
    "cyclic_tdp",
    "mixed_trivial",
)


def basis(i: int) -> Vec:
    return {i: Fraction(1)}


def vec_add(a: Vec, b: Vec) -> Vec:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + v
        if sc_zero(s):
            out.pop(k, None)
        else:
            out[k] = s
    return out


def vec_scale(c, a: Vec) -> Vec:
    if sc_zero(c):
        return {}
    out = {}
    for k, v in a.items():
        s = c * v
        if not sc_zero(s):
            out[k] = s
    return out


def vec_sub(a: Vec, b: Vec) -> Vec:
    return vec_add(a, vec_scale(Fraction(-1), b))


def vec_is_zero(a: Vec) -> bool:
    return all(sc_zero(v) for v in a.values())


def vec_eq(a: Vec, b: Vec) -> bool:
    return vec_is_zero(vec_sub(a, b))


def _clean(vec: Vec) -> Vec:
    return {k: v for k, v in vec.items() if not sc_zero(v)}


class CommAlgebra:
    """A commutative associative algebra given by structure constants.

    ``product[(i, j)]`` holds the coefficient vector of e_i * e_j.  Both
    orders are stored so that commutativity is a checkable property rather
    than a baked-in assumption.
    """

    def __init__(self, n: int, product: Dict[Tuple[int, int], Vec]):
        if n < 1:
            raise DomainError("dimension must be positive")
        self.n = n
        self.product = {}
        for (i, j), vec in product.items():
            if not (1 <= i <= n and 1 <= j <= n):
                raise DomainError(f"basis index out of range in product ({i},{j})")
            if any(not 1 <= t <= n for t in vec):
                raise DomainError("coefficient index out of range")
            cleaned = _clean(vec)
            if cleaned:
                self.product[(i, j)] = cleaned

    def prod_basis(self, i: int, j: int) -> Vec:
        return dict(self.product.get((i, j), {}))

    def multiply(self, x: Vec, y: Vec) -> Vec:
        if any(k > self.n for k in x) or any(k > self.n for k in y):
            raise DomainError("vector length exceeds algebra dimension")
        out: Vec = {}
        for i, xi in x.items():
            if sc_zero(xi):
                continue
            for j, yj in y.items():
                if sc_zero(yj):
                    continue
                for t, c in self.product.get((i, j), {}).items():
                    s = out.get(t, 0) + xi * yj * c
                    if sc_zero(s):
                        out.pop(t, None)
                    else:
                        out[t] = s
        return out

    def __eq__(self, other):
        if not isinstance(other, CommAlgebra):
            return NotImplemented
        if self.n != other.n:
            return False
        keys = set(self.product) | set(other.product)
        return all(vec_eq(self.prod_basis(*k), other.prod_basis(*k)) for k in keys)

    def to_json(self):
        out = {}
        for (i, j), vec in sorted(self.product.items()):
            out[f"{i},{j}"] = {str(t): sc_json(vec[t]) for t in sorted(vec)}
        return out


class Bracket:
    """An antisymmetric bilinear bracket stored on pairs i < j.

    Antisymmetry and alternation hold structurally; the Jacobi identity does
    not, and must be checked.
    """

    def __init__(self, n: int, entries: Dict[Tuple[int, int], Vec] = None):
        if n < 1:
            raise DomainError("dimension must be positive")
        self.n = n
        self.entries: Dict[Tuple[int, int], Vec] = {}
        for (i, j), vec in (entries or {}).items():
            self.set_entry(i, j, vec)

    def set_entry(self, i: int, j: int, vec: Vec):
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise DomainError(f"basis index out of range ({i},{j})")
        if any(not 1 <= t <= self.n for t in vec):
            raise DomainError("coefficient index out of range")
        if i == j:
            if not vec_is_zero(vec):
                raise DomainError("[e_i, e_i] must vanish")
            return
        if i > j:
            i, j, vec = j, i, vec_scale(Fraction(-1), vec)
        cleaned = _clean(vec)
        if cleaned:
            self.entries[(i, j)] = cleaned
        else:
            self.entries.pop((i, j), None)

    def entry(self, i: int, j: int) -> Vec:
        if i == j:
            return {}
        if i < j:
            return dict(self.entries.get((i, j), {}))
        return vec_scale(Fraction(-1), self.entries.get((j, i), {}))

    def apply(self, x: Vec, y: Vec) -> Vec:
        if any(k > self.n for k in x) or any(k > self.n for k in y):
            raise DomainError("vector length exceeds bracket dimension")
        out: Vec = {}
        for i, xi in x.items():
            for j, yj in y.items():
                if i == j:
                    continue
                for t, c in self.entry(i, j).items():
                    s = out.get(t, 0) + xi * yj * c
                    if sc_zero(s):
                        out.pop(t, None)
                    else:
                        out[t] = s
        return out

    def is_zero(self) -> bool:
        return all(vec_is_zero(v) for v in self.entries.values())

    def map_scalars(self, fn) -> "Bracket":
        return Bracket(
            self.n,
            {k: {t: fn(c) for t, c in vec.items()} for k, vec in self.entries.items()},
        )

    def __eq__(self, other):
        if not isinstance(other, Bracket):
            return NotImplemented
        if self.n != other.n:
            return False
        keys = set(self.entries) | set(other.entries)
        return all(vec_eq(self.entry(*k), other.entry(*k)) for k in keys)

    def to_json(self):
        out = {}
        for (i, j), vec in sorted(self.entries.items()):
            out[f"{i},{j}"] = {str(t): sc_json(vec[t]) for t in sorted(vec)}
        return out


@dataclass(frozen=True)
class PoissonPair:
    """A commutative product, an antisymmetric bracket, and the scalar delta.

    delta may be a rational or a polynomial variable; in the symbolic case
    the checkers return polynomial residuals.
    """

    base: CommAlgebra
    bracket: Bracket
    delta: object

    def __post_init__(self):
        if self.base.n != self.bracket.n:
            raise DomainError("base and bracket dimension mismatch")

    @property
    def n(self) -> int:
        return self.base.n

    def to_json(self):
        return {
            "n": self.n,
            "delta": sc_json(self.delta),
            "product": self.base.to_json(),
            "bracket": self.bracket.to_json(),
        }


@dataclass
class ResidualReport:
    """Every nonzero residual of an identity check: (indices, coordinate, value)."""

    kind: str
    residuals: list = field(default_factory=list)

    @property
    def all_zero(self) -> bool:
        return not self.residuals

    def add(self, indices, coord, value):
        if not sc_zero(value):
            self.residuals.append((indices, coord, value))

    def to_json(self):
        return {
            "kind": self.kind,
            "all_zero": self.all_zero,
            "residuals": [
                {"at": list(ix), "coord": t, "value": sc_json(v)} for ix, t, v in self.residuals
            ],
        }

    def __str__(self):
        if self.all_zero:
            return f"{self.kind}: all residuals zero"
        lines = [f"{self.kind}: {len(self.residuals)} nonzero residuals"]
        for ix, t, v in self.residuals[:12]:
            lines.append(f"  at {ix} coord e_{t}: {sc_str(v)}")
        if len(self.residuals) > 12:
            lines.append(f"  ... {len(self.residuals) - 12} more")
        return "\n".join(lines)


def multiply(alg: CommAlgebra, x: Vec, y: Vec) -> Vec:
    """Bilinear extension of the structure constants."""
    return alg.multiply(x, y)


def bracket_apply(b: Bracket, x: Vec, y: Vec) -> Vec:
    """Bilinear antisymmetric extension of the bracket table."""
    return b.apply(x, y)


def check_identity(pair: PoissonPair, kind: str) -> ResidualReport:
    """Evaluate one compatibility identity on all basis tuples, exactly.

    Identities handled:

    * commutative / associative -- for the product alone;
    * jacobi -- for the bracket alone;
    * delta_poisson:   [x, y.z] - delta([x,y].z + y.[x,z]);
    * transposed:      delta z.[x,y] - [z.x, y] - [x, z.y];
    * cyclic_dp:       [x, y.z] + [y, z.x] + [z, x.y];
    * cyclic_tdp:      x.[y,z] + y.[z,x] + z.[x,y];
    * mixed_trivial:   both x.[y,z] and [x.y, z] on all triples.

    Multilinearity makes basis coverage exhaustive.  Residuals are reported
    per coordinate and never coerced, so symbolic delta yields polynomials.
    """
    if kind not in IDENTITY_KINDS:
        raise DomainError(f"unknown identity kind {kind!r}")
    n = pair.n
    alg, br, d = pair.base, pair.bracket, pair.delta
    rep = ResidualReport(kind)
    rng = range(1, n + 1)

    if kind == "commutative":
        for i in rng:
            for j in rng:
                res = vec_sub(alg.prod_basis(i, j), alg.prod_basis(j, i))
                for t, v in sorted(res.items()):
                    rep.add((i, j), t, v)
        return rep

    if kind == "associative":
        for i in rng:
            for j in rng:
                for k in rng:
                    lhs = alg.multiply(alg.prod_basis(i, j), basis(k))
                    rhs = alg.multiply(basis(i), alg.prod_basis(j, k))
                    for t, v in sorted(vec_sub(lhs, rhs).items()):
                        rep.add((i, j, k), t, v)
        return rep

    if kind == "jacobi":
        for i in rng:
            for j in rng:
                for k in rng:
                    res = vec_add(
                        br.apply(br.entry(i, j), basis(k)),
                        vec_add(
                            br.apply(br.entry(j, k), basis(i)),
                            br.apply(br.entry(k, i), basis(j)),
                        ),
                    )
                    for t, v in sorted(res.items()):
                        rep.add((i, j, k), t, v)
        return rep

    for a in rng:
        for b in rng:
            for c in rng:
                ea, eb, ec = basis(a), basis(b), basis(c)
                if kind == "delta_poisson":
                    res = vec_sub(
                        br.apply(ea, alg.prod_basis(b, c)),
                        vec_scale(
                            d,
                            vec_add(
                                alg.multiply(br.entry(a, b), ec),
                                alg.multiply(eb, br.entry(a, c)),
                            ),
                        ),
                    )
                elif kind == "transposed":
                    res = vec_sub(
                        vec_scale(d, alg.multiply(ea, br.entry(b, c))),
                        vec_add(
                            br.apply(alg.prod_basis(a, b), ec),
                            br.apply(eb, alg.prod_basis(a, c)),
                        ),
                    )
                elif kind == "cyclic_dp":
                    res = vec_add(
                        br.apply(ea, alg.prod_basis(b, c)),
                        vec_add(
                            br.apply(eb, alg.prod_basis(c, a)),
                            br.apply(ec, alg.prod_basis(a, b)),
                        ),
                    )
                elif kind == "cyclic_tdp":
                    res = vec_add(
                        alg.multiply(ea, br.entry(b, c)),
                        vec_add(
                            alg.multiply(eb, br.entry(c, a)),
                            alg.multiply(ec, br.entry(a, b)),
                        ),
                    )
                else:  # mixed_trivial
                    res = alg.multiply(ea, br.entry(b, c))
                    for t, v in sorted(res.items()):
                        rep.add((a, b, c), t, v)
                    res = br.apply(alg.prod_basis(a, b), ec)
                for t, v in sorted(res.items()):
                    rep.add((a, b, c), t, v)
    return rep


@dataclass
class PowerDims:
    dims: list
    is_null_filiform: bool
    nilpotency_index: object  # int, or None when not nilpotent within the cutoff
    nilpotent: bool

    def __iter__(self):
        return iter(self.dims)


def _rref_rows(rows):
    """Row-reduce dense rows over a field; returns the reduced nonzero rows."""
    basis_rows = []
    for row in rows:
        row = list(row)
        for prow in basis_rows:
            lead = next(i for i, v in enumerate(prow) if not sc_zero(v))
            if not sc_zero(row[lead]):
                f = row[lead]
                row = [r - f * p for r, p in zip(row, prow)]
        if all(sc_zero(v) for v in row):
            continue
        lead = next(i for i, v in enumerate(row) if not sc_zero(v))
        inv = row[lead]
        row = [v / inv for v in row]
        for k, prow in enumerate(basis_rows):
            if not sc_zero(prow[lead]):
                f = prow[lead]
                basis_rows[k] = [p - f * r for p, r in zip(prow, row)]
        basis_rows.append(row)
    basis_rows.sort(key=lambda r: next(i for i, v in enumerate(r) if not sc_zero(v)))
    return basis_rows


def power_dims(alg: CommAlgebra) -> PowerDims:
    """Dimensions of the power series A^1, A^2, ... down to zero.

    A^(i+1) = sum_k A^k * A^(i+1-k).  The null-filiform profile is
    [n, n-1, ..., 1, 0]; a non-nilpotent input stops at the cutoff n+1 with
    the nilpotent flag cleared.
    """
    n = alg.n
    spans = {1: [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]}
    dims = [n]
    i = 1
    while dims[-1] > 0 and i <= n:
        new_rows = []
        for k in range(1, i + 1):
            for xr in spans[k]:
                for yr in spans[i + 1 - k]:
                    x = {t + 1: v for t, v in enumerate(xr) if not sc_zero(v)}
                    y = {t + 1: v for t, v in enumerate(yr) if not sc_zero(v)}
                    prod = alg.multiply(x, y)
                    if prod:
                        new_rows.append([prod.get(t + 1, Fraction(0)) for t in range(n)])
        reduced = _rref_rows(new_rows)
        spans[i + 1] = reduced
        dims.append(len(reduced))
        i += 1
    nilpotent = dims[-1] == 0
    expected = list(range(n, -1, -1))
    return PowerDims(
        dims=dims,
        is_null_filiform=(dims == expected),
        nilpotency_index=len(dims) if nilpotent else None,
        nilpotent=nilpotent,
    )
