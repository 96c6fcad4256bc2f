"""Constructors for the classified bracket families on the null-filiform
algebra, and the canonical-form catalogs per (dimension, delta).

Family conventions (parameters are the coefficients of [e_1, e_2]):

* TP0 (delta = 0): parameters alpha_1..alpha_n, only [e_1, e_2] nonzero.
* TP1 (delta = 1): parameters alpha_2..alpha_n,
      [e_1, e_i] = sum_{t=i..n} alpha_{t-i+2} e_t.
* TP2 (delta = 2): parameters alpha_2..alpha_n,
      [e_i, e_j] = (j-i) sum_{t=i+j-1..n} alpha_{t-i-j+3} e_t.
* TPdelta (delta outside {0,1,2}, n >= 5): parameters
      alpha_{n-2}, alpha_{n-1}, alpha_n, with
      [e_1,e_2] = alpha_{n-2} e_{n-2} + alpha_{n-1} e_{n-1} + alpha_n e_n,
      [e_1,e_3] = delta (alpha_{n-2} e_{n-1} + alpha_{n-1} e_n),
      [e_2,e_3] = (delta^2-delta)/2 alpha_{n-2} e_n,
      [e_1,e_4] = (delta^2+delta)/2 alpha_{n-2} e_n.
* Dim2 / Dim3 / Dim4: the low-dimensional general forms with parameters
  alpha_1..alpha_n; for nonzero delta they require alpha_1 = 0.
* TrivialDeltaPoisson: the zero bracket (any n, any delta).

Moduli in catalog entries are symbolic slots; specialize() fills them in.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Tuple

from .algebra import Bracket, PoissonPair
from .exactnum import DomainError, MPoly, parse_rat, rat_to_str, sc_json, sc_zero
from .nullfiliform import mu0

FAMILY_TAGS = ("TP0", "TP1", "TP2", "TPdelta", "Dim2", "Dim3", "Dim4", "TrivialDeltaPoisson")

# first absolute position of the parameter list, per tag (None: no parameters)
_FIRST_POS = {"TP0": 1, "TP1": 2, "TP2": 2, "Dim2": 1, "Dim3": 1, "Dim4": 1}


def param_positions(tag: str, n: int) -> Tuple[int, ...]:
    """Absolute basis positions covered by the parameter list of a family."""
    if tag == "TrivialDeltaPoisson":
        return ()
    if tag == "TPdelta":
        return (n - 2, n - 1, n)
    return tuple(range(_FIRST_POS[tag], n + 1))


@dataclass(frozen=True)
class FamilySpec:
    """A family tag, dimension, delta, and parameter values.

    Parameter entries may be rationals, radical-extension scalars, or
    polynomials (symbolic moduli).  ``moduli`` annotates free slots emitted
    by the catalogs: pairs (absolute position, domain) with domain "any" or
    "nonzero".
    """

    tag: str
    n: int
    delta: object
    alphas: tuple = ()
    moduli: tuple = ()

    def __post_init__(self):
        if self.tag not in FAMILY_TAGS:
            raise DomainError(f"unknown family tag {self.tag!r}")
        if self.tag == "Dim2" and self.n != 2:
            raise DomainError("Dim2 needs n = 2")
        if self.tag == "Dim3" and self.n != 3:
            raise DomainError("Dim3 needs n = 3")
        if self.tag == "Dim4" and self.n != 4:
            raise DomainError("Dim4 needs n = 4")
        if self.tag == "TPdelta" and self.n < 5:
            raise DomainError("TPdelta needs n >= 5; use Dim2/Dim3/Dim4 below that")
        if self.tag == "TP0" and self.delta != 0:
            raise DomainError("TP0 carries delta = 0")
        if self.tag == "TP1" and self.delta != 1:
            raise DomainError("TP1 carries delta = 1")
        if self.tag == "TP2" and self.delta != 2:
            raise DomainError("TP2 carries delta = 2")
        if self.tag == "TPdelta" and isinstance(self.delta, Fraction) and self.delta in (0, 1, 2):
            raise DomainError("TPdelta needs delta outside {0, 1, 2}")
        expected = len(param_positions(self.tag, self.n))
        if len(self.alphas) != expected:
            raise DomainError(
                f"{self.tag} at n={self.n} takes {expected} parameters, got {len(self.alphas)}"
            )

    # parameter access by absolute basis position
    def positions(self) -> Tuple[int, ...]:
        return param_positions(self.tag, self.n)

    def alpha(self, t: int):
        pos = self.positions()
        if t in pos:
            return self.alphas[pos.index(t)]
        return Fraction(0)

    def first_nonzero(self):
        for t in self.positions():
            if not sc_zero(self.alpha(t)):
                return t
        return None

    def specialize(self, values) -> "FamilySpec":
        """Substitute rationals for symbolic moduli, by position or by name."""
        new = []
        for pos, a in zip(self.positions(), self.alphas):
            if isinstance(a, MPoly):
                c = a.constant_value()
                if c is not None:
                    new.append(c)
                    continue
                names = a.vars_used()
                assignment = {}
                for name in names:
                    if name in values:
                        assignment[name] = Fraction(values[name])
                    elif pos in values:
                        assignment[name] = Fraction(values[pos])
                sub = a.substitute(assignment)
                c = sub.constant_value()
                new.append(c if c is not None else sub)
            else:
                new.append(a)
        return replace(self, alphas=tuple(new), moduli=())

    def to_json(self):
        return {
            "tag": self.tag,
            "n": self.n,
            "delta": sc_json(self.delta),
            "alphas": [sc_json(a) for a in self.alphas],
        }

    @staticmethod
    def from_json(obj) -> "FamilySpec":
        return FamilySpec(
            tag=obj["tag"],
            n=int(obj["n"]),
            delta=parse_rat(obj["delta"]) if isinstance(obj["delta"], str) else obj["delta"],
            alphas=tuple(
                parse_rat(a) if isinstance(a, str) else MPoly.from_json(a) for a in obj["alphas"]
            ),
        )

    def describe(self) -> str:
        vals = ",".join(str(a) if isinstance(a, MPoly) else rat_to_str(a) for a in self.alphas)
        return f"{self.tag}[n={self.n}, delta={self.delta}]({vals})"


def instantiate(spec: FamilySpec) -> PoissonPair:
    """Build the full pair (null-filiform product, family bracket, delta)."""
    n, d = spec.n, spec.delta
    br = Bracket(n)
    tag = spec.tag

    if tag == "TrivialDeltaPoisson":
        return PoissonPair(mu0(n), br, d)

    if tag == "TP0":
        br.set_entry(1, 2, {t: spec.alpha(t) for t in range(1, n + 1)})

    elif tag == "TP1":
        for i in range(2, n + 1):
            br.set_entry(1, i, {t: spec.alpha(t - i + 2) for t in range(i, n + 1)})

    elif tag == "TP2":
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if not 3 <= i + j <= n + 1:
                    continue
                vec = {}
                for t in range(i + j - 1, n + 1):
                    vec[t] = (j - i) * spec.alpha(t - i - j + 3)
                br.set_entry(i, j, vec)

    elif tag == "TPdelta":
        a2, a1, a0 = spec.alpha(n - 2), spec.alpha(n - 1), spec.alpha(n)
        half = Fraction(1, 2)
        br.set_entry(1, 2, {n - 2: a2, n - 1: a1, n: a0})
        br.set_entry(1, 3, {n - 1: d * a2, n: d * a1})
        br.set_entry(2, 3, {n: (d * d - d) * half * a2})
        br.set_entry(1, 4, {n: (d * d + d) * half * a2})

    elif tag == "Dim2":
        br.set_entry(1, 2, {1: spec.alpha(1), 2: spec.alpha(2)})

    elif tag == "Dim3":
        br.set_entry(1, 2, {1: spec.alpha(1), 2: spec.alpha(2), 3: spec.alpha(3)})
        br.set_entry(1, 3, {3: d * spec.alpha(2)})

    elif tag == "Dim4":
        half = Fraction(1, 2)
        br.set_entry(1, 2, {t: spec.alpha(t) for t in range(1, 5)})
        br.set_entry(1, 3, {3: d * spec.alpha(2), 4: d * spec.alpha(3)})
        br.set_entry(2, 3, {4: (d * d - d) * half * spec.alpha(2)})
        br.set_entry(1, 4, {4: (d * d + d) * half * spec.alpha(2)})

    return PoissonPair(mu0(n), br, d)


def _modulus(pos: int) -> MPoly:
    return MPoly.var(f"alpha_{pos}")


def _unit_spec(tag, n, delta, pos_one, modulus_pos=None, modulus_domain="nonzero"):
    positions = param_positions(tag, n)
    alphas = []
    moduli = []
    for t in positions:
        if pos_one is not None and t == pos_one:
            alphas.append(Fraction(1))
        elif modulus_pos is not None and t == modulus_pos:
            alphas.append(_modulus(t))
            moduli.append((t, modulus_domain))
        else:
            alphas.append(Fraction(0))
    return FamilySpec(tag, n, delta, tuple(alphas), tuple(moduli))


def _zero_spec(tag, n, delta):
    return FamilySpec(tag, n, delta, tuple(Fraction(0) for _ in param_positions(tag, n)))


def delta_special_values(n: int):
    """The delta values with enlarged catalogs at dimension n: (n-2)/2,
    (n-1)/2, and the rational roots of delta^2 + 3 delta - (2n-4)."""
    out = {
        "half_n_minus_2": Fraction(n - 2, 2),
        "half_n_minus_1": Fraction(n - 1, 2),
        "quadratic_roots": [],
        "quadratic_poly": "delta^2 + 3*delta - " + rat_to_str(2 * n - 4),
    }
    disc = 9 + 4 * (2 * n - 4)
    r = int(disc**0.5)
    while r * r < disc:
        r += 1
    while r * r > disc:
        r -= 1
    if r * r == disc:
        out["quadratic_roots"] = sorted([Fraction(-3 + r, 2), Fraction(-3 - r, 2)])
    return out


def _catalog_dim2(delta):
    out = []
    if delta == 0:
        out.append(_unit_spec("Dim2", 2, delta, pos_one=1))
    out.append(_unit_spec("Dim2", 2, delta, pos_one=2))
    out.append(_zero_spec("Dim2", 2, delta))
    return out


def _catalog_dim3(delta):
    if delta == 0:
        return [
            _unit_spec("Dim3", 3, delta, pos_one=1),
            _unit_spec("Dim3", 3, delta, pos_one=2),
            _unit_spec("Dim3", 3, delta, pos_one=None, modulus_pos=3),
            _zero_spec("Dim3", 3, delta),
        ]
    if delta == 2:
        return _catalog_tp2(3)
    out = []
    if delta == 1:
        out.append(_unit_spec("Dim3", 3, delta, pos_one=2, modulus_pos=3, modulus_domain="any"))
    else:
        out.append(_unit_spec("Dim3", 3, delta, pos_one=2))
    out.append(_unit_spec("Dim3", 3, delta, pos_one=None, modulus_pos=3))
    out.append(_zero_spec("Dim3", 3, delta))
    return out


def _catalog_dim4(delta):
    if delta == 0:
        return [
            _unit_spec("Dim4", 4, delta, pos_one=1),
            _unit_spec("Dim4", 4, delta, pos_one=2),
            _unit_spec("Dim4", 4, delta, pos_one=None, modulus_pos=3),
            _unit_spec("Dim4", 4, delta, pos_one=4),
            _zero_spec("Dim4", 4, delta),
        ]
    if delta == 2:
        return _catalog_tp2(4)
    out = []
    if delta == 1:
        out.append(_unit_spec("Dim4", 4, delta, pos_one=2, modulus_pos=3, modulus_domain="any"))
        out.append(_unit_spec("Dim4", 4, delta, pos_one=2, modulus_pos=4))
        out.append(_unit_spec("Dim4", 4, delta, pos_one=None, modulus_pos=3))
        out.append(_unit_spec("Dim4", 4, delta, pos_one=4))
        out.append(_zero_spec("Dim4", 4, delta))
        return out
    # nonzero delta forces alpha_1 = 0; the Jacobi identity kills alpha_2
    # unless delta(delta-1)(delta-2)(delta+1) = 0, so the alpha_2 entry only
    # survives at delta = -1 among the remaining values.
    if delta == -1:
        out.append(_unit_spec("Dim4", 4, delta, pos_one=2))
    if delta == Fraction(3, 2):
        out.append(_unit_spec("Dim4", 4, delta, pos_one=None, modulus_pos=3))
        out.append(_unit_spec("Dim4", 4, delta, pos_one=4, modulus_pos=3, modulus_domain="any"))
    else:
        out.append(_unit_spec("Dim4", 4, delta, pos_one=None, modulus_pos=3))
        out.append(_unit_spec("Dim4", 4, delta, pos_one=4))
    out.append(_zero_spec("Dim4", 4, delta))
    return out


def _catalog_tp0(n):
    out = [_unit_spec("TP0", n, Fraction(0), pos_one=1), _unit_spec("TP0", n, Fraction(0), pos_one=2)]
    out.append(_unit_spec("TP0", n, Fraction(0), pos_one=None, modulus_pos=3))
    for s in range(4, n + 1):
        out.append(_unit_spec("TP0", n, Fraction(0), pos_one=s))
    out.append(_zero_spec("TP0", n, Fraction(0)))
    return out


def _catalog_tp1(n):
    out = [_unit_spec("TP1", n, Fraction(1), pos_one=2)]
    for s in range(3, n + 1):
        out.append(_unit_spec("TP1", n, Fraction(1), pos_one=2, modulus_pos=s))
    out.append(_unit_spec("TP1", n, Fraction(1), pos_one=None, modulus_pos=3))
    for p in range(4, n + 1):
        out.append(_unit_spec("TP1", n, Fraction(1), pos_one=p))
    out.append(_zero_spec("TP1", n, Fraction(1)))
    return out


def _catalog_tp2(n):
    out = [_unit_spec("TP2", n, Fraction(2), pos_one=2)]
    if n >= 3:
        out.append(_unit_spec("TP2", n, Fraction(2), pos_one=None, modulus_pos=3))
    for s in range(4, n + 1):
        if 2 * s - 3 <= n:
            out.append(
                _unit_spec("TP2", n, Fraction(2), pos_one=s, modulus_pos=2 * s - 3, modulus_domain="any")
            )
        else:
            out.append(_unit_spec("TP2", n, Fraction(2), pos_one=s))
    out.append(_zero_spec("TP2", n, Fraction(2)))
    return out


def _catalog_tpdelta(n, delta):
    special = delta_special_values(n)
    out = []
    if n == 5:
        # the leading scaling degenerates at n = 5: alpha_{n-2} stays a modulus
        if delta == special["half_n_minus_2"]:
            out.append(_unit_spec("TPdelta", n, delta, pos_one=None, modulus_pos=3))
            out.append(
                FamilySpec(
                    "TPdelta",
                    n,
                    delta,
                    (_modulus(3), Fraction(1), Fraction(0)),
                    ((3, "any"),),
                )
            )
        else:
            out.append(_unit_spec("TPdelta", n, delta, pos_one=None, modulus_pos=3))
            out.append(_unit_spec("TPdelta", n, delta, pos_one=4))
        out.append(_unit_spec("TPdelta", n, delta, pos_one=5))
        out.append(_zero_spec("TPdelta", n, delta))
        return out
    if delta == special["half_n_minus_2"]:
        out.append(
            FamilySpec(
                "TPdelta",
                n,
                delta,
                (Fraction(1), _modulus(n - 1), Fraction(0)),
                ((n - 1, "any"),),
            )
        )
    elif delta in special["quadratic_roots"]:
        out.append(
            FamilySpec(
                "TPdelta",
                n,
                delta,
                (Fraction(1), Fraction(0), _modulus(n)),
                ((n, "any"),),
            )
        )
    else:
        out.append(_unit_spec("TPdelta", n, delta, pos_one=n - 2))
    if delta == special["half_n_minus_1"]:
        out.append(
            FamilySpec(
                "TPdelta",
                n,
                delta,
                (Fraction(0), Fraction(1), _modulus(n)),
                ((n, "any"),),
            )
        )
    else:
        out.append(_unit_spec("TPdelta", n, delta, pos_one=n - 1))
    out.append(_unit_spec("TPdelta", n, delta, pos_one=n))
    out.append(_zero_spec("TPdelta", n, delta))
    return out


def canonical_catalog(n: int, delta) -> list:
    """The pairwise non-isomorphic canonical representatives for (n, delta).

    Continuous moduli appear as symbolic slots; a slot with domain "nonzero"
    coincides with another catalog entry at 0 and is meant to be specialized
    to nonzero values.  Only rational delta is supported: irrational roots of
    delta^2 + 3 delta = 2n - 4 are outside catalog scope (the discriminant
    report states the condition polynomial instead).
    """
    delta = Fraction(delta)
    if n < 2:
        raise DomainError("catalogs start at dimension 2")
    if n == 2:
        return _catalog_dim2(delta)
    if n == 3:
        return _catalog_dim3(delta)
    if n == 4:
        return _catalog_dim4(delta)
    if delta == 0:
        return _catalog_tp0(n)
    if delta == 1:
        return _catalog_tp1(n)
    if delta == 2:
        return _catalog_tp2(n)
    return _catalog_tpdelta(n, delta)
