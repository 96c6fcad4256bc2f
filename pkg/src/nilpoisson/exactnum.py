"""Exact scalar arithmetic for the whole package.

Three scalar kinds live here and mix freely through the usual operators:

* ``Rat`` -- arbitrary-precision rationals, an alias of :class:`fractions.Fraction`.
* :class:`RadExt` -- elements of a single radical extension Q[r]/(r^m - q),
  used for basis scalings like r = alpha^(1/(s-3)).  No choice of complex
  embedding is ever made; equality is algebraic, modulo the defining relation.
* :class:`MPoly` -- sparse multivariate polynomials over Q with named
  variables (alpha_t, A_k, delta, bracket unknowns c_i_j_t, solver
  parameters p0, p1, ...).  Negative exponents are permitted, so the unit
  A_1 has a formal inverse; that is what makes triangular automorphism
  matrices invertible inside the polynomial world.

Everything is immutable and hashable, so values can be shared freely.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Rat = Fraction

ScalarLike = Union[int, Fraction, "RadExt", "MPoly"]


class DomainError(ArithmeticError):
    """Raised for operations outside a scalar domain (0 inverse, 0-th roots, ...)."""


class TowerError(DomainError):
    """Raised when two distinct nontrivial radical extensions would have to mix."""


_RAT_RE = re.compile(r"^[+-]?\d+(?:/[1-9]\d*)?$")


def parse_rat(text: str) -> Fraction:
    """Parse an exact rational string "p/q" or "p".  Decimals are rejected."""
    text = text.strip()
    if not _RAT_RE.match(text):
        raise DomainError(f"not an exact rational string: {text!r}")
    return Fraction(text)


def rat_to_str(x) -> str:
    """Serialize a rational as "p/q", or "p" when the denominator is 1."""
    return str(Fraction(x))


def _int_nth_root(a: int, m: int):
    """Exact m-th root of a nonnegative integer, or None."""
    if a < 0:
        raise ValueError("negative radicand")
    if a in (0, 1) or m == 1:
        return a
    lo, hi = 1, 1 << (a.bit_length() // m + 2)
    while lo <= hi:
        mid = (lo + hi) // 2
        p = mid**m
        if p == a:
            return mid
        if p < a:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def rat_nth_root(q: Fraction, m: int):
    """Exact rational m-th root of q, or None.

    Even m with q < 0 has no rational root.  Odd m keeps the sign of q.
    """
    q = Fraction(q)
    if q < 0:
        if m % 2 == 0:
            return None
        r = rat_nth_root(-q, m)
        return None if r is None else -r
    rn = _int_nth_root(q.numerator, m)
    if rn is None:
        return None
    rd = _int_nth_root(q.denominator, m)
    if rd is None:
        return None
    return Fraction(rn, rd)


def rat_root(q, m: int):
    """An m-th root of q: a plain rational when one exists, else the generator
    of Q[r]/(r^m - q).

    >>> rat_root(4, 2)
    Fraction(2, 1)
    >>> rat_root(2, 2) ** 2 == 2
    True
    """
    q = Fraction(q)
    if m < 1:
        raise DomainError("root degree m must be >= 1")
    if q == 0:
        raise DomainError("radicand must be nonzero")
    if m == 1:
        return q
    r = rat_nth_root(q, m)
    if r is not None:
        return r
    return RadExt.generator(m, q)


def _poly_divmod(a: list, b: list):
    # univariate division over Q on dense coefficient lists, low degree first
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    quo = [Fraction(0)] * max(1, len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        if a[i] == 0:
            continue
        c = a[i] / lb
        quo[i - db] = c
        for j in range(db + 1):
            a[i - db + j] -= c * b[j]
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return quo, a


class RadExt:
    """An element c0 + c1*r + ... + c_{m-1}*r^(m-1) of Q[r]/(r^m - q).

    Arithmetic that collapses to degree zero returns a plain Fraction, so a
    value has exactly one stored representation.  Binary operations accept
    rationals on either side; mixing two different nontrivial extensions
    raises :class:`TowerError`.
    """

    __slots__ = ("m", "q", "coeffs")

    def __init__(self, m: int, q, coeffs: Iterable):
        if m < 2:
            raise DomainError("RadExt degree must be >= 2; use Fraction for degree 1")
        q = Fraction(q)
        if q == 0:
            raise DomainError("radicand must be nonzero")
        cs = tuple(Fraction(c) for c in coeffs)
        if len(cs) != m:
            raise DomainError(f"need {m} coefficients, got {len(cs)}")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("RadExt values are immutable")

    @staticmethod
    def generator(m: int, q) -> "RadExt":
        coeffs = [Fraction(0)] * m
        coeffs[1] = Fraction(1)
        return RadExt(m, q, coeffs)

    @classmethod
    def _make(cls, m, q, coeffs):
        cs = [Fraction(c) for c in coeffs]
        if all(c == 0 for c in cs[1:]):
            return cs[0]
        return cls(m, q, cs)

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            cs = [Fraction(other)] + [Fraction(0)] * (self.m - 1)
            return RadExt(self.m, self.q, cs)
        if isinstance(other, RadExt):
            if (other.m, other.q) != (self.m, self.q):
                raise TowerError(
                    f"cannot mix Q[x]/(x^{self.m}-{self.q}) with Q[x]/(x^{other.m}-{other.q})"
                )
            return other
        return None

    # ring structure ------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RadExt._make(self.m, self.q, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return RadExt(self.m, self.q, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RadExt._make(self.m, self.q, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        m, q = self.m, self.q
        acc = [Fraction(0)] * m
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                if b == 0:
                    continue
                k = i + j
                if k < m:
                    acc[k] += a * b
                else:
                    acc[k - m] += a * b * q  # reduce by r^m = q
        return RadExt._make(m, q, acc)

    __rmul__ = __mul__

    def inverse(self) -> "RadExt | Fraction":
        """Multiplicative inverse via the extended Euclid algorithm in Q[x]."""
        if self == 0:
            raise DomainError("inversion of zero")
        # gcd(self, x^m - q) over Q[x]; gcd 1 certifies invertibility
        mod = [Fraction(0)] * (self.m + 1)
        mod[0], mod[-1] = -self.q, Fraction(1)
        r0, r1 = mod, list(self.coeffs)
        while len(r1) > 1 and r1[-1] == 0:
            r1.pop()
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while r1 != [Fraction(0)]:
            quo, rem = _poly_divmod(r0, r1)
            # s_next = s0 - quo * s1
            prod = [Fraction(0)] * (len(quo) + len(s1) - 1)
            for i, a in enumerate(quo):
                for j, b in enumerate(s1):
                    prod[i + j] += a * b
            s_next = [Fraction(0)] * max(len(s0), len(prod))
            for i, a in enumerate(s0):
                s_next[i] += a
            for i, a in enumerate(prod):
                s_next[i] -= a
            while len(s_next) > 1 and s_next[-1] == 0:
                s_next.pop()
            r0, r1, s0, s1 = r1, rem, s1, s_next
        if len(r0) != 1:
            raise DomainError("not invertible: the defining polynomial is reducible here")
        # r0 is the (constant) gcd: self * s0 == r0 mod (x^m - q)
        inv_coeffs = [c / r0[0] for c in s0] + [Fraction(0)] * (self.m - len(s0))
        return RadExt._make(self.m, self.q, inv_coeffs[: self.m])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = Fraction(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparisons / output -------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return all(c == 0 for c in self.coeffs[1:]) and self.coeffs[0] == other
        if isinstance(other, RadExt):
            return (self.m, self.q, self.coeffs) == (other.m, other.q, other.coeffs)
        return NotImplemented

    def __hash__(self):
        if all(c == 0 for c in self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash((self.m, self.q, self.coeffs))

    def __bool__(self):
        return any(c != 0 for c in self.coeffs)

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(rat_to_str(c))
            else:
                rk = "r" if k == 1 else f"r^{k}"
                parts.append(rk if c == 1 else f"{rat_to_str(c)}*{rk}")
        body = " + ".join(parts) if parts else "0"
        return f"({body}; r^{self.m}={rat_to_str(self.q)})"

    __repr__ = __str__

    def to_json(self):
        return {
            "m": self.m,
            "q": rat_to_str(self.q),
            "coeffs": [rat_to_str(c) for c in self.coeffs],
        }

    @staticmethod
    def from_json(obj):
        val = RadExt._make(int(obj["m"]), parse_rat(obj["q"]), [parse_rat(c) for c in obj["coeffs"]])
        return val


def radext_arith(op: str, a, b=None):
    """Dispatch {add, mul, inv, neg} on radical-extension (or rational) scalars."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        if isinstance(a, RadExt):
            return a.inverse()
        a = Fraction(a)
        if a == 0:
            raise DomainError("inversion of zero")
        return 1 / a
    raise DomainError(f"unknown op {op!r}")


def _nat_key(name: str):
    # natural ordering: alpha_2 < alpha_10, A_1 < A_2 < alpha_1 < c_1_2_1 < delta
    return tuple(int(p) if p.isdigit() else p for p in re.split(r"(\d+)", name))


class MPoly:
    """Sparse polynomial over Q in named variables.

    ``vars`` is the registry (a name tuple in natural order) and ``terms``
    maps exponent tuples to nonzero rational coefficients.  The printed and
    serialized term order is graded lexicographic over the registry order,
    so equal values always look identical.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple = (), terms: Mapping = None):
        object.__setattr__(self, "vars", tuple(vars))
        tt = {}
        for exps, c in (terms or {}).items():
            c = Fraction(c)
            if c != 0:
                tt[tuple(exps)] = c
        object.__setattr__(self, "terms", tt)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("MPoly values are immutable")

    # constructors ---------------------------------------------------------

    @staticmethod
    def const(x) -> "MPoly":
        x = Fraction(x)
        return MPoly((), {(): x} if x != 0 else {})

    @staticmethod
    def zero() -> "MPoly":
        return MPoly((), {})

    @staticmethod
    def var(name: str) -> "MPoly":
        return MPoly((name,), {(1,): Fraction(1)})

    # registry bookkeeping --------------------------------------------------

    def _reindexed(self, newvars: tuple) -> dict:
        if newvars == self.vars:
            return dict(self.terms)
        pos = {v: i for i, v in enumerate(newvars)}
        idx = [pos[v] for v in self.vars]
        out = {}
        for exps, c in self.terms.items():
            key = [0] * len(newvars)
            for i, e in zip(idx, exps):
                key[i] = e
            out[tuple(key)] = c
        return out

    def _align(self, other: "MPoly"):
        # the first terms dict is always a fresh copy: callers may mutate it
        if self.vars == other.vars:
            return self.vars, dict(self.terms), other.terms
        merged = tuple(sorted(set(self.vars) | set(other.vars), key=_nat_key))
        return merged, self._reindexed(merged), other._reindexed(merged)

    @staticmethod
    def _coerce(x):
        if isinstance(x, MPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return MPoly.const(x)
        return None

    def compact(self) -> "MPoly":
        """Drop registry variables that no longer occur."""
        used = [i for i, v in enumerate(self.vars) if any(e[i] for e in self.terms)]
        if len(used) == len(self.vars):
            return self
        newvars = tuple(self.vars[i] for i in used)
        return MPoly(newvars, {tuple(e[i] for i in used): c for e, c in self.terms.items()})

    # ring operations -------------------------------------------------------

    def __add__(self, other):
        o = MPoly._coerce(other)
        if o is None:
            return NotImplemented
        vars, t1, t2 = self._align(o)
        for exps, c in t2.items():
            s = t1.get(exps, Fraction(0)) + c
            if s == 0:
                t1.pop(exps, None)
            else:
                t1[exps] = s
        return MPoly(vars, t1)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = MPoly._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = MPoly._coerce(other)
        if o is None:
            return NotImplemented
        vars, t1, t2 = self._align(o)
        out = {}
        for e1, c1 in t1.items():
            for e2, c2 in t2.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(key, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(key, None)
                else:
                    out[key] = s
        return MPoly(vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result, base = MPoly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DomainError("division by zero")
            inv = Fraction(1) / Fraction(other)
            return MPoly(self.vars, {e: c * inv for e, c in self.terms.items()})
        if isinstance(other, MPoly):
            return self.exact_div(other)
        return NotImplemented

    def __rtruediv__(self, other):
        o = MPoly._coerce(other)
        if o is None:
            return NotImplemented
        return o.exact_div(self)

    def exact_div(self, other: "MPoly") -> "MPoly":
        """Exact division.  Monomial divisors just shift exponents (negative
        exponents are fine); general divisors use graded-lex reduction and
        raise :class:`DomainError` when the division leaves a remainder."""
        if not other.terms:
            raise DomainError("division by zero polynomial")
        if len(other.terms) == 1:
            vars, t1, t2 = self._align(other)
            (de, dc), = t2.items()
            return MPoly(vars, {tuple(a - b for a, b in zip(e, de)): c / dc for e, c in t1.items()})
        vars, t1, t2 = self._align(other)
        num = MPoly(vars, t1)
        den = MPoly(vars, t2)
        de, dc = den._leading()
        quo = {}
        while num.terms:
            ne, nc = num._leading()
            qe = tuple(a - b for a, b in zip(ne, de))
            if any(e < 0 for e in qe):
                raise DomainError("inexact polynomial division")
            qc = nc / dc
            quo[qe] = quo.get(qe, Fraction(0)) + qc
            num = num - MPoly(vars, {qe: qc}) * den
        return MPoly(vars, quo)

    # queries ---------------------------------------------------------------

    @staticmethod
    def _grlex_key(exps):
        return (sum(exps), exps)

    def _leading(self):
        e = max(self.terms, key=MPoly._grlex_key)
        return e, self.terms[e]

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def constant_value(self):
        """The value as a Fraction if the polynomial is constant, else None."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            if all(x == 0 for x in e):
                return c
        return None

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def vars_used(self):
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms))

    def poly_in(self, name: str) -> dict:
        """Collect by powers of one variable: {power: coefficient MPoly}."""
        if name not in self.vars:
            return {0: self} if self.terms else {}
        i = self.vars.index(name)
        out: dict = {}
        for exps, c in self.terms.items():
            rest = exps[:i] + (0,) + exps[i + 1 :]
            p = out.setdefault(exps[i], {})
            p[rest] = p.get(rest, Fraction(0)) + c
        return {k: MPoly(self.vars, t).compact() for k, t in sorted(out.items())}

    # substitution ----------------------------------------------------------

    def substitute(self, assignment: Mapping) -> "MPoly":
        """Substitute values (rationals or polynomials) for variables.

        Unassigned variables stay symbolic; assignment keys that do not occur
        are ignored.  A negative exponent needs an invertible value (nonzero
        rational or a single invertible monomial).
        """
        if not self.terms:
            return MPoly.zero()
        keep = []
        sub = {}
        for i, v in enumerate(self.vars):
            if v in assignment:
                sub[i] = assignment[v]
            else:
                keep.append(i)
        if not sub:
            return self
        result = MPoly.zero()
        keptvars = tuple(self.vars[i] for i in keep)
        for exps, c in self.terms.items():
            term = MPoly(keptvars, {tuple(exps[i] for i in keep): c})
            for i, val in sub.items():
                e = exps[i]
                if e == 0:
                    continue
                if isinstance(val, (int, Fraction)):
                    val = Fraction(val)
                    if e < 0 and val == 0:
                        raise DomainError("negative power of a zero substitution value")
                    term = term * MPoly.const(val**e)
                elif isinstance(val, MPoly):
                    if e >= 0:
                        term = term * val**e
                    else:
                        if len(val.terms) != 1:
                            raise DomainError("negative power of a non-monomial substitution value")
                        term = term.exact_div(val ** (-e))
                else:
                    raise DomainError(f"cannot substitute value of type {type(val).__name__}")
            result = result + term
        return result

    def __call__(self, **assignment):
        return self.substitute(assignment)

    # comparisons / output ----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.constant_value() == other
        if isinstance(other, MPoly):
            a, b = self.compact(), other.compact()
            return a.vars == b.vars and a.terms == b.terms
        return NotImplemented

    def __hash__(self):
        c = self.constant_value()
        if c is not None:
            return hash(c)
        a = self.compact()
        return hash((a.vars, frozenset(a.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def _ordered_terms(self):
        return sorted(self.terms.items(), key=lambda kv: MPoly._grlex_key(kv[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for exps, c in self._ordered_terms():
            factors = []
            for v, e in zip(self.vars, exps):
                if e == 0:
                    continue
                factors.append(v if e == 1 else f"{v}^{e}")
            mono = "*".join(factors)
            if not mono:
                chunk = rat_to_str(c)
            elif c == 1:
                chunk = mono
            elif c == -1:
                chunk = f"-{mono}"
            else:
                chunk = f"{rat_to_str(c)}*{mono}"
            chunks.append(chunk)
        out = chunks[0]
        for chunk in chunks[1:]:
            out += " - " + chunk[1:] if chunk.startswith("-") else " + " + chunk
        return out

    def __repr__(self):
        return f"MPoly({self})"

    def to_json(self):
        out = []
        for exps, c in self._ordered_terms():
            mono = {v: e for v, e in zip(self.vars, exps) if e != 0}
            out.append([rat_to_str(c), mono])
        return out

    @staticmethod
    def from_json(obj) -> "MPoly":
        acc = MPoly.zero()
        for coeff, mono in obj:
            term = MPoly.const(parse_rat(coeff))
            for v, e in sorted(mono.items()):
                term = term * MPoly((v,), {(int(e),): Fraction(1)})
            acc = acc + term
        return acc


def mpoly_substitute(p: MPoly, assignment: Mapping) -> MPoly:
    """Exact substitution into a polynomial; unassigned variables stay symbolic."""
    return p.substitute(assignment)


# --- generic scalar helpers used across the package -----------------------


def sc_zero(x) -> bool:
    """Is this scalar exactly zero, whatever its kind?"""
    if isinstance(x, MPoly):
        return x.is_zero
    return x == 0


def sc_json(x):
    """Serialize any scalar: rationals as "p/q", extensions and polynomials structurally."""
    if isinstance(x, (int, Fraction)):
        return rat_to_str(x)
    if isinstance(x, RadExt):
        return x.to_json()
    if isinstance(x, MPoly):
        return x.to_json()
    raise DomainError(f"unknown scalar type {type(x).__name__}")


def sc_str(x) -> str:
    if isinstance(x, (int, Fraction)):
        return rat_to_str(x)
    return str(x)
