"""The null-filiform associative algebra, its automorphism group, and bracket
transport along automorphisms.

The n-dimensional null-filiform associative algebra has basis e_1..e_n with
e_i * e_j = e_{i+j} when i + j <= n and zero otherwise.  Its automorphisms
are exactly the maps determined by the image of e_1,

    phi(e_1) = A_1 e_1 + ... + A_n e_n,   A_1 != 0,

with phi(e_i) read off by taking i-fold products: the column of phi(e_i) is
the coefficient list of (A_1 x + ... + A_n x^n)^i truncated past degree n.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import Bracket, CommAlgebra, PoissonPair, Vec, vec_eq
from .exactnum import DomainError, sc_json, sc_zero


def mu0(n: int) -> CommAlgebra:
    """The null-filiform associative algebra of dimension n."""
    if n < 1:
        raise DomainError("dimension must be positive")
    product = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if 2 <= i + j <= n:
                product[(i, j)] = {i + j: Fraction(1)}
    return CommAlgebra(n, product)


def _series_power(params, power: int, n: int):
    """Coefficients 1..n of (sum_k params[k] x^k)^power, truncated at degree n."""
    acc = [None] + [Fraction(0)] * n  # 1-based
    cur = {0: Fraction(1)}  # exponent -> coeff, exponent 0 is the empty product
    for _ in range(power):
        nxt = {}
        for e, c in cur.items():
            for k in range(1, n + 1):
                ak = params[k - 1]
                if sc_zero(ak):
                    continue
                if e + k > n:
                    continue
                s = nxt.get(e + k, 0) + c * ak
                if sc_zero(s):
                    nxt.pop(e + k, None)
                else:
                    nxt[e + k] = s
        cur = nxt
    for e, c in cur.items():
        acc[e] = c
    return acc[1:]


class Automorphism:
    """An automorphism of the null-filiform algebra in the A-parametrization.

    ``matrix[r][c]`` (0-based) is the e_{r+1} coefficient of phi(e_{c+1}).
    The matrix is lower triangular in the grading sense with diagonal A_1^i,
    so A_1 != 0 makes it invertible.
    """

    def __init__(self, n: int, params, verify: bool = True):
        params = list(params)
        if len(params) != n:
            raise DomainError(f"need {n} parameters, got {len(params)}")
        if sc_zero(params[0]):
            raise DomainError("A_1 = 0 gives a non-invertible map")
        self.n = n
        self.params = tuple(params)
        self._matrix = None
        if verify:
            self._verify_homomorphism()

    @property
    def matrix(self):
        # built on demand: column i holds the coefficients of (sum A_k x^k)^i
        if self._matrix is None:
            cols = [_series_power(self.params, i, self.n) for i in range(1, self.n + 1)]
            self._matrix = tuple(tuple(cols[c][r] for c in range(self.n)) for r in range(self.n))
        return self._matrix

    def _verify_homomorphism(self):
        alg = mu0(self.n)
        for i in range(1, self.n + 1):
            for j in range(1, self.n + 1):
                lhs = self.apply(alg.prod_basis(i, j))
                rhs = alg.multiply(self.column(i), self.column(j))
                if not vec_eq(lhs, rhs):
                    raise DomainError(f"not multiplicative on (e_{i}, e_{j})")

    def column(self, i: int) -> Vec:
        if i == 1:
            return {t + 1: a for t, a in enumerate(self.params) if not sc_zero(a)}
        m = self.matrix
        return {r + 1: m[r][i - 1] for r in range(self.n) if not sc_zero(m[r][i - 1])}

    def apply(self, vec: Vec) -> Vec:
        out: Vec = {}
        for i, c in vec.items():
            for t, m in self.column(i).items():
                s = out.get(t, 0) + c * m
                if sc_zero(s):
                    out.pop(t, None)
                else:
                    out[t] = s
        return out

    def preimage(self, vec: Vec) -> Vec:
        """Solve phi(w) = vec by forward substitution; diagonal entries A_1^i
        are the only divisors, so this stays inside any of the scalar domains."""
        out: Vec = {}
        residue = dict(vec)
        for r in range(self.n):
            v = residue.get(r + 1, Fraction(0))
            if sc_zero(v):
                continue
            w = v / self.matrix[r][r]
            out[r + 1] = w
            for t, m in self.column(r + 1).items():
                s = residue.get(t, 0) - w * m
                if sc_zero(s):
                    residue.pop(t, None)
                else:
                    residue[t] = s
        return out

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        if self.n != other.n:
            return False
        return all(sc_zero(a - b) for a, b in zip(self.params, other.params))

    def to_json(self, with_matrix: bool = False):
        out = {"n": self.n, "A": [sc_json(a) for a in self.params]}
        if with_matrix:
            out["matrix"] = [[sc_json(v) for v in row] for row in self.matrix]
        return out

    def __repr__(self):
        return f"Automorphism(n={self.n}, A={list(self.params)})"


def build_automorphism(params, verify: bool = True) -> Automorphism:
    """Automorphism with phi(e_1) = sum A_k e_k; requires A_1 != 0."""
    return Automorphism(len(list(params)), params, verify=verify)


def identity_automorphism(n: int) -> Automorphism:
    return Automorphism(n, [Fraction(1)] + [Fraction(0)] * (n - 1), verify=False)


def compose(f: Automorphism, g: Automorphism) -> Automorphism:
    """The automorphism x -> f(g(x)).  Since an automorphism is determined by
    its value on e_1, the composite is rebuilt from f(g(e_1))."""
    if f.n != g.n:
        raise DomainError("dimension mismatch")
    image = f.apply(g.column(1))
    params = [image.get(i, Fraction(0)) for i in range(1, f.n + 1)]
    return Automorphism(f.n, params, verify=False)


def invert(f: Automorphism) -> Automorphism:
    """The inverse automorphism, from the preimage of e_1."""
    pre = f.preimage({1: Fraction(1)})
    params = [pre.get(i, Fraction(0)) for i in range(1, f.n + 1)]
    return Automorphism(f.n, params, verify=False)


def compose_invert(op: str, f: Automorphism, g: Automorphism = None) -> Automorphism:
    """Dispatcher for the group operations {compose, invert}."""
    if op == "compose":
        return compose(f, g)
    if op == "invert":
        return invert(f)
    raise DomainError(f"unknown op {op!r}")


def push_bracket(aut: Automorphism, pair: PoissonPair) -> PoissonPair:
    """Transport a bracket along an automorphism of the base product.

    The new bracket is b' = phi^{-1} o b o (phi x phi): expanding
    [phi(e_i), phi(e_j)] with the old table and re-reading coefficients in
    the primed basis.  phi is then an isomorphism from (mu0, ., b') onto
    (mu0, ., b), and the base product is unchanged.
    """
    if aut.n != pair.n:
        raise DomainError("dimension mismatch")
    out = Bracket(pair.n)
    cols = {i: aut.column(i) for i in range(1, pair.n + 1)}
    for i in range(1, pair.n + 1):
        for j in range(i + 1, pair.n + 1):
            v = pair.bracket.apply(cols[i], cols[j])
            out.set_entry(i, j, aut.preimage(v))
    return PoissonPair(pair.base, out, pair.delta)
