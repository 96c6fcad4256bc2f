"""Solve for every bracket compatible with an identity on mu0(n).

The solver puts an unknown on every coefficient of every [e_i, e_j],
generates one exact linear row per identity instance and coordinate,
computes the kernel, and closes the leftover quadratic Jacobi obstructions
under the forced-zero rule.  The free-parameter counts reproduce the
classification landscape:

    delta = 0 -> n parameters      delta = 1, 2 -> n - 1 parameters
    other delta (n >= 5) -> 3      delta-Poisson -> always trivial
"""

from fractions import Fraction as F

from nilpoisson import MPoly, FamilySpec, match_family, solve
from nilpoisson.families import param_positions


def sym(tag, n, d):
    return FamilySpec(tag, n, d, tuple(MPoly.var(f"alpha_{t}") for t in param_positions(tag, n)))


print("transposed delta-Poisson structures on mu0(6):")
for d in (F(0), F(1), F(2), F(3), F(1, 2), F(-1)):
    space = solve(6, d, "transposed")
    tag = {F(0): "TP0", F(1): "TP1", F(2): "TP2"}.get(d, "TPdelta")
    rep = match_family(space, sym(tag, 6, d))
    print(f"  delta={str(d):4s}: {space.free_count} free parameters, "
          f"matches {tag}: {rep.matched}")

# The discriminant delta(delta-1)(delta-2) separates the regimes: away from
# its roots, [e1,e2] can only involve e_{n-2}, e_{n-1}, e_n.
space = solve(7, F(5, 2), "transposed")
print("\nn=7, delta=5/2 support of [e1,e2]:",
      sorted(t for t in range(1, 8) if not space.entry_poly(1, 2, t).is_zero))

# The bracket table of a solved space, identically in the free parameters:
space = solve(5, F(3), "transposed")
print("\nn=5, delta=3 parametrized bracket:")
for (i, j), vec in sorted(space.parametrized_bracket().entries.items()):
    rhs = " + ".join(f"({v})*e_{t}" for t, v in sorted(vec.items()))
    print(f"  [e_{i}, e_{j}] = {rhs}")

# Every delta-Poisson structure on the null-filiform algebra is trivial:
print("\ndelta-Poisson solve results (free parameter counts):")
for n in (4, 5, 6, 7):
    counts = [solve(n, d, "delta_poisson").free_count for d in (F(0), F(1), F(2), F(3), F(1, 2))]
    print(f"  n={n}: {counts}")

# Where the Jacobi identity genuinely bites: at n = 4 and generic delta the
# linear layer leaves three parameters, but the alpha_2^2 obstruction then
# fires unless delta(delta-1)(delta-2)(delta+1) = 0.
from nilpoisson.solver import assemble, nullspace

for d in (F(3), F(-1)):
    linear = nullspace(assemble(4, d, "transposed"))
    solved = solve(4, d, "transposed")
    print(f"\nn=4, delta={d}: linear kernel {linear.free_count} -> "
          f"after Jacobi {solved.free_count} (forced: {solved.forced or 'none'})")
