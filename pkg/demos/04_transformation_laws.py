"""Closed-form parameter transformation laws, verified symbolically.

For each family the coefficients of [e_1, e_2] transform under an
automorphism with parameters A_1..A_n by an explicit triangular law.
transform_params implements those closed forms; push_bracket transports the
whole bracket table and reads the coefficients back.  Both routes are built
independently, so comparing them with everything symbolic is a genuine
machine check of the closed formulas: every residual must be the zero
polynomial.
"""

from fractions import Fraction as F

from nilpoisson import FamilySpec, transform_params, verify_transform_formula

for tag in ("TP0", "TP1", "TP2"):
    for n in (5, 6):
        rep = verify_transform_formula(tag, n)
        print(f"{tag} law at n={n}: {'zero residuals' if rep.all_zero else rep}")

# The three-parameter family away from delta in {0,1,2} keeps delta symbolic:
for n in (5, 6):
    rep = verify_transform_formula("TPdelta", n)
    print(f"TPdelta law at n={n} (symbolic delta): "
          f"{'zero residuals' if rep.all_zero else rep}")

# Concrete transformations: diagonal scalings act by weights A_1^(3-t), and a
# shift A_2 = 1 mixes the three top parameters through the closed law.
spec = FamilySpec("TP0", 5, F(0), (F(1), F(1), F(0), F(0), F(0)))
print("\nTP0 (1,1,0,0,0) scaled by A_1 = 2:",
      transform_params(spec, [F(2), F(0), F(0), F(0), F(0)]))

spec = FamilySpec("TPdelta", 5, F(3), (F(1), F(0), F(0)))
print("TPdelta (1,0,0) shifted by A_2 = 1:",
      transform_params(spec, [F(1), F(1), F(0), F(0), F(0)]))

# Degenerate exponents are where moduli come from: at delta = (n-2)/2 the
# A_2 contribution to the second slot vanishes identically, freezing it.
from nilpoisson import MPoly

n = 7
spec = FamilySpec("TPdelta", n, F(n - 2, 2),
                  tuple(MPoly.var(f"alpha_{t}") for t in (n - 2, n - 1, n)))
A = [MPoly.var(f"A_{k}") for k in range(1, n + 1)]
second = transform_params(spec, A)[1]
print(f"\nalpha_{n-1} law at delta=(n-2)/2, n={n}:")
print("  ", second)
print("   A_2-free:", set(second.poly_in("A_2")) == {0})
