"""Build the null-filiform algebra and check compatibility identities.

The n-dimensional null-filiform associative algebra mu0(n) multiplies basis
vectors by e_i . e_j = e_{i+j} (zero past e_n).  A bracket [.,.] together
with a scalar delta is a delta-Poisson structure when
[x, y.z] = delta([x,y].z + y.[x,z]), and a transposed delta-Poisson
structure when delta z.[x,y] = [z.x, y] + [x, z.y].  Everything below is
exact rational arithmetic: a residual report is either literally empty or a
list of nonzero values.
"""

from fractions import Fraction as F

from nilpoisson import FamilySpec, check_identity, instantiate, mu0, power_dims

# --- the algebra and its power series ----------------------------------------

for n in (4, 6, 8):
    pd = power_dims(mu0(n))
    print(f"mu0({n}): dim A^i = {pd.dims}, null-filiform={pd.is_null_filiform}, "
          f"nilpotency index={pd.nilpotency_index}")

# The defining profile dim A^i = n+1-i is the slowest possible descent.

# --- a classified bracket, checked from scratch --------------------------------

# Transposed 0-Poisson: the bracket [e1,e2] = e1 with everything else zero.
spec = FamilySpec("TP0", 5, F(0), (F(1), F(0), F(0), F(0), F(0)))
pair = instantiate(spec)
for kind in ("commutative", "associative", "jacobi", "transposed"):
    print(f"TP0(1,0,0,0,0) {kind:11s}:", check_identity(pair, kind))

# The cyclic consequence x.[y,z] + y.[z,x] + z.[x,y] = 0 is derived by
# dividing by delta, and genuinely fails at delta = 0:
print("cyclic consequence at delta=0:", check_identity(pair, "cyclic_tdp"))

# --- the smallest transposed Poisson algebra -----------------------------------

# On mu0(2) (e1.e1 = e2), the bracket [e1,e2] = e2 gives a transposed
# Poisson algebra (delta = 2).
tiny = instantiate(FamilySpec("Dim2", 2, F(2), (F(0), F(1))))
print("dim-2 pair, transposed identity:", check_identity(tiny, "transposed"))

# --- symbolic delta -------------------------------------------------------------

# With delta left symbolic, residuals are polynomials; a structure that only
# works at delta = 0 shows residuals divisible by delta.
from nilpoisson import MPoly

sym = instantiate(FamilySpec("Dim2", 2, MPoly.var("delta"), (F(1), F(0))))
rep = check_identity(sym, "transposed")
print("symbolic-delta residuals:")
for at, coord, val in rep.residuals:
    print(f"   triple {at}, e_{coord}: {val}")
