"""Canonical forms under the automorphism group, with explicit witnesses.

Every automorphism of mu0(n) is determined by the image of e_1; scalings
A = (a, 0, ..., 0) rescale the bracket parameters by weights a^(3-t), and
shifts e_1 -> e_1 + c e_k clear higher parameters one at a time.  The
canonicalizer replays that lemma chain and returns the automorphism chain as
a replayable certificate; where a parameter cannot be normalized away it
survives as a modulus, and rational invariants separate the orbits.
"""

from fractions import Fraction as F

from nilpoisson import (
    FamilySpec,
    canonical_catalog,
    canonicalize,
    instantiate,
    invariants,
    iso_test,
    push_bracket,
)

# --- a scaling that needs a radical ------------------------------------------

spec = FamilySpec("TP0", 5, F(0), (F(2), F(5), F(0), F(1), F(0)))
form = canonicalize(spec)
print("input:     ", spec.describe())
print("canonical: ", form.spec.describe())
print("radical:   ", form.witness.radical, "(r^2 = 1/2 scales alpha_1 to 1)")
replay = push_bracket(form.witness.total, instantiate(spec))
print("witness replays exactly:", replay.bracket == instantiate(form.spec).bracket)

# --- a retained modulus --------------------------------------------------------

# alpha_3 has scaling weight 3 - 3 = 0: no automorphism can change it.
spec = FamilySpec("TP0", 5, F(0), (F(0), F(0), F(7), F(0), F(0)))
print("\nalpha_3 modulus:", canonicalize(spec).spec.describe())
print("invariants:", invariants(spec))

# --- isomorphism testing ---------------------------------------------------------

a = FamilySpec("TP0", 5, F(0), (F(4), F(0), F(0), F(0), F(0)))
b = FamilySpec("TP0", 5, F(0), (F(9), F(0), F(0), F(0), F(0)))
dec = iso_test(a, b)
print("\nTP0(4,...) vs TP0(9,...):", dec.verdict)
print("witness maps a onto b:",
      push_bracket(dec.witness, instantiate(a)).bracket == instantiate(b).bracket)

c = FamilySpec("TP0", 5, F(0), (F(0), F(0), F(5), F(0), F(0)))
d_ = FamilySpec("TP0", 5, F(0), (F(0), F(0), F(7), F(0), F(0)))
print("TP0(0,0,5,..) vs TP0(0,0,7,..):", iso_test(c, d_).verdict)

# The test is deliberately three-valued: when two canonical moduli land in
# different radical extensions the tower cannot be merged, and the test says
# so instead of guessing.
a = FamilySpec("TPdelta", 8, F(3), (F(2), F(1), F(0)))
b = FamilySpec("TPdelta", 8, F(3), (F(16), F(16), F(0)))
print("incomparable radical moduli:", iso_test(a, b).verdict)

# --- catalogs --------------------------------------------------------------------

print("\ncanonical representatives at n=5, delta=3/2 (note the n=5 modulus):")
for entry in canonical_catalog(5, F(3, 2)):
    print("  ", entry.describe())
