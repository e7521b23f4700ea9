"""
Published values the replay scenarios are compared against.

Bump FIXTURE_VERSION whenever a value here changes.
"""

FIXTURE_VERSION = "1"

# Norm C_p-sets from the trivial group: (0, 1) has ghost vector (0, p) and
# f(p) = p + (p^(p-1) - 1) x, so the second coordinate leaves this multiple of x.
CEX_PRIMES = (3, 5)
CEX_RESIDUES = {3: 8, 5: 624}

# N_{A3}^{A4} of four fixed points, and the prime at which it cannot lift
A4_NORM_OF_FOUR = {"1": 4, "[A4/C3]": 12, "[A4/Z/2]": 6, "[A4/e]": 14}
A4_FORMULA_RANGE = range(0, 9)
A4_PRIME = 3

# Numbers of units of A(G)
UNIT_COUNTS = {"Z2": 4, "D3": 8, "D9": 16}
D3_NONTRIVIAL_UNIT = {"1": "1", "[D3/C3]": "-1"}
UNITS_PRIME = 3

# Closed-form lift of degree-2 maps, checked at these primes
FORMULA_DEGREE = 2
FORMULA_PRIMES = (3, 5)

# Ghost components of (0, 1) in W_2(Z) at p = 3
GHOST_EXAMPLE = {"p": 3, "m": 2, "vector": [0, 1], "ghost": [0, 3]}

# Dihedral tower identity
PSI_CASES = ((3, 1), (3, 2), (5, 1))
PSI_SAMPLES = 200

# Homogeneous pieces of N_e^{Z/2} over Z_(3) ⊗ A(Z/2), evaluated at a = 1
HOMDECOMP_PRIME = 3
HOMDECOMP_PIECES = {1: {"1": "1", "x": "-1/2"}, 2: {"x": "1/2"}}

# Dwork criterion over Z: every pair in this box is compared with unghost
DWORK_PRIME = 3
DWORK_BOX = range(-4, 5)
