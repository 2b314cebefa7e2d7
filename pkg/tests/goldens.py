"""Frozen reference values, lambda = 100 unless noted (hbar = 2m = a = 1).

Produced by tests/make_goldens.py with 40-digit mpmath and cross-checked
against the grid-scan and contour oracles in tests/oracles.py.
"""

J1_LAM10_K3 = complex(-0.033191427791361649545, -0.26715375150089510599)
J2_LAM10_K3 = complex(-0.033191427791361649545, 0.26715375150089510599)

K1 = complex(3.1105268272139177469, -0.00095614558783199664127)
RESIDUE1 = complex(0.00023424163047244086154, -0.0018942468462159747825)
K2 = complex(6.2212858928549826741, -0.0038033300530323982572)
RESIDUE2 = complex(0.0018323985042657932138, -0.0073239040680945410389)

M1_SQ_AT_E1 = 0.0018880300097790476376
C1 = 0.0038938823030464046965
GAMMA1 = 1.9924042631104830667
