# Dirichlet spectra of growing intervals in Z, and what they say about Z itself.
import math

from dualcheeger import exhaustion_limits, make_family
from dualcheeger.spectral import dirichlet_spectrum

path = make_family("infinite_path")

region, ids = path.omega(6)
res = dirichlet_spectrum(region, ids)
print("Omega_6 eigenvalues:", res.eigenvalues.round(6).tolist())
print("1 - cos(j pi / 7):  ", [round(1 - math.cos(j * math.pi / 7), 6) for j in range(1, 7)])

# lambda_1 only decreases and lambda_max only increases as Omega grows
rep = exhaustion_limits(path, 30, n_min=2)
for row in rep.rows[::7]:
    print(f"n={row.n:2d}  lambda1={row.lambda1:.5f}  lambdamax={row.lambdamax:.5f}  h={row.h}  hbar={row.hbar}")
print("monotone:", rep.monotone)

# the raw n=30 values are still 5e-3 away; the tail estimate is labelled as such
print("bottom:", rep.lower_estimate)
print("top:   ", rep.upper_estimate)
