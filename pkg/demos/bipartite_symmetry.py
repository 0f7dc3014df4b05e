# lambda_1 + lambda_max = 2 picks out bipartite Dirichlet sets.
import numpy as np

from dualcheeger import families as F
from dualcheeger.graph import bipartition, odd_girth
from dualcheeger.spectral import dirichlet_spectrum

for seed in range(6):
    if seed % 2:
        g = F.random_bipartite(4, 3, 0.5, seed)
    else:
        g = F.random_graph(7, 0.4, seed)
    amb, omega = F.with_collar(g, 2, seed + 100)
    ev = dirichlet_spectrum(amb, omega).eigenvalues
    sides = bipartition(amb, omega)
    print(f"seed {seed}: bipartite={sides is not None!s:5}  odd girth={odd_girth(g).length}  "
          f"lambda1+lambdamax={ev[0] + ev[-1]:.12f}")
    if sides is not None:
        # the whole spectrum is mirrored about 1
        assert np.allclose(np.sort(2 - ev), ev)
