# Exact Cheeger and dual Cheeger constants on a small weighted graph.
from dualcheeger import families as F
from dualcheeger import verify_cheeger_pair

g = F.random_graph(8, 0.35, seed=4, weights=(0.5, 2.0))
ambient, omega = F.with_collar(g, 2, seed=5)  # two pendant vertices sit outside omega

rep = verify_cheeger_pair(ambient, omega)
print("h    =", rep.h.value, "attained on", rep.h.witness)
print("hbar =", rep.hbar.value, "attained on", rep.hbar.witness.V1, rep.hbar.witness.V2)
print("lambda1 =", rep.lambda1, " lambdamax =", rep.lambdamax)
for name, q in rep.inequalities.items():
    print(f"  {name:26s} {q.lhs:.6f} <= {q.rhs:.6f}  margin {q.margin:.2e}")

# A non-bipartite set where h + hbar = 1 still holds: K_{3,4} hanging off a Z^2 patch.
lattice = F.make_family("lattice_plus_bipartite")
region, ids = F.example_omega(lattice)
rep = verify_cheeger_pair(region, ids)
print("lattice instance: h + hbar =", rep.h.value + rep.hbar.value)
