# Balls in the 3-regular tree against the weighted half-line model.
import math

from dualcheeger import comparison_bounds, make_family, solve_theta
from dualcheeger.halfline import halfline_model

tree = make_family("homogeneous_tree", d=3)
region = tree.explore(11)

for r in range(1, 6):
    rep = comparison_bounds(region, 0, r)
    model = halfline_model(3.0, r)
    print(f"r={r}: ball of {rep.ball_size:3d} vertices, lambdamax={rep.lambdamax:.6f}, "
          f"model={model.lambdamax:.6f}, theta={solve_theta(3.0, r):.5f}")

# The cayley graph Z x Z_3 has triangles, so kappa > 0 weakens the top bound.
cay = make_family("cayley_ZxZ3")
region = cay.explore(9)
rep = comparison_bounds(region, 0, 3)
print("Z x Z_3: l =", rep.l_sup, "kappa =", rep.kappa, "C =", rep.C)
for name, b in sorted(rep.bounds.items()):
    print(f"  {name:30s} value={b.value:.5f} holds={b.holds}")
print("limit of the tree model top:", 1 + 2 * math.sqrt(2) / 3)
