# Far-away behaviour: annulus probes on a rapidly branching tree and the self-loop chain.
from dualcheeger import families as F
from dualcheeger.asymptotics import infinity_constants, trace_bound_check, volume_growth_check

tree = F.make_family("rapidly_branching_tree")  # depth-r vertices have r + 2 children
ic = infinity_constants(tree, 6)
for row in ic.rows:
    print(f"k={row.k}: hbar(Gamma minus B_k) >= {row.hbar_lower:.4f}, threshold {tree.threshold(row.k):.4f}")
print(ic.verdict)

chain = F.make_family("selfloop_chain")
for K in (1, 3, 6):
    rep = trace_bound_check(chain, K, 6)
    print(f"K={K}: lambdamax={rep.lambdamax:.3e} <= trace={rep.trace:.3e} <= 2^(1-K)={rep.power_bound:.3e}")

growth = volume_growth_check(F.make_family("homogeneous_tree"), 10, 0.1, hbar_certificate=0.05)
print(growth.claim)
