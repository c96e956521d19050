"""A three-qubit mixture no local protocol can create, with evidence.

Mix the GHZ and W states: every decomposition of the result into two
pure states stays inside span{W, GHZ}, and every state in that span is
of W or GHZ entanglement class -- both genuinely tripartite.  But any
state produced from a pure precursor by local channels (even with
classical communication) admits a decomposition whose elements are
local-unitarily related, hence of a single class.  The certificate
checker formalizes this; the numerical search independently fails to
get anywhere near the target, while a genuinely noisy GHZ state (a
positive control) is matched to high precision.
"""

from lcstates import (apply_product_channel, dephasing_channel, ghz_state,
                      identity_channel, lc_distance_search,
                      lccc_obstruction_check, z_mixture)

rho = z_mixture(0.5)
cert = lccc_obstruction_check(rho)
print("verdict:", cert.verdict)
print("eigenvector classes:", sorted(c.label for c in cert.classes))

print("\nsearch residuals (trace distance):")
res = lc_distance_search(rho, restarts=4, max_iters=1500, master_seed=0)
print(f"  GHZ/W mixture (obstructed): {res.trace_distance:.4f}")

control = apply_product_channel(
    [dephasing_channel(2, 0.3), identity_channel(2), identity_channel(2)],
    ghz_state().density())
res = lc_distance_search(control, restarts=4, max_iters=1500, master_seed=0)
print(f"  dephased GHZ (reachable):   {res.trace_distance:.2e}")
