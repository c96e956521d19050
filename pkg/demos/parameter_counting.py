"""Why local contamination cannot reach every mixed state.

A pure n-party state has 2 d^n - 2 real parameters; adding one local
channel per party contributes at most n (d^4 - d^2) more.  The mixed
state manifold has d^{2n} - 1.  For two parties the channel parameters
win; from three parties on they lose, and the gap grows doubly
exponentially -- a simple dimension count showing most multipartite
mixed states have no local-contamination origin.
"""

from lcstates import parameter_counts

print(f"{'n':>3} {'d':>3} {'pure':>10} {'LC bound':>12} {'mixed dim':>14}  covers?")
for d in (2, 3):
    for n in (2, 3, 4, 5, 6):
        pc = parameter_counts(n, d)
        verdict = "yes" if pc.lc_bound >= pc.mixed_dim else "no"
        print(f"{n:>3} {d:>3} {pc.pure_dim:>10} {pc.lc_bound:>12} "
              f"{pc.mixed_dim:>14}  {verdict}")
