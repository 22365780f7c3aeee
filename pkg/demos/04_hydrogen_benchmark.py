"""Hydrogen benchmark: the (3,2,2) Fisher integrals.

The three spatial Fisher integrals of Psi_322 evaluate to 1/(45 a^2), 1
and 4; the theta/phi right-hand sides built from the angular multiplier
fields reproduce 1 and 4, and the radial side closes once the Coulomb
field 2/(a r) - 1/(n a)^2 stands in for the constant multiplier.
"""

from fishermodes import AngularIndex, HydrogenState, appendix_fisher_check

for a in (1.0, 2.0):
    state = HydrogenState(3, AngularIndex(2, 2), a=a)
    rep = appendix_fisher_check(state)
    print(f"== Psi_322 with a = {a} ==")
    print(f"  norm on the truncated ball: {rep.norm:.12f}")
    header = f"  {'coord':>6} {'computed':>16} {'multiplier rhs':>16} {'benchmark':>12}"
    print(header)
    for res in rep.results:
        bench = f"{res.paper_value:.10f}" if res.paper_value is not None else "-"
        print(f"  {res.coord:>6} {res.lhs:16.12f} {res.rhs:16.12f} {bench:>12}")
    print(f"  bare-metric identity holds: {rep.metric_identity_holds} "
          "(the self-consistent closure is the multiplier form)")

print("== closure for other bound states ==")
for n, ell, m in [(1, 0, 0), (2, 1, 1), (4, 3, -2)]:
    rep = appendix_fisher_check(HydrogenState(n, AngularIndex(ell, m)))
    worst = max(abs(res.residual) for res in rep.results)
    print(f"  ({n},{ell},{m}): worst lhs-vs-rhs residual = {worst:.2e}")
