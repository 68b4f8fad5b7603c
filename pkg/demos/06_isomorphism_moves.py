#!/usr/bin/env python3
# Certified isomorphism moves: unit twists, Galois rewrites, orbit scans.
from maxclass import (
    GammaCoeffs, IsoMove, PrimeContext, apply_move, enumerate_units,
    find_certified_move, move_congruent, orbit_canonical, orbit_report, rho,
    theta_a_eval, verify_witness, witness_map,
)
from maxclass.verify import scan_conjecture1

ctx = PrimeContext(5, 40)
i, m = 7, 18
c = GammaCoeffs.from_integers(ctx, i, [1])

# the twist rho_a(u) = u^-1 sigma_a(u) sigma_{1-a}(u) governs unit scaling:
# theta_a(ux ^ uy) picks up the factor u * rho_a(u)
u = ctx.one() + ctx.kappa_power(1) * 2
x, y = ctx.kappa_power(7), ctx.kappa_power(8)
lhs = theta_a_eval(2, u * x, u * y)
rhs = u * rho(2, u) * theta_a_eval(2, x, y)
print("scaling identity:", (lhs - rhs).is_zero())
print("rho of a theta power is 1:", (rho(2, ctx.theta(3)) - ctx.one()).is_zero())

# a move (u, k) rewrites coefficients as c_a -> sigma_k^-1(rho_a(u) c_a);
# the witness map x -> u sigma_k(x) then carries one bracket to the other
mv = IsoMove(u, 3)
c2 = apply_move(c, mv, m)
print("congruence holds:", move_congruent(c, c2, mv, m))
print("witness verifies:", verify_witness(c, c2, mv, m))
phi = witness_map(mv)
print("witness of kappa^7:", phi(ctx.kappa_power(7)).valuation())

# integer rescalings of the coefficients are certified isomorphic at every m
for v in (2, 3, 4):
    cv = GammaCoeffs.from_integers(ctx, i, [v])
    found = find_certified_move(c, cv, m)
    print(f"c=1 ~ c={v}:", found is not None and verify_witness(c, cv, found, m))

# canonical forms under all moves modulo P: idempotent and orbit-invariant
units = [w.lift_to(ctx.M_work) for w in enumerate_units(ctx, 1)]
can = orbit_canonical(c, 1)
print("idempotent:", orbit_canonical(can, 1).to_json() == can.to_json())
print("orbit report:", orbit_report(c, 1)["orbit_size_lower_bound"], "coefficient classes")

# evidence scan: the Jacobi ideal exponent stays finite on the whole grid
report = scan_conjecture1(5, 10, coeff_mod=1, m_work=60)
print("scan entries:", len(report["entries"]),
      " unresolved:", report["unresolved_atleast"],
      " slack histogram:", report["slack_histogram"])
