#!/usr/bin/env python3
# Exact arithmetic in the maximal order of Q_p(theta) at fixed precision.
from fractions import Fraction

from maxclass import PrimeContext, enumerate_units

# a context fixes the prime and the working precision (elements are known
# modulo P^M_work, where P = kappa * O is the maximal ideal)
ctx = PrimeContext(5, 24)
kappa = ctx.kappa_power(1)
theta = ctx.theta()

# digits are little-endian coefficients of 1, kappa, kappa^2, kappa^3
print("kappa     =", kappa.digits)
print("theta     =", theta.digits)          # theta = 1 + kappa

# theta is a primitive 5th root of unity
x = ctx.one()
for _ in range(5):
    x = x * theta
print("theta^5 == 1:", x == ctx.one())

# valuations are read off the digits exactly; the integer p sits at level p-1
print("v(kappa^3)  =", ctx.kappa_power(3).valuation())
print("v(5)        =", ctx.from_int(5).valuation())
print("v(0)        =", ctx.zero().valuation())   # only a lower bound

# Galois automorphisms kappa -> (1+kappa)^k - 1 preserve valuation
y = ctx.element([2, 4, 1, 3])
print("galois preserves valuation:", y.galois(3).valuation() == y.valuation())
print("sigma_2 sigma_3 = sigma_6=1:", y.galois(2).galois(3) == y)

# exact division by powers of kappa, and unit inversion by Newton lifting
u = ctx.from_int(5).div_kappa(4)              # 5 / kappa^4 is a unit
print("5/kappa^4 is a unit:", u.valuation())
w = ctx.one() + ctx.kappa_power(2)
print("w * w^-1 == 1:", w * w.unit_inverse() == ctx.one())

# rationals with denominator prime to p embed through modular inverses
half = ctx.from_rational(Fraction(1, 2))
print("(1/2) * 2 == 1:", half * ctx.from_int(2) == ctx.one())

# the unit group of O/P^m has (p-1) p^{m-1} elements
for m in (1, 2, 3):
    print(f"units of O/P^{m}:", sum(1 for _ in enumerate_units(ctx, m)))
