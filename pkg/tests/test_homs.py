import random
from fractions import Fraction

import pytest

from maxclass import (
    CycFrac,
    DenominatorCap,
    GammaCoeffs,
    NotInHhat,
    PrecisionExhausted,
    PrimeContext,
    Valuation,
    epsilon,
    gamma_eval,
    images_to_coeffs,
    in_Hhat,
    min_probe_valuation,
    o_a,
    shift_check,
    theta_a_eval,
    vandermonde,
)
from oracles import o_a as o_a_oracle


@pytest.fixture(scope="module")
def ctx5():
    return PrimeContext(5, 40)


@pytest.fixture(scope="module")
def ctx7():
    return PrimeContext(7, 44)


def test_o_a_values():
    assert o_a(5, 2) == 4
    assert o_a(7, 3) == 3
    assert o_a(7, 2) == 6
    for p in (5, 7, 11, 13):
        for a in range(2, (p - 1) // 2 + 1):
            assert o_a(p, a) == o_a_oracle(p, a)
    with pytest.raises(ValueError):
        o_a(5, 3)


def test_epsilon():
    assert epsilon(5, 2, 9, 9) == 1
    assert epsilon(5, 2, 9, 7) == 0
    assert epsilon(7, 3, 12, 6) == 1


def test_theta_a_antisymmetric(ctx5):
    x = ctx5.element([1, 2, 3, 1])
    assert theta_a_eval(2, x, x).is_zero()
    y = ctx5.element([0, 3, 1, 2])
    assert (theta_a_eval(2, x, y) + theta_a_eval(2, y, x)).is_zero()
    with pytest.raises(ValueError):
        theta_a_eval(3, x, y)


def test_theta_a_probe_formula(ctx5):
    # theta_a(kappa^{i+j} ^ kappa^{i+j-1}) = u_a^{i+j-1} (theta^a - theta^{1-a})
    i, j = 4, 1
    lhs = theta_a_eval(2, ctx5.kappa_power(i + j), ctx5.kappa_power(i + j - 1))
    u2 = ctx5.kappa_power(1).galois(2) * ctx5.kappa_power(1).galois(4)
    rhs = u2.pow(i + j - 1) * (ctx5.theta(2) - ctx5.theta(4))
    assert (lhs - rhs).is_zero()


def test_theta_a_valuation_rule_p5(ctx5):
    # valuation i+j+1 iff 4 | (i-j), else i+j
    for i, j in [(3, 3), (7, 3), (6, 2), (5, 1), (2, 1), (9, 8)]:
        vals = [theta_a_eval(2, ctx5.theta(h) * ctx5.kappa_power(i), ctx5.kappa_power(j)).valuation()
                for h in range(4)]
        want = i + j + (1 if (i - j) % 4 == 0 else 0)
        assert Valuation.minimum(vals) == Valuation.exactly(want)


def test_gamma_eval_bilinear_equivariant(ctx7):
    rng = random.Random(0)
    g = GammaCoeffs.from_integers(ctx7, 5, [2, 3], check=False)
    for _ in range(20):
        x = ctx7.kappa_power(5) * ctx7.element([rng.randrange(49) for _ in range(6)])
        y = ctx7.kappa_power(5) * ctx7.element([rng.randrange(49) for _ in range(6)])
        assert gamma_eval(g, x, x).is_zero()
        th = ctx7.theta()
        assert (gamma_eval(g, th * x, th * y) - th * gamma_eval(g, x, y)).is_zero()


def test_gammimgs_bound(ctx7):
    rng = random.Random(1)
    for _ in range(60):
        g = GammaCoeffs(ctx7, 0, [CycFrac(ctx7.element([rng.randrange(49) for _ in range(6)]))
                                  for _ in range(2)], check=False)
        i, j = rng.randrange(15), rng.randrange(15)
        v = gamma_eval(g, ctx7.kappa_power(i), ctx7.theta(rng.randrange(6)) * ctx7.kappa_power(j))
        assert v.valuation().bound >= i + j - 5


def test_vandermonde_invariants(ctx7):
    for i in (0, 3, 8):
        vd = vandermonde(ctx7, i)
        for v in vd.V_diag:
            assert v.valuation() == Valuation.exactly(0)
        for u in vd.u:
            assert u.valuation() == Valuation.exactly(2)
        assert (vd.u[0] - vd.u[1]).valuation() == Valuation.exactly(2)
        for idx in range(2):
            assert vd.B[idx][0] == ctx7.one().reduce_to(vd.B[idx][0].prec)


def test_v_a_factor_is_the_diagonal_entry(ctx7):
    # the probe-wedge factor v_a in kappa^{2i+1} v_a u_a^{j-1} is the V_i diagonal
    i = 4
    vd = vandermonde(ctx7, i)
    for idx, a in enumerate((2, 3)):
        for j in (1, 2):
            lhs = theta_a_eval(a, ctx7.kappa_power(i + j), ctx7.kappa_power(i + j - 1))
            rhs = ctx7.kappa_power(2 * i + 1) * vd.V_diag[idx] * vd.u[idx].pow(j - 1)
            assert lhs.congruent(rhs, min(lhs.prec, rhs.prec))


def test_in_hhat_examples(ctx5, ctx7):
    g0 = GammaCoeffs.from_integers(ctx5, 7, [0], check=False)
    assert not in_Hhat(g0, 7)
    for i in (0, 1, 5, 7, 12):
        g = GammaCoeffs.from_integers(ctx5, i, [1])
        assert in_Hhat(g, i)
    assert in_Hhat(GammaCoeffs.from_integers(ctx7, 5, [0, 1]), 5)


def test_in_hhat_probe_consistency(ctx7):
    rng = random.Random(2)
    for _ in range(40):
        i = rng.randrange(10)
        g = GammaCoeffs(ctx7, i, [CycFrac(ctx7.element([rng.randrange(49) for _ in range(6)]))
                                  for _ in range(2)], check=False)
        probe = min_probe_valuation(g, i)
        assert in_Hhat(g, i) == (probe.exact and probe.value == 2 * i + 1)


def test_hhat_constructor_rejects(ctx5):
    with pytest.raises(NotInHhat):
        GammaCoeffs.from_integers(ctx5, 7, [0])
    with pytest.raises(NotInHhat):
        GammaCoeffs.from_integers(ctx5, 7, [5])  # 5 = p lands in P


def test_images_to_coeffs_round_trip(ctx7):
    rng = random.Random(3)
    i = 5
    probes = [(ctx7.kappa_power(i + j), ctx7.kappa_power(i + j - 1)) for j in (1, 2)]
    for _ in range(15):
        g = GammaCoeffs.from_integers(ctx7, i,
                                      [rng.randrange(49), rng.randrange(49)], check=False)
        images = [gamma_eval(g, x, y) for x, y in probes]
        g2 = images_to_coeffs(ctx7, i, images)
        images2 = [gamma_eval(g2, x, y) for x, y in probes]
        for a, b in zip(images, images2):
            prec = min(a.prec, b.prec)
            assert a.reduce_to(prec) == b.reduce_to(prec)


def test_images_to_coeffs_single(ctx5):
    i = 7
    g = images_to_coeffs(ctx5, i, [ctx5.kappa_power(2 * i + 1)])
    vinv = vandermonde(ctx5, i).V_diag[0].unit_inverse()
    assert g.coeffs[0].den_exp == 0
    assert (g.coeffs[0].num - vinv.reduce_to(g.coeffs[0].num.prec)).is_zero()
    assert in_Hhat(g, i)


def test_images_to_coeffs_denominator_cap(ctx7):
    # solutions carry kappa-denominators at most l(l-1)
    rng = random.Random(4)
    i = 3
    cap = ctx7.l * (ctx7.l - 1)
    for _ in range(10):
        images = [ctx7.kappa_power(2 * i + 1) * ctx7.element([rng.randrange(7) for _ in range(6)])
                  for _ in range(2)]
        try:
            g = images_to_coeffs(ctx7, i, images)
        except PrecisionExhausted:
            continue
        for c in g.coeffs:
            assert c.den_exp <= cap


def test_images_must_lie_in_target_ideal(ctx5):
    from maxclass import InsufficientValuation
    with pytest.raises(InsufficientValuation):
        images_to_coeffs(ctx5, 7, [ctx5.kappa_power(3)])


def test_shift_check(ctx5, ctx7):
    rng = random.Random(5)
    assert shift_check(GammaCoeffs.from_integers(ctx5, 3, [1]), 3)
    for _ in range(10):
        i = rng.randrange(8)
        g = GammaCoeffs(ctx7, i, [CycFrac(ctx7.element([rng.randrange(49) for _ in range(6)]))
                                  for _ in range(2)], check=False)
        if in_Hhat(g, i):
            assert shift_check(g, i)
    with pytest.raises(NotInHhat):
        shift_check(GammaCoeffs.from_integers(ctx5, 7, [0], check=False), 7)


def test_cycfrac_canonical_and_inverse(ctx5):
    q = CycFrac(ctx5.kappa_power(3), 2)  # kappa^3/kappa^2 -> kappa
    assert q.den_exp == 0 and q.num == ctx5.kappa_power(1, q.num.prec)
    w = CycFrac(ctx5.one() + ctx5.kappa_power(1), 3)
    wi = w.inverse()
    prod = w * wi
    assert prod.den_exp == 0
    assert prod.num == ctx5.one().reduce_to(prod.num.prec)
    z = CycFrac(ctx5.zero(), 4)
    assert z.den_exp == 0 and z.is_zero()


def test_cycfrac_galois_respects_denominator(ctx5):
    # sigma_k(num/kappa^d) * sigma_k(kappa)^d == sigma_k(num)
    q = CycFrac(ctx5.one() + ctx5.kappa_power(2), 2)
    for k in (2, 3):
        lhs = q.galois(k) * ctx5.kappa_power(1).galois(k).pow(q.den_exp)
        diff = lhs - CycFrac(q.num.galois(k))
        assert diff.is_zero() or diff.valuation().bound >= 30


def test_denominator_cap_enforced(ctx5):
    with pytest.raises(DenominatorCap):
        GammaCoeffs(ctx5, 7, [CycFrac(ctx5.one(), 9)], check=False)


def test_gamma_serialization(ctx7):
    g = GammaCoeffs.from_integers(ctx7, 5, [4, 1])
    obj = g.to_json()
    g2 = GammaCoeffs.from_json(ctx7, obj)
    assert all((a.num - b.num).is_zero() and a.den_exp == b.den_exp
               for a, b in zip(g.coeffs, g2.coeffs))
