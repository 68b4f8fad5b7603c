import random

import pytest

from maxclass import (
    BudgetExceeded,
    GammaCoeffs,
    LieRingSpec,
    PrimeContext,
    SGroup,
    classify,
    enumerate_frame,
    jacobi_exponent,
    quotient_edge,
    s_group_lcs,
    s_multiply,
    verify_maximal_class,
)
import oracles


@pytest.fixture(scope="module")
def ctx():
    return PrimeContext(5, 40)


@pytest.fixture(scope="module")
def group(ctx):
    g = GammaCoeffs.from_integers(ctx, 7, [1])
    lam = jacobi_exponent(g, 7)
    return SGroup(LieRingSpec(ctx, 7, 18, g, lam=lam))


def _rnd(group, rng):
    ctx = group.ctx
    spec = group.spec
    v = ctx.zero()
    for t in range(spec.m - spec.i):
        a = rng.randrange(ctx.p)
        if a:
            v = v + ctx.kappa_power(spec.i + t) * a
    return group.element(v, rng.randrange(ctx.p))


def test_order_and_p_generator(group):
    assert group.order_exp == 12
    assert group.power(group.p_generator(), 5).is_identity()


def test_s_multiply_associative_sampled(group):
    rng = random.Random(0)
    for _ in range(40):
        x, y, z = _rnd(group, rng), _rnd(group, rng), _rnd(group, rng)
        assert s_multiply(s_multiply(x, y), z) == s_multiply(x, s_multiply(y, z))
        assert s_multiply(x, x.inverse()).is_identity()


def test_commutator_with_p_generator_raises_valuation(group):
    for e in (7, 9, 12):
        x = group.element(group.ctx.kappa_power(e), 0)
        c = group.commutator(x, group.p_generator())
        assert c.t == 0
        assert c.g.valuation().value == e + 1


def test_s_group_lcs_step_by_one(group):
    prof = s_group_lcs(group)
    assert prof.exponents == tuple(range(7, 19))
    assert verify_maximal_class(group)
    assert prof.nilpotency_class == 18 - 7  # class of S equals m - i


def test_mainline_abelian_case(ctx):
    # for m <= 2i+1 the G-part is abelian and gamma_j(S) has exponent i+j-1
    g = GammaCoeffs.from_integers(ctx, 7, [1])
    grp = SGroup(LieRingSpec(ctx, 7, 15, g))
    prof = s_group_lcs(grp)
    assert prof.exponents == tuple(7 + j - 1 for j in range(1, 10))


def test_classify_thresholds():
    assert classify(7, 15) == "mainline"
    assert classify(7, 16) == "branch"
    assert classify(7, 7) == "mainline"


def test_quotient_edge_properties(group):
    rng = random.Random(1)
    target, project = quotient_edge(group)
    assert target.order_exp == group.order_exp - 1
    for _ in range(25):
        x, y = _rnd(group, rng), _rnd(group, rng)
        assert project(group.multiply(x, y)) == target.multiply(project(x), project(y))
    kernel = {group.element(group.ctx.kappa_power(17) * a, 0) for a in range(5)}
    assert len(kernel) == 5
    for k in kernel:
        assert project(k).is_identity()
        assert group.commutator(k, _rnd(group, rng)).is_identity()


def test_quotient_composition_is_direct_truncation(group):
    rng = random.Random(2)
    t1, pr1 = quotient_edge(group)
    t2, pr2 = quotient_edge(t1)
    direct_spec = LieRingSpec(group.ctx, 7, 16, group.spec.gamma, lam=group.spec.lam)
    direct = SGroup(direct_spec, group.table)
    for _ in range(10):
        x = _rnd(group, rng)
        y = pr2(pr1(x))
        z = direct.element(direct_spec.element(x.g.value), x.t)
        assert y.g.value.digits == z.g.value.digits and y.t == z.t


def test_frame_tree_matches_oracle(ctx):
    # all four unit coefficients merge under Z_p twists at every level, so the
    # tree is a single chain m = 7..m_max; lambda = 24 caps nothing below 20
    tree = enumerate_frame(ctx, 7, 20, coeff_mod=1, budget=10 ** 6)
    assert oracles.jacobi_exponent(5, 7, {2: 1}) == 24
    levels = sorted({n.m for n in tree.nodes})
    assert levels == list(range(7, 21))
    assert all(sum(1 for n in tree.nodes if n.m == m) == 1 for m in levels)
    assert len(tree.edges) == len(tree.nodes) - 1
    # every non-root node has its quotient parent present
    ids = {n.node_id for n in tree.nodes}
    children = {b for _, b in tree.edges}
    assert children == {n.node_id for n in tree.nodes if n.m > 7}
    assert all(a in ids for a, _ in tree.edges)
    # merges: 3 certified merges per level over 14 levels
    assert len(tree.merged_by) == 3 * 14
    for n in tree.nodes:
        assert n.classification == ("mainline" if n.m <= 15 else "branch")
        assert n.order_exp == n.m - 7 + 1
        if n.classification == "branch":
            assert n.branch_root == 9


def test_branch_node_exists_at_2i_plus_2(ctx):
    # lambda >= 3i+3-p >= 2i+2 for i >= p-1, so the first branch level exists
    tree = enumerate_frame(ctx, 7, 16, coeff_mod=1, budget=10 ** 6)
    assert any(n.m == 16 and n.classification == "branch" for n in tree.nodes)


def test_skeleton_contained_in_frame(ctx):
    # class-2 truncations (m <= w_3) are exactly the nodes with m <= 23
    g = GammaCoeffs.from_integers(ctx, 7, [1])
    lam = jacobi_exponent(g, 7)
    w3 = LieRingSpec(ctx, 7, 24, g, lam=lam).lcs_profile().exponents[2]
    tree = enumerate_frame(ctx, 7, 20, coeff_mod=1, budget=10 ** 6)
    skeleton = [n for n in tree.nodes if n.m <= w3 and n.m >= 16]
    assert skeleton  # the skeleton part of the branch is present
    for n in skeleton:
        spec = LieRingSpec(ctx, 7, n.m, g, lam=lam)
        assert spec.lcs_profile().nilpotency_class <= 2


def test_budget_guard(ctx):
    with pytest.raises(BudgetExceeded):
        enumerate_frame(ctx, 7, 10, coeff_mod=3, budget=10)


def test_tree_serialization(ctx):
    tree = enumerate_frame(ctx, 7, 10, coeff_mod=1, budget=10 ** 6)
    obj = tree.to_json()
    assert obj["p"] == 5 and len(obj["nodes"]) == len(tree.nodes)
    dot = tree.to_dot()
    assert dot.startswith("digraph") and "p^4" in dot
