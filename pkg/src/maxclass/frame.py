"""The groups S_{i,m}(gamma) = G(L) x| P and the frame-tree enumeration.

Each S_{i,m}(gamma) has order p^{m-i+1}; the P-factor acts on the Lazard
group by multiplication with theta.  The frame of a branch is assembled by
sweeping a coefficient grid, building one chain of truncations per surviving
gamma, and merging vertices only when an isomorphism move has been verified:
vertex counts are therefore upper bounds on the number of isomorphism types.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .cyclotomic import (
    BudgetExceeded,
    CycElt,
    MaxclassError,
    PrimeContext,
    Valuation,
)
from .homs import GammaCoeffs, NotInHhat, in_Hhat
from .isom import IsoMove, _coeff_key, find_certified_move
from .lazard import BchTable, bch_multiply, build_bch_table, theta_power_map
from .liering import LcsProfile, LieElt, LieRingSpec, jacobi_exponent


MAINLINE = "mainline"
BRANCH = "branch"


def classify(i: int, m: int) -> str:
    """Mainline iff m <= 2i+1, else the vertex lies in branch B_{i+2}."""
    return MAINLINE if m <= 2 * i + 1 else BRANCH


class SGroup:
    """S_{i,m}(gamma): the Lazard group of L_{i,m}(gamma) extended by P."""

    def __init__(self, spec: LieRingSpec, table: BchTable | None = None):
        cls = spec.nilpotency_class
        if table is None:
            table = build_bch_table(max(cls, 1), p=spec.ctx.p)
        self.spec = spec
        self.table = table
        self.ctx = spec.ctx

    @property
    def order_exp(self) -> int:
        return self.spec.m - self.spec.i + 1

    def __repr__(self) -> str:
        return (f"SGroup(p={self.ctx.p}, i={self.spec.i}, m={self.spec.m}, "
                f"order=p^{self.order_exp})")

    def element(self, g: LieElt | CycElt, t: int = 0) -> GroupElt:
        if isinstance(g, CycElt):
            g = self.spec.element(g)
        return GroupElt(self, g, t % self.ctx.p)

    def identity(self) -> GroupElt:
        return self.element(self.spec.zero(), 0)

    def p_generator(self) -> GroupElt:
        return self.element(self.spec.zero(), 1)

    def generators(self) -> list[GroupElt]:
        """Module generators of the G-part plus the P-generator."""
        gens = [self.element(b, 0) for b in self.spec.basis()]
        gens.append(self.p_generator())
        return gens

    def multiply(self, x: GroupElt, y: GroupElt) -> GroupElt:
        if x.group is not self or y.group is not self:
            raise MaxclassError("elements belong to different groups")
        g = bch_multiply(x.g, theta_power_map(y.g, x.t), self.table)
        return GroupElt(self, g, (x.t + y.t) % self.ctx.p)

    def inverse(self, x: GroupElt) -> GroupElt:
        return GroupElt(self, theta_power_map(-x.g, -x.t % self.ctx.p), -x.t % self.ctx.p)

    def commutator(self, x: GroupElt, y: GroupElt) -> GroupElt:
        t = self.multiply(self.multiply(self.inverse(x), self.inverse(y)), x)
        return self.multiply(t, y)

    def power(self, x: GroupElt, n: int) -> GroupElt:
        out = self.identity()
        base, n = (self.inverse(x), -n) if n < 0 else (x, n)
        for _ in range(n):
            out = self.multiply(out, base)
        return out

    def enumerate_elements(self, budget: int | None = None):
        for g in self.spec.enumerate_elements(budget=budget):
            for t in range(self.ctx.p):
                yield GroupElt(self, g, t)


@dataclass(frozen=True)
class GroupElt:
    """An element (g, theta^t) of S_{i,m}(gamma)."""

    group: SGroup
    g: LieElt
    t: int

    def __mul__(self, other: GroupElt) -> GroupElt:
        return self.group.multiply(self, other)

    def inverse(self) -> GroupElt:
        return self.group.inverse(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupElt):
            return NotImplemented
        return self.group is other.group and self.t == other.t and self.g == other.g

    def __hash__(self) -> int:
        return hash((self.t, self.g.value.digits))

    def is_identity(self) -> bool:
        return self.t == 0 and self.g.is_zero()

    def __repr__(self) -> str:
        return f"GroupElt(g={self.g!r}, t={self.t})"


def s_multiply(x: GroupElt, y: GroupElt) -> GroupElt:
    return x.group.multiply(x, y)


def s_group_lcs(group: SGroup) -> LcsProfile:
    """Exponent chain of the lower central series of S.

    Starting from all generators (P-generator included), each term is the
    P-exponent of the theta-invariant module generated by commutator g-parts.
    Maximal class means the chain descends by exactly 1 per step, from i+1
    down to m.
    """
    spec = group.spec
    gens = group.generators()
    exps = [spec.i]
    while exps[-1] < spec.m:
        layer = [group.element(spec.ctx.kappa_power(exps[-1] + r), 0)
                 for r in range(spec.ctx.d)]
        vals = []
        for a in layer:
            for b in gens:
                c = group.commutator(a, b)
                if c.t != 0:
                    raise MaxclassError("commutator escaped the G-part")
                vals.append(c.g.valuation())
        nxt = Valuation.minimum(vals)
        w = min(nxt.value, spec.m)
        if w <= exps[-1]:
            raise MaxclassError(f"central series of S stalls at exponent {exps[-1]}")
        exps.append(w)
    return LcsProfile(tuple(exps), spec.m)


def verify_maximal_class(group: SGroup) -> bool:
    """Step-by-1 chain check: exponents i, i+1, ..., m with no gaps."""
    prof = s_group_lcs(group)
    want = tuple(range(group.spec.i, group.spec.m + 1))
    return prof.exponents == want if group.spec.m > group.spec.i else True


def quotient_edge(group: SGroup) -> tuple[SGroup, callable]:
    """The quotient S_{i,m} -> S_{i,m-1} by truncation, with the element map."""
    spec = group.spec
    if spec.m <= spec.i:
        raise ValueError("no quotient below m = i")
    target_spec = LieRingSpec(spec.ctx, spec.i, spec.m - 1, spec.gamma, lam=spec.lam)
    target = SGroup(target_spec, group.table)

    def project(x: GroupElt) -> GroupElt:
        return target.element(target_spec.element(x.g.value), x.t)

    return target, project


@dataclass
class FrameNode:
    """A vertex of the enumerated tree: one certified class of S_{i,m}(gamma)."""

    i: int
    m: int
    gamma: GammaCoeffs
    classification: str
    order_exp: int
    s_class: int
    member_keys: list = field(default_factory=list)
    node_id: str = ""

    @property
    def branch_root(self) -> int | None:
        return self.i + 2 if self.classification == BRANCH else None

    def label(self) -> str:
        h = hashlib.sha256(repr(self.member_keys[0]).encode()).hexdigest()[:8]
        return f"p^{self.order_exp}, class {self.s_class}, {h}"


@dataclass
class FrameTree:
    p: int
    i: int
    m_max: int
    coeff_mod: int
    nodes: list[FrameNode]
    edges: list[tuple[str, str]]
    merged_by: list[dict]

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "i": self.i,
            "m_max": self.m_max,
            "coeff_mod": self.coeff_mod,
            "nodes": [
                {
                    "id": n.node_id,
                    "i": n.i,
                    "m": n.m,
                    "order_exp": n.order_exp,
                    "class": n.s_class,
                    "classification": n.classification,
                    "branch_root": n.branch_root,
                    "gamma": n.gamma.to_json(),
                    "members": [repr(k) for k in n.member_keys],
                }
                for n in self.nodes
            ],
            "edges": [{"parent": a, "child": b} for a, b in self.edges],
            "merged_by": self.merged_by,
        }

    def to_dot(self) -> str:
        lines = ["digraph frame {"]
        for n in self.nodes:
            lines.append(f'  "{n.node_id}" [label="{n.label()}"];')
        for a, b in self.edges:
            lines.append(f'  "{a}" -> "{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _coefficient_grid(ctx: PrimeContext, m_c: int, budget: int):
    """All l-tuples of residues of O/P^{m_c}, lifted to exact elements."""
    count = ctx.p ** (m_c * ctx.l)
    if count > budget:
        raise BudgetExceeded(f"grid of {count} coefficient vectors exceeds budget {budget}")
    mods = ctx.digit_moduli(m_c)

    def residues():
        def rec(j, digs):
            if j == ctx.d:
                yield ctx.element(digs, ctx.M_work)
                return
            for v in range(mods[j]):
                digs[j] = v
                yield from rec(j + 1, digs)
            digs[j] = 0
        yield from rec(0, [0] * ctx.d)

    def tuples(a):
        if a == 0:
            yield []
            return
        for rest in tuples(a - 1):
            for r in residues():
                yield rest + [r]

    yield from tuples(ctx.l)


def enumerate_frame(ctx: PrimeContext, i: int, m_max: int, coeff_mod: int = 1,
                    budget: int = 100_000, verify: bool = True,
                    table: BchTable | None = None) -> FrameTree:
    """Build the tree of frame vertices for the grid of coefficients mod P^{coeff_mod}.

    Every grid representative passing the Hhat_i test contributes the chain of
    truncations m = i .. min(lambda, m_max); vertices at each level are merged
    only under certified moves, and each vertex is verified to be a group of
    maximal class.
    """
    gammas = []
    for coeffs in _coefficient_grid(ctx, coeff_mod, budget):
        try:
            g = GammaCoeffs(ctx, i, coeffs, check=True)
        except NotInHhat:
            continue
        lam = jacobi_exponent(g, i)
        gammas.append((g, lam))
    if not gammas:
        raise MaxclassError(f"no grid coefficient passes the Hhat_{i} test")

    if table is None:
        max_cls = 0
        for g, lam in gammas:
            m_top = min(lam.value, m_max)
            if m_top >= i:
                spec = LieRingSpec(ctx, i, m_top, g, lam=lam)
                max_cls = max(max_cls, spec.nilpotency_class)
        table = build_bch_table(max(max_cls, 1), p=ctx.p)

    nodes: list[FrameNode] = []
    edges: list[tuple[str, str]] = []
    merged_by: list[dict] = []
    prev_class_of: dict[int, str] = {}

    for m in range(i, m_max + 1):
        members = [idx for idx, (g, lam) in enumerate(gammas) if lam.value >= m]
        if not members:
            break
        # union-find over certified moves at this level
        parent = {idx: idx for idx in members}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for pos, ia in enumerate(members):
            for ib in members[pos + 1:]:
                if find(ia) == find(ib):
                    continue
                # congruence mod P^m implies congruence mod P^{m-1}, so only
                # pairs already merged at the previous level can merge here
                if prev_class_of and prev_class_of.get(ia) != prev_class_of.get(ib):
                    continue
                mv = find_certified_move(gammas[ia][0], gammas[ib][0], m,
                                         unit_modulus=coeff_mod, budget=budget)
                if mv is not None:
                    merged_by.append({
                        "m": m,
                        "move": mv.to_json(),
                        "verified": True,
                        "from": repr(_coeff_key(gammas[ia][0], coeff_mod)),
                        "to": repr(_coeff_key(gammas[ib][0], coeff_mod)),
                    })
                    parent[find(ib)] = find(ia)

        classes: dict[int, list[int]] = {}
        for idx in members:
            classes.setdefault(find(idx), []).append(idx)

        class_of: dict[int, str] = {}
        for root in sorted(classes, key=lambda r: _coeff_key(gammas[r][0], coeff_mod)):
            rep, lam = gammas[root]
            node_id = f"m{m}n{len([n for n in nodes if n.m == m])}"
            spec = LieRingSpec(ctx, i, m, rep, lam=lam)
            group = SGroup(spec, table)
            if verify and not verify_maximal_class(group):
                raise MaxclassError(f"vertex {node_id} fails the maximal-class check")
            node = FrameNode(
                i=i, m=m, gamma=rep,
                classification=classify(i, m),
                order_exp=m - i + 1,
                s_class=m - i if m > i else 1,
                member_keys=[_coeff_key(gammas[idx][0], coeff_mod) for idx in classes[root]],
                node_id=node_id,
            )
            nodes.append(node)
            for idx in classes[root]:
                class_of[idx] = node_id
        if prev_class_of:
            seen = set()
            for idx, nid in class_of.items():
                pid = prev_class_of[idx]
                if (pid, nid) not in seen:
                    seen.add((pid, nid))
                    edges.append((pid, nid))
        prev_class_of = class_of

    return FrameTree(p=ctx.p, i=i, m_max=m_max, coeff_mod=coeff_mod,
                     nodes=nodes, edges=edges, merged_by=merged_by)
