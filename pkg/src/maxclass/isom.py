"""Isomorphism moves on coefficient vectors: unit twists and Galois rewrites.

A move (u, sigma_k) sends c to c' with c'_a = sigma_k^{-1}(rho_a(u) c_a),
where rho_a(u) = u^{-1} sigma_a(u) sigma_{1-a}(u).  When the move congruence
holds mod P^m, the map x -> u sigma_k(x) is an explicit isomorphism witness
between the level-m groups, twisting the theta-action by theta -> theta^k.
Only this sufficient direction is ever used: distinct canonical forms are
reported as "not merged", never as non-isomorphic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclotomic import (
    BudgetExceeded,
    CycElt,
    NonUnit,
    PrimeContext,
    enumerate_units,
)
from .homs import CycFrac, GammaCoeffs, gamma_eval


@dataclass(frozen=True)
class IsoMove:
    """A unit u together with a Galois index k (the move uses sigma_k)."""

    u: CycElt
    k: int

    def __post_init__(self):
        p = self.u.ctx.p
        if not 1 <= self.k <= p - 1:
            raise ValueError(f"Galois index must lie in 1..{p - 1}, got {self.k}")
        v = self.u.valuation()
        if not (v.exact and v.value == 0):
            raise NonUnit("move unit must have valuation exactly 0")

    @classmethod
    def identity(cls, ctx: PrimeContext) -> IsoMove:
        return cls(ctx.one(), 1)

    def compose(self, other: IsoMove) -> IsoMove:
        """The move equal to applying self first, then other.

        sigma_{k2}^{-1}(rho_a(u2) sigma_{k1}^{-1}(rho_a(u1) c)) collects into
        sigma_{k1 k2}^{-1}(rho_a(u1 sigma_{k1}(u2)) c).
        """
        p = self.u.ctx.p
        return IsoMove(self.u * other.u.galois(self.k), self.k * other.k % p)

    def inverse(self) -> IsoMove:
        p = self.u.ctx.p
        kinv = pow(self.k, -1, p)
        return IsoMove(self.u.unit_inverse().galois(kinv), kinv)

    def to_json(self) -> dict:
        return {"u": self.u.to_json(), "k": self.k}

    @classmethod
    def from_json(cls, ctx: PrimeContext, obj: dict) -> IsoMove:
        return cls(CycElt.from_json(ctx, obj["u"]), int(obj["k"]))


def rho(a: int, u: CycElt) -> CycElt:
    """The twist rho_a(u) = u^{-1} sigma_a(u) sigma_{1-a}(u); always a unit."""
    p = u.ctx.p
    return u.unit_inverse() * u.galois(a) * u.galois((1 - a) % p)


def apply_move(c: GammaCoeffs, mv: IsoMove, m: int) -> GammaCoeffs:
    """c'_a = sigma_k^{-1}(rho_a(u) c_a), reduced mod P^m at the coefficient level."""
    ctx = c.ctx
    kinv = pow(mv.k, -1, ctx.p)
    out = []
    for a_idx, ca in enumerate(c.coeffs):
        twisted = (ca * rho(a_idx + 2, mv.u)).galois(kinv)
        num = twisted.num.reduce_to(min(twisted.num.prec, m + twisted.den_exp))
        out.append(CycFrac(num, twisted.den_exp))
    return GammaCoeffs(ctx, c.i, out, check=False)


def move_congruent(c: GammaCoeffs, c2: GammaCoeffs, mv: IsoMove, m: int) -> bool:
    """The move congruence sigma_k(c2_a) = rho_a(u) c_a mod P^m, all a."""
    for a_idx, (ca, ca2) in enumerate(zip(c.coeffs, c2.coeffs)):
        lhs = ca2.galois(mv.k)
        rhs = ca * rho(a_idx + 2, mv.u)
        if not lhs.congruent(rhs, m):
            return False
    return True


def witness_map(mv: IsoMove):
    """The additive bijection x -> u sigma_k(x) of P^i/P^m."""
    def phi(x: CycElt) -> CycElt:
        return mv.u * x.galois(mv.k)
    return phi


def verify_witness(c: GammaCoeffs, c2: GammaCoeffs, mv: IsoMove, m: int) -> bool:
    """Certify that x -> u sigma_k(x) is an isomorphism witness mod P^m.

    Checks, on all basis pairs of P^i, that the map carries the c2-bracket to
    the c-bracket, and that it rewrites the theta-action to theta^k.  A True
    result certifies that the level-m groups of c and c2 are isomorphic.
    """
    ctx = c.ctx
    if c.i != c2.i:
        return False
    i = c.i
    phi = witness_map(mv)
    basis = [ctx.kappa_power(i + r) for r in range(ctx.d)]
    phis = [phi(x) for x in basis]
    theta = ctx.theta()
    theta_k = ctx.theta(mv.k)
    for r in range(ctx.d):
        if not phi(theta * basis[r]).congruent(theta_k * phis[r], m):
            return False
        for s in range(r + 1, ctx.d):
            lhs = phi(gamma_eval(c2, basis[r], basis[s]))
            rhs = gamma_eval(c, phis[r], phis[s])
            if not lhs.congruent(rhs, m):
                return False
    return True


def _coeff_key(c: GammaCoeffs, modulus: int) -> tuple:
    key = []
    for ca in c.coeffs:
        num = ca.num.reduce_to(min(ca.num.prec, modulus + ca.den_exp))
        key.append((ca.den_exp, num.digits))
    return tuple(key)


def _derived_unit_candidates(c: GammaCoeffs, c2: GammaCoeffs, k: int) -> list[CycElt]:
    """Galois-invariant quotients sigma_k(c2_a) / c_a; for such u, rho_a(u) = u."""
    ctx = c.ctx
    out = []
    for ca, ca2 in zip(c.coeffs, c2.coeffs):
        if ca.is_zero() or ca2.is_zero():
            continue
        try:
            q = ca2.galois(k) / ca
        except Exception:
            continue
        v = q.valuation()
        if q.den_exp == 0 and v.exact and v.value == 0:
            u = q.num
            # keep only Z_p-fixed candidates, where the rho-twist collapses to u
            if u.galois(_generator(ctx.p)).congruent(u, u.prec):
                out.append(u)
    return out


def _generator(p: int) -> int:
    for g in range(2, p):
        seen, x = set(), 1
        for _ in range(p - 1):
            x = x * g % p
            seen.add(x)
        if len(seen) == p - 1:
            return g
    raise ValueError(f"no generator mod {p}")


def find_certified_move(c: GammaCoeffs, c2: GammaCoeffs, m: int,
                        unit_modulus: int = 1, budget: int = 100_000) -> IsoMove | None:
    """Search for a move certifying the level-m groups of c and c2 isomorphic.

    Candidates are the units of O/P^{unit_modulus} (canonically lifted) plus
    quotient-derived Z_p units; each candidate is checked exactly against the
    move congruence mod P^m, then against the explicit witness.  Returns the
    first certified move, or None (which never claims non-isomorphism).
    """
    ctx = c.ctx
    for k in range(1, ctx.p):
        for u in _derived_unit_candidates(c, c2, k):
            mv = IsoMove(u, k)
            if move_congruent(c, c2, mv, m) and verify_witness(c, c2, mv, m):
                return mv
    for u in enumerate_units(ctx, unit_modulus, budget):
        u = u.lift_to(ctx.M_work)
        for k in range(1, ctx.p):
            mv = IsoMove(u, k)
            if move_congruent(c, c2, mv, m) and verify_witness(c, c2, mv, m):
                return mv
    return None


def _orbit_scan(c: GammaCoeffs, m_c: int, budget: int) -> tuple[GammaCoeffs, set]:
    ctx = c.ctx
    n_moves = (ctx.p - 1) ** 2 * ctx.p ** (m_c - 1)
    if n_moves > budget:
        raise BudgetExceeded(f"{n_moves} moves exceed budget {budget}")
    best = None
    best_key = None
    seen = set()
    for u in enumerate_units(ctx, m_c):
        u = u.lift_to(ctx.M_work)
        for k in range(1, ctx.p):
            cand = apply_move(c, IsoMove(u, k), m_c)
            key = _coeff_key(cand, m_c)
            seen.add(key)
            if best_key is None or key < best_key:
                best, best_key = cand, key
    return best, seen


def orbit_canonical(c: GammaCoeffs, m_c: int, budget: int = 100_000) -> GammaCoeffs:
    """Lexicographic minimum of the move orbit of c modulo P^{m_c}.

    The action of units mod P^{m_c} and the p-1 Galois indices descends to
    coefficient vectors mod P^{m_c}, so one sweep over all moves covers the
    whole orbit; the minimum is idempotent and constant on certified orbits.
    """
    return _orbit_scan(c, m_c, budget)[0]


def orbit_report(c: GammaCoeffs, m_c: int, budget: int = 100_000) -> dict:
    """Canonical form plus a lower bound on the orbit size (distinct images seen)."""
    best, seen = _orbit_scan(c, m_c, budget)
    return {"canonical": best.to_json(), "orbit_size_lower_bound": len(seen)}
