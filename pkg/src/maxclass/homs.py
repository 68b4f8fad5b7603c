"""The P-equivariant homomorphisms gamma = sum_a c_a * theta_a.

theta_a sends x ^ y to sigma_a(x) sigma_{1-a}(y) - sigma_{1-a}(x) sigma_a(y);
with a running over 2 .. (p-1)/2 these span the homomorphism space, so a
coefficient vector (c_2, ..., c_{l+1}) is the universal coordinate system.
Membership in the surjective set Hhat_i is decided through the Vandermonde
criterion: (c) V_i B must be integral with at least one unit entry.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import (
    CycElt,
    ContextMismatch,
    InsufficientValuation,
    MaxclassError,
    NonUnit,
    PrecisionExhausted,
    PrimeContext,
    Valuation,
)


class DenominatorCap(MaxclassError):
    pass


class NotInHhat(MaxclassError):
    pass


def o_a(p: int, a: int) -> int:
    """Multiplicative order of a(1-a)^{-1} in (Z/pZ)*."""
    if not 2 <= a <= (p - 1) // 2:
        raise ValueError(f"a must lie in 2..{(p - 1) // 2}, got {a}")
    x = a * pow(1 - a, -1, p) % p
    order, y = 1, x
    while y != 1:
        y = y * x % p
        order += 1
    return order


def epsilon(p: int, a: int, i: int, j: int) -> int:
    return 1 if (i - j) % o_a(p, a) == 0 else 0


def theta_a_eval(a: int, x: CycElt, y: CycElt) -> CycElt:
    p = x.ctx.p
    if not 2 <= a <= (p - 1) // 2:
        raise ValueError(f"a must lie in 2..{(p - 1) // 2}, got {a}")
    b = (1 - a) % p
    return x.galois(a) * y.galois(b) - x.galois(b) * y.galois(a)


class CycFrac:
    """An element num / kappa^den_exp of the field K = Q_p(theta).

    Canonical form keeps den_exp minimal: the numerator is stripped of kappa
    factors whenever the denominator is positive.
    """

    __slots__ = ("num", "den_exp")

    def __init__(self, num: CycElt, den_exp: int = 0):
        while den_exp > 0:
            if num.is_zero():
                den_exp = 0
                break
            if num.valuation().value < 1:
                break
            num = num.div_kappa(1)
            den_exp -= 1
        self.num = num
        self.den_exp = den_exp

    @property
    def ctx(self) -> PrimeContext:
        return self.num.ctx

    def __repr__(self) -> str:
        return f"CycFrac({self.num!r}, den_exp={self.den_exp})"

    def valuation(self) -> Valuation:
        v = self.num.valuation()
        return Valuation(v.value - self.den_exp, v.exact)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _common(self, other: CycFrac) -> tuple[CycElt, CycElt, int]:
        d = max(self.den_exp, other.den_exp)
        a = self.num * self.ctx.kappa_power(d - self.den_exp, self.num.prec) if d > self.den_exp else self.num
        b = other.num * other.ctx.kappa_power(d - other.den_exp, other.num.prec) if d > other.den_exp else other.num
        return a, b, d

    def __add__(self, other: CycFrac) -> CycFrac:
        a, b, d = self._common(other)
        return CycFrac(a + b, d)

    def __sub__(self, other: CycFrac) -> CycFrac:
        a, b, d = self._common(other)
        return CycFrac(a - b, d)

    def __neg__(self) -> CycFrac:
        return CycFrac(-self.num, self.den_exp)

    def __mul__(self, other: CycFrac | CycElt | int | Fraction) -> CycFrac:
        if isinstance(other, CycFrac):
            return CycFrac(self.num * other.num, self.den_exp + other.den_exp)
        return CycFrac(self.num * other, self.den_exp)

    def inverse(self) -> CycFrac:
        v = self.num.valuation()
        if not v.exact:
            raise InsufficientValuation("cannot invert an element that is zero at working precision")
        unit = self.num.div_kappa(v.value).unit_inverse()
        shift = self.den_exp - v.value
        if shift >= 0:
            return CycFrac(unit * self.ctx.kappa_power(shift, unit.prec), 0)
        return CycFrac(unit, -shift)

    def __truediv__(self, other: CycFrac) -> CycFrac:
        return self * other.inverse()

    def galois(self, k: int) -> CycFrac:
        """sigma_k applied to the fraction; sigma_k(kappa^-d) = (kappa s_k)^-d."""
        if self.den_exp == 0:
            return CycFrac(self.num.galois(k), 0)
        # sigma_k(kappa)^den = kappa^den * s_k^den with s_k a unit
        s_k = self.ctx.kappa_power(1, self.num.prec).galois(k).div_kappa(1)
        return CycFrac(self.num.galois(k) * s_k.unit_inverse().pow(self.den_exp), self.den_exp)

    def congruent(self, other: CycFrac, m: int) -> bool:
        """True iff self - other lies in P^m."""
        a, b, d = self._common(other)
        return a.congruent(b, m + d)

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den_exp": self.den_exp}

    @classmethod
    def from_json(cls, ctx: PrimeContext, obj: dict) -> CycFrac:
        return cls(CycElt.from_json(ctx, obj["num"]), int(obj["den_exp"]))


class GammaCoeffs:
    """A homomorphism given by its coefficient vector (c_2, ..., c_{l+1}).

    Frame constructions require membership in Hhat_i (check=True); scan grids
    may carry raw vectors with check=False.
    """

    def __init__(self, ctx: PrimeContext, i: int, coeffs, check: bool = True, den_cap: int | None = None):
        coeffs = tuple(c if isinstance(c, CycFrac) else CycFrac(c) for c in coeffs)
        if len(coeffs) != ctx.l:
            raise ValueError(f"expected {ctx.l} coefficients, got {len(coeffs)}")
        cap = ctx.l * (ctx.l - 1) + 2 if den_cap is None else den_cap
        for c in coeffs:
            if c.den_exp > cap:
                raise DenominatorCap(f"den_exp {c.den_exp} exceeds cap {cap}")
        self.ctx = ctx
        self.i = i
        self.coeffs = coeffs
        if check and not in_Hhat(self, i):
            raise NotInHhat(f"coefficient vector is not in Hhat_{i}")

    @classmethod
    def from_integers(cls, ctx: PrimeContext, i: int, values, check: bool = True) -> GammaCoeffs:
        return cls(ctx, i, [CycFrac(ctx.from_int(v)) for v in values], check=check)

    def __repr__(self) -> str:
        return f"GammaCoeffs(p={self.ctx.p}, i={self.i}, coeffs={list(self.coeffs)!r})"

    def to_json(self) -> dict:
        return {"p": self.ctx.p, "i": self.i, "coeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, ctx: PrimeContext, obj: dict, check: bool = True) -> GammaCoeffs:
        if obj["p"] != ctx.p:
            raise ContextMismatch(f"serialized p={obj['p']} vs context p={ctx.p}")
        return cls(ctx, int(obj["i"]), [CycFrac.from_json(ctx, c) for c in obj["coeffs"]], check=check)


def gamma_eval(g: GammaCoeffs, x: CycElt, y: CycElt) -> CycElt:
    """sum_a c_a * theta_a(x ^ y), with denominators absorbed at the end."""
    ctx = g.ctx
    d_max = max((c.den_exp for c in g.coeffs), default=0)
    acc = ctx.zero(min(x.prec, y.prec))
    for a_idx, c in enumerate(g.coeffs):
        if c.is_zero():
            continue
        t = c.num * theta_a_eval(a_idx + 2, x, y)
        if d_max > c.den_exp:
            t = t * ctx.kappa_power(d_max - c.den_exp, t.prec)
        acc = acc + t
    if d_max == 0:
        return acc
    return acc.div_kappa(d_max)


class VandermondeData:
    """The unit diagonal V_i, the Vandermonde matrix B, and the u_a."""

    def __init__(self, ctx: PrimeContext, i: int, v_diag, b, u):
        self.ctx = ctx
        self.i = i
        self.V_diag = tuple(v_diag)
        self.B = tuple(tuple(row) for row in b)
        self.u = tuple(u)


def vandermonde(ctx: PrimeContext, i: int) -> VandermondeData:
    kappa = ctx.kappa_power(1)
    u = []
    for a in range(2, ctx.l + 2):
        b = (1 - a) % ctx.p
        u.append(kappa.galois(a) * kappa.galois(b))
    v_diag = []
    for idx, a in enumerate(range(2, ctx.l + 2)):
        b = (1 - a) % ctx.p
        t = (ctx.theta(a) - ctx.theta(b)) * u[idx].pow(i)
        v_diag.append(t.div_kappa(2 * i + 1))
    b_mat = [[u[idx].pow(j) for j in range(ctx.l)] for idx in range(ctx.l)]
    return VandermondeData(ctx, i, v_diag, b_mat, u)


def _row_times_vib(g: GammaCoeffs, vd: VandermondeData) -> list[CycFrac]:
    # entries of (c_2, ..., c_{l+1}) V_i B
    entries = []
    for j in range(g.ctx.l):
        acc = CycFrac(g.ctx.zero())
        for idx, c in enumerate(g.coeffs):
            acc = acc + c * (vd.V_diag[idx] * vd.B[idx][j])
        entries.append(acc)
    return entries


def in_Hhat(g: GammaCoeffs, i: int | None = None) -> bool:
    """Surjectivity criterion: (c) V_i B integral with at least one unit entry."""
    i = g.i if i is None else i
    entries = _row_times_vib(g, vandermonde(g.ctx, i))
    saw_unit = False
    undecided_unit = False
    for e in entries:
        v = e.valuation()
        if v.exact:
            if v.value < 0:
                return False
            if v.value == 0:
                saw_unit = True
        else:
            if v.value < 0:
                raise PrecisionExhausted(
                    f"entry valuation undecidable: known only >= {v.value} at working precision")
            if v.value == 0:
                undecided_unit = True
    if saw_unit:
        return True
    if undecided_unit:
        raise PrecisionExhausted("unit test undecidable at working precision")
    return False


def min_probe_valuation(g: GammaCoeffs, i: int | None = None) -> Valuation:
    """Minimum valuation of gamma over the probe wedges kappa^{i+j} ^ kappa^{i+j-1}.

    Independent route to the Hhat_i criterion: membership holds iff this
    equals exactly 2i+1.
    """
    i = g.i if i is None else i
    ctx = g.ctx
    vals = [gamma_eval(g, ctx.kappa_power(i + j), ctx.kappa_power(i + j - 1)).valuation()
            for j in range(1, ctx.l + 1)]
    return Valuation.minimum(vals)


def images_to_coeffs(ctx: PrimeContext, i: int, images, den_cap: int | None = None) -> GammaCoeffs:
    """Invert the probe-wedge system: find c with c V_i B = (images_j / kappa^{2i+1}).

    Exact Gaussian elimination over K with minimal-valuation pivoting.  The
    resulting gamma reproduces the given images on the probe wedges.
    """
    images = list(images)
    if len(images) != ctx.l:
        raise ValueError(f"expected {ctx.l} images, got {len(images)}")
    vd = vandermonde(ctx, i)
    n = ctx.l
    # rows j, columns a: M[j][a] = v_a u_a^{j-1}; augmented with rhs
    rows = [[CycFrac(vd.V_diag[a] * vd.B[a][j]) for a in range(n)] for j in range(n)]
    rhs = [CycFrac(img.div_kappa(2 * i + 1)) for img in images]
    perm = list(range(n))
    for col in range(n):
        pivot_row = None
        pivot_val = None
        for r in range(col, n):
            v = rows[r][col].valuation()
            if v.exact and (pivot_val is None or v.value < pivot_val):
                pivot_row, pivot_val = r, v.value
        if pivot_row is None:
            raise PrecisionExhausted("system is singular at working precision")
        rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
        rhs[col], rhs[pivot_row] = rhs[pivot_row], rhs[col]
        inv = rows[col][col].inverse()
        for r in range(n):
            if r == col:
                continue
            factor = rows[r][col] * inv
            if factor.is_zero():
                continue
            for cc in range(col, n):
                rows[r][cc] = rows[r][cc] - factor * rows[col][cc]
            rhs[r] = rhs[r] - factor * rhs[col]
    coeffs = [rhs[col] * rows[col][col].inverse() for col in range(n)]
    return GammaCoeffs(ctx, i, coeffs, check=False, den_cap=den_cap)


def shift_check(g: GammaCoeffs, i: int | None = None) -> bool:
    """Membership at i + (p-1), which the multiplication-by-p bijection predicts."""
    i = g.i if i is None else i
    if not in_Hhat(g, i):
        raise NotInHhat(f"shift_check requires membership in Hhat_{i}")
    return in_Hhat(g, i + g.ctx.p - 1)
