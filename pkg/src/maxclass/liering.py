"""The Lie rings L_{i,m}(gamma): Jacobi ideal, brackets, lower central series.

L_{i,m}(gamma) is P^i/P^m with bracket gamma(a ^ b) + P^m.  The Jacobi ideal
J_i(gamma) = P^lambda caps the admissible truncation: the bracket satisfies
the Jacobi identity exactly when m <= lambda.  Elements are kept as canonical
coset representatives modulo P^m, lifted back to working precision so brackets
are computed exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .cyclotomic import (
    CycElt,
    MaxclassError,
    PrecisionExhausted,
    PrimeContext,
    Valuation,
)
from .homs import GammaCoeffs, NotInHhat, gamma_eval, in_Hhat


class NotNilpotent(MaxclassError):
    pass


def jacobiator(g: GammaCoeffs, x: CycElt, y: CycElt, z: CycElt) -> CycElt:
    """gamma(gamma(x^y)^z) + gamma(gamma(y^z)^x) + gamma(gamma(z^x)^y)."""
    return (gamma_eval(g, gamma_eval(g, x, y), z)
            + gamma_eval(g, gamma_eval(g, y, z), x)
            + gamma_eval(g, gamma_eval(g, z, x), y))


def jacobi_exponent(g: GammaCoeffs, i: int | None = None) -> Valuation:
    """Exponent lambda with J_i(gamma) = P^lambda, from the basis triples.

    The Jacobiator is alternating and trilinear over Z_p and kappa^{i+r},
    r = 0..p-2, is a module basis of P^i, so the ideal generated by all
    Jacobiators equals the one generated on the binom(p-1, 3) basis triples.
    """
    i = g.i if i is None else i
    ctx = g.ctx
    basis = [ctx.kappa_power(i + r) for r in range(ctx.d)]
    vals = [jacobiator(g, basis[r], basis[s], basis[t]).valuation()
            for r, s, t in combinations(range(ctx.d), 3)]
    return Valuation.minimum(vals)


def image_exponent(g: GammaCoeffs, w: int, i: int) -> Valuation:
    """Exponent of the ideal gamma(P^w ^ P^i), via basis pairs."""
    ctx = g.ctx
    left = [ctx.kappa_power(w + r) for r in range(ctx.d)]
    right = [ctx.kappa_power(i + s) for s in range(ctx.d)]
    vals = [gamma_eval(g, x, y).valuation() for x in left for y in right]
    return Valuation.minimum(vals)


@dataclass(frozen=True)
class LcsProfile:
    """kappa-valuation exponents w_1, w_2, ... of a lower central series."""

    exponents: tuple[int, ...]
    m: int

    @property
    def nilpotency_class(self) -> int:
        return sum(1 for w in self.exponents if w < self.m)

    def __repr__(self) -> str:
        return f"LcsProfile({list(self.exponents)}, m={self.m}, class={self.nilpotency_class})"


class LieRingSpec:
    """The Lie ring L_{i,m}(gamma), with lambda recomputed at construction."""

    def __init__(self, ctx: PrimeContext, i: int, m: int, gamma: GammaCoeffs,
                 lam: Valuation | None = None):
        if not i <= m:
            raise ValueError(f"need i <= m, got i={i}, m={m}")
        if ctx.M_work < m:
            raise PrecisionExhausted(f"M_work={ctx.M_work} cannot represent cosets mod P^{m}")
        if not in_Hhat(gamma, i):
            raise NotInHhat(f"gamma is not in Hhat_{i}")
        if lam is None:
            lam = jacobi_exponent(gamma, i)
        if m > lam.value:
            kind = "lambda" if lam.exact else "the lambda bound"
            raise ValueError(f"m={m} exceeds {kind} {lam.value}; bracket would violate Jacobi")
        self.ctx = ctx
        self.i = i
        self.m = m
        self.gamma = gamma
        self.lam = lam
        self._profile: LcsProfile | None = None

    def __repr__(self) -> str:
        return f"LieRingSpec(p={self.ctx.p}, i={self.i}, m={self.m}, lambda={self.lam!r})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LieRingSpec):
            return NotImplemented
        return (self.ctx == other.ctx and self.i == other.i and self.m == other.m
                and self.gamma is other.gamma)

    def __hash__(self) -> int:
        return hash((self.ctx, self.i, self.m, id(self.gamma)))

    # ---- elements ----

    def reduce(self, value: CycElt) -> CycElt:
        # canonical representative of value + P^m, lifted to working precision
        # (digits reduced mod P^m stay canonical at the larger moduli of M_work)
        if value.prec < self.m:
            raise PrecisionExhausted(f"representative known mod P^{value.prec} < P^{self.m}")
        return CycElt(self.ctx, self.ctx._canonical(value.digits, self.m), self.ctx.M_work)

    def element(self, value: CycElt) -> LieElt:
        red = self.reduce(value)
        if red.valuation().bound < self.i:
            raise ValueError(f"element has valuation below i={self.i}")
        return LieElt(self, red)

    def zero(self) -> LieElt:
        return self.element(self.ctx.zero())

    def basis(self) -> list[LieElt]:
        """Module generators kappa^{i+t}, t = 0..p-2, of P^i."""
        return [self.element(self.ctx.kappa_power(self.i + t)) for t in range(self.ctx.d)]

    def enumerate_elements(self, budget: int | None = None):
        """All p^{m-i} cosets, via kappa-adic digit vectors sum a_t kappa^{i+t}."""
        n = self.m - self.i
        if budget is not None and self.ctx.p ** n > budget:
            raise MaxclassError(f"{self.ctx.p}^{n} elements exceed budget {budget}")

        def rec(t: int, acc: CycElt):
            if t == n:
                yield self.element(acc)
                return
            for a in range(self.ctx.p):
                term = acc if a == 0 else acc + self.ctx.kappa_power(self.i + t) * a
                yield from rec(t + 1, term)

        yield from rec(0, self.ctx.zero())

    # ---- structure ----

    def lcs_profile(self) -> LcsProfile:
        if self._profile is None:
            self._profile = lcs_profile(self)
        return self._profile

    @property
    def nilpotency_class(self) -> int:
        return self.lcs_profile().nilpotency_class


class LieElt:
    """A coset of P^m inside P^i, in canonical reduced form."""

    __slots__ = ("spec", "value")

    def __init__(self, spec: LieRingSpec, value: CycElt):
        self.spec = spec
        self.value = value

    def _check(self, other: LieElt) -> None:
        if self.spec is not other.spec and self.spec != other.spec:
            raise MaxclassError("elements belong to different Lie rings")

    def __repr__(self) -> str:
        return f"LieElt({self.value!r} mod P^{self.spec.m})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LieElt):
            return NotImplemented
        return self.spec == other.spec and self.value.digits == other.value.digits

    def __hash__(self) -> int:
        return hash((self.spec.i, self.spec.m, self.value.digits))

    def __add__(self, other: LieElt) -> LieElt:
        self._check(other)
        return LieElt(self.spec, self.spec.reduce(self.value + other.value))

    def __sub__(self, other: LieElt) -> LieElt:
        self._check(other)
        return LieElt(self.spec, self.spec.reduce(self.value - other.value))

    def __neg__(self) -> LieElt:
        return LieElt(self.spec, self.spec.reduce(-self.value))

    def __mul__(self, scalar: int | Fraction) -> LieElt:
        return LieElt(self.spec, self.spec.reduce(self.value.scalar_mul(scalar)))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def valuation(self) -> Valuation:
        # valuation of the coset: exact below m, else AtLeast(m)
        v = self.value.valuation()
        if v.exact and v.value < self.spec.m:
            return v
        return Valuation.at_least(self.spec.m)

    def bracket(self, other: LieElt) -> LieElt:
        self._check(other)
        return LieElt(self.spec, self.spec.reduce(
            gamma_eval(self.spec.gamma, self.value, other.value)))


def lie_bracket(x: LieElt, y: LieElt) -> LieElt:
    return x.bracket(y)


def lcs_profile(spec: LieRingSpec) -> LcsProfile:
    """Exponents of the lower central series: w_1 = i, P^{w_{k+1}} = gamma(P^{w_k} ^ P^i)."""
    ws = [spec.i]
    while ws[-1] < spec.m:
        nxt = image_exponent(spec.gamma, ws[-1], spec.i)
        if not nxt.exact and nxt.value < spec.m:
            raise PrecisionExhausted(
                f"next lcs term known only >= {nxt.value}, below m={spec.m}")
        w = min(nxt.value, spec.m)
        if w <= ws[-1]:
            raise NotNilpotent(f"lower central series stalls at exponent {ws[-1]}")
        ws.append(w)
    return LcsProfile(tuple(ws), spec.m)


def check_class_bounds(spec: LieRingSpec) -> dict:
    """Verify the class bounds for the maximal ring L_i(gamma) = L_{i,lambda}.

    Checks class <= 3 + (2p-8)/(i-(p-2)), class <= p-1 for i > p-1, and
    class = 3 for i > 3p-10.  Violations are reported, not raised.
    """
    if not spec.lam.exact:
        raise ValueError("class bounds need an exact lambda")
    p, i = spec.ctx.p, spec.i
    if i <= p - 2:
        raise ValueError(f"class bounds require i > p-2 = {p - 2}")
    lam = spec.lam.value
    maximal = spec if spec.m == lam else LieRingSpec(spec.ctx, i, lam, spec.gamma, lam=spec.lam)
    profile = maximal.lcs_profile()
    cls = profile.nilpotency_class
    bound = Fraction(3) + Fraction(2 * p - 8, i - (p - 2))
    violations = []
    if cls > bound:
        violations.append(f"class {cls} exceeds 3 + (2p-8)/(i-(p-2)) = {bound}")
    if i > p - 1 and cls > p - 1:
        violations.append(f"class {cls} exceeds p-1 = {p - 1} despite i > p-1")
    if i > 3 * p - 10 and cls != 3:
        violations.append(f"class is {cls}, not 3, despite i > 3p-10 = {3 * p - 10}")
    return {
        "p": p,
        "i": i,
        "m": maximal.m,
        "lambda": lam,
        "lcs": list(profile.exponents),
        "class": cls,
        "bounds": {
            "general": float(bound),
            "class_at_most_p_minus_1": i > p - 1,
            "class_exactly_3": i > 3 * p - 10,
        },
        "violations": violations,
    }
