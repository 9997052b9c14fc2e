"""Ray class groups of k[sigma], the reciprocity map rho and Artin-Schreier generators."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

from .algebra import GF, FracSeries, GlobalParams, Poly, RingError, monic_enum, resultant
from .algebra.linalg import solve
from .algebra.ratfunc import RatFunc
from .eisenstein import as_rhs, as_rhs_min_terms
from .legendre import lambda_map, p_sigma, sigma_q


class RamifiedPlace(ValueError):
    pass


class ConventionMismatch(ArithmeticError):
    """The linear system for h(sigma) is inconsistent at the requested pole order."""


class UnreducibleRamification(ValueError):
    pass


# ---------------------------------------------------------------- ray classes


@dataclass(frozen=True)
class RayModulus:
    """q(sigma) * m_infinity over k; q_sigma is monic and nonconstant."""

    q_sigma: Poly

    def __post_init__(self):
        if self.q_sigma.degree < 1 or not self.q_sigma.is_monic():
            raise ValueError("modulus polynomial must be monic and nonconstant")

    @property
    def field(self) -> GF:
        return self.q_sigma.ring

    @property
    def degree(self) -> int:
        return self.q_sigma.degree


@dataclass(frozen=True)
class GClass:
    """A unit residue in (k[sigma]/q(sigma))^x."""

    modulus: RayModulus
    rep: Poly

    @classmethod
    def of(cls, modulus: RayModulus, f: Poly) -> "GClass":
        r = f % modulus.q_sigma
        if r.gcd(modulus.q_sigma).degree > 0:
            raise RamifiedPlace(f"{f.fmt()} is not coprime to the modulus")
        return cls(modulus, r)

    def __mul__(self, other: "GClass") -> "GClass":
        return GClass(self.modulus, (self.rep * other.rep) % self.modulus.q_sigma)

    def inverse(self) -> "GClass":
        return GClass(self.modulus, self.rep.invmod(self.modulus.q_sigma))

    def __pow__(self, n: int) -> "GClass":
        return GClass(self.modulus, self.rep.powmod(n, self.modulus.q_sigma))


CONVENTIONS = ("inverse", "direct")


def frobenius_class(h: Poly, modulus: RayModulus, convention: str = "direct") -> GClass:
    """Class attached to the place h: h^{-1} (default) or h itself."""
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}")
    cls = GClass.of(modulus, h)
    return cls.inverse() if convention == "inverse" else cls


# ---------------------------------------------------------------- rho, first layer


def power_residue_rho(params: GlobalParams, x, P: Poly) -> int:
    """prod over irreducible pi | P of x^{(Q_pi - 1)/(p - 1)} mod pi, read in F_p^x.

    ``x`` is a GClass or a polynomial coprime to P.
    """
    f = x.rep if isinstance(x, GClass) else x
    k = P.ring
    p = params.p
    out = 1
    for pi, _ in P.factor():
        Q = k.q**pi.degree
        r = f.powmod((Q - 1) // (p - 1), pi)
        if r.is_zero():
            raise RamifiedPlace(f"{f.fmt()} is not coprime to {pi.fmt()}")
        if r.degree != 0:
            raise RingError("power residue is not a constant; not an F_p-unit")
        c = r.coeffs[0]
        if c == 0:
            raise RamifiedPlace(f"{f.fmt()} is not coprime to {pi.fmt()}")
        if c >= p:
            raise RingError("power residue left the prime field")
        out = out * c % p
    return out


def radical(P: Poly) -> Poly:
    if P.gcd(P.derivative()).degree == 0:
        return P
    rad = Poly.const(P.ring, 1, P.var)
    for pi, _ in P.factor():
        rad = rad * pi
    return rad


def rho_resultant(P: Poly, f: Poly) -> int:
    """The same symbol as ``power_residue_rho`` via the norm of Res(rad P, f)."""
    r = resultant(radical(P), f)
    if r == 0:
        raise RamifiedPlace("not coprime to the modulus")
    return P.ring.absolute_norm(r)


@dataclass
class RhoMap:
    """rho from classes of k[sigma]/q(sigma) to (Z/p^m)^x."""

    params: GlobalParams
    modulus: RayModulus
    P: Poly
    convention: str = "direct"
    as_gen: "ASGenerator | None" = None
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def m(self) -> int:
        return self.params.m

    @property
    def target_order(self) -> int:
        return self.params.p**self.m

    def of_poly(self, f: Poly) -> int:
        """rho of the class of the polynomial f itself (no convention applied)."""
        if self.m == 1:
            if "rad" not in self._cache:
                self._cache["rad"] = radical(self.P)
            r = resultant(self._cache["rad"], f)
            if r == 0:
                raise RamifiedPlace(f"{f.fmt()} is not coprime to the modulus")
            return self.P.ring.absolute_norm(r)
        return rho_m2(self.params, f, self.P, self.as_gen)

    def frobenius(self, h: Poly) -> int:
        """rho(delta(t_h)) for the place h, honouring the class convention."""
        key = h.coeffs
        if key not in self._cache:
            u = self.of_poly(h)
            if self.convention == "inverse":
                u = pow(u, -1, self.target_order)
            self._cache[key] = u
        return self._cache[key]

    def __call__(self, x: GClass) -> int:
        return self.of_poly(x.rep)


def build_rho(params: GlobalParams, lam_map="literal", convention: str = "direct",
              as_gen: "ASGenerator | None" = None) -> RhoMap:
    P = p_sigma(params, lam_map)
    k = params.k
    Pk = P.map_coeffs(lambda c: k.embed(c, P.ring), k)
    if params.m == 1:
        modulus = RayModulus(Pk)
    elif params.m == 2:
        modulus = RayModulus(Pk**3)
        if as_gen is None:
            as_gen = minimal_as_generator(params, lam_map)
    else:
        raise NotImplementedError("only m = 1 and m = 2 are supported")
    return RhoMap(params, modulus, Pk, convention, as_gen)


# ---------------------------------------------------------------- Artin-Schreier


@dataclass(frozen=True)
class ASGenerator:
    """g = h / p^l with deg h <= l deg p; certificate counts matched q^{1/4}-terms."""

    l: int
    h: Poly
    p_t: Poly
    precision: int = 0
    remainder: RatFunc | None = None

    @property
    def g(self) -> RatFunc:
        return RatFunc(self.h, self.p_t**self.l)


def _pth_root_mod(a: Poly, modulus: Poly) -> Poly:
    """b with b^p = a in k[t]/modulus (modulus squarefree)."""
    k = a.ring
    degs = [pi.degree for pi, _ in modulus.factor()]
    M = k.n * lcm(*degs)  # Frobenius^M is the identity on k[t]/modulus
    return a.powmod(k.p ** (M - 1), modulus)


def _adic_expansion(f: RatFunc, p_t: Poly):
    """(poly_part, {j: a_j}) with f = poly_part + sum_j a_j / p_t^j, deg a_j < deg p_t."""
    num, den = f.num, f.den
    # den must divide a power of p_t
    L, acc = 0, Poly.const(num.ring, 1, num.var)
    while not (acc % den).is_zero():
        acc = acc * p_t
        L += 1
        if L > den.degree:
            raise UnreducibleRamification(f"denominator {den.fmt()} is not supported on {p_t.fmt()}")
    A = num * (acc // den)
    digits = []
    while not A.is_zero():
        A, r = A.divmod(p_t)
        digits.append(r)
    poly = Poly(num.ring, [], num.var)
    pole = {}
    for i, a in enumerate(digits):
        j = L - i
        if a.is_zero():
            continue
        if j > 0:
            pole[j] = a
        else:
            poly = poly + a * p_t ** (-j)
    return poly, pole


def as_reduce(f: RatFunc, p_t: Poly) -> tuple[ASGenerator, RatFunc]:
    """Write f = h / p_t^l + P(u/v) with deg h <= l deg p_t and l as small as the reduction allows."""
    k = f.ring
    p = k.p
    if p_t.gcd(p_t.derivative()).degree > 0:
        raise ValueError("p_t must be squarefree")
    uv = RatFunc(Poly(k, [], f.var))
    cur = f
    for _ in range(10_000):
        poly, pole = _adic_expansion(cur, p_t)
        shift = None
        if poly.degree >= 1:
            d = poly.degree
            if d % p:
                raise UnreducibleRamification(f"pole of order {d} at infinity is not a p-th power")
            b = k.pow(poly.lc, k.q // p)
            shift = RatFunc(Poly.monomial(k, d // p, 1, f.var).scale(b))
        elif pole:
            j = max(pole)
            if j % p == 0:
                b = _pth_root_mod(pole[j], p_t)
                shift = RatFunc(b, p_t ** (j // p))
        if shift is None:
            break
        uv = uv + shift
        cur = cur - shift.artin_schreier()
    else:
        raise RuntimeError("Artin-Schreier reduction did not terminate")
    poly, pole = _adic_expansion(cur, p_t)
    l = max(pole) if pole else 1
    h = cur * RatFunc(p_t**l)
    if h.den.degree != 0:
        raise UnreducibleRamification("remainder has poles away from p_t")
    h = h.num.scale(k.inv(h.den.lc))
    if h.degree > l * p_t.degree:
        raise UnreducibleRamification("remainder has a pole at infinity")
    return ASGenerator(l, h, p_t, 0, uv), uv


def _h_system(params: GlobalParams, lam_map, l: int, extra: int = 40):
    P = p_sigma(params, lam_map)
    D = P.degree
    n_unknowns = l * D + 1
    T = 4 * n_unknowns + extra
    s = sigma_q(T, lam_map, p=params.p)
    R = s.ring
    rhs = as_rhs(params, max(T // 4 + 2, as_rhs_min_terms(params.p)))
    rhs = rhs.map(lambda c: c, R).rescale(4).truncate(T)
    PR = P.map_coeffs(lambda c: R.embed(c, P.ring), R)
    target = (rhs * s.eval_poly(PR) ** l).truncate(T)
    powers = [FracSeries.const(R, 1, 4, T)]
    for _ in range(n_unknowns - 1):
        powers.append((powers[-1] * s).truncate(T))
    A = [[pw.coeff(e) for pw in powers] for e in range(T)]
    b = [target.coeff(e) for e in range(T)]
    return P, R, A, b, T, n_unknowns


def solve_h_sigma(params: GlobalParams, lam_map="literal", l: int = 3, extra: int = 40) -> ASGenerator:
    """The h with deg h <= l deg p(sigma) and rhs = h(sigma)/p(sigma)^l up to the certificate.

    The system is set up on 4 (l deg p + 1) + extra coefficients of q^{1/4};
    an inconsistent system raises ConventionMismatch.
    """
    lambda_map(lam_map)
    P, R, A, b, T, n = _h_system(params, lam_map, l, extra)
    x, rank, nullity = solve(R, A, b)
    if x is None:
        raise ConventionMismatch(
            f"no h of degree <= {l * P.degree} with pole order {l} matches the Eisenstein target "
            f"(rank {rank}, {n} unknowns, {T} q^(1/4)-terms)")
    if nullity:
        raise ConventionMismatch("solution is not unique; increase precision")
    F = P.ring
    try:
        coeffs = [R.restrict(c, F) for c in x]
    except RingError:
        raise ConventionMismatch("h does not descend to F_p[sigma]") from None
    h = Poly.raw(F, coeffs, "σ")
    return ASGenerator(l, h, P, T - n, None)


def minimal_as_generator(params: GlobalParams, lam_map="literal", max_l: int = 12, extra: int = 40) -> ASGenerator:
    """Smallest pole order l for which the congruence has a polynomial solution."""
    for l in range(1, max_l + 1):
        try:
            return solve_h_sigma(params, lam_map, l, extra)
        except ConventionMismatch:
            continue
    raise ConventionMismatch(f"no solution with pole order <= {max_l}")


# ---------------------------------------------------------------- rho, second layer


def teichmuller(a: int, p: int, m: int = 2) -> int:
    """The (p-1)-th root of unity in Z/p^m lifting a."""
    return pow(a, p ** (m - 1), p**m)


def as_symbol(gen: ASGenerator, f: Poly) -> int:
    """Z/p-valued Artin-Schreier symbol of the polynomial f for psi^p - psi = g.

    Additive over the irreducible factors of f: each place contributes
    the absolute trace of g at one of its roots.
    """
    k = f.ring
    p = k.p
    g = gen.g
    total = 0
    for pi, e in f.factor():
        if pi.degree == 0:
            continue
        E = GF(p, k.n * pi.degree)
        roots = pi.map_coeffs(lambda c: E.embed(c, k), E).roots(E)
        alpha = roots[0]
        num = g.num.map_coeffs(lambda c: E.embed(c, g.ring), E)(alpha)
        den = g.den.map_coeffs(lambda c: E.embed(c, g.ring), E)(alpha)
        if den == 0:
            raise RamifiedPlace(f"{pi.fmt()} meets the conductor")
        total += e * E.trace(E.mul(num, E.inv(den)))
    return total % p


def rho_m2(params: GlobalParams, x, P: Poly, gen: ASGenerator) -> int:
    """omega(rho_1(x)) * (1 + p * AS(x)) in (Z/p^2)^x."""
    f = x.rep if isinstance(x, GClass) else x
    p = params.p
    k = f.ring
    Pk = P if P.ring is k else P.map_coeffs(lambda c: k.embed(c, P.ring), k)
    a = rho_resultant(Pk, f)
    gk = gen
    if gen.h.ring is not k:
        gk = ASGenerator(gen.l, gen.h.map_coeffs(lambda c: k.embed(c, gen.h.ring), k),
                         Pk, gen.precision)
    b = as_symbol(gk, f)
    return teichmuller(a, p) * (1 + p * b) % (p * p)


def kummer_frobenius(params: GlobalParams, P: Poly, h: Poly) -> int:
    """The scalar by which Frobenius at the place h moves a root y of y^N = P.

    Frob(y) = y^{Q_h} = P^{(Q_h - 1)/N} y mod h, with N = p - 1.
    """
    if not h.is_irreducible():
        raise ValueError("Frobenius is attached to irreducible h")
    k = h.ring
    Pk = P if P.ring is k else P.map_coeffs(lambda c: k.embed(c, P.ring), k)
    Q = k.q**h.degree
    r = Pk.powmod((Q - 1) // params.N, h)
    if r.is_zero():
        raise RamifiedPlace(f"{h.fmt()} divides the modulus")
    if r.degree != 0 or r.coeffs[0] >= params.p:
        raise RingError("Kummer symbol is not in F_p")
    return r.coeffs[0]


def pinned_convention(params: GlobalParams, lam_map="literal", max_degree: int = 3) -> str:
    """The class convention under which rho(frobenius_class(h)) equals the Kummer symbol.

    The Galois element labelled u acts by y -> u y.
    """
    P = p_sigma(params, lam_map)
    if P.gcd(P.derivative()).degree > 0:
        raise ValueError("the Kummer oracle needs a squarefree p_sigma")
    votes = {}
    for conv in CONVENTIONS:
        rho = build_rho(params, lam_map, conv)
        ok = True
        for d in range(1, max_degree + 1):
            for h in monic_enum(rho.P.ring, d, rho.P.var):
                if not h.is_irreducible() or rho.P.gcd(h).degree > 0:
                    continue
                if rho.frobenius(h) != kummer_frobenius(params, P, h):
                    ok = False
                    break
            if not ok:
                break
        votes[conv] = ok
    agreeing = [c for c, ok in votes.items() if ok]
    if len(agreeing) != 1:
        raise ConventionMismatch(f"Kummer oracle agreement {votes}")
    return agreeing[0]
