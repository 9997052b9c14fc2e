"""Dual-number ideles, the d log residue and its kernel oracle, and cuspidal principal parts.

The cusps used for principal parts are the places of the Kummer curve
y^N = P(sigma) above sigma = infinity.  When gcd(N, deg P) = N they split
completely: place P_z (z in mu_N(k)) is where y / sigma^{D/N} -> z, with
local parameter t = 1/sigma.  The Galois element labelled u acts by
y -> u y and so carries P_1 to P_u.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import GF, FracSeries, GlobalParams, Poly, Ring
from .algebra.linalg import rank
from .curve_oracle import holo_diff_basis
from .hecke import AnnihilatorOp
from .legendre import p_sigma

RESIDUE_SIGN = -1  # dlog_residue = RESIDUE_SIGN * kernel_oracle


class PrecisionError(ValueError):
    pass


# ---------------------------------------------------------------- residues


def _series_div(ring: Ring, num, den, n: int):
    """First n coefficients of num/den (den[0] a unit)."""
    inv0 = ring.inv(den[0])
    out = []
    for i in range(n):
        c = num[i] if i < len(num) else ring.zero
        for j in range(1, min(i, len(den) - 1) + 1):
            c = ring.sub(c, ring.mul(den[j], out[i - j]))
        out.append(ring.mul(c, inv0))
    return out


def dlog_residue(H: FracSeries, r: int):
    """Coefficient of t^{-1} in t^{-r} H'/H (H a Laurent series in t)."""
    if H.den != 1:
        raise ValueError("H must be a series in an integral power of t")
    if H.is_zero():
        raise ValueError("d log of zero")
    R = H.ring
    v = H.val
    if r == 0:
        return R.coerce(v)
    need = r  # unit coefficients u_0 .. u_r
    have = H.prec - v
    if have < need + 1:
        raise PrecisionError(f"need H to relative precision {need + 1}, have {have}")
    u = list(H.coeffs[: need + 1]) + [R.zero] * (need + 1 - len(H.coeffs))
    du = [R.mul(R.coerce(i), u[i]) for i in range(1, need + 1)]  # u' coefficients
    w = _series_div(R, du, u, r)
    return w[r - 1]


def kernel_oracle(u: Poly, r: int):
    """sum_i alpha_i^{-r} over the roots of u, by Newton's identities on the reversal."""
    R = u.ring
    if u.is_zero() or R.is_zero(u.coeffs[0]):
        raise ValueError("kernel oracle needs a unit constant term")
    n = u.degree
    inv0 = R.inv(u.coeffs[0])
    # roots of rev(u) are 1/alpha_i; elementary symmetric e_k = (-1)^k u_k / u_0
    e = [R.one] + [R.mul(R.coerce((-1) ** k), R.mul(u[k], inv0)) for k in range(1, n + 1)]
    s = []
    for k in range(1, r + 1):
        acc = R.mul(R.coerce((-1) ** (k - 1) * k), e[k]) if k <= n else R.zero
        for i in range(1, k):
            if i <= n:
                acc = R.add(acc, R.mul(R.coerce((-1) ** (i - 1)), R.mul(e[i], s[k - i - 1])))
        s.append(acc)
    return s[r - 1]


def taylor_shift(f: Poly, b, ring: Ring | None = None) -> list:
    """Coefficients of f(b + s) in s (coefficients of f embedded into ``ring``)."""
    R = ring or f.ring
    cs = [c if R is f.ring else R.embed(c, f.ring) for c in f.coeffs]
    out = list(cs)
    n = len(out)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            out[j] = R.add(out[j], R.mul(b, out[j + 1]))
    return out


class ResidueField(Ring):
    """k[t]/(pi) for an irreducible pi, elements are polynomials reduced mod pi.

    Plain polynomial arithmetic, so closed points of any degree are usable
    without building a splitting field.
    """

    def __init__(self, pi: Poly):
        self.pi, self.k = pi, pi.ring
        self.zero = Poly(self.k, [])
        self.one = Poly.const(self.k, self.k.one)
        self.gen = Poly.monomial(self.k, 1) % pi

    def coerce(self, x):
        return Poly.const(self.k, self.k.coerce(x))

    def embed(self, c, sub):
        return Poly.raw(self.k, [c])

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return (a * b) % self.pi

    def inv(self, a):
        return a.invmod(self.pi)

    def trace(self, a):
        """Tr_{k[t]/pi / k}: trace of multiplication by a on the basis 1, t, ..., t^{d-1}."""
        k, acc, x = self.k, self.k.zero, a % self.pi
        for i in range(self.pi.degree):
            acc = k.add(acc, x[i])
            x = (x * self.gen) % self.pi
        return acc


def local_residue(num: Poly, den: Poly, point, ring: Ring):
    """Res_{t = point} (num/den) dt for a point with coordinates in ``ring``."""
    R = ring
    N = taylor_shift(num, point, R)
    D = taylor_shift(den, point, R)
    v = 0
    while v < len(D) and R.is_zero(D[v]):
        v += 1
    D = D[v:]
    # num/den = s^{-v} N/D ; residue is coefficient s^{v-1} of N/D
    if v == 0:
        return R.zero
    return _series_div(R, N, D, v)[v - 1]


def place_residue(num: Poly, den: Poly, pi: Poly):
    """Residue of (num/den) dt at the closed point pi, traced down to the base field."""
    K = ResidueField(pi)
    return K.trace(local_residue(num, den, K.gen, K))


def residue_at_infinity(num: Poly, den: Poly):
    R = num.ring
    n, d = num.degree, den.degree
    idx = n + 1 - d
    if idx < 0:
        return R.zero
    revN = list(reversed(num.coeffs))
    revD = list(reversed(den.coeffs))
    return R.neg(_series_div(R, revN, revD, idx + 1)[idx])


def residue_sum(num: Poly, den: Poly):
    """Sum of the residues of (num/den) dt over all closed points of P^1 (zero by the residue theorem)."""
    k = num.ring
    total = residue_at_infinity(num, den)
    for pi, _ in den.factor():
        total = k.add(total, place_residue(num, den, pi))
    return total


def dlog_form(H_num: Poly, H_den: Poly, r: int) -> tuple[Poly, Poly]:
    """t^{-r} d log(H_num/H_den) as num/den dt."""
    k = H_num.ring
    num = H_num.derivative() * H_den - H_num * H_den.derivative()
    den = H_num * H_den * Poly.monomial(k, r, var=H_num.var)
    g = num.gcd(den)
    return num // g, den // g


# ---------------------------------------------------------------- dual ideles


def _one(ring, prec=1 << 30):
    return FracSeries.const(ring, 1, 1, prec)


def _zero(ring, prec=1 << 30):
    return FracSeries(ring, [], 0, 1, prec)


@dataclass
class DualIdele:
    """place -> (re, eps) Laurent series over k, meaning re + eps * epsilon; 1 elsewhere."""

    ring: GF
    entries: dict = field(default_factory=dict)

    def entry(self, place):
        return self.entries.get(place, (_one(self.ring), _zero(self.ring)))

    def __post_init__(self):
        for place, (re, _) in self.entries.items():
            if re.is_zero():
                raise ValueError(f"real part at {place} is not invertible")

    def __mul__(self, other: "DualIdele") -> "DualIdele":
        out = {}
        for place in set(self.entries) | set(other.entries):
            a, b = self.entry(place)
            c, d = other.entry(place)
            out[place] = (a * c, a * d + b * c)
        return DualIdele(self.ring, out)

    @classmethod
    def tangent(cls, ring: GF, tails: dict) -> "DualIdele":
        """1 + epsilon * tail at each place."""
        return cls(ring, {pl: (_one(ring), s) for pl, s in tails.items()})


def frob_series(s: FracSeries, q: int) -> FracSeries:
    """s^q in characteristic p: exponents times q, coefficients to the q-th power."""
    R = s.ring
    terms = {e * q: R.pow(c, q) for e, c in s.terms()}
    prec = s.prec if s.prec >= (1 << 30) else s.prec * q
    if not terms:
        return FracSeries(R, [], 0, s.den, prec)
    lo, hi = min(terms), max(terms)
    cs = [R.zero] * (hi - lo + 1)
    for e, c in terms.items():
        cs[e - lo] = c
    return FracSeries.raw(R, cs, lo, s.den, prec)


def idele_frobenius(D: DualIdele, direction: str, q: int) -> DualIdele:
    """forward: mu0 + mu1 eps^q = mu0; transpose: mu0^q + mu1^q eps."""
    if q < 2:
        raise ValueError("q must be at least 2")
    out = {}
    for place, (re, eps) in D.entries.items():
        if direction == "forward":
            out[place] = (re, _zero(D.ring))
        elif direction == "transpose":
            out[place] = (frob_series(re, q), frob_series(eps, q))
        else:
            raise ValueError("direction is 'forward' or 'transpose'")
    return DualIdele(D.ring, out)


@dataclass
class TangentClass:
    """place -> {negative exponent: coefficient}."""

    ring: GF
    tails: dict = field(default_factory=dict)

    def __add__(self, other: "TangentClass") -> "TangentClass":
        R = self.ring
        out = {pl: dict(t) for pl, t in self.tails.items()}
        for pl, t in other.tails.items():
            cur = out.setdefault(pl, {})
            for e, c in t.items():
                cur[e] = R.add(cur.get(e, R.zero), c)
        return TangentClass(R, _clean(R, out))

    def __eq__(self, other):
        return isinstance(other, TangentClass) and self.tails == other.tails


def _clean(R, tails):
    out = {}
    for pl, t in tails.items():
        t = {e: c for e, c in t.items() if not R.is_zero(c)}
        if t:
            out[pl] = t
    return out


def tangent_class(D: DualIdele) -> TangentClass:
    R = D.ring
    tails = {}
    for place, (re, eps) in D.entries.items():
        if re.terms() != [(0, R.one)]:
            raise ValueError(f"real part at {place} is not 1")
        tails[place] = {e: c for e, c in eps.terms() if e < 0}
    return TangentClass(R, _clean(R, tails))


# ---------------------------------------------------------------- principal-part descriptors


@dataclass
class PrincipalPartDescriptor:
    """Terms (twist w, exponent e, multiplicity): the tail qbar^{-e} at the cusp of twist w."""

    p: int
    m: int
    terms: list
    parameter: str = "qbar"

    def tangent(self, ring: GF) -> TangentClass:
        tails = {}
        for w, e, mult in self.terms:
            t = tails.setdefault(w, {})
            t[-e] = ring.add(t.get(-e, ring.zero), ring.coerce(mult))
        return TangentClass(ring, _clean(ring, tails))

    def lines(self):
        return [f"twist {w}  {self.parameter}^-{e}  x{mult}" for w, e, mult in self.terms]


def principal_descriptor(params: GlobalParams, op: AnnihilatorOp) -> PrincipalPartDescriptor:
    mod = params.p**params.m
    merged = {}
    for (u, i), mult in op.sorted_terms():
        key = (pow(u, -1, mod), params.m * params.p ** (i * params.delta))
        merged[key] = merged.get(key, 0) + mult
    terms = sorted(((w, e, c) for (w, e), c in merged.items()), key=lambda x: (x[1], x[0]))
    return PrincipalPartDescriptor(params.p, params.m, terms)


# ---------------------------------------------------------------- expansions at the split cusps


def _padic_digits(alpha: Fraction, p: int, K: int) -> list[int]:
    A = alpha.numerator * pow(alpha.denominator, -1, p**K) % p**K
    out = []
    for _ in range(K):
        out.append(A % p)
        A //= p
    return out


def unit_power_series(Q: list[int], alpha: Fraction, p: int, L: int) -> np.ndarray:
    """Q(t)^alpha mod t^L over F_p, Q(0) = 1, alpha p-integral.

    Q^alpha = prod_j Q(t^{p^j})^{A_j} mod t^{p^K} where A_j are the p-adic
    digits of alpha (Frobenius is Q(t)^p = Q(t^p) over F_p).
    """
    if Q[0] % p != 1:
        raise ValueError("unit series must have constant term 1")
    K = 1
    while p**K < L:
        K += 1
    acc = np.zeros(L, dtype=np.int64)
    acc[0] = 1
    Qa = np.array(Q, dtype=np.int64) % p
    for j, Aj in enumerate(_padic_digits(Fraction(alpha), p, K)):
        if not Aj:
            continue
        f = np.ones(1, dtype=np.int64)
        for _ in range(Aj):
            f = np.convolve(f, Qa) % p
        step = p**j
        new = np.zeros(L, dtype=np.int64)
        for idx in np.nonzero(f)[0]:
            shift = int(idx) * step
            if shift >= L:
                break
            new[shift:] += acc[: L - shift] * f[idx]
        acc = new % p
    return acc


def _mul_trunc(a: np.ndarray, b: np.ndarray, L: int, p: int) -> np.ndarray:
    """(a * b) mod t^L over F_p via FFT (exact for the sizes used)."""
    n = 1
    while n < len(a) + len(b):
        n *= 2
    fa = np.fft.rfft(a.astype(np.float64), n)
    fb = np.fft.rfft(b.astype(np.float64), n)
    c = np.rint(np.fft.irfft(fa * fb, n)[:L]).astype(np.int64) % p
    if len(c) < L:
        c = np.concatenate([c, np.zeros(L - len(c), dtype=np.int64)])
    return c


@dataclass
class CuspData:
    """The Kummer model near infinity: y = z sigma^s Q(1/sigma)^{1/N}, s = D/N."""

    params: GlobalParams
    P: Poly
    N: int
    s: int
    Q: list
    twists: list  # z values (F_p codes) labelling the places above infinity

    @property
    def p(self):
        return self.params.p


def split_cusps(params: GlobalParams, lam_map="literal", P: Poly | None = None) -> CuspData:
    if params.delta != 1 or params.m != 1:
        raise NotImplementedError("cusp expansions are implemented for m = 1 and k = F_p")
    P = P or p_sigma(params, lam_map)
    N, D = params.N, P.degree
    if D % N or P.lc != 1:
        raise ValueError("the cusps above infinity do not split completely")
    Q = list(reversed(P.coeffs))
    twists = [z for z in range(1, params.p) if pow(z, N, params.p) == 1]
    if len(twists) != N:
        raise ValueError("mu_N is not in the residue field")
    return CuspData(params, P, N, D // N, Q, twists)


class ResidueTable:
    """Res_{P_z}(t^{-e} omega_{a,b}) = -z^{-b} [t^{e+a+1-sb}] Q^{-b/N}."""

    def __init__(self, cusps: CuspData, basis, max_e: int):
        self.cusps = cusps
        self.basis = list(basis)
        p = cusps.p
        self.max_e = max_e
        amax = max((a for a, _ in self.basis), default=0)
        self.L = max_e + amax + 2
        self.expansions = {}
        for b in sorted({b for _, b in self.basis}):
            self.expansions[b] = unit_power_series(cusps.Q, Fraction(-b, cusps.N), p, self.L)

    def residue(self, j: int, z: int, e: int) -> int:
        """Residue of t^{-e} omega_j at P_z (any integer e; e <= 0 pairs to 0)."""
        a, b = self.basis[j]
        p, s = self.cusps.p, self.cusps.s
        idx = e + a + 1 - s * b
        if idx < 0:
            return 0
        if idx >= self.L:
            raise PrecisionError(f"expansion known to t^{self.L - 1}, need t^{idx}")
        c = int(self.expansions[b][idx])
        return (-pow(z, -b, p) * c) % p


def defect_vector(tc: TangentClass, table: ResidueTable) -> list[int]:
    """(sum over tails of Res(tail * omega_j))_j; tails may include nonnegative exponents."""
    p = table.cusps.p
    out = []
    for j in range(len(table.basis)):
        acc = 0
        for z, tail in tc.tails.items():
            for e_neg, c in tail.items():
                if -e_neg > 0:
                    acc += c * table.residue(j, z % p, -e_neg)
        out.append(acc % p)
    return out


def descriptor_defect(desc: PrincipalPartDescriptor, table: ResidueTable) -> list[int]:
    p = table.cusps.p
    out = [0] * len(table.basis)
    for w, e, mult in desc.terms:
        for j in range(len(table.basis)):
            out[j] = (out[j] + mult * table.residue(j, w % p, e)) % p
    return out


def pairing_matrix(table: ResidueTable, probes: list) -> list[list[int]]:
    """Rows: basis differentials; columns: defect vectors of the probe tangent classes."""
    cols = [defect_vector(tc, table) for tc in probes]
    return [[col[j] for col in cols] for j in range(len(table.basis))]


def random_probes(cusps: CuspData, count: int, max_e: int, rng: random.Random) -> list:
    """Generic principal parts: random coefficients on t^{-1}..t^{-max_e} at every cusp."""
    F = GF(cusps.p)
    return [TangentClass(F, _clean(F, {z: {-e: rng.randrange(cusps.p) for e in range(1, max_e + 1)}
                                       for z in cusps.twists})) for _ in range(count)]


def nonsingular_probes(table: ResidueTable, cusps: CuspData, max_e: int, rng: random.Random,
                       tries: int = 50) -> tuple[list, list]:
    """Draw g generic principal parts until their pairing matrix with the basis is invertible."""
    g = len(table.basis)
    F = GF(cusps.p)
    for _ in range(tries):
        probes = random_probes(cusps, g, max_e, rng)
        M = pairing_matrix(table, probes)
        if rank(F, M, g) == g:
            return probes, M
    raise ArithmeticError(f"no nonsingular pairing found in {tries} draws")


@dataclass
class MLSolution:
    """f = sum_b A_b(sigma) y^b in k[sigma, y] / (y^N - P); A_b as coefficient lists."""

    components: dict  # b -> list of F_p ints, index = power of sigma
    spanning_set: str = "sigma^n y^b, 0 <= b < N"

    def nonzero_terms(self) -> int:
        return sum(int(np.count_nonzero(c)) for c in self.components.values())

    def degrees(self) -> dict:
        return {b: (int(np.nonzero(c)[0].max()) if np.count_nonzero(c) else -1) for b, c in self.components.items()}


def _target_components(tc: TangentClass, cusps: CuspData) -> dict:
    """pp_b = N^{-1} sum_z z^{-b} pp(z), as {b: {e: coeff}} with pole orders e > 0."""
    p, N = cusps.p, cusps.N
    invN = pow(N, -1, p)
    out = {}
    for b in range(N):
        comp = {}
        for z, tail in tc.tails.items():
            zb = pow(z, -b, p)
            for e_neg, c in tail.items():
                if e_neg < 0:
                    comp[-e_neg] = (comp.get(-e_neg, 0) + invN * zb * c) % p
        out[b] = {e: c for e, c in comp.items() if c}
    return out


def mittag_leffler(tc: TangentClass, cusps: CuspData) -> MLSolution:
    """Solve for f regular on the affine curve with principal part tc above infinity.

    A_b(1/t) is the polar-or-constant part of pp_b t^{sb} Q^{-b/N}; the
    coefficients of t^1..t^{sb-1} of that product must vanish, and they are
    the pairings with the regular differentials.
    """
    p, N, s = cusps.p, cusps.N, cusps.s
    comps = _target_components(tc, cusps)
    max_e = max((e for c in comps.values() for e in c), default=0)
    out = {}
    for b, comp in comps.items():
        A = np.zeros(max_e + 1, dtype=np.int64)
        if not comp:
            out[b] = A
            continue
        if b == 0:
            for e, c in comp.items():
                A[e] = (A[e] + c) % p
            out[b] = A
            continue
        L = max_e + s * b + 1
        ser = unit_power_series(cusps.Q, Fraction(-b, N), p, L)
        # G = sum_e c t^{sb - e} ser ; coefficient of t^{-n} is c * ser[e - sb - n]
        obstruction = np.zeros(s * b, dtype=np.int64)
        for e, c in comp.items():
            for n in range(0, e - s * b + 1):
                A[n] = (A[n] + c * ser[e - s * b - n]) % p
            for jdx in range(1, s * b):
                idx = e - s * b + jdx
                if 0 <= idx < L:
                    obstruction[jdx] = (obstruction[jdx] + c * ser[idx]) % p
        if np.any(obstruction):
            raise ArithmeticError(f"component b={b} is obstructed: {obstruction[1:].tolist()}")
        out[b] = A
    return MLSolution(out)


def principal_parts(sol: MLSolution, cusps: CuspData) -> TangentClass:
    """Expand f at every place above infinity and keep the polar terms."""
    p, N, s = cusps.p, cusps.N, cusps.s
    F = GF(p)
    tails = {}
    polar = {}
    for b, A in sol.components.items():
        deg = int(np.nonzero(A)[0].max()) if np.count_nonzero(A) else -1
        if deg < 0:
            continue
        # A_b(1/t) t^{-sb} Q^{b/N}: polar part needs the series to t^{deg + sb}
        L = deg + s * b + 1
        ser = unit_power_series(cusps.Q, Fraction(b, N), p, L)
        # t^{-n} * t^{-sb} * t^{m}: exponent m - n - sb; write A reversed so index = deg - n
        rev = A[: deg + 1][::-1].copy()
        prod = _mul_trunc(rev, ser, L, p)  # index k <-> exponent k - deg - sb
        polar[b] = {k - deg - s * b: int(prod[k]) for k in range(L) if prod[k] and k - deg - s * b < 0}
    for z in cusps.twists:
        tail = {}
        for b, terms in polar.items():
            zb = pow(z, b, p)
            for e, c in terms.items():
                tail[e] = (tail.get(e, 0) + zb * c) % p
        tails[z] = {e: c for e, c in tail.items() if c}
    return TangentClass(F, _clean(F, tails))


@dataclass
class DualityReport:
    defect: list
    basis: list
    solution: MLSolution | None
    verified: bool | None
    max_exponent: int

    @property
    def zero(self) -> bool:
        return not any(self.defect)


def duality_check_and_solve(desc: PrincipalPartDescriptor, params: GlobalParams, lam_map="literal",
                            solve: bool = True, table: ResidueTable | None = None) -> DualityReport:
    cusps = split_cusps(params, lam_map)
    basis = holo_diff_basis(params, lam_map)
    max_e = max(e for _, e, _ in desc.terms)
    table = table or ResidueTable(cusps, basis, max_e)
    defect = descriptor_defect(desc, table)
    sol, verified = None, None
    if solve and not any(defect):
        tc = desc.tangent(GF(params.p))
        sol = mittag_leffler(tc, cusps)
        verified = principal_parts(sol, cusps) == tc
    return DualityReport(defect, basis, sol, verified, max_e)


def corrupt(desc: PrincipalPartDescriptor, rng: random.Random) -> PrincipalPartDescriptor:
    """Move one unit of multiplicity of a random term to a different twist."""
    terms = [list(t) for t in desc.terms]
    k = rng.randrange(len(terms))
    w, e, mult = terms[k]
    units = [u for u in range(1, desc.p**desc.m) if u % desc.p]
    new_w = rng.choice([u for u in units if u != w])
    terms[k][2] -= 1
    terms.append([new_w, e, 1])
    merged = {}
    for w, e, c in terms:
        merged[(w, e)] = merged.get((w, e), 0) + c
    return PrincipalPartDescriptor(desc.p, desc.m, sorted(((w, e, c) for (w, e), c in merged.items() if c),
                                                          key=lambda x: (x[1], x[0])), desc.parameter)
