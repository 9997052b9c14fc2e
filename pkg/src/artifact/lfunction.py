"""Dirichlet L-functions of k[sigma], the group-ring norm and the zeta function of the Kummer cover."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd, lcm

import numpy as np
from sympy import primitive_root

from .algebra import GF, Cyclotomic, GlobalParams, Poly, monic_enum
from .algebra.rings import MAX_TABLE
from .classfield import RamifiedPlace, RhoMap, build_rho
from .curve_oracle import counts_from_zeta


class NonPolynomialL(ArithmeticError):
    """A nontrivial character sum failed to vanish past the modulus degree."""


class PlaceDegreeMismatch(ArithmeticError):
    pass


# ---------------------------------------------------------------- characters


@lru_cache(maxsize=None)
def unit_dlog(modulus: int) -> tuple[int, dict]:
    """(generator, {u: index}) for the cyclic group (Z/modulus)^x, modulus = p^m."""
    g = primitive_root(modulus)
    table, x = {}, 1
    order = sum(1 for u in range(1, modulus) if gcd(u, modulus) == 1)
    for e in range(order):
        table[x] = e
        x = x * g % modulus
    return g, table


@dataclass(frozen=True)
class DirichletChar:
    """chi_j(g^a) = zeta_n^{j a} on (Z/p^m)^x, pulled back to classes through rho."""

    rho: RhoMap
    j: int

    @property
    def n(self) -> int:
        return self.rho.params.unit_order

    @property
    def ring(self) -> Cyclotomic:
        return Cyclotomic(self.n)

    @property
    def modulus(self):
        return self.rho.modulus

    @property
    def is_trivial(self) -> bool:
        return self.j % self.n == 0

    @property
    def order(self) -> int:
        return self.n // gcd(self.j, self.n)

    def exponent(self, u: int) -> int:
        _, table = unit_dlog(self.rho.target_order)
        return self.j * table[u % self.rho.target_order] % self.n

    def __call__(self, u: int):
        return self.ring.zeta(self.exponent(u))

    def conductor_note(self) -> str:
        return "trivial" if self.is_trivial else f"order {self.order}, conductor dividing the modulus"


def characters(rho: RhoMap) -> list[DirichletChar]:
    return [DirichletChar(rho, j) for j in range(rho.params.unit_order)]


# ---------------------------------------------------------------- residue distributions


class MonicKernel:
    """Counts of monic f of each degree by the unit rho(frobenius_class(f)).

    For m = 1 the symbol is N_{k/F_p}(prod_beta f(beta)) over the roots beta of
    the modulus; all monic f of one degree are evaluated at once with numpy
    Horner steps in the splitting field.  Degrees >= deg q use the exact
    fact that f -> f mod q is q^{j - deg q}-to-one onto all residues.
    """

    def __init__(self, rho: RhoMap, direct_limit: int | None = None):
        self.rho = rho
        self.params = rho.params
        self.P = rho.modulus.q_sigma
        self.k = self.P.ring
        self.D = self.P.degree
        self.n = self.params.unit_order
        self.direct_limit = self.D + 1 if direct_limit is None else direct_limit
        self._cache: dict[int, np.ndarray] = {}
        self._setup_field()

    def _setup_field(self):
        self.E = None
        if self.params.m != 1:
            return
        fac = self.P.factor()
        if any(e > 1 for _, e in fac):
            return
        deg = self.k.n * lcm(*[pi.degree for pi, _ in fac])
        if self.params.p**deg > MAX_TABLE:
            return
        E = GF(self.params.p, deg)
        roots = []
        for pi, _ in fac:
            roots.extend(pi.map_coeffs(lambda c: E.embed(c, self.k), E).roots(E))
        if len(roots) != self.D:
            raise ArithmeticError("modulus does not split in the expected field")
        self.E = E
        self.roots = roots
        self.exp = np.array(E.exp[: E.q - 1], dtype=np.int64)
        self.log = np.array([0] + [E.log[a] for a in range(1, E.q)], dtype=np.int64)
        self.powers = E.p ** np.arange(E.n, dtype=np.int64)
        self.k_codes = np.array([E.embed(c, self.k) for c in self.k.elements()], dtype=np.int64)
        _, dl = unit_dlog(self.params.p)
        self.fp_index = np.full(self.params.p, -1, dtype=np.int64)
        for u, e in dl.items():
            self.fp_index[u] = e

    def _add(self, a, b):
        p, out = self.E.p, 0
        for pw in self.powers:
            out = out + (((a // pw) % p + (b // pw) % p) % p) * pw
        return out

    def _numpy_counts(self, j: int) -> np.ndarray:
        E, q = self.E, self.k.q
        total = np.zeros(q**j, dtype=np.int64)
        dead = np.zeros(q**j, dtype=bool)
        Q1 = E.q - 1
        for beta in self.roots:
            lb = E.log[beta]
            vals = np.ones(1, dtype=np.int64)
            for _ in range(j):
                nz = vals != 0
                prod = np.zeros_like(vals)
                prod[nz] = self.exp[(self.log[vals[nz]] + lb) % Q1]
                vals = self._add(prod[:, None], self.k_codes[None, :]).reshape(-1)
            dead |= vals == 0
            total = (total + self.log[vals]) % Q1
        # N_{k/F_p} then read the F_p element
        norm_exp = (self.k.q - 1) // (self.params.p - 1)
        codes = self.exp[(total[~dead] * norm_exp) % Q1]
        idx = self.fp_index[codes]
        if np.any(idx < 0):
            raise ArithmeticError("norm left the prime field")
        if self.rho.convention == "inverse":
            idx = (-idx) % self.n
        return np.bincount(idx, minlength=self.n).astype(object)

    def _python_counts(self, j: int) -> np.ndarray:
        _, dl = unit_dlog(self.rho.target_order)
        out = np.zeros(self.n, dtype=object)
        for f in monic_enum(self.k, j, self.P.var):
            try:
                u = self.rho.frobenius(f)
            except RamifiedPlace:
                continue
            out[dl[u]] += 1
        return out

    def counts(self, j: int) -> np.ndarray:
        """Vector indexed by dlog(u): #{monic f, deg f = j, coprime, frobenius unit u}."""
        if j in self._cache:
            return self._cache[j]
        if j > self.direct_limit and j > self.D:
            res = self.counts(self.D) * (self.k.q ** (j - self.D))
        elif self.E is not None:
            res = self._numpy_counts(j) if j else self._python_counts(0)
        else:
            res = self._python_counts(j)
        self._cache[j] = res
        return res


# ---------------------------------------------------------------- L-polynomials


@dataclass
class LPoly:
    char: DirichletChar
    coeffs: list  # Cyclotomic tuples, coefficient of t^i
    stabilization: int | None
    closed_form: tuple | None = None  # (U coefficients, denominator) for trivial chi

    @property
    def ring(self) -> Cyclotomic:
        return self.char.ring

    @property
    def degree(self) -> int:
        d = len(self.coeffs) - 1
        while d > 0 and not any(self.coeffs[d]):
            d -= 1
        return d

    def trimmed(self) -> list:
        return self.coeffs[: self.degree + 1]

    def value_at_one(self):
        R = self.ring
        acc = R.zero
        for c in self.trimmed():
            acc = R.add(acc, c)
        return acc

    def completed(self) -> list:
        """Divide out (1 - t) while it divides (the contribution of infinity)."""
        R = self.ring
        cs = self.trimmed()
        while len(cs) > 1 and not any(_sum(R, cs)):
            # synthetic division by (1 - t): b_i = a_i + b_{i-1}
            out, acc = [], R.zero
            for c in cs[:-1]:
                acc = R.add(acc, c)
                out.append(acc)
            cs = out
        return cs

    def complex_coeffs(self, embedding: int = 1, completed: bool = True) -> np.ndarray:
        cs = self.completed() if completed else self.trimmed()
        return np.array([self.ring.to_complex(c, embedding) for c in cs])

    def inverse_roots(self, embedding: int = 1, completed: bool = True) -> np.ndarray:
        c = self.complex_coeffs(embedding, completed)
        if len(c) <= 1:
            return np.array([])
        return np.roots(c)  # roots of c_0 x^n + ... + c_n = x^n L(1/x)

    def fmt(self) -> str:
        R = self.ring
        parts = []
        for i, c in enumerate(self.trimmed()):
            if any(c):
                parts.append(f"({R.fmt(c)}) t^{i}" if i else f"({R.fmt(c)})")
        return " + ".join(parts) or "0"


def _sum(R, cs):
    acc = R.zero
    for c in cs:
        acc = R.add(acc, c)
    return acc


def char_sum(chi: DirichletChar, counts: np.ndarray):
    """sum_u counts[dlog u] * chi(u) as a cyclotomic number."""
    R = chi.ring
    acc = [0] * chi.n
    for e, c in enumerate(counts):
        if c:
            acc[chi.j * e % chi.n] += int(c)
    out = R.zero
    for e, c in enumerate(acc):
        if c:
            out = R.add(out, R.scale(Fraction(c), R.zeta(e)))
    return out


def trivial_closed_form(modulus_poly: Poly, q: int):
    """U(t) = prod_{pi | q(sigma)} (1 - t^{deg pi}) and the denominator 1 - q t."""
    U = [1]
    for pi, _ in modulus_poly.factor():
        U = poly_mul_int(U, [1] + [0] * (pi.degree - 1) + [-1])
    return U, [1, -q]


def dirichlet_L(chi: DirichletChar, maxdeg: int, kernel: MonicKernel | None = None) -> LPoly:
    kernel = kernel or MonicKernel(chi.rho)
    D = kernel.D
    if maxdeg < D + 2:
        raise ValueError(f"maxdeg must be at least deg q + 2 = {D + 2}")
    R = chi.ring
    coeffs = [char_sum(chi, kernel.counts(j)) for j in range(maxdeg + 1)]
    if chi.is_trivial:
        U, den = trivial_closed_form(kernel.P, kernel.k.q)
        series = series_div_int(U, den, maxdeg + 1)
        for j, c in enumerate(coeffs):
            if c != R.coerce(series[j]):
                raise NonPolynomialL(f"trivial character partial sum {j} disagrees with U(t)/(1 - q t)")
        return LPoly(chi, coeffs, None, (U, den))
    stab = None
    for j in range(D, maxdeg + 1):
        if any(coeffs[j]):
            raise NonPolynomialL(f"degree-{j} character sum does not vanish; check the conventions")
    stab = max([j for j in range(D) if any(coeffs[j])], default=0)
    return LPoly(chi, coeffs[:D], stab)


def all_L(rho: RhoMap, maxdeg: int | None = None) -> dict[int, LPoly]:
    kernel = MonicKernel(rho)
    maxdeg = kernel.D + 2 if maxdeg is None else maxdeg
    return {chi.j: dirichlet_L(chi, maxdeg, kernel) for chi in characters(rho)}


# ---------------------------------------------------------------- integer polynomial helpers


def poly_mul_int(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def series_div_int(num, den, n):
    """num/den as a power series to n terms (den[0] = +-1)."""
    out = []
    num = list(num) + [0] * n
    for i in range(n):
        c = num[i] - sum(den[j] * out[i - j] for j in range(1, min(i, len(den) - 1) + 1))
        if c % den[0]:
            raise ArithmeticError("non-integral series quotient")
        out.append(c // den[0])
    return out


def poly_divexact_int(a, b):
    """a / b for integer polynomials when b divides a exactly."""
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    db = len(b) - 1
    while b[db] == 0:
        db -= 1
    q = [0] * max(len(a) - db, 1)
    for i in range(len(a) - 1 - db, -1, -1):
        c = a[i + db]
        if c % b[db]:
            raise ArithmeticError("inexact polynomial division")
        c //= b[db]
        q[i] = c
        for j in range(db + 1):
            a[i + j] -= c * b[j]
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return q


# ---------------------------------------------------------------- group-ring norm


@dataclass(frozen=True)
class ToyGroup:
    """Z/n1 x ... x Z/nr, elements are tuples."""

    orders: tuple

    def elements(self):
        return list(itertools.product(*[range(n) for n in self.orders]))

    def add(self, a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    def neg(self, a):
        return tuple((-x) % n for x, n in zip(a, self.orders))

    @property
    def zero(self):
        return tuple(0 for _ in self.orders)

    @property
    def size(self):
        out = 1
        for n in self.orders:
            out *= n
        return out

    def subgroup(self, gens) -> frozenset:
        H = {self.zero}
        frontier = [self.zero]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.add(x, g)
                if y not in H:
                    H.add(y)
                    frontier.append(y)
        return frozenset(H)

    def exponent(self) -> int:
        return lcm(*self.orders) if self.orders else 1

    @classmethod
    def all_of_order(cls, n: int) -> list:
        """One group per isomorphism class, in invariant-factor form n1 | n2 | ..."""
        def chains(m, first):
            # tuples d1 | d2 | ... with product m and first | d1
            if m == 1:
                yield ()
                return
            for d in range(2, m + 1):
                if m % d == 0 and d % first == 0:
                    for rest in chains(m // d, d):
                        yield (d,) + rest

        return [cls(c) for c in chains(n, 1)] if n > 1 else [cls((1,))]


def _check_subgroup(G: ToyGroup, H) -> list:
    H = list(H)
    Hs = set(H)
    if G.zero not in Hs or any(G.add(a, G.neg(b)) not in Hs for a in H for b in H):
        raise ValueError("H is not a subgroup of G")
    return sorted(Hs)


def _berkowitz(M, mul, add, neg, zero, one):
    """Characteristic-polynomial determinant without division (any commutative ring)."""
    n = len(M)
    if n == 0:
        return one
    # C holds the char poly coefficients of the leading k x k block
    C = [one, neg(M[0][0])]
    for k in range(1, n):
        R = M[k][:k]  # row
        S = [M[i][k] for i in range(k)]  # column
        A = [row[:k] for row in M[:k]]
        a = M[k][k]
        # Toeplitz column: 1, -a, -R S, -R A S, ...
        col = [one, neg(a)]
        v = S
        for _ in range(k):
            rv = zero
            for x, y in zip(R, v):
                rv = add(rv, mul(x, y))
            col.append(neg(rv))
            v = [_dot(A[i], v, mul, add, zero) for i in range(k)]
        newC = []
        for i in range(k + 2):
            acc = zero
            for j in range(min(i, len(C) - 1) + 1):
                if i - j < len(col):
                    acc = add(acc, mul(col[i - j], C[j]))
            newC.append(acc)
        C = newC
    det = C[n]
    return det if n % 2 == 0 else neg(det)


def _bareiss(M) -> int:
    """Fraction-free elimination over Z (an integral domain, so exact division is safe)."""
    M = [list(r) for r in M]
    n, sign, prev = len(M), 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pk - M[i][k] * M[k][j]) // prev
        prev = pk
    return sign * M[n - 1][n - 1] if n else 1


def _dot(row, v, mul, add, zero):
    acc = zero
    for x, y in zip(row, v):
        acc = add(acc, mul(x, y))
    return acc


def groupring_norm(G: ToyGroup, U: dict, H) -> dict:
    """Norm_{Z[t][G]/Z[t][H]}(U) as {h: [t-coefficients]}.

    ``U`` maps (g, degree) -> integer.  The determinant of multiplication by U
    on the basis of coset representatives is computed at enough integer
    points t and interpolated.
    """
    if G.size > 64:
        raise ValueError("toy scale only: |G| <= 64")
    Hl = _check_subgroup(G, H)
    Hidx = {h: i for i, h in enumerate(Hl)}
    nh = len(Hl)
    reps, coset_of = [], {}
    for g in G.elements():
        if g in coset_of:
            continue
        ri = len(reps)
        reps.append(g)
        for h in Hl:
            coset_of[G.add(g, h)] = (ri, Hidx[h])
    n = len(reps)
    hmul = [[Hidx[G.add(a, b)] for b in Hl] for a in Hl]
    tdeg = max((d for (_, d) in U), default=0)
    npts = n * tdeg + 1

    def mul(x, y):
        out = [0] * nh
        for i, a in enumerate(x):
            if a:
                row = hmul[i]
                for j, b in enumerate(y):
                    if b:
                        out[row[j]] += a * b
        return out

    def add(x, y):
        return [a + b for a, b in zip(x, y)]

    def neg(x):
        return [-a for a in x]

    zero = [0] * nh
    one = [1] + [0] * (nh - 1)
    values = []
    for t0 in range(npts):
        M = [[list(zero) for _ in range(n)] for _ in range(n)]
        for (g, d), c in U.items():
            if not c:
                continue
            w = c * t0**d
            for col, tau in enumerate(reps):
                ri, hi = coset_of[G.add(g, tau)]
                M[ri][col][hi] += w
        if nh == 1:  # Z[H] = Z
            values.append([_bareiss([[x[0] for x in row] for row in M])])
        else:
            values.append(_berkowitz(M, mul, add, neg, zero, one))
    out = {}
    for hi, h in enumerate(Hl):
        coeffs = _interpolate([v[hi] for v in values])
        if any(coeffs):
            out[h] = coeffs
    return out


def _interpolate(ys):
    """Integer coefficients of the polynomial through (i, ys[i]), i = 0..n-1."""
    n = len(ys)
    diffs, row = [], list(ys)
    for _ in range(n):
        diffs.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    # sum_k diffs[k] * x(x-1)...(x-k+1) / k!, scaled by (n-1)!
    scale = factorial(n - 1)
    coeffs = [0] * n
    falling = [1]
    for k, dk in enumerate(diffs):
        w = dk * (scale // factorial(k))
        for i, c in enumerate(falling):
            coeffs[i] += w * c
        falling = [0] + falling
        for i in range(len(falling) - 1):
            falling[i] -= k * falling[i + 1]
    out = []
    for c in coeffs:
        if c % scale:
            raise ArithmeticError("determinant is not an integer polynomial")
        out.append(c // scale)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def augmentation(norm: dict) -> list:
    """The h = 1 specialization Z[t][H] -> Z[t]."""
    width = max((len(c) for c in norm.values()), default=1)
    out = [0] * width
    for c in norm.values():
        for i, x in enumerate(c):
            out[i] += x
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def character_product(G: ToyGroup, U: dict, H) -> list:
    """prod over characters of G trivial on H of chi(U), as an integer polynomial in t."""
    Hl = _check_subgroup(G, H)
    e = G.exponent()
    R = Cyclotomic(e)
    tdeg = max((d for (_, d) in U), default=0)
    prod = [R.one]
    for a in G.elements():
        def pairing(g):
            return sum(ai * gi * (e // ni) for ai, gi, ni in zip(a, g, G.orders)) % e

        if any(pairing(h) for h in Hl):
            continue
        val = [R.zero] * (tdeg + 1)
        for (g, d), c in U.items():
            if c:
                val[d] = R.add(val[d], R.scale(Fraction(c), R.zeta(pairing(g))))
        new = [R.zero] * (len(prod) + tdeg)
        for i, x in enumerate(prod):
            if any(x):
                for j, y in enumerate(val):
                    if any(y):
                        new[i + j] = R.add(new[i + j], R.mul(x, y))
        prod = new
    out = []
    for c in prod:
        if any(c[1:]) or c[0].denominator != 1:
            raise ArithmeticError("character product is not a rational integer polynomial")
        out.append(int(c[0]))
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


# ---------------------------------------------------------------- zeta assembly


@dataclass
class ZetaResult:
    numerator: list
    denominator: list
    L: dict = field(repr=False)
    ramified_places: list = field(default_factory=list)
    infinite_places: list = field(default_factory=list)
    genus: int = 0

    def counts(self, r: int) -> list:
        return counts_from_zeta(self.numerator, self.denominator, r)


def ramified_places(params: GlobalParams, P: Poly) -> list:
    """(degree, ramification index) of each place above a root of q(sigma)."""
    N = params.N
    out = []
    for pi, mu in P.factor():
        g = gcd(N, mu)
        if g != 1:
            raise NotImplementedError("non-squarefree moduli with gcd(N, multiplicity) > 1")
        out.append((pi.degree, N))
    if sum(d for d, _ in out) != sum(pi.degree for pi, _ in P.factor()):
        raise PlaceDegreeMismatch("ramified place degrees do not add up to deg rad q")
    return out


def infinite_places(params: GlobalParams, P: Poly) -> list:
    """Places above infinity: roots of z^g = lc(P), g = gcd(N, deg P), up to Frobenius."""
    N = params.N
    g = gcd(N, P.degree)
    k = P.ring
    lc = P.lc
    sols = [z for z in k.units() if k.pow(z, g) == lc]
    if len(sols) != g:
        raise NotImplementedError("places above infinity of degree > 1")
    return [(1, N // g)] * g


def zeta_assemble(params: GlobalParams, lam_map="literal", convention: str = "direct",
                  rho: RhoMap | None = None) -> ZetaResult:
    if params.m != 1:
        raise NotImplementedError("zeta assembly needs complete L-polynomials; available for m = 1 only")
    rho = rho or build_rho(params, lam_map, convention)
    P = rho.modulus.q_sigma
    Ls = all_L(rho)
    num = [1]
    for j, L in Ls.items():
        if L.char.is_trivial:
            continue
        R = L.ring
        # multiply in Q(zeta_n)[t]; the full product is rational
        num = _cyc_poly_mul(R, num, L.trimmed()) if isinstance(num[0], tuple) else _cyc_poly_mul(
            R, [R.coerce(c) for c in num], L.trimmed())
    R = Cyclotomic(params.unit_order)
    num_int = []
    for c in num:
        if any(c[1:]) or c[0].denominator != 1:
            raise ArithmeticError("product of L-polynomials is not in Z[t]")
        num_int.append(int(c[0]))
    U, den_triv = trivial_closed_form(P, params.k_order)
    numer = poly_mul_int(num_int, U)
    denom = list(den_triv)
    ram = ramified_places(params, P)
    inf = infinite_places(params, P)
    for d, _ in ram + inf:
        denom = poly_mul_int(denom, [1] + [0] * (d - 1) + [-1])
    # cancel common factors (1 - t^d) -> repeatedly (1 - t)
    for d, _ in ram:
        factor = [1] + [0] * (d - 1) + [-1]
        numer = poly_divexact_int(numer, factor)
        denom = poly_divexact_int(denom, factor)
    while _eval_int(numer, 1) == 0 and _eval_int(denom, 1) == 0:
        numer = poly_divexact_int(numer, [1, -1])
        denom = poly_divexact_int(denom, [1, -1])
    while len(numer) > 1 and numer[-1] == 0:
        numer.pop()
    genus = (len(numer) - 1) // 2
    return ZetaResult(numer, denom, Ls, ram, inf, genus)


def _eval_int(a, x):
    return sum(c * x**i for i, c in enumerate(a))


def _cyc_poly_mul(R, a, b):
    out = [R.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if any(x):
            for j, y in enumerate(b):
                if any(y):
                    out[i + j] = R.add(out[i + j], R.mul(x, y))
    return out


def weil_defects(L: LPoly, q: int) -> list[float]:
    """max | |alpha| - sqrt(q) | over inverse roots of the completed L, per embedding."""
    out = []
    for k in L.ring.embeddings():
        roots = L.inverse_roots(k)
        out.append(max((abs(abs(a) - q**0.5) for a in roots), default=0.0))
    return out


def functional_equation_ok(L: LPoly, q: int) -> bool:
    """|c_{n-i}|^2 = q^{n-2i} |c_i|^2 exactly for the completed L."""
    R = L.ring
    cs = L.completed()
    n = len(cs) - 1
    for i in range(n + 1):
        a = R.mul(cs[n - i], R.conj(cs[n - i]))
        b = R.mul(cs[i], R.conj(cs[i]))
        lhs = a if n - 2 * i >= 0 else R.scale(Fraction(q) ** (2 * i - n), a)
        rhs = R.scale(Fraction(q) ** (n - 2 * i), b) if n - 2 * i >= 0 else b
        if lhs != rhs:
            return False
    return True
