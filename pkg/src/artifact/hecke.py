"""T_p on q-expansions, the annihilator D_K and its action on form records."""

from __future__ import annotations

import json
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from pathlib import Path

from .algebra import GF, Cyclotomic, FracSeries, GlobalParams, Poly, embed_cyclo, monic_enum
from .algebra.series import EXACT, SeriesError
from .classfield import RamifiedPlace, RayModulus, RhoMap
from .lfunction import DirichletChar, unit_dlog

RAMIFIED_POLICIES = ("strict", "coprime-part")


class InsufficientCoefficients(ValueError):
    def __init__(self, needed: int):
        super().__init__(f"need coefficients a_1..a_{needed}")
        self.needed = needed


# ---------------------------------------------------------------- T_p


def tp_apply(f: FracSeries, p: int) -> FracSeries:
    """sum a_i q^i -> sum a_{ip} q^i."""
    if f.den != 1:
        raise SeriesError("T_p is defined on integral-exponent expansions")
    prec = f.prec if f.prec >= EXACT else f.prec // p
    terms = {e // p: c for e, c in f.terms() if e % p == 0 and e // p < prec}
    if not terms:
        return FracSeries(f.ring, [], 0, 1, prec)
    return _from_raw_terms(f.ring, terms, prec)


def _from_raw_terms(ring, terms, prec):
    lo, hi = min(terms), max(terms)
    cs = [ring.zero] * (hi - lo + 1)
    for e, c in terms.items():
        cs[e - lo] = c
    return FracSeries.raw(ring, cs, lo, 1, prec)


# ---------------------------------------------------------------- the annihilator


@dataclass
class AnnihilatorOp:
    """D_K = sum_i sum_{deg r = d-1-i} R_{rho(r)} T_{p^{i delta}} as multiplicities of (u, i)."""

    p: int
    m: int
    d: int
    delta: int
    terms: dict  # (u, i) -> multiplicity
    convention: str = "direct"
    policy: str = "strict"
    dropped: dict = field(default_factory=dict)  # i -> number of non-coprime r

    @property
    def unit_modulus(self) -> int:
        return self.p**self.m

    def multiplicity_at(self, i: int) -> int:
        return sum(c for (u, j), c in self.terms.items() if j == i)

    def check_counts(self):
        q = self.p**self.delta
        for i in range(self.d):
            want = q ** (self.d - 1 - i)
            have = self.multiplicity_at(i) + self.dropped.get(i, 0)
            if have != want:
                raise ArithmeticError(f"power {i}: {have} monic r counted, expected {want}")

    def coefficients(self, chi: DirichletChar) -> list:
        """c_i^{(chi)} = sum_u mult(u, i) chi(u), as cyclotomic numbers."""
        R = chi.ring
        acc = [[0] * chi.n for _ in range(self.d)]
        for (u, i), c in self.terms.items():
            acc[i][chi.exponent(u)] += c
        out = []
        for row in acc:
            v = R.zero
            for e, c in enumerate(row):
                if c:
                    v = R.add(v, R.scale(Fraction(c), R.zeta(e)))
            out.append(v)
        return out

    def matches_L(self, chi: DirichletChar, L) -> bool:
        """c_i^{(chi)} equals the t^{d-1-i} coefficient of L_chi, for every i < d."""
        R = chi.ring
        Lc = list(L.coeffs) + [R.zero] * max(0, self.d - len(L.coeffs))
        return self.coefficients(chi) == Lc[: self.d][::-1]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))


def _coprime_part(r: Poly, q_sigma: Poly) -> Poly:
    g = r.gcd(q_sigma)
    while g.degree > 0:
        r = r // g
        g = r.gcd(q_sigma)
    return r


def _chunk_terms(args):
    rho, degree, lead, policy = args
    k = rho.P.ring
    out, dropped = Counter(), 0
    # monic r = lead + sigma * tail, tail monic of degree - 1
    if degree == 0:
        rs = [Poly.const(k, 1, rho.P.var)]
    else:
        rs = (Poly.raw(k, [lead] + list(t.coeffs), rho.P.var) for t in monic_enum(k, degree - 1, rho.P.var))
    for r in rs:
        try:
            u = rho.frobenius(r)
        except RamifiedPlace:
            if policy == "strict":
                dropped += 1
                continue
            core = _coprime_part(r, rho.modulus.q_sigma)
            u = rho.frobenius(core)
        out[u] += 1
    return out, dropped


def build_annihilator(params: GlobalParams, modulus: RayModulus, rho: RhoMap, policy: str = "strict",
                      workers: int | None = None) -> AnnihilatorOp:
    """Enumerate monic r of degree d-1-i and accumulate (rho(r), i).

    Work is split by the constant coefficient of r; ``workers`` (default
    from ANNIHILATOR_WORKERS) processes run the chunks and the counters are
    merged in a fixed order.
    """
    if policy not in RAMIFIED_POLICIES:
        raise ValueError(f"policy must be one of {RAMIFIED_POLICIES}")
    workers = workers or int(os.environ.get("ANNIHILATOR_WORKERS", "1"))
    d = modulus.degree
    k = modulus.field
    tasks = []
    for i in range(d):
        deg = d - 1 - i
        if deg == 0:
            tasks.append((i, (rho, 0, None, policy)))
        else:
            for lead in k.elements():
                tasks.append((i, (rho, deg, lead, policy)))
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            results = list(ex.map(_chunk_terms, [t for _, t in tasks], chunksize=1))
    else:
        results = [_chunk_terms(t) for _, t in tasks]
    terms, dropped = {}, {}
    for (i, _), (cnt, drop) in zip(tasks, results):
        for u, c in sorted(cnt.items()):
            terms[(u, i)] = terms.get((u, i), 0) + c
        if drop:
            dropped[i] = dropped.get(i, 0) + drop
    op = AnnihilatorOp(params.p, params.m, d, params.delta, terms, rho.convention, policy, dropped)
    op.check_counts()
    return op


def char_scalar(op: AnnihilatorOp, chi: DirichletChar, a, ring: Cyclotomic | None = None):
    """sum_i c_i^{(chi)} a^{i delta}; ``a`` is a raw element of ``ring`` (default chi's ring)."""
    R = ring or chi.ring
    cs = [embed_cyclo(c, chi.ring, R) for c in op.coefficients(chi)]
    ad = R.pow(a, op.delta)
    acc = R.zero
    for c in reversed(cs):
        acc = R.add(R.mul(acc, ad), c)
    return acc


def char_scalar_remainder(op: AnnihilatorOp, chi: DirichletChar, L) -> list:
    """char_scalar as a polynomial in X = a, reduced mod X^n L_chi(1/X) over Q(zeta).

    The roots of X^n L(1/X) are the inverse roots of L, so a zero remainder
    means char_scalar vanishes at each of them, exactly.
    """
    if chi.is_trivial:
        raise ValueError("L of the trivial character is not a polynomial")
    R = chi.ring
    f = L.trimmed()[::-1]  # X^n L(1/X), leading coefficient L_0 = 1
    while len(f) > 1 and not any(f[-1]):
        f.pop()
    num = [R.zero] * ((op.d - 1) * op.delta + 1)
    for i, c in enumerate(op.coefficients(chi)):
        num[i * op.delta] = c
    inv_lc = R.inv(f[-1])
    n = len(f) - 1
    for k in range(len(num) - 1, n - 1, -1):
        c = R.mul(num[k], inv_lc)
        if any(c):
            for j in range(n + 1):
                num[k - n + j] = R.sub(num[k - n + j], R.mul(c, f[j]))
    rem = num[:n]
    while rem and not any(rem[-1]):
        rem.pop()
    return rem


# ---------------------------------------------------------------- form records


@dataclass
class FormRecord:
    label: str
    p: int
    m: int
    nebentypus: dict  # unit -> (order, exponent)
    coeff_order: int
    coeffs: list  # a_1..a_M as Cyclotomic(coeff_order) elements
    eigen_ap: tuple | None = None
    weight: int = 2
    normalized: bool = True
    reduction: int | None = None  # image of zeta_{coeff_order} in GF(p, f), as a code

    def __post_init__(self):
        if self.weight != 2:
            raise ValueError("form records must have weight 2")
        if self.normalized and self.coeffs and self.coeffs[0] != self.ring.one:
            raise ValueError("normalized record must have a_1 = 1")
        mod = self.p**self.m
        _, table = unit_dlog(mod)
        for u in table:
            if u not in self.nebentypus:
                raise ValueError(f"nebentypus is missing the unit {u}")
        if self.coeff_order % self.nebentypus_order:
            raise ValueError("coefficient field must contain the nebentypus values")
        for a in table:
            for b in table:
                if self.eps_exponent(a * b % mod) != (self.eps_exponent(a) + self.eps_exponent(b)) % self.coeff_order:
                    raise ValueError("nebentypus is not a character")

    @property
    def ring(self) -> Cyclotomic:
        return Cyclotomic(self.coeff_order)

    @property
    def level(self) -> int:
        return 4 * self.p**self.m

    @property
    def nebentypus_order(self) -> int:
        return lcm(*[o for o, _ in self.nebentypus.values()])

    @property
    def M(self) -> int:
        return len(self.coeffs)

    def eps_exponent(self, u: int) -> int:
        o, e = self.nebentypus[u % self.p**self.m]
        return e * (self.coeff_order // o) % self.coeff_order

    def eps(self, u: int):
        return self.ring.zeta(self.eps_exponent(u))

    def coefficient(self, n: int):
        """a_n, continued past the stored range through a_{pn} = a_p a_n when an eigenvalue is declared."""
        if n <= self.M:
            return self.coeffs[n - 1]
        if self.eigen_ap is not None and n % self.p == 0:
            return self.ring.mul(self.eigen_value, self.coefficient(n // self.p))
        raise InsufficientCoefficients(n)

    @property
    def eigen_value(self):
        return self.ring.coerce(tuple(Fraction(c) for c in self.eigen_ap)) if self.eigen_ap else None

    def verify_eigen(self) -> bool:
        if self.eigen_ap is None:
            return False
        R = self.ring
        a = self.eigen_value
        return all(self.coeffs[n * self.p - 1] == R.mul(a, self.coeffs[n - 1])
                   for n in range(1, self.M // self.p + 1))

    def series(self, prec: int) -> FracSeries:
        return FracSeries.raw(self.ring, [self.ring.zero] + [self.coefficient(n) for n in range(1, prec)], 0, 1, prec)

    def residue_field(self):
        """(F, image of zeta) for the prime above p used in reports."""
        p, n = self.p, self.coeff_order
        f = 1
        while (p**f - 1) % n:
            f += 1
        F = GF(p, f)
        z = self.reduction if self.reduction is not None else F.root_of_unity(n)
        return F, z

    # ------------------------------------------------------------ JSON

    def to_json(self) -> dict:
        def ints(c):
            return [int(x) if x.denominator == 1 else str(x) for x in c]

        out = {
            "label": self.label,
            "p": self.p,
            "m": self.m,
            "weight": self.weight,
            "level": self.level,
            "nebentypus": {str(u): list(v) for u, v in sorted(self.nebentypus.items())},
            "coeff_order": self.coeff_order,
            "coeffs": [ints(c) for c in self.coeffs],
        }
        if self.eigen_ap is not None:
            out["eigen_ap"] = [int(x) for x in self.eigen_ap]
        if self.reduction is not None:
            out["reduction"] = self.reduction
        return out

    @classmethod
    def from_json(cls, d: dict) -> "FormRecord":
        neb = {int(u): tuple(v) for u, v in d["nebentypus"].items()}
        order = d.get("coeff_order") or lcm(*[o for o, _ in neb.values()])
        R = Cyclotomic(order)
        coeffs = []
        for c in d["coeffs"]:
            if isinstance(c, int):
                c = [c]
            vals = [Fraction(x) for x in c]
            if len(vals) > R.phi:
                acc = R.zero
                for i, x in enumerate(vals):
                    acc = R.add(acc, R.scale(x, R.zeta(i)))
                coeffs.append(acc)
            else:
                coeffs.append(R.coerce(tuple(vals + [Fraction(0)] * (R.phi - len(vals)))))
        ap = d.get("eigen_ap")
        if isinstance(ap, int):
            ap = [ap]
        if ap is not None:
            ap = tuple(list(ap) + [0] * (R.phi - len(ap)))
        return cls(d["label"], d["p"], d.get("m", 1), neb, order, coeffs, ap, d.get("weight", 2),
                   d.get("normalized", True), d.get("reduction"))


def load_forms(path) -> list[FormRecord]:
    data = json.loads(Path(path).read_text())
    if isinstance(data, dict):
        data = data.get("forms", [data])
    return [FormRecord.from_json(d) for d in data]


def dump_forms(forms, path=None) -> str:
    text = json.dumps({"forms": [f.to_json() for f in forms]}, indent=1, sort_keys=True)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text


# ---------------------------------------------------------------- application


@dataclass
class AnnihilationReport:
    label: str
    prec: int
    exact_zero: bool
    zero_mod_p: bool
    first_nonzero: int | None
    series: FracSeries = field(repr=False)

    def line(self) -> str:
        if self.exact_zero:
            status = f"exactly zero up to q^{self.prec}"
        elif self.zero_mod_p:
            status = f"zero mod p up to q^{self.prec}"
        else:
            status = f"NONZERO mod p at q^{self.first_nonzero}"
        return f"{self.label}: {status}"


def apply_annihilator(op: AnnihilatorOp, form: FormRecord, prec: int) -> AnnihilationReport:
    """sum over terms of eps(u) T_p^{i delta}(f), coefficients a_1..a_{prec}."""
    if form.p != op.p or form.m != op.m:
        raise ValueError("form and operator are for different (p, m)")
    R = form.ring
    top = prec * op.p ** ((op.d - 1) * op.delta)
    if form.eigen_ap is None and form.M < top:
        raise InsufficientCoefficients(top)
    weights = [R.zero] * op.d
    for (u, i), c in op.sorted_terms():
        weights[i] = R.add(weights[i], R.scale(Fraction(c), form.eps(u)))
    out = [R.zero]
    for n in range(1, prec + 1):
        acc = R.zero
        for i, w in enumerate(weights):
            if any(w):
                acc = R.add(acc, R.mul(w, form.coefficient(n * op.p ** (i * op.delta))))
        out.append(acc)
    F, z = form.residue_field()
    exact = all(not any(c) for c in out)
    first = None
    for n, c in enumerate(out):
        if n and R.reduce_to(c, F, z) != 0:
            first = n
            break
    series = FracSeries.raw(R, out, 0, 1, prec + 1)
    return AnnihilationReport(form.label, prec, exact, first is None, first, series)


# ---------------------------------------------------------------- L-derived fixtures


def _reduced_reverse(op: AnnihilatorOp, chi: DirichletChar, F: GF, z_n) -> Poly:
    """sum_i c_i X^i reduced into F with zeta_n -> z_n."""
    R = chi.ring
    cs = [R.reduce_to(c, F, z_n) for c in op.coefficients(chi)]
    return Poly.raw(F, cs, "X")


def lfixtures(op: AnnihilatorOp, chars, n_coeffs: int, max_field_degree: int = 2, seed: int = 0):
    """Synthetic eigen-records: U_p-eigenvalue a lifting a root of the reversed L_chi mod p.

    For each nontrivial chi and each root in F_{p^f} (f <= max_field_degree)
    of the reduced polynomial sum c_i X^i, the eigenvalue is the Teichmuller
    lift zeta_M^e (M = p^f - 1) or 0, the nebentypus is chi, a_n for p not
    dividing n are small seeded integers and a_{pn} = a a_n.
    """
    import random

    rng = random.Random(seed)
    p = op.p
    forms = []
    for chi in chars:
        if chi.is_trivial:
            continue
        for f in range(1, max_field_degree + 1):
            M = lcm(p**f - 1, chi.n)
            if M != p**f - 1:
                continue
            F = GF(p, f)
            zM = F.root_of_unity(M)
            z_n = F.pow(zM, M // chi.n)
            rev = _reduced_reverse(op, chi, F, z_n)
            roots = sorted(set(rev.roots(F)))
            for r in roots:
                if f > 1 and F.minpoly_degree(r) != f:
                    continue
                R = Cyclotomic(M)
                if r == 0:
                    a = R.zero
                else:
                    e = next(e for e in range(M) if F.pow(zM, e) == r)
                    a = R.zeta(e)
                coeffs = [None] * n_coeffs
                for n in range(1, n_coeffs + 1):
                    if n % p:
                        coeffs[n - 1] = R.coerce(1 if n == 1 else rng.randint(-3, 3))
                    else:
                        coeffs[n - 1] = R.mul(a, coeffs[n // p - 1])
                neb = {u: (chi.n, chi.exponent(u)) for u in unit_dlog(p**op.m)[1]}
                ap = tuple(int(x) for x in a)
                label = f"L{p}.{op.m}.chi{chi.j}.F{p}^{f}.root{F.fmt(r)}"
                forms.append(FormRecord(label, p, op.m, neb, M, coeffs, ap, reduction=zM))
    return forms


FIXTURE_PATH = Path(__file__).with_name("data") / "fixtures_p5_m1.json"
