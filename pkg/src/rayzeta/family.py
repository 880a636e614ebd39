"""Quasi-polynomial engine for polynomial families of real quadratic fields.

A family is given by f(x) and the plus-CF terms a_0(x)..a_{s-1}(x) of
delta(n) - 1.  Per residue r = n mod q the partial zeta value at 0 is a
polynomial in k (n = qk + r); this module computes its coefficients in
closed form, converts between k-form and n-form, and certifies the closed
forms against exact interpolation through directly computed zeta values.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb, gcd

from .contfrac import PeriodicCF, cf_value, pair_count, plus_to_minus
from .exactmath import bernoulli1, bernoulli2, frac_unit, residue_one, residue_zero
from .quadfield import ModuleBasis, is_squarefree
from .shintani import ConeContext, RayLabel, orbit, partial_zeta0

Poly = tuple[int, ...]  # integer polynomial, ascending coefficients


class HypothesisError(RuntimeError):
    """A family hypothesis (norm invariance, reduction, degree) is violated."""


class VerificationError(RuntimeError):
    """A closed form failed its self-verification against direct values."""


class NonSquarefreeSkip(Exception):
    """f(n) is not squarefree; this n must be skipped."""

    def __init__(self, n: int, fn: int):
        super().__init__(f"f({n}) = {fn} is not squarefree")
        self.n = n
        self.fn = fn


def poly_eval(p: Poly, x: int) -> int:
    out = 0
    for c in reversed(p):
        out = out * x + c
    return out


def poly_degree(p: Poly) -> int:
    d = 0
    for i, c in enumerate(p):
        if c != 0:
            d = i
    return d


@dataclass(frozen=True)
class FamilySpec:
    """f(x), the CF term polynomials a_i(x), and the modulus q."""

    name: str
    f_poly: Poly
    a_polys: tuple[Poly, ...]
    q: int
    n_range: tuple[int, int] = (0, 60)

    def __post_init__(self):
        if self.q < 2:
            raise ValueError("q must be >= 2")
        if not self.a_polys:
            raise ValueError("need at least one CF term polynomial")

    @property
    def s(self) -> int:
        return len(self.a_polys)

    @property
    def d(self) -> int:
        """Max degree of the a_i (the quasi-polynomial degree)."""
        return max(poly_degree(a) for a in self.a_polys)

    def with_q(self, q: int) -> "FamilySpec":
        return FamilySpec(self.name, self.f_poly, self.a_polys, q, self.n_range)


PRESETS = {
    # f(n) = n^2 + 2, delta(n)-1 = [[2n, n]]
    "rd-n2p2": FamilySpec("rd-n2p2", (2, 0, 1), ((0, 2), (0, 1)), 2, (1, 60)),
    # f(n) = 16n^4+32n^3+24n^2+12n+3, delta(n)-1 = [[8n^2+8n+2, 2n+1]]
    "quartic-16n4": FamilySpec(
        "quartic-16n4", (3, 12, 24, 32, 16), ((2, 8, 8), (1, 2)), 2, (0, 40)
    ),
}


def get_preset(name: str, q: int | None = None) -> FamilySpec:
    spec = PRESETS[name]
    return spec.with_q(q) if q is not None else spec


@dataclass
class FieldInstance:
    """One member of the family, with its cone context ready."""

    spec: FamilySpec
    n: int
    cf: PeriodicCF
    ctx: ConeContext

    @property
    def r(self) -> int:
        return self.n % self.spec.q

    @property
    def k(self) -> int:
        return self.n // self.spec.q


def instantiate(spec: FamilySpec, n: int, max_terms: int | None = None) -> FieldInstance:
    """Build the field K_n = Q(sqrt(f(n))) with delta(n) = 1 + [[a_0(n),...]].

    Raises NonSquarefreeSkip if f(n) is not squarefree and HypothesisError
    if the instance violates the reduction hypotheses (delta > 2 etc.).
    """
    fn = poly_eval(spec.f_poly, n)
    if fn <= 1:
        raise HypothesisError(f"f({n}) = {fn} is not a valid radicand")
    if not is_squarefree(fn):
        raise NonSquarefreeSkip(n, fn)
    terms = tuple(poly_eval(a, n) for a in spec.a_polys)
    if any(t < 1 for t in terms):
        raise HypothesisError(f"a_i({n}) = {terms} has a term < 1")
    cf = PeriodicCF(terms)
    val = cf_value(cf)
    if val.field.Delta != fn:
        raise HypothesisError(
            f"Q(delta({n})) has radicand {val.field.Delta}, expected f({n}) = {fn}"
        )
    delta = val + 1
    if not (delta > delta.field.elem(2)):
        raise HypothesisError(f"delta({n}) <= 2; family hypothesis violated")
    basis = ModuleBasis(delta)
    kwargs = {} if max_terms is None else {"max_terms": max_terms}
    ctx = ConeContext(basis, spec.q, **kwargs)
    return FieldInstance(spec, n, cf, ctx)


def sample_ks(spec: FamilySpec, r: int, k_values) -> tuple[list[int], list[int]]:
    """Split candidate k values into usable ones (f(qk+r) squarefree) and skipped."""
    usable, skipped = [], []
    for k in k_values:
        n = spec.q * k + r
        if n < spec.n_range[0]:
            skipped.append(k)
            continue
        fn = poly_eval(spec.f_poly, n)
        if fn > 1 and is_squarefree(fn):
            usable.append(k)
        else:
            skipped.append(k)
    return usable, skipped


# ---------------------------------------------------------------------------
# residue-level data (gamma, tau, Gamma, c, nu, d)


def gamma_tau(spec: FamilySpec, r: int) -> tuple[list[int], list[int]]:
    """gamma_i(r) in [1, q] and tau_i(r) with a_i(r) = q*tau + gamma,
    for i = 0 .. 2*pair_count - 1 (a-index taken mod s)."""
    q = spec.q
    gammas, taus = [], []
    for i in range(2 * pair_count(spec.s)):
        ai = poly_eval(spec.a_polys[i % spec.s], r)
        g = residue_one(ai, q)
        gammas.append(g)
        taus.append((ai - g) // q)
    return gammas, taus


@dataclass
class ResidueData:
    """gamma/tau/Gamma/c/nu/d tables for one label (A, B) at residue r."""

    spec: FamilySpec
    label: RayLabel
    r: int
    gammas: list[int] = dc_field(init=False)
    taus: list[int] = dc_field(init=False)
    Gammas: list[int] = dc_field(init=False)  # Gamma_0..Gamma_J
    nus: list[Fraction] = dc_field(init=False)  # nus[i+1] = nu^i, i = -1..Gamma_J
    ds: list[Fraction] = dc_field(init=False)  # d^l for l = 0..J-1

    def __post_init__(self):
        spec, r, q = self.spec, self.r, self.spec.q
        self.gammas, self.taus = gamma_tau(spec, r)
        J = pair_count(spec.s)
        self.Gammas = [0]
        for j in range(1, J + 1):
            self.Gammas.append(self.Gammas[-1] + self.gammas[2 * j - 1])
        special = {self.Gammas[j]: self.gammas[(2 * j) % len(self.gammas)] + 2
                   for j in range(J + 1)}
        A, B = self.label.C, self.label.D
        nus = [Fraction(q - A, q), frac_unit(Fraction(B, q))]  # nu^{-1}, nu^0
        for i in range(self.Gammas[-1]):
            c = special.get(i, 2)
            nus.append(frac_unit(c * nus[-1] - nus[-2]))
        self.nus = nus
        self.ds = [
            frac_unit(self.nu(self.Gammas[l] + 1) - self.nu(self.Gammas[l]))
            for l in range(J)
        ]

    def nu(self, i: int) -> Fraction:
        return self.nus[i + 1]


def nu_seq(spec: FamilySpec, label: RayLabel, r: int, length: int) -> list[Fraction]:
    """nu^{-1}, nu^0, ..., nu^{length} as a flat list (index i at position i+1)."""
    data = ResidueData(spec, label, r)
    if length + 2 > len(data.nus):
        # extend with the periodic c-pattern beyond Gamma_J
        q = spec.q
        J = pair_count(spec.s)
        period = data.Gammas[-1]
        special = {data.Gammas[j] % period: data.gammas[(2 * j) % len(data.gammas)] + 2
                   for j in range(J)}
        nus = list(data.nus)
        for i in range(period, length):
            c = special.get(i % period, 2)
            nus.append(frac_unit(c * nus[-1] - nus[-2]))
        return nus[: length + 2]
    return data.nus[: length + 2]


def A_im(spec: FamilySpec, i: int, m: int, r: int) -> Fraction:
    """Coefficient of k^m in a_i(qk+r)/q: sum_{j>=m} alpha_{ij} C(j,m) q^{m-1} r^{j-m}."""
    if m < 1:
        raise ValueError("m must be >= 1")
    a = spec.a_polys[i % spec.s]
    total = Fraction(0)
    for j in range(m, len(a)):
        total += Fraction(a[j] * comb(j, m) * spec.q ** (m - 1) * r ** (j - m))
    return total


def _progression_sum(count: int, d: Fraction, nu_start: Fraction) -> Fraction:
    """Exact sum of F(x_i, x_{i-1}) for i = 1..count along the arithmetic
    progression x_i = <nu_start + i*d> (mod 1, values in (0,1]).

    Inside a segment the Yamamoto sequence is exactly such a progression, so
    the one-q-period block (count = q) and the gamma-1 tail are both
    instances of this sum; the block value repeats for every q-window
    because q*d is an integer.
    """
    total = Fraction(0)
    prev = nu_start
    for _ in range(count):
        cur = frac_unit(prev + d)
        total += -bernoulli1(cur) * bernoulli1(prev) + bernoulli2(cur)
        prev = cur
    return total


def coeffs_closed(spec: FamilySpec, label: RayLabel, r: int) -> list[Fraction]:
    """Contribution [B^0, ..., B^d] of one orbit member (A, B) to the k-form
    coefficients, from the residue-level data alone (no n enters)."""
    q, d = spec.q, spec.d
    data = ResidueData(spec, label, r)
    J = pair_count(spec.s)
    out = [Fraction(0)] * (d + 1)

    # k^m coefficients, m >= 1
    for m in range(1, d + 1):
        val = Fraction(0)
        for l in range(1, J + 1):
            val += Fraction(q, 2) * A_im(spec, 2 * l, m, r) * bernoulli2(
                data.nu(data.Gammas[l])
            )
        for l in range(J):
            val += A_im(spec, 2 * l + 1, m, r) * _progression_sum(
                q, data.ds[l], data.nu(data.Gammas[l])
            )
        out[m] = val

    # constant coefficient
    b0 = Fraction(0)
    for l in range(1, J + 1):
        nu_l = data.nu(data.Gammas[l])
        nu_lm1 = data.nu(data.Gammas[l] - 1)
        factor = Fraction(q * data.taus[2 * l % len(data.taus)]
                          + data.gammas[2 * l % len(data.gammas)] + 2, 2)
        b0 += -bernoulli1(nu_l) * bernoulli1(nu_lm1) + factor * bernoulli2(nu_l)
    for l in range(J):
        nu_l = data.nu(data.Gammas[l])
        gamma_odd = data.gammas[2 * l + 1]
        b0 += data.taus[2 * l + 1] * _progression_sum(q, data.ds[l], nu_l)
        b0 += _progression_sum(gamma_odd - 1, data.ds[l], nu_l)
    out[0] = b0
    return out


# ---------------------------------------------------------------------------
# quasi-polynomials


@dataclass
class QuasiPoly:
    """Exact quasi-polynomial: period q, degree d, coefficients per (residue, power).

    In k-form the value at n = qk + r is sum_i coeffs[(r, i)] * k^i; in
    n-form it is sum_i coeffs[(r, i)] * n^i.
    """

    q: int
    degree: int
    form: str  # "k" or "n"
    coeffs: dict[tuple[int, int], Fraction]

    def residues(self) -> list[int]:
        return sorted({r for (r, _) in self.coeffs})

    def coeff(self, r: int, i: int) -> Fraction:
        return self.coeffs.get((r, i), Fraction(0))

    def evaluate(self, n: int) -> Fraction:
        r = n % self.q
        if r not in self.residues():
            raise KeyError(f"no coefficients for residue {r}")
        t = (n - r) // self.q if self.form == "k" else n
        return sum(
            (self.coeff(r, i) * t**i for i in range(self.degree + 1)), Fraction(0)
        )


def k_to_n_form(p: QuasiPoly) -> QuasiPoly:
    """Rewrite a k-form quasi-polynomial as an n-form with identical values."""
    if p.form != "k":
        raise ValueError("input must be in k-form")
    d, q = p.degree, p.q
    coeffs: dict[tuple[int, int], Fraction] = {}
    for r in p.residues():
        for j in range(d + 1):
            c = Fraction(0)
            for i in range(j, d + 1):
                c += p.coeff(r, i) * comb(i, j) * (-r) ** (i - j) * Fraction(1, q**i)
            coeffs[(r, j)] = c
    return QuasiPoly(q, d, "n", coeffs)


def n_to_k_form(p: QuasiPoly) -> QuasiPoly:
    """Inverse of k_to_n_form."""
    if p.form != "n":
        raise ValueError("input must be in n-form")
    d, q = p.degree, p.q
    coeffs: dict[tuple[int, int], Fraction] = {}
    for r in p.residues():
        for m in range(d + 1):
            a = Fraction(0)
            for i in range(m, d + 1):
                a += p.coeff(r, i) * comb(i, m) * q**m * r ** (i - m)
            coeffs[(r, m)] = a
    return QuasiPoly(q, d, "k", coeffs)


def norm_invariance_check(
    spec: FamilySpec, label: RayLabel, r: int, k_samples: int = 4
) -> bool:
    """True iff the label's ideal norm mod q is the same for all sampled
    n = qk + r (non-squarefree f(n) skipped transparently)."""
    residues = set()
    found = 0
    k = 0
    limit = max(k_samples * 8, 64)
    while found < k_samples and k < limit:
        n = spec.q * k + r
        if n < spec.n_range[0]:
            k += 1
            continue
        try:
            inst = instantiate(spec, n)
        except NonSquarefreeSkip:
            k += 1
            continue
        residues.add(residue_zero(inst.ctx.label_norm(label), spec.q))
        found += 1
        k += 1
    if found < 2:
        raise HypothesisError(f"fewer than two usable samples for r={r}")
    return len(residues) == 1


def first_instances(spec: FamilySpec, r: int, count: int) -> list[FieldInstance]:
    """The first `count` usable instances with n congruent to r."""
    out = []
    k = 0
    limit = max(count * 16, 128)
    while len(out) < count and k < limit:
        n = spec.q * k + r
        if n >= spec.n_range[0]:
            try:
                out.append(instantiate(spec, n))
            except NonSquarefreeSkip:
                pass
        k += 1
    if len(out) < count:
        raise HypothesisError(
            f"could not find {count} squarefree instances for residue {r}"
        )
    return out


def quasi_poly(spec: FamilySpec, label: RayLabel, r: int) -> QuasiPoly:
    """Closed-form k-form quasi-polynomial of zeta_q(0, (C+D*delta(n))*b) for
    n = qk + r, assembled over the orbit of the label per the residue-level
    coefficient formulas; self-verified against direct evaluation at two k.
    """
    if not norm_invariance_check(spec, label, r):
        raise HypothesisError(
            f"norm of label ({label.C},{label.D}) mod {spec.q} varies with k at r={r}"
        )
    witnesses = first_instances(spec, r, 2)
    members = orbit(label, witnesses[0].ctx)
    coeffs = [Fraction(0)] * (spec.d + 1)
    for member in members:
        part = coeffs_closed(spec, member, r)
        for i in range(spec.d + 1):
            coeffs[i] += part[i]
    poly = QuasiPoly(
        spec.q, spec.d, "k", {(r, i): coeffs[i] for i in range(spec.d + 1)}
    )
    for inst in witnesses:
        direct = partial_zeta0(inst.ctx, label)
        got = poly.evaluate(inst.n)
        if got != direct:
            raise VerificationError(
                "closed form disagrees with direct zeta values: "
                f"n={inst.n}: closed {got} vs direct {direct}"
            )
    return poly


@dataclass
class FitResult:
    coeffs: tuple[Fraction, ...]
    consistent: bool
    used_ks: tuple[int, ...]
    skipped_ks: tuple[int, ...]


def lagrange_fit(points: list[tuple[int, Fraction]]) -> list[Fraction]:
    """Exact interpolating polynomial (ascending coefficients) through points."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for j, (xj, yj) in enumerate(points):
        # basis polynomial prod_{i != j} (x - x_i) / (x_j - x_i)
        basis = [Fraction(1)]
        denom = Fraction(1)
        for i, (xi, _) in enumerate(points):
            if i == j:
                continue
            denom *= xj - xi
            new = [Fraction(0)] * (len(basis) + 1)
            for p, c in enumerate(basis):
                new[p] += -xi * c
                new[p + 1] += c
            basis = new
        scale = yj / denom
        for p, c in enumerate(basis):
            coeffs[p] += scale * c
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def fit_oracle(
    spec: FamilySpec, label: RayLabel, r: int, k_values
) -> FitResult:
    """Independent oracle: exact Lagrange fit of direct zeta values at
    n = qk + r over the usable k, with a consistency flag certifying that
    the extra points lie on the degree-<=d polynomial."""
    d = spec.d
    usable, skipped = sample_ks(spec, r, k_values)
    if len(usable) < d + 2:
        raise HypothesisError(
            f"need at least {d + 2} squarefree samples, got {len(usable)}"
        )
    points = []
    for k in usable:
        inst = instantiate(spec, spec.q * k + r)
        points.append((k, partial_zeta0(inst.ctx, label)))
    fit = lagrange_fit(points[: d + 1])
    consistent = all(
        sum((c * k**p for p, c in enumerate(fit)), Fraction(0)) == v
        for k, v in points[d + 1 :]
    )
    fit += [Fraction(0)] * (d + 1 - len(fit))
    return FitResult(tuple(fit), consistent, tuple(usable), tuple(skipped))
