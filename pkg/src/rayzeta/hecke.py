"""Dirichlet characters mod q and Hecke L-values at s = 0 assembled from
ray-class partial zeta values.

L-values are kept as exact formal sums over character-value symbols
[chi(a)]; a complex rendering (root-of-unity substitution) is provided for
display only.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exactmath import residue_zero
from .family import FamilySpec, first_instances, quasi_poly
from .shintani import ConeContext, RayLabel, f_delta, orbit, partial_zeta0


class CharacterError(ValueError):
    """Malformed character specification."""


@dataclass(frozen=True)
class DirichletChar:
    """Character mod q of order m, stored as an exponent table on (Z/q)^*:
    chi(a) = zeta_m^{exps[a]}, chi(a) = 0 off the units."""

    modulus: int
    order: int
    exps: tuple[tuple[int, int], ...]  # sorted (unit residue, exponent mod order)

    @classmethod
    def from_exponents(cls, q: int, order: int, table: dict[int, int]) -> "DirichletChar":
        if q < 1 or order < 1:
            raise CharacterError("modulus and order must be positive")
        units = [a for a in range(1, q + 1) if gcd(a, q) == 1]
        units = [a % q if q > 1 else 1 for a in units]
        norm_table = {}
        for a in units:
            if a not in table:
                raise CharacterError(f"missing exponent for unit {a}")
            norm_table[a] = table[a] % order
        if norm_table.get(1 % q, norm_table.get(1)) != 0:
            raise CharacterError("chi(1) must be 1")
        for a in units:
            for b in units:
                if (norm_table[a] + norm_table[b]) % order != norm_table[a * b % q]:
                    raise CharacterError(
                        f"multiplicativity fails at ({a}, {b}) mod {q}"
                    )
        return cls(q, order, tuple(sorted(norm_table.items())))

    @classmethod
    def from_generators(cls, q: int, order: int, gens: dict[int, int]) -> "DirichletChar":
        """Build the full exponent table from generator -> exponent pairs."""
        for g in gens:
            if gcd(g, q) != 1:
                raise CharacterError(f"generator {g} is not a unit mod {q}")
        table = {1 % q: 0}
        frontier = [1 % q]
        while frontier:
            a = frontier.pop()
            for g, e in gens.items():
                b = a * g % q
                val = (table[a] + e) % order
                if b in table:
                    if table[b] != val:
                        raise CharacterError("generator exponents are inconsistent")
                else:
                    table[b] = val
                    frontier.append(b)
        n_units = sum(1 for a in range(q) if gcd(a, q) == 1) if q > 1 else 1
        if len(table) != n_units:
            raise CharacterError("generators do not generate (Z/q)^*")
        return cls.from_exponents(q, order, table)

    @classmethod
    def trivial(cls, q: int) -> "DirichletChar":
        table = {a % q: 0 for a in range(1, q + 1) if gcd(a, q) == 1}
        return cls.from_exponents(q, 1, table)

    def exponent(self, a: int) -> int | None:
        """Exponent e with chi(a) = zeta_order^e, or None when chi(a) = 0."""
        a = residue_zero(a, self.modulus)
        if gcd(a, self.modulus) != 1 and self.modulus > 1:
            return None
        return dict(self.exps)[a % self.modulus if self.modulus > 1 else 1]


@dataclass(frozen=True)
class CharSpanValue:
    """Formal sum sum_a c_a * [chi(a)] with exact rational c_a, a a unit mod q."""

    terms: tuple[tuple[int, Fraction], ...]  # sorted, zero coefficients dropped

    @classmethod
    def from_dict(cls, d: dict[int, Fraction]) -> "CharSpanValue":
        return cls(tuple(sorted((a, c) for a, c in d.items() if c != 0)))

    @classmethod
    def zero(cls) -> "CharSpanValue":
        return cls(())

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.terms)

    def __add__(self, other: "CharSpanValue") -> "CharSpanValue":
        d = self.as_dict()
        for a, c in other.terms:
            d[a] = d.get(a, Fraction(0)) + c
        return CharSpanValue.from_dict(d)

    def scale(self, c) -> "CharSpanValue":
        c = Fraction(c)
        return CharSpanValue.from_dict({a: v * c for a, v in self.terms})

    def to_complex(self, chi: DirichletChar) -> complex:
        """Approximate complex value; rendering only, never fed back into
        exact computations."""
        total = 0j
        for a, c in self.terms:
            e = chi.exponent(a)
            if e is None:
                continue
            total += float(c) * cmath.exp(2j * cmath.pi * e / chi.order)
        return total


def ray_char_value(chi: DirichletChar, ideal_norm: int) -> int | None:
    """Symbol index for chi(N(ideal)): the residue of the norm mod q, or
    None for the zero symbol (norm not coprime to q)."""
    if ideal_norm <= 0:
        raise ValueError("ideal norm must be positive")
    a = residue_zero(ideal_norm, chi.modulus)
    if chi.modulus > 1 and gcd(a, chi.modulus) != 1:
        return None
    return a if chi.modulus > 1 else 1


def orbit_representatives(ctx: ConeContext) -> list[RayLabel]:
    """One representative per unit orbit of F_delta, in lexicographic order."""
    reps, seen = [], set()
    for label in f_delta(ctx):
        if (label.C, label.D) in seen:
            continue
        members = orbit(label, ctx)
        seen.update((mem.C, mem.D) for mem in members)
        reps.append(label)
    return reps


def hecke_L0(ctx: ConeContext, chi: DirichletChar) -> CharSpanValue:
    """L(chi, 0, b) as a formal sum: over one representative per orbit,
    chi(norm of (C+D*delta)*b) times the partial zeta value at 0."""
    if chi.modulus != ctx.q:
        raise CharacterError("character modulus must equal q")
    total: dict[int, Fraction] = {}
    for rep in orbit_representatives(ctx):
        sym = ray_char_value(chi, ctx.label_norm(rep))
        if sym is None:
            continue  # cannot happen for labels in F_delta
        total[sym] = total.get(sym, Fraction(0)) + partial_zeta0(ctx, rep)
    return CharSpanValue.from_dict(total)


@dataclass
class LValueQuasiPoly:
    """Per residue r, coefficient vectors (powers of k) of formal char-span sums."""

    spec: FamilySpec
    chi: DirichletChar
    coeffs: dict[int, list[CharSpanValue]]  # r -> [power 0 .. d]

    def evaluate(self, n: int) -> CharSpanValue:
        r = n % self.spec.q
        k = (n - r) // self.spec.q
        out = CharSpanValue.zero()
        for i, v in enumerate(self.coeffs[r]):
            out = out + v.scale(Fraction(k**i))
        return out


def hecke_L0_family(
    spec: FamilySpec, chi: DirichletChar, residues=None
) -> LValueQuasiPoly:
    """Quasi-polynomial (in k, per residue r) of the family's L-values at 0.

    Every residue is verified exactly against a directly computed L-value.
    """
    if chi.modulus != spec.q:
        raise CharacterError("character modulus must equal q")
    residues = range(spec.q) if residues is None else residues
    out: dict[int, list[CharSpanValue]] = {}
    for r in residues:
        witness = first_instances(spec, r, 1)[0]
        vecs = [CharSpanValue.zero() for _ in range(spec.d + 1)]
        for rep in orbit_representatives(witness.ctx):
            sym = ray_char_value(chi, witness.ctx.label_norm(rep))
            if sym is None:
                continue
            qp = quasi_poly(spec, rep, r)
            for i in range(spec.d + 1):
                vecs[i] = vecs[i] + CharSpanValue.from_dict({sym: qp.coeff(r, i)})
        out[r] = vecs
        lqp = LValueQuasiPoly(spec, chi, {r: vecs})
        direct = hecke_L0(witness.ctx, chi)
        if lqp.evaluate(witness.n) != direct:
            raise RuntimeError(
                f"family L-value at n={witness.n} disagrees with direct assembly"
            )
    return LValueQuasiPoly(spec, chi, out)
