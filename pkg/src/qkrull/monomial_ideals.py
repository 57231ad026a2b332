"""Combinatorics of monomial ideals.

Monomials are exponent tuples; variable sets are bitmasks (at most 16
variables, so they fit in a machine word).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .errors import StructuralError
from .poly import Polynomial, PolyRing, mono_lcm, mono_support


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _canonical_key(m: tuple):
    # by degree, then earlier variables first (x^2 before x*y before y^2)
    return (sum(m), tuple(-e for e in m))


def minimalize(monos: Iterable[tuple]) -> tuple[tuple, ...]:
    """Antichain of the divisibility-minimal monomials, in canonical order."""
    ms = sorted(set(monos), key=_canonical_key)
    out: list = []
    for m in ms:
        if not any(_divides(g, m) for g in out):
            out.append(m)
    return tuple(out)


def mask_to_vars(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def vars_to_mask(vars: Iterable[int]) -> int:
    mask = 0
    for i in vars:
        mask |= 1 << i
    return mask


class MonomialIdeal:
    """A monomial ideal given by its minimal generators (immutable)."""

    __slots__ = ("nvars", "gens")

    def __init__(self, nvars: int, gens: Iterable[tuple] = ()):
        gens = [tuple(g) for g in gens]
        for g in gens:
            if len(g) != nvars:
                raise StructuralError(f"monomial {g} has wrong arity for {nvars} variables")
        self.nvars = nvars
        self.gens = minimalize(gens)

    @classmethod
    def from_polys(cls, ring: PolyRing, polys: Iterable[Polynomial]) -> MonomialIdeal:
        """Monomial ideal generated by every term of every polynomial.

        Only equal to the ideal of ``polys`` when that ideal is monomial.
        """
        return cls(ring.nvars, (m for f in polys for m in f.coeffs))

    @classmethod
    def from_poly_ideal(cls, ideal) -> MonomialIdeal:
        gb = ideal.groebner_basis()
        if not all(g.is_monomial() for g in gb):
            raise StructuralError(f"{ideal} is not a monomial ideal")
        return cls(ideal.ring.nvars, (g.leading_monomial() for g in gb))

    def to_polys(self, ring: PolyRing) -> list[Polynomial]:
        return [ring.monomial(g) for g in self.gens]

    def to_poly_ideal(self, ring: PolyRing):
        from .groebner import PolyIdeal

        return PolyIdeal(ring, self.to_polys(ring))

    def contains(self, m: tuple) -> bool:
        return any(_divides(g, m) for g in self.gens)

    __contains__ = contains

    def contains_ideal(self, other: MonomialIdeal) -> bool:
        return all(self.contains(g) for g in other.gens)

    def is_unit(self) -> bool:
        return any(sum(g) == 0 for g in self.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def is_squarefree(self) -> bool:
        return all(e <= 1 for g in self.gens for e in g)

    def add(self, monos: Iterable[tuple]) -> MonomialIdeal:
        return MonomialIdeal(self.nvars, self.gens + tuple(monos))

    def max_degree(self) -> int:
        return max((sum(g) for g in self.gens), default=0)

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and (self.nvars, self.gens) == (other.nvars, other.gens)

    def __hash__(self):
        return hash((self.nvars, self.gens))

    def __repr__(self):
        return f"MonomialIdeal({self.nvars}, {list(self.gens)})"

    def format(self, names) -> str:
        from .poly import format_monomial

        if not self.gens:
            return "(0)"
        return "(" + ", ".join(format_monomial(g, names) or "1" for g in self.gens) + ")"


@dataclass(frozen=True, order=True)
class MonomialPrime:
    """The prime generated by the variables whose bits are set in ``mask``."""

    mask: int

    @classmethod
    def of(cls, vars: Iterable[int]) -> MonomialPrime:
        return cls(vars_to_mask(vars))

    @property
    def vars(self) -> tuple[int, ...]:
        return mask_to_vars(self.mask)

    @property
    def height(self) -> int:
        """Height in the ambient polynomial ring."""
        return bin(self.mask).count("1")

    def sort_key(self):
        return (self.height, self.vars)

    def contains(self, other: MonomialPrime) -> bool:
        return other.mask & ~self.mask == 0

    def ideal(self, nvars: int) -> MonomialIdeal:
        gens = []
        for i in self.vars:
            e = [0] * nvars
            e[i] = 1
            gens.append(tuple(e))
        return MonomialIdeal(nvars, gens)

    def format(self, names) -> str:
        if not self.mask:
            return "(0)"
        return "(" + ", ".join(names[i] for i in self.vars) + ")"


def sort_primes(primes: Iterable[MonomialPrime]) -> list[MonomialPrime]:
    return sorted(set(primes), key=MonomialPrime.sort_key)


@dataclass(frozen=True)
class IrreducibleDecomposition:
    components: tuple[MonomialIdeal, ...]
    unit: bool = False


def _split(gens: tuple) -> tuple | None:
    """First generator with ≥2 variables, split as (x_i^a, rest) on its lowest variable."""
    for g in gens:
        support = [i for i, e in enumerate(g) if e]
        if len(support) >= 2:
            i = support[0]
            u = tuple(e if k == i else 0 for k, e in enumerate(g))
            v = tuple(0 if k == i else e for k, e in enumerate(g))
            return u, v
    return None


@lru_cache(maxsize=1 << 14)
def _irreducible_components(nvars: int, gens: tuple) -> frozenset:
    split = _split(gens)
    if split is None:
        return frozenset([gens])
    u, v = split
    left = minimalize(gens + (u,))
    right = minimalize(gens + (v,))
    return _irreducible_components(nvars, left) | _irreducible_components(nvars, right)


def irreducible_decomposition(ideal: MonomialIdeal) -> IrreducibleDecomposition:
    """Irredundant decomposition into ideals generated by pure powers."""
    if ideal.is_unit():
        return IrreducibleDecomposition((), unit=True)
    comps = [MonomialIdeal(ideal.nvars, g) for g in _irreducible_components(ideal.nvars, ideal.gens)]
    # An irreducible component is redundant iff it contains another component.
    comps = [c for c in comps if not c.is_unit()]
    keep = []
    for c in comps:
        if not any(d is not c and c.contains_ideal(d) and d != c for d in comps):
            keep.append(c)
    keep = sorted(set(keep), key=lambda c: (len(c.gens), [_canonical_key(g) for g in c.gens]))
    return IrreducibleDecomposition(tuple(keep))


def _proper(ideal: MonomialIdeal):
    if ideal.is_unit():
        raise StructuralError("the unit ideal has no associated or minimal primes")


def ass_monomial(ideal: MonomialIdeal) -> list[MonomialPrime]:
    """Associated primes: radicals of the irredundant irreducible components."""
    _proper(ideal)
    dec = irreducible_decomposition(ideal)
    primes = []
    for comp in dec.components:
        mask = 0
        for g in comp.gens:
            mask |= mono_support(g)
        primes.append(MonomialPrime(mask))
    return sort_primes(primes)


def minimal_transversals(edges: Iterable[int]) -> list[int]:
    """Inclusion-minimal vertex sets meeting every edge (edges as bitmasks)."""
    edges = sorted(set(edges))
    if any(e == 0 for e in edges):
        raise StructuralError("an empty edge has no transversal")
    found: list[int] = []

    def dfs(chosen: int):
        if any(f & ~chosen == 0 for f in found):
            return
        for e in edges:
            if not e & chosen:
                rest = e
                while rest:
                    low = rest & -rest
                    dfs(chosen | low)
                    rest ^= low
                return
        found.append(chosen)

    dfs(0)
    minimal = [s for s in found if not any(t != s and t & ~s == 0 for t in found)]
    return sorted(set(minimal), key=lambda s: (bin(s).count("1"), mask_to_vars(s)))


def min_primes_monomial(ideal: MonomialIdeal) -> list[MonomialPrime]:
    _proper(ideal)
    if ideal.is_zero():
        return [MonomialPrime(0)]
    return sort_primes(MonomialPrime(s) for s in minimal_transversals(mono_support(g) for g in ideal.gens))


def radical_monomial(ideal: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal(ideal.nvars, (tuple(1 if e else 0 for e in g) for g in ideal.gens))


def saturate_by_vars(ideal: MonomialIdeal, vars: Iterable[int]) -> MonomialIdeal:
    """``(I : (∏_{s∈S} x_s)^∞)``: zero out the exponents of the variables in ``S``."""
    s = set(vars)
    return MonomialIdeal(ideal.nvars, (tuple(0 if i in s else e for i, e in enumerate(g))
                                       for g in ideal.gens))


def intersect_monomial(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal(a.nvars, (mono_lcm(f, g) for f in a.gens for g in b.gens))


def colon_monomial(ideal: MonomialIdeal, m: tuple) -> MonomialIdeal:
    return MonomialIdeal(ideal.nvars, (tuple(max(x - y, 0) for x, y in zip(g, m)) for g in ideal.gens))


def combinatorial_dimension(ideal: MonomialIdeal) -> int:
    """dim k[X]/I = n - (minimum height of a minimal prime); -1 for the unit ideal."""
    if ideal.is_unit():
        return -1
    return ideal.nvars - min(p.height for p in min_primes_monomial(ideal))
