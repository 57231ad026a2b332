"""Buchberger's algorithm and the ideal arithmetic built on it.

Everything returns reduced, monic Gröbner bases sorted by descending leading
monomial, so two equal ideals always produce identical bases.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import StructuralError, ZeroPolynomialError
from .poly import GREVLEX, MonomialOrder, Polynomial, PolyRing, block_order, mono_support

# -- raw dict kernels --------------------------------------------------------
# A "basis entry" is (lm, tail) where the polynomial is lm + tail, i.e. monic
# and tail a dict of strictly smaller terms.


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _reduce(d: dict, basis: list, p: int, key, full: bool = True) -> dict:
    """Remainder of ``d`` modulo the monic basis entries ``(lm, tail)``."""
    d = dict(d)
    rem = {}
    while d:
        m = max(d, key=key)
        c = d.pop(m)
        for lm, tail in basis:
            if _divides(lm, m):
                q = tuple(y - x for x, y in zip(lm, m))
                for e, a in tail.items():
                    e2 = tuple(x + y for x, y in zip(e, q))
                    v = (d.get(e2, 0) - c * a) % p
                    if v:
                        d[e2] = v
                    else:
                        del d[e2]
                break
        else:
            rem[m] = c
            if not full:
                rem.update(d)
                return rem
    return rem


def _make_monic(d: dict, p: int, key):
    lm = max(d, key=key)
    inv = pow(d[lm], -1, p)
    tail = {m: (c * inv) % p for m, c in d.items() if m != lm}
    return lm, tail


def _spoly(f, g, p):
    (lf, tf), (lg, tg) = f, g
    lcm = tuple(x if x > y else y for x, y in zip(lf, lg))
    qf = tuple(x - y for x, y in zip(lcm, lf))
    qg = tuple(x - y for x, y in zip(lcm, lg))
    d = {}
    for e, a in tf.items():
        e2 = tuple(x + y for x, y in zip(e, qf))
        d[e2] = a % p
    for e, a in tg.items():
        e2 = tuple(x + y for x, y in zip(e, qg))
        v = (d.get(e2, 0) - a) % p
        if v:
            d[e2] = v
        else:
            d.pop(e2, None)
    return d


def _buchberger_raw(polys: Iterable[dict], p: int, order: MonomialOrder, nvars: int) -> list:
    key = order.key
    G: list = []
    one = (0,) * nvars
    for d in polys:
        if not d:
            continue
        d = _reduce(d, G, p, key) if G else d
        if not d:
            continue
        entry = _make_monic(d, p, key)
        if entry[0] == one:
            return [(one, {})]
        G.append(entry)

    heap: list = []
    pending: set = set()

    def add_pairs(j):
        lj = G[j][0]
        for i in range(j):
            li = G[i][0]
            lcm = tuple(x if x > y else y for x, y in zip(li, lj))
            heapq.heappush(heap, (sum(lcm), key(lcm), i, j, lcm))
            pending.add((i, j))

    for j in range(1, len(G)):
        add_pairs(j)

    while heap:
        _, _, i, j, lcm = heapq.heappop(heap)
        pending.discard((i, j))
        li, lj = G[i][0], G[j][0]
        # Buchberger's first criterion: coprime leading monomials.
        if all(not (a and b) for a, b in zip(li, lj)):
            continue
        # Second (chain) criterion.
        skip = False
        for k, (lk, _) in enumerate(G):
            if k == i or k == j:
                continue
            if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
                continue
            if _divides(lk, lcm):
                skip = True
                break
        if skip:
            continue
        s = _spoly(G[i], G[j], p)
        if not s:
            continue
        r = _reduce(s, G, p, key)
        if not r:
            continue
        entry = _make_monic(r, p, key)
        if entry[0] == one:
            return [(one, {})]
        G.append(entry)
        add_pairs(len(G) - 1)

    return _interreduce(G, p, key)


def _interreduce(G: list, p: int, key) -> list:
    # minimal basis: drop entries whose leading monomial is divisible by another's
    G = sorted(G, key=lambda e: key(e[0]))
    minimal = []
    for lm, tail in G:
        if not any(_divides(l2, lm) for l2, _ in minimal):
            minimal.append((lm, tail))
    reduced = []
    for idx, (lm, tail) in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        t = _reduce(tail, others, p, key)
        reduced.append((lm, t))
    reduced.sort(key=lambda e: key(e[0]), reverse=True)
    return reduced


def _entry_to_poly(ring: PolyRing, entry) -> Polynomial:
    lm, tail = entry
    d = dict(tail)
    d[lm] = 1
    return Polynomial(ring, d)


def _poly_entries(polys: Sequence[Polynomial], order: MonomialOrder) -> list:
    out = []
    for g in polys:
        if g:
            out.append(_make_monic(g.coeffs, g.ring.modulus, order.key))
    return out


# -- public API --------------------------------------------------------------

def buchberger(gens: Sequence[Polynomial], order: MonomialOrder | None = None,
               ring: PolyRing | None = None) -> list[Polynomial]:
    """Reduced Gröbner basis of ``gens`` (monic, descending leading monomials)."""
    if ring is None:
        if not gens:
            raise StructuralError("cannot infer the ring of an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise StructuralError(f"generator {g} is not in {ring}")
    order = order or ring.order
    raw = _buchberger_raw((g.coeffs for g in gens), ring.modulus, order, ring.nvars)
    return [_entry_to_poly(ring, e) for e in raw]


class PolyIdeal:
    """An ideal of a polynomial ring, with write-once cached Gröbner bases."""

    def __init__(self, ring: PolyRing, gens: Iterable[Polynomial] = ()):
        self.ring = ring
        gens = tuple(gens)
        for g in gens:
            if g.ring != ring:
                raise StructuralError(f"generator {g} is not in {ring}")
        self.gens = tuple(g for g in gens if g)
        self._gb: dict = {}

    @classmethod
    def from_strings(cls, ring: PolyRing, texts: Iterable[str]) -> PolyIdeal:
        return cls(ring, [ring.parse(t) for t in texts])

    def groebner_basis(self, order: MonomialOrder | None = None) -> tuple[Polynomial, ...]:
        order = order or self.ring.order
        gb = self._gb.get(order)
        if gb is None:
            gb = tuple(buchberger(self.gens, order, self.ring))
            self._gb.setdefault(order, gb)
        return self._gb[order]

    def _entries(self, order):
        key = ("entries", order)
        e = self._gb.get(key)
        if e is None:
            e = _poly_entries(self.groebner_basis(order), order)
            self._gb[key] = e
        return e

    def reduce(self, f: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
        order = order or self.ring.order
        if f.ring != self.ring:
            raise StructuralError(f"{f} is not in {self.ring}")
        r = _reduce(f.coeffs, self._entries(order), self.ring.modulus, order.key)
        return Polynomial(self.ring, r)

    def contains(self, f: Polynomial) -> bool:
        return not self.reduce(f)

    __contains__ = contains

    def contains_ideal(self, other: PolyIdeal) -> bool:
        return all(self.contains(g) for g in other.gens)

    def is_unit(self) -> bool:
        gb = self.groebner_basis()
        return len(gb) == 1 and gb[0].is_constant()

    def is_zero(self) -> bool:
        return not self.gens

    def is_monomial(self) -> bool:
        """True iff the ideal is generated by monomials (its reduced GB is)."""
        return all(g.is_monomial() for g in self.groebner_basis())

    def leading_monomials(self, order: MonomialOrder | None = None) -> list:
        return [g.leading_monomial(order) for g in self.groebner_basis(order)]

    def canonical(self) -> tuple:
        return tuple(tuple(sorted(g.coeffs.items())) for g in self.groebner_basis(GREVLEX))

    def __add__(self, other: PolyIdeal) -> PolyIdeal:
        return ideal_sum(self, other)

    def __mul__(self, other: PolyIdeal) -> PolyIdeal:
        return ideal_product(self, other)

    def __str__(self):
        if not self.gens:
            return "(0)"
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def __repr__(self):
        return f"PolyIdeal({self} in {self.ring!r})"


def normal_form(f: Polynomial, ideal: PolyIdeal, order: MonomialOrder | None = None) -> Polynomial:
    return ideal.reduce(f, order)


def ideal_member(f: Polynomial, ideal: PolyIdeal) -> bool:
    return ideal.contains(f)


def ideal_equal(a: PolyIdeal, b: PolyIdeal) -> bool:
    """Equality of ideals; reduced bases are canonical so comparing them suffices."""
    if a.ring != b.ring:
        raise StructuralError("ideals live in different rings")
    return a.groebner_basis(GREVLEX) == b.groebner_basis(GREVLEX)


def ideal_sum(a: PolyIdeal, b: PolyIdeal) -> PolyIdeal:
    return PolyIdeal(a.ring, a.gens + b.gens)


def ideal_product(a: PolyIdeal, b: PolyIdeal) -> PolyIdeal:
    return PolyIdeal(a.ring, [f * g for f in a.gens for g in b.gens])


def unit_ideal(ring: PolyRing) -> PolyIdeal:
    return PolyIdeal(ring, [ring.one])


def _aux_ring(ring: PolyRing) -> tuple[PolyRing, int]:
    name = ring.fresh_name("_aux")
    return ring.extend([name]), ring.nvars


def eliminate(ideal: PolyIdeal, drop: Iterable[int]) -> PolyIdeal:
    """``ideal`` ∩ k[remaining variables], as an ideal of the smaller ring."""
    drop = sorted(set(drop))
    ring = ideal.ring
    if not drop:
        return PolyIdeal(ring, ideal.groebner_basis())
    if any(not 0 <= i < ring.nvars for i in drop):
        raise StructuralError(f"variable index out of range in {drop}")
    order = block_order(drop)
    mask = 0
    for i in drop:
        mask |= 1 << i
    small = ring.drop(drop)
    keep = [i for i in range(ring.nvars) if i not in drop]
    out = []
    for g in ideal.groebner_basis(order):
        if g.support_mask() & mask:
            continue
        d = {tuple(m[i] for i in keep): c for m, c in g.coeffs.items()}
        out.append(Polynomial(small, d))
    return PolyIdeal(small, out)


def _eliminate_last(big_gens: list[Polynomial], big: PolyRing, ring: PolyRing) -> PolyIdeal:
    """Eliminate the trailing auxiliary variable and map back into ``ring``."""
    t = big.nvars - 1
    order = block_order([t])
    raw = _buchberger_raw((g.coeffs for g in big_gens), big.modulus, order, big.nvars)
    out = []
    for lm, tail in raw:
        if lm[t]:
            continue
        d = {m[:t]: c for m, c in tail.items()}
        d[lm[:t]] = 1
        out.append(Polynomial(ring, d))
    return PolyIdeal(ring, out)


def intersect(a: PolyIdeal, b: PolyIdeal) -> PolyIdeal:
    """``a ∩ b`` via ``t·a + (1 - t)·b`` followed by eliminating ``t``."""
    if a.ring != b.ring:
        raise StructuralError("ideals live in different rings")
    ring = a.ring
    if a.is_unit():
        return PolyIdeal(ring, b.groebner_basis())
    if b.is_unit():
        return PolyIdeal(ring, a.groebner_basis())
    if a.is_zero() or b.is_zero():
        return PolyIdeal(ring, [])
    big, t = _aux_ring(ring)
    tv = big.gen(t)
    gens = [tv * g.embed(big) for g in a.groebner_basis()]
    gens += [(big.one - tv) * g.embed(big) for g in b.groebner_basis()]
    return _eliminate_last(gens, big, ring)


def divide_exact(g: Polynomial, f: Polynomial) -> Polynomial:
    """The quotient ``g / f``; raises if ``f`` does not divide ``g``."""
    if not f:
        raise ZeroPolynomialError("division by the zero polynomial")
    ring = g.ring
    order = ring.order
    key = order.key
    p = ring.modulus
    lf, cf = f.leading_term(order)
    inv = pow(cf, -1, p)
    d = dict(g.coeffs)
    q: dict = {}
    while d:
        m = max(d, key=key)
        if not _divides(lf, m):
            raise StructuralError(f"{f} does not divide {g}")
        e = tuple(y - x for x, y in zip(lf, m))
        c = (d[m] * inv) % p
        q[e] = c
        for m2, a in f.coeffs.items():
            e2 = tuple(x + y for x, y in zip(m2, e))
            v = (d.get(e2, 0) - c * a) % p
            if v:
                d[e2] = v
            else:
                del d[e2]
    return Polynomial(ring, q)


def colon(ideal: PolyIdeal, f: Polynomial) -> PolyIdeal:
    """``(I : f) = {g : g·f ∈ I}``."""
    if not f:
        raise ZeroPolynomialError("colon by the zero polynomial")
    ring = ideal.ring
    if ideal.contains(f):
        return unit_ideal(ring)
    if f.is_constant():
        return PolyIdeal(ring, ideal.groebner_basis())
    meet = intersect(ideal, PolyIdeal(ring, [f]))
    return PolyIdeal(ring, [divide_exact(g, f) for g in meet.groebner_basis()])


def colon_ideal(ideal: PolyIdeal, other: PolyIdeal | Iterable[Polynomial]) -> PolyIdeal:
    """``(I : J) = ∩_g (I : g)`` over the generators of ``J``."""
    gens = other.gens if isinstance(other, PolyIdeal) else tuple(other)
    ring = ideal.ring
    result = unit_ideal(ring)
    for g in gens:
        if not g or ideal.contains(g):
            continue
        result = intersect(result, colon(ideal, g))
        if ideal_equal(result, ideal):
            break
    return result


def saturation(ideal: PolyIdeal, f: Polynomial, method: str = "colon") -> PolyIdeal:
    """``(I : f^∞)``.

    ``method="colon"`` iterates ``I ⊆ (I:f) ⊆ (I:f) : f ...`` to stabilization;
    ``method="rabinowitsch"`` eliminates ``t`` from ``I + (1 - t·f)``.
    """
    if not f:
        raise ZeroPolynomialError("saturation by the zero polynomial")
    ring = ideal.ring
    if method == "colon":
        cur = PolyIdeal(ring, ideal.groebner_basis())
        while True:
            nxt = colon(cur, f)
            if ideal_equal(nxt, cur):
                return cur
            cur = nxt
    if method == "rabinowitsch":
        big, t = _aux_ring(ring)
        gens = [g.embed(big) for g in ideal.gens]
        gens.append(big.one - big.gen(t) * f.embed(big))
        return _eliminate_last(gens, big, ring)
    raise ValueError(f"unknown saturation method {method!r}")


def radical_member(f: Polynomial, ideal: PolyIdeal) -> bool:
    """Whether ``f ∈ √I``: 1 ∈ I + (1 - t·f) in k[X, t]."""
    ring = ideal.ring
    if not f:
        return True
    big, t = _aux_ring(ring)
    gens = [g.embed(big) for g in ideal.gens]
    gens.append(big.one - big.gen(t) * f.embed(big))
    return PolyIdeal(big, gens).is_unit()


@dataclass(frozen=True)
class DimensionCertificate:
    """``dim`` of k[X]/I plus a maximal independent variable set witnessing it.

    ``dim == -1`` encodes the unit ideal (empty witness).
    """

    dim: int
    witness: tuple[int, ...]


def independent_set_dimension(lead_masks: Sequence[int], nvars: int) -> DimensionCertificate:
    """Largest S with no leading-monomial support inside S; lexicographic tie-break."""
    if any(m == 0 for m in lead_masks):
        return DimensionCertificate(-1, ())
    for size in range(nvars, -1, -1):
        for subset in combinations(range(nvars), size):
            s = 0
            for i in subset:
                s |= 1 << i
            if all(m & ~s for m in lead_masks):
                return DimensionCertificate(size, subset)
    raise AssertionError("the empty set is always independent for a proper ideal")


def krull_dim(ideal: PolyIdeal) -> DimensionCertificate:
    masks = [mono_support(m) for m in ideal.leading_monomials(GREVLEX)]
    return independent_set_dimension(masks, ideal.ring.nvars)
