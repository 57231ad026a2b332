"""q-theoretic anatomy of finitely presented algebras R = k[X]/I.

All rings here are Noetherian, so a finitely generated ideal is semiregular
exactly when it is dense, and the maximal q-ideals are the inclusion-maximal
associated primes.  Associated primes are computed combinatorially when I is
monomial; otherwise they must come from a user-supplied primary
decomposition, and every result derived from them is flagged ``tainted``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import CapabilityError, StructuralError
from .groebner import (PolyIdeal, colon, colon_ideal, ideal_equal, intersect, krull_dim,
                       radical_member, unit_ideal)
from .monomial_ideals import (MonomialIdeal, MonomialPrime, ass_monomial, intersect_monomial,
                              min_primes_monomial, radical_monomial, saturate_by_vars)
from .poly import MAX_VARS, Polynomial, PolyRing, mono_support

# Two variables stay free: one for R[t], one for elimination inside it.
MAX_PRESENTATION_VARS = MAX_VARS - 2
EXTENSION_VARIABLE = "t"
SEMIREGULAR_RULE = ("semiregular == dense: R is Noetherian, so it has property A and every "
                    "finitely generated semiregular ideal is regular")


def _mask_ideal(ring: PolyRing, mask: int) -> PolyIdeal:
    return PolyIdeal(ring, [ring.gen(i) for i in range(ring.nvars) if mask >> i & 1])


class PrimeRep:
    """A prime of k[X] containing I.

    Monomial primes are prime by construction.  Anything else was supplied by
    the user and is only *asserted* prime; ``asserted`` propagates as taint.
    """

    __slots__ = ("ideal", "monomial", "asserted")

    def __init__(self, ideal: PolyIdeal, monomial: MonomialPrime | None = None,
                 asserted: bool = False):
        self.ideal = ideal
        self.monomial = monomial
        self.asserted = asserted and monomial is None

    @classmethod
    def from_monomial(cls, ring: PolyRing, prime: MonomialPrime) -> PrimeRep:
        return cls(_mask_ideal(ring, prime.mask), prime)

    @classmethod
    def from_ideal(cls, ideal: PolyIdeal) -> PrimeRep:
        """Certify ``ideal`` as monomial if its reduced basis is a set of variables."""
        gb = ideal.groebner_basis()
        mask = 0
        for g in gb:
            if not (g.is_monomial() and g.total_degree() == 1):
                return cls(ideal, None, asserted=True)
            mask |= g.support_mask()
        return cls(ideal, MonomialPrime(mask))

    @property
    def key(self):
        if self.monomial is not None:
            return ("m", self.monomial.mask)
        return ("s", self.ideal.canonical())

    def sort_key(self):
        if self.monomial is not None:
            return (0, self.monomial.height, self.monomial.vars, "")
        return (1, len(self.ideal.groebner_basis()), (), str(self))

    def __eq__(self, other):
        return isinstance(other, PrimeRep) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def contains(self, other: PrimeRep) -> bool:
        if self.monomial is not None and other.monomial is not None:
            return self.monomial.contains(other.monomial)
        return self.ideal.contains_ideal(other.ideal)

    def __str__(self):
        if self.monomial is not None:
            return self.monomial.format(self.ideal.ring.names)
        gb = self.ideal.groebner_basis()
        if not gb:
            return "(0)"
        return "(" + ", ".join(str(g) for g in gb) + ")"

    def generators(self) -> list[str]:
        return [str(g) for g in self.ideal.groebner_basis()]

    __repr__ = __str__


def _sorted_primes(primes: Iterable[PrimeRep]) -> list[PrimeRep]:
    seen = {}
    for p in primes:
        seen.setdefault(p.key, p)
    return sorted(seen.values(), key=PrimeRep.sort_key)


def _maximal(primes: Sequence[PrimeRep]) -> list[PrimeRep]:
    return [p for p in primes if not any(q != p and q.contains(p) for q in primes)]


def _minimal(primes: Sequence[PrimeRep]) -> list[PrimeRep]:
    return [p for p in primes if not any(q != p and p.contains(q) for q in primes)]


@dataclass(frozen=True)
class SuppliedDecomposition:
    """Primary components ``I = ∩ Q_j`` with their (asserted prime) radicals ``P_j``."""

    components: tuple[tuple[PolyIdeal, PolyIdeal], ...]

    @classmethod
    def verified(cls, ideal: PolyIdeal, pairs: Iterable[tuple[PolyIdeal, PolyIdeal | None]]):
        """Check ``I = ∩ Q_j``, ``I ⊆ Q_j ⊆ P_j`` and ``P_j ⊆ √Q_j``; primality is trusted."""
        comps = []
        for q, p in pairs:
            p = q if p is None else p
            if not q.contains_ideal(ideal):
                raise StructuralError(f"component {q} does not contain the defining ideal")
            if not p.contains_ideal(q):
                raise StructuralError(f"prime {p} does not contain its component {q}")
            if p.is_unit():
                raise StructuralError(f"prime {p} is the unit ideal")
            for g in p.gens:
                if not radical_member(g, q):
                    raise StructuralError(f"{g} lies in {p} but not in the radical of {q}")
            comps.append((q, p))
        if not comps:
            raise StructuralError("a decomposition needs at least one component")
        meet = comps[0][0]
        for q, _ in comps[1:]:
            meet = intersect(meet, q)
        if not ideal_equal(meet, ideal):
            raise StructuralError("the components do not intersect to the defining ideal")
        return cls(tuple(comps))

    def embed(self, ring: PolyRing) -> SuppliedDecomposition:
        return SuppliedDecomposition(tuple(
            (PolyIdeal(ring, [g.embed(ring) for g in q.gens]),
             PolyIdeal(ring, [g.embed(ring) for g in p.gens])) for q, p in self.components))


class QuotientRing:
    """R = k[X]/I for a proper ideal I; immutable, with write-once caches."""

    def __init__(self, ideal: PolyIdeal, decomposition=None, name: str | None = None):
        ring = ideal.ring
        if ring.nvars > MAX_PRESENTATION_VARS:
            raise StructuralError(
                f"presentations are limited to {MAX_PRESENTATION_VARS} variables, got {ring.nvars}")
        if ideal.is_unit():
            raise StructuralError("the defining ideal is the unit ideal")
        self.ambient = ring
        self.ideal = PolyIdeal(ring, ideal.groebner_basis())
        self.is_monomial = self.ideal.is_monomial()
        self.monomial_ideal = MonomialIdeal.from_poly_ideal(self.ideal) if self.is_monomial else None
        if decomposition is not None and not isinstance(decomposition, SuppliedDecomposition):
            decomposition = SuppliedDecomposition.verified(self.ideal, decomposition)
        self.decomposition = decomposition
        self.name = name
        self.base: QuotientRing | None = None
        self.extension_var: int | None = None
        self._cache: dict = {}

    @classmethod
    def from_strings(cls, modulus: int, names: Sequence[str], gens: Iterable[str], **kw):
        ring = PolyRing(modulus, names)
        return cls(PolyIdeal(ring, [ring.parse(g) for g in gens]), **kw)

    @property
    def names(self):
        return self.ambient.names

    @property
    def nvars(self):
        return self.ambient.nvars

    @property
    def modulus(self):
        return self.ambient.modulus

    @property
    def is_domain_hint(self) -> bool:
        """I = 0 or I generated by variables; a hint, not a primality test."""
        return self.ideal.is_zero() or (
            self.is_monomial and all(sum(g) == 1 for g in self.monomial_ideal.gens))

    @property
    def tainted(self) -> bool:
        return not self.is_monomial

    def element(self, r) -> Polynomial:
        if isinstance(r, str):
            r = self.ambient.parse(r)
        if isinstance(r, int):
            r = self.ambient.constant(r)
        if r.ring != self.ambient:
            raise StructuralError(f"{r} is not an element of {self.ambient}")
        return self.ideal.reduce(r)

    def ideal_of(self, gens: Iterable) -> RIdeal:
        return RIdeal.generated(self, gens)

    def presentation(self) -> str:
        gens = ", ".join(str(g) for g in self.ideal.groebner_basis()) or "0"
        return f"GF({self.modulus})[{','.join(self.names)}]/({gens})"

    def __repr__(self):
        return f"QuotientRing({self.presentation()})"

    def cached(self, key, compute):
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]


class RIdeal:
    """An ideal of R, stored as its full preimage A ⊇ I in k[X]."""

    def __init__(self, ring: QuotientRing, preimage: PolyIdeal, check: bool = True):
        if preimage.ring != ring.ambient:
            raise StructuralError("preimage lives in a different polynomial ring")
        if check and not preimage.contains_ideal(ring.ideal):
            raise StructuralError(f"{preimage} does not contain the defining ideal")
        self.ring = ring
        self.preimage = preimage

    @classmethod
    def generated(cls, ring: QuotientRing, gens: Iterable) -> RIdeal:
        polys = [ring.element(g) if not isinstance(g, Polynomial) else g for g in gens]
        return cls(ring, PolyIdeal(ring.ambient, list(polys) + list(ring.ideal.gens)), check=False)

    def generators(self) -> list[Polynomial]:
        """Generators of the image in R: reduced basis elements not already in I."""
        out = []
        for g in self.preimage.groebner_basis():
            r = self.ring.ideal.reduce(g)
            if r and r not in out:
                out.append(r.monic())
        return out

    def contains(self, r) -> bool:
        return self.preimage.contains(self.ring.element(r))

    __contains__ = contains

    def issubset(self, other: RIdeal) -> bool:
        return other.preimage.contains_ideal(self.preimage)

    def is_zero(self) -> bool:
        return ideal_equal(self.preimage, self.ring.ideal)

    def is_unit(self) -> bool:
        return self.preimage.is_unit()

    def is_monomial(self) -> bool:
        return self.preimage.is_monomial()

    def monomial(self) -> MonomialIdeal:
        return MonomialIdeal.from_poly_ideal(self.preimage)

    def __eq__(self, other):
        return isinstance(other, RIdeal) and ideal_equal(self.preimage, other.preimage)

    def __hash__(self):
        return hash(self.preimage.canonical())

    def __str__(self):
        gens = self.generators()
        return "(" + ", ".join(str(g) for g in gens) + ")" if gens else "(0)"

    __repr__ = __str__


def _as_rideal(R: QuotientRing, A) -> RIdeal:
    if isinstance(A, RIdeal):
        return A
    if isinstance(A, PrimeRep):
        return RIdeal(R, A.ideal + R.ideal, check=False)
    if isinstance(A, PolyIdeal):
        return RIdeal(R, A + R.ideal, check=False)
    return RIdeal.generated(R, A)


# -- primes ------------------------------------------------------------------

def associated_primes(R: QuotientRing) -> list[PrimeRep]:
    def compute():
        if R.is_monomial:
            return [PrimeRep.from_monomial(R.ambient, p) for p in ass_monomial(R.monomial_ideal)]
        if R.decomposition is not None:
            return _sorted_primes(PrimeRep.from_ideal(p) for _, p in R.decomposition.components)
        raise CapabilityError(
            "associated primes of a non-monomial ring need a supplied primary decomposition",
            missing="decomposition")
    return R.cached("ass", compute)


def minimal_primes(R: QuotientRing) -> list[PrimeRep]:
    def compute():
        if R.is_monomial:
            return [PrimeRep.from_monomial(R.ambient, p) for p in min_primes_monomial(R.monomial_ideal)]
        return _minimal(associated_primes(R))
    return R.cached("min", compute)


def q_max(R: QuotientRing) -> list[PrimeRep]:
    """Maximal q-ideals: the inclusion-maximal associated primes."""
    return R.cached("qmax", lambda: _maximal(associated_primes(R)))


def _prime_dim(R: QuotientRing, p: PrimeRep) -> int:
    if p.monomial is not None:
        return R.nvars - p.monomial.height
    return krull_dim(p.ideal).dim


def height(R: QuotientRing, p: PrimeRep | PolyIdeal) -> int:
    """ht(p/I) = max over minimal primes q ⊆ p of dim k[X]/q − dim k[X]/p."""
    if isinstance(p, PolyIdeal):
        p = PrimeRep.from_ideal(p)
    if p.ideal.ring != R.ambient:
        raise StructuralError("prime lives in a different polynomial ring")
    if not p.ideal.contains_ideal(R.ideal):
        raise StructuralError(f"{p} does not contain the defining ideal")
    below = [q for q in minimal_primes(R) if p.contains(q)]
    if not below:
        raise StructuralError(f"{p} contains no minimal prime; is it really prime?")
    dp = _prime_dim(R, p)
    return max(_prime_dim(R, q) - dp for q in below)


def krull_dimension(R: QuotientRing) -> int:
    return R.cached("dim", lambda: krull_dim(R.ideal).dim)


def q_dim(R: QuotientRing) -> int:
    """q-Krull dimension: the largest height of an associated prime."""
    return R.cached("qdim", lambda: max(height(R, p) for p in associated_primes(R)))


# -- dense / semiregular -----------------------------------------------------

def annihilator(R: QuotientRing, A) -> RIdeal:
    """(0 :_R A), lifted as ∩_g (I : g) over the generators of A."""
    A = _as_rideal(R, A)
    return RIdeal(R, colon_ideal(R.ideal, A.preimage), check=False)


def _not_in_prime(A: RIdeal, p: PrimeRep) -> bool:
    if p.monomial is not None:
        mask = p.monomial.mask
        # f ∈ (x_S) iff each term involves a variable of S
        return any(any(not mono_support(m) & mask for m in g.coeffs) for g in A.preimage.gens)
    return not p.ideal.contains_ideal(A.preimage)


def is_dense(R: QuotientRing, A, method: str = "auto") -> bool:
    """(0 : A) = 0.

    ``"annihilator"`` computes the annihilator by Gröbner colon (exact for every
    ring); ``"ass"`` uses A ⊄ p for all p ∈ Ass(R); ``"auto"`` takes ``"ass"``
    for monomial rings and ``"annihilator"`` otherwise.
    """
    A = _as_rideal(R, A)
    if method == "auto":
        method = "ass" if R.is_monomial else "annihilator"
    if method == "ass":
        return all(_not_in_prime(A, p) for p in associated_primes(R))
    if method == "annihilator":
        return ideal_equal(colon_ideal(R.ideal, A.preimage), R.ideal)
    raise ValueError(f"unknown dense-test method {method!r}")


def is_semiregular(R: QuotientRing, A, method: str = "auto") -> bool:
    # Noetherian: a f.g. semiregular ideal is dense, and A is its own f.g. dense subideal.
    return is_dense(R, A, method)


def is_q_prime(R: QuotientRing, p) -> bool:
    """A prime is a q-ideal iff it is not semiregular."""
    return not is_semiregular(R, p)


# -- nilradical --------------------------------------------------------------

def nilradical(R: QuotientRing) -> RIdeal:
    def compute():
        if R.is_monomial:
            rad = radical_monomial(R.monomial_ideal)
            return RIdeal(R, rad.to_poly_ideal(R.ambient), check=False)
        if R.decomposition is not None:
            mins = minimal_primes(R)
            meet = mins[0].ideal
            for p in mins[1:]:
                meet = intersect(meet, p.ideal)
            return RIdeal(R, meet, check=False)
        raise CapabilityError("the nilradical of a non-monomial ring needs a supplied decomposition",
                              missing="decomposition")
    return R.cached("nil", compute)


def is_reduced(R: QuotientRing) -> bool:
    return R.cached("reduced", lambda: nilradical(R).is_zero())


def quotient_by_nil(R: QuotientRing) -> QuotientRing:
    """R/Nil(R) = k[X]/√I."""
    name = f"{R.name}/Nil" if R.name else None
    if R.is_monomial:
        rad = radical_monomial(R.monomial_ideal)
        return QuotientRing(rad.to_poly_ideal(R.ambient), name=name)
    if R.decomposition is not None:
        mins = minimal_primes(R)
        dec = SuppliedDecomposition(tuple((p.ideal, p.ideal) for p in mins))
        return QuotientRing(nilradical(R).preimage, decomposition=dec, name=name)
    raise CapabilityError("R/Nil(R) of a non-monomial ring needs a supplied decomposition",
                          missing="decomposition")


# -- tau_q von Neumann regularity --------------------------------------------

def _locally_reduced(R: QuotientRing, m: PrimeRep) -> bool:
    """Whether R localized at m is reduced (compared through contractions to k[X])."""
    if R.is_monomial and m.monomial is not None:
        off = [i for i in range(R.nvars) if not m.monomial.mask >> i & 1]
        local = saturate_by_vars(R.monomial_ideal, off)
        return radical_monomial(local) == local
    kept = [(q, p) for q, p in R.decomposition.components if m.ideal.contains_ideal(p)]
    local, local_rad = kept[0]
    for q, p in kept[1:]:
        local = intersect(local, q)
        local_rad = intersect(local_rad, p)
    return ideal_equal(local, local_rad)


def is_tau_q_vnr(R: QuotientRing) -> bool:
    """R_m is von Neumann regular (a reduced zero-dimensional local ring) for every m ∈ q-Max(R)."""
    def compute():
        return all(height(R, m) == 0 and _locally_reduced(R, m) for m in q_max(R))
    return R.cached("vnr", compute)


def tau_q_vnr_views(R: QuotientRing) -> dict:
    """Three equivalent formulations; they must agree on every ring."""
    mins = set(minimal_primes(R))
    return {
        "local_vnr": is_tau_q_vnr(R),
        "reduced_and_qdim0": is_reduced(R) and q_dim(R) == 0,
        "reduced_and_qmax_minimal": is_reduced(R) and all(m in mins for m in q_max(R)),
    }


# -- q-closure ---------------------------------------------------------------

def q_closure_member(R: QuotientRing, A, r, method: str = "auto") -> bool:
    """r ∈ A_q ∩ R iff (A : r) is semiregular."""
    A = _as_rideal(R, A)
    r = R.element(r)
    if A.preimage.contains(r):
        return True
    return is_semiregular(R, RIdeal(R, colon(A.preimage, r), check=False), method)


def q_closure(R: QuotientRing, A, decomposition=None) -> RIdeal:
    """A_q ∩ R = ∩_{m ∈ q-Max(R)} (A R_m ∩ R).

    Exact for monomial A in a monomial ring, where each contraction is the
    saturation by the variables outside m.  For other A, pass a primary
    decomposition of A as ``(component, prime)`` pairs; the result is then
    only as trustworthy as those primes.
    """
    A = _as_rideal(R, A)
    if A.is_unit():
        return A
    maxes = q_max(R)
    if decomposition is None:
        if not (R.is_monomial and A.is_monomial()):
            raise CapabilityError("q_closure as an ideal needs monomial R and A, or a primary "
                                  "decomposition of A; q_closure_member works element-wise",
                                  missing="decomposition")
        Am = A.monomial()
        result = None
        for m in maxes:
            off = [i for i in range(R.nvars) if not m.monomial.mask >> i & 1]
            local = saturate_by_vars(Am, off)
            result = local if result is None else intersect_monomial(result, local)
        return RIdeal(R, result.to_poly_ideal(R.ambient), check=False)
    dec = SuppliedDecomposition.verified(A.preimage, decomposition)
    result = unit_ideal(R.ambient)
    for q, p in dec.components:
        if any(m.ideal.contains_ideal(p) for m in maxes):
            result = intersect(result, q)
    return RIdeal(R, result, check=False)


def is_q_ideal(R: QuotientRing, A, decomposition=None) -> bool:
    if isinstance(A, PrimeRep):
        return is_q_prime(R, A)
    A = _as_rideal(R, A)
    if not A.is_unit() and is_semiregular(R, A):
        return False  # its closure is all of R
    return q_closure(R, A, decomposition) == A


# -- chain oracle and poset --------------------------------------------------

@dataclass(frozen=True)
class PrimePoset:
    """All monomial primes containing a monomial I, with their q-status."""

    nvars: int
    primes: tuple[int, ...]           # masks, sorted by (height, vars)
    non_semiregular: frozenset[int]
    q_max: tuple[int, ...]
    covers: tuple[tuple[int, int], ...]  # (smaller, larger), one variable apart


def prime_poset(R: QuotientRing) -> PrimePoset:
    if not R.is_monomial:
        raise CapabilityError("the monomial-prime poset needs a monomial defining ideal")
    n = R.nvars
    supports = [mono_support(g) for g in R.monomial_ideal.gens]
    primes = [s for s in range(1 << n) if all(e & s for e in supports)]
    primes.sort(key=lambda s: (bin(s).count("1"), MonomialPrime(s).vars))
    ass = [p.monomial.mask for p in associated_primes(R)]
    nonsr = frozenset(s for s in primes if any(s & ~a == 0 for a in ass))
    qmax = tuple(s for s in primes if s in nonsr
                 and not any(t != s and t in nonsr and s & ~t == 0 for t in primes))
    pset = set(primes)
    covers = tuple((s, s | (1 << i)) for s in primes for i in range(n)
                   if not s >> i & 1 and (s | (1 << i)) in pset)
    return PrimePoset(n, tuple(primes), nonsr, qmax, covers)


def q_dim_chain_oracle(R: QuotientRing) -> int:
    """Longest chain of monomial primes ⊇ I below any maximal non-semiregular prime."""
    poset = prime_poset(R)
    longest: dict[int, int] = {}
    for s in poset.primes:  # increasing height, so every proper subset is done
        best = 0
        sub = (s - 1) & s
        while True:
            if sub != s and sub in longest:
                best = max(best, longest[sub] + 1)
            if sub == 0:
                break
            sub = (sub - 1) & s
        longest[s] = best
    return max(longest[m] for m in poset.q_max)


# -- polynomial extension ----------------------------------------------------

def extend_poly(R: QuotientRing) -> QuotientRing:
    """R[t] as k[X, t]/I k[X, t]; t is the first unused name in t, t1, t2, ..."""
    name = R.ambient.fresh_name(EXTENSION_VARIABLE)
    if R.nvars + 1 > MAX_PRESENTATION_VARS:
        raise StructuralError(f"R[t] would exceed {MAX_PRESENTATION_VARS} variables")
    big = R.ambient.extend([name])
    ideal = PolyIdeal(big, [g.embed(big) for g in R.ideal.gens])
    dec = R.decomposition.embed(big) if R.decomposition is not None else None
    S = QuotientRing(ideal, decomposition=dec, name=f"{R.name}[{name}]" if R.name else None)
    S.base = R
    S.extension_var = R.nvars
    return S


def extend_prime(S: QuotientRing, p: PrimeRep) -> PrimeRep:
    """p[t] in the extension ring S = R[t]."""
    if p.monomial is not None:
        return PrimeRep.from_monomial(S.ambient, p.monomial)
    return PrimeRep(PolyIdeal(S.ambient, [g.embed(S.ambient) for g in p.ideal.gens]), asserted=True)


# -- full report -------------------------------------------------------------

@dataclass
class QAnalysis:
    presentation: str
    ass: list[PrimeRep]
    min_primes: list[PrimeRep]
    q_max: list[PrimeRep]
    heights: dict = field(default_factory=dict)
    dim: int = 0
    q_dim: int = 0
    reduced: bool | None = None
    tau_q_vnr: bool | None = None
    min_count: int = 0
    tainted: bool = False

    def to_dict(self) -> dict:
        return {
            "ring": self.presentation,
            "dim": self.dim,
            "q_dim": self.q_dim,
            "ass": [str(p) for p in self.ass],
            "min": [str(p) for p in self.min_primes],
            "q_max": [str(p) for p in self.q_max],
            "heights": {str(p): h for p, h in self.heights.items()},
            "reduced": self.reduced,
            "tau_q_vnr": self.tau_q_vnr,
            "min_count": self.min_count,
            "tainted": self.tainted,
            "semiregular_rule": SEMIREGULAR_RULE,
        }


def analyze(R: QuotientRing) -> QAnalysis:
    ass = associated_primes(R)
    try:
        reduced = is_reduced(R)
        vnr = is_tau_q_vnr(R)
    except CapabilityError:
        reduced = vnr = None
    mins = minimal_primes(R)
    return QAnalysis(
        presentation=R.presentation(),
        ass=ass,
        min_primes=mins,
        q_max=q_max(R),
        heights={p: height(R, p) for p in ass},
        dim=krull_dimension(R),
        q_dim=q_dim(R),
        reduced=reduced,
        tau_q_vnr=vnr,
        min_count=len(mins),
        tainted=R.tainted,
    )
