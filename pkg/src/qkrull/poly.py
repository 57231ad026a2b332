"""Sparse multivariate polynomials over prime fields GF(p).

Monomials are plain tuples of non-negative exponents, one entry per ring
variable.  A :class:`Polynomial` stores a ``{monomial: coefficient}`` mapping
with coefficients reduced to ``[0, p)`` and never zero; ``terms()`` yields
them sorted in descending order for the requested monomial order.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Iterable, Sequence

from .errors import StructuralError, ZeroPolynomialError

MAX_VARS = 16
MAX_EXP = 2**15 - 1
MAX_MODULUS = 2**31

Monomial = tuple  # tuple[int, ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def check_modulus(p: int) -> int:
    if not isinstance(p, int) or not 2 <= p < MAX_MODULUS or not is_prime(p):
        raise StructuralError(f"coefficient field modulus must be a prime below 2^31, got {p!r}")
    return p


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(modulus), always stored fully reduced."""

    value: int
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.modulus != self.modulus:
                raise StructuralError("field elements of different characteristic")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        return v if v is NotImplemented else FieldElement(self.value + v, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        return v if v is NotImplemented else FieldElement(self.value - v, self.modulus)

    def __rsub__(self, other):
        v = self._coerce(other)
        return v if v is NotImplemented else FieldElement(v - self.value, self.modulus)

    def __mul__(self, other):
        v = self._coerce(other)
        return v if v is NotImplemented else FieldElement(self.value * v, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.modulus)

    def inverse(self) -> FieldElement:
        if self.value == 0:
            raise ZeroDivisionError("zero has no inverse in GF(p)")
        return FieldElement(pow(self.value, -1, self.modulus), self.modulus)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self * FieldElement(v, self.modulus).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** -n
        return FieldElement(pow(self.value, n, self.modulus), self.modulus)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value


# -- monomials ---------------------------------------------------------------

def _check_arity(a, b):
    if len(a) != len(b):
        raise StructuralError(f"monomial arity mismatch: {len(a)} vs {len(b)}")


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    _check_arity(a, b)
    m = tuple(x + y for x, y in zip(a, b))
    if m and max(m) > MAX_EXP:
        raise StructuralError(f"exponent exceeds the cap {MAX_EXP}")
    return m


def mono_divides(a: Monomial, b: Monomial) -> tuple[bool, Monomial | None]:
    """Return ``(True, b / a)`` if ``a`` divides ``b``, else ``(False, None)``."""
    _check_arity(a, b)
    if all(x <= y for x, y in zip(a, b)):
        return True, tuple(y - x for x, y in zip(a, b))
    return False, None


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x < y else y for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


def mono_support(a: Monomial) -> int:
    """Bitmask of the variables occurring in ``a``."""
    mask = 0
    for i, e in enumerate(a):
        if e:
            mask |= 1 << i
    return mask


# -- monomial orders ---------------------------------------------------------

class MonomialOrder:
    """A global monomial order, exposed through a sort ``key``.

    ``key(m1) > key(m2)`` iff ``m1 > m2``.  ``perm`` lists variable indices
    from most to least significant; ``elim`` (block orders only) is the set of
    variables forming the leading block.  Both blocks use grevlex.
    """

    def __init__(self, kind: str = "grevlex", perm: Sequence[int] | None = None,
                 elim: Iterable[int] = ()):
        if kind not in ("lex", "grevlex", "block"):
            raise StructuralError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.perm = tuple(perm) if perm is not None else None
        self.elim = tuple(sorted(set(elim)))
        if kind == "block" and not self.elim:
            raise StructuralError("block order needs a nonempty elimination block")
        self.key = lru_cache(maxsize=1 << 17)(self._key)

    def _indices(self, m):
        return self.perm if self.perm is not None else range(len(m))

    def _key(self, m):
        if self.kind == "lex":
            if self.perm is None:
                return m
            return tuple(m[i] for i in self.perm)
        if self.kind == "grevlex":
            idx = self._indices(m)
            return (sum(m), tuple(-m[i] for i in reversed(idx)))
        elim = self.elim
        rest = [i for i in self._indices(m) if i not in elim]
        return (sum(m[i] for i in elim), tuple(-m[i] for i in reversed(elim)),
                sum(m[i] for i in rest), tuple(-m[i] for i in reversed(rest)))

    def lt(self, a: Monomial, b: Monomial) -> bool:
        return self.key(a) < self.key(b)

    def _ident(self):
        return (self.kind, self.perm, self.elim)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self._ident() == other._ident()

    def __hash__(self):
        return hash(self._ident())

    def __repr__(self):
        if self.kind == "block":
            return f"MonomialOrder('block', elim={self.elim})"
        return f"MonomialOrder({self.kind!r})"


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def block_order(elim: Iterable[int]) -> MonomialOrder:
    return MonomialOrder("block", elim=elim)


# -- rings and polynomials ---------------------------------------------------

class PolyRing:
    """The ambient ring GF(p)[x_1..x_n] with a default monomial order."""

    def __init__(self, modulus: int, names: Sequence[str], order: MonomialOrder = GREVLEX):
        self.modulus = check_modulus(modulus)
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise StructuralError(f"duplicate variable names in {self.names}")
        if len(self.names) > MAX_VARS:
            raise StructuralError(f"at most {MAX_VARS} variables are supported, got {len(self.names)}")
        self.order = order
        self.nvars = len(self.names)
        self._one_exp = (0,) * self.nvars

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.modulus == other.modulus
                and self.names == other.names)

    def __hash__(self):
        return hash((self.modulus, self.names))

    def __repr__(self):
        return f"GF({self.modulus})[{','.join(self.names)}]"

    @property
    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    @property
    def one(self) -> Polynomial:
        return Polynomial(self, {self._one_exp: 1})

    def constant(self, c: int) -> Polynomial:
        return self.monomial(self._one_exp, c)

    def monomial(self, exp: Monomial, coeff: int = 1) -> Polynomial:
        exp = tuple(exp)
        if len(exp) != self.nvars:
            raise StructuralError(f"monomial {exp} does not fit {self}")
        if any(e < 0 for e in exp):
            raise StructuralError(f"negative exponent in {exp}")
        if exp and max(exp) > MAX_EXP:
            raise StructuralError(f"exponent exceeds the cap {MAX_EXP}")
        c = coeff % self.modulus
        return Polynomial(self, {exp: c} if c else {})

    def gen(self, i: int) -> Polynomial:
        exp = [0] * self.nvars
        exp[i] = 1
        return Polynomial(self, {tuple(exp): 1})

    def var(self, name: str) -> Polynomial:
        try:
            return self.gen(self.names.index(name))
        except ValueError:
            raise StructuralError(f"unknown variable {name!r} in {self}") from None

    def gens(self) -> list[Polynomial]:
        return [self.gen(i) for i in range(self.nvars)]

    def from_terms(self, terms) -> Polynomial:
        """Build a polynomial from ``(monomial, coefficient)`` pairs, summing duplicates."""
        p = self.modulus
        d: dict = {}
        for exp, c in terms:
            exp = tuple(exp)
            if len(exp) != self.nvars:
                raise StructuralError(f"monomial {exp} does not fit {self}")
            v = (d.get(exp, 0) + int(c)) % p
            if v:
                d[exp] = v
            else:
                d.pop(exp, None)
        return Polynomial(self, d)

    def parse(self, text: str) -> Polynomial:
        from .parsing import parse_polynomial

        return parse_polynomial(text, self)

    def extend(self, names: Sequence[str]) -> PolyRing:
        """Ring with extra variables appended after the existing ones."""
        return PolyRing(self.modulus, self.names + tuple(names), self.order)

    def drop(self, indices: Iterable[int]) -> PolyRing:
        idx = set(indices)
        return PolyRing(self.modulus, [n for i, n in enumerate(self.names) if i not in idx],
                        self.order)

    def fresh_name(self, base: str) -> str:
        """First name in ``base, base1, base2, ...`` that is not a variable."""
        if base not in self.names:
            return base
        k = 1
        while f"{base}{k}" in self.names:
            k += 1
        return f"{base}{k}"


class Polynomial:
    __slots__ = ("ring", "_d")

    def __init__(self, ring: PolyRing, d: dict):
        self.ring = ring
        self._d = d

    # -- structure --
    @property
    def coeffs(self) -> dict:
        """Read-only view intent: the internal ``{monomial: coefficient}`` map."""
        return self._d

    def terms(self, order: MonomialOrder | None = None) -> list[tuple[Monomial, int]]:
        order = order or self.ring.order
        return sorted(self._d.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder | None = None) -> tuple[Monomial, int]:
        if not self._d:
            raise ZeroPolynomialError("the zero polynomial has no leading term")
        order = order or self.ring.order
        m = max(self._d, key=order.key)
        return m, self._d[m]

    def leading_monomial(self, order=None) -> Monomial:
        return self.leading_term(order)[0]

    def leading_coefficient(self, order=None) -> int:
        return self.leading_term(order)[1]

    def monic(self, order=None) -> Polynomial:
        if not self._d:
            return self
        c = self.leading_coefficient(order)
        return self.scale(pow(c, -1, self.ring.modulus))

    def is_zero(self) -> bool:
        return not self._d

    def is_constant(self) -> bool:
        return not self._d or (len(self._d) == 1 and self.ring._one_exp in self._d)

    def is_monomial(self) -> bool:
        return len(self._d) == 1

    def total_degree(self) -> int:
        return max((sum(m) for m in self._d), default=-1)

    def degree_in(self, i: int) -> int:
        return max((m[i] for m in self._d), default=-1)

    def support_mask(self) -> int:
        mask = 0
        for m in self._d:
            mask |= mono_support(m)
        return mask

    # -- arithmetic --
    def _lift(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise StructuralError(f"polynomials from different rings: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, FieldElement)):
            return self.ring.constant(int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.ring.modulus
        d = dict(self._d)
        for m, c in other._d.items():
            v = (d.get(m, 0) + c) % p
            if v:
                d[m] = v
            else:
                d.pop(m, None)
        return Polynomial(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.modulus
        return Polynomial(self.ring, {m: p - c for m, c in self._d.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c: int) -> Polynomial:
        p = self.ring.modulus
        c %= p
        if not c:
            return self.ring.zero
        return Polynomial(self.ring, {m: (a * c) % p for m, a in self._d.items()})

    def mul_term(self, exp: Monomial, c: int) -> Polynomial:
        p = self.ring.modulus
        c %= p
        if not c:
            return self.ring.zero
        d = {tuple(x + y for x, y in zip(m, exp)): (a * c) % p for m, a in self._d.items()}
        return Polynomial(self.ring, d)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not self._d or not other._d:
            return self.ring.zero
        n = self.ring.nvars
        for i in range(n):
            if self.degree_in(i) + other.degree_in(i) > MAX_EXP:
                raise StructuralError(f"exponent exceeds the cap {MAX_EXP}")
        p = self.ring.modulus
        d: dict = {}
        for m1, c1 in self._d.items():
            for m2, c2 in other._d.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                v = (d.get(m, 0) + c1 * c2) % p
                if v:
                    d[m] = v
                else:
                    d.pop(m, None)
        return Polynomial(self.ring, d)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise StructuralError("negative powers of polynomials are undefined")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison --
    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._d == other._d

    def __hash__(self):
        return hash((self.ring, frozenset(self._d.items())))

    def __bool__(self):
        return bool(self._d)

    # -- conversion --
    def embed(self, ring: PolyRing, positions: Sequence[int] | None = None) -> Polynomial:
        """Map into ``ring``; variable ``i`` goes to ``positions[i]`` (default: same index)."""
        if positions is None:
            positions = range(self.ring.nvars)
        d = {}
        for m, c in self._d.items():
            e = [0] * ring.nvars
            for i, k in zip(positions, m):
                e[i] = k
            d[tuple(e)] = c % ring.modulus
        return Polynomial(ring, {m: c for m, c in d.items() if c})

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r} in {self.ring!r})"


def format_monomial(exp: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, exp):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial, order: MonomialOrder | None = None) -> str:
    if not f._d:
        return "0"
    out = []
    for m, c in f.terms(order):
        mono = format_monomial(m, f.ring.names)
        if not mono:
            out.append(str(c))
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{c}*{mono}")
    return " + ".join(out)


# Functional aliases for the methods above.

def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def leading_term(f: Polynomial, order: MonomialOrder | None = None) -> tuple[Monomial, int]:
    return f.leading_term(order)
