"""Content ideals of polynomials in R[t] and the Dedekind-Mertens identities.

A polynomial of R[t] is passed as its coefficient list ``[c_0, c_1, ...]``
(ascending powers of t) with coefficients in the ambient ring of R.
"""
from __future__ import annotations

from typing import Sequence

from .errors import InvariantViolation, PreconditionNotMet, StructuralError
from .groebner import PolyIdeal, ideal_equal
from .poly import Polynomial, PolyRing
from .qring import QuotientRing, RIdeal, is_semiregular, q_closure_member

MAX_T_DEGREE = 8


def trim(coeffs: Sequence[Polynomial]) -> list[Polynomial]:
    out = list(coeffs)
    while out and not out[-1]:
        out.pop()
    return out


def t_degree(coeffs: Sequence[Polynomial]) -> int:
    """Degree in t; -1 for the zero polynomial."""
    return len(trim(coeffs)) - 1


def split_t(F: Polynomial, t: int, base: PolyRing) -> list[Polynomial]:
    """Coefficients of ``F`` in the variable with index ``t``."""
    keep = [i for i in range(F.ring.nvars) if i != t]
    buckets: dict[int, dict] = {}
    for m, c in F.coeffs.items():
        buckets.setdefault(m[t], {})[tuple(m[i] for i in keep)] = c
    deg = max(buckets, default=-1)
    return [Polynomial(base, buckets.get(k, {})) for k in range(deg + 1)]


def join_t(coeffs: Sequence[Polynomial], big: PolyRing, t: int) -> Polynomial:
    result = big.zero
    tv = big.gen(t)
    for k, c in enumerate(coeffs):
        if c:
            result = result + c.embed(big, [i if i < t else i + 1 for i in range(c.ring.nvars)]) * tv ** k
    return result


def _check_degree(coeffs):
    if t_degree(coeffs) > MAX_T_DEGREE:
        raise StructuralError(f"t-degree above the cap {MAX_T_DEGREE}")


def t_product(R: QuotientRing, g: Sequence[Polynomial], f: Sequence[Polynomial]) -> list[Polynomial]:
    """g·f in R[t], coefficients reduced modulo I."""
    g, f = trim(g), trim(f)
    if not g or not f:
        return []
    out = [R.ambient.zero] * (len(g) + len(f) - 1)
    for i, a in enumerate(g):
        if not a:
            continue
        for j, b in enumerate(f):
            if b:
                out[i + j] = out[i + j] + a * b
    return trim(R.ideal.reduce(c) for c in out)


def content(R: QuotientRing, F: Sequence[Polynomial]) -> RIdeal:
    """c(F): the ideal of R generated by the coefficients of F."""
    _check_degree(F)
    return RIdeal.generated(R, [c for c in F if c])


def _times(R: QuotientRing, a: PolyIdeal, b: Sequence[Polynomial]) -> PolyIdeal:
    """(a · b) + I with products reduced modulo I."""
    gens = []
    for x in a.groebner_basis():
        for y in b:
            r = R.ideal.reduce(x * y)
            if r:
                gens.append(r)
    return PolyIdeal(R.ambient, gens + list(R.ideal.gens))


def dm_check(R: QuotientRing, g: Sequence[Polynomial], f: Sequence[Polynomial]) -> int:
    """Smallest k with c(g)^(k+1) c(f) = c(g)^k c(gf) in R.

    Dedekind-Mertens guarantees some k <= deg_t(f); failing that bound is
    reported as an :class:`InvariantViolation`.
    """
    g, f = trim(g), trim(f)
    _check_degree(g)
    _check_degree(f)
    cg = [c for c in g if c]
    cf = [c for c in f if c]
    cgf = [c for c in t_product(R, g, f) if c]
    power = PolyIdeal(R.ambient, [R.ambient.one])  # c(g)^0 = R
    for k in range(max(t_degree(f), 0) + 1):
        lhs = _times(R, _times(R, power, cg), cf)
        rhs = _times(R, power, cgf)
        if ideal_equal(lhs, rhs):
            return k
        power = _times(R, power, cg)
    raise InvariantViolation(
        f"Dedekind-Mertens failed for g={[str(c) for c in g]}, f={[str(c) for c in f]} "
        f"in {R.presentation()} at every k <= {t_degree(f)}")


def content_q_lemma_check(R: QuotientRing, g: Sequence[Polynomial], f: Sequence[Polynomial]) -> bool:
    """c(gf)_q = c(f)_q for g a non-zero-divisor of R[t] (i.e. c(g) semiregular).

    Equality of closures is decided by mutual generator membership.  Raises
    :class:`PreconditionNotMet` when c(g) is not semiregular.
    """
    g, f = trim(g), trim(f)
    cg = content(R, g)
    if not is_semiregular(R, cg):
        raise PreconditionNotMet("c(g) is not semiregular, so g is a zero-divisor of R[t]")
    cf = content(R, f)
    cgf = content(R, t_product(R, g, f))
    return (all(q_closure_member(R, cgf, c) for c in cf.generators())
            and all(q_closure_member(R, cf, c) for c in cgf.generators()))
