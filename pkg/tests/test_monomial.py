import pytest

import oracles
from qkrull.errors import StructuralError
from qkrull.groebner import krull_dim, saturation
from qkrull.monomial_ideals import (MonomialIdeal, MonomialPrime, ass_monomial,
                                    colon_monomial, combinatorial_dimension,
                                    intersect_monomial, irreducible_decomposition,
                                    min_primes_monomial, minimal_transversals,
                                    radical_monomial, saturate_by_vars)
from qkrull.poly import PolyRing

X2, XY, X, Y = (2, 0), (1, 1), (1, 0), (0, 1)


def M(*gens, n=2):
    return MonomialIdeal(n, gens)


def masks(primes):
    return [p.mask for p in primes]


def test_minimalization():
    assert M(X2, XY, (3, 1), (2, 2)).gens == (X2, XY)
    assert M().is_zero() and M((0, 0)).is_unit()
    with pytest.raises(StructuralError):
        MonomialIdeal(2, [(1, 0, 0)])


def test_irreducible_decomposition_examples():
    assert irreducible_decomposition(M(X2, XY)).components == (M(X), M(X2, Y))
    assert irreducible_decomposition(M(XY)).components == (M(X), M(Y))
    assert irreducible_decomposition(M(X)).components == (M(X),)
    assert irreducible_decomposition(M((0, 0))).unit


def test_associated_primes_examples():
    assert masks(ass_monomial(M(X2, XY))) == [0b01, 0b11]
    assert masks(ass_monomial(M(XY))) == [0b01, 0b10]
    assert masks(ass_monomial(M())) == [0]
    assert masks(ass_monomial(M((3, 0), (0, 3)))) == [0b11]
    with pytest.raises(StructuralError):
        ass_monomial(M((0, 0)))


def test_minimal_primes_examples():
    assert masks(min_primes_monomial(M(XY))) == [0b01, 0b10]
    assert masks(min_primes_monomial(M(X2, XY))) == [0b01]
    assert masks(min_primes_monomial(M())) == [0]


def test_minimal_transversals():
    assert minimal_transversals([0b011, 0b110]) == [0b010, 0b101]
    assert minimal_transversals([]) == [0]


def test_radical_saturation_colon():
    assert radical_monomial(M(X2, XY)) == M(X)
    assert radical_monomial(M((3, 2))) == M(XY)
    sq = M(XY, (0, 1))
    assert radical_monomial(sq) == sq
    assert saturate_by_vars(M(X2, XY), [1]) == M(X)
    assert saturate_by_vars(M(X2, XY), []) == M(X2, XY)
    assert saturate_by_vars(M(XY), [0]) == M(Y)
    assert colon_monomial(M(X2, XY), X) == M(X, Y)
    assert intersect_monomial(M(X), M(Y)) == M(XY)


def test_saturation_matches_groebner():
    R = PolyRing(2, ["x", "y"])
    sat = saturation(M(X2, XY).to_poly_ideal(R), R.var("y"))
    assert MonomialIdeal.from_poly_ideal(sat) == M(X)


def test_prime_formatting():
    names = ("x", "y")
    assert MonomialPrime(0).format(names) == "(0)"
    assert MonomialPrime.of([0, 1]).format(names) == "(x, y)"
    assert MonomialPrime(0b11).contains(MonomialPrime(0b01))


def test_combinatorial_dimension_matches_groebner(corpus):
    for _, R in corpus:
        if R.is_monomial:
            I = R.monomial_ideal
            assert combinatorial_dimension(I) == krull_dim(R.ideal).dim


def test_decomposition_is_exact_on_corpus(corpus):
    """The components intersect back to I, no component is redundant, and Ass matches colon witnesses."""
    for _, R in corpus:
        if not R.is_monomial or R.nvars == 0:
            continue
        I = R.monomial_ideal
        comps = irreducible_decomposition(I).components
        meet = comps[0]
        for c in comps[1:]:
            meet = intersect_monomial(meet, c)
        assert meet == I
        for c in comps:
            rest = [d for d in comps if d is not c]
            if rest:
                other = rest[0]
                for d in rest[1:]:
                    other = intersect_monomial(other, d)
                assert other != I
        n = R.nvars
        assert masks(ass_monomial(I)) == sorted(oracles.associated_primes(I.gens, n),
                                                key=lambda s: (bin(s).count("1"), s))
        assert sorted(masks(min_primes_monomial(I))) == oracles.minimal_primes(I.gens, n)


def test_witness_degree_can_exceed_generator_degree():
    # the only witness for (x,y) in Ass(x^3, y^3) is x^2*y^2, of degree 4 > 3
    I = M((3, 0), (0, 3))
    witnesses = [m for m in oracles.box([3, 3]) if not I.contains(m)
                 and colon_monomial(I, m) == M(X, Y)]
    assert witnesses == [(2, 2)]
