import pytest

import oracles
from qkrull.errors import CapabilityError, StructuralError
from qkrull.groebner import PolyIdeal
from qkrull.poly import PolyRing
from qkrull.qring import (PrimeRep, QuotientRing, RIdeal, analyze, annihilator,
                          associated_primes, extend_poly, extend_prime, height, is_dense,
                          is_q_ideal, is_q_prime, is_reduced, is_semiregular, is_tau_q_vnr,
                          krull_dimension, minimal_primes, nilradical, q_closure,
                          q_closure_member, q_dim, q_dim_chain_oracle, q_max, quotient_by_nil,
                          tau_q_vnr_views)
from qkrull.verify import named_ring, rem28_ring


@pytest.fixture
def rem1():
    return rem28_ring(1)


@pytest.fixture
def cross():
    return named_ring("cross")


@pytest.fixture
def field():
    return named_ring("field")


def strs(primes):
    return [str(p) for p in primes]


def ideal(R, *gens):
    return R.ideal_of(list(gens))


def prime(R, *gens):
    return PrimeRep.from_ideal(PolyIdeal.from_strings(R.ambient, gens))


class TestAnnihilatorAndDensity:
    def test_annihilators(self, rem1, cross):
        assert str(annihilator(rem1, ["x"])) == "(x, y1)"
        assert annihilator(rem1, ["1"]).is_zero()
        assert str(annihilator(cross, ["x"])) == "(y)"

    def test_dense(self, rem1, cross):
        assert is_dense(cross, ["x + y"])
        assert is_dense(cross, ["1"])
        assert not is_dense(rem1, ["x", "y1"])

    def test_semiregular(self, rem1, cross):
        assert is_semiregular(cross, ["x + y"])
        assert is_semiregular(cross, ["x", "y + 1"])
        assert not is_semiregular(rem1, ["x", "y1"])

    @pytest.mark.parametrize("gens", [["x + y"], ["x", "y + 1"], ["x"], ["x", "y"], ["x^2"]])
    def test_density_routes_agree(self, cross, gens):
        assert is_dense(cross, gens, method="ass") == is_dense(cross, gens, method="annihilator")

    def test_q_primes(self, rem1, cross):
        assert is_q_ideal(rem1, prime(rem1, "x", "y1"))
        assert not is_q_ideal(cross, ideal(cross, "x", "y + 1"))
        k_x = QuotientRing(PolyIdeal(PolyRing(2, ["x"]), []))
        assert is_q_prime(k_x, prime(k_x))


class TestPrimes:
    def test_associated(self, rem1, cross, field):
        assert strs(associated_primes(rem1)) == ["(x)", "(x, y1)"]
        assert strs(associated_primes(cross)) == ["(x)", "(y)"]
        assert strs(associated_primes(field)) == ["(0)"]

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_maximal_q_ideal_of_nilpotent_family(self, n):
        R = rem28_ring(n)
        assert strs(q_max(R)) == ["(" + ", ".join(["x"] + [f"y{i}" for i in range(1, n + 1)]) + ")"]
        assert height(R, q_max(R)[0]) == n

    def test_q_max(self, cross, field):
        assert strs(q_max(cross)) == ["(x)", "(y)"]
        assert strs(q_max(field)) == ["(0)"]

    def test_heights(self, cross):
        assert height(cross, prime(cross, "x")) == 0
        k_x = QuotientRing(PolyIdeal(PolyRing(2, ["x"]), []))
        assert height(k_x, prime(k_x)) == 0
        with pytest.raises(StructuralError):
            height(cross, prime(cross, "y + 1"))


class TestDimensions:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_nilpotent_family(self, n):
        R = rem28_ring(n)
        assert (q_dim(R), krull_dimension(R), is_reduced(R)) == (n, n, False)
        assert q_dim_chain_oracle(R) == n
        N = quotient_by_nil(R)
        assert (q_dim(N), is_tau_q_vnr(N)) == (0, True)
        assert q_dim(extend_poly(R)) == n

    def test_cross_has_qdim_below_dim(self, cross):
        assert (krull_dimension(cross), q_dim(cross), is_tau_q_vnr(cross)) == (1, 0, True)

    def test_chain_oracle_examples(self, rem1, cross, field):
        assert [q_dim_chain_oracle(R) for R in (rem1, cross, field)] == [1, 0, 0]

    def test_field(self, field):
        assert (q_dim(field), krull_dimension(field), is_tau_q_vnr(field)) == (0, 0, True)


class TestNilradical:
    def test_examples(self, rem1, cross, field):
        assert str(nilradical(rem1)) == "(x)" and not is_reduced(rem1)
        assert nilradical(cross).is_zero() and is_reduced(cross)
        assert nilradical(field).is_zero()

    def test_quotients(self, rem1, cross):
        assert quotient_by_nil(rem1).presentation() == "GF(2)[x,y1]/(x)"
        assert quotient_by_nil(cross).presentation() == cross.presentation()
        R = QuotientRing.from_strings(2, ["x"], ["x^2"])
        assert quotient_by_nil(R).presentation() == "GF(2)[x]/(x)"

    def test_vnr(self, rem1):
        R = QuotientRing.from_strings(2, ["x"], ["x^2"])
        assert not is_tau_q_vnr(R)
        assert is_tau_q_vnr(quotient_by_nil(rem28_ring(3)))
        assert not is_tau_q_vnr(rem1)


class TestClosure:
    def test_membership(self, cross):
        assert q_closure_member(cross, ["x^2"], "x")
        assert not q_closure_member(cross, ["x"], "y")
        assert q_closure_member(cross, ["x*y + x"], "x")

    def test_closure(self, rem1, cross):
        assert str(q_closure(cross, ["x^2"])) == "(x)"
        assert q_closure(cross, ["1"]).is_unit()
        assert str(q_closure(rem1, ["x"])) == "(x)"

    def test_closure_agrees_with_membership(self, cross):
        closed = q_closure(cross, ["x^2"])
        for m in oracles.box([4, 4]):
            if sum(m) <= 4:
                r = cross.ambient.monomial(m)
                assert closed.contains(r) == q_closure_member(cross, ["x^2"], r)

    def test_non_monomial_closure_needs_decomposition(self, cross):
        with pytest.raises(CapabilityError) as info:
            q_closure(cross, ["x + y^2"])
        assert info.value.missing == "decomposition"


class TestExtension:
    def test_rem28_extension(self, rem1):
        S = extend_poly(rem1)
        assert S.presentation() == "GF(2)[x,y1,t]/(x^2, x*y1)"
        assert strs(q_max(S)) == [str(extend_prime(S, m)) for m in q_max(rem1)] == ["(x, y1)"]
        assert q_dim(S) == 1

    def test_field_extension(self, field):
        S = extend_poly(field)
        assert S.names == ("t",) and q_dim(S) == 0

    def test_fresh_variable_name(self):
        R = QuotientRing.from_strings(2, ["t", "x"], ["t*x"])
        assert extend_poly(R).names == ("t", "x", "t1")


class TestSuppliedDecomposition:
    def make(self, pairs):
        R = PolyRing(5, ["x", "y"])
        ideal = PolyIdeal.from_strings(R, ["x^2 - y", "x*y"])
        dec = [(PolyIdeal.from_strings(R, q), PolyIdeal.from_strings(R, p) if p else None)
               for q, p in pairs]
        return QuotientRing(ideal, decomposition=dec)

    def test_valid_decomposition(self):
        R = self.make([(["x^2 - y", "x*y"], ["x", "y"])])
        assert R.tainted
        assert strs(associated_primes(R)) == ["(x, y)"]
        assert (q_dim(R), krull_dimension(R), is_reduced(R)) == (0, 0, False)

    def test_wrong_intersection_rejected(self):
        with pytest.raises(StructuralError):
            self.make([(["x", "y"], None)])

    def test_wrong_radical_rejected(self):
        with pytest.raises(StructuralError):
            self.make([(["x^2 - y", "x*y"], ["x", "y + 1"])])

    def test_missing_decomposition_is_a_capability_error(self):
        R = QuotientRing(PolyIdeal.from_strings(PolyRing(5, ["x", "y"]), ["x^2 - y"]))
        with pytest.raises(CapabilityError):
            associated_primes(R)


def test_structural_errors():
    R = PolyRing(2, ["x"])
    with pytest.raises(StructuralError):
        QuotientRing(PolyIdeal.from_strings(R, ["x", "x + 1"]))
    with pytest.raises(StructuralError):
        QuotientRing(PolyIdeal(PolyRing(2, [f"v{i}" for i in range(15)]), []))
    Q = QuotientRing.from_strings(2, ["x"], ["x^2"])
    with pytest.raises(StructuralError):
        RIdeal(Q, PolyIdeal.from_strings(R, ["x^3"]))


def test_analysis_report(cross):
    d = analyze(cross).to_dict()
    assert {"dim", "q_dim", "ass", "min", "q_max", "heights", "reduced", "tau_q_vnr",
            "tainted"} <= d.keys()
    assert (d["dim"], d["q_dim"], d["tau_q_vnr"], d["tainted"]) == (1, 0, True, False)


def test_invariants_on_corpus(corpus):
    """q_dim bounds, chain oracle, three vnr views and the brute-force Ass on every corpus ring."""
    for entry, R in corpus:
        assert 0 <= q_dim(R) <= krull_dimension(R)
        assert q_dim(R) == q_dim_chain_oracle(R)
        views = tau_q_vnr_views(R)
        assert len(set(views.values())) == 1, (entry.ring_id, views)
        assert q_dim(R) >= q_dim(quotient_by_nil(R))
        assert set(minimal_primes(R)) <= set(associated_primes(R))
        if R.nvars:
            gens = R.monomial_ideal.gens
            assert q_dim(R) == oracles.chain_qdim(gens, R.nvars)
            assert sorted(p.monomial.mask for p in associated_primes(R)) == \
                oracles.associated_primes(gens, R.nvars)


def test_semiregular_matches_annihilator_brute_force(corpus):
    """is_semiregular on monomial ideals against a box search for annihilating monomials."""
    for _, R in corpus:
        if not 1 <= R.nvars <= 3:
            continue
        n = R.nvars
        I = R.monomial_ideal.gens
        for mask in range(1, 1 << n):
            A = [tuple(1 if mask >> i & 1 else 0 for i in range(n))]
            expected = oracles.annihilator_is_zero(I, A, n)
            assert is_semiregular(R, [R.ambient.monomial(A[0])]) == expected
            variables = [tuple(int(j == i) for j in range(n)) for i in range(n) if mask >> i & 1]
            expected = oracles.annihilator_is_zero(I, variables, n)
            assert is_semiregular(R, [R.ambient.monomial(v) for v in variables]) == expected
