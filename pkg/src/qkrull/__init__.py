"""q-Krull dimension and q-closures of quotients of polynomial rings over GF(p)."""

from .content import content, content_q_lemma_check, dm_check
from .errors import (CapabilityError, InvariantViolation, PreconditionNotMet, QKrullError,
                     StructuralError, ZeroPolynomialError)
from .groebner import (PolyIdeal, buchberger, colon, eliminate, ideal_equal, intersect,
                       krull_dim, normal_form, saturation)
from .monomial_ideals import (MonomialIdeal, MonomialPrime, ass_monomial, irreducible_decomposition,
                              min_primes_monomial)
from .parsing import ParseError, parse_polynomial
from .poly import GREVLEX, LEX, MonomialOrder, Polynomial, PolyRing, block_order
from .qring import (PrimeRep, QAnalysis, QuotientRing, RIdeal, analyze, annihilator,
                    associated_primes, extend_poly, height, is_dense, is_q_ideal, is_reduced,
                    is_semiregular, is_tau_q_vnr, krull_dimension, minimal_primes, q_closure,
                    q_closure_member, q_dim, q_dim_chain_oracle, q_max, quotient_by_nil)
from .ringfile import RingFile, format_ring_file, load_ring, parse_ring_file

__version__ = "0.1.0"
