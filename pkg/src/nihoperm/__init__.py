"""Permutation checks for the Niho trinomial x + x^(s(2^m-1)+1) + x^(t(2^m-1)+1) over GF(2^{2m})."""

from .circle import UnitCircle, contains, enumerate_circle, make_circle
from .errors import (
    BadFactorization,
    ContextMismatch,
    DegreeMismatch,
    DenominatorVanished,
    DivisionByZero,
    DomainTooLarge,
    FieldTooSmall,
    NihoPermError,
    NotInvertible,
    NotOnCircle,
    ReduciblePolynomial,
    RelationViolated,
    ZeroCoefficient,
)
from .field import (
    BinaryField,
    FieldElement,
    FieldSpec,
    add,
    default_field,
    frobenius,
    inv,
    is_irreducible,
    make_field,
    mul,
    power,
    solve_quadratic,
    trace,
)
from .lemmas import (
    QuadFactorReport,
    UVPair,
    circle_root_relation,
    lemma2_classify,
    lemma3_uv,
    lemma4_check,
    lemma5_search,
)
from .niho import (
    CircleMapSpec,
    NihoTrinomial,
    circle_map_eval,
    conjecture_exponents,
    eq4_root_count,
    eq4_root_counts,
    regime,
    trinomial_eval,
)
from .perm import CollisionBitset, VerifyReport, is_permutation_bruteforce, is_permutation_lemma1
from .poly import BiPoly, UniPoly, bipoly_eval, bipoly_mul_linear_forms, poly_divmod, poly_eval, roots_in_set

__version__ = "0.1.0"
