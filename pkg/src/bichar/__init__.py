"""Exact computations with bicharacters on commutative cocommutative Hopf algebras.

The algebra V is spanned by monomials ``e^alpha x_{n1} ... x_{nk}``; scalars
are Laurent polynomials in ``z`` over the rationals.  A bicharacter given on
generators twists the product of V, and the map ``EQ_r`` intertwining the
two products equals the exponential of a quadratic differential operator.
"""

from .bicharacter import (
    BicharSpec,
    check_symmetric,
    convolve,
    evaluate,
    grouplike_root,
    inverse,
    symmetrize,
    transpose,
)
from .coeffring import BivariateSeries, LaurentPoly, series_exp, series_log, series_sqrt
from .config import SessionConfig, config_from_dict, load_config
from .errors import (
    BicharError,
    ConfigError,
    ModeParityMismatch,
    NonConstantGrouplikeValue,
    NonUnitConstantTerm,
    NoSquareRoot,
    NotSymmetric,
    ParseError,
    SignatureMismatch,
    TwistedWordHasNoZeroEvaluation,
    UnknownGenerator,
)
from .heisenberg import (
    FieldWord,
    apply_mode,
    commutator,
    field_state,
    fock_bicharacter,
    normal_ordered_apply,
    state_to_word,
    twisted_bullet_state,
)
from .hopf import (
    HopfElement,
    Monomial,
    Signature,
    Tensor,
    antipode,
    coproduct,
    coproduct2,
    counit,
    operator_coproduct,
)
from .lattice import Lattice, SeriesCoefficients, flm_series, lattice_bicharacter, run_flm_example
from .parsing import parse_coefficient, parse_element
from .quadop import QuadraticOperator, apply_exp_q, apply_exp_qp, apply_qp, apply_stages
from .twisting import BulletWord, bullet_product, bullet_word, eq_map, twisted_product

__version__ = "0.1.0"

__all__ = [n for n, v in dict(globals()).items() if not n.startswith("_") and type(v).__name__ != "module"]
