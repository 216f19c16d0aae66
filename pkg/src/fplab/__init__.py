"""fplab: exact commutative algebra over prime fields.

Groebner bases, Hilbert series and multiplicities, Frobenius powers, roots
and closures, Fedder's F-purity criterion, and multiplicity bound checks,
all in exact arithmetic over F_p.
"""

from .errors import (
    BudgetExceededError,
    ContextMismatchError,
    FplabError,
    NotStabilizedError,
    ParseError,
)
from .field import FpScalar, Prime
from .frobenius import (
    ClosureMembership,
    ClosureTester,
    ClosureWitness,
    FrobeniusChainReport,
    bracket_power,
    fedder_is_fpure,
    frobenius_closure,
    frobenius_preimage,
    frobenius_root,
    frobenius_root_ideal,
    hsl_hypersurface,
    hsl_number,
    in_frobenius_closure,
)
from .groebner import (
    Ideal,
    buchberger,
    colon,
    eliminate,
    ideal_eq,
    ideal_member,
    ideal_product,
    ideal_sum,
    intersect,
    maximal_ideal,
    normal_form,
    set_default_pair_budget,
)
from .hilbert import (
    INFINITE,
    HilbertSeries,
    dimension,
    embedding_dimension,
    hilbert_series,
    initial_ideal,
    length_quotient,
    multiplicity,
)
from .poly import (
    GREVLEX,
    LEX,
    MonomialOrder,
    Polynomial,
    RingCtx,
    degree_monomials,
    elim_order,
    format_poly,
    mono_cmp,
    parse_poly,
)
from .session import Session, load_builtin_session, load_session, parse_session_text
from .verify import (
    BoundReport,
    Check,
    ReductionReport,
    SkodaReport,
    binom,
    check_closure_defect_bound,
    check_hsl_bound,
    check_hw_bound,
    check_skoda,
    gamma,
    hat_monomial_ideal,
    is_reduction,
    run_suite,
    sharpness_family,
)

__version__ = "0.1.0"
