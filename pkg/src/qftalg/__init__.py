"""qftalg: exact computer algebra for normal (Wick) products of a free
scalar field.

The package implements, over exact rational arithmetic with formal
propagator symbols: the contraction and partition coproducts with counit
and antipode, twisted (Wick) products from a bicharacter pairing,
chronological products and their scalar functionals, the Feynman-graph
expansion of those functionals, connected and renormalized chronological
products with pluggable generalized vertices, and executable checkers for
the structural laws.
"""

from .errors import (
    ExprSyntaxError,
    IdentityViolation,
    MissingSymbol,
    ModeError,
    NotInKernel,
    PowerError,
    QftAlgError,
    UnsupportedFormat,
)
from .scalar import (
    D,
    Dplus,
    PropPoly,
    PropSymbol,
    Rational,
    frac_str,
    poly_add,
    poly_eval,
    poly_mul,
)
from .hopf import (
    Element,
    Generator,
    Monomial,
    PointId,
    Tensor,
    antipode,
    coproduct,
    coproduct_prime,
    counit,
    normal_product,
    normalize,
    reduced_prime,
    reduced_prime_iter,
)
from .coqts import (
    RMode,
    chronological,
    r_bicharacter,
    r_generators,
    t_expansion_identity,
    t_functional,
    twisted_product,
)
from .graphs import (
    AdjacencyTerm,
    DegreeSequence,
    enumerate_adjacency,
    export_graphs,
    is_connected,
    t_connected_via_graphs,
    t_via_graphs,
)
from .renorm import (
    Vertex,
    comodule_expansion_check,
    connected_T,
    identity_vertex,
    renormalized_T,
    t_c_functional,
    zero_vertex,
)
from .laws import (
    ElementFamily,
    LawFailure,
    LawReport,
    check_antipode,
    check_bialgebra,
    check_coalgebra,
    check_comodule_coalgebra,
)
from .expr import parse

__version__ = "0.1.0"
