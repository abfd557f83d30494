"""Lexicographic products of triangular matrix algebras over linear orders."""

__version__ = "0.1.0"

from .algebra_core import (  # noqa: E402
    DigraphAlgebra,
    Element,
    Ideal,
    MatrixUnit,
    from_relation,
    lex_product,
    multiply,
    radical_combinatorial,
    radical_trace_oracle,
    semisimple_quotient,
    stage_radical_formula,
    strict_ideal,
    transitive_closure,
    triangular_algebra,
)
from .lex_tower import Stage, StageChain, build_chain, embed, lex_compare, stage_algebra  # noqa: E402
from .limit_analysis import (  # noqa: E402
    find_link,
    has_elementary_radical_decomposition,
    is_semisimple,
    limit_radical_dimension,
    limit_radical_member,
    nilpotency_check,
    quotient_structure,
)
from .order_calculus import (  # noqa: E402
    Position,
    WeightedOrder,
    canonical_chain,
    classify_iso,
    format_order,
    has_first,
    interval_decomposition,
    normalize,
    parse_order,
    wois_split,
)
