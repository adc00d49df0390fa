"""Model checking for strategic deconstruction, construction and update logics.

The package works over weighted serial digraphs.  A demon removes edges, an
angel adds them, and a traveller moves along whatever relation is left.

>>> from sulcheck import build_figure_fixtures, parse_formula, check
>>> pm = build_figure_fixtures()["fig1.M1"]
>>> check(pm, parse_formula("<d:2> G !admin")).value
True
"""

from .checker import (
    DEFAULT_SUL_DEPTH_CAP,
    CheckerConfig,
    CheckStats,
    GamePosition,
    StrategyTable,
    TableEntry,
    Verdict,
    br_depth,
    check,
    extract_witness,
    holds,
    verify_witness,
)
from .errors import *  # noqa: F403
from .errors import __all__ as _error_names
from .model import (
    Edge,
    EdgeSet,
    Model,
    PointedModel,
    add_edges,
    apply_update,
    model_size,
    parse_model,
    parse_model_with_point,
    remove_edges,
    serialize_model,
)
from .oracles import (
    QbfInstance,
    brute_force_next,
    brute_submodels,
    brute_supermodels,
    brute_updates,
    ctl_check,
    dualize_qbf,
    parse_qbf,
    qbf_eval,
    qbf_to_text,
)
from .reductions import (
    FIXTURE_POINTS,
    build_distinguishing_family,
    build_figure_fixtures,
    build_scl_reduction,
    build_sdl_reduction,
    translate_ctl,
)
from .syntax import (
    Flavor,
    formula_size,
    is_nnf,
    parse_ctl,
    parse_formula,
    to_nnf,
    to_text,
)
from .updates import UpdateChoice, enumerate_submodels, enumerate_supermodels, enumerate_updates

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_SUL_DEPTH_CAP",
    "CheckerConfig",
    "CheckStats",
    "GamePosition",
    "StrategyTable",
    "TableEntry",
    "Verdict",
    "br_depth",
    "check",
    "extract_witness",
    "holds",
    "verify_witness",
    "Edge",
    "EdgeSet",
    "Model",
    "PointedModel",
    "add_edges",
    "apply_update",
    "model_size",
    "parse_model",
    "parse_model_with_point",
    "remove_edges",
    "serialize_model",
    "QbfInstance",
    "brute_force_next",
    "brute_submodels",
    "brute_supermodels",
    "brute_updates",
    "ctl_check",
    "dualize_qbf",
    "parse_qbf",
    "qbf_eval",
    "qbf_to_text",
    "FIXTURE_POINTS",
    "build_distinguishing_family",
    "build_figure_fixtures",
    "build_scl_reduction",
    "build_sdl_reduction",
    "translate_ctl",
    "Flavor",
    "formula_size",
    "is_nnf",
    "parse_ctl",
    "parse_formula",
    "to_nnf",
    "to_text",
    "UpdateChoice",
    "enumerate_submodels",
    "enumerate_supermodels",
    "enumerate_updates",
    *_error_names,
]
