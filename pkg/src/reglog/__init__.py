"""Relational logic over wiring diagrams.

Contexts of typed ports, structure-preserving maps between them, wiring
diagrams that compose by substitution, graphical terms whose cells are
predicates or further terms, evaluation in finite models, a decision
procedure for containment between terms, and the category of internal
relations inside a model together with an executable law suite.
"""

from .context import (
    Context,
    ContextMorphism,
    canonical_maps,
    compose_cm,
    enumerate_morphisms,
    identity_cm,
    image_factor_cm,
    is_mono,
    is_regular_epi,
    mk_context,
    mk_morphism,
    oplus,
    oplus_all,
    pullback_cm,
    terminal_ctx,
)
from .contain import (
    CanonicalInstance,
    canonical_instance,
    contains,
    equivalent,
    minimize_core,
)
from .errors import (
    CompositionError,
    DslError,
    EvalError,
    ReglogError,
    ValidationError,
)
from .model import (
    FinRelation,
    ModelInstance,
    entails_in,
    eval_term,
    lambda_opl,
    meet_rel,
    mk_model,
    mk_relation,
    pullback_pred,
    pushforward,
    rho_lax,
    true_rel,
)
from .syncat import (
    AxiomBounds,
    AxiomReport,
    InternalRelation,
    SynObject,
    check_regular_axioms,
    classify,
    compose_ir,
    fundamental_check,
    identity_ir,
    image_ir,
    is_function,
    pullback_ir,
    transpose_ir,
)
from .term import (
    GraphicalTerm,
    PredicateSignature,
    bare_term,
    flatten,
    meet_term,
    mk_term,
    to_formula,
    true_term,
)
from .wiring import (
    WiringDiagram,
    as_morphism,
    compose_wd,
    empty_wd,
    generators_wd,
    identity_wd,
    leq_wd,
    mk_wiring,
    normalize,
    substitute,
    tensor,
    transpose_wd,
)

__version__ = "0.1.0"

__all__ = [
    "AxiomBounds",
    "AxiomReport",
    "CanonicalInstance",
    "CompositionError",
    "Context",
    "ContextMorphism",
    "DslError",
    "EvalError",
    "FinRelation",
    "GraphicalTerm",
    "InternalRelation",
    "ModelInstance",
    "PredicateSignature",
    "ReglogError",
    "SynObject",
    "ValidationError",
    "WiringDiagram",
    "as_morphism",
    "bare_term",
    "canonical_instance",
    "canonical_maps",
    "check_regular_axioms",
    "classify",
    "compose_cm",
    "compose_ir",
    "compose_wd",
    "contains",
    "empty_wd",
    "entails_in",
    "enumerate_morphisms",
    "equivalent",
    "eval_term",
    "flatten",
    "fundamental_check",
    "generators_wd",
    "identity_cm",
    "identity_ir",
    "identity_wd",
    "image_factor_cm",
    "image_ir",
    "is_function",
    "is_mono",
    "is_regular_epi",
    "lambda_opl",
    "leq_wd",
    "meet_rel",
    "meet_term",
    "minimize_core",
    "mk_context",
    "mk_model",
    "mk_morphism",
    "mk_relation",
    "mk_term",
    "mk_wiring",
    "normalize",
    "oplus",
    "oplus_all",
    "pullback_cm",
    "pullback_ir",
    "pullback_pred",
    "pushforward",
    "rho_lax",
    "substitute",
    "tensor",
    "terminal_ctx",
    "to_formula",
    "transpose_ir",
    "transpose_wd",
    "true_term",
    "true_rel",
]
