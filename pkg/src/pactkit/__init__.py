"""Partial actions of finite monoids on finite sets and spaces, and their globalizations."""
from .errors import PactError
from .finset import (
    CanonicalPartialMorphism,
    FiniteDiagram,
    FinMap,
    Subset,
    canonicalize_partial,
    coequalizer,
    colimit_of_diagram,
    compose,
    is_mono,
    pullback,
)
from .monoid import (
    FiniteMonoid,
    cyclic_group,
    fixture_monoids,
    idempotent_monoid,
    monoid_from_transformations,
    threshold_monoid,
    trivial_monoid,
    validate_monoid,
)
from .paction import (
    AxiomReport,
    GlobalAction,
    PartialActionDatum,
    actions_isomorphic,
    check_partial,
    check_strong,
    is_datum_morphism,
    restrict,
)
from .globalize import (
    Globalization,
    GlobalizationVerdict,
    build_globalization,
    decide_globalizable,
    verify_globalization,
    verify_reflection_against,
)

__version__ = "0.1.0"
