"""Exceptional sequences, their relative homological classification, and the
bijection with m-clusters, for simply-laced Dynkin quivers."""

from .census import CensusOptions, CensusReport, census, cluster_census, last_k_projective_structure
from .clusters import (
    CompatibleTuple,
    Leveled,
    MExcSequence,
    clusters,
    compatible,
    enumerate_m_sequences,
    enumerate_tuples,
    is_positive,
    is_projectively_signed,
    key_sigma,
    theta,
    theta_inverse,
)
from .errors import (
    CatalogError,
    CycleError,
    DimensionError,
    DomainError,
    ExcSeqError,
    IntegrityError,
    NotFiniteTypeError,
    QuiverSyntaxError,
    ScaleError,
    SchemaError,
    VertexIndexError,
)
from .quiver import (
    Quiver,
    coxeter_matrix,
    coxeter_number,
    coxeter_transform,
    euler_form,
    parse_quiver,
    positive_roots,
)
from .reps import Catalog, Rep, ar_middle, ar_translate, catalog_build, format_key, parse_key
from .sequences import (
    ExceptionalSequence,
    braid_sigma,
    classify,
    delta_k,
    enumerate_ces,
    enumerate_sequences,
    garside,
    support_hasse,
    validate,
)

__version__ = "0.1.0"
