"""Tangent cones, blow-ups and porosity of planar sets at a marked point."""
from .angular import AngularSet
from .blowup import ClusterReport, ConvergenceReport, blowup_at_scale, cone_convergence_report, sequence_cluster_directions
from .cones import ConeDescriptor, classify_arcs, con_a, cone_distance, conv_a
from .equivalence import EquivalenceReport, epsilon_one_sided, epsilon_sym, strong_equiv_probe
from .estimators import BlowupConvergence, DichotomyProbe, PorosityEstimator, StrongEquivalenceProbe, TangentConeEstimator
from .exceptions import (
    DegenerateInputError,
    EmptySampleError,
    InvariantError,
    SchemaError,
    ShallowLadderError,
    TanconeError,
    UnknownFixtureError,
    UnsupportedVariantError,
)
from .fixtures import Fixture, densified_sample, fixture_names, make_fixture, random_convex_polygon
from .geometry import Point, PointSample, Ray, hausdorff_distance
from .intervals import IntervalSet
from .ladder import ScaleLadder, beta_ladder
from .porosity import DichotomyVerdict, PorosityEstimate, dichotomy_probe, longest_gap, porosity_estimate, radii_set
from .sets import (
    ConeSet,
    FiniteSample,
    FullPlane,
    HalfPlane,
    PlanarSet,
    Polygon,
    RadialProduct,
    RealHalfLine,
    RealLine,
    StarRegion,
    membership,
    nearest_distance,
    parse_set_spec,
    serialize_set,
    sphere_sample,
    starlike_check,
)

__version__ = "0.1.0"
