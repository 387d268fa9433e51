"""Isometric immersions of spherical metrics with two cone points."""
from .branched import (
    INFINITY,
    BranchParams,
    branched_density,
    branched_immersion,
    inverse_stereographic,
    tau,
)
from .geometry import (
    ConformalCoord,
    DegenerateError,
    DomainError,
    FootballParams,
    FundamentalForms,
    GeodesicCoord,
    Point3,
    ProfilePair,
    TangentFrame,
    conformal_density,
    conformal_density_integer,
    conformal_from_geodesic,
    football_metric_G,
    fundamental_forms,
    gauss_curvature,
    geodesic_from_conformal,
    immerse,
    immerse_geodesic,
    mean_curvature,
    profile_height,
    solve_profile,
    tangent_frame,
    twisted_profile_forms,
)
from .mesh import Mesh, MeshConfig, tessellate, tessellate_branched, write_obj, write_ply
from .presets import PRESETS
from .verification import GridSpec, VerifyReport, verify_all

__version__ = "0.1.0"
