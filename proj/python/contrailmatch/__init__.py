"""Contrail-to-flight attribution from ground camera annotations."""

from contrailmatch._core import (  # noqa: F401
    AdvectionParams,
    AssignmentMethod,
    AttributionState,
    CameraModel,
    FlightTrack,
    GeoPoint,
    LoadError,
    MatchConfig,
    MetGrid,
    Normalization,
    OutOfDomainError,
    PlumeSegment,
    RuntimeFailure,
    ScenarioSpec,
    TheoreticalContrail,
    TrackPoint,
    WindModel,
    WindVector,
    altitude_to_pressure_hpa,
    attribute_frame,
    classify_outcome,
    directed_hausdorff,
    extract_centerlines,
    iou,
    load_camera,
    load_met_grid,
    pressure_to_altitude_m,
    project,
    project_altitude,
    rasterize_count,
    run_pipeline,
    sample_wind,
    segment_to_polygon,
    theoretical_contrail,
    write_synthetic_scenario,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
