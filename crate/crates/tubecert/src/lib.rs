//! Tube geometry of short closed geodesics in hyperbolic 3-manifolds.
//!
//! A closed geodesic of complex length `ell + i theta` with `ell` below the
//! threshold W(1) sits inside an embedded maximal solid tube whose radius,
//! meridian disk area, and boundary area are explicit functions of `ell`.
//! This crate evaluates those quantities, the helicoidal minimal annulus the
//! tube contains, and the inequality chains that relate them, and certifies
//! batches of curves from length-spectrum data with signed margins per
//! condition.
//!
//! Modules:
//! - [`geometry`]: the closed forms (threshold function, tube radius, areas,
//!   helicoid, series expansion).
//! - [`certify`]: per-curve certificates with one margin per inequality.
//! - [`spectrum`]: native-format and one-line complex length parsers, plus
//!   the bundled example dataset.
//! - [`report`]: batch certification reports in JSON and CSV.
//! - [`mesh`]: triangle meshes of helicoid patches and tube boundaries with
//!   OBJ export.
//!
//! With the default `parallel` feature, batch certification fans out via
//! rayon; order of results always equals input order.

pub mod certify;
pub mod error;
pub mod geometry;
mod jsonfmt;
pub mod mesh;
mod numeric;
pub mod report;
pub mod spectrum;

pub use certify::{
    certify, certify_all, certify_all_seq, check_area_comparison, check_ratio, check_separation,
    check_theorem1, check_theorem2, check_thurston_consistency, multiplicity_lower_bound,
    Certificate, ConditionId, ConditionResult,
};
pub use error::{GeometryError, ObjError, SpectrumError};
pub use geometry::{
    annulus_area, eps0, eps1, eps2, eps_otal, expansion_base, expansion_series,
    first_fundamental_form, helicoid_point, helicoid_unstable, kappa, meridian_disk_area,
    mori_threshold, ratio_threshold, ratio_upper_bound, slope_length, thurston_rotation_bound,
    tube_geometry, tube_radius, w_function, ComplexLength, ConstantsTable, ExpansionSeries,
    FundamentalForm, Genus, HalfSpacePoint, TubeGeometry,
};
pub use mesh::{
    read_obj, sample_helicoid, sample_tube_boundary, write_obj, HelicoidPatch, TriangleMesh,
};
pub use report::{
    build_report, certificate_to_json, emit_report, parse_report, ConstantsSnapshot,
    GenusThreshold, Report, ReportFormat, ReportSummary, TOOL_VERSION,
};
pub use spectrum::{
    builtin_fixtures, emit_native, parse_complex_length_line, parse_native, SpectrumRecord,
};
