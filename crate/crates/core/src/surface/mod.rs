//! Hypersurfaces of H^1: level sets, the horizontal Gauss map and graphical
//! strips.

pub mod graph;
pub mod implicit;
pub mod strip;

pub use graph::{validate_graphical_strip, GraphFunction, GraphKind, Interval, StripCertificate};
pub use implicit::{nu_perp, Cylinder, FrameData, ImplicitSurface, NormalComponents, VerticalPlane, CHARACTERISTIC_TOL};
pub use strip::{GraphicalStrip, StripDefiningFunction, TestSurface, TestSurfaceField, DEFAULT_VALIDATION_SAMPLES};
