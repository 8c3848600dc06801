//! Tangential horizontal calculus on hypersurfaces of H^1 and numerical
//! certification of its identities.

pub mod ibp;
pub mod identities;
pub mod tangential;

pub use ibp::{
    chart_integral, ibp_suite, standard_bumps, verify_horizontal_ibp, verify_minsurf_inequality,
    verify_vertical_ibp, Bridge, Bump, ChartRect, ChartRule, CutoffSpec, IbpOutcome, MinsurfOutcome,
    NormalShift, REFINEMENT_BASE,
};
pub use identities::{
    axis_sample_pairs, crucial_quantity, crucial_quantity_closed_form, evaluate_pointwise, identity_suite,
    sample_pairs, verify_divergence, verify_gauge_generator, verify_projection, verify_remid,
    verify_torsion_orthogonality, verify_vertical_part, IdentityReport, SamplePair, SuiteConfig, CENTER_EXCLUSION,
    IDENTITY_TOL,
};
pub use tangential::{c_hs, div_hs, tangential_gradient, ty_operator, y_derivative, TangentialGradient};
