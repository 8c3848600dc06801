//! H-perimeter of graphical strips inside gauge balls centered on the t-axis.

pub mod ball;
pub mod profile;

pub use ball::{
    ball_region_integral, ball_slice_bounds, check_ball, inner_integral, large_r_correction, omega_constant,
    perimeter_in_ball, BallPerimeter,
};
pub use profile::{
    mollified_perimeter, monotonicity_check, off_axis_perimeter, off_axis_profile, omega_limit, profile,
    radius_grid, small_r_limit, LimitEstimate, MonotonicityCertificate, ProfileRow, ProfileTable,
    RESCALING_EXPONENT,
};
