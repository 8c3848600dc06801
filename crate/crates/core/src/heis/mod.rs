//! Heisenberg group arithmetic and left-invariant calculus.

pub mod fields;
pub mod frame;
pub mod point;

pub use fields::{gauge_field, generator_apply, FField, HorizontalField, RhoField, ZetaField};
pub use frame::{
    frame_derivative, frame_derivative2, horizontal_gradient, ConstantField, Coord,
    CoordinateField, FnField, FrameDir, HorizontalVector, ScalarField,
};
pub use point::{
    dilate, gauge_distance, gauge_norm, group_inverse, group_multiply, GroupParams, Point, Point1,
};
