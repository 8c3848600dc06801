//! Tangential horizontal calculus on a non-characteristic level set in H^1.
//!
//! Every operator takes an ambient field and a surface point and works from
//! ambient frame derivatives; the results only depend on the restriction of
//! the field to the surface.

use crate::error::Result;
use crate::heis::{frame_derivative, horizontal_gradient, FrameDir, HorizontalField, HorizontalVector, Point1, ScalarField};
use crate::surface::{nu_perp, FrameData, ImplicitSurface};

/// `∇^{H,S}u = ∇^Hu − <∇^Hu, ν^H>ν^H` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentialGradient(pub HorizontalVector<1>);

impl TangentialGradient {
    pub fn project(v: HorizontalVector<1>, fd: &FrameData) -> Self {
        let nu = fd.nu();
        Self(v - nu.scale(v.dot(&nu)))
    }

    pub fn value(&self) -> HorizontalVector<1> {
        self.0
    }
}

pub fn tangential_gradient<F: ScalarField<1>, U: ScalarField<1> + ?Sized>(
    s: &ImplicitSurface<F>,
    u: &U,
    p: &Point1,
) -> Result<TangentialGradient> {
    let fd = s.horizontal_gauss_map(p)?;
    Ok(TangentialGradient::project(horizontal_gradient(u, p)?, &fd))
}

/// `div_{H,S}ζ = Σ_i ∇_i^{H,S}ζ_i`.
pub fn div_hs<F: ScalarField<1>, Z: HorizontalField<1> + ?Sized>(
    s: &ImplicitSurface<F>,
    zeta: &Z,
    p: &Point1,
) -> Result<f64> {
    let fd = s.horizontal_gauss_map(p)?;
    let mut sum = 0.0;
    for k in 0..2 {
        let g = TangentialGradient::project(zeta.component_gradient(k, p)?, &fd);
        sum += g.0.component(k);
    }
    Ok(sum)
}

/// `c^{H,S} = ω̄ (ν^H)^⊥`.
pub fn c_hs<F: ScalarField<1>>(s: &ImplicitSurface<F>, p: &Point1) -> Result<HorizontalVector<1>> {
    let fd = s.horizontal_gauss_map(p)?;
    Ok(c_from_frame(&fd))
}

pub fn c_from_frame(fd: &FrameData) -> HorizontalVector<1> {
    nu_perp(fd).scale(fd.wbar)
}

/// `Yu = <∇^Hu, ν^H>`.
pub fn y_derivative<F: ScalarField<1>, U: ScalarField<1> + ?Sized>(
    s: &ImplicitSurface<F>,
    u: &U,
    p: &Point1,
) -> Result<f64> {
    let fd = s.horizontal_gauss_map(p)?;
    Ok(horizontal_gradient(u, p)?.dot(&fd.nu()))
}

/// `(T − ω̄Y)u`.
pub fn ty_operator<F: ScalarField<1>, U: ScalarField<1> + ?Sized>(
    s: &ImplicitSurface<F>,
    u: &U,
    p: &Point1,
) -> Result<f64> {
    let fd = s.horizontal_gauss_map(p)?;
    ty_with_frame(&fd, u, p)
}

pub(crate) fn ty_with_frame<U: ScalarField<1> + ?Sized>(fd: &FrameData, u: &U, p: &Point1) -> Result<f64> {
    let yu = horizontal_gradient(u, p)?.dot(&fd.nu());
    Ok(frame_derivative(u, FrameDir::T, p)? - fd.wbar * yu)
}
