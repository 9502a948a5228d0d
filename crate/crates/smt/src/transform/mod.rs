//! The forward spherical mean transform, backprojection in direct and
//! reduced forms, the boundary-term closed form of filtered backprojections,
//! the inversion formula, and the Riesz potential on radial sources.

mod backproject;
mod closed_form;
mod forward;
mod invert;
mod phantom;
mod riesz;

pub use backproject::{
    backproject_fn, backproject_radial_reduced, backproject_zonal, R_EVAL_MAX, R_EVAL_MIN,
};
pub use closed_form::{closed_form_constant, closed_form_p_dn2};
pub use forward::{
    forward_radial, forward_sinogram, forward_sphere3, forward_sum3_closed, SinogramRadial,
};
pub use invert::{
    calibrate_inversion, calibrate_inversion_with, filtered_profile, fpr_invert_radial,
    InversionCalibration, RadialInverter, CALIBRATION_TOL, FD_STEP, R_MAX, R_MIN,
};
pub use phantom::{BallBump, Phantom, RadialPhantom, SumPhantom, BALL_MARGIN, POLY_BUMP_EXPONENT};
pub use riesz::riesz_radial;
