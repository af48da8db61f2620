//! Scalability of finite frames in `R^n`.
//!
//! A frame `{x_i}` is *scalable* when nonnegative weights `a_i` make
//! `{a_i x_i}` a tight frame. This crate decides that question, produces the
//! weights or a certificate that none exist, and covers the related
//! questions for canonical and alternate dual frames.
//!
//! ```
//! use framescale::{decide_scalable, Frame, Tolerances, Verdict};
//!
//! let f = Frame::new(&[vec![2.0, 1.0], vec![1.0, 2.0], vec![1.0, 1.0]]).unwrap();
//! let r = decide_scalable(&f, true, &Tolerances::default()).unwrap();
//! assert_eq!(r.verdict, Verdict::NotScalable);
//! assert!(r.certificate_y.is_some());
//! ```
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the aliases at the
//! crate root fix `f64`.

pub mod constructions;
pub mod diagram;
pub mod duals;
pub mod error;
pub mod frame;
pub mod numerics;
pub mod scalability;
pub mod scalar;
pub mod split;

pub use diagram::{
    diagram_gram_sum, diagram_inner_identity_check, diagram_vector, full_diagram_matrix,
    reduced_diagram_matrix, DiagramKind, DiagramVector, ReducedDiagramMatrix,
};
pub use duals::{
    alternate_dual_from_scaling, canonical_dual, canonical_dual_scalable,
    check_transform_scaling, grammian_form_bound, grammian_form_check, DualKind, DualPair,
    DualScalingReport,
};
pub use error::{Error, Result};
pub use frame::{
    apply_scaling, frame_operator, frame_potential, is_dual, is_tight, Frame, FrameOperatorData,
    ScaledFrame, Tightness,
};
pub use numerics::Matrix;
pub use scalability::{
    codim2_pencil, codim2_scaling, cofactor_scaling, decide_scalable, hull_certificate_check,
    quick_sign_reject, Codim2Pencil, CofactorReport, Method, ScalingResult, SignClass,
    SignRejection, Verdict,
};
pub use scalar::{Real, Tolerances};
pub use split::{
    find_v_element, find_w_element, intersection_scalability, is_in_v, is_in_w,
    projection_basis_check, row_system, w_geometry_check, ConeMembership, MembershipStatus,
    RowSystem,
};

pub type FrameF64 = Frame<f64>;
pub type FrameF32 = Frame<f32>;
pub type MatrixF64 = Matrix<f64>;
pub type TolerancesF64 = Tolerances<f64>;
pub type ScalingResultF64 = ScalingResult<f64>;
