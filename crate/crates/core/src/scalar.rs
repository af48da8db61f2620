//! Scalar abstraction and the tolerance set used throughout the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, NumAssign};

/// Real floating-point scalar: `f32` or `f64`.
pub trait Real: Float + NumAssign + Sum + Debug + Display + Send + Sync + 'static {
    /// Converts an `f64` literal into this scalar type.
    fn lit(x: f64) -> Self {
        <Self as num_traits::NumCast>::from(x).expect("literal representable in scalar type")
    }

    /// Lossy conversion to `f64` for reporting.
    fn to_f64_lossy(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }

    /// A tolerance stated for `f64` work, widened for lower-precision types.
    ///
    /// The widening factor is `sqrt(eps_T / eps_f64)`, which is exactly 1 for `f64`.
    fn tol(f64_value: f64) -> Self {
        let ratio = (Self::epsilon().to_f64_lossy() / f64::EPSILON).sqrt();
        Self::lit(f64_value * ratio)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Every numeric threshold the crate uses to turn floating-point values into verdicts.
///
/// `Tolerances::default()` gives the documented `f64` values, widened for `f32`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances<T> {
    /// Relative singular-value cutoff for rank decisions.
    pub rank: T,
    /// Relative asymmetry accepted by the symmetric eigensolver.
    pub symmetry: T,
    /// Relative tolerance of the tightness predicate.
    pub tight: T,
    /// Max-norm tolerance of `X·Yᵀ = I` in the duality predicate.
    pub dual: T,
    /// Residual bound `‖Ax − b‖∞ ≤ lp_residual·(1 + ‖b‖∞)` for LP witnesses.
    pub lp_residual: T,
    /// Phase-one objective above which a system is declared infeasible.
    pub lp_feasibility: T,
    /// Minimum margin (and minimum normalized weight) for strict scalability.
    pub strict_margin: T,
    /// Magnitude below which an entry counts as zero in sign tests.
    pub sign_zero: T,
    /// Allowed deviation of `‖x_i‖` from 1 for unit-norm preconditions.
    pub unit_norm: T,
    /// Negative slack clamped to zero in LP witnesses.
    pub clamp: T,
    /// Defining-equality tolerance for W/V membership.
    pub membership: T,
    /// Relative max-norm tolerance when comparing operators (S², (TᵀT)⁻¹, S).
    pub operator: T,
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        Self {
            rank: T::tol(1e-10),
            symmetry: T::tol(1e-10),
            tight: T::tol(1e-8),
            dual: T::tol(1e-8),
            lp_residual: T::tol(1e-8),
            lp_feasibility: T::tol(1e-9),
            strict_margin: T::tol(1e-9),
            sign_zero: T::tol(1e-12),
            unit_norm: T::tol(1e-9),
            clamp: T::tol(1e-12),
            membership: T::tol(1e-8),
            operator: T::tol(1e-7),
        }
    }
}

impl<T: Real> Tolerances<T> {
    /// Field names accepted by [`Tolerances::set`], in declaration order.
    pub const NAMES: [&'static str; 12] = [
        "rank",
        "symmetry",
        "tight",
        "dual",
        "lp_residual",
        "lp_feasibility",
        "strict_margin",
        "sign_zero",
        "unit_norm",
        "clamp",
        "membership",
        "operator",
    ];

    /// `(name, value)` pairs in declaration order.
    pub fn entries(&self) -> [(&'static str, T); 12] {
        [
            ("rank", self.rank),
            ("symmetry", self.symmetry),
            ("tight", self.tight),
            ("dual", self.dual),
            ("lp_residual", self.lp_residual),
            ("lp_feasibility", self.lp_feasibility),
            ("strict_margin", self.strict_margin),
            ("sign_zero", self.sign_zero),
            ("unit_norm", self.unit_norm),
            ("clamp", self.clamp),
            ("membership", self.membership),
            ("operator", self.operator),
        ]
    }

    /// Overrides one tolerance by name. Returns `false` for an unknown name.
    pub fn set(&mut self, name: &str, value: T) -> bool {
        let slot = match name {
            "rank" => &mut self.rank,
            "symmetry" => &mut self.symmetry,
            "tight" => &mut self.tight,
            "dual" => &mut self.dual,
            "lp_residual" => &mut self.lp_residual,
            "lp_feasibility" => &mut self.lp_feasibility,
            "strict_margin" => &mut self.strict_margin,
            "sign_zero" => &mut self.sign_zero,
            "unit_norm" => &mut self.unit_norm,
            "clamp" => &mut self.clamp,
            "membership" => &mut self.membership,
            "operator" => &mut self.operator,
            _ => return false,
        };
        *slot = value;
        true
    }
}
