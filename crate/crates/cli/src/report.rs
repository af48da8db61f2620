//! The analysis report and its JSON and text renderings.
//!
//! Numbers go into JSON as raw `{:.16e}` literals (17 significant digits);
//! non-finite values become `null`. Field names and order are fixed.

use std::fmt::Write as _;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::value::RawValue;

use framescale::{
    apply_scaling, canonical_dual, canonical_dual_scalable, find_v_element, find_w_element,
    frame_potential, hull_certificate_check, intersection_scalability, is_in_v, is_in_w, is_tight,
    ConeMembership, DualScalingReport, Frame, Method, ScalingResult, SignRejection, Tolerances,
    Verdict,
};

use crate::document::format_f64;
use crate::{CliError, CliResult};

pub const TOOL: &str = "framescale";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// An `f64` serialized with 17 significant digits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let raw = RawValue::from_string(format_f64(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

pub fn nums(v: &[f64]) -> Vec<Num> {
    v.iter().copied().map(Num).collect()
}

fn opt_nums(v: &Option<Vec<f64>>) -> Option<Vec<Num>> {
    v.as_deref().map(nums)
}

/// Tolerances in declaration order.
#[derive(Debug, Clone, PartialEq)]
pub struct TolBlock(pub Tolerances<f64>);

impl Serialize for TolBlock {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries = self.0.entries();
        let mut map = s.serialize_map(Some(entries.len()))?;
        for (k, v) in entries {
            map.serialize_entry(k, &Num(v))?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FrameBlock {
    pub n: usize,
    pub m: usize,
    pub lower_bound: Num,
    pub upper_bound: Num,
    pub tight: bool,
    pub tight_bound: Option<Num>,
    pub potential: Num,
    pub unit_norm: bool,
    pub operator: Vec<Vec<Num>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalabilityBlock {
    pub verdict: &'static str,
    pub method: &'static str,
    pub rejection: Option<String>,
    /// `c = a²`.
    pub weights_c: Option<Vec<Num>>,
    pub scalars_a: Option<Vec<Num>>,
    /// Frame bound of `{a_i x_i}`.
    pub scaled_bound: Option<Num>,
    pub zero_indices: Vec<usize>,
    pub certificate_y: Option<Vec<Num>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MembershipBlock {
    pub status: &'static str,
    pub a: Option<Vec<Num>>,
    pub deviation: Num,
    pub certificate: Option<Vec<Num>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SplitBlock {
    pub w: MembershipBlock,
    pub v: MembershipBlock,
    pub intersection: ScalabilityBlock,
}

#[derive(Debug, Clone, Serialize)]
pub struct DualBlock {
    /// Canonical dual vectors `S⁻¹x_i`, one per row.
    pub canonical_dual: Vec<Vec<Num>>,
    pub dual_residual: Num,
    pub scalable: bool,
    pub strictly_scalable: Option<bool>,
    /// `c` with `Σ c_i x_i x_iᵀ = S²`.
    pub weights_c: Option<Vec<Num>>,
    pub scalars_a: Option<Vec<Num>>,
    pub residual: Num,
    pub certificate: Option<Vec<Num>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub name: Option<String>,
    pub tolerances: TolBlock,
    pub frame: FrameBlock,
    pub scalability: Option<ScalabilityBlock>,
    pub split: Option<SplitBlock>,
    pub dual: Option<DualBlock>,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::NotScalable => "not_scalable",
        Verdict::Scalable => "scalable",
        Verdict::StrictlyScalable => "strictly_scalable",
    }
}

pub fn method_name(m: Method) -> &'static str {
    match m {
        Method::Feasibility => "lp",
        Method::Cofactor => "cofactor",
        Method::Codim2 => "codim2",
        Method::SignReject => "sign_reject",
        Method::Intersection => "split",
    }
}

fn rejection_name(r: SignRejection) -> String {
    match r {
        SignRejection::Row(i) => format!("one_signed_row:{i}"),
        SignRejection::IndependentColumns => "independent_columns".to_string(),
    }
}

fn unverified(what: &str) -> CliError {
    CliError::Numeric(format!("{what} failed re-verification"))
}

pub fn frame_block(frame: &Frame<f64>, tol: &Tolerances<f64>) -> CliResult<FrameBlock> {
    let op = frame.operator()?;
    let tight = is_tight(frame, tol.tight);
    Ok(FrameBlock {
        n: frame.n(),
        m: frame.m(),
        lower_bound: Num(op.lower_bound),
        upper_bound: Num(op.upper_bound),
        tight: tight.is_tight(),
        tight_bound: tight.bound().map(Num),
        potential: Num(frame_potential(frame)),
        unit_norm: frame.is_unit_norm(tol.unit_norm),
        operator: op.operator.to_rows().iter().map(|r| nums(r)).collect(),
    })
}

/// Re-checks a scaling result and converts it. Scalable results must scale
/// to a tight frame; non-scalable ones must carry a valid hull certificate.
pub fn scalability_block(
    frame: &Frame<f64>,
    r: &ScalingResult<f64>,
    tol: &Tolerances<f64>,
) -> CliResult<ScalabilityBlock> {
    let mut scaled_bound = None;
    match (&r.scalars_a, &r.certificate_y) {
        (Some(a), _) if r.is_scalable() => {
            let t = apply_scaling(frame, a)?.tightness(tol.tight);
            scaled_bound = Some(t.bound().ok_or_else(|| unverified("scaling weights"))?);
        }
        (_, Some(y)) if !r.is_scalable() => {
            if !hull_certificate_check(frame, y)? {
                return Err(unverified("non-scalability certificate"));
            }
        }
        _ => return Err(CliError::Numeric("scaling result carries no witness".into())),
    }
    Ok(ScalabilityBlock {
        verdict: verdict_name(r.verdict),
        method: method_name(r.method),
        rejection: r.rejection.map(rejection_name),
        weights_c: opt_nums(&r.weights_c),
        scalars_a: opt_nums(&r.scalars_a),
        scaled_bound: scaled_bound.map(Num),
        zero_indices: r.zero_indices.clone(),
        certificate_y: opt_nums(&r.certificate_y),
    })
}

fn membership_block<F>(m: &ConeMembership<f64>, recheck: F) -> CliResult<MembershipBlock>
where
    F: FnOnce(&[f64]) -> CliResult<bool>,
{
    if let (true, Some(a)) = (m.is_member(), &m.a) {
        if !recheck(a)? {
            return Err(unverified("cone element"));
        }
    }
    Ok(MembershipBlock {
        status: if m.is_member() { "nonempty" } else { "empty" },
        a: if m.is_member() { opt_nums(&m.a) } else { None },
        deviation: Num(m.deviation),
        certificate: opt_nums(&m.certificate),
    })
}

pub fn split_block(frame: &Frame<f64>, tol: &Tolerances<f64>) -> CliResult<SplitBlock> {
    let w = find_w_element(frame, tol)?;
    let w = membership_block(&w, |a| Ok(is_in_w(frame, a, tol)?.is_member()))?;
    let v = find_v_element(frame, true, tol)?;
    let v = membership_block(&v, |a| Ok(is_in_v(frame, a, tol)?.is_member()))?;
    let r = intersection_scalability(frame, tol)?;
    let intersection = scalability_block(frame, &r, tol)?;
    if let Some(b) = intersection.scaled_bound {
        if (b.0 - 1.0).abs() > tol.tight {
            return Err(unverified("intersection weights (not Parseval)"));
        }
    }
    Ok(SplitBlock { w, v, intersection })
}

pub fn dual_scalability_checked(
    frame: &Frame<f64>,
    dual: &Frame<f64>,
    tol: &Tolerances<f64>,
) -> CliResult<DualScalingReport<f64>> {
    let r = canonical_dual_scalable(frame, true, tol)?;
    if let (true, Some(a)) = (r.feasible, &r.scalars_a) {
        let t = apply_scaling(dual, a)?.tightness(tol.tight);
        if !t.is_parseval(tol.tight) {
            return Err(unverified("dual scaling weights (not Parseval)"));
        }
    }
    Ok(r)
}

pub fn dual_block(frame: &Frame<f64>, tol: &Tolerances<f64>) -> CliResult<DualBlock> {
    let pair = canonical_dual(frame, tol)?;
    let r = dual_scalability_checked(frame, &pair.dual, tol)?;
    Ok(DualBlock {
        canonical_dual: pair.dual.vectors().iter().map(|v| nums(v)).collect(),
        dual_residual: Num(pair.residual()),
        scalable: r.feasible,
        strictly_scalable: r.strictly_feasible,
        weights_c: opt_nums(&r.weights_c),
        scalars_a: opt_nums(&r.scalars_a),
        residual: Num(r.residual),
        certificate: opt_nums(&r.certificate),
    })
}

fn list(v: &[Num]) -> String {
    let s: Vec<String> = v.iter().map(|x| x.0.to_string()).collect();
    format!("[{}]", s.join(", "))
}

fn render_scalability(out: &mut String, pad: &str, b: &ScalabilityBlock) {
    let _ = writeln!(out, "{pad}verdict: {} (method {})", b.verdict, b.method);
    if let Some(r) = &b.rejection {
        let _ = writeln!(out, "{pad}rejection: {r}");
    }
    if let Some(a) = &b.scalars_a {
        let _ = writeln!(out, "{pad}a: {}", list(a));
    }
    if let Some(bound) = b.scaled_bound {
        let _ = writeln!(out, "{pad}scaled frame bound: {}", bound.0);
    }
    if !b.zero_indices.is_empty() {
        let _ = writeln!(out, "{pad}zero weights at: {:?}", b.zero_indices);
    }
    if let Some(y) = &b.certificate_y {
        let _ = writeln!(out, "{pad}certificate y: {}", list(y));
    }
}

fn render_membership(out: &mut String, label: &str, b: &MembershipBlock) {
    let _ = write!(out, "  {label}: {}", b.status);
    if let Some(a) = &b.a {
        let _ = write!(out, " {}", list(a));
    }
    let _ = writeln!(out);
}

pub fn render_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", r.tool, r.version);
    if let Some(name) = &r.name {
        let _ = writeln!(out, "name: {name}");
    }
    let f = &r.frame;
    let _ = writeln!(out, "frame: n = {}, m = {}", f.n, f.m);
    let _ = writeln!(out, "  bounds: A = {}, B = {}", f.lower_bound.0, f.upper_bound.0);
    match f.tight_bound {
        Some(b) => {
            let _ = writeln!(out, "  tight: yes, bound {}", b.0);
        }
        None => {
            let _ = writeln!(out, "  tight: no");
        }
    }
    let _ = writeln!(out, "  potential: {}", f.potential.0);
    if let Some(b) = &r.scalability {
        let _ = writeln!(out, "scalability:");
        render_scalability(&mut out, "  ", b);
    }
    if let Some(s) = &r.split {
        let _ = writeln!(out, "split:");
        render_membership(&mut out, "W", &s.w);
        render_membership(&mut out, "V", &s.v);
        let _ = writeln!(out, "  intersection:");
        render_scalability(&mut out, "    ", &s.intersection);
    }
    if let Some(d) = &r.dual {
        let _ = writeln!(out, "dual:");
        for v in &d.canonical_dual {
            let _ = writeln!(out, "  {}", list(v));
        }
        let _ = writeln!(out, "  canonical dual scalable: {}", if d.scalable { "yes" } else { "no" });
        if let Some(c) = &d.weights_c {
            let _ = writeln!(out, "  c: {}", list(c));
        }
    }
    let tols: Vec<String> = r.tolerances.0.entries().iter().map(|(k, v)| format!("{k}={v:e}")).collect();
    let _ = writeln!(out, "tolerances: {}", tols.join(", "));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_keep_seventeen_digits() {
        let s = serde_json::to_string(&nums(&[0.1, -1.0 / 3.0, f64::NAN])).unwrap();
        assert_eq!(s, "[1.0000000000000001e-1,-3.3333333333333331e-1,null]");
        for x in [0.1, -1.0 / 3.0, 1e-300, f64::MAX] {
            assert_eq!(format_f64(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }

    #[test]
    fn tolerances_keep_order() {
        let s = serde_json::to_string(&TolBlock(Tolerances::default())).unwrap();
        assert!(s.starts_with("{\"rank\":"));
        assert!(s.ends_with("\"operator\":9.9999999999999995e-8}"));
    }
}
