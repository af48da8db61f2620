//! The four subcommands.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use framescale::{
    apply_scaling, canonical_dual, codim2_scaling, cofactor_scaling, decide_scalable,
    intersection_scalability, Frame, ScalingResult, Tolerances, Verdict,
};

use crate::document::{format_f64, FrameDocument};
use crate::report::{
    dual_block, dual_scalability_checked, frame_block, nums, render_text, scalability_block,
    split_block, AnalysisReport, Num, ScalabilityBlock, TolBlock, TOOL, VERSION,
};
use crate::{CliError, CliResult, EXIT_NOT_SCALABLE, EXIT_OK};

pub fn read_document(path: &Path) -> CliResult<FrameDocument> {
    let label = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: label.clone(),
        source,
    })?;
    FrameDocument::parse(&text).map_err(|source| CliError::Parse { path: label, source })
}

fn frame_of(doc: &FrameDocument, tol: &Tolerances<f64>) -> CliResult<Frame<f64>> {
    Ok(Frame::with_rank_tol(&doc.vectors, tol.rank)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub scalability: bool,
    pub split: bool,
    pub dual: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            scalability: true,
            split: true,
            dual: true,
        }
    }
}

pub fn analyze(doc: &FrameDocument, opts: &AnalyzeOptions, tol: &Tolerances<f64>) -> CliResult<AnalysisReport> {
    let frame = frame_of(doc, tol)?;
    let scalability = if opts.scalability {
        let r = decide_scalable(&frame, true, tol)?;
        Some(scalability_block(&frame, &r, tol)?)
    } else {
        None
    };
    Ok(AnalysisReport {
        tool: TOOL,
        version: VERSION,
        name: doc.name.clone(),
        tolerances: TolBlock(*tol),
        frame: frame_block(&frame, tol)?,
        scalability,
        split: opts.split.then(|| split_block(&frame, tol)).transpose()?,
        dual: opts.dual.then(|| dual_block(&frame, tol)).transpose()?,
    })
}

#[derive(Serialize)]
struct BatchEntry {
    file: String,
    exit_code: i32,
    report: Option<AnalysisReport>,
    error: Option<String>,
}

/// Analyzes every regular file of `dir` in parallel. Entries are sorted by
/// file name, so output does not depend on scheduling. Returns the output
/// and the largest per-file exit code.
pub fn analyze_batch(dir: &Path, opts: &AnalyzeOptions, tol: &Tolerances<f64>, json: bool) -> CliResult<(String, i32)> {
    let io_err = |source| CliError::Io {
        path: dir.display().to_string(),
        source,
    };
    let mut files: Vec<PathBuf> = Vec::new();
    for entry in fs::read_dir(dir).map_err(io_err)? {
        let path = entry.map_err(io_err)?.path();
        if path.is_file() {
            files.push(path);
        }
    }
    files.sort();
    let entries: Vec<BatchEntry> = files
        .par_iter()
        .map(|path| {
            let file = path.file_name().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
            match read_document(path).and_then(|doc| analyze(&doc, opts, tol)) {
                Ok(report) => BatchEntry {
                    file,
                    exit_code: EXIT_OK,
                    report: Some(report),
                    error: None,
                },
                Err(e) => BatchEntry {
                    file,
                    exit_code: e.exit_code(),
                    report: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    let code = entries.iter().map(|e| e.exit_code).max().unwrap_or(EXIT_OK);
    let out = if json {
        let mut s = serde_json::to_string_pretty(&entries).expect("batch serializes");
        s.push('\n');
        s
    } else {
        let mut s = String::new();
        for e in &entries {
            let _ = writeln!(s, "== {} ==", e.file);
            match (&e.report, &e.error) {
                (Some(r), _) => s.push_str(&render_text(r)),
                (_, Some(msg)) => {
                    let _ = writeln!(s, "error: {msg}");
                }
                _ => {}
            }
        }
        s
    };
    Ok((out, code))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScaleMethod {
    /// The feasibility LP.
    #[default]
    Auto,
    Lp,
    Cofactor,
    Codim2,
    Split,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScaleOutcome {
    pub scalability: ScalabilityBlock,
    /// Weights making `{a_i x_i}` Parseval.
    pub parseval_a: Option<Vec<Num>>,
    pub exit_code: i32,
}

impl ScaleOutcome {
    pub fn render_text(&self) -> String {
        let b = &self.scalability;
        let mut out = String::new();
        let _ = writeln!(out, "verdict: {}", b.verdict);
        let _ = writeln!(out, "method: {}", b.method);
        if let Some(r) = &b.rejection {
            let _ = writeln!(out, "rejection: {r}");
        }
        if let Some(a) = &self.parseval_a {
            for (i, v) in a.iter().enumerate() {
                let _ = writeln!(out, "a[{i}] = {:.11e}", v.0);
            }
            let _ = writeln!(out, "verified: scaled frame is Parseval");
        }
        if !b.zero_indices.is_empty() {
            let _ = writeln!(out, "zero weights at: {:?}", b.zero_indices);
        }
        if let Some(y) = &b.certificate_y {
            let _ = writeln!(out, "certificate y (positive on every diagram vector):");
            for (i, v) in y.iter().enumerate() {
                let _ = writeln!(out, "y[{i}] = {:.11e}", v.0);
            }
        }
        if self.exit_code == EXIT_NOT_SCALABLE && b.certificate_y.is_none() {
            let _ = writeln!(out, "not strictly scalable");
        }
        out
    }
}

fn run_method(frame: &Frame<f64>, method: ScaleMethod, strict: bool, tol: &Tolerances<f64>) -> CliResult<ScalingResult<f64>> {
    Ok(match method {
        ScaleMethod::Auto | ScaleMethod::Lp => decide_scalable(frame, strict, tol)?,
        ScaleMethod::Cofactor => cofactor_scaling(frame, tol)?.1,
        ScaleMethod::Codim2 => codim2_scaling(frame, tol)?,
        ScaleMethod::Split => intersection_scalability(frame, tol)?,
    })
}

/// Scales with the chosen method. Exit code 1 when not scalable, or when
/// `strict` is set and only a scaling with zero weights exists.
pub fn scale(doc: &FrameDocument, method: ScaleMethod, strict: bool, tol: &Tolerances<f64>) -> CliResult<ScaleOutcome> {
    let frame = frame_of(doc, tol)?;
    let r = run_method(&frame, method, strict, tol)?;
    let scalability = scalability_block(&frame, &r, tol)?;
    let parseval_a = match (&r.scalars_a, scalability.scaled_bound) {
        (Some(a), Some(bound)) if r.is_scalable() => {
            let k = bound.0.sqrt();
            let a: Vec<f64> = a.iter().map(|v| v / k).collect();
            if !apply_scaling(&frame, &a)?.tightness(tol.tight).is_parseval(tol.tight) {
                return Err(CliError::Numeric("Parseval normalization failed re-verification".into()));
            }
            Some(nums(&a))
        }
        _ => None,
    };
    let ok = match r.verdict {
        Verdict::NotScalable => false,
        Verdict::Scalable => !strict,
        Verdict::StrictlyScalable => true,
    };
    Ok(ScaleOutcome {
        scalability,
        parseval_a,
        exit_code: if ok { EXIT_OK } else { EXIT_NOT_SCALABLE },
    })
}

/// The canonical dual as a frame document; with `check`, the dual
/// scalability result follows as comment lines.
pub fn dual(doc: &FrameDocument, check: bool, tol: &Tolerances<f64>, json: bool) -> CliResult<String> {
    let frame = frame_of(doc, tol)?;
    let pair = canonical_dual(&frame, tol)?;
    let name = Some(match &doc.name {
        Some(n) => format!("{n} canonical dual"),
        None => "canonical dual".to_string(),
    });
    let out = FrameDocument::from_frame(name, &pair.dual);
    let report = check.then(|| dual_scalability_checked(&frame, &pair.dual, tol)).transpose()?;
    if json {
        #[derive(Serialize)]
        struct DualJson<'a> {
            name: &'a Option<String>,
            n: usize,
            m: usize,
            vectors: Vec<Vec<Num>>,
            dual_residual: Num,
            scalable: Option<bool>,
            weights_c: Option<Vec<Num>>,
            scalars_a: Option<Vec<Num>>,
            certificate: Option<Vec<Num>>,
        }
        let j = DualJson {
            name: &out.name,
            n: out.n,
            m: out.m,
            vectors: out.vectors.iter().map(|v| nums(v)).collect(),
            dual_residual: Num(pair.residual()),
            scalable: report.as_ref().map(|r| r.feasible),
            weights_c: report.as_ref().and_then(|r| r.weights_c.as_deref().map(nums)),
            scalars_a: report.as_ref().and_then(|r| r.scalars_a.as_deref().map(nums)),
            certificate: report.as_ref().and_then(|r| r.certificate.as_deref().map(nums)),
        };
        let mut s = serde_json::to_string_pretty(&j).expect("dual serializes");
        s.push('\n');
        return Ok(s);
    }
    let mut text = out.to_text();
    if let Some(r) = report {
        let join = |v: &[f64]| v.iter().map(|x| format_f64(*x)).collect::<Vec<_>>().join(" ");
        let _ = writeln!(text, "# dual scalable: {}", if r.feasible { "yes" } else { "no" });
        if let Some(c) = &r.weights_c {
            let _ = writeln!(text, "# c: {}", join(c));
        }
        if let Some(y) = &r.certificate {
            let _ = writeln!(text, "# certificate: {}", join(y));
        }
    }
    Ok(text)
}
