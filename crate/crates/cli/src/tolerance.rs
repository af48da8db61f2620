//! `--tol` and `FRAMESCALE_TOL` parsing.
//!
//! An override list is a comma-separated list of `name=value` items. A bare number
//! sets `tight`, the tolerance most verdicts hinge on.

use framescale::Tolerances;

use crate::{CliError, CliResult};

pub const ENV_VAR: &str = "FRAMESCALE_TOL";

pub fn apply_tolerance_overrides(list: &str, tol: &mut Tolerances<f64>) -> CliResult<()> {
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = match item.split_once('=') {
            Some((k, v)) => (k.trim(), v.trim()),
            None => ("tight", item),
        };
        let v: f64 = value
            .parse()
            .map_err(|_| CliError::BadParams(format!("tolerance `{name}`: `{value}` is not a number")))?;
        if !(v.is_finite() && v > 0.0) {
            return Err(CliError::BadParams(format!(
                "tolerance `{name}` must be positive and finite, got {value}"
            )));
        }
        if !tol.set(name, v) {
            return Err(CliError::BadParams(format!(
                "unknown tolerance `{name}` (known: {})",
                Tolerances::<f64>::NAMES.join(", ")
            )));
        }
    }
    Ok(())
}

/// Defaults, then the environment value, then each `--tol` in order.
pub fn resolve_tolerances(env: Option<&str>, flags: &[String]) -> CliResult<Tolerances<f64>> {
    let mut tol = Tolerances::default();
    if let Some(list) = env {
        apply_tolerance_overrides(list, &mut tol)
            .map_err(|e| CliError::BadParams(format!("{ENV_VAR}: {e}")))?;
    }
    for list in flags {
        apply_tolerance_overrides(list, &mut tol)?;
    }
    Ok(tol)
}
