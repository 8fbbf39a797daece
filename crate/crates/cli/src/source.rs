use std::fs;
use std::path::Path;

use orthopoly::catalog::{Family, FamilyParams, MeasureFile, MeasureSource};
use orthopoly::measures::Measure;
use orthopoly::recurrence::RecurrenceTable;
use orthopoly::{Error, NormData, RecurrenceSystem};
use serde::Serialize;

use crate::{CliError, SourceArgs};

/// A validated input source with its recurrence and total mass.
pub struct Source {
    pub origin: MeasureSource,
    pub sys: RecurrenceSystem,
    pub mu0: f64,
}

/// Short description echoed in every document.
#[derive(Serialize)]
pub struct SourceInfo {
    pub kind: &'static str,
    pub label: String,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, field: &str) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("{field}: cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{field}: {}: {e}", path.display())))
}

/// Core errors caused by the input rather than by the numerics.
pub fn is_config_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Invalid(_)
            | Error::InvalidParameter { .. }
            | Error::DegreeOutOfRange { .. }
            | Error::UndefinedCoefficient { .. }
            | Error::QOutOfRange { .. }
            | Error::FavardViolation { .. }
    )
}

/// Maps a core error: input problems exit 2, everything else exits 1 with the
/// operation and tolerance named.
pub fn lift(op: &str, tol: f64) -> impl Fn(Error) -> CliError + '_ {
    move |e| {
        if is_config_error(&e) {
            CliError::Config(format!("{op}: {e}"))
        } else {
            CliError::Numeric(format!("{op} (tolerance {tol:e}): {e}"))
        }
    }
}

impl Source {
    pub fn resolve(args: &SourceArgs) -> Result<Self, CliError> {
        let given = [args.family.is_some(), args.recurrence.is_some(), args.measure.is_some()];
        match given.iter().filter(|g| **g).count() {
            0 => return Err(CliError::Config("source: one of --family, --recurrence, --measure is required".into())),
            1 => {}
            _ => return Err(CliError::Config("source: --family, --recurrence and --measure are mutually exclusive".into())),
        }
        let params = FamilyParams {
            alpha: args.alpha,
            beta: args.beta,
            lambda: args.lambda,
            a: args.a,
            p: args.p,
            c: args.c,
            big_n: args.big_n,
        };
        if args.family.is_none() && params != FamilyParams::default() {
            return Err(CliError::Config("family parameters: only valid with --family".into()));
        }
        if args.recurrence.is_none() && args.mu0.is_some() {
            return Err(CliError::Config("mu0: only valid with --recurrence".into()));
        }
        let origin = if let Some(name) = &args.family {
            let spec = Family::from_name(name, &params).map_err(|e| CliError::Config(format!("family: {e}")))?;
            MeasureSource::Family { spec }
        } else if let Some(path) = &args.recurrence {
            let table: RecurrenceTable = read_json(path, "recurrence")?;
            if table.schema != 1 {
                return Err(CliError::Config(format!("recurrence: unsupported schema {}", table.schema)));
            }
            let mu0 = args.mu0.unwrap_or(1.0);
            if !(mu0 > 0.0 && mu0.is_finite()) {
                return Err(CliError::Config(format!("mu0: must be positive, got {mu0}")));
            }
            MeasureSource::Recurrence { table, mu0 }
        } else {
            let path = args.measure.as_ref().expect("one source is present");
            let file: MeasureFile = read_json(path, "measure")?;
            file.check_schema().map_err(|e| CliError::Config(format!("measure: {e}")))?;
            file.source
        };
        let (sys, mu0) = origin.system().map_err(|e| CliError::Config(format!("source: {e}")))?;
        Ok(Self { origin, sys, mu0 })
    }

    pub fn family(&self) -> Option<&Family> {
        match &self.origin {
            MeasureSource::Family { spec } => Some(spec),
            _ => None,
        }
    }

    pub fn info(&self) -> SourceInfo {
        let (kind, label) = match &self.origin {
            MeasureSource::Family { spec } => ("family", spec.name().to_string()),
            MeasureSource::Points { nodes, .. } => ("points", format!("{} mass points", nodes.len())),
            MeasureSource::Recurrence { table, .. } => ("recurrence", table.label.clone().unwrap_or_else(|| "recurrence".into())),
            MeasureSource::StieltjesWigert => ("stieltjes_wigert", "stieltjes_wigert".into()),
        };
        SourceInfo { kind, label }
    }

    pub fn measure(&self) -> Result<Option<Measure>, Error> {
        self.origin.measure()
    }

    pub fn norms(&self, upto: usize) -> Result<NormData, Error> {
        self.sys.norms_for_mass(self.mu0, upto)
    }

    /// Largest usable degree, if the system is finite.
    pub fn max_degree(&self) -> Option<usize> {
        let fam = self.family().and_then(Family::max_degree);
        match (fam, self.sys.len()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn check_degree(&self, field: &str, n: usize) -> Result<(), CliError> {
        match self.max_degree() {
            Some(max) if n > max => Err(CliError::Config(format!("{field}: degree {n} exceeds the largest available degree {max}"))),
            _ => Ok(()),
        }
    }

    /// Orthonormal companion of the system.
    pub fn orthonormal(&self) -> RecurrenceSystem {
        let p0 = self.sys.p0();
        self.sys.to_orthonormal(p0 * p0 * self.mu0)
    }

    /// Default sample points inside the support.
    pub fn samples(&self) -> Vec<f64> {
        if let Some(Family::Discrete(_)) = self.family() {
            let end = self.max_degree().unwrap_or(3).min(3);
            return (0..=end).map(|k| k as f64).collect();
        }
        let (lo, hi) = match self.measure() {
            Ok(Some(m)) => m.support_hull(),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        };
        match (lo.is_finite(), hi.is_finite()) {
            (true, true) => [0.1, 0.37, 0.5, 0.81].iter().map(|t| lo + (hi - lo) * t).collect(),
            (true, false) => [0.2, 0.7, 2.1, 3.4].iter().map(|t| lo + t).collect(),
            (false, true) => [0.2, 0.7, 2.1, 3.4].iter().map(|t| hi - t).collect(),
            (false, false) => vec![-1.3, 0.2, 0.7, 2.1],
        }
    }
}
