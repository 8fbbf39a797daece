//! Named families behind one type, and the versioned measure-file schema.
//!
//! A [`Family`] serializes with a `family` tag, for example
//! `{"family": "jacobi", "alpha": 0.5, "beta": 1.5}` or
//! `{"family": "krawtchouk", "p": 0.3, "N": 10}`.

use serde::{Deserialize, Serialize};

use crate::classical::FamilySpec;
use crate::discrete::DiscreteFamily;
use crate::error::{Error, Result};
use crate::measures::Measure;
use crate::moment::stieltjes_wigert_monic;
use crate::numeric::special::ln_gamma;
use crate::recurrence::{NormData, RecurrenceSystem, RecurrenceTable};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Family {
    Classical(FamilySpec),
    Discrete(DiscreteFamily),
}

/// Parameters collected from command-line style `name + flags` input.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FamilyParams {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub lambda: Option<f64>,
    pub a: Option<f64>,
    pub p: Option<f64>,
    pub c: Option<f64>,
    pub big_n: Option<usize>,
}

/// Names accepted by [`Family::from_name`].
pub const FAMILY_NAMES: [&str; 11] = [
    "jacobi",
    "laguerre",
    "hermite",
    "gegenbauer",
    "legendre",
    "chebyshev_t",
    "chebyshev_u",
    "krawtchouk",
    "hahn",
    "meixner",
    "charlier",
];

fn need<T>(v: Option<T>, field: &str, family: &str) -> Result<T> {
    v.ok_or_else(|| Error::Invalid(format!("family {family} needs --{field}")))
}

impl Family {
    pub fn from_name(name: &str, p: &FamilyParams) -> Result<Self> {
        let f = match name {
            "jacobi" => Family::Classical(FamilySpec::Jacobi {
                alpha: need(p.alpha, "alpha", name)?,
                beta: need(p.beta, "beta", name)?,
            }),
            "laguerre" => Family::Classical(FamilySpec::Laguerre {
                alpha: p.alpha.unwrap_or(0.0),
            }),
            "hermite" => Family::Classical(FamilySpec::Hermite),
            "gegenbauer" => Family::Classical(FamilySpec::Gegenbauer {
                lambda: need(p.lambda, "lambda", name)?,
            }),
            "legendre" => Family::Classical(FamilySpec::Legendre),
            "chebyshev_t" => Family::Classical(FamilySpec::ChebyshevT),
            "chebyshev_u" => Family::Classical(FamilySpec::ChebyshevU),
            "krawtchouk" => Family::Discrete(DiscreteFamily::Krawtchouk {
                p: need(p.p, "p", name)?,
                big_n: need(p.big_n, "big-n", name)?,
            }),
            "hahn" => Family::Discrete(DiscreteFamily::Hahn {
                alpha: need(p.alpha, "alpha", name)?,
                beta: need(p.beta, "beta", name)?,
                big_n: need(p.big_n, "big-n", name)?,
            }),
            "meixner" => Family::Discrete(DiscreteFamily::Meixner {
                beta: need(p.beta, "beta", name)?,
                c: need(p.c, "c", name)?,
            }),
            "charlier" => Family::Discrete(DiscreteFamily::Charlier {
                a: need(p.a, "a", name)?,
            }),
            other => {
                return Err(Error::Invalid(format!(
                    "unknown family {other}; expected one of {}",
                    FAMILY_NAMES.join(", ")
                )))
            }
        };
        f.validate()?;
        Ok(f)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Classical(f) => f.name(),
            Family::Discrete(f) => f.name(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Family::Classical(f) => f.validate(),
            Family::Discrete(f) => f.validate(),
        }
    }

    pub fn recurrence(&self) -> Result<RecurrenceSystem> {
        match self {
            Family::Classical(f) => {
                f.validate()?;
                Ok(f.recurrence())
            }
            Family::Discrete(f) => f.recurrence(),
        }
    }

    pub fn measure(&self) -> Result<Measure> {
        match self {
            Family::Classical(f) => f.measure(),
            Family::Discrete(f) => f.measure(),
        }
    }

    /// `h_n` against [`Family::measure`].
    pub fn norm(&self, n: usize) -> Result<f64> {
        match self {
            Family::Classical(f) => Ok(f.norm(n)),
            Family::Discrete(f) => f.norm(n),
        }
    }

    pub fn mu0(&self) -> Result<f64> {
        self.norm(0)
    }

    /// `h_0..=h_upto` and `k_n` from the recurrence, anchored at the closed-form `mu_0`.
    pub fn norms(&self, upto: usize) -> Result<NormData> {
        self.recurrence()?.norms_for_mass(self.mu0()?, upto)
    }

    /// `p_n(x)` from the explicit series.
    pub fn eval(&self, n: usize, x: f64) -> Result<f64> {
        match self {
            Family::Classical(f) => f.eval(n, x),
            Family::Discrete(f) => f.eval(n, x),
        }
    }

    /// Convex hull of the support.
    pub fn support(&self) -> (f64, f64) {
        match self {
            Family::Classical(f) => f.support(),
            Family::Discrete(f) => (0.0, f.support_end().map_or(f64::INFINITY, |n| n as f64)),
        }
    }

    /// Largest degree for which the family is defined.
    pub fn max_degree(&self) -> Option<usize> {
        match self {
            Family::Classical(_) => None,
            Family::Discrete(f) => f.support_end(),
        }
    }

    /// `log mu_2n` in closed form where one is known.
    pub fn log_even_moment(&self, n: usize) -> Option<f64> {
        let n = n as f64;
        match self {
            Family::Classical(FamilySpec::Hermite) => Some(ln_gamma(n + 0.5)),
            Family::Classical(FamilySpec::Laguerre { alpha }) => Some(ln_gamma(2.0 * n + alpha + 1.0)),
            _ => None,
        }
    }
}

/// Source of an orthogonality measure in a measure file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeasureSource {
    Family { spec: Family },
    /// Finitely many mass points.
    Points { nodes: Vec<f64>, weights: Vec<f64> },
    /// A recurrence with total mass `mu0`.
    Recurrence { table: RecurrenceTable, mu0: f64 },
    /// The moments `e^(k(k+2)/4)`, an indeterminate problem.
    StieltjesWigert,
}

/// `{"schema": 1, "kind": ..., ...}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureFile {
    pub schema: u32,
    #[serde(flatten)]
    pub source: MeasureSource,
}

impl MeasureFile {
    pub fn new(source: MeasureSource) -> Self {
        Self { schema: 1, source }
    }

    pub fn check_schema(&self) -> Result<()> {
        if self.schema != 1 {
            return Err(Error::Invalid(format!("unsupported measure schema {}", self.schema)));
        }
        Ok(())
    }
}

impl MeasureSource {
    /// The measure, when it is available as an integrable object.
    pub fn measure(&self) -> Result<Option<Measure>> {
        Ok(match self {
            MeasureSource::Family { spec } => Some(spec.measure()?),
            MeasureSource::Points { nodes, weights } => Some(Measure::discrete_finite(nodes.clone(), weights.clone())?),
            _ => None,
        })
    }

    /// The recurrence and its total mass. For mass points the monic
    /// recurrence comes from the Stieltjes procedure.
    pub fn system(&self) -> Result<(RecurrenceSystem, f64)> {
        match self {
            MeasureSource::Family { spec } => Ok((spec.recurrence()?, spec.mu0()?)),
            MeasureSource::Points { nodes, .. } => {
                let m = self.measure()?.expect("points define a measure");
                let (sys, norms) = m.recurrence(nodes.len().saturating_sub(1))?;
                Ok((sys, norms.h[0]))
            }
            MeasureSource::Recurrence { table, mu0 } => Ok((RecurrenceSystem::from_table(table)?, *mu0)),
            MeasureSource::StieltjesWigert => Ok((stieltjes_wigert_monic(), 1.0)),
        }
    }

    pub fn log_even_moment(&self, n: usize) -> Option<f64> {
        match self {
            MeasureSource::Family { spec } => spec.log_even_moment(n),
            MeasureSource::StieltjesWigert => Some(crate::moment::stieltjes_wigert_log_moment(2 * n)),
            _ => None,
        }
    }
}
