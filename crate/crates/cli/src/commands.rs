use num_complex::Complex64;
use orthopoly::catalog::Family;
use orthopoly::classical::{
    limit_schedule, ode_residual, quadratic_transform_check, shift_check, FamilySpec, LimitRelation, LimitSchedule,
    ShiftDirection,
};
use orthopoly::discrete::{hahn_limit_schedule, DiscreteFamily};
use orthopoly::kernel::cd_kernel;
use orthopoly::moment::{
    continued_fraction_bottom_up, markov_transform, rho, support_bound_criteria, true_interval,
    MomentDiagnostics, Verdict,
};
use orthopoly::par::map_slice;
use orthopoly::quadrature::{gauss_rule, zero_residual, zeros};
use orthopoly::numeric::DoubleDouble;
use orthopoly::Execution;
use serde::Serialize;
use serde_json::{json, Value};

use crate::source::{lift, Source, SourceInfo};
use crate::{Cli, CliError, Command, FormArg, Identity, Method, DEFAULT_TOL};

/// CSV view of a document.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

pub struct Document {
    pub json: Value,
    pub csv: Option<Table>,
}

/// A document plus an optional reason to exit 1 after emitting it.
pub struct Outcome {
    pub document: Document,
    pub failure: Option<String>,
}

fn ok(json: Value, csv: Option<Table>) -> Outcome {
    Outcome {
        document: Document { json, csv },
        failure: None,
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("documents serialize")
}

/// Non-finite numbers as strings, since JSON has no literal for them.
fn number(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x.is_nan() {
        json!("nan")
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

/// Shortest round-trip digits, identical to the JSON rendering.
fn cell(x: f64) -> String {
    ryu::Buffer::new().format(x).to_string()
}

pub fn tolerance(cli: &Cli) -> Result<f64, CliError> {
    let tol = cli.tol.unwrap_or(DEFAULT_TOL);
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::Config(format!("tol: must be positive and finite, got {tol}")));
    }
    Ok(tol)
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let tol = tolerance(cli)?;
    match &cli.command {
        Command::Tabulate {
            source,
            n_min,
            n_max,
            grid,
            method,
            verify,
        } => tabulate(&Source::resolve(source)?, *n_min, *n_max, grid, *method, *verify, tol),
        Command::Quadrature { source, n } => quadrature(&Source::resolve(source)?, *n, tol),
        Command::Zeros { source, n } => zeros_cmd(&Source::resolve(source)?, *n, tol),
        Command::Recurrence { source, n_max, form } => recurrence(&Source::resolve(source)?, *n_max, *form, tol),
        Command::Check { source, identity, n, x } => check(&Source::resolve(source)?, *identity, *n, x.as_deref(), tol),
        Command::Diagnose {
            source,
            carleman,
            carleman_n,
            rho,
            rho_n,
            true_interval,
            support,
            markov,
        } => {
            let req = DiagnoseRequest {
                carleman: carleman.then_some(*carleman_n),
                rho: rho.as_deref().map(|z| parse_complex("rho", z)).transpose()?,
                rho_n: *rho_n,
                true_interval: *true_interval,
                support: *support,
                markov: markov.as_deref().map(|z| parse_complex("markov", z)).transpose()?,
            };
            diagnose(&Source::resolve(source)?, &req, tol)
        }
    }
}

/// `a:b:steps` with `steps` intervals, or a comma list.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = |why: &str| CliError::Config(format!("grid: {why} in {spec:?}"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad("not a number"));
    let xs = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(bad("expected a:b:steps"));
        }
        let (a, b) = (num(parts[0])?, num(parts[1])?);
        let steps: usize = parts[2].trim().parse().map_err(|_| bad("steps must be a positive integer"))?;
        if steps == 0 {
            return Err(bad("steps must be a positive integer"));
        }
        (0..=steps)
            .map(|i| if i == steps { b } else { a + (b - a) * i as f64 / steps as f64 })
            .collect()
    } else {
        spec.split(',').map(num).collect::<Result<Vec<_>, _>>()?
    };
    if xs.is_empty() || xs.iter().any(|x| !x.is_finite()) {
        return Err(bad("points must be finite"));
    }
    Ok(xs)
}

fn parse_complex(field: &str, s: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::Config(format!("{field}: expected re or re,im, got {s:?}"));
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [re] => Ok(Complex64::new(re, 0.0)),
        [re, im] => Ok(Complex64::new(re, im)),
        _ => Err(bad()),
    }
}

#[derive(Serialize)]
struct TabulateDoc {
    command: &'static str,
    source: SourceInfo,
    method: &'static str,
    n_min: usize,
    n_max: usize,
    grid: Vec<f64>,
    /// `values[i][j] = p_{n_min + i}(grid[j])`.
    values: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_verify_gap: Option<f64>,
    tolerance: f64,
}

fn tabulate(src: &Source, n_min: usize, n_max: usize, grid: &str, method: Method, verify: bool, tol: f64) -> Result<Outcome, CliError> {
    if n_min > n_max {
        return Err(CliError::Config(format!("n-min: {n_min} exceeds n-max {n_max}")));
    }
    src.check_degree("n-max", n_max)?;
    let xs = parse_grid(grid)?;
    let family = src.family().copied();
    if (method == Method::Series || verify) && family.is_none() {
        return Err(CliError::Config("method: series evaluation needs --family".into()));
    }
    let by_recurrence = |x: &f64| {
        src.sys
            .eval_all(n_max, DoubleDouble::new(*x))
            .map(|v| v[n_min..].iter().map(|p| p.to_f64()).collect::<Vec<_>>())
    };
    let by_series = |x: &f64| -> orthopoly::Result<Vec<f64>> {
        let f = family.expect("checked above");
        (n_min..=n_max).map(|n| f.eval(n, *x)).collect()
    };
    // one column per grid point
    let (primary, other): (Vec<_>, Option<Vec<_>>) = match method {
        Method::Recurrence => (
            map_slice(Execution::Parallel, &xs, by_recurrence),
            verify.then(|| map_slice(Execution::Parallel, &xs, by_series)),
        ),
        Method::Series => (
            map_slice(Execution::Parallel, &xs, by_series),
            verify.then(|| map_slice(Execution::Parallel, &xs, by_recurrence)),
        ),
    };
    let op = "tabulate";
    let cols = primary.into_iter().collect::<Result<Vec<_>, _>>().map_err(lift(op, tol))?;
    let gap = match other {
        Some(o) => {
            let o = o.into_iter().collect::<Result<Vec<_>, _>>().map_err(lift(op, tol))?;
            let g = cols
                .iter()
                .flatten()
                .zip(o.iter().flatten())
                .map(|(a, b)| (a - b).abs() / b.abs().max(1.0))
                .fold(0.0, f64::max);
            Some(g)
        }
        None => None,
    };
    let values: Vec<Vec<f64>> = (0..=n_max - n_min).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let mut header = vec!["n".to_string()];
    header.extend(xs.iter().map(|x| cell(*x)));
    let rows = values
        .iter()
        .enumerate()
        .map(|(i, row)| std::iter::once((n_min + i).to_string()).chain(row.iter().map(|v| cell(*v))).collect())
        .collect();
    let doc = TabulateDoc {
        command: "tabulate",
        source: src.info(),
        method: match method {
            Method::Recurrence => "recurrence",
            Method::Series => "series",
        },
        n_min,
        n_max,
        grid: xs,
        values,
        max_verify_gap: gap,
        tolerance: tol,
    };
    let mut out = ok(to_value(&doc), Some(Table { header, rows }));
    if let Some(g) = gap.filter(|g| !(*g <= tol)) {
        out.failure = Some(format!("tabulate --verify: recurrence and series differ by {g:e}, tolerance {tol:e}"));
    }
    Ok(out)
}

#[derive(Serialize)]
struct QuadratureDoc {
    command: &'static str,
    source: SourceInfo,
    n: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    exactness_degree: usize,
    mu0: f64,
    /// `|sum w - mu0| / mu0`.
    weight_sum_error: f64,
    tolerance: f64,
}

fn quadrature(src: &Source, n: usize, tol: f64) -> Result<Outcome, CliError> {
    if n == 0 {
        return Err(CliError::Config("n: a rule needs at least one node".into()));
    }
    src.check_degree("n", n)?;
    let op = "quadrature";
    let norms = src.norms(n - 1).map_err(lift(op, tol))?;
    let rule = gauss_rule(&src.sys, &norms, n).map_err(lift(op, tol))?;
    let sum = orthopoly::numeric::sum_compensated(rule.weights.iter().copied());
    let err = (sum - rule.mu0).abs() / rule.mu0;
    let rows = (0..rule.len())
        .map(|k| vec![k.to_string(), cell(rule.nodes[k]), cell(rule.weights[k])])
        .collect();
    let doc = QuadratureDoc {
        command: "quadrature",
        source: src.info(),
        n,
        exactness_degree: rule.exactness_degree,
        mu0: rule.mu0,
        weight_sum_error: err,
        tolerance: tol,
        nodes: rule.nodes,
        weights: rule.weights,
    };
    let mut out = ok(
        to_value(&doc),
        Some(Table {
            header: vec!["k".into(), "node".into(), "weight".into()],
            rows,
        }),
    );
    if !(err <= tol) {
        out.failure = Some(format!("quadrature: weight sum misses mu0 by {err:e}, tolerance {tol:e}"));
    }
    Ok(out)
}

#[derive(Serialize)]
struct ZerosDoc {
    command: &'static str,
    source: SourceInfo,
    n: usize,
    zeros: Vec<f64>,
    /// Largest `|p_n / p_n'| / (1 + |x|)` over the zeros.
    residual: f64,
    tolerance: f64,
}

fn zeros_cmd(src: &Source, n: usize, tol: f64) -> Result<Outcome, CliError> {
    src.check_degree("n", n)?;
    let op = "zeros";
    let z = zeros(&src.sys, n).map_err(lift(op, tol))?;
    let residual = zero_residual(&src.sys, n, &z).map_err(lift(op, tol))?;
    let rows = z.iter().enumerate().map(|(k, x)| vec![k.to_string(), cell(*x)]).collect();
    let doc = ZerosDoc {
        command: "zeros",
        source: src.info(),
        n,
        zeros: z,
        residual,
        tolerance: tol,
    };
    let mut out = ok(
        to_value(&doc),
        Some(Table {
            header: vec!["k".into(), "zero".into()],
            rows,
        }),
    );
    if !(residual <= tol) {
        out.failure = Some(format!("zeros: residual {residual:e} exceeds tolerance {tol:e}"));
    }
    Ok(out)
}

#[derive(Serialize)]
struct RecurrenceDoc {
    #[serde(flatten)]
    table: orthopoly::recurrence::RecurrenceTable,
    mu0: f64,
    tolerance: f64,
}

fn recurrence(src: &Source, n_max: usize, form: FormArg, tol: f64) -> Result<Outcome, CliError> {
    src.check_degree("n-max", n_max)?;
    let op = "recurrence";
    let (sys, mu0) = match form {
        FormArg::Standard => (src.sys.clone(), src.mu0),
        FormArg::Monic => {
            let p0 = src.sys.p0();
            (src.sys.to_monic(), src.mu0 * p0 * p0)
        }
        FormArg::Orthonormal => {
            let o = src.orthonormal();
            let p0 = o.p0();
            (o, 1.0 / (p0 * p0))
        }
    };
    if let Some(len) = sys.len() {
        if n_max >= len {
            return Err(CliError::Config(format!("n-max: the {form:?} table has {len} rows")));
        }
    }
    let table = sys.to_table(n_max + 1).map_err(lift(op, tol))?;
    let rows = (0..=n_max)
        .map(|n| vec![n.to_string(), cell(table.a[n]), cell(table.b[n]), cell(table.c[n])])
        .collect();
    let doc = RecurrenceDoc { table, mu0, tolerance: tol };
    Ok(ok(
        to_value(&doc),
        Some(Table {
            header: vec!["n".into(), "a".into(), "b".into(), "c".into()],
            rows,
        }),
    ))
}

#[derive(Serialize)]
struct Sample {
    x: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    y: Option<f64>,
    residual: f64,
}

#[derive(Serialize)]
struct CheckDoc {
    command: &'static str,
    source: SourceInfo,
    identity: &'static str,
    n: usize,
    samples: Vec<Sample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    schedule: Option<LimitSchedule>,
    max_residual: f64,
    pass: bool,
    tolerance: f64,
}

fn needs_family(identity: &str) -> CliError {
    CliError::Config(format!("identity: {identity} needs --family"))
}

/// `alpha` with `P^(alpha,alpha)` proportional to the family, if symmetric Jacobi.
fn symmetric_alpha(f: &FamilySpec) -> Option<f64> {
    match *f {
        FamilySpec::Jacobi { alpha, beta } if alpha == beta => Some(alpha),
        FamilySpec::Legendre => Some(0.0),
        FamilySpec::Gegenbauer { lambda } => Some(lambda - 0.5),
        FamilySpec::ChebyshevT => Some(-0.5),
        FamilySpec::ChebyshevU => Some(0.5),
        _ => None,
    }
}

const LIMIT_STEPS: usize = 4;

fn check(src: &Source, identity: Identity, n: usize, x: Option<&[f64]>, tol: f64) -> Result<Outcome, CliError> {
    src.check_degree("n", n)?;
    let xs: Vec<f64> = match x {
        Some(v) if !v.is_empty() => v.to_vec(),
        Some(_) => return Err(CliError::Config("x: empty sample list".into())),
        None => src.samples(),
    };
    if xs.iter().any(|x| !x.is_finite()) {
        return Err(CliError::Config("x: samples must be finite".into()));
    }
    let family = src.family().copied();
    let mut schedule = None;
    let (name, samples): (&'static str, Vec<Sample>) = match identity {
        Identity::Ode => {
            let op = "check ode";
            let f = family.ok_or_else(|| needs_family("ode"))?;
            let s = xs
                .iter()
                .map(|&x| {
                    let r = match f {
                        Family::Classical(c) => ode_residual(&c, n, x),
                        Family::Discrete(d) => d.difference_residual(n, x),
                    };
                    r.map(|r| Sample { x, y: None, residual: r.relative() })
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(lift(op, tol))?;
            ("ode", s)
        }
        Identity::Shift => {
            let op = "check shift";
            let Some(Family::Classical(c)) = family else {
                return Err(CliError::Config("identity: shift needs a classical --family".into()));
            };
            let mut s = Vec::new();
            for &x in &xs {
                let f = shift_check(&c, n, ShiftDirection::Forward, x).map_err(lift(op, tol))?;
                let b = shift_check(&c, n, ShiftDirection::Backward, x).map_err(lift(op, tol))?;
                s.push(Sample {
                    x,
                    y: None,
                    residual: f.relative().max(b.relative()),
                });
            }
            ("shift", s)
        }
        Identity::Cd => {
            let op = "check cd";
            let norms = src.norms(n).map_err(lift(op, tol))?;
            let mut s = Vec::new();
            for &x in &xs {
                for &y in &xs {
                    let k = cd_kernel(&src.sys, &norms, n, x, y).map_err(lift(op, tol))?;
                    s.push(Sample {
                        x,
                        y: Some(y),
                        residual: k.relative_gap(),
                    });
                }
            }
            ("cd", s)
        }
        Identity::Quadratic => {
            let op = "check quadratic";
            let alpha = match family {
                Some(Family::Classical(c)) => symmetric_alpha(&c),
                _ => None,
            }
            .ok_or_else(|| CliError::Config("identity: quadratic needs a symmetric Jacobi --family".into()))?;
            let s = xs
                .iter()
                .map(|&x| {
                    quadratic_transform_check(n, alpha, x).map(|(e, o)| Sample {
                        x,
                        y: None,
                        residual: e.max(o),
                    })
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(lift(op, tol))?;
            ("quadratic", s)
        }
        Identity::Orthogonality => {
            let op = "check orthogonality";
            let g = match family {
                Some(Family::Discrete(d)) => d.gram(n),
                _ => match src.measure().map_err(lift(op, tol))? {
                    Some(m) => m.gram(&src.sys, n),
                    None => return Err(CliError::Config("identity: orthogonality needs a measure, not a bare recurrence".into())),
                },
            }
            .map_err(lift(op, tol))?;
            ("orthogonality", vec![Sample {
                x: n as f64,
                y: None,
                residual: g.max_off_diagonal,
            }])
        }
        Identity::Limit => {
            let op = "check limit";
            let x = xs[0];
            let sch = match family.ok_or_else(|| needs_family("limit"))? {
                Family::Classical(FamilySpec::Hermite) => limit_schedule(LimitRelation::JacobiToHermite, n, 16.0, LIMIT_STEPS, 0.0, x),
                Family::Classical(FamilySpec::Laguerre { alpha }) => {
                    limit_schedule(LimitRelation::JacobiToLaguerre, n, 16.0, LIMIT_STEPS, alpha, x)
                }
                Family::Discrete(DiscreteFamily::Hahn { alpha, beta, .. }) => {
                    hahn_limit_schedule(n, alpha, beta, 16, LIMIT_STEPS, x)
                }
                _ => return Err(CliError::Config("identity: limit needs --family hermite, laguerre or hahn".into())),
            }
            .map_err(lift(op, tol))?;
            let s = sch
                .parameters
                .iter()
                .zip(&sch.errors)
                .map(|(&p, &e)| Sample {
                    x,
                    y: Some(p),
                    residual: e,
                })
                .collect();
            schedule = Some(sch);
            ("limit", s)
        }
    };
    let max_residual = samples.iter().map(|s| s.residual).fold(0.0, f64::max);
    let pass = match &schedule {
        Some(s) => s.monotone,
        None => max_residual <= tol,
    };
    let (header, rows) = match identity {
        Identity::Cd => (
            vec!["x".into(), "y".into(), "residual".into()],
            samples.iter().map(|s| vec![cell(s.x), cell(s.y.unwrap_or(s.x)), cell(s.residual)]).collect(),
        ),
        Identity::Limit => (
            vec!["x".into(), "parameter".into(), "error".into()],
            samples.iter().map(|s| vec![cell(s.x), cell(s.y.unwrap_or(0.0)), cell(s.residual)]).collect(),
        ),
        Identity::Orthogonality => (
            vec!["n".into(), "max_off_diagonal".into()],
            samples.iter().map(|s| vec![n.to_string(), cell(s.residual)]).collect(),
        ),
        _ => (
            vec!["x".into(), "residual".into()],
            samples.iter().map(|s| vec![cell(s.x), cell(s.residual)]).collect(),
        ),
    };
    let doc = CheckDoc {
        command: "check",
        source: src.info(),
        identity: name,
        n,
        samples,
        schedule,
        max_residual,
        pass,
        tolerance: tol,
    };
    let mut out = ok(to_value(&doc), Some(Table { header, rows }));
    if !pass {
        out.failure = Some(if identity == Identity::Limit {
            format!("check {name}: errors do not decrease along the schedule")
        } else {
            format!("check {name}: residual {max_residual:e} exceeds tolerance {tol:e}")
        });
    }
    Ok(out)
}

pub struct DiagnoseRequest {
    pub carleman: Option<usize>,
    pub rho: Option<Complex64>,
    pub rho_n: usize,
    pub true_interval: Option<usize>,
    pub support: Option<usize>,
    pub markov: Option<Complex64>,
}

/// Degrees `10, 20, 40, ...` up to `n_max`, ending at `n_max`.
fn doubling(n_max: usize) -> Vec<usize> {
    let mut s: Vec<usize> = std::iter::successors(Some(10usize), |k| Some(k * 2))
        .take_while(|&k| k < n_max)
        .collect();
    s.push(n_max.max(1));
    s
}

fn section<T: Serialize>(r: orthopoly::Result<T>) -> Value {
    match r {
        Ok(v) => to_value(&v),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn verdict_name(v: Verdict) -> Value {
    to_value(&v)
}

fn diagnose(src: &Source, req: &DiagnoseRequest, tol: f64) -> Result<Outcome, CliError> {
    let cap = |n: usize| src.max_degree().map_or(n, |m| n.min(m));
    let mut doc = serde_json::Map::new();
    doc.insert("command".into(), json!("diagnose"));
    doc.insert("source".into(), to_value(&src.info()));
    if let Some(n) = req.carleman {
        let n = cap(n);
        let logs: Option<Vec<f64>> = (1..=n).map(|k| src.origin.log_even_moment(k)).collect();
        let base = match logs {
            Some(l) if n > 0 => MomentDiagnostics::from_log_even_moments(&l),
            _ => MomentDiagnostics {
                moments: None,
                carleman_partial_even: None,
                carleman_partial_a: None,
            },
        };
        // finite systems stop one row early since a_n needs c_{n+1}
        let a_rows = src.sys.len().map_or(n, |l| n.min(l.saturating_sub(2)));
        let value = match base.with_orthonormal(&src.orthonormal(), a_rows) {
            Ok(d) => json!({
                "n": n,
                "verdict": verdict_name(d.verdict()),
                "moments": d.carleman_partial_even.as_ref().map(summary),
                "recurrence": d.carleman_partial_a.as_ref().map(summary),
            }),
            Err(e) => json!({ "error": e.to_string() }),
        };
        doc.insert("carleman".into(), value);
    }
    if let Some(z) = req.rho {
        let sched = doubling(cap(req.rho_n));
        let r = rho(&src.orthonormal(), z, &sched);
        doc.insert(
            "rho".into(),
            match r {
                Ok(r) => json!({
                    "z": [z.re, z.im],
                    "degrees": r.degrees,
                    "partial_sums": r.partial_sums.iter().map(|v| number(*v)).collect::<Vec<_>>(),
                    "growth_exponent": number(r.growth_exponent),
                    "rho": number(r.rho),
                    "verdict": verdict_name(r.verdict),
                }),
                Err(e) => json!({ "error": e.to_string() }),
            },
        );
    }
    if let Some(n) = req.true_interval {
        let r = true_interval(&src.sys, cap(n), Execution::Parallel);
        doc.insert(
            "true_interval".into(),
            match r {
                Ok(t) => json!({
                    "n_max": t.xi1_sequence.len(),
                    "smallest_zero": t.xi1_sequence.last(),
                    "largest_zero": t.eta1_sequence.last(),
                    "limits": [number(t.limits.0), number(t.limits.1)],
                    "chains_monotone": t.chains.all(),
                    "xi1_sequence": t.xi1_sequence,
                    "eta1_sequence": t.eta1_sequence,
                }),
                Err(e) => json!({ "error": e.to_string() }),
            },
        );
    }
    if let Some(n) = req.support {
        doc.insert("support".into(), section(support_bound_criteria(&src.sys.to_monic(), cap(n))));
    }
    if let Some(z) = req.markov {
        let monic = src.sys.to_monic();
        let sched = doubling(cap(40));
        let value = match src.measure() {
            Ok(Some(m)) => section(markov_transform(&monic, &m, z, &sched).map(|r| {
                json!({
                    "z": [z.re, z.im],
                    "degrees": r.degrees,
                    "values": r.values.iter().map(|v| [v.re, v.im]).collect::<Vec<_>>(),
                    "increments": r.increments,
                    "oracle": [r.oracle.re, r.oracle.im],
                    "errors": r.errors,
                    "cauchy": r.cauchy,
                })
            })),
            Ok(None) => section(
                sched
                    .iter()
                    .map(|&k| continued_fraction_bottom_up(&monic, k, z))
                    .collect::<orthopoly::Result<Vec<_>>>()
                    .map(|vs| {
                        let inc: Vec<f64> = vs.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
                        json!({
                            "z": [z.re, z.im],
                            "degrees": sched,
                            "values": vs.iter().map(|v| [v.re, v.im]).collect::<Vec<_>>(),
                            "increments": inc,
                            "cauchy": inc.windows(2).all(|w| w[1] <= w[0]),
                        })
                    }),
            ),
            Err(e) => json!({ "error": e.to_string() }),
        };
        doc.insert("markov".into(), value);
    }
    doc.insert("tolerance".into(), json!(tol));
    Ok(ok(Value::Object(doc), None))
}

fn summary(s: &orthopoly::moment::SeriesVerdict) -> Value {
    json!({
        "terms": s.partial_sums.len(),
        "last_partial_sum": s.partial_sums.last().copied().map(number),
        "growth_exponent": number(s.growth_exponent),
        "decay_exponent": number(s.decay_exponent),
        "verdict": verdict_name(s.verdict),
    })
}
