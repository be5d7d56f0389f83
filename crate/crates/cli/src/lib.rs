//! Subcommands of the `hypercircle` tool, kept free of process handling so
//! that tests can drive them directly.

use std::io::Write;
use std::time::Instant;

use hypercircle::generate::{generate, random_field, Kind};
use hypercircle::hypercircle::{
    standard_parametrization, Certificate, ClassOutcome, HypercircleResult,
};
use hypercircle::instance::{parse_field, parse_instance, to_file, InstanceFile};
use hypercircle::minfield::{descend, minimum_field};
use hypercircle::witness::{check_on_witness, denominator_vanishes, weil_substitution};
use hypercircle::{AlgField, Error, Field, Rationals};
use rayon::prelude::*;
use serde::Serialize;

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    NotDefined = 1,
    InputError = 2,
    Internal = 3,
}

#[derive(Debug)]
pub struct CliError {
    pub status: Status,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            status: Status::InputError,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        CliError {
            status: Status::Internal,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Input(_)
            | Error::ZeroDenominator
            | Error::Budget(_)
            | Error::NonProper { .. } => CliError::input(e.to_string()),
            _ => CliError::internal(e.to_string()),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Text for standard output together with the exit status.
#[derive(Debug)]
pub struct Report {
    pub text: String,
    pub status: Status,
}

#[derive(Serialize)]
struct ClassSummary {
    factor: String,
    size: usize,
    params_tried: usize,
    fixed: bool,
    u: Option<String>,
}

#[derive(Serialize)]
struct ComputeOutput {
    verdict: &'static str,
    phi: Option<InstanceFile>,
    classes: Vec<ClassSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    on_witness: Option<bool>,
}

fn verdict_name(r: &HypercircleResult<Rationals>) -> &'static str {
    if r.is_defined() {
        "DefinedOverK"
    } else {
        "NotDefinedOverK"
    }
}

fn class_summaries(k: &AlgField, r: &HypercircleResult<Rationals>) -> Vec<ClassSummary> {
    r.classes
        .iter()
        .map(|c| ClassSummary {
            factor: c.class.factor().format(k, "x"),
            size: c.class.class_size(),
            params_tried: c.params_tried(),
            fixed: c.is_fixed(),
            u: match &c.outcome {
                ClassOutcome::Fixed(u) => Some(u.format(c.class.relative_field(), "t")),
                ClassOutcome::NotFixed(_) => None,
            },
        })
        .collect()
}

/// `φ` in the instance format plus the unit of every class; with
/// `verify_witness`, also checks `φ` against the Weil system.
pub fn compute(text: &str, verify_witness: bool) -> CliResult<Report> {
    let inst = parse_instance(text)?;
    let k = &inst.field;
    let result = standard_parametrization(&inst.psi, k)?;
    let on_witness = match (verify_witness, result.phi()) {
        (true, Some(phi)) => {
            let sys = weil_substitution(&inst.psi, k)?;
            Some(check_on_witness(&sys, phi, k)? && !denominator_vanishes(&sys, phi, k)?)
        }
        _ => None,
    };
    let out = ComputeOutput {
        verdict: verdict_name(&result),
        phi: result.phi().map(|phi| to_file(k, phi)),
        classes: class_summaries(k, &result),
        on_witness,
    };
    let text = serde_json::to_string_pretty(&out).expect("output serializes") + "\n";
    let status = match (result.is_defined(), on_witness) {
        (_, Some(false)) => Status::Internal,
        (true, _) => Status::Success,
        (false, _) => Status::NotDefined,
    };
    Ok(Report { text, status })
}

/// The verdict with a certificate for the negative case.
pub fn definable(text: &str) -> CliResult<Report> {
    let inst = parse_instance(text)?;
    let k = &inst.field;
    let result = standard_parametrization(&inst.psi, k)?;
    let mut out = format!("verdict: {}\n", verdict_name(&result));
    if let Some((report, cert)) = result.certificate() {
        out += &format!(
            "class: {} (size {})\n",
            report.class.factor().format(k, "x"),
            report.class.class_size()
        );
        match cert {
            Certificate::NotAttained([t1, t2]) => {
                out += &format!("certificate: not attained at t = {t1}, {t2}\n");
            }
            Certificate::IdentityFailed(u) => {
                let u = u.format(report.class.relative_field(), "t");
                out += &format!("certificate: identity fails for u(t) = {u}\n");
            }
        }
    }
    let fixing: Vec<String> = result
        .fixing_classes()
        .iter()
        .map(|c| c.factor().format(k, "x"))
        .collect();
    out += &format!("fixing classes: {}\n", fixing.join(", "));
    let status = if result.is_defined() {
        Status::Success
    } else {
        Status::NotDefined
    };
    Ok(Report { text: out, status })
}

/// The minimum field of definition between `ℚ` and `ℚ(α)`.
pub fn minfield(text: &str) -> CliResult<Report> {
    let inst = parse_instance(text)?;
    let k = &inst.field;
    let result = standard_parametrization(&inst.psi, k)?;
    let l = minimum_field(k, &result.fixing_classes())?;
    let basis: Vec<String> = l.basis.iter().map(|b| k.format(b)).collect();
    let mut out = format!(
        "degree: {}\nrelative degree: {}\nbasis: {}\nprimitive: {}\nminimal polynomial: {}\n",
        l.degree(),
        l.relative_degree,
        basis.join(", "),
        k.format(&l.primitive),
        l.primitive_minpoly.format(&Rationals, "x"),
    );
    if l.relative_degree >= 2 {
        let d = descend(k, &l)?;
        out += &format!(
            "minimal polynomial of {} over {}: {}\n",
            k.name(),
            d.lower.name(),
            d.tower.minpoly().format(&d.lower, "x")
        );
    }
    Ok(Report {
        text: out,
        status: Status::Success,
    })
}

/// Where the field of a generated instance comes from.
#[derive(Clone, Debug)]
pub enum FieldSource {
    Fixed(AlgField),
    /// A random field of this degree, drawn from the instance seed.
    Random(usize),
}

impl FieldSource {
    pub fn field(&self, seed: u64) -> CliResult<AlgField> {
        match self {
            FieldSource::Fixed(k) => Ok(k.clone()),
            FieldSource::Random(n) => Ok(random_field(*n, seed)?),
        }
    }
}

/// Reads a field from a `{generator, minpoly}` document or from the field of
/// an instance file.
pub fn read_field(text: &str) -> CliResult<AlgField> {
    match parse_field(text) {
        Ok(k) => Ok(k),
        Err(field_err) => parse_instance(text)
            .map(|i| i.field)
            .map_err(|_| field_err.into()),
    }
}

pub fn parse_kind(s: &str) -> CliResult<Kind> {
    s.parse().map_err(|e: Error| CliError::input(e.to_string()))
}

/// A generated instance file and, for the adversarial kind, its linear
/// relations, one per line.
pub fn gen(
    kind: Kind,
    degree: usize,
    source: &FieldSource,
    seed: u64,
) -> CliResult<(String, String)> {
    if degree < 2 {
        return Err(CliError::input("degree must be at least 2"));
    }
    let k = source.field(seed)?;
    let g = generate(kind, degree, &k, seed)?;
    let relations: String = g.relations.iter().map(|r| r.format(&k) + "\n").collect();
    let file =
        serde_json::to_string_pretty(&to_file(&k, &g.psi)).expect("instance serializes") + "\n";
    Ok((file, relations))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BenchRecord {
    pub degree: usize,
    pub n: usize,
    pub seed: u64,
    pub verdict: String,
    /// Largest number of parameters tried by a class; empty for failed rows.
    pub params_tried: Option<usize>,
    pub ms: u128,
}

fn bench_one(kind: Kind, degree: usize, source: &FieldSource, seed: u64) -> BenchRecord {
    let n = match source {
        FieldSource::Fixed(k) => k.degree(),
        FieldSource::Random(n) => *n,
    };
    let failed = |ms| BenchRecord {
        degree,
        n,
        seed,
        verdict: "Failed".into(),
        params_tried: None,
        ms,
    };
    let instance = source
        .field(seed)
        .and_then(|k| Ok((generate(kind, degree, &k, seed)?.psi, k)));
    let (psi, k) = match instance {
        Ok(inst) => inst,
        Err(e) => {
            eprintln!("degree {degree}, n {n}, seed {seed}: {e}");
            return failed(0);
        }
    };
    let start = Instant::now();
    let result = standard_parametrization(&psi, &k);
    let ms = start.elapsed().as_millis();
    match result {
        Ok(r) => BenchRecord {
            degree,
            n,
            seed,
            verdict: verdict_name(&r).into(),
            params_tried: Some(r.max_params_tried()),
            ms,
        },
        Err(e) => {
            eprintln!("degree {degree}, n {n}, seed {seed}: {e}");
            failed(ms)
        }
    }
}

/// One record per (degree, field, seed), seeds `0..seeds`, in that order.
/// Instances run in parallel; a failing instance yields a `Failed` row.
pub fn bench(
    kind: Kind,
    degrees: &[usize],
    sources: &[FieldSource],
    seeds: u64,
) -> Vec<BenchRecord> {
    let jobs: Vec<(usize, &FieldSource, u64)> = degrees
        .iter()
        .flat_map(|&d| {
            sources
                .iter()
                .flat_map(move |s| (0..seeds).map(move |seed| (d, s, seed)))
        })
        .collect();
    jobs.into_par_iter()
        .map(|(d, s, seed)| bench_one(kind, d, s, seed))
        .collect()
}

pub const BENCH_HEADER: &str = "degree,n,seed,verdict,params_tried,ms";

pub fn write_bench_csv<W: Write>(records: &[BenchRecord], out: W) -> CliResult<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(BENCH_HEADER.split(','))
        .map_err(|e| CliError::internal(e.to_string()))?;
    for r in records {
        w.serialize(r)
            .map_err(|e| CliError::internal(e.to_string()))?;
    }
    w.flush().map_err(|e| CliError::internal(e.to_string()))
}

/// Parses `2,5,10`; the empty string is the empty list.
pub fn parse_degrees(s: &str) -> CliResult<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse()
                .map_err(|_| CliError::input(format!("invalid degree {p:?}")))
        })
        .collect()
}
