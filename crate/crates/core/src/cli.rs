//! Command-line front end.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::artinian::{
    general_form, hilbert_dimension, hilbert_function, syzygy_dimension, wlp_profile, PowerIdealSpec, Termination,
};
use crate::constructions::{
    ah_claims, ah_sweep, coker_decomposition_probe, degree3_report, degree5_report, hilbert_certificate, pencil_claims,
};
use crate::error::{Error, Result};
use crate::fatpoints::{linear_system_dimension, random_points, FatPointSystem, ProjectivePoint};
use crate::field::{PrimeField, DEFAULT_MODULUS};
use crate::report::{
    render_report, CertificateKind, Claim, ClaimValue, Expectation, Format, Provenance, ReportDocument,
};

#[derive(Parser, Debug)]
#[command(name = "lefschetz", version, about = "Weak Lefschetz checks for ideals of powers of general linear forms")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Prime modulus, between 10^6 and 2^31.
    #[arg(long, global = true, env = "LEFSCHETZ_PRIME", default_value_t = DEFAULT_MODULUS as u64)]
    pub prime: u64,
    #[arg(long, global = true, env = "LEFSCHETZ_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Largest degree examined when a Hilbert function is computed.
    #[arg(long, global = true, default_value_t = crate::artinian::DEFAULT_CAP)]
    pub cap: usize,
    /// Attempts per random scenario, counting the first.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write the rendered report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Also write a JSON report; `-` is stdout.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Also write a CSV report; `-` is stdout.
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
    /// Worker threads for the elimination kernels.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Replace the expected value of a claim, as `id=value`.
    #[arg(long, global = true, hide = true)]
    pub override_expected: Vec<String>,
}

#[derive(Args, Debug, Clone)]
pub struct IdealArgs {
    #[arg(long, default_value_t = 7)]
    pub vars: usize,
    #[arg(long, default_value_t = 8)]
    pub gens: usize,
    #[arg(long, default_value_t = 3)]
    pub power: usize,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Hilbert function of the quotient by powers of random linear forms.
    Hilbert {
        #[command(flatten)]
        ideal: IdealArgs,
        /// A single degree; the whole function when omitted.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Rank of multiplication by a general linear form in every degree.
    Wlp {
        #[command(flatten)]
        ideal: IdealArgs,
    },
    /// Syzygies among the generators with coefficients of a given degree.
    Syzygies {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        degree: usize,
    },
    /// Dimension of forms with prescribed multiplicities at points.
    Fatpoints {
        #[arg(long)]
        proj_dim: usize,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        mults: Vec<u32>,
        /// One point per line as integer coordinates; `#` starts a comment.
        #[arg(long)]
        points_file: Option<PathBuf>,
    },
    /// Double-point defects against the exceptional list.
    AhTable {
        #[arg(long, default_value_t = 5)]
        max_proj_dim: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [2, 3, 4])]
        degrees: Vec<usize>,
        #[arg(long, default_value_t = 20)]
        max_points: usize,
    },
    /// The pencil of cubics through nine double points of P^5.
    Pencil,
    /// Every claim for the degree-3 and degree-5 scenarios.
    PaperVerify,
    /// Cokernel of xL in degree 5 next to the quantities it may split into.
    ProbeDecomposition,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Hilbert { .. } => "hilbert",
            Command::Wlp { .. } => "wlp",
            Command::Syzygies { .. } => "syzygies",
            Command::Fatpoints { .. } => "fatpoints",
            Command::AhTable { .. } => "ah-table",
            Command::Pencil => "pencil",
            Command::PaperVerify => "paper-verify",
            Command::ProbeDecomposition => "probe-decomposition",
        }
    }
}

fn recorded(
    id: String,
    description: String,
    anchor: &str,
    value: impl Into<ClaimValue>,
    cert: CertificateKind,
) -> Claim {
    Claim::new(&id, &description, anchor, Provenance::Derived, Expectation::Unpinned, value, cert)
}

fn ideal(args: &IdealArgs, seed: u64, field: PrimeField) -> Result<PowerIdealSpec> {
    PowerIdealSpec::random(args.vars, args.gens, args.power, seed, field)
}

/// Parses a points file: one point per line, `#` comments, blank lines ignored.
pub fn parse_points(text: &str, n: usize, field: &PrimeField) -> Result<Vec<ProjectivePoint>> {
    let mut points = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let coords = line
            .split_whitespace()
            .map(|t| t.parse::<i64>().map(|x| field.from_i64(x)))
            .collect::<std::result::Result<Vec<u32>, _>>()
            .map_err(|e| Error::Config(format!("points file line {}: {e}", i + 1)))?;
        if coords.len() != n + 1 {
            return Err(Error::Config(format!("points file line {}: expected {} coordinates", i + 1, n + 1)));
        }
        points.push(ProjectivePoint::new(coords)?);
    }
    Ok(points)
}

/// Builds the claims for a command.
pub fn claims_for(command: &Command, config: &RunConfig, field: PrimeField) -> Result<Vec<Claim>> {
    let seed = config.seed;
    let proof = CertificateKind::Proof;
    Ok(match command {
        Command::Hilbert { ideal: args, degree } => {
            let spec = ideal(args, seed, field)?;
            match degree {
                Some(d) => {
                    let dim = hilbert_dimension(&spec, *d)?;
                    let cert = hilbert_certificate(&spec, *d, dim)?;
                    vec![recorded(format!("hilbert.d{d}"), format!("dim A_{d}"), "hilbert-function", dim, cert)]
                }
                None => {
                    let hf = hilbert_function(&spec, config.cap)?;
                    let mut claims = Vec::new();
                    for (d, &dim) in hf.dims.iter().enumerate() {
                        let cert = hilbert_certificate(&spec, d, dim)?;
                        claims.push(recorded(
                            format!("hilbert.d{d}"),
                            format!("dim A_{d}"),
                            "hilbert-function",
                            dim,
                            cert,
                        ));
                    }
                    claims.push(recorded(
                        "hilbert.vanished".into(),
                        format!("A_d = 0 reached within degree {}", config.cap),
                        "hilbert-function",
                        hf.termination == Termination::Vanished,
                        proof,
                    ));
                    claims
                }
            }
        }
        Command::Wlp { ideal: args } => {
            let spec = ideal(args, seed, field)?;
            let form = general_form(spec.vars(), seed, &field);
            let profile = wlp_profile(&spec, &form, config.cap)?;
            let mut claims = Vec::new();
            for s in &profile.steps {
                let cert = CertificateKind::from_maximal_rank(s.maximal_rank);
                let d = s.degree;
                let desc = |what: &str| format!("{what} of xL: A_{d} -> A_{}", d + 1);
                claims.push(recorded(format!("wlp.d{d}.kernel"), desc("kernel"), "wlp-profile", s.kernel_dim, cert));
                claims.push(recorded(format!("wlp.d{d}.coker"), desc("cokernel"), "wlp-profile", s.coker_dim, cert));
                claims.push(recorded(
                    format!("wlp.d{d}.maximal-rank"),
                    desc("maximal rank"),
                    "wlp-profile",
                    s.maximal_rank,
                    cert,
                ));
            }
            let failing = profile.failing_degrees();
            let cert = CertificateKind::from_maximal_rank(failing.is_empty());
            claims.push(recorded(
                "wlp.failing-degrees".into(),
                "degrees without maximal rank".into(),
                "wlp-profile",
                failing,
                cert,
            ));
            claims
        }
        Command::Syzygies { ideal: args, degree } => {
            let spec = ideal(args, seed, field)?;
            let s = syzygy_dimension(&spec, *degree)?;
            let t = s.coefficient_degree;
            vec![
                recorded(
                    format!("syzygies.t{t}"),
                    format!("syzygies with coefficients of degree {t}"),
                    "syzygies",
                    s.dimension,
                    CertificateKind::Evidence,
                ),
                Claim::new(
                    &format!("syzygies.t{t}.koszul"),
                    "at least the independent Koszul relations",
                    "syzygies",
                    Provenance::Trivial,
                    Expectation::AtLeast(s.koszul_lower_bound as i64),
                    s.dimension,
                    proof,
                ),
            ]
        }
        Command::Fatpoints { proj_dim, degree, mults, points_file } => {
            let points = match points_file {
                Some(path) => {
                    let text = fs::read_to_string(path)
                        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
                    let pts = parse_points(&text, *proj_dim, &field)?;
                    if pts.len() != mults.len() {
                        return Err(Error::Config(format!("{} multiplicities for {} points", mults.len(), pts.len())));
                    }
                    pts
                }
                None => random_points(*proj_dim, mults.len(), seed, &field),
            };
            let system = FatPointSystem::new(
                *proj_dim,
                *degree,
                points.into_iter().zip(mults.iter().copied()).collect(),
                field,
            )?;
            let dim = linear_system_dimension(&system)?;
            let cert = CertificateKind::from_maximal_rank(!dim.is_special());
            vec![
                recorded(
                    "fatpoints.actual".into(),
                    "dimension of the linear system".into(),
                    "fat-points",
                    dim.actual,
                    cert,
                ),
                recorded("fatpoints.expected".into(), "expected dimension".into(), "fat-points", dim.expected, proof),
                recorded(
                    "fatpoints.raw-expected".into(),
                    "unclamped expected dimension".into(),
                    "fat-points",
                    dim.raw_expected,
                    proof,
                ),
                recorded("fatpoints.defect".into(), "actual minus expected".into(), "fat-points", dim.defect, cert),
            ]
        }
        Command::AhTable { max_proj_dim, degrees, max_points } => {
            ah_claims(&ah_sweep(*max_proj_dim, degrees, *max_points, seed, field)?)
        }
        Command::Pencil => pencil_claims(seed, field, config.trials)?,
        Command::PaperVerify => {
            let mut claims = degree3_report(seed, field, config.trials)?.claims;
            claims.extend(degree5_report(seed, field, config.trials)?.claims);
            claims
        }
        Command::ProbeDecomposition => coker_decomposition_probe(seed, field)?.claims(),
    })
}

/// Parses `id=value` where the value is an integer, `true`/`false`, or a comma list.
pub fn parse_override(spec: &str) -> Result<(String, Expectation)> {
    let bad = || Error::Config(format!("cannot parse override `{spec}`"));
    let (id, value) = spec.split_once('=').ok_or_else(bad)?;
    let value = value.trim();
    let parsed = if let Ok(b) = value.parse::<bool>() {
        ClaimValue::Bool(b)
    } else if let Ok(n) = value.parse::<i64>() {
        ClaimValue::Int(n)
    } else {
        let list: std::result::Result<Vec<i64>, _> =
            value.trim_matches(|c| c == '[' || c == ']').split(',').map(|t| t.trim().parse::<i64>()).collect();
        ClaimValue::List(list.map_err(|_| bad())?)
    };
    Ok((id.trim().to_string(), Expectation::Equals(parsed)))
}

/// Runs a parsed command and returns the document plus the rendered outputs.
pub fn build_document(cli: &Cli) -> Result<ReportDocument> {
    let field = PrimeField::new(cli.config.prime)?;
    let mut claims = claims_for(&cli.command, &cli.config, field)?;
    for o in &cli.config.override_expected {
        let (id, expected) = parse_override(o)?;
        let claim = claims
            .iter_mut()
            .find(|c| c.id == id)
            .ok_or_else(|| Error::Config(format!("no claim `{id}` to override")))?;
        claim.expected = expected;
        claim.judge();
    }
    Ok(ReportDocument::new(cli.command.name(), cli.config.prime, cli.config.seed, claims))
}

fn plain(doc: &ReportDocument, command: &Command) -> Option<String> {
    match command {
        Command::Hilbert { degree: Some(_), .. } => {
            doc.claims.first().map(|c| format!("{}\n", serde_json::to_string(&c.computed).unwrap_or_default()))
        }
        _ => None,
    }
}

fn emit(target: &Path, text: &str) -> Result<()> {
    if target.as_os_str() == "-" {
        let mut out = std::io::stdout().lock();
        out.write_all(text.as_bytes()).and_then(|_| out.flush())
    } else {
        fs::write(target, text)
    }
    .map_err(|e| Error::Config(format!("cannot write {}: {e}", target.display())))
}

/// Executes the command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let start = Instant::now();
    if let Some(n) = cli.config.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return 2;
        }
    }
    let doc = match build_document(&cli) {
        Ok(doc) => doc,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let mut targets: Vec<(Format, PathBuf)> = Vec::new();
    if let Some(p) = &cli.config.json {
        targets.push((Format::Json, p.clone()));
    }
    if let Some(p) = &cli.config.csv {
        targets.push((Format::Csv, p.clone()));
    }
    let stdout_taken = targets.iter().any(|(_, p)| p.as_os_str() == "-");
    if cli.config.output.is_some() || !stdout_taken {
        let target = cli.config.output.clone().unwrap_or_else(|| PathBuf::from("-"));
        targets.insert(0, (cli.config.format, target));
    }
    for (format, target) in &targets {
        let text = match (format, plain(&doc, &cli.command)) {
            (Format::Table, Some(p)) => p,
            _ => render_report(&doc, *format),
        };
        if let Err(e) = emit(target, &text) {
            eprintln!("error: {e}");
            return 2;
        }
    }
    eprintln!("{} finished in {:.2?}", cli.command.name(), start.elapsed());
    doc.exit_status
}
