//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification or certificate check
//! fails, 2 on usage, input or parameter errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::builders::{self, Kind};
use crate::error::{Error, Result};
use crate::graph::{induced_subgraph_objectives, CompleteGraphContext};
use crate::lpformat::write_lp;
use crate::polyhedra::{self, random_objectives, ExtendedFormulation};
use crate::rational::Rational;
use crate::{hashfam, symcert};

pub const SEED_ENV: &str = "EFFORGE_SEED";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "efforge", version, about = "Build and verify extended formulations of graph polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a formulation and write it as JSON.
    Build(BuildArgs),
    /// Check a formulation against enumerated vertices and objectives.
    Verify(VerifyArgs),
    /// Emit the symmetry certificate for the (2k+1)-matching polytope.
    Certificate(CertificateArgs),
    /// Write a formulation as a plain-text LP model.
    ExportLp(ExportArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    SpanningTree,
    Matching,
    Cycle,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::SpanningTree => Kind::SpanningTree,
            KindArg::Matching => Kind::Matching,
            KindArg::Cycle => Kind::Cycle,
        }
    }
}

#[derive(Debug, Args)]
struct BuildArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long)]
    out: PathBuf,
    /// Seed for the hash family construction.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    formulation: PathBuf,
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    ell: Option<usize>,
    /// Number of random objectives; 0 checks vertex membership only.
    #[arg(long, default_value_t = 50)]
    objectives: usize,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct CertificateArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct ExportArgs {
    #[arg(long)]
    formulation: PathBuf,
    /// JSON array of rationals over the ambient space.
    #[arg(long)]
    objective: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

/// Entry point for the binary: process arguments and environment.
pub fn main_with_env() -> i32 {
    let env_seed = std::env::var(SEED_ENV).ok();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), env_seed.as_deref(), &mut stdout.lock(), &mut stderr.lock())
}

/// Runs one command; `env_seed` stands in for the seed environment variable.
pub fn run<I, T>(args: I, env_seed: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let env_seed = match env_seed.map(str::parse::<u64>).transpose() {
        Ok(seed) => seed,
        Err(_) => {
            let _ = writeln!(err, "error: {SEED_ENV} must be an unsigned integer");
            return EXIT_USAGE;
        }
    };
    let result = match cli.command {
        Command::Build(a) => build(a, env_seed, out),
        Command::Verify(a) => verify(a, env_seed, out),
        Command::Certificate(a) => certificate(a, out),
        Command::ExportLp(a) => export_lp(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn build(a: BuildArgs, env_seed: Option<u64>, out: &mut dyn Write) -> Result<i32> {
    let seed = a.seed.or(env_seed).unwrap_or(hashfam::DEFAULT_SEED);
    let built = builders::build(a.kind.into(), a.n, a.ell, seed)?;
    let ef = &built.formulation;
    fs::write(&a.out, ef.to_json()?)?;
    writeln!(out, "kind: {}", Kind::from(a.kind).name())?;
    writeln!(out, "size: {}", ef.size())?;
    writeln!(out, "variables: {}", ef.dim)?;
    writeln!(out, "equations: {}", ef.equations.len())?;
    writeln!(out, "blocks: {}", built.blocks)?;
    if let Some(family) = &built.family {
        writeln!(out, "hash maps: {}", family.len())?;
    }
    writeln!(out, "wrote {}", a.out.display())?;
    Ok(EXIT_OK)
}

fn verify(a: VerifyArgs, env_seed: Option<u64>, out: &mut dyn Write) -> Result<i32> {
    let seed = a.seed.or(env_seed).unwrap_or(polyhedra::DEFAULT_SEED);
    let ef = ExtendedFormulation::from_json(&fs::read_to_string(&a.formulation)?)?;
    let kind = Kind::from(a.kind);
    let ctx = CompleteGraphContext::new(a.n)?;
    if ef.ambient_dim() != ctx.edge_count() {
        return Err(Error::Dimension(format!(
            "formulation projects to dimension {}, K_{} has {} edges",
            ef.ambient_dim(),
            a.n,
            ctx.edge_count()
        )));
    }
    let vertices: Vec<Vec<Rational>> =
        builders::oracle_objects(kind, a.n, a.ell)?.iter().map(|s| s.characteristic_vector()).collect();
    let mut objectives = Vec::new();
    if a.objectives > 0 {
        objectives = random_objectives(ctx.edge_count(), a.objectives, seed);
        objectives.extend(induced_subgraph_objectives(&ctx)?);
    }
    let report = ef.verify_projection_equals(&vertices, &objectives)?;

    for i in 0..report.vertices_checked {
        let status = if report.vertex_failures.contains(&i) { "FAIL (no fiber point)" } else { "pass" };
        writeln!(out, "vertex {}: {status}", i + 1)?;
    }
    for check in &report.objective_checks {
        let found = check.formulation_value.as_ref().map_or("none".to_string(), Rational::to_string);
        if check.passed() {
            writeln!(out, "objective {}: pass (value {})", check.index + 1, check.oracle_value)?;
        } else {
            let c: Vec<String> = check.objective.iter().map(Rational::to_string).collect();
            writeln!(
                out,
                "objective {}: FAIL (formulation {found}, oracle {}) c = [{}]",
                check.index + 1,
                check.oracle_value,
                c.join(", ")
            )?;
        }
    }
    let passed = report.passed();
    writeln!(
        out,
        "summary: {} vertices, {} objectives, {}",
        report.vertices_checked,
        report.objective_checks.len(),
        if passed { "pass" } else { "FAIL" }
    )?;
    Ok(if passed { EXIT_OK } else { EXIT_FAILED })
}

fn certificate(a: CertificateArgs, out: &mut dyn Write) -> Result<i32> {
    let cert = symcert::build_certificate(a.k, a.n)?;
    fs::write(&a.out, cert.to_json()?)?;
    let lambdas: Vec<String> = cert.classes.iter().map(|c| format!("λ_{} = {}", c.i, c.lambda)).collect();
    writeln!(out, "k = {}, n = {}", cert.k, cert.n)?;
    writeln!(out, "{}", lambdas.join(", "))?;
    writeln!(out, "slack equation: {}", cert.slack_equation)?;
    writeln!(out, "patterns checked: {}", cert.patterns.len())?;
    if let Some(c) = &cert.concrete {
        writeln!(out, "concrete matchings checked: {}", c.matchings_checked)?;
    }
    writeln!(out, "verdict: {}", cert.verdict)?;
    Ok(if cert.verdict { EXIT_OK } else { EXIT_FAILED })
}

fn export_lp(a: ExportArgs, out: &mut dyn Write) -> Result<i32> {
    let ef = ExtendedFormulation::from_json(&fs::read_to_string(&a.formulation)?)?;
    let objective: Vec<Rational> = serde_json::from_str(&fs::read_to_string(&a.objective)?)?;
    let text = write_lp(&ef, &objective)?;
    fs::write(&a.out, &text)?;
    writeln!(out, "wrote {} lines to {}", text.lines().count(), a.out.display())?;
    Ok(EXIT_OK)
}
