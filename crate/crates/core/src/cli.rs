//! The `mgk` command-line front end: argument parsing, report assembly and
//! rendering. Every command produces a [`Document`] that is printed either as
//! a plain-text table or as JSON.
//!
//! Exit codes: `0` success, `2` input error, `3` numerical failure.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::thread;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::boundary_trace::{
    r0_grid, stima_inequality, trace_second_derivative, trace_second_derivative_opposite, varsigma_trace_data,
    TraceInput,
};
use crate::cusp_invariants::{complex_length, cusp_modulus, heegaard_genus, homology_rank, return_path_length};
use crate::deformation::{
    dehn_coefficients, jacobian, nullspace, residuals, solve_complete, solve_filling, subspace_distance, tangent_basis,
    uv, AngleVector, CuspFilling, DehnCoefficient, FillingSpec, GKSignature, SolveOptions,
};
use crate::error::Error;
use crate::slopes::{classify_slopes, slope_sets_equivalent, SlopeSet, SlopeSetIsometry};
use crate::xk::{
    abc, abc_defect, commensurable, tau_13, theta_r, theta_r2, ABCInvariant, Commensurability, XkSignature,
};

/// Version tag of the JSON output.
pub const SCHEMA: &str = "mgk/1";

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "mgk", version, about = "Hyperbolic structures and Dehn fillings of M_{g,k} manifolds")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Emit JSON instead of a text table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Largest accepted residual max-norm of a reported structure.
    #[arg(long, global = true, env = "MGK_TOL_RESIDUAL", default_value_t = 1e-10)]
    pub tol_residual: f64,
    /// Tolerance for comparing invariants.
    #[arg(long, global = true, env = "MGK_TOL_INVARIANT", default_value_t = 1e-8)]
    pub tol_invariant: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for the complete structure x₀.
    Complete {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        k: i64,
    },
    /// Solve Dehn fillings; repeat --coeffs to solve a batch in parallel.
    Fill {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        k: i64,
        /// Comma-separated "p/q" or "inf", one entry per cusp.
        #[arg(long, required = true)]
        coeffs: Vec<String>,
        /// Worker threads for a batch (default: available parallelism).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Tabulate slope orbits under the hexagonal symmetry group.
    Slopes {
        #[arg(long, default_value_t = 7)]
        max_len_sq: i64,
    },
    /// Decide whether two slope sets ("p/q@i,...") are related by an isometry.
    Similar {
        #[arg(long)]
        k: usize,
        a: String,
        b: String,
        /// Also allow orientation-reversing isometries.
        #[arg(long)]
        allow_reflections: bool,
    },
    /// Compare (a, b, c) invariants of fillings of X_k (slope sets "p/q@i,...").
    Commensurable {
        #[arg(long)]
        k: i64,
        #[arg(required = true)]
        specs: Vec<String>,
        /// Add Θ(r)·y and Θ(r²)·y for every filling y.
        #[arg(long)]
        rotated: bool,
        /// Add τ₁₃·y for every filling y.
        #[arg(long)]
        tau13: bool,
    },
    /// Numerical tangent space at x₀ against the closed-form basis.
    Tangent {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        k: i64,
    },
    /// Second derivative of the boundary-loop trace along ς̄.
    Trace {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        k: i64,
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
        delta: u8,
        /// A single value of r₀; otherwise an admissible grid is scanned.
        #[arg(long)]
        r0: Option<f64>,
        #[arg(long, default_value_t = 20)]
        grid: usize,
    },
}

/// Per-cusp part of a [`StructureReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CuspReport {
    pub index: usize,
    pub u: Complex64,
    pub v: Complex64,
    #[serde(flatten)]
    pub state: CuspState,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "state", rename_all = "snake_case")]
pub enum CuspState {
    Complete { modulus: Complex64 },
    Filled { slope: String, coefficients: (f64, f64), complex_length: Complex64 },
}

/// A solved structure with its invariants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    pub signature: (usize, usize),
    pub filling: String,
    pub coordinates: Vec<f64>,
    pub residual: f64,
    pub cusps: Vec<CuspReport>,
    pub return_path_length: f64,
    pub homology_rank: usize,
    pub heegaard_genus: usize,
    /// Present for signatures `(k + 1, k)` with `k` odd.
    pub abc: Option<ABCInvariant>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitRow {
    pub length_sq: i64,
    pub length: f64,
    pub orbit_size: usize,
    pub rotation_orbit_size: usize,
    pub hyperbolic: bool,
    pub slopes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AbcEntry {
    pub label: String,
    pub abc: ABCInvariant,
    pub defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub first: String,
    pub second: String,
    pub distance: f64,
    pub verdict: Commensurability,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub input: TraceInput,
    pub trace: f64,
    pub second_derivative: f64,
    /// The `ζ̈ = −η̈` closed form, when it applies.
    pub closed_form: Option<f64>,
    pub stima: bool,
}

/// The result of one command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Payload {
    Complete {
        alpha_bar: f64,
        beta_bar: f64,
        inequalities_hold: bool,
        structure: StructureReport,
    },
    Fill {
        structures: Vec<StructureReport>,
    },
    Slopes {
        max_len_sq: i64,
        orbits: Vec<OrbitRow>,
    },
    Similar {
        k: usize,
        a: String,
        b: String,
        orientation_preserving: bool,
        witness: Option<SlopeSetIsometry>,
    },
    Commensurable {
        k: usize,
        entries: Vec<AbcEntry>,
        pairs: Vec<PairVerdict>,
    },
    Tangent {
        signature: (usize, usize),
        nullity: usize,
        expected_nullity: usize,
        /// Smallest retained over largest discarded singular value; `None`
        /// when the discarded ones are exactly zero.
        gap: Option<f64>,
        subspace_distance: Option<f64>,
        smallest_singular_values: Vec<f64>,
    },
    Trace {
        signature: (usize, usize),
        delta: u8,
        rows: Vec<TraceRow>,
    },
}

/// Versioned output document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub schema: String,
    #[serde(flatten)]
    pub payload: Payload,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Convergence { .. }
            | Error::ContinuationBreakdown { .. }
            | Error::SingularSystem { .. }
            | Error::IncompleteCusp { .. }
            | Error::UnfilledCusp { .. } => EXIT_NUMERICAL,
            Error::Domain(_)
            | Error::InvalidSignature { .. }
            | Error::InvalidXkSignature(_)
            | Error::SignatureMismatch(_)
            | Error::NotCoprime { .. }
            | Error::NonHyperbolic { .. }
            | Error::CuspIndex { .. }
            | Error::Parse(_) => EXIT_INPUT,
        };
        CliError { code, message: e.to_string() }
    }
}

fn signature(g: i64, k: i64) -> Result<GKSignature, Error> {
    if g < 0 || k < 0 {
        return Err(Error::InvalidSignature { g, k });
    }
    GKSignature::new(g as usize, k as usize)
}

fn xk_signature(k: i64) -> Result<XkSignature, Error> {
    if k < 0 {
        return Err(Error::InvalidXkSignature(k));
    }
    XkSignature::new(k as usize)
}

/// Assembles the report of a solved structure, refusing it if the residual
/// exceeds `tol_residual`.
pub fn structure_report(x: &AngleVector, spec: &FillingSpec, tol_residual: f64) -> Result<StructureReport, Error> {
    let sig = x.signature();
    let residual = residuals(sig, x)?.max_norm();
    if residual.is_nan() || residual > tol_residual {
        return Err(Error::Convergence { residual, iterations: 0 });
    }
    let mut cusps = Vec::with_capacity(sig.k());
    for (n, c) in spec.cusps().iter().enumerate() {
        let i = n + 1;
        let (u, v) = uv(x, i)?;
        let state = match *c {
            CuspFilling::Unfilled => CuspState::Complete { modulus: cusp_modulus(x, i)?.tau },
            CuspFilling::Filled { p, q } => {
                let coefficients = match dehn_coefficients(x, i)? {
                    DehnCoefficient::Finite { p, q } => (p, q),
                    DehnCoefficient::Infinity => return Err(Error::UnfilledCusp { cusp: i }),
                };
                CuspState::Filled {
                    slope: format!("{p}/{q}"),
                    coefficients,
                    complex_length: complex_length(x, i, (p, q))?.value,
                }
            }
        };
        cusps.push(CuspReport { index: i, u, v, state });
    }
    let abc = match XkSignature::new(sig.k()) {
        Ok(xs) if xs.gk() == sig => Some(abc(x, xs)?),
        _ => None,
    };
    Ok(StructureReport {
        signature: (sig.g(), sig.k()),
        filling: spec.to_string(),
        coordinates: x.coords().to_vec(),
        residual,
        cusps,
        return_path_length: return_path_length(x)?,
        homology_rank: homology_rank(sig, spec.filled_count())?,
        heegaard_genus: heegaard_genus(sig),
        abc,
    })
}

fn cmd_complete(g: i64, k: i64, opts: &GlobalOpts) -> Result<Payload, Error> {
    let sig = signature(g, k)?;
    let sol = solve_complete(sig)?;
    let (a, b) = (sol.alpha_bar.value(), sol.beta_bar.value());
    let structure = structure_report(&sol.x0, &FillingSpec::complete(sig.k()), opts.tol_residual)?;
    Ok(Payload::Complete {
        alpha_bar: a,
        beta_bar: b,
        inequalities_hold: a < b && b < 2.0 * a && 2.0 * a <= std::f64::consts::PI / 3.0,
        structure,
    })
}

fn cmd_fill(g: i64, k: i64, coeffs: &[String], threads: Option<usize>, opts: &GlobalOpts) -> Result<Payload, Error> {
    let sig = signature(g, k)?;
    let specs = coeffs.iter().map(|c| FillingSpec::parse(c)).collect::<Result<Vec<_>, _>>()?;
    let workers =
        threads.unwrap_or_else(|| thread::available_parallelism().map_or(1, |n| n.get())).clamp(1, specs.len().max(1));
    let solve = |spec: &FillingSpec| {
        let x = solve_filling(sig, spec, &SolveOptions::default())?;
        structure_report(&x, spec, opts.tol_residual)
    };
    let chunk = specs.len().div_ceil(workers).max(1);
    let results: Vec<Result<StructureReport, Error>> = thread::scope(|s| {
        let handles: Vec<_> =
            specs.chunks(chunk).map(|part| s.spawn(move || part.iter().map(solve).collect::<Vec<_>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("solver thread panicked")).collect()
    });
    Ok(Payload::Fill { structures: results.into_iter().collect::<Result<_, _>>()? })
}

fn cmd_slopes(max_len_sq: i64) -> Payload {
    let orbits = classify_slopes(max_len_sq)
        .into_iter()
        .map(|o| OrbitRow {
            length_sq: o.length_sq,
            length: (o.length_sq as f64).sqrt(),
            orbit_size: o.slopes.len(),
            rotation_orbit_size: o.rotation_orbit_size,
            hyperbolic: o.length_sq >= 7,
            slopes: o.slopes.iter().map(ToString::to_string).collect(),
        })
        .collect();
    Payload::Slopes { max_len_sq, orbits }
}

fn cmd_similar(k: usize, a: &str, b: &str, allow_reflections: bool) -> Result<Payload, Error> {
    let (sa, sb) = (SlopeSet::parse(k, a)?, SlopeSet::parse(k, b)?);
    let witness = slope_sets_equivalent(&sa, &sb, !allow_reflections)?;
    Ok(Payload::Similar {
        k,
        a: sa.to_string(),
        b: sb.to_string(),
        orientation_preserving: !allow_reflections,
        witness,
    })
}

fn cmd_commensurable(
    k: i64,
    specs: &[String],
    rotated: bool,
    tau13: bool,
    opts: &GlobalOpts,
) -> Result<Payload, Error> {
    let xs = xk_signature(k)?;
    let mut structures: Vec<(String, AngleVector)> = Vec::new();
    for text in specs {
        let set = SlopeSet::parse(xs.k(), text)?;
        let y = solve_filling(xs.gk(), &set.to_filling(), &SolveOptions::default())?;
        let residual = residuals(xs.gk(), &y)?.max_norm();
        if residual.is_nan() || residual > opts.tol_residual {
            return Err(Error::Convergence { residual, iterations: 0 });
        }
        let label = set.to_string();
        let mut derived = Vec::new();
        if rotated {
            derived.push((format!("Θ(r)·{label}"), theta_r(&y, xs)?));
            derived.push((format!("Θ(r²)·{label}"), theta_r2(&y, xs)?));
        }
        if tau13 {
            derived.push((format!("τ₁₃·{label}"), tau_13(&y, xs)?));
        }
        structures.push((label, y));
        structures.extend(derived);
    }
    let entries = structures
        .iter()
        .map(|(label, x)| Ok(AbcEntry { label: label.clone(), abc: abc(x, xs)?, defect: abc_defect(x, xs)? }))
        .collect::<Result<Vec<_>, Error>>()?;
    let mut pairs = Vec::new();
    for i in 0..structures.len() {
        for j in i + 1..structures.len() {
            pairs.push(PairVerdict {
                first: structures[i].0.clone(),
                second: structures[j].0.clone(),
                distance: entries[i].abc.distance(&entries[j].abc),
                verdict: commensurable(&structures[i].1, &structures[j].1, xs, opts.tol_invariant)?,
            });
        }
    }
    Ok(Payload::Commensurable { k: xs.k(), entries, pairs })
}

fn cmd_tangent(g: i64, k: i64) -> Result<Payload, Error> {
    let sig = signature(g, k)?;
    let x0 = solve_complete(sig)?.x0;
    let ns = nullspace(&jacobian(sig, &x0)?, 1e-10);
    let expected = 2 * sig.k();
    let distance =
        if ns.nullity() == expected { Some(subspace_distance(&ns.basis, &tangent_basis(sig)?.matrix())) } else { None };
    let sv = &ns.singular_values;
    Ok(Payload::Tangent {
        signature: (sig.g(), sig.k()),
        nullity: ns.nullity(),
        expected_nullity: expected,
        gap: ns.gap.is_finite().then_some(ns.gap),
        subspace_distance: distance,
        smallest_singular_values: sv[sv.len().saturating_sub(expected + 1)..].to_vec(),
    })
}

fn cmd_trace(g: i64, k: i64, delta: u8, r0: Option<f64>, grid: usize) -> Result<Payload, Error> {
    let sig = signature(g, k)?;
    let values = match r0 {
        Some(r) => vec![r],
        None => r0_grid(sig, delta, grid, 0.1)?,
    };
    let rows = values
        .into_iter()
        .map(|r| {
            let input = varsigma_trace_data(sig, delta, r)?;
            Ok(TraceRow {
                input,
                trace: input.trace_at(0.0)?,
                second_derivative: trace_second_derivative(&input),
                closed_form: (delta == 0).then(|| trace_second_derivative_opposite(&input)),
                stima: stima_inequality(input.lambda0, input.eta0, input.zeta0),
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(Payload::Trace { signature: (sig.g(), sig.k()), delta, rows })
}

/// Runs one parsed command.
pub fn execute(cli: &Cli) -> Result<Document, CliError> {
    let o = &cli.global;
    let payload = match &cli.command {
        Command::Complete { g, k } => cmd_complete(*g, *k, o)?,
        Command::Fill { g, k, coeffs, threads } => cmd_fill(*g, *k, coeffs, *threads, o)?,
        Command::Slopes { max_len_sq } => cmd_slopes(*max_len_sq),
        Command::Similar { k, a, b, allow_reflections } => cmd_similar(*k, a, b, *allow_reflections)?,
        Command::Commensurable { k, specs, rotated, tau13 } => cmd_commensurable(*k, specs, *rotated, *tau13, o)?,
        Command::Tangent { g, k } => cmd_tangent(*g, *k)?,
        Command::Trace { g, k, delta, r0, grid } => cmd_trace(*g, *k, *delta, *r0, *grid)?,
    };
    Ok(Document { schema: SCHEMA.to_string(), payload })
}

fn fmt_c(z: Complex64) -> String {
    format!("{:.12} {} {:.12}i", z.re, if z.im < 0.0 { '-' } else { '+' }, z.im.abs())
}

fn render_structure(out: &mut String, s: &StructureReport) {
    let _ = writeln!(out, "signature (g, k) = ({}, {})   filling [{}]", s.signature.0, s.signature.1, s.filling);
    let _ = writeln!(out, "  residual            {:.3e}", s.residual);
    for c in &s.cusps {
        match &c.state {
            CuspState::Complete { modulus } => {
                let _ = writeln!(out, "  cusp {:<3} complete   modulus {}", c.index, fmt_c(*modulus));
            }
            CuspState::Filled { slope, coefficients, complex_length } => {
                let _ = writeln!(
                    out,
                    "  cusp {:<3} filled {:<8} (p, q) = ({:.10}, {:.10})   complex length {}",
                    c.index,
                    slope,
                    coefficients.0,
                    coefficients.1,
                    fmt_c(*complex_length)
                );
            }
        }
    }
    let _ = writeln!(out, "  return path length  {:.12}", s.return_path_length);
    let _ = writeln!(out, "  homology rank       {}", s.homology_rank);
    let _ = writeln!(out, "  Heegaard genus      {}", s.heegaard_genus);
    if let Some(t) = &s.abc {
        let _ = writeln!(out, "  (a, b, c)           ({:.12}, {:.12}, {:.12})", t.a, t.b, t.c);
    }
}

/// Plain-text rendering of a document.
pub fn render_text(doc: &Document) -> String {
    let mut out = String::new();
    match &doc.payload {
        Payload::Complete { alpha_bar, beta_bar, inequalities_hold, structure } => {
            let _ = writeln!(out, "ᾱ = {alpha_bar:.15}   β̄ = {beta_bar:.15}");
            let _ = writeln!(out, "ᾱ < β̄ < 2ᾱ ≤ π/3: {}", if *inequalities_hold { "holds" } else { "FAILS" });
            render_structure(&mut out, structure);
        }
        Payload::Fill { structures } => {
            for s in structures {
                render_structure(&mut out, s);
            }
        }
        Payload::Slopes { max_len_sq, orbits } => {
            let _ = writeln!(out, "slope orbits with L² ≤ {max_len_sq}");
            let _ = writeln!(out, "{:>6} {:>10} {:>6} {:>6} {:>11}  slopes", "L²", "L", "|D6|", "|C6|", "hyperbolic");
            for o in orbits {
                let _ = writeln!(
                    out,
                    "{:>6} {:>10.6} {:>6} {:>6} {:>11}  {}",
                    o.length_sq,
                    o.length,
                    o.orbit_size,
                    o.rotation_orbit_size,
                    o.hyperbolic,
                    o.slopes.join(" ")
                );
            }
        }
        Payload::Similar { a, b, orientation_preserving, witness, .. } => {
            let group = if *orientation_preserving { "orientation-preserving" } else { "all" };
            match witness {
                Some(w) => {
                    let local: Vec<String> = w.local.iter().map(ToString::to_string).collect();
                    let perm: Vec<usize> = w.perm.iter().map(|p| p + 1).collect();
                    let _ = writeln!(out, "{a} ~ {b} ({group} isometries)");
                    let _ = writeln!(out, "  witness: torus i ↦ {perm:?}, local [{}]", local.join(", "));
                }
                None => {
                    let _ = writeln!(out, "{a} and {b} are not related by {group} isometries");
                }
            }
        }
        Payload::Commensurable { entries, pairs, .. } => {
            for e in entries {
                let _ = writeln!(
                    out,
                    "{:<28} a = {:.12}  b = {:.12}  c = {:.12}  (a+b+c+6β−2π = {:.1e})",
                    e.label, e.abc.a, e.abc.b, e.abc.c, e.defect
                );
            }
            for p in pairs {
                let _ = writeln!(out, "{} vs {}: {} (Δ = {:.3e})", p.first, p.second, p.verdict, p.distance);
            }
        }
        Payload::Tangent { signature, nullity, expected_nullity, gap, subspace_distance, smallest_singular_values } => {
            let _ = writeln!(out, "signature (g, k) = ({}, {})", signature.0, signature.1);
            let _ = writeln!(out, "  nullity             {nullity} (expected {expected_nullity})");
            let gap = gap.map_or("∞".to_string(), |g| format!("{g:.3e}"));
            let _ = writeln!(out, "  singular-value gap  {gap}");
            if let Some(d) = subspace_distance {
                let _ = writeln!(out, "  distance to Z̄       {d:.3e}");
            }
            let sv: Vec<String> = smallest_singular_values.iter().map(|s| format!("{s:.3e}")).collect();
            let _ = writeln!(out, "  smallest σ          {}", sv.join(" "));
        }
        Payload::Trace { signature, delta, rows } => {
            let _ = writeln!(out, "signature (g, k) = ({}, {})   δ = {delta}", signature.0, signature.1);
            let _ = writeln!(out, "{:>10} {:>14} {:>14} {:>14} {:>6}", "r0", "trace", "tr''", "closed form", "stima");
            for r in rows {
                let r0 = r.input.zeta0 - (4.0 + 2.0 * r.input.delta as f64) * 0.5 * r.input.eta0;
                let closed = r.closed_form.map_or("-".to_string(), |c| format!("{c:.10}"));
                let _ = writeln!(
                    out,
                    "{:>10.6} {:>14.10} {:>14.10} {:>14} {:>6}",
                    r0, r.trace, r.second_derivative, closed, r.stima
                );
            }
        }
    }
    out
}

/// Serializes a document; floats use the shortest representation that
/// parses back to the identical value.
pub fn render_json(doc: &Document) -> String {
    serde_json::to_string_pretty(doc).expect("documents contain only finite numbers")
}

/// Parses `args` (including the program name), runs the command and writes
/// the output to `stdout` or the `--out` file. Errors go to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code() as u8;
            let text = e.render().to_string();
            let _ = if code == 0 { write!(stdout, "{text}") } else { write!(stderr, "{text}") };
            return code;
        }
    };
    let doc = match execute(&cli) {
        Ok(doc) => doc,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            return e.code;
        }
    };
    let text = if cli.global.json { render_json(&doc) + "\n" } else { render_text(&doc) };
    let written = match &cli.global.out {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => stdout.write_all(text.as_bytes()),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot write output: {e}");
            EXIT_INPUT
        }
    }
}
