//! Subcommands. Each returns a JSON report; `gen` returns a space file.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use matlie::cartan::{cartan_as_matrix_space, cartan_subalgebra, CartanConfig};
use matlie::certificate::{
    find_kernel_certificate, intertwining_check, linker_cross_identity_check, verify_certificate,
    KernelCertificate, Side,
};
use matlie::families::ExampleSpec;
use matlie::lie::{closure_check, structure_constants, ClosureCheck};
use matlie::linalg::rank;
use matlie::sdit::{
    grid_sdit, random_rank_probe, sdit_decide, semisimple_max_rank, singular_via_weights, weights,
    SpectrumMode, Verdict, DEFAULT_GRID_GUARD,
};
use matlie::shrunk::{
    composition_series, has_shrunk_subspace, ncrk_bruteforce, shrink_deficit, BruteForceLimits,
    CompositionSeries, ShrunkAnswer,
};
use matlie::{Field, FiniteField, Fp, Matrix, MatrixSpace, Rational, Subspace};
use serde_json::{json, Value};

use crate::format::{parse_space_file, write_space_file, FieldSpec, Metadata, SpaceFile};
use crate::report::{self, read_matrix, read_vector};
use crate::CliError;

type Q = Rational;

#[derive(Parser, Debug)]
#[command(
    name = "matlie",
    version,
    about = "Exact singularity and shrunk-subspace analysis of matrix spaces"
)]
pub struct Cli {
    /// Accept non-canonical entries and normalize them with a warning
    #[arg(long, global = true)]
    pub lenient: bool,

    /// Number of trial values for the Cartan descent (default: dimension + 1)
    #[arg(long, global = true, value_name = "N")]
    pub omega_size: Option<usize>,

    /// Cap on the number of subspaces a brute-force search may enumerate
    #[arg(long, global = true, value_name = "N")]
    pub guard_subspaces: Option<u128>,

    /// Seed for sampled cross-checks and random families
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Space file (stdin when absent or "-")
    pub file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BfField {
    Gf2,
    Gf3,
    Gf5,
    Gf7,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    #[value(alias = "left")]
    L,
    #[value(alias = "right")]
    R,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lie closure of the span
    Check(Input),
    /// Decide whether every element of a Lie-closed space is singular
    Sdit {
        #[command(flatten)]
        input: Input,
        /// Evaluate det on the grid {0..n}^m instead (works for any space)
        #[arg(long)]
        grid: bool,
        /// Maximum number of grid points
        #[arg(long, default_value_t = DEFAULT_GRID_GUARD)]
        grid_guard: u128,
        /// Also sample this many random rational points as a cross-check
        #[arg(long, default_value_t = 0)]
        probe: usize,
    },
    /// Maximum rank over the Cartan hitting set (semisimple algebras)
    Maxrank(Input),
    /// Cartan subalgebra by regular-element descent
    Cartan(Input),
    /// Weight decomposition of the Cartan subalgebra action
    Weights {
        #[command(flatten)]
        input: Input,
        /// Fail on characteristic factors without rational roots
        #[arg(long)]
        strict: bool,
    },
    /// Does some nonzero subspace U satisfy dim B(U) < dim U?
    Shrunk(Input),
    /// Non-commutative rank by exhaustive subspace search over a small prime field
    NcrkBf {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        field: BfField,
    },
    /// Composition series of the natural module
    Compseries(Input),
    /// Polynomial kernel certificate of a given degree
    Linker {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        #[arg(long, value_enum, default_value = "r")]
        side: SideArg,
    },
    /// Write a space from a named family
    Gen {
        /// lambda, sl-standard, sl-monomial, heisenberg, strict-upper, borel-sl2,
        /// example2-random or adjoint
        family: String,
        params: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-check the witness or certificate in a report against its space
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        report: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Decided,
    Undetermined,
    Failed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Decided => 0,
            Status::Undetermined => 2,
            Status::Failed => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Output {
    Json(Value),
    Text(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub output: Output,
    pub status: Status,
}

impl Outcome {
    pub fn json(&self) -> Option<&Value> {
        match &self.output {
            Output::Json(v) => Some(v),
            Output::Text(_) => None,
        }
    }
}

fn read_text(path: Option<&Path>, stdin: &mut dyn Read) -> Result<String, CliError> {
    match path {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    file: SpaceFile,
    warnings: Vec<String>,
    start: Instant,
}

impl Ctx<'_> {
    fn rational(&mut self, command: &str) -> Result<MatrixSpace<Q>, CliError> {
        if self.file.field != FieldSpec::Rational {
            return Err(CliError::Unsupported(format!(
                "{command} works over Q, input is over {}",
                self.file.field.name()
            )));
        }
        let s = self.file.rational_space()?;
        self.warnings.extend(s.warnings().iter().cloned());
        Ok(s)
    }

    fn cartan_config(&self, dim: usize) -> CartanConfig<Q> {
        match self.cli.omega_size {
            Some(k) => CartanConfig::with_omega_size(k),
            None => CartanConfig::for_dim(dim),
        }
    }

    fn finish(self, command: &str, body: Value, status: Status) -> Outcome {
        let mut input = json!({
            "field": self.file.field.name(),
            "n": self.file.n,
            "matrices": self.file.basis.len(),
        });
        if let Some(name) = self.file.metadata.as_ref().and_then(|m| m.name.clone()) {
            input["name"] = Value::String(name);
        }
        let mut out = serde_json::Map::new();
        out.insert("command".into(), Value::String(command.into()));
        out.insert("input".into(), input);
        if let Value::Object(fields) = body {
            out.extend(fields);
        }
        out.insert("warnings".into(), json!(self.warnings));
        out.insert(
            "timing_ms".into(),
            json!(self.start.elapsed().as_secs_f64() * 1000.0),
        );
        let body = Value::Object(out);
        Outcome {
            output: Output::Json(body),
            status,
        }
    }
}

macro_rules! with_field {
    ($ctx:expr, $s:ident, $conv:ident => $body:expr) => {
        match $ctx.file.field {
            FieldSpec::Rational => {
                let $s = $ctx.file.rational_space()?;
                let $conv = |x: &Q| Some(x.clone());
                $ctx.warnings.extend($s.warnings().iter().cloned());
                $body
            }
            FieldSpec::Prime(2) => {
                let $s = $ctx.file.prime_space::<2>()?;
                let $conv = Fp::<2>::from_rational;
                $body
            }
            FieldSpec::Prime(3) => {
                let $s = $ctx.file.prime_space::<3>()?;
                let $conv = Fp::<3>::from_rational;
                $body
            }
            FieldSpec::Prime(5) => {
                let $s = $ctx.file.prime_space::<5>()?;
                let $conv = Fp::<5>::from_rational;
                $body
            }
            FieldSpec::Prime(7) => {
                let $s = $ctx.file.prime_space::<7>()?;
                let $conv = Fp::<7>::from_rational;
                $body
            }
            FieldSpec::Prime(p) => {
                return Err(CliError::Unsupported(format!(
                    "GF({p}); supported prime fields are GF(2), GF(3), GF(5), GF(7)"
                )))
            }
        }
    };
}

/// Runs one command. `stdin` supplies the space when no file is named.
pub fn run(cli: &Cli, stdin: &mut dyn Read) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let input = match &cli.command {
        Command::Gen {
            family,
            params,
            output,
        } => return gen(cli, family, params, output.as_deref(), start),
        Command::Check(i)
        | Command::Maxrank(i)
        | Command::Cartan(i)
        | Command::Shrunk(i)
        | Command::Compseries(i) => i,
        Command::Sdit { input, .. }
        | Command::Weights { input, .. }
        | Command::NcrkBf { input, .. }
        | Command::Linker { input, .. }
        | Command::Verify { input, .. } => input,
    };
    let file = parse_space_file(&read_text(input.file.as_deref(), stdin)?, cli.lenient)?;
    let mut ctx = Ctx {
        cli,
        warnings: file.warnings.clone(),
        file,
        start,
    };
    match &cli.command {
        Command::Check(_) => check(ctx),
        Command::Sdit {
            grid,
            grid_guard,
            probe,
            ..
        } => {
            let s = ctx.rational("sdit")?;
            sdit(ctx, &s, *grid, *grid_guard, *probe)
        }
        Command::Maxrank(_) => {
            let s = ctx.rational("maxrank")?;
            let cfg = ctx.cartan_config(s.dim());
            let r = semisimple_max_rank(&s, &cfg)?;
            let body = json!({
                "n": s.n(),
                "max_rank": r.max_rank,
                "full_rank": r.max_rank == s.n(),
                "witness": r.witness.as_ref().map(report::witness),
                "cartan": report::cartan(&r.cartan, &r.cartan_basis),
            });
            Ok(ctx.finish("maxrank", body, Status::Decided))
        }
        Command::Cartan(_) => {
            let s = ctx.rational("cartan")?;
            let l = structure_constants(&s)?;
            let c = cartan_subalgebra(&l, &ctx.cartan_config(s.dim()))?;
            let basis = cartan_as_matrix_space(&l, &c.subalgebra).basis().to_vec();
            let body = json!({
                "dim": s.dim(),
                "semisimple": l.is_semisimple(),
                "nilpotent": l.is_nilpotent(),
                "cartan": report::cartan(&c, &basis),
            });
            let status = if c.verified {
                Status::Decided
            } else {
                Status::Failed
            };
            Ok(ctx.finish("cartan", body, status))
        }
        Command::Weights { strict, .. } => {
            let s = ctx.rational("weights")?;
            let l = structure_constants(&s)?;
            let c = cartan_subalgebra(&l, &ctx.cartan_config(s.dim()))?;
            let basis = cartan_as_matrix_space(&l, &c.subalgebra).basis().to_vec();
            let mode = if *strict {
                SpectrumMode::Strict
            } else {
                SpectrumMode::Permissive
            };
            let w = weights(&basis, mode)?;
            let body = json!({
                "mode": if *strict { "strict" } else { "permissive" },
                "verdict": singular_via_weights(&w).as_str(),
                "zero_weight": w.has_zero_weight(),
                "weights": w.weights.iter().map(|ws| json!({
                    "weight": report::vector(&ws.weight),
                    "multiplicity": ws.multiplicity,
                    "semisimple": ws.semisimple,
                    "space": report::subspace(&ws.space),
                })).collect::<Vec<_>>(),
                "residual": {
                    "space": report::subspace(&w.residual),
                    "factors": w.residual_factors,
                },
                "cartan": report::cartan(&c, &basis),
            });
            Ok(ctx.finish("weights", body, Status::Decided))
        }
        Command::Shrunk(_) => {
            let s = ctx.rational("shrunk")?;
            let d = has_shrunk_subspace(&s)?;
            let (witness, status) = match &d.answer {
                ShrunkAnswer::Yes { factor, witness } => (
                    json!({
                        "factor": factor,
                        "subspace": report::subspace(&witness.subspace),
                        "image": report::subspace(&witness.image),
                        "deficit": witness.deficit,
                    }),
                    Status::Decided,
                ),
                ShrunkAnswer::No => (Value::Null, Status::Decided),
                ShrunkAnswer::Undetermined { .. } => (Value::Null, Status::Undetermined),
            };
            let undetermined = match &d.answer {
                ShrunkAnswer::Undetermined { factors } => json!(factors),
                _ => json!([]),
            };
            let body = json!({
                "verdict": d.answer.as_str(),
                "witness": witness,
                "undetermined_factors": undetermined,
                "series": series_json(&d.series),
            });
            Ok(ctx.finish("shrunk", body, status))
        }
        Command::Compseries(_) => {
            let s = ctx.rational("compseries")?;
            let series = composition_series(&s)?;
            let status = if series.is_complete() {
                Status::Decided
            } else {
                Status::Undetermined
            };
            let body = json!({
                "verdict": if series.is_complete() { "complete" } else { "undetermined" },
                "series": series_json(&series),
            });
            Ok(ctx.finish("compseries", body, status))
        }
        Command::NcrkBf { field, .. } => ncrk(ctx, *field),
        Command::Linker { degree, side, .. } => {
            let side = match side {
                SideArg::L => Side::Left,
                SideArg::R => Side::Right,
            };
            with_field!(ctx, s, _conv => linker(ctx, &s, *degree, side))
        }
        Command::Verify { report, .. } => {
            let text = read_text(Some(report), &mut std::io::empty())?;
            let r: Value =
                serde_json::from_str(&text).map_err(|e| CliError::Report(e.to_string()))?;
            verify(ctx, &r)
        }
        Command::Gen { .. } => unreachable!("handled above"),
    }
}

fn check(mut ctx: Ctx<'_>) -> Result<Outcome, CliError> {
    let body = with_field!(ctx, s, _conv => {
        match closure_check(&s) {
            ClosureCheck::Closed => {
                let l = structure_constants(&s)?;
                json!({
                    "verdict": "closed",
                    "dim": s.dim(),
                    "counterexample": null,
                    "nilpotent": l.is_nilpotent(),
                    "solvable": l.is_solvable(),
                })
            }
            ClosureCheck::Counterexample { i, j } => json!({
                "verdict": "not-closed",
                "dim": s.dim(),
                "counterexample": {
                    "i": i + 1,
                    "j": j + 1,
                    "bracket": report::matrix(&s.basis()[i].commutator(&s.basis()[j])),
                },
            }),
        }
    });
    Ok(ctx.finish("check", body, Status::Decided))
}

fn sdit(
    ctx: Ctx<'_>,
    s: &MatrixSpace<Q>,
    grid: bool,
    guard: u128,
    probe: usize,
) -> Result<Outcome, CliError> {
    let n = s.n();
    let (verdict, mut body) = if grid {
        let g = grid_sdit(s, guard)?;
        (
            g.verdict,
            json!({
                "method": "grid",
                "verdict": g.verdict.as_str(),
                "witness": g.witness.as_ref().map(report::witness),
                "points_evaluated": g.points_evaluated.to_string(),
            }),
        )
    } else {
        let v = sdit_decide(s, &ctx.cartan_config(s.dim()))?;
        (
            v.verdict,
            json!({
                "method": "cartan-hitting-set",
                "verdict": v.verdict.as_str(),
                "witness": v.witness.as_ref().map(report::witness),
                "max_rank_over_hits": v.max_rank_over_hits,
                "points_evaluated": v.points_evaluated,
                "cartan": report::cartan(&v.cartan, &v.cartan_basis),
            }),
        )
    };
    if probe > 0 {
        let p = random_rank_probe(s, probe, ctx.cli.seed);
        let consistent = verdict == Verdict::NonSingular || p.max_rank < n;
        body["probe"] = json!({
            "samples": p.samples,
            "seed": ctx.cli.seed,
            "max_rank": p.max_rank,
            "consistent": consistent,
        });
    }
    Ok(ctx.finish("sdit", body, Status::Decided))
}

fn series_json(series: &CompositionSeries) -> Value {
    json!({
        "complete": series.is_complete(),
        "chain_dims": series.chain.iter().map(Subspace::dim).collect::<Vec<_>>(),
        "chain": series.chain.iter().map(report::subspace).collect::<Vec<_>>(),
        "factors": series.factors.iter().map(|f| json!({
            "dim": f.dim,
            "status": f.status.as_str(),
            "trivial": f.trivial,
            "absolutely_irreducible": f.absolutely_irreducible,
        })).collect::<Vec<_>>(),
    })
}

fn ncrk(mut ctx: Ctx<'_>, field: BfField) -> Result<Outcome, CliError> {
    let p = match field {
        BfField::Gf2 => 2,
        BfField::Gf3 => 3,
        BfField::Gf5 => 5,
        BfField::Gf7 => 7,
    };
    if let FieldSpec::Prime(q) = ctx.file.field {
        if q != p {
            return Err(CliError::Unsupported(format!(
                "input is over GF({q}), requested GF({p})"
            )));
        }
    }
    let limits = match ctx.cli.guard_subspaces {
        Some(g) => BruteForceLimits::count_only(g),
        None => BruteForceLimits::default(),
    };
    let body = match p {
        2 => ncrk_over(&ctx.file.prime_space::<2>()?, &limits)?,
        3 => ncrk_over(&ctx.file.prime_space::<3>()?, &limits)?,
        5 => ncrk_over(&ctx.file.prime_space::<5>()?, &limits)?,
        _ => ncrk_over(&ctx.file.prime_space::<7>()?, &limits)?,
    };
    if ctx.file.field == FieldSpec::Rational {
        ctx.warnings
            .push(format!("rational entries reduced modulo {p}"));
    }
    Ok(ctx.finish("ncrk-bf", body, Status::Decided))
}

fn ncrk_over<F: FiniteField>(
    s: &MatrixSpace<F>,
    limits: &BruteForceLimits,
) -> Result<Value, CliError> {
    let r = ncrk_bruteforce(s, limits)?;
    Ok(json!({
        "field": r.field,
        "n": r.n,
        "dim_over_field": s.dim(),
        "ncrk": r.ncrk,
        "max_deficit": r.max_deficit,
        "canonical_lower": report::subspace(&r.canonical_lower),
        "canonical_upper": report::subspace(&r.canonical_upper),
        "max_deficit_subspaces": r.all_max_deficit_count.to_string(),
        "subspaces_examined": r.subspaces_examined.to_string(),
        "canonical_attain_max": r.canonical_attain_max,
    }))
}

fn certificate_json<F: Field>(c: &KernelCertificate<F>) -> Value {
    json!({
        "side": c.side.as_str(),
        "degree": c.degree,
        "nvars": c.nvars,
        "n": c.n,
        "monomials": c.monomials,
        "coeffs": c.coeffs.iter().map(|v| report::vector(v)).collect::<Vec<_>>(),
    })
}

fn linker<F: Field>(
    ctx: Ctx<'_>,
    s: &MatrixSpace<F>,
    degree: usize,
    side: Side,
) -> Result<Outcome, CliError> {
    let found = find_kernel_certificate(s, degree, side)?;
    let body = match &found {
        None => json!({
            "verdict": "none",
            "side": side.as_str(),
            "degree": degree,
            "certificate": null,
        }),
        Some(c) => {
            let closed = closure_check(s).is_closed();
            let (intertwining, note) = if degree != 1 {
                (Value::Null, Some("only checked for degree 1"))
            } else if !closed {
                (Value::Null, Some("not applicable: space is not Lie-closed"))
            } else {
                (json!(intertwining_check(s, c)?), None)
            };
            json!({
                "verdict": "certificate",
                "side": side.as_str(),
                "degree": degree,
                "certificate": certificate_json(c),
                "verified": verify_certificate(s, c)?,
                "cross_identity": (degree == 1).then(|| linker_cross_identity_check(s, c)),
                "intertwining": intertwining,
                "intertwining_note": note,
            })
        }
    };
    Ok(ctx.finish("linker", body, Status::Decided))
}

fn gen(
    cli: &Cli,
    family: &str,
    params: &[String],
    output: Option<&Path>,
    start: Instant,
) -> Result<Outcome, CliError> {
    let mut args: Vec<&str> = std::iter::once(family)
        .chain(params.iter().map(String::as_str))
        .collect();
    let seed = cli.seed.to_string();
    if family == "example2-random" && args.len() == 2 {
        args.push(&seed);
    }
    let spec = ExampleSpec::parse(&args)?;
    let s = spec.build()?;
    let meta = Metadata {
        name: Some(spec.name()),
        family: Some(spec.family().to_string()),
        params: Some(spec.params()),
    };
    let text = write_space_file(&SpaceFile::from_rational(&s, Some(meta)));
    match output {
        None => Ok(Outcome {
            output: Output::Text(text),
            status: Status::Decided,
        }),
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Ok(Outcome {
                output: Output::Json(json!({
                    "command": "gen",
                    "name": spec.name(),
                    "n": s.n(),
                    "dim": s.dim(),
                    "output": path.display().to_string(),
                    "timing_ms": start.elapsed().as_secs_f64() * 1000.0,
                })),
                status: Status::Decided,
            })
        }
    }
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Report(msg.into())
}

fn verify(mut ctx: Ctx<'_>, r: &Value) -> Result<Outcome, CliError> {
    let command = r["command"]
        .as_str()
        .ok_or_else(|| bad("missing \"command\""))?
        .to_string();
    let mut checks: Vec<(String, bool)> = Vec::new();
    match command.as_str() {
        "sdit" | "maxrank" => {
            let s = ctx.rational(&command)?;
            verify_rank_witness(&s, r, &mut checks)?;
        }
        "shrunk" => {
            let s = ctx.rational(&command)?;
            if r["verdict"] != "yes" {
                return Err(bad("only \"yes\" shrunk verdicts carry a witness"));
            }
            let w = &r["witness"]["subspace"]["basis"];
            let vecs = w
                .as_array()
                .ok_or_else(|| bad("witness subspace missing"))?
                .iter()
                .map(|v| read_vector(v).ok_or_else(|| bad("bad witness vector")))
                .collect::<Result<Vec<_>, _>>()?;
            if vecs.iter().any(|v| v.len() != s.n()) {
                return Err(bad("witness vectors have the wrong length"));
            }
            let u = Subspace::span(s.n(), vecs);
            let d = shrink_deficit(&s, &u)?;
            checks.push(("subspace is nonzero".into(), !u.is_zero()));
            checks.push((
                format!("dim B(U) = {} < dim U = {}", d.image.dim(), u.dim()),
                d.deficit > 0,
            ));
        }
        "linker" => {
            let c = &r["certificate"];
            if c.is_null() {
                return Err(bad("report carries no certificate"));
            }
            with_field!(ctx, s, conv => verify_linker(&s, c, conv, &mut checks)?);
        }
        "check" => {
            let c = &r["counterexample"];
            if c.is_null() {
                with_field!(ctx, s, _conv => checks.push(("space is closed".into(), closure_check(&s).is_closed())));
            } else {
                let i = c["i"].as_u64().ok_or_else(|| bad("counterexample.i"))? as usize;
                let j = c["j"].as_u64().ok_or_else(|| bad("counterexample.j"))? as usize;
                with_field!(ctx, s, _conv => {
                    let b = s.basis();
                    if i == 0 || j == 0 || i > b.len() || j > b.len() {
                        return Err(bad("counterexample index out of range"));
                    }
                    let br = b[i - 1].commutator(&b[j - 1]);
                    checks.push((format!("[B{i}, B{j}] is outside the span"), !s.contains(&br)));
                });
            }
        }
        other => return Err(bad(format!("cannot verify reports of {other:?}"))),
    }
    let ok = checks.iter().all(|(_, v)| *v);
    let body = json!({
        "verdict": if ok { "verified" } else { "rejected" },
        "report_command": command,
        "checks": checks.iter().map(|(what, v)| json!({ "check": what, "ok": v })).collect::<Vec<_>>(),
    });
    Ok(ctx.finish(
        "verify",
        body,
        if ok { Status::Decided } else { Status::Failed },
    ))
}

fn verify_rank_witness(
    s: &MatrixSpace<Q>,
    r: &Value,
    checks: &mut Vec<(String, bool)>,
) -> Result<(), CliError> {
    let w = &r["witness"];
    if w.is_null() {
        return Err(bad("report carries no witness"));
    }
    let point = read_vector(&w["point"]).ok_or_else(|| bad("witness.point"))?;
    let m = read_matrix(&w["matrix"]).ok_or_else(|| bad("witness.matrix"))?;
    let claimed = w["rank"].as_u64().ok_or_else(|| bad("witness.rank"))? as usize;
    let combo_basis: Vec<Matrix<Q>> = if r["method"] == "grid" {
        s.basis().to_vec()
    } else {
        let mats = r["cartan"]["matrices"]
            .as_array()
            .ok_or_else(|| bad("cartan.matrices"))?
            .iter()
            .map(|v| read_matrix(v).ok_or_else(|| bad("bad cartan matrix")))
            .collect::<Result<Vec<_>, _>>()?;
        checks.push((
            "Cartan matrices lie in the space".into(),
            mats.iter().all(|c| s.contains(c)),
        ));
        mats
    };
    if point.len() != combo_basis.len() || combo_basis.iter().any(|b| b.shape() != m.shape()) {
        return Err(bad("witness point does not match the basis"));
    }
    let mut combo = Matrix::zeros(s.n(), s.n());
    for (c, b) in point.iter().zip(&combo_basis) {
        combo.add_scaled(c, b);
    }
    checks.push((
        "witness matrix is the stated combination".into(),
        combo == m,
    ));
    checks.push(("witness matrix lies in the space".into(), s.contains(&m)));
    let actual = rank(&m);
    checks.push((
        format!("rank {actual} equals the claimed {claimed}"),
        actual == claimed,
    ));
    if r["verdict"] == Verdict::NonSingular.as_str() {
        checks.push(("witness is invertible".into(), actual == s.n()));
    }
    Ok(())
}

fn verify_linker<F: Field>(
    s: &MatrixSpace<F>,
    c: &Value,
    conv: impl Fn(&Q) -> Option<F>,
    checks: &mut Vec<(String, bool)>,
) -> Result<(), CliError> {
    let side = match c["side"].as_str() {
        Some("left") => Side::Left,
        Some("right") => Side::Right,
        _ => return Err(bad("certificate.side")),
    };
    let field = |k: &str| {
        c[k].as_u64()
            .map(|v| v as usize)
            .ok_or_else(|| bad(format!("certificate.{k}")))
    };
    let monomials: Vec<Vec<usize>> =
        serde_json::from_value(c["monomials"].clone()).map_err(|_| bad("certificate.monomials"))?;
    let coeffs = c["coeffs"]
        .as_array()
        .ok_or_else(|| bad("certificate.coeffs"))?
        .iter()
        .map(|v| {
            read_vector(v)
                .and_then(|v| v.iter().map(&conv).collect::<Option<Vec<F>>>())
                .ok_or_else(|| bad("bad coefficient vector"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let cert = KernelCertificate {
        side,
        degree: field("degree")?,
        nvars: field("nvars")?,
        n: field("n")?,
        monomials,
        coeffs,
    };
    checks.push((
        "certificate annihilates the space".into(),
        verify_certificate(s, &cert)?,
    ));
    Ok(())
}
