use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gkcodes::codes::{
    export_code, one_point_dual, punctured_dual, three_point_code, ThreePointReport,
};
use gkcodes::geometry::{secant_classification, SearchBudget, SecantTable};
use gkcodes::io::{points_csv, secants_csv, write_atomic};
use gkcodes::report::{tangent_report, verify_suite, SuiteOptions};
use gkcodes::weights::{
    certified_min_distance, count_min_weight, exhaustive_dependence_search, line_sections,
    secant_count_formula, three_point_formula, weight_hierarchy,
};
use gkcodes::{CurveParams, Elem, EvaluationCode, Level, PointClass, PointSet};

#[derive(Parser)]
#[command(name = "gkcodes", version, about = "Evaluation codes on the GK curve")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    run: RunConfig,
}

#[derive(Args, Clone)]
struct RunConfig {
    /// Curve parameter (2, 3, 4 or 7)
    #[arg(long, global = true, default_value_t = 2, value_parser = parse_q)]
    q: u32,
    /// Seed for sampled checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = all cores)
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    /// Node budget for exhaustive support searches
    #[arg(long, global = true, default_value_t = 50_000_000)]
    budget_subsets: u64,
    /// Number of sampled planes / conic subschemes
    #[arg(long, global = true, default_value_t = 200)]
    budget_conics: usize,
    /// Output file; relative paths go under $GKCODES_OUT_DIR when set
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write zero in every runtime field so reports are byte-stable
    #[arg(long, global = true)]
    no_timings: bool,
}

#[derive(Args, Clone)]
struct CodeArgs {
    #[arg(long, value_enum, default_value_t = Family::OnePoint)]
    family: Family,
    /// Degree for the one-point and punctured families
    #[arg(long, default_value_t = 2)]
    m: u32,
    /// Degree for the three-point family
    #[arg(long, default_value_t = 6)]
    d: u32,
    #[arg(long, default_value_t = 6)]
    a1: u32,
    #[arg(long, default_value_t = 3)]
    a2: u32,
    #[arg(long, default_value_t = 3)]
    a3: u32,
    /// Points of E as `x:y:z:t` with prime-field integers
    #[arg(long, default_value = "0:0:0:1")]
    p1: String,
    #[arg(long, default_value = "1:3:0:1")]
    p2: String,
    #[arg(long, default_value = "1:4:0:1")]
    p3: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    OnePoint,
    /// One-point dual punctured at the affine F_{q²}-rational points
    Punctured,
    ThreePoint,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportKind {
    Points,
    Secants,
    Matrix,
    Report,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Smoke,
    Full,
    Heavy,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rational points as CSV
    Points,
    /// Maximal secants as CSV
    Secants,
    /// Tangent multiplicities at every point
    Tangents,
    /// Build a code and report its parameters
    Code(CodeArgs),
    /// Certified minimum distance
    Mindist {
        #[command(flatten)]
        code: CodeArgs,
        /// Also search all column subsets up to this size
        #[arg(long, default_value_t = 0)]
        exhaustive: usize,
    },
    /// Minimum-weight codeword count on line sections
    Weights {
        #[command(flatten)]
        code: CodeArgs,
        /// Weight to count (default: m+2, or d for three-point codes)
        #[arg(long)]
        w: Option<usize>,
    },
    /// Generalized Hamming weights of the dual
    Ghw {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 3)]
        v: usize,
        /// Largest support size scanned exhaustively
        #[arg(long, default_value_t = 4)]
        search_bound: usize,
    },
    /// Run the claim checks and emit a JSON report
    Verify {
        #[arg(long, value_enum, default_value_t = LevelArg::Smoke)]
        level: LevelArg,
        /// Random schemes for the h¹ classification check
        #[arg(long, default_value_t = 500)]
        lemma_samples: usize,
        /// Random 5-subsets for the three-point check
        #[arg(long, default_value_t = 100_000)]
        random_subsets: usize,
    },
    /// Write points, secants, a generator matrix or a smoke report to --out
    Export {
        #[arg(long, value_enum)]
        kind: ExportKind,
        #[command(flatten)]
        code: CodeArgs,
    },
}

fn parse_q(s: &str) -> Result<u32, String> {
    match s.parse::<u32>() {
        Ok(q @ (2 | 3 | 4 | 7)) => Ok(q),
        _ => Err("q must be one of 2, 3, 4, 7".into()),
    }
}

/// Failure carrying its exit status.
struct Fail(u8, String);

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail(2, e.to_string())
    }
}

struct Ctx {
    run: RunConfig,
    params: CurveParams,
    pts: PointSet,
}

impl Ctx {
    fn table(&self) -> Result<SecantTable, Fail> {
        Ok(secant_classification(&self.pts)?)
    }

    fn out_path(&self) -> Option<PathBuf> {
        let p = self.run.out.clone()?;
        match std::env::var_os("GKCODES_OUT_DIR") {
            Some(dir) if p.is_relative() => Some(Path::new(&dir).join(p)),
            _ => Some(p),
        }
    }

    fn emit_text(&self, text: &str) -> Result<(), Fail> {
        match self.out_path() {
            Some(p) => write_atomic(&p, text.as_bytes())?,
            None => print!("{text}"),
        }
        Ok(())
    }

    fn emit(&self, v: &Value) -> Result<(), Fail> {
        let mut s = serde_json::to_string_pretty(v)?;
        s.push('\n');
        self.emit_text(&s)
    }

    fn point(&self, s: &str) -> Result<[Elem; 4], Fail> {
        let f = self.params.field();
        let parts: Vec<i64> = s
            .split(':')
            .map(|x| x.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| Fail(2, format!("bad point `{s}`, expected x:y:z:t")))?;
        let [x, y, z, t] = parts[..] else {
            return Err(Fail(
                2,
                format!("bad point `{s}`, expected four coordinates"),
            ));
        };
        Ok([f.from_int(x), f.from_int(y), f.from_int(z), f.from_int(t)])
    }

    fn build(
        &self,
        a: &CodeArgs,
        table: Option<&SecantTable>,
    ) -> Result<(EvaluationCode, Option<ThreePointReport>, Value), Fail> {
        match a.family {
            Family::OnePoint => Ok((one_point_dual(&self.pts, a.m)?, None, Value::Null)),
            Family::Punctured => {
                let owned;
                let table = match table {
                    Some(t) => t,
                    None => {
                        owned = self.table()?;
                        &owned
                    }
                };
                let s: Vec<usize> = (0..self.pts.affine_count())
                    .filter(|&i| self.pts.class(i) == PointClass::Subfield)
                    .collect();
                let (code, rep) = punctured_dual(&self.pts, table, &s, a.m)?;
                Ok((code, None, serde_json::to_value(rep)?))
            }
            Family::ThreePoint => {
                let p = [self.point(&a.p1)?, self.point(&a.p2)?, self.point(&a.p3)?];
                let (code, rep) = three_point_code(&self.pts, p, a.d, [a.a1, a.a2, a.a3])?;
                let v = serde_json::to_value(&rep)?;
                Ok((code, Some(rep), v))
            }
        }
    }
}

fn summary(code: &EvaluationCode, extra: Value) -> Value {
    json!({
        "family": code.tag(),
        "q": code.params().q(),
        "length": code.len(),
        "dimension": code.dimension(),
        "dual_dimension": code.dual_dimension(),
        "dimension_log": code.dimension_log(),
        "warnings": code.warnings(),
        "report": extra,
    })
}

fn run(cli: Cli) -> Result<u8, Fail> {
    if cli.run.workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.run.workers)
            .build_global()?;
    }
    let params = CurveParams::new(cli.run.q)?;
    let pts = params.enumerate_points()?;
    let ctx = Ctx {
        run: cli.run,
        params,
        pts,
    };
    let budget = SearchBudget {
        conic_subschemes: ctx.run.budget_conics.max(1) * 1000,
        ..SearchBudget::default()
    };
    match cli.cmd {
        Cmd::Points => ctx.emit_text(&points_csv(&ctx.pts))?,
        Cmd::Secants => {
            let t = ctx.table()?;
            ctx.emit_text(&secants_csv(ctx.params.field(), &t))?
        }
        Cmd::Tangents => ctx.emit(&serde_json::to_value(tangent_report(&ctx.pts))?)?,
        Cmd::Code(a) => {
            let (code, _, extra) = ctx.build(&a, None)?;
            ctx.emit(&summary(&code, extra))?
        }
        Cmd::Mindist {
            code: a,
            exhaustive,
        } => {
            let table = ctx.table()?;
            let (code, tp, _) = ctx.build(&a, Some(&table))?;
            let cert = certified_min_distance(
                &code,
                &table,
                tp.as_ref(),
                ctx.run.budget_conics,
                ctx.run.seed,
            )?;
            let witness_points: Vec<usize> =
                cert.witness.iter().map(|&c| code.points()[c]).collect();
            let search = (exhaustive > 0)
                .then(|| exhaustive_dependence_search(&code, exhaustive, ctx.run.budget_subsets));
            ctx.emit(&json!({
                "code": summary(&code, Value::Null),
                "certificate": cert,
                "witness_points": witness_points,
                "exhaustive": search,
            }))?
        }
        Cmd::Weights { code: a, w } => {
            let table = ctx.table()?;
            let (code, tp, _) = ctx.build(&a, Some(&table))?;
            let (w, lines, formula) = match &tp {
                Some(r) => {
                    let w = w.unwrap_or(a.d as usize);
                    let f = three_point_formula(ctx.params.q(), r.sections, a.d);
                    (
                        w,
                        r.b_on_lines.to_vec(),
                        ("(q^6-1) Σ C(|L_i ∩ GK|, d)".to_string(), f),
                    )
                }
                None => {
                    let w = w.unwrap_or(a.m as usize + 2);
                    let f = secant_count_formula(ctx.params.q(), a.m);
                    (
                        w,
                        line_sections(&code, &table),
                        ("(q+1)(q^5-q^3)(q^6-1) C(q^2-q+1, m+2)".to_string(), f),
                    )
                }
            };
            let wc = count_min_weight(&code, w, &lines, Some(formula))?;
            ctx.emit(&serde_json::to_value(wc)?)?
        }
        Cmd::Ghw {
            code: a,
            v,
            search_bound,
        } => {
            let table = ctx.table()?;
            let (code, tp, _) = ctx.build(&a, Some(&table))?;
            let cands = match &tp {
                Some(r) => r.b_on_lines.to_vec(),
                None => line_sections(&code, &table),
            };
            let h = weight_hierarchy(&code, v, search_bound, &cands, ctx.run.budget_subsets);
            ctx.emit(&serde_json::to_value(h)?)?
        }
        Cmd::Verify {
            level,
            lemma_samples,
            random_subsets,
        } => {
            let level = match level {
                LevelArg::Smoke => Level::Smoke,
                LevelArg::Full => Level::Full,
                LevelArg::Heavy => Level::Heavy,
            };
            let opts = SuiteOptions {
                seed: ctx.run.seed,
                lemma_samples,
                conic_samples: ctx.run.budget_conics,
                random_subsets,
                budget,
            };
            let mut r = verify_suite(ctx.params.q(), level, &opts).map_err(|e| Fail(2, e))?;
            if ctx.run.no_timings {
                r.claims.iter_mut().for_each(|c| c.runtime_ms = 0);
            }
            ctx.emit(&serde_json::to_value(&r)?)?;
            return Ok(if r.mismatches() > 0 { 1 } else { 0 });
        }
        Cmd::Export { kind, code: a } => {
            let Some(path) = ctx.out_path() else {
                return Err(Fail(2, "export needs --out".into()));
            };
            match kind {
                ExportKind::Points => ctx.emit_text(&points_csv(&ctx.pts))?,
                ExportKind::Secants => {
                    ctx.emit_text(&secants_csv(ctx.params.field(), &ctx.table()?))?
                }
                ExportKind::Matrix => {
                    let (code, tp, _) = ctx.build(&a, None)?;
                    export_code(&code, &path, tp.map(|r| r.sections))?;
                }
                ExportKind::Report => {
                    let opts = SuiteOptions {
                        seed: ctx.run.seed,
                        budget,
                        ..SuiteOptions::default()
                    };
                    let mut r = verify_suite(ctx.params.q(), Level::Smoke, &opts)
                        .map_err(|e| Fail(2, e))?;
                    if ctx.run.no_timings {
                        r.claims.iter_mut().for_each(|c| c.runtime_ms = 0);
                    }
                    ctx.emit(&serde_json::to_value(&r)?)?;
                }
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
