//! Command-line front end: component groups from lattice models, Smith and
//! cokernel kernels, realizability queries with construction plans, and the
//! named verification suites. All payloads are JSON on stdin-free flags;
//! exit codes are 0 (success / predicate true), 1 (predicate false or suite
//! violation), 2 (malformed input), 3 (precision exhausted).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use neron::abgroup::AbGroup;
use neron::classify::{
    end_to_end_check, is_realizable, plan, rhs_bound, verify_plan, ConstructionPlan,
    RealizabilityQuery,
};
use neron::error::Error;
use neron::json::{MatrixDto, ModelDto};
use neron::linalg::smith::{cokernel_l_part, smith_form};
use neron::model::{
    compute_phi, model_example51, model_example52, model_example53, model_example54,
    model_example55, model_unipotent_elliptic, trivial_model, UnipotentEllipticKind,
};
use neron::verify::{run_suite, DEFAULT_SEED, SUITE_NAMES};

#[derive(Parser)]
#[command(
    name = "neron",
    version,
    about = "Exact component-group computations from Galois-lattice data"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args)]
struct Payload {
    /// Inline JSON payload.
    #[arg(long)]
    json: Option<String>,
    /// File containing the JSON payload.
    #[arg(long)]
    file: Option<PathBuf>,
}

impl Payload {
    fn read(&self) -> Result<String, Error> {
        match (&self.json, &self.file) {
            (Some(s), None) => Ok(s.clone()),
            (None, Some(path)) => std::fs::read_to_string(path)
                .map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display()))),
            _ => Err(Error::Malformed(
                "provide exactly one of --json or --file".into(),
            )),
        }
    }

    fn parse<T: serde::de::DeserializeOwned>(&self) -> Result<T, Error> {
        serde_json::from_str(&self.read()?).map_err(|e| Error::Malformed(e.to_string()))
    }
}

#[derive(clap::Args)]
struct QueryArgs {
    /// The target group as JSON, e.g. '{"2":[2,1],"3":[1]}'.
    #[arg(long)]
    group: String,
    #[arg(long, default_value_t = 0)]
    t: u32,
    #[arg(long, default_value_t = 0)]
    a: u32,
    #[arg(long, default_value_t = 0)]
    u: u32,
    /// Residue characteristic (0 or a prime coprime to the group order).
    #[arg(long, default_value_t = 0)]
    p: u64,
    /// Total dimension; defaults to t + a + u.
    #[arg(long)]
    d: Option<u32>,
}

impl QueryArgs {
    fn build(&self) -> Result<RealizabilityQuery, Error> {
        let group: AbGroup =
            serde_json::from_str(&self.group).map_err(|e| Error::Malformed(e.to_string()))?;
        match self.d {
            Some(d) => RealizabilityQuery::with_dim(group, self.p, d, self.t, self.a, self.u),
            None => RealizabilityQuery::new(group, self.p, self.t, self.a, self.u),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// δ and δ′ of a finite abelian group.
    Delta {
        #[command(flatten)]
        payload: Payload,
    },
    /// Decide whether the group arises with the given ranks.
    Realizable {
        #[command(flatten)]
        query: QueryArgs,
    },
    /// Emit the witness construction plan for a realizable query.
    Plan {
        #[command(flatten)]
        query: QueryArgs,
    },
    /// Check a construction plan against a query.
    VerifyPlan {
        #[command(flatten)]
        payload: Payload,
        #[command(flatten)]
        query: QueryArgs,
    },
    /// Rebuild every plan block as a lattice model and recompute its Φ.
    EndToEnd {
        #[command(flatten)]
        payload: Payload,
    },
    /// Component group and filtration quotients of a lattice model.
    Phi {
        #[command(flatten)]
        payload: Payload,
    },
    /// Smith normal form divisors of an integer matrix.
    Smith {
        #[command(flatten)]
        payload: Payload,
    },
    /// l-primary part and free corank of the cokernel of a square matrix.
    Coker {
        #[command(flatten)]
        payload: Payload,
        #[arg(long)]
        l: u64,
    },
    /// Emit a named example model as JSON (feeds `phi` unchanged).
    Example {
        /// ex51 | ex52 | ex53 | ex54 | ex55 | klein | cyclic2 | trivial
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 2)]
        l: u64,
        #[arg(long)]
        i: Option<u32>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        s: Option<u32>,
        /// Tate multipliers for ex51, e.g. --ns 2,4
        #[arg(long, value_delimiter = ',')]
        ns: Option<Vec<u64>>,
        #[arg(long)]
        precision: Option<u32>,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        budget: Option<u64>,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::PrecisionExhausted(_) => 3,
        Error::NotRealizable => 1,
        _ => 2,
    }
}

fn run(cmd: Cmd) -> Result<u8, Error> {
    match cmd {
        Cmd::Delta { payload } => {
            let group: AbGroup = payload.parse()?;
            println!(
                "{}",
                json!({
                    "delta": group.delta().to_string(),
                    "delta_prime": group.delta_prime().to_string(),
                })
            );
            Ok(0)
        }
        Cmd::Realizable { query } => {
            let q = query.build()?;
            let verdict = is_realizable(&q);
            let rhs = rhs_bound(&q.group, q.t, q.p)?;
            println!(
                "{}",
                json!({
                    "realizable": verdict,
                    "u": q.u,
                    "bound": rhs.to_string(),
                })
            );
            Ok(if verdict { 0 } else { 1 })
        }
        Cmd::Plan { query } => {
            let q = query.build()?;
            match plan(&q) {
                Ok(p) => {
                    println!("{}", serde_json::to_string_pretty(&p).unwrap());
                    Ok(0)
                }
                Err(Error::NotRealizable) => {
                    println!("{}", json!({"realizable": false}));
                    Ok(1)
                }
                Err(e) => Err(e),
            }
        }
        Cmd::VerifyPlan { payload, query } => {
            let q = query.build()?;
            let the_plan: ConstructionPlan = payload.parse()?;
            let check = verify_plan(&the_plan, &q);
            println!(
                "{}",
                json!({"ok": check.ok, "diagnostic": check.diagnostic})
            );
            Ok(if check.ok { 0 } else { 1 })
        }
        Cmd::EndToEnd { payload } => {
            let the_plan: ConstructionPlan = payload.parse()?;
            let ok = end_to_end_check(&the_plan)?;
            println!("{}", json!({"ok": ok}));
            Ok(if ok { 0 } else { 1 })
        }
        Cmd::Phi { payload } => {
            let dto: ModelDto = payload.parse()?;
            let model = dto.to_model()?;
            let report = compute_phi(&model)?;
            println!("{}", serde_json::to_string(&report).unwrap());
            Ok(0)
        }
        Cmd::Smith { payload } => {
            let dto: MatrixDto = payload.parse()?;
            let m = dto.to_matrix()?;
            let d: Vec<String> = smith_form(&m).iter().map(|x| x.to_string()).collect();
            println!("{}", json!({"divisors": d}));
            Ok(0)
        }
        Cmd::Coker { payload, l } => {
            let dto: MatrixDto = payload.parse()?;
            let m = dto.to_matrix()?;
            let (part, corank) = cokernel_l_part(&m, l)?;
            println!("{}", json!({"partition": part.parts(), "corank": corank}));
            Ok(0)
        }
        Cmd::Example {
            name,
            l,
            i,
            r,
            s,
            ns,
            precision,
        } => {
            let missing = |what: &str| Error::Malformed(format!("example {name} needs --{what}"));
            let model = match name.as_str() {
                "ex51" => model_example51(&ns.ok_or_else(|| missing("ns"))?, l)?,
                "ex52" => model_example52(l, i.ok_or_else(|| missing("i"))?)?,
                "ex53" => model_example53(l, i.ok_or_else(|| missing("i"))?)?,
                "ex54" => {
                    let r = r.ok_or_else(|| missing("r"))?;
                    let s = s.ok_or_else(|| missing("s"))?;
                    model_example54(l, r, s, precision.unwrap_or(2 * r + s + 2))?
                }
                "ex55" => {
                    let r = r.ok_or_else(|| missing("r"))?;
                    model_example55(l, r, precision.unwrap_or(2 * r + 2))?
                }
                "klein" => model_unipotent_elliptic(UnipotentEllipticKind::Klein, l)?,
                "cyclic2" => model_unipotent_elliptic(UnipotentEllipticKind::Cyclic2, l)?,
                "trivial" => trivial_model(l)?,
                other => {
                    return Err(Error::Malformed(format!("unknown example {other:?}")));
                }
            };
            println!(
                "{}",
                serde_json::to_string(&ModelDto::from_model(&model)).unwrap()
            );
            Ok(0)
        }
        Cmd::Verify {
            suite,
            seed,
            budget,
        } => {
            let Some(reports) = run_suite(&suite, seed, budget) else {
                return Err(Error::Malformed(format!(
                    "unknown suite {suite:?}; available: {}",
                    SUITE_NAMES.join(", ")
                )));
            };
            let mut all_ok = true;
            for r in &reports {
                eprintln!("{}", r.summary());
                all_ok &= r.passed();
            }
            let payload: Vec<_> = reports
                .iter()
                .map(|r| {
                    json!({
                        "name": r.name,
                        "cases": r.cases,
                        "passed": r.passed(),
                        "failures": r.failures,
                    })
                })
                .collect();
            println!("{}", json!({"suites": payload}));
            Ok(if all_ok { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
