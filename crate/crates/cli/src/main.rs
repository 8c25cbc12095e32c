use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hecke_cli::config::{load_symmetry, parse_eval, parse_points, with_fitted_birank, Config, ConfigError, SymmetrySpec};
use hecke_cli::suite;
use hecke_core::heckealg::{default_cap, standard_tableaux, young_decomposition, Partition};
use hecke_core::hpseries::hp_series;
use hecke_core::linalg::flip;
use hecke_core::poisson::{cocycle_check, pencil_jacobi};
use hecke_core::rea::component_dims;
use hecke_core::reps::rep_verify;
use hecke_core::swcat::{category_report, r_dimension, MixedWord};
use hecke_core::{HeckeSymmetry, QMatrix, QScalar, Report};
use num_rational::BigRational;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "hecke", about = "Exact verification of Hecke symmetries and their braided structures")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// R matrix as JSON.
    #[arg(long, global = true, value_name = "FILE", conflicts_with_all = ["standard", "superflip"])]
    symmetry: Option<PathBuf>,
    /// Drinfeld-Jimbo R on an m-dimensional space.
    #[arg(long, global = true, value_name = "M", conflicts_with = "superflip")]
    standard: Option<usize>,
    /// Signed flip with m even and n odd basis vectors.
    #[arg(long, global = true, num_args = 2, value_names = ["M", "N"])]
    superflip: Option<Vec<usize>>,
    #[arg(long, global = true)]
    max_k: Option<usize>,
    #[arg(long, global = true)]
    max_dim: Option<usize>,
    /// Comma-separated generic rationals, e.g. 3/2,5/3.
    #[arg(long, global = true)]
    sample_points: Option<String>,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    json: Option<PathBuf>,
    /// Also print scalar results evaluated at q, e.g. q=3/2.
    #[arg(long, global = true)]
    eval: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Certify the Yang-Baxter equation, the Hecke condition and skew-invertibility.
    CheckHecke {
        #[arg(long, value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// Fit the Hilbert-Poincaré series and read off the bi-rank.
    HpSeries,
    /// Multiplicity and rank of every Young idempotent of the k-th power.
    Idempotents {
        #[arg(long)]
        k: usize,
    },
    /// Standard tableaux of a shape.
    Tableaux {
        #[arg(long)]
        shape: String,
    },
    /// R-dimension of V_λ.
    Rdims {
        #[arg(long)]
        shape: String,
    },
    /// Braiding invariance of pairings and R-traces.
    CheckCategory,
    /// Rank of the k-th REA component against the classical count.
    ReaDims {
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Check the REA relations on a tensor word, optionally restricted to a shape.
    RepVerify {
        #[arg(long)]
        carrier: String,
        #[arg(long)]
        shape: Option<String>,
    },
    /// Jacobi identity for a·{,}_PL + b·{,}_r on gl(m)*.
    PoissonCheck {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "1,1")]
        pencil: String,
    },
    /// The 2-cocycle on gl(m).
    PoissonCocycle {
        #[arg(long)]
        m: usize,
    },
    /// Every check applicable to the configured symmetry.
    VerifyAll,
}

enum Failure {
    Config(ConfigError),
    Math(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e)
    }
}

fn parse_err(what: &str, e: impl ToString) -> Failure {
    Failure::Config(ConfigError::Parse { what: what.into(), msg: e.to_string() })
}

struct Ctx {
    global: Global,
}

impl Ctx {
    fn spec(&self) -> Result<SymmetrySpec, Failure> {
        let g = &self.global;
        match (&g.symmetry, g.standard, &g.superflip) {
            (Some(p), None, None) => Ok(SymmetrySpec::File(p.clone())),
            (None, Some(m), None) => Ok(SymmetrySpec::Standard(m)),
            (None, None, Some(v)) => Ok(SymmetrySpec::SuperFlip(v[0], v[1])),
            (None, None, None) => Err(ConfigError::Usage("one of --symmetry, --standard, --superflip is required".into()).into()),
            _ => Err(ConfigError::Usage("give exactly one symmetry".into()).into()),
        }
    }

    fn config(&self) -> Result<Config, Failure> {
        let mut cfg = Config::new(self.spec()?);
        let g = &self.global;
        if let Some(k) = g.max_k {
            cfg.max_k = k;
        }
        if let Some(d) = g.max_dim {
            cfg.max_dim = d;
        }
        if let Some(p) = &g.sample_points {
            cfg.sample_points = parse_points(p)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn symmetry(&self, cfg: &Config) -> Result<HeckeSymmetry, Failure> {
        load_symmetry(&cfg.symmetry)?.map_err(|e| Failure::Math(e.to_string()))
    }

    fn eval_point(&self) -> Result<Option<BigRational>, Failure> {
        self.global.eval.as_deref().map(parse_eval).transpose().map_err(Failure::from)
    }

    /// Prints `name = value` at the --eval point on stderr.
    fn show_eval(&self, name: &str, v: &QScalar) -> Result<(), Failure> {
        if let Some(q0) = self.eval_point()? {
            match v.eval_at(&q0) {
                Ok(x) => eprintln!("{name} at q={q0}: {x}"),
                Err(e) => eprintln!("{name} at q={q0}: {e}"),
            }
        }
        Ok(())
    }

    fn emit(&self, v: &Value) -> Result<(), Failure> {
        let text = serde_json::to_string_pretty(v).expect("serializable") + "\n";
        match &self.global.json {
            Some(p) => std::fs::write(p, text).map_err(|source| ConfigError::Io { path: p.clone(), source }.into()),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    /// Emits the report and converts its status to an outcome.
    fn emit_report(&self, rep: &Report) -> Result<bool, Failure> {
        let ok = rep.all_passed();
        for c in rep.failures() {
            eprintln!("FAIL {}: {}", c.name, c.detail.as_deref().unwrap_or(""));
        }
        self.emit(&json!({ "status": if ok { "pass" } else { "fail" }, "checks": rep.checks }))?;
        Ok(ok)
    }
}

fn parse_shape(s: &str) -> Result<Partition, Failure> {
    s.parse().map_err(|e| parse_err("--shape", e))
}

/// Yang-Baxter, Hecke and skew-invertibility reported separately, with Tr B and ν when available.
fn check_hecke(ctx: &Ctx, r: QMatrix) -> Result<bool, Failure> {
    let n = (r.rows() as f64).sqrt().round() as usize;
    if n == 0 || n * n != r.rows() || !r.is_square() {
        return Err(parse_err("R", format!("expected an N^2 x N^2 matrix, got {}x{}", r.rows(), r.cols())));
    }
    let r = r.with_square_legs(vec![n, n]);
    let r12 = QMatrix::amplify(&r, 1, 3, n).map_err(|e| Failure::Math(e.to_string()))?;
    let r23 = QMatrix::amplify(&r, 2, 3, n).map_err(|e| Failure::Math(e.to_string()))?;
    let yb = r12.mul(&r23).mul(&r12) == r23.mul(&r12).mul(&r23);
    let q = if r.is_constant() { QScalar::one() } else { QScalar::q() };
    let qi = q.recip().expect("q invertible");
    let hecke = r.add_scalar(&-&q).mul(&r.add_scalar(&qi)).is_zero();
    let psi_ok = hecke_core::hecke::skew_inverse(&r, n).ok().filter(|psi| {
        let psi23 = QMatrix::amplify(psi, 2, 3, n).expect("legs");
        r12.mul(&psi23).partial_trace(&[1]).map(|t| t == flip(n)).unwrap_or(false)
    });
    let certified = HeckeSymmetry::load(r.clone());
    let (tr_b, nu) = match &certified {
        Ok(h) => (Some(h.b().trace()), Some(h.nu().clone())),
        Err(_) => match &psi_ok {
            Some(psi) => (psi.partial_trace(&[0]).ok().map(|b| b.trace()), None),
            None => (None, None),
        },
    };
    let mut out = json!({
        "yb": yb,
        "hecke": hecke,
        "skew": psi_ok.is_some(),
        "trB": tr_b.as_ref().map(QScalar::to_json),
        "nu": nu.as_ref().map(QScalar::to_json),
    });
    if let Err(e) = &certified {
        out["witness"] = json!(e.to_string());
    }
    if let Some(t) = &tr_b {
        ctx.show_eval("Tr B", t)?;
    }
    if let Some(v) = &nu {
        ctx.show_eval("nu", v)?;
    }
    ctx.emit(&out)?;
    Ok(certified.is_ok())
}

fn run(ctx: &Ctx, cmd: &Cmd) -> Result<bool, Failure> {
    match cmd {
        Cmd::CheckHecke { input } => {
            let r = match (input.clone(), ctx.spec()) {
                (Some(p), _) | (None, Ok(SymmetrySpec::File(p))) => {
                    let text = std::fs::read_to_string(&p).map_err(|source| ConfigError::Io { path: p.clone(), source })?;
                    QMatrix::from_json_str(&text).map_err(|e| parse_err(&p.display().to_string(), e))?
                }
                (None, Ok(SymmetrySpec::Standard(m))) if m > 0 => hecke_core::hecke::standard_r_matrix(m),
                (None, Ok(SymmetrySpec::SuperFlip(m, n))) if m + n > 0 => hecke_core::hecke::super_flip_matrix(m, n),
                (None, Ok(_)) => return Err(ConfigError::Usage("dimension must be positive".into()).into()),
                (None, Err(e)) => return Err(e),
            };
            check_hecke(ctx, r)
        }
        Cmd::HpSeries => {
            let cfg = ctx.config()?;
            let h = ctx.symmetry(&cfg)?;
            let k = ctx.global.max_k.unwrap_or(6);
            let s = hp_series(&h, k, default_cap(&h).max(k), &cfg.sample_points).map_err(|e| Failure::Math(e.to_string()))?;
            let mut out = s.to_json();
            out["dims_minus"] = json!(s.dims_minus);
            out["dims_plus"] = json!(s.dims_plus);
            ctx.emit(&out)?;
            Ok(s.check_plus_minus().passed())
        }
        Cmd::Idempotents { k } => {
            let cfg = ctx.config()?;
            let h = ctx.symmetry(&cfg)?;
            let d = young_decomposition(&h, *k, &cfg.sample_points).map_err(|e| Failure::Math(e.to_string()))?;
            let map: serde_json::Map<String, Value> = d.iter().map(|(l, (mult, rank))| (l.to_string(), json!([mult, rank]))).collect();
            ctx.emit(&Value::Object(map))?;
            Ok(true)
        }
        Cmd::Tableaux { shape } => {
            let l = parse_shape(shape)?;
            let ts: Vec<_> = standard_tableaux(&l).iter().map(|t| json!(t.rows())).collect();
            ctx.emit(&json!(ts))?;
            Ok(true)
        }
        Cmd::Rdims { shape } => {
            let l = parse_shape(shape)?;
            let cfg = ctx.config()?;
            let h = ctx.symmetry(&cfg)?;
            let d = r_dimension(&h, &l).map_err(|e| Failure::Math(e.to_string()))?;
            ctx.show_eval(&format!("dim_R V_{l}"), &d)?;
            ctx.emit(&d.to_json())?;
            Ok(true)
        }
        Cmd::CheckCategory => {
            let cfg = ctx.config()?;
            let h = ctx.symmetry(&cfg)?;
            ctx.emit_report(&category_report(&h))
        }
        Cmd::ReaDims { order } => {
            if !(2..=3).contains(order) {
                return Err(ConfigError::Usage("--order must be 2 or 3".into()).into());
            }
            let cfg = ctx.config()?;
            let h = ctx.symmetry(&cfg)?;
            let h = if h.is_involutive() { with_fitted_birank(h, &cfg.sample_points) } else { h };
            let d = component_dims(&h, *order, &cfg.sample_points).map_err(|e| Failure::Math(e.to_string()))?;
            let equal = d.generic == d.classical;
            ctx.emit(&json!({ "generic_rank": d.generic, "classical_rank": d.classical, "equal": equal }))?;
            Ok(equal)
        }
        Cmd::RepVerify { carrier, shape } => {
            let word: MixedWord = carrier.parse().map_err(|e| parse_err("--carrier", e))?;
            let shape = shape.as_deref().map(parse_shape).transpose()?;
            let cfg = ctx.config()?;
            let h = ctx.symmetry(&cfg)?;
            let s = rep_verify(&h, &word, shape.as_ref()).map_err(|e| Failure::Math(e.to_string()))?;
            if let Some(d) = &s.rdim {
                ctx.show_eval("rdim", d)?;
            }
            ctx.emit(&serde_json::to_value(&s).expect("serializable"))?;
            Ok(s.relations_ok && s.equivariant)
        }
        Cmd::PoissonCheck { m, pencil } => {
            let ab = parse_points(pencil)?;
            let [a, b] = ab.as_slice() else {
                return Err(ConfigError::Usage("--pencil takes two values a,b".into()).into());
            };
            if *m == 0 {
                return Err(ConfigError::Usage("--m must be positive".into()).into());
            }
            let res = pencil_jacobi(*m, a, b);
            let mut out = json!({ "m": m, "pencil": [a.to_string(), b.to_string()], "jacobi": res.is_ok() });
            if let Err(w) = &res {
                out["witness"] = json!({ "triple": w.triple, "residual": w.residual });
            }
            ctx.emit(&out)?;
            Ok(res.is_ok())
        }
        Cmd::PoissonCocycle { m } => {
            if *m < 2 {
                return Err(ConfigError::Usage("--m must be at least 2".into()).into());
            }
            ctx.emit_report(&cocycle_check(*m))
        }
        Cmd::VerifyAll => {
            let cfg = ctx.config()?;
            let h = ctx.symmetry(&cfg)?;
            let h = with_fitted_birank(h, &cfg.sample_points);
            ctx.emit_report(&suite::run_suite(&h, &cfg.sample_points, cfg.max_k, cfg.max_dim))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let ctx = Ctx { global: cli.global };
    match run(&ctx, &cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Config(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
