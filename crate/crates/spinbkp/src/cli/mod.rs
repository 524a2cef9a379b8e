//! Command-line front end. Every command prints JSON to stdout, with rationals
//! as {"num", "den"} strings; `check` prints one line per criterion.

pub mod criteria;

use crate::algebra::mpoly::MPoly;
use crate::algebra::rational::{pow2, rat_json};
use crate::algebra::upoly::UPoly;
use crate::closedform::{self, CurveFrame, RatFunc};
use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::taufn::{self, parse_poly, ModelSpec, Param};
use crate::toprec::{OddSpectralCurve, OmegaFn, TopRec};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "SPINBKP_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "spinbkp", about = "Spin Hurwitz numbers, BKP tau-functions and their correlators, exactly")]
pub struct Cli {
    /// Worker threads (default: $SPINBKP_WORKERS, else all cores)
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    /// spin-completed-cycles-s<k>, log-branch-c, sqrt-branch-c or constant-a
    #[arg(long, default_value = "spin-completed-cycles-s1")]
    pub model: String,
    /// key = value model file; overrides --model
    #[arg(long)]
    pub config: Option<std::path::PathBuf>,
    /// numeric value of the preset parameter c (or a)
    #[arg(long, default_value = "1")]
    pub c: String,
    /// highest power of ħ tracked
    #[arg(long, default_value_t = 8)]
    pub hbar_order: i32,
    /// highest power of y kept for non-polynomial presets
    #[arg(long, default_value_t = 12)]
    pub y_order: i32,
}

impl ModelArgs {
    pub fn load(&self) -> Result<ModelSpec> {
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            return ModelSpec::parse(&text);
        }
        let c = crate::algebra::rational::parse_rational(&self.c).ok_or_else(|| Error::Config(format!("bad --c {}", self.c)))?;
        ModelSpec::preset(&self.model, Param::Value(c), self.hbar_order, self.y_order)
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum Method {
    Expansion,
    Closed,
    Toprec,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum CheckName {
    Orthogonality,
    #[value(name = "rtoR")]
    RtoR,
    Tau,
    Square,
    Oracle,
    Hgn,
    Gkl,
    Loops,
    Quasipol,
    Bookkeeping,
    V3,
    All,
}

impl CheckName {
    fn ids(self) -> Vec<u32> {
        match self {
            CheckName::Orthogonality => vec![1],
            CheckName::RtoR => vec![2],
            CheckName::Tau => vec![3],
            CheckName::Square => vec![4],
            CheckName::Oracle => vec![5],
            CheckName::Hgn => vec![6],
            CheckName::Gkl => vec![7],
            CheckName::Loops => vec![8, 0],
            CheckName::Quasipol => vec![9],
            CheckName::Bookkeeping => vec![10],
            CheckName::V3 => vec![0],
            CheckName::All => (1..=10).chain([0]).collect(),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sergeev character table of degree d
    Characters {
        #[arg(long)]
        d: u32,
    },
    /// Spin Hurwitz number with the given odd profiles, e.g. "[1,1];[1,1]"
    Hurwitz {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        profiles: String,
    },
    /// Coefficients of the 2-BKP tau-function in t_μ s_ν
    Tau {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 4)]
        degree: u32,
    },
    /// W_{g,n} as a series in X_1..X_n, total degree ≤ order
    Wgn {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value = "closed")]
        method: Method,
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 9)]
        order: u32,
    },
    /// H_{g,n} as a series in X_1..X_n
    Hgn {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value = "closed")]
        method: Method,
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 7)]
        order: u32,
    },
    /// ω_{g,n} from the recursion on the curve (P, R), as a rational function
    Toprec {
        #[arg(long, default_value = "[0,0,1]")]
        p: String,
        #[arg(long, default_value = "[0,1]")]
        r: String,
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: usize,
    },
    /// Run acceptance checks; exits nonzero if any fails
    Check {
        #[arg(value_enum)]
        name: CheckName,
        /// run every selected check instead of stopping at the first failure
        #[arg(long)]
        keep_going: bool,
    },
}

fn mpoly_json(p: &MPoly, n: usize) -> Value {
    Value::Array(p.terms().map(|(m, c)| json!([(0..n).map(|i| m.get(i)).collect::<Vec<_>>(), rat_json(c)])).collect())
}

fn upoly_json(p: &UPoly) -> Value {
    Value::Array(p.coeffs().iter().map(rat_json).collect())
}

fn ratfunc_json(f: &RatFunc) -> Value {
    let n = f.ctx().n;
    let mut deltas = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let e = f.delta_power(i, j);
            if e != 0 {
                deltas.push(json!({"i": i + 1, "j": j + 1, "power": e}));
            }
        }
    }
    json!({
        "numerator": mpoly_json(f.num(), n),
        "q": upoly_json(&f.ctx().q),
        "q_powers": f.q_powers(),
        "delta_powers": deltas,
    })
}

fn parse_profiles(s: &str) -> Result<Vec<Partition>> {
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| Partition::parse(t.trim()).ok_or_else(|| Error::Config(format!("bad partition {t}"))))
        .collect()
}

fn curve_of(model: &ModelSpec) -> Result<OddSpectralCurve> {
    let (p, r) = model.curve.clone().ok_or_else(|| Error::Unsupported("the recursion needs a model given by polynomials P and R".into()))?;
    OddSpectralCurve::new(p, r)
}

/// 2^{g−1} ω Π z_i/Q(z_i): the W_{g,n} that the recursion predicts.
pub fn omega_to_w(frame: &CurveFrame, om: &OmegaFn) -> RatFunc {
    let ctx = frame.ctx(om.n);
    let mut num = om.num.scale(&pow2(om.g as i64 - 1));
    for i in 0..om.n {
        num = num.mul(&MPoly::var(i));
    }
    let qpow: Vec<i32> = om.den.iter().map(|d| d + 1).collect();
    RatFunc::with_denominator(&ctx, num, qpow, &[]).reduce()
}

fn wgn_series(model: &ModelSpec, method: Method, g: u32, n: usize, order: u32) -> Result<MPoly> {
    match method {
        Method::Expansion => Ok(crate::npoint::w_gn_oracle(model, g, n, order)?.poly),
        Method::Closed => closedform::w_x_series(&CurveFrame::from_model(model)?, g, n, order),
        Method::Toprec => {
            let curve = curve_of(model)?;
            let frame = CurveFrame::from_curve(&curve.p, &curve.r)?;
            if (g, n) == (0, 1) || (g, n) == (0, 2) {
                return closedform::w_x_series(&frame, g, n, order);
            }
            let om = TopRec::new(curve).omega(g, n)?;
            frame.x_expander(order as i32)?.expand(&omega_to_w(&frame, &om))
        }
    }
}

fn series_json(g: u32, n: usize, order: u32, method: Method, p: &MPoly) -> Value {
    json!({"g": g, "n": n, "order": order, "method": format!("{method:?}").to_lowercase(), "terms": mpoly_json(p, n)})
}

fn print(v: &Value) {
    use std::io::Write;
    let text = serde_json::to_string_pretty(v).expect("serializable");
    // a closed pipe (e.g. `| head`) is not an error
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn run_checks(name: CheckName, keep_going: bool) -> Result<bool> {
    let ids = name.ids();
    let results: Vec<Result<criteria::Criterion>> = ids.par_iter().map(|&id| criteria::run(id)).collect();
    let mut all_ok = true;
    for r in results {
        let c = r?;
        println!("{}", c.line());
        for o in c.outcomes.iter().filter(|o| !o.passed) {
            println!("    {}", o.line());
        }
        if !c.passed() {
            all_ok = false;
            if !keep_going {
                break;
            }
        }
    }
    if name == CheckName::RtoR {
        for (label, got, _) in criteria::rtor_identities()? {
            println!("    {label}: {}", got.pretty(&["r1", "r2", "r3", "", "", "", "", "h"]));
        }
    }
    Ok(all_ok)
}

fn workers(cli: Option<usize>) -> Option<usize> {
    cli.or_else(|| std::env::var(WORKERS_ENV).ok().and_then(|s| s.parse().ok()))
}

/// Run the parsed command. Ok(false) means a check failed.
pub fn execute(cli: Cli) -> Result<bool> {
    if let Some(w) = workers(cli.workers) {
        // an already-initialized pool is fine
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w.max(1)).build_global();
    }
    match cli.command {
        Command::Characters { d } => print(&crate::schurq::character_table(d).to_json()),
        Command::Hurwitz { d, profiles } => {
            let ps = parse_profiles(&profiles)?;
            print(&crate::spinhurwitz::spin_hurwitz(d, &ps)?.to_json());
        }
        Command::Tau { model, degree } => {
            let m = model.load()?;
            let tau = taufn::assemble_bkp(&taufn::tau_bkp(&m, degree)?)?;
            print(&json!({"model": m.name, "vars": m.vars(), "degree": degree, "tau": tau.to_json()}));
        }
        Command::Wgn { model, method, g, n, order } => {
            let m = model.load()?;
            let p = wgn_series(&m, method, g, n, order)?;
            print(&series_json(g, n, order, method, &p));
        }
        Command::Hgn { model, method, g, n, order } => {
            let m = model.load()?;
            let p = match method {
                Method::Expansion => crate::npoint::h_gn_oracle(&m, g, n, order)?.poly,
                Method::Closed => closedform::h_x_series(&CurveFrame::from_model(&m)?, g, n, order)?,
                Method::Toprec => return Err(Error::Unsupported("H_{g,n} has no recursion route; use closed or expansion".into())),
            };
            print(&series_json(g, n, order, method, &p));
        }
        Command::Toprec { p, r, g, n } => {
            let curve = OddSpectralCurve::new(parse_poly(&p)?, parse_poly(&r)?)?;
            let frame = CurveFrame::from_curve(&curve.p, &curve.r)?;
            let qtil = curve.qtil.clone();
            let om = TopRec::new(curve).omega(g, n)?;
            print(&json!({
                "g": g,
                "n": n,
                "qtilde": upoly_json(&qtil),
                "omega": {"numerator": mpoly_json(&om.num, n), "qtilde_powers": om.den},
                "w": ratfunc_json(&omega_to_w(&frame, &om)),
            }));
        }
        Command::Check { name, keep_going } => return run_checks(name, keep_going),
    }
    Ok(true)
}

/// Entry point for the binary: parse, run, map to an exit code.
pub fn main_from_args() -> i32 {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config(_) | Error::SizeMismatch { .. } | Error::NotOdd(_) | Error::NotStrict(_) => 2,
                _ => 3,
            }
        }
    }
}
