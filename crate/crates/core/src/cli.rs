//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a computation completed but the checked
//! identity or assumption failed, 2 on usage errors (including an exceeded
//! element cap).

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::chars::{self, CharsError, QPoly};
use crate::crystal::{CrystalElem, Op, TensorWord};
use crate::demazure::{Demazure, DemazureError, ReflectionTable, Status, DEFAULT_CAP};
use crate::energy::{EnergyTable, PathModel};
use crate::lattice::ClassicalWeight;
use crate::symtensor::{all_ops, perfect_check, BoxElem, SymTensor};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Parser, Debug)]
#[command(name = "demazure", version, about = "Perfect crystals, paths and Demazure crystals for affine sl_n")]
pub struct Cli {
    /// Maximum number of elements any enumeration may produce.
    #[arg(long, global = true, env = "DEMAZURE_CAP", default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Crystal {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub l: u32,
}

#[derive(Args, Debug, Clone)]
pub struct Highest {
    #[command(flatten)]
    pub crystal: Crystal,
    /// Dominant weight as m_0,...,m_{n-1}; defaults to l*Lambda_0.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambda: Option<Vec<i64>>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Crystal graph of B^l (or B^l (x) B^l with --square).
    Graph {
        #[command(flatten)]
        crystal: Crystal,
        #[arg(long)]
        square: bool,
    },
    /// Enumerate the Demazure crystal B_{w^(k)}(lambda).
    Demazure {
        #[command(flatten)]
        hw: Highest,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Check the tensor product theorem for k' = 1..k.
    Verify {
        #[command(flatten)]
        hw: Highest,
        #[arg(long)]
        k: usize,
        /// Use this mixing index instead of computing the minimal one.
        #[arg(long)]
        kappa: Option<usize>,
        #[arg(long, default_value_t = 4)]
        kappa_max: usize,
    },
    /// Characters of B_{w^(k)}(lambda) and the factorized classical character.
    Character {
        #[command(flatten)]
        hw: Highest,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 4)]
        kappa_max: usize,
    },
    /// Kostka-Foulkes polynomials K_{mu,(l^L)} by the 1D sum and by charge.
    Kostka {
        #[command(flatten)]
        crystal: Crystal,
        #[arg(long = "L")]
        big_l: usize,
        /// A single partition; all partitions of lL with at most n parts otherwise.
        #[arg(long, value_delimiter = ',')]
        mu: Option<Vec<u32>>,
    },
    /// Compare the Demazure character with the Kostka-Schur expansion.
    Kirillov {
        #[command(flatten)]
        crystal: Crystal,
        #[arg(long = "L")]
        big_l: usize,
    },
    /// Run the assumption checkers (perfectness, II, III, IV).
    Check {
        #[arg(long)]
        assumptions: bool,
        #[command(flatten)]
        hw: Highest,
        #[arg(long, default_value_t = 4)]
        kappa_max: usize,
        #[arg(long, default_value_t = 12)]
        k_max: usize,
    },
}

/// Exit code, stdout text and stderr text of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String, pass: bool) -> Self {
        Outcome { code: if pass { EXIT_OK } else { EXIT_FAIL }, stdout, stderr: String::new() }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: msg.into() }
    }
}

#[derive(Debug)]
struct Usage(String);

impl From<DemazureError> for Usage {
    fn from(e: DemazureError) -> Self {
        Usage(format!("{e}; raise --cap or DEMAZURE_CAP if the element cap was hit"))
    }
}

impl From<CharsError> for Usage {
    fn from(e: CharsError) -> Self {
        Usage(e.to_string())
    }
}

impl From<crate::energy::EnergyError> for Usage {
    fn from(e: crate::energy::EnergyError) -> Self {
        Usage(e.to_string())
    }
}

impl From<crate::crystal::CrystalError> for Usage {
    fn from(e: crate::crystal::CrystalError) -> Self {
        Usage(format!("{e}; raise --cap or DEMAZURE_CAP"))
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome::ok(text, true),
                _ => Outcome::usage(text),
            };
        }
    };
    match dispatch(&cli) {
        Ok((stdout, pass)) => Outcome::ok(stdout, pass),
        Err(Usage(msg)) => Outcome::usage(format!("error: {msg}\n")),
    }
}

fn dispatch(cli: &Cli) -> Result<(String, bool), Usage> {
    match &cli.command {
        Command::Graph { crystal, square } => cmd_graph(cli, crystal, *square),
        Command::Demazure { hw, k, depth } => cmd_demazure(cli, hw, *k, *depth),
        Command::Verify { hw, k, kappa, kappa_max } => cmd_verify(cli, hw, *k, *kappa, *kappa_max),
        Command::Character { hw, k, kappa_max } => cmd_character(cli, hw, *k, *kappa_max),
        Command::Kostka { crystal, big_l, mu } => cmd_kostka(cli, crystal, *big_l, mu.as_deref()),
        Command::Kirillov { crystal, big_l } => cmd_kirillov(cli, crystal, *big_l),
        Command::Check { assumptions, hw, kappa_max, k_max } => {
            if !assumptions {
                return Err(Usage("check needs --assumptions".into()));
            }
            cmd_check(cli, hw, *kappa_max, *k_max)
        }
    }
}

fn validate(c: &Crystal) -> Result<(), Usage> {
    if c.n < 2 {
        return Err(Usage(format!("--n must be at least 2, got {}", c.n)));
    }
    if c.l == 0 {
        return Err(Usage("--l must be positive".into()));
    }
    Ok(())
}

fn model(hw: &Highest) -> Result<PathModel, Usage> {
    validate(&hw.crystal)?;
    let (n, l) = (hw.crystal.n, hw.crystal.l);
    let coeffs = match &hw.lambda {
        Some(v) => v.clone(),
        None => {
            let mut v = vec![0; n];
            v[0] = i64::from(l);
            v
        }
    };
    if coeffs.len() != n {
        return Err(Usage(format!("--lambda needs {n} comma-separated entries m_0,...,m_{}, got {}", n - 1, coeffs.len())));
    }
    if coeffs.iter().any(|&m| m < 0) {
        return Err(Usage("--lambda must be dominant (all entries >= 0)".into()));
    }
    if coeffs.iter().sum::<i64>() != i64::from(l) {
        return Err(Usage(format!("--lambda entries must sum to the level l = {l}")));
    }
    PathModel::new(n, l, ClassicalWeight(coeffs)).map_err(|e| Usage(e.to_string()))
}

fn demazure_for(cli: &Cli, hw: &Highest) -> Result<Demazure, Usage> {
    Ok(Demazure::new(model(hw)?, ReflectionTable::sl_n(hw.crystal.n))?.with_cap(cli.cap))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value prints");
    s.push('\n');
    s
}

fn no_dot(cmd: &str) -> Usage {
    Usage(format!("--format dot is only available for graph, not {cmd}"))
}

fn cmd_graph(cli: &Cli, c: &Crystal, square: bool) -> Result<(String, bool), Usage> {
    validate(c)?;
    let crystal = SymTensor::new(c.n, c.l);
    let elems = crystal.elements();
    let nodes: Vec<TensorWord<BoxElem>> = if square {
        let mut v = Vec::new();
        for a in &elems {
            for b in &elems {
                v.push(TensorWord::new(vec![a.clone(), b.clone()]));
            }
        }
        v
    } else {
        elems.iter().cloned().map(TensorWord::singleton).collect()
    };
    if nodes.len() > cli.cap {
        return Err(Usage(format!("graph has {} nodes, above the cap {}", nodes.len(), cli.cap)));
    }
    let mut edges = Vec::new();
    for w in &nodes {
        for op in all_ops(c.n) {
            if let Op::F(i) = op {
                if let Some(t) = w.f(i) {
                    edges.push((w.clone(), i, t));
                }
            }
        }
    }
    let label = |w: &TensorWord<BoxElem>| {
        w.factors.iter().map(|b| b.to_string()).collect::<Vec<_>>().join("x")
    };
    let mut out = String::new();
    match cli.format {
        Format::Dot => {
            let _ = writeln!(out, "digraph B {{");
            let _ = writeln!(out, "  rankdir=LR;");
            for w in &nodes {
                let _ = writeln!(out, "  \"{}\";", label(w));
            }
            for (s, i, t) in &edges {
                let _ = writeln!(out, "  \"{}\" -> \"{}\" [label=\"{i}\"];", label(s), label(t));
            }
            let _ = writeln!(out, "}}");
        }
        Format::Json => {
            let v = json!({
                "n": c.n,
                "l": c.l,
                "nodes": nodes.iter().map(|w| &w.factors).collect::<Vec<_>>(),
                "edges": edges.iter().map(|(s, i, t)| json!({ "from": s.factors, "to": t.factors, "i": i })).collect::<Vec<_>>(),
            });
            out = pretty(&v);
        }
        Format::Text => {
            let _ = writeln!(out, "{} nodes, {} edges", nodes.len(), edges.len());
            for (s, i, t) in &edges {
                let _ = writeln!(out, "{} -{i}-> {}", label(s), label(t));
            }
        }
    }
    Ok((out, true))
}

fn cmd_demazure(cli: &Cli, hw: &Highest, k: usize, depth: Option<usize>) -> Result<(String, bool), Usage> {
    let dz = demazure_for(cli, hw)?;
    let depth = depth.unwrap_or_else(|| dz.default_depth(k));
    let set = dz.recursive(k, depth)?;
    let energy = EnergyTable::build(dz.model.n(), dz.model.l())?;
    let weighted = chars::weighted_paths(&set, &dz.model, &energy);
    let out = match cli.format {
        Format::Dot => return Err(no_dot("demazure")),
        Format::Json => pretty(&json!({
            "lambda": dz.model.lambda,
            "k": k,
            "word": set.word.to_string(),
            "depth": set.depth,
            "size": set.len(),
            "paths": weighted.iter().map(|(p, w)| json!({ "path": p.factors, "weight": w })).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "B_w(lambda) for w = {}, lambda = {}: {} paths (depth {})", set.word, dz.model.lambda, set.len(), set.depth);
            for (p, w) in &weighted {
                let _ = writeln!(s, "{p}    wt = {w}");
            }
            s
        }
    };
    Ok((out, true))
}

fn resolve_kappa(dz: Demazure, kappa: Option<usize>, kappa_max: usize) -> Result<Demazure, Usage> {
    let kappa = match kappa {
        Some(k) if k >= 1 => k,
        Some(_) => return Err(Usage("--kappa must be positive".into())),
        None => dz
            .mixing_index(kappa_max)?
            .ok_or_else(|| Usage(format!("no mixing index up to --kappa-max {kappa_max}")))?,
    };
    let table = dz.table.clone().with_kappa(kappa);
    Ok(Demazure { table, ..dz })
}

fn cmd_verify(cli: &Cli, hw: &Highest, k: usize, kappa: Option<usize>, kappa_max: usize) -> Result<(String, bool), Usage> {
    let dz = resolve_kappa(demazure_for(cli, hw)?, kappa, kappa_max)?;
    let mut checks = Vec::new();
    for kk in 1..=k {
        checks.push(dz.verify_theorem(kk)?);
    }
    let pass = checks.iter().all(|c| c.equal);
    let out = match cli.format {
        Format::Dot => return Err(no_dot("verify")),
        Format::Json => pretty(&json!({ "lambda": dz.model.lambda, "kappa": dz.table.kappa, "pass": pass, "checks": checks })),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "lambda = {}, kappa = {}", dz.model.lambda, dz.table.kappa);
            for c in &checks {
                let _ = writeln!(
                    s,
                    "k={} (j={}, a={}): |B_w| = {}, |P| = {}  {}",
                    c.k,
                    c.j,
                    c.a,
                    c.recursive_size,
                    c.tensor_size,
                    if c.equal { "equal" } else { "DIFFERENT" }
                );
            }
            let _ = writeln!(s, "{}", if pass { "PASS" } else { "FAIL" });
            s
        }
    };
    Ok((out, pass))
}

fn cmd_character(cli: &Cli, hw: &Highest, k: usize, kappa_max: usize) -> Result<(String, bool), Usage> {
    let dz = resolve_kappa(demazure_for(cli, hw)?, None, kappa_max)?;
    let set = dz.recursive(k, dz.default_depth(k))?;
    let energy = EnergyTable::build(dz.model.n(), dz.model.l())?;
    let full = chars::ch_full(&set, &dz.model, &energy);
    let cl = chars::clch(&set, &dz.model);
    let fact = chars::clch_factorized(&dz, k)?;
    let diff = cl.first_difference(&fact);
    let pass = diff.is_none();
    let out = match cli.format {
        Format::Dot => return Err(no_dot("character")),
        Format::Json => pretty(&json!({
            "lambda": dz.model.lambda,
            "k": k,
            "kappa": dz.table.kappa,
            "ch": full.to_json(),
            "clch": cl.to_json(),
            "factorized": fact.to_json(),
            "pass": pass,
            "first_difference": diff,
        })),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "ch (exponents in Lambda_0..Lambda_{}, delta): {full}", dz.model.n() - 1);
            let _ = writeln!(s, "clch: {cl}");
            let _ = writeln!(s, "factorized: {fact}");
            let _ = writeln!(s, "{}", if pass { "PASS" } else { "FAIL" });
            s
        }
    };
    Ok((out, pass))
}

fn cmd_kostka(cli: &Cli, c: &Crystal, big_l: usize, mu: Option<&[u32]>) -> Result<(String, bool), Usage> {
    validate(c)?;
    if big_l == 0 {
        return Err(Usage("--L must be positive".into()));
    }
    let total = c.l * big_l as u32;
    let words = (SymTensor::new(c.n, c.l).cardinality() as f64).powi(big_l as i32);
    if words > cli.cap as f64 {
        return Err(Usage(format!("(B^l)^L has {words} words, above the cap {}", cli.cap)));
    }
    let mus = match mu {
        Some(m) => {
            if m.iter().sum::<u32>() != total || m.windows(2).any(|w| w[0] < w[1]) {
                return Err(Usage(format!("--mu must be a partition of lL = {total}")));
            }
            vec![m.to_vec()]
        }
        None => chars::partitions(total, c.n),
    };
    let energy = EnergyTable::build(c.n, c.l)?;
    let nu = vec![c.l; big_l];
    let rows: Vec<(Vec<u32>, QPoly, QPoly)> = mus
        .into_iter()
        .map(|m| {
            let a = chars::kostka_1dsum(&m, c.n, c.l, big_l, &energy);
            let b = chars::kostka_charge(&m, &nu);
            (m, a, b)
        })
        .collect();
    let pass = rows.iter().all(|(_, a, b)| a == b);
    let out = match cli.format {
        Format::Dot => return Err(no_dot("kostka")),
        Format::Json => pretty(&json!({
            "n": c.n, "l": c.l, "L": big_l, "pass": pass,
            "rows": rows.iter().map(|(m, a, b)| json!({ "mu": m, "one_d_sum": a.to_json(), "charge": b.to_json(), "equal": a == b })).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s = String::new();
            for (m, a, b) in &rows {
                let tag = if a == b { "" } else { "   MISMATCH" };
                let _ = writeln!(s, "K_{m:?}(q) = {a}   [charge: {b}]{tag}");
            }
            s
        }
    };
    Ok((out, pass))
}

fn cmd_kirillov(cli: &Cli, c: &Crystal, big_l: usize) -> Result<(String, bool), Usage> {
    validate(c)?;
    let report = chars::kirillov_check_with(c.n, c.l, big_l, cli.cap, &|mu: &[u32]| {
        chars::kostka_charge(mu, &vec![c.l; big_l])
    })?;
    let out = match cli.format {
        Format::Dot => return Err(no_dot("kirillov")),
        Format::Json => pretty(&report.to_json()),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "n={}, l={}, L={}, E_0={}", report.n, report.l, report.big_l, report.e0);
            for (mu, k) in &report.kostka {
                let _ = writeln!(s, "  K_{mu:?} = {k}");
            }
            let _ = writeln!(s, "lhs terms: {}, rhs terms: {}", report.lhs.len(), report.rhs.len());
            match &report.first_difference {
                None => {
                    let _ = writeln!(s, "PASS");
                }
                Some((e, a, b)) => {
                    let _ = writeln!(s, "FAIL at z^{:?} q^{}: lhs {a}, rhs {b}", &e[..e.len() - 1], e[e.len() - 1]);
                }
            }
            s
        }
    };
    Ok((out, report.pass))
}

fn cmd_check(cli: &Cli, hw: &Highest, kappa_max: usize, k_max: usize) -> Result<(String, bool), Usage> {
    let dz = demazure_for(cli, hw)?;
    let perfect = perfect_check(dz.model.n(), dz.model.l());
    let kappa = dz.mixing_index(kappa_max)?;
    let ii = match kappa {
        Some(kp) => dz.report_ii(&dz.check_ii(kp)?),
        None => {
            let mut r = dz.report_ii(&dz.check_ii(kappa_max)?);
            r.status = Status::Fail;
            r
        }
    };
    let dz = Demazure { table: dz.table.clone().with_kappa(kappa.unwrap_or(1)), ..dz };
    let iii = dz.report_iii(&dz.check_iii()?);
    let iv = dz.report_iv(&dz.check_iv(k_max));
    let pass = perfect.passed() && kappa.is_some() && iii.status == Status::Pass;
    let out = match cli.format {
        Format::Dot => return Err(no_dot("check")),
        Format::Json => pretty(&json!({
            "lambda": dz.model.lambda,
            "perfect": perfect,
            "kappa": kappa,
            "reports": [ii, iii, iv],
            "pass": pass,
        })),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "perfectness (n={}, l={}): {}", perfect.n, perfect.l, if perfect.passed() { "pass" } else { "fail" });
            match kappa {
                Some(kp) => {
                    let _ = writeln!(s, "(II) mixing index kappa = {kp}");
                }
                None => {
                    let _ = writeln!(s, "(II) no mixing index up to {kappa_max}");
                }
            }
            for r in [&iii, &iv] {
                let _ = writeln!(s, "({}) {}", r.assumption, serde_json::to_value(r.status).expect("status").as_str().unwrap_or(""));
            }
            s
        }
    };
    Ok((out, pass))
}
