//! Command-line front end. `run` is the whole program; `main.rs` only forwards
//! arguments and the exit code.
//!
//! Exit codes: 0 success, 1 domain error, 2 theorem violation (or a failed
//! check), 64 usage error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::dyck::{enum_cap, enumerate_compatible, max_dyck, pair_counts};
use crate::error::Error;
use crate::formulas::{
    chebyshev_divisibility, divisibility_range, greedy_rank2, hybrid_expand, l_max, mixed_contributing_taus,
    mixed_expand, rank3_dyck, rank3_monomial, Rank3Params,
};
use crate::laurent::LaurentPolynomial;
use crate::mutation::{Budget, ExchangeMatrix, Seed};
use crate::positivity::{check_positivity, positivity_sweep, verify_sequence, Chain};
use crate::sequences::cheb_range;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Names accepted by `emit-fixture`.
pub const FIXTURES: [&str; 3] = ["example-8x3", "example-mixed-222", "example-section5"];

#[derive(Parser, Debug)]
#[command(name = "clusterpos", version, about = "Laurent expansions of rank 2 and rank 3 cluster variables")]
pub struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Pretty,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Values c_from..=c_to of the Chebyshev-type sequence
    Cheb {
        #[arg(long)]
        r: i64,
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
    },
    /// The maximal Dyck path D^{a1 x a2}
    Dyck {
        #[arg(long)]
        a1: i64,
        #[arg(long)]
        a2: i64,
    },
    /// Compatible pairs of D^{a1 x a2} for r
    Compat {
        #[arg(long)]
        a1: i64,
        #[arg(long)]
        a2: i64,
        #[arg(long)]
        r: usize,
        /// only count pairs by (|S1|, |S2|)
        #[arg(long)]
        counts: bool,
    },
    /// Matrix mutation
    Mutate {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[command(flatten)]
        seq: SeqArgs,
    },
    /// Cluster after a mutation sequence, by iterated mutation
    ExpandOracle {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[command(flatten)]
        seq: SeqArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        /// print only this cluster variable (1-based)
        #[arg(long)]
        var: Option<usize>,
    },
    /// Rank 2 cluster variable x_n from the Dyck path formula
    ExpandGreedy {
        #[arg(long)]
        r: i64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// print as denominator exponents plus numerator
        #[arg(long)]
        split: bool,
    },
    /// Rank 3 x_n (or x_{n+1}^p x_n^q) from the Dyck path formula
    ExpandRank3 {
        #[command(flatten)]
        params: MonomialArgs,
        #[arg(long)]
        split: bool,
    },
    /// Rank 3 x_{n+1}^p x_n^q from the tau-sum formula
    ExpandMixed {
        #[command(flatten)]
        params: MonomialArgs,
        /// also list the contributing tau tuples
        #[arg(long)]
        taus: bool,
        #[arg(long)]
        split: bool,
    },
    /// The two sums of the hybrid formula
    ExpandHybrid {
        #[command(flatten)]
        params: MonomialArgs,
    },
    /// L_max of a tau vector
    Lmax {
        #[arg(long)]
        r: i64,
        #[arg(long, default_value_t = 1)]
        p: i64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        taus: Vec<i64>,
    },
    /// Quotients of the restricted tau sums by (1 + x1^r)^{ra - A_n}
    Divisibility {
        #[arg(long)]
        r: i64,
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 1)]
        p: i64,
        #[arg(long, default_value_t = 0)]
        q: i64,
        /// a single value of s_{n-1}; default is every admissible value
        #[arg(long)]
        a: Option<i64>,
    },
    /// Block-by-block positivity pipeline for the variables of the start seed
    Verify {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[command(flatten)]
        seq: SeqArgs,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Minimum coefficients of all cluster variables along a sequence
    CheckPositivity {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[command(flatten)]
        seq: SeqArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        /// instead check every sequence up to this length
        #[arg(long)]
        sweep: Option<usize>,
    },
    /// Write a golden fixture (or all of them)
    EmitFixture {
        /// one of example-8x3, example-mixed-222, example-section5, all
        name: String,
        /// directory to write `<name>.json` into; default is stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args, Debug)]
pub struct QuiverArgs {
    /// exchange matrix as JSON: `[[0,2,-2],[-2,0,2],[2,-2,0]]` or `{"rank":3,"b":[...]}`
    #[arg(long, conflicts_with = "cycle")]
    pub matrix: Option<String>,
    /// 3-cycle multiplicities r,s,t (1->2: r, 2->3: t, 3->1: s)
    #[arg(long, value_delimiter = ',', num_args = 1)]
    pub cycle: Option<Vec<i64>>,
}

#[derive(clap::Args, Debug)]
pub struct BudgetArgs {
    /// oracle limit on the estimated number of terms of an exchange product
    #[arg(long, default_value_t = Budget::default().max_terms)]
    pub max_terms: f64,
    /// oracle limit on log2 of the coefficient sum of an exchange product
    #[arg(long, default_value_t = Budget::default().max_bits)]
    pub max_bits: f64,
}

impl BudgetArgs {
    fn get(&self) -> Budget {
        Budget { max_terms: self.max_terms, max_bits: self.max_bits }
    }
}

#[derive(clap::Args, Debug)]
pub struct SeqArgs {
    /// mutation vertex, repeatable
    #[arg(long = "at")]
    pub at: Vec<usize>,
    /// comma-separated mutation sequence
    #[arg(long, value_delimiter = ',', conflicts_with = "at")]
    pub seq: Vec<usize>,
}

impl SeqArgs {
    fn get(&self) -> Vec<usize> {
        if self.at.is_empty() { self.seq.clone() } else { self.at.clone() }
    }
}

#[derive(clap::Args, Debug)]
pub struct MonomialArgs {
    #[arg(long)]
    pub r: i64,
    #[arg(long)]
    pub s: i64,
    #[arg(long)]
    pub t: i64,
    #[arg(long)]
    pub n: i64,
    #[arg(long)]
    pub p: Option<i64>,
    #[arg(long)]
    pub q: Option<i64>,
}

impl MonomialArgs {
    fn params(&self, default: (i64, i64)) -> Rank3Params {
        Rank3Params::new(self.r, self.s, self.t, self.n, self.p.unwrap_or(default.0), self.q.unwrap_or(default.1))
    }
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

/// What a subcommand produced: a JSON value, optionally with a pretty text form,
/// and whether a check inside it failed.
struct Output {
    json: Value,
    pretty: Option<String>,
    failed: bool,
}

impl Output {
    fn value<T: Serialize>(v: &T) -> Self {
        Output { json: serde_json::to_value(v).expect("serializable"), pretty: None, failed: false }
    }

    fn poly(p: &LaurentPolynomial, split: bool) -> Self {
        if split {
            let (den, num) = p.split_denominator();
            let den: Vec<i64> = den.iter().map(|e| -e).collect();
            Output {
                json: json!({"denominator": den, "numerator": num.to_json()}),
                pretty: Some(format!("({num}) / {}", monomial_text(p, &den))),
                failed: false,
            }
        } else {
            Output { json: serde_json::to_value(p.to_json()).expect("serializable"), pretty: Some(p.to_string()), failed: false }
        }
    }
}

fn monomial_text(p: &LaurentPolynomial, exps: &[i64]) -> String {
    let parts: Vec<String> = p
        .vars()
        .iter()
        .zip(exps)
        .filter(|(_, e)| **e != 0)
        .map(|(v, e)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    if parts.is_empty() { "1".into() } else { parts.join("*") }
}

fn parse_matrix(q: &QuiverArgs) -> Result<ExchangeMatrix, Failure> {
    if let Some(c) = &q.cycle {
        if c.len() != 3 {
            return Err(Failure::Usage("--cycle takes r,s,t".into()));
        }
        return Ok(ExchangeMatrix::rank3_cycle(c[0], c[1], c[2]));
    }
    let text = q.matrix.as_deref().ok_or_else(|| Failure::Usage("one of --matrix or --cycle is required".into()))?;
    let value: Value = serde_json::from_str(text).map_err(|e| Failure::Usage(format!("malformed matrix JSON: {e}")))?;
    let m = if value.is_array() {
        let b: Vec<Vec<i64>> =
            serde_json::from_value(value).map_err(|e| Failure::Usage(format!("malformed matrix JSON: {e}")))?;
        ExchangeMatrix { rank: b.len(), b, coeff_rows: None }
    } else {
        serde_json::from_value(value).map_err(|e| Failure::Usage(format!("malformed matrix JSON: {e}")))?
    };
    m.validate()?;
    Ok(m)
}

/// The JSON content of a named fixture.
pub fn fixture(name: &str) -> crate::Result<Value> {
    match name {
        "example-8x3" => {
            let path = max_dyck(8, 3)?;
            let pairs = enumerate_compatible(&path, 3, enum_cap())?;
            let x5 = greedy_rank2(3, 5)?;
            let (den, num) = x5.split_denominator();
            Ok(json!({
                "name": name,
                "r": 3,
                "path": path.to_json(),
                "pair_count": pairs.len(),
                "pairs": pairs,
                "x5": x5.to_json(),
                "denominator": den.iter().map(|e| -e).collect::<Vec<_>>(),
                "numerator": num.to_json(),
            }))
        }
        "example-mixed-222" => {
            let pr = Rank3Params::new(2, 2, 2, 5, 1, 0);
            Ok(json!({
                "name": name,
                "params": pr,
                "taus": mixed_contributing_taus(pr)?,
                "x6": mixed_expand(pr)?.to_json(),
            }))
        }
        "example-section5" => {
            let b0 = ExchangeMatrix::rank3_cycle(3, 7, 3);
            let seq = [2usize, 1, 3, 1, 2, 1];
            let chain = Chain::new(&b0, &seq)?;
            let quivers = (0..=4).map(|k| b0.mutate_seq(&seq[..k])).collect::<crate::Result<Vec<_>>>()?;
            let t1 = chain.expand_at_node(0, 1, 0, 1)?;
            let t2 = chain.expand_at_node(0, 1, 0, 2)?;
            let dec = chain.group_three_sums(&t2)?;
            let report = chain.verify_p_theta(&dec)?;
            Ok(json!({
                "name": name,
                "matrix": b0,
                "sequence": seq,
                "segmentation": chain.segmentation(),
                "quivers": quivers,
                "variable": {"vertex": 2, "p": 1, "q": 0},
                "t1": t1.poly.to_json(),
                "t2": t2.poly.to_json(),
                "grouping": dec.to_json(),
                "p_theta": report,
            }))
        }
        other => Err(Error::InvalidArgument(format!("unknown fixture {other:?}; known: {}", FIXTURES.join(", ")))),
    }
}

fn execute(cmd: &Command) -> Result<Output, Failure> {
    Ok(match cmd {
        Command::Cheb { r, from, to } => Output::value(&cheb_range(*r, *from, *to)?),
        Command::Dyck { a1, a2 } => Output::value(&max_dyck(*a1, *a2)?.to_json()),
        Command::Compat { a1, a2, r, counts } => {
            let path = max_dyck(*a1, *a2)?;
            if *counts {
                let c = pair_counts(&path, *r, enum_cap())?;
                let total: u64 = c.values().sum();
                let by_size: Vec<[u64; 3]> = c.iter().map(|(&(a, b), &n)| [a as u64, b as u64, n]).collect();
                Output::value(&json!({"count": total, "by_size": by_size}))
            } else {
                let pairs = enumerate_compatible(&path, *r, enum_cap())?;
                Output::value(&json!({"count": pairs.len(), "pairs": pairs}))
            }
        }
        Command::Mutate { quiver, seq } => Output::value(&parse_matrix(quiver)?.mutate_seq(&seq.get())?),
        Command::ExpandOracle { quiver, seq, var, budget } => {
            let budget = budget.get();
            let mut seed = Seed::initial(parse_matrix(quiver)?)?;
            for k in seq.get() {
                seed = seed.mutate_with_budget(k, Some(&budget))?;
            }
            match var {
                Some(k) => {
                    let p = seed
                        .cluster
                        .get(k.wrapping_sub(1))
                        .ok_or_else(|| Error::InvalidArgument(format!("no cluster variable {k}")))?;
                    Output::poly(p, false)
                }
                None => {
                    let cluster: Vec<_> = seed.cluster.iter().map(|p| p.to_json()).collect();
                    let pretty = seed.cluster.iter().enumerate().map(|(i, p)| format!("x{}: {p}", i + 1)).collect::<Vec<_>>();
                    Output {
                        json: json!({"matrix": seed.matrix, "cluster": cluster}),
                        pretty: Some(pretty.join("\n")),
                        failed: false,
                    }
                }
            }
        }
        Command::ExpandGreedy { r, n, split } => Output::poly(&greedy_rank2(*r, *n)?, *split),
        Command::ExpandRank3 { params, split } => {
            let p = if params.p.is_none() && params.q.is_none() {
                rank3_dyck(params.r, params.s, params.t, params.n)?
            } else {
                rank3_monomial(params.params((0, 1)))?
            };
            Output::poly(&p, *split)
        }
        Command::ExpandMixed { params, taus, split } => {
            let pr = params.params((1, 0));
            let poly = mixed_expand(pr)?;
            if *taus {
                let mut out = Output::poly(&poly, *split);
                out.json = json!({"poly": out.json, "taus": mixed_contributing_taus(pr)?});
                out
            } else {
                Output::poly(&poly, *split)
            }
        }
        Command::ExpandHybrid { params } => {
            let h = hybrid_expand(params.params((1, 0)))?;
            Output {
                json: json!({"sum1": h.sum1.to_json(), "sum2": h.sum2.to_json()}),
                pretty: Some(format!("sum1: {}\nsum2: {}", h.sum1, h.sum2)),
                failed: false,
            }
        }
        Command::Lmax { r, p, taus } => {
            let l: Vec<Value> = l_max(*r, *p, taus)?.into_iter().map(|(t, k)| json!({"tau": t, "k": k})).collect();
            Output::value(&l)
        }
        Command::Divisibility { r, n, p, q, a } => {
            let range: Vec<i64> = match a {
                Some(a) => vec![*a],
                None => divisibility_range(*r, *n, *p, *q)?.collect(),
            };
            let mut rows = Vec::new();
            let mut pretty = Vec::new();
            for a in range {
                let quot = chebyshev_divisibility(*r, *n, *p, *q, a)?;
                pretty.push(format!("a={a}: {quot}"));
                rows.push(json!({"a": a, "quotient": quot.to_json()}));
            }
            Output { json: Value::Array(rows), pretty: Some(pretty.join("\n")), failed: false }
        }
        Command::Verify { quiver, seq, budget } => {
            let budget = budget.get();
            let rep = verify_sequence(&parse_matrix(quiver)?, &seq.get(), Some(&budget))?;
            let failed = !rep.passed;
            Output { failed, ..Output::value(&rep) }
        }
        Command::CheckPositivity { quiver, seq, sweep, budget } => {
            let budget = budget.get();
            let m = parse_matrix(quiver)?;
            match sweep {
                Some(len) => {
                    let rep = positivity_sweep(&m, *len, Some(&budget))?;
                    let failed = !rep.all_positive;
                    Output { failed, ..Output::value(&rep) }
                }
                None => {
                    let rep = check_positivity(&m, &seq.get(), Some(&budget))?;
                    let failed = !rep.positive;
                    Output { failed, ..Output::value(&rep) }
                }
            }
        }
        Command::EmitFixture { name, out } => {
            let names: Vec<&str> = if name == "all" { FIXTURES.to_vec() } else { vec![name.as_str()] };
            let mut written = Vec::new();
            let mut values = Vec::new();
            if let Some(dir) = out {
                std::fs::create_dir_all(dir)
                    .map_err(|e| Error::InvalidArgument(format!("cannot create {}: {e}", dir.display())))?;
            }
            for n in names {
                let v = fixture(n)?;
                if let Some(dir) = out {
                    let path = dir.join(format!("{n}.json"));
                    let text = serde_json::to_string_pretty(&v).expect("serializable") + "\n";
                    std::fs::write(&path, text)
                        .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?;
                    written.push(path.display().to_string());
                } else {
                    values.push(v);
                }
            }
            if out.is_some() {
                Output::value(&json!({"written": written}))
            } else if values.len() == 1 {
                Output::value(&values.pop().expect("one value"))
            } else {
                Output::value(&values)
            }
        }
    })
}

fn error_json(e: &Error) -> Value {
    json!({"error": {"kind": e.kind(), "message": e.to_string()}})
}

/// Runs the program on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let sink: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(o) => {
            let text = match (cli.format, &o.pretty) {
                (Format::Pretty, Some(p)) => p.clone(),
                (Format::Pretty, None) => serde_json::to_string_pretty(&o.json).expect("serializable"),
                (Format::Json, _) => serde_json::to_string(&o.json).expect("serializable"),
            };
            let _ = writeln!(out, "{text}");
            if o.failed { EXIT_VIOLATION } else { EXIT_OK }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(out, "{}", error_json(&e));
            if e.is_theorem_violation() { EXIT_VIOLATION } else { EXIT_DOMAIN }
        }
    }
}
