//! The `ccc` command line: `factor`, `count`, `enumerate`, `dual`, `verify`.

use std::io::{Read, Write};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::json;

use crate::chain_ideals::count_ideals;
use crate::codes::{
    code_count_for, enumerate_codes, euclidean_size_check, sample_codes, selfdual_count, selfdual_enumerate,
    CyclicCode,
};
use crate::decomp::Decomposition;
use crate::error::{Error, Result};
use crate::field::{format_binary_literal, parse_binary_literal, FieldSpec, ModulusTable};
use crate::oracle;

#[derive(Debug, Parser)]
#[command(name = "ccc", version, about = "Cyclic codes of length 2n over F_{2^m}[u]/<u^k>")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factor x^n - 1 and print the idempotent decomposition
    Factor(Params),
    /// Count all cyclic codes and the self-dual ones
    Count(Params),
    /// Stream codes as JSON lines
    Enumerate {
        #[command(flatten)]
        params: Params,
        /// Stop after this many codes
        #[arg(long)]
        limit: Option<u64>,
        /// Only self-dual codes
        #[arg(long)]
        self_dual: bool,
        /// Serialize in parallel batches (output order unchanged)
        #[arg(long)]
        parallel: bool,
    },
    /// Dual of a code given as JSON (inline, a file path, or `-` for stdin)
    Dual {
        #[command(flatten)]
        params: Params,
        code: Option<String>,
        /// Dualize a uniformly sampled code instead
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the exhaustive oracle suite
    Verify(Params),
}

#[derive(Debug, Clone, Args)]
pub struct Params {
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: u32,
    /// Field modulus as a binary literal, e.g. 0b1011
    #[arg(long)]
    pub modulus: Option<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Output {
    Text,
    Json,
}

/// Validated parameters of one invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub m: u32,
    pub n: usize,
    pub k: u32,
    pub modulus_override: Option<u32>,
    pub output: Output,
    pub limit: Option<u64>,
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn from_params(p: &Params, limit: Option<u64>, seed: Option<u64>) -> Result<Self> {
        if p.m == 0 {
            return Err(Error::InvalidParameters("m must be at least 1".into()));
        }
        if p.n == 0 || p.n.is_multiple_of(2) {
            return Err(Error::InvalidParameters(format!("n must be odd and positive, got {}", p.n)));
        }
        if p.k < 2 {
            return Err(Error::InvalidParameters(format!("k must be at least 2, got {}", p.k)));
        }
        let modulus_override = p.modulus.as_deref().map(parse_binary_literal).transpose()?;
        let output = if p.json { Output::Json } else { Output::Text };
        Ok(RunConfig { m: p.m, n: p.n, k: p.k, modulus_override, output, limit, seed })
    }

    pub fn field(&self) -> Result<FieldSpec> {
        match self.modulus_override {
            Some(modulus) => FieldSpec::new(self.m, modulus),
            None => ModulusTable::from_env()?.spec(self.m),
        }
    }

    pub fn decomposition(&self) -> Result<Arc<Decomposition>> {
        Ok(Arc::new(Decomposition::new(self.field()?, self.n, self.k)?))
    }
}

/// Exact decimal, followed by scientific notation above `10^15`.
pub fn format_count(v: &BigUint) -> String {
    let digits = v.to_string();
    if v <= &BigUint::from(10u64.pow(15)) {
        return digits;
    }
    let exponent = digits.len() - 1;
    let mantissa = format!("{}.{}", &digits[..1], &digits[1..4]);
    format!("{digits} (~{mantissa}e{exponent})")
}

fn cycle_notation(rho: &[usize]) -> String {
    let mut seen = vec![false; rho.len()];
    let mut out = String::new();
    for start in 0..rho.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            cycle.push((j + 1).to_string());
            j = rho[j];
        }
        out.push_str(&format!("({})", cycle.join(" ")));
    }
    out
}

/// Runs one command; `Ok(false)` means a check failed.
pub fn run(cli: &Cli, out: &mut dyn Write, input: &mut dyn Read) -> Result<bool> {
    match &cli.command {
        Command::Factor(p) => cmd_factor(&RunConfig::from_params(p, None, None)?, out),
        Command::Count(p) => cmd_count(&RunConfig::from_params(p, None, None)?, out),
        Command::Enumerate { params, limit, self_dual, parallel } => {
            cmd_enumerate(&RunConfig::from_params(params, *limit, None)?, *self_dual, *parallel, out)
        }
        Command::Dual { params, code, seed } => {
            let cfg = RunConfig::from_params(params, None, *seed)?;
            let text = match (code.as_deref(), seed) {
                (_, Some(_)) => None,
                (Some(c), None) if c.trim_start().starts_with('{') => Some(c.to_string()),
                (Some(path), None) if path != "-" => Some(
                    std::fs::read_to_string(path)
                        .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?,
                ),
                _ => {
                    let mut s = String::new();
                    input.read_to_string(&mut s).map_err(|e| Error::Parse(format!("cannot read stdin: {e}")))?;
                    Some(s)
                }
            };
            cmd_dual(&cfg, text.as_deref(), out)
        }
        Command::Verify(p) => cmd_verify(&RunConfig::from_params(p, None, None)?, out),
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Parse(format!("write failed: {e}"))
}

pub fn cmd_factor(cfg: &RunConfig, out: &mut dyn Write) -> Result<bool> {
    let d = cfg.decomposition()?;
    if cfg.output == Output::Json {
        writeln!(out, "{}", serde_json::to_string(&d.report())?).map_err(io)?;
        return Ok(true);
    }
    let field = d.field;
    let mut s = String::new();
    s += &format!("field: F_2^{} (modulus {})\n", field.m(), format_binary_literal(field.modulus()));
    s += &format!("x^{} - 1 has {} irreducible factors:\n", d.n, d.r());
    for j in 0..d.r() {
        s += &format!("  f{} = {}  (degree {})\n", j + 1, d.factor(j), d.degree(j));
    }
    s += &format!("rho = {}\n", cycle_notation(&d.rho));
    let e: Vec<String> = d.e.iter().map(|x| x.bits().to_string()).collect();
    s += &format!("e = [{}]\n", e.join(", "));
    s += &format!("lambda = {}, eps = {}\n", d.lambda, d.eps_pairs);
    s += &format!("idempotents mod x^{} - 1:\n", d.two_n());
    for (j, eps) in d.idempotents.iter().enumerate() {
        s += &format!("  eps{} = {}\n", j + 1, eps);
    }
    out.write_all(s.as_bytes()).map_err(io)?;
    Ok(true)
}

pub fn cmd_count(cfg: &RunConfig, out: &mut dyn Write) -> Result<bool> {
    let d = cfg.decomposition()?;
    let per: Vec<BigUint> = (0..d.r()).map(|j| count_ideals(&d.residue_order(j), d.k)).collect();
    let total = code_count_for(&d);
    let selfdual = selfdual_count(&d)?;
    if cfg.output == Output::Json {
        let factors: Vec<_> = (0..d.r())
            .map(|j| json!({"factor": d.factor(j).to_string(), "degree": d.degree(j), "ideals": per[j].to_string()}))
            .collect();
        let mut v = json!({
            "m": d.field.m(), "n": d.n, "k": d.k,
            "factors": factors,
            "total": total.to_string(),
            "self_dual": selfdual.to_string(),
        });
        for (key, value) in [("total_sci", &total), ("self_dual_sci", &selfdual)] {
            if value > &BigUint::from(10u64.pow(15)) {
                v[key] = json!(value.to_f64().map(|x| format!("{x:.3e}")));
            }
        }
        writeln!(out, "{v}").map_err(io)?;
        return Ok(true);
    }
    let mut s = String::from("ideals per factor:\n");
    for (j, nj) in per.iter().enumerate() {
        s += &format!("  f{} = {}: N = {}\n", j + 1, d.factor(j), format_count(nj));
    }
    s += &format!("cyclic codes: {}\n", format_count(&total));
    s += &format!("self-dual codes: {}\n", format_count(&selfdual));
    out.write_all(s.as_bytes()).map_err(io)?;
    Ok(true)
}

const BATCH: usize = 4096;

pub fn cmd_enumerate(cfg: &RunConfig, self_dual: bool, parallel: bool, out: &mut dyn Write) -> Result<bool> {
    let d = cfg.decomposition()?;
    let limit = cfg.limit.map_or(usize::MAX, |l| usize::try_from(l).unwrap_or(usize::MAX));
    let codes: Box<dyn Iterator<Item = CyclicCode>> = if self_dual {
        Box::new(selfdual_enumerate(&d)?)
    } else {
        Box::new(enumerate_codes(&d)?)
    };
    let mut codes = codes.take(limit);
    loop {
        let batch: Vec<CyclicCode> = codes.by_ref().take(BATCH).collect();
        if batch.is_empty() {
            break;
        }
        let lines: Vec<String> = if parallel {
            batch.par_iter().map(CyclicCode::to_json).collect()
        } else {
            batch.iter().map(CyclicCode::to_json).collect()
        };
        for line in lines {
            writeln!(out, "{line}").map_err(io)?;
        }
    }
    Ok(true)
}

pub fn cmd_dual(cfg: &RunConfig, code_json: Option<&str>, out: &mut dyn Write) -> Result<bool> {
    let d = cfg.decomposition()?;
    let code = match (code_json, cfg.seed) {
        (_, Some(seed)) => sample_codes(&d, seed, 1)?.remove(0),
        (Some(text), None) => CyclicCode::from_json(text.trim(), d.clone())?,
        (None, None) => return Err(Error::Parse("no code given".into())),
    };
    let dual = code.dual()?;
    let (a, b) = euclidean_size_check(&code)?;
    let involution = dual.dual()? == code;
    let complement = a + b == d.space_log2();
    if cfg.output == Output::Json {
        let v = json!({
            "code": code.to_repr(), "dual": dual.to_repr(),
            "log2_code": a, "log2_dual": b, "space_log2": d.space_log2(),
            "size_complement": complement, "involution": involution,
        });
        writeln!(out, "{v}").map_err(io)?;
    } else {
        let ok = |b: bool| if b { "ok" } else { "FAILED" };
        let s = format!(
            "code: {}\ndual: {}\nsizes: log2|C| = {a}, log2|dual| = {b}, sum = {} (2nmk = {}): {}\ninvolution: {}\n",
            code.to_json(),
            dual.to_json(),
            a + b,
            d.space_log2(),
            ok(complement),
            ok(involution)
        );
        out.write_all(s.as_bytes()).map_err(io)?;
    }
    Ok(complement && involution)
}

pub fn cmd_verify(cfg: &RunConfig, out: &mut dyn Write) -> Result<bool> {
    let d = cfg.decomposition()?;
    let report = oracle::verify(&d)?;
    if cfg.output == Output::Json {
        writeln!(out, "{}", serde_json::to_string(&report)?).map_err(io)?;
    } else {
        let mut s = String::new();
        for c in &report.checks {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            s += &format!("[{mark}] {} ({}): expected {}, got {}\n", c.name, c.params, c.expected, c.actual);
        }
        s += &format!("overall: {}\n", if report.pass { "PASS" } else { "FAIL" });
        out.write_all(s.as_bytes()).map_err(io)?;
    }
    Ok(report.pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (Result<bool>, String) {
        let cli = Cli::try_parse_from(std::iter::once("ccc").chain(args.iter().copied())).unwrap();
        let mut out = Vec::new();
        let r = run(&cli, &mut out, &mut std::io::empty());
        (r, String::from_utf8(out).unwrap())
    }

    #[test]
    fn count_text() {
        let (r, s) = run_args(&["count", "--n", "7", "--k", "4"]);
        assert!(r.unwrap());
        assert!(s.contains("cyclic codes: 293687\n"), "{s}");
        assert!(s.contains("self-dual codes: 791\n"), "{s}");
    }

    #[test]
    fn scientific_notation() {
        assert_eq!(format_count(&BigUint::from(123u32)), "123");
        assert_eq!(format_count(&BigUint::from(1234567890123456789u64)), "1234567890123456789 (~1.234e18)");
    }

    #[test]
    fn cycles() {
        assert_eq!(cycle_notation(&[0, 2, 1]), "(1)(2 3)");
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(run_args(&["count", "--n", "4", "--k", "2"]).0.is_err());
        assert!(run_args(&["count", "--n", "3", "--k", "1"]).0.is_err());
        assert!(run_args(&["count", "--n", "3", "--k", "2", "--m", "0"]).0.is_err());
    }

    #[test]
    fn enumerate_limit_zero() {
        let (r, s) = run_args(&["enumerate", "--n", "1", "--k", "2", "--limit", "0"]);
        assert!(r.unwrap());
        assert!(s.is_empty());
    }
}
