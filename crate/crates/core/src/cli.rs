//! Command-line front end.
//!
//! Every subcommand builds [`Records`]; the same records render as aligned
//! text or, with `--json`, as one JSON object per line.

use clap::{Parser, Subcommand};
use serde_json::Value;

use crate::basket::{chi_of, enumerate_baskets, Basket};
use crate::certify::{birational_from, case_analysis, criterion_threshold, rho0_bound, Mode};
use crate::error::{Error, Result};
use crate::rational::{parse, Rational};
use crate::reid::{contribution, free_minimum, h0_exact, table_a, Numerics};
use crate::verify;
use crate::wps::{coeff_i64, fit_invariants, hilbert_coeffs, worked_example_bound, WeightedVariety};

#[derive(Debug, Parser)]
#[command(name = "orbibound", version, about = "Orbifold Riemann-Roch and birationality bounds")]
pub struct Cli {
    /// Emit JSON lines instead of aligned text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the table of c_Q(i).
    TableA,
    /// chi(O_X) of a basket, e.g. "5x(1,2) 4x(1,3) 1x(1,6)".
    Chi { basket: String },
    /// Enumerate baskets with the given chi and local index.
    Baskets {
        #[arg(long)]
        chi: u32,
        #[arg(long)]
        index: u32,
    },
    /// h0(mL+T). Residues are the local indices of mL+T, one per point in
    /// canonical order; `*` leaves a point free and gives a lower bound.
    H0 {
        #[arg(long)]
        basket: String,
        #[arg(long = "L3")]
        l3: String,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        m: i64,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        residues: Vec<String>,
        #[arg(long, default_value = "paper")]
        mode: String,
    },
    /// Least k with h0(mL+T') > 0 for all m >= k.
    Rho0 {
        #[arg(long)]
        index: u32,
    },
    /// Least m above max{m0+m1+rho0-1, mu0+m1+2/zeta}.
    Bound {
        #[arg(long)]
        m0: u32,
        #[arg(long)]
        m1: u32,
        #[arg(long)]
        mu0: String,
        #[arg(long)]
        rho0: u32,
        #[arg(long)]
        zeta: String,
    },
    /// Certified case analysis for one local index.
    Case {
        #[arg(long)]
        index: u32,
        #[arg(long, default_value = "paper")]
        mode: String,
    },
    /// Compare every reference constant with the computed value.
    VerifyPaper,
    /// Hilbert series of a weighted Calabi-Yau against the formula.
    Wps {
        variety: String,
        #[arg(long, default_value_t = 20)]
        check: usize,
    },
}

/// Column headers plus rows of JSON cells.
#[derive(Debug, Clone, Default)]
pub struct Records {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Records {
    pub fn new<S: ToString>(headers: &[S]) -> Self {
        Records { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    fn cell(v: &Value) -> String {
        match v {
            Value::Null => String::new(),
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }

    /// Left-aligned columns separated by two spaces, trailing blanks trimmed.
    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = std::iter::once(self.headers.clone())
            .chain(self.rows.iter().map(|r| r.iter().map(Self::cell).collect()))
            .collect();
        let widths: Vec<usize> = (0..self.headers.len())
            .map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &cells {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }

    /// One object per row, keys in header order, null cells omitted.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let fields: Vec<String> = self
                .headers
                .iter()
                .zip(row)
                .filter(|(_, v)| !v.is_null())
                .map(|(h, v)| format!("{}:{}", Value::from(h.as_str()), v))
                .collect();
            out.push('{');
            out.push_str(&fields.join(","));
            out.push_str("}\n");
        }
        out
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            self.to_json_lines()
        } else {
            self.to_text()
        }
    }
}

/// Exit status and captured streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn s(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

fn rat(x: &str, name: &str) -> Result<Rational> {
    parse(x).map_err(|e| Error::Parse(format!("--{name}: {e}")))
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// Runs a parsed command: `(exit code, stdout)`.
pub fn execute(cli: &Cli) -> Result<(i32, String)> {
    let json = cli.json;
    match &cli.command {
        Command::TableA => Ok((0, table_records().render(json))),
        Command::Chi { basket } => {
            let b: Basket = basket.parse()?;
            let mut r = Records::new(&["basket", "chi"]);
            r.push(vec![s(&b), s(chi_of(&b))]);
            Ok((0, if json { r.to_json_lines() } else { format!("{}\n", chi_of(&b)) }))
        }
        Command::Baskets { chi, index } => {
            let mut r = Records::new(&["basket", "points", "triples"]);
            for b in enumerate_baskets(*chi, *index)? {
                r.push(vec![s(&b), Value::from(b.len()), b.to_json()]);
            }
            Ok((0, r.render(json)))
        }
        Command::H0 { basket, l3, lambda, m, residues, mode } => {
            let b: Basket = basket.parse()?;
            let mode: Mode = mode.parse()?;
            let n = Numerics::from_basket(b, rat(l3, "L3")?, rat(lambda, "lambda")?)?;
            let (value, exact) = h0_value(&n, *m, residues, mode)?;
            let mut r = Records::new(&["m", "h0", "exact"]);
            r.push(vec![Value::from(*m), s(&value), Value::from(exact)]);
            let text = format!("h0({m}L+T) {} {value}\n", if exact { "=" } else { ">=" });
            Ok((0, if json { r.to_json_lines() } else { text }))
        }
        Command::Rho0 { index } => {
            let mut r = Records::new(&["index", "rho0"]);
            r.push(vec![Value::from(*index), Value::from(rho0_bound(*index)?)]);
            Ok((0, r.render(json)))
        }
        Command::Bound { m0, m1, mu0, rho0, zeta } => {
            let mu0 = rat(mu0, "mu0")?;
            let zeta = rat(zeta, "zeta")?;
            if zeta <= Rational::from_integer(0.into()) {
                return Err(Error::Parse("--zeta must be positive".into()));
            }
            let (a, b) = criterion_threshold(*m0, *m1, &mu0, *rho0, &zeta);
            let m = birational_from(*m0, *m1, &mu0, *rho0, &zeta);
            let mut r = Records::new(&["m0+m1+rho0-1", "mu0+m1+2/zeta", "m"]);
            r.push(vec![s(a), s(b), Value::from(m)]);
            Ok((0, if json { r.to_json_lines() } else { format!("{m}\n") }))
        }
        Command::Case { index, mode } => {
            let mode: Mode = mode.parse()?;
            let cert = case_analysis(*index, mode)?;
            if json {
                return Ok((0, cert.to_json_lines()));
            }
            let mut r = Records::new(&[
                "branch", "m0", "m1", "mu0<=", "zeta>=", "m0+m1+rho0-1", "mu0+m1+2/zeta", "m>=",
            ]);
            for sc in &cert.scenarios {
                r.push(vec![
                    s(&sc.branch),
                    Value::from(sc.m0),
                    Value::from(sc.m1),
                    s(&sc.mu0_upper),
                    s(&sc.zeta_lb),
                    s(&sc.rho_threshold),
                    s(&sc.epsilon_threshold),
                    Value::from(sc.final_m),
                ]);
            }
            let mut out = format!("i(X) = {}  mode {}  rho0 = {}\n", cert.index, cert.mode, cert.rho0);
            out.push_str(&r.to_text());
            for sc in &cert.scenarios {
                for note in sc.notes.iter().chain(&sc.rejected) {
                    out.push_str(&format!("  [{}] {note}\n", sc.branch));
                }
            }
            out.push_str(&format!("case bound: m >= {}\n", cert.case_bound));
            Ok((0, out))
        }
        Command::VerifyPaper => {
            let report = verify::run_all();
            Ok((if report.all_pass() { 0 } else { 1 }, verify_output(&report, json)))
        }
        Command::Wps { variety, check } => {
            let v: WeightedVariety = variety.parse()?;
            let n = fit_invariants(&v)?;
            let coeffs = hilbert_coeffs(&v, *check);
            let mut r = Records::new(&["m", "series", "formula", "match"]);
            let mut ok = true;
            for (m, c) in coeffs.iter().enumerate().skip(1) {
                let f = h0_exact(&n, m as i64, &[])?;
                let hit = f == Rational::from_integer(c.clone());
                ok &= hit;
                r.push(vec![Value::from(m), Value::from(coeff_i64(c)), s(&f), Value::from(hit)]);
            }
            let w = worked_example_bound(&v)?;
            let mut out = r.render(json);
            if json {
                out.push_str(&serde_json::to_string(&w).expect("json"));
                out.push('\n');
            } else {
                out.push_str(&format!(
                    "{v}: L3 = {}, lambda = {}, zeta = {}, birational for m >= {}\n",
                    w.l3, w.lambda, w.zeta, w.bound
                ));
            }
            Ok((if ok { 0 } else { 1 }, out))
        }
    }
}

fn h0_value(n: &Numerics, m: i64, residues: &[String], mode: Mode) -> Result<(Rational, bool)> {
    if residues.len() != n.basket.len() {
        return Err(Error::ResidueMisaligned { expected: n.basket.len(), got: residues.len() });
    }
    if m < 1 {
        return Err(Error::BadMultiple(m));
    }
    let mut fixed = Vec::new();
    let mut free = false;
    let mut singular = Rational::from_integer(0.into());
    for (p, tok) in n.basket.points().iter().zip(residues) {
        if tok.trim() == "*" {
            free = true;
            singular += free_minimum(*p, m as u32, mode.rule());
        } else {
            let i: i64 = tok.trim().parse().map_err(|_| Error::Parse(format!("bad residue {tok:?}")))?;
            singular += contribution(*p, i)?;
            fixed.push(i as u32);
        }
    }
    if free {
        Ok((&n.chi + n.lambda_of_multiple(m) + singular, false))
    } else {
        Ok((h0_exact(n, m, &fixed)?, true))
    }
}

/// Table A as records: one row per point type, columns `0..12`.
pub fn table_records() -> Records {
    let mut headers = vec!["point".to_string()];
    headers.extend((0..12).map(|i| i.to_string()));
    let mut r = Records { headers, rows: Vec::new() };
    for (p, row) in table_a() {
        let mut cells = vec![s(p)];
        cells.extend((0..12).map(|i| row.get(i).map_or(Value::Null, s)));
        r.push(cells);
    }
    r
}

/// The `verify-paper` report in either format.
pub fn verify_output(report: &verify::Report, json: bool) -> String {
    let mut checks = Records::new(&["criterion", "check", "expected", "computed", "status"]);
    for c in &report.checks {
        checks.push(vec![
            Value::from(c.criterion),
            s(&c.item),
            s(&c.expected),
            s(&c.computed),
            s(if c.pass { "PASS" } else { "FAIL" }),
        ]);
    }
    let mut summary = Records::new(&["criterion", "name", "status"]);
    for (n, name, pass) in report.summary() {
        summary.push(vec![Value::from(n), s(name), s(if pass { "PASS" } else { "FAIL" })]);
    }
    let passed = report.summary().iter().filter(|(_, _, p)| *p).count();
    if json {
        format!("{}{}", checks.to_json_lines(), summary.to_json_lines())
    } else {
        format!("{}\n{}\n{passed}/9 criteria pass\n", checks.to_text(), summary.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn out(args: &[&str]) -> Outcome {
        run(std::iter::once("orbibound").chain(args.iter().copied()))
    }

    #[test]
    fn scalar_commands() {
        assert_eq!(out(&["chi", "5x(1,2) 4x(1,3) 1x(1,6)"]).stdout, "1\n");
        assert_eq!(out(&["bound", "--m0", "1", "--m1", "1", "--mu0", "1", "--rho0", "1", "--zeta", "1"]).stdout, "5\n");
        let o = out(&["h0", "--basket", "{}", "--L3", "1", "--lambda", "3", "--m", "2"]);
        assert_eq!(o.stdout, "h0(2L+T) = 7\n");
    }

    #[test]
    fn h0_corner_case() {
        let b = "5x(1,5)";
        let o = out(&["h0", "--basket", b, "--L3", "1/5", "--lambda", "1/5", "--m", "5", "--residues", "0,0,0,0,0"]);
        assert_eq!(o.stdout, "h0(5L+T) = 6\n");
        let o = out(&["h0", "--basket", b, "--L3", "1/5", "--lambda", "1/5", "--m", "4", "--residues", "*,*,*,*,*"]);
        assert_eq!(o.stdout, "h0(4L+T) >= 9/5\n");
    }

    #[test]
    fn errors_are_nonzero() {
        assert_eq!(out(&["chi", "2x(2,4)"]).code, 2);
        assert_eq!(out(&["baskets", "--chi", "2", "--index", "5"]).code, 2);
        let o = out(&["h0", "--basket", "(1,2)", "--L3", "1/2", "--lambda", "1/2", "--m", "1", "--residues", "2"]);
        assert_eq!(o.code, 2);
        assert!(o.stderr.contains("out of range"));
        assert_ne!(out(&["nonsense"]).code, 0);
    }

    #[test]
    fn records_render_both_ways() {
        let mut r = Records::new(&["a", "bb"]);
        r.push(vec![s("x"), Value::Null]);
        r.push(vec![s("long"), Value::from(3)]);
        assert_eq!(r.to_text(), "a     bb\nx\nlong  3\n");
        assert_eq!(r.to_json_lines(), "{\"a\":\"x\"}\n{\"a\":\"long\",\"bb\":3}\n");
    }
}
