//! Hilbert series of weighted complete intersections.
//!
//! Quasi-smoothness is trusted, not checked.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::basket::Basket;
use crate::certify::{birational_from, zeta_lower};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::reid::{h0_exact, Numerics};

/// `X_{d1,...} in P(w0,...)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightedVariety {
    weights: Vec<u32>,
    degrees: Vec<u32>,
}

impl WeightedVariety {
    pub fn new(weights: Vec<u32>, degrees: Vec<u32>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidVariety(m));
        if weights.iter().chain(&degrees).any(|&x| x == 0) {
            return bad("weights and degrees must be positive".into());
        }
        if weights.len() != degrees.len() + 4 {
            return bad(format!(
                "{} weights and {} degrees do not cut out a threefold",
                weights.len(),
                degrees.len()
            ));
        }
        let (sw, sd): (u32, u32) = (weights.iter().sum(), degrees.iter().sum());
        if sw != sd {
            return bad(format!("sum of degrees {sd} != sum of weights {sw}; K is not trivial"));
        }
        Ok(WeightedVariety { weights, degrees })
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }
}

impl fmt::Display for WeightedVariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "X{} in P({})", join(&self.degrees), join(&self.weights))
    }
}

impl FromStr for WeightedVariety {
    type Err = Error;

    /// `X10 in P(1,1,1,2,5)`, `X2,6 in P(1,1,1,1,1,3)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected e.g. \"X10 in P(1,1,1,2,5)\", got {s:?}"));
        let (lhs, rhs) = s.trim().split_once(" in ").ok_or_else(bad)?;
        let degs = lhs.trim().strip_prefix('X').ok_or_else(bad)?;
        let ws = rhs
            .trim()
            .strip_prefix("P(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let nums = |t: &str| -> Result<Vec<u32>> {
            t.split(',').map(|x| x.trim().parse::<u32>().map_err(|_| bad())).collect()
        };
        WeightedVariety::new(nums(ws)?, nums(degs)?)
    }
}

/// Coefficients of `prod (1 - t^d) / prod (1 - t^w)` in degrees `0..=m_max`.
pub fn hilbert_coeffs(v: &WeightedVariety, m_max: usize) -> Vec<BigInt> {
    let mut series = vec![BigInt::zero(); m_max + 1];
    series[0] = BigInt::one();
    for &w in &v.weights {
        // Multiply by 1/(1 - t^w): running sum with stride w.
        let w = w as usize;
        for i in w..=m_max {
            let prev = series[i - w].clone();
            series[i] += prev;
        }
    }
    for &d in &v.degrees {
        let d = d as usize;
        for i in (d..=m_max).rev() {
            let prev = series[i - d].clone();
            series[i] -= prev;
        }
    }
    series
}

/// `L^3 = prod d / prod w`.
pub fn degree_l3(v: &WeightedVariety) -> Rational {
    let p = |xs: &[u32]| xs.iter().fold(BigInt::one(), |acc, &x| acc * BigInt::from(x));
    Rational::new(p(&v.degrees), p(&v.weights))
}

/// Numerics with empty basket, `chi = 0`, `lambda = h0(L)`; checked against
/// the series up to degree 20.
pub fn fit_invariants(v: &WeightedVariety) -> Result<Numerics> {
    let coeffs = hilbert_coeffs(v, 20);
    let l3 = degree_l3(v);
    let lambda = Rational::from_integer(coeffs[1].clone());
    if !l3.is_integer() {
        return Err(Error::InvalidVariety(format!("{v}: L^3 = {l3} is not integral")));
    }
    let n = Numerics::new(Basket::empty(), Rational::zero(), l3, lambda)
        .map_err(|e| Error::InvalidVariety(format!("{v}: {e}")))?;
    if let Some(m) = first_mismatch(&n, &coeffs) {
        return Err(Error::Inconsistent(format!(
            "{v}: no lambda fits the Hilbert series (first mismatch at m = {m})"
        )));
    }
    Ok(n)
}

fn first_mismatch(n: &Numerics, coeffs: &[BigInt]) -> Option<usize> {
    (1..coeffs.len()).find(|&m| {
        let h = h0_exact(n, m as i64, &[]).expect("empty basket, m >= 1");
        h != Rational::from_integer(coeffs[m].clone())
    })
}

/// Whether the fitted formula agrees with the series for `1 <= m <= m_max`.
pub fn cross_check_reid(v: &WeightedVariety, m_max: usize) -> Result<bool> {
    let n = fit_invariants(v)?;
    Ok(first_mismatch(&n, &hilbert_coeffs(v, m_max)).is_none())
}

/// Criterion inputs for a smooth example and the resulting bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WorkedExample {
    pub variety: String,
    pub l3: String,
    pub lambda: String,
    pub m0: u32,
    pub m1: u32,
    pub mu0: String,
    pub rho0: u32,
    pub zeta: String,
    pub bound: i64,
}

/// `m0 = m1 = mu0 = rho0 = 1` and `zeta = max(zeta_lower(1, 1, 1), L^3)`.
/// Taking `zeta = L^3` trusts the geometry of these examples.
pub fn worked_example_bound(v: &WeightedVariety) -> Result<WorkedExample> {
    let n = fit_invariants(v)?;
    let coeffs = hilbert_coeffs(v, 20);
    let rho0 = (1..coeffs.len())
        .find(|&m| coeffs[m..].iter().all(|c| c.is_positive()))
        .expect("positive tail") as u32;
    let (m0, m1) = (1, 1);
    if coeffs[1] < BigInt::from(2) {
        return Err(Error::Uncertified(format!("{v}: h0(L) < 2")));
    }
    let mu0 = int(1);
    let lattice = zeta_lower(1, &mu0, m1);
    let zeta = if n.l3 > lattice { n.l3.clone() } else { lattice };
    let bound = birational_from(m0, m1, &mu0, rho0, &zeta);
    Ok(WorkedExample {
        variety: v.to_string(),
        l3: n.l3.to_string(),
        lambda: n.lambda.to_string(),
        m0,
        m1,
        mu0: mu0.to_string(),
        rho0,
        zeta: zeta.to_string(),
        bound,
    })
}

/// The three smooth examples.
pub fn paper_examples() -> Vec<WeightedVariety> {
    ["X10 in P(1,1,1,2,5)", "X8 in P(1,1,1,1,4)", "X2,6 in P(1,1,1,1,1,3)"]
        .iter()
        .map(|s| s.parse().expect("valid example"))
        .collect()
}

/// `h0(mL)` from the series as an `i64`, for display.
pub fn coeff_i64(c: &BigInt) -> i64 {
    c.to_i64().expect("coefficient fits")
}
