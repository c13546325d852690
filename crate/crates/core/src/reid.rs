//! Reid's orbifold Riemann-Roch on threefolds with `K_X ≡ 0`.
//!
//! For a nef and big Weil divisor `L` and a numerically trivial `T`,
//!
//! ```text
//! h0(mL + T) = chi(O_X) + (m^3 - m)/6 * L^3 + m * lambda(L) + sum_Q c_Q(mL + T)
//! ```
//!
//! where `c_Q` depends only on the point type and the local index of the
//! divisor at `Q`. This module evaluates `c_Q`, the exact formula, and the
//! lower bounds used when some of the data is unknown.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::basket::{cartier_index, chi_of, Basket, OrbifoldPoint};
use crate::error::{Error, Result};
use crate::rational::{int, q, residue, Rational};

/// Point types printed in the reference table of `c_Q`, in row order.
pub const TABLE_A_ROWS: [(i64, i64); 12] = [
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (2, 5),
    (1, 6),
    (1, 8),
    (3, 8),
    (1, 10),
    (3, 10),
    (1, 12),
    (5, 12),
];

/// Numerical data of a polarized triple: basket, `chi(O_X)`, `L^3` and
/// `lambda(L) = L^3/6 + (L.c2)/12`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Numerics {
    pub basket: Basket,
    pub chi: Rational,
    pub l3: Rational,
    pub lambda: Rational,
}

impl Numerics {
    /// Checks `i(X) L^3` and `i(X) lambda` are positive integers and `chi >= 0`.
    pub fn new(basket: Basket, chi: Rational, l3: Rational, lambda: Rational) -> Result<Self> {
        let index = int(cartier_index(&basket) as i64);
        let lattice = |x: &Rational| {
            let s = x * &index;
            s.is_integer() && s.is_positive()
        };
        if !lattice(&l3) {
            return Err(Error::Parse(format!("i(X)*L^3 must be a positive integer, got L^3 = {l3}")));
        }
        if !lattice(&lambda) {
            return Err(Error::Parse(format!(
                "i(X)*lambda must be a positive integer, got lambda = {lambda}"
            )));
        }
        if chi.is_negative() {
            return Err(Error::Parse(format!("chi must be non-negative, got {chi}")));
        }
        Ok(Numerics { basket, chi, l3, lambda })
    }

    /// Numerics with `chi` taken from the basket.
    pub fn from_basket(basket: Basket, l3: Rational, lambda: Rational) -> Result<Self> {
        let chi = chi_of(&basket);
        Numerics::new(basket, chi, l3, lambda)
    }

    /// Lower corner `L^3 = lambda = 1/i(X)`.
    pub fn corner(basket: Basket) -> Self {
        let i = cartier_index(&basket) as i64;
        let chi = chi_of(&basket);
        Numerics { basket, chi, l3: q(1, i), lambda: q(1, i) }
    }

    pub fn index(&self) -> u32 {
        cartier_index(&self.basket)
    }

    /// `lambda(kL) = (k^3 - k)/6 * L^3 + k * lambda(L)`.
    pub fn lambda_of_multiple(&self, k: i64) -> Rational {
        int(k * k * k - k) / int(6) * &self.l3 + int(k) * &self.lambda
    }
}

/// Local index constraint for one basket point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Residue {
    /// The index of the base divisor at this point is known.
    Fixed(u32),
    /// Unknown; ranges over every residue.
    Free,
}

/// One [`Residue`] per basket point, in canonical basket order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueConstraint(pub Vec<Residue>);

impl ResidueConstraint {
    pub fn all_free(basket: &Basket) -> Self {
        ResidueConstraint(vec![Residue::Free; basket.len()])
    }

    pub fn all_fixed(residues: &[u32]) -> Self {
        ResidueConstraint(residues.iter().map(|&s| Residue::Fixed(s)).collect())
    }

    /// All points free except position `pos`, which has index 0.
    pub fn fix_one(basket: &Basket, pos: usize) -> Self {
        let mut v = vec![Residue::Free; basket.len()];
        v[pos] = Residue::Fixed(0);
        ResidueConstraint(v)
    }

    pub fn check(&self, basket: &Basket) -> Result<()> {
        if self.0.len() != basket.len() {
            return Err(Error::ResidueMisaligned { expected: basket.len(), got: self.0.len() });
        }
        for (res, p) in self.0.iter().zip(basket.points()) {
            if let Residue::Fixed(s) = *res {
                if s >= p.r() {
                    return Err(Error::ResidueOutOfRange { residue: s as i64, r: p.r() as i64 });
                }
            }
        }
        Ok(())
    }
}

/// How an unknown local index is replaced by a worst case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinimaRule {
    /// Minimum over every residue, ignoring the multiple.
    AllResidues,
    /// Zero when `r | k`, otherwise the minimum over every residue.
    PaperFaithful,
    /// Minimum over the multiples of `gcd(k, r)`.
    StrideAware,
}

/// `c_Q` for a point of type `(b, r)` and local index `i`.
pub fn contribution(point: OrbifoldPoint, i: i64) -> Result<Rational> {
    let r = point.r() as i64;
    let b = point.b() as i64;
    if !(0..r).contains(&i) {
        return Err(Error::ResidueOutOfRange { residue: i, r });
    }
    let mut acc = q(-i * (r * r - 1), 12 * r);
    for j in 0..i {
        let bar = residue(j * b, r);
        acc += q(bar * (r - bar), 2 * r);
    }
    Ok(acc)
}

fn c(point: OrbifoldPoint, i: i64) -> Rational {
    contribution(point, residue(i, point.r() as i64)).expect("residue reduced")
}

/// The reference table: one row of `c_Q(i)`, `i = 0..r`, per printed point type.
pub fn table_a() -> Vec<(OrbifoldPoint, Vec<Rational>)> {
    TABLE_A_ROWS
        .iter()
        .map(|&(b, r)| {
            let p = OrbifoldPoint::new(b, r).expect("table row is a valid point");
            (p, (0..r).map(|i| c(p, i)).collect())
        })
        .collect()
}

/// `sum_{i=0}^{r-1} c_Q(i)`; always `-(r^2 - 1)/24`.
pub fn periodic_contribution_sum(point: OrbifoldPoint) -> Rational {
    (0..point.r() as i64).fold(Rational::zero(), |acc, i| acc + c(point, i))
}

fn min_over<I: IntoIterator<Item = i64>>(point: OrbifoldPoint, indices: I) -> Rational {
    indices
        .into_iter()
        .map(|i| c(point, i))
        .min()
        .expect("non-empty residue set")
}

/// Minimum of `c_Q` over the indices reachable by `k * s mod r`, i.e. the
/// multiples of `gcd(k, r)`.
pub fn min_contribution(point: OrbifoldPoint, stride: u32) -> Rational {
    let r = point.r() as i64;
    let g = num_integer::gcd(stride as i64, r);
    min_over(point, (0..r).step_by(g as usize))
}

/// Worst-case `c_Q(k L_0)` for a point with unknown index under `rule`.
pub fn free_minimum(point: OrbifoldPoint, k: u32, rule: MinimaRule) -> Rational {
    let r = point.r() as i64;
    match rule {
        MinimaRule::AllResidues => min_over(point, 0..r),
        MinimaRule::PaperFaithful => {
            if k as i64 % r == 0 {
                Rational::zero()
            } else {
                min_over(point, 0..r)
            }
        }
        MinimaRule::StrideAware => min_contribution(point, k),
    }
}

/// `min_s sum_{t in shifts} c_Q((k s + t) mod r)`.
pub fn shift_set_sum(point: OrbifoldPoint, k: u32, shifts: &[i64]) -> Rational {
    let r = point.r() as i64;
    (0..r)
        .map(|s| {
            shifts
                .iter()
                .fold(Rational::zero(), |acc, &t| acc + c(point, k as i64 * s + t))
        })
        .min()
        .expect("r >= 2")
}

/// Exact `h0(mL + T)`; `indices` are the local indices of the whole divisor
/// `mL + T` at each basket point.
pub fn h0_exact(n: &Numerics, m: i64, indices: &[u32]) -> Result<Rational> {
    if m < 1 {
        return Err(Error::BadMultiple(m));
    }
    let rc = ResidueConstraint::all_fixed(indices);
    rc.check(&n.basket)?;
    let mut total = n.chi.clone() + n.lambda_of_multiple(m);
    for (p, &i) in n.basket.points().iter().zip(indices) {
        total += contribution(*p, i as i64)?;
    }
    Ok(total)
}

/// Indices `m` in `1..=m_max` where the formula gives a non-integer, for
/// a base divisor whose indices are `base`. Such profiles cannot come from
/// an actual variety.
pub fn nonintegral_multiples(n: &Numerics, base: &[u32], m_max: i64) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for m in 1..=m_max {
        let idx: Vec<u32> = n
            .basket
            .points()
            .iter()
            .zip(base)
            .map(|(p, &s)| residue(m * s as i64, p.r() as i64) as u32)
            .collect();
        if !h0_exact(n, m, &idx)?.is_integer() {
            out.push(m);
        }
    }
    Ok(out)
}

/// A linear form `constant + l3_coeff * L^3 + lambda_coeff * lambda`.
///
/// The admissible region for a triple of index `i` is
/// `L^3 >= 1/i`, `lambda >= 1/i`, and `lambda >= L^3/6` (from `L.c2 >= 0`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarginForm {
    #[serde(with = "crate::rational::serde_text")]
    pub constant: Rational,
    #[serde(rename = "L3_coeff", with = "crate::rational::serde_text")]
    pub l3_coeff: Rational,
    #[serde(with = "crate::rational::serde_text")]
    pub lambda_coeff: Rational,
}

impl MarginForm {
    pub fn new(constant: Rational, l3_coeff: Rational, lambda_coeff: Rational) -> Self {
        MarginForm { constant, l3_coeff, lambda_coeff }
    }

    pub fn evaluate(&self, l3: &Rational, lambda: &Rational) -> Rational {
        &self.constant + &self.l3_coeff * l3 + &self.lambda_coeff * lambda
    }

    /// Vertices of the admissible region for index `index`.
    pub fn vertices(index: u32) -> [(Rational, Rational); 2] {
        let a = q(1, index as i64);
        [(a.clone(), a.clone()), (a.clone() * int(6), a)]
    }

    /// Infimum over the admissible region, or `None` if unbounded below.
    pub fn certified_min(&self, index: u32) -> Option<Rational> {
        // Recession cone is spanned by (0, 1) and (6, 1).
        if self.lambda_coeff.is_negative() {
            return None;
        }
        if (int(6) * &self.l3_coeff + &self.lambda_coeff).is_negative() {
            return None;
        }
        MarginForm::vertices(index)
            .iter()
            .map(|(l3, lam)| self.evaluate(l3, lam))
            .min()
    }

    /// Value at the corner `L^3 = lambda = 1/index`.
    pub fn at_corner(&self, index: u32) -> Rational {
        let a = q(1, index as i64);
        self.evaluate(&a, &a)
    }

    pub fn plus_constant(&self, x: &Rational) -> Self {
        MarginForm { constant: &self.constant + x, ..self.clone() }
    }
}

impl std::ops::Add for &MarginForm {
    type Output = MarginForm;
    fn add(self, o: &MarginForm) -> MarginForm {
        MarginForm {
            constant: &self.constant + &o.constant,
            l3_coeff: &self.l3_coeff + &o.l3_coeff,
            lambda_coeff: &self.lambda_coeff + &o.lambda_coeff,
        }
    }
}

impl std::fmt::Display for MarginForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} + {}*L3 + {}*lambda", self.constant, self.l3_coeff, self.lambda_coeff)
    }
}

/// `lambda(kL)` as a form in `(L^3, lambda)`.
pub fn lambda_form(k: i64) -> MarginForm {
    MarginForm::new(Rational::zero(), int(k * k * k - k) / int(6), int(k))
}

/// Certified lower bound for `sum_Q c_Q(m L_0)` under a residue constraint.
/// `Fixed(s)` is the index of `L_0`, so the index of `m L_0` is `m s mod r`.
pub fn singular_floor(
    basket: &Basket,
    m: u32,
    residues: &ResidueConstraint,
    rule: MinimaRule,
) -> Result<Rational> {
    residues.check(basket)?;
    let mut total = Rational::zero();
    for (p, res) in basket.points().iter().zip(&residues.0) {
        total += match *res {
            Residue::Fixed(s) => c(*p, m as i64 * s as i64),
            Residue::Free => free_minimum(*p, m, rule),
        };
    }
    Ok(total)
}

/// Symbolic lower bound for `h0(m L_0)`:
/// `chi + (m^3 - m)/6 L^3 + m lambda + singular floor`.
pub fn h0_lower_form(
    basket: &Basket,
    chi: &Rational,
    m: u32,
    residues: &ResidueConstraint,
    rule: MinimaRule,
) -> Result<MarginForm> {
    if m < 1 {
        return Err(Error::BadMultiple(m as i64));
    }
    let floor = singular_floor(basket, m, residues, rule)?;
    Ok(lambda_form(m as i64).plus_constant(&(chi + floor)))
}

/// [`h0_lower_form`] evaluated at the given numerics.
pub fn h0_lower_bound(
    n: &Numerics,
    m: u32,
    residues: &ResidueConstraint,
    rule: MinimaRule,
) -> Result<Rational> {
    let form = h0_lower_form(&n.basket, &n.chi, m, residues, rule)?;
    Ok(form.evaluate(&n.l3, &n.lambda))
}

/// `lambda(kL)`: the average of `h0(kL + iK_X)` over a full period of shifts,
/// hence a lower bound for the best shift.
pub fn averaging_floor(n: &Numerics, k: i64) -> Result<Rational> {
    if k < 1 {
        return Err(Error::BadMultiple(k));
    }
    Ok(n.lambda_of_multiple(k))
}
