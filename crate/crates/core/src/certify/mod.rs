//! Certified birationality bounds for `|K_X + mL + T|`.
//!
//! The criterion: the map is birational as soon as
//! `m > max{m0 + m1 + rho0 - 1, mu0 + m1 + 2/zeta}`. Everything here
//! produces certified values for those five quantities, and
//! [`case_analysis`] assembles them per local index.

mod engine;
mod plans;

pub use engine::{
    case_analysis, global_bound, paper_case_table, BoundCertificate, Probe, ScenarioRecord,
};
pub use plans::{plans_for, Branch, M1Choice, Mu0Choice, PencilHypothesis, Plan, Strategy};

use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::basket::{baskets_for_index, cartier_index, Basket, ADMISSIBLE_INDICES};
use crate::error::{Error, Result};
use crate::rational::{ceil, int, least_integer_above, q, Rational};
use crate::reid::{h0_lower_form, MarginForm, MinimaRule, ResidueConstraint};

/// Bound for Gorenstein triples (`i(X) = 1`), recorded as a constant.
pub const GORENSTEIN_BOUND: i64 = 5;

/// Which worst-case minima the engine uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Worst case over all residues, zero at multiples of the point index.
    Paper,
    /// Stride-aware minima and per-basket enumeration.
    Sharp,
}

impl Mode {
    pub fn rule(self) -> MinimaRule {
        match self {
            Mode::Paper => MinimaRule::PaperFaithful,
            Mode::Sharp => MinimaRule::StrideAware,
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Mode::Paper),
            "sharp" => Ok(Mode::Sharp),
            other => Err(Error::Parse(format!("unknown mode {other:?} (expected paper|sharp)"))),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Paper => "paper",
            Mode::Sharp => "sharp",
        })
    }
}

/// Least `k` with `h0(mL + T') > 0` certified for every `m >= k`, every
/// numerically trivial `T'` and every basket of the given index.
pub fn rho0_bound(index: u32) -> Result<u32> {
    if !ADMISSIBLE_INDICES.contains(&index) {
        return Err(Error::InadmissibleIndex(index));
    }
    Ok(rho0_for(&baskets_for_index(index)?, index))
}

/// [`rho0_bound`] over an explicit basket list.
///
/// The residue minima do not depend on `m` and the polynomial part is
/// strictly increasing, so the first `m` with a positive bound is the answer.
pub fn rho0_for(baskets: &[Basket], index: u32) -> u32 {
    let mut m = 1u32;
    loop {
        let ok = baskets.iter().all(|b| {
            let chi = crate::basket::chi_of(b);
            let rc = ResidueConstraint::all_free(b);
            let form = h0_lower_form(b, &chi, m, &rc, MinimaRule::AllResidues).expect("m >= 1");
            form.certified_min(index).is_some_and(|v| v.is_positive())
        });
        if ok {
            return m;
        }
        m += 1;
    }
}

/// Witness for the non-pencil criterion `h0(mL0) > i(X) L0^3 m + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonPencilWitness {
    pub m: u32,
    /// `h0 floor - i(X) m L^3 - 1`.
    pub margin: MarginForm,
    /// Infimum of the margin; `None` when unbounded below.
    #[serde(with = "opt_rational")]
    pub margin_min: Option<Rational>,
    pub certified: bool,
}

impl NonPencilWitness {
    /// Builds the witness from a lower-bound form for `h0(m L0)`.
    pub fn from_h0_form(h0: &MarginForm, index: u32, m: u32) -> Self {
        let margin = MarginForm::new(
            &h0.constant - Rational::one(),
            &h0.l3_coeff - int(index as i64 * m as i64),
            h0.lambda_coeff.clone(),
        );
        let margin_min = margin.certified_min(index);
        let certified = margin_min.as_ref().is_some_and(|v| v.is_positive());
        NonPencilWitness { m, margin, margin_min, certified }
    }
}

/// Where `L^3` and `lambda` come from when checking a criterion.
#[derive(Debug, Clone)]
pub enum Bounds {
    /// Unknown; only the lattice bounds for the basket's index are used.
    Region,
    /// Known values.
    Exact { l3: Rational, lambda: Rational },
}

/// Whether `|m L0|` is certified not to be composed with a pencil.
pub fn non_pencil_certified(
    basket: &Basket,
    chi: &Rational,
    m: u32,
    residues: &ResidueConstraint,
    rule: MinimaRule,
    bounds: &Bounds,
) -> Result<NonPencilWitness> {
    let index = cartier_index(basket);
    let h0 = h0_lower_form(basket, chi, m, residues, rule)?;
    let mut w = NonPencilWitness::from_h0_form(&h0, index, m);
    if let Bounds::Exact { l3, lambda } = bounds {
        let v = w.margin.evaluate(l3, lambda);
        w.certified = v.is_positive();
        w.margin_min = Some(v);
    }
    Ok(w)
}

/// Upper bound for `mu0` from a multiple `k` with `h0(k L0) >= h0_floor`:
/// `k / (h0_floor - 1)` when `|k L0|` is composed with the pencil of `m0`
/// (then `iota_k = h0 - 1`), otherwise `k`.
pub fn mu0_upper(k: u32, h0_floor: i64, same_pencil: bool) -> Result<Rational> {
    if h0_floor < 2 {
        return Err(Error::Uncertified(format!("h0({k}L0) >= {h0_floor} is not a moving system")));
    }
    Ok(if same_pencil { q(k as i64, h0_floor - 1) } else { int(k as i64) })
}

/// `ceil(i(X) * min{1, 3/(mu0 + m1 + 1)}) / i(X)`.
pub fn zeta_lower(index: u32, mu0_ub: &Rational, m1: u32) -> Rational {
    let i = int(index as i64);
    let ratio = int(3) / (mu0_ub + int(m1 as i64) + Rational::one());
    let capped = if ratio > Rational::one() { Rational::one() } else { ratio };
    Rational::from_integer(ceil(&(&i * capped))) / i
}

/// The larger of the two criterion thresholds.
pub fn criterion_threshold(
    m0: u32,
    m1: u32,
    mu0_ub: &Rational,
    rho0: u32,
    zeta_lb: &Rational,
) -> (Rational, Rational) {
    let a = int(m0 as i64 + m1 as i64 + rho0 as i64 - 1);
    let b = mu0_ub + int(m1 as i64) + int(2) / zeta_lb;
    (a, b)
}

/// Least integer `m` strictly above `max{m0 + m1 + rho0 - 1, mu0 + m1 + 2/zeta}`.
pub fn birational_from(m0: u32, m1: u32, mu0_ub: &Rational, rho0: u32, zeta_lb: &Rational) -> i64 {
    assert!(zeta_lb.is_positive(), "zeta lower bound must be positive");
    let (a, b) = criterion_threshold(m0, m1, mu0_ub, rho0, zeta_lb);
    let max = if a > b { a } else { b };
    least_integer_above(&max).to_i64().expect("bound fits in i64")
}

/// Certified integer lower bound `ceil(inf form)`, if the form is bounded.
pub fn h0_floor(form: &MarginForm, index: u32) -> Option<i64> {
    form.certified_min(index)
        .map(|v| ceil(&v).to_i64().expect("small").max(0))
}

mod opt_rational {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_str(&crate::rational::fmt(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| crate::rational::parse(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::{prop, prop_assert, proptest};
    use proptest::strategy::Strategy as _;

    #[test]
    fn rho0_table() {
        let got: Vec<_> = ADMISSIBLE_INDICES.iter().map(|&i| (i, rho0_bound(i).unwrap())).collect();
        assert_eq!(got, vec![(2, 4), (3, 4), (4, 5), (5, 3), (6, 6), (8, 4), (10, 5), (12, 5)]);
        assert!(rho0_bound(7).is_err());
    }

    #[test]
    fn mu0_examples() {
        assert_eq!(mu0_upper(5, 6, true).unwrap(), q(1, 1));
        assert_eq!(mu0_upper(4, 3, true).unwrap(), q(2, 1));
        assert_eq!(mu0_upper(7, 2, true).unwrap(), q(7, 1));
        assert_eq!(mu0_upper(4, 9, false).unwrap(), q(4, 1));
        assert!(mu0_upper(4, 1, true).is_err());
    }

    #[test]
    fn zeta_examples() {
        assert_eq!(zeta_lower(1, &q(1, 1), 1), q(1, 1));
        assert_eq!(zeta_lower(10, &q(3, 2), 8), q(3, 10));
        assert_eq!(zeta_lower(8, &q(3, 2), 8), q(3, 8));
    }

    #[test]
    fn birational_examples() {
        assert_eq!(birational_from(1, 1, &q(1, 1), 1, &q(1, 1)), 5);
        assert_eq!(birational_from(1, 1, &q(1, 1), 1, &q(2, 1)), 4);
        assert_eq!(birational_from(4, 8, &q(3, 2), 5, &q(3, 10)), 17);
        // Integer threshold is strict.
        assert_eq!(birational_from(4, 4, &q(4, 1), 5, &q(1, 2)), 13);
    }

    #[test]
    fn non_pencil_examples() {
        let b: Basket = "5x(1,2) 4x(1,3) (1,6)".parse().unwrap();
        let chi = crate::basket::chi_of(&b);
        let rc = ResidueConstraint::fix_one(&b, b.len() - 1);
        let w = non_pencil_certified(&b, &chi, 7, &rc, MinimaRule::PaperFaithful, &Bounds::Region)
            .unwrap();
        assert!(w.certified);

        let e = Basket::empty();
        let exact = Bounds::Exact { l3: q(1, 1), lambda: q(3, 1) };
        let w = non_pencil_certified(&e, &q(0, 1), 2, &ResidueConstraint(vec![]), MinimaRule::PaperFaithful, &exact)
            .unwrap();
        assert!(w.certified);
        assert_eq!(w.margin_min, Some(q(4, 1)));

        let w = non_pencil_certified(&b, &chi, 1, &rc, MinimaRule::PaperFaithful, &Bounds::Region).unwrap();
        assert!(!w.certified);
        assert_eq!(w.margin_min, None);
    }

    fn rat() -> impl proptest::strategy::Strategy<Value = Rational> {
        (1i64..60, 1i64..12).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #[test]
        fn birational_monotone(m0 in 1u32..8, m1 in 0u32..8, mu in rat(), rho in 1u32..7, z in rat()) {
            let m1 = m0 + m1;
            let base = birational_from(m0, m1, &mu, rho, &z);
            prop_assert!(birational_from(m0 + 1, m1 + 1, &mu, rho, &z) >= base);
            prop_assert!(birational_from(m0, m1 + 1, &mu, rho, &z) >= base);
            prop_assert!(birational_from(m0, m1, &(&mu + q(1, 3)), rho, &z) >= base);
            prop_assert!(birational_from(m0, m1, &mu, rho + 1, &z) >= base);
            prop_assert!(birational_from(m0, m1, &mu, rho, &(&z + q(1, 5))) <= base);
        }

        #[test]
        fn zeta_on_lattice(index in prop::sample::select(ADMISSIBLE_INDICES.to_vec()), mu in rat(), m1 in 1u32..20) {
            let z = zeta_lower(index, &mu, m1);
            let scaled = z * int(index as i64);
            prop_assert!(scaled.is_integer() && scaled.is_positive());
        }
    }
}
