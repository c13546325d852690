//! Evaluates the scenario plans and assembles certificates.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::Serialize;

use super::plans::{plans_for, M1Choice, Mu0Choice, Plan, Strategy};
use super::{
    birational_from, criterion_threshold, mu0_upper, rho0_bound, zeta_lower, Mode,
    NonPencilWitness, GORENSTEIN_BOUND,
};
use crate::basket::{chi_of, enumerate_baskets, Basket, ADMISSIBLE_INDICES};
use crate::error::{Error, Result};
use crate::rational::{ceil, int, least_integer_above, Rational};
use crate::reid::{h0_lower_form, lambda_form, shift_set_sum, MarginForm, ResidueConstraint};

/// Certified floor for `h0(k L0)` across a basket family, with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Probe {
    pub k: u32,
    /// Worst lower-bound form over the family.
    pub form: MarginForm,
    /// Basket attaining the worst case.
    pub worst_basket: String,
    #[serde(serialize_with = "ser_opt")]
    pub h0_min: Option<Rational>,
    /// `ceil(h0_min)`.
    pub h0_floor: Option<i64>,
    pub non_pencil: NonPencilWitness,
}

/// One branch of one plan, fully evaluated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScenarioRecord {
    pub index: u32,
    pub mode: Mode,
    pub chi: Vec<u32>,
    pub basket_family: Vec<String>,
    pub strategy: Strategy,
    pub branch: String,
    pub pencil_hypotheses: Vec<String>,
    pub m0: u32,
    pub m0_h0_floor: i64,
    pub m1: u32,
    pub m1_source: M1Choice,
    /// `(k, iota_k lower bound)` used for the `mu0` bound.
    pub iota_floor: (u32, i64),
    #[serde(serialize_with = "ser")]
    pub mu0_upper: Rational,
    pub rho0: u32,
    #[serde(serialize_with = "ser")]
    pub zeta_lb: Rational,
    /// `m0 + m1 + rho0 - 1`.
    #[serde(serialize_with = "ser")]
    pub rho_threshold: Rational,
    /// `mu0 + m1 + 2/zeta`.
    #[serde(serialize_with = "ser")]
    pub epsilon_threshold: Rational,
    pub final_m: i64,
    pub probes: Vec<Probe>,
    pub rejected: Vec<String>,
    pub notes: Vec<String>,
}

/// Full audit trail for one local index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCertificate {
    pub index: u32,
    pub mode: Mode,
    pub rho0: u32,
    pub scenarios: Vec<ScenarioRecord>,
    pub case_bound: i64,
    pub notes: Vec<String>,
}

fn ser<S: serde::Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::rational::fmt(x))
}

fn ser_opt<S: serde::Serializer>(x: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => ser(v, s),
        None => s.serialize_none(),
    }
}

impl BoundCertificate {
    /// Re-derives every stored conclusion from the stored fields.
    pub fn verify(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Uncertified(format!("i(X)={}: {msg}", self.index)));
        let mut max = i64::MIN;
        for s in &self.scenarios {
            let (a, b) = criterion_threshold(s.m0, s.m1, &s.mu0_upper, s.rho0, &s.zeta_lb);
            if a != s.rho_threshold || b != s.epsilon_threshold {
                return fail(format!("{}: stored thresholds disagree", s.branch));
            }
            let fm = int(s.final_m);
            if !(fm > a && fm > b) {
                return fail(format!("{}: final m {} not above thresholds", s.branch, s.final_m));
            }
            let least = least_integer_above(if a > b { &a } else { &b });
            if least != s.final_m.into() {
                return fail(format!("{}: final m {} is not minimal", s.branch, s.final_m));
            }
            if s.m1 < s.m0 {
                return fail(format!("{}: m1 < m0", s.branch));
            }
            if s.m0_h0_floor < 2 {
                return fail(format!("{}: m0 not moving", s.branch));
            }
            if s.mu0_upper <= Rational::zero() || s.mu0_upper > int(s.m0 as i64) {
                return fail(format!("{}: mu0 bound out of range", s.branch));
            }
            if s.zeta_lb != zeta_lower(s.index, &s.mu0_upper, s.m1) {
                return fail(format!("{}: zeta bound disagrees", s.branch));
            }
            if !(&s.zeta_lb * int(s.index as i64)).is_integer() {
                return fail(format!("{}: zeta off the lattice", s.branch));
            }
            if s.rho0 != self.rho0 {
                return fail(format!("{}: rho0 mismatch", s.branch));
            }
            if let M1Choice::NonPencil { .. } = s.m1_source {
                let certified = s
                    .probes
                    .iter()
                    .any(|p| p.k == s.m1 && p.non_pencil.certified);
                if !certified {
                    return fail(format!("{}: m1 = {} lacks a non-pencil witness", s.branch, s.m1));
                }
            }
            max = max.max(s.final_m);
        }
        if max != self.case_bound {
            return fail(format!("case bound {} != max {}", self.case_bound, max));
        }
        Ok(())
    }

    /// One JSON object per scenario.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for s in &self.scenarios {
            let mut v = serde_json::to_value(s).expect("scenario serializes");
            let obj = v.as_object_mut().expect("object");
            obj.insert("case_bound".into(), self.case_bound.into());
            out.push_str(&serde_json::to_string(&v).expect("json"));
            out.push('\n');
        }
        out
    }
}

struct PlanContext<'a> {
    plan: &'a Plan,
    mode: Mode,
    family: Vec<Basket>,
    cache: HashMap<u32, Probe>,
}

impl<'a> PlanContext<'a> {
    fn new(plan: &'a Plan, mode: Mode) -> Result<Self> {
        let mut family = Vec::new();
        for &chi in &plan.chi {
            family.extend(enumerate_baskets(chi, plan.index)?);
        }
        Ok(PlanContext { plan, mode, family, cache: HashMap::new() })
    }

    /// Residue constraints that the shift strategy can guarantee.
    fn choices(&self, basket: &Basket) -> Vec<ResidueConstraint> {
        match self.plan.strategy {
            Strategy::FixPoint { r } => {
                let mut seen = Vec::new();
                let mut out = Vec::new();
                for (pos, p) in basket.points().iter().enumerate() {
                    if p.r() == r && !seen.contains(p) {
                        seen.push(*p);
                        out.push(ResidueConstraint::fix_one(basket, pos));
                    }
                }
                out
            }
            _ => vec![ResidueConstraint::all_free(basket)],
        }
    }

    fn forms_at(&self, k: u32) -> Result<Vec<(String, MarginForm)>> {
        let mut out = Vec::new();
        let special = self.plan.strategy.special_multiple() == Some(k);
        for basket in &self.family {
            let chi = chi_of(basket);
            if special {
                let base = lambda_form(k as i64);
                let form = match (&self.plan.strategy, self.mode) {
                    (Strategy::ShiftSet { k, shifts }, Mode::Sharp) => {
                        let pair_sum = basket
                            .points()
                            .iter()
                            .fold(Rational::zero(), |acc, p| acc + shift_set_sum(*p, *k, shifts));
                        let avg = pair_sum / int(shifts.len() as i64);
                        base.plus_constant(&(chi + avg))
                    }
                    _ => base,
                };
                out.push((basket.to_string(), form));
            } else {
                for rc in self.choices(basket) {
                    let form = h0_lower_form(basket, &chi, k, &rc, self.mode.rule())?;
                    out.push((basket.to_string(), form));
                }
            }
        }
        Ok(out)
    }

    fn probe(&mut self, k: u32) -> Result<Probe> {
        if let Some(p) = self.cache.get(&k) {
            return Ok(p.clone());
        }
        let index = self.plan.index;
        let forms = self.forms_at(k)?;
        let mut worst: Option<(String, MarginForm, Option<Rational>)> = None;
        let mut worst_np: Option<NonPencilWitness> = None;
        for (label, form) in forms {
            let min = form.certified_min(index);
            let replace = match &worst {
                None => true,
                Some((_, _, wmin)) => match (wmin, &min) {
                    (_, None) => wmin.is_some(),
                    (None, Some(_)) => false,
                    (Some(a), Some(b)) => b < a,
                },
            };
            let np = NonPencilWitness::from_h0_form(&form, index, k);
            let replace_np = match &worst_np {
                None => true,
                Some(w) => match (&w.margin_min, &np.margin_min) {
                    (_, None) => w.margin_min.is_some(),
                    (None, Some(_)) => false,
                    (Some(a), Some(b)) => b < a,
                },
            };
            if replace_np {
                worst_np = Some(np);
            }
            if replace {
                worst = Some((label, form, min));
            }
        }
        let (worst_basket, form, h0_min) =
            worst.ok_or_else(|| Error::Uncertified(format!("empty basket family for i(X)={index}")))?;
        let h0_floor = h0_min.as_ref().map(|v| {
            use num_traits::ToPrimitive;
            ceil(v).to_i64().expect("small").max(0)
        });
        let probe = Probe {
            k,
            form,
            worst_basket,
            h0_min,
            h0_floor,
            non_pencil: worst_np.expect("non-empty"),
        };
        self.cache.insert(k, probe.clone());
        Ok(probe)
    }

    fn floor(&mut self, k: u32) -> Result<i64> {
        self.probe(k)?
            .h0_floor
            .ok_or_else(|| Error::Uncertified(format!("no floor for h0({k}L0)")))
    }
}

fn evaluate_plan(plan: &Plan, mode: Mode, rho0: u32) -> Result<Vec<ScenarioRecord>> {
    let mut ctx = PlanContext::new(plan, mode)?;
    let m0 = plan.m0;
    let m0_floor = ctx.floor(m0)?;
    if m0_floor < 2 {
        return Err(Error::Uncertified(format!(
            "i(X)={}: h0({m0}L0) >= {m0_floor} does not give a moving system",
            plan.index
        )));
    }
    let family: Vec<String> = ctx.family.iter().map(|b| b.to_string()).collect();
    let mut out = Vec::new();

    for branch in &plan.branches {
        let mut rejected = Vec::new();
        let mut notes: Vec<String> = plan.notes.iter().map(|s| s.to_string()).collect();

        let m1 = match branch.m1 {
            M1Choice::NonPencil { k } => {
                let candidates: Vec<u32> = match mode {
                    Mode::Paper => vec![k],
                    Mode::Sharp => (m0..=k).collect(),
                };
                let mut chosen = None;
                for j in candidates {
                    let p = ctx.probe(j)?;
                    if p.non_pencil.certified && p.h0_floor.unwrap_or(0) >= 2 {
                        chosen = Some(j);
                        break;
                    }
                    rejected.push(format!(
                        "m1 = {j}: non-pencil margin {} not positive",
                        p.non_pencil
                            .margin_min
                            .as_ref()
                            .map_or("unbounded".to_string(), |v| v.to_string())
                    ));
                }
                chosen.ok_or_else(|| {
                    Error::Uncertified(format!(
                        "i(X)={}, {}: no certified non-pencil multiple up to {k}",
                        plan.index, branch.label
                    ))
                })?
            }
            M1Choice::Hypothesis { k } => {
                let f = ctx.floor(k)?;
                if f < 2 {
                    return Err(Error::Uncertified(format!("h0({k}L0) >= {f} is not moving")));
                }
                k
            }
        };
        if m1 < m0 {
            return Err(Error::Uncertified(format!("m1 = {m1} < m0 = {m0}")));
        }

        let (iota, mu0) = match branch.mu0 {
            Mu0Choice::PencilThrough { k } => {
                let f = ctx.floor(k)?;
                let mu = mu0_upper(k, f, true)?;
                notes.push(format!("iota_{k} >= h0({k}L0) - 1 >= {}", f - 1));
                ((k, f - 1), mu)
            }
            Mu0Choice::Trivial => ((m0, 1), mu0_upper(m0, m0_floor, false)?),
        };
        let m0r = int(m0 as i64);
        let mu0 = if mu0 > m0r { m0r } else { mu0 };

        let zeta = zeta_lower(plan.index, &mu0, m1);
        let (rho_t, eps_t) = criterion_threshold(m0, m1, &mu0, rho0, &zeta);
        let final_m = birational_from(m0, m1, &mu0, rho0, &zeta);

        let mut ks = plan.probes();
        ks.push(m1);
        ks.sort_unstable();
        ks.dedup();
        let probes = ks.into_iter().map(|k| ctx.probe(k)).collect::<Result<Vec<_>>>()?;

        out.push(ScenarioRecord {
            index: plan.index,
            mode,
            chi: plan.chi.clone(),
            basket_family: family.clone(),
            strategy: plan.strategy.clone(),
            branch: branch.label.to_string(),
            pencil_hypotheses: branch.hypotheses.iter().map(|h| h.to_string()).collect(),
            m0,
            m0_h0_floor: m0_floor,
            m1,
            m1_source: branch.m1,
            iota_floor: iota,
            mu0_upper: mu0,
            rho0,
            zeta_lb: zeta,
            rho_threshold: rho_t,
            epsilon_threshold: eps_t,
            final_m,
            probes,
            rejected,
            notes,
        });
    }
    Ok(out)
}

/// Replays the scenario tree for `index` and certifies a bound.
pub fn case_analysis(index: u32, mode: Mode) -> Result<BoundCertificate> {
    let plans = plans_for(index)?;
    let rho0 = rho0_bound(index)?;
    let mut scenarios = Vec::new();
    for plan in &plans {
        scenarios.extend(evaluate_plan(plan, mode, rho0)?);
    }
    let case_bound = scenarios.iter().map(|s| s.final_m).max().expect("at least one branch");
    let mut notes = Vec::new();
    if mode == Mode::Sharp {
        notes.push("stride-aware minima; per-basket enumeration".to_string());
    }
    let cert = BoundCertificate { index, mode, rho0, scenarios, case_bound, notes };
    cert.verify()?;
    Ok(cert)
}

/// `index -> case bound` for every admissible index.
pub fn paper_case_table(mode: Mode) -> Result<BTreeMap<u32, i64>> {
    ADMISSIBLE_INDICES
        .iter()
        .map(|&i| Ok((i, case_analysis(i, mode)?.case_bound)))
        .collect()
}

/// Max over every case and the Gorenstein constant.
pub fn global_bound(mode: Mode) -> Result<i64> {
    let table = paper_case_table(mode)?;
    Ok(table.values().copied().fold(GORENSTEIN_BOUND, i64::max))
}
