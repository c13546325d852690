//! Certificates and the weighted-hypersurface oracle through the public API.

use orbibound::basket::{chi_of, Basket};
use orbibound::certify::{
    case_analysis, mu0_upper, non_pencil_certified, plans_for, Bounds, M1Choice, Mode,
};
use orbibound::rational::q;
use orbibound::reid::{MinimaRule, Numerics, ResidueConstraint};
use orbibound::wps::{degree_l3, fit_invariants, hilbert_coeffs, worked_example_bound, WeightedVariety};

#[test]
fn certificate_lines_carry_every_field() {
    let c = case_analysis(4, Mode::Paper).unwrap();
    let text = c.to_json_lines();
    assert_eq!(text.lines().count(), c.scenarios.len());
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        for key in [
            "index", "mode", "basket_family", "m0", "m1", "pencil_hypotheses", "mu0_upper", "iota_floor",
            "rho0", "zeta_lb", "epsilon_threshold", "final_m", "probes", "case_bound",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        let probe = &v["probes"][0];
        assert!(probe["form"].get("L3_coeff").is_some());
    }
}

#[test]
fn every_non_pencil_m1_has_a_witness() {
    for index in [2u32, 3, 4, 5, 6, 8, 10, 12] {
        for mode in [Mode::Paper, Mode::Sharp] {
            let c = case_analysis(index, mode).unwrap();
            for s in &c.scenarios {
                if let M1Choice::NonPencil { .. } = s.m1_source {
                    let p = s.probes.iter().find(|p| p.k == s.m1).unwrap();
                    assert!(p.non_pencil.certified, "i(X)={index} {}", s.branch);
                }
                assert!(s.m1 >= s.m0);
                assert!(s.mu0_upper <= q(s.m0 as i64, 1));
            }
        }
    }
}

#[test]
fn notes_record_inferences() {
    let five = case_analysis(5, Mode::Paper).unwrap();
    assert!(five.scenarios[0].notes.iter().any(|n| n.contains("h0(5L0) >= 6")));
    let six = case_analysis(6, Mode::Paper).unwrap();
    assert!(six.scenarios[0].notes.iter().any(|n| n.contains("iota_4 >= h0(4L0) - 1 >= 2")));
}

#[test]
fn sharp_mode_records_rejected_m1() {
    let c = case_analysis(12, Mode::Sharp).unwrap();
    let s = &c.scenarios[0];
    assert!(!s.rejected.is_empty());
    assert!(s.rejected.iter().all(|r| r.starts_with("m1 = ")));
}

#[test]
fn plans_are_data() {
    let p = plans_for(6).unwrap();
    assert_eq!(p.len(), 2);
    assert_eq!(p[0].chi, vec![1]);
    assert_eq!(p[1].chi, vec![2, 3, 4]);
    assert!(plans_for(9).is_err());
}

#[test]
fn pencil_helpers() {
    assert_eq!(mu0_upper(5, 6, true).unwrap(), q(1, 1));
    assert_eq!(mu0_upper(4, 3, true).unwrap(), q(2, 1));
    let b: Basket = "5x(1,2) 4x(1,3) 1x(1,6)".parse().unwrap();
    let rc = ResidueConstraint::fix_one(&b, 9);
    let w = non_pencil_certified(&b, &chi_of(&b), 7, &rc, MinimaRule::PaperFaithful, &Bounds::Region).unwrap();
    assert!(w.certified);
}

#[test]
fn hypersurface_oracle() {
    let v: WeightedVariety = "X2,6 in P(1,1,1,1,1,3)".parse().unwrap();
    assert_eq!(degree_l3(&v) * q(3, 1), q(12, 1));
    let n: Numerics = fit_invariants(&v).unwrap();
    assert_eq!(n.lambda, q(5, 1));
    assert_eq!(hilbert_coeffs(&v, 0), vec![1.into()]);
    let w = worked_example_bound(&v).unwrap();
    assert_eq!((w.bound, w.zeta.as_str()), (3, "4"));
}
