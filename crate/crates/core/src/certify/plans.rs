//! Declarative scenario trees, one list of [`Plan`]s per local index.
//!
//! A plan fixes how the shifted divisor `L0 = L + i0 K_X` is chosen, which
//! multiple serves as `m0`, which multiple is certified non-pencil, and the
//! pencil dichotomy that splits it into branches. The engine evaluates every
//! number; nothing numeric is stored here beyond the multiples themselves.

use serde::Serialize;

use crate::basket::ADMISSIBLE_INDICES;
use crate::error::{Error, Result};

/// How the shift `i0` of `L0 = L + i0 K_X` is selected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Strategy {
    /// `L0 = L`; every local index is unknown.
    Identity,
    /// Shift so that one point of index `r` has local index 0.
    FixPoint { r: u32 },
    /// Pick the shift maximizing `h0(k L + i K_X)`, which is at least
    /// the average `lambda(kL)`.
    Averaging { k: u32 },
    /// Pick the better of `h0(kL0 + t K_X)` over `t` in `shifts`; at least
    /// half their sum.
    ShiftSet { k: u32, shifts: Vec<i64> },
}

impl Strategy {
    /// The multiple whose floor comes from the strategy rather than the
    /// generic residue bound.
    pub fn special_multiple(&self) -> Option<u32> {
        match self {
            Strategy::Averaging { k } | Strategy::ShiftSet { k, .. } => Some(*k),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PencilHypothesis {
    Pencil { k: u32 },
    NotPencil { k: u32 },
    SamePencil { k: u32, with: u32 },
    NotSamePencil { k: u32, with: u32 },
}

impl std::fmt::Display for PencilHypothesis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            PencilHypothesis::Pencil { k } => write!(f, "|{k}L0| composed with a pencil"),
            PencilHypothesis::NotPencil { k } => write!(f, "|{k}L0| not composed with a pencil"),
            PencilHypothesis::SamePencil { k, with } => {
                write!(f, "|{k}L0| and |{with}L0| composed with the same pencil")
            }
            PencilHypothesis::NotSamePencil { k, with } => {
                write!(f, "|{k}L0| and |{with}L0| not composed with the same pencil")
            }
        }
    }
}

/// Source of `m1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum M1Choice {
    /// `|k L0|` is certified non-pencil by its Hilbert function.
    NonPencil { k: u32 },
    /// `|k L0|` is moving and, by the branch hypothesis, not composed with
    /// the same pencil as `|m0 L0|`.
    Hypothesis { k: u32 },
}

impl M1Choice {
    pub fn k(&self) -> u32 {
        match *self {
            M1Choice::NonPencil { k } | M1Choice::Hypothesis { k } => k,
        }
    }
}

/// Source of the `mu0` upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Mu0Choice {
    /// `|k L0|` lies in the pencil of `|m0 L0|`: `mu0 <= k / (h0(k L0) - 1)`.
    PencilThrough { k: u32 },
    /// `mu0 <= m0`.
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Branch {
    pub label: &'static str,
    pub hypotheses: Vec<PencilHypothesis>,
    pub m1: M1Choice,
    pub mu0: Mu0Choice,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Plan {
    pub index: u32,
    pub chi: Vec<u32>,
    pub strategy: Strategy,
    pub m0: u32,
    /// Multiple certified non-pencil by its Hilbert function.
    pub non_pencil: u32,
    pub branches: Vec<Branch>,
    pub notes: Vec<&'static str>,
}

impl Plan {
    /// Every multiple whose `h0` floor the plan consults.
    pub fn probes(&self) -> Vec<u32> {
        let mut v = vec![self.m0, self.non_pencil];
        for b in &self.branches {
            v.push(b.m1.k());
            if let Mu0Choice::PencilThrough { k } = b.mu0 {
                v.push(k);
            }
        }
        if let Some(k) = self.strategy.special_multiple() {
            v.push(k);
        }
        v.sort_unstable();
        v.dedup();
        v
    }
}

use M1Choice::{Hypothesis, NonPencil};
use Mu0Choice::{PencilThrough, Trivial};
use PencilHypothesis::*;

fn branch(
    label: &'static str,
    hypotheses: Vec<PencilHypothesis>,
    m1: M1Choice,
    mu0: Mu0Choice,
) -> Branch {
    Branch { label, hypotheses, m1, mu0 }
}

/// Two-branch tree used for indices 8, 10 and 12: either `|k L0|` shares the
/// pencil of `|m0 L0|` or it does not.
fn shared_or_not(m0: u32, k: u32, np: u32) -> Vec<Branch> {
    vec![
        branch(
            "same pencil",
            vec![SamePencil { k, with: m0 }],
            NonPencil { k: np },
            PencilThrough { k },
        ),
        branch(
            "not the same pencil",
            vec![NotSamePencil { k, with: m0 }],
            Hypothesis { k },
            Trivial,
        ),
    ]
}

/// The scenario plans for local index `index`.
pub fn plans_for(index: u32) -> Result<Vec<Plan>> {
    if !ADMISSIBLE_INDICES.contains(&index) {
        return Err(Error::InadmissibleIndex(index));
    }
    let plans = match index {
        2 | 3 => vec![Plan {
            index,
            chi: vec![1, 2, 3, 4],
            strategy: Strategy::Identity,
            m0: index,
            non_pencil: 2 * index,
            branches: vec![branch(
                "m1 non-pencil",
                vec![],
                NonPencil { k: 2 * index },
                Trivial,
            )],
            notes: vec!["every point index divides m0 and m1, so all c_Q vanish"],
        }],
        4 => vec![Plan {
            index,
            chi: vec![1, 2, 3, 4],
            strategy: Strategy::Averaging { k: 5 },
            m0: 4,
            non_pencil: 5,
            branches: vec![
                branch("|4L0| pencil", vec![Pencil { k: 4 }], NonPencil { k: 5 }, PencilThrough { k: 4 }),
                branch("|4L0| not pencil", vec![NotPencil { k: 4 }], Hypothesis { k: 4 }, Trivial),
            ],
            notes: vec!["h0(5L0) >= lambda(5L) by averaging over the four shifts"],
        }],
        6 => vec![
            Plan {
                index,
                chi: vec![1],
                strategy: Strategy::FixPoint { r: 6 },
                m0: 3,
                non_pencil: 7,
                branches: vec![
                    branch(
                        "same pencil",
                        vec![SamePencil { k: 4, with: 3 }],
                        NonPencil { k: 7 },
                        PencilThrough { k: 4 },
                    ),
                    branch(
                        "not the same pencil",
                        vec![NotSamePencil { k: 4, with: 3 }],
                        Hypothesis { k: 4 },
                        Trivial,
                    ),
                ],
                notes: vec!["iota_4 >= h0(4L0) - 1 is used in the same-pencil branch"],
            },
            Plan {
                index,
                chi: vec![2, 3, 4],
                strategy: Strategy::ShiftSet { k: 3, shifts: vec![0, 3] },
                m0: 3,
                non_pencil: 6,
                branches: vec![branch(
                    "m1 non-pencil",
                    vec![],
                    NonPencil { k: 6 },
                    Trivial,
                )],
                notes: vec!["h0(3L0) >= lambda(3L) from the pair 3L, 3L + 3K_X"],
            },
        ],
        5 => vec![Plan {
            index,
            chi: vec![1],
            strategy: Strategy::FixPoint { r: 5 },
            m0: 4,
            non_pencil: 6,
            branches: vec![
                branch(
                    "|5L0|, |4L0| same pencil",
                    vec![SamePencil { k: 5, with: 4 }],
                    NonPencil { k: 6 },
                    PencilThrough { k: 5 },
                ),
                branch(
                    "|4L0| pencil, |5L0| not the same pencil",
                    vec![Pencil { k: 4 }, NotSamePencil { k: 5, with: 4 }],
                    Hypothesis { k: 5 },
                    PencilThrough { k: 4 },
                ),
                branch("|4L0| not pencil", vec![NotPencil { k: 4 }], Hypothesis { k: 4 }, Trivial),
            ],
            notes: vec!["h0(5L0) is an equality only at the corner; used as the floor h0(5L0) >= 6"],
        }],
        8 | 10 => vec![Plan {
            index,
            chi: vec![1],
            strategy: Strategy::FixPoint { r: index },
            m0: 4,
            non_pencil: 8,
            branches: shared_or_not(4, 6, 8),
            notes: vec![],
        }],
        12 => vec![Plan {
            index,
            chi: vec![1],
            strategy: Strategy::FixPoint { r: 12 },
            m0: 3,
            non_pencil: 9,
            branches: shared_or_not(3, 6, 9),
            notes: vec![],
        }],
        _ => unreachable!(),
    };
    Ok(plans)
}
