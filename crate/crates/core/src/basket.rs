//! Reid baskets of terminal cyclic quotient points.
//!
//! A point `(b, r)` stands for the singularity type `1/r(1, -1, b)`,
//! normalized so that `1 <= b <= r/2` and `gcd(b, r) = 1`. A [`Basket`] is
//! a multiset of such points kept in canonical `(r, b)` order, so two equal
//! baskets always serialize identically.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{q, Rational};

/// Local indices that can occur on a polarized triple with `chi > 0`.
pub const ADMISSIBLE_INDICES: [u32; 8] = [2, 3, 4, 5, 6, 8, 10, 12];

/// Indices whose baskets are pinned down by Morrison's classification.
pub const MORRISON_INDICES: [u32; 4] = [5, 8, 10, 12];

/// One basket entry `(b, r)`. Ordered by `(r, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrbifoldPoint {
    b: u32,
    r: u32,
}

impl OrbifoldPoint {
    pub fn new(b: i64, r: i64) -> Result<Self> {
        if validate_point(b, r) {
            Ok(OrbifoldPoint { b: b as u32, r: r as u32 })
        } else {
            Err(Error::InvalidPoint { b, r })
        }
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// This point's share of `chi(O_X)`, `(r^2 - 1) / (24 r)`.
    pub fn chi_share(&self) -> Rational {
        let r = self.r as i64;
        q(r * r - 1, 24 * r)
    }
}

impl Ord for OrbifoldPoint {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.r, self.b).cmp(&(other.r, other.b))
    }
}

impl PartialOrd for OrbifoldPoint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OrbifoldPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&format!("({},{})", self.b, self.r))
    }
}

/// True iff `(b, r)` is a normalized terminal quotient type.
pub fn validate_point(b: i64, r: i64) -> bool {
    r >= 2 && b >= 1 && 2 * b <= r && b.gcd(&r) == 1
}

/// All normalized point types whose index divides `index`.
pub fn admissible_points(index: u32) -> Vec<OrbifoldPoint> {
    let mut out = Vec::new();
    for r in 2..=index {
        if !index.is_multiple_of(r) {
            continue;
        }
        for b in 1..=r / 2 {
            if validate_point(b as i64, r as i64) {
                out.push(OrbifoldPoint { b, r });
            }
        }
    }
    out.sort();
    out
}

/// Multiset of orbifold points in canonical `(r, b)` order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Basket {
    points: Vec<OrbifoldPoint>,
}

impl Basket {
    pub fn empty() -> Self {
        Basket::default()
    }

    pub fn new(mut points: Vec<OrbifoldPoint>) -> Self {
        points.sort();
        Basket { points }
    }

    /// Builds a basket from `(multiplicity, b, r)` runs.
    pub fn from_runs(runs: &[(u32, i64, i64)]) -> Result<Self> {
        let mut points = Vec::new();
        for &(mult, b, r) in runs {
            let p = OrbifoldPoint::new(b, r)?;
            points.extend(std::iter::repeat_n(p, mult as usize));
        }
        Ok(Basket::new(points))
    }

    /// Points in canonical order, with repetition.
    pub fn points(&self) -> &[OrbifoldPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `(point, multiplicity)` in canonical order.
    pub fn runs(&self) -> Vec<(OrbifoldPoint, u32)> {
        let mut map: BTreeMap<OrbifoldPoint, u32> = BTreeMap::new();
        for p in &self.points {
            *map.entry(*p).or_default() += 1;
        }
        map.into_iter().collect()
    }

    pub fn multiplicity(&self, p: OrbifoldPoint) -> u32 {
        self.points.iter().filter(|&&x| x == p).count() as u32
    }

    /// JSON form: an array of `[b, r, multiplicity]` triples.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("basket serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for Basket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.points.is_empty() {
            return f.write_str("{}");
        }
        let parts: Vec<String> = self
            .runs()
            .into_iter()
            .map(|(p, m)| format!("{m}x{p}"))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for Basket {
    type Err = Error;

    /// Accepts `5x(1,2) 4x(1,3) (1,6)`; `×` may replace `x`, a bare point has
    /// multiplicity one and `{}` (or an empty string) is the empty basket.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |tok: &str| Error::Parse(format!("malformed basket entry {tok:?}"));
        let s = s.trim();
        let s = s.strip_prefix('{').and_then(|t| t.strip_suffix('}')).unwrap_or(s);
        let normalized = s.replace('×', "x").replace(", ", ",");
        let mut runs = Vec::new();
        for tok in normalized.split_whitespace() {
            let (mult, point) = match tok.split_once('x') {
                Some((m, p)) => (m.parse::<u32>().map_err(|_| bad(tok))?, p),
                None => (1, tok),
            };
            let inner = point
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| bad(tok))?;
            let (b, r) = inner.split_once(',').ok_or_else(|| bad(tok))?;
            let b: i64 = b.trim().parse().map_err(|_| bad(tok))?;
            let r: i64 = r.trim().parse().map_err(|_| bad(tok))?;
            runs.push((mult, b, r));
        }
        Basket::from_runs(&runs)
    }
}

impl Serialize for Basket {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let triples: Vec<[u32; 3]> = self.runs().into_iter().map(|(p, m)| [p.b, p.r, m]).collect();
        triples.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Basket {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let triples = Vec::<[i64; 3]>::deserialize(d)?;
        let runs: Vec<(u32, i64, i64)> = triples
            .into_iter()
            .map(|[b, r, m]| (m.max(0) as u32, b, r))
            .collect();
        Basket::from_runs(&runs).map_err(serde::de::Error::custom)
    }
}

/// `chi(O_X) = sum over the basket of (r^2 - 1) / (24 r)`.
pub fn chi_of(basket: &Basket) -> Rational {
    basket
        .points
        .iter()
        .fold(Rational::zero(), |acc, p| acc + p.chi_share())
}

/// `i(X)`: lcm of the indices, 1 for the empty basket.
pub fn cartier_index(basket: &Basket) -> u32 {
    basket.points.iter().fold(1u32, |acc, p| acc.lcm(&p.r))
}

/// Checks `(chi, index)` against the classification constraints.
pub fn check_admissible(chi: u32, index: u32) -> Result<()> {
    let ok = match (chi, index) {
        (0, 1) => true,
        (1, i) => ADMISSIBLE_INDICES.contains(&i),
        (2..=4, 2 | 3 | 4 | 6) => true,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Inadmissible { chi, index })
    }
}

/// Every multiset of admissible points with the given `chi` and lcm exactly
/// `index`, with no classification filter. Sorted canonically.
pub fn numerical_baskets(chi: u32, index: u32) -> Vec<Basket> {
    if chi == 0 {
        return if index == 1 { vec![Basket::empty()] } else { Vec::new() };
    }
    // Work in units of 1/(24 * index): each point weighs (r^2 - 1) * index / r.
    let types = admissible_points(index);
    let weights: Vec<u64> = types
        .iter()
        .map(|p| {
            let r = p.r as u64;
            (r * r - 1) * (index as u64 / r)
        })
        .collect();
    let target = 24 * index as u64 * chi as u64;

    let mut out = Vec::new();
    let mut mults = vec![0u32; types.len()];
    walk(&types, &weights, 0, target, &mut mults, index, &mut out);
    out.sort();
    out
}

fn walk(
    types: &[OrbifoldPoint],
    weights: &[u64],
    pos: usize,
    remaining: u64,
    mults: &mut Vec<u32>,
    index: u32,
    out: &mut Vec<Basket>,
) {
    if pos == types.len() {
        if remaining == 0 {
            let lcm = types
                .iter()
                .zip(mults.iter())
                .filter(|(_, &m)| m > 0)
                .fold(1u32, |acc, (p, _)| acc.lcm(&p.r));
            if lcm == index {
                let mut points = Vec::new();
                for (p, &m) in types.iter().zip(mults.iter()) {
                    points.extend(std::iter::repeat_n(*p, m as usize));
                }
                out.push(Basket::new(points));
            }
        }
        return;
    }
    let w = weights[pos];
    let max = remaining / w;
    for m in 0..=max {
        mults[pos] = m as u32;
        walk(types, weights, pos + 1, remaining - m * w, mults, index, out);
    }
    mults[pos] = 0;
}

/// Morrison's parametric families, one basket per parameter tuple (so the
/// list may contain repeats). Empty for other indices.
pub fn morrison_parameter_tuples(index: u32) -> Vec<Basket> {
    let p = |b: i64, r: i64| OrbifoldPoint::new(b, r).expect("valid Morrison point");
    let mut out = Vec::new();
    match index {
        5 => {
            for mask in 0u32..32 {
                let pts = (0..5).map(|i| p(1 + ((mask >> i) & 1) as i64, 5)).collect();
                out.push(Basket::new(pts));
            }
        }
        8 => {
            for b1 in [1, 3] {
                for b2 in [1, 3] {
                    let mut pts = vec![p(1, 2); 3];
                    pts.extend([p(1, 4), p(b1, 8), p(b2, 8)]);
                    out.push(Basket::new(pts));
                }
            }
        }
        10 => {
            for b1 in [1, 2] {
                for b2 in [1, 2] {
                    for c in [1, 3] {
                        let mut pts = vec![p(1, 2); 3];
                        pts.extend([p(b1, 5), p(b2, 5), p(c, 10)]);
                        out.push(Basket::new(pts));
                    }
                }
            }
        }
        12 => {
            for b in [1, 5] {
                let pts = vec![p(1, 2), p(1, 2), p(1, 3), p(1, 3), p(1, 4), p(b, 12)];
                out.push(Basket::new(pts));
            }
        }
        _ => {}
    }
    out
}

/// Distinct baskets of Morrison's family for `index`, sorted.
pub fn morrison_family(index: u32) -> Vec<Basket> {
    let mut v = morrison_parameter_tuples(index);
    v.sort();
    v.dedup();
    v
}

/// Baskets consistent with `chi`, `i(X) = index` and the classification
/// constraints. For Morrison indices the numerical solutions are restricted
/// to Morrison's families.
pub fn enumerate_baskets(chi: u32, index: u32) -> Result<Vec<Basket>> {
    check_admissible(chi, index)?;
    let all = numerical_baskets(chi, index);
    if MORRISON_INDICES.contains(&index) {
        let family = morrison_family(index);
        Ok(all.into_iter().filter(|b| family.contains(b)).collect())
    } else {
        Ok(all)
    }
}

/// Union of [`enumerate_baskets`] over every admissible `chi >= 1` for `index`.
pub fn baskets_for_index(index: u32) -> Result<Vec<Basket>> {
    if !ADMISSIBLE_INDICES.contains(&index) {
        return Err(Error::InadmissibleIndex(index));
    }
    let mut out = Vec::new();
    for chi in chi_range(index) {
        out.extend(enumerate_baskets(chi, index)?);
    }
    Ok(out)
}

/// Admissible `chi` values for a positive-`chi` index.
pub fn chi_range(index: u32) -> Vec<u32> {
    match index {
        2 | 3 | 4 | 6 => vec![1, 2, 3, 4],
        _ => vec![1],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use num_traits::One;
    use proptest::prelude::*;

    fn bk(s: &str) -> Basket {
        s.parse().unwrap()
    }

    #[test]
    fn point_validation() {
        assert!(validate_point(1, 2));
        assert!(!validate_point(2, 4));
        assert!(validate_point(5, 12));
        assert!(!validate_point(7, 12));
        assert!(!validate_point(1, 1));
        assert!(!validate_point(0, 5));
        assert!(OrbifoldPoint::new(3, 9).is_err());
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi_of(&Basket::empty()), Rational::zero());
        assert_eq!(chi_of(&bk("5x(1,2) 4x(1,3) 1x(1,6)")), Rational::one());
        assert_eq!(chi_of(&bk("2x(1,2) 2x(1,3) (1,4) (1,12)")), Rational::one());
        assert_eq!(chi_of(&bk("2x(1,2) 2x(1,3) (1,4) (5,12)")), Rational::one());
    }

    #[test]
    fn index_examples() {
        assert_eq!(cartier_index(&Basket::empty()), 1);
        assert_eq!(cartier_index(&bk("3x(1,2) (1,4) (1,8) (3,8)")), 8);
        assert_eq!(cartier_index(&bk("3x(1,2) (1,5) (2,5) (3,10)")), 10);
    }

    #[test]
    fn text_and_json_forms() {
        let b = bk("(1,6) 4×(1,3) 5x(1,2)");
        assert_eq!(b.to_string(), "5x(1,2) 4x(1,3) 1x(1,6)");
        assert_eq!(b.to_json().to_string(), "[[1,2,5],[1,3,4],[1,6,1]]");
        assert_eq!(Basket::from_json(&b.to_json()).unwrap(), b);
        assert_eq!(bk("{}"), Basket::empty());
        assert_eq!(Basket::empty().to_string(), "{}");
        assert!("2x(2,4)".parse::<Basket>().is_err());
        assert!("2x(1,2".parse::<Basket>().is_err());
        assert!("ax(1,2)".parse::<Basket>().is_err());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_baskets(1, 6).unwrap(), vec![bk("5x(1,2) 4x(1,3) (1,6)")]);
        assert_eq!(
            enumerate_baskets(1, 12).unwrap(),
            vec![bk("2x(1,2) 2x(1,3) (1,4) (1,12)"), bk("2x(1,2) 2x(1,3) (1,4) (5,12)")]
        );
        let five = enumerate_baskets(1, 5).unwrap();
        assert_eq!(five.len(), 6);
        for b in &five {
            assert_eq!(b.len(), 5);
            assert!(b.points().iter().all(|p| p.r() == 5));
        }
        assert_eq!(enumerate_baskets(0, 1).unwrap(), vec![Basket::empty()]);
    }

    #[test]
    fn rejects_excluded_pairs() {
        assert!(enumerate_baskets(2, 5).is_err());
        assert!(enumerate_baskets(2, 12).is_err());
        assert!(enumerate_baskets(5, 2).is_err());
        assert!(enumerate_baskets(1, 7).is_err());
        assert!(enumerate_baskets(1, 1).is_err());
    }

    #[test]
    fn index_twelve_has_one_non_morrison_solution() {
        let all = numerical_baskets(1, 12);
        let extra: Vec<_> = all
            .iter()
            .filter(|b| !morrison_family(12).contains(b))
            .collect();
        assert_eq!(extra, vec![&bk("4x(1,3) 2x(1,4) (1,6)")]);
    }

    #[test]
    fn morrison_counts() {
        let counts: Vec<_> = MORRISON_INDICES.iter().map(|&i| morrison_family(i).len()).collect();
        assert_eq!(counts, vec![6, 3, 6, 2]);
        assert_eq!(morrison_parameter_tuples(10).len(), 8);
    }

    #[test]
    fn enumeration_invariants_all_admissible() {
        for index in ADMISSIBLE_INDICES {
            for chi in chi_range(index) {
                for b in enumerate_baskets(chi, index).unwrap() {
                    assert_eq!(chi_of(&b), int(chi as i64), "{b}");
                    assert_eq!(cartier_index(&b), index, "{b}");
                    let scaled = chi_of(&b) * int(24 * index as i64);
                    assert!(scaled.is_integer());
                }
            }
        }
    }

    proptest! {
        #[test]
        fn text_round_trip(runs in proptest::collection::vec((1u32..6, 0usize..12), 0..6)) {
            let types = admissible_points(120);
            let mut pts = Vec::new();
            for (m, t) in runs {
                let p = types[t % types.len()];
                pts.extend(std::iter::repeat_n(p, m as usize));
            }
            let b = Basket::new(pts);
            prop_assert_eq!(b.to_string().parse::<Basket>().unwrap(), b.clone());
            prop_assert_eq!(Basket::from_json(&b.to_json()).unwrap(), b.clone());
            let scaled = chi_of(&b) * int(24 * cartier_index(&b) as i64);
            prop_assert!(scaled.is_integer());
        }
    }
}
