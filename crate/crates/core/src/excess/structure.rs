//! Structure of spartan pairs in types A, B and D, read off from signed
//! cycle notation.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::descriptor::Family;
use crate::error::{CoxeterError, Result};
use crate::roots::RootSystem;
use crate::signed::{Ambient, SignedCycle, SignedPermutation};

/// A maximal parabolic subgroup `Sym(1..m) x W(m+1..n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Split {
    pub m: usize,
    /// 0-based generators of `J`.
    pub generators: Vec<usize>,
}

/// The maximal parabolics of split form: drop `r_m` for `1 <= m < n` in
/// `Sym(n)`, `1 <= m <= n` in `B_n`, and `m <= n-2` or `m = n` in `D_n`
/// (for `m = n` the dropped generator is `r_n`).
pub fn maximal_splits(rs: &RootSystem) -> Result<Vec<Split>> {
    let desc = rs.descriptor().ok_or_else(|| CoxeterError::Reducible(rs.name()))?;
    let rank = desc.rank;
    let ms: Vec<usize> = match desc.family {
        Family::A | Family::B => (1..=rank).collect(),
        Family::D => (1..=rank - 2).chain([rank]).collect(),
        _ => return Err(CoxeterError::NoPermutationModel(rs.name())),
    };
    Ok(ms
        .into_iter()
        .map(|m| {
            let dropped = m - 1;
            Split { m, generators: (0..rank).filter(|&r| r != dropped).collect() }
        })
        .collect())
}

/// Support containment for a spartan pair `(x, y)` of `w`.
///
/// A and B: `supp+(x) ∪ supp+(y) ⊆ supp+(w)`. D: at most one point of
/// `supp+(y)` lies outside `supp+(w)`, it is negated by both `x` and `y`,
/// and `x` has the same excess points.
pub fn spartan_support_check(
    x: &SignedPermutation,
    y: &SignedPermutation,
    w: &SignedPermutation,
    ambient: Ambient,
) -> bool {
    let sw = w.positive_support();
    let sx = x.positive_support();
    let sy = y.positive_support();
    match ambient {
        Ambient::A | Ambient::B => sx.is_subset(&sw) && sy.is_subset(&sw),
        Ambient::D => {
            let dx: BTreeSet<u32> = sx.difference(&sw).copied().collect();
            let dy: BTreeSet<u32> = sy.difference(&sw).copied().collect();
            dy.len() <= 1 && dx == dy && dy.iter().all(|&i| y.image(i) == -(i as i32) && x.image(i) == -(i as i32))
        }
    }
}

/// Every 2-cycle of `x` or `y` lies within `{1..m}` or within `{m+1..n}`.
pub fn overlap_check(x: &SignedPermutation, y: &SignedPermutation, m: usize) -> bool {
    [x, y].iter().all(|u| {
        u.cycle_decomposition()
            .cycles
            .iter()
            .filter(|c| c.len() == 2)
            .all(|c| (c.points[0] as usize <= m) == (c.points[1] as usize <= m))
    })
}

/// For disjoint `w`-cycles `C1 = (+a_1 ... +a_k)` and `C2` with
/// `C1^y = C2^-1`, `max a_i > min b_i`.
pub fn swapcycle_check(y: &SignedPermutation, w: &SignedPermutation) -> bool {
    let n = w.degree();
    let cycles = w.cycle_decomposition().with_fixed_points();
    let y_inv = y.inverse();
    for c1 in cycles.iter().filter(|c| c.all_plus()) {
        let image: BTreeSet<u32> = c1.points.iter().map(|&a| y.image(a).unsigned_abs()).collect();
        let conj = y_inv.compose(&c1.to_permutation(n)).compose(y);
        for c2 in &cycles {
            if std::ptr::eq(c1, c2) || c2.len() != c1.len() {
                continue;
            }
            let support: BTreeSet<u32> = c2.points.iter().copied().collect();
            if support != image || conj != c2.to_permutation(n).inverse() {
                continue;
            }
            if c1.max_point() <= c2.min_point() {
                return false;
            }
        }
    }
    true
}

/// Which hypothesis of the conditional D-type result holds for `w` in
/// `Sym(1..m) x D(m+1..n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DnCondition {
    MEqualsN,
    HasOneCycle,
    EvenPositiveCycles,
    None,
}

impl DnCondition {
    pub fn holds(self) -> bool {
        self != DnCondition::None
    }
}

/// Reads the hypothesis off the cycles of `w_2`, the factor of `w` on
/// `{m+1..n}` (fixed points count as 1-cycles).
pub fn dn_condition_check(w: &SignedPermutation, m: usize) -> DnCondition {
    let n = w.degree();
    if m >= n {
        return DnCondition::MEqualsN;
    }
    let w2: Vec<SignedCycle> =
        w.cycle_decomposition().with_fixed_points().into_iter().filter(|c| c.min_point() as usize > m).collect();
    if w2.iter().any(|c| c.len() == 1) {
        DnCondition::HasOneCycle
    } else if w2.iter().all(|c| c.len() % 2 == 0 && !c.is_negative_type()) {
        DnCondition::EvenPositiveCycles
    } else {
        DnCondition::None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptor::CoxeterDescriptor;

    fn sp(text: &str, n: usize) -> SignedPermutation {
        SignedPermutation::parse(text, n).unwrap()
    }

    #[test]
    fn splits_per_family() {
        let ms = |d: CoxeterDescriptor| -> Vec<usize> {
            maximal_splits(&RootSystem::build(d).unwrap()).unwrap().iter().map(|s| s.m).collect()
        };
        assert_eq!(ms(CoxeterDescriptor::a(4)), [1, 2, 3, 4]);
        assert_eq!(ms(CoxeterDescriptor::b(3)), [1, 2, 3]);
        assert_eq!(ms(CoxeterDescriptor::d(5)), [1, 2, 3, 5]);
        let d5 = maximal_splits(&RootSystem::build(CoxeterDescriptor::d(5)).unwrap()).unwrap();
        assert_eq!(d5[3].generators, [0, 1, 2, 3]);
    }

    #[test]
    fn d12_support_example() {
        let w = sp("(+2 +4 +6 +8 +10 -12 +11 +9 +7 +5 -3)", 12);
        let x = sp("(-1)(+2 +3)(+4 +5)(+6 +7)(+8 +9)(+10 +11)(-12)", 12);
        let y = sp("(-1)(-2)(+3 +4)(+5 +6)(+7 +8)(+9 +10)(+11 +12)", 12);
        assert!(spartan_support_check(&x, &y, &w, Ambient::D));
        assert!(!spartan_support_check(&x, &y, &w, Ambient::B));
        let dy: Vec<u32> = y.positive_support().difference(&w.positive_support()).copied().collect();
        assert_eq!(dy, [1]);
    }

    #[test]
    fn trivial_pairs_pass() {
        let w = sp("(+1 +2)(-3)", 4);
        let id = SignedPermutation::identity(4);
        assert!(spartan_support_check(&w, &id, &w, Ambient::B));
        assert!(overlap_check(&w, &id, 2));
        assert!(swapcycle_check(&id, &w));
    }

    #[test]
    fn overlap_detects_crossing() {
        let x = sp("(+2 +3)", 4);
        assert!(!overlap_check(&x, &SignedPermutation::identity(4), 2));
        assert!(overlap_check(&x, &SignedPermutation::identity(4), 3));
    }

    #[test]
    fn swapcycle_detects_order() {
        // y swaps (1 2) with (3 4), inverting: max{1,2} < min{3,4}.
        let w = sp("(+1 +2)(+3 +4)", 4);
        let y = sp("(+1 +3)(+2 +4)", 4);
        assert_eq!(w.conjugate_by(&y), w.inverse());
        assert!(!swapcycle_check(&y, &w));
        let w = sp("(+1 +3)(+2 +4)", 4);
        let y = sp("(+1 +2)(+3 +4)", 4);
        assert!(swapcycle_check(&y, &w));
    }

    #[test]
    fn dn_conditions() {
        let w = sp("(+2 +4 +6 +8 +10 -12 +11 +9 +7 +5 -3)", 12);
        assert_eq!(dn_condition_check(&w, 1), DnCondition::None);
        assert_eq!(dn_condition_check(&w, 12), DnCondition::MEqualsN);
        assert_eq!(dn_condition_check(&sp("(+1 +2)(+3 +4)", 5), 2), DnCondition::HasOneCycle);
        assert_eq!(dn_condition_check(&sp("(+3 +4)(+5 +6)", 6), 2), DnCondition::EvenPositiveCycles);
        assert_eq!(dn_condition_check(&sp("(+3 -4)(-5 +6)", 6), 2), DnCondition::None);
    }
}
