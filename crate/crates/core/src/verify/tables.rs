//! Per-element data for exhaustive sweeps, computed once per group.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::bitset::InversionSet;
use crate::error::{CoxeterError, Result};
use crate::roots::{EnumeratedGroup, FixedBasis, GroupElement, RootSystem};
use crate::signed::{PermutationModel, SignedPermutation};

/// One member `x` of `I_w`, with `y = x w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inverter {
    pub x: u32,
    pub y: u32,
    /// `l(x) + l(y) - l(w)`.
    pub defect: u32,
    /// `x` fixes `V_1(w)` pointwise.
    pub in_j: bool,
}

/// A standard parabolic subgroup as a generator bitmask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parabolic {
    pub generators: Vec<usize>,
    pub mask: u32,
}

impl Parabolic {
    pub fn new(generators: &[usize]) -> Self {
        let mut generators = generators.to_vec();
        generators.sort_unstable();
        generators.dedup();
        let mask = generators.iter().fold(0u32, |m, &r| m | (1 << r));
        Parabolic { generators, mask }
    }

    /// 1-based generator list for reports.
    pub fn label(&self) -> Vec<usize> {
        self.generators.iter().map(|r| r + 1).collect()
    }
}

/// Everything a theorem check reads, indexed by position in the
/// breadth-first enumeration of `W`.
#[derive(Debug)]
pub struct SweepTables {
    pub rs: RootSystem,
    pub model: Option<PermutationModel>,
    pub group: EnumeratedGroup,
    pub signed: Option<Vec<SignedPermutation>>,
    pub inverse: Vec<u32>,
    /// Generators `r` with `alpha_r` in the support of some root of `N(w)`;
    /// `w` lies in `W_J` exactly when this mask is inside `J`.
    pub support: Vec<u32>,
    pub inversions: Vec<InversionSet>,
    pub reflection_length: Vec<u32>,
    /// Distance from the identity in the Cayley graph on all reflections.
    pub reflection_distance: Vec<u32>,
    pub inverting: Vec<Vec<Inverter>>,
    pub excess: Vec<u32>,
    pub reflection_excess: Vec<u32>,
    pub n_of_inverting: Vec<InversionSet>,
}

impl SweepTables {
    /// Enumerates `W` and fills every table. Refuses groups larger than
    /// `limit`.
    pub fn build(rs: RootSystem, limit: u128) -> Result<Self> {
        let order = rs.group_order();
        if order > limit {
            return Err(CoxeterError::GuardExceeded { order, guard: limit });
        }
        let group = EnumeratedGroup::new(&rs, limit)?;
        let model = PermutationModel::new(&rs).ok();
        let elements = group.elements();
        let index: HashMap<&GroupElement, u32> = elements.iter().enumerate().map(|(i, w)| (w, i as u32)).collect();
        let lookup = |w: &GroupElement| *index.get(w).expect("closed under products");

        let inverse: Vec<u32> = elements.par_iter().map(|w| lookup(&w.inverse())).collect();
        let inversions: Vec<InversionSet> = elements.par_iter().map(|w| rs.inversion_set(w)).collect();
        let rank = rs.rank();
        let avoiding: Vec<InversionSet> =
            (0..rank).map(|r| rs.roots_supported_on(&(0..rank).filter(|&s| s != r).collect())).collect();
        let phi_support: Vec<u32> = (0..rs.num_positive())
            .map(|i| (0..rank).filter(|&r| !avoiding[r].contains(i)).fold(0u32, |m, r| m | (1 << r)))
            .collect();
        let support: Vec<u32> = inversions.iter().map(|n| n.iter().fold(0u32, |m, i| m | phi_support[i])).collect();
        let fixed: Vec<FixedBasis> = elements.par_iter().map(|w| rs.fixed_coefficients(w)).collect();
        let reflection_length: Vec<u32> = fixed.iter().map(|b| (rs.rank() - b.dim()) as u32).collect();
        let involutions: Vec<u32> = group.involutions().into_iter().map(|i| i as u32).collect();
        let signed = model
            .as_ref()
            .map(|m| elements.par_iter().map(|w| m.from_root_perm(w)).collect::<Result<Vec<_>>>())
            .transpose()?;

        let inverting: Vec<Vec<Inverter>> = elements
            .par_iter()
            .enumerate()
            .map(|(wi, w)| {
                let w_inv = &elements[inverse[wi] as usize];
                let lw = w.length() as u32;
                involutions
                    .iter()
                    .filter_map(|&xi| {
                        let x = &elements[xi as usize];
                        let y = x.compose(w);
                        if &y.compose(x) != w_inv {
                            return None;
                        }
                        let yi = lookup(&y);
                        Some(Inverter {
                            x: xi,
                            y: yi,
                            defect: x.length() as u32 + y.length() as u32 - lw,
                            in_j: rs.fixes(x, &fixed[wi]),
                        })
                    })
                    .collect()
            })
            .collect();
        let excess = inverting.iter().map(|iw| iw.iter().map(|p| p.defect).min().expect("I_w is non-empty")).collect();
        let reflection_excess = inverting
            .iter()
            .map(|iw| iw.iter().filter(|p| p.in_j).map(|p| p.defect).min().expect("J_w is non-empty"))
            .collect();
        let n_of_inverting = inverting
            .iter()
            .map(|iw| {
                let mut acc = InversionSet::empty(rs.num_positive());
                for p in iw {
                    acc.union_with(&inversions[p.x as usize]);
                }
                acc
            })
            .collect();

        let mut tables = SweepTables {
            rs,
            model,
            group,
            signed,
            inverse,
            support,
            inversions,
            reflection_length,
            reflection_distance: Vec::new(),
            inverting,
            excess,
            reflection_excess,
            n_of_inverting,
        };
        tables.reflection_distance = tables.reflection_distances();
        Ok(tables)
    }

    pub fn len(&self) -> usize {
        self.group.len()
    }

    pub fn is_empty(&self) -> bool {
        self.group.is_empty()
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        self.group.get(i)
    }

    pub fn in_parabolic(&self, i: usize, j: &Parabolic) -> bool {
        self.support[i] & !j.mask == 0
    }

    /// `e_J(w)`, for `w` in `W_J`.
    pub fn parabolic_excess(&self, w: usize, j: &Parabolic) -> u32 {
        self.restricted_minimum(w, j, false)
    }

    /// `E_J(w)`, for `w` in `W_J`.
    pub fn parabolic_reflection_excess(&self, w: usize, j: &Parabolic) -> u32 {
        self.restricted_minimum(w, j, true)
    }

    fn restricted_minimum(&self, w: usize, j: &Parabolic, only_j: bool) -> u32 {
        self.inverting[w]
            .iter()
            .filter(|p| (!only_j || p.in_j) && self.in_parabolic(p.x as usize, j))
            .map(|p| p.defect)
            .min()
            .expect("w is its own inverter's partner inside W_J")
    }

    /// Minimizing pairs for `e(w)`.
    pub fn spartan_pairs(&self, w: usize) -> impl Iterator<Item = &Inverter> {
        let e = self.excess[w];
        self.inverting[w].iter().filter(move |p| p.defect == e)
    }

    /// Cycle notation when a model exists, otherwise a 1-based reduced word.
    pub fn label(&self, i: usize) -> String {
        match &self.signed {
            Some(s) => s[i].to_string(),
            None => {
                let word: Vec<String> = self.group.word(i).iter().map(|r| (r + 1).to_string()).collect();
                format!("[{}]", word.join(" "))
            }
        }
    }

    /// Breadth-first distance from the identity in the Cayley graph on
    /// all reflections.
    fn reflection_distances(&self) -> Vec<u32> {
        let elements = self.group.elements();
        let reflections = self.rs.reflections();
        let mut dist = vec![u32::MAX; elements.len()];
        dist[0] = 0;
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &i in &frontier {
                for t in &reflections {
                    let j = self.group.index_of(&elements[i].compose(t)).expect("closed under products");
                    if dist[j] == u32::MAX {
                        dist[j] = dist[i] + 1;
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        dist
    }

    /// Conjugacy classes, each sorted, in order of least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let elements = self.group.elements();
        let mut class = vec![u32::MAX; elements.len()];
        let mut classes = Vec::new();
        for start in 0..elements.len() {
            if class[start] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            class[start] = id;
            let mut members = vec![start as u32];
            let mut k = 0;
            while k < members.len() {
                let w = &elements[members[k] as usize];
                for s in self.rs.generators() {
                    let c = s.compose(w).compose(s);
                    let ci = self.group.index_of(&c).expect("closed under products");
                    if class[ci] == u32::MAX {
                        class[ci] = id;
                        members.push(ci as u32);
                    }
                }
                k += 1;
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }
}
