use std::collections::HashMap;

use super::{GroupElement, ParabolicContext, RootSystem};
use crate::error::{CoxeterError, Result};

/// Default ceiling on `|W|` for full enumeration.
pub const DEFAULT_GUARD: u128 = 10_000_000;

/// Environment variable overriding [`DEFAULT_GUARD`].
pub const GUARD_ENV: &str = "COXEX_GUARD";

/// The guard from `COXEX_GUARD`, or [`DEFAULT_GUARD`].
pub fn default_guard() -> u128 {
    std::env::var(GUARD_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_GUARD)
}

/// All elements of a (parabolic sub)group in breadth-first order, so
/// elements appear by non-decreasing length.
#[derive(Debug, Clone)]
pub struct EnumeratedGroup {
    elements: Vec<GroupElement>,
    /// `(parent, generator)`: element `i` is `parent * r_generator`.
    parents: Vec<Option<(u32, u8)>>,
    index: HashMap<GroupElement, u32>,
}

impl EnumeratedGroup {
    /// Enumerates `W`, refusing when `|W|` exceeds `guard`.
    pub fn new(rs: &RootSystem, guard: u128) -> Result<Self> {
        let order = rs.group_order();
        if order > guard {
            return Err(CoxeterError::GuardExceeded { order, guard });
        }
        let gens: Vec<usize> = (0..rs.rank()).collect();
        Ok(Self::generated(rs, &gens, order as usize))
    }

    fn generated(rs: &RootSystem, gens: &[usize], capacity: usize) -> Self {
        let id = rs.identity();
        let mut elements = Vec::with_capacity(capacity);
        let mut parents = Vec::with_capacity(capacity);
        let mut index = HashMap::with_capacity(capacity);
        index.insert(id.clone(), 0);
        elements.push(id);
        parents.push(None);
        let mut next = 0;
        while next < elements.len() {
            for &r in gens {
                let w = elements[next].compose(&rs.generators()[r]);
                if !index.contains_key(&w) {
                    index.insert(w.clone(), elements.len() as u32);
                    elements.push(w);
                    parents.push(Some((next as u32, r as u8)));
                }
            }
            next += 1;
        }
        EnumeratedGroup { elements, parents, index }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn index_of(&self, w: &GroupElement) -> Option<usize> {
        self.index.get(w).map(|&i| i as usize)
    }

    /// A shortest word for element `i` in the enumerating generators.
    pub fn word(&self, mut i: usize) -> Vec<usize> {
        let mut word = Vec::new();
        while let Some((p, r)) = self.parents[i] {
            word.push(r as usize);
            i = p as usize;
        }
        word.reverse();
        word
    }

    /// Indices of the elements with `x^2 = 1`, identity included.
    pub fn involutions(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.elements[i].is_involution()).collect()
    }
}

/// Enumerates `W_J` inside `W`.
pub fn enumerate_parabolic(rs: &RootSystem, ctx: &ParabolicContext, guard: u128) -> Result<EnumeratedGroup> {
    let gens = ctx.generators();
    let sub = EnumeratedGroup::generated(rs, &gens, 0);
    if sub.len() as u128 > guard {
        return Err(CoxeterError::GuardExceeded { order: sub.len() as u128, guard });
    }
    Ok(sub)
}
