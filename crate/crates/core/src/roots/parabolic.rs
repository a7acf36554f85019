use std::collections::BTreeSet;

use super::{GroupElement, RootSystem};
use crate::bitset::InversionSet;
use crate::error::{CoxeterError, Result};

/// A standard parabolic subgroup `W_J`, identified by its positive roots.
///
/// `w` lies in `W_J` exactly when `N(w)` is contained in `Phi_J^+`.
#[derive(Debug, Clone)]
pub struct ParabolicContext {
    generators: BTreeSet<usize>,
    phi_j: InversionSet,
}

impl ParabolicContext {
    pub fn new(rs: &RootSystem, generators: &[usize]) -> Result<Self> {
        for &r in generators {
            if r >= rs.rank() {
                return Err(CoxeterError::GeneratorOutOfRange { index: r, rank: rs.rank() });
            }
        }
        let generators: BTreeSet<usize> = generators.iter().copied().collect();
        let phi_j = rs.roots_supported_on(&generators);
        Ok(ParabolicContext { generators, phi_j })
    }

    /// 0-based generator indices of `J`.
    pub fn generators(&self) -> Vec<usize> {
        self.generators.iter().copied().collect()
    }

    pub fn positive_roots(&self) -> &InversionSet {
        &self.phi_j
    }

    pub fn contains(&self, w: &GroupElement) -> bool {
        w.images().iter().enumerate().all(|(i, s)| !s.is_negative() || self.phi_j.contains(i))
    }

    /// Like [`ParabolicContext::contains`], as an error.
    pub fn require(&self, w: &GroupElement) -> Result<()> {
        if self.contains(w) {
            Ok(())
        } else {
            Err(CoxeterError::NotInParabolic(self.generators()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptor::CoxeterDescriptor;

    #[test]
    fn membership_by_inversions() {
        let rs = RootSystem::build(CoxeterDescriptor::b(3)).unwrap();
        let ctx = rs.parabolic_context(&[0, 1]).unwrap();
        assert_eq!(ctx.positive_roots().len(), 3);
        assert!(ctx.contains(&rs.element_from_word(&[0, 1, 0]).unwrap()));
        assert!(!ctx.contains(&rs.element_from_word(&[0, 2]).unwrap()));
        assert!(ctx.require(&rs.generator(2).unwrap().clone()).is_err());
        assert!(rs.parabolic_context(&[3]).is_err());
    }
}
