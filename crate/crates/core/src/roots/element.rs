use std::fmt;
use std::ops::{Mul, Neg};

use crate::error::{CoxeterError, Result};

/// A root of `Phi` addressed as `±` a positive-root index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedRoot(u32);

impl SignedRoot {
    pub fn positive(index: usize) -> Self {
        SignedRoot((index as u32) << 1)
    }

    pub fn negative(index: usize) -> Self {
        SignedRoot(((index as u32) << 1) | 1)
    }

    pub fn new(index: usize, negative: bool) -> Self {
        if negative {
            Self::negative(index)
        } else {
            Self::positive(index)
        }
    }

    pub fn index(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_negative(self) -> bool {
        self.0 & 1 == 1
    }

    /// 1-based signed index: `+(i+1)` or `-(i+1)`.
    pub fn to_signed_int(self) -> i64 {
        let k = self.index() as i64 + 1;
        if self.is_negative() {
            -k
        } else {
            k
        }
    }

    pub fn from_signed_int(k: i64) -> Option<Self> {
        match k {
            0 => None,
            k if k > 0 => Some(Self::positive(k as usize - 1)),
            k => Some(Self::negative((-k) as usize - 1)),
        }
    }
}

impl Neg for SignedRoot {
    type Output = SignedRoot;

    fn neg(self) -> SignedRoot {
        SignedRoot(self.0 ^ 1)
    }
}

impl fmt::Debug for SignedRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_signed_int())
    }
}

/// A group element, represented by its action on the positive roots.
///
/// `images[i]` is the image of positive root `i`; negative roots follow by
/// linearity. Elements act on the right, so `a * b` applies `a` first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    images: Box<[SignedRoot]>,
}

impl GroupElement {
    pub fn identity(num_positive: usize) -> Self {
        GroupElement { images: (0..num_positive).map(SignedRoot::positive).collect() }
    }

    /// Wraps a root table, checking that it is a signed permutation.
    pub fn from_images(images: Vec<SignedRoot>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for s in &images {
            if s.index() >= images.len() || std::mem::replace(&mut seen[s.index()], true) {
                return Err(CoxeterError::Document("root table is not a signed permutation".into()));
            }
        }
        Ok(GroupElement { images: images.into() })
    }

    pub(crate) fn from_images_unchecked(images: Vec<SignedRoot>) -> Self {
        GroupElement { images: images.into() }
    }

    pub fn images(&self) -> &[SignedRoot] {
        &self.images
    }

    pub fn num_positive(&self) -> usize {
        self.images.len()
    }

    /// Image of a signed root.
    #[inline]
    pub fn act(&self, root: SignedRoot) -> SignedRoot {
        let img = self.images[root.index()];
        if root.is_negative() {
            -img
        } else {
            img
        }
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        assert_eq!(self.images.len(), other.images.len(), "elements of different root systems");
        GroupElement { images: self.images.iter().map(|&s| other.act(s)).collect() }
    }

    pub fn try_compose(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.images.len() != other.images.len() {
            return Err(CoxeterError::MismatchedRootSystems { left: self.images.len(), right: other.images.len() });
        }
        Ok(self.compose(other))
    }

    pub fn inverse(&self) -> GroupElement {
        let mut inv = vec![SignedRoot::positive(0); self.images.len()];
        for (i, s) in self.images.iter().enumerate() {
            inv[s.index()] = SignedRoot::new(i, s.is_negative());
        }
        GroupElement { images: inv.into() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, s)| *s == SignedRoot::positive(i))
    }

    /// `x^2 = 1`; the identity counts.
    pub fn is_involution(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &s)| self.act(s) == SignedRoot::positive(i))
    }

    /// `x^-1 self x`.
    pub fn conjugate_by(&self, x: &GroupElement) -> GroupElement {
        x.inverse().compose(self).compose(x)
    }

    /// Coxeter length: the number of positive roots sent negative.
    pub fn length(&self) -> usize {
        self.images.iter().filter(|s| s.is_negative()).count()
    }

    /// True when every positive root is sent to its own negative.
    pub fn is_minus_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, s)| *s == SignedRoot::negative(i))
    }
}

impl Mul for &GroupElement {
    type Output = GroupElement;

    fn mul(self, rhs: &GroupElement) -> GroupElement {
        self.compose(rhs)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.images.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signed_root_encoding() {
        let s = SignedRoot::negative(7);
        assert_eq!(s.index(), 7);
        assert!(s.is_negative());
        assert_eq!(-s, SignedRoot::positive(7));
        assert_eq!(s.to_signed_int(), -8);
        assert_eq!(SignedRoot::from_signed_int(-8), Some(s));
        assert_eq!(SignedRoot::from_signed_int(0), None);
    }

    #[test]
    fn mismatched_sizes_error() {
        let a = GroupElement::identity(3);
        let b = GroupElement::identity(4);
        assert!(matches!(a.try_compose(&b), Err(CoxeterError::MismatchedRootSystems { .. })));
    }

    #[test]
    fn rejects_non_permutation_tables() {
        let t = vec![SignedRoot::positive(0), SignedRoot::negative(0)];
        assert!(GroupElement::from_images(t).is_err());
    }
}
