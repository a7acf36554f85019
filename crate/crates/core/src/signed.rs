//! Signed permutations of `{1..n}`: the fast model of types A, B and D.
//!
//! `images[a-1] = ±b` means `e_a · u = ±e_b`. Products act on the right,
//! so `u.compose(v)` applies `u` first. In cycle notation each point
//! carries the sign of its own image: `(+2 -3)` sends `e_2` to `e_3` and
//! `e_3` to `-e_2`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use num_rational::Rational64;

use crate::descriptor::Family;
use crate::error::{CoxeterError, Result};
use crate::roots::{GroupElement, Realization, RootSystem, SignedRoot};

/// Ceiling on centralizer closure.
pub const CENTRALIZER_GUARD: usize = 1_000_000;

/// The ambient group a signed permutation is considered in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ambient {
    /// `Sym(n)`: unsigned permutations.
    A,
    B,
    /// Positive elements of `B_n`.
    D,
}

impl Ambient {
    pub fn of_family(family: Family) -> Option<Self> {
        match family {
            Family::A => Some(Ambient::A),
            Family::B => Some(Ambient::B),
            Family::D => Some(Ambient::D),
            _ => None,
        }
    }

    pub fn contains(self, sp: &SignedPermutation) -> bool {
        match self {
            Ambient::A => sp.is_unsigned(),
            Ambient::B => true,
            Ambient::D => sp.is_positive(),
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Ambient::A => "Sym",
            Ambient::B => "B",
            Ambient::D => "D",
        };
        f.write_str(s)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    images: Vec<i32>,
}

/// One signed cycle: `e_{points[i]} -> signs[i] e_{points[i+1]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedCycle {
    pub points: Vec<u32>,
    pub signs: Vec<i8>,
}

impl SignedCycle {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Negative sign type: an odd number of minus signs.
    pub fn is_negative_type(&self) -> bool {
        self.signs.iter().filter(|&&s| s < 0).count() % 2 == 1
    }

    pub fn all_plus(&self) -> bool {
        self.signs.iter().all(|&s| s > 0)
    }

    pub fn min_point(&self) -> u32 {
        *self.points.iter().min().expect("non-empty cycle")
    }

    pub fn max_point(&self) -> u32 {
        *self.points.iter().max().expect("non-empty cycle")
    }

    /// The cycle as an element of degree `n`, identity off its support.
    pub fn to_permutation(&self, n: usize) -> SignedPermutation {
        let mut sp = SignedPermutation::identity(n);
        let m = self.len();
        for i in 0..m {
            let next = self.points[(i + 1) % m] as i32;
            sp.images[self.points[i] as usize - 1] = self.signs[i] as i32 * next;
        }
        sp
    }

    /// `-1` on the support of the cycle.
    pub fn sign_flip(&self, n: usize) -> SignedPermutation {
        let mut sp = SignedPermutation::identity(n);
        for &a in &self.points {
            sp.images[a as usize - 1] = -(a as i32);
        }
        sp
    }

    /// The cycle relabelled to start at `points[k]`.
    pub fn rotated(&self, k: usize) -> SignedCycle {
        let m = self.len();
        SignedCycle {
            points: (0..m).map(|i| self.points[(i + k) % m]).collect(),
            signs: (0..m).map(|i| self.signs[(i + k) % m]).collect(),
        }
    }

    /// An involution `tau` on the support with `tau g tau = g^-1` and
    /// `(+points[0])` as a 1-cycle: `e_{a_i} -> s_i e_{a_{-i}}` with
    /// `s_0 = +1`, `s_i = s_{i-1} eps_{i-1} eps_{-i}`.
    pub fn reversal(&self, n: usize) -> SignedPermutation {
        let m = self.len();
        let mut s = vec![1i32; m];
        for i in 1..m {
            s[i] = s[i - 1] * self.signs[i - 1] as i32 * self.signs[(m - i) % m] as i32;
        }
        let mut sp = SignedPermutation::identity(n);
        for i in 0..m {
            let target = self.points[(m - i) % m] as i32;
            sp.images[self.points[i] as usize - 1] = s[i] * target;
        }
        sp
    }
}

impl fmt::Display for SignedCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, (p, s)) in self.points.iter().zip(&self.signs).enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", if *s < 0 { '-' } else { '+' }, p)?;
        }
        f.write_str(")")
    }
}

/// Disjoint cycles in canonical order: each starts at its least point and
/// cycles are sorted by that point. Positive fixed points are implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub degree: usize,
    pub cycles: Vec<SignedCycle>,
}

impl CycleDecomposition {
    /// Every cycle, with positive fixed points as 1-cycles.
    pub fn with_fixed_points(&self) -> Vec<SignedCycle> {
        let mut covered = vec![false; self.degree];
        for c in &self.cycles {
            for &p in &c.points {
                covered[p as usize - 1] = true;
            }
        }
        let mut all = self.cycles.clone();
        for (i, _) in covered.iter().enumerate().filter(|(_, c)| !**c) {
            all.push(SignedCycle { points: vec![i as u32 + 1], signs: vec![1] });
        }
        all.sort_by_key(SignedCycle::min_point);
        all
    }

    /// Product of the cycles; recovers the element.
    pub fn to_permutation(&self) -> SignedPermutation {
        let mut sp = SignedPermutation::identity(self.degree);
        for c in &self.cycles {
            sp = sp.compose(&c.to_permutation(self.degree));
        }
        sp
    }
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        SignedPermutation { images: (1..=n as i32).collect() }
    }

    /// Checks that `images` is a signed permutation of `{1..n}`.
    pub fn from_images(images: Vec<i32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &b in &images {
            let p = b.unsigned_abs() as usize;
            if p == 0 || p > n {
                return Err(CoxeterError::PointOutOfRange { point: b as i64, degree: n });
            }
            if std::mem::replace(&mut seen[p - 1], true) {
                return Err(CoxeterError::RepeatedPoint(p as u32));
            }
        }
        Ok(SignedPermutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[i32] {
        &self.images
    }

    /// Signed image of point `a` (1-based).
    pub fn image(&self, a: u32) -> i32 {
        self.images[a as usize - 1]
    }

    /// Parses cycle notation at degree `n`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let bytes = text.as_bytes();
        let mut pos = 0;
        let mut images: Vec<i32> = (1..=n as i32).collect();
        let mut used = vec![false; n];
        let mut cycles = 0;
        let err = |position: usize, message: &str| CoxeterError::Parse { position, message: message.into() };
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        loop {
            skip_ws(&mut pos);
            if pos == bytes.len() {
                break;
            }
            if bytes[pos] != b'(' {
                return Err(err(pos, "expected '('"));
            }
            pos += 1;
            let mut points: Vec<(u32, i32)> = Vec::new();
            loop {
                if pos < bytes.len() && bytes[pos] == b')' {
                    break;
                }
                if !points.is_empty() {
                    if pos >= bytes.len() || bytes[pos] != b' ' {
                        return Err(err(pos, "expected ' ' or ')'"));
                    }
                    pos += 1;
                }
                let sign = match bytes.get(pos) {
                    Some(b'+') => 1,
                    Some(b'-') => -1,
                    _ => return Err(err(pos, "expected '+' or '-'")),
                };
                pos += 1;
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    return Err(err(pos, "expected a point"));
                }
                let point: i64 = text[start..pos].parse().map_err(|_| err(start, "point too large"))?;
                if point < 1 || point as usize > n {
                    return Err(CoxeterError::PointOutOfRange { point, degree: n });
                }
                let p = point as u32;
                if std::mem::replace(&mut used[p as usize - 1], true) {
                    return Err(CoxeterError::RepeatedPoint(p));
                }
                points.push((p, sign));
            }
            if points.is_empty() {
                return Err(err(pos, "empty cycle"));
            }
            pos += 1;
            for (i, &(p, s)) in points.iter().enumerate() {
                let (next, _) = points[(i + 1) % points.len()];
                images[p as usize - 1] = s * next as i32;
            }
            cycles += 1;
        }
        if cycles == 0 {
            return Err(err(pos, "expected at least one cycle"));
        }
        Ok(SignedPermutation { images })
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        assert_eq!(self.degree(), other.degree(), "signed permutations of different degrees");
        SignedPermutation {
            images: self.images.iter().map(|&b| b.signum() * other.images[b.unsigned_abs() as usize - 1]).collect(),
        }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let mut inv = vec![0; self.degree()];
        for (a, &b) in self.images.iter().enumerate() {
            inv[b.unsigned_abs() as usize - 1] = b.signum() * (a as i32 + 1);
        }
        SignedPermutation { images: inv }
    }

    /// `x^-1 self x`.
    pub fn conjugate_by(&self, x: &SignedPermutation) -> SignedPermutation {
        x.inverse().compose(self).compose(x)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(a, &b)| b == a as i32 + 1)
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).is_identity()
    }

    /// Number of points sent to a negative point.
    pub fn minus_count(&self) -> usize {
        self.images.iter().filter(|&&b| b < 0).count()
    }

    /// Even number of minus signs; the elements of `D_n`.
    pub fn is_positive(&self) -> bool {
        self.minus_count().is_multiple_of(2)
    }

    pub fn in_d(&self) -> bool {
        self.is_positive()
    }

    pub fn is_unsigned(&self) -> bool {
        self.minus_count() == 0
    }

    /// Points `a` with `e_a · u != e_a`.
    pub fn positive_support(&self) -> BTreeSet<u32> {
        self.images.iter().enumerate().filter(|(a, &b)| b != *a as i32 + 1).map(|(a, _)| a as u32 + 1).collect()
    }

    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 1..=n as u32 {
            if seen[start as usize - 1] || self.image(start) == start as i32 {
                continue;
            }
            let mut points = Vec::new();
            let mut signs = Vec::new();
            let mut a = start;
            loop {
                seen[a as usize - 1] = true;
                let b = self.image(a);
                points.push(a);
                signs.push(b.signum() as i8);
                a = b.unsigned_abs();
                if a == start {
                    break;
                }
            }
            cycles.push(SignedCycle { points, signs });
        }
        CycleDecomposition { degree: n, cycles }
    }

    /// Restriction to the points of `block` (which must be a union of
    /// cycles), identity elsewhere.
    pub fn restrict(&self, block: &BTreeSet<u32>) -> SignedPermutation {
        let mut sp = SignedPermutation::identity(self.degree());
        for &a in block {
            sp.images[a as usize - 1] = self.image(a);
        }
        sp
    }

    /// An element of `I_u` built cycle by cycle; unsigned whenever `u` is.
    pub fn constructive_inverter(&self) -> SignedPermutation {
        constructive_inverter(&self.cycle_decomposition())
    }

    /// Generators of the centralizer of `self` in the ambient group.
    pub fn centralizer_generators(&self, ambient: Ambient) -> Vec<SignedPermutation> {
        let n = self.degree();
        let cycles = self.cycle_decomposition().with_fixed_points();
        let mut gens = Vec::new();
        for c in &cycles {
            if c.len() > 1 {
                gens.push(c.to_permutation(n));
            }
            if ambient != Ambient::A {
                gens.push(c.sign_flip(n));
            }
        }
        // Swaps between consecutive cycles of the same length and sign type.
        let mut classes: HashMap<(usize, bool), Vec<&SignedCycle>> = HashMap::new();
        for c in &cycles {
            classes.entry((c.len(), c.is_negative_type())).or_default().push(c);
        }
        let mut keys: Vec<_> = classes.keys().copied().collect();
        keys.sort();
        for key in keys {
            for pair in classes[&key].windows(2) {
                gens.push(swap(pair[0], pair[1], n));
            }
        }
        let mut gens: Vec<SignedPermutation> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        if ambient == Ambient::D {
            gens = positive_subgroup_generators(&gens);
        }
        gens.sort();
        gens.dedup();
        gens
    }

    /// All elements of the centralizer in the ambient group, sorted.
    pub fn centralizer_elements(&self, ambient: Ambient, guard: usize) -> Result<Vec<SignedPermutation>> {
        closure(&self.centralizer_generators(ambient), self.degree(), guard)
    }

    /// `tau^+_{g,a}` for a cycle `g` of `self` through `a`: an involution
    /// inverting `g`, supported on `g`, with `(+a)` as a cycle.
    pub fn tau_plus(cycle: &SignedCycle, a: u32, n: usize) -> Option<SignedPermutation> {
        let k = cycle.points.iter().position(|&p| p == a)?;
        Some(cycle.rotated(k).reversal(n))
    }

    /// `tau^-_{g,a} = z tau^+_{g,a}`, which has `(-a)` as a cycle.
    pub fn tau_minus(cycle: &SignedCycle, a: u32, n: usize) -> Option<SignedPermutation> {
        Some(cycle.sign_flip(n).compose(&Self::tau_plus(cycle, a, n)?))
    }
}

/// Product of the per-cycle reversals.
pub fn constructive_inverter(cd: &CycleDecomposition) -> SignedPermutation {
    let mut x = SignedPermutation::identity(cd.degree);
    for c in &cd.cycles {
        x = x.compose(&c.reversal(cd.degree));
    }
    x
}

/// `h`: `a_i <-> s_i b_i` commuting with `g h`-conjugation, for cycles of
/// equal length and sign type.
fn swap(g: &SignedCycle, h: &SignedCycle, n: usize) -> SignedPermutation {
    let m = g.len();
    let mut sp = SignedPermutation::identity(n);
    let mut s = 1i32;
    for i in 0..m {
        let (a, b) = (g.points[i], h.points[i]);
        sp.images[a as usize - 1] = s * b as i32;
        sp.images[b as usize - 1] = s * a as i32;
        s *= g.signs[i] as i32 * h.signs[i] as i32;
    }
    sp
}

/// Schreier generators for the positive elements of `<gens>`, with coset
/// representatives `{1, t}` for a negative generator `t`.
fn positive_subgroup_generators(gens: &[SignedPermutation]) -> Vec<SignedPermutation> {
    let Some(t) = gens.iter().find(|g| !g.is_positive()).cloned() else {
        return gens.to_vec();
    };
    let t_inv = t.inverse();
    let mut out = Vec::new();
    for g in gens {
        if g.is_positive() {
            out.push(g.clone());
            out.push(t.compose(g).compose(&t_inv));
        } else {
            out.push(g.compose(&t_inv));
            out.push(t.compose(g));
        }
    }
    out.into_iter().filter(|g| !g.is_identity()).collect()
}

/// Closure of a generating set, sorted. Refuses past `guard` elements.
pub fn closure(gens: &[SignedPermutation], n: usize, guard: usize) -> Result<Vec<SignedPermutation>> {
    let id = SignedPermutation::identity(n);
    let mut seen: HashSet<SignedPermutation> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(u) = frontier.pop() {
        for g in gens {
            let v = u.compose(g);
            if seen.insert(v.clone()) {
                if seen.len() > guard {
                    return Err(CoxeterError::GuardExceeded { order: seen.len() as u128, guard: guard as u128 });
                }
                frontier.push(v);
            }
        }
    }
    let mut all: Vec<_> = seen.into_iter().collect();
    all.sort();
    Ok(all)
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cd = self.cycle_decomposition();
        if cd.cycles.is_empty() {
            return f.write_str("(+1)");
        }
        for c in &cd.cycles {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Bridge between signed permutations and root permutations of a single
/// A, B or D root system.
#[derive(Debug, Clone)]
pub struct PermutationModel {
    ambient: Ambient,
    degree: usize,
    /// Integer coordinates of each positive root.
    coords: Vec<Vec<i64>>,
    lookup: HashMap<Vec<i64>, SignedRoot>,
}

impl PermutationModel {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        let desc = rs.descriptor().ok_or_else(|| CoxeterError::NoPermutationModel(rs.name()))?;
        let ambient = Ambient::of_family(desc.family).ok_or_else(|| CoxeterError::NoPermutationModel(rs.name()))?;
        let Realization::Exact(emb) = rs.realization() else {
            return Err(CoxeterError::NoPermutationModel(rs.name()));
        };
        let integral = |x: &Rational64| -> Result<i64> {
            if x.is_integer() {
                Ok(*x.numer())
            } else {
                Err(CoxeterError::NoPermutationModel(rs.name()))
            }
        };
        let coords: Vec<Vec<i64>> =
            emb.roots.iter().map(|v| v.iter().map(integral).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
        let mut lookup = HashMap::new();
        for (i, v) in coords.iter().enumerate() {
            lookup.insert(v.clone(), SignedRoot::positive(i));
            lookup.insert(v.iter().map(|x| -x).collect(), SignedRoot::negative(i));
        }
        Ok(PermutationModel { ambient, degree: emb.ambient_dim, coords, lookup })
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn parse(&self, text: &str) -> Result<SignedPermutation> {
        SignedPermutation::parse(text, self.degree)
    }

    fn check(&self, sp: &SignedPermutation) -> Result<()> {
        if sp.degree() != self.degree {
            return Err(CoxeterError::DegreeMismatch { element: sp.degree(), model: self.degree });
        }
        if !self.ambient.contains(sp) {
            return Err(CoxeterError::NotInAmbient {
                ambient: format!("{}{}", self.ambient, self.degree),
                element: sp.to_string(),
            });
        }
        Ok(())
    }

    fn image_of(&self, v: &[i64], sp: &SignedPermutation) -> Option<SignedRoot> {
        let mut u = vec![0; self.degree];
        for (k, &x) in v.iter().enumerate() {
            if x != 0 {
                let b = sp.images[k];
                u[b.unsigned_abs() as usize - 1] = b.signum() as i64 * x;
            }
        }
        self.lookup.get(&u).copied()
    }

    pub fn to_root_perm(&self, sp: &SignedPermutation) -> Result<GroupElement> {
        self.check(sp)?;
        let images = self
            .coords
            .iter()
            .map(|v| self.image_of(v, sp).ok_or(CoxeterError::NotSignedPermutation))
            .collect::<Result<Vec<_>>>()?;
        GroupElement::from_images(images)
    }

    /// Recovers `e_a · w` from the images of the roots through `e_a`.
    pub fn from_root_perm(&self, w: &GroupElement) -> Result<SignedPermutation> {
        if w.num_positive() != self.coords.len() {
            return Err(CoxeterError::MismatchedRootSystems { left: w.num_positive(), right: self.coords.len() });
        }
        let n = self.degree;
        let mut images = Vec::with_capacity(n);
        for a in 0..n {
            // Sum of c_a(v) v over the roots v = c_a e_a ± e_j. Its image is
            // (n-1) e_{aw} - sum_{k != aw} e_k for A, 2(n-1) e_{aw} for B, D.
            let mut acc = vec![0i64; n];
            let mut count = 0i64;
            for (i, v) in self.coords.iter().enumerate() {
                if v[a] == 0 || v.iter().filter(|&&x| x != 0).count() != 2 {
                    continue;
                }
                let s = w.images()[i];
                let sign = if s.is_negative() { -v[a] } else { v[a] };
                for (k, x) in self.coords[s.index()].iter().enumerate() {
                    acc[k] += sign * x;
                }
                count += 1;
            }
            let target = match self.ambient {
                Ambient::A => {
                    let (k, _) = acc.iter().enumerate().max_by_key(|(_, &x)| x).expect("degree >= 2");
                    k as i32 + 1
                }
                _ => {
                    let (k, &x) =
                        acc.iter().enumerate().find(|(_, &x)| x != 0).ok_or(CoxeterError::NotSignedPermutation)?;
                    if x.abs() != count {
                        return Err(CoxeterError::NotSignedPermutation);
                    }
                    x.signum() as i32 * (k as i32 + 1)
                }
            };
            images.push(target);
        }
        let sp = SignedPermutation::from_images(images).map_err(|_| CoxeterError::NotSignedPermutation)?;
        if &self.to_root_perm(&sp)? != w {
            return Err(CoxeterError::NotSignedPermutation);
        }
        Ok(sp)
    }
}
