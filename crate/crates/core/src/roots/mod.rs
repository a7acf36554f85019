//! Root systems of finite Coxeter groups and elements acting on them.
//!
//! A [`RootSystem`] is built once per Coxeter type and is immutable
//! afterwards. Group elements are root permutations ([`GroupElement`]), so
//! products, inverses, inversion sets and lengths are all integer table
//! lookups. The coordinate realization is kept only for fixed-space
//! computations and for display.

mod document;
mod element;
mod enumerate;
mod parabolic;
pub mod realization;

use std::collections::{BTreeSet, HashSet};
use std::ops::Range;

use num_rational::Rational64;

pub use document::{RootSystemDocument, ROOT_SYSTEM_SCHEMA};
pub use element::{GroupElement, SignedRoot};
pub use enumerate::{default_guard, enumerate_parabolic, EnumeratedGroup, DEFAULT_GUARD, GUARD_ENV};
pub use parabolic::ParabolicContext;
pub use realization::{Embedding, SimpleSystem};

use crate::bitset::InversionSet;
use crate::descriptor::{format_components, CoxeterDescriptor};
use crate::error::{CoxeterError, Result};
use crate::scalar::Scalar;
use crate::{ExactEmbedding, RealEmbedding};

/// Coordinates of a root system: exact for crystallographic types, `f64`
/// otherwise.
#[derive(Debug, Clone)]
pub enum Realization {
    Exact(ExactEmbedding),
    Real(RealEmbedding),
}

impl From<Embedding<Rational64>> for Realization {
    fn from(e: Embedding<Rational64>) -> Self {
        Realization::Exact(e)
    }
}

impl From<Embedding<f64>> for Realization {
    fn from(e: Embedding<f64>) -> Self {
        Realization::Real(e)
    }
}

macro_rules! with_embedding {
    ($real:expr, $e:ident => $body:expr) => {
        match $real {
            Realization::Exact($e) => $body,
            Realization::Real($e) => $body,
        }
    };
}

/// A basis of a fixed space `V_1(w)`, in the coordinates of the realization.
#[derive(Debug, Clone, PartialEq)]
pub enum FixedBasis {
    Exact(Vec<Vec<Rational64>>),
    Real(Vec<Vec<f64>>),
}

impl FixedBasis {
    pub fn dim(&self) -> usize {
        match self {
            FixedBasis::Exact(b) => b.len(),
            FixedBasis::Real(b) => b.len(),
        }
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        match self {
            FixedBasis::Exact(b) => {
                b.iter().map(|v| v.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()).collect()
            }
            FixedBasis::Real(b) => b.clone(),
        }
    }
}

/// Indexed positive roots plus per-generator root tables.
#[derive(Debug, Clone)]
pub struct RootSystem {
    components: Vec<CoxeterDescriptor>,
    generator_ranges: Vec<Range<usize>>,
    realization: Realization,
    generators: Vec<GroupElement>,
}

impl RootSystem {
    /// Root system of an irreducible type.
    pub fn build(descriptor: CoxeterDescriptor) -> Result<Self> {
        Self::product(&[descriptor])
    }

    /// Root system of a product of irreducible types, with generators
    /// numbered component by component.
    pub fn product(components: &[CoxeterDescriptor]) -> Result<Self> {
        if components.is_empty() {
            return Err(CoxeterError::InvalidDescriptor("no components".into()));
        }
        if components.iter().all(|c| c.family.is_crystallographic()) {
            let sys = SimpleSystem::<Rational64>::for_components(components)?;
            Self::from_embedding(components, Embedding::close(&sys)?)
        } else {
            let sys = SimpleSystem::<f64>::for_components(components)?;
            Self::from_embedding(components, Embedding::close(&sys)?)
        }
    }

    /// Wraps a closed embedding, checking it against the descriptors.
    pub fn from_embedding<T: Scalar>(components: &[CoxeterDescriptor], emb: Embedding<T>) -> Result<Self>
    where
        Realization: From<Embedding<T>>,
    {
        let expected: usize = components.iter().map(CoxeterDescriptor::reflection_count).sum();
        if emb.roots.len() != expected {
            return Err(CoxeterError::Closure(format!(
                "{} has {expected} reflections but closure produced {} positive roots",
                format_components(components),
                emb.roots.len()
            )));
        }
        let rank: usize = components.iter().map(|c| c.rank).sum();
        if emb.rank() != rank {
            return Err(CoxeterError::Closure("rank mismatch".into()));
        }
        let generators: Vec<GroupElement> =
            emb.tables.iter().map(|t| GroupElement::from_images_unchecked(t.clone())).collect();
        for (r, g) in generators.iter().enumerate() {
            let negated: Vec<usize> =
                g.images().iter().enumerate().filter(|(_, s)| s.is_negative()).map(|(i, _)| i).collect();
            if negated != [emb.simple_indices[r]] {
                return Err(CoxeterError::Closure(format!(
                    "generator {r} negates {negated:?}, expected only its simple root"
                )));
            }
            if g.images()[emb.simple_indices[r]] != SignedRoot::negative(emb.simple_indices[r]) {
                return Err(CoxeterError::Closure(format!(
                    "generator {r} does not send its simple root to its negative"
                )));
            }
        }
        // Coxeter relations (r s)^{m_rs} = 1 with exact order m_rs.
        let mut offset = 0;
        let mut generator_ranges = Vec::new();
        for c in components {
            for i in 0..c.rank {
                for j in 0..c.rank {
                    let m = c.coxeter_entry(i, j) as usize;
                    let rs = generators[offset + i].compose(&generators[offset + j]);
                    let mut p = rs.clone();
                    let mut order = 1;
                    while !p.is_identity() && order <= m {
                        p = p.compose(&rs);
                        order += 1;
                    }
                    if order != m {
                        return Err(CoxeterError::Closure(format!(
                            "order of r{}r{} is {order}, expected {m}",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
            generator_ranges.push(offset..offset + c.rank);
            offset += c.rank;
        }
        Ok(RootSystem { components: components.to_vec(), generator_ranges, realization: emb.into(), generators })
    }

    pub fn components(&self) -> &[CoxeterDescriptor] {
        &self.components
    }

    /// The irreducible descriptor, if there is exactly one component.
    pub fn descriptor(&self) -> Option<CoxeterDescriptor> {
        match self.components.as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn is_irreducible(&self) -> bool {
        self.components.len() == 1
    }

    /// Descriptor text such as `B3` or `A2xA1`.
    pub fn name(&self) -> String {
        format_components(&self.components)
    }

    /// Generator index ranges of the irreducible components.
    pub fn component_generators(&self) -> &[Range<usize>] {
        &self.generator_ranges
    }

    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    pub fn num_positive(&self) -> usize {
        self.generators[0].num_positive()
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// `|W|`, saturating.
    pub fn group_order(&self) -> u128 {
        self.components.iter().map(CoxeterDescriptor::group_order).fold(1u128, |acc, o| acc.saturating_mul(o))
    }

    pub fn simple_indices(&self) -> &[usize] {
        with_embedding!(&self.realization, e => &e.simple_indices)
    }

    pub fn simple_root(&self, r: usize) -> SignedRoot {
        SignedRoot::positive(self.simple_indices()[r])
    }

    /// Matrix of `<alpha_r, alpha_s>` as floats.
    pub fn bilinear_form(&self) -> Vec<Vec<f64>> {
        with_embedding!(&self.realization, e => {
            let simple: Vec<_> = e.simple_indices.iter().map(|&i| e.roots[i].clone()).collect();
            let sys = SimpleSystem { ambient_dim: e.ambient_dim, simple: simple.clone(), gram: e.gram.clone() };
            simple.iter().map(|a| simple.iter().map(|b| sys.form(a, b).to_f64().unwrap_or(f64::NAN)).collect()).collect()
        })
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.num_positive())
    }

    pub fn generator(&self, r: usize) -> Result<&GroupElement> {
        self.generators.get(r).ok_or(CoxeterError::GeneratorOutOfRange { index: r, rank: self.rank() })
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// Product `r_{i1} r_{i2} ... r_{ik}` of 0-based generator indices.
    pub fn element_from_word(&self, word: &[usize]) -> Result<GroupElement> {
        let mut w = self.identity();
        for &r in word {
            w = w.compose(self.generator(r)?);
        }
        Ok(w)
    }

    pub fn act(&self, root: SignedRoot, w: &GroupElement) -> SignedRoot {
        w.act(root)
    }

    /// `N(w)`: positive roots sent negative by `w`.
    pub fn inversion_set(&self, w: &GroupElement) -> InversionSet {
        InversionSet::from_indices(
            self.num_positive(),
            w.images().iter().enumerate().filter(|(_, s)| s.is_negative()).map(|(i, _)| i),
        )
    }

    /// `N(X)`: union of the inversion sets of the members of `X`.
    pub fn inversion_set_of_set<'a>(&self, xs: impl IntoIterator<Item = &'a GroupElement>) -> InversionSet {
        let mut acc = InversionSet::empty(self.num_positive());
        for x in xs {
            acc.union_with(&self.inversion_set(x));
        }
        acc
    }

    pub fn length(&self, w: &GroupElement) -> usize {
        w.length()
    }

    /// A reduced word (0-based generators), found by stripping left descents:
    /// `l(r w) < l(w)` exactly when `alpha_r` lies in `N(w)`.
    pub fn reduced_word(&self, w: &GroupElement) -> Vec<usize> {
        let mut word = Vec::with_capacity(w.length());
        let mut cur = w.clone();
        while !cur.is_identity() {
            let r = (0..self.rank())
                .find(|&r| cur.act(self.simple_root(r)).is_negative())
                .expect("non-identity element has a left descent");
            cur = self.generators[r].compose(&cur);
            word.push(r);
        }
        word
    }

    /// The longest element `w_0`.
    pub fn longest_element(&self) -> GroupElement {
        let mut w = self.identity();
        'grow: loop {
            for g in &self.generators {
                let next = w.compose(g);
                if next.length() > w.length() {
                    w = next;
                    continue 'grow;
                }
            }
            return w;
        }
    }

    /// `W` has a non-trivial centre generated by `w_0 = -1`.
    pub fn longest_is_central(&self) -> bool {
        self.longest_element().is_minus_identity()
    }

    /// All reflections, as the conjugacy closure of the generators, in
    /// positive-root order (`reflections()[i]` negates exactly root `i`
    /// among the roots it sends to their own negatives).
    pub fn reflections(&self) -> Vec<GroupElement> {
        let mut seen: HashSet<GroupElement> = self.generators.iter().cloned().collect();
        let mut frontier: Vec<GroupElement> = self.generators.clone();
        while let Some(t) = frontier.pop() {
            for g in &self.generators {
                let c = g.compose(&t).compose(g);
                if seen.insert(c.clone()) {
                    frontier.push(c);
                }
            }
        }
        let mut by_root: Vec<Option<GroupElement>> = vec![None; self.num_positive()];
        for t in seen {
            let root = (0..self.num_positive())
                .find(|&i| t.images()[i] == SignedRoot::negative(i))
                .expect("a reflection negates its root");
            by_root[root] = Some(t);
        }
        by_root.into_iter().map(|t| t.expect("one reflection per positive root")).collect()
    }

    fn simple_images(&self, w: &GroupElement) -> Vec<SignedRoot> {
        self.simple_indices().iter().map(|&i| w.images()[i]).collect()
    }

    /// Basis of `V_1(w)` in simple-root coefficients.
    pub fn fixed_coefficients(&self, w: &GroupElement) -> FixedBasis {
        let imgs = self.simple_images(w);
        match &self.realization {
            Realization::Exact(e) => FixedBasis::Exact(e.fixed_coefficient_basis(&e.matrix(&imgs))),
            Realization::Real(e) => FixedBasis::Real(e.fixed_coefficient_basis(&e.matrix(&imgs))),
        }
    }

    /// `dim V_1(w)` in the essential representation (the span of the roots).
    pub fn fixed_space_dim(&self, w: &GroupElement) -> usize {
        self.fixed_coefficients(w).dim()
    }

    /// Basis of `V_1(w)` inside the span of the roots, in ambient coordinates.
    pub fn fixed_space_basis(&self, w: &GroupElement) -> FixedBasis {
        match (self.fixed_coefficients(w), &self.realization) {
            (FixedBasis::Exact(b), Realization::Exact(e)) => {
                FixedBasis::Exact(b.iter().map(|c| e.to_ambient(c)).collect())
            }
            (FixedBasis::Real(b), Realization::Real(e)) => {
                FixedBasis::Real(b.iter().map(|c| e.to_ambient(c)).collect())
            }
            _ => unreachable!("basis follows the realization"),
        }
    }

    /// True when `x` fixes every vector of a coefficient basis.
    pub fn fixes(&self, x: &GroupElement, basis: &FixedBasis) -> bool {
        let imgs = self.simple_images(x);
        match (&self.realization, basis) {
            (Realization::Exact(e), FixedBasis::Exact(b)) => fixes_all(&e.matrix(&imgs), b),
            (Realization::Real(e), FixedBasis::Real(b)) => fixes_all(&e.matrix(&imgs), b),
            _ => panic!("fixed-space basis from a different realization"),
        }
    }

    /// Reflection length `L(w) = rank - dim V_1(w)`.
    pub fn reflection_length(&self, w: &GroupElement) -> usize {
        self.rank() - self.fixed_space_dim(w)
    }

    /// Cuspidal elements of an irreducible group fix no non-zero vector.
    pub fn is_cuspidal(&self, w: &GroupElement) -> Result<bool> {
        if !self.is_irreducible() {
            return Err(CoxeterError::Reducible(self.name()));
        }
        Ok(self.fixed_space_dim(w) == 0)
    }

    /// Indices of positive roots whose simple-root support lies in `J`.
    pub fn roots_supported_on(&self, generators: &BTreeSet<usize>) -> InversionSet {
        with_embedding!(&self.realization, e => InversionSet::from_indices(
            self.num_positive(),
            e.coefficients.iter().enumerate().filter(|(_, c)| {
                c.iter().enumerate().all(|(r, x)| generators.contains(&r) || x.is_negligible())
            }).map(|(i, _)| i),
        ))
    }

    pub fn parabolic_context(&self, generators: &[usize]) -> Result<ParabolicContext> {
        ParabolicContext::new(self, generators)
    }

    /// Human-readable form of a positive root, e.g. `e2-e5`.
    pub fn root_label(&self, index: usize) -> String {
        match &self.realization {
            Realization::Exact(e) => label_exact(&e.roots[index]),
            Realization::Real(e) => {
                let parts: Vec<String> = e.coefficients[index].iter().map(|x| format!("{:.4}", x + 0.0)).collect();
                format!("({})", parts.join(","))
            }
        }
    }

    /// Inverse of [`RootSystem::root_label`].
    pub fn root_by_label(&self, label: &str) -> Option<usize> {
        (0..self.num_positive()).find(|&i| self.root_label(i) == label)
    }

    pub fn to_document(&self) -> RootSystemDocument {
        RootSystemDocument::from_root_system(self)
    }

    pub fn from_document(doc: &RootSystemDocument) -> Result<Self> {
        doc.to_root_system()
    }
}

fn fixes_all<T: Scalar>(matrix: &[Vec<T>], basis: &[Vec<T>]) -> bool {
    basis.iter().all(|v| {
        (0..matrix.len()).all(|j| {
            let mut acc = T::zero();
            for (i, vi) in v.iter().enumerate() {
                if !vi.is_zero() {
                    acc = acc + vi.clone() * matrix[i][j].clone();
                }
            }
            acc.approx_eq(&v[j])
        })
    })
}

fn label_exact(v: &[Rational64]) -> String {
    let mut out = String::new();
    for (k, x) in v.iter().enumerate() {
        if *x.numer() == 0 {
            continue;
        }
        let mag = x.abs();
        if x.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if mag != Rational64::from_integer(1) {
            out.push_str(&mag.render());
        }
        out.push_str(&format!("e{}", k + 1));
    }
    out
}

use num_traits::{Signed, ToPrimitive};
