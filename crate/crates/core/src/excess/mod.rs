//! Inverting involutions, excess and reflection excess.
//!
//! For `w` in `W`, `I_w` is the set of involutions `x` (identity included
//! when `w^2 = 1`) with `x w x = w^-1`. Every factorization `w = x y` into
//! involutions has `x` in `I_w` and `y = x w`, so minima are taken over
//! `I_w` alone.

mod structure;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bitset::InversionSet;
use crate::error::{CoxeterError, Result};
use crate::roots::{EnumeratedGroup, GroupElement, ParabolicContext, RootSystem};
use crate::signed::{Ambient, PermutationModel, SignedPermutation, CENTRALIZER_GUARD};

pub use structure::{
    dn_condition_check, maximal_splits, overlap_check, spartan_support_check, swapcycle_check, DnCondition, Split,
};

/// How an [`InvolutionSet`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InvolutionSource {
    Exhaustive,
    StructuredCoset,
}

/// A set of involutions, sorted by root permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionSet {
    pub elements: Vec<GroupElement>,
    pub source: InvolutionSource,
    /// Size of the candidate set the members were filtered from.
    pub candidates: usize,
}

impl InvolutionSet {
    fn new(mut elements: Vec<GroupElement>, source: InvolutionSource, candidates: usize) -> Self {
        elements.sort();
        elements.dedup();
        InvolutionSet { elements, source, candidates }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    fn filtered(&self, keep: impl Fn(&GroupElement) -> bool) -> Self {
        InvolutionSet {
            elements: self.elements.iter().filter(|x| keep(x)).cloned().collect(),
            source: self.source,
            candidates: self.candidates,
        }
    }
}

/// `w = x y` with `x^2 = y^2 = 1`; `defect = l(x) + l(y) - l(w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpartanPair {
    pub x: GroupElement,
    pub y: GroupElement,
    pub defect: usize,
}

/// A minimum of `l(x) + l(xw) - l(w)` with every minimizing pair, sorted
/// by `(l(x), x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minimum {
    pub value: usize,
    pub witnesses: Vec<SpartanPair>,
}

/// `x^2 = 1` and `x w x = w^-1`.
pub fn is_inverting_involution(x: &GroupElement, w: &GroupElement, w_inv: &GroupElement) -> bool {
    x.is_involution() && &x.compose(w).compose(x) == w_inv
}

/// `I_w` by filtering an enumerated group.
pub fn inverting_involutions(w: &GroupElement, group: &EnumeratedGroup) -> InvolutionSet {
    let w_inv = w.inverse();
    let members = group.elements().iter().filter(|x| is_inverting_involution(x, w, &w_inv)).cloned().collect();
    InvolutionSet::new(members, InvolutionSource::Exhaustive, group.len())
}

/// `I_w` from a list of the group's involutions.
pub fn inverting_involutions_among<'a>(
    w: &GroupElement,
    involutions: impl IntoIterator<Item = &'a GroupElement>,
) -> InvolutionSet {
    let w_inv = w.inverse();
    let mut candidates = 0;
    let members = involutions
        .into_iter()
        .inspect(|_| candidates += 1)
        .filter(|x| x.compose(w).compose(x) == w_inv)
        .cloned()
        .collect();
    InvolutionSet::new(members, InvolutionSource::Exhaustive, candidates)
}

/// `I_w` as the involutions in the coset `C(w) x_0`, where `x_0` is a
/// constructive inverter and `C(w)` the centralizer. In type D the coset is
/// taken in `B_n` and filtered to positive elements.
pub fn inverting_involutions_structured(model: &PermutationModel, sp: &SignedPermutation) -> Result<InvolutionSet> {
    let x0 = sp.constructive_inverter();
    let (ambient, keep_positive) = match model.ambient() {
        Ambient::A => (Ambient::A, false),
        Ambient::B => (Ambient::B, false),
        Ambient::D => (Ambient::B, true),
    };
    let centralizer = sp.centralizer_elements(ambient, CENTRALIZER_GUARD)?;
    let sp_inv = sp.inverse();
    let mut members = Vec::new();
    for c in &centralizer {
        let x = c.compose(&x0);
        if keep_positive && !x.is_positive() {
            continue;
        }
        if x.is_involution() {
            debug_assert_eq!(sp.conjugate_by(&x), sp_inv);
            members.push(model.to_root_perm(&x)?);
        }
    }
    Ok(InvolutionSet::new(members, InvolutionSource::StructuredCoset, centralizer.len()))
}

/// Fixed-space handle for `w`.
pub fn fixed_basis(rs: &RootSystem, w: &GroupElement) -> crate::roots::FixedBasis {
    rs.fixed_coefficients(w)
}

/// `J_w`: members of `I_w` fixing `V_1(w)` pointwise.
pub fn j_set(rs: &RootSystem, w: &GroupElement, iw: &InvolutionSet) -> InvolutionSet {
    let basis = rs.fixed_coefficients(w);
    iw.filtered(|x| rs.fixes(x, &basis))
}

/// Members `x` of `I_w` with `L(w) = L(x) + L(xw)`.
pub fn j_set_by_reflection_length(rs: &RootSystem, w: &GroupElement, iw: &InvolutionSet) -> InvolutionSet {
    let lw = rs.reflection_length(w);
    iw.filtered(|x| rs.reflection_length(x) + rs.reflection_length(&x.compose(w)) == lw)
}

fn minimum<'a>(w: &GroupElement, xs: impl IntoIterator<Item = &'a GroupElement>) -> Result<Minimum> {
    let lw = w.length();
    let mut best: Option<usize> = None;
    let mut witnesses = Vec::new();
    for x in xs {
        let y = x.compose(w);
        let defect = x.length() + y.length() - lw;
        match best {
            Some(b) if defect > b => continue,
            Some(b) if defect == b => {}
            _ => {
                best = Some(defect);
                witnesses.clear();
            }
        }
        witnesses.push(SpartanPair { x: x.clone(), y, defect });
    }
    let value = best.ok_or(CoxeterError::EmptyInvolutionSet)?;
    witnesses.sort_by(|a, b| (a.x.length(), &a.x).cmp(&(b.x.length(), &b.x)));
    Ok(Minimum { value, witnesses })
}

/// `e(w)`, with all spartan pairs.
pub fn excess(w: &GroupElement, iw: &InvolutionSet) -> Result<Minimum> {
    minimum(w, &iw.elements)
}

/// `E(w)`, given `J_w`.
pub fn reflection_excess(w: &GroupElement, jw: &InvolutionSet) -> Result<Minimum> {
    minimum(w, &jw.elements)
}

/// `e_J(w)`: the minimum over `I_w` restricted to `W_J`.
pub fn parabolic_excess(w: &GroupElement, ctx: &ParabolicContext, iw: &InvolutionSet) -> Result<Minimum> {
    ctx.require(w)?;
    minimum(w, iw.elements.iter().filter(|x| ctx.contains(x)))
}

/// `E_J(w)`: the minimum over `J_w` restricted to `W_J`. Reflection length
/// in `W_J` agrees with that in `W`, so `J_w` restricts directly.
pub fn parabolic_reflection_excess(w: &GroupElement, ctx: &ParabolicContext, jw: &InvolutionSet) -> Result<Minimum> {
    parabolic_excess(w, ctx, jw)
}

/// `N(I_w)`.
pub fn n_of_inverting_set(rs: &RootSystem, iw: &InvolutionSet) -> InversionSet {
    rs.inversion_set_of_set(&iw.elements)
}

/// Excess restricted to one parabolic subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicExcess {
    /// 1-based generator indices.
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    #[serde(rename = "e_J")]
    pub e_j: usize,
    #[serde(rename = "E_J")]
    pub big_e_j: usize,
}

/// Everything known about one element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExcessReport {
    pub descriptor: String,
    pub element: String,
    pub length: usize,
    pub reflection_length: usize,
    pub excess: usize,
    pub reflection_excess: usize,
    pub parabolic: Vec<ParabolicExcess>,
    /// Spartan pairs `(x, y)` achieving `e(w)`.
    pub witnesses: Vec<[String; 2]>,
}

impl ExcessReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// A root system plus whatever makes `I_w` computable: an enumeration of
/// the group's involutions when `|W|` is within the guard, and the
/// signed-permutation model for A, B and D.
#[derive(Debug, Clone)]
pub struct ExcessEngine {
    rs: RootSystem,
    model: Option<PermutationModel>,
    involutions: Option<Vec<GroupElement>>,
}

impl ExcessEngine {
    pub fn new(rs: RootSystem, guard: u128) -> Result<Self> {
        let model = PermutationModel::new(&rs).ok();
        let involutions = match EnumeratedGroup::new(&rs, guard) {
            Ok(g) => Some(g.involutions().into_iter().map(|i| g.get(i).clone()).collect()),
            Err(CoxeterError::GuardExceeded { .. }) if model.is_some() => None,
            Err(e) => return Err(e),
        };
        Ok(ExcessEngine { rs, model, involutions })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn model(&self) -> Option<&PermutationModel> {
        self.model.as_ref()
    }

    /// The group's involutions, if it was enumerated.
    pub fn involutions(&self) -> Option<&[GroupElement]> {
        self.involutions.as_deref()
    }

    /// `I_w`, by filtering when enumerated, otherwise by the coset method.
    pub fn inverting_involutions(&self, w: &GroupElement) -> Result<InvolutionSet> {
        match (&self.involutions, &self.model) {
            (Some(inv), _) => Ok(inverting_involutions_among(w, inv)),
            (None, Some(model)) => inverting_involutions_structured(model, &model.from_root_perm(w)?),
            (None, None) => unreachable!("construction requires one of the two"),
        }
    }

    /// Parses an element: cycle notation for A/B/D, or a bracketed word
    /// of 1-based generators such as `[1 2 3]`.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let t = text.trim();
        if let Some(inner) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let word = parse_word(inner)?;
            return self.rs.element_from_word(&word);
        }
        match &self.model {
            Some(model) => model.to_root_perm(&model.parse(t)?),
            None => Err(CoxeterError::NoPermutationModel(self.rs.name())),
        }
    }

    /// Cycle notation when available, otherwise a reduced word.
    pub fn format_element(&self, w: &GroupElement) -> String {
        if let Some(sp) = self.model.as_ref().and_then(|m| m.from_root_perm(w).ok()) {
            return sp.to_string();
        }
        let word: Vec<String> = self.rs.reduced_word(w).iter().map(|r| (r + 1).to_string()).collect();
        format!("[{}]", word.join(" "))
    }

    /// Full report; `parabolics` holds 0-based generator sets.
    pub fn report(&self, w: &GroupElement, parabolics: &[Vec<usize>]) -> Result<ExcessReport> {
        let iw = self.inverting_involutions(w)?;
        let jw = j_set(&self.rs, w, &iw);
        let e = excess(w, &iw)?;
        let big_e = reflection_excess(w, &jw)?;
        let mut parabolic = Vec::new();
        for j in parabolics {
            let ctx = self.rs.parabolic_context(j)?;
            let j_sorted: BTreeSet<usize> = j.iter().copied().collect();
            parabolic.push(ParabolicExcess {
                j: j_sorted.iter().map(|r| r + 1).collect(),
                e_j: parabolic_excess(w, &ctx, &iw)?.value,
                big_e_j: parabolic_reflection_excess(w, &ctx, &jw)?.value,
            });
        }
        Ok(ExcessReport {
            descriptor: self.rs.name(),
            element: self.format_element(w),
            length: w.length(),
            reflection_length: self.rs.reflection_length(w),
            excess: e.value,
            reflection_excess: big_e.value,
            parabolic,
            witnesses: e.witnesses.iter().map(|p| [self.format_element(&p.x), self.format_element(&p.y)]).collect(),
        })
    }
}

/// Parses a whitespace- or comma-separated list of 1-based generator
/// indices into 0-based ones.
pub fn parse_word(text: &str) -> Result<Vec<usize>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| match s.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k - 1),
            _ => Err(CoxeterError::Parse { position: 0, message: format!("bad generator index {s:?}") }),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptor::{CoxeterDescriptor, Family};
    use crate::roots::DEFAULT_GUARD;

    fn sym5() -> (RootSystem, PermutationModel, EnumeratedGroup) {
        let rs = RootSystem::build(CoxeterDescriptor::a(4)).unwrap();
        let model = PermutationModel::new(&rs).unwrap();
        let g = EnumeratedGroup::new(&rs, DEFAULT_GUARD).unwrap();
        (rs, model, g)
    }

    fn el(model: &PermutationModel, text: &str) -> GroupElement {
        model.to_root_perm(&model.parse(text).unwrap()).unwrap()
    }

    #[test]
    fn sym5_inverting_set() {
        let (_, model, g) = sym5();
        let w = el(&model, "(+2 +3 +5)");
        let iw = inverting_involutions(&w, &g);
        let mut got: Vec<String> = iw.elements.iter().map(|x| model.from_root_perm(x).unwrap().to_string()).collect();
        got.sort();
        let mut want = vec!["(+2 +3)", "(+3 +5)", "(+2 +5)", "(+1 +4)(+2 +3)", "(+1 +4)(+3 +5)", "(+1 +4)(+2 +5)"];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn reflection_and_identity_sets() {
        let (rs, _, g) = sym5();
        let r = rs.generator(2).unwrap().clone();
        let iw = inverting_involutions(&r, &g);
        assert!(iw.contains(&r) && iw.contains(&rs.identity()));
        let all = inverting_involutions(&rs.identity(), &g);
        assert_eq!(all.len(), g.involutions().len());
        // 1 + 10 + 15 involutions in Sym(5).
        assert_eq!(all.len(), 26);
    }

    #[test]
    fn excess_of_235() {
        let (rs, model, g) = sym5();
        let w = el(&model, "(+2 +3 +5)");
        let iw = inverting_involutions(&w, &g);
        let e = excess(&w, &iw).unwrap();
        assert_eq!(e.value, 0);
        let pair = SpartanPair { x: el(&model, "(+3 +5)"), y: el(&model, "(+2 +3)"), defect: 0 };
        assert!(e.witnesses.contains(&pair));
        let jw = j_set(&rs, &w, &iw);
        let mut js: Vec<String> = jw.elements.iter().map(|x| model.from_root_perm(x).unwrap().to_string()).collect();
        js.sort();
        assert_eq!(js, ["(+2 +3)", "(+2 +5)", "(+3 +5)"]);
        assert_eq!(reflection_excess(&w, &jw).unwrap().value, 0);
        assert_eq!(jw, j_set_by_reflection_length(&rs, &w, &iw));
    }

    #[test]
    fn identity_j_set_is_trivial() {
        let (rs, _, g) = sym5();
        let id = rs.identity();
        let jw = j_set(&rs, &id, &inverting_involutions(&id, &g));
        assert_eq!(jw.elements, vec![id]);
    }

    #[test]
    fn involutions_have_zero_excess() {
        let rs = RootSystem::build(CoxeterDescriptor::b(3)).unwrap();
        let g = EnumeratedGroup::new(&rs, DEFAULT_GUARD).unwrap();
        for i in g.involutions() {
            let w = g.get(i);
            let iw = inverting_involutions(w, &g);
            assert_eq!(excess(w, &iw).unwrap().value, 0);
            assert_eq!(reflection_excess(w, &j_set(&rs, w, &iw)).unwrap().value, 0);
        }
    }

    #[test]
    fn parabolic_requires_membership() {
        let (rs, model, g) = sym5();
        let w = el(&model, "(+2 +3 +5)");
        let iw = inverting_involutions(&w, &g);
        let ctx = rs.parabolic_context(&[0, 1]).unwrap();
        assert!(matches!(parabolic_excess(&w, &ctx, &iw), Err(CoxeterError::NotInParabolic(_))));
        let full = rs.parabolic_context(&[0, 1, 2, 3]).unwrap();
        assert_eq!(parabolic_excess(&w, &full, &iw).unwrap(), excess(&w, &iw).unwrap());
    }

    #[test]
    fn structured_matches_exhaustive_on_b3() {
        let rs = RootSystem::build(CoxeterDescriptor::b(3)).unwrap();
        let model = PermutationModel::new(&rs).unwrap();
        let g = EnumeratedGroup::new(&rs, DEFAULT_GUARD).unwrap();
        for w in g.elements() {
            let a = inverting_involutions(w, &g);
            let b = inverting_involutions_structured(&model, &model.from_root_perm(w).unwrap()).unwrap();
            assert_eq!(a.elements, b.elements);
        }
    }

    #[test]
    fn engine_reports() {
        let rs = RootSystem::build(CoxeterDescriptor::a(4)).unwrap();
        let engine = ExcessEngine::new(rs, DEFAULT_GUARD).unwrap();
        let w = engine.parse_element("(+2 +3 +5)").unwrap();
        let report = engine.report(&w, &[vec![1, 2, 3]]).unwrap();
        assert_eq!(report.length, 4);
        assert_eq!(report.reflection_length, 2);
        assert_eq!((report.excess, report.reflection_excess), (0, 0));
        assert_eq!(report.parabolic[0].j, [2, 3, 4]);
        let json = report.to_json();
        assert!(json.contains("\"J\""));
        let back: ExcessReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn engine_words_for_exceptional_types() {
        let rs = RootSystem::build(CoxeterDescriptor::exceptional(Family::H3)).unwrap();
        let engine = ExcessEngine::new(rs, DEFAULT_GUARD).unwrap();
        let w = engine.parse_element("[1 2 3]").unwrap();
        assert_eq!(w.length(), 3);
        assert_eq!(engine.format_element(&w), "[1 2 3]");
        assert!(engine.parse_element("(+1 +2)").is_err());
        assert!(engine.parse_element("[4]").is_err());
    }
}
