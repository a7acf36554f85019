//! Named checks as data: scope, hypothesis filter and conclusion.

use serde::{Deserialize, Serialize};

use super::tables::{Inverter, Parabolic, SweepTables};
use crate::descriptor::Family;
use crate::excess::{dn_condition_check, overlap_check, spartan_support_check, swapcycle_check, Split};
use crate::signed::Ambient;

/// What a check quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    Element,
    ElementInParabolic,
    ElementInSplit,
    SpartanPair,
    SpartanPairInSplit,
    ConjugacyClass,
}

/// Whether failures are bugs or documented gaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    Holds,
    /// Failures are recorded as gaps and do not count against the run.
    KnownCounterexamples,
}

/// One point of a sweep.
#[derive(Debug, Clone, Copy)]
pub struct Instance<'a> {
    pub tables: &'a SweepTables,
    pub w: usize,
    pub parabolic: Option<&'a Parabolic>,
    pub split: Option<&'a Split>,
    pub pair: Option<&'a Inverter>,
    pub class: Option<&'a [u32]>,
}

/// `Err((observed, expected))` on failure.
pub type Verdict = Result<(), (String, String)>;

/// A named statement with the data needed to check it exhaustively.
#[derive(Clone, Copy)]
pub struct Theorem {
    pub name: &'static str,
    pub statement: &'static str,
    pub scope: Scope,
    pub applies: fn(&SweepTables) -> bool,
    pub expectation: fn(&SweepTables) -> Expectation,
    pub hypothesis: fn(&Instance) -> bool,
    pub conclusion: fn(&Instance) -> Verdict,
}

impl std::fmt::Debug for Theorem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Theorem").field("name", &self.name).field("scope", &self.scope).finish()
    }
}

fn always(_: &SweepTables) -> bool {
    true
}

fn any(_: &Instance) -> bool {
    true
}

fn holds(_: &SweepTables) -> Expectation {
    Expectation::Holds
}

fn has_model(t: &SweepTables) -> bool {
    t.model.is_some()
}

fn family(t: &SweepTables) -> Option<Family> {
    t.rs.descriptor().map(|d| d.family)
}

fn eq<T: PartialEq + std::fmt::Display>(observed: T, expected: T) -> Verdict {
    if observed == expected {
        Ok(())
    } else {
        Err((observed.to_string(), expected.to_string()))
    }
}

fn check(ok: bool, observed: impl Into<String>, expected: &str) -> Verdict {
    if ok {
        Ok(())
    } else {
        Err((observed.into(), expected.to_string()))
    }
}

fn pair_label(i: &Instance) -> String {
    let p = i.pair.expect("pair scope");
    format!("x={} y={}", i.tables.label(p.x as usize), i.tables.label(p.y as usize))
}

fn parabolic_reflection_excess(i: &Instance) -> Verdict {
    let j = i.parabolic.expect("parabolic scope");
    eq(i.tables.parabolic_reflection_excess(i.w, j), i.tables.reflection_excess[i.w])
}

fn parabolic_excess(i: &Instance) -> Verdict {
    let j = i.parabolic.expect("parabolic scope");
    eq(i.tables.parabolic_excess(i.w, j), i.tables.excess[i.w])
}

fn parabolic_excess_expectation(t: &SweepTables) -> Expectation {
    if t.rs.components().iter().any(|c| c.family == Family::D) {
        Expectation::KnownCounterexamples
    } else {
        Expectation::Holds
    }
}

fn excess_below_parabolic(i: &Instance) -> Verdict {
    let j = i.parabolic.expect("parabolic scope");
    let ej = i.tables.parabolic_excess(i.w, j);
    let e = i.tables.excess[i.w];
    check(e <= ej, format!("e={e} e_J={ej}"), "e <= e_J")
}

fn is_d(t: &SweepTables) -> bool {
    family(t) == Some(Family::D)
}

fn dn_hypothesis(i: &Instance) -> bool {
    let split = i.split.expect("split scope");
    let sp = &i.tables.signed.as_ref().expect("model")[i.w];
    dn_condition_check(sp, split.m).holds()
}

fn split_excess(i: &Instance) -> Verdict {
    let split = i.split.expect("split scope");
    let j = Parabolic::new(&split.generators);
    eq(i.tables.parabolic_excess(i.w, &j), i.tables.excess[i.w])
}

fn nw_subset(i: &Instance) -> Verdict {
    let t = i.tables;
    let missing = t.inversions[i.w].difference(&t.n_of_inverting[i.w]);
    check(missing.is_empty(), format!("{} roots of N(w) missing", missing.len()), "N(w) inside N(I_w)")
}

fn full_niw(i: &Instance) -> Verdict {
    let n = &i.tables.n_of_inverting[i.w];
    check(n.is_full(), format!("|N(I_w)|={}", n.len()), "N(I_w) = all positive roots")
}

fn cuspidal(i: &Instance) -> bool {
    i.tables.rs.is_cuspidal(i.tables.element(i.w)).unwrap_or(false)
}

fn irreducible(t: &SweepTables) -> bool {
    t.rs.is_irreducible()
}

fn central_longest(t: &SweepTables) -> bool {
    t.rs.longest_is_central()
}

fn spartan_support(i: &Instance) -> Verdict {
    let t = i.tables;
    let p = i.pair.expect("pair scope");
    let s = t.signed.as_ref().expect("model");
    let ambient = t.model.as_ref().expect("model").ambient();
    let ok = spartan_support_check(&s[p.x as usize], &s[p.y as usize], &s[i.w], ambient);
    check(ok, pair_label(i), "support containment")
}

fn split_member(i: &Instance) -> bool {
    let split = i.split.expect("split scope");
    i.tables.in_parabolic(i.w, &Parabolic::new(&split.generators))
}

fn not_d(t: &SweepTables) -> bool {
    t.model.as_ref().is_some_and(|m| m.ambient() != Ambient::D)
}

fn overlap(i: &Instance) -> Verdict {
    let t = i.tables;
    let p = i.pair.expect("pair scope");
    let s = t.signed.as_ref().expect("model");
    let m = i.split.expect("split scope").m;
    let ok = overlap_check(&s[p.x as usize], &s[p.y as usize], m);
    check(ok, format!("{} m={m}", pair_label(i)), "no 2-cycle crosses m")
}

fn swap_cycle(i: &Instance) -> Verdict {
    let t = i.tables;
    let p = i.pair.expect("pair scope");
    let s = t.signed.as_ref().expect("model");
    check(swapcycle_check(&s[p.y as usize], &s[i.w]), pair_label(i), "swapped cycles ordered")
}

fn excess_parity(i: &Instance) -> Verdict {
    let t = i.tables;
    let (e, big_e) = (t.excess[i.w], t.reflection_excess[i.w]);
    let e_inv = t.excess[t.inverse[i.w] as usize];
    check(
        e % 2 == 0 && big_e % 2 == 0 && e <= big_e && e == e_inv,
        format!("e={e} E={big_e} e(w^-1)={e_inv}"),
        "e, E even; e <= E; e(w) = e(w^-1)",
    )
}

fn j_set_equivalence(i: &Instance) -> Verdict {
    let t = i.tables;
    let lw = t.reflection_length[i.w];
    let bad = t.inverting[i.w]
        .iter()
        .find(|p| p.in_j != (t.reflection_length[p.x as usize] + t.reflection_length[p.y as usize] == lw));
    match bad {
        None => Ok(()),
        Some(p) => Err((
            format!("x={} fixes={}", t.label(p.x as usize), p.in_j),
            "x fixes V_1(w) iff L(x) + L(y) = L(w)".into(),
        )),
    }
}

fn length_word(i: &Instance) -> Verdict {
    let t = i.tables;
    let w = t.element(i.w);
    let bfs = t.group.word(i.w);
    let reduced = t.rs.reduced_word(w);
    let rebuilt = t.rs.element_from_word(&reduced).ok();
    check(
        bfs.len() == w.length() && reduced.len() == w.length() && rebuilt.as_ref() == Some(w),
        format!("|N(w)|={} bfs={} reduced={}", w.length(), bfs.len(), reduced.len()),
        "|N(w)| = word length",
    )
}

fn conjugate_zero(i: &Instance) -> Verdict {
    let t = i.tables;
    let class = i.class.expect("class scope");
    check(
        class.iter().any(|&c| t.excess[c as usize] == 0),
        format!("class of size {} without e=0", class.len()),
        "some conjugate has excess 0",
    )
}

fn structured(i: &Instance) -> Verdict {
    let t = i.tables;
    let model = t.model.as_ref().expect("model");
    let sp = &t.signed.as_ref().expect("model")[i.w];
    let set = match crate::excess::inverting_involutions_structured(model, sp) {
        Ok(s) => s,
        Err(e) => return Err((e.to_string(), "structured I_w".into())),
    };
    let exhaustive = t.inverting[i.w].len();
    let all_found = t.inverting[i.w].iter().all(|p| set.contains(t.element(p.x as usize)));
    check(
        all_found && set.len() == exhaustive,
        format!("structured={} exhaustive={exhaustive}", set.len()),
        "structured I_w = exhaustive I_w",
    )
}

fn reflection_length(i: &Instance) -> Verdict {
    let t = i.tables;
    eq(t.reflection_length[i.w], t.reflection_distance[i.w])
}

/// All registered checks, in report order.
pub fn registry() -> Vec<Theorem> {
    vec![
        Theorem {
            name: "parabolic-reflection-excess",
            statement: "E_J(w) = E(w) for w in W_J",
            scope: Scope::ElementInParabolic,
            applies: always,
            expectation: holds,
            hypothesis: any,
            conclusion: parabolic_reflection_excess,
        },
        Theorem {
            name: "parabolic-excess",
            statement: "e_J(w) = e(w) for w in W_J (no D_n factor)",
            scope: Scope::ElementInParabolic,
            applies: always,
            expectation: parabolic_excess_expectation,
            hypothesis: any,
            conclusion: parabolic_excess,
        },
        Theorem {
            name: "dn-conditional",
            statement: "e_J(w) = e(w) for w in Sym(m) x D(n-m) when m = n, w_2 has a 1-cycle, or all w_2 cycles are even positive",
            scope: Scope::ElementInSplit,
            applies: is_d,
            expectation: holds,
            hypothesis: dn_hypothesis,
            conclusion: split_excess,
        },
        Theorem {
            name: "excess-below-parabolic",
            statement: "e(w) <= e_J(w) for w in W_J",
            scope: Scope::ElementInParabolic,
            applies: always,
            expectation: holds,
            hypothesis: any,
            conclusion: excess_below_parabolic,
        },
        Theorem {
            name: "nw-subset-niw",
            statement: "N(w) is contained in N(I_w)",
            scope: Scope::Element,
            applies: always,
            expectation: holds,
            hypothesis: any,
            conclusion: nw_subset,
        },
        Theorem {
            name: "cuspidal-full-niw",
            statement: "N(I_w) = all positive roots for cuspidal w",
            scope: Scope::Element,
            applies: irreducible,
            expectation: holds,
            hypothesis: cuspidal,
            conclusion: full_niw,
        },
        Theorem {
            name: "central-full-niw",
            statement: "N(I_w) = all positive roots when the longest element is -1",
            scope: Scope::Element,
            applies: central_longest,
            expectation: holds,
            hypothesis: any,
            conclusion: full_niw,
        },
        Theorem {
            name: "spartan-support",
            statement: "spartan pairs stay inside the positive support of w (D: one shared excess point)",
            scope: Scope::SpartanPair,
            applies: has_model,
            expectation: holds,
            hypothesis: any,
            conclusion: spartan_support,
        },
        Theorem {
            name: "overlap",
            statement: "for w in Sym(m) x W(n-m), no 2-cycle of a spartan pair crosses m",
            scope: Scope::SpartanPairInSplit,
            applies: not_d,
            expectation: holds,
            hypothesis: split_member,
            conclusion: overlap,
        },
        Theorem {
            name: "swap-cycle",
            statement: "if y swaps a positive w-cycle C1 with C2 inverted, then max C1 > min C2",
            scope: Scope::SpartanPair,
            applies: has_model,
            expectation: holds,
            hypothesis: any,
            conclusion: swap_cycle,
        },
        Theorem {
            name: "excess-parity",
            statement: "e and E are even, e <= E, e(w) = e(w^-1)",
            scope: Scope::Element,
            applies: always,
            expectation: holds,
            hypothesis: any,
            conclusion: excess_parity,
        },
        Theorem {
            name: "j-set-equivalence",
            statement: "x fixes V_1(w) iff L(x) + L(xw) = L(w)",
            scope: Scope::Element,
            applies: always,
            expectation: holds,
            hypothesis: any,
            conclusion: j_set_equivalence,
        },
        Theorem {
            name: "length-word",
            statement: "|N(w)| equals the length of a shortest word",
            scope: Scope::Element,
            applies: always,
            expectation: holds,
            hypothesis: any,
            conclusion: length_word,
        },
        Theorem {
            name: "reflection-length",
            statement: "codim of the fixed space equals the shortest reflection factorization",
            scope: Scope::Element,
            applies: always,
            expectation: holds,
            hypothesis: any,
            conclusion: reflection_length,
        },
        Theorem {
            name: "conjugate-zero-excess",
            statement: "every conjugacy class contains an element of excess 0",
            scope: Scope::ConjugacyClass,
            applies: always,
            expectation: holds,
            hypothesis: any,
            conclusion: conjugate_zero,
        },
        Theorem {
            name: "structured-inverters",
            statement: "the centralizer coset of a constructive inverter gives I_w",
            scope: Scope::Element,
            applies: has_model,
            expectation: holds,
            hypothesis: any,
            conclusion: structured,
        },
    ]
}

/// Looks a check up by name.
pub fn find(name: &str) -> Option<Theorem> {
    registry().into_iter().find(|t| t.name == name)
}
