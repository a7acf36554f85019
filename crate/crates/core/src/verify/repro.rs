//! Worked examples recomputed from scratch and diffed against embedded
//! golden values.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::descriptor::CoxeterDescriptor;
use crate::error::{CoxeterError, Result};
use crate::excess::{excess, n_of_inverting_set, parabolic_excess, ExcessEngine};
use crate::roots::{default_guard, GroupElement, RootSystem};

pub const REPRO_IDS: [&str; 3] = ["sym5-table", "d12", "sym7-gap"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproCheck {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproReport {
    pub id: String,
    pub checks: Vec<ReproCheck>,
    pub diffs: usize,
}

impl ReproReport {
    fn new(id: &str) -> Self {
        ReproReport { id: id.to_string(), checks: Vec::new(), diffs: 0 }
    }

    fn push(&mut self, name: &str, expected: impl ToString, observed: impl ToString) {
        let (expected, observed) = (expected.to_string(), observed.to_string());
        let ok = expected == observed;
        if !ok {
            self.diffs += 1;
        }
        self.checks.push(ReproCheck { name: name.to_string(), expected, observed, ok });
    }

    pub fn is_success(&self) -> bool {
        self.diffs == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    /// Failing checks as `-expected` / `+observed` lines.
    pub fn diff(&self) -> String {
        let mut out = String::new();
        for c in self.checks.iter().filter(|c| !c.ok) {
            out.push_str(&format!("{}\n- {}\n+ {}\n", c.name, c.expected, c.observed));
        }
        out
    }
}

const SYM5_W: &str = "(+2 +3 +5)";
const SYM5_NW: [&str; 4] = ["e2-e5", "e3-e4", "e3-e5", "e4-e5"];
const SYM5_TABLE: [(&str, &[&str]); 6] = [
    ("(+2 +3)", &["e2-e3"]),
    ("(+3 +5)", &["e3-e4", "e3-e5", "e4-e5"]),
    ("(+2 +5)", &["e2-e3", "e2-e4", "e2-e5", "e3-e5", "e4-e5"]),
    ("(+1 +4)(+2 +3)", &["e1-e2", "e1-e3", "e1-e4", "e2-e3", "e2-e4", "e3-e4"]),
    ("(+1 +4)(+3 +5)", &["e1-e2", "e1-e3", "e1-e4", "e2-e4", "e3-e4", "e3-e5"]),
    ("(+1 +4)(+2 +5)", &["e1-e3", "e1-e4", "e1-e5", "e2-e3", "e2-e4", "e2-e5", "e3-e4", "e3-e5"]),
];

const SYM7_W: &str = "(+1 +2 +3 +4)(+5 +6 +7)";
const SYM7_ROOT: &str = "e4-e5";

const D12_W: &str = "(+2 +4 +6 +8 +10 -12 +11 +9 +7 +5 -3)";
const D12_X: &str = "(-1)(+2 +3)(+4 +5)(+6 +7)(+8 +9)(+10 +11)(-12)";
const D12_Y: &str = "(-1)(-2)(+3 +4)(+5 +6)(+7 +8)(+9 +10)(+11 +12)";
/// 1-based generators; generator 12 is the node attached to 10.
const D12_WORD: [usize; 28] =
    [4, 6, 8, 10, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 10, 9, 8, 7, 6, 5, 4, 3, 2, 3, 5, 7, 9, 11];
const D12_LENGTH: usize = 28;
const D12_DEFECT: usize = 46;
const D12_EXCESS: usize = 46;
const D12_PARABOLIC_EXCESS: usize = 60;

/// Runs one example by id.
pub fn repro(id: &str) -> Result<ReproReport> {
    match id {
        "sym5-table" => sym5_table(),
        "d12" => d12(),
        "sym7-gap" => sym7_gap(),
        _ => Err(CoxeterError::UnknownExample(id.to_string())),
    }
}

fn labels(rs: &RootSystem, w: &GroupElement) -> BTreeSet<String> {
    rs.inversion_set(w).iter().map(|i| rs.root_label(i)).collect()
}

fn set_text<S: AsRef<str>>(items: impl IntoIterator<Item = S>) -> String {
    let mut v: Vec<String> = items.into_iter().map(|s| s.as_ref().to_string()).collect();
    v.sort();
    format!("{{{}}}", v.join(", "))
}

fn sym5_table() -> Result<ReproReport> {
    let mut report = ReproReport::new("sym5-table");
    let engine = ExcessEngine::new(RootSystem::build(CoxeterDescriptor::a(4))?, default_guard())?;
    let rs = engine.root_system();
    let w = engine.parse_element(SYM5_W)?;
    let nw = labels(rs, &w);
    report.push("N(w)", set_text(SYM5_NW), set_text(&nw));

    let iw = engine.inverting_involutions(&w)?;
    let golden: Vec<GroupElement> = SYM5_TABLE.iter().map(|(x, _)| engine.parse_element(x)).collect::<Result<_>>()?;
    report.push(
        "I_w",
        set_text(golden.iter().map(|x| engine.format_element(x))),
        set_text(iw.elements.iter().map(|x| engine.format_element(x))),
    );
    for ((text, roots), x) in SYM5_TABLE.iter().zip(&golden) {
        report.push(&format!("N{text}"), set_text(roots.iter()), set_text(labels(rs, x)));
    }
    let containing: Vec<String> =
        iw.elements.iter().filter(|x| nw.is_subset(&labels(rs, x))).map(|x| engine.format_element(x)).collect();
    report.push("x in I_w with N(w) inside N(x)", "{}", set_text(containing));
    Ok(report)
}

fn sym7_gap() -> Result<ReproReport> {
    let mut report = ReproReport::new("sym7-gap");
    let engine = ExcessEngine::new(RootSystem::build(CoxeterDescriptor::a(6))?, default_guard())?;
    let rs = engine.root_system();
    let w = engine.parse_element(SYM7_W)?;
    let niw = n_of_inverting_set(rs, &engine.inverting_involutions(&w)?);
    let root = rs.root_by_label(SYM7_ROOT).ok_or_else(|| CoxeterError::InvalidConfig(SYM7_ROOT.into()))?;
    report.push(&format!("{SYM7_ROOT} in N(I_w)"), false, niw.contains(root));
    Ok(report)
}

fn d12() -> Result<ReproReport> {
    let mut report = ReproReport::new("d12");
    let engine = ExcessEngine::new(RootSystem::build(CoxeterDescriptor::d(12))?, default_guard())?;
    let rs = engine.root_system();
    let w = engine.parse_element(D12_W)?;
    let x = engine.parse_element(D12_X)?;
    let y = engine.parse_element(D12_Y)?;
    let word: Vec<usize> = D12_WORD.iter().map(|r| r - 1).collect();
    report.push("length(w)", D12_LENGTH, w.length());
    report.push("word length", D12_LENGTH, word.len());
    report.push("word product equals w", true, rs.element_from_word(&word)? == w);
    report.push("x^2 = 1", true, x.is_involution());
    report.push("y^2 = 1", true, y.is_involution());
    report.push("xy = w", true, x.compose(&y) == w);
    report.push("2|N(x) n N(y)|", D12_DEFECT, 2 * rs.inversion_set(&x).intersection_len(&rs.inversion_set(&y)));
    let iw = engine.inverting_involutions(&w)?;
    report.push("e(w)", D12_EXCESS, excess(&w, &iw)?.value);
    let ctx = rs.parabolic_context(&(1..12).collect::<Vec<_>>())?;
    let ej = parabolic_excess(&w, &ctx, &iw)?;
    report.push("e_J(w), J of type D11", D12_PARABOLIC_EXCESS, ej.value);
    if let Some(p) = ej.witnesses.first() {
        report.checks.push(ReproCheck {
            name: "e_J witness".into(),
            expected: String::new(),
            observed: format!("x={} y={}", engine.format_element(&p.x), engine.format_element(&p.y)),
            ok: true,
        });
    }
    Ok(report)
}
