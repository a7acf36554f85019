//! Exhaustive theorem sweeps over small groups, plus reproductions of
//! fixed worked examples.

mod registry;
mod repro;
mod tables;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::descriptor::{parse_components, CoxeterDescriptor, Family};
use crate::error::{CoxeterError, Result};
use crate::excess::maximal_splits;
use crate::roots::{default_guard, RootSystem};

pub use registry::{find, registry, Expectation, Instance, Scope, Theorem, Verdict};
pub use repro::{repro, ReproCheck, ReproReport, REPRO_IDS};
pub use tables::{Inverter, Parabolic, SweepTables};

/// Sweeps refuse groups above this order regardless of the enumeration
/// guard; every element needs its own `I_w`.
pub const SWEEP_LIMIT: u128 = 1_000_000;

/// Which standard parabolics a sweep visits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParabolicSelection {
    /// Every subset of the generators.
    All,
    /// Maximal subsets, plus every subset generating a D-type component
    /// of rank at least 4 (these are not covered by the reduction).
    Maximal,
    /// Listed 0-based generator sets.
    Explicit(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub descriptors: Vec<String>,
    pub parabolics: ParabolicSelection,
    /// Registry names; empty means every check.
    pub theorems: Vec<String>,
    pub guard: u128,
    pub workers: usize,
    pub out: Option<PathBuf>,
    pub format: ReportFormat,
}

impl SuiteConfig {
    pub fn new(descriptors: &[&str]) -> Self {
        SuiteConfig {
            descriptors: descriptors.iter().map(|s| s.to_string()).collect(),
            parabolics: ParabolicSelection::All,
            theorems: Vec::new(),
            guard: default_guard(),
            workers: 0,
            out: None,
            format: ReportFormat::Json,
        }
    }

    pub fn with_theorems(mut self, names: &[&str]) -> Self {
        self.theorems = names.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn with_parabolics(mut self, selection: ParabolicSelection) -> Self {
        self.parabolics = selection;
        self
    }

    fn selected(&self) -> Result<Vec<Theorem>> {
        if self.theorems.is_empty() || self.theorems.iter().any(|t| t == "all") {
            return Ok(registry());
        }
        self.theorems.iter().map(|name| find(name).ok_or_else(|| CoxeterError::UnknownTheorem(name.clone()))).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub descriptor: String,
    pub element: String,
    #[serde(rename = "J", skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<usize>>,
    pub observed: String,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremResult {
    pub theorem: String,
    pub descriptor: String,
    pub expectation: Expectation,
    /// Set when the check does not apply to this group.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    /// Instances visited, before the hypothesis filter.
    pub instances: u64,
    pub checked: u64,
    pub passed: u64,
    pub failed: u64,
    pub gaps: u64,
    pub counterexamples: Vec<Counterexample>,
    /// First few gaps, for checks with known counterexamples.
    pub gap_examples: Vec<Counterexample>,
}

const GAP_EXAMPLES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub results: Vec<TheoremResult>,
    pub failures: u64,
    #[serde(skip)]
    pub wall_clock: Duration,
}

impl SuiteResult {
    pub fn is_success(&self) -> bool {
        self.failures == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn result(&self, theorem: &str, descriptor: &str) -> Option<&TheoremResult> {
        self.results.iter().find(|r| r.theorem == theorem && r.descriptor == descriptor)
    }
}

/// Runs every selected check over every listed group.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteResult> {
    if config.guard < 1 {
        return Err(CoxeterError::InvalidConfig("guard must be at least 1".into()));
    }
    let theorems = config.selected()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| CoxeterError::InvalidConfig(e.to_string()))?;
    let start = Instant::now();
    let mut results = Vec::new();
    for text in &config.descriptors {
        let rs = RootSystem::product(&parse_components(text)?)?;
        let limit = config.guard.min(SWEEP_LIMIT);
        let tables = pool.install(|| SweepTables::build(rs, limit))?;
        let parabolics = select_parabolics(&tables.rs, &config.parabolics)?;
        for theorem in &theorems {
            results.push(pool.install(|| run_theorem(&tables, theorem, &parabolics)));
        }
    }
    let failures = results.iter().map(|r| r.failed).sum();
    Ok(SuiteResult { results, failures, wall_clock: start.elapsed() })
}

/// Runs one check on prepared tables.
pub fn run_theorem(tables: &SweepTables, theorem: &Theorem, parabolics: &[Parabolic]) -> TheoremResult {
    let descriptor = tables.rs.name();
    let expectation = (theorem.expectation)(tables);
    let mut result = TheoremResult {
        theorem: theorem.name.to_string(),
        descriptor: descriptor.clone(),
        expectation,
        skipped: None,
        instances: 0,
        checked: 0,
        passed: 0,
        failed: 0,
        gaps: 0,
        counterexamples: Vec::new(),
        gap_examples: Vec::new(),
    };
    if !(theorem.applies)(tables) {
        result.skipped = Some(format!("not applicable to {descriptor}"));
        return result;
    }
    let splits = match theorem.scope {
        Scope::ElementInSplit | Scope::SpartanPairInSplit => maximal_splits(&tables.rs).unwrap_or_default(),
        _ => Vec::new(),
    };
    let classes = match theorem.scope {
        Scope::ConjugacyClass => tables.conjugacy_classes(),
        _ => Vec::new(),
    };
    let base = Instance { tables, w: 0, parabolic: None, split: None, pair: None, class: None };

    // Each unit yields (instances, checked, failures); units are merged in order.
    let evaluate = |inst: Instance<'_>, acc: &mut (u64, u64, Vec<Counterexample>)| {
        acc.0 += 1;
        if !(theorem.hypothesis)(&inst) {
            return;
        }
        acc.1 += 1;
        if let Err((observed, expected)) = (theorem.conclusion)(&inst) {
            acc.2.push(Counterexample {
                descriptor: descriptor.clone(),
                element: tables.label(inst.w),
                j: inst
                    .parabolic
                    .map(|j| j.label())
                    .or_else(|| inst.split.map(|s| s.generators.iter().map(|r| r + 1).collect())),
                observed,
                expected,
            });
        }
    };

    let per_unit: Vec<(u64, u64, Vec<Counterexample>)> = match theorem.scope {
        Scope::ConjugacyClass => classes
            .par_iter()
            .map(|class| {
                let mut acc = (0, 0, Vec::new());
                evaluate(Instance { w: class[0] as usize, class: Some(class), ..base }, &mut acc);
                acc
            })
            .collect(),
        _ => (0..tables.len())
            .into_par_iter()
            .map(|w| {
                let mut acc = (0, 0, Vec::new());
                let inst = Instance { w, ..base };
                match theorem.scope {
                    Scope::Element => evaluate(inst, &mut acc),
                    Scope::ElementInParabolic => {
                        for j in parabolics.iter().filter(|j| tables.in_parabolic(w, j)) {
                            evaluate(Instance { parabolic: Some(j), ..inst }, &mut acc);
                        }
                    }
                    Scope::ElementInSplit => {
                        for s in &splits {
                            if tables.in_parabolic(w, &Parabolic::new(&s.generators)) {
                                evaluate(Instance { split: Some(s), ..inst }, &mut acc);
                            }
                        }
                    }
                    Scope::SpartanPair => {
                        for p in tables.spartan_pairs(w) {
                            evaluate(Instance { pair: Some(p), ..inst }, &mut acc);
                        }
                    }
                    Scope::SpartanPairInSplit => {
                        for p in tables.spartan_pairs(w) {
                            for s in &splits {
                                evaluate(Instance { pair: Some(p), split: Some(s), ..inst }, &mut acc);
                            }
                        }
                    }
                    Scope::ConjugacyClass => unreachable!(),
                }
                acc
            })
            .collect(),
    };

    for (instances, checked, failures) in per_unit {
        result.instances += instances;
        result.checked += checked;
        result.passed += checked - failures.len() as u64;
        match expectation {
            Expectation::Holds => {
                result.failed += failures.len() as u64;
                result.counterexamples.extend(failures);
            }
            Expectation::KnownCounterexamples => {
                result.gaps += failures.len() as u64;
                let room = GAP_EXAMPLES.saturating_sub(result.gap_examples.len());
                result.gap_examples.extend(failures.into_iter().take(room));
            }
        }
    }
    result
}

/// Resolves a selection to concrete parabolics, in a fixed order.
pub fn select_parabolics(rs: &RootSystem, selection: &ParabolicSelection) -> Result<Vec<Parabolic>> {
    let rank = rs.rank();
    let subsets = || (0u32..1 << rank).map(move |mask| (0..rank).filter(|r| mask >> r & 1 == 1).collect::<Vec<_>>());
    Ok(match selection {
        ParabolicSelection::All => subsets().map(|g| Parabolic::new(&g)).collect(),
        ParabolicSelection::Maximal => {
            let orders = coxeter_orders(rs);
            subsets()
                .filter(|g| g.len() + 1 == rank || (g.len() < rank && has_d_component(g, &orders)))
                .map(|g| Parabolic::new(&g))
                .collect()
        }
        ParabolicSelection::Explicit(sets) => {
            let mut out = Vec::new();
            for g in sets {
                if let Some(&r) = g.iter().find(|&&r| r >= rank) {
                    return Err(CoxeterError::GeneratorOutOfRange { index: r, rank });
                }
                out.push(Parabolic::new(g));
            }
            out
        }
    })
}

fn coxeter_orders(rs: &RootSystem) -> Vec<Vec<u32>> {
    let gens = rs.generators();
    let rank = gens.len();
    let mut m = vec![vec![1u32; rank]; rank];
    for i in 0..rank {
        for j in 0..rank {
            if i == j {
                continue;
            }
            let st = gens[i].compose(&gens[j]);
            let mut p = st.clone();
            let mut k = 1;
            while !p.is_identity() {
                p = p.compose(&st);
                k += 1;
            }
            m[i][j] = k;
        }
    }
    m
}

/// Whether the subdiagram on `gens` has a component of type `D_k`,
/// `k >= 4`: a simply-laced tree with one branch node whose arms have
/// lengths `1, 1, k-3`.
fn has_d_component(gens: &[usize], orders: &[Vec<u32>]) -> bool {
    let adjacent = |a: usize, b: usize| a != b && orders[a][b] > 2;
    let mut seen = vec![false; orders.len()];
    for &start in gens {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let a = comp[k];
            for &b in gens {
                if !seen[b] && adjacent(a, b) {
                    seen[b] = true;
                    comp.push(b);
                }
            }
            k += 1;
        }
        let edges: Vec<(usize, usize)> = comp
            .iter()
            .flat_map(|&a| comp.iter().filter(move |&&b| a < b && adjacent(a, b)).map(move |&b| (a, b)))
            .collect();
        if comp.len() < 4 || edges.len() + 1 != comp.len() || edges.iter().any(|&(a, b)| orders[a][b] != 3) {
            continue;
        }
        let degree = |a: usize| comp.iter().filter(|&&b| adjacent(a, b)).count();
        let branches: Vec<usize> = comp.iter().copied().filter(|&a| degree(a) == 3).collect();
        if branches.len() != 1 || comp.iter().any(|&a| degree(a) > 3) {
            continue;
        }
        let centre = branches[0];
        let mut arms: Vec<usize> = comp
            .iter()
            .copied()
            .filter(|&b| adjacent(centre, b))
            .map(|first| {
                let (mut prev, mut cur, mut len) = (centre, first, 1);
                while let Some(next) = comp.iter().copied().find(|&c| c != prev && adjacent(cur, c)) {
                    prev = cur;
                    cur = next;
                    len += 1;
                }
                len
            })
            .collect();
        arms.sort_unstable();
        if arms[0] == 1 && arms[1] == 1 {
            return true;
        }
    }
    false
}

/// Summary line for `group info`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInfo {
    pub descriptor: String,
    pub rank: usize,
    pub positive_roots: usize,
    pub order: String,
    pub longest_length: usize,
    pub longest_is_minus_identity: bool,
    /// Whether the order is within the enumeration guard.
    pub enumerable: bool,
}

pub fn group_info(rs: &RootSystem, guard: u128) -> GroupInfo {
    GroupInfo {
        descriptor: rs.name(),
        rank: rs.rank(),
        positive_roots: rs.num_positive(),
        order: rs.group_order().to_string(),
        longest_length: rs.longest_element().length(),
        longest_is_minus_identity: rs.longest_is_central(),
        enumerable: rs.group_order() <= guard,
    }
}

/// Descriptor for a dihedral or single-family request from CLI flags.
pub fn descriptor_from_flags(family: &str, rank: Option<usize>, m: Option<u32>) -> Result<Vec<CoxeterDescriptor>> {
    let family = family.trim();
    if family.eq_ignore_ascii_case("I2") || family.eq_ignore_ascii_case("I") {
        let m = m.ok_or_else(|| CoxeterError::InvalidDescriptor("dihedral type needs --m".into()))?;
        return Ok(vec![CoxeterDescriptor::new(Family::I2, 2, Some(m))?]);
    }
    match rank {
        Some(r) => parse_components(&format!("{family}{r}")),
        None => parse_components(family),
    }
}
