//! Acceptance suite: one PASS/FAIL line per criterion. Exact integer
//! equality throughout; runtime limits are pinned below.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use coxex::descriptor::parse_components;
use coxex::excess::ExcessEngine;
use coxex::roots::EnumeratedGroup;
use coxex::verify::{repro, run_suite, ParabolicSelection, SuiteConfig, SuiteResult};
use coxex::{CoxeterDescriptor, Family, GroupElement, RootSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::predicted_product_inversions;

const SYM5_LIMIT: Duration = Duration::from_secs(1);
const D12_LIMIT: Duration = Duration::from_secs(5);
const SWEEP_LIMIT: Duration = Duration::from_secs(600);
const PRODUCT_PAIRS: usize = 10_000;

const DIHEDRAL: [&str; 4] = ["I2(5)", "I2(6)", "I2(7)", "I2(8)"];

/// The one printed row that disagrees with direct computation: the printed
/// set is not an inversion set at all (it has e1-e3 and e3-e5 without
/// e1-e5). Exactly this diff is tolerated in the exit status; the line
/// still reads FAIL, and any other problem fails the run.
const KNOWN_TABLE_DIFF: &str = r#"N(+1 +4)(+3 +5) differs from the table: table has ["e1-e3"], computed has ["e1-e5"]"#;

struct Outcome {
    pass: bool,
    detail: String,
    problems: Vec<String>,
}

fn outcome(problems: Vec<String>, summary: String) -> Outcome {
    if problems.is_empty() {
        Outcome { pass: true, detail: summary, problems }
    } else {
        Outcome { pass: false, detail: problems.join("; "), problems }
    }
}

fn within(limit: Duration, elapsed: Duration, what: &str, problems: &mut Vec<String>) {
    if elapsed >= limit {
        problems.push(format!("{what} took {elapsed:.2?}, limit {limit:?}"));
    }
}

/// Sweeps `theorems` and flags any failure, any gap, and any check that
/// saw no instances.
fn sweep(groups: &[&str], theorems: &[&str], selection: ParabolicSelection, problems: &mut Vec<String>) -> SuiteResult {
    let config = SuiteConfig::new(groups).with_theorems(theorems).with_parabolics(selection);
    let result = run_suite(&config).expect("sweep runs");
    for r in &result.results {
        if r.failed > 0 || r.gaps > 0 {
            let first = r.counterexamples.first().or(r.gap_examples.first());
            problems.push(format!(
                "{} on {}: {} failed, {} gaps, first {:?}",
                r.theorem, r.descriptor, r.failed, r.gaps, first
            ));
        }
        if r.checked == 0 {
            problems.push(format!("{} on {}: nothing checked", r.theorem, r.descriptor));
        }
    }
    result
}

fn checked(result: &SuiteResult) -> u64 {
    result.results.iter().map(|r| r.checked).sum()
}

/// All permutations of `0..n` as image vectors.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Right-action composition: apply `a`, then `b`.
fn then(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&i| b[i]).collect()
}

fn inverse(a: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        out[j] = i;
    }
    out
}

fn from_cycles(n: usize, cycles: &[&[usize]]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for c in cycles {
        for k in 0..c.len() {
            p[c[k] - 1] = c[(k + 1) % c.len()] - 1;
        }
    }
    p
}

/// Inverting involutions by brute force over plain permutations.
fn brute_inverters(w: &[usize]) -> Vec<Vec<usize>> {
    let w_inv = inverse(w);
    permutations(w.len())
        .into_iter()
        .filter(|x| then(x, x) == (0..w.len()).collect::<Vec<_>>() && then(&then(x, w), x) == w_inv)
        .collect()
}

/// `e_a - e_b` labels with `a < b` and `a.x > b.x`.
fn pair_inversions(x: &[usize]) -> BTreeSet<String> {
    let n = x.len();
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| x[a] > x[b])
        .map(|(a, b)| format!("e{}-e{}", a + 1, b + 1))
        .collect()
}

/// The worked Sym(5) table, as printed.
const TABLE: [(&[&[usize]], &[&str]); 6] = [
    (&[&[2, 3]], &["e2-e3"]),
    (&[&[3, 5]], &["e3-e4", "e3-e5", "e4-e5"]),
    (&[&[2, 5]], &["e2-e3", "e2-e4", "e2-e5", "e3-e5", "e4-e5"]),
    (&[&[1, 4], &[2, 3]], &["e1-e2", "e1-e3", "e1-e4", "e2-e3", "e2-e4", "e3-e4"]),
    (&[&[1, 4], &[3, 5]], &["e1-e2", "e1-e3", "e1-e4", "e2-e4", "e3-e4", "e3-e5"]),
    (&[&[1, 4], &[2, 5]], &["e1-e3", "e1-e4", "e1-e5", "e2-e3", "e2-e4", "e2-e5", "e3-e4", "e3-e5"]),
];

fn sym5_table() -> Outcome {
    let start = Instant::now();
    let mut problems = Vec::new();
    let engine = ExcessEngine::new(RootSystem::build(CoxeterDescriptor::a(4)).unwrap(), 1_000_000).unwrap();
    let rs = engine.root_system();
    let w = engine.parse_element("(+2 +3 +5)").unwrap();
    let iw = engine.inverting_involutions(&w).unwrap();

    // oracle: plain permutations of five points
    let brute = brute_inverters(&from_cycles(5, &[&[2, 3, 5]]));
    let printed: BTreeSet<Vec<usize>> = TABLE.iter().map(|(c, _)| from_cycles(5, c)).collect();
    if brute.iter().cloned().collect::<BTreeSet<_>>() != printed || brute.len() != 6 {
        problems.push(format!("brute-force I_w has {} elements, differs from the table", brute.len()));
    }
    if iw.len() != 6 {
        problems.push(format!("engine I_w has {} elements", iw.len()));
    }
    for (cycles, roots) in TABLE {
        let perm = from_cycles(5, cycles);
        let text: String = cycles
            .iter()
            .map(|c| format!("({})", c.iter().map(|p| format!("+{p}")).collect::<Vec<_>>().join(" ")))
            .collect();
        let x = engine.parse_element(&text).unwrap();
        if !iw.contains(&x) {
            problems.push(format!("{text} missing from engine I_w"));
        }
        let computed: BTreeSet<String> = rs.inversion_set(&x).iter().map(|i| rs.root_label(i)).collect();
        let oracle = pair_inversions(&perm);
        if computed != oracle {
            problems.push(format!("N{text}: engine {computed:?} vs oracle {oracle:?}"));
        }
        let golden: BTreeSet<String> = roots.iter().map(|s| s.to_string()).collect();
        if computed != golden {
            problems.push(format!(
                "N{text} differs from the table: table has {:?}, computed has {:?}",
                golden.difference(&computed).collect::<Vec<_>>(),
                computed.difference(&golden).collect::<Vec<_>>()
            ));
        }
    }
    within(SYM5_LIMIT, start.elapsed(), "sym5 table", &mut problems);
    outcome(problems, format!("I_w = 6 elements, all N(x) rows match ({:.2?})", start.elapsed()))
}

fn d12() -> Outcome {
    let start = Instant::now();
    let mut problems = Vec::new();
    let report = repro("d12").unwrap();
    if !report.is_success() {
        problems.push(report.diff().replace('\n', " "));
    }
    within(D12_LIMIT, start.elapsed(), "d12", &mut problems);
    outcome(problems, format!("length 28, defect 46, e = 46, e_J = 60 ({:.2?})", start.elapsed()))
}

fn parabolic_reflection_excess() -> Outcome {
    let start = Instant::now();
    let mut problems = Vec::new();
    let mut groups = vec!["A4", "B3", "B4", "D4", "H3"];
    groups.extend(DIHEDRAL);
    let result = sweep(&groups, &["parabolic-reflection-excess"], ParabolicSelection::All, &mut problems);
    within(SWEEP_LIMIT, start.elapsed(), "sweep", &mut problems);
    outcome(problems, format!("{} (w, J) instances, 0 failures ({:.2?})", checked(&result), start.elapsed()))
}

fn parabolic_excess() -> Outcome {
    let mut problems = Vec::new();
    let mut groups = vec!["A4", "B3", "B4", "H3"];
    groups.extend(DIHEDRAL);
    let all = sweep(&groups, &["parabolic-excess"], ParabolicSelection::All, &mut problems);
    let f4 = sweep(&["F4"], &["parabolic-excess"], ParabolicSelection::Maximal, &mut problems);
    outcome(problems, format!("{} instances, F4 {} under maximal reduction, 0 failures", checked(&all), checked(&f4)))
}

fn inversion_cover() -> Outcome {
    let mut problems = Vec::new();
    let mut groups = vec!["A4", "B3", "B4", "D4", "H3"];
    groups.extend(DIHEDRAL);
    let cover = sweep(&groups, &["nw-subset-niw", "cuspidal-full-niw"], ParabolicSelection::All, &mut problems);
    let central = sweep(&["B3", "D4"], &["central-full-niw"], ParabolicSelection::All, &mut problems);
    outcome(problems, format!("{} element checks, {} with central longest element", checked(&cover), checked(&central)))
}

fn negative_examples() -> Outcome {
    let mut problems = Vec::new();
    for id in ["sym7-gap", "sym5-table"] {
        let report = repro(id).unwrap();
        for c in report.checks.iter().filter(|c| c.name.contains("in N(I_w)") || c.name.contains("inside N(x)")) {
            if !c.ok {
                problems.push(format!("{id} {}: expected {}, observed {}", c.name, c.expected, c.observed));
            }
        }
    }
    // oracle: no inverter of (1234)(567) in Sym(7) sends 4 above 5
    let w = from_cycles(7, &[&[1, 2, 3, 4], &[5, 6, 7]]);
    let brute = brute_inverters(&w);
    if brute.iter().any(|x| x[3] > x[4]) {
        problems.push("brute force finds e4-e5 in N(I_w)".into());
    }
    // oracle: for (235), no inverter's inversions contain N(w)
    let w5 = from_cycles(5, &[&[2, 3, 5]]);
    let nw = pair_inversions(&w5);
    if brute_inverters(&w5).iter().any(|x| nw.is_subset(&pair_inversions(x))) {
        problems.push("brute force finds x with N(w) inside N(x)".into());
    }
    outcome(problems, format!("e4-e5 outside N(I_w) over {} inverters; no single x covers N(235)", brute.len()))
}

fn structure() -> Outcome {
    let mut problems = Vec::new();
    let ab =
        sweep(&["A4", "B4"], &["spartan-support", "overlap", "swap-cycle"], ParabolicSelection::All, &mut problems);
    let d = sweep(&["D4", "D5"], &["spartan-support", "dn-conditional"], ParabolicSelection::All, &mut problems);
    outcome(problems, format!("{} pair checks in A4/B4, {} in D4/D5", checked(&ab), checked(&d)))
}

/// Shortest factorization into reflections by breadth-first search.
fn reflection_bfs(rs: &RootSystem) -> HashMap<GroupElement, usize> {
    let reflections = rs.reflections();
    let mut dist = HashMap::new();
    let mut queue = VecDeque::new();
    dist.insert(rs.identity(), 0);
    queue.push_back(rs.identity());
    while let Some(w) = queue.pop_front() {
        let d = dist[&w];
        for t in &reflections {
            let next = w.compose(t);
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    dist
}

fn oracles() -> Outcome {
    let mut problems = Vec::new();
    let structured = sweep(&["B4", "D4"], &["structured-inverters"], ParabolicSelection::All, &mut problems);

    let mut reflection_checks = 0;
    for d in ["A3", "B3", "I2(5)"] {
        let rs = RootSystem::product(&parse_components(d).unwrap()).unwrap();
        let dist = reflection_bfs(&rs);
        if dist.len() as u128 != rs.group_order() {
            problems.push(format!("{d}: BFS reached {} elements", dist.len()));
        }
        for (w, &bfs) in &dist {
            reflection_checks += 1;
            if rs.reflection_length(w) != bfs {
                problems.push(format!("{d}: L = {} but BFS = {bfs}", rs.reflection_length(w)));
                break;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let groups = ["A3", "B3", "I2(5)", "B4", "D4", "H3", "F4"];
    for d in groups {
        let rs = RootSystem::product(&parse_components(d).unwrap()).unwrap();
        let g = EnumeratedGroup::new(&rs, 1_000_000).unwrap();
        for _ in 0..PRODUCT_PAIRS {
            let a = g.get(rng.gen_range(0..g.len()));
            let b = g.get(rng.gen_range(0..g.len()));
            if rs.inversion_set(&a.compose(b)) != predicted_product_inversions(&rs, a, b) {
                problems.push(format!("{d}: product formula fails"));
                break;
            }
        }
    }
    outcome(
        problems,
        format!(
            "structured = exhaustive on {} elements; {} BFS reflection lengths; {} product pairs in each of {} groups",
            checked(&structured),
            reflection_checks,
            PRODUCT_PAIRS,
            groups.len()
        ),
    )
}

fn large_root_counts() -> Outcome {
    let mut problems = Vec::new();
    for (family, expected) in [(Family::E7, 63), (Family::E8, 120)] {
        let rs = RootSystem::build(CoxeterDescriptor::exceptional(family)).unwrap();
        if rs.num_positive() != expected {
            problems.push(format!("{family}: {} positive roots, expected {expected}", rs.num_positive()));
        }
    }
    outcome(problems, "E7 has 63 positive roots, E8 has 120; exhaustive sweeps refused".into())
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome, &'static [&'static str]);
    let criteria: [Criterion; 9] = [
        ("sym5 table: I_w and every N(x) row", sym5_table, &[KNOWN_TABLE_DIFF]),
        ("D12 example: pair, e = 46, e_J = 60, length 28", d12, &[]),
        ("E_J = E on every standard parabolic", parabolic_reflection_excess, &[]),
        ("e_J = e without D factors (F4 by maximal reduction)", parabolic_excess, &[]),
        ("N(w) inside N(I_w); cuspidal and central cases full", inversion_cover, &[]),
        ("negative examples in Sym(5) and Sym(7)", negative_examples, &[]),
        ("spartan pair structure in A, B and D", structure, &[]),
        ("oracle equivalences", oracles, &[]),
        ("E7/E8 construction (substitute for sweeps)", large_root_counts, &[]),
    ];
    let (mut failed, mut unexpected) = (0, 0);
    for (name, check, known) in criteria {
        let o = check();
        let status = if o.pass {
            "PASS"
        } else {
            failed += 1;
            if o.problems != known {
                unexpected += 1;
            }
            "FAIL"
        };
        let note = if !o.pass && o.problems == known { " (known source misprint)" } else { "" };
        println!("[{status}] {name}: {}{note}", o.detail);
    }
    println!("acceptance: {} passed, {failed} failed, {unexpected} unexpected", criteria.len() - failed);
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
