use coxex::excess::{excess, inverting_involutions_structured, parabolic_excess, spartan_support_check};
use coxex::{Ambient, CoxeterDescriptor, PermutationModel, RootSystem};

const W: &str = "(+2 +4 +6 +8 +10 -12 +11 +9 +7 +5 -3)";
const X: &str = "(-1)(+2 +3)(+4 +5)(+6 +7)(+8 +9)(+10 +11)(-12)";
const Y: &str = "(-1)(-2)(+3 +4)(+5 +6)(+7 +8)(+9 +10)(+11 +12)";
const WORD: [usize; 28] = [4, 6, 8, 10, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 10, 9, 8, 7, 6, 5, 4, 3, 2, 3, 5, 7, 9, 11];

fn setup() -> (RootSystem, PermutationModel) {
    let rs = RootSystem::build(CoxeterDescriptor::d(12)).unwrap();
    let model = PermutationModel::new(&rs).unwrap();
    (rs, model)
}

#[test]
fn word_and_length() {
    let (rs, model) = setup();
    let w = model.to_root_perm(&model.parse(W).unwrap()).unwrap();
    assert_eq!(w.length(), 28);
    assert_eq!(rs.inversion_set(&w).len(), 28);
    let word: Vec<usize> = WORD.iter().map(|r| r - 1).collect();
    assert_eq!(rs.element_from_word(&word).unwrap(), w);
}

#[test]
fn given_pair_is_spartan() {
    let (rs, model) = setup();
    let w = model.to_root_perm(&model.parse(W).unwrap()).unwrap();
    let x = model.to_root_perm(&model.parse(X).unwrap()).unwrap();
    let y = model.to_root_perm(&model.parse(Y).unwrap()).unwrap();
    assert!(x.is_involution() && y.is_involution());
    assert_eq!(x.compose(&y), w);
    let overlap = rs.inversion_set(&x).intersection_len(&rs.inversion_set(&y));
    assert_eq!(2 * overlap, 46);
    assert_eq!(x.length() + y.length() - w.length(), 46);
}

#[test]
fn excess_and_parabolic_excess() {
    let (rs, model) = setup();
    let sp = model.parse(W).unwrap();
    let w = model.to_root_perm(&sp).unwrap();
    let iw = inverting_involutions_structured(&model, &sp).unwrap();
    assert_eq!(iw.candidates, 44);
    let x = model.to_root_perm(&model.parse(X).unwrap()).unwrap();
    let y = model.to_root_perm(&model.parse(Y).unwrap()).unwrap();
    assert!(iw.contains(&x) && iw.contains(&y));
    let e = excess(&w, &iw).unwrap();
    assert_eq!(e.value, 46);
    let ctx = rs.parabolic_context(&(1..12).collect::<Vec<_>>()).unwrap();
    let ej = parabolic_excess(&w, &ctx, &iw).unwrap();
    assert_eq!(ej.value, 60);
    for p in &e.witnesses {
        let px = model.from_root_perm(&p.x).unwrap();
        let py = model.from_root_perm(&p.y).unwrap();
        assert!(spartan_support_check(&px, &py, &sp, Ambient::D));
    }
}
