//! Oracles shared by integration tests.

use coxex::{GroupElement, InversionSet, RootSystem, SignedRoot};

/// The product formula, computed from `N(g)`, `N(h)` and the action of `g^-1`.
pub fn predicted_product_inversions(rs: &RootSystem, g: &GroupElement, h: &GroupElement) -> InversionSet {
    let g_inv = g.inverse();
    let ng = rs.inversion_set(g);
    let nh = rs.inversion_set(h);
    let ng_inv = rs.inversion_set(&g_inv);
    let mut out = InversionSet::empty(rs.num_positive());
    for b in ng.iter() {
        // drop b when -b lies in N(h).g^-1
        let removed = nh.iter().any(|a| {
            let image = g_inv.act(SignedRoot::positive(a));
            image.is_negative() && image.index() == b
        });
        if !removed {
            out.insert(b);
        }
    }
    for a in nh.iter().filter(|&a| !ng_inv.contains(a)) {
        let image = g_inv.act(SignedRoot::positive(a));
        assert!(!image.is_negative());
        out.insert(image.index());
    }
    out
}
