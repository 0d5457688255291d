use bicross_core::cohomology::{extension_group, AbelianInvariants, CohomologyContext};
use bicross_core::fixtures;
use std::time::Instant;

#[test]
fn swap_family_and_s4() {
    for m in 2..=4usize {
        let t = Instant::now();
        let p = fixtures::swap_pair(m);
        let ctx = CohomologyContext::new(&p);
        eprintln!("m={m} pivots={} core={:?} b_core={:?} {:?}", ctx.snf_a.sparse_pivots, ctx.snf_a.core_shape, ctx.snf_b.core_shape, t.elapsed());
        assert_eq!(ctx.invariants(), AbelianInvariants { torus_rank: 0, invariant_factors: vec![m as u64] });
    }
    let p = fixtures::s4_pair();
    assert_eq!(extension_group(&p), AbelianInvariants::default());
}
