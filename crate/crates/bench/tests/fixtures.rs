use wvg_bench::{fixture, tight, LARGE_SIZES, SHARED_SIZES};
use wvg_core::{compute_banzhaf, Method};

#[test]
fn fixtures_are_stable_and_proper() {
    for n in SHARED_SIZES.into_iter().chain(LARGE_SIZES) {
        let g = fixture(n, 100);
        assert_eq!(g, fixture(n, 100));
        assert_eq!(g.players(), n);
        assert!(g.is_proper());
    }
}

#[test]
fn shared_sizes_agree_across_methods() {
    for n in SHARED_SIZES {
        let g = fixture(n, 100);
        let a = compute_banzhaf(&g, Method::enumeration()).unwrap();
        let b = compute_banzhaf(&g, Method::DynamicProgramming).unwrap();
        assert_eq!(a.counts, b.counts);
    }
    assert_eq!(tight(12).players(), 13);
}
