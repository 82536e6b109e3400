mod common;

use hgp_surgery::complex::{cyclic_repetition, hamming_7_4};
use hgp_surgery::distance::Distance;
use hgp_surgery::{ChainComplex, DistanceBound, SearchConfig};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn exact(d: Option<usize>) -> DistanceBound {
    DistanceBound::Exact(d.map_or(Distance::Infinite, Distance::Finite))
}

#[test]
fn boundaries_compose_to_zero_everywhere() {
    for (name, c, d) in common::corpus() {
        let t = c.tensor(&d);
        assert!(common::boundaries_compose_to_zero(&t), "{name}");
        assert!(t.validate().is_ok(), "{name}");
    }
    for (name, code, words, family) in common::gadget_corpus() {
        for g in common::build_gadgets(&code, &words, family) {
            assert!(common::boundaries_compose_to_zero(g.complex()), "{name}");
            assert!(common::boundaries_compose_to_zero(&g.map.cone().complex), "{name}");
        }
    }
}

#[test]
fn distances_match_brute_force() {
    let cfg = SearchConfig::default();
    let mut cases: Vec<ChainComplex> = common::corpus()
        .into_iter()
        .map(|(_, c, d)| c.tensor(&d))
        .filter(|t| t.dim(1) <= 18)
        .collect();
    let mut rng = StdRng::seed_from_u64(7);
    while cases.len() < 20 {
        let t = common::random_classical(&mut rng, "C", 3).tensor(&common::random_classical(&mut rng, "D", 3));
        if t.dim(1) <= 18 {
            cases.push(t);
        }
    }
    for t in &cases {
        for i in t.degrees() {
            if t.dim(i) > 18 {
                continue;
            }
            assert_eq!(t.systolic_distance(i, &cfg), exact(common::brute_systolic(t, i)), "{t:?} d_{i}");
            assert_eq!(t.cosystolic_distance(i, &cfg), exact(common::brute_cosystolic(t, i)), "{t:?} d^{i}");
        }
    }
}

#[test]
fn classical_distances_match_brute_force() {
    let cfg = SearchConfig::default();
    let h = ChainComplex::classical("H", &hamming_7_4());
    assert_eq!(common::brute_systolic(&h, 1), Some(3));
    assert_eq!(h.systolic_distance(1, &cfg), exact(Some(3)));
    let r = ChainComplex::classical("R", &cyclic_repetition(5));
    assert_eq!(common::brute_cosystolic(&r, 0), Some(5));
    assert_eq!(r.cosystolic_distance(0, &cfg), exact(Some(5)));
}

#[test]
fn product_distance_formula_on_corpus() {
    let cfg = SearchConfig::default();
    for (name, c, d) in common::corpus() {
        for k in c.tensor(&d).degrees() {
            let r = c.product_distance_check(&d, k, &cfg).unwrap();
            assert!(r.is_ok(), "{name} degree {k}: {r:?}");
        }
    }
}

#[test]
fn kunneth_on_corpus() {
    for (name, c, d) in common::corpus() {
        for k in c.tensor(&d).degrees() {
            assert!(c.kunneth_check(&d, k).is_ok(), "{name} degree {k}");
        }
    }
}

#[test]
fn coned_homology_bookkeeping_on_corpus() {
    for (name, code, words, family) in common::gadget_corpus() {
        let gadgets = common::build_gadgets(&code, &words, family);
        for g in &gadgets {
            let r = common::coned_homology_holds(&code, std::slice::from_ref(g));
            assert!(r.is_ok(), "{name}: {r:?}");
        }
        let r = common::coned_homology_holds(&code, &gadgets);
        assert!(r.is_ok(), "{name} compacted: {r:?}");
    }
}

#[test]
fn cone_product_isomorphism_on_corpus() {
    for (name, code, words, family) in common::gadget_corpus() {
        for g in common::build_gadgets(&code, &words, family) {
            for d in [ChainComplex::classical("D", &cyclic_repetition(3)), ChainComplex::classical("D", &hamming_7_4())] {
                assert!(hgp_surgery::chainmap::cone_product_isomorphism_check(&g.map, &d).is_ok(), "{name}");
            }
        }
    }
}

#[test]
fn cheeger_on_small_graphs() {
    let mut rng = StdRng::seed_from_u64(11);
    for n in 2..=14 {
        common::cheeger_instance(&mut rng, n).unwrap();
    }
    let cycle: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
    assert_eq!(common::cheeger_by_size(6, &cycle), Some((2, 3)));
    assert_eq!(common::cheeger_by_size(3, &[(0, 1), (1, 2)]), Some((1, 1)));
}
