mod common;

use common::*;
use exkh::oracle::{graded_euler_characteristic, jmin, jones_bracket, khovanov_table};
use exkh::resolution::{circle_count_all_states, resolve, State};
use exkh::{LaurentPoly, LinkDiagram};


fn trefoil() -> LinkDiagram {
    "X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]".parse().unwrap()
}

#[test]
fn signs_agree_with_tracer() {
    for (e, d) in corpus() {
        if has_short_component(d.pd().crossings()) {
            continue;
        }
        let signs: Vec<i64> = d.signs().iter().map(|s| s.value()).collect();
        assert_eq!(signs, tracer_signs(d.pd().crossings()), "{}", e.name);
        let m = d.mirror();
        let mirrored: Vec<i64> = m.signs().iter().map(|s| s.value()).collect();
        assert_eq!(mirrored, tracer_signs(m.pd().crossings()), "{} mirror", e.name);
    }
}

#[test]
fn tracer_spot_values() {
    assert_eq!(tracer_signs(trefoil().pd().crossings()), vec![-1, -1, -1]);
    assert_eq!(tracer_signs(&[[1, 1, 2, 2]]), vec![1]);
    assert!(has_short_component(&[[4, 1, 3, 2], [3, 1, 4, 2]]));
    assert!(!has_short_component(trefoil().pd().crossings()));
    let t = trefoil();
    assert_eq!((t.n_plus(), t.n_minus()), (0, 3));
    let kink: LinkDiagram = "X[1,1,2,2]".parse().unwrap();
    assert_eq!(kink.writhe().abs(), 1);
}

#[test]
fn circle_counts_agree_with_tracer() {
    for (e, d) in small_corpus() {
        let counts = circle_count_all_states(&d, 20).unwrap();
        for mask in 0..1u64 << d.n() {
            let want = tracer_circles(d.pd().crossings(), d.unknotted_components(), &bits(mask, d.n()));
            assert_eq!(counts.by_mask(mask), want, "{} state {mask:b}", e.name);
        }
    }
}

#[test]
fn resolution_spot_values() {
    let t = trefoil();
    let r = resolve(&t, &State::zero(3));
    assert_eq!(r.circle_count(), 3);
    let ends = r.chord_endpoints.unwrap();
    assert!(ends.iter().all(|[p, q]| p.circle != q.circle));
    for k in 0..3 {
        assert_eq!(resolve(&t, &State::zero(3).with(k, true)).circle_count(), 2);
    }
    let hopf: LinkDiagram = "X[1,3,2,4];X[3,1,4,2]".parse().unwrap();
    let counts = circle_count_all_states(&hopf, 20).unwrap();
    assert_eq!(counts.iter().count(), 4);
    let kink: LinkDiagram = "X[1,1,2,2]".parse().unwrap();
    let (zero, one) = (resolve(&kink, &State::zero(1)), resolve(&kink, &State::ones(1)));
    assert_eq!(
        [zero.circle_count(), one.circle_count()].iter().copied().collect::<std::collections::BTreeSet<_>>(),
        [1, 2].into()
    );
}

#[test]
fn jones_spot_values() {
    let q = |terms: &[(i64, i64)]| LaurentPoly::from_terms(terms.iter().copied());
    assert_eq!(tracer_jones(&trefoil()), q(&[(-9, -1), (-5, 1), (-3, 1), (-1, 1)]));
    assert_eq!(jones_bracket(&trefoil(), 20).unwrap(), tracer_jones(&trefoil()));
    let unknot: LinkDiagram = "O:1".parse().unwrap();
    assert_eq!(tracer_jones(&unknot), q(&[(-1, 1), (1, 1)]));
    let eight = exkh::corpus::bundled_entry("figure_eight").unwrap().diagram().unwrap();
    assert_eq!(tracer_jones(&eight), q(&[(-5, 1), (5, 1)]));
}

#[test]
fn euler_characteristic_matches_tracer_jones() {
    for (e, d) in small_corpus() {
        let table = e.expected.unwrap().table.unwrap();
        assert_eq!(graded_euler_characteristic(&table), tracer_jones(&d), "{}", e.name);
    }
}

#[test]
fn frozen_tables_are_reproduced() {
    for (e, d) in small_corpus().into_iter().filter(|(_, d)| d.n() <= 11) {
        let expected = e.expected.unwrap();
        assert_eq!(expected.jmin, jmin(&d), "{}", e.name);
        assert_eq!(expected.table.unwrap(), khovanov_table(&d, 20).unwrap(), "{}", e.name);
    }
}

#[test]
fn trefoil_has_two_torsion() {
    let table = khovanov_table(&trefoil(), 20).unwrap();
    let g = table[&-7].get(-2);
    assert_eq!((g.betti, g.torsion.len()), (0, 1));
    assert_eq!(g.torsion[0], 2.into());
}
