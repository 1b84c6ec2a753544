use collider::complexes::enumerate_complexes;
use collider::curves::is_qk_stable;
use collider::qk::{
    chain_to_layer_tree, check_layer_relations, contract, datum_level, datum_to_qk, do_not_overlap, universal_datum, LayerData,
    PartitionChain, TailLocus,
};
use collider::{MarkSet, Partition, QSet, SimplicialComplex};
use proptest::prelude::*;

const AXIOMS: [&str; 4] = ["Q2", "Q3", "Q4", "Q5"];

fn layer_trees(n: usize) -> Vec<PartitionChain> {
    (1..n).flat_map(|len| PartitionChain::all(n, len)).collect()
}

fn check_pair(q: &QSet, k: &SimplicialComplex) {
    let data = LayerData::universal(q, k, TailLocus::Closed).unwrap();
    assert_eq!(datum_to_qk(&data).unwrap(), (q.clone(), k.clone()));
    for chain in layer_trees(k.n()) {
        let t = chain_to_layer_tree(&chain);
        let d = universal_datum(q, k, &t, TailLocus::Closed).unwrap();
        let c = contract(&t, &d, TailLocus::Closed).unwrap();
        let report = is_qk_stable(&c, q, k).unwrap();
        assert!(!AXIOMS.iter().any(|a| report.violates(a)), "{chain} {q:?} {k:?}: {:?}", report.violations);
        if let Some(level) = datum_level(&t, &d).unwrap() {
            assert!(q.contains(&level));
            assert_eq!(c.level_of_singularity(c.elliptic().unwrap()).unwrap(), level);
        }
    }
}

#[test]
fn dictionary_round_trip_up_to_three_marks() {
    for n in 1..=3 {
        for q in QSet::all(n).unwrap() {
            for k in enumerate_complexes(n, false).unwrap() {
                if do_not_overlap(&q, &k).unwrap() {
                    check_pair(&q, &k);
                    assert!(check_layer_relations(&q, &k, TailLocus::Closed).unwrap().is_empty());
                }
            }
        }
    }
}

fn four_mark_pair() -> impl Strategy<Value = (QSet, SimplicialComplex)> {
    let qs = QSet::all(4).unwrap();
    let ks = enumerate_complexes(4, false).unwrap();
    (prop::sample::select(qs), prop::sample::select(ks)).prop_filter("Q and K must not overlap", |(q, k)| do_not_overlap(q, k).unwrap())
}

/// Q = partitions with at most m parts; K loses every face I with P(I) in Q.
fn five_mark_pair() -> impl Strategy<Value = (QSet, SimplicialComplex)> {
    (0usize..5, prop::collection::vec(3u32..32, 0..4)).prop_map(|(m, gens)| {
        let q = QSet::with_at_most_parts(5, m).unwrap();
        let k = SimplicialComplex::from_faces(5, &gens.into_iter().map(MarkSet::from_bits).collect::<Vec<_>>()).unwrap();
        let kept: Vec<MarkSet> = k.faces().into_iter().filter(|&f| !q.contains(&Partition::with_large_part(5, f))).collect();
        (q, SimplicialComplex::from_faces(5, &kept).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dictionary_on_four_marks((q, k) in four_mark_pair()) {
        check_pair(&q, &k);
        prop_assert_eq!(check_layer_relations(&q, &k, TailLocus::Closed).unwrap(), Vec::<String>::new());
    }

    #[test]
    fn universal_data_restrict_to_faces_on_five_marks((q, k) in five_mark_pair()) {
        prop_assert_eq!(check_layer_relations(&q, &k, TailLocus::Closed).unwrap(), Vec::<String>::new());
    }
}
