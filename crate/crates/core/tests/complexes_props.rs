use collider::complexes::{count_complexes, enumerate_complexes, is_threshold};
use collider::{MarkSet, SimplicialComplex};
use proptest::prelude::*;

fn complex_strategy(max_n: usize) -> impl Strategy<Value = SimplicialComplex> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec(1u32..(1 << n), 0..6)
            .prop_map(move |gens| SimplicialComplex::from_faces(n, &gens.into_iter().map(MarkSet::from_bits).collect::<Vec<_>>()).unwrap())
    })
}

fn permutation_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn from_faces_is_idempotent(k in complex_strategy(7)) {
        prop_assert_eq!(SimplicialComplex::from_faces(k.n(), &k.faces()).unwrap(), k.clone());
        prop_assert_eq!(SimplicialComplex::from_faces(k.n(), &k.maximal_faces()).unwrap(), k);
    }

    #[test]
    fn faces_are_downward_closed(k in complex_strategy(7)) {
        for f in k.faces() {
            for x in f.iter() {
                prop_assert!(k.contains(f.without(x)));
            }
        }
    }

    #[test]
    fn threshold_certificates_round_trip(k in complex_strategy(5)) {
        if let Some(w) = is_threshold(&k) {
            prop_assert_eq!(SimplicialComplex::from_weights(&w), k);
        }
    }

    #[test]
    fn threshold_is_relabeling_invariant((k, perm) in complex_strategy(5).prop_flat_map(|k| {
        let n = k.n();
        (Just(k), permutation_strategy(n))
    })) {
        prop_assert_eq!(is_threshold(&k).is_some(), is_threshold(&k.permuted(&perm)).is_some());
    }
}

#[test]
fn counts_match_enumeration() {
    for n in 1..=4 {
        let all = enumerate_complexes(n, false).unwrap();
        assert_eq!(all.len() as u64, count_complexes(n).unwrap());
        let triparted = enumerate_complexes(n, true).unwrap();
        assert!(triparted.iter().all(SimplicialComplex::is_at_least_triparted));
        assert_eq!(triparted.len(), all.iter().filter(|k| k.is_at_least_triparted()).count());
    }
}
