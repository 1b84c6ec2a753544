//! Threshold recognition: does some weight vector cut out exactly K?

use std::collections::BTreeSet;

use num_traits::Signed;

use super::enumerate::{complex_from_bits, visit_complexes, MAX_ENUMERATION_N};
use super::{SimplicialComplex, WeightVector};
use crate::error::{Error, Result};
use crate::lp::{maximize, Constraint, LpOutcome, Relation};
use crate::marks::MarkSet;

/// True when `i` may replace `j` in every face containing `j` but not `i`.
fn dominates(k: &SimplicialComplex, i: usize, j: usize) -> bool {
    k.faces.iter().filter(|f| f.contains(j) && !f.contains(i)).all(|f| k.contains(f.without(j).with(i)))
}

/// Weight-induced complexes are shifted along the weight order, so every
/// pair of marks is comparable under `dominates`.
fn passes_shift_filter(k: &SimplicialComplex) -> bool {
    (1..=k.n).all(|j| (1..j).all(|i| dominates(k, i, j) || dominates(k, j, i)))
}

/// A certifying weight vector, or `None` when K is not threshold.
///
/// Maximizes ε subject to Σ_F a ≤ 1 on maximal faces, Σ_G a ≥ 1 + ε on
/// minimal non-faces, ε ≤ a_i ≤ 1 and ε ≤ 1; K is threshold iff ε* > 0.
pub fn is_threshold(k: &SimplicialComplex) -> Option<WeightVector> {
    if !passes_shift_filter(k) {
        return None;
    }
    lp_certificate(k)
}

fn lp_certificate(k: &SimplicialComplex) -> Option<WeightVector> {
    let n = k.n;
    let row = |set: MarkSet, eps: i64| {
        let mut coeffs: Vec<i64> = (1..=n).map(|m| i64::from(set.contains(m))).collect();
        coeffs.push(eps);
        coeffs
    };
    let mut constraints = Vec::new();
    for f in k.maximal_faces().into_iter().filter(|f| f.len() >= 2) {
        constraints.push(Constraint { coeffs: row(f, 0), rel: Relation::Le, rhs: 1 });
    }
    for g in k.minimal_nonfaces() {
        constraints.push(Constraint { coeffs: row(g, -1), rel: Relation::Ge, rhs: 1 });
    }
    for m in 1..=n {
        let single = MarkSet::singleton(m);
        constraints.push(Constraint { coeffs: row(single, 0), rel: Relation::Le, rhs: 1 });
        constraints.push(Constraint { coeffs: row(single, -1), rel: Relation::Ge, rhs: 0 });
    }
    constraints.push(Constraint { coeffs: row(MarkSet::EMPTY, 1), rel: Relation::Le, rhs: 1 });
    let mut objective = vec![0; n];
    objective.push(1);

    let (mut x, value) = match maximize(&objective, &constraints) {
        LpOutcome::Optimal { x, value } => (x, value),
        LpOutcome::Infeasible => return None,
        LpOutcome::Unbounded => unreachable!("ε ≤ 1 bounds the objective"),
    };
    if !value.is_positive() {
        return None;
    }
    x.truncate(n);
    let weights = WeightVector::new(x).expect("a_i ≥ ε > 0 and a_i ≤ 1");
    assert_eq!(&SimplicialComplex::from_weights(&weights), k, "threshold certificate failed to reproduce K");
    Some(weights)
}

fn check_range(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ENUMERATION_N {
        return Err(Error::OutOfRange { what: "n", detail: format!("{n} (threshold counting supports 1..={MAX_ENUMERATION_N})") });
    }
    Ok(())
}

/// Number of labeled threshold complexes on [n].
///
/// For n ≤ 5 every complex is tested. For n = 6 only complexes shifted along
/// 1 < 2 < … < n are tested, each weighted by its labeled orbit size.
pub fn count_threshold(n: usize) -> Result<u64> {
    check_range(n)?;
    if n <= 5 {
        let mut count = 0;
        visit_complexes(n, |bits| {
            if is_threshold(&complex_from_bits(n, bits)).is_some() {
                count += 1;
            }
        })?;
        Ok(count)
    } else {
        Ok(shifted_threshold_classes(n)?.iter().map(|(_, orbit)| orbit).sum())
    }
}

/// Number of threshold complexes on [n] up to relabeling.
pub fn count_threshold_up_to_iso(n: usize) -> Result<u64> {
    Ok(shifted_threshold_classes(n)?.len() as u64)
}

/// One representative per isomorphism class of threshold complexes, paired
/// with the number of labeled complexes in its class.
///
/// Representatives are shifted: F ∈ K, j ∈ F, i ∉ F, i < j ⇒ F − j + i ∈ K.
/// Each threshold class holds exactly one such complex, and its automorphism
/// group permutes only mutually dominating marks.
pub fn shifted_threshold_classes(n: usize) -> Result<Vec<(SimplicialComplex, u64)>> {
    check_range(n)?;
    let mut masks: Vec<u32> = (0..1u32 << n).filter(|m| m.count_ones() >= 2).collect();
    let index_sum = |m: u32| MarkSet::from_bits(m).iter().sum::<usize>();
    masks.sort_by_key(|&m| (m.count_ones(), index_sum(m), m));
    let elems: Vec<(u64, u64)> = masks
        .iter()
        .map(|&m| {
            let s = MarkSet::from_bits(m);
            let mut need = 0u64;
            for j in s.iter() {
                let sub = s.without(j);
                if sub.len() >= 2 {
                    need |= 1 << sub.bits();
                }
                for i in (1..j).filter(|&i| !s.contains(i)) {
                    need |= 1 << sub.with(i).bits();
                }
            }
            (1u64 << m, need)
        })
        .collect();

    let mut shifted = Vec::new();
    walk_shifted(&elems, 0, 0, &mut shifted);
    let factorial = |k: usize| (1..=k as u64).product::<u64>();
    let mut out = Vec::new();
    for bits in shifted {
        let k = complex_from_bits(n, bits);
        if is_threshold(&k).is_none() {
            continue;
        }
        let mut classes: Vec<BTreeSet<usize>> = Vec::new();
        for m in 1..=n {
            match classes.iter_mut().find(|c| {
                let r = *c.iter().next().expect("classes are nonempty");
                dominates(&k, r, m) && dominates(&k, m, r)
            }) {
                Some(c) => {
                    c.insert(m);
                }
                None => classes.push(BTreeSet::from([m])),
            }
        }
        let orbit = factorial(n) / classes.iter().map(|c| factorial(c.len())).product::<u64>();
        out.push((k, orbit));
    }
    out.sort();
    Ok(out)
}

fn walk_shifted(elems: &[(u64, u64)], i: usize, present: u64, out: &mut Vec<u64>) {
    if i == elems.len() {
        out.push(present);
        return;
    }
    walk_shifted(elems, i + 1, present, out);
    let (bits, need) = elems[i];
    if present & need == need {
        walk_shifted(elems, i + 1, present | bits, out);
    }
}

#[cfg(test)]
mod tests {
    use itertools::Itertools;

    use super::*;
    use crate::complexes::enumerate_complexes;

    fn cx(n: usize, faces: &[&str]) -> SimplicialComplex {
        let gens: Vec<MarkSet> = faces.iter().map(|f| MarkSet::parse(f, n).unwrap()).collect();
        SimplicialComplex::from_faces(n, &gens).unwrap()
    }

    #[test]
    fn threshold_examples() {
        for n in 1..=5 {
            let w = is_threshold(&SimplicialComplex::zero_skeleton(n)).expect("0-skeleton is threshold");
            assert_eq!(SimplicialComplex::from_weights(&w), SimplicialComplex::zero_skeleton(n));
        }
        assert!(is_threshold(&cx(5, &["12", "34"])).is_none());
        assert!(is_threshold(&cx(4, &["12", "34"])).is_none());
        let tri = cx(3, &["12", "13", "23"]);
        assert_eq!(SimplicialComplex::from_weights(&is_threshold(&tri).unwrap()), tri);
        assert!(is_threshold(&SimplicialComplex::full_simplex(4)).is_some());
    }

    #[test]
    fn shift_filter_never_rejects_a_threshold_complex() {
        for n in 1..=5 {
            for k in enumerate_complexes(n, false).unwrap() {
                if lp_certificate(&k).is_some() {
                    assert!(passes_shift_filter(&k), "{k}");
                }
            }
        }
    }

    #[test]
    fn threshold_is_relabeling_invariant() {
        for k in enumerate_complexes(4, false).unwrap() {
            let t = is_threshold(&k).is_some();
            for p in (1..=4).permutations(4) {
                assert_eq!(is_threshold(&k.permuted(&p)).is_some(), t, "{k} under {p:?}");
            }
        }
    }

    #[test]
    fn known_threshold_counts() {
        let counts: Vec<u64> = (2..=5).map(|n| count_threshold(n).unwrap()).collect();
        assert_eq!(counts, [2, 9, 96, 2690]);
    }

    #[test]
    fn shifted_classes_reproduce_labeled_counts() {
        for n in 1..=5 {
            let via_classes: u64 = shifted_threshold_classes(n).unwrap().iter().map(|c| c.1).sum();
            let direct = enumerate_complexes(n, false).unwrap().iter().filter(|k| is_threshold(k).is_some()).count();
            assert_eq!(via_classes, direct as u64, "n = {n}");
        }
    }

    #[test]
    fn threshold_classes_match_canonical_forms() {
        for n in 1..=4 {
            let mut reps = BTreeSet::new();
            for k in enumerate_complexes(n, false).unwrap() {
                if is_threshold(&k).is_some() {
                    reps.insert(k.canonical_form());
                }
            }
            assert_eq!(count_threshold_up_to_iso(n).unwrap() as usize, reps.len());
        }
    }
}
