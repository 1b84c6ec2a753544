//! Labeled enumeration as order ideals of the poset of size-≥2 subsets.
//!
//! For n ≤ 6 every subset of [n] is a bit position of a `u64`, so a complex
//! is a single word while the search runs.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use super::SimplicialComplex;
use crate::error::{Error, Result};
use crate::marks::MarkSet;

/// Largest n handled by the ideal enumerator.
pub const MAX_ENUMERATION_N: usize = 6;

/// One poset element: the subset-masks it stands for and the masks it needs.
#[derive(Clone, Copy)]
struct Element {
    bits: u64,
    need: u64,
}

fn check_range(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ENUMERATION_N {
        return Err(Error::OutOfRange { what: "n", detail: format!("{n} (enumeration supports 1..={MAX_ENUMERATION_N})") });
    }
    Ok(())
}

/// Elements are orbits of `perm` on size-≥2 subsets, smaller sets first.
fn orbit_elements(n: usize, perm: &[usize]) -> Vec<Element> {
    let mut seen = 0u64;
    let mut out = Vec::new();
    let mut masks: Vec<u32> = (0..1u32 << n).filter(|m| m.count_ones() >= 2).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    for m in masks {
        if seen & (1 << m) != 0 {
            continue;
        }
        let (mut bits, mut need) = (0u64, 0u64);
        let mut s = MarkSet::from_bits(m);
        loop {
            bits |= 1 << s.bits();
            for x in s.iter() {
                let sub = s.without(x);
                if sub.len() >= 2 {
                    need |= 1 << sub.bits();
                }
            }
            s = s.permuted(perm);
            if s.bits() == m {
                break;
            }
        }
        seen |= bits;
        out.push(Element { bits, need });
    }
    out
}

fn walk(elems: &[Element], i: usize, present: u64, visit: &mut impl FnMut(u64)) {
    if i == elems.len() {
        visit(present);
        return;
    }
    walk(elems, i + 1, present, visit);
    let e = elems[i];
    if present & e.need == e.need {
        walk(elems, i + 1, present | e.bits, visit);
    }
}

fn count_ideals(elems: &[Element], i: usize, present: u64) -> u64 {
    if i == elems.len() {
        return 1;
    }
    let e = elems[i];
    let mut total = count_ideals(elems, i + 1, present);
    if present & e.need == e.need {
        total += count_ideals(elems, i + 1, present | e.bits);
    }
    total
}

fn identity(n: usize) -> Vec<usize> {
    (1..=n).collect()
}

pub(crate) fn complex_from_bits(n: usize, present: u64) -> SimplicialComplex {
    let faces: BTreeSet<MarkSet> = (0..64u32).filter(|&m| present & (1 << m) != 0).map(MarkSet::from_bits).collect();
    SimplicialComplex::from_closed_unchecked(n, faces)
}

/// Calls `visit` with the face bitset of every labeled complex on [n].
pub fn visit_complexes(n: usize, mut visit: impl FnMut(u64)) -> Result<()> {
    check_range(n)?;
    let elems = orbit_elements(n, &identity(n));
    walk(&elems, 0, 0, &mut visit);
    Ok(())
}

/// Every labeled complex on [n] once, in a fixed search order.
pub fn enumerate_complexes(n: usize, triparted_only: bool) -> Result<Vec<SimplicialComplex>> {
    let mut out = Vec::new();
    visit_complexes(n, |bits| {
        let k = complex_from_bits(n, bits);
        if !triparted_only || k.is_at_least_triparted() {
            out.push(k);
        }
    })?;
    Ok(out)
}

pub fn count_complexes(n: usize) -> Result<u64> {
    check_range(n)?;
    Ok(count_ideals(&orbit_elements(n, &identity(n)), 0, 0))
}

/// Number of complexes up to relabeling, by Burnside over S_n.
pub fn count_complexes_up_to_iso(n: usize) -> Result<u64> {
    check_range(n)?;
    let mut fixed_by_type: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    let mut total: u128 = 0;
    let mut group_order: u128 = 0;
    for perm in (1..=n).permutations(n) {
        let ty = cycle_type(&perm);
        let fixed = *fixed_by_type.entry(ty).or_insert_with(|| count_ideals(&orbit_elements(n, &perm), 0, 0));
        total += fixed as u128;
        group_order += 1;
    }
    Ok((total / group_order) as u64)
}

pub(crate) fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let (mut len, mut i) = (0, start);
        while !seen[i] {
            seen[i] = true;
            i = perm[i] - 1;
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force over all families of size-≥2 subsets, for tiny n.
    fn brute_force_count(n: usize) -> usize {
        let masks: Vec<u32> = (0..1u32 << n).filter(|m| m.count_ones() >= 2).collect();
        (0..1u64 << masks.len())
            .filter(|&choice| {
                let has = |m: u32| m.count_ones() < 2 || masks.iter().position(|&x| x == m).is_some_and(|p| choice & (1 << p) != 0);
                masks.iter().enumerate().all(|(p, &m)| {
                    choice & (1 << p) == 0 || (0..n).filter(|b| m & (1 << b) != 0).all(|b| has(m & !(1 << b)))
                })
            })
            .count()
    }

    #[test]
    fn counts_match_brute_force() {
        for n in 1..=4 {
            assert_eq!(count_complexes(n).unwrap() as usize, brute_force_count(n), "n = {n}");
        }
    }

    #[test]
    fn known_small_counts() {
        let counts: Vec<u64> = (2..=5).map(|n| count_complexes(n).unwrap()).collect();
        assert_eq!(counts, [2, 9, 114, 6894]);
    }

    #[test]
    fn enumeration_matches_count_and_is_canonical() {
        for n in 1..=5 {
            let all = enumerate_complexes(n, false).unwrap();
            assert_eq!(all.len() as u64, count_complexes(n).unwrap());
            let distinct: BTreeSet<_> = all.iter().cloned().collect();
            assert_eq!(distinct.len(), all.len());
            for k in &all {
                assert_eq!(&SimplicialComplex::from_faces(n, &k.faces()).unwrap(), k);
            }
        }
        assert_eq!(enumerate_complexes(2, false).unwrap().len(), 2);
        assert_eq!(enumerate_complexes(2, true).unwrap().len(), 0);
        assert!(enumerate_complexes(7, false).is_err());
    }

    #[test]
    fn burnside_matches_canonical_forms() {
        for n in 1..=4 {
            let mut reps = BTreeSet::new();
            for k in enumerate_complexes(n, false).unwrap() {
                let canon = k.canonical_form();
                reps.insert(canon);
            }
            assert_eq!(count_complexes_up_to_iso(n).unwrap() as usize, reps.len(), "n = {n}");
        }
        // empty, edge, path, two edges... on three points: 5 classes
        assert_eq!(count_complexes_up_to_iso(3).unwrap(), 5);
    }
}
