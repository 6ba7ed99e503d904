//! Decorated ordered set partition enumeration, Eulerian cross-checks,
//! multi-split catalogs, and the ray catalog for Z_{3,n}.

use std::collections::BTreeMap;

use num::{Signed, Zero};

use crate::arrangement::{DecoratedOsp, WeightedBladeArrangement};
use crate::building_blocks::{check_tau_closure, unit_tripod, ClosureOutcome};
use crate::error::{domain, Result};
use crate::frame::GroundFrame;
use crate::heights::all_ksubsets;
use crate::subset::Subset;
use crate::tropical::is_in_z;
use crate::{rat, Rat};

/// Number of permutations of {1,…,m} with exactly d descents.
pub fn eulerian(m: u64, d: u64) -> u64 {
    if d >= m {
        return 0;
    }
    // A(m,d) = (d+1)·A(m−1,d) + (m−d)·A(m−1,d−1), A(1,0) = 1.
    let mut row = vec![1u64]; // m = 1
    for mm in 2..=m {
        let mut next = vec![0u64; mm as usize];
        for dd in 0..mm {
            let a = if (dd as usize) < row.len() { row[dd as usize] } else { 0 };
            let b = if dd > 0 { row[(dd - 1) as usize] } else { 0 };
            next[dd as usize] = (dd + 1) * a + (mm - dd) * b;
        }
        row = next;
    }
    row[d as usize]
}

/// All DOSPs of type Δ_{k,n}: ordered set partitions of [n] into blocks of
/// size ≥ 2 with weights 1 ≤ s_j ≤ |S_j|−1 summing to k. `anchored` restricts
/// to 1 ∈ S_1.
pub fn enumerate_dosps(k: u32, n: u32, anchored: bool) -> Result<Vec<DecoratedOsp>> {
    if k < 1 || k >= n {
        return Err(domain(format!("DOSP type needs 1 ≤ k ≤ n−1, got ({k},{n})")));
    }
    let ground = Subset::from_iter(1..=n);
    let mut partitions: Vec<Vec<Subset>> = Vec::new();
    let mut stack: Vec<Subset> = Vec::new();
    fn recurse(
        remaining: Subset,
        first: bool,
        anchored: bool,
        stack: &mut Vec<Subset>,
        out: &mut Vec<Vec<Subset>>,
    ) {
        if remaining.is_empty() {
            out.push(stack.clone());
            return;
        }
        if remaining.len() < 2 {
            return; // leftover element can never form a block of size ≥ 2
        }
        for block in subsets_of(remaining) {
            if block.len() < 2 {
                continue;
            }
            if anchored && first && !block.contains(1) {
                continue;
            }
            stack.push(block);
            recurse(remaining.difference(block), false, anchored, stack, out);
            stack.pop();
        }
    }
    recurse(ground, true, anchored, &mut stack, &mut partitions);

    let mut dosps = Vec::new();
    for blocks in partitions {
        let sizes: Vec<u32> = blocks.iter().map(|b| b.len()).collect();
        for weights in weight_vectors(&sizes, k) {
            dosps.push(DecoratedOsp::new(
                blocks.iter().map(|b| b.elements()).collect(),
                weights,
            )?);
        }
    }
    dosps.sort();
    Ok(dosps)
}

/// All subsets of `s` (including empty and full), by mask enumeration over
/// the elements of `s`.
fn subsets_of(s: Subset) -> Vec<Subset> {
    let elems = s.elements();
    (0u64..(1 << elems.len()))
        .map(|mask| {
            elems
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect()
        })
        .collect()
}

/// Integer vectors s with 1 ≤ s_j ≤ sizes_j − 1 and Σ s_j = k.
fn weight_vectors(sizes: &[u32], k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn recurse(sizes: &[u32], left: i64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if sizes.is_empty() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let max = sizes[0].saturating_sub(1);
        for s in 1..=max {
            if i64::from(s) > left {
                break;
            }
            cur.push(s);
            recurse(&sizes[1..], left - i64::from(s), cur, out);
            cur.pop();
        }
    }
    recurse(sizes, i64::from(k), &mut cur, &mut out);
    out
}

/// Nontrivial (≥ 2 blocks) DOSP classes modulo cyclic block rotation. Each
/// class has exactly one representative with 1 ∈ S_1, so these are the
/// anchored DOSPs with at least two blocks.
pub fn enumerate_multisplits(k: u32, n: u32) -> Result<Vec<DecoratedOsp>> {
    if k < 2 || k > n.saturating_sub(2) {
        return Err(domain(format!("multi-splits need 2 ≤ k ≤ n−2, got ({k},{n})")));
    }
    Ok(enumerate_dosps(k, n, true)?
        .into_iter()
        .filter(|d| d.num_blocks() >= 2)
        .collect())
}

/// One certified extreme-ray candidate of Z_{3,n}.
#[derive(Clone, Debug)]
pub struct RayEntry {
    pub arrangement: WeightedBladeArrangement,
    /// Orbit size of the normalized arrangement under the dihedral group.
    pub orbit_size: usize,
    /// Class tag: number of negative terms / number of unit tripods summed.
    pub tag: String,
}

/// The catalog of Z_{3,n} ray candidates for 6 ≤ n ≤ 9.
pub struct RayCatalog {
    pub n: u32,
    pub entries: Vec<RayEntry>,
}

/// Divides by the absolute value of the first nonzero coefficient (in
/// canonical term order), so two arrangements on the same ray compare equal
/// while antipodal ones stay distinct.
pub fn ray_normalize(a: &WeightedBladeArrangement) -> WeightedBladeArrangement {
    match a.sorted_terms().first() {
        None => a.clone(),
        Some((_, _, c)) => a.scale(&(rat(1) / c.abs())),
    }
}

fn relabel(a: &WeightedBladeArrangement, map: &dyn Fn(u32) -> u32) -> WeightedBladeArrangement {
    let mut out = WeightedBladeArrangement::zero(a.k(), a.n());
    for (l, j, c) in a.terms() {
        let l2: Subset = l.iter().map(map).collect();
        let j2: Subset = j.iter().map(map).collect();
        out.add_term(l2, j2, c.clone()).expect("relabeling preserves validity");
    }
    out
}

/// The 2n dihedral relabelings of an arrangement, ray-normalized.
pub fn dihedral_orbit(a: &WeightedBladeArrangement) -> Vec<WeightedBladeArrangement> {
    let n = a.n();
    let mut orbit = Vec::new();
    for r in 0..n {
        for refl in [false, true] {
            let image = relabel(a, &|i: u32| {
                let shifted = (i - 1 + r) % n + 1;
                if refl {
                    n + 1 - shifted
                } else {
                    shifted
                }
            });
            let norm = ray_normalize(&image);
            if !orbit.contains(&norm) {
                orbit.push(norm);
            }
        }
    }
    orbit
}

/// Generates, certifies, and filters the ray candidates for k = 3:
/// nonfrozen single blades and sums of 1–3 distinct unit tripods, each
/// certified with is_in_z, deduplicated up to positive rescaling, and passed
/// through the coarseness filter (no entry is a sum of two non-proportional
/// certified candidates).
pub fn catalog_rays(n: u32) -> Result<RayCatalog> {
    if !(6..=9).contains(&n) {
        return Err(domain(format!("ray catalog supports 6 ≤ n ≤ 9, got {n}")));
    }
    let k = 3u32;
    let frame = GroundFrame::ambient(n)?;

    let mut candidates: Vec<(WeightedBladeArrangement, String)> = Vec::new();
    for j in all_ksubsets(k, n) {
        if !frame.is_frozen(j)? {
            candidates.push((
                WeightedBladeArrangement::grade0_blade(k, n, j)?,
                "blade".to_string(),
            ));
        }
    }
    let tripods: Vec<WeightedBladeArrangement> = all_ksubsets(k, n)
        .into_iter()
        .filter(|&j| frame.is_totally_nonfrozen(j).unwrap_or(false))
        .map(|j| unit_tripod(&frame, j).and_then(|s| s.tau(k)))
        .collect::<Result<_>>()?;
    for (i, t) in tripods.iter().enumerate() {
        candidates.push((t.clone(), "tripods:1".to_string()));
        for (i2, t2) in tripods.iter().enumerate().skip(i + 1) {
            let s2 = t.add(t2)?;
            candidates.push((s2.clone(), "tripods:2".to_string()));
            for t3 in tripods.iter().skip(i2 + 1) {
                candidates.push((s2.add(t3)?, "tripods:3".to_string()));
            }
        }
    }

    // Certify and deduplicate up to positive rescaling.
    let mut certified: Vec<(WeightedBladeArrangement, String)> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (a, tag) in candidates {
        if a.is_zero() {
            continue;
        }
        let norm = ray_normalize(&a);
        let key: Vec<(Subset, Subset, String)> = norm
            .sorted_terms()
            .into_iter()
            .map(|(l, j, c)| (l, j, c.to_string()))
            .collect();
        if !seen.insert(key) {
            continue;
        }
        if is_in_z(&norm)?.is_ok() {
            certified.push((norm, tag));
        }
    }

    // Coarseness: drop x when x = y + z (up to positive scale) for certified
    // non-proportional y, z. All pair sums are keyed once so the filter is
    // quadratic rather than cubic in the certified count.
    let term_key = |a: &WeightedBladeArrangement| -> Vec<(Subset, Subset, String)> {
        a.sorted_terms()
            .into_iter()
            .map(|(l, j, c)| (l, j, c.to_string()))
            .collect()
    };
    let mut pair_sums = std::collections::BTreeSet::new();
    for (iy, (y, _)) in certified.iter().enumerate() {
        for (z, _) in certified.iter().skip(iy + 1) {
            let sum = y.add(z)?;
            if !sum.is_zero() {
                pair_sums.insert(term_key(&ray_normalize(&sum)));
            }
        }
    }
    let mut entries = Vec::new();
    for (x, tag) in certified.iter() {
        let coarse = !pair_sums.contains(&term_key(x));
        if coarse {
            entries.push(RayEntry {
                orbit_size: dihedral_orbit(x).len(),
                arrangement: x.clone(),
                tag: format!(
                    "{}/neg:{}",
                    tag,
                    x.terms().filter(|&(_, _, c)| c < &Rat::zero()).count()
                ),
            });
        }
    }
    Ok(RayCatalog { n, entries })
}

/// Verifies the τ-closure property for every unit tripod of Δ_{3,n}.
pub fn tripods_closed(n: u32) -> Result<bool> {
    let frame = GroundFrame::ambient(n)?;
    for j in all_ksubsets(3, n) {
        if !frame.is_totally_nonfrozen(j)? {
            continue;
        }
        let spec = unit_tripod(&frame, j)?;
        let report = check_tau_closure(&spec, 3)?;
        if report.iter().any(|(_, o)| matches!(o, ClosureOutcome::Unmatched)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Class-tag → count summary of a catalog.
pub fn catalog_summary(c: &RayCatalog) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for e in &c.entries {
        *out.entry(e.tag.clone()).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eulerian_values() {
        assert_eq!(eulerian(3, 1), 4);
        assert_eq!(eulerian(5, 2), 66);
        assert_eq!(eulerian(4, 1), 11);
        for m in 1..=8 {
            assert_eq!(eulerian(m, 0), 1);
            assert_eq!((0..m).map(|d| eulerian(m, d)).sum::<u64>(), (1..=m).product::<u64>());
        }
    }

    #[test]
    fn dosp_counts() {
        assert_eq!(enumerate_dosps(2, 4, true).unwrap().len(), 4);
        assert_eq!(enumerate_dosps(2, 5, true).unwrap().len(), 11);
        assert_eq!(enumerate_dosps(3, 6, true).unwrap().len(), 66);
        assert_eq!(enumerate_multisplits(2, 4).unwrap().len(), 3);
        assert_eq!(enumerate_multisplits(2, 5).unwrap().len(), 10);
        assert_eq!(enumerate_multisplits(3, 6).unwrap().len(), 65);
    }

    #[test]
    fn trivial_dosp_included() {
        let all = enumerate_dosps(2, 4, true).unwrap();
        assert!(all
            .iter()
            .any(|d| d.num_blocks() == 1 && d.weights == vec![2]));
    }

    #[test]
    fn dosps_are_valid() {
        for d in enumerate_dosps(3, 7, true).unwrap() {
            assert_eq!(d.total_weight(), 3);
            let mut all: Vec<u32> = d.blocks.iter().flatten().copied().collect();
            all.sort();
            assert_eq!(all, (1..=7).collect::<Vec<_>>());
        }
    }
}
