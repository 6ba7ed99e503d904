//! The τ building blocks: generators τ_{e_J,e_I} = −(ℓ−2)β_J + Σ_j β_{…I_j…},
//! the index set 𝒟_J of admissible replacements, counting, and verification
//! that the family is closed under the boundary operators.

use itertools::Itertools;

use crate::arrangement::WeightedBladeArrangement;
use crate::error::{domain, Result};
use crate::frame::GroundFrame;
use crate::subset::Subset;
use crate::rat;

/// A τ generator: the source vertex e_J (nonfrozen, with cyclic intervals
/// J_1,…,J_ℓ in its frame) together with one replacement block I_j per
/// interval, where |I_j| = |J_j|, I_j ⊆ J_j ∪ C_{j+1} (the gap following
/// J_j), and I_j ≠ J_j.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TauSpec {
    frame: GroundFrame,
    j: Subset,
    i_blocks: Vec<Subset>,
}

impl TauSpec {
    pub fn new(frame: GroundFrame, j: Subset, i_blocks: Vec<Subset>) -> Result<TauSpec> {
        if frame.is_frozen(j)? {
            return Err(domain(format!("τ source vertex {j} is frozen")));
        }
        let intervals = frame.cyclic_intervals(j)?;
        if intervals.len() < 2 {
            return Err(domain("τ needs at least two cyclic intervals"));
        }
        if i_blocks.len() != intervals.len() {
            return Err(domain(format!(
                "expected {} replacement blocks, got {}",
                intervals.len(),
                i_blocks.len()
            )));
        }
        let complements = frame.interlaced_complements(j)?;
        let l = intervals.len();
        for (idx, (jj, ib)) in intervals.iter().zip(&i_blocks).enumerate() {
            let jj_set: Subset = jj.iter().copied().collect();
            // The gap following J_j is the complement preceding J_{j+1}.
            let gap: Subset = complements[(idx + 1) % l].iter().copied().collect();
            if ib.len() as usize != jj.len() {
                return Err(domain(format!("|I_{idx}| ≠ |J_{idx}|")));
            }
            if *ib == jj_set {
                return Err(domain(format!("I_{idx} equals J_{idx} (vertex deleted)")));
            }
            if !ib.is_subset_of(jj_set.union(gap)) {
                return Err(domain(format!(
                    "I_{idx} = {ib} not contained in J_{idx} ∪ following gap"
                )));
            }
        }
        Ok(TauSpec { frame, j, i_blocks })
    }

    pub fn frame(&self) -> GroundFrame {
        self.frame
    }

    pub fn source(&self) -> Subset {
        self.j
    }

    pub fn i_blocks(&self) -> &[Subset] {
        &self.i_blocks
    }

    /// Number of cyclic intervals of the source vertex.
    pub fn ell(&self) -> usize {
        self.i_blocks.len()
    }

    /// The arrangement τ_{e_J,e_I} = −(ℓ−2)β^{(L)}_J + Σ_j β^{(L)}_{…I_j…},
    /// graded at L = the frame's removed set, normalized.
    pub fn tau(&self, k: u32) -> Result<WeightedBladeArrangement> {
        let l = self.frame.removed();
        let n = self.frame.n();
        if l.len() + self.j.len() != k {
            return Err(domain(format!(
                "|L| + |J| = {} ≠ k = {k}",
                l.len() + self.j.len()
            )));
        }
        let intervals = self.frame.cyclic_intervals(self.j)?;
        let ell = intervals.len() as i64;
        let mut out = WeightedBladeArrangement::zero(k, n);
        out.add_term(l, self.j, rat(-(ell - 2)))?;
        for (jj, ib) in intervals.iter().zip(&self.i_blocks) {
            let jj_set: Subset = jj.iter().copied().collect();
            let support = self.j.difference(jj_set).union(*ib);
            out.add_term(l, support, rat(1))?;
        }
        Ok(out)
    }
}

/// Enumerates 𝒟_J: the Cartesian product, over the cyclic intervals J_j, of
/// all |J_j|-subsets of J_j ∪ C_{j+1} other than J_j itself.
pub fn dj_vertices(frame: &GroundFrame, j: Subset) -> Result<Vec<TauSpec>> {
    if frame.is_frozen(j)? {
        return Err(domain(format!("{j} is frozen; 𝒟_J is empty")));
    }
    let intervals = frame.cyclic_intervals(j)?;
    let complements = frame.interlaced_complements(j)?;
    let l = intervals.len();
    let factors: Vec<Vec<Subset>> = intervals
        .iter()
        .enumerate()
        .map(|(idx, jj)| {
            let jj_set: Subset = jj.iter().copied().collect();
            let gap: Subset = complements[(idx + 1) % l].iter().copied().collect();
            Subset::k_subsets_of(jj_set.union(gap), jj.len() as u32)
                .into_iter()
                .filter(|&s| s != jj_set)
                .collect()
        })
        .collect();
    factors
        .into_iter()
        .multi_cartesian_product()
        .map(|i_blocks| TauSpec::new(*frame, j, i_blocks))
        .collect()
}

/// Closed-form |𝒟_J| = Π_j (C(|J_j|+|C_{j+1}|, |J_j|) − 1).
pub fn tau_count(frame: &GroundFrame, j: Subset) -> Result<u64> {
    let intervals = frame.cyclic_intervals(j)?;
    let complements = frame.interlaced_complements(j)?;
    let l = intervals.len();
    let mut total = 1u64;
    for (idx, jj) in intervals.iter().enumerate() {
        let gap = complements[(idx + 1) % l].len();
        total *= binomial((jj.len() + gap) as u64, jj.len() as u64) - 1;
    }
    Ok(total)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// The unit tripod at a totally nonfrozen vertex: every interval is a
/// singleton {a} replaced by its frame successor {a⁺} (all radii r_i = 1).
pub fn unit_tripod(frame: &GroundFrame, j: Subset) -> Result<TauSpec> {
    if !frame.is_totally_nonfrozen(j)? {
        return Err(domain(format!("unit tripod needs a totally nonfrozen vertex, got {j}")));
    }
    let i_blocks = frame
        .cyclic_intervals(j)?
        .iter()
        .map(|b| Subset::singleton(frame.succ(b[0])))
        .collect();
    TauSpec::new(*frame, j, i_blocks)
}

/// Outcome of ∂_j applied to a τ generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureOutcome {
    Zero,
    /// ∂_j(τ) equals this τ over the face frame (source totally nonfrozen).
    Tau(TauSpec),
    /// ∂_j(τ) is not in the τ family on the face.
    Unmatched,
}

/// For each j ∈ [n], checks that ∂_j(τ) is zero or again a τ generator over
/// the frame (n, L∪{j}) with totally nonfrozen source vertex.
pub fn check_tau_closure(spec: &TauSpec, k: u32) -> Result<Vec<(u32, ClosureOutcome)>> {
    let tau = spec.tau(k)?;
    let n = spec.frame().n();
    let mut out = Vec::new();
    for j in 1..=n {
        if spec.frame().removed().contains(j) {
            continue;
        }
        let dj = tau.boundary_j(j)?;
        if dj.is_zero() {
            out.push((j, ClosureOutcome::Zero));
            continue;
        }
        let face_frame = GroundFrame::new(n, spec.frame().removed().with(j))?;
        let matched = find_matching_tau(&dj, &face_frame, k)?;
        out.push((
            j,
            matched.map_or(ClosureOutcome::Unmatched, ClosureOutcome::Tau),
        ));
    }
    Ok(out)
}

/// Searches the τ family on `frame` for a generator equal to `target`.
/// When the target has a term with negative coefficient, its support is the
/// only possible source vertex; otherwise (ℓ' = 2) all totally nonfrozen
/// sources of the right arity are tried.
fn find_matching_tau(
    target: &WeightedBladeArrangement,
    frame: &GroundFrame,
    k: u32,
) -> Result<Option<TauSpec>> {
    let arity = k - frame.removed().len();
    let zero = crate::Rat::from_integer(0.into());
    let negative_source: Option<Subset> = target
        .terms()
        .find(|&(_, _, c)| c < &zero)
        .map(|(_, j, _)| j);
    let candidates: Vec<Subset> = match negative_source {
        Some(j) => vec![j],
        None => crate::heights::all_ksubsets(arity, frame.n())
            .into_iter()
            .filter(|j| {
                j.is_subset_of(frame.active())
                    && frame.is_totally_nonfrozen(*j).unwrap_or(false)
            })
            .collect(),
    };
    for j in candidates {
        if !j.is_subset_of(frame.active()) || !frame.is_totally_nonfrozen(j)? {
            continue;
        }
        for spec in dj_vertices(frame, j)? {
            if spec.tau(k)? == *target {
                return Ok(Some(spec));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn sub(e: &[u32]) -> Subset {
        Subset::from_elements(e).unwrap()
    }

    fn tau512() -> (TauSpec, WeightedBladeArrangement) {
        let frame = GroundFrame::ambient(12).unwrap();
        let spec = unit_tripod(&frame, sub(&[1, 3, 5, 7, 9])).unwrap();
        let t = spec.tau(5).unwrap();
        (spec, t)
    }

    #[test]
    fn tau_values() {
        // τ_{e_{246},e_{135}} in Δ_{3,6}.
        let frame = GroundFrame::ambient(6).unwrap();
        let spec = TauSpec::new(
            frame,
            sub(&[2, 4, 6]),
            vec![Subset::singleton(3), Subset::singleton(5), Subset::singleton(1)],
        )
        .unwrap();
        let t = spec.tau(3).unwrap();
        let mut expected = WeightedBladeArrangement::zero(3, 6);
        for (c, j) in [
            (-1i64, [2u32, 4, 6]),
            (1, [3, 4, 6]),
            (1, [2, 5, 6]),
            (1, [1, 2, 4]),
        ] {
            expected.add_term(Subset::EMPTY, sub(&j), rat(c)).unwrap();
        }
        assert_eq!(t, expected);

        // τ_{e_{13579},e_{2,4,6,8,10}} in Δ_{5,12}.
        let (_, t512) = tau512();
        let mut expected = WeightedBladeArrangement::zero(5, 12);
        for (c, j) in [
            (-3i64, vec![1u32, 3, 5, 7, 9]),
            (1, vec![2, 3, 5, 7, 9]),
            (1, vec![1, 4, 5, 7, 9]),
            (1, vec![1, 3, 6, 7, 9]),
            (1, vec![1, 3, 5, 8, 9]),
            (1, vec![1, 3, 5, 7, 10]),
        ] {
            expected.add_term(Subset::EMPTY, sub(&j), rat(c)).unwrap();
        }
        assert_eq!(t512, expected);
    }

    #[test]
    fn ell_two_has_no_negative_part() {
        // J with two intervals: coefficient −(ℓ−2) = 0.
        let frame = GroundFrame::ambient(6).unwrap();
        let j = sub(&[1, 2, 4]);
        for spec in dj_vertices(&frame, j).unwrap() {
            let t = spec.tau(3).unwrap();
            assert!(t.terms().all(|(_, _, c)| *c >= num::Zero::zero()));
        }
    }

    #[test]
    fn dj_counts() {
        let f9 = GroundFrame::ambient(9).unwrap();
        let j = sub(&[2, 5, 7, 8]);
        let specs = dj_vertices(&f9, j).unwrap();
        assert_eq!(specs.len(), 10);
        assert_eq!(tau_count(&f9, j).unwrap(), 10);

        let f6 = GroundFrame::ambient(6).unwrap();
        let specs6 = dj_vertices(&f6, sub(&[2, 4, 6])).unwrap();
        assert_eq!(specs6.len(), 1);
        assert_eq!(
            specs6[0].i_blocks(),
            &[Subset::singleton(3), Subset::singleton(5), Subset::singleton(1)]
        );

        // Closed form matches stream length for every nonfrozen J at (3,7),(4,8).
        for (k, n) in [(3u32, 7u32), (4, 8)] {
            let f = GroundFrame::ambient(n).unwrap();
            for j in crate::heights::all_ksubsets(k, n) {
                if f.is_frozen(j).unwrap() {
                    continue;
                }
                assert_eq!(
                    dj_vertices(&f, j).unwrap().len() as u64,
                    tau_count(&f, j).unwrap()
                );
            }
        }
    }

    #[test]
    fn closure_on_delta_5_12() {
        let (spec, _) = tau512();
        let report = check_tau_closure(&spec, 5).unwrap();
        assert!(report
            .iter()
            .all(|(_, o)| !matches!(o, ClosureOutcome::Unmatched)));
    }
}
