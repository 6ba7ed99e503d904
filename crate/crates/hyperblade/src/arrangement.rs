use std::collections::BTreeMap;

use num::Zero;

use crate::error::{domain, Result};
use crate::frame::GroundFrame;
use crate::subset::Subset;
use crate::Rat;

/// A graded, sparse, exact-rational linear combination of blade symbols
/// β^{(L)}_J. Terms whose support is frozen in the frame (n, L) are the zero
/// element and are never stored; neither are zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightedBladeArrangement {
    k: u32,
    n: u32,
    terms: BTreeMap<(Subset, Subset), Rat>,
}

impl WeightedBladeArrangement {
    pub fn zero(k: u32, n: u32) -> WeightedBladeArrangement {
        WeightedBladeArrangement {
            k,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates (face L, support J, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (Subset, Subset, &Rat)> {
        self.terms.iter().map(|(&(l, j), c)| (l, j, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, l: Subset, j: Subset) -> Rat {
        self.terms.get(&(l, j)).cloned().unwrap_or_else(Rat::zero)
    }

    /// Adds c·β^{(L)}_J, normalizing frozen symbols and zeros away.
    pub fn add_term(&mut self, l: Subset, j: Subset, c: Rat) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        if !l.intersection(j).is_empty() {
            return Err(domain(format!("face {l} and support {j} intersect")));
        }
        if l.len() + j.len() != self.k {
            return Err(domain(format!(
                "|L| + |J| = {} ≠ k = {} for L={l}, J={j}",
                l.len() + j.len(),
                self.k
            )));
        }
        let frame = GroundFrame::new(self.n, l)?;
        if frame.is_frozen(j)? {
            return Ok(());
        }
        let entry = self.terms.entry((l, j)).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(l, j));
        }
        Ok(())
    }

    /// The single normalized term β^{(L)}_J with coefficient 1 (possibly zero).
    pub fn blade(k: u32, n: u32, l: Subset, j: Subset) -> Result<WeightedBladeArrangement> {
        let mut a = WeightedBladeArrangement::zero(k, n);
        a.add_term(l, j, crate::rat(1))?;
        Ok(a)
    }

    /// Grade-0 blade β_J.
    pub fn grade0_blade(k: u32, n: u32, j: Subset) -> Result<WeightedBladeArrangement> {
        WeightedBladeArrangement::blade(k, n, Subset::EMPTY, j)
    }

    pub fn add(&self, other: &WeightedBladeArrangement) -> Result<WeightedBladeArrangement> {
        if (self.k, self.n) != (other.k, other.n) {
            return Err(domain("adding arrangements of different type (k,n)"));
        }
        let mut out = self.clone();
        for (&(l, j), c) in &other.terms {
            out.add_term(l, j, c.clone())?;
        }
        Ok(out)
    }

    #[must_use]
    pub fn scale(&self, c: &Rat) -> WeightedBladeArrangement {
        if c.is_zero() {
            return WeightedBladeArrangement::zero(self.k, self.n);
        }
        WeightedBladeArrangement {
            k: self.k,
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(key, v)| (*key, v * c))
                .collect(),
        }
    }

    /// True when every term has an empty face label.
    pub fn is_grade0(&self) -> bool {
        self.terms.keys().all(|(l, _)| l.is_empty())
    }

    /// The boundary operator ∂_j. Terms with j ∈ L map to zero; otherwise
    /// (L,J) ↦ (L∪{j}, J∖{ℓ}) where ℓ = j when j ∈ J, and otherwise ℓ is the
    /// first element of J reached from j along the frame-(n,L) successor.
    pub fn boundary_j(&self, j: u32) -> Result<WeightedBladeArrangement> {
        if j < 1 || j > self.n {
            return Err(domain(format!("boundary index {j} outside 1..={}", self.n)));
        }
        let mut out = WeightedBladeArrangement::zero(self.k, self.n);
        for (&(l, supp), c) in &self.terms {
            if l.contains(j) {
                continue;
            }
            let frame = GroundFrame::new(self.n, l)?;
            let ell = if supp.contains(j) {
                j
            } else {
                let mut v = frame.succ(j);
                while !supp.contains(v) {
                    v = frame.succ(v);
                }
                v
            };
            out.add_term(l.with(j), supp.without(ell), c.clone())?;
        }
        Ok(out)
    }

    /// ∂ = ∂_1 + ⋯ + ∂_n.
    pub fn boundary(&self) -> Result<WeightedBladeArrangement> {
        let mut out = WeightedBladeArrangement::zero(self.k, self.n);
        for j in 1..=self.n {
            out = out.add(&self.boundary_j(j)?)?;
        }
        Ok(out)
    }

    /// ∂_L = ∂_{ℓ₁}⋯∂_{ℓ_d}, composed in ascending index order.
    pub fn boundary_face(&self, l: Subset) -> Result<WeightedBladeArrangement> {
        let mut cur = self.clone();
        for j in l.iter() {
            cur = cur.boundary_j(j)?;
        }
        Ok(cur)
    }

    /// The 𝓛 element at grade L: the decrement cube over the cyclic initial
    /// points of J's intervals, with signs (−1)^{1+|M|}, frozen corners
    /// normalized away.
    pub fn l_element(k: u32, n: u32, l: Subset, j: Subset) -> Result<WeightedBladeArrangement> {
        let frame = GroundFrame::new(n, l)?;
        let mut out = WeightedBladeArrangement::zero(k, n);
        for (corner, sign) in cube_corners(&frame, j)? {
            out.add_term(l, corner, crate::rat(sign))?;
        }
        Ok(out)
    }

    /// Keys of grade-L terms of ∂_L(a) with nonzero coefficient.
    pub fn support_on_face(&self, l: Subset) -> Result<Vec<Subset>> {
        if l.len() != self.k - 2 {
            return Err(domain(format!(
                "support_on_face needs |L| = k−2 = {}, got {}",
                self.k - 2,
                l.len()
            )));
        }
        let b = self.boundary_face(l)?;
        Ok(b
            .terms
            .keys()
            .filter(|(face, _)| *face == l)
            .map(|&(_, j)| j)
            .collect())
    }

    /// Canonical term order for serialization and goldens: (|L|, L, J) with
    /// subsets compared as ascending element lists.
    pub fn sorted_terms(&self) -> Vec<(Subset, Subset, Rat)> {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .map(|(&(l, j), c)| (l, j, c.clone()))
            .collect();
        v.sort_by(|a, b| {
            (a.0.len(), a.0.elements(), a.1.elements()).cmp(&(
                b.0.len(),
                b.0.elements(),
                b.1.elements(),
            ))
        });
        v
    }
}

/// Corners of the decrement cube of `J` in `frame`: each subset M of the
/// interval initial points is independently replaced by its predecessor;
/// the corner carries sign (−1)^{1+|M|}.
pub fn cube_corners(frame: &GroundFrame, j: Subset) -> Result<Vec<(Subset, i64)>> {
    if j.is_empty() {
        return Err(domain("cube of the empty set"));
    }
    let inits: Vec<u32> = frame
        .cyclic_intervals(j)?
        .iter()
        .map(|b| b[0])
        .collect();
    let t = inits.len();
    let mut out = Vec::with_capacity(1 << t);
    for m in 0u32..(1 << t) {
        let mut corner = j;
        for (bit, &ip) in inits.iter().enumerate() {
            if m & (1 << bit) != 0 {
                corner = corner.without(ip).with(frame.pred(ip));
            }
        }
        let sign = if (1 + m.count_ones()) % 2 == 0 { 1 } else { -1 };
        out.push((corner, sign));
    }
    Ok(out)
}

/// A decorated ordered set partition ((S_1)_{s_1},…,(S_ℓ)_{s_ℓ}) of a frame's
/// active set, encoding a hypersimplicial blade / multi-split.
#[derive(Clone, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub struct DecoratedOsp {
    pub blocks: Vec<Vec<u32>>,
    pub weights: Vec<u32>,
}

impl DecoratedOsp {
    pub fn new(blocks: Vec<Vec<u32>>, weights: Vec<u32>) -> Result<DecoratedOsp> {
        if blocks.len() != weights.len() {
            return Err(domain("blocks and weights have different lengths"));
        }
        for (b, &s) in blocks.iter().zip(&weights) {
            if s < 1 || s as usize > b.len().saturating_sub(1) {
                return Err(domain(format!(
                    "weight {s} outside 1..=|S|−1 for block of size {}",
                    b.len()
                )));
            }
        }
        Ok(DecoratedOsp { blocks, weights })
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn total_weight(&self) -> u32 {
        self.weights.iter().sum()
    }

    /// All ℓ cyclic rotations of the block list.
    pub fn rotations(&self) -> Vec<DecoratedOsp> {
        let l = self.blocks.len();
        (0..l)
            .map(|r| DecoratedOsp {
                blocks: (0..l).map(|i| self.blocks[(i + r) % l].clone()).collect(),
                weights: (0..l).map(|i| self.weights[(i + r) % l]).collect(),
            })
            .collect()
    }

    /// Canonical representative modulo cyclic block rotation: the block whose
    /// initial point (first listed element) is smallest is rotated to front.
    /// For blocks stored in ascending order this is the block containing the
    /// smallest labeled element; for the cyclic-interval blocks produced by
    /// [`dosp_from_vertex`] it picks the first block after the wrap.
    #[must_use]
    pub fn rotation_normalized(&self) -> DecoratedOsp {
        let pos = self
            .blocks
            .iter()
            .enumerate()
            .min_by_key(|(_, b)| b.first().copied().unwrap_or(u32::MAX))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let l = self.blocks.len();
        DecoratedOsp {
            blocks: (0..l)
                .map(|i| self.blocks[(i + pos) % l].clone())
                .collect(),
            weights: (0..l).map(|i| self.weights[(i + pos) % l]).collect(),
        }
    }
}

/// The DOSP of the 2-split induced by a nonfrozen vertex e_J in `frame`:
/// blocks S_j = C_j ∪ J_j (interlaced complement followed by interval), with
/// weights s_j = |J_j|.
pub fn dosp_from_vertex(frame: &GroundFrame, j: Subset) -> Result<DecoratedOsp> {
    if frame.is_frozen(j)? {
        return Err(domain(format!(
            "vertex {j} is frozen in its frame; the trivial subdivision has no DOSP"
        )));
    }
    let intervals = frame.cyclic_intervals(j)?;
    let complements = frame.interlaced_complements(j)?;
    let mut blocks = Vec::with_capacity(intervals.len());
    let mut weights = Vec::with_capacity(intervals.len());
    for (jj, cj) in intervals.iter().zip(&complements) {
        let mut block = cj.clone();
        block.extend_from_slice(jj);
        weights.push(jj.len() as u32);
        blocks.push(block);
    }
    Ok(DecoratedOsp::new(blocks, weights)?.rotation_normalized())
}

/// The nested partial-sum inequality system x_{S_1} ≥ s_1,
/// x_{S_1∪S_2} ≥ s_1+s_2, … through the (ℓ−1)-th partial union, together with
/// the ℓ cyclic block rotations of the underlying DOSP.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlateSystem {
    pub inequalities: Vec<(Subset, u32)>,
    pub rotations: Vec<DecoratedOsp>,
}

pub fn plate_system(d: &DecoratedOsp) -> PlateSystem {
    let mut inequalities = Vec::new();
    let mut union = Subset::EMPTY;
    let mut partial = 0u32;
    for i in 0..d.blocks.len().saturating_sub(1) {
        union = union.union(d.blocks[i].iter().copied().collect());
        partial += d.weights[i];
        inequalities.push((union, partial));
    }
    PlateSystem {
        inequalities,
        rotations: d.rotations(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn sub(e: &[u32]) -> Subset {
        Subset::from_elements(e).unwrap()
    }

    fn b(k: u32, n: u32, j: &[u32]) -> WeightedBladeArrangement {
        WeightedBladeArrangement::grade0_blade(k, n, sub(j)).unwrap()
    }

    #[test]
    fn frozen_blades_are_zero() {
        assert!(b(3, 6, &[1, 2, 3]).is_zero());
        assert!(!b(3, 6, &[2, 4, 6]).is_zero());
        assert!(WeightedBladeArrangement::blade(4, 8, sub(&[1]), sub(&[4, 5, 6]))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn boundary_single_blade_examples() {
        // ∂_2(β_{1456}) = β^{(2)}_{156}, ∂_1(β_{1456}) = 0 in Δ_{4,8}.
        let a = b(4, 8, &[1, 4, 5, 6]);
        let d2 = a.boundary_j(2).unwrap();
        let expected =
            WeightedBladeArrangement::blade(4, 8, sub(&[2]), sub(&[1, 5, 6])).unwrap();
        assert_eq!(d2, expected);
        assert!(a.boundary_j(1).unwrap().is_zero());
    }

    #[test]
    fn boundary_of_b135() {
        // ∂(β_{135}) in Δ_{3,6}, term-by-term from the cyclically-next rule.
        let d = b(3, 6, &[1, 3, 5]).boundary().unwrap();
        let mut expected = WeightedBladeArrangement::zero(3, 6);
        for (l, j) in [
            (1, [3, 5]),
            (2, [1, 5]),
            (3, [1, 5]),
            (4, [1, 3]),
            (5, [1, 3]),
            (6, [3, 5]),
        ] {
            expected.add_term(sub(&[l]), sub(&j), rat(1)).unwrap();
        }
        assert_eq!(d, expected);
    }

    #[test]
    fn boundary_of_zero() {
        assert!(WeightedBladeArrangement::zero(3, 7)
            .boundary()
            .unwrap()
            .is_zero());
    }

    #[test]
    fn l_element_small() {
        // 𝓛_{24} in Δ_{2,4} = −β_{24} − β_{13} (the mixed corners are frozen).
        let l = WeightedBladeArrangement::l_element(2, 4, Subset::EMPTY, sub(&[2, 4])).unwrap();
        let mut expected = WeightedBladeArrangement::zero(2, 4);
        expected.add_term(Subset::EMPTY, sub(&[2, 4]), rat(-1)).unwrap();
        expected.add_term(Subset::EMPTY, sub(&[1, 3]), rat(-1)).unwrap();
        assert_eq!(l, expected);
    }

    #[test]
    fn cube_corner_counts() {
        let f = GroundFrame::ambient(8).unwrap();
        // 𝓛_{1456}: initial points {1,4} → 4 corners over {1456,8456,1356,8356}.
        let corners = cube_corners(&f, sub(&[1, 4, 5, 6])).unwrap();
        let supports: std::collections::BTreeSet<Subset> =
            corners.iter().map(|&(s, _)| s).collect();
        assert_eq!(
            supports,
            [
                sub(&[1, 4, 5, 6]),
                sub(&[4, 5, 6, 8]),
                sub(&[1, 3, 5, 6]),
                sub(&[3, 5, 6, 8])
            ]
            .into_iter()
            .collect()
        );
        // Frozen single-interval J has one initial point → exactly 2 corners.
        assert_eq!(cube_corners(&f, sub(&[2, 3, 4])).unwrap().len(), 2);
    }

    #[test]
    fn support_on_face_examples() {
        let w37 = w37();
        let supp = w37.support_on_face(sub(&[1])).unwrap();
        assert_eq!(supp, vec![sub(&[2, 4]), sub(&[5, 7])]);
        // supp ∂_6(β_{135}+β_{235}+β_{356}) = {{3,5}} with coefficient 3.
        let a = b(3, 6, &[1, 3, 5])
            .add(&b(3, 6, &[2, 3, 5]))
            .unwrap()
            .add(&b(3, 6, &[3, 5, 6]))
            .unwrap();
        let face = a.boundary_face(sub(&[6])).unwrap();
        assert_eq!(a.support_on_face(sub(&[6])).unwrap(), vec![sub(&[3, 5])]);
        assert_eq!(face.coefficient(sub(&[6]), sub(&[3, 5])), rat(3));
    }

    fn w37() -> WeightedBladeArrangement {
        let mut a = WeightedBladeArrangement::zero(3, 7);
        a.add_term(Subset::EMPTY, sub(&[2, 4, 7]), rat(-1)).unwrap();
        a.add_term(Subset::EMPTY, sub(&[1, 2, 4]), rat(1)).unwrap();
        a.add_term(Subset::EMPTY, sub(&[2, 5, 7]), rat(1)).unwrap();
        a.add_term(Subset::EMPTY, sub(&[3, 4, 7]), rat(1)).unwrap();
        a
    }

    #[test]
    fn dosp_examples() {
        let f6 = GroundFrame::ambient(6).unwrap();
        let d = dosp_from_vertex(&f6, sub(&[2, 4, 6])).unwrap();
        assert_eq!(d.blocks, vec![vec![1, 2], vec![3, 4], vec![5, 6]]);
        assert_eq!(d.weights, vec![1, 1, 1]);

        let f6m = GroundFrame::new(6, sub(&[6])).unwrap();
        let d2 = dosp_from_vertex(&f6m, sub(&[2, 5])).unwrap();
        assert_eq!(d2.blocks, vec![vec![1, 2], vec![3, 4, 5]]);
        assert_eq!(d2.weights, vec![1, 1]);

        let f7m = GroundFrame::new(7, sub(&[1])).unwrap();
        let d3 = dosp_from_vertex(&f7m, sub(&[2, 4])).unwrap();
        assert_eq!(d3.blocks, vec![vec![3, 4], vec![5, 6, 7, 2]]);
        assert_eq!(d3.weights, vec![1, 1]);

        assert!(dosp_from_vertex(&f6, sub(&[1, 2, 3])).is_err());
    }

    #[test]
    fn plate_system_examples() {
        let d = DecoratedOsp::new(
            vec![vec![1, 2], vec![3, 4], vec![5, 6]],
            vec![1, 1, 1],
        )
        .unwrap();
        let p = plate_system(&d);
        assert_eq!(
            p.inequalities,
            vec![(sub(&[1, 2]), 1), (sub(&[1, 2, 3, 4]), 2)]
        );
        assert_eq!(p.rotations.len(), 3);

        let d2 = DecoratedOsp::new(vec![vec![1, 2, 3], vec![4, 5, 6]], vec![2, 1]).unwrap();
        assert_eq!(plate_system(&d2).inequalities, vec![(sub(&[1, 2, 3]), 2)]);
    }
}
