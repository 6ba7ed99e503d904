use crate::error::{domain, Result};
use crate::subset::Subset;

/// The ambient pair (n, removed set L) defining a gapped cyclic order on the
/// active set {1,…,n} ∖ L.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct GroundFrame {
    n: u32,
    removed: Subset,
}

impl GroundFrame {
    pub fn new(n: u32, removed: Subset) -> Result<GroundFrame> {
        if n == 0 || n > 64 {
            return Err(domain(format!("ground set size n = {n} outside 1..=64")));
        }
        let ground = Subset::from_iter(1..=n);
        if !removed.is_subset_of(ground) {
            return Err(domain(format!(
                "removed set {removed} not contained in {{1,…,{n}}}"
            )));
        }
        if removed == ground {
            return Err(domain("active set is empty"));
        }
        Ok(GroundFrame { n, removed })
    }

    pub fn ambient(n: u32) -> Result<GroundFrame> {
        GroundFrame::new(n, Subset::EMPTY)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn removed(&self) -> Subset {
        self.removed
    }

    pub fn active(&self) -> Subset {
        Subset::from_iter(1..=self.n).difference(self.removed)
    }

    pub fn is_active(&self, i: u32) -> bool {
        i >= 1 && i <= self.n && !self.removed.contains(i)
    }

    fn check_active_subset(&self, j: Subset) -> Result<()> {
        if !j.is_subset_of(self.active()) {
            return Err(domain(format!(
                "{j} is not contained in the active set of frame (n={}, L={})",
                self.n, self.removed
            )));
        }
        Ok(())
    }

    /// Gapped cyclic successor on the active set.
    pub fn succ(&self, i: u32) -> u32 {
        debug_assert!(self.is_active(i));
        let mut v = i;
        loop {
            v = if v == self.n { 1 } else { v + 1 };
            if self.is_active(v) {
                return v;
            }
        }
    }

    /// Gapped cyclic predecessor on the active set.
    pub fn pred(&self, i: u32) -> u32 {
        debug_assert!(self.is_active(i));
        let mut v = i;
        loop {
            v = if v == 1 { self.n } else { v - 1 };
            if self.is_active(v) {
                return v;
            }
        }
    }

    /// Maximal runs of `J` under the successor map, as element lists in
    /// successor order. The block containing min(J) is listed first; the
    /// remaining blocks follow in cyclic order.
    pub fn cyclic_intervals(&self, j: Subset) -> Result<Vec<Vec<u32>>> {
        self.check_active_subset(j)?;
        if j.is_empty() {
            return Err(domain("cyclic_intervals of the empty set"));
        }
        if j == self.active() {
            // Single block: the whole active cycle starting at min(J).
            let start = j.min().unwrap();
            let mut block = vec![start];
            let mut v = self.succ(start);
            while v != start {
                block.push(v);
                v = self.succ(v);
            }
            return Ok(vec![block]);
        }
        // Initial point of the block containing min(J).
        let mut anchor = j.min().unwrap();
        while j.contains(self.pred(anchor)) {
            anchor = self.pred(anchor);
        }
        // Walk the full cycle from the anchor, grouping consecutive runs.
        let mut blocks: Vec<Vec<u32>> = Vec::new();
        let mut v = anchor;
        let mut in_run = false;
        loop {
            if j.contains(v) {
                if in_run {
                    blocks.last_mut().unwrap().push(v);
                } else {
                    blocks.push(vec![v]);
                    in_run = true;
                }
            } else {
                in_run = false;
            }
            v = self.succ(v);
            if v == anchor {
                break;
            }
        }
        Ok(blocks)
    }

    /// The interlaced complements C_1,…,C_ℓ: C_j immediately precedes the j-th
    /// cyclic interval of `J` in the gapped cyclic order.
    pub fn interlaced_complements(&self, j: Subset) -> Result<Vec<Vec<u32>>> {
        if j == self.active() {
            return Err(domain("interlaced complements of the full active set"));
        }
        let blocks = self.cyclic_intervals(j)?;
        let mut out = Vec::with_capacity(blocks.len());
        for block in &blocks {
            let mut gap = Vec::new();
            let mut v = self.pred(block[0]);
            while !j.contains(v) {
                gap.push(v);
                v = self.pred(v);
            }
            gap.reverse();
            out.push(gap);
        }
        Ok(out)
    }

    /// A vertex is frozen when its support is a single cyclic interval
    /// (including |J| ≤ 1 and J = active set): it induces the trivial
    /// subdivision and its blade symbol is zero.
    pub fn is_frozen(&self, j: Subset) -> Result<bool> {
        self.check_active_subset(j)?;
        if j.len() <= 1 || j == self.active() {
            return Ok(true);
        }
        Ok(self.cyclic_intervals(j)?.len() == 1)
    }

    /// True when `J` splits into |J| singleton intervals (all gaps nonempty).
    pub fn is_totally_nonfrozen(&self, j: Subset) -> Result<bool> {
        self.check_active_subset(j)?;
        if j.is_empty() || j == self.active() {
            return Ok(false);
        }
        Ok(self.cyclic_intervals(j)?.len() as u32 == j.len())
    }

    /// Weak separation: no elements i₁,i₂ ∈ I∖J and j₁,j₂ ∈ J∖I alternating
    /// in the gapped cyclic order. Equivalently, the labels of I∖J and J∖I
    /// around the cycle change at most twice.
    pub fn weakly_separated(&self, i: Subset, j: Subset) -> Result<bool> {
        self.check_active_subset(i)?;
        self.check_active_subset(j)?;
        if i.len() != j.len() {
            return Err(domain(format!(
                "weak separation needs equal arities, got |{i}| and |{j}|"
            )));
        }
        let a = i.difference(j);
        let b = j.difference(i);
        if a.is_empty() || b.is_empty() {
            return Ok(true);
        }
        let labels: Vec<bool> = self
            .active()
            .iter()
            .filter(|&x| a.contains(x) || b.contains(x))
            .map(|x| a.contains(x))
            .collect();
        let transitions = (0..labels.len())
            .filter(|&t| labels[t] != labels[(t + 1) % labels.len()])
            .count();
        Ok(transitions <= 2)
    }

    pub fn is_ws_collection(&self, collection: &[Subset]) -> Result<bool> {
        for (a, x) in collection.iter().enumerate() {
            for y in &collection[a + 1..] {
                if !self.weakly_separated(*x, *y)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Every octahedral face of Δ_{k,n}: a pair (L, Q) with |L| = k−2, |Q| = 4,
/// Q ⊆ {1,…,n}∖L. The six vertices of the octahedron are e_L + e_{xy}, {x,y} ⊂ Q.
pub fn octahedra(k: u32, n: u32) -> Result<Vec<(Subset, [u32; 4])>> {
    if k < 2 || k > n.saturating_sub(2) {
        return Err(domain(format!("octahedra need 2 ≤ k ≤ n−2, got ({k},{n})")));
    }
    let ground = Subset::from_iter(1..=n);
    let mut out = Vec::new();
    for l in Subset::k_subsets_of(ground, k - 2) {
        for q in Subset::k_subsets_of(ground.difference(l), 4) {
            let e = q.elements();
            out.push((l, [e[0], e[1], e[2], e[3]]));
        }
    }
    Ok(out)
}
