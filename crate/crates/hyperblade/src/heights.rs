//! Piecewise-linear height machinery on the vertex space R^{C(n,k)}: the
//! cyclic height h, the vertex heights ρ_J and 𝔥_J, the cube operators 𝓛/𝓡,
//! the kinematic subspace, and the planar basis η_J.

use std::collections::BTreeMap;

use num::Zero;

use crate::error::{domain, Result};
use crate::frame::GroundFrame;
use crate::linalg;
use crate::subset::Subset;
use crate::{rat, Rat};

/// h(x) = min_j L_j(x) for integer x with Σx_i = 0, where
/// L_j(x) = x_{j+1} + 2x_{j+2} + ⋯ + (n−1)x_{j−1} (indices mod n).
///
/// Computed in O(n) via the unique expansion x = Σ t_j(e_j − e_{j+1}) with
/// t ≥ 0 and min t = 0: h(x) = −Σ_j t_j, and t is the partial-sum vector of x
/// shifted so its minimum is zero.
pub fn hmin(x: &[i64]) -> Result<i64> {
    if x.iter().sum::<i64>() != 0 {
        return Err(domain("hmin requires coordinate sum zero"));
    }
    let mut partial = 0i64;
    let mut sums = Vec::with_capacity(x.len());
    for &v in x {
        partial += v;
        sums.push(partial);
    }
    let m = sums.iter().min().copied().unwrap_or(0);
    Ok(-sums.iter().map(|p| p - m).sum::<i64>())
}

/// Direct min-over-L_j evaluation, kept as an independent oracle for `hmin`.
pub fn hmin_oracle(x: &[i64]) -> Result<i64> {
    if x.iter().sum::<i64>() != 0 {
        return Err(domain("hmin requires coordinate sum zero"));
    }
    let n = x.len();
    let mut best = None;
    for j in 0..n {
        let mut v = 0i64;
        for m in 1..n {
            v += m as i64 * x[(j + m) % n];
        }
        best = Some(best.map_or(v, |b: i64| b.min(v)));
    }
    Ok(best.unwrap_or(0))
}

fn indicator(n: u32, j: Subset) -> Vec<i64> {
    let mut v = vec![0i64; n as usize];
    for e in j.iter() {
        v[(e - 1) as usize] += 1;
    }
    v
}

/// ρ_J(e_I) = h(e_I − e_J) ≤ 0; −ρ is the cyclic-root walk distance.
pub fn rho(n: u32, j: Subset, i: Subset) -> Result<i64> {
    if j.len() != i.len() {
        return Err(domain("rho needs |I| = |J|"));
    }
    let ei = indicator(n, i);
    let ej = indicator(n, j);
    let x: Vec<i64> = ei.iter().zip(&ej).map(|(a, b)| a - b).collect();
    hmin(&x)
}

/// An exact-rational vector in R^{C(n,k)} indexed by k-subsets of [n];
/// omitted keys are zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexVector {
    k: u32,
    n: u32,
    coords: BTreeMap<Subset, Rat>,
}

impl VertexVector {
    pub fn zero(k: u32, n: u32) -> VertexVector {
        VertexVector {
            k,
            n,
            coords: BTreeMap::new(),
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn get(&self, j: Subset) -> Rat {
        self.coords.get(&j).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn set(&mut self, j: Subset, v: Rat) -> Result<()> {
        if j.len() != self.k || !j.is_subset_of(Subset::from_iter(1..=self.n)) {
            return Err(domain(format!("{j} is not a {}-subset of [{}]", self.k, self.n)));
        }
        if v.is_zero() {
            self.coords.remove(&j);
        } else {
            self.coords.insert(j, v);
        }
        Ok(())
    }

    pub fn add_to(&mut self, j: Subset, v: Rat) -> Result<()> {
        let cur = self.get(j);
        self.set(j, cur + v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Subset, &Rat)> {
        self.coords.iter().map(|(&j, c)| (j, c))
    }

    pub fn basis(k: u32, n: u32, j: Subset) -> Result<VertexVector> {
        let mut v = VertexVector::zero(k, n);
        v.set(j, rat(1))?;
        Ok(v)
    }

    pub fn add(&self, other: &VertexVector) -> Result<VertexVector> {
        if (self.k, self.n) != (other.k, other.n) {
            return Err(domain("adding vertex vectors of different type"));
        }
        let mut out = self.clone();
        for (j, c) in other.iter() {
            out.add_to(j, c.clone())?;
        }
        Ok(out)
    }

    #[must_use]
    pub fn scale(&self, c: &Rat) -> VertexVector {
        if c.is_zero() {
            return VertexVector::zero(self.k, self.n);
        }
        VertexVector {
            k: self.k,
            n: self.n,
            coords: self.coords.iter().map(|(&j, v)| (j, v * c)).collect(),
        }
    }

    /// The lineality generator Σ_{J∋a} e^J.
    pub fn lineality(k: u32, n: u32, a: u32) -> Result<VertexVector> {
        if a < 1 || a > n {
            return Err(domain(format!("index {a} outside [{n}]")));
        }
        let mut v = VertexVector::zero(k, n);
        for j in all_ksubsets(k, n) {
            if j.contains(a) {
                v.set(j, rat(1))?;
            }
        }
        Ok(v)
    }

    /// Membership in the kinematic space: Σ_{J∋a} v_J = 0 for every a ∈ [n].
    pub fn is_kinematic(&self) -> bool {
        let mut acc: Vec<Rat> = vec![Rat::zero(); self.n as usize];
        for (j, c) in self.iter() {
            for a in j.iter() {
                acc[(a - 1) as usize] += c;
            }
        }
        acc.iter().all(Rat::is_zero)
    }
}

pub fn all_ksubsets(k: u32, n: u32) -> Vec<Subset> {
    Subset::k_subsets_of(Subset::from_iter(1..=n), k)
}

/// The height vector 𝔥_J = Σ_I ρ_J(e_I) e^I.
pub fn height_vector(k: u32, n: u32, j: Subset) -> Result<VertexVector> {
    if j.len() != k {
        return Err(domain("height_vector needs |J| = k"));
    }
    let mut v = VertexVector::zero(k, n);
    for i in all_ksubsets(k, n) {
        v.set(i, rat(rho(n, j, i)?))?;
    }
    Ok(v)
}

/// The cube operator 𝓛 on the vertex space: on a basis vector e^J it is the
/// signed decrement cube of J (no frozen normalization), extended linearly.
pub fn cube_l(v: &VertexVector) -> Result<VertexVector> {
    let frame = GroundFrame::ambient(v.n())?;
    let mut out = VertexVector::zero(v.k(), v.n());
    for (j, c) in v.iter() {
        for (corner, sign) in crate::arrangement::cube_corners(&frame, j)? {
            out.add_to(corner, c * rat(sign))?;
        }
    }
    Ok(out)
}

/// The operator 𝓡: e^J ↦ −(1/n)·𝔥_J, extended linearly.
pub fn cube_r(v: &VertexVector) -> Result<VertexVector> {
    let scale = -Rat::new(1.into(), i64::from(v.n()).into());
    let mut out = VertexVector::zero(v.k(), v.n());
    for (j, c) in v.iter() {
        let h = height_vector(v.k(), v.n(), j)?;
        out = out.add(&h.scale(&(c * &scale)))?;
    }
    Ok(out)
}

/// The planar basis functional η_J evaluated on a kinematic vector:
/// η_J(v) = −(1/n) Σ_I v_I ρ_J(e_I). Identically zero for frozen J.
pub fn eta(v: &VertexVector, j: Subset) -> Result<Rat> {
    if !v.is_kinematic() {
        return Err(domain("eta is only defined on the kinematic space"));
    }
    if j.len() != v.k() {
        return Err(domain("eta needs |J| = k"));
    }
    let mut acc = Rat::zero();
    for (i, c) in v.iter() {
        acc += c * rat(rho(v.n(), j, i)?);
    }
    Ok(-acc / rat(i64::from(v.n())))
}

/// An exact basis of the kinematic space 𝒦_{k,n} (dimension C(n,k) − n for
/// the sizes used here), as vectors over the k-subset index.
pub fn kinematic_basis(k: u32, n: u32) -> Result<Vec<VertexVector>> {
    let subsets = all_ksubsets(k, n);
    let mut m: Vec<Vec<Rat>> = vec![vec![Rat::zero(); subsets.len()]; n as usize];
    for (col, j) in subsets.iter().enumerate() {
        for a in j.iter() {
            m[(a - 1) as usize][col] = rat(1);
        }
    }
    let basis = linalg::nullspace(&m);
    basis
        .into_iter()
        .map(|coords| {
            let mut v = VertexVector::zero(k, n);
            for (col, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    v.set(subsets[col], c)?;
                }
            }
            Ok(v)
        })
        .collect()
}

/// Expands a linear functional on 𝒦_{k,n}, given by coefficients f_J
/// (f(w) = Σ_J f_J w_J), in the planar basis {η_J : J nonfrozen}. The change
/// of basis is provably invertible; a singular system is an internal bug.
pub fn express_in_planar(f: &VertexVector) -> Result<BTreeMap<Subset, Rat>> {
    let (k, n) = (f.k(), f.n());
    let frame = GroundFrame::ambient(n)?;
    let nonfrozen: Vec<Subset> = all_ksubsets(k, n)
        .into_iter()
        .filter(|&j| !frame.is_frozen(j).unwrap_or(true))
        .collect();
    let kin = kinematic_basis(k, n)?;
    if kin.len() != nonfrozen.len() {
        return Err(domain(format!(
            "kinematic dimension {} ≠ number of nonfrozen subsets {}",
            kin.len(),
            nonfrozen.len()
        )));
    }
    // Row per kinematic basis vector w_b, column per nonfrozen J: η_J(w_b).
    let mut a = Vec::with_capacity(kin.len());
    let mut b = Vec::with_capacity(kin.len());
    for w in &kin {
        let row: Result<Vec<Rat>> = nonfrozen.iter().map(|&j| eta(w, j)).collect();
        a.push(row?);
        b.push(w.iter().map(|(j, c)| f.get(j) * c).sum());
    }
    let x = linalg::solve_square(&a, &b)
        .ok_or_else(|| domain("planar change of basis unexpectedly singular"))?;
    Ok(nonfrozen
        .into_iter()
        .zip(x)
        .filter(|(_, c)| !c.is_zero())
        .collect())
}
