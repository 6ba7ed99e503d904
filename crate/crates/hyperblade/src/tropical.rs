//! Positive tropical Plücker certification, the Plücker→blade map, the
//! membership tests for X/Y/Z_{k,n}, face weight tables, and per-face
//! subdivision reports.

use std::collections::BTreeMap;

use num::Zero;
use serde::Serialize;

use crate::arrangement::{dosp_from_vertex, DecoratedOsp, WeightedBladeArrangement};
use crate::error::{domain, Result};
use crate::frame::{octahedra, GroundFrame};
use crate::heights::{all_ksubsets, VertexVector};
use crate::subset::Subset;
use crate::Rat;
#[cfg(test)]
use crate::rat;

/// A height function on k-subsets; zeros implicit.
pub type PluckerVector = VertexVector;

/// Witness for a failed positive tropical Plücker relation: the octahedron
/// (L, {a,b,c,d}) where p_{Lac}+p_{Lbd} ≠ max{p_{Lab}+p_{Lcd}, p_{Lad}+p_{Lbc}}.
#[derive(Clone, Debug, Serialize)]
pub struct PluckerWitness {
    pub face: Vec<u32>,
    pub quadruple: [u32; 4],
}

/// Checks every octahedral face for the three-term max relation.
pub fn is_pos_plucker(p: &PluckerVector) -> Result<std::result::Result<(), PluckerWitness>> {
    for (l, [a, b, c, d]) in octahedra(p.k(), p.n())? {
        let q = |x: u32, y: u32| p.get(l.with(x).with(y));
        let lhs = q(a, c) + q(b, d);
        let e1 = q(a, b) + q(c, d);
        let e2 = q(a, d) + q(b, c);
        if lhs != e1.clone().max(e2) {
            return Ok(Err(PluckerWitness {
                face: l.elements(),
                quadruple: [a, b, c, d],
            }));
        }
    }
    Ok(Ok(()))
}

/// The Plücker→blade map: p ↦ −(1/n) Σ_J p_J 𝓛_J, landing in grade 0 with
/// frozen symbols normalized away. Its kernel is exactly the lineality span
/// of the vectors Σ_{J∋a} e^J. Under this normalization to_blades(𝔥_J) = β_J.
pub fn to_blades(p: &PluckerVector) -> Result<WeightedBladeArrangement> {
    let (k, n) = (p.k(), p.n());
    let scale = -Rat::new(1.into(), i64::from(n).into());
    let mut out = WeightedBladeArrangement::zero(k, n);
    for (j, c) in p.iter() {
        let lj = WeightedBladeArrangement::l_element(k, n, Subset::EMPTY, j)?;
        out = out.add(&lj.scale(&(c * &scale)))?;
    }
    Ok(out)
}

/// The induced weights ω^{(L)}_{ij} on a second hypersimplicial face: keys are
/// exactly the nonfrozen pairs of the face frame (zeros stored explicitly).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FaceWeightTable {
    pub face: Subset,
    pub weights: BTreeMap<Subset, Rat>,
}

fn nonfrozen_pairs(frame: &GroundFrame) -> Result<Vec<Subset>> {
    let mut out = Vec::new();
    for pair in Subset::k_subsets_of(frame.active(), 2) {
        if !frame.is_frozen(pair)? {
            out.push(pair);
        }
    }
    Ok(out)
}

/// Coefficients of β^{(L)}_{ij} in ∂_L(a), for a grade-0 arrangement.
pub fn face_weights(a: &WeightedBladeArrangement, l: Subset) -> Result<FaceWeightTable> {
    if l.len() != a.k() - 2 {
        return Err(domain(format!(
            "face_weights needs |L| = k−2 = {}, got {}",
            a.k() - 2,
            l.len()
        )));
    }
    if !a.is_grade0() {
        return Err(domain("face_weights expects a grade-0 arrangement"));
    }
    let frame = GroundFrame::new(a.n(), l)?;
    let b = a.boundary_face(l)?;
    let weights = nonfrozen_pairs(&frame)?
        .into_iter()
        .map(|pair| (pair, b.coefficient(l, pair)))
        .collect();
    Ok(FaceWeightTable { face: l, weights })
}

/// The same table computed directly from a Plücker vector:
/// ω^{(L)}_{ij} = (1/n)(p_{Lij} − p_{L,i,j⁺} − p_{L,i⁺,j} + p_{L,i⁺,j⁺}),
/// with ⁺ the gapped successor on [n]∖L. Identical to
/// face_weights(to_blades(p), L).
pub fn face_weights_from_plucker(p: &PluckerVector, l: Subset) -> Result<FaceWeightTable> {
    if l.len() != p.k() - 2 {
        return Err(domain(format!(
            "face_weights_from_plucker needs |L| = k−2 = {}, got {}",
            p.k() - 2,
            l.len()
        )));
    }
    let frame = GroundFrame::new(p.n(), l)?;
    let inv_n = Rat::new(1.into(), i64::from(p.n()).into());
    let mut weights = BTreeMap::new();
    for pair in nonfrozen_pairs(&frame)? {
        let e = pair.elements();
        let (i, j) = (e[0], e[1]);
        let (si, sj) = (frame.succ(i), frame.succ(j));
        let q = |x: u32, y: u32| p.get(l.with(x).with(y));
        let second_diff = q(i, j) - q(i, sj) - q(si, j) + q(si, sj);
        weights.insert(pair, second_diff * &inv_n);
    }
    Ok(FaceWeightTable { face: l, weights })
}

/// Why an arrangement fails a membership test.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum Witness {
    NegativeWeight {
        #[serde(rename = "L")]
        face: Vec<u32>,
        pair: Vec<u32>,
        weight: String,
    },
    NotWeaklySeparated {
        #[serde(rename = "L")]
        face: Vec<u32>,
        pairs: [Vec<u32>; 2],
    },
}

fn faces(a: &WeightedBladeArrangement) -> Vec<Subset> {
    Subset::k_subsets_of(Subset::from_iter(1..=a.n()), a.k() - 2)
}

/// X membership: on every face L of size k−2, the supported pairs form a
/// weakly separated collection in the gapped order.
pub fn is_in_x(a: &WeightedBladeArrangement) -> Result<std::result::Result<(), Witness>> {
    for l in faces(a) {
        let frame = GroundFrame::new(a.n(), l)?;
        let supp = a.support_on_face(l)?;
        for (idx, &x) in supp.iter().enumerate() {
            for &y in &supp[idx + 1..] {
                if !frame.weakly_separated(x, y)? {
                    return Ok(Err(Witness::NotWeaklySeparated {
                        face: l.elements(),
                        pairs: [x.elements(), y.elements()],
                    }));
                }
            }
        }
    }
    Ok(Ok(()))
}

/// Y membership: every induced face weight ω^{(L)}_{ij} is ≥ 0.
pub fn is_in_y(a: &WeightedBladeArrangement) -> Result<std::result::Result<(), Witness>> {
    for l in faces(a) {
        let table = face_weights(a, l)?;
        for (pair, w) in &table.weights {
            if w < &Rat::zero() {
                return Ok(Err(Witness::NegativeWeight {
                    face: l.elements(),
                    pair: pair.elements(),
                    weight: w.to_string(),
                }));
            }
        }
    }
    Ok(Ok(()))
}

/// Z = X ∩ Y.
pub fn is_in_z(a: &WeightedBladeArrangement) -> Result<std::result::Result<(), Witness>> {
    if let Err(w) = is_in_y(a)? {
        return Ok(Err(w));
    }
    is_in_x(a)
}

/// Redundant cross-check of Z-ness on one face: for every nonfrozen pair q,
/// min{ω_q, Σ_{q' not weakly separated from q} ω_{q'}} = 0.
pub fn pairs_not_ws_check(a: &WeightedBladeArrangement, l: Subset) -> Result<bool> {
    let frame = GroundFrame::new(a.n(), l)?;
    let table = face_weights(a, l)?;
    for (q, w) in &table.weights {
        if w.is_zero() {
            continue;
        }
        if w < &Rat::zero() {
            return Ok(false);
        }
        let mut conflict = Rat::zero();
        for (q2, w2) in &table.weights {
            if q2 != q && !frame.weakly_separated(*q, *q2)? {
                conflict += w2;
            }
        }
        if !conflict.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Per-face tree-arrangement datum for a Z member: the supported pairs and
/// the DOSP of the 2-split each induces on ∂_L(Δ_{k,n}).
pub fn faces_report(
    a: &WeightedBladeArrangement,
) -> Result<std::result::Result<BTreeMap<Subset, Vec<(Subset, DecoratedOsp)>>, Witness>> {
    if let Err(w) = is_in_z(a)? {
        return Ok(Err(w));
    }
    let mut out = BTreeMap::new();
    for l in faces(a) {
        let frame = GroundFrame::new(a.n(), l)?;
        let mut entries = Vec::new();
        for pair in a.support_on_face(l)? {
            entries.push((pair, dosp_from_vertex(&frame, pair)?));
        }
        if !entries.is_empty() {
            out.insert(l, entries);
        }
    }
    Ok(Ok(out))
}

/// Equality modulo the lineality space: p and q induce the same blade
/// arrangement.
pub fn lineality_equal(p: &PluckerVector, q: &PluckerVector) -> Result<bool> {
    Ok(to_blades(p)? == to_blades(q)?)
}

/// All height vectors 𝔥_J of Δ_{k,n}; the canonical family of positive
/// tropical Plücker vectors, useful as certification test inputs.
pub fn all_height_vectors(k: u32, n: u32) -> Result<Vec<VertexVector>> {
    all_ksubsets(k, n)
        .into_iter()
        .map(|j| crate::heights::height_vector(k, n, j))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heights::height_vector;

    fn sub(e: &[u32]) -> Subset {
        Subset::from_elements(e).unwrap()
    }

    fn grade0(k: u32, n: u32, terms: &[(i64, &[u32])]) -> WeightedBladeArrangement {
        let mut a = WeightedBladeArrangement::zero(k, n);
        for &(c, j) in terms {
            a.add_term(Subset::EMPTY, sub(j), rat(c)).unwrap();
        }
        a
    }

    #[test]
    fn heights_are_pos_plucker() {
        for j in all_ksubsets(3, 6) {
            let h = height_vector(3, 6, j).unwrap();
            assert!(is_pos_plucker(&h).unwrap().is_ok(), "failed at {j}");
        }
        assert!(is_pos_plucker(&VertexVector::zero(2, 4)).unwrap().is_ok());
    }

    #[test]
    fn pos_plucker_counterexample() {
        let mut p = VertexVector::zero(2, 4);
        p.set(sub(&[1, 3]), rat(1)).unwrap();
        p.set(sub(&[2, 4]), rat(1)).unwrap();
        let w = is_pos_plucker(&p).unwrap().unwrap_err();
        assert_eq!(w.quadruple, [1, 2, 3, 4]);
    }

    #[test]
    fn to_blades_inversion_and_lineality() {
        for (k, n) in [(2u32, 4u32), (2, 5), (3, 6)] {
            for j in all_ksubsets(k, n) {
                let h = height_vector(k, n, j).unwrap();
                let expected = WeightedBladeArrangement::grade0_blade(k, n, j).unwrap();
                assert_eq!(to_blades(&h).unwrap(), expected);
            }
            let lin = VertexVector::lineality(k, n, 1).unwrap();
            assert!(to_blades(&lin).unwrap().is_zero());
        }
    }

    #[test]
    fn face_weight_routes_agree_on_basis_vectors() {
        for j in all_ksubsets(3, 6) {
            let p = VertexVector::basis(3, 6, j).unwrap();
            let a = to_blades(&p).unwrap();
            for l in 1..=6u32 {
                let l = Subset::singleton(l);
                assert_eq!(
                    face_weights(&a, l).unwrap(),
                    face_weights_from_plucker(&p, l).unwrap()
                );
            }
        }
    }

    #[test]
    fn membership_examples() {
        // −β_{246}+β_{124}+β_{346}+β_{256} ∈ Z_{3,6}.
        let a = grade0(
            3,
            6,
            &[(-1, &[2, 4, 6]), (1, &[1, 2, 4]), (1, &[3, 4, 6]), (1, &[2, 5, 6])],
        );
        assert!(is_in_z(&a).unwrap().is_ok());

        // β_{135}+β_{246}: in Y but not in X.
        let b = grade0(3, 6, &[(1, &[1, 3, 5]), (1, &[2, 4, 6])]);
        assert!(is_in_y(&b).unwrap().is_ok());
        assert!(is_in_x(&b).unwrap().is_err());
        assert!(is_in_z(&b).unwrap().is_err());

        // W37.
        let w = grade0(
            3,
            7,
            &[(-1, &[2, 4, 7]), (1, &[1, 2, 4]), (1, &[2, 5, 7]), (1, &[3, 4, 7])],
        );
        assert!(is_in_z(&w).unwrap().is_ok());
        for l in 1..=7 {
            assert!(pairs_not_ws_check(&w, Subset::singleton(l)).unwrap());
        }
    }

    #[test]
    fn pairs_not_ws_detects_conflicts() {
        let b = grade0(3, 6, &[(1, &[1, 3, 5]), (1, &[2, 4, 6])]);
        let any_fail = (1..=6).any(|l| !pairs_not_ws_check(&b, Subset::singleton(l)).unwrap());
        assert!(any_fail);
    }

    #[test]
    fn faces_report_w37() {
        let w = grade0(
            3,
            7,
            &[(-1, &[2, 4, 7]), (1, &[1, 2, 4]), (1, &[2, 5, 7]), (1, &[3, 4, 7])],
        );
        let report = faces_report(&w).unwrap().unwrap();
        let at1 = report.get(&Subset::singleton(1)).unwrap();
        let dosps: Vec<&DecoratedOsp> = at1.iter().map(|(_, d)| d).collect();
        assert_eq!(dosps[0].blocks, vec![vec![3, 4], vec![5, 6, 7, 2]]);
        assert_eq!(dosps[1].blocks, vec![vec![2, 3, 4, 5], vec![6, 7]]);
        // A frozen-only (i.e. zero) arrangement reports no faces.
        let zero = WeightedBladeArrangement::zero(3, 7);
        assert!(faces_report(&zero).unwrap().unwrap().is_empty());
    }

    #[test]
    fn lineality_equality() {
        let p = height_vector(3, 6, sub(&[1, 3, 5])).unwrap();
        let shifted = p.add(&VertexVector::lineality(3, 6, 3).unwrap()).unwrap();
        assert!(lineality_equal(&p, &shifted).unwrap());
        let q = height_vector(3, 6, sub(&[2, 4, 6])).unwrap();
        assert!(!lineality_equal(&p, &q).unwrap());
        assert!(!lineality_equal(&p, &p.scale(&rat(2))).unwrap());
    }

    #[test]
    fn bipyramid_identity() {
        let h = height_vector(3, 6, sub(&[2, 4, 6])).unwrap();
        let tb = to_blades(&h).unwrap();
        let tau = grade0(
            3,
            6,
            &[(-1, &[2, 4, 6]), (1, &[1, 2, 4]), (1, &[3, 4, 6]), (1, &[2, 5, 6])],
        );
        let sum = tb.add(&tau).unwrap();
        let expected = grade0(3, 6, &[(1, &[1, 2, 4]), (1, &[3, 4, 6]), (1, &[2, 5, 6])]);
        assert_eq!(sum, expected);
        for a in [&tb, &tau, &sum] {
            assert!(is_in_z(a).unwrap().is_ok());
        }
    }
}
