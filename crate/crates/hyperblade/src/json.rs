//! JSON interchange. Subsets serialize as sorted 1-based integer arrays,
//! rationals as "p/q" strings in lowest terms with positive denominator
//! ("p" when integral), and term lists in the canonical (|L|, L, J) order.

use num::{BigInt, One, Zero};
use serde::{Deserialize, Serialize};

use crate::arrangement::{DecoratedOsp, WeightedBladeArrangement};
use crate::building_blocks::TauSpec;
use crate::error::{Error, Result};
use crate::frame::GroundFrame;
use crate::heights::VertexVector;
use crate::subset::Subset;
use crate::Rat;

pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_from_string(s: &str) -> Result<Rat> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad integer {t:?}: {e}")))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let denom = parse_int(q)?;
            if denom.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(parse_int(p)?, denom))
        }
    }
}

#[derive(Serialize, Deserialize)]
pub struct TermJson {
    #[serde(rename = "L")]
    pub l: Vec<u32>,
    #[serde(rename = "J")]
    pub j: Vec<u32>,
    pub c: String,
}

#[derive(Serialize, Deserialize)]
pub struct ArrangementJson {
    pub k: u32,
    pub n: u32,
    pub terms: Vec<TermJson>,
}

pub fn arrangement_to_json(a: &WeightedBladeArrangement) -> ArrangementJson {
    ArrangementJson {
        k: a.k(),
        n: a.n(),
        terms: a
            .sorted_terms()
            .into_iter()
            .map(|(l, j, c)| TermJson {
                l: l.elements(),
                j: j.elements(),
                c: rat_to_string(&c),
            })
            .collect(),
    }
}

pub fn arrangement_from_json(j: &ArrangementJson) -> Result<WeightedBladeArrangement> {
    let mut a = WeightedBladeArrangement::zero(j.k, j.n);
    for t in &j.terms {
        a.add_term(
            Subset::from_elements(&t.l)?,
            Subset::from_elements(&t.j)?,
            rat_from_string(&t.c)?,
        )?;
    }
    Ok(a)
}

#[derive(Serialize, Deserialize)]
pub struct CoordJson {
    #[serde(rename = "J")]
    pub j: Vec<u32>,
    pub v: String,
}

#[derive(Serialize, Deserialize)]
pub struct VertexVectorJson {
    pub k: u32,
    pub n: u32,
    pub coords: Vec<CoordJson>,
}

pub fn vertex_vector_to_json(v: &VertexVector) -> VertexVectorJson {
    let mut coords: Vec<CoordJson> = v
        .iter()
        .map(|(j, c)| CoordJson {
            j: j.elements(),
            v: rat_to_string(c),
        })
        .collect();
    coords.sort_by(|a, b| a.j.cmp(&b.j));
    VertexVectorJson {
        k: v.k(),
        n: v.n(),
        coords,
    }
}

pub fn vertex_vector_from_json(j: &VertexVectorJson) -> Result<VertexVector> {
    let mut v = VertexVector::zero(j.k, j.n);
    for c in &j.coords {
        v.add_to(Subset::from_elements(&c.j)?, rat_from_string(&c.v)?)?;
    }
    Ok(v)
}

#[derive(Serialize, Deserialize)]
pub struct DospJson {
    pub blocks: Vec<Vec<u32>>,
    pub weights: Vec<u32>,
}

pub fn dosp_to_json(d: &DecoratedOsp) -> DospJson {
    DospJson {
        blocks: d.blocks.clone(),
        weights: d.weights.clone(),
    }
}

pub fn dosp_from_json(j: &DospJson) -> Result<DecoratedOsp> {
    DecoratedOsp::new(j.blocks.clone(), j.weights.clone())
}

#[derive(Serialize, Deserialize)]
pub struct TauSpecJson {
    #[serde(rename = "J")]
    pub j: Vec<u32>,
    #[serde(rename = "I_blocks")]
    pub i_blocks: Vec<Vec<u32>>,
    /// Face label of the frame; empty for the ambient frame.
    #[serde(default, rename = "L")]
    pub l: Vec<u32>,
}

pub fn tau_spec_to_json(s: &TauSpec) -> TauSpecJson {
    TauSpecJson {
        j: s.source().elements(),
        i_blocks: s.i_blocks().iter().map(|b| b.elements()).collect(),
        l: s.frame().removed().elements(),
    }
}

pub fn tau_spec_from_json(n: u32, j: &TauSpecJson) -> Result<TauSpec> {
    let frame = GroundFrame::new(n, Subset::from_elements(&j.l)?)?;
    let i_blocks: Result<Vec<Subset>> = j
        .i_blocks
        .iter()
        .map(|b| Subset::from_elements(b))
        .collect();
    TauSpec::new(frame, Subset::from_elements(&j.j)?, i_blocks?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn rational_strings() {
        assert_eq!(rat_to_string(&rat(-1)), "-1");
        assert_eq!(rat_to_string(&(rat(2) / rat(4))), "1/2");
        assert_eq!(rat_from_string("-3/6").unwrap(), rat(-1) / rat(2));
        assert_eq!(rat_from_string("7").unwrap(), rat(7));
        assert!(rat_from_string("1/0").is_err());
        assert!(rat_from_string("x").is_err());
    }

    #[test]
    fn arrangement_roundtrip() {
        let mut a = WeightedBladeArrangement::zero(3, 7);
        a.add_term(
            Subset::EMPTY,
            Subset::from_elements(&[2, 4, 7]).unwrap(),
            rat(-1),
        )
        .unwrap();
        a.add_term(
            Subset::from_elements(&[2]).unwrap(),
            Subset::from_elements(&[5, 7]).unwrap(),
            rat(3) / rat(2),
        )
        .unwrap();
        let j = arrangement_to_json(&a);
        let text = serde_json::to_string(&j).unwrap();
        let back: ArrangementJson = serde_json::from_str(&text).unwrap();
        assert_eq!(arrangement_from_json(&back).unwrap(), a);
        // Canonical serialization is byte-stable.
        assert_eq!(
            serde_json::to_string(&arrangement_to_json(&arrangement_from_json(&back).unwrap()))
                .unwrap(),
            text
        );
    }

    #[test]
    fn vertex_vector_roundtrip() {
        let v = crate::heights::height_vector(2, 5, Subset::from_elements(&[2, 4]).unwrap())
            .unwrap();
        let j = vertex_vector_to_json(&v);
        let text = serde_json::to_string(&j).unwrap();
        let back: VertexVectorJson = serde_json::from_str(&text).unwrap();
        assert_eq!(vertex_vector_from_json(&back).unwrap(), v);
    }

    #[test]
    fn tau_spec_roundtrip() {
        let frame = GroundFrame::ambient(6).unwrap();
        let spec = TauSpec::new(
            frame,
            Subset::from_elements(&[2, 4, 6]).unwrap(),
            vec![
                Subset::singleton(3),
                Subset::singleton(5),
                Subset::singleton(1),
            ],
        )
        .unwrap();
        let j = tau_spec_to_json(&spec);
        let back = tau_spec_from_json(6, &j).unwrap();
        assert_eq!(back, spec);
    }
}
