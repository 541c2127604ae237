//! JSON object files, tagged by `kind`.
//!
//! ```json
//! {"kind":"BS","A":"++","B":"+-","C":"+","D":"+"}
//! {"kind":"HM","rows":["++","+-"]}
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::formal::{verify_bhw, verify_od, FormalArray};
use super::matrix::{verify_hadamard, verify_wt, MatrixQuad, PMMatrix, SignMatrix};
use super::quads::{verify_golay, verify_quad, verify_t, BaseQuad, GolayPair, QuadKind, TQuad};
use crate::error::{Error, Result};
use crate::seqcore::{BinarySeq, TernarySeq};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadFields {
    #[serde(rename = "A")]
    pub a: BinarySeq,
    #[serde(rename = "B")]
    pub b: BinarySeq,
    #[serde(rename = "C")]
    pub c: BinarySeq,
    #[serde(rename = "D")]
    pub d: BinarySeq,
}

/// Williamson-type matrices as stored on disk: `{"w":3,"W1":["+++",...],...}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WtFile {
    pub w: usize,
    #[serde(rename = "W1")]
    pub w1: Vec<String>,
    #[serde(rename = "W2")]
    pub w2: Vec<String>,
    #[serde(rename = "W3")]
    pub w3: Vec<String>,
    #[serde(rename = "W4")]
    pub w4: Vec<String>,
}

impl WtFile {
    pub fn from_quad(q: &MatrixQuad) -> Self {
        let [w1, w2, w3, w4] = q.w.each_ref().map(|m| m.to_rows());
        WtFile { w: q.order(), w1, w2, w3, w4 }
    }

    pub fn to_quad(&self) -> Result<MatrixQuad> {
        let mats = [&self.w1, &self.w2, &self.w3, &self.w4].map(|rows| SignMatrix::from_rows(rows, false));
        let [a, b, c, d] = mats;
        let q = MatrixQuad::new([a?, b?, c?, d?])?;
        if q.order() != self.w {
            return Err(Error::OrderMismatch { expected: self.w, found: q.order() });
        }
        Ok(q)
    }

    pub fn load(path: &Path) -> Result<MatrixQuad> {
        let text = read(path)?;
        serde_json::from_str::<WtFile>(&text)?.to_quad()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind")]
enum Raw {
    GS {
        #[serde(rename = "A")]
        a: BinarySeq,
        #[serde(rename = "B")]
        b: BinarySeq,
    },
    BS(QuadFields),
    NS(QuadFields),
    NN(QuadFields),
    TS {
        #[serde(rename = "T1")]
        t1: TernarySeq,
        #[serde(rename = "T2")]
        t2: TernarySeq,
        #[serde(rename = "T3")]
        t3: TernarySeq,
        #[serde(rename = "T4")]
        t4: TernarySeq,
    },
    OD {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        weight: Option<usize>,
        rows: FormalArray,
    },
    #[serde(rename = "BHW")]
    Bhw {
        h: usize,
        rows: FormalArray,
    },
    WT(WtFile),
    HM {
        rows: Vec<String>,
    },
}

/// Any object the tool reads or writes.
#[derive(Clone, Debug, PartialEq)]
pub enum Object {
    Golay(GolayPair),
    Quad(BaseQuad),
    T(TQuad),
    Od { array: FormalArray, weight: usize },
    Bhw { array: FormalArray, h: usize },
    Wt(MatrixQuad),
    Hm(PMMatrix),
}

impl Object {
    pub fn kind_tag(&self) -> &'static str {
        match self {
            Object::Golay(_) => "GS",
            Object::Quad(q) => match q.kind {
                QuadKind::Plain => "BS",
                QuadKind::Normal => "NS",
                QuadKind::NearNormal => "NN",
            },
            Object::T(_) => "TS",
            Object::Od { .. } => "OD",
            Object::Bhw { .. } => "BHW",
            Object::Wt(_) => "WT",
            Object::Hm(_) => "HM",
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: Raw = serde_json::from_str(text)?;
        let quad = |f: QuadFields, kind| BaseQuad::new(f.a, f.b, f.c, f.d).map(|q| Object::Quad(q.with_kind(kind)));
        Ok(match raw {
            Raw::GS { a, b } => Object::Golay(GolayPair::new(a, b)?),
            Raw::BS(f) => quad(f, QuadKind::Plain)?,
            Raw::NS(f) => quad(f, QuadKind::Normal)?,
            Raw::NN(f) => quad(f, QuadKind::NearNormal)?,
            Raw::TS { t1, t2, t3, t4 } => Object::T(TQuad::new([t1, t2, t3, t4])?),
            Raw::OD { weight, rows } => {
                let weight = weight.unwrap_or(rows.order() / 4);
                Object::Od { array: rows, weight }
            }
            Raw::Bhw { h, rows } => Object::Bhw { array: rows, h },
            Raw::WT(f) => Object::Wt(f.to_quad()?),
            Raw::HM { rows } => Object::Hm(PMMatrix::from_rows(&rows)?),
        })
    }

    pub fn to_json(&self) -> String {
        let fields = |q: &BaseQuad| QuadFields { a: q.a.clone(), b: q.b.clone(), c: q.c.clone(), d: q.d.clone() };
        let raw = match self {
            Object::Golay(g) => Raw::GS { a: g.a.clone(), b: g.b.clone() },
            Object::Quad(q) => match q.kind {
                QuadKind::Plain => Raw::BS(fields(q)),
                QuadKind::Normal => Raw::NS(fields(q)),
                QuadKind::NearNormal => Raw::NN(fields(q)),
            },
            Object::T(t) => {
                let [t1, t2, t3, t4] = t.t.clone();
                Raw::TS { t1, t2, t3, t4 }
            }
            Object::Od { array, weight } => Raw::OD { weight: Some(*weight), rows: array.clone() },
            Object::Bhw { array, h } => Raw::Bhw { h: *h, rows: array.clone() },
            Object::Wt(q) => Raw::WT(WtFile::from_quad(q)),
            Object::Hm(h) => Raw::HM { rows: h.to_rows() },
        };
        serde_json::to_string(&raw).expect("object serialization cannot fail")
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&read(path)?)
    }

    /// Runs the verifier matching the object's kind.
    pub fn verify(&self) -> Result<bool> {
        Ok(match self {
            Object::Golay(g) => verify_golay(g),
            Object::Quad(q) => verify_quad(q),
            Object::T(t) => verify_t(t),
            Object::Od { array, weight } => verify_od(array, *weight)?,
            Object::Bhw { array, h } => verify_bhw(array, *h)?,
            Object::Wt(q) => verify_wt(q),
            Object::Hm(h) => verify_hadamard(h),
        })
    }
}

pub(crate) fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}
