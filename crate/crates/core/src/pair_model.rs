//! Numerical model of a framed pair `(E, φ)`.
//!
//! A model carries the Hilbert polynomial of `E` and a finite list of
//! declared subobjects. The framing enters only through the flags
//! `contains_image` (whether `im φ ⊆ F`) and `phi_nontrivial`, so every
//! verdict computed from a model is invariant under rescaling `φ`.
//!
//! Verdicts are relative to the supplied records: a model is "stable" when
//! none of its declared subobjects destabilizes it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomial::RatPoly;
use crate::rational::{self, Rational};

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubobjectRecord {
    #[serde(rename = "P_F")]
    pub poly: RatPoly,
    pub contains_image: bool,
    #[serde(default = "default_true")]
    pub saturated: bool,
    /// Indices of records known to contain this one.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parents: Vec<usize>,
    /// Supplied values of `h⁰(F(m))`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub h0_at: BTreeMap<i64, u64>,
    /// Supplied values of `h⁰(G(m))` for the quotient `G = E/F`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub h0_quotient_at: BTreeMap<i64, u64>,
}

impl SubobjectRecord {
    pub fn new(poly: RatPoly, contains_image: bool) -> Self {
        SubobjectRecord {
            poly,
            contains_image,
            saturated: true,
            parents: Vec::new(),
            h0_at: BTreeMap::new(),
            h0_quotient_at: BTreeMap::new(),
        }
    }

    pub fn with_saturated(mut self, saturated: bool) -> Self {
        self.saturated = saturated;
        self
    }

    pub fn with_parents(mut self, parents: Vec<usize>) -> Self {
        self.parents = parents;
        self
    }

    pub fn with_h0(mut self, m: i64, h0: u64) -> Self {
        self.h0_at.insert(m, h0);
        self
    }

    pub fn with_quotient_h0(mut self, m: i64, h0: u64) -> Self {
        self.h0_quotient_at.insert(m, h0);
        self
    }

    /// The zero subobject without the image carries no condition.
    pub fn is_trivial(&self) -> bool {
        self.poly.is_zero() && !self.contains_image
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairModel {
    #[serde(rename = "dim_X")]
    pub dim_x: usize,
    #[serde(rename = "P")]
    pub poly: RatPoly,
    #[serde(default = "default_true")]
    pub phi_nontrivial: bool,
    #[serde(default)]
    pub subobjects: Vec<SubobjectRecord>,
}

/// The quotient `G = E/F` of a record, derived on demand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientRecord {
    #[serde(rename = "P_G")]
    pub poly: RatPoly,
    pub eps_g: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// `None` for violations of the ambient data.
    pub record: Option<usize>,
    pub severity: Severity,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        match self.record {
            Some(i) => write!(f, "{sev}: record {i}: {}", self.message),
            None => write!(f, "{sev}: {}", self.message),
        }
    }
}

impl PairModel {
    pub fn new(dim_x: usize, poly: RatPoly, subobjects: Vec<SubobjectRecord>) -> Self {
        PairModel {
            dim_x,
            poly,
            phi_nontrivial: true,
            subobjects,
        }
    }

    /// Rank of the ambient object, zero if `P` is zero.
    pub fn rank(&self) -> Rational {
        self.poly.rank().unwrap_or_else(|_| rational::zero())
    }

    /// Degree `d` of the ambient polynomial (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    /// Rank of record `i`: its leading coefficient when it has full degree,
    /// zero for torsion records.
    pub fn record_rank(&self, i: usize) -> Rational {
        let f = &self.subobjects[i].poly;
        if f.degree().is_some() && f.degree() == self.poly.degree() {
            f.leading().cloned().unwrap_or_else(rational::zero)
        } else {
            rational::zero()
        }
    }

    pub fn is_torsion(&self, i: usize) -> bool {
        self.subobjects[i].poly.degree() < self.poly.degree()
    }

    fn record(&self, idx: usize) -> Result<&SubobjectRecord> {
        self.subobjects.get(idx).ok_or(Error::IndexOutOfRange {
            index: idx,
            len: self.subobjects.len(),
        })
    }

    /// Transitive closure of the declared `parents` relation for record `i`.
    /// Out-of-range indices are ignored here; `validate` reports them.
    pub fn ancestors(&self, i: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<usize> = self.subobjects[i].parents.clone();
        while let Some(j) = stack.pop() {
            if j >= self.subobjects.len() || !seen.insert(j) {
                continue;
            }
            stack.extend(self.subobjects[j].parents.iter().copied());
        }
        seen
    }

    pub fn is_valid(&self) -> bool {
        validate(self).iter().all(|v| v.severity != Severity::Error)
    }
}

/// Lists every broken invariant of `model`. Non-saturated records are
/// reported as warnings: they are legal but ignored by the stability checks.
pub fn validate(model: &PairModel) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut err = |record: Option<usize>, message: String| {
        out.push(Violation {
            record,
            severity: Severity::Error,
            message,
        })
    };

    match model.poly.leading() {
        None => err(None, "ambient Hilbert polynomial is zero".into()),
        Some(r) if !r.is_positive() => err(None, format!("ambient rank {r} is not positive")),
        _ => {}
    }
    let d = model.poly.degree();
    if let Some(d) = d {
        if d > model.dim_x {
            err(None, format!("deg P = {d} exceeds dim X = {}", model.dim_x));
        }
    }
    if !model.phi_nontrivial {
        err(None, "framing homomorphism is trivial".into());
    }

    let n = model.subobjects.len();
    for (i, rec) in model.subobjects.iter().enumerate() {
        if rec.poly.degree() > d {
            err(Some(i), "deg P_F exceeds deg P".into());
        }
        if rec.poly > model.poly {
            err(
                Some(i),
                format!(
                    "P_F = {} is eventually greater than P = {}",
                    rec.poly, model.poly
                ),
            );
        }
        if rec.poly == model.poly {
            err(Some(i), "record equals the ambient object".into());
        }
        for &j in &rec.parents {
            if j >= n {
                err(Some(i), format!("parent index {j} out of range"));
            } else if j == i {
                err(Some(i), "record lists itself as a parent".into());
            } else if rec.contains_image && !model.subobjects[j].contains_image {
                err(
                    Some(i),
                    format!("contains the image but its parent {j} does not"),
                );
            }
        }
        if model.ancestors(i).contains(&i) {
            err(Some(i), "containment relation has a cycle".into());
        }
    }
    for (i, rec) in model.subobjects.iter().enumerate() {
        if !rec.saturated && !model.is_torsion(i) {
            out.push(Violation {
                record: Some(i),
                severity: Severity::Warning,
                message: "not saturated; ignored by stability checks".into(),
            });
        }
    }
    out
}

/// The quotient `E/F` of record `idx`: `P_G = P - P_F`, `ε(G) = 1 - ε(F)`.
pub fn quotient_of(model: &PairModel, idx: usize) -> Result<QuotientRecord> {
    let rec = model.record(idx)?;
    Ok(QuotientRecord {
        poly: &model.poly - &rec.poly,
        eps_g: !rec.contains_image,
    })
}

/// Kernel of the surjection onto a quotient: inverse of [`quotient_of`] at
/// the level of numerical data.
pub fn kernel_of(ambient: &RatPoly, quotient: &QuotientRecord) -> (RatPoly, bool) {
    (ambient - &quotient.poly, !quotient.eps_g)
}

pub(crate) fn eps(b: bool) -> Rational {
    if b {
        rational::one()
    } else {
        Rational::zero()
    }
}
