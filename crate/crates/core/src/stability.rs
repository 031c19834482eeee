//! δ-(semi)stability of pair models.
//!
//! For a pair with ambient polynomial `P` of rank `r` and a subobject `F`
//! of rank `r'`, the condition is
//!
//! ```text
//! P_F + ε(F)·δ  (≤)  (r'/r)·(P + δ)
//! ```
//!
//! in the eventual order, where `(≤)` means `<` for stability and `≤` for
//! semistability. Records that enter the check:
//!
//! * saturated records of positive rank;
//! * every nontrivial torsion record, with right-hand side zero. A nonzero
//!   torsion subobject forces a nonzero maximal torsion subobject, which is
//!   saturated and dominates it.
//!
//! The zero subobject not containing the image is skipped.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pair_model::{eps, PairModel};
use crate::par;
use crate::polynomial::{cmp_eventual, RatPoly};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Status {
    Stable,
    StrictlySemistable,
    Unstable,
}

impl Status {
    pub fn is_semistable(self) -> bool {
        self != Status::Unstable
    }

    /// Whether the `(≤)` condition holds in the requested sense.
    pub fn holds(self, strict: bool) -> bool {
        if strict {
            self == Status::Stable
        } else {
            self.is_semistable()
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Stable => "Stable",
            Status::StrictlySemistable => "StrictlySemistable",
            Status::Unstable => "Unstable",
        };
        f.write_str(s)
    }
}

/// A record at which the inequality `lhs (≤) rhs` is tight or violated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub record: usize,
    pub lhs: RatPoly,
    pub rhs: RatPoly,
}

impl Witness {
    pub fn is_violation(&self) -> bool {
        self.lhs > self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    #[serde(default)]
    pub strict: bool,
    #[serde(default)]
    pub holds: bool,
    pub witnesses: Vec<Witness>,
}

impl Verdict {
    /// Aggregates per-record comparisons `lhs (≤) rhs`.
    pub fn from_comparisons<I>(strict: bool, comparisons: I) -> Verdict
    where
        I: IntoIterator<Item = Comparison>,
    {
        let mut status = Status::Stable;
        let mut witnesses = Vec::new();
        for c in comparisons {
            match c.relation() {
                std::cmp::Ordering::Less => {}
                std::cmp::Ordering::Equal => {
                    if status == Status::Stable {
                        status = Status::StrictlySemistable;
                    }
                    witnesses.push(c.into_witness());
                }
                std::cmp::Ordering::Greater => {
                    status = Status::Unstable;
                    witnesses.push(c.into_witness());
                }
            }
        }
        Verdict {
            status,
            strict,
            holds: status.holds(strict),
            witnesses,
        }
    }

    pub fn witness_records(&self) -> Vec<usize> {
        self.witnesses.iter().map(|w| w.record).collect()
    }
}

/// One evaluated inequality `lhs (≤) rhs` for a record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub record: usize,
    pub lhs: RatPoly,
    pub rhs: RatPoly,
}

impl Comparison {
    pub fn relation(&self) -> std::cmp::Ordering {
        cmp_eventual(&self.lhs, &self.rhs)
    }

    fn into_witness(self) -> Witness {
        Witness {
            record: self.record,
            lhs: self.lhs,
            rhs: self.rhs,
        }
    }
}

fn check_parameter(model: &PairModel, delta: &RatPoly) -> Result<()> {
    if delta.eventual_sign() == std::cmp::Ordering::Less {
        return Err(Error::NegativeParameter);
    }
    if let Some(deg) = delta.degree() {
        if deg >= model.dim_x {
            return Err(Error::ParameterDegreeTooHigh {
                degree: deg,
                dim_x: model.dim_x,
            });
        }
    }
    if !model.phi_nontrivial {
        return Err(Error::TrivialFraming);
    }
    Ok(())
}

/// Records that take part in the stability inequality.
pub fn checked_records(model: &PairModel) -> Vec<usize> {
    (0..model.subobjects.len())
        .filter(|&i| {
            let rec = &model.subobjects[i];
            !rec.is_trivial() && (rec.saturated || model.is_torsion(i))
        })
        .collect()
}

/// `r'/r` for record `i`.
pub(crate) fn rank_ratio(model: &PairModel, i: usize) -> Rational {
    model.record_rank(i) / model.rank()
}

/// Both sides of the subobject inequality for one record, without any
/// precondition checks.
pub fn record_comparison(model: &PairModel, delta: &RatPoly, i: usize) -> Comparison {
    let rec = &model.subobjects[i];
    let lhs = &rec.poly + &delta.scale(&eps(rec.contains_image));
    let rhs = if model.is_torsion(i) {
        RatPoly::zero()
    } else {
        (&model.poly + delta).scale(&rank_ratio(model, i))
    };
    Comparison {
        record: i,
        lhs,
        rhs,
    }
}

/// Subobject-form comparisons for every checked record.
pub fn record_comparisons(model: &PairModel, delta: &RatPoly) -> Vec<Comparison> {
    let idx = checked_records(model);
    par::map_slice(&idx, par::auto(idx.len()), |&i| {
        record_comparison(model, delta, i)
    })
}

/// Decides δ-(semi)stability from the subobject inequalities.
pub fn check_semistable(model: &PairModel, delta: &RatPoly, strict: bool) -> Result<Verdict> {
    check_parameter(model, delta)?;
    Ok(Verdict::from_comparisons(
        strict,
        record_comparisons(model, delta),
    ))
}

/// Quotient-form comparisons `(r''/r)(P + δ) (≤) P_G + ε(G)·δ` for every
/// checked record whose quotient has positive rank.
pub fn quotient_comparisons(model: &PairModel, delta: &RatPoly) -> Vec<Comparison> {
    let r = model.rank();
    let total = &model.poly + delta;
    checked_records(model)
        .into_iter()
        .filter_map(|i| {
            let rec = &model.subobjects[i];
            let r2 = &r - model.record_rank(i);
            if r2 <= rational::zero() {
                return None;
            }
            let lhs = total.scale(&(r2 / &r));
            let rhs = (&model.poly - &rec.poly) + delta.scale(&eps(!rec.contains_image));
            Some(Comparison {
                record: i,
                lhs,
                rhs,
            })
        })
        .collect()
}

/// Decides δ-(semi)stability from the quotient inequalities.
pub fn check_semistable_quotient_form(
    model: &PairModel,
    delta: &RatPoly,
    strict: bool,
) -> Result<Verdict> {
    check_parameter(model, delta)?;
    Ok(Verdict::from_comparisons(
        strict,
        quotient_comparisons(model, delta),
    ))
}

/// Torsion records with `P_T + ε(T)·δ > 0`; any such record rules out
/// semistability.
pub fn purity_violations(model: &PairModel, delta: &RatPoly) -> Vec<usize> {
    (0..model.subobjects.len())
        .filter(|&i| model.is_torsion(i))
        .filter(|&i| {
            let rec = &model.subobjects[i];
            (&rec.poly + &delta.scale(&eps(rec.contains_image))).eventual_sign()
                == std::cmp::Ordering::Greater
        })
        .collect()
}

/// Verdict of the large-parameter criterion: unstable exactly when some
/// checked record of rank `r' < r` contains the image, or purity fails.
/// No degree precondition; see [`large_delta_check`].
pub fn large_delta_criterion(model: &PairModel, delta: &RatPoly) -> Verdict {
    let r = model.rank();
    let purity: BTreeSet<usize> = purity_violations(model, delta).into_iter().collect();
    let witnesses: Vec<Witness> = checked_records(model)
        .into_iter()
        .filter(|&i| {
            (model.subobjects[i].contains_image && model.record_rank(i) < r) || purity.contains(&i)
        })
        .map(|i| record_comparison(model, delta, i).into_witness())
        .collect();
    let status = if witnesses.is_empty() {
        Status::Stable
    } else {
        Status::Unstable
    };
    Verdict {
        status,
        strict: false,
        holds: status.is_semistable(),
        witnesses,
    }
}

/// The large-parameter criterion, for `deg δ ≥ dim X`.
pub fn large_delta_check(model: &PairModel, delta: &RatPoly) -> Result<Verdict> {
    let deg = delta.degree().unwrap_or(0);
    if delta.is_zero() || deg < model.dim_x {
        return Err(Error::ParameterDegreeTooLow {
            degree: deg,
            dim_x: model.dim_x,
        });
    }
    if delta.eventual_sign() == std::cmp::Ordering::Less {
        return Err(Error::NegativeParameter);
    }
    if !model.phi_nontrivial {
        return Err(Error::TrivialFraming);
    }
    Ok(large_delta_criterion(model, delta))
}

/// A factor of a graded object: its Hilbert polynomial and whether the
/// induced framing is nonzero on it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GradedFactor {
    #[serde(rename = "P")]
    pub poly: RatPoly,
    pub eps: bool,
}

/// Multiset of Jordan–Hölder factors, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedObject {
    factors: Vec<GradedFactor>,
}

impl GradedObject {
    pub fn new(mut factors: Vec<GradedFactor>) -> Self {
        factors.sort();
        GradedObject { factors }
    }

    pub fn factors(&self) -> &[GradedFactor] {
        &self.factors
    }

    pub fn total(&self) -> RatPoly {
        self.factors
            .iter()
            .fold(RatPoly::zero(), |acc, f| &acc + &f.poly)
    }

    pub fn framed_factor_count(&self) -> usize {
        self.factors.iter().filter(|f| f.eps).count()
    }
}

/// S-equivalence: equality of graded multisets.
pub fn s_equivalent(g1: &GradedObject, g2: &GradedObject) -> bool {
    g1 == g2
}

struct JhSearch<'a> {
    model: &'a PairModel,
    delta: &'a RatPoly,
    candidates: Vec<usize>,
    ancestors: Vec<BTreeSet<usize>>,
}

impl<'a> JhSearch<'a> {
    fn new(model: &'a PairModel, delta: &'a RatPoly, comparisons: &[Comparison]) -> Self {
        let r = model.rank();
        let candidates = comparisons
            .iter()
            .filter(|c| c.relation() == std::cmp::Ordering::Equal)
            .map(|c| c.record)
            .filter(|&i| {
                let ri = model.record_rank(i);
                ri > rational::zero() && ri < r
            })
            .collect();
        let ancestors = (0..model.subobjects.len())
            .map(|i| model.ancestors(i))
            .collect();
        JhSearch {
            model,
            delta,
            candidates,
            ancestors,
        }
    }

    fn level_data(&self, level: Option<usize>) -> (RatPoly, bool, Rational) {
        match level {
            None => (self.model.poly.clone(), true, self.model.rank()),
            Some(i) => (
                self.model.subobjects[i].poly.clone(),
                self.model.subobjects[i].contains_image,
                self.model.record_rank(i),
            ),
        }
    }

    fn pool(&self, level: Option<usize>) -> Vec<usize> {
        self.candidates
            .iter()
            .copied()
            .filter(|&c| level.is_none_or(|l| self.ancestors[c].contains(&l)))
            .collect()
    }

    fn maximal(&self, pool: &[usize]) -> Vec<usize> {
        pool.iter()
            .copied()
            .filter(|&c| {
                !pool
                    .iter()
                    .any(|&o| o != c && self.ancestors[c].contains(&o))
            })
            .collect()
    }

    /// Every candidate outside `choice` must surject onto `level / choice`,
    /// otherwise that quotient is not stable and the lattice is missing the
    /// subobject that would refine the chain.
    fn consistent(&self, level: Option<usize>, choice: usize, pool: &[usize]) -> bool {
        let (p_level, e_level, r_level) = self.level_data(level);
        let (p_c, e_c, r_c) = self.level_data(Some(choice));
        let q_rank = r_level - r_c;
        let q_pair = (&p_level - &p_c) + self.delta.scale(&eps(e_level && !e_c));
        pool.iter()
            .copied()
            .filter(|&g| g != choice && !self.ancestors[g].contains(&choice))
            .all(|g| {
                let rec = &self.model.subobjects[g];
                let g_pair = &rec.poly + &self.delta.scale(&eps(rec.contains_image));
                self.model.record_rank(g) >= q_rank && g_pair >= q_pair
            })
    }

    fn chains(&self, level: Option<usize>, first_only: bool) -> Result<Vec<Vec<GradedFactor>>> {
        let (p_level, e_level, _) = self.level_data(level);
        let pool = self.pool(level);
        if pool.is_empty() {
            return Ok(vec![vec![GradedFactor {
                poly: p_level,
                eps: e_level,
            }]]);
        }
        let admissible: Vec<usize> = self
            .maximal(&pool)
            .into_iter()
            .filter(|&c| self.consistent(level, c, &pool))
            .collect();
        let mut out = Vec::new();
        let mut last_err = None;
        for c in admissible {
            let head = GradedFactor {
                poly: &p_level - &self.model.subobjects[c].poly,
                eps: e_level && !self.model.subobjects[c].contains_image,
            };
            match self.chains(Some(c), first_only) {
                Ok(tails) => {
                    for mut t in tails {
                        t.push(head.clone());
                        out.push(t);
                    }
                    if first_only {
                        return Ok(out);
                    }
                }
                Err(e) => last_err = Some(e),
            }
        }
        if out.is_empty() {
            return Err(last_err.unwrap_or_else(|| Error::LatticeInsufficient {
                level: level.map_or("the ambient object".into(), |l| format!("record {l}")),
                detail: format!(
                    "no maximal equal-slope candidate among {pool:?} yields a stable quotient"
                ),
            }));
        }
        Ok(out)
    }
}

fn jh_search<'a>(model: &'a PairModel, delta: &'a RatPoly) -> Result<(JhSearch<'a>, Verdict)> {
    check_parameter(model, delta)?;
    let comparisons = record_comparisons(model, delta);
    let verdict = Verdict::from_comparisons(false, comparisons.clone());
    if verdict.status == Status::Unstable {
        return Err(Error::PairUnstable);
    }
    Ok((JhSearch::new(model, delta, &comparisons), verdict))
}

/// Graded object of a Jordan–Hölder filtration built greedily from the
/// declared lattice. At each level the lowest-index lattice-maximal record
/// of equal reduced polynomial is taken, skipping choices whose quotient
/// would be destabilized by another declared candidate.
pub fn jordan_holder(model: &PairModel, delta: &RatPoly) -> Result<GradedObject> {
    let (search, verdict) = jh_search(model, delta)?;
    if verdict.status == Status::Stable {
        return Ok(GradedObject::new(vec![GradedFactor {
            poly: model.poly.clone(),
            eps: true,
        }]));
    }
    let mut chains = search.chains(None, true)?;
    Ok(GradedObject::new(chains.swap_remove(0)))
}

/// All distinct graded objects reachable by some admissible choice at every
/// level. A well-formed lattice yields exactly one.
pub fn jordan_holder_all(model: &PairModel, delta: &RatPoly) -> Result<Vec<GradedObject>> {
    let (search, _) = jh_search(model, delta)?;
    let set: BTreeSet<GradedObject> = search
        .chains(None, false)?
        .into_iter()
        .map(GradedObject::new)
        .collect();
    Ok(set.into_iter().collect())
}
