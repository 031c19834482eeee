//! Coherent systems `(Γ, E)` and their α-stability.
//!
//! A system is α-(semi)stable when every saturated subsheaf `F` with
//! `Γ′ = Γ ∩ H⁰(F)` satisfies
//!
//! ```text
//! dim Γ′·α + P_F  (≤)  (r_F / r)·(dim Γ·α + P).
//! ```
//!
//! Setting `δ = dim Γ·α` and `ε(F) = [Γ′ = Γ]` turns a system into a framed
//! pair whose δ-semistability is implied by α-semistability of the system.

use std::cmp::Ordering;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pair_model::{self, PairModel, Severity, SubobjectRecord, Violation};
use crate::polynomial::RatPoly;
use crate::rational::{self, Rational};
use crate::stability::{Comparison, Verdict};
use crate::walls::{chamber_report, ChamberReport, DeltaRay};

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemRecord {
    #[serde(rename = "P_F")]
    pub poly: RatPoly,
    /// `dim(Γ ∩ H⁰(F))`.
    pub gamma_prime_dim: u64,
    #[serde(default = "default_true")]
    pub saturated: bool,
}

impl SystemRecord {
    pub fn new(poly: RatPoly, gamma_prime_dim: u64) -> Self {
        SystemRecord {
            poly,
            gamma_prime_dim,
            saturated: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemModel {
    pub gamma_dim: u64,
    #[serde(rename = "P")]
    pub poly: RatPoly,
    #[serde(rename = "dim_X")]
    pub dim_x: usize,
    pub subobjects: Vec<SystemRecord>,
}

impl SystemModel {
    /// The framed pair with `ε(F) = [Γ′ = Γ]`; independent of α.
    pub fn as_pair(&self) -> PairModel {
        let records = self
            .subobjects
            .iter()
            .map(|s| {
                SubobjectRecord::new(s.poly.clone(), s.gamma_prime_dim == self.gamma_dim)
                    .with_saturated(s.saturated)
            })
            .collect();
        PairModel::new(self.dim_x, self.poly.clone(), records)
    }
}

/// Structural checks; pair-level checks are run on the converted model.
pub fn validate(model: &SystemModel) -> Vec<Violation> {
    let mut out = Vec::new();
    if model.gamma_dim == 0 {
        out.push(Violation {
            record: None,
            severity: Severity::Error,
            message: "gamma_dim must be positive".into(),
        });
    }
    for (i, s) in model.subobjects.iter().enumerate() {
        if s.gamma_prime_dim > model.gamma_dim {
            out.push(Violation {
                record: Some(i),
                severity: Severity::Error,
                message: format!(
                    "gamma_prime_dim {} exceeds gamma_dim {}",
                    s.gamma_prime_dim, model.gamma_dim
                ),
            });
        }
    }
    out.extend(pair_model::validate(&model.as_pair()));
    out
}

fn check_alpha(alpha: &RatPoly) -> Result<()> {
    if alpha.eventual_sign() == Ordering::Less {
        return Err(Error::NegativeParameter);
    }
    Ok(())
}

fn gamma_scalar(n: u64) -> Rational {
    rational::int(n as i64)
}

/// Both sides of the system inequality for record `i`.
pub fn system_record_comparison(model: &SystemModel, alpha: &RatPoly, i: usize) -> Comparison {
    let pair = model.as_pair();
    let rec = &model.subobjects[i];
    let lhs = &rec.poly + &alpha.scale(&gamma_scalar(rec.gamma_prime_dim));
    let rhs = if pair.is_torsion(i) {
        RatPoly::zero()
    } else {
        let total = &model.poly + &alpha.scale(&gamma_scalar(model.gamma_dim));
        total.scale(&(pair.record_rank(i) / pair.rank()))
    };
    Comparison {
        record: i,
        lhs,
        rhs,
    }
}

/// Decides α-(semi)stability. Records follow the same selection as for
/// pairs: nontrivial, and saturated or torsion.
pub fn check_system_semistable(
    model: &SystemModel,
    alpha: &RatPoly,
    strict: bool,
) -> Result<Verdict> {
    check_alpha(alpha)?;
    if model.gamma_dim == 0 {
        return Err(Error::OutOfRange("gamma_dim must be positive".into()));
    }
    let pair = model.as_pair();
    if pair.rank() <= rational::zero() {
        return Err(Error::NonPositiveRank);
    }
    let comparisons = (0..model.subobjects.len())
        .filter(|&i| {
            let s = &model.subobjects[i];
            !(s.poly.is_zero() && s.gamma_prime_dim == 0) && (s.saturated || pair.is_torsion(i))
        })
        .map(|i| system_record_comparison(model, alpha, i));
    Ok(Verdict::from_comparisons(strict, comparisons))
}

/// The associated pair and `δ = dim Γ·α`.
pub fn system_to_pair(model: &SystemModel, alpha: &RatPoly) -> (PairModel, RatPoly) {
    (model.as_pair(), alpha.scale(&gamma_scalar(model.gamma_dim)))
}

/// Chamber structure in α along `α(t) = t·α̂`, computed on the associated
/// pair with ray base `dim Γ·α̂`; wall parameters are the same `t`.
pub fn system_walls(model: &SystemModel, alpha_hat: &RatPoly) -> Result<ChamberReport> {
    let (pair, base) = system_to_pair(model, alpha_hat);
    chamber_report(&pair, &DeltaRay::new(base))
}

fn check_indices(i: u64, j: u64, p: u64, r: u64) -> Result<()> {
    if r == 0 {
        return Err(Error::NonPositiveRank);
    }
    if j > r || i > p {
        return Err(Error::OutOfRange(format!(
            "need j ≤ r and i ≤ p, got j = {j}, r = {r}, i = {i}, p = {p}"
        )));
    }
    Ok(())
}

/// `i − j·p/r`.
pub fn product_weight(i: u64, j: u64, p: u64, r: u64) -> Result<Rational> {
    check_indices(i, j, p, r)?;
    Ok(rational::int(i as i64) - rational::ratio((j * p) as i64, r as i64))
}

fn special_block(k: u64, n: u64) -> Vec<Rational> {
    let lo = rational::ratio(k as i64 - n as i64, n as i64);
    let hi = rational::ratio(k as i64, n as i64);
    (0..n)
        .map(|idx| if idx < k { lo.clone() } else { hi.clone() })
        .collect()
}

/// `((j−r, …, j−r, j, …, j)/r ; (i−p, …, i−p, i, …, i)/p)`.
pub fn special_product_vectors(
    j: u64,
    r: u64,
    i: u64,
    p: u64,
) -> Result<(Vec<Rational>, Vec<Rational>)> {
    check_indices(i, j, p, r)?;
    if p == 0 {
        return Err(Error::OutOfRange("p must be positive".into()));
    }
    Ok((special_block(j, r), special_block(i, p)))
}

/// Framing weight for the product group: the maximum of `γ_{τ_k} − β_k`
/// over basis vectors `e_k` of Γ with nonzero image, `τ_k` being the first
/// index whose span contains that image. `None` marks a zero image.
pub fn product_framing_weight(
    beta: &[Rational],
    gamma: &[Rational],
    taus: &[Option<usize>],
) -> Option<Rational> {
    beta.iter()
        .zip(taus)
        .filter_map(|(b, tau)| tau.map(|t| &gamma[t - 1] - b))
        .max()
}

/// Position data of the special vectors: `Γ′ = ⟨e_1, …, e_j⟩` lands in
/// `U = ⟨v_1, …, v_i⟩` and the remaining basis vectors do not. Returns
/// `None` when no such configuration exists (`i = p` with `j < r`, or a
/// zero framing when `i = 0` and `j = r`).
pub fn natural_taus(j: u64, r: u64, i: u64, p: u64) -> Option<Vec<Option<usize>>> {
    if (i == p && j < r) || (i == 0 && j == r) {
        return None;
    }
    Some(
        (1..=r)
            .map(|k| {
                if k <= j {
                    (i > 0).then_some(i as usize)
                } else {
                    Some(p as usize)
                }
            })
            .collect(),
    )
}

/// `p` times the framing weight of the special vectors with their natural
/// position data.
pub fn special_product_pairing(j: u64, r: u64, i: u64, p: u64) -> Result<Option<Rational>> {
    let (beta, gamma) = special_product_vectors(j, r, i, p)?;
    Ok(natural_taus(j, r, i, p)
        .and_then(|taus| product_framing_weight(&beta, &gamma, &taus))
        .map(|w| w * rational::int(p as i64)))
}

/// `j·α + P_F (≤) (r_F/r)(P + r·α)`, with `r_F` the rank of `P_F` relative
/// to `P`. A zero `P_F` with `j = 0` holds trivially.
#[allow(clippy::too_many_arguments)]
pub fn git_system_check(
    i: u64,
    j: u64,
    p: u64,
    r: u64,
    ambient: &RatPoly,
    p_f: &RatPoly,
    alpha: &RatPoly,
    strict: bool,
) -> Result<bool> {
    check_indices(i, j, p, r)?;
    let r_e = ambient.rank()?;
    if r_e <= Rational::zero() {
        return Err(Error::NonPositiveRank);
    }
    if p_f.is_zero() && j == 0 {
        return Ok(true);
    }
    let r_f = if p_f.degree() == ambient.degree() {
        p_f.rank()?
    } else {
        rational::zero()
    };
    let lhs = &alpha.scale(&gamma_scalar(j)) + p_f;
    let rhs = (ambient + &alpha.scale(&gamma_scalar(r))).scale(&(r_f / r_e));
    Ok(match lhs.cmp(&rhs) {
        Ordering::Less => true,
        Ordering::Equal => !strict,
        Ordering::Greater => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::stability::{check_semistable, Status};

    fn worked(gamma_prime: u64) -> SystemModel {
        SystemModel {
            gamma_dim: 2,
            poly: RatPoly::from_ints(&[2, 2]),
            dim_x: 1,
            subobjects: vec![SystemRecord::new(RatPoly::from_ints(&[2, 1]), gamma_prime)],
        }
    }

    fn alpha(q: Rational) -> RatPoly {
        RatPoly::constant(q)
    }

    #[test]
    fn worked_example() {
        let m = worked(0);
        let st = |a| {
            check_system_semistable(&m, &alpha(a), false)
                .unwrap()
                .status
        };
        assert_eq!(st(int(1)), Status::StrictlySemistable);
        assert_eq!(st(int(2)), Status::Stable);
        assert_eq!(st(ratio(1, 2)), Status::Unstable);
        assert!(check_system_semistable(&m, &alpha(int(-1)), false).is_err());
    }

    #[test]
    fn conversion() {
        let (pair, delta) = system_to_pair(&worked(0), &alpha(int(1)));
        assert_eq!(delta, RatPoly::from_ints(&[2]));
        assert!(!pair.subobjects[0].contains_image);
        assert_eq!(
            check_semistable(&pair, &delta, false).unwrap().status,
            Status::StrictlySemistable
        );
        let (pair, _) = system_to_pair(&worked(2), &alpha(int(1)));
        assert!(pair.subobjects[0].contains_image);
        let (_, delta) = system_to_pair(&worked(0), &RatPoly::zero());
        assert!(delta.is_zero());
    }

    #[test]
    fn walls_in_alpha() {
        let rep = system_walls(&worked(0), &alpha(int(1))).unwrap();
        assert_eq!(rep.delta_max, Some(int(1)));
        assert_eq!(rep.status_at(&ratio(1, 2)), Some(Status::Unstable));
        assert_eq!(rep.status_at(&int(1)), Some(Status::StrictlySemistable));
        assert_eq!(rep.status_at(&int(2)), Some(Status::Stable));
    }

    #[test]
    fn product_weights() {
        assert_eq!(product_weight(2, 1, 4, 2).unwrap(), int(0));
        assert_eq!(product_weight(0, 0, 5, 3).unwrap(), int(0));
        assert_eq!(product_weight(1, 2, 3, 2).unwrap(), int(-2));
        assert!(product_weight(1, 1, 3, 0).is_err());
    }

    #[test]
    fn special_vectors() {
        let (b, g) = special_product_vectors(1, 2, 2, 4).unwrap();
        assert_eq!(b, vec![ratio(-1, 2), ratio(1, 2)]);
        assert_eq!(
            g,
            vec![ratio(-1, 2), ratio(-1, 2), ratio(1, 2), ratio(1, 2)]
        );
        let (b, _) = special_product_vectors(0, 3, 1, 2).unwrap();
        assert!(b.iter().all(|x| x.is_zero()));
        assert_eq!(special_product_pairing(1, 2, 2, 4).unwrap(), Some(int(0)));
        assert!(special_product_vectors(3, 2, 1, 2).is_err());
    }

    #[test]
    fn system_git_check() {
        let p = RatPoly::from_ints(&[2, 2]);
        let f = RatPoly::from_ints(&[2, 1]);
        let a = alpha(int(1));
        assert!(git_system_check(1, 0, 4, 2, &p, &f, &a, false).unwrap());
        assert!(!git_system_check(1, 0, 4, 2, &p, &f, &a, true).unwrap());
        assert!(!git_system_check(1, 2, 4, 2, &p, &f, &a, false).unwrap());
        assert!(git_system_check(0, 0, 4, 2, &p, &RatPoly::zero(), &a, true).unwrap());
    }

    #[test]
    fn validation() {
        let mut m = worked(3);
        assert!(!validate(&m).is_empty());
        m.subobjects[0].gamma_prime_dim = 1;
        assert!(validate(&m).is_empty());
    }
}
