//! Slope bounds and section-count estimates.
//!
//! These are closed-form calculators. Section counts `h⁰` are always
//! supplied by the caller; nothing here computes cohomology.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pair_model::{eps, PairModel};
use crate::polynomial::{bracket_plus_pow, RatPoly};
use crate::rational::{self, Rational};
use crate::stability::{Comparison, Verdict};

/// Coefficients of the structure sheaf's Hilbert polynomial in degrees `d`
/// and `d - 1`, plus the minimal slope of the framing sheaf.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientConstants {
    #[serde(with = "rational::serde_str")]
    pub alpha_d: Rational,
    #[serde(with = "rational::serde_str")]
    pub alpha_dm1: Rational,
    #[serde(with = "rational::serde_str")]
    pub mu_min_d: Rational,
}

impl AmbientConstants {
    pub fn validate(&self) -> Result<()> {
        if self.alpha_d <= Rational::zero() {
            return Err(Error::OutOfRange("alpha_d must be positive".into()));
        }
        Ok(())
    }
}

/// Inverts `μ̂ = (μ + α_{d-1}) / α_d`.
pub fn mu_from_muhat(muhat: &Rational, c: &AmbientConstants) -> Rational {
    muhat * &c.alpha_d - &c.alpha_dm1
}

/// Uniform slope bound `max{μ_P, μ_P·r − μ_min·r, μ_P·r − μ_min/r}`.
pub fn bound_c(mu_p: &Rational, r: &Rational, c: &AmbientConstants) -> Result<Rational> {
    if *r <= Rational::zero() {
        return Err(Error::NonPositiveRank);
    }
    let scaled = mu_p * r;
    let a = mu_p.clone();
    let b = &scaled - &c.mu_min_d * r;
    let e = &scaled - &c.mu_min_d / r;
    Ok(rational::max(rational::max(a, b), e))
}

fn factorial(d: u32) -> Rational {
    (1..=d as i64).fold(rational::one(), |acc, k| acc * rational::int(k))
}

/// Upper bound on `h⁰(E(m))` for a sheaf of rank `r` and dimension `d`,
/// with `C = r(r+d)/2`:
///
/// ```text
/// r · ( (r-1)/r · [μ̂_max + C - 1 + m]^d_+ / d!  +  1/r · [μ̂ + C - 1 + m]^d_+ / d! )
/// ```
///
/// Passing `muhat_max = muhat` gives the semistable corollary.
pub fn simpson_h0_bound(
    r: u32,
    d: u32,
    muhat_max: &Rational,
    muhat: &Rational,
    m: &Rational,
) -> Result<Rational> {
    if r == 0 {
        return Err(Error::NonPositiveRank);
    }
    let rq = rational::int(r as i64);
    let c = rational::ratio((r * (r + d)) as i64, 2);
    let shift = &c - rational::one() + m;
    let df = factorial(d);
    let top = bracket_plus_pow(&(muhat_max + &shift), d) / &df;
    let own = bracket_plus_pow(&(muhat + &shift), d) / &df;
    let per_rank = (&rq - rational::one()) / &rq * top + own / &rq;
    Ok(per_rank * rq)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionCriteria {
    pub m: i64,
    /// `h⁰(F(m)) + ε(F)δ(m) (≤) (r'/r)(P(m) + δ(m))` per record of rank `0 < r' < r`.
    pub cond_ii: Verdict,
    /// `(r''/r)(P(m) + δ(m)) (≤) h⁰(G(m)) + ε(G)δ(m)` per quotient of rank `0 < r'' < r`.
    pub cond_iii: Verdict,
    /// Records whose `h⁰(G(m))` was not supplied and was replaced by the
    /// lower bound `P(m) - h⁰(F(m))`.
    pub defaulted_quotients: Vec<usize>,
}

/// Evaluates the section-count criteria at a fixed `m`.
pub fn check_section_criteria(
    model: &PairModel,
    delta: &RatPoly,
    m: i64,
    strict: bool,
) -> Result<SectionCriteria> {
    let r = model.rank();
    if r <= Rational::zero() {
        return Err(Error::NonPositiveRank);
    }
    let pm = model.poly.evaluate_int(m);
    let dm = delta.evaluate_int(m);
    let total = &pm + &dm;

    let mut cond_ii = Vec::new();
    let mut cond_iii = Vec::new();
    let mut defaulted = Vec::new();
    for (i, rec) in model.subobjects.iter().enumerate() {
        let r1 = model.record_rank(i);
        if r1 <= Rational::zero() || r1 >= r {
            continue;
        }
        let h0 = *rec
            .h0_at
            .get(&m)
            .ok_or(Error::MissingSectionCount { record: i, m })?;
        let h0 = rational::int(h0 as i64);
        cond_ii.push(Comparison {
            record: i,
            lhs: RatPoly::constant(&h0 + &dm * eps(rec.contains_image)),
            rhs: RatPoly::constant(&r1 / &r * &total),
        });

        let h0_g = match rec.h0_quotient_at.get(&m) {
            Some(&v) => rational::int(v as i64),
            None => {
                defaulted.push(i);
                &pm - &h0
            }
        };
        let r2 = &r - &r1;
        cond_iii.push(Comparison {
            record: i,
            lhs: RatPoly::constant(r2 / &r * &total),
            rhs: RatPoly::constant(h0_g + &dm * eps(!rec.contains_image)),
        });
    }
    Ok(SectionCriteria {
        m,
        cond_ii: Verdict::from_comparisons(strict, cond_ii),
        cond_iii: Verdict::from_comparisons(strict, cond_iii),
        defaulted_quotients: defaulted,
    })
}
