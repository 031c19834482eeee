//! Hilbert–Mumford weights for points `(a, q)` of the parameter space.
//!
//! A one-parameter subgroup is given by a basis of `V = k^p` and a weight
//! vector `γ_1 ≤ … ≤ γ_p` with `Σγ_i = 0`. Its pairing with a point is
//!
//! ```text
//! n₁·μ(q'', λ) + n₂·μ(a, λ),   μ(q'', λ) = −Σ γ_i (ψ(i) − ψ(i−1)),   μ(a, λ) = γ_τ
//! ```
//!
//! where `ψ(i)` is the dimension of the image of the first `i` basis
//! vectors and `τ` the first index whose span contains `im a`. The pairing
//! is linear in `γ`, and every admissible `γ` is a nonnegative combination
//! of the special vectors `γ^(i) = (i−p, …, i−p, i, …, i)`; on those the
//! pairing reduces to the subspace inequality
//!
//! ```text
//! dim U · (n₁ρ − n₂)  (≤)  p · (n₁ dim q'(U⊗W) − ε(U) n₂).
//! ```
//!
//! The same inequality with `dim q'(U⊗W)` replaced by the polynomial
//! `P_{F_U}(l)` and `n₂/n₁` by the linearization ratio becomes, after
//! clearing the positive factor `P(m)/(P(m)+δ(m))`,
//!
//! ```text
//! P·(dim U + ε δ(m)) + δ·(dim U − ε P(m))  (≤)  P_{F_U}·(P(m) + δ(m)).
//! ```
//!
//! [`verify_ratio_substitution`] checks that identity symbolically.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pair_model::eps;
use crate::polynomial::{cmp_eventual, RatPoly};
use crate::rational::{self, Rational};
use crate::stability::{Comparison, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceRecord {
    #[serde(rename = "dim_U")]
    pub dim_u: u64,
    /// `dim q'(U ⊗ W)`.
    #[serde(rename = "psi_U")]
    pub psi_u: u64,
    /// Whether `im a ⊆ U`.
    #[serde(rename = "eps_U")]
    pub eps_u: bool,
    /// Hilbert polynomial of the subsheaf generated by `U`, when known.
    #[serde(rename = "P_FU", default, skip_serializing_if = "Option::is_none")]
    pub p_fu: Option<RatPoly>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GitPointModel {
    /// `dim V = P(m)`.
    pub p: u64,
    /// `P(l)`.
    pub rho: u64,
    pub m: i64,
    pub l: i64,
    #[serde(with = "rational::serde_str")]
    pub delta_m: Rational,
    #[serde(with = "rational::serde_str")]
    pub delta_l: Rational,
    #[serde(with = "rational::serde_str")]
    pub n1: Rational,
    #[serde(with = "rational::serde_str")]
    pub n2: Rational,
    pub subspaces: Vec<SubspaceRecord>,
}

impl GitPointModel {
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.n1.is_positive() || !self.n2.is_positive() {
            out.push("n1 and n2 must be positive".to_string());
        }
        if self.l < self.m {
            out.push(format!("l = {} is below m = {}", self.l, self.m));
        }
        for (i, s) in self.subspaces.iter().enumerate() {
            if s.dim_u == 0 || s.dim_u >= self.p {
                out.push(format!(
                    "subspace {i}: dim_U = {} not in (0, {})",
                    s.dim_u, self.p
                ));
            }
            if s.psi_u > self.rho {
                out.push(format!(
                    "subspace {i}: psi_U = {} exceeds rho = {}",
                    s.psi_u, self.rho
                ));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightVector {
    #[serde(with = "rational::serde_vec")]
    pub gamma: Vec<Rational>,
    /// `ψ(0), …, ψ(p)`.
    pub psi: Vec<u64>,
    /// 1-based index.
    pub tau: usize,
}

fn check_gamma(gamma: &[Rational]) -> Result<()> {
    if gamma.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::MalformedWeightVector(
            "weights are not nondecreasing".into(),
        ));
    }
    if !gamma.iter().sum::<Rational>().is_zero() {
        return Err(Error::MalformedWeightVector(
            "weights do not sum to zero".into(),
        ));
    }
    Ok(())
}

impl WeightVector {
    pub fn p(&self) -> usize {
        self.gamma.len()
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.gamma.len();
        if p == 0 {
            return Err(Error::MalformedWeightVector("empty weight vector".into()));
        }
        check_gamma(&self.gamma)?;
        if self.psi.len() != p + 1 {
            return Err(Error::MalformedWeightVector(format!(
                "psi has {} entries, expected {}",
                self.psi.len(),
                p + 1
            )));
        }
        if self.psi[0] != 0 {
            return Err(Error::MalformedWeightVector("psi(0) must be 0".into()));
        }
        if self.psi.windows(2).any(|w| w[1] < w[0] || w[1] - w[0] > 1) {
            return Err(Error::MalformedWeightVector(
                "psi steps must be 0 or 1".into(),
            ));
        }
        if self.tau == 0 || self.tau > p {
            return Err(Error::MalformedWeightVector(format!(
                "tau = {} not in 1..={p}",
                self.tau
            )));
        }
        Ok(())
    }
}

/// `μ(q'', λ) = −Σ γ_i (ψ(i) − ψ(i−1))`.
pub fn hm_weight_quot(w: &WeightVector) -> Result<Rational> {
    w.validate()?;
    let s: Rational = w
        .gamma
        .iter()
        .zip(w.psi.windows(2))
        .filter(|(_, step)| step[1] > step[0])
        .map(|(g, _)| g.clone())
        .sum();
    Ok(-s)
}

/// `μ(a, λ) = γ_τ`.
pub fn hm_weight_framing(w: &WeightVector) -> Result<Rational> {
    w.validate()?;
    Ok(w.gamma[w.tau - 1].clone())
}

/// `n₁·μ(q'', λ) + n₂·μ(a, λ)`; the point is (semi)stable for `λ` iff this
/// is `(≥) 0`.
pub fn git_pairing(point: &GitPointModel, w: &WeightVector) -> Result<Rational> {
    if w.p() as u64 != point.p {
        return Err(Error::MalformedWeightVector(format!(
            "weight vector has length {}, point has p = {}",
            w.p(),
            point.p
        )));
    }
    if *w.psi.last().unwrap_or(&0) != point.rho {
        return Err(Error::MalformedWeightVector("psi(p) must equal rho".into()));
    }
    Ok(&point.n1 * hm_weight_quot(w)? + &point.n2 * hm_weight_framing(w)?)
}

/// `γ^(i)`: `i` entries `i − p` followed by `p − i` entries `i`.
pub fn special_gamma(i: usize, p: usize) -> Result<Vec<Rational>> {
    if i == 0 || i >= p {
        return Err(Error::OutOfRange(format!(
            "special weight index {i} not in 1..{p}"
        )));
    }
    let lo = rational::int(i as i64 - p as i64);
    let hi = rational::int(i as i64);
    Ok((0..p)
        .map(|k| if k < i { lo.clone() } else { hi.clone() })
        .collect())
}

/// Nonnegative coefficients `c_i = (γ_{i+1} − γ_i)/p` with
/// `Σ c_i γ^(i) = γ`.
pub fn decompose_weight_vector(gamma: &[Rational]) -> Result<Vec<Rational>> {
    check_gamma(gamma)?;
    let p = rational::int(gamma.len() as i64);
    Ok(gamma.windows(2).map(|w| (&w[1] - &w[0]) / &p).collect())
}

/// `Σ c_i γ^(i)`.
pub fn recompose_weight_vector(coeffs: &[Rational]) -> Result<Vec<Rational>> {
    let p = coeffs.len() + 1;
    let mut out = vec![rational::zero(); p];
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (slot, g) in out.iter_mut().zip(special_gamma(k + 1, p)?) {
            *slot += c * g;
        }
    }
    Ok(out)
}

/// Subspace records of the full flag spanned by the basis underlying `w`:
/// `U_i = ⟨v_1, …, v_i⟩` for `i = 1 … p−1`.
pub fn flag_records(w: &WeightVector) -> Result<Vec<SubspaceRecord>> {
    w.validate()?;
    Ok((1..w.p())
        .map(|i| SubspaceRecord {
            dim_u: i as u64,
            psi_u: w.psi[i],
            eps_u: w.tau <= i,
            p_fu: None,
        })
        .collect())
}

/// Both sides of the subspace inequality, as constants.
pub fn subspace_comparison(point: &GitPointModel, s: &SubspaceRecord, record: usize) -> Comparison {
    let dim_u = rational::int(s.dim_u as i64);
    let lhs = dim_u * (&point.n1 * rational::int(point.rho as i64) - &point.n2);
    let rhs = rational::int(point.p as i64)
        * (&point.n1 * rational::int(s.psi_u as i64) - eps(s.eps_u) * &point.n2);
    Comparison {
        record,
        lhs: RatPoly::constant(lhs),
        rhs: RatPoly::constant(rhs),
    }
}

/// `dim U·(n₁ρ − n₂) (≤) p·(n₁ψ_U − ε(U)n₂)`.
pub fn git_check_subspace(point: &GitPointModel, s: &SubspaceRecord, strict: bool) -> bool {
    let c = subspace_comparison(point, s, 0);
    match c.relation() {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Equal => !strict,
        std::cmp::Ordering::Greater => false,
    }
}

/// Aggregates the subspace inequality over all records. The evaluation is
/// at the fixed `l` of the point.
pub fn git_verdict(point: &GitPointModel, strict: bool) -> Result<Verdict> {
    if point.subspaces.is_empty() {
        return Err(Error::EmptySubspaces);
    }
    Ok(Verdict::from_comparisons(
        strict,
        point
            .subspaces
            .iter()
            .enumerate()
            .map(|(i, s)| subspace_comparison(point, s, i)),
    ))
}

/// All per-subspace comparisons, for `--explain` style output.
pub fn git_explain(point: &GitPointModel) -> Vec<Comparison> {
    point
        .subspaces
        .iter()
        .enumerate()
        .map(|(i, s)| subspace_comparison(point, s, i))
        .collect()
}

/// `n₂/n₁ = (P(l)δ(m) − δ(l)P(m)) / (P(m) + δ(m))` at a fixed `l`.
pub fn linearization_ratio(p: &RatPoly, delta: &RatPoly, m: i64, l: i64) -> Result<Rational> {
    let (pm, dm) = (p.evaluate_int(m), delta.evaluate_int(m));
    let denom = &pm + &dm;
    if denom.is_zero() {
        return Err(Error::ZeroDenominator("P(m) + δ(m)"));
    }
    let (pl, dl) = (p.evaluate_int(l), delta.evaluate_int(l));
    Ok((pl * dm - dl * pm) / denom)
}

/// The linearization ratio as a polynomial in `l`.
pub fn linearization_ratio_poly(p: &RatPoly, delta: &RatPoly, m: i64) -> Result<RatPoly> {
    let (pm, dm) = (p.evaluate_int(m), delta.evaluate_int(m));
    let denom = &pm + &dm;
    if denom.is_zero() {
        return Err(Error::ZeroDenominator("P(m) + δ(m)"));
    }
    Ok(p.scale(&(&dm / &denom)) - delta.scale(&(&pm / &denom)))
}

/// Subspace data in polynomial form: `dim U`, `ε(F_U)` and `P_{F_U}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolySubspace {
    #[serde(rename = "dim_U")]
    pub dim_u: u64,
    pub eps: bool,
    #[serde(rename = "P_FU")]
    pub p_fu: RatPoly,
}

/// Both sides of
/// `P·(dim U + ε δ(m)) + δ·(dim U − ε P(m)) (≤) P_FU·(P(m) + δ(m))`.
pub fn polynomial_subspace_comparison(
    p: &RatPoly,
    delta: &RatPoly,
    m: i64,
    s: &PolySubspace,
    record: usize,
) -> Comparison {
    let (pm, dm) = (p.evaluate_int(m), delta.evaluate_int(m));
    let dim_u = rational::int(s.dim_u as i64);
    let e = eps(s.eps);
    let lhs = p.scale(&(&dim_u + &e * &dm)) + delta.scale(&(&dim_u - &e * &pm));
    let rhs = s.p_fu.scale(&(pm + dm));
    Comparison { record, lhs, rhs }
}

/// The polynomial subspace inequality in the eventual order.
pub fn eqconstr3_check(
    p: &RatPoly,
    delta: &RatPoly,
    m: i64,
    dim_u: u64,
    eps: bool,
    p_fu: &RatPoly,
    strict: bool,
) -> bool {
    let s = PolySubspace {
        dim_u,
        eps,
        p_fu: p_fu.clone(),
    };
    let c = polynomial_subspace_comparison(p, delta, m, &s, 0);
    match c.relation() {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Equal => !strict,
        std::cmp::Ordering::Greater => false,
    }
}

/// Verdict of the polynomial subspace inequality over a list of subspaces.
pub fn polynomial_git_verdict(
    p: &RatPoly,
    delta: &RatPoly,
    m: i64,
    subspaces: &[PolySubspace],
    strict: bool,
) -> Verdict {
    Verdict::from_comparisons(
        strict,
        subspaces
            .iter()
            .enumerate()
            .map(|(i, s)| polynomial_subspace_comparison(p, delta, m, s, i)),
    )
}

/// Both sides of the subspace inequality with `n₁ = 1`, `n₂` the
/// linearization ratio and `dim q'(U⊗W)` replaced by `P_FU(l)`, all as
/// polynomials in `l`:
/// `dim U·(P − n₂) (≤) P(m)·(P_FU − ε n₂)`.
pub fn pairing_inequality_in_l(
    p: &RatPoly,
    delta: &RatPoly,
    m: i64,
    dim_u: u64,
    eps_f: bool,
    p_fu: &RatPoly,
) -> Result<Comparison> {
    let n2 = linearization_ratio_poly(p, delta, m)?;
    let dim_u = rational::int(dim_u as i64);
    let lhs = (p - &n2).scale(&dim_u);
    let rhs = (p_fu - &n2.scale(&eps(eps_f))).scale(&p.evaluate_int(m));
    Ok(Comparison {
        record: 0,
        lhs,
        rhs,
    })
}

/// True iff `a = c·b` for some rational `c > 0`, or both vanish.
pub fn is_positive_multiple(a: &RatPoly, b: &RatPoly) -> bool {
    match (a.leading(), b.leading()) {
        (None, None) => true,
        (Some(la), Some(lb)) => {
            let c = la / lb;
            c.is_positive() && *a == b.scale(&c)
        }
        _ => false,
    }
}

/// Checks that substituting the linearization ratio into the pairing
/// inequality yields a positive multiple of `target_gap`, where the gap of
/// an inequality `lhs (≤) rhs` is `rhs − lhs`.
pub fn ratio_substitution_matches(
    p: &RatPoly,
    delta: &RatPoly,
    m: i64,
    dim_u: u64,
    eps_f: bool,
    p_fu: &RatPoly,
    target_gap: &RatPoly,
) -> Result<bool> {
    if !p.evaluate_int(m).is_positive() {
        return Err(Error::OutOfRange("P(m) must be positive".into()));
    }
    let c = pairing_inequality_in_l(p, delta, m, dim_u, eps_f, p_fu)?;
    Ok(is_positive_multiple(&(&c.rhs - &c.lhs), target_gap))
}

/// Symbolic check that the pairing inequality, after substituting the
/// linearization ratio, is a positive multiple of the polynomial subspace
/// inequality. Requires `P(m) > 0` and `P(m) + δ(m) ≠ 0`.
pub fn verify_ratio_substitution(
    p: &RatPoly,
    delta: &RatPoly,
    m: i64,
    dim_u: u64,
    eps_f: bool,
    p_fu: &RatPoly,
) -> Result<bool> {
    let s = PolySubspace {
        dim_u,
        eps: eps_f,
        p_fu: p_fu.clone(),
    };
    let c3 = polynomial_subspace_comparison(p, delta, m, &s, 0);
    ratio_substitution_matches(p, delta, m, dim_u, eps_f, p_fu, &(&c3.rhs - &c3.lhs))
}

/// Eventual comparison of the pairing inequality in `l`; agrees with
/// [`eqconstr3_check`] whenever the substitution identity holds.
pub fn git_check_subspace_in_l(
    p: &RatPoly,
    delta: &RatPoly,
    m: i64,
    dim_u: u64,
    eps_f: bool,
    p_fu: &RatPoly,
    strict: bool,
) -> Result<bool> {
    let c = pairing_inequality_in_l(p, delta, m, dim_u, eps_f, p_fu)?;
    Ok(match cmp_eventual(&c.lhs, &c.rhs) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Equal => !strict,
        std::cmp::Ordering::Greater => false,
    })
}
