//! Seeded generators and independent oracles shared by the integration
//! tests. The oracles here deliberately avoid the library's comparison
//! helpers: they evaluate the inequalities from the raw model data.

#![allow(dead_code)]

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use pairstab_core::pair_model::SubobjectRecord;
use pairstab_core::rational::{int, ratio};
use pairstab_core::systems::{SystemModel, SystemRecord};
use pairstab_core::{PairModel, RatPoly, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Rational {
    let den = [1, 1, 1, 2, 3][rng.gen_range(0..5)];
    ratio(rng.gen_range(lo * den..=hi * den), den)
}

/// Polynomial of degree `< deg` with small rational coefficients.
pub fn lower_poly<R: Rng>(rng: &mut R, deg: usize, lo: i64, hi: i64) -> RatPoly {
    RatPoly::from_coeffs((0..deg).map(|_| small_rational(rng, lo, hi)).collect())
}

/// Polynomial of degree `< deg`, zero or with positive leading coefficient.
pub fn nonnegative_poly<R: Rng>(rng: &mut R, deg: usize) -> RatPoly {
    if deg == 0 || rng.gen_bool(0.1) {
        return RatPoly::zero();
    }
    let k = rng.gen_range(0..deg);
    let mut c: Vec<Rational> = (0..k).map(|_| small_rational(rng, -2, 3)).collect();
    c.push(small_rational(rng, 1, 3));
    RatPoly::from_coeffs(c)
}

pub fn positive_poly<R: Rng>(rng: &mut R, deg: usize) -> RatPoly {
    loop {
        let p = nonnegative_poly(rng, deg);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn with_leading(lead: Rational, deg: usize, lower: RatPoly) -> RatPoly {
    let mut c: Vec<Rational> = (0..deg).map(|k| lower.coeff(k)).collect();
    c.push(lead);
    RatPoly::from_coeffs(c)
}

/// A random record near the equality locus `P_F + εδ = (r'/r)(P + δ)`.
fn random_record<R: Rng>(rng: &mut R, p: &RatPoly, delta: &RatPoly, d: usize) -> SubobjectRecord {
    let r = p.coeff(d);
    let eps = rng.gen_bool(0.4);
    if d > 0 && rng.gen_bool(0.1) {
        // torsion
        let t = positive_poly(rng, d);
        return SubobjectRecord::new(t, eps);
    }
    let rank_num = rng.gen_range(1..=3);
    let r1 = &r * ratio(rank_num, 4);
    let target = (p + delta).scale(&(&r1 / &r)) - delta.scale(&if eps { int(1) } else { int(0) });
    let noise = if rng.gen_bool(0.3) {
        RatPoly::zero()
    } else {
        lower_poly(rng, d, -2, 2)
    };
    let lower = &RatPoly::from_coeffs((0..d).map(|k| target.coeff(k)).collect()) + &noise;
    SubobjectRecord::new(with_leading(r1, d, lower), eps)
}

/// A valid pair model with `dim X ∈ {1, 2, 3}`, up to six records, and a
/// parameter of degree below `dim X`.
pub fn random_pair<R: Rng>(rng: &mut R) -> (PairModel, RatPoly) {
    loop {
        let d = rng.gen_range(1..=3);
        let r = int(rng.gen_range(1..=4));
        let p = with_leading(r, d, lower_poly(rng, d, -3, 6));
        let delta = nonnegative_poly(rng, d);
        let n = rng.gen_range(0..=6);
        let records = (0..n).map(|_| random_record(rng, &p, &delta, d)).collect();
        let model = PairModel::new(d, p, records);
        if model.is_valid() {
            return (model, delta);
        }
    }
}

/// A random model whose records all have rank strictly between 0 and r.
pub fn random_proper_pair<R: Rng>(rng: &mut R) -> (PairModel, RatPoly) {
    loop {
        let (mut m, delta) = random_pair(rng);
        let r = m.rank();
        let d = m.degree();
        m.subobjects
            .retain(|s| s.poly.degree() == Some(d) && s.poly.coeff(d) < r);
        if m.is_valid() {
            return (m, delta);
        }
    }
}

pub fn random_system<R: Rng>(rng: &mut R) -> (SystemModel, RatPoly) {
    loop {
        let d = rng.gen_range(1..=3);
        let gamma_dim = rng.gen_range(1..=4u64);
        let r = int(rng.gen_range(1..=4));
        let p = with_leading(r.clone(), d, lower_poly(rng, d, -3, 6));
        let alpha = nonnegative_poly(rng, d);
        let n = rng.gen_range(0..=5);
        let subobjects = (0..n)
            .map(|_| {
                let gp = rng.gen_range(0..=gamma_dim);
                let r1 = &r * ratio(rng.gen_range(1..=3), 4);
                let lower = &p.scale(&(&r1 / &r)) + &lower_poly(rng, d, -2, 2);
                let mut rec = SystemRecord::new(with_leading(r1, d, lower), gp);
                rec.saturated = rng.gen_bool(0.9);
                rec
            })
            .collect();
        let model = SystemModel {
            gamma_dim,
            poly: p,
            dim_x: d,
            subobjects,
        };
        if pairstab_core::systems::validate(&model)
            .iter()
            .all(|v| v.severity != pairstab_core::pair_model::Severity::Error)
        {
            return (model, alpha);
        }
    }
}

/// Lexicographic comparison from the top coefficient, written out directly.
pub fn lex_cmp(a: &RatPoly, b: &RatPoly) -> Ordering {
    let n = a.coeffs().len().max(b.coeffs().len());
    for k in (0..n).rev() {
        match a.coeff(k).cmp(&b.coeff(k)) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// Relation of `P_F + ε·δ` to `(r'/r)(P + δ)` for record `i`, computed from
/// the raw record data.
pub fn oracle_relation(model: &PairModel, delta: &RatPoly, i: usize) -> Ordering {
    let rec = &model.subobjects[i];
    let d = model.poly.degree().unwrap();
    let lhs = if rec.contains_image {
        &rec.poly + delta
    } else {
        rec.poly.clone()
    };
    let rhs = if rec.poly.degree() == Some(d) {
        let ratio = rec.poly.coeff(d) / model.poly.coeff(d);
        (&model.poly + delta).scale(&ratio)
    } else {
        RatPoly::zero()
    };
    lex_cmp(&lhs, &rhs)
}

/// Sample `m` beyond which `poly` has the sign of its leading coefficient.
pub fn sign_stable_point(poly: &RatPoly) -> i64 {
    let lead = match poly.leading() {
        Some(l) => l.abs(),
        None => return 0,
    };
    let s: Rational = poly.coeffs().iter().map(|c| c.abs()).sum();
    let bound = s / lead;
    (bound.to_integer() + num_bigint::BigInt::from(1))
        .try_into()
        .unwrap_or(i64::MAX)
}

pub fn is_zero(q: &Rational) -> bool {
    q.is_zero()
}

pub fn positive(q: &Rational) -> bool {
    q.is_positive()
}
