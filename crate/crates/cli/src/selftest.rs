//! Built-in identity checks: substitution of the linearization ratio,
//! agreement of the GIT and parameter verdicts, the special-vector
//! reduction, and the coherent-system comparisons.

use pairstab_core::git::{
    flag_records, git_pairing, polynomial_git_verdict, special_gamma, subspace_comparison,
    verify_ratio_substitution, GitPointModel, PolySubspace, WeightVector,
};
use pairstab_core::pair_model::SubobjectRecord;
use pairstab_core::rational::{int, ratio};
use pairstab_core::stability::{check_semistable, check_semistable_quotient_form};
use pairstab_core::systems::{
    check_system_semistable, product_weight, special_product_pairing, system_to_pair, SystemModel,
    SystemRecord,
};
use pairstab_core::{PairModel, RatPoly};

#[derive(Default)]
pub struct Tally {
    pub verified: usize,
    pub failures: Vec<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.verified += 1;
        } else {
            self.failures.push(what());
        }
    }
}

fn substitution(t: &mut Tally) {
    let polys = [
        RatPoly::from_ints(&[2, 2]),
        RatPoly::from_ints(&[1, 0, 3]),
        RatPoly::from_coeffs(vec![ratio(1, 2), int(-1), int(2)]),
    ];
    let deltas = [
        RatPoly::zero(),
        RatPoly::from_ints(&[2]),
        RatPoly::from_coeffs(vec![ratio(3, 2), int(1)]),
    ];
    for p in &polys {
        for delta in &deltas {
            for m in 1..=3 {
                for dim_u in [1u64, 3] {
                    for eps in [false, true] {
                        let p_fu = RatPoly::from_ints(&[dim_u as i64, 1]);
                        let ok = verify_ratio_substitution(p, delta, m, dim_u, eps, &p_fu);
                        t.record(matches!(ok, Ok(true)), || {
                            format!("ratio substitution for P = {p}, δ = {delta}, m = {m}")
                        });
                    }
                }
            }
        }
    }
}

fn worked_pair() -> (PairModel, RatPoly) {
    (
        PairModel::new(
            1,
            RatPoly::from_ints(&[2, 2]),
            vec![
                SubobjectRecord::new(RatPoly::from_ints(&[2, 1]), false),
                SubobjectRecord::new(RatPoly::from_ints(&[1, 1]), true),
            ],
        ),
        RatPoly::from_ints(&[2]),
    )
}

fn git_against_stability(t: &mut Tally) {
    let (model, delta) = worked_pair();
    for d in [RatPoly::zero(), delta.clone(), RatPoly::from_ints(&[5])] {
        let stab = check_semistable(&model, &d, false);
        let quot = check_semistable_quotient_form(&model, &d, false);
        t.record(
            matches!((&stab, &quot), (Ok(a), Ok(b)) if a.status == b.status),
            || format!("subobject and quotient forms at δ = {d}"),
        );
        let m = 10;
        let subspaces: Vec<PolySubspace> = model
            .subobjects
            .iter()
            .map(|s| PolySubspace {
                dim_u: s.poly.evaluate_int(m).to_integer().try_into().unwrap_or(0),
                eps: s.contains_image,
                p_fu: s.poly.clone(),
            })
            .collect();
        let git = polynomial_git_verdict(&model.poly, &d, m, &subspaces, false);
        t.record(stab.as_ref().is_ok_and(|s| s.status == git.status), || {
            format!("GIT and parameter verdicts at δ = {d}")
        });
    }
}

fn special_vectors(t: &mut Tally) {
    let w = WeightVector {
        gamma: vec![int(-2), int(0), int(1), int(1)],
        psi: vec![0, 1, 1, 2, 3],
        tau: 2,
    };
    let Ok(records) = flag_records(&w) else {
        t.failures.push("flag records".into());
        return;
    };
    let point = GitPointModel {
        p: 4,
        rho: 3,
        m: 1,
        l: 2,
        delta_m: int(0),
        delta_l: int(0),
        n1: int(2),
        n2: int(1),
        subspaces: records.clone(),
    };
    for (i, s) in records.iter().enumerate() {
        let special = WeightVector {
            gamma: special_gamma(i + 1, 4).unwrap_or_default(),
            ..w.clone()
        };
        let c = subspace_comparison(&point, s, i);
        let gap = c.rhs.coeff(0) - c.lhs.coeff(0);
        t.record(
            git_pairing(&point, &special).is_ok_and(|v| v == gap),
            || format!("special vector {} against its subspace inequality", i + 1),
        );
    }
}

fn systems(t: &mut Tally) {
    let model = SystemModel {
        gamma_dim: 2,
        poly: RatPoly::from_ints(&[2, 2]),
        dim_x: 1,
        subobjects: vec![
            SystemRecord::new(RatPoly::from_ints(&[2, 1]), 0),
            SystemRecord::new(RatPoly::from_ints(&[0, 1]), 2),
        ],
    };
    for a in [ratio(1, 2), int(1), int(2)] {
        let alpha = RatPoly::constant(a.clone());
        let sys = check_system_semistable(&model, &alpha, false);
        let (pair, delta) = system_to_pair(&model, &alpha);
        let pv = check_semistable(&pair, &delta, false);
        let ok = match (sys, pv) {
            (Ok(s), Ok(p)) => !s.status.is_semistable() || p.status.is_semistable(),
            _ => false,
        };
        t.record(ok, || {
            format!("system semistability passes to the pair at α = {a}")
        });
    }
    for r in 1..=4u64 {
        for j in 0..=r {
            for p in 1..=8u64 {
                for i in 0..=p {
                    if let Ok(Some(pairing)) = special_product_pairing(j, r, i, p) {
                        let ok = product_weight(i, j, p, r).is_ok_and(|w| w == pairing);
                        t.record(ok, || {
                            format!("product weight at (i={i}, j={j}, p={p}, r={r})")
                        });
                    }
                }
            }
        }
    }
}

pub fn run() -> Tally {
    let mut t = Tally::default();
    substitution(&mut t);
    git_against_stability(&mut t);
    special_vectors(&mut t);
    systems(&mut t);
    t
}
