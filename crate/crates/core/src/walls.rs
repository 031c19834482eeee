//! Walls and chambers along a ray `δ(t) = t·δ̂` of stability parameters.
//!
//! For a record the gap `RHS − LHS` of its inequality is `A + t·B` with
//! polynomials `A`, `B`, so every coefficient is affine in `t`. Only the
//! top degree where `(a_k, b_k) ≠ (0, 0)` can change the eventual sign,
//! which gives at most one wall per record.

use std::cmp::Ordering;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pair_model::PairModel;
use crate::par;
use crate::polynomial::RatPoly;
use crate::rational::{self, Rational};
use crate::stability::{
    check_semistable, checked_records, large_delta_criterion, record_comparison, Status,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaRay {
    pub base: RatPoly,
}

impl DeltaRay {
    pub fn new(base: RatPoly) -> Self {
        DeltaRay { base }
    }

    pub fn validate(&self, model: &PairModel) -> Result<()> {
        if self.base.eventual_sign() != Ordering::Greater {
            return Err(Error::OutOfRange(
                "ray base must be eventually positive".into(),
            ));
        }
        let deg = self.base.degree().unwrap_or(0);
        if deg >= model.dim_x {
            return Err(Error::ParameterDegreeTooHigh {
                degree: deg,
                dim_x: model.dim_x,
            });
        }
        Ok(())
    }

    pub fn at(&self, t: &Rational) -> RatPoly {
        self.base.scale(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WallKind {
    /// The record reaches equality but the sign on the ray does not change.
    BecomesEqual,
    SignFlip,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wall {
    #[serde(with = "rational::serde_str")]
    pub t: Rational,
    pub record: usize,
    pub kind: WallKind,
    /// The record attains equality at `t`. Otherwise the ray only crosses
    /// the locus where the leading affine coefficient vanishes, and the
    /// record's relation at `t` matches one of the two sides.
    pub equality: bool,
}

/// `(A, B)` with `RHS − LHS = A + t·B` for record `i`.
pub fn record_gap_affine(model: &PairModel, ray: &DeltaRay, i: usize) -> (RatPoly, RatPoly) {
    let c0 = record_comparison(model, &RatPoly::zero(), i);
    let c1 = record_comparison(model, &ray.base, i);
    let a = &c0.rhs - &c0.lhs;
    let b = &(&c1.rhs - &c1.lhs) - &a;
    (a, b)
}

fn sign(q: &Rational) -> Ordering {
    q.cmp(&Rational::zero())
}

fn affine_wall(a: &RatPoly, b: &RatPoly, record: usize) -> Option<Wall> {
    let top = a.degree().max(b.degree())?;
    let (ak, bk) = (a.coeff(top), b.coeff(top));
    if bk.is_zero() {
        return None;
    }
    let t = -(&ak / &bk);
    let kind = match sign(&t) {
        Ordering::Less => return None,
        Ordering::Greater => WallKind::SignFlip,
        Ordering::Equal => match a.eventual_sign() {
            Ordering::Equal => WallKind::BecomesEqual,
            s if s != sign(&bk) => WallKind::SignFlip,
            _ => return None,
        },
    };
    let equality = (a + &b.scale(&t)).is_zero();
    Some(Wall {
        t,
        record,
        kind,
        equality,
    })
}

/// All walls `t ≥ 0`, sorted by `t` and then by record.
pub fn wall_ts(model: &PairModel, ray: &DeltaRay) -> Vec<Wall> {
    let idx = checked_records(model);
    let mut walls: Vec<Wall> = par::map_slice(&idx, par::auto(idx.len()), |&i| {
        let (a, b) = record_gap_affine(model, ray, i);
        affine_wall(&a, &b, i)
    })
    .into_iter()
    .flatten()
    .collect();
    walls.sort_by(|x, y| x.t.cmp(&y.t).then(x.record.cmp(&y.record)));
    walls
}

/// Distinct wall parameters in increasing order.
pub fn wall_points(walls: &[Wall]) -> Vec<Rational> {
    let mut ts: Vec<Rational> = walls.iter().map(|w| w.t.clone()).collect();
    ts.dedup();
    ts
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sample {
    #[serde(with = "rational::serde_str")]
    pub t: Rational,
    pub status: Status,
}

/// An open interval between consecutive walls; the first one also contains
/// `t = 0` when no wall sits there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chamber {
    #[serde(with = "rational::serde_str")]
    pub lo: Rational,
    /// `None` for the unbounded tail.
    #[serde(with = "rational::serde_opt")]
    pub hi: Option<Rational>,
    pub includes_lo: bool,
    pub status: Status,
    pub samples: Vec<Sample>,
    /// All samples agree.
    pub constant: bool,
}

impl Chamber {
    pub fn contains(&self, t: &Rational) -> bool {
        let above = if self.includes_lo {
            *t >= self.lo
        } else {
            *t > self.lo
        };
        above && self.hi.as_ref().is_none_or(|hi| t < hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallPoint {
    #[serde(with = "rational::serde_str")]
    pub t: Rational,
    pub records: Vec<usize>,
    pub status: Status,
    /// Every record with a wall here attains equality.
    pub exact: bool,
    /// Stable at the wall implies stable in both neighbouring chambers, and
    /// semistable in a neighbouring chamber implies semistable at the wall.
    /// Guaranteed only at exact walls.
    pub inclusions_hold: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberReport {
    pub walls: Vec<Wall>,
    pub chambers: Vec<Chamber>,
    pub wall_points: Vec<WallPoint>,
    #[serde(with = "rational::serde_opt")]
    pub delta_max: Option<Rational>,
    pub tail_status: Status,
    /// Verdict of the large-parameter criterion for this model.
    pub large_delta_status: Status,
    pub tail_matches_large_delta: bool,
}

impl ChamberReport {
    /// Every chamber is constant and every exact wall satisfies the
    /// inclusions.
    pub fn is_consistent(&self) -> bool {
        self.chambers.iter().all(|c| c.constant)
            && self
                .wall_points
                .iter()
                .all(|w| !w.exact || w.inclusions_hold)
    }

    pub fn status_at(&self, t: &Rational) -> Option<Status> {
        if let Some(w) = self.wall_points.iter().find(|w| w.t == *t) {
            return Some(w.status);
        }
        self.chambers
            .iter()
            .find(|c| c.contains(t))
            .map(|c| c.status)
    }
}

fn status_at(model: &PairModel, ray: &DeltaRay, t: &Rational) -> Result<Status> {
    Ok(check_semistable(model, &ray.at(t), false)?.status)
}

fn chamber_samples(lo: &Rational, hi: Option<&Rational>, includes_lo: bool) -> Vec<Rational> {
    let mut ts = Vec::new();
    if includes_lo {
        ts.push(lo.clone());
    }
    match hi {
        Some(hi) => {
            let width = hi - lo;
            ts.push(lo + &width / rational::int(2));
            ts.push(lo + &width / rational::int(3));
        }
        None => {
            ts.push(lo + rational::int(1));
            ts.push(lo + rational::int(2));
        }
    }
    ts
}

fn chamber(
    model: &PairModel,
    ray: &DeltaRay,
    lo: Rational,
    hi: Option<Rational>,
    includes_lo: bool,
) -> Result<Chamber> {
    let samples = chamber_samples(&lo, hi.as_ref(), includes_lo)
        .into_iter()
        .map(|t| {
            Ok(Sample {
                status: status_at(model, ray, &t)?,
                t,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let status = samples[0].status;
    let constant = samples.iter().all(|s| s.status == status);
    Ok(Chamber {
        lo,
        hi,
        includes_lo,
        status,
        samples,
        constant,
    })
}

fn inclusions_hold(wall: Status, chamber: Status) -> bool {
    (wall != Status::Stable || chamber == Status::Stable)
        && (!chamber.is_semistable() || wall.is_semistable())
}

/// Samples the verdict in every chamber and at every wall.
pub fn chamber_report(model: &PairModel, ray: &DeltaRay) -> Result<ChamberReport> {
    ray.validate(model)?;
    let walls = wall_ts(model, ray);
    let ts = wall_points(&walls);

    let mut chambers = Vec::new();
    let mut lo = rational::zero();
    let mut includes_lo = true;
    for t in &ts {
        if *t > lo {
            chambers.push(chamber(
                model,
                ray,
                lo.clone(),
                Some(t.clone()),
                includes_lo,
            )?);
        }
        lo = t.clone();
        includes_lo = false;
    }
    chambers.push(chamber(model, ray, lo, None, includes_lo)?);

    let mut wall_points_out = Vec::new();
    for t in &ts {
        let status = status_at(model, ray, t)?;
        let here: Vec<&Wall> = walls.iter().filter(|w| w.t == *t).collect();
        let records = here.iter().map(|w| w.record).collect();
        let exact = here.iter().all(|w| w.equality);
        let ok = chambers
            .iter()
            .filter(|c| c.lo == *t || c.hi.as_ref() == Some(t))
            .all(|c| inclusions_hold(status, c.status));
        wall_points_out.push(WallPoint {
            t: t.clone(),
            records,
            status,
            exact,
            inclusions_hold: ok,
        });
    }

    let tail_status = chambers.last().map(|c| c.status).unwrap_or(Status::Stable);
    let large_delta_status = large_delta_criterion(model, &ray.base).status;
    Ok(ChamberReport {
        delta_max: ts.last().cloned(),
        walls,
        chambers,
        wall_points: wall_points_out,
        tail_status,
        large_delta_status,
        tail_matches_large_delta: tail_status == large_delta_status,
    })
}

/// The largest wall on the ray; beyond it the verdict is constant.
pub fn delta_max_on_ray(model: &PairModel, ray: &DeltaRay) -> Option<Rational> {
    wall_ts(model, ray).pop().map(|w| w.t)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridCheck {
    pub points: usize,
    #[serde(with = "rational::serde_str")]
    pub upper: Rational,
    pub agrees: bool,
    pub mismatches: Vec<String>,
}

/// Cross-checks [`wall_ts`] against per-record comparisons sampled on `n`
/// equally spaced points of `[0, T]`, `T` past the last wall. Every sampled
/// change of a record's relation must bracket one of its walls, and every
/// wall must lie in a bracket where its record changes.
pub fn grid_check(model: &PairModel, ray: &DeltaRay, n: usize) -> Result<GridCheck> {
    if n < 2 {
        return Err(Error::OutOfRange("grid needs at least 2 points".into()));
    }
    ray.validate(model)?;
    let walls = wall_ts(model, ray);
    let upper = walls
        .last()
        .map(|w| &w.t * rational::int(2) + rational::int(1))
        .unwrap_or_else(|| rational::int(1));
    let step = &upper / rational::int(n as i64 - 1);
    let grid: Vec<Rational> = (0..n).map(|k| &step * rational::int(k as i64)).collect();

    let idx = checked_records(model);
    let relations: Vec<Vec<Ordering>> = par::map_slice(&grid, par::auto(grid.len()), |t| {
        let delta = ray.at(t);
        idx.iter()
            .map(|&i| record_comparison(model, &delta, i).relation())
            .collect()
    });

    let mut mismatches = Vec::new();
    for (col, &i) in idx.iter().enumerate() {
        let own: Vec<&Wall> = walls.iter().filter(|w| w.record == i).collect();
        let mut bracketed = vec![false; own.len()];
        for k in 0..n - 1 {
            let (lo, hi) = (&grid[k], &grid[k + 1]);
            let inside: Vec<usize> = (0..own.len())
                .filter(|&j| own[j].t >= *lo && own[j].t <= *hi)
                .collect();
            if relations[k][col] != relations[k + 1][col] {
                if inside.is_empty() {
                    mismatches.push(format!(
                        "record {i}: relation changes on [{}, {}] without a wall",
                        rational::format(lo),
                        rational::format(hi)
                    ));
                }
                for j in inside {
                    bracketed[j] = true;
                }
            }
        }
        for (w, ok) in own.iter().zip(bracketed) {
            if !ok {
                mismatches.push(format!(
                    "record {i}: wall at {} not seen on the grid",
                    rational::format(&w.t)
                ));
            }
        }
    }
    Ok(GridCheck {
        points: n,
        upper,
        agrees: mismatches.is_empty(),
        mismatches,
    })
}
