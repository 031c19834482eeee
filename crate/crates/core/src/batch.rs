//! Batch entry points over many independent models.

use crate::error::Result;
use crate::pair_model::PairModel;
use crate::par::{self, ExecMode};
use crate::polynomial::RatPoly;
use crate::stability::{check_semistable, check_semistable_quotient_form, Verdict};
use crate::walls::{chamber_report, ChamberReport, DeltaRay};

/// Subobject-form verdicts, in input order.
pub fn check_batch(
    jobs: &[(PairModel, RatPoly)],
    strict: bool,
    mode: ExecMode,
) -> Vec<Result<Verdict>> {
    par::map_slice(jobs, mode, |(m, d)| check_semistable(m, d, strict))
}

/// Whether both forms of the inequality agree on every job.
pub fn duality_batch(jobs: &[(PairModel, RatPoly)], mode: ExecMode) -> Vec<Result<bool>> {
    par::map_slice(jobs, mode, |(m, d)| {
        let a = check_semistable(m, d, false)?;
        let b = check_semistable_quotient_form(m, d, false)?;
        Ok(a.status == b.status && a.witness_records() == b.witness_records())
    })
}

pub fn chamber_batch(jobs: &[(PairModel, DeltaRay)], mode: ExecMode) -> Vec<Result<ChamberReport>> {
    par::map_slice(jobs, mode, |(m, r)| chamber_report(m, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pair_model::SubobjectRecord;

    #[test]
    fn modes_agree() {
        let jobs: Vec<(PairModel, RatPoly)> = (0..8)
            .map(|k| {
                let rec = SubobjectRecord::new(RatPoly::from_ints(&[k, 1]), false);
                (
                    PairModel::new(1, RatPoly::from_ints(&[2, 2]), vec![rec]),
                    RatPoly::from_ints(&[2]),
                )
            })
            .collect();
        let a = check_batch(&jobs, false, ExecMode::Sequential);
        let b = check_batch(&jobs, false, ExecMode::Parallel);
        assert_eq!(a, b);
        assert!(duality_batch(&jobs, ExecMode::Parallel)
            .into_iter()
            .all(|r| r.unwrap()));
    }
}
