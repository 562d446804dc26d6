use serde::{Deserialize, Serialize};

use super::series::{parallel_extension_generators, series_extension_generators};
use super::{Construction, LiftError};
use crate::gb::{BinomialSet, MonomialOrder};
use crate::matroid::Matroid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Series,
    Parallel,
}

/// Extend at element `at` of the current matroid; the new element is `d + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub kind: StepKind,
    pub at: usize,
}

impl Step {
    pub fn series(at: usize) -> Self {
        Step {
            kind: StepKind::Series,
            at,
        }
    }

    pub fn parallel(at: usize) -> Self {
        Step {
            kind: StepKind::Parallel,
            at,
        }
    }
}

/// Applies `steps` in turn starting from `m` with generators `f` over its
/// canonical variables. After every step the construction is renamed onto
/// canonical variables, so the result is over `x1_1..x1_n` of the final matroid.
pub fn sp_extension_sequence(
    m: &Matroid,
    f: &BinomialSet,
    order: Option<&MonomialOrder>,
    steps: &[Step],
) -> Result<Construction, LiftError> {
    let mut cur = Construction::from_matroid(m, f.clone(), order.cloned());
    for (n, step) in steps.iter().enumerate() {
        let d = cur.matroid.ground_size();
        if step.at == 0 || step.at > d {
            return Err(LiftError::BadStep(format!("step {} extends at {} outside 1..={d}", n + 1, step.at)));
        }
        let next = match step.kind {
            StepKind::Series => series_extension_generators(&cur.matroid, step.at, &cur.generators, cur.order.as_ref())?,
            StepKind::Parallel => {
                parallel_extension_generators(&cur.matroid, step.at, &cur.generators, cur.order.as_ref())?
            }
        };
        cur = next.canonical();
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::uniform;
    use crate::exchange::default_order;
    use crate::lift::Verification;
    use crate::oracle::matroid_toric_gb;

    #[test]
    fn triangle_then_more() {
        let m = uniform(1, 2).unwrap();
        let f = matroid_toric_gb(&m).unwrap();
        let o = default_order(&m);
        let steps = [Step::series(1), Step::parallel(3), Step::series(2)];
        let c = sp_extension_sequence(&m, &f, Some(&o), &steps).unwrap();
        assert_eq!(c.matroid.ground_size(), 5);
        assert_eq!(
            c.verify().unwrap(),
            Verification {
                generates: true,
                groebner: true
            }
        );
    }

    #[test]
    fn rejects_out_of_range_steps() {
        let m = uniform(1, 2).unwrap();
        let f = BinomialSet::empty(Default::default());
        let err = sp_extension_sequence(&m, &f, None, &[Step::series(3)]).unwrap_err();
        assert!(matches!(err, LiftError::BadStep(_)));
    }

    #[test]
    fn step_json() {
        let s: Vec<Step> = serde_json::from_str(r#"[{"kind":"series","at":1},{"kind":"parallel","at":2}]"#).unwrap();
        assert_eq!(s, vec![Step::series(1), Step::parallel(2)]);
    }
}
