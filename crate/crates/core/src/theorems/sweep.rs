use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use super::report::{Outcome, Tally, TheoremReport};
use crate::characters::MultChar;
use crate::finite_field::FqElem;
use crate::hypergeometric::Evaluator;

/// Spaces up to this size are swept in full under [`SweepPlan::Auto`].
pub const AUTO_EXHAUSTIVE_LIMIT: u128 = 10_000;

const DEFAULT_SAMPLE: usize = 500;
const DEFAULT_SEED: u64 = 42;
// seeds the argument choices of verifiers run without a seeded plan
const EXHAUSTIVE_SEED: u64 = 0;
// Tuples evaluated per parallel batch; bounds memory on large sweeps.
const SWEEP_CHUNK: usize = 4096;

/// How a verifier walks its parameter space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepPlan {
    /// Every tuple.
    Exhaustive,
    /// `count` distinct tuples drawn with a seeded generator; the whole space
    /// when it has at most `count` tuples.
    Sampled { count: usize, seed: u64 },
    /// Exhaustive up to [`AUTO_EXHAUSTIVE_LIMIT`] tuples, sampled beyond.
    Auto { count: usize, seed: u64 },
}

impl Default for SweepPlan {
    fn default() -> Self {
        SweepPlan::Auto {
            count: DEFAULT_SAMPLE,
            seed: DEFAULT_SEED,
        }
    }
}

impl SweepPlan {
    pub fn seed(&self) -> u64 {
        match *self {
            SweepPlan::Exhaustive => EXHAUSTIVE_SEED,
            SweepPlan::Sampled { seed, .. } | SweepPlan::Auto { seed, .. } => seed,
        }
    }

    /// Number of tuples to draw from a space of `size`, or `None` for all of them.
    fn sample_size(&self, size: u128) -> Option<usize> {
        match *self {
            SweepPlan::Exhaustive => None,
            SweepPlan::Sampled { count, .. } => (size > count as u128).then_some(count),
            SweepPlan::Auto { count, .. } => {
                (size > AUTO_EXHAUSTIVE_LIMIT && size > count as u128).then_some(count)
            }
        }
    }
}

impl fmt::Display for SweepPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepPlan::Exhaustive => f.write_str("exhaustive"),
            SweepPlan::Sampled { count, seed } => write!(f, "sample:{count}:{seed}"),
            SweepPlan::Auto { count, seed } => write!(f, "auto:{count}:{seed}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid plan `{0}`: expected exhaustive, sample:COUNT:SEED or auto[:COUNT:SEED]")]
pub struct PlanParseError(String);

impl FromStr for SweepPlan {
    type Err = PlanParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || PlanParseError(s.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        let numbers = |count: &str, seed: &str| -> Result<(usize, u64), PlanParseError> {
            Ok((
                count.parse().map_err(|_| err())?,
                seed.parse().map_err(|_| err())?,
            ))
        };
        match parts.as_slice() {
            ["exhaustive"] => Ok(SweepPlan::Exhaustive),
            ["auto"] => Ok(SweepPlan::default()),
            ["sample", c, s] => {
                let (count, seed) = numbers(c, s)?;
                Ok(SweepPlan::Sampled { count, seed })
            }
            ["auto", c, s] => {
                let (count, seed) = numbers(c, s)?;
                Ok(SweepPlan::Auto { count, seed })
            }
            _ => Err(err()),
        }
    }
}

/// FNV-1a, used to derive independent, stable seeds per (verifier, field).
fn stream_seed(seed: u64, label: &str, q: u64) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let bytes = seed
        .to_le_bytes()
        .into_iter()
        .chain(label.bytes())
        .chain(q.to_le_bytes());
    for b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

pub(crate) fn rng_for(plan: &SweepPlan, label: &str, q: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(stream_seed(plan.seed(), label, q))
}

/// A product of per-axis character choices, indexed in lexicographic order.
pub(crate) struct ParamSpace {
    axes: Vec<Vec<MultChar>>,
}

impl ParamSpace {
    /// Every character on each of `arity` axes.
    pub fn full(ev: &Evaluator, arity: usize) -> Self {
        let all: Vec<MultChar> = ev.chars().all().collect();
        ParamSpace {
            axes: vec![all; arity],
        }
    }

    pub fn from_axes(axes: Vec<Vec<MultChar>>) -> Self {
        ParamSpace { axes }
    }

    pub fn size(&self) -> u128 {
        self.axes.iter().map(|a| a.len() as u128).product()
    }

    fn tuple(&self, mut idx: u128) -> Vec<MultChar> {
        let mut out = vec![MultChar::trivial(1); self.axes.len()];
        for (slot, axis) in out.iter_mut().zip(&self.axes).rev() {
            let len = axis.len() as u128;
            *slot = axis[(idx % len) as usize];
            idx /= len;
        }
        out
    }

    /// True when `plan` visits every tuple of this space.
    pub fn covers_all(&self, plan: &SweepPlan) -> bool {
        plan.sample_size(self.size()).is_none()
    }

    /// The tuple indices a plan selects, sorted.
    fn indices(&self, plan: &SweepPlan, label: &str, q: u64) -> Vec<u128> {
        let size = self.size();
        match plan.sample_size(size) {
            None => (0..size).collect(),
            Some(count) => {
                let len = usize::try_from(size).expect("parameter space exceeds the address space");
                let mut rng = rng_for(plan, label, q);
                let mut picked: Vec<u128> = index::sample(&mut rng, len, count)
                    .into_iter()
                    .map(|i| i as u128)
                    .collect();
                picked.sort_unstable();
                picked
            }
        }
    }
}

/// Evaluates `check` on the tuples `plan` selects from `space` and records the
/// outcomes, in index order, into `report`.
pub(crate) fn run<F>(
    ev: &Evaluator,
    report: &mut TheoremReport,
    space: &ParamSpace,
    plan: &SweepPlan,
    label: &str,
    check: F,
) where
    F: Fn(&[MultChar]) -> Outcome + Sync,
{
    let q = ev.field().order();
    let indices = space.indices(plan, label, q);
    for chunk in indices.chunks(SWEEP_CHUNK) {
        let tallies: Vec<Tally> = chunk
            .par_iter()
            .map(|&i| {
                let t = space.tuple(i);
                let o = check(&t);
                Tally::new(ev, &t, o)
            })
            .collect();
        for tally in tallies {
            report.absorb(tally);
        }
    }
}

/// `{1, -1}` plus `extra` seeded random nonzero elements, deduplicated.
pub(crate) fn sample_args(
    ev: &Evaluator,
    plan: &SweepPlan,
    label: &str,
    extra: usize,
) -> Vec<FqElem> {
    let field = ev.field();
    let mut args = vec![field.one(), field.minus_one()];
    let mut rng = rng_for(plan, label, field.order());
    for _ in 0..extra {
        let a = rng.random_range(0..field.unit_order()) as i64;
        args.push(field.exp(a));
    }
    let mut seen = std::collections::BTreeSet::new();
    args.retain(|x| seen.insert(x.packed()));
    args
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theorems::evaluator_for;

    #[test]
    fn plan_round_trip() {
        for text in ["exhaustive", "sample:500:42", "auto:100:7"] {
            let plan: SweepPlan = text.parse().unwrap();
            assert_eq!(plan.to_string(), text);
        }
        assert_eq!("auto".parse::<SweepPlan>().unwrap(), SweepPlan::default());
        assert!("sample:x:1".parse::<SweepPlan>().is_err());
        assert!("random".parse::<SweepPlan>().is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_distinct() {
        let ev = evaluator_for(13).unwrap();
        let space = ParamSpace::full(&ev, 4);
        let plan = SweepPlan::Sampled {
            count: 50,
            seed: 42,
        };
        let a = space.indices(&plan, "x", 13);
        let b = space.indices(&plan, "x", 13);
        assert_eq!(a, b);
        assert_eq!(a.len(), 50);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        let c = space.indices(
            &SweepPlan::Sampled {
                count: 50,
                seed: 43,
            },
            "x",
            13,
        );
        assert_ne!(a, c);
        // a small space is swept in full
        let small = ParamSpace::full(&ev, 1);
        assert_eq!(small.indices(&plan, "x", 13).len(), 12);
        assert_eq!(space.indices(&SweepPlan::default(), "x", 13).len(), 500);
        assert_eq!(
            ParamSpace::full(&ev, 3)
                .indices(&SweepPlan::default(), "x", 13)
                .len(),
            1728
        );
    }

    #[test]
    fn tuples_are_lexicographic() {
        let ev = evaluator_for(5).unwrap();
        let space = ParamSpace::full(&ev, 2);
        let idx: Vec<(u64, u64)> = (0..space.size())
            .map(|i| {
                let t = space.tuple(i);
                (t[0].index(), t[1].index())
            })
            .collect();
        assert_eq!(idx[0], (0, 0));
        assert_eq!(idx[1], (0, 1));
        assert_eq!(idx[4], (1, 0));
        assert_eq!(idx[15], (3, 3));
    }
}
