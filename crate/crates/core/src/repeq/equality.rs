use serde::{Deserialize, Serialize};

use super::frac::{AtPoint, Symbolic};
use super::represent::{Evaluator, RepEnv};
use crate::commrat::commutativize;
use crate::error::{Error, Result};
use crate::ncexpr::{ExprStore, NcExpr};
use crate::CommRat;

/// Trial schedule of the equality engine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqConfig {
    /// Matrix sizes `k`, tried in the listed order.
    pub sizes: Vec<usize>,
    /// Truncation order `N`.
    pub order: usize,
    /// Trials per size.
    pub trials: usize,
    /// Entries of `S`, `T` are drawn from `[-bound, bound]`.
    pub bound: i64,
    pub seed: u64,
    /// Coefficient degree cap; exceeding it is an error, not a verdict.
    pub max_degree: usize,
    /// Compare coefficients as rational functions instead of at seeded
    /// points. Slower; the verdicts differ only with negligible probability.
    #[serde(default)]
    pub exact: bool,
}

impl Default for EqConfig {
    fn default() -> Self {
        EqConfig { sizes: vec![2, 3], order: 4, trials: 10, bound: 3, seed: 1, max_degree: 4096, exact: false }
    }
}

impl EqConfig {
    pub fn with_seed(seed: u64) -> Self {
        EqConfig { seed, ..Self::default() }
    }

    /// Deterministic environment for trial `trial` at size `k`.
    pub fn env(&self, k: usize, trial: usize) -> RepEnv {
        RepEnv::random(k, self.order, self.bound, trial_seed(self.seed, k, trial))
    }

    /// `(k, trial)` pairs in witness-priority order.
    pub fn schedule(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.sizes.iter().flat_map(move |&k| (0..self.trials).map(move |t| (k, t)))
    }

    pub fn total_trials(&self) -> usize {
        self.sizes.len() * self.trials
    }
}

/// Per-trial seed: SplitMix64 finalisation of the master seed mixed with the
/// size and trial index.
pub fn trial_seed(master: u64, k: usize, trial: usize) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    mix(mix(mix(master) ^ k as u64) ^ trial as u64)
}

/// Replayable evidence that two expressions differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(flatten)]
    pub env: RepEnv,
    /// `[row, column]` of the differing entry.
    pub position: [usize; 2],
    pub epsilon_degree: usize,
}

/// Outcome of an equality query.
///
/// Both `Distinct` verdicts are certificates. `ProbablyEqual` only records
/// that every trial agreed.
#[derive(Clone, Debug, PartialEq)]
pub enum EqVerdict {
    CommDistinct { difference: CommRat },
    NcDistinct { witness: Witness },
    ProbablyEqual { trials: usize },
}

impl EqVerdict {
    pub fn is_distinct(&self) -> bool {
        !matches!(self, EqVerdict::ProbablyEqual { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            EqVerdict::CommDistinct { .. } => "CommDistinct",
            EqVerdict::NcDistinct { .. } => "NCDistinct",
            EqVerdict::ProbablyEqual { .. } => "ProbablyEqual",
        }
    }
}

impl Serialize for EqVerdict {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = ser.serialize_map(Some(2))?;
        m.serialize_entry("verdict", self.label())?;
        match self {
            EqVerdict::CommDistinct { difference } => m.serialize_entry("difference", &difference.to_string())?,
            EqVerdict::NcDistinct { witness } => m.serialize_entry("witness", witness)?,
            EqVerdict::ProbablyEqual { trials } => m.serialize_entry("trials", trials)?,
        }
        m.end()
    }
}

/// Three-tier equality test: commutative images, then matrix-series trials.
pub fn eq_nc(store: &ExprStore, e1: NcExpr, e2: NcExpr, cfg: &EqConfig) -> Result<EqVerdict> {
    Ok(eq_nc_batch(store, &[(e1, e2)], cfg)?.remove(0))
}

/// Runs [`eq_nc`] on many pairs, sharing one memo table per trial environment.
pub fn eq_nc_batch(store: &ExprStore, pairs: &[(NcExpr, NcExpr)], cfg: &EqConfig) -> Result<Vec<EqVerdict>> {
    let mut verdicts: Vec<Option<EqVerdict>> = Vec::with_capacity(pairs.len());
    for &(a, b) in pairs {
        let fa = commutativize(store, a)?;
        let fb = commutativize(store, b)?;
        if fa.equals(&fb) {
            verdicts.push(None);
        } else {
            verdicts.push(Some(EqVerdict::CommDistinct { difference: (&fa - &fb).reduce() }));
        }
    }
    for (k, trial) in cfg.schedule() {
        let pending: Vec<usize> = (0..pairs.len()).filter(|&i| verdicts[i].is_none() && pairs[i].0 != pairs[i].1).collect();
        if pending.is_empty() {
            continue;
        }
        let env = cfg.env(k, trial);
        let mut trial = Trial::new(store, env.clone(), cfg.exact, cfg.max_degree);
        for i in pending {
            let (a, b) = pairs[i];
            if let Some((d, r, c)) = trial.compare(a, b)? {
                verdicts[i] = Some(EqVerdict::NcDistinct {
                    witness: Witness { env: env.clone(), position: [r, c], epsilon_degree: d },
                });
            }
        }
    }
    let total = cfg.total_trials();
    Ok(verdicts
        .into_iter()
        .map(|v| v.unwrap_or(EqVerdict::ProbablyEqual { trials: total }))
        .collect())
}

/// Evaluation attempts at fresh points before a trial gives up.
const MAX_POINT_ATTEMPTS: usize = 16;

/// One trial environment, evaluated either exactly or at seeded points.
///
/// At a point, both sides are specialised by a ring homomorphism, so a
/// difference there is a certificate. If some inverted subterm vanishes at
/// the point, the next point in the seeded sequence is used.
struct Trial<'s> {
    store: &'s ExprStore,
    env: RepEnv,
    max_degree: usize,
    exact: Option<Evaluator<'s, Symbolic>>,
    points: Vec<Evaluator<'s, AtPoint>>,
}

impl<'s> Trial<'s> {
    fn new(store: &'s ExprStore, env: RepEnv, exact: bool, max_degree: usize) -> Self {
        let exact = exact.then(|| Evaluator::new(store, env.clone(), Symbolic, max_degree));
        Trial { store, env, max_degree, exact, points: Vec::new() }
    }

    fn compare(&mut self, a: NcExpr, b: NcExpr) -> Result<Option<(usize, usize, usize)>> {
        if let Some(ev) = self.exact.as_mut() {
            let (ma, mb) = (ev.eval(a)?, ev.eval(b)?);
            return Ok(ma.first_difference(ev.ring(), &mb));
        }
        for attempt in 0..MAX_POINT_ATTEMPTS {
            if self.points.len() <= attempt {
                let (px, py) = self.env.point(attempt);
                self.points.push(Evaluator::new(self.store, self.env.clone(), AtPoint { px, py }, self.max_degree));
            }
            let ev = &mut self.points[attempt];
            match (ev.eval(a), ev.eval(b)) {
                (Ok(ma), Ok(mb)) => return Ok(ma.first_difference(ev.ring(), &mb)),
                (Err(Error::DivisionByZero), _) | (_, Err(Error::DivisionByZero)) => continue,
                (Err(e), _) | (_, Err(e)) => return Err(e),
            }
        }
        Err(Error::BudgetExceeded { what: "evaluation points", limit: MAX_POINT_ATTEMPTS })
    }
}

/// Re-evaluates both sides in the witness environment and returns the first
/// differing position as `(epsilon_degree, row, column)`. `exact` must match
/// the configuration that produced the witness.
pub fn replay(store: &ExprStore, e1: NcExpr, e2: NcExpr, env: &RepEnv, exact: bool) -> Result<Option<(usize, usize, usize)>> {
    env.validate()?;
    Trial::new(store, env.clone(), exact, usize::MAX).compare(e1, e2)
}
