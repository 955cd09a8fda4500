//! Random-ensemble experiments: codes spanned by uniformly drawn rows,
//! Monte-Carlo estimates of the balancing probability, the exact shift-sum
//! identity, and the weight-concentration experiment for short random codes.
//!
//! Trial `t` of a run draws from the ChaCha8 stream `t` keyed by the master
//! seed, so trials are independent of scheduling and reproducible.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::balancing::{q_exact_with, reduced_fraction, BalanceSpec, QOptions};
use crate::error::{cap, Error, Result};
use crate::gf2::{LinearCode, Word};

pub const SHIFT_SUM_MAX_N: usize = 16;

/// Deterministic generator for trial `trial` under `master_seed`.
pub fn trial_rng(master_seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(trial);
    rng
}

pub fn random_word<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Word {
    let limbs = (0..n.div_ceil(64)).map(|_| rng.gen::<u64>()).collect();
    Word::from_limbs(n, limbs)
}

/// A code spanned by `rows` generators: the basis of `prefix` (if any)
/// followed by uniformly random words. Dependent rows are kept.
pub fn sample_random_subspace<R: Rng + ?Sized>(
    n: usize,
    rows: usize,
    rng: &mut R,
    prefix: Option<&LinearCode>,
) -> Result<LinearCode> {
    let mut gens: Vec<Word> = Vec::with_capacity(rows);
    if let Some(p) = prefix {
        if p.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: p.len(),
            });
        }
        gens.extend(p.basis().iter().cloned());
    }
    while gens.len() < rows {
        gens.push(random_word(n, rng));
    }
    LinearCode::new(n, gens)
}

#[derive(Clone, Debug)]
pub struct EnsembleConfig {
    pub n: usize,
    /// Total generator rows, prefix rows included.
    pub rows: usize,
    pub lambda: usize,
    pub trials: usize,
    pub master_seed: u64,
    pub fixed_prefix: Option<LinearCode>,
}

impl EnsembleConfig {
    pub fn new(n: usize, rows: usize, lambda: usize, trials: usize, master_seed: u64) -> Self {
        EnsembleConfig {
            n,
            rows,
            lambda,
            trials,
            master_seed,
            fixed_prefix: None,
        }
    }

    pub fn with_prefix(mut self, prefix: LinearCode) -> Self {
        self.fixed_prefix = Some(prefix);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub trial: usize,
    pub rank: usize,
    pub uncovered: u64,
    pub balancing: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleReport {
    pub n: usize,
    pub rows: usize,
    pub lambda: usize,
    pub trials: usize,
    pub master_seed: u64,
    pub prefix_dim: Option<usize>,
    pub successes: usize,
    pub fraction: f64,
    pub wilson_ci_95: (f64, f64),
    pub outcomes: Vec<TrialOutcome>,
}

const Z_95: f64 = 1.959_963_984_540_054;

/// Wilson score interval at 95%, clamped so it always contains the estimate.
pub fn wilson_interval(successes: usize, trials: usize) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z_95 * Z_95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z_95 / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).clamp(0.0, p), (center + half).clamp(p, 1.0))
}

/// Fraction of sampled codes that are (λ-almost-)balancing.
pub fn estimate_balancing_probability(config: &EnsembleConfig) -> Result<EnsembleReport> {
    if config.trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let spec = BalanceSpec::new(config.n, config.lambda)?;
    let outcomes: Vec<TrialOutcome> = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(config.master_seed, t as u64);
            let code = sample_random_subspace(
                config.n,
                config.rows,
                &mut rng,
                config.fixed_prefix.as_ref(),
            )?;
            let report = q_exact_with(&code, &spec, &QOptions::default())?;
            Ok(TrialOutcome {
                trial: t,
                rank: code.k(),
                uncovered: report.uncovered,
                balancing: report.uncovered == 0,
            })
        })
        .collect::<Result<_>>()?;
    let successes = outcomes.iter().filter(|o| o.balancing).count();
    Ok(EnsembleReport {
        n: config.n,
        rows: config.rows,
        lambda: config.lambda,
        trials: config.trials,
        master_seed: config.master_seed,
        prefix_dim: config.fixed_prefix.as_ref().map(LinearCode::k),
        successes,
        fraction: successes as f64 / config.trials as f64,
        wilson_ci_95: wilson_interval(successes, config.trials),
        outcomes,
    })
}

/// Runs the ensemble for every row count in `rows`, same seed each time.
pub fn sweep_rows(
    config: &EnsembleConfig,
    rows: impl IntoIterator<Item = usize>,
) -> Result<Vec<EnsembleReport>> {
    rows.into_iter()
        .map(|r| {
            let mut c = config.clone();
            c.rows = r;
            estimate_balancing_probability(&c)
        })
        .collect()
}

/// `rows,fraction,ci_lo,ci_hi` table.
pub fn reports_to_csv(reports: &[EnsembleReport]) -> String {
    let mut out = String::from("rows,fraction,ci_lo,ci_hi\n");
    for r in reports {
        out.push_str(&format!(
            "{},{:.6},{:.6},{:.6}\n",
            r.rows, r.fraction, r.wilson_ci_95.0, r.wilson_ci_95.1
        ));
    }
    out
}

/// Serializes a big rational as `"num/den"`.
pub(crate) mod rational_str {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShiftSumCheck {
    /// `2^-n sum_x Q(C + F x)`
    #[serde(with = "rational_str")]
    pub lhs: BigRational,
    /// `Q(C)^2`
    #[serde(with = "rational_str")]
    pub rhs: BigRational,
    pub equal: bool,
}

/// Evaluates both sides of the shift-sum identity exactly, one `Q`
/// evaluation per shift `x` in F^n.
pub fn shift_sum_identity_check(code: &LinearCode, spec: &BalanceSpec) -> Result<ShiftSumCheck> {
    let n = spec.n();
    if n > SHIFT_SUM_MAX_N {
        return Err(cap("shift sum", format!("n = {n} > {SHIFT_SUM_MAX_N}")));
    }
    let opts = QOptions::default();
    let base = q_exact_with(code, spec, &opts)?.uncovered;
    let shift_sum: u128 = (0u64..1 << n)
        .into_par_iter()
        .map(|x| {
            let extended = code.with_row(Word::from_u64(n, x))?;
            Ok(q_exact_with(&extended, spec, &opts)?.uncovered as u128)
        })
        .collect::<Result<Vec<u128>>>()?
        .into_iter()
        .sum();
    let den = BigInt::from(1) << (2 * n);
    let lhs = BigRational::new(BigInt::from(shift_sum), den.clone());
    let rhs = BigRational::new(BigInt::from(base) * BigInt::from(base), den);
    Ok(ShiftSumCheck {
        equal: lhs == rhs,
        lhs,
        rhs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcentrationTrial {
    pub trial: usize,
    pub rank: usize,
    /// Every nonzero codeword has `|w - n/2| <= δ n`.
    pub event_holds: bool,
    pub uncovered: u64,
    pub q_num: u64,
    pub q_den: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationReport {
    pub n: usize,
    pub ell: usize,
    pub delta: String,
    pub trials: usize,
    pub seed: u64,
    pub event_frequency: f64,
    /// Frequency of `Q(C_0) > 3/4`.
    pub q_above_three_quarters: f64,
    pub outcomes: Vec<ConcentrationTrial>,
}

/// `⌈(1/2) log2 n⌉`: least `l` with `4^l >= n`.
pub fn half_log2_ceil(n: usize) -> usize {
    let mut l = 0;
    while (1usize << (2 * l)) < n {
        l += 1;
    }
    l
}

/// Samples `C_0` spanned by `⌈(1/2) log2 n⌉` rows (after `prefix`, if
/// given) and records the weight-concentration event and `Q(C_0)`.
pub fn weight_concentration_check(
    n: usize,
    delta: Ratio<u64>,
    trials: usize,
    seed: u64,
    prefix: Option<&LinearCode>,
) -> Result<ConcentrationReport> {
    let spec = BalanceSpec::exact(n)?;
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    if *delta.numer() * 2 >= *delta.denom() {
        return Err(Error::InvalidParameter("delta must lie in [0, 1/2)".into()));
    }
    let ell = half_log2_ceil(n);
    let (dn, dd) = (*delta.numer() as u128, *delta.denom() as u128);
    let outcomes: Vec<ConcentrationTrial> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t as u64);
            let code = sample_random_subspace(n, ell, &mut rng, prefix)?;
            // |w - n/2| <= δ n  <=>  |2w - n| * den <= 2 * num * n
            let event_holds = code.span_u64()?.into_iter().filter(|&w| w != 0).all(|w| {
                let dev = (2 * w.count_ones() as i64 - n as i64).unsigned_abs() as u128;
                dev * dd <= 2 * dn * n as u128
            });
            let uncovered = q_exact_with(&code, &spec, &QOptions::default())?.uncovered;
            let (q_num, q_den) = reduced_fraction(uncovered, n);
            Ok(ConcentrationTrial {
                trial: t,
                rank: code.k(),
                event_holds,
                uncovered,
                q_num,
                q_den,
            })
        })
        .collect::<Result<_>>()?;
    let freq = |pred: &dyn Fn(&ConcentrationTrial) -> bool| {
        outcomes.iter().filter(|o| pred(o)).count() as f64 / trials as f64
    };
    let event_frequency = freq(&|o| o.event_holds);
    let q_above_three_quarters = freq(&|o| 4 * o.uncovered as u128 > 3u128 << n);
    Ok(ConcentrationReport {
        n,
        ell,
        delta: delta.to_string(),
        trials,
        seed,
        event_frequency,
        q_above_three_quarters,
        outcomes,
    })
}
