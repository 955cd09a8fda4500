//! Exact coverage of F^n by the balanced (or λ-almost-balanced) spheres
//! around the codewords of a linear code.
//!
//! The uncovered count `|{y : |d(y,x) - n/2| > λ for all x in C}|` is computed
//! by three independent algorithms which must agree bit for bit:
//!
//! * `naive`: scan `y`, test codewords with early exit. Coverage is constant
//!   on cosets of `C`, so only the coset representatives that vanish on the
//!   pivot coordinates are scanned and the result is scaled by `2^k`.
//! * `sphere_mark`: mark the thick sphere around every codeword in a
//!   `2^n`-bit map.
//! * `wht`: XOR-convolve the indicator of `C` with the thick-sphere indicator
//!   through the Walsh-Hadamard transform in exact `i64` arithmetic.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{cap, Error, Result};
use crate::gf2::LinearCode;

/// Largest `n` handled by the naive scan without an override.
pub const NAIVE_MAX_N: usize = 24;
pub const NAIVE_MAX_K: usize = 20;
/// Largest `n` for the transform without an override; 32 with one.
pub const WHT_MAX_N: usize = 28;
pub const WHT_MAX_N_OVERRIDE: usize = 32;
/// Bound on `|C| * |B_λ(0)|` for sphere marking.
pub const SPHERE_MARK_MAX_LOG2_WORK: u32 = 36;
/// Naive scan bounds when large runs are explicitly allowed.
pub const NAIVE_MAX_N_OVERRIDE: usize = 40;
pub const NAIVE_MAX_K_OVERRIDE: usize = 24;

/// Length and tolerance of the balancing condition `|d - n/2| <= λ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BalanceSpec {
    n: usize,
    lambda: usize,
}

impl BalanceSpec {
    pub fn new(n: usize, lambda: usize) -> Result<Self> {
        if n == 0 || n % 2 != 0 {
            return Err(Error::OddLength(n));
        }
        if 2 * lambda >= n {
            return Err(Error::InvalidParameter(format!(
                "lambda = {lambda} must be below n/2 = {}",
                n / 2
            )));
        }
        Ok(BalanceSpec { n, lambda })
    }

    pub fn exact(n: usize) -> Result<Self> {
        BalanceSpec::new(n, 0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// Inclusive distance band `[n/2 - λ, n/2 + λ]`.
    pub fn band(&self) -> (usize, usize) {
        (self.n / 2 - self.lambda, self.n / 2 + self.lambda)
    }

    #[inline]
    pub fn admits(&self, distance: usize) -> bool {
        let (lo, hi) = self.band();
        (lo..=hi).contains(&distance)
    }

    /// `|B_λ(0)|`.
    pub fn sphere_size(&self) -> BigUint {
        let (lo, hi) = self.band();
        (lo..=hi).map(|w| binomial_exact(self.n, w)).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Naive,
    SphereMark,
    Wht,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Naive, Method::SphereMark, Method::Wht];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Naive => "naive",
            Method::SphereMark => "sphere_mark",
            Method::Wht => "wht",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Method::Naive),
            "sphere_mark" | "sphere-mark" => Ok(Method::SphereMark),
            "wht" => Ok(Method::Wht),
            other => Err(Error::InvalidParameter(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct QOptions {
    /// `None` selects automatically.
    pub method: Option<Method>,
    /// Lifts the default caps (naive and wht) to their override limits.
    pub allow_large: bool,
}

impl QOptions {
    pub fn method(method: Method) -> Self {
        QOptions {
            method: Some(method),
            allow_large: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QReport {
    pub n: usize,
    pub k: usize,
    pub lambda: usize,
    pub uncovered: u64,
    pub q_num: u64,
    pub q_den: u64,
    pub method: Method,
    pub elapsed_ms: f64,
}

impl QReport {
    pub fn is_balancing(&self) -> bool {
        self.uncovered == 0
    }

    pub fn q(&self) -> BigRational {
        BigRational::new(self.q_num.into(), self.q_den.into())
    }

    pub fn q_f64(&self) -> f64 {
        self.q_num as f64 / self.q_den as f64
    }
}

/// Reduced `uncovered / 2^n` as `(num, den)`.
pub fn reduced_fraction(uncovered: u64, n: usize) -> (u64, u64) {
    let den = 1u64 << n;
    if uncovered == 0 {
        return (0, 1);
    }
    let g = uncovered.gcd(&den);
    (uncovered / g, den / g)
}

/// Picks a method: naive for short codes of small dimension, the transform
/// otherwise, and the coset scan past the transform's reach.
pub fn auto_method(n: usize, k: usize) -> Method {
    if n <= 16 && k <= 10 {
        Method::Naive
    } else if n <= WHT_MAX_N {
        Method::Wht
    } else {
        Method::Naive
    }
}

fn check_code(code: &LinearCode, spec: &BalanceSpec) -> Result<()> {
    if code.len() != spec.n() {
        return Err(Error::LengthMismatch {
            expected: spec.n(),
            found: code.len(),
        });
    }
    Ok(())
}

fn check_caps(
    code: &LinearCode,
    spec: &BalanceSpec,
    method: Method,
    allow_large: bool,
) -> Result<()> {
    let (n, k) = (spec.n(), code.k());
    match method {
        Method::Naive => {
            let (max_n, max_k) = if allow_large {
                (NAIVE_MAX_N_OVERRIDE, NAIVE_MAX_K_OVERRIDE)
            } else {
                (NAIVE_MAX_N, NAIVE_MAX_K)
            };
            if n > max_n || k > max_k {
                return Err(cap(
                    "naive scan",
                    format!("n = {n}, k = {k}; limits n <= {max_n}, k <= {max_k}"),
                ));
            }
        }
        Method::SphereMark => {
            let ball = spec.sphere_size();
            let work = ball << k;
            if n > 32 || work > BigUint::one() << SPHERE_MARK_MAX_LOG2_WORK {
                return Err(cap(
                    "sphere marking",
                    format!("n = {n}, |C|*|B| = {work} > 2^{SPHERE_MARK_MAX_LOG2_WORK}"),
                ));
            }
        }
        Method::Wht => {
            let max_n = if allow_large {
                WHT_MAX_N_OVERRIDE
            } else {
                WHT_MAX_N
            };
            if n > max_n {
                return Err(cap("transform", format!("n = {n} > {max_n}")));
            }
        }
    }
    Ok(())
}

/// Exact uncovered count of `code` under `spec`.
pub fn q_exact(code: &LinearCode, spec: &BalanceSpec, method: Method) -> Result<QReport> {
    q_exact_with(code, spec, &QOptions::method(method))
}

pub fn q_exact_with(code: &LinearCode, spec: &BalanceSpec, opts: &QOptions) -> Result<QReport> {
    check_code(code, spec)?;
    let method = opts
        .method
        .unwrap_or_else(|| auto_method(spec.n(), code.k()));
    check_caps(code, spec, method, opts.allow_large)?;
    let start = Instant::now();
    let uncovered = match method {
        Method::Naive => uncovered_naive(code, spec)?,
        Method::SphereMark => uncovered_sphere_mark(code, spec)?,
        Method::Wht => {
            let counts = balanced_distance_counts(code, spec)?;
            counts.iter().filter(|&&c| c == 0).count() as u64
        }
    };
    let (q_num, q_den) = reduced_fraction(uncovered, spec.n());
    Ok(QReport {
        n: spec.n(),
        k: code.k(),
        lambda: spec.lambda(),
        uncovered,
        q_num,
        q_den,
        method,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Uncovered count with the automatically chosen method.
pub fn uncovered_count(code: &LinearCode, spec: &BalanceSpec) -> Result<u64> {
    Ok(q_exact_with(code, spec, &QOptions::default())?.uncovered)
}

pub fn is_balancing_set(code: &LinearCode, spec: &BalanceSpec) -> Result<bool> {
    Ok(uncovered_count(code, spec)? == 0)
}

/// Non-pivot coordinates: coset representatives are the words supported there.
fn free_positions(code: &LinearCode) -> Vec<usize> {
    let mut is_pivot = vec![false; code.len()];
    for &p in code.pivots() {
        is_pivot[p] = true;
    }
    (0..code.len()).filter(|&i| !is_pivot[i]).collect()
}

fn deposit(bits: u64, positions: &[usize]) -> u64 {
    positions
        .iter()
        .enumerate()
        .fold(0, |acc, (i, &p)| acc | ((bits >> i) & 1) << p)
}

const CHUNK_LOG2: u32 = 14;

/// Calls `visit(rep, uncovered)` for every coset representative; returns the
/// number of uncovered representatives.
fn scan_cosets<F>(code: &LinearCode, spec: &BalanceSpec, visit: F) -> Result<u64>
where
    F: Fn(u64) + Sync,
{
    let codewords = code.span_u64()?;
    let free = free_positions(code);
    let (lo, hi) = spec.band();
    let (lo, hi) = (lo as u32, hi as u32);
    let total = 1u64 << free.len();
    let chunk = 1u64 << CHUNK_LOG2.min(free.len() as u32);
    let count = (0..total / chunk)
        .into_par_iter()
        .map(|c| {
            let start = c * chunk;
            let mut y = deposit(start ^ (start >> 1), &free);
            let mut uncovered = 0u64;
            for i in start..start + chunk {
                if i != start {
                    y ^= 1u64 << free[i.trailing_zeros() as usize];
                }
                let covered = codewords.iter().any(|&x| {
                    let d = (y ^ x).count_ones();
                    d >= lo && d <= hi
                });
                if !covered {
                    uncovered += 1;
                    visit(y);
                }
            }
            uncovered
        })
        .sum();
    Ok(count)
}

fn uncovered_naive(code: &LinearCode, spec: &BalanceSpec) -> Result<u64> {
    let reps = scan_cosets(code, spec, |_| {})?;
    Ok(reps << code.k())
}

/// All weight-`w` words of length `n <= 64`, in increasing order.
pub(crate) fn constant_weight_words(n: usize, w: usize) -> impl Iterator<Item = u64> {
    let limit: u128 = 1u128 << n;
    let mut next: Option<u64> = if w > n {
        None
    } else if w == 0 {
        Some(0)
    } else {
        Some(((1u128 << w) - 1) as u64)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack.
            let c = cur & cur.wrapping_neg();
            let r = cur as u128 + c as u128;
            if r >= limit {
                None
            } else {
                let r = r as u64;
                Some((((r ^ cur) >> 2) / c) | r)
            }
        };
        Some(cur)
    })
}

fn uncovered_sphere_mark(code: &LinearCode, spec: &BalanceSpec) -> Result<u64> {
    let n = spec.n();
    let codewords = code.span_u64()?;
    let mut marked = vec![0u64; (1usize << n).div_ceil(64)];
    let (lo, hi) = spec.band();
    for w in lo..=hi {
        for v in constant_weight_words(n, w) {
            for &x in &codewords {
                let y = (x ^ v) as usize;
                marked[y / 64] |= 1u64 << (y % 64);
            }
        }
    }
    let covered: u64 = marked.iter().map(|m| m.count_ones() as u64).sum();
    Ok((1u64 << n) - covered)
}

/// In-place unnormalized Walsh-Hadamard transform (its own inverse up to a
/// factor `len`). Panics on `i64` overflow in debug builds.
pub fn fwht(a: &mut [i64]) {
    let len = a.len();
    assert!(len.is_power_of_two());
    let mut h = 1;
    while h < len {
        let block = (2 * h).max(1 << 12).min(len);
        a.par_chunks_mut(block).for_each(|chunk| {
            for pair in chunk.chunks_mut(2 * h) {
                let (l, r) = pair.split_at_mut(h);
                for (x, y) in l.iter_mut().zip(r.iter_mut()) {
                    let (u, v) = (*x, *y);
                    *x = u + v;
                    *y = u - v;
                }
            }
        });
        h *= 2;
    }
}

/// `K_w(i) = sum_j (-1)^j C(i, j) C(n - i, w - j)`.
pub fn krawtchouk(n: usize, w: usize, i: usize) -> i64 {
    (0..=w.min(i))
        .filter(|&j| w - j <= n - i)
        .map(|j| {
            let term = binomial_u64(i, j) as i64 * binomial_u64(n - i, w - j) as i64;
            if j % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

fn binomial_u64(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

type SphereCache = Mutex<HashMap<(usize, usize), Arc<Vec<i64>>>>;

/// Transform of the thick-sphere indicator, indexed by the weight of the
/// frequency: the indicator is weight-symmetric, so its transform is a sum of
/// Krawtchouk values. Cached per `(n, λ)`.
pub fn sphere_transform(spec: &BalanceSpec) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<SphereCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (spec.n(), spec.lambda());
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let (lo, hi) = spec.band();
    let n = spec.n();
    let values: Vec<i64> = (0..=n)
        .map(|i| (lo..=hi).map(|w| krawtchouk(n, w, i)).sum())
        .collect();
    let values = Arc::new(values);
    cache.lock().unwrap().insert(key, values.clone());
    values
}

/// For every `y`, the number of codewords `x` with `|d(y,x) - n/2| <= λ`.
pub fn balanced_distance_counts(code: &LinearCode, spec: &BalanceSpec) -> Result<Vec<i64>> {
    check_code(code, spec)?;
    let n = spec.n();
    if n > WHT_MAX_N_OVERRIDE {
        return Err(cap("transform", format!("n = {n} > {WHT_MAX_N_OVERRIDE}")));
    }
    let mut a = vec![0i64; 1usize << n];
    for x in code.span_u64()? {
        a[x as usize] = 1;
    }
    fwht(&mut a);
    let sphere = sphere_transform(spec);
    a.par_iter_mut().enumerate().for_each(|(u, v)| {
        *v *= sphere[(u as u64).count_ones() as usize];
    });
    fwht(&mut a);
    a.par_iter_mut().for_each(|v| {
        debug_assert_eq!(*v % (1i64 << n), 0);
        *v >>= n;
    });
    Ok(a)
}

/// Histogram `h[c]` of words with exactly `c` codewords in their thick sphere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageProfile {
    pub histogram: Vec<u64>,
}

impl CoverageProfile {
    pub fn uncovered(&self) -> u64 {
        self.histogram.first().copied().unwrap_or(0)
    }

    /// `sum_c c * h[c]`.
    pub fn incidences(&self) -> u128 {
        self.histogram
            .iter()
            .enumerate()
            .map(|(c, &h)| c as u128 * h as u128)
            .sum()
    }
}

pub fn coverage_profile(code: &LinearCode, spec: &BalanceSpec) -> Result<CoverageProfile> {
    if spec.n() > WHT_MAX_N {
        return Err(cap("transform", format!("n = {} > {WHT_MAX_N}", spec.n())));
    }
    let counts = balanced_distance_counts(code, spec)?;
    let mut histogram = vec![0u64; (1usize << code.k()) + 1];
    for c in counts {
        histogram[c as usize] += 1;
    }
    Ok(CoverageProfile { histogram })
}

/// Bitmap (bit `y`) of the words not covered by `code`; `n <= 26`.
pub fn uncovered_bitmap(code: &LinearCode, spec: &BalanceSpec) -> Result<Vec<u64>> {
    check_code(code, spec)?;
    let n = spec.n();
    if n > 26 {
        return Err(cap("uncovered bitmap", format!("n = {n} > 26")));
    }
    let codewords = code.span_u64()?;
    let bitmap: Vec<std::sync::atomic::AtomicU64> = (0..(1usize << n).div_ceil(64))
        .map(|_| Default::default())
        .collect();
    scan_cosets(code, spec, |rep| {
        for &x in &codewords {
            let y = (rep ^ x) as usize;
            bitmap[y / 64].fetch_or(1u64 << (y % 64), std::sync::atomic::Ordering::Relaxed);
        }
    })?;
    Ok(bitmap.into_iter().map(|a| a.into_inner()).collect())
}

/// Exact `C(n, k)`; zero when `k > n`.
pub fn binomial_exact(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// The central binomial coefficient between its classical bounds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BinomialBounds {
    pub n: usize,
    pub lower: f64,
    pub value: BigUint,
    pub upper: f64,
    pub holds: bool,
}

// pi to 35 decimal places (~116 bits), as an enclosing interval.
const PI_DIGITS: &str = "314159265358979323846264338327950288";
const PI_SCALE: u32 = 35;

fn pi_interval() -> (BigRational, BigRational) {
    let num: num_bigint::BigInt = PI_DIGITS.parse().unwrap();
    let den = num_bigint::BigInt::from(10u32).pow(PI_SCALE);
    let lo = BigRational::new(num.clone(), den.clone());
    let hi = BigRational::new(num + 1, den);
    (lo, hi)
}

/// Checks `2^n / sqrt(2n) <= C(n, n/2) <= 2^n / sqrt(pi n / 2)`.
///
/// Both sides are squared so the lower bound is an integer comparison; the
/// upper bound only needs pi, which enters through a rational enclosure.
pub fn bounds_check(n: usize) -> Result<BinomialBounds> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::OddLength(n));
    }
    let value = binomial_exact(n, n / 2);
    let sq = &value * &value;
    let four_n = BigUint::one() << (2 * n);
    let lower_ok = BigUint::from(2 * n) * &sq >= four_n;
    // C^2 * pi * n / 2 <= 4^n, decided with the upper end of the pi interval.
    let (_, pi_hi) = pi_interval();
    let lhs = pi_hi * BigRational::from_integer(num_bigint::BigInt::from(sq * n));
    let rhs = BigRational::from_integer(num_bigint::BigInt::from(four_n << 1));
    let upper_ok = lhs <= rhs;

    let pow = 2f64.powi(n as i32);
    Ok(BinomialBounds {
        n,
        lower: pow / (2.0 * n as f64).sqrt(),
        upper: pow / (std::f64::consts::PI * n as f64 / 2.0).sqrt(),
        value,
        holds: lower_ok && upper_ok,
    })
}

/// `|B(x) ∩ B(x')|` for two words at distance `dist`.
pub fn sphere_intersection_size(n: usize, dist: usize) -> BigUint {
    if dist > n || dist % 2 != 0 || n % 2 != 0 {
        return BigUint::zero();
    }
    binomial_exact(dist, dist / 2) * binomial_exact(n - dist, (n - dist) / 2)
}

/// Number of `y` with `d(x,y) = i` and `d(x',y) = j` where `d(x,x') = dist`.
pub fn pair_distance_count(n: usize, dist: usize, i: usize, j: usize) -> BigUint {
    if dist > n {
        return BigUint::zero();
    }
    let (i, j, dist, n) = (i as i64, j as i64, dist as i64, n as i64);
    let a2 = j - i + dist;
    let b2 = i + j - dist;
    if a2 < 0 || b2 < 0 || a2 % 2 != 0 || b2 % 2 != 0 {
        return BigUint::zero();
    }
    let (a, b) = ((a2 / 2) as usize, (b2 / 2) as usize);
    binomial_exact(dist as usize, a) * binomial_exact((n - dist) as usize, b)
}

/// Floating-point Q for display.
pub fn q_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
