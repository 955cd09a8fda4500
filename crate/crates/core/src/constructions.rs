//! Explicit constructions: Knuth's prefix-flip set, extended simplex codes
//! and their repetitions, the greedy squaring construction, the published
//! fixtures, and the closed-form dimension bounds.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::balancing::{fwht, reduced_fraction, uncovered_bitmap, BalanceSpec};
use crate::error::{cap, Error, Result};
use crate::gf2::{parse_matrix, LinearCode, Word};

/// The prefix-flip words `x_i = 1^i 0^(n-i)`, `i = 1..=n`.
#[derive(Clone, Debug)]
pub struct KnuthSet {
    n: usize,
    words: Vec<Word>,
}

impl KnuthSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n % 2 != 0 {
            return Err(Error::OddLength(n));
        }
        let words = (1..=n)
            .map(|i| {
                let mut w = Word::zeros(n);
                for j in 0..i {
                    w.set(j, true);
                }
                w
            })
            .collect();
        Ok(KnuthSet { n, words })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// `x_i` for `1 <= i <= n`.
    pub fn word(&self, i: usize) -> &Word {
        &self.words[i - 1]
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// Smallest `i` with `w(y + x_i) = n/2`, and that balanced word.
    pub fn balance(&self, y: &Word) -> Result<(usize, Word)> {
        if y.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: y.len(),
            });
        }
        // Flipping one more prefix bit moves the weight by exactly one, and
        // the weight goes from w(y) to n - w(y), so n/2 is always crossed.
        let mut z = y.clone();
        for i in 1..=self.n {
            z.flip(i - 1);
            if z.weight() == self.n / 2 {
                return Ok((i, z));
            }
        }
        unreachable!("prefix flips always reach weight n/2 for even n")
    }
}

pub fn knuth_set(n: usize) -> Result<KnuthSet> {
    KnuthSet::new(n)
}

pub fn knuth_balance(y: &Word) -> Result<(usize, Word)> {
    KnuthSet::new(y.len())?.balance(y)
}

/// Row `r` of the `m x 2^m` generator whose columns run through F^m.
///
/// Coordinate `p` (0-based) carries the element `2^m - 1 - p`, so columns go
/// in decreasing binary order and the zero column is the last coordinate;
/// row `r` reads bit `m - 1 - r` of each element.
fn simplex_row(m: usize, r: usize) -> Word {
    let len = 1usize << m;
    let mut w = Word::zeros(len);
    for p in 0..len {
        let element = len - 1 - p;
        if element >> (m - 1 - r) & 1 == 1 {
            w.set(p, true);
        }
    }
    w
}

/// `C_0(m, ℓ)`: the first `ℓ` rows of the extended simplex generator; with
/// `odd_coset`, `C_0'(m, ℓ)` which adds the weight-one word at coordinate 1.
pub fn simplex_extended(m: usize, ell: usize, odd_coset: bool) -> Result<LinearCode> {
    if m == 0 || m > 10 {
        return Err(Error::InvalidParameter(format!("m = {m} outside 1..=10")));
    }
    if ell == 0 || ell > m {
        return Err(Error::InvalidParameter(format!(
            "ell = {ell} outside 1..={m}"
        )));
    }
    let len = 1usize << m;
    let mut rows: Vec<Word> = (0..ell).map(|r| simplex_row(m, r)).collect();
    if odd_coset {
        let mut odd = Word::zeros(len);
        odd.set(0, true);
        rows.push(odd);
    }
    LinearCode::new(len, rows)
}

/// `C_0^(s)`: every generator of `C_0(m, m)` repeated `s` times.
pub fn repeated_simplex(m: usize, s: usize) -> Result<LinearCode> {
    if s == 0 {
        return Err(Error::InvalidParameter("s must be positive".into()));
    }
    let base = simplex_extended(m, m, false)?;
    let rows: Vec<Word> = base
        .rows()
        .iter()
        .map(|r| Word::concat(&vec![r.clone(); s]))
        .collect();
    LinearCode::new(s << m, rows)
}

/// Tolerance `⌊sqrt(s n) / 2⌋` for which `C_0^(s)` is almost balancing.
pub fn repeated_simplex_lambda(m: usize, s: usize) -> usize {
    let sn = s * (s << m);
    // floor(sqrt(sn) / 2) = floor(sqrt(sn / 4)) = largest l with 4 l^2 <= sn
    let mut l = 0;
    while 4 * (l + 1) * (l + 1) <= sn {
        l += 1;
    }
    l
}

/// `sum_i (M - 2 d(y, c_i))^2` over all codewords of `C_0(m, m)`; the
/// identity says it equals `M^2`.
pub fn verify_sum_of_squares(m: usize, y: &Word) -> Result<(u128, bool)> {
    let code = simplex_extended(m, m, false)?;
    let big_m = code.len();
    if y.len() != big_m {
        return Err(Error::LengthMismatch {
            expected: big_m,
            found: y.len(),
        });
    }
    let mut lhs: u128 = 0;
    for c in code.span()? {
        let d = y.distance(&c)? as i128;
        let z = big_m as i128 - 2 * d;
        lhs += (z * z) as u128;
    }
    Ok((lhs, lhs == (big_m * big_m) as u128))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GreedyMode {
    /// Every candidate in F^n is scored each step.
    FullScan,
    /// `batch` random candidates per attempt; three failed attempts fall
    /// back to a full scan.
    Sampled { batch: usize, seed: u64 },
}

impl GreedyMode {
    pub fn sampled_default(n: usize, seed: u64) -> Self {
        GreedyMode::Sampled { batch: 4 * n, seed }
    }
}

/// One line of the greedy trace: `Q(C_i)` after `step` accepted rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyStep {
    pub step: usize,
    pub dim: usize,
    pub q_num: u64,
    pub q_den: u64,
}

#[derive(Clone, Debug)]
pub struct GreedyOutcome {
    pub code: LinearCode,
    pub trace: Vec<GreedyStep>,
    /// Uncovered counts matching `trace`.
    pub uncovered: Vec<u64>,
    /// Steps that had to fall back to a full scan (sampled mode only).
    pub fallbacks: usize,
}

impl GreedyOutcome {
    /// False when `max_dim` stopped the construction with `Q > 0`.
    pub fn is_balancing(&self) -> bool {
        self.uncovered.last() == Some(&0)
    }
}

pub const GREEDY_MAX_N: usize = 24;

fn bit(bitmap: &[u64], y: usize) -> bool {
    bitmap[y / 64] >> (y % 64) & 1 == 1
}

fn popcount(bitmap: &[u64]) -> u64 {
    bitmap.iter().map(|w| w.count_ones() as u64).sum()
}

/// `|U ∩ (U + x)|` for every `x` at once: the autocorrelation of the
/// indicator of `U`, computed as the inverse transform of its squared
/// spectrum.
fn autocorrelation(bitmap: &[u64], n: usize) -> Vec<i64> {
    let mut f: Vec<i64> = (0..1usize << n).map(|y| bit(bitmap, y) as i64).collect();
    fwht(&mut f);
    for v in f.iter_mut() {
        *v *= *v;
    }
    fwht(&mut f);
    for v in f.iter_mut() {
        *v >>= n;
    }
    f
}

fn overlap(bitmap: &[u64], x: usize, n: usize) -> u64 {
    (0..1usize << n)
        .filter(|&y| bit(bitmap, y) && bit(bitmap, y ^ x))
        .count() as u64
}

/// Builds `C_i = C_(i-1) + F x_i` with `Q(C_i) <= Q(C_(i-1))^2` until
/// `Q = 0` or the dimension reaches `max_dim`.
pub fn greedy_balancing(
    spec: &BalanceSpec,
    mode: GreedyMode,
    max_dim: usize,
) -> Result<GreedyOutcome> {
    let n = spec.n();
    if n > GREEDY_MAX_N {
        return Err(cap(
            "greedy construction",
            format!("n = {n} > {GREEDY_MAX_N}"),
        ));
    }
    let mut rng = match mode {
        GreedyMode::Sampled { seed, .. } => Some(ChaCha8Rng::seed_from_u64(seed)),
        GreedyMode::FullScan => None,
    };
    let mut code = LinearCode::zero(n);
    let mut bitmap = uncovered_bitmap(&code, spec)?;
    let mut unc = popcount(&bitmap);
    let mut trace = vec![trace_step(0, 0, unc, n)];
    let mut uncovered = vec![unc];
    let mut fallbacks = 0;

    while unc > 0 && code.k() < max_dim {
        // Q_new <= Q^2  <=>  |U_new| * 2^n <= |U|^2
        let squaring_ok = |c: u64| (c as u128) << n <= (unc as u128) * (unc as u128);
        let mut choice: Option<(u64, u64)> = None;

        if let (GreedyMode::Sampled { batch, .. }, Some(rng)) = (mode, rng.as_mut()) {
            for _ in 0..3 {
                let mut best: Option<(u64, u64)> = None;
                for _ in 0..batch.max(1) {
                    let x = loop {
                        let x = rng.gen_range(1u64..1u64 << n);
                        if !code.contains(&Word::from_u64(n, x)) {
                            break x;
                        }
                    };
                    let c = overlap(&bitmap, x as usize, n);
                    if best.map_or(true, |b| (c, x) < b) {
                        best = Some((c, x));
                    }
                }
                if let Some(b) = best.filter(|b| squaring_ok(b.0)) {
                    choice = Some(b);
                    break;
                }
            }
            if choice.is_none() {
                fallbacks += 1;
            }
        }

        let (count, x) = match choice {
            Some(c) => c,
            None => {
                let corr = autocorrelation(&bitmap, n);
                let members = code.span_u64()?;
                let mut is_member = vec![false; 1usize << n];
                for m in members {
                    is_member[m as usize] = true;
                }
                (0..1usize << n)
                    .filter(|&x| !is_member[x])
                    .map(|x| (corr[x] as u64, x as u64))
                    .min()
                    .ok_or_else(|| Error::InvalidParameter("code already spans F^n".into()))?
            }
        };
        debug_assert!(squaring_ok(count), "squaring condition violated");

        let xs = x as usize;
        let next: Vec<u64> = {
            let mut next = vec![0u64; bitmap.len()];
            for y in 0..1usize << n {
                if bit(&bitmap, y) && bit(&bitmap, y ^ xs) {
                    next[y / 64] |= 1 << (y % 64);
                }
            }
            next
        };
        bitmap = next;
        unc = popcount(&bitmap);
        debug_assert_eq!(unc, count);
        code = code.with_row(Word::from_u64(n, x))?;
        trace.push(trace_step(trace.len(), code.k(), unc, n));
        uncovered.push(unc);
    }

    Ok(GreedyOutcome {
        code,
        trace,
        uncovered,
        fallbacks,
    })
}

fn trace_step(step: usize, dim: usize, unc: u64, n: usize) -> GreedyStep {
    let (q_num, q_den) = reduced_fraction(unc, n);
    GreedyStep {
        step,
        dim,
        q_num,
        q_den,
    }
}

/// A published reference generator matrix with its labeled `[n, k, d]`.
#[derive(Clone, Debug)]
pub struct ReferenceBasis {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub code: LinearCode,
}

struct ReferenceEntry {
    n: usize,
    k: usize,
    d: usize,
    rows: &'static str,
    fnv: u64,
}

const REFERENCE_BASES: [ReferenceEntry; 7] = [
    ReferenceEntry {
        n: 8,
        k: 3,
        d: 3,
        rows: "00001111\n01110010\n10001100\n",
        fnv: 0xd38c9e7e5defc3d0,
    },
    ReferenceEntry {
        n: 12,
        k: 4,
        d: 5,
        rows: "000000111111\n000111001110\n101001011100\n111100001000\n",
        fnv: 0x2a3b5704a8a71da8,
    },
    ReferenceEntry {
        n: 16,
        k: 5,
        d: 7,
        rows: "0000000011111111\n\
               0001111100001110\n\
               0110011101111100\n\
               1101011011001000\n\
               1111111100010000\n",
        fnv: 0xfa7dcc74feb3eae8,
    },
    ReferenceEntry {
        n: 20,
        k: 5,
        d: 9,
        rows: "00000000001111111111\n\
               00000111110000111110\n\
               01111001110111001100\n\
               11100101101100101000\n\
               11010111010010010000\n",
        fnv: 0x2dceab14cd9a723c,
    },
    ReferenceEntry {
        n: 24,
        k: 6,
        d: 9,
        rows: "000000000000111111111111\n\
               000000011111000000111110\n\
               000111100111001111011100\n\
               001001111011110011111000\n\
               111111110100000000010000\n\
               110101011010100000100000\n",
        fnv: 0x6846de447101e778,
    },
    ReferenceEntry {
        n: 28,
        k: 6,
        d: 11,
        rows: "0000000000000011111111111111\n\
               0000000111111100000011111110\n\
               0001111000111100111100111100\n\
               0010011011001111001111111000\n\
               1111110110111000000000010000\n\
               1011011101100110000000100000\n",
        fnv: 0x283107ffd9999fe6,
    },
    ReferenceEntry {
        n: 32,
        k: 7,
        d: 13,
        rows: "00000000000000001111111111111111\n\
               00000000011111110000000011111110\n\
               00000111100000110000011101111100\n\
               01110011001001010101110110101000\n\
               01101110100101011111011010110000\n\
               10110111000111000110111001100000\n\
               10100100100000011101111101000000\n",
        fnv: 0x0e2a567fcf57e766,
    },
];

pub const REFERENCE_LENGTHS: [usize; 7] = [8, 12, 16, 20, 24, 28, 32];

fn fnv1a(text: &str) -> u64 {
    text.bytes().fold(0xcbf29ce484222325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100000001b3)
    })
}

pub fn reference_basis(n: usize) -> Result<ReferenceBasis> {
    let entry = REFERENCE_BASES
        .iter()
        .find(|e| e.n == n)
        .ok_or_else(|| Error::InvalidParameter(format!("no reference basis for n = {n}")))?;
    let sum = fnv1a(entry.rows);
    if sum != entry.fnv {
        return Err(Error::InvalidParameter(format!(
            "reference data for n = {n} fails its checksum ({sum:#x})"
        )));
    }
    let m = parse_matrix(entry.rows)?;
    Ok(ReferenceBasis {
        n: entry.n,
        k: entry.k,
        d: entry.d,
        code: LinearCode::new(m.n, m.rows)?,
    })
}

/// Minimum weight of a nonzero codeword; `None` for the zero code.
pub fn min_distance(code: &LinearCode) -> Result<Option<usize>> {
    if code.len() <= 64 {
        Ok(code
            .span_u64()?
            .into_iter()
            .filter(|&w| w != 0)
            .map(|w| w.count_ones() as usize)
            .min())
    } else {
        Ok(code
            .span()?
            .filter(|w| !w.is_zero())
            .map(|w| w.weight())
            .min())
    }
}

/// `H(z) = -z log2 z - (1-z) log2 (1-z)`.
pub fn binary_entropy(z: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    term(z) + term(1.0 - z)
}

/// `sum_{i<k} ⌈d / 2^i⌉`, the Griesmer length bound.
pub fn griesmer_sum(k: usize, d: usize) -> usize {
    (0..k).map(|i| d.div_ceil(1 << i)).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionBounds {
    pub n: usize,
    pub lambda: usize,
    /// `⌈log2 n⌉`
    pub exact_lower: usize,
    /// `⌈log2 n - log2(2λ+1)⌉`
    pub almost_lower: usize,
    /// `⌈(3/2) log2 n⌉`
    pub exact_upper: usize,
    /// `⌈(3/2) log2 n - log2(2λ+1) + n(1 - H(1/2 - λ/n))⌉`
    pub almost_upper: usize,
}

/// Smallest `k >= 0` with `4^k * scale >= target`.
fn min_k_with_pow4(scale: &BigRational, target: &BigRational) -> usize {
    let mut k = 0;
    let mut lhs = scale.clone();
    let four = BigRational::from_integer(4.into());
    while lhs < *target {
        lhs *= &four;
        k += 1;
    }
    k
}

/// Evaluates the four dimension bounds exactly.
///
/// Every bound is the ceiling of a base-2 logarithm, so `⌈v⌉` is the least
/// `k` with `2^k >= 2^v`; squaring both sides leaves rational comparisons.
/// The entropy term is exact because `2^(n(1 - H(p)))` with `p n = n/2 - λ`
/// equals `2^n p^(pn) (1-p)^((1-p)n)`.
pub fn dimension_bounds(n: usize, lambda: usize) -> Result<DimensionBounds> {
    let spec = BalanceSpec::new(n, lambda)?;
    let n_big = BigUint::from(n);
    let one = BigRational::one();
    let int = |v: BigUint| BigRational::from_integer(v.into());

    let exact_lower = (usize::BITS - (n - 1).leading_zeros()) as usize;
    let width = 2 * spec.lambda() + 1;
    let mut almost_lower = 0;
    while (width << almost_lower) < n {
        almost_lower += 1;
    }

    let n_cubed = int(n_big.pow(3));
    let exact_upper = min_k_with_pow4(&one, &n_cubed);

    let (lo, hi) = spec.band();
    let entropy_gap = int(BigUint::one() << n)
        * int(BigUint::from(lo).pow(lo as u32))
        * int(BigUint::from(hi).pow(hi as u32))
        / int(n_big.pow(n as u32));
    let width_sq = int(BigUint::from(width * width));
    let target = n_cubed * &entropy_gap * &entropy_gap;
    let almost_upper = if target.is_zero() {
        0
    } else {
        min_k_with_pow4(&width_sq, &target)
    };

    Ok(DimensionBounds {
        n,
        lambda,
        exact_lower,
        almost_lower,
        exact_upper,
        almost_upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balancing::{is_balancing_set, q_exact, Method};

    #[test]
    fn knuth_examples() {
        let (i, z) = knuth_balance(&Word::parse_bits("0000").unwrap()).unwrap();
        assert_eq!((i, z.to_string()), (2, "1100".to_string()));
        let (i, z) = knuth_balance(&Word::parse_bits("1111").unwrap()).unwrap();
        assert_eq!((i, z.to_string()), (2, "0011".to_string()));
        let y = Word::parse_bits("10100000").unwrap();
        let (i, z) = knuth_balance(&y).unwrap();
        assert_eq!(z.weight(), 4);
        assert_eq!(&(&y ^ knuth_set(8).unwrap().word(i)), &z);
        assert!(knuth_set(7).is_err());
    }

    #[test]
    fn knuth_set_shape() {
        let set = knuth_set(10).unwrap();
        assert_eq!(set.len(), 10);
        for i in 1..10 {
            assert_eq!(set.word(i).weight(), i);
            assert_eq!((set.word(i) ^ set.word(i + 1)).weight(), 1);
        }
    }

    fn span_strings(c: &LinearCode) -> Vec<String> {
        let mut v: Vec<String> = c.span().unwrap().map(|w| w.to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn simplex_small() {
        let c = simplex_extended(2, 2, false).unwrap();
        assert_eq!(span_strings(&c), vec!["0000", "0110", "1010", "1100"]);
        let c3 = simplex_extended(3, 3, false).unwrap();
        assert_eq!(c3.len(), 8);
        assert!(c3
            .span()
            .unwrap()
            .filter(|w| !w.is_zero())
            .all(|w| w.weight() == 4));
        assert_eq!(min_distance(&c3).unwrap(), Some(4));
        let odd = simplex_extended(2, 2, true).unwrap();
        assert_eq!(odd.k(), 3);
        assert!(odd.span().unwrap().any(|w| w.weight() % 2 == 1));
        assert!(simplex_extended(2, 3, false).is_err());
    }

    #[test]
    fn simplex_weights_up_to_m6() {
        for m in 1..=6 {
            let c = simplex_extended(m, m, false).unwrap();
            assert_eq!(c.k(), m);
            assert!(c
                .span()
                .unwrap()
                .filter(|w| !w.is_zero())
                .all(|w| w.weight() == 1 << (m - 1)));
        }
    }

    #[test]
    fn repeated_simplex_small() {
        let c = repeated_simplex(2, 2).unwrap();
        assert_eq!(c.len(), 8);
        assert_eq!(
            span_strings(&c),
            vec!["00000000", "01100110", "10101010", "11001100"]
        );
        assert_eq!(
            span_strings(&repeated_simplex(2, 1).unwrap()),
            span_strings(&simplex_extended(2, 2, false).unwrap())
        );
        assert_eq!(repeated_simplex_lambda(3, 2), 2);
        assert_eq!(repeated_simplex_lambda(4, 1), 2);
        assert_eq!(repeated_simplex_lambda(1, 1), 0);
    }

    #[test]
    fn sum_of_squares_examples() {
        let (lhs, ok) = verify_sum_of_squares(2, &Word::parse_bits("0000").unwrap()).unwrap();
        assert_eq!((lhs, ok), (16, true));
        let (lhs, ok) = verify_sum_of_squares(2, &Word::parse_bits("1000").unwrap()).unwrap();
        assert_eq!((lhs, ok), (16, true));
        assert!(verify_sum_of_squares(2, &Word::zeros(8)).is_err());
    }

    #[test]
    fn reference_n8() {
        let f = reference_basis(8).unwrap();
        assert_eq!(f.code.rows()[0].to_string(), "00001111");
        assert_eq!(f.code.k(), 3);
        assert_eq!(min_distance(&f.code).unwrap(), Some(3));
        let spec = BalanceSpec::exact(8).unwrap();
        assert_eq!(q_exact(&f.code, &spec, Method::Naive).unwrap().uncovered, 0);
        assert!(reference_basis(10).is_err());
    }

    #[test]
    fn reference_labels_n20() {
        let f = reference_basis(20).unwrap();
        assert_eq!(f.k, 5);
        assert_eq!(griesmer_sum(5, 9), 20);
        assert_eq!(dimension_bounds(20, 0).unwrap().exact_lower, 5);
    }

    #[test]
    fn min_distance_of_zero_code() {
        assert_eq!(min_distance(&LinearCode::zero(8)).unwrap(), None);
    }

    #[test]
    fn bounds_examples() {
        let b = dimension_bounds(16, 0).unwrap();
        assert_eq!(
            (b.exact_lower, b.exact_upper, b.almost_upper, b.almost_lower),
            (4, 6, 6, 4)
        );
        assert_eq!(dimension_bounds(16, 2).unwrap().almost_lower, 2);
        assert_eq!(dimension_bounds(12, 0).unwrap().exact_lower, 4);
        assert_eq!(dimension_bounds(8, 0).unwrap().exact_upper, 5);
    }

    #[test]
    fn thm5_matches_float_evaluation_off_integers() {
        for n in (4..=64).step_by(2) {
            for lambda in 0..n / 2 {
                let b = dimension_bounds(n, lambda).unwrap();
                let nf = n as f64;
                let v = 1.5 * nf.log2() - ((2 * lambda + 1) as f64).log2()
                    + nf * (1.0 - binary_entropy(0.5 - lambda as f64 / nf));
                if (v - v.round()).abs() > 1e-9 {
                    assert_eq!(b.almost_upper, v.ceil() as usize, "n={n} λ={lambda} v={v}");
                }
                assert!(b.almost_lower <= b.exact_lower);
                assert!(b.exact_lower >= 1 && b.almost_lower >= 1);
            }
        }
    }

    #[test]
    fn greedy_n8() {
        let spec = BalanceSpec::exact(8).unwrap();
        let out = greedy_balancing(&spec, GreedyMode::FullScan, 8).unwrap();
        assert!(out.is_balancing());
        assert!(out.code.k() <= 5 && out.code.k() >= 3);
        assert!(is_balancing_set(&out.code, &spec).unwrap());
        for w in out.uncovered.windows(2) {
            assert!((w[1] as u128) << 8 <= (w[0] as u128) * (w[0] as u128));
            assert!(w[1] < w[0]);
        }
    }

    #[test]
    fn greedy_sampled_is_deterministic() {
        let spec = BalanceSpec::exact(10).unwrap();
        let a = greedy_balancing(&spec, GreedyMode::sampled_default(10, 3), 10).unwrap();
        let b = greedy_balancing(&spec, GreedyMode::sampled_default(10, 3), 10).unwrap();
        assert_eq!(a.trace, b.trace);
        assert_eq!(a.code.rows(), b.code.rows());
        assert!(a.is_balancing());
    }

    #[test]
    fn greedy_stops_at_max_dim() {
        let spec = BalanceSpec::exact(12).unwrap();
        let out = greedy_balancing(&spec, GreedyMode::FullScan, 2).unwrap();
        assert_eq!(out.code.k(), 2);
        assert!(!out.is_balancing());
        assert_eq!(out.trace.len(), 3);
    }

    #[test]
    fn autocorrelation_matches_direct_overlap() {
        let spec = BalanceSpec::exact(8).unwrap();
        let code = simplex_extended(3, 2, false).unwrap();
        let bm = uncovered_bitmap(&code, &spec).unwrap();
        let corr = autocorrelation(&bm, 8);
        for x in 0..256 {
            assert_eq!(corr[x] as u64, overlap(&bm, x, 8));
        }
    }
}
