//! Balanced error-correcting codec over a direct sum `C = C' ⊕ C''`.
//!
//! A message selects `c ∈ C'`; the encoder searches `C''` for `x` with
//! `c + x` balanced. The decoder runs the bounded-distance syndrome decoder
//! of `C'` on `y + x` for every `x ∈ C''` and keeps the admissible candidate
//! closest to `y`.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::balancing::{binomial_exact, constant_weight_words, BalanceSpec};
use crate::constructions::{greedy_balancing, min_distance, simplex_extended, GreedyMode};
use crate::ensemble::rational_str;
use crate::error::{cap, Error, Result};
use crate::gf2::{load_generator_matrix, save_generator_matrix, LinearCode, Word};

/// Largest redundancy `n - k'` for which a syndrome table is built.
pub const MAX_REDUNDANCY: usize = 26;
/// Cap on the dimension of `C' ⊕ C''` for exhaustive distance checks.
pub const MAX_SUM_DIM: usize = 24;

/// Bounded-distance decoder for `C'`: syndrome to minimum-weight coset
/// leader, complete up to the correction radius.
#[derive(Clone, Debug)]
pub struct SyndromeTable {
    checks: Vec<Word>,
    leaders: HashMap<u64, Word>,
    radius: usize,
}

impl SyndromeTable {
    /// Parity checks from the reduced generator: one per non-pivot column.
    pub fn new(code: &LinearCode, radius: usize) -> Result<Self> {
        let n = code.len();
        if n > 64 {
            return Err(cap("syndrome table", format!("n = {n} > 64")));
        }
        let redundancy = n - code.k();
        if redundancy > MAX_REDUNDANCY {
            return Err(cap(
                "syndrome table",
                format!("n - k' = {redundancy} > {MAX_REDUNDANCY}"),
            ));
        }
        let mut is_pivot = vec![false; n];
        for &p in code.pivots() {
            is_pivot[p] = true;
        }
        let checks: Vec<Word> = (0..n)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut h = Word::zeros(n);
                h.set(f, true);
                for (row, &p) in code.basis().iter().zip(code.pivots()) {
                    if row.bit(f) {
                        h.set(p, true);
                    }
                }
                h
            })
            .collect();
        let mut table = SyndromeTable {
            checks,
            leaders: HashMap::new(),
            radius,
        };
        for w in 0..=radius.min(n) {
            for e in constant_weight_words(n, w) {
                let e = Word::from_u64(n, e);
                let s = table.syndrome(&e);
                table.leaders.entry(s).or_insert(e);
            }
        }
        Ok(table)
    }

    pub fn syndrome(&self, z: &Word) -> u64 {
        self.checks.iter().enumerate().fold(0, |acc, (r, h)| {
            let parity = z
                .limbs()
                .iter()
                .zip(h.limbs())
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>()
                & 1;
            acc | (parity as u64) << r
        })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.leaders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaders.is_empty()
    }

    /// Nearest codeword within the radius and its distance.
    pub fn decode(&self, z: &Word) -> Option<(Word, usize)> {
        let leader = self.leaders.get(&self.syndrome(z))?;
        Some((z ^ leader, leader.weight()))
    }
}

#[derive(Debug)]
pub struct Codec {
    n: usize,
    cprime: LinearCode,
    cbal: LinearCode,
    table: SyndromeTable,
    d_prime: Option<usize>,
    strict: bool,
    invocations: AtomicU64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decoded {
    pub message: u64,
    pub codeword: Word,
    pub error_weight: usize,
}

/// Checks the direct-sum condition and builds the component decoder.
pub fn build_codec(
    cprime: LinearCode,
    cbal: LinearCode,
    t_prime: usize,
    strict: bool,
) -> Result<Codec> {
    let n = cprime.len();
    if cbal.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: cbal.len(),
        });
    }
    if n % 2 != 0 || n == 0 {
        return Err(Error::OddLength(n));
    }
    if n > 64 {
        return Err(cap("codec", format!("n = {n} > 64")));
    }
    let stacked = cprime.stacked(&cbal)?;
    let expected = cprime.k() + cbal.k();
    if stacked.k() != expected {
        return Err(Error::NontrivialIntersection {
            stacked: stacked.k(),
            expected,
        });
    }
    if n - cprime.k() > MAX_REDUNDANCY {
        return Err(cap(
            "syndrome table",
            format!("n - k' = {} > {MAX_REDUNDANCY}", n - cprime.k()),
        ));
    }
    let d_prime = min_distance(&cprime)?;
    if let Some(d) = d_prime {
        if 2 * t_prime + 1 > d {
            return Err(Error::InvalidParameter(format!(
                "t' = {t_prime} exceeds (d' - 1)/2 for d' = {d}"
            )));
        }
    }
    let table = SyndromeTable::new(&cprime, t_prime)?;
    Ok(Codec {
        n,
        cprime,
        cbal,
        table,
        d_prime,
        strict,
        invocations: AtomicU64::new(0),
    })
}

impl Codec {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k_prime(&self) -> usize {
        self.cprime.k()
    }

    pub fn k_bal(&self) -> usize {
        self.cbal.k()
    }

    pub fn t_prime(&self) -> usize {
        self.table.radius()
    }

    pub fn d_prime(&self) -> Option<usize> {
        self.d_prime
    }

    pub fn strict(&self) -> bool {
        self.strict
    }

    pub fn cprime(&self) -> &LinearCode {
        &self.cprime
    }

    pub fn cbal(&self) -> &LinearCode {
        &self.cbal
    }

    /// Component-decoder calls made so far.
    pub fn invocations(&self) -> u64 {
        self.invocations.load(Ordering::Relaxed)
    }

    pub fn message_count(&self) -> u64 {
        1u64 << self.k_prime()
    }

    /// Encodes a `k'`-bit message.
    pub fn encode(&self, message: u64) -> Result<Word> {
        if message >= self.message_count() {
            return Err(Error::InvalidParameter(format!(
                "message {message:#x} exceeds {} bits",
                self.k_prime()
            )));
        }
        self.encode_codeword(&self.cprime.combine(message))
    }

    /// `c + x` for the balancing `x ∈ C''` chosen for `c ∈ C'`.
    ///
    /// Strict mode takes the first `x` in Gray order giving weight `n/2`;
    /// relaxed mode minimizes `|w(c + x) - n/2|`, ties to the smallest `x`.
    pub fn encode_codeword(&self, c: &Word) -> Result<Word> {
        let half = self.n / 2;
        if self.strict {
            return self
                .cbal
                .span()?
                .map(|x| c ^ &x)
                .find(|z| z.weight() == half)
                .ok_or(Error::BalancingFailed);
        }
        let best = self
            .cbal
            .span()?
            .map(|x| {
                let z = c ^ &x;
                (z.weight().abs_diff(half), x, z)
            })
            .min_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)))
            .expect("span contains zero");
        Ok(best.2)
    }

    /// Enumerates `C''`, decoding `y + x` with the component decoder each time.
    ///
    /// A candidate `c + x` counts only if the encoder could have sent it:
    /// balanced in strict mode, the encoder's own choice for `c` otherwise.
    pub fn decode(&self, y: &Word) -> Result<Decoded> {
        if y.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: y.len(),
            });
        }
        let mut best: Option<(usize, Word, Word)> = None;
        for x in self.cbal.span()? {
            self.invocations.fetch_add(1, Ordering::Relaxed);
            let Some((c, dist)) = self.table.decode(&(y ^ &x)) else {
                continue;
            };
            let sent = &c ^ &x;
            let admissible = if self.strict {
                sent.weight() == self.n / 2
            } else {
                self.encode_codeword(&c).is_ok_and(|z| z == sent)
            };
            if !admissible {
                continue;
            }
            if best
                .as_ref()
                .map_or(true, |(bd, bs, _)| (dist, &sent) < (*bd, bs))
            {
                best = Some((dist, sent, c));
            }
        }
        let (error_weight, codeword, c) = best.ok_or(Error::DecodeFailure)?;
        Ok(Decoded {
            message: self.cprime.coefficients(&c),
            codeword,
            error_weight,
        })
    }

    /// The whole direct sum as one code.
    pub fn direct_sum(&self) -> LinearCode {
        self.cprime
            .stacked(&self.cbal)
            .expect("components share the length")
    }
}

/// Minimum distance among balanced words of `C' ⊕ C''`; `None` if fewer
/// than two exist.
pub fn balanced_subcode_min_distance(codec: &Codec) -> Result<Option<usize>> {
    let sum = codec.direct_sum();
    if sum.k() > MAX_SUM_DIM {
        return Err(cap(
            "balanced subcode",
            format!("k = {} > {MAX_SUM_DIM}", sum.k()),
        ));
    }
    let half = codec.n() as u32 / 2;
    let balanced: Vec<u64> = sum
        .span_u64()?
        .into_iter()
        .filter(|w| w.count_ones() == half)
        .collect();
    if balanced.len() > 1 << 15 {
        return Err(cap(
            "balanced subcode",
            format!("{} balanced words", balanced.len()),
        ));
    }
    let mut best: Option<u32> = None;
    for (i, a) in balanced.iter().enumerate() {
        for b in &balanced[i + 1..] {
            let d = (a ^ b).count_ones();
            best = Some(best.map_or(d, |cur| cur.min(d)));
        }
    }
    Ok(best.map(|d| d as usize))
}

/// `V(n, t) = sum_{i <= t} C(n, i)`.
pub fn ball_volume(n: usize, t: usize) -> BigUint {
    (0..=t.min(n)).map(|i| binomial_exact(n, i)).sum()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub k_prime: usize,
    pub d: usize,
    pub d_prime: usize,
    pub k_bal: usize,
    /// `2^k' V(n, d' - 1) <= 2^n`
    pub gv_premise_holds: bool,
    /// `2^k'' V(n, d - 1) / V(n, d' - 1)`
    #[serde(with = "rational_str")]
    pub failure_bound: BigRational,
}

/// Premise and failure bound for the minimum distance of a random direct sum.
pub fn bounds(
    n: usize,
    k_prime: usize,
    d: usize,
    d_prime: usize,
    k_bal: usize,
) -> Result<BoundReport> {
    if d == 0 || d > d_prime || d_prime > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= d <= d' <= n, got d = {d}, d' = {d_prime}, n = {n}"
        )));
    }
    let v_prime = ball_volume(n, d_prime - 1);
    let gv_premise_holds = (&v_prime << k_prime) <= BigUint::one() << n;
    let num = ball_volume(n, d - 1) << k_bal;
    let failure_bound = BigRational::new(BigInt::from(num), BigInt::from(v_prime));
    Ok(BoundReport {
        n,
        k_prime,
        d,
        d_prime,
        k_bal,
        gv_premise_holds,
        failure_bound,
    })
}

/// On-disk description of a codec: two matrix files beside the manifest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodecManifest {
    pub n: usize,
    pub k_prime: usize,
    pub k_bal: usize,
    pub t_prime: usize,
    pub strict: bool,
    #[serde(default = "default_cprime_file")]
    pub cprime_file: String,
    #[serde(default = "default_cbal_file")]
    pub cbal_file: String,
}

fn default_cprime_file() -> String {
    "cprime.txt".into()
}

fn default_cbal_file() -> String {
    "cbal.txt".into()
}

impl CodecManifest {
    pub fn for_codec(codec: &Codec) -> Self {
        CodecManifest {
            n: codec.n(),
            k_prime: codec.k_prime(),
            k_bal: codec.k_bal(),
            t_prime: codec.t_prime(),
            strict: codec.strict(),
            cprime_file: default_cprime_file(),
            cbal_file: default_cbal_file(),
        }
    }
}

/// Writes `manifest.json` and both matrices into `dir`.
pub fn save_codec(codec: &Codec, dir: impl AsRef<Path>) -> Result<PathBuf> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir)?;
    let manifest = CodecManifest::for_codec(codec);
    save_generator_matrix(codec.cprime(), dir.join(&manifest.cprime_file))?;
    save_generator_matrix(codec.cbal(), dir.join(&manifest.cbal_file))?;
    let path = dir.join("manifest.json");
    std::fs::write(&path, serde_json::to_string_pretty(&manifest)? + "\n")?;
    Ok(path)
}

pub fn load_codec(manifest_path: impl AsRef<Path>) -> Result<Codec> {
    let manifest_path = manifest_path.as_ref();
    let manifest: CodecManifest = serde_json::from_str(&std::fs::read_to_string(manifest_path)?)?;
    let dir = manifest_path.parent().unwrap_or(Path::new("."));
    let cprime = load_generator_matrix(dir.join(&manifest.cprime_file))?;
    let cbal = load_generator_matrix(dir.join(&manifest.cbal_file))?;
    for (what, got, want) in [
        ("n", cprime.len(), manifest.n),
        ("k_prime", cprime.k(), manifest.k_prime),
        ("k_bal", cbal.k(), manifest.k_bal),
    ] {
        if got != want {
            return Err(Error::InvalidParameter(format!(
                "manifest {what} = {want} but the matrices give {got}"
            )));
        }
    }
    build_codec(cprime, cbal, manifest.t_prime, manifest.strict)
}

/// Keeps the rows of `candidates`, in order, that enlarge `base + kept`.
pub fn complement_rows(base: &LinearCode, candidates: &[Word]) -> Result<LinearCode> {
    let n = base.len();
    let mut acc = base.clone();
    let mut kept = Vec::new();
    for r in candidates {
        let next = acc.with_row(r.clone())?;
        if next.k() > acc.k() {
            kept.push(r.clone());
            acc = next;
        }
    }
    LinearCode::new(n, kept)
}

/// Rows of the balancing component of the length-16 reference codec. They
/// span a 3-dimensional subcode of the full-scan greedy balancing set for
/// `n = 16`; among subcodes meeting `C'` trivially and balancing all of it,
/// this one is largest with balanced minimum distance 4.
pub const REFERENCE16_CBAL: [&str; 3] =
    ["0100000000000000", "0110000011100000", "0011100001111000"];

/// Minimum distance of the balanced words of the reference codec, found by
/// enumerating all of them.
pub const REFERENCE16_D_BAL: usize = 4;

/// The length-16 reference codec: `C'` is spanned by the four extended
/// simplex rows and the all-one word (a `[16, 5, 8]` code, `t' = 3`).
pub fn reference_codec16() -> Result<Codec> {
    let n = 16;
    let mut rows = simplex_extended(4, 4, false)?.rows().to_vec();
    rows.push(Word::ones(n));
    let cprime = LinearCode::new(n, rows)?;
    let cbal = LinearCode::new(
        n,
        REFERENCE16_CBAL
            .iter()
            .map(|s| Word::parse_bits(s))
            .collect::<Result<_>>()?,
    )?;
    build_codec(cprime, cbal, 3, true)
}

/// Greedy balancing set for `n = 16` with rows meeting `C'` dropped; the
/// pool the reference balancing component was drawn from.
pub fn reference16_greedy_pool(cprime: &LinearCode) -> Result<LinearCode> {
    let spec = BalanceSpec::exact(cprime.len())?;
    let greedy = greedy_balancing(&spec, GreedyMode::FullScan, cprime.len())?;
    complement_rows(cprime, greedy.code.rows())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse_bits(s).unwrap()
    }

    #[test]
    fn syndrome_table_corrects_single_errors() {
        // [8,4,4] extended Hamming code, radius 1
        let code = LinearCode::new(
            8,
            vec![w("11110000"), w("00111100"), w("00001111"), w("10101010")],
        )
        .unwrap();
        let table = SyndromeTable::new(&code, 1).unwrap();
        assert_eq!(table.len(), 9);
        for c in code.span().unwrap() {
            assert_eq!(table.syndrome(&c), 0);
            for i in 0..8 {
                let mut y = c.clone();
                y.flip(i);
                assert_eq!(table.decode(&y), Some((c.clone(), 1)));
            }
        }
    }

    #[test]
    fn nontrivial_intersection_rejected() {
        let a = LinearCode::new(4, vec![w("1100")]).unwrap();
        let b = LinearCode::new(4, vec![w("1100"), w("0011")]).unwrap();
        assert!(matches!(
            build_codec(a, b, 0, true),
            Err(Error::NontrivialIntersection { .. })
        ));
    }

    #[test]
    fn radius_must_fit_distance() {
        let a = LinearCode::new(4, vec![w("1111")]).unwrap();
        assert!(build_codec(a.clone(), LinearCode::zero(4), 1, true).is_ok());
        assert!(matches!(
            build_codec(a, LinearCode::zero(4), 2, true),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn degenerate_balancing_component() {
        // C' = {0000, 1100}: only the second message is already balanced.
        let a = LinearCode::new(4, vec![w("1100")]).unwrap();
        let codec = build_codec(a, LinearCode::zero(4), 0, true).unwrap();
        assert!(matches!(codec.encode(0), Err(Error::BalancingFailed)));
        assert_eq!(codec.encode(1).unwrap(), w("1100"));
        assert!(codec.encode(2).is_err());
    }

    #[test]
    fn full_space_balances_everything() {
        let a = LinearCode::new(6, vec![w("111111")]).unwrap();
        let rest: Vec<Word> = (0..5)
            .map(|i| {
                let mut x = Word::zeros(6);
                x.set(i, true);
                x
            })
            .collect();
        let b = LinearCode::new(6, rest).unwrap();
        let codec = build_codec(a, b, 0, true).unwrap();
        for u in 0..2 {
            assert_eq!(codec.encode(u).unwrap().weight(), 3);
        }
    }

    #[test]
    fn relaxed_mode_minimizes_deviation() {
        let a = LinearCode::new(4, vec![w("1110")]).unwrap();
        let codec = build_codec(a, LinearCode::zero(4), 0, false).unwrap();
        assert_eq!(codec.encode(0).unwrap(), w("0000"));
        assert_eq!(codec.encode(1).unwrap(), w("1110"));
        let d = codec.decode(&w("1110")).unwrap();
        assert_eq!((d.message, d.error_weight), (1, 0));
    }

    #[test]
    fn balanced_subcode_of_full_space() {
        let a = LinearCode::new(4, vec![w("1000"), w("0100")]).unwrap();
        let b = LinearCode::new(4, vec![w("0010"), w("0001")]).unwrap();
        let codec = build_codec(a, b, 0, true).unwrap();
        assert_eq!(balanced_subcode_min_distance(&codec).unwrap(), Some(2));
    }

    #[test]
    fn single_balanced_word_has_no_distance() {
        let a = LinearCode::new(4, vec![w("1100")]).unwrap();
        let codec = build_codec(a, LinearCode::zero(4), 0, true).unwrap();
        assert_eq!(balanced_subcode_min_distance(&codec).unwrap(), None);
    }

    #[test]
    fn bound_examples() {
        let r = bounds(16, 4, 3, 5, 6).unwrap();
        assert!(r.gv_premise_holds);
        assert_eq!(r.failure_bound, BigRational::new(8768.into(), 2517.into()));
        assert!(!bounds(16, 5, 3, 5, 6).unwrap().gv_premise_holds);
        let eq = bounds(16, 4, 5, 5, 6).unwrap();
        assert_eq!(eq.failure_bound, BigRational::from_integer(64.into()));
        assert!(bounds(16, 4, 6, 5, 6).is_err());
        assert_eq!(ball_volume(16, 4), BigUint::from(2517u32));
    }

    #[test]
    fn reference_codec16_shape() {
        let codec = reference_codec16().unwrap();
        assert_eq!(
            (codec.k_prime(), codec.k_bal(), codec.d_prime()),
            (5, 3, Some(8))
        );
        let pool = reference16_greedy_pool(codec.cprime()).unwrap();
        assert!(codec.cbal().rows().iter().all(|r| pool.contains(r)));
        assert_eq!(balanced_subcode_min_distance(&codec).unwrap(), Some(4));
    }

    #[test]
    fn manifest_round_trip() {
        let dir = std::env::temp_dir().join(format!("balset-codec-{}", std::process::id()));
        let a = LinearCode::new(6, vec![w("111000"), w("000111")]).unwrap();
        let b = LinearCode::new(6, vec![w("100000")]).unwrap();
        let codec = build_codec(a, b, 0, true).unwrap();
        let path = save_codec(&codec, &dir).unwrap();
        let loaded = load_codec(&path).unwrap();
        assert_eq!(loaded.cprime().rows(), codec.cprime().rows());
        assert_eq!(loaded.cbal().rows(), codec.cbal().rows());
        assert_eq!(
            CodecManifest::for_codec(&loaded),
            CodecManifest::for_codec(&codec)
        );
    }
}
