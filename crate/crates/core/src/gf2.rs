//! Words over GF(2), linear codes given by generator rows, and the shared
//! plain-text matrix format.
//!
//! Coordinate `j` (1-based, left to right in every textual form) is stored at
//! bit `j - 1`. Words are packed little-endian into 64-bit limbs.

use std::cmp::Ordering;
use std::fmt;
use std::io::Write as _;
use std::ops::{BitXor, BitXorAssign};
use std::path::Path;

use crate::error::{cap, Error, Result};

/// Structural upper bound on word length.
pub const MAX_LEN: usize = 1024;

/// Default cap on `k` for span enumeration.
pub const SPAN_CAP: usize = 30;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    n: usize,
    limbs: Vec<u64>,
}

fn limb_count(n: usize) -> usize {
    n.div_ceil(64)
}

impl Word {
    pub fn zeros(n: usize) -> Self {
        assert!(n <= MAX_LEN, "word length {n} exceeds {MAX_LEN}");
        Word {
            n,
            limbs: vec![0; limb_count(n)],
        }
    }

    pub fn ones(n: usize) -> Self {
        let mut w = Word::zeros(n);
        for limb in &mut w.limbs {
            *limb = u64::MAX;
        }
        w.mask_tail();
        w
    }

    /// Low `n` bits of `value`; `n <= 64`.
    pub fn from_u64(n: usize, value: u64) -> Self {
        assert!(n <= 64);
        let mut w = Word::zeros(n);
        if n > 0 {
            w.limbs[0] = value;
            w.mask_tail();
        }
        w
    }

    /// Packs little-endian limbs; bits past `n` are cleared.
    pub fn from_limbs(n: usize, limbs: Vec<u64>) -> Self {
        assert_eq!(
            limbs.len(),
            limb_count(n),
            "limb count does not match length {n}"
        );
        let mut w = Word { n, limbs };
        w.mask_tail();
        w
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut w = Word::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                w.set(i, true);
            }
        }
        w
    }

    /// Parses a `0`/`1` string, leftmost character is coordinate 1.
    pub fn parse_bits(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut w = Word::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => w.set(i, true),
                other => {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!("illegal character {other:?}"),
                    })
                }
            }
        }
        Ok(w)
    }

    fn mask_tail(&mut self) {
        let r = self.n % 64;
        if r != 0 {
            if let Some(last) = self.limbs.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    /// Bit at 0-based position `i` (coordinate `i + 1`).
    pub fn bit(&self, i: usize) -> bool {
        debug_assert!(i < self.n);
        (self.limbs[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.n, "bit {i} out of range for length {}", self.n);
        let mask = 1u64 << (i % 64);
        if value {
            self.limbs[i / 64] |= mask;
        } else {
            self.limbs[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.n);
        self.limbs[i / 64] ^= 1u64 << (i % 64);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.limbs.iter().map(|l| l.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    /// Hamming distance; errors on length mismatch.
    pub fn distance(&self, other: &Word) -> Result<usize> {
        self.check_len(other)?;
        Ok(self
            .limbs
            .iter()
            .zip(&other.limbs)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum())
    }

    pub fn check_len(&self, other: &Word) -> Result<()> {
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// The word as an integer, when it fits in 64 bits.
    pub fn to_u64(&self) -> Option<u64> {
        match self.limbs.len() {
            0 => Some(0),
            1 => Some(self.limbs[0]),
            _ => None,
        }
    }

    /// Lowest set coordinate (0-based).
    pub fn leading(&self) -> Option<usize> {
        self.limbs
            .iter()
            .enumerate()
            .find(|(_, &l)| l != 0)
            .map(|(i, l)| i * 64 + l.trailing_zeros() as usize)
    }

    pub fn ones_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.limbs.iter().enumerate().flat_map(|(li, &limb)| {
            let mut l = limb;
            std::iter::from_fn(move || {
                if l == 0 {
                    None
                } else {
                    let tz = l.trailing_zeros() as usize;
                    l &= l - 1;
                    Some(li * 64 + tz)
                }
            })
        })
    }

    /// Concatenation `(a | b | ...)`.
    pub fn concat(parts: &[Word]) -> Word {
        let n = parts.iter().map(Word::len).sum();
        let mut out = Word::zeros(n);
        let mut offset = 0;
        for p in parts {
            for i in p.ones_positions() {
                out.set(offset + i, true);
            }
            offset += p.len();
        }
        out
    }

    /// Hex form of the integer value (bit `j-1` is coordinate `j`), most
    /// significant nibble first, zero-padded to `ceil(n/4)` digits.
    pub fn to_hex(&self) -> String {
        let digits = self.n.div_ceil(4);
        let mut s = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let mut nib = 0u8;
            for b in 0..4 {
                let i = d * 4 + b;
                if i < self.n && self.bit(i) {
                    nib |= 1 << b;
                }
            }
            s.push(char::from_digit(nib as u32, 16).unwrap());
        }
        s
    }

    pub fn from_hex(n: usize, hex: &str) -> Result<Word> {
        let hex = hex.trim().trim_start_matches("0x");
        let mut w = Word::zeros(n);
        for (d, ch) in hex.chars().rev().enumerate() {
            let nib = ch.to_digit(16).ok_or_else(|| Error::Parse {
                line: 0,
                msg: format!("illegal hex digit {ch:?}"),
            })?;
            for b in 0..4 {
                if nib >> b & 1 == 1 {
                    let i = d * 4 + b;
                    if i >= n {
                        return Err(Error::InvalidParameter(format!(
                            "hex value {hex} does not fit in {n} bits"
                        )));
                    }
                    w.set(i, true);
                }
            }
        }
        Ok(w)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Ordering by integer value (bit `i` has weight `2^i`), then by length.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.limbs
            .len()
            .cmp(&other.limbs.len())
            .then_with(|| self.limbs.iter().rev().cmp(other.limbs.iter().rev()))
            .then_with(|| self.n.cmp(&other.n))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Words serialize as their bit strings.
impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(d)?;
        Word::parse_bits(&s).map_err(serde::de::Error::custom)
    }
}

impl BitXorAssign<&Word> for Word {
    fn bitxor_assign(&mut self, rhs: &Word) {
        assert_eq!(self.n, rhs.n, "xor of words with different lengths");
        for (a, b) in self.limbs.iter_mut().zip(&rhs.limbs) {
            *a ^= b;
        }
    }
}

impl BitXor<&Word> for &Word {
    type Output = Word;
    fn bitxor(self, rhs: &Word) -> Word {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl BitXor for Word {
    type Output = Word;
    fn bitxor(mut self, rhs: Word) -> Word {
        self ^= &rhs;
        self
    }
}

/// Reduced row-echelon form with ascending pivot columns.
///
/// Returns the basis rows (row `i` has its pivot at `pivots[i]`, and no other
/// basis row has that bit set) and the pivot coordinates.
pub fn row_reduce(rows: &[Word]) -> Result<(Vec<Word>, Vec<usize>)> {
    let Some(first) = rows.first() else {
        return Ok((Vec::new(), Vec::new()));
    };
    let n = first.len();
    for r in rows {
        first.check_len(r)?;
    }
    let mut work: Vec<Word> = rows.iter().filter(|r| !r.is_zero()).cloned().collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        if rank == work.len() {
            break;
        }
        let Some(sel) = (rank..work.len()).find(|&i| work[i].bit(col)) else {
            continue;
        };
        work.swap(rank, sel);
        let pivot = work[rank].clone();
        for (i, row) in work.iter_mut().enumerate() {
            if i != rank && row.bit(col) {
                *row ^= &pivot;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    work.truncate(rank);
    Ok((work, pivots))
}

/// A binary linear code given by (possibly dependent) generator rows.
#[derive(Clone, Debug)]
pub struct LinearCode {
    n: usize,
    rows: Vec<Word>,
    basis: Vec<Word>,
    pivots: Vec<usize>,
}

impl LinearCode {
    pub fn new(n: usize, rows: Vec<Word>) -> Result<Self> {
        if n > MAX_LEN {
            return Err(cap("word length", format!("{n} > {MAX_LEN}")));
        }
        for r in &rows {
            if r.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: r.len(),
                });
            }
        }
        let (basis, pivots) = row_reduce(&rows)?;
        Ok(LinearCode {
            n,
            rows,
            basis,
            pivots,
        })
    }

    /// The zero code `{0}` of length `n`.
    pub fn zero(n: usize) -> Self {
        LinearCode {
            n,
            rows: Vec::new(),
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// All of F^n.
    pub fn full(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut w = Word::zeros(n);
                w.set(i, true);
                w
            })
            .collect();
        LinearCode::new(n, rows).expect("unit vectors have equal length")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Dimension.
    pub fn k(&self) -> usize {
        self.basis.len()
    }

    pub fn rows(&self) -> &[Word] {
        &self.rows
    }

    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `C + F x`: appends a generator row.
    pub fn with_row(&self, x: Word) -> Result<Self> {
        let mut rows = self.rows.clone();
        rows.push(x);
        LinearCode::new(self.n, rows)
    }

    /// Generator rows of `self` followed by those of `other`.
    pub fn stacked(&self, other: &LinearCode) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        LinearCode::new(self.n, rows)
    }

    /// Reduces `w` against the basis; the result is zero iff `w` is a codeword.
    pub fn reduce(&self, w: &Word) -> Word {
        let mut r = w.clone();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if r.bit(p) {
                r ^= row;
            }
        }
        r
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.len() == self.n && self.reduce(w).is_zero()
    }

    /// Codeword `sum_i u_i * basis[i]`.
    pub fn combine(&self, coeffs: u64) -> Word {
        let mut w = Word::zeros(self.n);
        for (i, row) in self.basis.iter().enumerate() {
            if coeffs >> i & 1 == 1 {
                w ^= row;
            }
        }
        w
    }

    /// Inverse of [`combine`](Self::combine) for codewords: the coefficient
    /// of basis row `i` is the bit at its pivot.
    pub fn coefficients(&self, codeword: &Word) -> u64 {
        self.pivots
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &p)| acc | (codeword.bit(p) as u64) << i)
    }

    /// Streams all `2^k` codewords in reflected Gray order.
    pub fn span(&self) -> Result<SpanIter<'_>> {
        self.span_with_cap(SPAN_CAP)
    }

    pub fn span_with_cap(&self, max_k: usize) -> Result<SpanIter<'_>> {
        if self.k() > max_k.min(63) {
            return Err(cap(
                "span enumeration",
                format!("k = {} > {max_k}", self.k()),
            ));
        }
        Ok(SpanIter {
            basis: &self.basis,
            current: Word::zeros(self.n),
            index: 0,
            total: 1u64 << self.k(),
        })
    }

    /// Codewords packed as integers (n <= 64), in Gray order.
    pub fn span_u64(&self) -> Result<Vec<u64>> {
        if self.n > 64 {
            return Err(cap("packed span", format!("n = {} > 64", self.n)));
        }
        let basis = self.basis_u64();
        if self.k() > SPAN_CAP {
            return Err(cap(
                "span enumeration",
                format!("k = {} > {SPAN_CAP}", self.k()),
            ));
        }
        let mut out = Vec::with_capacity(1 << self.k());
        let mut cur = 0u64;
        out.push(cur);
        for i in 1u64..(1u64 << self.k()) {
            cur ^= basis[i.trailing_zeros() as usize];
            out.push(cur);
        }
        Ok(out)
    }

    /// Basis rows as integers (n <= 64).
    pub fn basis_u64(&self) -> Vec<u64> {
        assert!(self.n <= 64);
        self.basis.iter().map(|w| w.to_u64().unwrap_or(0)).collect()
    }
}

pub struct SpanIter<'a> {
    basis: &'a [Word],
    current: Word,
    index: u64,
    total: u64,
}

impl Iterator for SpanIter<'_> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.index >= self.total {
            return None;
        }
        if self.index > 0 {
            let row = self.index.trailing_zeros() as usize;
            self.current ^= &self.basis[row];
        }
        self.index += 1;
        Some(self.current.clone())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.index) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for SpanIter<'_> {}

/// Rows parsed from the matrix format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub n: usize,
    pub rows: Vec<Word>,
}

/// Parses the shared matrix format: one row of `0`/`1` per line, `#` starts a
/// comment line, blank lines and trailing whitespace are ignored. A comment
/// of the form `# n=<len>` fixes the length, which matters for empty files.
pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let mut n: Option<usize> = None;
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end();
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(v) = comment.trim().strip_prefix("n=") {
                let declared: usize = v.trim().parse().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("bad length directive {v:?}"),
                })?;
                if n.is_some_and(|cur| cur != declared) {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "length directive disagrees with rows".into(),
                    });
                }
                n = Some(declared);
            }
            continue;
        }
        let line = line.trim_start();
        if line.is_empty() {
            continue;
        }
        let row = Word::parse_bits(line).map_err(|e| match e {
            Error::Parse { msg, .. } => Error::Parse { line: line_no, msg },
            other => other,
        })?;
        match n {
            Some(len) if len != row.len() => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("ragged row: length {} but expected {len}", row.len()),
                })
            }
            _ => n = Some(row.len()),
        }
        rows.push(row);
    }
    Ok(Matrix {
        n: n.unwrap_or(0),
        rows,
    })
}

pub fn format_matrix(n: usize, rows: &[Word]) -> String {
    let mut out = String::new();
    if rows.is_empty() {
        out.push_str(&format!("# n={n}\n"));
    }
    for r in rows {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}

pub fn load_generator_matrix(path: impl AsRef<Path>) -> Result<LinearCode> {
    let text = std::fs::read_to_string(path)?;
    let m = parse_matrix(&text)?;
    LinearCode::new(m.n, m.rows)
}

/// Like [`load_generator_matrix`] but rejects odd lengths.
pub fn load_balancing_matrix(path: impl AsRef<Path>) -> Result<LinearCode> {
    let code = load_generator_matrix(path)?;
    if code.len() % 2 != 0 {
        return Err(Error::OddLength(code.len()));
    }
    Ok(code)
}

pub fn save_generator_matrix(code: &LinearCode, path: impl AsRef<Path>) -> Result<()> {
    save_rows(code.len(), code.rows(), path)
}

pub fn save_rows(n: usize, rows: &[Word], path: impl AsRef<Path>) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(format_matrix(n, rows).as_bytes())?;
    Ok(())
}
