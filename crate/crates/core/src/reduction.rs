//! Reduction from three-dimensional matching to the balancing-set decision
//! problem, with exhaustive verification on small instances.
//!
//! For a tripartite hypergraph with parts of size `t` and `m` edges, `H` is
//! the `3t x 8m` matrix built from one `3 x 8` block per edge, and
//! `H' = [[0 | I], [H | 0]]` with `I` of order `8m - 2t`. A perfect matching
//! exists iff every coset of the code with parity-check matrix `H'` contains
//! a word of weight `8m - t`, half its length.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::balancing::constant_weight_words;
use crate::error::{cap, Error, Result};
use crate::gf2::{Matrix, Word};

/// Largest part size for the matching search.
pub const MATCHING_MAX_T: usize = 6;
/// Largest edge count for the matching search.
pub const MATCHING_MAX_M: usize = 20;
/// Column cap for meet-in-the-middle column sums.
pub const COLUMN_SUM_MAX_COLS: usize = 28;
/// Length cap for enumerating every half-weight word of `H'`.
pub const BUCKET_MAX_COLS: usize = 28;
/// Syndrome-length cap for the bucket method.
pub const BUCKET_MAX_ROWS: usize = 20;
/// Cap on `3t` for the structured coset check.
pub const STRUCTURED_MAX_ROWS: usize = 24;
/// Cap on the `(8m + 1) * 2^(3t)` bit table of the structured check.
pub const STRUCTURED_MAX_LOG2_BITS: u32 = 30;

/// Three-dimensional matching instance; vertices are numbered `1..=t` in
/// each part. Repeated edges are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripartiteHypergraph {
    pub t: usize,
    pub edges: Vec<[usize; 3]>,
}

impl TripartiteHypergraph {
    pub fn new(t: usize, edges: Vec<[usize; 3]>) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidParameter("t must be positive".into()));
        }
        if edges.is_empty() {
            return Err(Error::InvalidParameter("at least one edge required".into()));
        }
        for (i, e) in edges.iter().enumerate() {
            if e.iter().any(|&v| v == 0 || v > t) {
                return Err(Error::InvalidParameter(format!(
                    "edge {} = {e:?} has a vertex outside 1..={t}",
                    i + 1
                )));
            }
        }
        Ok(TripartiteHypergraph { t, edges })
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Vertices `(part, v)` without an incident edge; parts are 1, 2, 3.
    pub fn uncovered_vertices(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for part in 0..3 {
            for v in 1..=self.t {
                if !self.edges.iter().any(|e| e[part] == v) {
                    out.push((part + 1, v));
                }
            }
        }
        out
    }

    pub fn warnings(&self) -> Vec<String> {
        self.uncovered_vertices()
            .into_iter()
            .map(|(part, v)| format!("vertex {v} of part {part} is uncovered; no matching exists"))
            .collect()
    }
}

impl fmt::Display for TripartiteHypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.t, self.m())?;
        for [a, b, c] in &self.edges {
            writeln!(f, "{a} {b} {c}")?;
        }
        Ok(())
    }
}

/// Parses `t m` followed by `m` lines `a b c`. Blank lines and `#` comments
/// are skipped.
pub fn parse_hypergraph(text: &str) -> Result<TripartiteHypergraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let parse_nums = |line: usize, s: &str| -> Result<Vec<usize>> {
        s.split_whitespace()
            .map(|tok| {
                tok.parse().map_err(|_| Error::Parse {
                    line,
                    msg: format!("not a non-negative integer: {tok:?}"),
                })
            })
            .collect()
    };
    let (line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header \"t m\"".into(),
    })?;
    let header = parse_nums(line, header)?;
    let [t, m] = header[..] else {
        return Err(Error::Parse {
            line,
            msg: "header must be \"t m\"".into(),
        });
    };
    let mut edges = Vec::with_capacity(m);
    for (line, s) in lines {
        let nums = parse_nums(line, s)?;
        let [a, b, c] = nums[..] else {
            return Err(Error::Parse {
                line,
                msg: "edge must have three vertices".into(),
            });
        };
        if [a, b, c].iter().any(|&v| v == 0 || v > t) {
            return Err(Error::Parse {
                line,
                msg: format!("vertex outside 1..={t}"),
            });
        }
        edges.push([a, b, c]);
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            msg: format!("header promises {m} edges, found {}", edges.len()),
        });
    }
    TripartiteHypergraph::new(t, edges)
}

/// Row of `H` holding vertex `v` (1-based) of `part` (0-based).
fn h_row(t: usize, part: usize, v: usize) -> usize {
    part * t + v - 1
}

/// The `3t x 8m` matrix `H`. Rows are the vertices of the first part, then
/// the second, then the third; block `e` occupies columns `8e..8e + 8`, with
/// column `8e + 4 a1 + 2 a2 + a3` carrying `a_l` in the row of the edge's
/// vertex in part `l`.
pub fn build_h(g: &TripartiteHypergraph) -> Matrix {
    let (t, m) = (g.t, g.m());
    let mut rows = vec![Word::zeros(8 * m); 3 * t];
    for (e, edge) in g.edges.iter().enumerate() {
        for a in 0..8 {
            for (part, &v) in edge.iter().enumerate() {
                if a >> (2 - part) & 1 == 1 {
                    rows[h_row(t, part, v)].flip(8 * e + a);
                }
            }
        }
    }
    Matrix { n: 8 * m, rows }
}

/// `H' = [[0 | I], [H | 0]]`: `8m + t` rows, `16m - 2t` columns.
pub fn build_hprime(h: &Matrix, t: usize, m: usize) -> Result<Matrix> {
    if h.rows.len() != 3 * t || h.n != 8 * m {
        return Err(Error::InvalidParameter(format!(
            "H is {} x {}, expected {} x {}",
            h.rows.len(),
            h.n,
            3 * t,
            8 * m
        )));
    }
    if 8 * m < 2 * t {
        return Err(Error::InvalidParameter(format!(
            "8m = {} < 2t = {}",
            8 * m,
            2 * t
        )));
    }
    let ident = 8 * m - 2 * t;
    let n = 8 * m + ident;
    let mut rows = Vec::with_capacity(ident + 3 * t);
    for i in 0..ident {
        let mut r = Word::zeros(n);
        r.set(8 * m + i, true);
        rows.push(r);
    }
    for hr in &h.rows {
        rows.push(Word::concat(&[hr.clone(), Word::zeros(ident)]));
    }
    Ok(Matrix { n, rows })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutput {
    pub h: Matrix,
    pub hprime: Matrix,
}

pub fn reduce(g: &TripartiteHypergraph) -> Result<ReductionOutput> {
    let h = build_h(g);
    let hprime = build_hprime(&h, g.t, g.m())?;
    Ok(ReductionOutput { h, hprime })
}

/// A perfect matching as 0-based edge indices, one per vertex of the first
/// part in order, or `None`.
pub fn find_matching(g: &TripartiteHypergraph) -> Result<Option<Vec<usize>>> {
    if g.t > MATCHING_MAX_T || g.m() > MATCHING_MAX_M {
        return Err(cap(
            "matching search",
            format!(
                "t = {}, m = {} (limits {MATCHING_MAX_T}, {MATCHING_MAX_M})",
                g.t,
                g.m()
            ),
        ));
    }
    let mut by_first: Vec<Vec<usize>> = vec![Vec::new(); g.t + 1];
    for (i, e) in g.edges.iter().enumerate() {
        by_first[e[0]].push(i);
    }
    let mut chosen = Vec::with_capacity(g.t);
    let found = extend_matching(g, &by_first, 1, 0, 0, &mut chosen);
    Ok(found.then_some(chosen))
}

fn extend_matching(
    g: &TripartiteHypergraph,
    by_first: &[Vec<usize>],
    v1: usize,
    used2: u64,
    used3: u64,
    chosen: &mut Vec<usize>,
) -> bool {
    if v1 > g.t {
        return true;
    }
    for &i in &by_first[v1] {
        let [_, b, c] = g.edges[i];
        if used2 >> b & 1 == 1 || used3 >> c & 1 == 1 {
            continue;
        }
        chosen.push(i);
        if extend_matching(g, by_first, v1 + 1, used2 | 1 << b, used3 | 1 << c, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Column `j` of a matrix as an integer, row `i` at bit `i`.
pub fn column_syndromes(h: &Matrix) -> Result<Vec<u64>> {
    if h.rows.len() > 64 {
        return Err(cap(
            "column syndromes",
            format!("{} rows > 64", h.rows.len()),
        ));
    }
    Ok((0..h.n)
        .map(|j| {
            h.rows
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, r)| acc | (r.bit(j) as u64) << i)
        })
        .collect())
}

/// Word over the rows of a matrix from an integer syndrome.
fn syndrome_word(rows: usize, s: u64) -> Word {
    Word::from_u64(rows, s)
}

/// Whether `s` is the sum of exactly `w` distinct columns of `h`; returns
/// the ascending column indices of a witness.
pub fn column_sum_reachable(h: &Matrix, s: &Word, w: usize) -> Result<Option<Vec<usize>>> {
    if s.len() != h.rows.len() {
        return Err(Error::LengthMismatch {
            expected: h.rows.len(),
            found: s.len(),
        });
    }
    if h.n > COLUMN_SUM_MAX_COLS {
        return Err(cap(
            "column sums",
            format!("{} columns > {COLUMN_SUM_MAX_COLS}", h.n),
        ));
    }
    let cols = column_syndromes(h)?;
    let target = s.to_u64().expect("at most 64 rows");
    if w > cols.len() {
        return Ok(None);
    }
    let half = cols.len() / 2;
    let (left, right) = cols.split_at(half);
    // (weight, syndrome) -> first subset of the left half reaching it
    let mut table: HashMap<(u32, u64), u64> = HashMap::new();
    for mask in 0u64..1 << left.len() {
        let syn = subset_sum(left, mask);
        table.entry((mask.count_ones(), syn)).or_insert(mask);
    }
    for mask in 0u64..1 << right.len() {
        let wr = mask.count_ones() as usize;
        if wr > w || w - wr > left.len() {
            continue;
        }
        let need = target ^ subset_sum(right, mask);
        if let Some(&lm) = table.get(&((w - wr) as u32, need)) {
            let all = lm | mask << half;
            return Ok(Some(
                (0..cols.len()).filter(|j| all >> j & 1 == 1).collect(),
            ));
        }
    }
    Ok(None)
}

fn subset_sum(cols: &[u64], mask: u64) -> u64 {
    cols.iter()
        .enumerate()
        .filter(|(j, _)| mask >> j & 1 == 1)
        .fold(0, |acc, (_, c)| acc ^ c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CosetMethod {
    /// Enumerate every half-weight word once and mark its syndrome.
    Bucket,
    /// Use the block shape of `H'`: the identity block fixes the right half,
    /// leaving a subset-sum table over the columns of `H` by weight.
    Structured,
}

impl CosetMethod {
    pub fn name(self) -> &'static str {
        match self {
            CosetMethod::Bucket => "bucket",
            CosetMethod::Structured => "structured",
        }
    }
}

impl std::str::FromStr for CosetMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bucket" => Ok(CosetMethod::Bucket),
            "structured" => Ok(CosetMethod::Structured),
            other => Err(Error::InvalidParameter(format!(
                "unknown coset method {other:?}"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetCheck {
    pub all_cosets_balanced: bool,
    /// A syndrome whose coset has no balanced word.
    pub counterexample: Option<Word>,
    pub method: CosetMethod,
}

/// Whether every coset of the code with parity-check matrix `hprime`
/// contains a word of weight `8m - t`. With `method = None` the structured
/// check is used when `hprime` has the reduction's block shape.
pub fn every_coset_has_balanced_word(
    hprime: &Matrix,
    t: usize,
    m: usize,
    method: Option<CosetMethod>,
) -> Result<CosetCheck> {
    if 8 * m < 2 * t || hprime.rows.len() != 8 * m + t || hprime.n != 16 * m - 2 * t {
        return Err(Error::InvalidParameter(format!(
            "H' is {} x {}, expected {} x {}",
            hprime.rows.len(),
            hprime.n,
            8 * m + t,
            (16 * m).saturating_sub(2 * t)
        )));
    }
    let method = match method {
        Some(m) => m,
        None if split_hprime(hprime, t, m).is_some() => CosetMethod::Structured,
        None => CosetMethod::Bucket,
    };
    match method {
        CosetMethod::Bucket => bucket_check(hprime),
        CosetMethod::Structured => {
            let h = split_hprime(hprime, t, m).ok_or_else(|| {
                Error::InvalidParameter("H' lacks the [[0 | I], [H | 0]] block shape".into())
            })?;
            structured_check(&h, t, m)
        }
    }
}

/// Recovers `H` if `hprime` is exactly `[[0 | I], [H | 0]]`.
fn split_hprime(hprime: &Matrix, t: usize, m: usize) -> Option<Matrix> {
    let ident = 8 * m - 2 * t;
    let left = 8 * m;
    for (i, r) in hprime.rows[..ident].iter().enumerate() {
        if r.weight() != 1 || !r.bit(left + i) {
            return None;
        }
    }
    let mut rows = Vec::with_capacity(3 * t);
    for r in &hprime.rows[ident..] {
        if (left..left + ident).any(|j| r.bit(j)) {
            return None;
        }
        rows.push(Word::from_bits(
            &(0..left).map(|j| r.bit(j)).collect::<Vec<_>>(),
        ));
    }
    Some(Matrix { n: left, rows })
}

fn bucket_check(hprime: &Matrix) -> Result<CosetCheck> {
    let (rows, n) = (hprime.rows.len(), hprime.n);
    if n > BUCKET_MAX_COLS || rows > BUCKET_MAX_ROWS {
        return Err(cap(
            "coset bucket check",
            format!("{rows} x {n} (limits {BUCKET_MAX_ROWS} x {BUCKET_MAX_COLS})"),
        ));
    }
    let cols = column_syndromes(hprime)?;
    let w = n / 2;
    let limbs = ((1usize << rows) + 63) / 64;
    // Split by the highest set coordinate so each task enumerates a disjoint
    // family with Gosper's hack over the coordinates below it.
    let hits = (w.saturating_sub(1)..n)
        .into_par_iter()
        .filter(|&top| w > 0 || top == 0)
        .map(|top| {
            let mut seen = vec![0u64; limbs];
            if w == 0 {
                seen[0] |= 1;
                return seen;
            }
            let base = cols[top];
            for lower in constant_weight_words(top, w - 1) {
                let syn = subset_sum(&cols, lower) ^ base;
                seen[(syn >> 6) as usize] |= 1 << (syn & 63);
            }
            seen
        })
        .reduce(
            || vec![0u64; limbs],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x |= y);
                a
            },
        );
    let missing = (0u64..1 << rows).find(|&s| hits[(s >> 6) as usize] >> (s & 63) & 1 == 0);
    Ok(CosetCheck {
        all_cosets_balanced: missing.is_none(),
        counterexample: missing.map(|s| syndrome_word(rows, s)),
        method: CosetMethod::Bucket,
    })
}

/// Bitset over `F^bits` supporting translation by a vector.
#[derive(Clone)]
struct SyndromeSet {
    bits: u32,
    limbs: Vec<u64>,
}

impl SyndromeSet {
    fn empty(bits: u32) -> Self {
        SyndromeSet {
            bits,
            limbs: vec![0; ((1usize << bits) + 63) / 64],
        }
    }

    fn insert(&mut self, s: u64) {
        self.limbs[(s >> 6) as usize] |= 1 << (s & 63);
    }

    fn contains(&self, s: u64) -> bool {
        self.limbs[(s >> 6) as usize] >> (s & 63) & 1 == 1
    }

    fn is_full(&self) -> bool {
        let size = 1u64 << self.bits;
        if size < 64 {
            self.limbs[0] == (1 << size) - 1
        } else {
            self.limbs.iter().all(|&l| l == u64::MAX)
        }
    }

    fn first_missing(&self) -> Option<u64> {
        (0..1u64 << self.bits).find(|&s| !self.contains(s))
    }

    /// `self |= other + c`.
    fn or_translated(&mut self, other: &SyndromeSet, c: u64) {
        let hi = (c >> 6) as usize;
        let lo = c & 63;
        for (i, &limb) in other.limbs.iter().enumerate() {
            if limb != 0 {
                self.limbs[i ^ hi] |= xor_permute(limb, lo);
            }
        }
    }
}

/// Moves bit `i` of `x` to bit `i ^ c` for `c < 64`.
fn xor_permute(mut x: u64, c: u64) -> u64 {
    const MASKS: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0f0f_0f0f_0f0f_0f0f,
        0x00ff_00ff_00ff_00ff,
        0x0000_ffff_0000_ffff,
        0x0000_0000_ffff_ffff,
    ];
    for (b, mask) in MASKS.iter().enumerate() {
        if c >> b & 1 == 1 {
            let s = 1 << b;
            x = (x & mask) << s | (x >> s) & mask;
        }
    }
    x
}

/// `reach[w]` = sums of exactly `w` distinct columns of `h`.
fn weight_reach(cols: &[u64], bits: u32, max_w: usize) -> Vec<SyndromeSet> {
    let mut reach = vec![SyndromeSet::empty(bits); max_w + 1];
    reach[0].insert(0);
    for (j, &c) in cols.iter().enumerate() {
        for w in (1..=max_w.min(j + 1)).rev() {
            let (lower, upper) = reach.split_at_mut(w);
            upper[0].or_translated(&lower[w - 1], c);
        }
    }
    reach
}

fn structured_check(h: &Matrix, t: usize, m: usize) -> Result<CosetCheck> {
    let bits = h.rows.len() as u32;
    let table_log2 = bits + (8 * m + 1).next_power_of_two().trailing_zeros();
    if bits as usize > STRUCTURED_MAX_ROWS || table_log2 > STRUCTURED_MAX_LOG2_BITS {
        return Err(cap(
            "structured coset check",
            format!("3t = {bits}, m = {m} (table 2^{table_log2} bits)"),
        ));
    }
    let cols = column_syndromes(h)?;
    let reach = weight_reach(&cols, bits, 8 * m - t);
    let ident = 8 * m - 2 * t;
    // A coset (s1, s2) needs a left part of weight 8m - t - |s1| summing to s2.
    for w in t..=8 * m - t {
        if let Some(s2) = reach[w].first_missing() {
            let s1_weight = 8 * m - t - w;
            let mut syndrome = Word::zeros(ident + bits as usize);
            for i in 0..s1_weight {
                syndrome.set(i, true);
            }
            for i in 0..bits as usize {
                syndrome.set(ident + i, s2 >> i & 1 == 1);
            }
            return Ok(CosetCheck {
                all_cosets_balanced: false,
                counterexample: Some(syndrome),
                method: CosetMethod::Structured,
            });
        }
        debug_assert!(reach[w].is_full());
    }
    Ok(CosetCheck {
        all_cosets_balanced: true,
        counterexample: None,
        method: CosetMethod::Structured,
    })
}

/// Syndrome `H' z` of a word, as a word over the rows.
pub fn syndrome_of(hprime: &Matrix, z: &Word) -> Result<Word> {
    if z.len() != hprime.n {
        return Err(Error::LengthMismatch {
            expected: hprime.n,
            found: z.len(),
        });
    }
    Ok(Word::from_bits(
        &hprime
            .rows
            .iter()
            .map(|r| {
                r.limbs()
                    .iter()
                    .zip(z.limbs())
                    .map(|(a, b)| (a & b).count_ones())
                    .sum::<u32>()
                    % 2
                    == 1
            })
            .collect::<Vec<_>>(),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub t: usize,
    pub m: usize,
    pub warnings: Vec<String>,
    /// `None` when the instance exceeds the matching search caps.
    pub matching_found: Option<bool>,
    pub matching: Option<Vec<usize>>,
    pub cosets_ok: Option<bool>,
    pub counterexample_syndrome: Option<Word>,
    pub coset_method: Option<CosetMethod>,
    pub equivalent: Option<bool>,
    pub verified: bool,
    pub skipped: Vec<String>,
}

/// Runs both sides of the equivalence, recording any side that exceeds its
/// caps instead of failing.
pub fn verify_reduction(
    g: &TripartiteHypergraph,
    method: Option<CosetMethod>,
) -> Result<ReductionReport> {
    let out = reduce(g)?;
    let mut skipped = Vec::new();
    let matching = match find_matching(g) {
        Ok(found) => Some(found),
        Err(Error::CapExceeded { what, detail }) => {
            skipped.push(format!("{what}: {detail}"));
            None
        }
        Err(e) => return Err(e),
    };
    let cosets = match every_coset_has_balanced_word(&out.hprime, g.t, g.m(), method) {
        Ok(c) => Some(c),
        Err(Error::CapExceeded { what, detail }) => {
            skipped.push(format!("{what}: {detail}"));
            None
        }
        Err(e) => return Err(e),
    };
    let matching_found = matching.as_ref().map(Option::is_some);
    let cosets_ok = cosets.as_ref().map(|c| c.all_cosets_balanced);
    let equivalent = matching_found.zip(cosets_ok).map(|(a, b)| a == b);
    Ok(ReductionReport {
        t: g.t,
        m: g.m(),
        warnings: g.warnings(),
        matching_found,
        matching: matching.flatten(),
        cosets_ok,
        counterexample_syndrome: cosets.as_ref().and_then(|c| c.counterexample.clone()),
        coset_method: cosets.map(|c| c.method),
        equivalent,
        verified: equivalent.is_some(),
        skipped,
    })
}

/// All `t^3` possible edges in lexicographic order.
pub fn all_edges(t: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(t * t * t);
    for a in 1..=t {
        for b in 1..=t {
            for c in 1..=t {
                out.push([a, b, c]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::row_reduce;

    fn graph(text: &str) -> TripartiteHypergraph {
        parse_hypergraph(text).unwrap()
    }

    #[test]
    fn parse_examples() {
        let g = graph("1 1\n1 1 1");
        assert_eq!((g.t, g.m()), (1, 1));
        let g = graph("2 2\n1 1 1\n2 2 2");
        assert!(g.warnings().is_empty());
        let g = graph("2 2\n1 1 1\n1 2 2");
        assert_eq!(g.uncovered_vertices(), vec![(1, 2)]);
        assert_eq!(g.warnings().len(), 1);
    }

    #[test]
    fn parse_errors() {
        assert!(parse_hypergraph("").is_err());
        assert!(parse_hypergraph("2 2\n1 1 1").is_err());
        assert!(parse_hypergraph("2 1\n1 3 1").is_err());
        assert!(parse_hypergraph("2 1\n1 1").is_err());
        assert!(parse_hypergraph("2 0\n").is_err());
        assert!(parse_hypergraph("1 x\n1 1 1").is_err());
    }

    #[test]
    fn display_round_trips() {
        let g = graph("2 3\n1 1 1\n2 2 2\n1 2 2");
        assert_eq!(parse_hypergraph(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn single_edge_h_enumerates_f3() {
        let h = build_h(&graph("1 1\n1 1 1"));
        assert_eq!(h.rows.len(), 3);
        let cols = column_syndromes(&h).unwrap();
        // column a = 4 a1 + 2 a2 + a3 has a1 in row 0
        let expect: Vec<u64> = (0..8u64)
            .map(|a| (a >> 2 & 1) | (a >> 1 & 1) << 1 | (a & 1) << 2)
            .collect();
        assert_eq!(cols, expect);
        assert_eq!(cols[7], 0b111);
    }

    #[test]
    fn blocks_have_three_rows_and_distinct_columns() {
        let g = graph("3 4\n1 2 3\n2 3 1\n3 1 2\n1 1 1");
        let h = build_h(&g);
        let cols = column_syndromes(&h).unwrap();
        for e in 0..4 {
            let block = &cols[8 * e..8 * e + 8];
            let support = block.iter().fold(0, |a, c| a | c);
            assert_eq!(support.count_ones(), 3);
            let mut sorted = block.to_vec();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), 8);
        }
        let (basis, _) = row_reduce(&h.rows).unwrap();
        assert_eq!(basis.len(), 9);
    }

    #[test]
    fn hprime_shape_and_rank() {
        let g = graph("2 2\n1 1 1\n2 2 2");
        let out = reduce(&g).unwrap();
        assert_eq!((out.hprime.rows.len(), out.hprime.n), (18, 28));
        let (basis, _) = row_reduce(&out.hprime.rows).unwrap();
        let (hbasis, _) = row_reduce(&out.h.rows).unwrap();
        assert_eq!(hbasis.len(), 6);
        assert_eq!(basis.len(), 12 + hbasis.len());
        let single = reduce(&graph("1 1\n1 1 1")).unwrap();
        assert_eq!((single.hprime.rows.len(), single.hprime.n), (9, 14));
        assert_eq!(split_hprime(&out.hprime, 2, 2).unwrap(), out.h);
    }

    #[test]
    fn build_hprime_rejects_bad_shape() {
        let h = build_h(&graph("1 1\n1 1 1"));
        assert!(build_hprime(&h, 2, 1).is_err());
    }

    #[test]
    fn matching_examples() {
        assert_eq!(find_matching(&graph("1 1\n1 1 1")).unwrap(), Some(vec![0]));
        assert_eq!(find_matching(&graph("2 2\n1 1 1\n1 2 2")).unwrap(), None);
        assert_eq!(
            find_matching(&graph("2 3\n1 1 1\n2 2 2\n1 2 2")).unwrap(),
            Some(vec![0, 1])
        );
        let big = TripartiteHypergraph::new(7, vec![[1, 1, 1]]).unwrap();
        assert!(matches!(
            find_matching(&big),
            Err(Error::CapExceeded { .. })
        ));
    }

    fn naive_column_sum(h: &Matrix, s: u64, w: usize) -> bool {
        let cols = column_syndromes(h).unwrap();
        (0u64..1 << cols.len())
            .filter(|m| m.count_ones() as usize == w)
            .any(|m| subset_sum(&cols, m) == s)
    }

    #[test]
    fn column_sums_single_edge() {
        let h = build_h(&graph("1 1\n1 1 1"));
        let ones = Word::ones(3);
        assert_eq!(column_sum_reachable(&h, &ones, 1).unwrap(), Some(vec![7]));
        assert_eq!(
            column_sum_reachable(&h, &Word::zeros(3), 0).unwrap(),
            Some(vec![])
        );
        let wit = column_sum_reachable(&h, &ones, 7).unwrap().unwrap();
        assert_eq!(wit.len(), 7);
        let cols = column_syndromes(&h).unwrap();
        assert_eq!(wit.iter().fold(0, |a, &j| a ^ cols[j]), 7);
        for s in 0..8u64 {
            for w in 0..=9 {
                let fast = column_sum_reachable(&h, &Word::from_u64(3, s), w).unwrap();
                assert_eq!(fast.is_some(), naive_column_sum(&h, s, w), "s={s} w={w}");
            }
        }
    }

    #[test]
    fn column_sums_match_naive_on_two_edges() {
        let h = build_h(&graph("2 2\n1 1 1\n1 2 2"));
        for s in 0..64u64 {
            for w in [0, 1, 2, 5, 8, 13, 16] {
                let fast = column_sum_reachable(&h, &Word::from_u64(6, s), w).unwrap();
                assert_eq!(fast.is_some(), naive_column_sum(&h, s, w), "s={s} w={w}");
            }
        }
    }

    #[test]
    fn xor_permute_moves_bits() {
        for c in 0..64u64 {
            for i in 0..64u64 {
                assert_eq!(xor_permute(1 << i, c), 1 << (i ^ c));
            }
        }
    }

    #[test]
    fn weight_reach_matches_naive() {
        let h = build_h(&graph("2 2\n1 1 1\n1 2 2"));
        let cols = column_syndromes(&h).unwrap();
        let reach = weight_reach(&cols, 6, 16);
        for w in 0..=16 {
            for s in 0..64u64 {
                assert_eq!(
                    reach[w].contains(s),
                    naive_column_sum(&h, s, w),
                    "w={w} s={s}"
                );
            }
        }
    }

    #[test]
    fn single_edge_has_an_unbalanced_coset() {
        // With t = 1 the identity block can force a left part of weight 2,
        // and two distinct columns of H never sum to zero.
        let out = reduce(&graph("1 1\n1 1 1")).unwrap();
        for method in [CosetMethod::Bucket, CosetMethod::Structured] {
            let c = every_coset_has_balanced_word(&out.hprime, 1, 1, Some(method)).unwrap();
            assert!(!c.all_cosets_balanced, "{method:?}");
        }
        let c = every_coset_has_balanced_word(&out.hprime, 1, 1, None).unwrap();
        assert_eq!(c.counterexample.unwrap().to_string(), "111110000");
    }

    #[test]
    fn doubled_edge_cosets_both_methods() {
        let out = reduce(&graph("1 2\n1 1 1\n1 1 1")).unwrap();
        let fast = every_coset_has_balanced_word(&out.hprime, 1, 2, None).unwrap();
        assert_eq!(fast.method, CosetMethod::Structured);
        assert!(fast.all_cosets_balanced);
    }

    #[test]
    fn counterexample_is_a_bad_coset() {
        let g = graph("2 2\n1 1 1\n1 2 2");
        let out = reduce(&g).unwrap();
        let c = every_coset_has_balanced_word(&out.hprime, 2, 2, None).unwrap();
        assert!(!c.all_cosets_balanced);
        assert_eq!(c.method, CosetMethod::Structured);
        let s = c.counterexample.unwrap();
        assert_eq!(s.len(), 18);
        // the identity block forces the right half; no left half of the
        // complementary weight reaches the rest of the syndrome
        let s1 = Word::from_bits(&(0..12).map(|i| s.bit(i)).collect::<Vec<_>>());
        let s2 = Word::from_bits(&(12..18).map(|i| s.bit(i)).collect::<Vec<_>>());
        assert!(column_sum_reachable(&out.h, &s2, 14 - s1.weight())
            .unwrap()
            .is_none());
    }

    #[test]
    fn syndrome_of_identity_part() {
        let out = reduce(&graph("1 1\n1 1 1")).unwrap();
        let mut z = Word::zeros(14);
        z.set(8, true);
        z.set(7, true);
        let s = syndrome_of(&out.hprime, &z).unwrap();
        assert_eq!(s.to_string(), "100000111");
    }

    #[test]
    fn verify_reports_skips() {
        let big = TripartiteHypergraph::new(7, vec![[1, 1, 1]; 2]).unwrap();
        let r = verify_reduction(&big, None).unwrap();
        assert!(!r.verified);
        assert_eq!(r.equivalent, None);
        assert!(!r.skipped.is_empty());
    }
}
