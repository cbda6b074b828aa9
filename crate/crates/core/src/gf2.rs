//! Linear algebra over the two-element field.
//!
//! Vectors and matrix rows are packed into `u64` words. Entry indices in the
//! public API are 1-based so that entry `(i, j)` of a matrix lines up with the
//! gate `CNOT(j, n + i)` of the matrix-vector circuit.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::{Error, Result};

/// Largest column count accepted by [`enumerate_solutions`].
pub const BRUTE_FORCE_LIMIT: usize = 20;

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Builds a vector from 0/1 entries. Any nonzero entry is rejected.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let mut v = BitVector::zeros(bits.len());
        for (k, &b) in bits.iter().enumerate() {
            match b {
                0 => {}
                1 => v.words[k / WORD] |= 1 << (k % WORD),
                other => {
                    return Err(Error::InvalidInput(format!(
                        "bit {} has value {other}, expected 0 or 1",
                        k + 1
                    )))
                }
            }
        }
        Ok(v)
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = BitVector::zeros(bits.len());
        for (k, b) in bits.into_iter().enumerate() {
            if b {
                v.words[k / WORD] |= 1 << (k % WORD);
            }
        }
        v
    }

    /// Reads `len` bits from `value`, with entry 1 taken from the most
    /// significant of those bits. This is the same convention the simulator
    /// uses for basis-state indices.
    pub fn from_index(value: u64, len: usize) -> Self {
        assert!(len <= 64, "from_index supports at most 64 bits");
        BitVector::from_bools((1..=len).map(|j| (value >> (len - j)) & 1 == 1))
    }

    /// Inverse of [`BitVector::from_index`].
    pub fn to_index(&self) -> u64 {
        assert!(self.len <= 64, "to_index supports at most 64 bits");
        self.iter().fold(0u64, |acc, b| (acc << 1) | b as u64)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Entry `j`, 1-based.
    pub fn get(&self, j: usize) -> bool {
        assert!(j >= 1 && j <= self.len, "index {j} out of range 1..={}", self.len);
        let k = j - 1;
        (self.words[k / WORD] >> (k % WORD)) & 1 == 1
    }

    /// Sets entry `j`, 1-based.
    pub fn set(&mut self, j: usize, value: bool) {
        assert!(j >= 1 && j <= self.len, "index {j} out of range 1..={}", self.len);
        let k = j - 1;
        if value {
            self.words[k / WORD] |= 1 << (k % WORD);
        } else {
            self.words[k / WORD] &= !(1 << (k % WORD));
        }
    }

    /// Flips entry `j`, 1-based.
    pub fn flip(&mut self, j: usize) {
        assert!(j >= 1 && j <= self.len, "index {j} out of range 1..={}", self.len);
        let k = j - 1;
        self.words[k / WORD] ^= 1 << (k % WORD);
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |k| (self.words[k / WORD] >> (k % WORD)) & 1 == 1)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Parity of the bitwise AND, i.e. the GF(2) dot product.
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "dot product of unequal lengths");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "xor of unequal lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &BitVector) -> BitVector {
        BitVector::from_bools(self.iter().chain(other.iter()))
    }

    /// Entries `from..=to` (1-based, inclusive) as a new vector.
    pub fn slice(&self, from: usize, to: usize) -> BitVector {
        assert!(from >= 1 && to <= self.len && from <= to + 1);
        BitVector::from_bools((from..=to).map(|j| self.get(j)))
    }

    pub fn to_bits(&self) -> Vec<u8> {
        self.iter().map(u8::from).collect()
    }
}

// Lexicographic on the printed bitstring, shorter vectors first.
impl Ord for BitVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for BitVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

/// Accepts either a contiguous bitstring (`"101"`) or whitespace-separated
/// bits (`"1 0 1"`).
impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits: Vec<u8> = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::InvalidInput(format!("unexpected character {other:?} in bitstring"))),
            })
            .collect::<Result<_>>()?;
        BitVector::from_bits(&bits)
    }
}

/// An `m x n` matrix over GF(2), stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(m: usize, n: usize) -> Self {
        BitMatrix {
            cols: n,
            rows: vec![BitVector::zeros(n); m],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut a = BitMatrix::zeros(n, n);
        for i in 1..=n {
            a.set(i, i, true);
        }
        a
    }

    /// Builds a matrix from rows of 0/1 entries; all rows must have equal length.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let rows = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let r = r.as_ref();
                if r.len() != cols {
                    return Err(Error::DimensionMismatch(format!(
                        "row {} has {} entries, expected {cols}",
                        i + 1,
                        r.len()
                    )));
                }
                BitVector::from_bits(r)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BitMatrix { cols, rows })
    }

    /// Builds a matrix from packed row vectors of length `cols`.
    pub fn from_row_vectors(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row {} has {} entries, expected {cols}",
                i + 1,
                r.len()
            )));
        }
        Ok(BitMatrix { cols, rows })
    }

    /// Matrix with independent uniform entries.
    pub fn random<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> Self {
        let rows = (0..m)
            .map(|_| BitVector::from_bools((0..n).map(|_| rng.gen::<bool>())))
            .collect();
        BitMatrix { cols: n, rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    /// Entry `(i, j)`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i - 1].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i - 1].set(j, value)
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i - 1]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    /// Column `j`, 1-based.
    pub fn column(&self, j: usize) -> BitVector {
        BitVector::from_bools(self.rows.iter().map(|r| r.get(j)))
    }

    /// Number of entries equal to 1.
    pub fn nonzero_count(&self) -> usize {
        self.rows.iter().map(BitVector::count_ones).sum()
    }

    pub fn transpose(&self) -> BitMatrix {
        let rows = (1..=self.cols).map(|j| self.column(j)).collect();
        BitMatrix {
            cols: self.nrows(),
            rows,
        }
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix({}x{}", self.nrows(), self.cols)?;
        for r in &self.rows {
            write!(f, " {r}")?;
        }
        f.write_str(")")
    }
}

/// `Ax` over GF(2).
pub fn mat_vec_mod2(a: &BitMatrix, x: &BitVector) -> Result<BitVector> {
    if x.len() != a.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} columns but vector has length {}",
            a.ncols(),
            x.len()
        )));
    }
    Ok(BitVector::from_bools(a.rows.iter().map(|r| r.dot(x))))
}

/// Rank over GF(2) by Gaussian elimination on packed rows.
pub fn rank_mod2(a: &BitMatrix) -> usize {
    let mut rows: Vec<BitVector> = a.rows.clone();
    let mut rank = 0;
    for j in 1..=a.ncols() {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r].get(j)) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for r in tail.iter_mut().filter(|r| r.get(j)) {
            r.xor_assign(pivot_row);
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Every `x` with `Ax = b`, found by exhaustive scan of all `2^n` vectors.
///
/// The scan walks a Gray code so that each step updates `Ax` by a single
/// column XOR.
pub fn enumerate_solutions(a: &BitMatrix, b: &BitVector) -> Result<BTreeSet<BitVector>> {
    if b.len() != a.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows but right-hand side has length {}",
            a.nrows(),
            b.len()
        )));
    }
    let n = a.ncols();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::Capacity {
            what: "column count for brute-force enumeration",
            got: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let columns: Vec<BitVector> = (1..=n).map(|j| a.column(j)).collect();
    let mut x = BitVector::zeros(n);
    let mut ax = BitVector::zeros(a.nrows());
    let mut out = BTreeSet::new();
    if &ax == b {
        out.insert(x.clone());
    }
    for step in 1u64..(1u64 << n) {
        // Gray code: flip the bit at the position of the lowest set bit of `step`,
        // counted from the least significant end (entry n).
        let low = step.trailing_zeros() as usize;
        let j = n - low;
        x.flip(j);
        ax.xor_assign(&columns[j - 1]);
        if &ax == b {
            out.insert(x.clone());
        }
    }
    Ok(out)
}

/// A square system with a planted solution: `A` and `x` have independent
/// uniform entries, and `b = Ax`.
pub fn random_consistent_system<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
) -> Result<(BitMatrix, BitVector, BitVector)> {
    if n == 0 {
        return Err(Error::InvalidInput("system dimension must be at least 1".into()));
    }
    let a = BitMatrix::random(n, n, rng);
    let x = BitVector::from_bools((0..n).map(|_| rng.gen::<bool>()));
    let b = mat_vec_mod2(&a, &x)?;
    Ok((a, b, x))
}

/// Parses the system text format: a header line `m n`, then `m` rows of `n`
/// bits, then one line holding the `m` bits of `b`. Bits may be separated by
/// whitespace or written contiguously. Blank lines and `#` comments are skipped.
pub fn parse_system(text: &str) -> Result<(BitMatrix, BitVector)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header line `m n`".into(),
    })?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| {
            t.parse().map_err(|_| Error::Parse {
                line: hline,
                msg: format!("expected an integer, found {t:?}"),
            })
        })
        .collect::<Result<_>>()?;
    let [m, n] = dims[..] else {
        return Err(Error::Parse {
            line: hline,
            msg: "header must contain exactly two integers `m n`".into(),
        });
    };

    let mut parse_bits = |what: &str, expected: usize| -> Result<BitVector> {
        let (line, text) = lines.next().ok_or(Error::Parse {
            line: hline,
            msg: format!("unexpected end of input, expected {what}"),
        })?;
        let v: BitVector = text.parse().map_err(|e: Error| Error::Parse {
            line,
            msg: e.to_string(),
        })?;
        if v.len() != expected {
            return Err(Error::Parse {
                line,
                msg: format!("{what} has {} bits, expected {expected}", v.len()),
            });
        }
        Ok(v)
    };

    let rows = (1..=m)
        .map(|i| parse_bits(&format!("row {i}"), n))
        .collect::<Result<Vec<_>>>()?;
    let b = parse_bits("right-hand side", m)?;
    if let Some((line, _)) = lines.next() {
        return Err(Error::Parse {
            line,
            msg: "trailing content after right-hand side".into(),
        });
    }
    Ok((BitMatrix::from_row_vectors(n, rows)?, b))
}

/// Inverse of [`parse_system`], with space-separated bits.
pub fn format_system(a: &BitMatrix, b: &BitVector) -> String {
    let spaced = |v: &BitVector| {
        v.iter()
            .map(|bit| if bit { "1" } else { "0" })
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut out = format!("{} {}\n", a.nrows(), a.ncols());
    for r in a.rows() {
        out.push_str(&spaced(r));
        out.push('\n');
    }
    out.push_str(&spaced(b));
    out.push('\n');
    out
}
