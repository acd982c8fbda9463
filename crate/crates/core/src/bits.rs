//! Dense bit-packed square boolean matrices.

use std::fmt;

use num_bigint::BigUint;

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// Square boolean matrix stored as bit-packed rows of `u64` words.
///
/// Bits beyond the last column of a row are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    dim: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(dim: usize) -> Self {
        let stride = words_for(dim);
        BitMatrix {
            dim,
            stride,
            words: vec![0; stride * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, true);
        }
        m
    }

    /// All ones.
    pub fn ones(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| true)
    }

    /// `1 - I`: all ones off the diagonal.
    pub fn complement_identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| i != j)
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.dim && j < self.dim);
        (self.words[i * self.stride + j / WORD] >> (j % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        debug_assert!(i < self.dim && j < self.dim);
        let w = &mut self.words[i * self.stride + j / WORD];
        let mask = 1u64 << (j % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    /// Packed words of row `i`, least significant bit = column 0.
    #[inline]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.words[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row_popcount(&self, i: usize) -> u32 {
        self.row_words(i).iter().map(|w| w.count_ones()).sum()
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Row `i` as the integer `Σ_j M[i][j]·2^j`.
    pub fn row_code(&self, i: usize) -> BigUint {
        let mut digits = Vec::with_capacity(2 * self.stride);
        for &w in self.row_words(i) {
            digits.push(w as u32);
            digits.push((w >> 32) as u32);
        }
        BigUint::new(digits)
    }

    /// Column indices set in row `i`, ascending.
    pub fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(i)
            .iter()
            .enumerate()
            .flat_map(|(k, &w)| BitIter { word: w }.map(move |b| k * WORD + b))
    }

    pub fn trace(&self) -> usize {
        (0..self.dim).filter(|&i| self.get(i, i)).count()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (i + 1..self.dim).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn or(&self, other: &BitMatrix) -> BitMatrix {
        self.zip_words(other, |a, b| a | b)
    }

    pub fn and(&self, other: &BitMatrix) -> BitMatrix {
        self.zip_words(other, |a, b| a & b)
    }

    pub fn or_assign(&mut self, other: &BitMatrix) {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// True when no position is set in both matrices.
    pub fn is_disjoint(&self, other: &BitMatrix) -> bool {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Boolean Kronecker product: `(A ⊗ B)[(i₁·n_b + i₂), (j₁·n_b + j₂)] = A[i₁][j₁] ∧ B[i₂][j₂]`.
    pub fn kron(&self, other: &BitMatrix) -> BitMatrix {
        let nb = other.dim;
        let mut out = BitMatrix::zeros(self.dim * nb);
        for i1 in 0..self.dim {
            for j1 in self.row_ones(i1).collect::<Vec<_>>() {
                for i2 in 0..nb {
                    for j2 in other.row_ones(i2) {
                        out.set(i1 * nb + i2, j1 * nb + j2, true);
                    }
                }
            }
        }
        out
    }

    /// Entries as `f64` in row-major order.
    pub fn to_f64(&self) -> Vec<f64> {
        let n = self.dim;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in self.row_ones(i) {
                out[i * n + j] = 1.0;
            }
        }
        out
    }

    fn zip_words(&self, other: &BitMatrix, f: impl Fn(u64, u64) -> u64) -> BitMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        BitMatrix {
            dim: self.dim,
            stride: self.stride,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            for j in 0..self.dim {
                f.write_str(if self.get(i, j) { "1" } else { "." })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

struct BitIter {
    word: u64,
}

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.word == 0 {
            return None;
        }
        let b = self.word.trailing_zeros() as usize;
        self.word &= self.word - 1;
        Some(b)
    }
}
