//! Recursive operator tables of pointwise (bitwise) logical operations.
//!
//! The table `Tₙ[i][j] = op(i, j)` over `n`-bit operands is self-similar:
//! quadrant `(a, b)` of `Tₙ₊₁` is `Tₙ + 2ⁿ·m[a][b]`, where `m` is the
//! operation's 2×2 truth table. Digit sums follow the same pattern with the
//! increment `m[a][b]` in place of `2ⁿ·m[a][b]`.

use std::fmt;
use std::str::FromStr;

use crate::board_codec::{digit_sum_s2, PVector};
use crate::error::{check_range, Error, Result};
use crate::sigma_solver::{and_complemented, SigmaSequence};

pub const MAX_TABLE_BITS: usize = 13;

/// 2×2 truth table of a two-bit logical operation: `m[a][b] = op(a, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExponentMatrix {
    m: [[u8; 2]; 2],
}

impl ExponentMatrix {
    pub const AND: ExponentMatrix = ExponentMatrix { m: [[0, 0], [0, 1]] };
    pub const OR: ExponentMatrix = ExponentMatrix { m: [[0, 1], [1, 1]] };
    pub const XOR: ExponentMatrix = ExponentMatrix { m: [[0, 1], [1, 0]] };

    pub fn new(m: [[u8; 2]; 2]) -> Result<Self> {
        if m.iter().flatten().any(|&x| x > 1) {
            return Err(Error::Domain(format!("truth table entries must be bits: {m:?}")));
        }
        Ok(ExponentMatrix { m })
    }

    pub fn entries(&self) -> [[u8; 2]; 2] {
        self.m
    }

    #[inline]
    pub fn bit(&self, a: u64, b: u64) -> u64 {
        self.m[(a & 1) as usize][(b & 1) as usize] as u64
    }

    /// `op` applied bit by bit to the low `bits` bits of `x` and `y`.
    pub fn eval(&self, x: u64, y: u64, bits: usize) -> u64 {
        (0..bits).fold(0, |acc, k| acc | (self.bit(x >> k, y >> k) << k))
    }
}

impl FromStr for ExponentMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "and" => Ok(Self::AND),
            "or" => Ok(Self::OR),
            "xor" => Ok(Self::XOR),
            other => Err(Error::Parse(format!("unknown operation {other:?}"))),
        }
    }
}

impl fmt::Display for ExponentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::AND => f.write_str("and"),
            Self::OR => f.write_str("or"),
            Self::XOR => f.write_str("xor"),
            _ => write!(f, "{:?}", self.m),
        }
    }
}

/// `Tₙ` and its digit sums, both `2ⁿ x 2ⁿ` row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractalTable {
    op: ExponentMatrix,
    bits: usize,
    table: Vec<u32>,
    digit_sums: Vec<u8>,
}

impl FractalTable {
    pub fn op(&self) -> ExponentMatrix {
        self.op
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn side(&self) -> usize {
        1 << self.bits
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn digit_sums(&self) -> &[u8] {
        &self.digit_sums
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.table[i * self.side() + j]
    }

    pub fn digit_sum(&self, i: usize, j: usize) -> u8 {
        self.digit_sums[i * self.side() + j]
    }

    /// Quadrant `(a, b)` with its constant `2^{n-1}·m[a][b]` removed.
    pub fn reduced_quadrant(&self, a: usize, b: usize) -> Vec<u32> {
        assert!(self.bits >= 1, "T₀ has no quadrants");
        let half = self.side() / 2;
        let offset = (self.op.m[a][b] as u32) << (self.bits - 1);
        let mut out = Vec::with_capacity(half * half);
        for i in 0..half {
            for j in 0..half {
                out.push(self.get(a * half + i, b * half + j) - offset);
            }
        }
        out
    }
}

/// Builds `Tₙ` from `T₀ = [0]` by the quadrant recursion.
pub fn build_table(op: ExponentMatrix, bits: usize) -> Result<FractalTable> {
    check_range("table bits", bits, 1, MAX_TABLE_BITS)?;
    let mut table = vec![0u32];
    let mut sums = vec![0u8];
    for level in 0..bits {
        let side = 1usize << level;
        let next_side = side * 2;
        let mut next = vec![0u32; next_side * next_side];
        let mut next_sums = vec![0u8; next_side * next_side];
        for a in 0..2 {
            for b in 0..2 {
                let inc = op.m[a][b];
                let shift = (inc as u32) << level;
                for i in 0..side {
                    let src = i * side;
                    let dst = (a * side + i) * next_side + b * side;
                    for j in 0..side {
                        next[dst + j] = table[src + j] + shift;
                        next_sums[dst + j] = sums[src + j] + inc;
                    }
                }
            }
        }
        table = next;
        sums = next_sums;
    }
    Ok(FractalTable {
        op,
        bits,
        table,
        digit_sums: sums,
    })
}

/// `s₂` of every entry, computed from the entries themselves.
pub fn digit_sum_table(t: &FractalTable) -> Vec<u8> {
    t.table.iter().map(|v| v.count_ones() as u8).collect()
}

/// `s₂(AND_{i ∈ p} σ̄ᵢ)`: equals `L` exactly when `p` is a full solution.
pub fn hypercube_digit_sum(seq: &SigmaSequence, p: &PVector) -> Result<u64> {
    Ok(digit_sum_s2(&and_complemented(seq, p)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::build_kernel;
    use crate::sigma_solver::sigma_sequences;

    #[test]
    fn or_table_n1_is_its_exponent_matrix() {
        let t = build_table(ExponentMatrix::OR, 1).unwrap();
        assert_eq!(t.table(), &[0, 1, 1, 1]);
        let m = ExponentMatrix::OR.entries();
        assert_eq!(m, [[0, 1], [1, 1]]);
        assert_eq!(digit_sum_table(&t), vec![0, 1, 1, 1]);
    }

    #[test]
    fn and_table_n2() {
        let t = build_table(ExponentMatrix::AND, 2).unwrap();
        assert_eq!(t.table(), &[0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 2, 2, 0, 1, 2, 3]);
    }

    #[test]
    fn xor_table_n1() {
        let t = build_table(ExponentMatrix::XOR, 1).unwrap();
        assert_eq!(t.table(), &[0, 1, 1, 0]);
    }

    #[test]
    fn or_digit_sum_corner() {
        let t = build_table(ExponentMatrix::OR, 2).unwrap();
        assert_eq!(t.digit_sum(3, 3), 2);
    }

    #[test]
    fn and_digit_sums_n8_exhaustive() {
        let t = build_table(ExponentMatrix::AND, 8).unwrap();
        for i in 0..256u32 {
            for j in 0..256u32 {
                assert_eq!(t.digit_sum(i as usize, j as usize) as u32, (i & j).count_ones());
            }
        }
        assert_eq!(digit_sum_table(&t), t.digit_sums());
    }

    #[test]
    fn range_checks() {
        assert!(build_table(ExponentMatrix::OR, 0).is_err());
        assert!(build_table(ExponentMatrix::OR, 14).is_err());
        assert!(ExponentMatrix::new([[0, 2], [1, 1]]).is_err());
    }

    #[test]
    fn eval_matches_native_ops() {
        for x in 0..64u64 {
            for y in 0..64u64 {
                assert_eq!(ExponentMatrix::AND.eval(x, y, 6), x & y);
                assert_eq!(ExponentMatrix::OR.eval(x, y, 6), x | y);
                assert_eq!(ExponentMatrix::XOR.eval(x, y, 6), x ^ y);
            }
        }
    }

    #[test]
    fn parse_and_display() {
        for name in ["and", "or", "xor"] {
            let op: ExponentMatrix = name.parse().unwrap();
            assert_eq!(op.to_string(), name);
        }
        assert!("nand".parse::<ExponentMatrix>().is_err());
    }

    #[test]
    fn hypercube_examples() {
        let s4 = sigma_sequences(&build_kernel(4).unwrap());
        let pv = |p: &[usize]| PVector::new(p.to_vec()).unwrap();
        assert_eq!(hypercube_digit_sum(&s4, &pv(&[1, 7, 8, 14])).unwrap(), 4);

        // cells free of both (0,0) and (0,1)
        let direct = (&s4.sigma_bar()[0] & &s4.sigma_bar()[1]).count_ones();
        let v = hypercube_digit_sum(&s4, &pv(&[0, 1])).unwrap();
        assert_eq!(v, direct);
        assert_eq!(v, 2);

        let s2 = sigma_sequences(&build_kernel(2).unwrap());
        assert_eq!(hypercube_digit_sum(&s2, &pv(&[0, 3])).unwrap(), 0);
    }
}
