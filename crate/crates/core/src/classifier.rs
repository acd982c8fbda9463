//! Kernel-based validity tests for queen placements.
//!
//! Two criteria:
//!
//! * the quadratic form `SᵀKS`, which counts every attacking pair twice and
//!   so vanishes exactly on non-attacking placements;
//! * the power-of-two test on the `Q` kernel (`Q_ij = 2^j` where
//!   `K_ij = 1`). For each queen `p`, the closed neighbourhood code
//!   `c_p = code(K_p ∧ S) + 2^p` equals `2^p` precisely when no other queen
//!   sits in `p`'s attack set.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::board_codec::{digit_sum_s2, BoardConfig};
use crate::error::{Error, Result};
use crate::kernel::InteractionKernel;

fn check_sizes(expected: usize, board: &BoardConfig) -> Result<()> {
    if board.size() != expected {
        return Err(Error::Dimension(format!(
            "board is {0}x{0}, kernel expects {1}x{1}",
            board.size(),
            expected
        )));
    }
    Ok(())
}

/// `SᵀKS` as a sum of kernel lookups over ordered queen pairs.
pub fn quadratic_form(kernel: &InteractionKernel, board: &BoardConfig) -> Result<u64> {
    check_sizes(kernel.size(), board)?;
    let p = board.positions();
    let p = p.as_slice();
    let mut total = 0u64;
    for (a, &i) in p.iter().enumerate() {
        for &j in &p[a + 1..] {
            if kernel.get(i, j) {
                total += 2;
            }
        }
    }
    Ok(total)
}

/// `SᵀKS` through the dense product `Sᵀ(K S)`.
pub fn quadratic_form_dense(kernel: &InteractionKernel, board: &BoardConfig) -> Result<u64> {
    check_sizes(kernel.size(), board)?;
    let s = board.bits();
    let n = kernel.cells();
    let ks: Vec<u64> = (0..n)
        .map(|i| (0..n).filter(|&j| kernel.get(i, j) && s[j]).count() as u64)
        .collect();
    Ok((0..n).filter(|&i| s[i]).map(|i| ks[i]).sum())
}

/// The `Q` kernel, stored one integer per row: `row_codes[i] = Σ_{K_ij=1} 2^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QKernel {
    size: usize,
    row_codes: Vec<BigUint>,
}

impl QKernel {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn row_codes(&self) -> &[BigUint] {
        &self.row_codes
    }

    /// `Q_ij`: `2^j` or zero.
    pub fn entry(&self, i: usize, j: usize) -> BigUint {
        if self.row_codes[i].bit(j as u64) {
            BigUint::one() << j
        } else {
            BigUint::zero()
        }
    }
}

pub fn build_q_kernel(kernel: &InteractionKernel) -> QKernel {
    let m = kernel.matrix();
    QKernel {
        size: kernel.size(),
        row_codes: (0..m.dim()).map(|i| m.row_code(i)).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QueenCode {
    pub position: usize,
    /// Decimal string of `c_p`; codes outgrow JSON numbers from `L = 8` on.
    #[serde(serialize_with = "ser_decimal")]
    pub code: BigUint,
}

fn ser_decimal<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifierVerdict {
    pub attacking_pairs: u64,
    pub quadratic_value: u64,
    pub is_nonattacking: bool,
    pub is_full_solution: bool,
    pub per_queen_codes: Vec<QueenCode>,
}

pub fn is_power_of_two(v: &BigUint) -> bool {
    digit_sum_s2(v) == 1
}

/// Power-of-two test over the closed neighbourhood codes of every queen.
///
/// An empty board is non-attacking by convention and has no codes.
pub fn power_of_two_classify(q: &QKernel, board: &BoardConfig) -> Result<ClassifierVerdict> {
    check_sizes(q.size, board)?;
    let s = board.code();
    let mut per_queen_codes = Vec::with_capacity(board.queen_count());
    let mut overlap_bits = 0u64;
    let mut nonattacking = true;
    for &p in board.positions().as_slice() {
        let mut code = &q.row_codes[p] & s;
        overlap_bits += digit_sum_s2(&code);
        code.set_bit(p as u64, true);
        nonattacking &= is_power_of_two(&code) && code.bit(p as u64);
        per_queen_codes.push(QueenCode { position: p, code });
    }
    // each attacking pair shows up in both queens' overlaps
    let attacking_pairs = overlap_bits / 2;
    Ok(ClassifierVerdict {
        attacking_pairs,
        quadratic_value: 2 * attacking_pairs,
        is_nonattacking: nonattacking,
        is_full_solution: nonattacking && board.queen_count() == board.size(),
        per_queen_codes,
    })
}
