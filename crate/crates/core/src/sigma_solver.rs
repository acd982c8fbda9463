//! Characteristic integer sequences of the kernel and the solver built on
//! them.
//!
//! `σᵢ` encodes kernel row `i` with bit `j` set iff `K_ij = 1`; its
//! `L²`-bit complement `σ̄ᵢ = 2^{L²} − σᵢ − 1` marks the cells a queen on
//! `i` leaves free, including `i` itself. For a full solution with queens
//! at `p`, every other cell is attacked by some queen while no queen is
//! attacked, so the bitwise AND of `σ̄_p` over `p` is exactly the solution.

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use crate::bits::BitMatrix;
use crate::board_codec::{digit_sum_s2, BoardConfig, PVector};
use crate::error::{Error, Result};
use crate::kernel::InteractionKernel;
use crate::oracle::SolutionSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaSequence {
    size: usize,
    sigma: Vec<BigUint>,
    sigma_bar: Vec<BigUint>,
}

impl SigmaSequence {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn sigma(&self) -> &[BigUint] {
        &self.sigma
    }

    pub fn sigma_bar(&self) -> &[BigUint] {
        &self.sigma_bar
    }

    /// `2^{L²} − 1`.
    pub fn full_mask(&self) -> BigUint {
        (BigUint::one() << (self.size * self.size)) - 1u32
    }

    /// `log₂ σᵢ` per row; `None` for a zero row (only `L = 1`).
    pub fn log2_profile(&self) -> Vec<Option<f64>> {
        self.sigma.iter().map(log2).collect()
    }

    fn check_positions(&self, p: &PVector) -> Result<()> {
        if p.is_empty() {
            return Err(Error::InvalidPositions("position vector is empty".into()));
        }
        let cells = self.size * self.size;
        if let Some(&bad) = p.as_slice().iter().find(|&&i| i >= cells) {
            return Err(Error::InvalidPositions(format!(
                "position {bad} outside a {0}x{0} board",
                self.size
            )));
        }
        Ok(())
    }
}

fn log2(v: &BigUint) -> Option<f64> {
    let bits = v.bits();
    if bits == 0 {
        return None;
    }
    // top 53 bits carry all the precision an f64 can hold
    let shift = bits.saturating_sub(53);
    let top = (v >> shift).to_u64_digits().first().copied().unwrap_or(0) as f64;
    Some(top.log2() + shift as f64)
}

pub fn sigma_sequences(kernel: &InteractionKernel) -> SigmaSequence {
    let m = kernel.matrix();
    let cells = kernel.cells();
    let full = (BigUint::one() << cells) - 1u32;
    let sigma: Vec<BigUint> = (0..cells).map(|i| m.row_code(i)).collect();
    let sigma_bar = sigma.iter().map(|s| &full - s).collect();
    SigmaSequence {
        size: kernel.size(),
        sigma,
        sigma_bar,
    }
}

/// `AND_{i ∈ p} σ̄ᵢ` as an integer.
pub fn and_complemented(seq: &SigmaSequence, p: &PVector) -> Result<BigUint> {
    seq.check_positions(p)?;
    let mut idx = p.as_slice().iter();
    let first = *idx.next().expect("non-empty");
    let mut acc = seq.sigma_bar[first].clone();
    for &i in idx {
        acc &= &seq.sigma_bar[i];
    }
    Ok(acc)
}

/// The same value through the De Morgan dual: complement of `OR_{i ∈ p} σᵢ`.
pub fn and_complemented_de_morgan(seq: &SigmaSequence, p: &PVector) -> Result<BigUint> {
    seq.check_positions(p)?;
    let mut acc = BigUint::default();
    for &i in p.as_slice() {
        acc |= &seq.sigma[i];
    }
    Ok(seq.full_mask() - acc)
}

/// Decodes the board `AND_{i ∈ p} σ̄ᵢ`. For a full solution `p` this is the
/// solution itself.
pub fn decode_dyadic(seq: &SigmaSequence, p: &PVector) -> Result<BoardConfig> {
    BoardConfig::from_code(seq.size, and_complemented(seq, p)?)
}

/// Every full solution, found by choosing one cell per board row while
/// keeping the running mask `M = AND σ̄` of the cells chosen so far. A
/// candidate survives only if its own bit is still in `M`; a complete
/// choice is accepted when `s₂(M) = L`.
///
/// Branches on the first-row column run in parallel; the result is sorted
/// by code so it does not depend on scheduling.
pub fn solve(seq: &SigmaSequence) -> SolutionSet {
    let size = seq.size;
    let found: Vec<PVector> = (0..size)
        .into_par_iter()
        .flat_map_iter(|col| {
            let mut out = Vec::new();
            let mut chosen = vec![col];
            let mask = seq.sigma_bar[col].clone();
            extend(seq, 1, &mask, &mut chosen, &mut out);
            out
        })
        .collect();
    SolutionSet::from_solutions(size, found)
}

fn extend(
    seq: &SigmaSequence,
    row: usize,
    mask: &BigUint,
    chosen: &mut Vec<usize>,
    out: &mut Vec<PVector>,
) {
    let size = seq.size;
    if row == size {
        if digit_sum_s2(mask) == size as u64 {
            out.push(PVector::new(chosen.clone()).expect("rows increase"));
        }
        return;
    }
    for col in 0..size {
        let cell = row * size + col;
        if !mask.bit(cell as u64) {
            continue;
        }
        let next = mask & &seq.sigma_bar[cell];
        chosen.push(cell);
        extend(seq, row + 1, &next, chosen, out);
        chosen.pop();
    }
}

/// OR over all solutions of the outer products `S Sᵀ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicClosure {
    pub size: usize,
    pub matrix: BitMatrix,
}

impl DyadicClosure {
    /// Cells occupied by at least one solution.
    pub fn diagonal_support(&self) -> Vec<usize> {
        (0..self.matrix.dim()).filter(|&i| self.matrix.get(i, i)).collect()
    }

    /// True when no off-diagonal entry lands on an attacking pair.
    pub fn avoids_kernel(&self, kernel: &InteractionKernel) -> bool {
        self.matrix.is_disjoint(kernel.matrix())
    }
}

pub fn dyadic_closure(solutions: &SolutionSet) -> DyadicClosure {
    let cells = solutions.size * solutions.size;
    let mut matrix = BitMatrix::zeros(cells);
    for s in &solutions.solutions {
        for &i in s.as_slice() {
            for &j in s.as_slice() {
                matrix.set(i, j, true);
            }
        }
    }
    DyadicClosure {
        size: solutions.size,
        matrix,
    }
}
