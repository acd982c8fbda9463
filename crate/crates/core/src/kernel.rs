//! The interaction kernel `K = K₊ + K×`.
//!
//! Row `i` of `K` marks every cell attacked by a queen on cell `i`. The
//! row/column part is the Kronecker sum `K₊ = I ⊗ Ī + Ī ⊗ I` and the
//! diagonal part is `K× = Σ_d k_d ⊗ k_d` over the decimating matrices
//! `k_d[i][j] = [|i − j| = d]`. The two supports are disjoint, so the sum is
//! stored as a boolean OR.
//!
//! [`build_kernel_direct`] builds the same matrix independently by stamping
//! each cell's row, column and both diagonals onto a board and flattening.

use crate::bits::BitMatrix;
use crate::error::{check_range, Result};

/// Largest board side for which kernels are materialized.
pub const MAX_KERNEL_SIZE: usize = 64;

/// `L x L` matrix with ones exactly where `|i − j| = d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecimatingMatrix {
    pub size: usize,
    pub offset: usize,
    pub matrix: BitMatrix,
}

impl DecimatingMatrix {
    pub fn new(size: usize, offset: usize) -> Result<Self> {
        check_range("decimating offset", offset, 1, size.saturating_sub(1))?;
        Ok(DecimatingMatrix {
            size,
            offset,
            matrix: BitMatrix::from_fn(size, |i, j| i.abs_diff(j) == offset),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteractionKernel {
    size: usize,
    matrix: BitMatrix,
    cross_part: BitMatrix,
    diag_part: BitMatrix,
}

impl InteractionKernel {
    /// Board side `L`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of cells `L²`, the kernel dimension.
    pub fn cells(&self) -> usize {
        self.size * self.size
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    /// `K₊`: shared row or column.
    pub fn cross_part(&self) -> &BitMatrix {
        &self.cross_part
    }

    /// `K×`: shared diagonal or anti-diagonal.
    pub fn diag_part(&self) -> &BitMatrix {
        &self.diag_part
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.matrix.get(i, j)
    }

    fn assemble(size: usize, cross_part: BitMatrix, diag_part: BitMatrix) -> Self {
        debug_assert!(cross_part.is_disjoint(&diag_part));
        InteractionKernel {
            size,
            matrix: cross_part.or(&diag_part),
            cross_part,
            diag_part,
        }
    }
}

/// `K₊ = I_L ⊗ Ī_L + Ī_L ⊗ I_L`.
pub fn build_cross_kernel(size: usize) -> BitMatrix {
    let id = BitMatrix::identity(size);
    let co = BitMatrix::complement_identity(size);
    let same_row = id.kron(&co);
    let same_col = co.kron(&id);
    debug_assert!(same_row.is_disjoint(&same_col));
    same_row.or(&same_col)
}

/// The full decimating set `k_1 .. k_{L-1}`.
pub fn decimating_set(size: usize) -> Vec<DecimatingMatrix> {
    (1..size)
        .map(|d| DecimatingMatrix::new(size, d).expect("offset in range"))
        .collect()
}

/// `K× = Σ_d k_d ⊗ k_d`.
pub fn build_diag_kernel(size: usize) -> BitMatrix {
    let mut out = BitMatrix::zeros(size * size);
    for k in decimating_set(size) {
        let term = k.matrix.kron(&k.matrix);
        // different d give disjoint supports (|Δrow| = d)
        debug_assert!(out.is_disjoint(&term));
        out.or_assign(&term);
    }
    out
}

/// Kernel assembled from the Kronecker decomposition.
pub fn build_kernel(size: usize) -> Result<InteractionKernel> {
    check_range("kernel board size", size, 1, MAX_KERNEL_SIZE)?;
    Ok(InteractionKernel::assemble(
        size,
        build_cross_kernel(size),
        build_diag_kernel(size),
    ))
}

/// Kernel assembled cell by cell: mark the row, the column and both
/// diagonals through `(r, c)`, clear `(r, c)` itself, flatten.
pub fn build_kernel_direct(size: usize) -> Result<InteractionKernel> {
    check_range("kernel board size", size, 1, MAX_KERNEL_SIZE)?;
    let n = size * size;
    let mut cross = BitMatrix::zeros(n);
    let mut diag = BitMatrix::zeros(n);
    let l = size as isize;
    for r in 0..l {
        for c in 0..l {
            let i = (r * l + c) as usize;
            let mut wc = vec![false; n];
            let mut wd = vec![false; n];
            for k in 0..l {
                wc[(r * l + k) as usize] = true;
                wc[(k * l + c) as usize] = true;
            }
            // main diagonal and anti-diagonal through (r, c)
            for t in -l..=l {
                for (rr, cc) in [(r + t, c + t), (r + t, c - t)] {
                    if (0..l).contains(&rr) && (0..l).contains(&cc) {
                        wd[(rr * l + cc) as usize] = true;
                    }
                }
            }
            wc[i] = false;
            wd[i] = false;
            for j in 0..n {
                cross.set(i, j, wc[j]);
                diag.set(i, j, wd[j]);
            }
        }
    }
    Ok(InteractionKernel::assemble(size, cross, diag))
}

/// Checks `OR_d k_d = Ī_L` and `Σ_d k_d ⊗ k_d = K×` (the latter against the
/// directly stamped diagonal part).
pub fn verify_decomposition(size: usize) -> Result<bool> {
    check_range("kernel board size", size, 2, MAX_KERNEL_SIZE)?;
    let mut union = BitMatrix::zeros(size);
    for k in decimating_set(size) {
        union.or_assign(&k.matrix);
    }
    let partition_ok = union == BitMatrix::complement_identity(size);
    let direct = build_kernel_direct(size)?;
    Ok(partition_ok && build_diag_kernel(size) == *direct.diag_part())
}

/// Per-row popcounts of a kernel with their extremes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitsumProfile {
    pub sums: Vec<u32>,
    pub min: u32,
    pub max: u32,
}

pub fn row_bitsums(kernel: &InteractionKernel) -> BitsumProfile {
    let m = kernel.matrix();
    let sums: Vec<u32> = (0..m.dim()).map(|i| m.row_popcount(i)).collect();
    BitsumProfile {
        min: sums.iter().copied().min().unwrap_or(0),
        max: sums.iter().copied().max().unwrap_or(0),
        sums,
    }
}
