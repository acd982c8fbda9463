//! Independent ground truth: plain backtracking enumeration, pairwise attack
//! geometry and D4 symmetry classes.
//!
//! Nothing here touches the kernel; agreement with the kernel-derived
//! results is the point of the test suites.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::board_codec::PVector;
use crate::error::{check_range, Error, Result};

pub const MAX_ORACLE_SIZE: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    pub fn from_index(index: usize, size: usize) -> Self {
        Cell {
            row: index / size,
            col: index % size,
        }
    }

    pub fn index(self, size: usize) -> usize {
        self.row * size + self.col
    }
}

/// Whether queens on two distinct cells attack each other.
pub fn attacks(a: Cell, b: Cell) -> Result<bool> {
    if a == b {
        return Err(Error::Domain(format!(
            "attack test needs two distinct cells, got ({}, {}) twice",
            a.row, a.col
        )));
    }
    Ok(a.row == b.row || a.col == b.col || a.row.abs_diff(b.row) == a.col.abs_diff(b.col))
}

/// Attacking pairs among the given positions.
pub fn attacking_pairs(p: &PVector, size: usize) -> u64 {
    let cells: Vec<Cell> = p.as_slice().iter().map(|&i| Cell::from_index(i, size)).collect();
    let mut count = 0;
    for (k, &a) in cells.iter().enumerate() {
        for &b in &cells[k + 1..] {
            if attacks(a, b).expect("positions are distinct") {
                count += 1;
            }
        }
    }
    count
}

pub fn is_solution(p: &PVector, size: usize) -> bool {
    p.len() == size && attacking_pairs(p, size) == 0
}

/// All full solutions of one board size, ordered by integer code, with one
/// representative (the smallest code) per symmetry class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionSet {
    #[serde(rename = "L")]
    pub size: usize,
    pub solutions: Vec<PVector>,
    pub fundamental: Vec<PVector>,
}

impl SolutionSet {
    /// Canonicalizes an arbitrary list of solutions: sorts by code, removes
    /// duplicates and classifies into symmetry orbits.
    pub fn from_solutions(size: usize, mut solutions: Vec<PVector>) -> Self {
        solutions.sort_by(|a, b| a.cmp_code(b));
        solutions.dedup();
        let mut fundamental: Vec<PVector> = Vec::new();
        let mut seen = BTreeSet::new();
        for s in &solutions {
            if seen.contains(s.as_slice()) {
                continue;
            }
            let orbit = symmetry_orbit(s, size);
            for member in &orbit {
                seen.insert(member.as_slice().to_vec());
            }
            fundamental.push(orbit[0].clone());
        }
        fundamental.sort_by(|a, b| a.cmp_code(b));
        SolutionSet {
            size,
            solutions,
            fundamental,
        }
    }

    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn contains(&self, p: &PVector) -> bool {
        self.solutions
            .binary_search_by(|s| s.cmp_code(p))
            .is_ok()
    }
}

/// Row-by-row backtracking with column and diagonal occupancy flags.
pub fn enumerate(size: usize) -> Result<SolutionSet> {
    check_range("oracle board size", size, 1, MAX_ORACLE_SIZE)?;
    let mut search = Backtrack {
        size,
        cols: vec![false; size],
        diag: vec![false; 2 * size],
        anti: vec![false; 2 * size],
        placed: Vec::with_capacity(size),
        found: Vec::new(),
    };
    search.place(0);
    Ok(SolutionSet::from_solutions(size, search.found))
}

struct Backtrack {
    size: usize,
    cols: Vec<bool>,
    // row - col + size
    diag: Vec<bool>,
    // row + col
    anti: Vec<bool>,
    placed: Vec<usize>,
    found: Vec<PVector>,
}

impl Backtrack {
    fn place(&mut self, row: usize) {
        if row == self.size {
            let p = self
                .placed
                .iter()
                .enumerate()
                .map(|(r, &c)| r * self.size + c)
                .collect();
            self.found.push(PVector::new(p).expect("one queen per row is increasing"));
            return;
        }
        for col in 0..self.size {
            let d = row + self.size - col;
            let a = row + col;
            if self.cols[col] || self.diag[d] || self.anti[a] {
                continue;
            }
            self.cols[col] = true;
            self.diag[d] = true;
            self.anti[a] = true;
            self.placed.push(col);
            self.place(row + 1);
            self.placed.pop();
            self.cols[col] = false;
            self.diag[d] = false;
            self.anti[a] = false;
        }
    }
}

/// The eight symmetries of the square acting on one cell.
pub fn transform(cell: Cell, size: usize, symmetry: usize) -> Cell {
    let m = size - 1;
    let (r, c) = (cell.row, cell.col);
    let (r, c) = match symmetry % 4 {
        0 => (r, c),
        1 => (c, m - r),
        2 => (m - r, m - c),
        _ => (m - c, r),
    };
    if symmetry >= 4 {
        Cell::new(r, m - c)
    } else {
        Cell::new(r, c)
    }
}

/// Distinct images of `p` under D4, ascending by code. The first element is
/// the canonical representative.
pub fn symmetry_orbit(p: &PVector, size: usize) -> Vec<PVector> {
    let mut orbit: Vec<PVector> = (0..8)
        .map(|g| {
            let moved = p
                .as_slice()
                .iter()
                .map(|&i| transform(Cell::from_index(i, size), size, g).index(size))
                .collect();
            PVector::from_unsorted(moved).expect("symmetries are bijective")
        })
        .collect();
    orbit.sort_by(|a, b| a.cmp_code(b));
    orbit.dedup();
    orbit
}
