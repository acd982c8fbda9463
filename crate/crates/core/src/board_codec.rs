//! Conversions between square boards, flattened bit vectors, position
//! vectors and integer codes.
//!
//! A board of side `L` flattens row-major: cell `(row, col)` becomes bit
//! `row * L + col`. The integer code of a configuration is
//! `ν = Σ_j bits[j] · 2^j`, so the number of queens is the binary digit sum
//! `s₂(ν)`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Binary digit sum: the number of 1-bits of `v`.
pub fn digit_sum_s2(v: &BigUint) -> u64 {
    v.count_ones()
}

/// `C(n, k)` as an unbounded integer; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // exact at every step: acc = C(n, i), times (n - i) / (i + 1) = C(n, i + 1)
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Strictly increasing list of occupied cell indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PVector(Vec<usize>);

impl PVector {
    /// Accepts only strictly increasing input.
    pub fn new(positions: Vec<usize>) -> Result<Self> {
        if let Some(w) = positions.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPositions(format!(
                "positions must be strictly increasing, found {} then {}",
                w[0], w[1]
            )));
        }
        Ok(PVector(positions))
    }

    /// Sorts the input; duplicates are an error.
    pub fn from_unsorted(mut positions: Vec<usize>) -> Result<Self> {
        positions.sort_unstable();
        Self::new(positions)
    }

    /// Converts 1-based indices (as printed in figure captions) to 0-based.
    pub fn from_one_based(positions: &[usize]) -> Result<Self> {
        let shifted = positions
            .iter()
            .map(|&p| {
                p.checked_sub(1)
                    .ok_or_else(|| Error::InvalidPositions("1-based index 0".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_unsorted(shifted)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|p| p + 1).collect()
    }

    /// `ν = Σ 2^p`.
    pub fn code(&self) -> BigUint {
        let mut v = BigUint::zero();
        for &p in &self.0 {
            v.set_bit(p as u64, true);
        }
        v
    }

    /// Orders two position sets by their integer codes without materializing them.
    ///
    /// The highest differing position decides, so this is a lexicographic
    /// comparison of the reversed lists.
    pub fn cmp_code(&self, other: &PVector) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl fmt::Display for PVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A flattened queen placement on an `L x L` board.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoardConfig {
    size: usize,
    bits: Vec<bool>,
    code: BigUint,
}

impl BoardConfig {
    pub fn empty(size: usize) -> Self {
        BoardConfig {
            size,
            bits: vec![false; size * size],
            code: BigUint::zero(),
        }
    }

    pub fn from_bits(size: usize, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != size * size {
            return Err(Error::Dimension(format!(
                "bit vector of length {} does not fit a {size}x{size} board",
                bits.len()
            )));
        }
        let mut code = BigUint::zero();
        for (j, _) in bits.iter().enumerate().filter(|(_, &b)| b) {
            code.set_bit(j as u64, true);
        }
        Ok(BoardConfig { size, bits, code })
    }

    pub fn from_positions(size: usize, positions: &PVector) -> Result<Self> {
        let cells = size * size;
        let mut bits = vec![false; cells];
        for &p in positions.as_slice() {
            if p >= cells {
                return Err(Error::InvalidPositions(format!(
                    "position {p} outside a {size}x{size} board"
                )));
            }
            bits[p] = true;
        }
        Ok(BoardConfig {
            size,
            bits,
            code: positions.code(),
        })
    }

    pub fn from_code(size: usize, code: BigUint) -> Result<Self> {
        let cells = size * size;
        if code.bits() > cells as u64 {
            return Err(Error::Dimension(format!(
                "code needs {} bits, board has {cells} cells",
                code.bits()
            )));
        }
        let bits = (0..cells).map(|j| code.bit(j as u64)).collect();
        Ok(BoardConfig { size, bits, code })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn code(&self) -> &BigUint {
        &self.code
    }

    pub fn queen_count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn positions(&self) -> PVector {
        PVector(
            self.bits
                .iter()
                .enumerate()
                .filter_map(|(j, &b)| b.then_some(j))
                .collect(),
        )
    }

    /// Inverse of [`flatten`].
    pub fn unflatten(&self) -> Vec<Vec<bool>> {
        self.bits.chunks(self.size.max(1)).map(|r| r.to_vec()).collect()
    }

    /// Board text: `L` lines of `Q` / `.`, each newline-terminated.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.size * (self.size + 1));
        for row in self.bits.chunks(self.size.max(1)) {
            s.extend(row.iter().map(|&b| if b { 'Q' } else { '.' }));
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self, one_based: bool) -> BoardJson {
        let positions = self.positions();
        BoardJson {
            size: self.size,
            positions: if one_based {
                positions.to_one_based()
            } else {
                positions.0
            },
        }
    }
}

/// Row-major flattening of a square boolean matrix.
pub fn flatten(board: &[Vec<bool>]) -> Result<BoardConfig> {
    let size = board.len();
    if size == 0 {
        return Err(Error::Dimension("empty board".into()));
    }
    if let Some((r, row)) = board.iter().enumerate().find(|(_, row)| row.len() != size) {
        return Err(Error::Dimension(format!(
            "row {r} has {} cells, expected {size}",
            row.len()
        )));
    }
    BoardConfig::from_bits(size, board.concat())
}

/// Parses the board text format. Ragged or non-square input is rejected.
pub fn parse_board_text(text: &str) -> Result<BoardConfig> {
    let rows = text
        .lines()
        .map(|line| {
            line.chars()
                .map(|c| match c {
                    'Q' => Ok(true),
                    '.' => Ok(false),
                    other => Err(Error::Parse(format!("unexpected character {other:?}"))),
                })
                .collect::<Result<Vec<bool>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    flatten(&rows)
}

/// JSON board form `{"L": int, "positions": [int, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoardJson {
    #[serde(rename = "L")]
    pub size: usize,
    pub positions: Vec<usize>,
}

impl BoardJson {
    pub fn to_board(&self, one_based: bool) -> Result<BoardConfig> {
        if self.size == 0 {
            return Err(Error::Dimension("board size must be positive".into()));
        }
        let p = if one_based {
            PVector::from_one_based(&self.positions)?
        } else {
            PVector::from_unsorted(self.positions.clone())?
        };
        BoardConfig::from_positions(self.size, &p)
    }
}

/// Reads either board format; JSON is recognized by a leading `{`.
pub fn parse_board(input: &str, one_based: bool) -> Result<BoardConfig> {
    if input.trim_start().starts_with('{') {
        let json: BoardJson =
            serde_json::from_str(input).map_err(|e| Error::Parse(e.to_string()))?;
        json.to_board(one_based)
    } else {
        parse_board_text(input)
    }
}

/// The family `P_N` of all `N`-queen patterns on an `L x L` board.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternSet {
    pub size: usize,
    pub queens: usize,
    pub cardinality: BigUint,
}

impl PatternSet {
    pub fn new(size: usize, queens: usize) -> Self {
        PatternSet {
            size,
            queens,
            cardinality: binomial((size * size) as u64, queens as u64),
        }
    }

    pub fn iter(&self) -> Patterns {
        iter_patterns(self.size, self.queens)
    }
}

/// Every `N`-subset of the `L²` cells, in lexicographic order of the
/// sorted position lists. Empty when `N > L²`.
pub fn iter_patterns(size: usize, queens: usize) -> Patterns {
    let cells = size * size;
    Patterns {
        cells,
        current: (queens <= cells).then(|| (0..queens).collect()),
    }
}

pub struct Patterns {
    cells: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Patterns {
    type Item = PVector;

    fn next(&mut self) -> Option<PVector> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let k = next.len();
        // rightmost slot that can still advance
        if let Some(i) = (0..k).rev().find(|&i| next[i] < self.cells - k + i) {
            next[i] += 1;
            for j in i + 1..k {
                next[j] = next[j - 1] + 1;
            }
            self.current = Some(next);
        }
        Some(PVector(out))
    }
}
