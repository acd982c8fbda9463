//! Netpbm and CSV writers for kernels, tables and profiles.

use std::io::{self, Write};

use crate::bits::BitMatrix;
use crate::fractal::FractalTable;
use crate::kernel::BitsumProfile;
use crate::sigma_solver::SigmaSequence;

/// Binary PBM (`P4`); a set bit is drawn black.
pub fn write_pbm<W: Write>(mut w: W, m: &BitMatrix) -> io::Result<()> {
    let n = m.dim();
    write!(w, "P4\n{n} {n}\n")?;
    let mut line = vec![0u8; n.div_ceil(8)];
    for i in 0..n {
        line.iter_mut().for_each(|b| *b = 0);
        for j in m.row_ones(i) {
            line[j / 8] |= 0x80 >> (j % 8);
        }
        w.write_all(&line)?;
    }
    Ok(())
}

/// Binary PGM (`P5`) with 8-bit samples, row-major.
pub fn write_pgm<W: Write>(mut w: W, width: usize, height: usize, pixels: &[u8]) -> io::Result<()> {
    assert_eq!(pixels.len(), width * height, "pixel buffer size");
    write!(w, "P5\n{width} {height}\n255\n")?;
    w.write_all(pixels)
}

/// Digit-sum table as grayscale; the largest digit sum maps to white.
pub fn write_digit_sum_pgm<W: Write>(w: W, t: &FractalTable) -> io::Result<()> {
    let side = t.side();
    let top = t.bits().max(1) as u32;
    let pixels: Vec<u8> = t
        .digit_sums()
        .iter()
        .map(|&s| (s as u32 * 255 / top) as u8)
        .collect();
    write_pgm(w, side, side, &pixels)
}

/// Kernel as 0/1 CSV, one kernel row per line.
pub fn write_matrix_csv<W: Write>(mut w: W, m: &BitMatrix) -> io::Result<()> {
    let n = m.dim();
    let mut line = String::with_capacity(2 * n);
    for i in 0..n {
        line.clear();
        for j in 0..n {
            if j > 0 {
                line.push(',');
            }
            line.push(if m.get(i, j) { '1' } else { '0' });
        }
        writeln!(w, "{line}")?;
    }
    Ok(())
}

/// `row,row_index,col_index,bitsum` per kernel row.
pub fn write_bitsums_csv<W: Write>(mut w: W, size: usize, p: &BitsumProfile) -> io::Result<()> {
    writeln!(w, "cell,row,col,bitsum")?;
    for (i, s) in p.sums.iter().enumerate() {
        writeln!(w, "{i},{},{},{s}", i / size, i % size)?;
    }
    Ok(())
}

/// `i,sigma_decimal,sigma_hex,popcount`.
pub fn write_sigma_csv<W: Write>(mut w: W, seq: &SigmaSequence) -> io::Result<()> {
    writeln!(w, "i,sigma_decimal,sigma_hex,popcount")?;
    for (i, s) in seq.sigma().iter().enumerate() {
        writeln!(w, "{i},{},{},{}", s.to_str_radix(10), s.to_str_radix(16), s.count_ones())?;
    }
    Ok(())
}

/// Raw table as CSV, one table row per line.
pub fn write_table_csv<W: Write>(mut w: W, t: &FractalTable) -> io::Result<()> {
    let side = t.side();
    for row in t.table().chunks(side) {
        let line: Vec<String> = row.iter().map(u32::to_string).collect();
        writeln!(w, "{}", line.join(","))?;
    }
    Ok(())
}
