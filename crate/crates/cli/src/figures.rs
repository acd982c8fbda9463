//! Regenerates the five kernel figures, each as a Netpbm image with a CSV
//! twin, plus a `manifest.json`.
//!
//! | file stem               | content                                          |
//! |-------------------------|--------------------------------------------------|
//! | `fig1_kernel_L8`        | 8x8 kernel band structure                        |
//! | `fig2_spectrum_L8`      | its eigenvalues, descending                      |
//! | `fig3_bitsums_L16`      | row bit sums at L=16 and their bounds for L=4..16 |
//! | `fig4_dyadic_L6_L7`     | dyadic closures inside the kernel complement     |
//! | `fig5_sigma_L7`         | log₂ σᵢ for the 7x7 kernel                       |

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde_json::json;

use qkernel::export;
use qkernel::kernel::{build_kernel, row_bitsums};
use qkernel::oracle;
use qkernel::sigma_solver::{dyadic_closure, sigma_sequences, DyadicClosure};
use qkernel::spectrum::spectrum_default;
use qkernel::{InteractionKernel, PVector};

use crate::commands::{bitsum_sweep, check_kernel, check_spectrum, fmt_f64, write_file, write_spectrum_csv};
use crate::plot::{bar_chart, grid, line_plot, line_plot_scaled, Canvas, BLACK, WHITE};
use crate::report::RunReport;

/// Fundamental solutions shown in the dyadic figure, 1-based as captioned.
pub const FIG4_L6: [usize; 6] = [4, 7, 17, 20, 30, 33];
pub const FIG4_L7: [usize; 7] = [2, 11, 15, 28, 33, 38, 48];

fn figure_vector(size: usize) -> PVector {
    let v: &[usize] = if size == 6 { &FIG4_L6 } else { &FIG4_L7 };
    PVector::from_one_based(v).expect("valid figure vector")
}

fn write_canvas(path: &Path, c: &Canvas) -> Result<()> {
    write_file(path, |w| export::write_pgm(w, c.width, c.height, &c.pixels))
}

struct Writer<'a> {
    dir: &'a Path,
    report: &'a mut RunReport,
}

impl Writer<'_> {
    fn file(&mut self, name: &str, f: impl FnOnce(&Path) -> Result<()>) -> Result<()> {
        let path = self.dir.join(name);
        f(&path)?;
        self.report.output(path);
        Ok(())
    }
}

/// Runs every figure; stops at the first error, which is recorded as a
/// failed check alongside the artifacts completed so far.
pub fn cmd_figures(outdir: &Path) -> Result<RunReport> {
    let mut report = RunReport::start("figures");
    report.param("out", outdir.display().to_string());
    fs::create_dir_all(outdir).with_context(|| format!("cannot create {}", outdir.display()))?;

    let steps: [(&str, fn(&mut Writer) -> Result<()>); 5] = [
        ("fig1", fig1_kernel),
        ("fig2", fig2_spectrum),
        ("fig3", fig3_bitsums),
        ("fig4", fig4_dyadic),
        ("fig5", fig5_sigma),
    ];
    for (name, step) in steps {
        let mut w = Writer {
            dir: outdir,
            report: &mut report,
        };
        if let Err(e) = step(&mut w) {
            report.check_detail(&format!("{name}_completed"), false, format!("{e:#}"));
            return Ok(report.finish());
        }
    }

    let manifest = outdir.join("manifest.json");
    report.output(&manifest);
    let doc = report.manifest();
    write_file(&manifest, |w| {
        serde_json::to_writer_pretty(&mut *w, &doc)?;
        writeln!(w)
    })?;
    Ok(report.finish())
}

fn fig1_kernel(w: &mut Writer) -> Result<()> {
    let k = build_kernel(8)?;
    check_kernel(w.report, &k)?;
    w.file("fig1_kernel_L8.pbm", |p| write_file(p, |o| export::write_pbm(o, k.matrix())))?;
    w.file("fig1_kernel_L8.csv", |p| write_file(p, |o| export::write_matrix_csv(o, k.matrix())))
}

fn fig2_spectrum(w: &mut Writer) -> Result<()> {
    let k = build_kernel(8)?;
    let s = spectrum_default(&k)?;
    check_spectrum(w.report, &k, &s);
    let chart = bar_chart(&s.eigenvalues, 4, 200);
    w.file("fig2_spectrum_L8.pgm", |p| write_canvas(p, &chart))?;
    w.file("fig2_spectrum_L8.csv", |p| write_file(p, |o| write_spectrum_csv(o, &s)))
}

fn fig3_bitsums(w: &mut Writer) -> Result<()> {
    let profile = row_bitsums(&build_kernel(16)?);
    let sweep = bitsum_sweep(4..=16)?;
    let l8 = sweep.iter().find(|(l, _, _)| *l == 8).expect("sweep covers 8");
    w.report.check_detail(
        "bitsum_bounds_L8",
        (l8.1, l8.2) == (21, 27),
        format!("min {} max {}", l8.1, l8.2),
    );
    w.report.check_detail(
        "bitsum_bounds_L16",
        (profile.min, profile.max) == (45, 59),
        format!("min {} max {}", profile.min, profile.max),
    );

    // (a) per-row sums, (b) lower and upper bound per board size
    let sums: Vec<f64> = profile.sums.iter().map(|&s| s as f64).collect();
    let a = bar_chart(&sums, 2, 200);
    let lows: Vec<f64> = sweep.iter().map(|s| s.1 as f64).collect();
    let highs: Vec<f64> = sweep.iter().map(|s| s.2 as f64).collect();
    let top = highs.iter().copied().fold(0.0, f64::max);
    let mut b = line_plot_scaled(&lows, 16, 200, 0.0, top);
    b.darken(&line_plot_scaled(&highs, 16, 200, 0.0, top));
    let mut canvas = Canvas::new(a.width + 16 + b.width, 200);
    canvas.blit(&a, 0, 0);
    canvas.blit(&b, a.width + 16, 0);

    w.file("fig3_bitsums_L16.pgm", |p| write_canvas(p, &canvas))?;
    w.file("fig3_bitsums_L16.csv", |p| {
        write_file(p, |o| {
            writeln!(o, "series,x,y")?;
            for (i, s) in profile.sums.iter().enumerate() {
                writeln!(o, "row_bitsum,{i},{s}")?;
            }
            for (l, lo, hi) in &sweep {
                writeln!(o, "lower_bound,{l},{lo}")?;
                writeln!(o, "upper_bound,{l},{hi}")?;
            }
            Ok(())
        })
    })
}

/// White: attacked pair. Gray: kernel complement. Black: dyadic closure.
fn closure_panel(k: &InteractionKernel, c: &DyadicClosure, scale: usize) -> Canvas {
    grid(k.cells(), scale, |i, j| {
        if c.matrix.get(i, j) {
            BLACK
        } else if k.get(i, j) {
            WHITE
        } else {
            192
        }
    })
}

fn fig4_dyadic(w: &mut Writer) -> Result<()> {
    let mut panels = Vec::new();
    let mut closures = Vec::new();
    for size in [6, 7] {
        let k = build_kernel(size)?;
        let solutions = oracle::enumerate(size)?;
        let closure = dyadic_closure(&solutions);
        w.report.check(&format!("closure_avoids_kernel_L{size}"), closure.avoids_kernel(&k));
        let fig = figure_vector(size);
        w.report.check(
            &format!("figure_vector_is_solution_L{size}"),
            solutions.contains(&fig),
        );
        panels.push(closure_panel(&k, &closure, 4));
        closures.push((size, closure));
    }
    let height = panels.iter().map(|p| p.height).max().unwrap_or(0);
    let mut canvas = Canvas::new(panels[0].width + 8 + panels[1].width, height);
    canvas.blit(&panels[0], 0, 0);
    canvas.blit(&panels[1], panels[0].width + 8, 0);

    w.file("fig4_dyadic_L6_L7.pgm", |p| write_canvas(p, &canvas))?;
    w.file("fig4_dyadic_L6_L7.csv", |p| {
        write_file(p, |o| {
            writeln!(o, "L,i,j")?;
            for (size, c) in &closures {
                for i in 0..c.matrix.dim() {
                    for j in c.matrix.row_ones(i) {
                        writeln!(o, "{size},{i},{j}")?;
                    }
                }
            }
            Ok(())
        })
    })
}

fn fig5_sigma(w: &mut Writer) -> Result<()> {
    let seq = sigma_sequences(&build_kernel(7)?);
    let logs: Vec<f64> = seq
        .log2_profile()
        .into_iter()
        .map(|v| v.context("zero sigma"))
        .collect::<Result<_>>()?;
    w.report.check_detail(
        "sigma_log_profile",
        logs.len() == 49 && logs.iter().all(|&v| v > 0.0 && v < 49.0),
        json!({"points": logs.len()}).to_string(),
    );
    let plot = line_plot(&logs, 6, 200);
    w.file("fig5_sigma_L7.pgm", |p| write_canvas(p, &plot))?;
    w.file("fig5_sigma_L7.csv", |p| {
        write_file(p, |o| {
            writeln!(o, "i,sigma_decimal,log2_sigma")?;
            for (i, (s, l)) in seq.sigma().iter().zip(&logs).enumerate() {
                writeln!(o, "{i},{},{}", s.to_str_radix(10), fmt_f64(*l))?;
            }
            Ok(())
        })
    })
}

/// Default output directory for `figures`.
pub fn default_outdir() -> PathBuf {
    PathBuf::from("figures")
}
