use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use rand::rngs::StdRng;
use rand::seq::index::sample;
use rand::SeedableRng;
use serde_json::{json, Value};

use qkernel::board_codec::{parse_board, BoardConfig, PVector};
use qkernel::classifier::{build_q_kernel, power_of_two_classify, quadratic_form};
use qkernel::export;
use qkernel::fractal::{build_table, digit_sum_table, ExponentMatrix};
use qkernel::kernel::{build_kernel, build_kernel_direct, row_bitsums, InteractionKernel, MAX_KERNEL_SIZE};
use qkernel::oracle::{self, SolutionSet, MAX_ORACLE_SIZE};
use qkernel::sigma_solver::{sigma_sequences, solve};
use qkernel::spectrum::{spectrum_default, SpectrumReport};

use crate::args::Method;
use crate::report::RunReport;

pub const MAX_SPECTRUM_SIZE: usize = 16;
pub const MAX_DYADIC_SIZE: usize = 12;
pub const MAX_BOTH_SIZE: usize = 10;

/// Result of a command: its report plus, for commands whose product is a
/// single document, that document.
pub struct Outcome {
    pub report: RunReport,
    pub product: Option<String>,
}

impl Outcome {
    fn files(report: RunReport) -> Self {
        Outcome {
            report,
            product: None,
        }
    }
}

/// Creates `path` and runs `f` on a buffered writer; errors name the path.
pub fn write_file(path: &Path, f: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<()> {
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    let mut w = BufWriter::new(file);
    f(&mut w)
        .and_then(|_| w.flush())
        .with_context(|| format!("cannot write {}", path.display()))
}

/// Fixed-precision float formatting with negative zero folded to zero, so
/// CSV output does not flicker on rounding noise.
pub fn fmt_f64(v: f64) -> String {
    let s = format!("{v:.12}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn require_size(size: Option<usize>) -> Result<usize> {
    let size = size.context("--size is required")?;
    ensure!(size >= 1, "--size must be at least 1");
    Ok(size)
}

fn sibling(primary: &Path, suffix: &str) -> PathBuf {
    let stem = primary
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "kernel".into());
    primary.with_file_name(format!("{stem}{suffix}"))
}

fn positions_json(p: &PVector, one_based: bool) -> Value {
    if one_based {
        json!(p.to_one_based())
    } else {
        json!(p.as_slice())
    }
}

/// Structural checks shared by `kernel` and `figures`.
pub fn check_kernel(report: &mut RunReport, kernel: &InteractionKernel) -> Result<()> {
    let direct = build_kernel_direct(kernel.size())?;
    report.check("kernel_routes_agree", direct == *kernel);
    report.check("kernel_symmetric", kernel.matrix().is_symmetric());
    report.check("kernel_traceless", kernel.matrix().trace() == 0);
    report.check(
        "kernel_parts_disjoint",
        kernel.cross_part().is_disjoint(kernel.diag_part()),
    );
    Ok(())
}

pub fn check_spectrum(report: &mut RunReport, kernel: &InteractionKernel, s: &SpectrumReport) {
    let l2 = kernel.cells() as f64;
    let fro = (kernel.matrix().count_ones() as f64).sqrt();
    report.check_detail(
        "eigenvalue_sum",
        s.trace_residual() <= 1e-9 * l2,
        format!("|sum| = {:e}", s.trace_residual()),
    );
    report.check_detail(
        "offdiag_residual",
        s.max_offdiag_residual <= 1e-10 * fro.max(1.0),
        format!("{:e}", s.max_offdiag_residual),
    );
    report.check_detail(
        "eigenvector_orthogonality",
        s.orthogonality_residual() <= 1e-8,
        format!("{:e}", s.orthogonality_residual()),
    );
}

pub fn write_spectrum_csv(w: &mut dyn Write, s: &SpectrumReport) -> io::Result<()> {
    writeln!(w, "index,eigenvalue")?;
    for (k, v) in s.eigenvalues.iter().enumerate() {
        writeln!(w, "{k},{}", fmt_f64(*v))?;
    }
    Ok(())
}

fn write_spectrum_json(w: &mut dyn Write, s: &SpectrumReport) -> io::Result<()> {
    serde_json::to_writer(&mut *w, s)?;
    writeln!(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelFormat {
    Pbm,
    Csv,
    Json,
}

impl KernelFormat {
    pub fn parse(s: Option<&str>) -> Result<Self> {
        match s.unwrap_or("pbm") {
            "pbm" => Ok(KernelFormat::Pbm),
            "csv" => Ok(KernelFormat::Csv),
            "json" => Ok(KernelFormat::Json),
            other => bail!("unknown kernel format {other:?} (expected pbm, csv or json)"),
        }
    }

    fn ext(self) -> &'static str {
        match self {
            KernelFormat::Pbm => "pbm",
            KernelFormat::Csv => "csv",
            KernelFormat::Json => "json",
        }
    }
}

pub fn cmd_kernel(
    size: Option<usize>,
    format: KernelFormat,
    spectrum: bool,
    bitsums: bool,
    out: Option<&Path>,
) -> Result<Outcome> {
    let size = require_size(size)?;
    ensure!(size <= MAX_KERNEL_SIZE, "kernel export supports L <= {MAX_KERNEL_SIZE}");
    let want_spectrum = spectrum || format == KernelFormat::Json;
    ensure!(
        !want_spectrum || size <= MAX_SPECTRUM_SIZE,
        "spectrum supports L <= {MAX_SPECTRUM_SIZE}"
    );

    let mut report = RunReport::start("kernel");
    report
        .param("size", size)
        .param("format", format.ext())
        .param("spectrum", spectrum)
        .param("bitsums", bitsums);

    let kernel = build_kernel(size)?;
    check_kernel(&mut report, &kernel)?;

    let primary = out
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from(format!("kernel_L{size}.{}", format.ext())));
    let mut summary = serde_json::Map::new();

    let spec = if want_spectrum {
        let s = spectrum_default(&kernel)?;
        check_spectrum(&mut report, &kernel, &s);
        summary.insert("eigenvalues".into(), json!(s.eigenvalues));
        Some(s)
    } else {
        None
    };

    match format {
        KernelFormat::Pbm => write_file(&primary, |w| export::write_pbm(w, kernel.matrix()))?,
        KernelFormat::Csv => write_file(&primary, |w| export::write_matrix_csv(w, kernel.matrix()))?,
        KernelFormat::Json => {
            write_file(&primary, |w| write_spectrum_json(w, spec.as_ref().expect("computed")))?
        }
    }
    report.output(&primary);

    if let Some(s) = &spec {
        if format != KernelFormat::Json {
            let p = sibling(&primary, "_spectrum.json");
            write_file(&p, |w| write_spectrum_json(w, s))?;
            report.output(p);
        }
        let p = sibling(&primary, "_spectrum.csv");
        write_file(&p, |w| write_spectrum_csv(w, s))?;
        report.output(p);
    }

    if bitsums {
        let profile = row_bitsums(&kernel);
        let p = sibling(&primary, "_bitsums.csv");
        write_file(&p, |w| export::write_bitsums_csv(w, size, &profile))?;
        report.output(p);

        let sweep = bitsum_sweep(1..=size)?;
        let p = sibling(&primary, "_bounds.csv");
        write_file(&p, |w| {
            writeln!(w, "L,min,max")?;
            for (l, lo, hi) in &sweep {
                writeln!(w, "{l},{lo},{hi}")?;
            }
            Ok(())
        })?;
        report.output(p);
        summary.insert("bitsum_min".into(), json!(profile.min));
        summary.insert("bitsum_max".into(), json!(profile.max));
    }

    report.summary = Some(Value::Object(summary));
    Ok(Outcome::files(report))
}

/// `(L, min row bitsum, max row bitsum)` for each board size.
pub fn bitsum_sweep(sizes: impl IntoIterator<Item = usize>) -> Result<Vec<(usize, u32, u32)>> {
    sizes
        .into_iter()
        .map(|l| {
            let p = row_bitsums(&build_kernel(l)?);
            Ok((l, p.min, p.max))
        })
        .collect()
}

fn read_input(input: &Path) -> Result<String> {
    let mut text = String::new();
    if input.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text).context("cannot read standard input")?;
    } else {
        File::open(input)
            .and_then(|mut f| f.read_to_string(&mut text))
            .with_context(|| format!("cannot read {}", input.display()))?;
    }
    Ok(text)
}

/// Classifies one board with both kernel criteria.
pub fn classify_board(board: &BoardConfig, one_based: bool, report: &mut RunReport) -> Result<Value> {
    let kernel = build_kernel(board.size())?;
    let q = build_q_kernel(&kernel);
    let qf = quadratic_form(&kernel, board)?;
    let v = power_of_two_classify(&q, board)?;
    report.check("criteria_agree", v.is_nonattacking == (qf == 0) && v.quadratic_value == qf);

    let shift = usize::from(one_based);
    let codes: Vec<Value> = v
        .per_queen_codes
        .iter()
        .map(|c| json!({"position": c.position + shift, "code": c.code.to_str_radix(10)}))
        .collect();
    Ok(json!({
        "L": board.size(),
        "positions": positions_json(&board.positions(), one_based),
        "quadratic_form": qf,
        "attacking_pairs": v.attacking_pairs,
        "quadratic_value": v.quadratic_value,
        "is_nonattacking": v.is_nonattacking,
        "is_full_solution": v.is_full_solution,
        "per_queen_codes": codes,
    }))
}

pub fn cmd_classify(
    size: Option<usize>,
    input: Option<&Path>,
    random: Option<usize>,
    seed: u64,
    one_based: bool,
) -> Result<Outcome> {
    let mut report = RunReport::start("classify");
    report.param("one_based", one_based);

    let doc = if let Some(count) = random {
        let size = require_size(size)?;
        ensure!(size <= MAX_KERNEL_SIZE, "classify supports L <= {MAX_KERNEL_SIZE}");
        report.param("size", size).param("random", count).param("seed", seed);
        let kernel = build_kernel(size)?;
        let q = build_q_kernel(&kernel);
        let mut rng = StdRng::seed_from_u64(seed);
        let (mut nonattacking, mut full, mut agree) = (0usize, 0usize, true);
        let cells = size * size;
        for _ in 0..count {
            let p = PVector::from_unsorted(sample(&mut rng, cells, size.min(cells)).into_vec())?;
            let b = BoardConfig::from_positions(size, &p)?;
            let qf = quadratic_form(&kernel, &b)?;
            let v = power_of_two_classify(&q, &b)?;
            agree &= v.is_nonattacking == (qf == 0);
            nonattacking += usize::from(v.is_nonattacking);
            full += usize::from(v.is_full_solution);
        }
        report.check("criteria_agree", agree);
        json!({
            "L": size,
            "samples": count,
            "seed": seed,
            "nonattacking": nonattacking,
            "full_solutions": full,
            "criteria_agree": agree,
        })
    } else {
        let input = input.context("classify needs a board file (or - for stdin) or --random")?;
        report.param("input", input.display().to_string());
        let board = parse_board(&read_input(input)?, one_based)?;
        if let Some(l) = size {
            ensure!(l == board.size(), "--size {l} does not match the {0}x{0} board", board.size());
        }
        ensure!(board.size() <= MAX_KERNEL_SIZE, "classify supports L <= {MAX_KERNEL_SIZE}");
        classify_board(&board, one_based, &mut report)?
    };

    Ok(Outcome {
        report,
        product: Some(serde_json::to_string(&doc)? + "\n"),
    })
}

fn solutions_json(set: &SolutionSet, one_based: bool) -> Value {
    Value::Array(set.solutions.iter().map(|p| positions_json(p, one_based)).collect())
}

pub fn dyadic_solutions(size: usize) -> Result<SolutionSet> {
    Ok(solve(&sigma_sequences(&build_kernel(size)?)))
}

pub fn cmd_solve(size: Option<usize>, method: Method, one_based: bool) -> Result<Outcome> {
    let size = require_size(size)?;
    let cap = match method {
        Method::Dyadic => MAX_DYADIC_SIZE,
        Method::Oracle => MAX_ORACLE_SIZE,
        Method::Both => MAX_BOTH_SIZE,
    };
    ensure!(size <= cap, "solve --method {} supports L <= {cap}", method.name());

    let mut report = RunReport::start("solve");
    report
        .param("size", size)
        .param("method", method.name())
        .param("one_based", one_based);

    let set = match method {
        Method::Dyadic => dyadic_solutions(size)?,
        Method::Oracle => oracle::enumerate(size)?,
        Method::Both => {
            let ours = dyadic_solutions(size)?;
            let reference = oracle::enumerate(size)?;
            let only_dyadic: Vec<_> = ours
                .solutions
                .iter()
                .filter(|p| !reference.contains(p))
                .map(|p| positions_json(p, one_based))
                .collect();
            let only_oracle: Vec<_> = reference
                .solutions
                .iter()
                .filter(|p| !ours.contains(p))
                .map(|p| positions_json(p, one_based))
                .collect();
            let equal = only_dyadic.is_empty() && only_oracle.is_empty();
            let detail = if equal {
                format!("{} solutions", ours.len())
            } else {
                json!({"only_dyadic": only_dyadic, "only_oracle": only_oracle}).to_string()
            };
            report.check_detail("solution_sets_equal", equal, detail);
            ours
        }
    };
    report.summary = Some(json!({"count": set.len(), "fundamental": set.fundamental.len()}));

    Ok(Outcome {
        product: Some(serde_json::to_string(&solutions_json(&set, one_based))? + "\n"),
        report,
    })
}

pub fn cmd_sigma(size: Option<usize>, format: Option<&str>) -> Result<Outcome> {
    let size = require_size(size)?;
    ensure!(size <= MAX_KERNEL_SIZE, "sigma supports L <= {MAX_KERNEL_SIZE}");
    let mut report = RunReport::start("sigma");
    let format = format.unwrap_or("csv");
    report.param("size", size).param("format", format);

    let kernel = build_kernel(size)?;
    let seq = sigma_sequences(&kernel);
    let q = build_q_kernel(&kernel);
    report.check("q_rows_equal_sigma", q.row_codes() == seq.sigma());

    let product = match format {
        "csv" => {
            let mut buf = Vec::new();
            export::write_sigma_csv(&mut buf, &seq)?;
            String::from_utf8(buf)?
        }
        "json" => {
            let dec = |v: &[num_bigint::BigUint]| -> Vec<String> {
                v.iter().map(|x| x.to_str_radix(10)).collect()
            };
            serde_json::to_string(&json!({
                "L": size,
                "sigma": dec(seq.sigma()),
                "sigma_bar": dec(seq.sigma_bar()),
            }))? + "\n"
        }
        other => bail!("unknown sigma format {other:?} (expected csv or json)"),
    };
    Ok(Outcome {
        report,
        product: Some(product),
    })
}

pub fn cmd_fractal(op: &str, bits: usize, format: Option<&str>, out: Option<&Path>) -> Result<Outcome> {
    let op: ExponentMatrix = op.parse()?;
    let format = format.unwrap_or("pgm");
    ensure!(
        format == "pgm" || format == "csv",
        "unknown fractal format {format:?} (expected pgm or csv)"
    );
    let mut report = RunReport::start("fractal");
    report
        .param("op", op.to_string())
        .param("bits", bits)
        .param("format", format);

    let table = build_table(op, bits)?;
    let side = table.side();
    let direct = (0..side).all(|i| {
        (0..side).all(|j| table.get(i, j) as u64 == op.eval(i as u64, j as u64, bits))
    });
    report.check("recursion_matches_direct", direct);
    report.check("digit_sums_match", digit_sum_table(&table) == table.digit_sums());

    let path = out
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from(format!("fractal_{op}_{bits}.{format}")));
    if format == "pgm" {
        write_file(&path, |w| export::write_digit_sum_pgm(w, &table))?;
    } else {
        write_file(&path, |w| export::write_table_csv(w, &table))?;
    }
    report.output(path);
    Ok(Outcome::files(report))
}

pub fn cmd_oracle(size: Option<usize>, counts: bool, one_based: bool) -> Result<Outcome> {
    let size = require_size(size)?;
    let mut report = RunReport::start("oracle");
    report.param("size", size).param("counts", counts);
    let set = oracle::enumerate(size)?;
    let orbit_total: usize = set
        .fundamental
        .iter()
        .map(|f| oracle::symmetry_orbit(f, size).len())
        .sum();
    report.check("orbit_sizes_add_up", orbit_total == set.len());

    let doc = if counts {
        json!({"L": size, "total": set.len(), "fundamental": set.fundamental.len()})
    } else {
        json!({
            "L": size,
            "solutions": solutions_json(&set, one_based),
            "fundamental": Value::Array(set.fundamental.iter().map(|p| positions_json(p, one_based)).collect()),
        })
    };
    Ok(Outcome {
        report,
        product: Some(serde_json::to_string(&doc)? + "\n"),
    })
}
