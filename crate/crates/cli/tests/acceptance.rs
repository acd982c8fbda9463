//! Acceptance criteria. Runs every criterion, prints one PASS/FAIL line per
//! criterion and exits non-zero if any failed.

use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::seq::index::sample;
use rand::SeedableRng;

use qkernel::board_codec::{iter_patterns, BoardConfig, PVector};
use qkernel::classifier::{build_q_kernel, is_power_of_two, power_of_two_classify, quadratic_form};
use qkernel::fractal::{build_table, ExponentMatrix};
use qkernel::kernel::{build_kernel, build_kernel_direct};
use qkernel::oracle::{self, attacking_pairs};
use qkernel::sigma_solver::{decode_dyadic, sigma_sequences, solve};
use qkernel::spectrum::spectrum_default;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, started: Instant) -> Result<(), String> {
    let t = started.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn ac1_dual_route_kernel() -> Outcome {
    let t = Instant::now();
    for l in 1..=16 {
        let a = build_kernel(l).map_err(|e| e.to_string())?;
        let b = build_kernel_direct(l).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("routes differ at L = {l}"))?;
    }
    within(Duration::from_secs(10), t)?;
    Ok(format!("L = 1..16 identical in {:?}", t.elapsed()))
}

fn ac2_quadratic_form() -> Outcome {
    let t = Instant::now();
    let k4 = build_kernel(4).unwrap();
    let mut exhaustive = 0;
    for p in iter_patterns(4, 4) {
        let b = BoardConfig::from_positions(4, &p).unwrap();
        let qf = quadratic_form(&k4, &b).unwrap();
        ensure(qf == 2 * attacking_pairs(&p, 4), || format!("L=4 mismatch at {p}"))?;
        exhaustive += 1;
    }
    ensure(exhaustive == 1820, || format!("{exhaustive} patterns, expected 1820"))?;

    let k8 = build_kernel(8).unwrap();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..100_000 {
        let p = PVector::from_unsorted(sample(&mut rng, 64, 8).into_vec()).unwrap();
        let b = BoardConfig::from_positions(8, &p).unwrap();
        let qf = quadratic_form(&k8, &b).unwrap();
        ensure(qf == 2 * attacking_pairs(&p, 8), || format!("L=8 mismatch at {p}"))?;
    }
    within(Duration::from_secs(30), t)?;
    Ok(format!("1820 exhaustive + 100000 random, {:?}", t.elapsed()))
}

fn ac3_power_of_two_vs_quadratic() -> Outcome {
    let t = Instant::now();
    let k4 = build_kernel(4).unwrap();
    let q4 = build_q_kernel(&k4);
    for p in iter_patterns(4, 4) {
        let b = BoardConfig::from_positions(4, &p).unwrap();
        let zero = quadratic_form(&k4, &b).unwrap() == 0;
        let v = power_of_two_classify(&q4, &b).unwrap();
        ensure(v.is_nonattacking == zero, || format!("L=4 disagreement at {p}"))?;
    }

    let k7 = build_kernel(7).unwrap();
    let q7 = build_q_kernel(&k7);
    let mut cols = [0usize; 7];
    let mut placements = 0u64;
    let mut valid = 0u64;
    'outer: loop {
        let p = PVector::new(cols.iter().enumerate().map(|(r, &c)| r * 7 + c).collect()).unwrap();
        let b = BoardConfig::from_positions(7, &p).unwrap();
        let zero = quadratic_form(&k7, &b).unwrap() == 0;
        let v = power_of_two_classify(&q7, &b).unwrap();
        ensure(v.is_nonattacking == zero, || format!("L=7 disagreement at {p}"))?;
        placements += 1;
        valid += u64::from(zero);
        for r in (0..7).rev() {
            cols[r] += 1;
            if cols[r] < 7 {
                continue 'outer;
            }
            cols[r] = 0;
        }
        break;
    }
    ensure(placements == 823_543, || format!("{placements} placements"))?;
    ensure(valid == 40, || format!("{valid} valid 7x7 placements, expected 40"))?;

    let k8 = build_kernel(8).unwrap();
    let q8 = build_q_kernel(&k8);
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..100_000 {
        let p = PVector::from_unsorted(sample(&mut rng, 64, 8).into_vec()).unwrap();
        let b = BoardConfig::from_positions(8, &p).unwrap();
        let zero = quadratic_form(&k8, &b).unwrap() == 0;
        let v = power_of_two_classify(&q8, &b).unwrap();
        ensure(v.is_nonattacking == zero, || format!("L=8 disagreement at {p}"))?;
    }
    within(Duration::from_secs(120), t)?;
    Ok(format!("1820 + 823543 + 100000 random placements agree, {:?}", t.elapsed()))
}

fn ac4_dyadic_identity() -> Outcome {
    let mut checked = 0;
    for l in 4..=8 {
        let seq = sigma_sequences(&build_kernel(l).unwrap());
        for s in oracle::enumerate(l).unwrap().solutions {
            let decoded = decode_dyadic(&seq, &s).unwrap();
            ensure(decoded.positions() == s, || format!("L={l}: {s} decodes to {}", decoded.positions()))?;
            checked += 1;
        }
    }
    ensure(checked == 148, || format!("{checked} solutions, expected 148"))?;
    Ok(format!("{checked} solutions reproduced"))
}

fn ac5_figure_vectors() -> Outcome {
    let cases: [(usize, &[usize]); 2] = [
        (6, &[4, 7, 17, 20, 30, 33]),
        (7, &[2, 11, 15, 28, 33, 38, 48]),
    ];
    for (l, one_based) in cases {
        let p = PVector::from_one_based(one_based).unwrap();
        let k = build_kernel(l).unwrap();
        let b = BoardConfig::from_positions(l, &p).unwrap();
        ensure(oracle::is_solution(&p, l), || format!("{p} is not a {l}x{l} solution"))?;
        ensure(quadratic_form(&k, &b).unwrap() == 0, || format!("quadratic form nonzero for {p}"))?;
        let v = power_of_two_classify(&build_q_kernel(&k), &b).unwrap();
        ensure(
            v.is_full_solution && v.per_queen_codes.iter().all(|c| is_power_of_two(&c.code)),
            || format!("power-of-two test fails for {p}"),
        )?;
        let seq = sigma_sequences(&k);
        ensure(decode_dyadic(&seq, &p).unwrap() == b, || format!("dyadic decode fails for {p}"))?;
        ensure(solve(&seq).contains(&p), || format!("{p} missing from solver output"))?;
    }
    Ok("6x6 and 7x7 figure vectors valid under the -1 shift".into())
}

fn ac6_solver_completeness() -> Outcome {
    let expected = [1, 0, 0, 2, 10, 4, 40, 92, 352];
    let mut l9 = Duration::ZERO;
    for (l, &n) in (1..=9).zip(&expected) {
        let t = Instant::now();
        let ours = solve(&sigma_sequences(&build_kernel(l).unwrap()));
        if l == 9 {
            l9 = t.elapsed();
        }
        let reference = oracle::enumerate(l).unwrap();
        ensure(ours.solutions == reference.solutions, || format!("sets differ at L = {l}"))?;
        ensure(ours.len() == n, || format!("L = {l}: {} solutions, expected {n}", ours.len()))?;
    }
    ensure(l9 < Duration::from_secs(60), || format!("L = 9 took {l9:?}"))?;
    Ok(format!("counts 1,0,0,2,10,4,40,92,352; L=9 in {l9:?}"))
}

fn ac7_fractal_tables() -> Outcome {
    ensure(ExponentMatrix::OR.entries() == [[0, 1], [1, 1]], || "OR exponent matrix".into())?;
    let ops: [(ExponentMatrix, fn(u32, u32) -> u32); 3] = [
        (ExponentMatrix::AND, |a, b| a & b),
        (ExponentMatrix::OR, |a, b| a | b),
        (ExponentMatrix::XOR, |a, b| a ^ b),
    ];
    for (op, native) in ops {
        let m = op.entries();
        let mut prev = None;
        for n in 1..=10 {
            let t = build_table(op, n).unwrap();
            let side = 1u32 << n;
            for i in 0..side {
                for j in 0..side {
                    let (iu, ju) = (i as usize, j as usize);
                    ensure(t.get(iu, ju) == native(i, j), || format!("{op} n={n} ({i},{j})"))?;
                    ensure(t.digit_sum(iu, ju) as u32 == native(i, j).count_ones(), || {
                        format!("{op} n={n} digit sum ({i},{j})")
                    })?;
                }
            }
            if let Some(p) = &prev {
                let p: &qkernel::FractalTable = p;
                let half = 1usize << (n - 1);
                for a in 0..2 {
                    for b in 0..2 {
                        for i in 0..half {
                            for j in 0..half {
                                ensure(
                                    t.digit_sum(a * half + i, b * half + j) == p.digit_sum(i, j) + m[a][b],
                                    || format!("{op} n={n} digit-sum recursion at quadrant ({a},{b})"),
                                )?;
                            }
                        }
                    }
                }
            }
            prev = Some(t);
        }
    }
    Ok("AND/OR/XOR n=1..10 exact; digit-sum recursion holds".into())
}

fn ac8_spectrum() -> Outcome {
    let mut worst_sum = 0.0f64;
    for l in 1..=16 {
        let k = build_kernel(l).unwrap();
        let s = spectrum_default(&k).map_err(|e| format!("L = {l}: {e}"))?;
        let n2 = (l * l) as f64;
        let fro = (k.matrix().count_ones() as f64).sqrt();
        ensure(s.trace_residual() <= 1e-9 * n2, || {
            format!("L = {l}: |sum| = {:e}", s.trace_residual())
        })?;
        ensure(s.max_offdiag_residual <= 1e-10 * fro.max(1.0), || {
            format!("L = {l}: residual {:e}", s.max_offdiag_residual)
        })?;
        ensure(s.orthogonality_residual() <= 1e-8, || format!("L = {l}: eigenvectors not orthonormal"))?;
        worst_sum = worst_sum.max(s.trace_residual() / n2);
    }
    let s2 = spectrum_default(&build_kernel(2).unwrap()).unwrap();
    for (got, want) in s2.eigenvalues.iter().zip([3.0, -1.0, -1.0, -1.0]) {
        ensure((got - want).abs() <= 1e-12, || format!("L = 2 eigenvalue {got} vs {want}"))?;
    }
    Ok(format!("L = 1..16 converged, max |sum|/L^2 = {worst_sum:e}; L=2 = {{3,-1,-1,-1}}"))
}

fn run_figures(dir: &Path) -> Result<(), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_qkernel"))
        .args(["figures", "--out"])
        .arg(dir)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(status.status.success(), || {
        format!("figures failed: {}", String::from_utf8_lossy(&status.stderr))
    })
}

fn read(dir: &Path, name: &str) -> Result<String, String> {
    fs::read_to_string(dir.join(name)).map_err(|e| format!("{name}: {e}"))
}

fn ac9_figures() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let dir = tmp.path().join("a");
    run_figures(&dir)?;

    let mut names: Vec<String> = fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    let images = names.iter().filter(|n| n.ends_with(".pbm") || n.ends_with(".pgm")).count();
    let csvs = names.iter().filter(|n| n.ends_with(".csv")).count();
    ensure(images == 5 && csvs == 5 && names.contains(&"manifest.json".to_string()), || {
        format!("unexpected file set {names:?}")
    })?;
    for n in &names {
        let len = fs::metadata(dir.join(n)).map_err(|e| e.to_string())?.len();
        ensure(len > 0, || format!("{n} is empty"))?;
    }

    let pbm = fs::read(dir.join("fig1_kernel_L8.pbm")).map_err(|e| e.to_string())?;
    ensure(pbm.starts_with(b"P4\n64 64\n") && pbm.len() == 9 + 64 * 8, || "fig1 bitmap shape".into())?;

    let spectrum = read(&dir, "fig2_spectrum_L8.csv")?;
    ensure(spectrum.lines().count() == 65, || "fig2 needs 64 eigenvalues".into())?;

    let bitsums = read(&dir, "fig3_bitsums_L16.csv")?;
    let l8: Vec<&str> = bitsums
        .lines()
        .filter(|l| l.ends_with(",8,21") || l.ends_with(",8,27"))
        .collect();
    ensure(l8 == ["lower_bound,8,21", "upper_bound,8,27"], || format!("L=8 bounds {l8:?}"))?;
    ensure(bitsums.lines().filter(|l| l.starts_with("row_bitsum,")).count() == 256, || {
        "fig3 needs 256 row sums".into()
    })?;

    let dyadic = read(&dir, "fig4_dyadic_L6_L7.csv")?;
    for size in [6usize, 7] {
        let k = build_kernel(size).unwrap();
        let entries: Vec<(usize, usize)> = dyadic
            .lines()
            .skip(1)
            .filter_map(|l| {
                let v: Vec<usize> = l.split(',').map(|x| x.parse().unwrap()).collect();
                (v[0] == size).then_some((v[1], v[2]))
            })
            .collect();
        ensure(!entries.is_empty(), || format!("no closure entries for L = {size}"))?;
        ensure(entries.iter().all(|&(i, j)| !k.get(i, j)), || {
            format!("closure for L = {size} hits an attacking pair")
        })?;
    }

    let sigma = read(&dir, "fig5_sigma_L7.csv")?;
    let mut points = 0;
    for line in sigma.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let s: BigUint = cols[1].parse().map_err(|_| format!("bad sigma {line}"))?;
        let lg: f64 = cols[2].parse().map_err(|_| format!("bad log2 {line}"))?;
        ensure(s > BigUint::from(0u32) && lg > 0.0 && lg < 49.0, || format!("fig5 point {line}"))?;
        points += 1;
    }
    ensure(points == 49, || format!("fig5 has {points} points"))?;

    // byte-identical CSV/JSON across runs
    let again = tmp.path().join("b");
    run_figures(&again)?;
    for n in names.iter().filter(|n| n.ends_with(".csv") || n.ends_with(".json")) {
        let a = fs::read(dir.join(n)).unwrap();
        let b = fs::read(again.join(n)).unwrap();
        let same = if n == "manifest.json" {
            // the manifest records its own directory
            String::from_utf8_lossy(&a).replace("/a", "/b") == String::from_utf8_lossy(&b)
        } else {
            a == b
        };
        ensure(same, || format!("{n} differs between runs"))?;
    }
    Ok("5 images + 5 CSVs + manifest; L=8 bitsums 21/27; deterministic".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("AC1 dual-route kernel equality", ac1_dual_route_kernel),
        ("AC2 quadratic form = 2 x attacking pairs", ac2_quadratic_form),
        ("AC3 power-of-two classifier = quadratic zero set", ac3_power_of_two_vs_quadratic),
        ("AC4 dyadic AND identity on 148 solutions", ac4_dyadic_identity),
        ("AC5 figure p-vectors", ac5_figure_vectors),
        ("AC6 solver completeness L=1..9", ac6_solver_completeness),
        ("AC7 fractal operator tables", ac7_fractal_tables),
        ("AC8 spectral sanity", ac8_spectrum),
        ("AC9 figure regeneration", ac9_figures),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match std::panic::catch_unwind(run) {
            Ok(Ok(msg)) => println!("PASS  {name}: {msg}"),
            Ok(Err(msg)) => {
                failed += 1;
                println!("FAIL  {name}: {msg}");
            }
            Err(_) => {
                failed += 1;
                println!("FAIL  {name}: panicked");
            }
        }
    }
    println!("{} of 9 acceptance criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
