use qkernel::board_codec::PVector;
use qkernel::fractal::{build_table, digit_sum_table, hypercube_digit_sum, ExponentMatrix};
use qkernel::kernel::build_kernel;
use qkernel::oracle::enumerate;
use qkernel::sigma_solver::sigma_sequences;

const OPS: [(ExponentMatrix, fn(u32, u32) -> u32); 3] = [
    (ExponentMatrix::AND, |a, b| a & b),
    (ExponentMatrix::OR, |a, b| a | b),
    (ExponentMatrix::XOR, |a, b| a ^ b),
];

#[test]
fn recursion_equals_direct_evaluation() {
    for (op, native) in OPS {
        for n in 1..=10 {
            let t = build_table(op, n).unwrap();
            let side = 1u32 << n;
            for i in 0..side {
                for j in 0..side {
                    assert_eq!(t.get(i as usize, j as usize), native(i, j), "{op} n={n}");
                }
            }
        }
    }
}

#[test]
fn quadrants_reduce_to_previous_level() {
    for (op, _) in OPS {
        for n in 2..=10 {
            let t = build_table(op, n).unwrap();
            let prev = build_table(op, n - 1).unwrap();
            for a in 0..2 {
                for b in 0..2 {
                    assert_eq!(t.reduced_quadrant(a, b), prev.table(), "{op} n={n}");
                }
            }
        }
    }
}

#[test]
fn digit_sums_follow_quadrant_recursion() {
    for (op, _) in OPS {
        let m = op.entries();
        for n in 2..=10 {
            let t = build_table(op, n).unwrap();
            assert_eq!(digit_sum_table(&t), t.digit_sums());
            let prev = build_table(op, n - 1).unwrap();
            let half = 1usize << (n - 1);
            for a in 0..2 {
                for b in 0..2 {
                    for i in 0..half {
                        for j in 0..half {
                            assert_eq!(
                                t.digit_sum(a * half + i, b * half + j),
                                prev.digit_sum(i, j) + m[a][b]
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn de_morgan_between_and_or() {
    for n in 1..=8 {
        let and = build_table(ExponentMatrix::AND, n).unwrap();
        let or = build_table(ExponentMatrix::OR, n).unwrap();
        let side = 1usize << n;
        let full = (side - 1) as u32;
        for i in 0..side {
            for j in 0..side {
                let complemented = and.get(side - 1 - i, side - 1 - j);
                assert_eq!(full - complemented, or.get(i, j));
            }
        }
    }
}

/// Visits every one-queen-per-row placement in odometer order.
fn for_each_row_choice(l: usize, mut f: impl FnMut(&[usize])) {
    let mut cols = vec![0usize; l];
    loop {
        let p: Vec<usize> = cols.iter().enumerate().map(|(r, &c)| r * l + c).collect();
        f(&p);
        let mut r = l;
        loop {
            if r == 0 {
                return;
            }
            r -= 1;
            cols[r] += 1;
            if cols[r] < l {
                break;
            }
            cols[r] = 0;
        }
    }
}

#[test]
fn digit_sum_predicate_selects_exactly_the_solutions() {
    for l in 1..=7 {
        let seq = sigma_sequences(&build_kernel(l).unwrap());
        let oracle = enumerate(l).unwrap();
        let mut hits = 0;
        for_each_row_choice(l, |p| {
            let pv = PVector::new(p.to_vec()).unwrap();
            let on = hypercube_digit_sum(&seq, &pv).unwrap() == l as u64;
            assert_eq!(on, oracle.contains(&pv), "L = {l}, p = {pv}");
            hits += on as usize;
        });
        assert_eq!(hits, oracle.len());
    }
}
