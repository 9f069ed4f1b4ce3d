//! Exact rational reference implementations used to cross-check the prime-field code.
#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lefschetz::artinian::{hilbert_dimension as hd, lefschetz_step, syzygy_dimension, PowerIdealSpec};
use lefschetz::fatpoints::{linear_system_dimension, FatPointSystem, ProjectivePoint};
use lefschetz::linalg::{self, DenseMatrix};
use lefschetz::poly::LinearForm;
use lefschetz::PrimeField;

/// Rank over the rationals by fraction-exact Gaussian elimination.
pub fn rational_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for i in rank + 1..m.len() {
            if m[i][col].is_zero() {
                continue;
            }
            let factor = &m[i][col] / &pivot;
            let (top, bottom) = m.split_at_mut(i);
            for (x, y) in bottom[0][col..].iter_mut().zip(&top[rank][col..]) {
                *x -= &factor * y;
            }
        }
        rank += 1;
    }
    rank
}

/// All exponent vectors of total degree `d` in `v` variables, in no particular order.
pub fn monomials(v: usize, d: u32) -> Vec<Vec<u32>> {
    if v == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in monomials(v - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Coefficients of `(Σ cᵢxᵢ)^k` by the multinomial theorem.
pub fn power_coefficients(coeffs: &[i64], k: u32) -> HashMap<Vec<u32>, BigInt> {
    monomials(coeffs.len(), k)
        .into_iter()
        .map(|alpha| {
            let mut c = factorial(k);
            for (&a, &ci) in alpha.iter().zip(coeffs) {
                c /= factorial(a);
                c *= BigInt::from(ci).pow(a);
            }
            (alpha, c)
        })
        .collect()
}

/// Rows `m·L^k` spanning the degree-`d` part of the ideal, over the columns `monomials(v, d)`.
pub fn ideal_rows(gens: &[(Vec<i64>, u32)], v: usize, d: u32) -> Vec<Vec<BigInt>> {
    let cols = monomials(v, d);
    let mut rows = Vec::new();
    for (form, k) in gens {
        if *k > d {
            continue;
        }
        let pow = power_coefficients(form, *k);
        for m in monomials(v, d - k) {
            rows.push(
                cols.iter()
                    .map(|alpha| {
                        if alpha.iter().zip(&m).any(|(a, b)| a < b) {
                            return BigInt::zero();
                        }
                        let rest: Vec<u32> = alpha.iter().zip(&m).map(|(a, b)| a - b).collect();
                        pow.get(&rest).cloned().unwrap_or_default()
                    })
                    .collect(),
            );
        }
    }
    rows
}

/// `dim (R/I)_d`.
pub fn hilbert_dimension(gens: &[(Vec<i64>, u32)], v: usize, d: u32) -> usize {
    monomials(v, d).len() - rational_rank(&ideal_rows(gens, v, d))
}

/// Rows `L·m` for the monomials `m` of degree `d`, over `monomials(v, d + 1)`.
pub fn multiplication_rows(form: &[i64], v: usize, d: u32) -> Vec<Vec<BigInt>> {
    ideal_rows(&[(form.to_vec(), 1)], v, d + 1)
}

/// Rank of `×L : (R/I)_d → (R/I)_{d+1}`.
pub fn multiplication_rank(gens: &[(Vec<i64>, u32)], form: &[i64], v: usize, d: u32) -> usize {
    let ideal = ideal_rows(gens, v, d + 1);
    let mut stacked = ideal.clone();
    stacked.extend(multiplication_rows(form, v, d));
    rational_rank(&stacked) - rational_rank(&ideal)
}

/// Vanishing to order `m` at each point: every partial derivative of order
/// below `m` vanishes there. Columns are `monomials(n + 1, d)`.
pub fn fat_point_rows(n: usize, d: u32, points: &[(Vec<i64>, u32)]) -> Vec<Vec<BigInt>> {
    let cols = monomials(n + 1, d);
    let mut rows = Vec::new();
    for (pt, m) in points {
        for order in 0..*m {
            for beta in monomials(n + 1, order) {
                rows.push(
                    cols.iter()
                        .map(|alpha| {
                            let mut c = BigInt::one();
                            for ((&a, &b), &x) in alpha.iter().zip(&beta).zip(pt) {
                                if a < b {
                                    return BigInt::zero();
                                }
                                c *= factorial(a) / factorial(a - b);
                                c *= BigInt::from(x).pow(a - b);
                            }
                            c
                        })
                        .collect(),
                );
            }
        }
    }
    rows
}

/// Dimension of degree-`d` forms on `P^n` with the given multiplicities.
pub fn fat_point_dimension(n: usize, d: u32, points: &[(Vec<i64>, u32)]) -> usize {
    monomials(n + 1, d).len() - rational_rank(&fat_point_rows(n, d, points))
}

pub fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn small_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..len).map(|_| rng.gen_range(-4..=4)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

fn residues(v: &[i64], field: &PrimeField) -> Vec<u32> {
    v.iter().map(|&x| field.from_i64(x)).collect()
}

/// One random small-integer instance with at most three variables and degrees
/// at most four, checked against the rational reference. Returns the number of
/// comparisons made, or a description of the first disagreement.
pub fn check_random_instance(seed: u64, field: PrimeField) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = rng.gen_range(1..=3usize);
    let count = rng.gen_range(1..=4usize);
    let uniform = rng.gen_bool(0.5);
    let k0 = rng.gen_range(1..=3u32);
    let gens: Vec<(Vec<i64>, u32)> =
        (0..count).map(|_| (small_vector(&mut rng, v), if uniform { k0 } else { rng.gen_range(1..=3) })).collect();
    let spec = PowerIdealSpec::new(
        v,
        gens.iter().map(|(c, k)| (LinearForm::new(residues(c, &field)).unwrap(), *k as usize)).collect(),
        field,
    )
    .map_err(|e| e.to_string())?;
    let mut checks = 0;
    let fail = |what: String, got: usize, want: usize| {
        Err(format!("seed {seed}: {what}: prime field {got}, rationals {want}"))
    };

    for d in 0..=4u32 {
        let got = hd(&spec, d as usize).map_err(|e| e.to_string())?;
        let want = hilbert_dimension(&gens, v, d);
        if got != want {
            return fail(format!("dim A_{d}"), got, want);
        }
        checks += 1;
    }

    if let Some(k) = spec.uniform_power() {
        for t in 0..=(4 - k.min(4)) as u32 {
            let got = syzygy_dimension(&spec, t as usize).map_err(|e| e.to_string())?.dimension;
            let rows = ideal_rows(&gens, v, t + k as u32);
            let want = rows.len() - rational_rank(&rows);
            if got != want {
                return fail(format!("syzygies t={t}"), got, want);
            }
            checks += 1;
        }
    }

    let form = small_vector(&mut rng, v);
    let l = LinearForm::new(residues(&form, &field)).unwrap();
    for d in 0..=3u32 {
        let got = lefschetz_step(&spec, &l, d as usize).map_err(|e| e.to_string())?.rank;
        let want = multiplication_rank(&gens, &form, v, d);
        if got != want {
            return fail(format!("rank of xL at {d}"), got, want);
        }
        checks += 1;
    }

    if v >= 2 {
        let n = v - 1;
        let d = rng.gen_range(1..=4u32);
        let pts: Vec<(Vec<i64>, u32)> =
            (0..rng.gen_range(1..=4)).map(|_| (small_vector(&mut rng, v), rng.gen_range(1..=3))).collect();
        let system = FatPointSystem::new(
            n,
            d as usize,
            pts.iter().map(|(c, m)| (ProjectivePoint::new(residues(c, &field)).unwrap(), *m)).collect(),
            field,
        )
        .map_err(|e| e.to_string())?;
        let got = linear_system_dimension(&system).map_err(|e| e.to_string())?.actual;
        let want = fat_point_dimension(n, d, &pts);
        if got != want {
            return fail(format!("fat points n={n} d={d} {pts:?}"), got, want);
        }
        checks += 1;
    }

    let (r, c) = (rng.gen_range(0..=8usize), rng.gen_range(0..=8usize));
    let ints: Vec<Vec<i64>> =
        (0..r).map(|_| (0..c).map(|_| if rng.gen_bool(0.4) { 0 } else { rng.gen_range(-3..=3) }).collect()).collect();
    let m = DenseMatrix::from_rows(&ints.iter().map(|row| residues(row, &field)).collect::<Vec<_>>(), c, field)
        .map_err(|e| e.to_string())?;
    let res = linalg::rank(&m);
    let want = rational_rank(&to_big(&ints));
    if res.rank != want || res.nullity != c - want {
        return fail("matrix rank".into(), res.rank, want);
    }
    let kernel = linalg::kernel_basis(&m);
    if kernel.len() != r - want {
        return fail("left kernel size".into(), kernel.len(), r - want);
    }
    Ok(checks + 2)
}
