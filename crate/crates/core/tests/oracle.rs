mod common;

use num_bigint::BigInt;

use lefschetz::poly::{expand_power, LinearForm, MonomialBasis};
use lefschetz::PrimeField;

#[test]
fn random_instances_match_rational_elimination() {
    for prime in [2_147_483_647u64, 1_000_000_007] {
        let field = PrimeField::new(prime).unwrap();
        let mut total = 0;
        for seed in 0..200 {
            total += common::check_random_instance(seed, field).unwrap();
        }
        assert!(total >= 200 * 8);
    }
}

#[test]
fn rational_rank_basics() {
    let rows = common::to_big(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
    assert_eq!(common::rational_rank(&rows), 2);
    assert_eq!(common::rational_rank(&[]), 0);
}

#[test]
fn integer_expansion_matches_field_expansion() {
    let field = PrimeField::default();
    let p = BigInt::from(field.modulus());
    let coeffs = [3i64, -2, 5];
    let form = LinearForm::new(coeffs.iter().map(|&c| field.from_i64(c)).collect()).unwrap();
    for k in 0..=5u32 {
        let big = common::power_coefficients(&coeffs, k);
        let slice = expand_power(&form, k as usize, &field).unwrap();
        let basis = MonomialBasis::new(3, k as usize).unwrap();
        for (i, m) in basis.iter().enumerate() {
            let want = (&big[&m.exponents().to_vec()] % &p + &p) % &p;
            assert_eq!(BigInt::from(slice.coefficients()[i]), want);
        }
    }
}
