//! Seeded random polynomial corpus shared by the inequality drivers.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::series::FunctionSpec;

pub const DEFAULT_SEED: u64 = 0x5EED;
pub const MAX_DEGREE: usize = 60;

/// `count` polynomials with degree uniform in `1..=60` and coefficient `a_k`
/// uniform on the square `[-1, 1]²` scaled by `1/(k+1)`.
pub fn random_polynomials(count: usize, seed: u64) -> Vec<FunctionSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let degree = rng.gen_range(1..=MAX_DEGREE);
            let coeffs = (0..=degree)
                .map(|k| {
                    let a = Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
                    a / (k + 1) as f64
                })
                .collect();
            FunctionSpec::polynomial(coeffs).expect("nonempty coefficients")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_in_range() {
        let a = random_polynomials(20, DEFAULT_SEED);
        let b = random_polynomials(20, DEFAULT_SEED);
        assert_eq!(a, b);
        assert_ne!(a, random_polynomials(20, DEFAULT_SEED + 1));
        for f in &a {
            let deg = f.polynomial_degree().unwrap() as usize;
            assert!((1..=MAX_DEGREE).contains(&deg));
            let FunctionSpec::Polynomial(p) = f else { panic!() };
            for (k, c) in p.coeffs().iter().enumerate() {
                assert!(c.re.abs() <= 1.0 / (k + 1) as f64 && c.im.abs() <= 1.0 / (k + 1) as f64);
            }
        }
    }
}
