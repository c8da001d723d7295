#![allow(dead_code)]

use magicbch::algebra::{so4_from_coeffs, Complex64, Mat2c, Mat4r, So4Coeffs, Vec3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform in the closed ball of radius `r`.
pub fn ball(rng: &mut ChaCha8Rng, r: f64) -> Vec3 {
    loop {
        let v =
            Vec3::new(rng.random_range(-r..=r), rng.random_range(-r..=r), rng.random_range(-r..=r));
        if v.norm() <= r {
            return v;
        }
    }
}

pub fn coeffs(rng: &mut ChaCha8Rng, bound: f64) -> So4Coeffs {
    So4Coeffs::from_array(std::array::from_fn(|_| rng.random_range(-bound..=bound)))
}

pub fn antisym(rng: &mut ChaCha8Rng, bound: f64) -> Mat4r {
    so4_from_coeffs(coeffs(rng, bound))
}

/// Uniform on SU(2) ≅ S³, built from a unit quaternion directly (no
/// exponential map involved).
pub fn random_su2(rng: &mut ChaCha8Rng) -> Mat2c {
    let q = loop {
        let q: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..=1.0));
        let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-3 && n <= 1.0 {
            break q.map(|x| x / n);
        }
    };
    let [w, x, y, z] = q;
    Mat2c::from_rows([
        [Complex64::new(w, z), Complex64::new(y, x)],
        [Complex64::new(-y, x), Complex64::new(w, -z)],
    ])
}

pub fn random_mat2c(rng: &mut ChaCha8Rng) -> Mat2c {
    Mat2c::from_fn(|_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

/// Least-squares slope of `log err` against `log ε`.
pub fn loglog_slope(eps: &[f64], err: &[f64]) -> f64 {
    let xs: Vec<f64> = eps.iter().map(|e| e.ln()).collect();
    let ys: Vec<f64> = err.iter().map(|e| e.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
