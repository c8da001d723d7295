mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use magicbch::algebra::{
    coeffs_from_so4, hermitian_from_vec, so4_from_coeffs, tensor_product, vec_from_hermitian,
    Complex64, Mat2c, Mat4c, Mat4r, So4Coeffs, Vec3, I,
};
use magicbch::magic::{conjugate_by_r, merge, split, split_coeffs, su2su2_to_so4, SplitPair};
use magicbch::oracle::{
    bch_reference, bch_trunc3, mat_exp_taylor, mat_log_near_identity, OracleConfig,
};
use magicbch::so4::{bch_so4, bch_so4_entries, so4_exp, so4_log};
use magicbch::su2::{bch_coefficients, bch_su2, su2_algebra_matrix, su2_exp, su2_log, BranchMode};
use proptest::prelude::*;

use common::*;

fn vec3(r: f64) -> impl Strategy<Value = Vec3> {
    (-r..r, -r..r, -r..r).prop_map(|(a, b, c)| Vec3::new(a, b, c))
}

fn so4c(bound: f64) -> impl Strategy<Value = So4Coeffs> {
    prop::array::uniform6(-bound..bound).prop_map(So4Coeffs::from_array)
}

/// Cofactor expansion along the first row, for 2×2 and 4×4.
fn det_cofactor<const N: usize>(m: &[[Complex64; N]; N]) -> Complex64 {
    fn rec(rows: &[Vec<Complex64>]) -> Complex64 {
        let n = rows.len();
        if n == 1 {
            return rows[0][0];
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for col in 0..n {
            let minor: Vec<Vec<Complex64>> = rows[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, x)| *x).collect())
                .collect();
            let sign = if col % 2 == 0 { 1.0 } else { -1.0 };
            acc += rows[0][col] * rec(&minor) * sign;
        }
        acc
    }
    rec(&m.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

// ---------------------------------------------------------------- algebra

proptest! {
    #[test]
    fn so4_coeff_round_trip_is_bit_exact(c in so4c(10.0)) {
        prop_assert_eq!(coeffs_from_so4(&so4_from_coeffs(c)).unwrap(), c);
    }

    #[test]
    fn hermitian_from_vec_is_traceless_hermitian(v in vec3(5.0)) {
        let h = hermitian_from_vec(v);
        prop_assert_eq!(h.trace(), Complex64::new(0.0, 0.0));
        prop_assert_eq!(h.dagger(), h);
        prop_assert_eq!(vec_from_hermitian(&h), v);
    }

    #[test]
    fn cross_product_laws(u in vec3(3.0), v in vec3(3.0), w in vec3(3.0), s in -2.0..2.0f64) {
        let c = u.cross(v);
        let scale = (u.norm() * v.norm()).max(1e-300);
        prop_assert!(c.dot(u).abs() <= 1e-14 * scale * u.norm().max(1.0));
        prop_assert!(c.dot(v).abs() <= 1e-14 * scale * v.norm().max(1.0));
        prop_assert_eq!(v.cross(u), -c);
        let lin = (u * s + w).cross(v) - (u.cross(v) * s + w.cross(v));
        prop_assert!(lin.max_abs() <= 1e-14 * (1.0 + u.norm() * v.norm() * 3.0 + w.norm() * v.norm()));
    }

    #[test]
    fn norm_is_zero_only_at_zero(v in vec3(1.0)) {
        prop_assert!(v.norm() >= 0.0);
        prop_assert_eq!(v.norm() == 0.0, v == Vec3::ZERO);
    }

    #[test]
    fn complex_field_axioms(a in (-5.0..5.0f64, -5.0..5.0f64), b in (-5.0..5.0f64, -5.0..5.0f64)) {
        let (a, b) = (Complex64::new(a.0, a.1), Complex64::new(b.0, b.1));
        prop_assert!(((a * b).norm() - a.norm() * b.norm()).abs() < 1e-13);
        prop_assert!(((a + b).conj() - (a.conj() + b.conj())).norm() < 1e-15);
        prop_assert!(((a * b).conj() - a.conj() * b.conj()).norm() < 1e-13);
    }
}

#[test]
fn dagger_reverses_products() {
    let mut rng = rng(1);
    for _ in 0..1000 {
        let (u, v) = (random_mat2c(&mut rng), random_mat2c(&mut rng));
        let lhs = (u * v).dagger();
        let rhs = v.dagger() * u.dagger();
        assert!(lhs.distance(&rhs) <= 1e-14 * lhs.frobenius_norm().max(1.0));
        assert_eq!(u.dagger().dagger(), u);
    }
}

#[test]
fn matrix_product_is_associative() {
    let mut rng = rng(2);
    for _ in 0..200 {
        let (a, b, c) = (random_mat2c(&mut rng), random_mat2c(&mut rng), random_mat2c(&mut rng));
        assert!(((a * b) * c).distance(&(a * (b * c))) < 1e-14);
    }
}

#[test]
fn mixed_product_property() {
    let mut rng = rng(3);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let [a, b, c, d] = std::array::from_fn(|_| random_mat2c(&mut rng));
        let lhs = tensor_product(&a, &b) * tensor_product(&c, &d);
        let rhs = tensor_product(&(a * c), &(b * d));
        worst = worst.max(lhs.distance(&rhs));
    }
    assert!(worst < 1e-13, "worst {worst:e}");
}

#[test]
fn det_matches_cofactor_expansion() {
    let mut rng = rng(4);
    for _ in 0..200 {
        let m = random_mat2c(&mut rng);
        assert!((m.det() - det_cofactor(&m.0)).norm() < 1e-14);
        let k = tensor_product(&m, &random_mat2c(&mut rng));
        assert!((k.det() - det_cofactor(&k.0)).norm() < 1e-13);
        // trace is the diagonal sum
        assert_eq!(m.trace(), m[(0, 0)] + m[(1, 1)]);
    }
}

// ---------------------------------------------------------------- su2

#[test]
fn cross_product_dictionary() {
    let mut rng = rng(5);
    for _ in 0..1000 {
        let (x, y) = (ball(&mut rng, 3.0), ball(&mut rng, 3.0));
        let (hx, hy) = (hermitian_from_vec(x), hermitian_from_vec(y));
        let rhs = hx.commutator(&hy).scale(Complex64::new(0.0, -0.5));
        assert!(hermitian_from_vec(x.cross(y)).distance(&rhs) < 1e-13);
    }
}

#[test]
fn su2_exp_agrees_with_taylor_oracle() {
    let mut rng = rng(6);
    let cfg = OracleConfig::default();
    for _ in 0..300 {
        let v = ball(&mut rng, 3.0);
        let oracle = mat_exp_taylor(&su2_algebra_matrix(v), &cfg).unwrap();
        assert!(su2_exp(v).distance(&oracle) < 1e-13);
    }
}

#[test]
fn su2_log_round_trip() {
    let mut rng = rng(7);
    for _ in 0..1000 {
        let v = ball(&mut rng, PI - 1e-3);
        let back = su2_log(&su2_exp(v)).unwrap();
        assert!((back - v).norm() < 1e-11, "{v:?} -> {back:?}");
    }
}

#[test]
fn su2_group_law_paper_mode() {
    let mut rng = rng(8);
    let mut checked = 0;
    for _ in 0..1000 {
        let (x, y) = (ball(&mut rng, 0.7), ball(&mut rng, 0.7));
        let k = bch_coefficients(x, y, BranchMode::PaperFaithful).unwrap();
        if k.theta > FRAC_PI_2 {
            continue;
        }
        let z = bch_su2(x, y, BranchMode::PaperFaithful).unwrap();
        assert!(su2_exp(z).distance(&(su2_exp(x) * su2_exp(y))) < 1e-12);
        checked += 1;
    }
    assert!(checked > 900);
}

#[test]
fn su2_modes_agree_on_principal_domain() {
    let mut rng = rng(9);
    for _ in 0..1000 {
        let (x, y) = (ball(&mut rng, 0.7), ball(&mut rng, 0.7));
        let zp = bch_su2(x, y, BranchMode::PaperFaithful).unwrap();
        let zc = bch_su2(x, y, BranchMode::BranchCorrected).unwrap();
        assert!((zp - zc).max_abs() < 1e-13);
    }
}

#[test]
fn su2_bch_matches_log_oracle() {
    let mut rng = rng(10);
    let cfg = OracleConfig::default();
    for _ in 0..300 {
        let (x, y) = (ball(&mut rng, 1.0), ball(&mut rng, 1.0));
        let l = bch_reference(&su2_algebra_matrix(x), &su2_algebra_matrix(y), &cfg).unwrap();
        let z_ref = vec_from_hermitian(&l.scale(-I));
        let z = bch_su2(x, y, BranchMode::BranchCorrected).unwrap();
        assert!((z - z_ref).max_abs() < 1e-12);
    }
}

#[test]
fn su2_order_three_agreement() {
    let mut rng = rng(11);
    let eps = [0.1, 0.05, 0.025];
    for _ in 0..20 {
        let (x, y) = (ball(&mut rng, 1.0), ball(&mut rng, 1.0));
        let err: Vec<f64> = eps
            .iter()
            .map(|&e| {
                let z = bch_su2(x * e, y * e, BranchMode::PaperFaithful).unwrap();
                let t = bch_trunc3(&su2_algebra_matrix(x * e), &su2_algebra_matrix(y * e));
                (z - vec_from_hermitian(&t.scale(-I))).norm()
            })
            .collect();
        let slope = loglog_slope(&eps, &err);
        assert!(slope >= 3.8, "slope {slope} for errors {err:?}");
    }
}

// ---------------------------------------------------------------- magic

proptest! {
    #[test]
    fn split_merge_are_inverse(c in so4c(5.0)) {
        let a = so4_from_coeffs(c);
        prop_assert!(merge(split(&a).unwrap()).distance(&a) < 1e-14);
    }

    #[test]
    fn merge_split_are_inverse(a1 in vec3(5.0), a2 in vec3(5.0)) {
        let p = SplitPair::new(a1, a2);
        let q = split(&merge(p)).unwrap();
        prop_assert!((q.a1 - a1).max_abs() < 1e-14 && (q.a2 - a2).max_abs() < 1e-14);
    }
}

#[test]
fn factors_commute() {
    let mut rng = rng(12);
    for _ in 0..1000 {
        let x = merge(SplitPair::new(ball(&mut rng, 2.0), Vec3::ZERO));
        let y = merge(SplitPair::new(Vec3::ZERO, ball(&mut rng, 2.0)));
        assert!(x.commutator(&y).frobenius_norm() < 1e-13);
    }
}

#[test]
fn double_cover_kernel() {
    let mut rng = rng(13);
    for _ in 0..1000 {
        let (u, v) = (random_su2(&mut rng), random_su2(&mut rng));
        let o = su2su2_to_so4(&u, &v).unwrap();
        let o_neg = su2su2_to_so4(&-u, &-v).unwrap();
        assert!((o - o_neg).max_abs() <= 1e-14);
    }
}

#[test]
fn group_map_is_a_homomorphism() {
    let mut rng = rng(14);
    for _ in 0..300 {
        let [u1, v1, u2, v2] = std::array::from_fn(|_| random_su2(&mut rng));
        let lhs = su2su2_to_so4(&(u1 * u2), &(v1 * v2)).unwrap();
        let rhs = su2su2_to_so4(&u1, &v1).unwrap() * su2su2_to_so4(&u2, &v2).unwrap();
        assert!(lhs.distance(&rhs) < 1e-13);
    }
}

#[test]
fn self_dual_image_is_left_isoclinic() {
    // R†(U ⊗ 1)R is a left-isoclinic rotation: it commutes with every
    // anti-self-dual generator.
    let mut rng = rng(15);
    let u = random_su2(&mut rng);
    let o = conjugate_by_r(&tensor_product(&u, &Mat2c::identity()));
    for _ in 0..50 {
        let g = merge(SplitPair::new(Vec3::ZERO, ball(&mut rng, 1.0))).to_complex();
        assert!(o.commutator(&g).frobenius_norm() < 1e-13);
    }
}

// ---------------------------------------------------------------- so4

#[test]
fn so4_exp_agrees_with_taylor_oracle() {
    let mut rng = rng(16);
    let cfg = OracleConfig::default();
    for _ in 0..300 {
        let a = antisym(&mut rng, 1.0);
        let e = so4_exp(&a).unwrap();
        assert!(e.distance(&mat_exp_taylor(&a, &cfg).unwrap()) < 1e-12);
        assert!(e.is_orthogonal(1e-12));
        assert!((e.det() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn so4_log_round_trip() {
    let mut rng = rng(17);
    let mut checked = 0;
    while checked < 1000 {
        let a = antisym(&mut rng, 1.5);
        let p = split(&a).unwrap();
        if p.a1.norm() >= FRAC_PI_2 || p.a2.norm() >= FRAC_PI_2 {
            continue;
        }
        let back = so4_log(&so4_exp(&a).unwrap()).unwrap();
        assert!(back.distance(&a) < 1e-11);
        checked += 1;
    }
}

#[test]
fn so4_log_inverts_exp_on_group() {
    // Beyond the round-trip domain the lift changes but exp(log O) = O.
    let mut rng = rng(18);
    for _ in 0..300 {
        let (u, v) = (random_su2(&mut rng), random_su2(&mut rng));
        let o = su2su2_to_so4(&u, &v).unwrap();
        match so4_log(&o) {
            Ok(a) => assert!(so4_exp(&a).unwrap().distance(&o) < 1e-11),
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn so4_group_law_both_modes() {
    let mut rng = rng(19);
    for (mode, bound) in [(BranchMode::PaperFaithful, 0.3), (BranchMode::BranchCorrected, 0.8)] {
        for _ in 0..1000 {
            let (a, b) = (antisym(&mut rng, bound), antisym(&mut rng, bound));
            let r = bch_so4(&a, &b, mode).unwrap();
            if !r.within_branch() {
                continue;
            }
            let lhs = so4_exp(&r.result).unwrap();
            let rhs = so4_exp(&a).unwrap() * so4_exp(&b).unwrap();
            assert!(lhs.distance(&rhs) < 1e-11);
            assert_eq!(r.result.antisymmetry_defect(), 0.0);
        }
    }
}

#[test]
fn so4_bch_matches_log_oracle() {
    let mut rng = rng(20);
    let cfg = OracleConfig::default();
    for _ in 0..300 {
        let (a, b) = (antisym(&mut rng, 0.3), antisym(&mut rng, 0.3));
        let reference = bch_reference(&a, &b, &cfg).unwrap();
        let r = bch_so4(&a, &b, BranchMode::PaperFaithful).unwrap();
        assert!(r.result.distance(&reference) < 1e-11);
    }
}

#[test]
fn two_path_equivalence() {
    let mut rng = rng(21);
    for mode in [BranchMode::PaperFaithful, BranchMode::BranchCorrected] {
        for _ in 0..1000 {
            let (f, g) = (coeffs(&mut rng, 0.3), coeffs(&mut rng, 0.3));
            let e = bch_so4_entries(f, g, mode).unwrap();
            let r = bch_so4(&so4_from_coeffs(f), &so4_from_coeffs(g), mode).unwrap();
            assert!(e.max_abs_diff(r.coeffs()) < 1e-13);
        }
    }
}

#[test]
fn channel_decoupling() {
    let mut rng = rng(22);
    for _ in 0..1000 {
        let a = merge(SplitPair::new(ball(&mut rng, 1.0), Vec3::ZERO));
        let b = merge(SplitPair::new(Vec3::ZERO, ball(&mut rng, 1.0)));
        let r = bch_so4(&a, &b, BranchMode::PaperFaithful).unwrap();
        assert!(r.result.distance(&(a + b)) < 1e-13);
    }
}

#[test]
fn so4_order_three_agreement() {
    let mut rng = rng(23);
    let eps = [0.1, 0.05, 0.025];
    for _ in 0..20 {
        let (a, b) = (antisym(&mut rng, 1.0), antisym(&mut rng, 1.0));
        let err: Vec<f64> = eps
            .iter()
            .map(|&e| {
                let (ea, eb) = (a.scale_real(e), b.scale_real(e));
                bch_so4(&ea, &eb, BranchMode::PaperFaithful)
                    .unwrap()
                    .result
                    .distance(&bch_trunc3(&ea, &eb))
            })
            .collect();
        let slope = loglog_slope(&eps, &err);
        assert!(slope >= 3.8, "slope {slope} for errors {err:?}");
    }
}

// ---------------------------------------------------------------- oracle

#[test]
fn oracle_exp_log_round_trip() {
    let mut rng = rng(24);
    let cfg = OracleConfig::default();
    for _ in 0..1000 {
        let mut m = antisym(&mut rng, 1.0);
        let n = m.frobenius_norm();
        if n >= 1.0 {
            m = m.scale_real(0.99 / n);
        }
        let back = mat_log_near_identity(&mat_exp_taylor(&m, &cfg).unwrap(), &cfg).unwrap();
        assert!(back.distance(&m) < 1e-12);
    }
}

#[test]
fn oracle_exp_additive_on_commuting_inputs() {
    let mut rng = rng(25);
    let cfg = OracleConfig::default();
    for _ in 0..300 {
        // f12 and f34 planes commute
        let a = so4_from_coeffs(So4Coeffs {
            f12: rng_f(&mut rng),
            f34: rng_f(&mut rng),
            ..So4Coeffs::ZERO
        });
        let b = so4_from_coeffs(So4Coeffs {
            f12: rng_f(&mut rng),
            f34: rng_f(&mut rng),
            ..So4Coeffs::ZERO
        });
        let lhs = mat_exp_taylor(&a, &cfg).unwrap() * mat_exp_taylor(&b, &cfg).unwrap();
        assert!(lhs.distance(&mat_exp_taylor(&(a + b), &cfg).unwrap()) < 1e-13);
    }
}

fn rng_f(rng: &mut rand_chacha::ChaCha8Rng) -> f64 {
    use rand::Rng;
    rng.random_range(-1.0..1.0)
}

#[test]
fn oracle_complex_log_round_trip() {
    let mut rng = rng(26);
    let cfg = OracleConfig::default();
    for _ in 0..200 {
        let v = ball(&mut rng, 1.5);
        let l = mat_log_near_identity(&su2_exp(v), &cfg).unwrap();
        assert!(l.distance(&su2_algebra_matrix(v)) < 1e-12);
        let m = Mat4c::from_real(&antisym(&mut rng, 0.2));
        let e = mat_exp_taylor(&m, &cfg).unwrap();
        assert!(mat_log_near_identity(&e, &cfg).unwrap().distance(&m) < 1e-12);
    }
}

#[test]
fn split_of_so4_coefficients_matches_split_of_matrix() {
    let mut rng = rng(27);
    for _ in 0..100 {
        let c = coeffs(&mut rng, 2.0);
        assert_eq!(split_coeffs(c), split(&so4_from_coeffs(c)).unwrap());
        let _: Mat4r = merge(split_coeffs(c));
    }
}
