use num_rational::BigRational;
use pt_core::oracle::quadrature;
use pt_core::specfun::{dawson, erf, erfi, hyp2f1_terminating, TerminatingHypergeometric};

const SQRT_PI: f64 = 1.772_453_850_905_516;

fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap()
}

/// Term-by-term sum in exact rationals of the binary inputs.
fn hyp2f1_exact(n: u32, b: f64, c: f64, z: f64) -> f64 {
    use num_traits::{One, ToPrimitive, Zero};
    let (b, c, z) = (rational(b), rational(c), rational(z));
    let neg_n = BigRational::from_integer((-(n as i64)).into());
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for k in 0..n {
        let kk = BigRational::from_integer((k as i64).into());
        let num = (&neg_n + &kk) * (&b + &kk) * &z;
        let den = (&c + &kk) * (&kk + BigRational::one());
        assert!(!den.is_zero());
        term = term * num / den;
        sum += &term;
    }
    sum.to_f64().unwrap()
}

#[test]
fn erf_at_one_matches_quadrature() {
    let q = quadrature(|t| (-t * t).exp(), 0.0, 1.0, 1e-15).unwrap().value * 2.0 / SQRT_PI;
    assert!((erf(1.0_f64) - q).abs() <= 1e-12);
}

#[test]
fn dawson_and_erfi_at_one_match_quadrature() {
    let integral = quadrature(|y| (y * y).exp(), 0.0, 1.0, 1e-15).unwrap().value;
    let d = (-1.0_f64).exp() * integral;
    assert!((dawson(1.0_f64) - d).abs() <= 1e-12 * d);
    let e = 2.0 / SQRT_PI * integral;
    assert!((erfi(1.0_f64).unwrap() - e).abs() <= 1e-12 * e);
}

#[test]
fn dawson_matches_quadrature_on_grid() {
    for i in 1..=40 {
        let x = 0.25 * i as f64;
        // e^{y² - x²} keeps the integrand bounded by one
        let q = quadrature(|y| (y * y - x * x).exp(), 0.0, x, 1e-15).unwrap().value;
        assert!((dawson(x) - q).abs() <= 1e-12 * q, "x = {x}: {} vs {q}", dawson(x));
    }
}

#[test]
fn erfi_dawson_identity_dense_grid() {
    for i in 1..=2000 {
        let x = 10.0 * i as f64 / 2000.0;
        let lhs = erfi(x).unwrap();
        let rhs = 2.0 / SQRT_PI * (x * x).exp() * dawson(x);
        assert!((lhs - rhs).abs() <= 1e-12 * lhs, "x = {x}");
    }
}

#[test]
fn odd_and_monotone() {
    let mut prev = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for i in -400..=400 {
        let x = i as f64 / 40.0;
        assert_eq!(erf(x), -erf(-x));
        assert_eq!(dawson(x), -dawson(-x));
        assert_eq!(erfi(x).unwrap(), -erfi(-x).unwrap());
        let cur = (erf(x), erfi(x).unwrap());
        if x.abs() < 5.0 {
            assert!(cur.0 > prev.0, "erf not increasing at {x}");
        }
        assert!(cur.1 > prev.1, "erfi not increasing at {x}");
        assert!(erf(x).abs() < 1.0 || x.abs() > 5.0);
        prev = cur;
    }
}

#[test]
fn hyp2f1_matches_exact_rational_sum() {
    let cases = [
        (3, 2.5, 1.5, 0.3),
        (0, 7.0, 2.0, 0.9),
        (1, -1.25, 0.75, -2.0),
        (5, 4.5, 0.5, -0.7),
        (8, -3.75, 2.25, 1.5),
        (12, 10.5, 6.5, -0.25),
    ];
    for (n, b, c, z) in cases {
        let got = hyp2f1_terminating(TerminatingHypergeometric::new(n, b, c, z)).unwrap();
        let want = hyp2f1_exact(n, b, c, z);
        assert!((got - want).abs() <= 1e-13 * want.abs().max(1.0), "{n} {b} {c} {z}: {got} vs {want}");
    }
}

#[test]
fn hyp2f1_at_zero_is_one() {
    for n in 0..10 {
        for &(b, c) in &[(0.5, 1.5), (-2.5, 3.25), (4.0, 0.5)] {
            assert_eq!(hyp2f1_terminating(TerminatingHypergeometric::new(n, b, c, 0.0)).unwrap(), 1.0);
        }
    }
}
