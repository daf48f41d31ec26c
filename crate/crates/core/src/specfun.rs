//! Real special functions: error functions, Dawson's integral, log-gamma,
//! Pochhammer symbols and terminating Gauss hypergeometric sums.
//!
//! Algorithms:
//!
//! * `erf`: positive-term series `e^{-x²} Σ 2ⁿx^{2n+1}/(2n+1)!!` below 2.5, Lentz continued
//!   fraction for `erfc` above.
//! * `dawson` / `erfi`: the positive-term series of `∫₀ˣ e^{t²} dt` below 8, the asymptotic
//!   expansion of Dawson's integral above (every term up to the smallest one is kept, which
//!   at x = 8 is below 1e-27).
//! * `ln_gamma`: Lanczos (g = 7, 9 terms) with the `Γ(x+1) = xΓ(x)` shift below one half.

use crate::error::{Error, Result};
use crate::scalar::{CompensatedSum, Real};

const SERIES_MAX_TERMS: usize = 10_000;

fn series_cutoff<T: Real>() -> T {
    T::lit(8.0)
}

/// Error function `erf(x) = 2/√π ∫₀ˣ e^{-t²} dt`.
pub fn erf<T: Real>(x: T) -> T {
    if x.is_nan() {
        return x;
    }
    if x < T::zero() {
        return -erf(-x);
    }
    if x == T::zero() {
        return T::zero();
    }
    if x < T::lit(2.5) {
        // e^{-x²} Σ 2ⁿ x^{2n+1} / (1·3·…·(2n+1)), all terms positive
        let x2 = x * x;
        let mut term = x;
        let mut acc = CompensatedSum::new();
        acc.add(term);
        for n in 0..SERIES_MAX_TERMS {
            term = term * (x2 + x2) / T::from_usize_lossy(2 * n + 3);
            acc.add(term);
            if term <= acc.value() * T::epsilon() {
                break;
            }
        }
        T::FRAC_2_SQRT_PI() * (-x2).exp() * acc.value()
    } else {
        T::one() - erfc_continued_fraction(x)
    }
}

/// `erfc(x)` for `x ≥ 2.5` by the continued fraction
/// `e^{-x²}/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + …))))`.
fn erfc_continued_fraction<T: Real>(x: T) -> T {
    let tiny = T::min_positive_value() / T::epsilon();
    let half = T::lit(0.5);
    // modified Lentz for b0 + a1/(b1 + a2/(b2 + ...)) with b_k = x, a_k = k/2
    let mut f = x;
    let mut c = x;
    let mut d = T::zero();
    for k in 1..SERIES_MAX_TERMS {
        let a = half * T::from_usize_lossy(k);
        d = x + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = d.recip();
        let delta = c * d;
        f = f * delta;
        if (delta - T::one()).abs() <= T::epsilon() {
            break;
        }
    }
    (-x * x).exp() / (T::PI().sqrt() * f)
}

/// `Σ x^{2n+1} / (n! (2n+1)) = ∫₀ˣ e^{t²} dt` for moderate `x ≥ 0`.
fn exp_square_integral_series<T: Real>(x: T) -> T {
    let x2 = x * x;
    let mut power = x; // x^{2n+1}/n!
    let mut acc = CompensatedSum::new();
    acc.add(power);
    for n in 1..SERIES_MAX_TERMS {
        power = power * x2 / T::from_usize_lossy(n);
        let term = power / T::from_usize_lossy(2 * n + 1);
        acc.add(term);
        if T::from_usize_lossy(n) > x2 && term <= acc.value() * T::epsilon() {
            break;
        }
    }
    acc.value()
}

/// Asymptotic series `D(x) ~ 1/(2x) Σ (2k-1)!!/(2x²)^k`, truncated at its smallest term.
fn dawson_asymptotic<T: Real>(x: T) -> T {
    let inv = (T::lit(2.0) * x * x).recip();
    let mut term = T::one();
    let mut acc = CompensatedSum::new();
    acc.add(term);
    for k in 1..SERIES_MAX_TERMS {
        let next = term * T::from_usize_lossy(2 * k - 1) * inv;
        if next >= term {
            break;
        }
        term = next;
        acc.add(term);
        if term <= acc.value() * T::epsilon() {
            break;
        }
    }
    acc.value() / (x + x)
}

/// Dawson's integral `F(x) = e^{-x²} ∫₀ˣ e^{y²} dy`.
pub fn dawson<T: Real>(x: T) -> T {
    if x.is_nan() {
        return x;
    }
    if x < T::zero() {
        return -dawson(-x);
    }
    if x == T::zero() {
        return T::zero();
    }
    if x < series_cutoff() {
        (-x * x).exp() * exp_square_integral_series(x)
    } else {
        dawson_asymptotic(x)
    }
}

/// Largest `|x|` accepted by [`erfi`]; 26 for `f64`.
///
/// Beyond `⌊√ln(MAX)⌋` the value `erfi(x) ≈ e^{x²}/(x√π)` is within a few units of the
/// overflow threshold and a typed error is returned instead.
pub fn erfi_limit<T: Real>() -> T {
    T::max_value().ln().sqrt().floor()
}

/// Imaginary error function `erfi(x) = -i erf(ix) = 2/√π ∫₀ˣ e^{t²} dt`.
///
/// Returns [`Error::Overflow`] for `|x| > erfi_limit()` rather than an infinity.
pub fn erfi<T: Real>(x: T) -> Result<T> {
    let limit = erfi_limit::<T>();
    if x.is_nan() {
        return Err(Error::Domain {
            func: "erfi",
            arg: f64::NAN,
            detail: "argument is NaN",
        });
    }
    if x.abs() > limit {
        return Err(Error::Overflow {
            func: "erfi",
            arg: x.to_f64_lossy(),
            limit: limit.to_f64_lossy(),
        });
    }
    Ok(erfi_unchecked(x))
}

fn erfi_unchecked<T: Real>(x: T) -> T {
    if x < T::zero() {
        return -erfi_unchecked(-x);
    }
    if x < series_cutoff() {
        T::FRAC_2_SQRT_PI() * exp_square_integral_series(x)
    } else {
        T::FRAC_2_SQRT_PI() * (x * x).exp() * dawson_asymptotic(x)
    }
}

/// `ln erfi(x)` for `x > 0`, finite for every finite positive argument.
pub fn ln_erfi<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::Domain {
            func: "ln_erfi",
            arg: x.to_f64_lossy(),
            detail: "requires a finite x > 0",
        });
    }
    if x < series_cutoff() {
        Ok(erfi_unchecked(x).ln())
    } else {
        Ok(x * x + T::FRAC_2_SQRT_PI().ln() + dawson_asymptotic(x).ln())
    }
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural logarithm of the Gamma function for `x > 0`.
pub fn ln_gamma<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::Domain {
            func: "ln_gamma",
            arg: x.to_f64_lossy(),
            detail: "requires a finite x > 0",
        });
    }
    if x < T::lit(0.5) {
        return Ok(ln_gamma(x + T::one())? - x.ln());
    }
    let z = x - T::one();
    let mut a = T::lit(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += T::lit(c) / (z + T::from_usize_lossy(i));
    }
    let t = z + T::lit(LANCZOS_G + 0.5);
    Ok(T::lit(0.5) * T::TAU().ln() + (z + T::lit(0.5)) * t.ln() - t + a.ln())
}

/// Rising factorial `(s)ₙ = s(s+1)…(s+n-1)`, defined for every real `s`.
pub fn pochhammer<T: Real>(s: T, n: u32) -> T {
    (0..n).fold(T::one(), |acc, k| acc * (s + T::from_u32(k).unwrap()))
}

/// Parameters of `₂F₁(-n, b; c; z)`, a polynomial of degree `n` in `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TerminatingHypergeometric<T> {
    pub n: u32,
    pub b: T,
    pub c: T,
    pub z: T,
}

impl<T: Real> TerminatingHypergeometric<T> {
    pub fn new(n: u32, b: T, c: T, z: T) -> Self {
        Self { n, b, c, z }
    }

    /// Checks that no denominator factor `c + k` with `0 ≤ k < n` vanishes.
    pub fn validate(&self) -> Result<()> {
        for k in 0..self.n {
            if self.c + T::from_u32(k).unwrap() == T::zero() {
                return Err(Error::InvalidParameter(format!(
                    "2F1(-{}, b; c; z) with c = {} hits a vanishing Pochhammer factor",
                    self.n, self.c
                )));
            }
        }
        Ok(())
    }

    pub fn eval(&self) -> Result<T> {
        hyp2f1_terminating(*self)
    }
}

/// `Σ_{k=0}^{n} (-n)_k (b)_k / ((c)_k k!) z^k`, summed with compensation.
pub fn hyp2f1_terminating<T: Real>(spec: TerminatingHypergeometric<T>) -> Result<T> {
    spec.validate()?;
    let TerminatingHypergeometric { n, b, c, z } = spec;
    let mut term = T::one();
    let mut acc = CompensatedSum::new();
    acc.add(term);
    for k in 0..n {
        let kf = T::from_u32(k).unwrap();
        term = term * (kf - T::from_u32(n).unwrap()) * (b + kf) / ((c + kf) * (kf + T::one())) * z;
        acc.add(term);
    }
    let value = acc.value();
    if !value.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "2F1(-{n}, {b}; {c}; {z}) is not finite"
        )));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn erf_basics() {
        assert_eq!(erf(0.0_f64), 0.0);
        for &x in &[0.1, 0.7, 2.4, 2.6, 4.0] {
            assert_eq!(erf(-x), -erf(x));
        }
        // reference values (Abramowitz & Stegun table 7.1)
        assert_relative_eq!(erf(0.5_f64), 0.520_499_877_813_046_5, epsilon = 1e-15);
        assert_relative_eq!(erf(2.5_f64), 0.999_593_047_982_555, epsilon = 1e-15);
        assert!(erf(10.0_f64) <= 1.0);
    }

    #[test]
    fn dawson_small_argument_taylor() {
        for &x in &[1e-6_f64, 1e-4, 1e-3] {
            let taylor = x - 2.0 * x * x * x / 3.0;
            assert_relative_eq!(dawson(x), taylor, max_relative = 1e-12);
        }
        assert_eq!(dawson(0.0_f64), 0.0);
    }

    #[test]
    fn dawson_continuous_across_switch() {
        let below = dawson(8.0_f64 - 1e-12);
        let above = dawson(8.0_f64);
        assert_relative_eq!(below, above, max_relative = 1e-12);
        let xb = 8.0_f64 - 1e-12;
        let ebelow = erfi(xb).unwrap() * (-xb * xb).exp();
        let eabove = erfi(8.0_f64).unwrap() * (-64.0_f64).exp();
        assert_relative_eq!(ebelow, eabove, max_relative = 1e-12);
    }

    #[test]
    fn erfi_small_and_overflow() {
        assert_eq!(erfi(0.0_f64).unwrap(), 0.0);
        let x = 1e-5_f64;
        assert_relative_eq!(erfi(x).unwrap(), 2.0 * x / std::f64::consts::PI.sqrt(), max_relative = 1e-9);
        assert_eq!(erfi_limit::<f64>(), 26.0);
        assert!(erfi(26.0_f64).unwrap().is_finite());
        assert!(matches!(erfi(26.5_f64), Err(Error::Overflow { .. })));
        assert!(matches!(erfi(-27.0_f64), Err(Error::Overflow { .. })));
    }

    #[test]
    fn ln_erfi_large_argument() {
        let x = 40.0_f64;
        let expected = x * x - (x * std::f64::consts::PI.sqrt()).ln() + (1.0 + 1.0 / (2.0 * x * x) + 3.0 / (4.0 * x.powi(4))).ln();
        assert_relative_eq!(ln_erfi(x).unwrap(), expected, max_relative = 1e-12);
        assert_relative_eq!(ln_erfi(3.0_f64).unwrap(), erfi(3.0_f64).unwrap().ln(), max_relative = 1e-15);
        assert!(ln_erfi(0.0_f64).is_err());
    }

    #[test]
    fn gamma_and_pochhammer() {
        assert_relative_eq!(ln_gamma(5.0_f64).unwrap(), 24.0_f64.ln(), epsilon = 1e-13);
        assert_relative_eq!(ln_gamma(0.5_f64).unwrap(), std::f64::consts::PI.sqrt().ln(), epsilon = 1e-14);
        assert_relative_eq!(ln_gamma(1e-3_f64).unwrap(), 6.907_178_885_383_853_5, epsilon = 1e-12);
        assert!(ln_gamma(0.0_f64).is_err());
        assert!(ln_gamma(-1.5_f64).is_err());

        assert_eq!(pochhammer(3.0_f64, 0), 1.0);
        assert_eq!(pochhammer(-7.25_f64, 0), 1.0);
        assert_eq!(pochhammer(3.0_f64, 2), 12.0);
        assert_relative_eq!(pochhammer(1.1_f64, 2), 1.1 * 2.1, max_relative = 1e-15);
        // finite product for nonpositive s
        assert_eq!(pochhammer(-2.0_f64, 3), 0.0);
        assert_relative_eq!(pochhammer(-0.5_f64, 2), -0.25, max_relative = 1e-15);
    }

    #[test]
    fn pochhammer_matches_gamma_ratio() {
        for &s in &[0.3_f64, 1.0, 2.75, 10.5] {
            for n in 0..12 {
                let ratio = (ln_gamma(s + n as f64).unwrap() - ln_gamma(s).unwrap()).exp();
                assert_relative_eq!(pochhammer(s, n), ratio, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn hypergeometric_small_cases() {
        let one = hyp2f1_terminating(TerminatingHypergeometric::new(0, 3.3, -0.7, 12.0)).unwrap();
        assert_eq!(one, 1.0);
        let (b, c, z) = (2.5_f64, 1.5, 0.3);
        let two = hyp2f1_terminating(TerminatingHypergeometric::new(1, b, c, z)).unwrap();
        assert_relative_eq!(two, 1.0 - b / c * z, max_relative = 1e-15);
        for n in 0..6 {
            let v = hyp2f1_terminating(TerminatingHypergeometric::new(n, 1.7, 0.4, 0.0)).unwrap();
            assert_eq!(v, 1.0);
        }
    }

    #[test]
    fn hypergeometric_rejects_vanishing_denominator() {
        assert!(hyp2f1_terminating(TerminatingHypergeometric::new(3, 1.0, -2.0, 0.5)).is_err());
        assert!(hyp2f1_terminating(TerminatingHypergeometric::new(3, 1.0, 0.0, 0.5)).is_err());
        // c = -n never appears as a denominator factor
        assert!(hyp2f1_terminating(TerminatingHypergeometric::new(3, 1.0, -3.0, 0.5)).is_ok());
    }

    #[test]
    fn single_precision_runs() {
        assert_relative_eq!(erf(0.5_f32), 0.520_499_9_f32, max_relative = 1e-6);
        assert_relative_eq!(dawson(1.0_f32), 0.538_079_5_f32, max_relative = 1e-6);
        assert_eq!(erfi_limit::<f32>(), 9.0);
    }
}
