//! Adaptive Gauss–Kronrod (7, 15) quadrature.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
/// Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl QuadOptions {
    pub fn tol(tol: f64) -> Self {
        Self {
            abs_tol: tol,
            rel_tol: tol,
            max_intervals: 4000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    /// Sum of `|Kronrod - Gauss|` over the final partition.
    pub error: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (i, (&x, &w)) in XGK[..7].iter().zip(&WGK[..7]).enumerate() {
        let pair = f(c - h * x) + f(c + h * x);
        kronrod += w * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    Panel {
        a,
        b,
        value: kronrod * h,
        error: ((kronrod - gauss) * h).abs(),
    }
}

/// `∫ₐᵇ f` with `abs_tol = rel_tol = tol`.
pub fn quadrature(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<QuadResult> {
    quadrature_with(f, a, b, QuadOptions::tol(tol))
}

/// Globally adaptive: the panel with the largest error estimate is halved until the total
/// estimate is below `max(abs_tol, rel_tol·|I|)`.
pub fn quadrature_with(f: impl Fn(f64) -> f64, a: f64, b: f64, options: QuadOptions) -> Result<QuadResult> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidParameter(format!("quadrature limits must be finite, got [{a}, {b}]")));
    }
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            error: 0.0,
            intervals: 0,
        });
    }
    let mut panels = vec![gk15(&f, a, b)];
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        if !value.is_finite() {
            return Err(Error::Domain {
                func: "quadrature",
                arg: value,
                detail: "integrand produced a non-finite value",
            });
        }
        if error <= options.abs_tol.max(options.rel_tol * value.abs()) {
            return Ok(QuadResult {
                value,
                error,
                intervals: panels.len(),
            });
        }
        if panels.len() >= options.max_intervals {
            return Err(Error::NoConvergence {
                what: "adaptive quadrature",
                iterations: panels.len(),
                estimate: value,
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .fold(0, |best, (i, p)| if p.error > panels[best].error { i } else { best });
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            return Err(Error::NoConvergence {
                what: "adaptive quadrature (interval underflow)",
                iterations: panels.len(),
                estimate: value,
            });
        }
        panels.push(gk15(&f, p.a, mid));
        panels.push(gk15(&f, mid, p.b));
    }
}

/// `∫ₐ^∞ f` through `x = a + t/(1-t)`, `t ∈ [0, 1)`.
pub fn quadrature_semi_infinite(f: impl Fn(f64) -> f64, a: f64, tol: f64) -> Result<QuadResult> {
    quadrature(
        |t| {
            if t >= 1.0 {
                return 0.0;
            }
            let s = 1.0 - t;
            let v = f(a + t / s) / (s * s);
            if v.is_finite() {
                v
            } else {
                0.0
            }
        },
        0.0,
        1.0,
        tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomial_is_exact() {
        let r = quadrature(|x| x * x, 0.0, 1.0, 1e-14).unwrap();
        assert_relative_eq!(r.value, 1.0 / 3.0, epsilon = 1e-15);
        assert_eq!(r.intervals, 1);
    }

    #[test]
    fn gaussian_tail() {
        let r = quadrature_semi_infinite(|x| (-x * x).exp(), 0.0, 1e-12).unwrap();
        assert_relative_eq!(r.value, std::f64::consts::PI.sqrt() / 2.0, max_relative = 1e-11);
    }

    #[test]
    fn deterministic() {
        let f = |x: f64| (10.0 * x).sin() * (-x).exp();
        let a = quadrature(f, 0.0, 7.0, 1e-12).unwrap();
        let b = quadrature(f, 0.0, 7.0, 1e-12).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
    }

    #[test]
    fn reports_non_convergence_with_estimate() {
        let opts = QuadOptions {
            abs_tol: 1e-15,
            rel_tol: 1e-15,
            max_intervals: 3,
        };
        match quadrature_with(|x: f64| x.sqrt(), 0.0, 1.0, opts) {
            Err(Error::NoConvergence { estimate, .. }) => assert!((estimate - 2.0 / 3.0).abs() < 1e-3),
            other => panic!("{other:?}"),
        }
    }
}
