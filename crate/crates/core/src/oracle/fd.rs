//! Central differences with Richardson extrapolation (Ridders' tableau).

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdResult {
    pub value: f64,
    /// Difference between the accepted entry and its neighbours in the tableau.
    pub error: f64,
}

const LEVELS: usize = 10;
const SHRINK: f64 = 1.4;

/// First (`order = 1`) or second (`order = 2`) derivative of `f` at `x`, starting from step `h`.
pub fn finite_difference(f: impl Fn(f64) -> f64, x: f64, order: u8, h: f64) -> FdResult {
    assert!(order == 1 || order == 2, "finite_difference supports order 1 or 2");
    assert!(h > 0.0, "step must be positive");
    let stencil = |h: f64| match order {
        1 => (f(x + h) - f(x - h)) / (2.0 * h),
        _ => (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h),
    };
    let ratio = SHRINK * SHRINK;
    let mut table = [[0.0_f64; LEVELS]; LEVELS];
    let mut step = h;
    table[0][0] = stencil(step);
    let mut best = FdResult {
        value: table[0][0],
        error: f64::INFINITY,
    };
    for i in 1..LEVELS {
        step /= SHRINK;
        table[0][i] = stencil(step);
        let mut factor = ratio;
        for j in 1..=i {
            table[j][i] = (table[j - 1][i] * factor - table[j - 1][i - 1]) / (factor - 1.0);
            factor *= ratio;
            let err = (table[j][i] - table[j - 1][i])
                .abs()
                .max((table[j][i] - table[j - 1][i - 1]).abs());
            if err <= best.error {
                best = FdResult {
                    value: table[j][i],
                    error: err,
                };
            }
        }
        if (table[i][i] - table[i - 1][i - 1]).abs() >= 2.0 * best.error {
            break;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_slope() {
        let r = finite_difference(|x| x * x * x, 2.0, 1, 0.1);
        assert!((r.value - 12.0).abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn quadratic_curvature() {
        let r = finite_difference(|x| 3.0 * x * x - x + 5.0, -1.3, 2, 0.5);
        assert!((r.value - 6.0).abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn transcendental() {
        let r = finite_difference(f64::exp, 0.7, 1, 0.2);
        assert!((r.value - 0.7_f64.exp()).abs() < 1e-11);
        assert!(r.error < 1e-9);
    }
}
