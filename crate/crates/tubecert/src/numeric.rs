//! Stable scalar kernels and adaptive Gauss-Kronrod quadrature.
//!
//! The length thresholds used elsewhere in the crate involve acosh of values
//! barely above 1 and cosh(t) - 1 for small t, both of which lose most of
//! their digits when evaluated naively. The kernels here keep full relative
//! accuracy in those regimes.

/// acosh(1 + y) for y >= 0, free of cancellation near y = 0.
#[inline]
pub(crate) fn acosh1p(y: f64) -> f64 {
    debug_assert!(y >= 0.0);
    (y + (y * (2.0 + y)).sqrt()).ln_1p()
}

/// cosh(t) - 1 evaluated as 2 sinh^2(t/2).
#[inline]
pub(crate) fn cosh_minus_one(t: f64) -> f64 {
    let s = (0.5 * t).sinh();
    2.0 * s * s
}

/// sinh(x) - x with full relative accuracy for small x.
///
/// Uses the odd series for |x| <= 0.5 (the only range the crate needs) and
/// falls back to direct evaluation elsewhere.
pub(crate) fn sinh_minus_x(x: f64) -> f64 {
    if x.abs() > 0.5 {
        return x.sinh() - x;
    }
    let x2 = x * x;
    let mut term = x * x2 / 6.0;
    let mut sum = term;
    let mut n = 3.0;
    loop {
        term *= x2 / ((n + 1.0) * (n + 2.0));
        n += 2.0;
        let next = sum + term;
        if next == sum {
            return sum;
        }
        sum = next;
    }
}

// 15-point Kronrod abscissae on [0, 1]; odd indices are the embedded 7-point
// Gauss nodes. Written in the published 17-digit form.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 7] = [
    0.991_455_371_120_812_64,
    0.949_107_912_342_758_52,
    0.864_864_423_359_769_07,
    0.741_531_185_599_394_44,
    0.586_087_235_467_691_13,
    0.405_845_151_377_397_17,
    0.207_784_955_007_898_47,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_553,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_41,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_83,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_69,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_39,
];

/// One Gauss-Kronrod 15(7) panel. Returns the Kronrod estimate and
/// |K15 - G7| as the error estimate.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;

    for (j, &x) in XGK.iter().enumerate() {
        let dx = half * x;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kronrod += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }

    kronrod *= half;
    gauss *= half;
    (kronrod, (kronrod - gauss).abs())
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let (value, err) = gk15(f, a, b);
    if err <= tol || depth == 0 {
        return value;
    }
    let mid = 0.5 * (a + b);
    adaptive(f, a, mid, 0.5 * tol, depth - 1) + adaptive(f, mid, b, 0.5 * tol, depth - 1)
}

/// Adaptive Gauss-Kronrod integration of `f` over [a, b].
///
/// Bisects until the per-panel error estimate meets the mixed tolerance
/// `max(abs_tol, rel_tol * |I|)` distributed over the subintervals.
pub(crate) fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_depth: u32,
) -> f64 {
    if a == b {
        return 0.0;
    }
    let (first, _) = gk15(&f, a, b);
    let tol = abs_tol.max(rel_tol * first.abs());
    adaptive(&f, a, b, tol, max_depth)
}

#[cfg(test)]
mod tests {
    use super::*;

    const ABS: f64 = 1e-10;
    const REL: f64 = 1e-12;

    #[test]
    fn kronrod_weights_sum_to_interval_length() {
        let wgk: f64 = WGK[7] + 2.0 * WGK[..7].iter().sum::<f64>();
        let wg: f64 = WG[3] + 2.0 * WG[..3].iter().sum::<f64>();
        assert!((wgk - 2.0).abs() < 1e-15, "kronrod sum {wgk}");
        assert!((wg - 2.0).abs() < 1e-15, "gauss sum {wg}");
    }

    #[test]
    fn integrates_cosh_exactly() {
        let v = integrate(f64::cosh, 0.0, 1.0, ABS, REL, 60);
        assert!((v - 1f64.sinh()).abs() < 1e-14);
    }

    #[test]
    fn integrates_polynomial_beyond_gauss_degree() {
        // x^10 on [0, 2]: inside the Kronrod degree, outside plain midpoint.
        let v = integrate(|x| x.powi(10), 0.0, 2.0, ABS, REL, 60);
        let exact = 2f64.powi(11) / 11.0;
        assert!((v - exact).abs() / exact < 1e-14);
    }

    #[test]
    fn integrates_oscillatory_integrand() {
        let v = integrate(f64::sin, 0.0, std::f64::consts::PI, ABS, REL, 60);
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn handles_tiny_scale_without_stalling() {
        let v = integrate(|x| 1e-9 * (2.0 * x).cosh().sqrt(), 0.0, 1.0, ABS, REL, 60);
        let reference = 1.3171893821400083e-9;
        assert!((v - reference).abs() / reference < 1e-9);
    }

    #[test]
    fn empty_interval_is_zero() {
        assert_eq!(integrate(f64::cosh, 1.0, 1.0, ABS, REL, 60), 0.0);
    }

    #[test]
    fn acosh1p_matches_direct_form_away_from_one() {
        for y in [0.5f64, 1.0, 3.0, 10.0] {
            let direct = (1.0 + y).acosh();
            assert!((acosh1p(y) - direct).abs() <= 4.0 * f64::EPSILON * direct);
        }
    }

    #[test]
    fn acosh1p_small_argument_asymptotics() {
        // acosh(1 + y) ~ sqrt(2y) for y -> 0; the direct form would return 0.
        let y = 1e-30;
        let v = acosh1p(y);
        let expected = (2.0 * y).sqrt();
        assert!((v - expected).abs() / expected < 1e-12);
    }

    #[test]
    fn cosh_minus_one_small_argument() {
        let t = 1e-8;
        let v = cosh_minus_one(t);
        let expected = 0.5 * t * t;
        assert!((v - expected).abs() / expected < 1e-14);
    }

    #[test]
    fn sinh_minus_x_series_matches_direct_form() {
        // At x = 0.5 both branches are accurate; they must agree.
        let series = sinh_minus_x(0.5);
        let direct = 0.5f64.sinh() - 0.5;
        assert!((series - direct).abs() / direct < 1e-12);
        let tiny = sinh_minus_x(1e-4);
        let expected = 1e-12 / 6.0;
        assert!((tiny - expected).abs() / expected < 1e-7);
    }
}
