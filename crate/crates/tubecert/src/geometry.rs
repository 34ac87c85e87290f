//! Closed-form geometry of short closed geodesics in hyperbolic 3-manifolds.
//!
//! Everything here is a pure function of its inputs: the decreasing threshold
//! function `W`, the tube radius and derived areas of the maximal solid tube
//! around a short geodesic, the helicoid in the upper half-space model and
//! the area of the minimal annulus it carves out of the tube, and the series
//! expansion behind the asymptotic rotation bound.

use num_complex::Complex64;
use serde::Deserialize;
use std::f64::consts::PI;

use crate::error::GeometryError;
use crate::numeric::{acosh1p, cosh_minus_one, integrate, sinh_minus_x};

/// Complex length of a closed geodesic: real length `ell` > 0 and twist
/// angle `theta` normalized to [-pi, pi).
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(try_from = "RawComplexLength")]
pub struct ComplexLength {
    ell: f64,
    theta: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
struct RawComplexLength {
    ell: f64,
    theta: f64,
}

impl TryFrom<RawComplexLength> for ComplexLength {
    type Error = GeometryError;

    fn try_from(raw: RawComplexLength) -> Result<Self, Self::Error> {
        ComplexLength::new(raw.ell, raw.theta)
    }
}

impl ComplexLength {
    /// Builds a complex length, reducing any real `theta` into [-pi, pi).
    pub fn new(ell: f64, theta: f64) -> Result<Self, GeometryError> {
        if !ell.is_finite() || ell <= 0.0 {
            return Err(GeometryError::domain(
                "ComplexLength",
                "ell",
                ell,
                "must be finite and > 0",
            ));
        }
        if !theta.is_finite() {
            return Err(GeometryError::domain(
                "ComplexLength",
                "theta",
                theta,
                "must be finite",
            ));
        }
        Ok(Self {
            ell,
            theta: normalize_angle(theta),
        })
    }

    pub fn ell(&self) -> f64 {
        self.ell
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Helicoid twist parameter a = |theta| / ell.
    pub fn twist_parameter(&self) -> f64 {
        self.theta.abs() / self.ell
    }

    /// The scale-invariant ratio |theta| / sqrt(ell).
    pub fn rotation_ratio(&self) -> f64 {
        self.theta.abs() / self.ell.sqrt()
    }
}

/// Maps any real angle into [-pi, pi); the half point pi lands on -pi.
fn normalize_angle(theta: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut t = theta.rem_euclid(two_pi);
    if t >= PI {
        t -= two_pi;
    }
    t
}

/// Genus of a closed orientable surface, at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Deserialize)]
#[serde(try_from = "u32")]
pub struct Genus(u32);

impl Genus {
    pub fn new(g: u32) -> Result<Self, GeometryError> {
        if g < 2 {
            return Err(GeometryError::domain(
                "Genus",
                "g",
                g as f64,
                "must be >= 2",
            ));
        }
        Ok(Self(g))
    }

    pub fn get(&self) -> u32 {
        self.0
    }
}

impl TryFrom<u32> for Genus {
    type Error = GeometryError;

    fn try_from(g: u32) -> Result<Self, Self::Error> {
        Genus::new(g)
    }
}

/// Derived quantities of the maximal solid tube around a geodesic of real
/// length `ell` < W(1).
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
pub struct TubeGeometry {
    /// kappa(ell) = cosh(sqrt(4 pi ell / sqrt 3)) - 1, in (0, 1/2).
    pub kappa: f64,
    /// Tube radius r0, with cosh^2(r0) = (sqrt(1 - 2 kappa)/kappa + 1) / 2.
    pub radius_r0: f64,
    /// Meridian disk area 2 pi (cosh(r0) - 1).
    pub meridian_disk_area: f64,
    /// Boundary torus area pi ell sinh(2 r0).
    pub boundary_area: f64,
}

/// Point of the upper half-space model: boundary coordinate `z` and height
/// `t` > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfSpacePoint {
    pub z: Complex64,
    pub t: f64,
}

impl HalfSpacePoint {
    /// Hyperbolic distance to the vertical axis, recovered from the model
    /// coordinates alone via sinh(d) = |z| / t.
    pub fn distance_to_axis(&self) -> f64 {
        (self.z.norm() / self.t).asinh()
    }
}

/// Coefficients of the first fundamental form E du^2 + 2 F du dv + G dv^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalForm {
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

/// The named length thresholds and ratio bounds for one genus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantsTable {
    pub genus: u32,
    /// W(g): below this, the tube's meridian disk outgrows a genus-g surface.
    pub eps_otal: f64,
    /// W((2 + sqrt 3)/2): below this, the tube separates least-area surfaces
    /// from its core.
    pub eps0: f64,
    /// W(3/2): below this, the boundary/annulus area comparison holds.
    pub eps1: f64,
    /// W(1): below this, the maximal solid tube exists at all.
    pub eps2: f64,
    /// (3 pi^2)^(1/4), the lower ratio threshold.
    pub ratio_threshold: f64,
    /// sqrt(105 pi)/8, instability threshold for the helicoid parameter.
    pub mori_threshold: f64,
    /// b = sqrt(4 pi / sqrt 3), base constant of the series expansion.
    pub b: f64,
    /// 4 pi b (g - 1), the asymptotic upper bound for |theta|/sqrt(ell).
    pub ratio_upper_bound: f64,
}

impl ConstantsTable {
    pub fn for_genus(genus: Genus) -> Self {
        Self {
            genus: genus.get(),
            eps_otal: eps_otal(genus),
            eps0: eps0(),
            eps1: eps1(),
            eps2: eps2(),
            ratio_threshold: ratio_threshold(),
            mori_threshold: mori_threshold(),
            b: expansion_base(),
            ratio_upper_bound: ratio_upper_bound(genus),
        }
    }
}

/// The decreasing threshold function
/// W(x) = (sqrt 3 / 4 pi) * acosh(1 + 1/(1 + sqrt(1 + (8x^2 - 8x + 1)^2)))^2
/// on [1, infinity).
///
/// acosh(1 + y) is evaluated as log1p(y + sqrt(2y + y^2)); for large x the
/// argument is barely above 1 and the naive form loses all digits.
pub fn w_function(x: f64) -> Result<f64, GeometryError> {
    if x.is_nan() || x < 1.0 {
        return Err(GeometryError::domain("w_function", "x", x, "must be >= 1"));
    }
    let q = 8.0 * x * x - 8.0 * x + 1.0;
    let y = 1.0 / (1.0 + (1.0 + q * q).sqrt());
    let ac = acosh1p(y);
    Ok(3f64.sqrt() / (4.0 * PI) * ac * ac)
}

/// W(g) for the given genus.
pub fn eps_otal(genus: Genus) -> f64 {
    w_function(genus.get() as f64).expect("genus >= 2")
}

/// W((2 + sqrt 3)/2).
pub fn eps0() -> f64 {
    w_function(0.5 * (2.0 + 3f64.sqrt())).expect("argument > 1")
}

/// W(3/2).
pub fn eps1() -> f64 {
    w_function(1.5).expect("argument > 1")
}

/// W(1), the largest real length that still guarantees a maximal solid tube.
pub fn eps2() -> f64 {
    w_function(1.0).expect("argument = 1")
}

/// (3 pi^2)^(1/4), the strict lower threshold for |theta|/sqrt(ell).
pub fn ratio_threshold() -> f64 {
    (3.0 * PI * PI).sqrt().sqrt()
}

/// sqrt(105 pi)/8; helicoids with twist parameter at or above this are
/// globally unstable.
pub fn mori_threshold() -> f64 {
    (105.0 * PI).sqrt() / 8.0
}

/// b = sqrt(4 pi / sqrt 3).
pub fn expansion_base() -> f64 {
    (4.0 * PI / 3f64.sqrt()).sqrt()
}

/// kappa(ell) = cosh(sqrt(4 pi ell / sqrt 3)) - 1, via 2 sinh^2(t/2).
pub fn kappa(ell: f64) -> Result<f64, GeometryError> {
    if !ell.is_finite() || ell <= 0.0 {
        return Err(GeometryError::domain(
            "kappa",
            "ell",
            ell,
            "must be finite and > 0",
        ));
    }
    let t = (4.0 * PI / 3f64.sqrt() * ell).sqrt();
    Ok(cosh_minus_one(t))
}

/// Shared scalar bundle for one tube; everything downstream (certificates,
/// meshes, reports) reads these rather than re-deriving them.
#[derive(Debug, Clone, Copy)]
pub(crate) struct TubeScalars {
    pub kappa: f64,
    /// sinh^2(r0) = (sqrt(1 - 2 kappa) - kappa) / (2 kappa).
    pub sinh_sq: f64,
    pub cosh_r0: f64,
    pub sinh_r0: f64,
    pub cosh_half_r0: f64,
    pub r0: f64,
    pub meridian_area: f64,
    pub boundary_area: f64,
}

pub(crate) fn tube_scalars(ell: f64) -> Result<TubeScalars, GeometryError> {
    if !ell.is_finite() || ell <= 0.0 {
        return Err(GeometryError::domain(
            "tube_radius",
            "ell",
            ell,
            "must be finite and > 0",
        ));
    }
    let threshold = eps2();
    if ell >= threshold {
        return Err(GeometryError::OutOfMeyerhoffRange { ell, threshold });
    }
    let k = kappa(ell)?;
    let s = (1.0 - 2.0 * k).sqrt();
    // sinh^2(r0) = (s - k)/(2k), written with the difference expanded so the
    // boundary ell -> W(1) does not go negative from rounding.
    let sinh_sq = ((1.0 - 2.0 * k - k * k) / ((s + k) * 2.0 * k)).max(0.0);
    let cosh_r0 = (1.0 + sinh_sq).sqrt();
    let sinh_r0 = sinh_sq.sqrt();
    let cosh_r0_minus_1 = sinh_sq / (1.0 + cosh_r0);
    let scalars = TubeScalars {
        kappa: k,
        sinh_sq,
        cosh_r0,
        sinh_r0,
        cosh_half_r0: (0.5 * (cosh_r0 + 1.0)).sqrt(),
        r0: acosh1p(cosh_r0_minus_1),
        meridian_area: 2.0 * PI * cosh_r0_minus_1,
        boundary_area: 2.0 * PI * ell * sinh_r0 * cosh_r0,
    };
    if !scalars.cosh_r0.is_finite() {
        // Only reachable for ell below ~8e-310 where 1/kappa overflows.
        return Err(GeometryError::domain(
            "tube_radius",
            "ell",
            ell,
            "too small for double-precision tube evaluation",
        ));
    }
    Ok(scalars)
}

/// Radius of the maximal solid tube, defined for 0 < ell < W(1).
pub fn tube_radius(ell: f64) -> Result<f64, GeometryError> {
    Ok(tube_scalars(ell)?.r0)
}

/// Full tube data (radius, meridian disk area, boundary area) for a geodesic
/// of the given complex length.
pub fn tube_geometry(cl: ComplexLength) -> Result<TubeGeometry, GeometryError> {
    let s = tube_scalars(cl.ell())?;
    Ok(TubeGeometry {
        kappa: s.kappa,
        radius_r0: s.r0,
        meridian_disk_area: s.meridian_area,
        boundary_area: s.boundary_area,
    })
}

/// Area 2 pi (cosh(r0) - 1) of the meridian disk of a radius-r0 tube.
pub fn meridian_disk_area(r0: f64) -> Result<f64, GeometryError> {
    if !r0.is_finite() || r0 <= 0.0 {
        return Err(GeometryError::domain(
            "meridian_disk_area",
            "r0",
            r0,
            "must be finite and > 0",
        ));
    }
    Ok(2.0 * PI * cosh_minus_one(r0))
}

/// Area of the minimal annulus inside the tube,
/// 2 * integral_0^r_max sqrt(ell^2 cosh^2 u + theta^2 sinh^2 u) du.
///
/// For theta = 0 the integrand degenerates to ell cosh(u) and the closed form
/// 2 ell sinh(r_max) is returned directly.
pub fn annulus_area(ell: f64, theta: f64, r_max: f64) -> Result<f64, GeometryError> {
    if !ell.is_finite() || ell <= 0.0 {
        return Err(GeometryError::domain(
            "annulus_area",
            "ell",
            ell,
            "must be finite and > 0",
        ));
    }
    if !r_max.is_finite() || r_max <= 0.0 {
        return Err(GeometryError::domain(
            "annulus_area",
            "r_max",
            r_max,
            "must be finite and > 0",
        ));
    }
    if !theta.is_finite() {
        return Err(GeometryError::domain(
            "annulus_area",
            "theta",
            theta,
            "must be finite",
        ));
    }
    if theta == 0.0 {
        return Ok(2.0 * ell * r_max.sinh());
    }
    let l2 = ell * ell;
    let t2 = theta * theta;
    let integrand = move |u: f64| {
        let c = u.cosh();
        let s = u.sinh();
        (l2 * c * c + t2 * s * s).sqrt()
    };
    Ok(2.0 * integrate(integrand, 0.0, r_max, 1e-10, 1e-12, 60))
}

/// Length of the slope cut out on the distance-s torus by the minimal
/// annulus: 2 sqrt(ell^2 cosh^2 s + theta^2 sinh^2 s).
pub fn slope_length(ell: f64, theta: f64, s: f64) -> Result<f64, GeometryError> {
    if !ell.is_finite() || ell <= 0.0 {
        return Err(GeometryError::domain(
            "slope_length",
            "ell",
            ell,
            "must be finite and > 0",
        ));
    }
    if s.is_nan() || s < 0.0 {
        return Err(GeometryError::domain(
            "slope_length",
            "s",
            s,
            "must be >= 0",
        ));
    }
    Ok(2.0 * f64::hypot(ell * s.cosh(), theta * s.sinh()))
}

/// Point of the twist-a helicoid at parameters (u, v):
/// z = e^(v + i a v) tanh(u), t = e^v / cosh(u).
pub fn helicoid_point(a: f64, u: f64, v: f64) -> HalfSpacePoint {
    let ev = v.exp();
    HalfSpacePoint {
        z: Complex64::from_polar(ev * u.tanh(), a * v),
        t: ev / u.cosh(),
    }
}

/// First fundamental form of the twist-a helicoid:
/// E = 1, F = 0, G = cosh^2(u) + a^2 sinh^2(u).
pub fn first_fundamental_form(a: f64, u: f64) -> FundamentalForm {
    let c = u.cosh();
    let s = u.sinh();
    FundamentalForm {
        e: 1.0,
        f: 0.0,
        g: c * c + a * a * s * s,
    }
}

/// Whether the twist-a helicoid is globally unstable (a >= sqrt(105 pi)/8).
pub fn helicoid_unstable(a: f64) -> bool {
    a >= mori_threshold()
}

/// Strict upper bound 2 pi (g - 1) / (cosh(r0) - 1) on |theta| for a short
/// geodesic lying on an incompressible pleated genus-g surface.
pub fn thurston_rotation_bound(genus: Genus, ell: f64) -> Result<f64, GeometryError> {
    let s = tube_scalars(ell)?;
    let cosh_minus = s.sinh_sq / (1.0 + s.cosh_r0);
    Ok(2.0 * PI * (genus.get() as f64 - 1.0) / cosh_minus)
}

/// Asymptotic upper bound 4 pi b (g - 1) for |theta|/sqrt(ell), valid once
/// the real length is small enough (see [`ExpansionSeries`]).
pub fn ratio_upper_bound(genus: Genus) -> f64 {
    4.0 * PI * expansion_base() * (genus.get() as f64 - 1.0)
}

/// Evaluation of sqrt(ell) (cosh(r0) - 1) against its series in sqrt(ell).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionSeries {
    /// 1/b - sqrt(ell) - (b/24) ell - (353 b^3 / 5760) ell^2.
    pub series_value: f64,
    /// sqrt(ell) (cosh(r0(ell)) - 1).
    pub exact_value: f64,
    /// exact - series; decays like ell^3.
    pub remainder: f64,
}

impl ExpansionSeries {
    /// The crude floor exact > 1/(2b) that marks the regime where the
    /// asymptotic ratio bound applies.
    pub fn in_small_length_regime(&self) -> bool {
        self.exact_value > 0.5 / expansion_base()
    }
}

/// Expands sqrt(ell) (cosh(r0) - 1) in powers of sqrt(ell).
///
/// The remainder is the exact difference written in a cancellation-free
/// arrangement: subtracting the two values directly would drown in rounding
/// noise below ell ~ 1e-4, while this form holds roughly three digits of the
/// true ell^3-sized remainder down to ell ~ 1e-8.
pub fn expansion_series(ell: f64) -> Result<ExpansionSeries, GeometryError> {
    if !ell.is_finite() || ell <= 0.0 {
        return Err(GeometryError::domain(
            "expansion_series",
            "ell",
            ell,
            "must be finite and > 0",
        ));
    }
    let threshold = eps2();
    if ell >= threshold {
        return Err(GeometryError::OutOfMeyerhoffRange { ell, threshold });
    }

    let b = expansion_base();
    let sqrt_ell = ell.sqrt();
    let eps = b * sqrt_ell;
    let k = cosh_minus_one(eps);

    // F := eps^2 cosh^2(r0) = m sqrt(1 - 2k) + eps^2 / 2 with
    // m = (x / sinh x)^2, x = eps/2. Assemble G = F - 1 from small pieces so
    // that sqrt(F) - 1 keeps relative accuracy as ell -> 0.
    let x = 0.5 * eps;
    let sh = x.sinh();
    let m = (x / sh) * (x / sh);
    let m_minus_1 = -(sinh_minus_x(x) * (sh + x)) / (sh * sh);
    let sqrt_1_2k = (1.0 - 2.0 * k).sqrt();
    let g = m * (-2.0 * k / (1.0 + sqrt_1_2k)) + m_minus_1 + 0.5 * eps * eps;
    let sqrt_f = (1.0 + g).sqrt();
    let sqrt_f_minus_1 = g / (1.0 + sqrt_f);

    let c1 = b / 24.0;
    let c2 = 353.0 * b * b * b / 5760.0;
    let exact_value = sqrt_f / b - sqrt_ell;
    let series_value = 1.0 / b - sqrt_ell - c1 * ell - c2 * ell * ell;
    // remainder = exact - series, with the shared 1/b and sqrt(ell) terms
    // cancelled algebraically instead of numerically.
    let remainder = sqrt_f_minus_1 / b + c1 * ell + c2 * ell * ell;

    Ok(ExpansionSeries {
        series_value,
        exact_value,
        remainder,
    })
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    // Reference values computed with a 60-digit evaluation of the defining
    // formulas (mpmath); quadrature references use adaptive tanh-sinh there.
    const W_1: f64 = 0.10707074542167836;
    const W_3_2: f64 = 0.033471768005178259;
    const W_EPS0: f64 = 0.018220175585314884;
    const W_2: f64 = 0.015150443046808763;
    const W_3: f64 = 0.0054938913369322752;
    const W_4: f64 = 0.0028079842133609121;
    const R0_001: f64 = 1.9827241630705441;
    const BOUNDARY_001: f64 = 0.82820159406810248;
    const ANNULUS_FIG2: f64 = 1.3530583822874776;
    const ANNULUS_FIG2_ROUNDED_R: f64 = 1.3530509606384245;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn w_function_reference_values() {
        let cases = [
            (1.0, W_1),
            (1.5, W_3_2),
            (0.5 * (2.0 + 3f64.sqrt()), W_EPS0),
            (2.0, W_2),
            (3.0, W_3),
            (4.0, W_4),
            (10.0, 0.00038171824390281898),
            (100.0, 3.4805164971032664e-6),
        ];
        for (x, expected) in cases {
            let v = w_function(x).unwrap();
            assert!(rel(v, expected) < 1e-14, "W({x}) = {v} vs {expected}");
        }
    }

    #[test]
    fn w_function_printed_precision() {
        assert!((w_function(1.0).unwrap() - 0.107071).abs() < 5e-7);
        assert!((w_function(2.0).unwrap() - 0.01515).abs() < 5e-6);
        assert!((w_function(3.0).unwrap() - 0.00549389).abs() < 5e-9);
        assert!((w_function(4.0).unwrap() - 0.00280798).abs() < 5e-9);
        assert!((eps0() - 0.01822).abs() < 5e-6);
        assert!((eps1() - 0.03347).abs() < 5e-6);
    }

    #[test]
    fn w_function_domain() {
        assert!(w_function(0.999).is_err());
        assert!(w_function(f64::NAN).is_err());
    }

    #[test]
    fn w_function_large_argument_stability() {
        // acosh(1 + y) with y ~ 1e-13: the naive form would lose every digit.
        let cases = [
            (1e3, 3.449253916129368e-8),
            (1e4, 3.4461502020730842e-10),
            (1e5, 3.4458400546934224e-12),
            (1e6, 3.4458090421943093e-14),
        ];
        for (x, expected) in cases {
            let v = w_function(x).unwrap();
            assert!(v > 0.0 && v.is_finite());
            assert!(rel(v, expected) < 1e-8, "W({x}) = {v} vs {expected}");
        }
    }

    #[test]
    fn w_function_strictly_decreasing() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let a = 1.0 + rng.gen::<f64>() * 99.0;
            let d = rng.gen::<f64>() * 10.0 + 1e-9;
            assert!(w_function(a).unwrap() > w_function(a + d).unwrap());
        }
    }

    #[test]
    fn constants_ordering_with_margins() {
        let t = ConstantsTable::for_genus(Genus::new(2).unwrap());
        assert!(t.eps_otal < t.eps0 && t.eps0 - t.eps_otal > 1e-3);
        assert!(t.eps0 < t.eps1 && t.eps1 - t.eps0 > 1e-3);
        assert!(t.eps1 < t.eps2 && t.eps2 - t.eps1 > 1e-3);
        for g in 3..40 {
            assert!(eps_otal(Genus::new(g).unwrap()) < t.eps_otal);
        }
        assert!(t.ratio_upper_bound > t.ratio_threshold);
    }

    #[test]
    fn kappa_reference_values() {
        assert!(rel(kappa(0.01).unwrap(), 0.036495842928961463) < 1e-13);
        // At ell = W(3/2) the defining identity gives kappa = 1/(1 + 5 sqrt 2).
        let v = kappa(w_function(1.5).unwrap()).unwrap();
        assert!((v - 1.0 / (1.0 + 5.0 * 2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn kappa_limits_and_domain() {
        assert!(kappa(1e-18).unwrap() < 1e-16);
        assert!(kappa(0.0).is_err());
        assert!(kappa(-1.0).is_err());
    }

    #[test]
    fn kappa_dominates_linear_lower_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let slope = 2.0 * PI / 3f64.sqrt();
        for _ in 0..1000 {
            let ell = rng.gen::<f64>() * 0.2 + 1e-12;
            assert!(kappa(ell).unwrap() >= slope * ell * (1.0 - 1e-15));
        }
    }

    #[test]
    fn kappa_strictly_increasing() {
        let mut rng = ChaCha8Rng::seed_from_u64(18);
        for _ in 0..1000 {
            let a = rng.gen::<f64>() * 0.3 + 1e-9;
            let d = rng.gen::<f64>() * 0.1 + 1e-9;
            assert!(kappa(a + d).unwrap() > kappa(a).unwrap());
        }
    }

    #[test]
    fn tube_radius_reference_value() {
        let r = tube_radius(0.01).unwrap();
        assert!((r - 1.98272).abs() < 5e-5);
        assert!(rel(r, R0_001) < 1e-13);
    }

    #[test]
    fn tube_radius_domain_and_boundary() {
        assert!(tube_radius(0.0).is_err());
        assert!(matches!(
            tube_radius(eps2()),
            Err(GeometryError::OutOfMeyerhoffRange { .. })
        ));
        assert!(matches!(
            tube_radius(0.2),
            Err(GeometryError::OutOfMeyerhoffRange { .. })
        ));
        // Degenerates to 0 at the threshold.
        let r = tube_radius(eps2() * (1.0 - 1e-12)).unwrap();
        assert!(r > 0.0 && r < 1e-4);
    }

    #[test]
    fn tube_radius_strictly_decreasing() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let hi = eps2() * (1.0 - 1e-9);
        for _ in 0..1000 {
            let a = rng.gen::<f64>() * hi * 0.999 + 1e-9;
            let b = a + rng.gen::<f64>() * (hi - a);
            if b > a {
                assert!(tube_radius(a).unwrap() > tube_radius(b).unwrap());
            }
        }
    }

    #[test]
    fn substitution_identity_spot_checks() {
        // cosh(r0(W(x))) = 2x - 1.
        for x in [1.5, 2.0, 0.5 * (2.0 + 3f64.sqrt()), 3.0, 7.0, 20.0] {
            let c = tube_radius(w_function(x).unwrap()).unwrap().cosh();
            assert!(rel(c, 2.0 * x - 1.0) < 1e-9, "x = {x}: {c}");
        }
    }

    #[test]
    fn tube_geometry_figure_instance() {
        let cl = ComplexLength::new(0.01, 0.25).unwrap();
        let tg = tube_geometry(cl).unwrap();
        assert!(rel(tg.boundary_area, 0.828202) < 1e-4);
        assert!(rel(tg.boundary_area, BOUNDARY_001) < 1e-13);
        assert!(rel(tg.meridian_disk_area, 16.965209556522357) < 1e-13);
        assert!(rel(tg.kappa, 0.036495842928961463) < 1e-13);
    }

    #[test]
    fn tube_geometry_threshold_instances() {
        // At ell = W(2): cosh r0 = 3, so the meridian disk area is 4 pi.
        let cl = ComplexLength::new(w_function(2.0).unwrap(), 0.1).unwrap();
        let tg = tube_geometry(cl).unwrap();
        assert!((tg.meridian_disk_area - 4.0 * PI).abs() < 1e-8);
        // At ell = W(3/2): cosh r0 = 2.
        let cl = ComplexLength::new(w_function(1.5).unwrap(), 0.1).unwrap();
        let tg = tube_geometry(cl).unwrap();
        assert!((tg.radius_r0.cosh() - 2.0).abs() < 1e-10);
    }

    #[test]
    fn tube_geometry_internal_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..200 {
            let ell = rng.gen::<f64>() * (eps2() - 1e-6) + 1e-7;
            let tg = tube_geometry(ComplexLength::new(ell, 0.0).unwrap()).unwrap();
            assert!(tg.kappa > 0.0 && tg.kappa < 0.5);
            assert!(
                rel(
                    tg.meridian_disk_area,
                    2.0 * PI * (tg.radius_r0.cosh() - 1.0)
                ) < 1e-9
            );
            assert!(rel(tg.boundary_area, PI * ell * (2.0 * tg.radius_r0).sinh()) < 1e-9);
            let lhs = tg.radius_r0.cosh().powi(2);
            let rhs = 0.5 * ((1.0 - 2.0 * tg.kappa).sqrt() / tg.kappa + 1.0);
            assert!(rel(lhs, rhs) < 1e-9);
        }
    }

    #[test]
    fn meridian_disk_area_reference_values() {
        let v = meridian_disk_area(3f64.acosh()).unwrap();
        assert!(rel(v, 4.0 * PI) < 1e-14);
        assert!(meridian_disk_area(1e-9).unwrap() < 1e-16);
        assert!(meridian_disk_area(0.0).is_err());
        // 2 pi (2x - 2) = 4 pi (x - 1) along the identity radius.
        for x in [1.5f64, 2.0, 5.0, 11.0] {
            let v = meridian_disk_area((2.0 * x - 1.0).acosh()).unwrap();
            assert!(rel(v, 4.0 * PI * (x - 1.0)) < 1e-12);
        }
    }

    #[test]
    fn annulus_area_figure_instance() {
        let v = annulus_area(0.01, 0.25, R0_001).unwrap();
        assert!(rel(v, 1.35306) < 1e-4);
        assert!(rel(v, ANNULUS_FIG2) < 1e-10);
        let v = annulus_area(0.01, 0.25, 1.98272).unwrap();
        assert!(rel(v, ANNULUS_FIG2_ROUNDED_R) < 1e-10);
    }

    #[test]
    fn annulus_area_zero_twist_closed_form() {
        let v = annulus_area(0.07, 0.0, 2.5).unwrap();
        assert_eq!(v, 2.0 * 0.07 * 2.5f64.sinh());
    }

    #[test]
    fn annulus_area_tiny_scale() {
        let v = annulus_area(1e-9, 1e-9, 1.0).unwrap();
        assert!(rel(v, 2.6343787642800166e-9) < 1e-9);
    }

    #[test]
    fn annulus_area_spot_values() {
        assert!(rel(annulus_area(0.05, 1.0, 3.0).unwrap(), 18.169925952389406) < 1e-10);
        assert!(rel(annulus_area(0.1, 3.0, 10.0).unwrap(), 66110.112391439144) < 1e-10);
    }

    #[test]
    fn annulus_area_domain() {
        assert!(annulus_area(0.0, 0.1, 1.0).is_err());
        assert!(annulus_area(0.1, 0.1, 0.0).is_err());
        assert!(annulus_area(0.1, f64::NAN, 1.0).is_err());
    }

    #[test]
    fn annulus_area_integrand_minorants() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..300 {
            let ell = rng.gen::<f64>() * 0.1 + 1e-6;
            let theta = (rng.gen::<f64>() - 0.5) * 2.0 * PI;
            let r = rng.gen::<f64>() * 10.0 + 1e-3;
            let area = annulus_area(ell, theta, r).unwrap();
            let lower_theta = 2.0 * theta.abs() * (r.cosh() - 1.0);
            let lower_ell = 2.0 * ell * r.sinh();
            assert!(area >= lower_theta * (1.0 - 1e-12));
            assert!(area >= lower_ell * (1.0 - 1e-12));
        }
    }

    #[test]
    fn slope_length_reference_values() {
        assert_eq!(slope_length(0.3, 2.0, 0.0).unwrap(), 0.6);
        let v = slope_length(0.01, 0.25, 1.98272).unwrap();
        assert!((v - 1.78283).abs() < 1e-4);
        assert!(rel(v, 1.7827305424988022) < 1e-12);
        assert!(slope_length(0.0, 1.0, 1.0).is_err());
        assert!(slope_length(0.1, 1.0, -0.1).is_err());
    }

    #[test]
    fn slope_length_exceeds_twist_minorant() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        for _ in 0..500 {
            let ell = rng.gen::<f64>() * 0.1 + 1e-9;
            let theta = (rng.gen::<f64>() - 0.5) * 2.0 * PI;
            let s = rng.gen::<f64>() * 5.0;
            let v = slope_length(ell, theta, s).unwrap();
            assert!(v > 2.0 * theta.abs() * s.sinh());
            // v^2 - (2 theta sinh s)^2 = (2 ell cosh s)^2, up to the
            // cancellation noise of the subtraction itself.
            let lhs = v * v - 4.0 * theta * theta * s.sinh().powi(2);
            let rhs = 4.0 * ell * ell * s.cosh().powi(2);
            assert!((lhs - rhs).abs() <= 1e-12 * v * v);
        }
    }

    #[test]
    fn helicoid_point_axis_and_unit_sphere() {
        let p = helicoid_point(7.0, 0.0, 0.0);
        assert_eq!(p.z, Complex64::new(0.0, 0.0));
        assert_eq!(p.t, 1.0);
        for u in [-1.2, -0.3, 0.4, 2.0] {
            let p = helicoid_point(3.0, u, 0.0);
            assert!((p.z.norm_sqr() + p.t * p.t - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn helicoid_point_axis_distance_identity() {
        let p = helicoid_point(25.0, 1.0, 0.05);
        assert!(rel(p.z.norm() / p.t, 1.1752011936438015) < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..500 {
            let a = rng.gen::<f64>() * 30.0;
            let u = (rng.gen::<f64>() - 0.5) * 6.0;
            let v = (rng.gen::<f64>() - 0.5) * 4.0;
            let p = helicoid_point(a, u, v);
            let d = p.distance_to_axis();
            assert!((d.sinh() - u.sinh().abs()).abs() <= 1e-10 * u.sinh().abs().max(1.0));
            // |z|^2 + t^2 = e^(2v).
            assert!(rel(p.z.norm_sqr() + p.t * p.t, (2.0 * v).exp()) < 1e-12);
        }
    }

    #[test]
    fn fundamental_form_values() {
        let ff = first_fundamental_form(4.0, 0.0);
        assert_eq!((ff.e, ff.f, ff.g), (1.0, 0.0, 1.0));
        let ff = first_fundamental_form(0.0, 0.7);
        assert!(rel(ff.g, 0.7f64.cosh().powi(2)) < 1e-15);
        let ff = first_fundamental_form(2.0, -0.9);
        let expected = 0.9f64.cosh().powi(2) + 4.0 * 0.9f64.sinh().powi(2);
        assert!(rel(ff.g, expected) < 1e-15);
    }

    #[test]
    fn fundamental_form_consistent_with_annulus_area() {
        // ell * integral of sqrt(G(u)) equals the annulus area when
        // a = |theta|/ell; checked with a plain midpoint rule.
        let (ell, theta) = (0.01, 0.25);
        let a = theta / ell;
        let r0 = tube_radius(ell).unwrap();
        let n = 200_000;
        let h = 2.0 * r0 / n as f64;
        let mut sum = 0.0;
        for i in 0..n {
            let u = -r0 + (i as f64 + 0.5) * h;
            sum += first_fundamental_form(a, u).g.sqrt();
        }
        let patch_area = ell * sum * h;
        assert!(rel(patch_area, annulus_area(ell, theta, r0).unwrap()) < 1e-8);
    }

    #[test]
    fn helicoid_instability_threshold() {
        assert!(!helicoid_unstable(0.0));
        assert!(!helicoid_unstable(2.27028 - 1e-6));
        assert!(helicoid_unstable(2.27028 + 1e-6));
        assert!(helicoid_unstable(12.7505));
        assert!(helicoid_unstable(mori_threshold()));
    }

    #[test]
    fn thurston_rotation_bound_values() {
        let g2 = Genus::new(2).unwrap();
        let v = thurston_rotation_bound(g2, 0.01).unwrap();
        assert!(rel(v, 2.3270221020747584) < 1e-12);
        // Linear in g - 1.
        let v5 = thurston_rotation_bound(Genus::new(5).unwrap(), 0.01).unwrap();
        assert!(rel(v5, 4.0 * v) < 1e-14);
        // Tends to 0 with the length.
        assert!(thurston_rotation_bound(g2, 1e-12).unwrap() < 1e-4);
        assert!(thurston_rotation_bound(g2, 0.2).is_err());
    }

    #[test]
    fn ratio_upper_bound_values() {
        let v = ratio_upper_bound(Genus::new(2).unwrap());
        assert!((v - 33.84815).abs() < 1e-4);
        assert!(rel(v, 33.848114571244637) < 1e-14);
        let v3 = ratio_upper_bound(Genus::new(3).unwrap());
        assert!(rel(v3, 2.0 * v) < 1e-15);
        assert!(v > ratio_threshold());
    }

    #[test]
    fn expansion_series_reference_values() {
        let e = expansion_series(0.01).unwrap();
        assert!(rel(e.exact_value, 0.27000969615103947) < 1e-13);
        assert!(rel(e.series_value, 0.27001554929640156) < 1e-13);
        assert!(rel(e.remainder, -5.85314536209e-6) < 1e-6);
        assert!((e.exact_value - e.series_value - e.remainder).abs() < 1e-15);
        assert!(e.in_small_length_regime());
    }

    #[test]
    fn expansion_series_stable_remainder_small_lengths() {
        // Direct subtraction would be pure rounding noise here.
        let r3 = expansion_series(1e-3).unwrap().remainder;
        assert!(rel(r3, -5.5723276329e-9) < 1e-4);
        let r4 = expansion_series(1e-4).unwrap().remainder;
        assert!(rel(r4, -5.545851701e-12) < 1e-3);
    }

    #[test]
    fn expansion_series_leading_term_limit() {
        let e = expansion_series(1e-8).unwrap();
        assert!(rel(e.exact_value, 0.37115762352053404) < 1e-12);
        assert!((e.exact_value - 1.0 / expansion_base()).abs() < 2e-4);
    }

    #[test]
    fn expansion_series_regime_flag() {
        assert!(expansion_series(0.01).unwrap().in_small_length_regime());
        assert!(!expansion_series(0.1).unwrap().in_small_length_regime());
        assert!(expansion_series(0.2).is_err());
        assert!(expansion_series(-0.1).is_err());
    }

    #[test]
    fn complex_length_normalization() {
        let cl = ComplexLength::new(0.01, 3.5).unwrap();
        assert!((cl.theta() - (3.5 - 2.0 * PI)).abs() < 1e-15);
        let cl = ComplexLength::new(0.01, PI).unwrap();
        assert_eq!(cl.theta(), -PI);
        let cl = ComplexLength::new(0.01, -PI).unwrap();
        assert_eq!(cl.theta(), -PI);
        assert!(ComplexLength::new(0.0, 0.1).is_err());
        assert!(ComplexLength::new(-1.0, 0.1).is_err());
        assert!(ComplexLength::new(0.1, f64::INFINITY).is_err());
    }

    #[test]
    fn genus_bounds() {
        assert!(Genus::new(1).is_err());
        assert_eq!(Genus::new(2).unwrap().get(), 2);
    }

    proptest! {
        #[test]
        fn prop_normalized_angle_in_range(theta in -1e6f64..1e6) {
            let cl = ComplexLength::new(1e-3, theta).unwrap();
            prop_assert!(cl.theta() >= -PI && cl.theta() < PI);
            // Equivalent modulo 2 pi.
            let diff = (theta - cl.theta()) / (2.0 * PI);
            prop_assert!((diff - diff.round()).abs() < 1e-6);
        }

        #[test]
        fn prop_w_function_positive_and_bounded(x in 1f64..1e6) {
            let v = w_function(x).unwrap();
            prop_assert!(v > 0.0);
            prop_assert!(v <= w_function(1.0).unwrap());
        }

        #[test]
        fn prop_slope_identity(
            ell in 1e-6f64..0.1,
            theta in -3.1f64..3.1,
            s in 0f64..5.0,
        ) {
            let v = slope_length(ell, theta, s).unwrap();
            let direct = 2.0 * (ell * ell * s.cosh().powi(2)
                + theta * theta * s.sinh().powi(2)).sqrt();
            prop_assert!((v - direct).abs() <= 1e-12 * direct.max(1.0));
        }
    }
}
