//! Inequality certificates over complex lengths.
//!
//! Each check reifies one hypothesis (or hypothesis chain) as a
//! [`ConditionResult`] carrying both sides of the inequality and a signed
//! margin, so callers can apply their own tolerance downstream. All
//! inequalities are evaluated strictly: a margin of exactly zero fails.

use serde::Deserialize;

use crate::error::GeometryError;
use crate::geometry::{
    annulus_area, eps0, eps1, eps2, eps_otal, expansion_series, helicoid_unstable, ratio_threshold,
    ratio_upper_bound, tube_geometry, tube_scalars, ComplexLength, Genus, TubeGeometry,
    TubeScalars,
};

/// Tags for the individual conditions a certificate reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConditionId {
    /// ell < W(g).
    EllBelowOtal,
    /// ell < W((2 + sqrt 3)/2).
    EllBelowEps0,
    /// ell < W(3/2).
    EllBelowEps1,
    /// |theta|/sqrt(ell) > (3 pi^2)^(1/4).
    RatioAboveThreshold,
    /// pi ell sinh(2 r0) < |theta| cosh(r0) < annulus area, plus the
    /// sufficient bound ell^2 sinh^2(r0) < theta^2 / (4 pi^2).
    AreaChain,
    /// cosh(r0) > sqrt(3) + 1 and the co-area lower-bound chain.
    SeparationCosh,
    /// Rotation and ratio upper bounds for curves on pleated surfaces.
    ThurstonConsistency,
}

impl ConditionId {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConditionId::EllBelowOtal => "ELL_BELOW_OTAL",
            ConditionId::EllBelowEps0 => "ELL_BELOW_EPS0",
            ConditionId::EllBelowEps1 => "ELL_BELOW_EPS1",
            ConditionId::RatioAboveThreshold => "RATIO_ABOVE_THRESHOLD",
            ConditionId::AreaChain => "AREA_CHAIN",
            ConditionId::SeparationCosh => "SEPARATION_COSH",
            ConditionId::ThurstonConsistency => "THURSTON_CONSISTENCY",
        }
    }
}

/// One evaluated inequality. For a composite chain, `lhs`/`rhs` are the two
/// sides of the tightest link and `margin` is the minimum over all links.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
pub struct ConditionResult {
    pub id: ConditionId,
    pub holds: bool,
    pub lhs: f64,
    pub rhs: f64,
    /// rhs - lhs for upper bounds, lhs - rhs for lower bounds; positive iff
    /// the condition holds.
    pub margin: f64,
}

impl ConditionResult {
    /// lhs < rhs, reported with margin = rhs - lhs.
    fn upper(id: ConditionId, lhs: f64, rhs: f64) -> Self {
        let margin = rhs - lhs;
        Self {
            id,
            holds: margin > 0.0,
            lhs,
            rhs,
            margin,
        }
    }

    /// lhs > rhs, reported with margin = lhs - rhs.
    fn lower(id: ConditionId, lhs: f64, rhs: f64) -> Self {
        let margin = lhs - rhs;
        Self {
            id,
            holds: margin > 0.0,
            lhs,
            rhs,
            margin,
        }
    }

    /// Minimum over several links, all oriented as lhs < rhs.
    fn chain(id: ConditionId, links: &[(f64, f64)]) -> Self {
        let mut best = ConditionResult::upper(id, links[0].0, links[0].1);
        for &(lhs, rhs) in &links[1..] {
            let c = ConditionResult::upper(id, lhs, rhs);
            if c.margin < best.margin {
                best = c;
            }
        }
        best.holds = best.margin > 0.0;
        best
    }
}

/// Verdict bundle for one curve at one genus.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct Certificate {
    pub input: ComplexLength,
    pub genus: Genus,
    /// Absent when ell is not below W(1), where no tube exists.
    pub tube: Option<TubeGeometry>,
    /// Area of the minimal annulus out to the tube radius; absent with the
    /// tube.
    pub annulus_area: Option<f64>,
    pub conditions: Vec<ConditionResult>,
    /// ell < W(g) and the ratio condition both hold.
    pub theorem1_ok: bool,
    /// ell < W((2 + sqrt 3)/2) and the ratio condition both hold.
    pub theorem2_ok: bool,
    pub area_comparison_ok: bool,
    pub separation_ok: bool,
    /// Helicoid twist parameter a = |theta|/ell.
    pub a_parameter: f64,
    pub unstable_helicoid: bool,
    /// Interpretive labels attached to the verdicts. The certificate itself
    /// asserts only the inequality facts above.
    pub paper_conclusions: Vec<String>,
}

impl Certificate {
    /// Smallest margin across all evaluated conditions.
    pub fn min_margin(&self) -> f64 {
        self.conditions
            .iter()
            .map(|c| c.margin)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn condition(&self, id: ConditionId) -> Option<&ConditionResult> {
        self.conditions.iter().find(|c| c.id == id)
    }
}

/// The ratio condition |theta|/sqrt(ell) > (3 pi^2)^(1/4).
pub fn check_ratio(cl: ComplexLength) -> ConditionResult {
    ConditionResult::lower(
        ConditionId::RatioAboveThreshold,
        cl.rotation_ratio(),
        ratio_threshold(),
    )
}

fn area_chain_links(cl: ComplexLength, s: &TubeScalars, annulus: f64) -> [(f64, f64); 3] {
    let theta_cosh = cl.theta().abs() * s.cosh_r0;
    let ell_sinh = cl.ell() * s.sinh_r0;
    let two_pi = 2.0 * std::f64::consts::PI;
    [
        (s.boundary_area, theta_cosh),
        (theta_cosh, annulus),
        // ell^2 sinh^2(r0) < theta^2/(4 pi^2), the sufficient inequality.
        (
            ell_sinh * ell_sinh,
            (cl.theta() / two_pi) * (cl.theta() / two_pi),
        ),
    ]
}

/// The full area comparison chain
/// pi ell sinh(2 r0) < |theta| cosh(r0) < annulus area,
/// together with ell^2 sinh^2(r0) < theta^2/(4 pi^2).
///
/// The chain is evaluated for any ell below W(1); it is only guaranteed to
/// hold when ell < W(3/2) and the ratio condition is satisfied.
pub fn check_area_comparison(cl: ComplexLength) -> Result<ConditionResult, GeometryError> {
    let s = tube_scalars(cl.ell())?;
    let annulus = annulus_area(cl.ell(), cl.theta(), s.r0)?;
    Ok(ConditionResult::chain(
        ConditionId::AreaChain,
        &area_chain_links(cl, &s, annulus),
    ))
}

fn separation_links(cl: ComplexLength, s: &TubeScalars) -> [(f64, f64); 4] {
    let theta = cl.theta().abs();
    let theta_cosh = theta * s.cosh_r0;
    [
        (3f64.sqrt() + 1.0, s.cosh_r0),
        (2.0 * s.cosh_half_r0, s.cosh_r0),
        // Co-area lower bound against the middle term.
        (theta_cosh, 2.0 * theta * (s.cosh_r0 - s.cosh_half_r0)),
        (s.boundary_area, theta_cosh),
    ]
}

/// The separation chain: cosh(r0) > sqrt(3) + 1, cosh(r0) > 2 cosh(r0/2),
/// and 2|theta|(cosh(r0) - cosh(r0/2)) > |theta| cosh(r0) > pi ell sinh(2 r0).
pub fn check_separation(cl: ComplexLength) -> Result<ConditionResult, GeometryError> {
    let s = tube_scalars(cl.ell())?;
    Ok(ConditionResult::chain(
        ConditionId::SeparationCosh,
        &separation_links(cl, &s),
    ))
}

fn thurston_links(cl: ComplexLength, g: Genus, s: &TubeScalars) -> Vec<(f64, f64)> {
    let g1 = g.get() as f64 - 1.0;
    let cosh_minus = s.sinh_sq / (1.0 + s.cosh_r0);
    let rotation_bound = 2.0 * std::f64::consts::PI * g1 / cosh_minus;
    let mut links = vec![(cl.theta().abs(), rotation_bound)];
    // The asymptotic ratio bound only applies in the small-length regime
    // (exact > 1/(2b)); outside it the side is not a pass/fail statement.
    if expansion_series(cl.ell())
        .map(|e| e.in_small_length_regime())
        .unwrap_or(false)
    {
        links.push((cl.rotation_ratio(), ratio_upper_bound(g)));
    }
    links
}

/// Consistency screen for a curve claimed to lie on an incompressible
/// pleated genus-g surface: |theta| below the rotation bound and, in the
/// small-length regime, |theta|/sqrt(ell) below the asymptotic bound.
pub fn check_thurston_consistency(
    cl: ComplexLength,
    g: Genus,
) -> Result<ConditionResult, GeometryError> {
    let s = tube_scalars(cl.ell())?;
    Ok(ConditionResult::chain(
        ConditionId::ThurstonConsistency,
        &thurston_links(cl, g, &s),
    ))
}

/// Evaluates every condition for one curve at one genus.
pub fn certify(cl: ComplexLength, genus: Genus) -> Certificate {
    let ell = cl.ell();
    let ratio = check_ratio(cl);
    let c_otal = ConditionResult::upper(ConditionId::EllBelowOtal, ell, eps_otal(genus));
    let c_eps0 = ConditionResult::upper(ConditionId::EllBelowEps0, ell, eps0());
    let c_eps1 = ConditionResult::upper(ConditionId::EllBelowEps1, ell, eps1());

    let mut conditions = vec![c_otal, c_eps0, c_eps1, ratio];

    let scalars = if ell < eps2() {
        tube_scalars(ell).ok()
    } else {
        None
    };
    let mut tube = None;
    let mut annulus = None;
    let mut area_ok = false;
    let mut separation_ok = false;
    if let Some(s) = scalars {
        let ann =
            annulus_area(ell, cl.theta(), s.r0).expect("tube scalars imply valid annulus inputs");
        let area = ConditionResult::chain(ConditionId::AreaChain, &area_chain_links(cl, &s, ann));
        let sep = ConditionResult::chain(ConditionId::SeparationCosh, &separation_links(cl, &s));
        let thu = ConditionResult::chain(
            ConditionId::ThurstonConsistency,
            &thurston_links(cl, genus, &s),
        );
        area_ok = area.holds;
        separation_ok = sep.holds;
        conditions.extend([area, sep, thu]);
        tube = tube_geometry(cl).ok();
        annulus = Some(ann);
    }

    let theorem1_ok = c_otal.holds && ratio.holds;
    let theorem2_ok = c_eps0.holds && ratio.holds;
    let a_parameter = cl.twist_parameter();

    let mut paper_conclusions = Vec::new();
    if theorem1_ok {
        paper_conclusions
            .push("least_area_multiplicity_unbounded (assumes mutually disjoint curves)".into());
    }
    if theorem2_ok {
        paper_conclusions.push("no_minimal_fibration".into());
    }

    Certificate {
        input: cl,
        genus,
        tube,
        annulus_area: annulus,
        conditions,
        theorem1_ok,
        theorem2_ok,
        area_comparison_ok: area_ok,
        separation_ok,
        a_parameter,
        unstable_helicoid: helicoid_unstable(a_parameter),
        paper_conclusions,
    }
}

/// Certificate against the genus-dependent threshold W(g); `theorem1_ok`
/// carries the verdict.
pub fn check_theorem1(cl: ComplexLength, genus: Genus) -> Certificate {
    certify(cl, genus)
}

/// Certificate against the universal threshold W((2 + sqrt 3)/2);
/// `theorem2_ok` carries the verdict and does not depend on the genus (the
/// certificate is evaluated at genus 2).
pub fn check_theorem2(cl: ComplexLength) -> Certificate {
    certify(cl, Genus::new(2).expect("2 is a valid genus"))
}

/// Lower bound n + 1 on the number of distinct closed incompressible
/// least-area surfaces, where n counts the curves passing the genus-g
/// conditions of `theorem1_ok`.
///
/// Disjointness of the curves cannot be checked from lengths alone; it is a
/// caller-supplied assumption, recorded on each qualifying certificate.
pub fn multiplicity_lower_bound(curves: &[ComplexLength], genus: Genus) -> usize {
    curves
        .iter()
        .filter(|cl| certify(**cl, genus).theorem1_ok)
        .count()
        + 1
}

/// Certifies a batch of curves, preserving input order.
#[cfg(feature = "parallel")]
pub fn certify_all(curves: &[ComplexLength], genus: Genus) -> Vec<Certificate> {
    use rayon::prelude::*;
    curves.par_iter().map(|cl| certify(*cl, genus)).collect()
}

/// Certifies a batch of curves, preserving input order.
#[cfg(not(feature = "parallel"))]
pub fn certify_all(curves: &[ComplexLength], genus: Genus) -> Vec<Certificate> {
    certify_all_seq(curves, genus)
}

/// Sequential batch certification; `certify_all` is the parallel front end.
pub fn certify_all_seq(curves: &[ComplexLength], genus: Genus) -> Vec<Certificate> {
    curves.iter().map(|cl| certify(*cl, genus)).collect()
}
