//! Domain of existence of the Laplace transform: directional polynomials,
//! smallest positive roots, membership classification and the boundary
//! hypersurface.
//!
//! For a direction `s` in the zero-sum hyperplane `H`, the directional
//! polynomial is `P_s(t) = A(t e^{s₁},…,t e^{sₙ})` and `R_s` is its smallest
//! positive zero. A point `θ` belongs to the domain exactly when
//! `θ̄ₙ < log R_s` for `s = θ − θ̄ₙ·1`, and `s ↦ s + log R_s·(1,…,1)`
//! parametrizes the boundary; every boundary point `θ` satisfies
//! `A(e^{θ₁},…,e^{θₙ}) = 0`.

use std::fmt;

use nalgebra::{Complex, DMatrix};

use crate::subsetpoly::AffineModel;
use crate::{Error, Result};

/// Default half-width of the numerical "boundary" band on the margin.
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-9;

/// A direction in the hyperplane `H = {s : s₁+⋯+sₙ = 0}`.
///
/// Components are capped at `|sᵢ| ≤ 40` to keep `e^{sᵢ}` comfortably inside
/// double range.
#[derive(Clone, Debug)]
pub struct DirectionVector(Vec<f64>);

impl DirectionVector {
    pub const MAX_COMPONENT: f64 = 40.0;

    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::DimensionOutOfRange(0));
        }
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() || v.abs() > Self::MAX_COMPONENT {
                return Err(Error::DirectionTooLarge { index: i, value: v });
            }
        }
        let sum: f64 = values.iter().sum();
        if sum.abs() > 1e-12 {
            return Err(Error::NotInHyperplane(sum));
        }
        Ok(DirectionVector(values))
    }

    /// Orthogonal projection of `θ` onto `H`, returned with the mean `θ̄ₙ`.
    pub fn projection(theta: &[f64]) -> Result<(Self, f64)> {
        if theta.is_empty() {
            return Err(Error::DimensionOutOfRange(0));
        }
        let bar = theta.iter().sum::<f64>() / theta.len() as f64;
        let s = Self::new(theta.iter().map(|t| t - bar).collect())?;
        Ok((s, bar))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

/// Real polynomial `q₀ + q₁t + ⋯` with `q₀ = 1`; the directional polynomial
/// `P_s` lives here.
#[derive(Clone, Debug, PartialEq)]
pub struct UnivariatePoly {
    coeffs: Vec<f64>,
}

impl UnivariatePoly {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() || (coeffs[0] - 1.0).abs() > 1e-12 {
            return Err(Error::ConstantTermNotOne(
                coeffs.first().copied().unwrap_or(f64::NAN),
            ));
        }
        Ok(UnivariatePoly { coeffs })
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficients with exact trailing zeros dropped.
    fn trimmed(&self) -> &[f64] {
        let mut d = self.coeffs.len() - 1;
        while d > 0 && self.coeffs[d] == 0.0 {
            d -= 1;
        }
        &self.coeffs[..=d]
    }

    pub fn degree(&self) -> usize {
        self.trimmed().len() - 1
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    /// Value, first and second derivative at `t`.
    fn eval_d2(&self, t: f64) -> (f64, f64, f64) {
        let (mut p, mut dp, mut ddp) = (0.0, 0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            ddp = ddp * t + 2.0 * dp;
            dp = dp * t + p;
            p = p * t + c;
        }
        (p, dp, ddp)
    }
}

/// `P_s(t) = A(t e^{s₁},…,t e^{sₙ})` as a coefficient vector:
/// `q₀ = 1`, `q_k = −Σ_{|T|=k} a_T e^{Σ_{t∈T} s_t}`.
pub fn ps_poly(model: &AffineModel, s: &DirectionVector) -> Result<UnivariatePoly> {
    if s.dim() != model.n() {
        return Err(Error::DimensionMismatch {
            expected: model.n(),
            got: s.dim(),
        });
    }
    let mut coeffs = vec![0.0; model.n() + 1];
    coeffs[0] = 1.0;
    for (t, c) in model.terms() {
        let mut dot = 0.0;
        let mut bits = t.bits();
        while bits != 0 {
            dot += s.values()[bits.trailing_zeros() as usize];
            bits &= bits - 1;
        }
        coeffs[t.cardinality()] -= c * dot.exp();
    }
    Ok(UnivariatePoly { coeffs })
}

fn companion_roots(coeffs: &[f64]) -> Vec<Complex<f64>> {
    let d = coeffs.len() - 1;
    let lead = coeffs[d];
    let mut m = DMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = 1.0;
    }
    for (i, &c) in coeffs.iter().take(d).enumerate() {
        m[(i, d - 1)] = -c / lead;
    }
    m.complex_eigenvalues().iter().copied().collect()
}

/// Hunts for a sign change around `t0`, widening geometrically. Fails for
/// even-multiplicity roots, which the caller handles separately.
fn bracket_around(p: &UnivariatePoly, t0: f64) -> Option<(f64, f64)> {
    let mut w = t0 * 1e-10;
    for _ in 0..20 {
        if w > 0.5 * t0 {
            break;
        }
        let lo = t0 - w;
        let hi = t0 + w;
        let flo = p.eval(lo);
        let fhi = p.eval(hi);
        if flo == 0.0 {
            return Some((lo, lo));
        }
        if fhi == 0.0 {
            return Some((hi, hi));
        }
        if flo.signum() != fhi.signum() {
            return Some((lo, hi));
        }
        w *= 4.0;
    }
    None
}

/// Newton iteration safeguarded by the bracket `[lo, hi]`.
fn newton_bisect(p: &UnivariatePoly, mut lo: f64, mut hi: f64) -> f64 {
    if lo == hi {
        return lo;
    }
    let sign_lo = p.eval(lo).signum();
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let (f, df, _) = p.eval_d2(x);
        if f == 0.0 {
            return x;
        }
        if f.signum() == sign_lo {
            lo = x;
        } else {
            hi = x;
        }
        let mut next = if df != 0.0 { x - f / df } else { f64::NAN };
        if !next.is_finite() || next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= f64::EPSILON * x.abs() {
            return next;
        }
        if hi - lo <= 4.0 * f64::EPSILON * hi.abs() {
            return 0.5 * (lo + hi);
        }
        x = next;
    }
    x
}

/// Newton variant on `p/p'`, quadratically convergent at multiple roots.
fn newton_multiple(p: &UnivariatePoly, mut x: f64) -> f64 {
    for _ in 0..100 {
        let (f, df, ddf) = p.eval_d2(x);
        if f == 0.0 {
            break;
        }
        let denom = df * df - f * ddf;
        let step = if denom != 0.0 {
            f * df / denom
        } else if df != 0.0 {
            f / df
        } else {
            break;
        };
        x -= step;
        if step.abs() <= 1e-15 * x.abs().max(1e-300) {
            break;
        }
    }
    x
}

/// The least `t > 0` with `p(t) = 0`, to ~1e−15 relative accuracy.
///
/// Pipeline: all complex roots from the companion matrix, realness judged
/// with `|Im| ≤ 1e−9·(1+|root|)`, minimum positive candidate polished by
/// bracketed Newton. Eigenvalue splitting can push a multiple real root past
/// the strict imaginary tolerance, so when no candidate survives, near-real
/// roots are retried with the multiplicity-robust iteration before giving up.
pub fn smallest_positive_root(p: &UnivariatePoly) -> Result<f64> {
    let coeffs = p.trimmed();
    if coeffs.len() == 1 {
        return Err(Error::DegenerateModel);
    }
    let roots = companion_roots(coeffs);
    let mut best: Option<f64> = None;
    for z in &roots {
        if z.im.abs() <= 1e-9 * (1.0 + z.norm()) && z.re > 0.0 {
            best = Some(best.map_or(z.re, |b: f64| b.min(z.re)));
        }
    }
    let t0 = match best {
        Some(t) => t,
        None => {
            let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
            let mut recovered: Option<f64> = None;
            for z in &roots {
                if z.re > 0.0 && z.im.abs() <= 1e-6 * (1.0 + z.norm()) {
                    let t = newton_multiple(p, z.re);
                    if t > 0.0 && t.is_finite() && p.eval(t).abs() <= 1e-8 * scale {
                        recovered = Some(recovered.map_or(t, |b: f64| b.min(t)));
                    }
                }
            }
            recovered.ok_or(Error::NoPositiveRoot)?
        }
    };
    let refined = match bracket_around(p, t0) {
        Some((lo, hi)) => newton_bisect(p, lo, hi),
        None => newton_multiple(p, t0),
    };
    Ok(refined)
}

/// `log R_s` for the given direction.
pub fn log_radius(model: &AffineModel, s: &DirectionVector) -> Result<f64> {
    Ok(smallest_positive_root(&ps_poly(model, s)?)?.ln())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Inside,
    Boundary,
    Outside,
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Membership::Inside => "inside",
            Membership::Boundary => "boundary",
            Membership::Outside => "outside",
        })
    }
}

/// Result of a membership query; `margin = log R_s − θ̄ₙ`.
#[derive(Clone, Debug)]
pub struct MembershipVerdict {
    pub classification: Membership,
    pub margin: f64,
    pub direction: DirectionVector,
    pub radius: f64,
    pub theta_bar: f64,
}

impl MembershipVerdict {
    pub fn log_radius(&self) -> f64 {
        self.radius.ln()
    }
}

/// Classifies `θ` against the domain of existence. The verdict does not
/// depend on the exponent `λ`.
pub fn classify(model: &AffineModel, theta: &[f64], tol: f64) -> Result<MembershipVerdict> {
    if theta.len() != model.n() {
        return Err(Error::DimensionMismatch {
            expected: model.n(),
            got: theta.len(),
        });
    }
    let (direction, theta_bar) = DirectionVector::projection(theta)?;
    let radius = smallest_positive_root(&ps_poly(model, &direction)?)?;
    let margin = radius.ln() - theta_bar;
    let classification = if margin > tol {
        Membership::Inside
    } else if margin >= -tol {
        Membership::Boundary
    } else {
        Membership::Outside
    };
    Ok(MembershipVerdict {
        classification,
        margin,
        direction,
        radius,
        theta_bar,
    })
}

/// The boundary point `θ = s + log R_s·(1,…,1)`.
pub fn boundary_point(model: &AffineModel, s: &DirectionVector) -> Result<Vec<f64>> {
    let lr = log_radius(model, s)?;
    Ok(s.values().iter().map(|v| v + lr).collect())
}

/// `|A(e^{θ₁},…,e^{θₙ})|`; zero (up to roundoff) exactly on the boundary.
pub fn boundary_residual(model: &AffineModel, theta: &[f64]) -> Result<f64> {
    let z: Vec<f64> = theta.iter().map(|t| t.exp()).collect();
    Ok(model.eval_a(&z)?.abs())
}

/// Uniform closed interval `lo..=hi` stepped by `step` (in `s`-space).
#[derive(Clone, Copy, Debug)]
pub struct GridRange {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl GridRange {
    pub fn new(lo: f64, hi: f64, step: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || !step.is_finite() || step <= 0.0 || hi < lo {
            return Err(Error::InvalidRange(format!("{lo}:{hi}:{step}")));
        }
        Ok(GridRange { lo, hi, step })
    }

    fn points(&self) -> Vec<f64> {
        let count = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize;
        (0..=count).map(|i| self.lo + i as f64 * self.step).collect()
    }
}

/// One emitted boundary sample: free parameters, the point, and the
/// `|A(e^θ)|` residual.
#[derive(Clone, Debug)]
pub struct BoundaryRow {
    pub params: Vec<f64>,
    pub theta: Vec<f64>,
    pub residual: f64,
}

/// Boundary point cloud over a uniform grid of the free hyperplane
/// coordinates: `s = (s₁, −s₁)` for `n = 2` (one range), and
/// `s = (s₁, s₂, −s₁−s₂)` for `n = 3` (two ranges).
pub fn boundary_grid(model: &AffineModel, ranges: &[GridRange]) -> Result<Vec<BoundaryRow>> {
    let make_row = |params: Vec<f64>, s: Vec<f64>| -> Result<BoundaryRow> {
        let dir = DirectionVector::new(s)?;
        let theta = boundary_point(model, &dir)?;
        let residual = boundary_residual(model, &theta)?;
        Ok(BoundaryRow {
            params,
            theta,
            residual,
        })
    };
    match (model.n(), ranges.len()) {
        (2, 1) => {
            let mut rows = Vec::new();
            for x in ranges[0].points() {
                rows.push(make_row(vec![x], vec![x, -x])?);
            }
            Ok(rows)
        }
        (3, 2) => {
            let mut rows = Vec::new();
            for x in ranges[0].points() {
                for y in ranges[1].points() {
                    let sum = x + y;
                    rows.push(make_row(vec![x, y], vec![x, y, -sum])?);
                }
            }
            Ok(rows)
        }
        (n, _) if n != 2 && n != 3 => Err(Error::UnsupportedGridDimension(n)),
        (n, got) => Err(Error::InvalidRange(format!(
            "n = {n} expects {} range(s), got {got}",
            n - 1
        ))),
    }
}

/// Closed-form boundary ordinate for bivariate models with unit singleton
/// coefficients: `θ₂ = −log(1 + (a+1)/(e^{−θ₁} − 1))` where `a = a₁₂`.
/// Requires `θ₁ < 0`; independent check of [`boundary_point`] for this family.
pub fn closed_form_boundary_2d(model: &AffineModel, theta1: f64) -> Result<f64> {
    let unit = |idx: &[usize]| {
        (model.coeff(crate::subsetpoly::SubsetId::from_indices(idx).expect("valid")) - 1.0).abs()
            <= 1e-12
    };
    if model.n() != 2 || !unit(&[1]) || !unit(&[2]) {
        return Err(Error::ClosedFormUnsupported);
    }
    if !(theta1 < 0.0) {
        return Err(Error::NonnegativeTheta(theta1));
    }
    let a = model.coeff(crate::subsetpoly::SubsetId::from_indices(&[1, 2]).expect("valid"));
    Ok(-((a + 1.0) / (-theta1).exp_m1()).ln_1p())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example1(a: f64) -> AffineModel {
        AffineModel::new(2)
            .unwrap()
            .with_term(&[1], 1.0)
            .unwrap()
            .with_term(&[2], 1.0)
            .unwrap()
            .with_term(&[1, 2], a)
            .unwrap()
    }

    fn example2() -> AffineModel {
        let mut m = AffineModel::new(3).unwrap();
        for i in 1..=3 {
            m = m.with_term(&[i], 1.0).unwrap();
        }
        for pair in [[1, 2], [1, 3], [2, 3]] {
            m = m.with_term(&pair, 1.0).unwrap();
        }
        m.with_term(&[1, 2, 3], 0.0).unwrap()
    }

    fn dir(values: &[f64]) -> DirectionVector {
        DirectionVector::new(values.to_vec()).unwrap()
    }

    #[test]
    fn direction_validation() {
        assert!(DirectionVector::new(vec![0.5, -0.5]).is_ok());
        assert!(matches!(
            DirectionVector::new(vec![0.5, -0.4]),
            Err(Error::NotInHyperplane(_))
        ));
        assert!(matches!(
            DirectionVector::new(vec![41.0, -41.0]),
            Err(Error::DirectionTooLarge { .. })
        ));
    }

    #[test]
    fn ps_poly_symmetric_direction() {
        let s1 = 0.83;
        let p = ps_poly(&example1(-0.5), &dir(&[s1, -s1])).unwrap();
        let want = [1.0, -(s1.exp() + (-s1).exp()), 0.5];
        for (got, want) in p.coefficients().iter().zip(want) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn ps_poly_univariate() {
        let m = AffineModel::new(1).unwrap().with_term(&[1], 1.0).unwrap();
        let p = ps_poly(&m, &dir(&[0.0])).unwrap();
        assert_eq!(p.coefficients(), &[1.0, -1.0]);
    }

    #[test]
    fn ps_poly_trivariate_at_zero() {
        let p = ps_poly(&example2(), &dir(&[0.0, 0.0, 0.0])).unwrap();
        assert_eq!(p.coefficients(), &[1.0, -3.0, -3.0, 0.0]);
        assert_eq!(p.degree(), 2);
    }

    #[test]
    fn root_of_paper_quadratics() {
        let r = smallest_positive_root(&UnivariatePoly::new(vec![1.0, -2.0, 0.5]).unwrap())
            .unwrap();
        let want = 2.0 - 2.0f64.sqrt();
        assert!((r - want).abs() <= 1e-12 * want);

        let r = smallest_positive_root(&UnivariatePoly::new(vec![1.0, -1.0]).unwrap()).unwrap();
        assert!((r - 1.0).abs() <= 1e-14);

        let r = smallest_positive_root(&UnivariatePoly::new(vec![1.0, -3.0, -3.0, 0.0]).unwrap())
            .unwrap();
        let want = (21.0f64.sqrt() - 3.0) / 6.0;
        assert!((r - want).abs() <= 1e-12 * want);
    }

    #[test]
    fn root_handles_tangency() {
        // (1 − t)²: double root at 1, no sign change
        let r = smallest_positive_root(&UnivariatePoly::new(vec![1.0, -2.0, 1.0]).unwrap())
            .unwrap();
        assert!((r - 1.0).abs() < 1e-7, "got {r}");
    }

    #[test]
    fn root_error_cases() {
        assert!(matches!(
            smallest_positive_root(&UnivariatePoly::new(vec![1.0, 1.0]).unwrap()),
            Err(Error::NoPositiveRoot)
        ));
        assert!(matches!(
            smallest_positive_root(&UnivariatePoly::new(vec![1.0, 0.0, 0.0]).unwrap()),
            Err(Error::DegenerateModel)
        ));
        assert!(UnivariatePoly::new(vec![0.5, 1.0]).is_err());
    }

    #[test]
    fn log_radius_values() {
        let m = example1(-0.5);
        let lr = log_radius(&m, &dir(&[0.0, 0.0])).unwrap();
        assert!((lr - (2.0 - 2.0f64.sqrt()).ln()).abs() < 1e-14);
        // same number as −log(1 + √2/2)
        assert!((lr + (1.0 + 2.0f64.sqrt() / 2.0).ln()).abs() < 1e-14);

        let s1 = 2.0f64.ln();
        let lr = log_radius(&m, &dir(&[s1, -s1])).unwrap();
        assert!((lr - (2.5 - 17.0f64.sqrt() / 2.0).ln()).abs() < 1e-14);

        let m1 = AffineModel::new(1).unwrap().with_term(&[1], 1.0).unwrap();
        assert!(log_radius(&m1, &dir(&[0.0])).unwrap().abs() < 1e-15);
    }

    #[test]
    fn classify_paper_points() {
        let m = example1(-0.5);
        let l2 = 2.0f64.ln();
        let v = classify(&m, &[-l2, -l2], DEFAULT_CLASSIFY_TOL).unwrap();
        assert_eq!(v.classification, Membership::Inside);
        assert!(v.margin > 1e-3);

        let v = classify(&m, &[-l2, -3.0 * l2], DEFAULT_CLASSIFY_TOL).unwrap();
        assert_eq!(v.classification, Membership::Inside);
        assert!((v.direction.values()[0] - l2).abs() < 1e-12);

        let v = classify(&m, &[0.0, 0.0], DEFAULT_CLASSIFY_TOL).unwrap();
        assert_eq!(v.classification, Membership::Outside);

        let l4 = 4.0f64.ln();
        let v = classify(&example2(), &[-l4, -l4, -l4], DEFAULT_CLASSIFY_TOL).unwrap();
        assert_eq!(v.classification, Membership::Inside);
        assert!(v.margin > 1e-3);
    }

    #[test]
    fn boundary_points_solve_the_kernel() {
        let m = example1(-0.5);
        let theta = boundary_point(&m, &dir(&[0.0, 0.0])).unwrap();
        let want = (2.0 - 2.0f64.sqrt()).ln();
        assert!((theta[0] - want).abs() < 1e-14);
        assert!((theta[1] - want).abs() < 1e-14);
        assert!(boundary_residual(&m, &theta).unwrap() < 1e-14);

        let theta = boundary_point(&example2(), &dir(&[0.0, 0.0, 0.0])).unwrap();
        let want = ((21.0f64.sqrt() - 3.0) / 6.0).ln();
        for t in &theta {
            assert!((t - want).abs() < 1e-14);
        }

        let m1 = AffineModel::new(1).unwrap().with_term(&[1], 1.0).unwrap();
        let theta = boundary_point(&m1, &dir(&[0.0])).unwrap();
        assert!(theta[0].abs() < 1e-15);
    }

    #[test]
    fn closed_form_boundary_values() {
        let m = example1(-0.5);
        let v = closed_form_boundary_2d(&m, -(2.0f64.ln())).unwrap();
        assert!((v + 1.5f64.ln()).abs() < 1e-14);

        // the symmetric boundary point lies on its own closed form
        let sym = (2.0 - 2.0f64.sqrt()).ln();
        let v = closed_form_boundary_2d(&m, sym).unwrap();
        assert!((v - sym).abs() < 1e-13);

        // a = 1: the ordinate tends to 0⁻ as θ₁ → −∞
        let m = example1(1.0);
        let v = closed_form_boundary_2d(&m, -30.0).unwrap();
        assert!(v < 0.0 && v > -1e-12, "got {v}");

        assert!(matches!(
            closed_form_boundary_2d(&example1(-0.5), 0.1),
            Err(Error::NonnegativeTheta(_))
        ));
        let bad = AffineModel::new(2)
            .unwrap()
            .with_term(&[1], 2.0)
            .unwrap()
            .with_term(&[2], 1.0)
            .unwrap();
        assert!(matches!(
            closed_form_boundary_2d(&bad, -1.0),
            Err(Error::ClosedFormUnsupported)
        ));
    }

    #[test]
    fn grid_degenerate_to_single_point() {
        let m = example1(-0.5);
        let rows = boundary_grid(&m, &[GridRange::new(0.0, 0.0, 1.0).unwrap()]).unwrap();
        assert_eq!(rows.len(), 1);
        let direct = boundary_point(&m, &dir(&[0.0, 0.0])).unwrap();
        assert_eq!(rows[0].theta, direct);
        assert!(rows[0].residual < 1e-14);
    }

    #[test]
    fn grid_counts_and_layouts() {
        let m = example1(-0.5);
        let rows = boundary_grid(&m, &[GridRange::new(-3.0, 3.0, 0.01).unwrap()]).unwrap();
        assert_eq!(rows.len(), 601);

        let rows = boundary_grid(
            &example2(),
            &[
                GridRange::new(-2.0, 2.0, 0.1).unwrap(),
                GridRange::new(-2.0, 2.0, 0.1).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(rows.len(), 41 * 41);

        let m1 = AffineModel::new(1).unwrap().with_term(&[1], 1.0).unwrap();
        assert!(matches!(
            boundary_grid(&m1, &[GridRange::new(0.0, 1.0, 0.5).unwrap()]),
            Err(Error::UnsupportedGridDimension(1))
        ));
        assert!(boundary_grid(&m, &[]).is_err());
    }

    #[test]
    fn strict_separation_around_a_boundary_point() {
        let m = example1(-0.5);
        let theta = boundary_point(&m, &dir(&[0.7, -0.7])).unwrap();
        let eps = 1e-3;
        let lower: Vec<f64> = theta.iter().map(|t| t - eps).collect();
        let upper: Vec<f64> = theta.iter().map(|t| t + eps).collect();
        assert_eq!(
            classify(&m, &lower, 1e-9).unwrap().classification,
            Membership::Inside
        );
        assert_eq!(
            classify(&m, &upper, 1e-9).unwrap().classification,
            Membership::Outside
        );
        assert_eq!(
            classify(&m, &theta, 1e-9).unwrap().classification,
            Membership::Boundary
        );
    }
}
