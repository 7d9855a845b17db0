//! Invariant suites, one per subsystem, each yielding measured margins.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coeff::CoeffVector;
use crate::error::Result;
use crate::operators::{
    classify_symmetric, commutator_matrix, from_rep, hermitian_defect, max_abs_diff, skew_hermitian_defect, to_rep,
    zhu_scan, FirstOrderOp, SelfAdjointParams, SymmetricForm,
};
use crate::quadrature::{gauss_jacobi_unit, kernel_eval, reproduce, KernelPoint, QuadratureGrid};
use crate::report::{Convention, CONVENTIONS};
use crate::series::{derivative_order, derived_op, group_act, group_act_poly, xnorm_sq, RepContext};
use crate::shift::{
    compare_kernel_shift, domain_identification_check, frame_constants, KernelShiftComparison, ShiftOp,
};
use crate::su11::{bracket, GroupElement, LieElement};
use crate::uncertainty::{consistency_check, minimize_shift, soltani_up, Shift};
use crate::weight::{
    basis_to_taylor, bergman_norm_sq, inner_product, monomial_norm_sq, sobolev_norm_sq, taylor_to_basis,
    TruncationPolicy, WeightParam,
};

/// Everything that determines a verification run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub xi: f64,
    pub degree: usize,
    pub quad_radial: usize,
    pub quad_angular: usize,
    pub seed: u64,
    pub tol_exact: f64,
    pub tol_quad: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        let p = TruncationPolicy::default();
        Self {
            xi: 0.0,
            degree: p.degree,
            quad_radial: crate::quadrature::DEFAULT_RADIAL,
            quad_angular: crate::quadrature::DEFAULT_ANGULAR,
            seed: 20240601,
            tol_exact: p.tol_exact,
            tol_quad: p.tol_quad,
        }
    }
}

impl VerifyConfig {
    pub fn policy(&self) -> Result<TruncationPolicy> {
        TruncationPolicy::new(self.degree, self.tol_exact, self.tol_quad)
    }

    pub fn weight(&self) -> Result<WeightParam> {
        WeightParam::new(self.xi)
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    /// The fixed weight list plus the configured weight, deduplicated.
    fn weights(&self, fixed: &[f64]) -> Vec<WeightParam> {
        let mut xs: Vec<f64> = fixed.to_vec();
        if !xs.contains(&self.xi) {
            xs.push(self.xi);
        }
        xs.into_iter().filter_map(|x| WeightParam::new(x).ok()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Comparison {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
}

/// One checked property with its measured value and threshold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyResult {
    pub suite: &'static str,
    pub name: &'static str,
    pub measured: f64,
    pub comparison: Comparison,
    pub threshold: f64,
    /// Which tolerance the threshold comes from (`tol_exact`, `tol_quad`, or `fixed`).
    pub tolerance: &'static str,
    pub passed: bool,
}

impl PropertyResult {
    fn at_most(
        suite: &'static str,
        name: &'static str,
        measured: f64,
        threshold: f64,
        tolerance: &'static str,
    ) -> Self {
        Self {
            suite,
            name,
            measured,
            comparison: Comparison::AtMost,
            threshold,
            tolerance,
            passed: measured <= threshold,
        }
    }

    fn at_least(
        suite: &'static str,
        name: &'static str,
        measured: f64,
        threshold: f64,
        tolerance: &'static str,
    ) -> Self {
        Self {
            suite,
            name,
            measured,
            comparison: Comparison::AtLeast,
            threshold,
            tolerance,
            passed: measured >= threshold,
        }
    }
}

pub const SUITES: &[&str] = &[
    "disc_oracle",
    "discrete_series",
    "first_order_ops",
    "shift_iso",
    "su11_algebra",
    "uncertainty",
    "weight_core",
];

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub suites: Vec<&'static str>,
    pub conventions: &'static [Convention],
    pub kernel_shift: Vec<KernelShiftComparison>,
    pub properties: Vec<PropertyResult>,
    pub passed: usize,
    pub failed: usize,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyResult> {
        self.properties.iter().filter(|p| !p.passed)
    }
}

/// Run the named suites (all when `selected` is empty) in name order.
pub fn run(config: &VerifyConfig, selected: &[String]) -> Result<VerifyReport> {
    config.policy()?;
    config.weight()?;
    for name in selected {
        if !SUITES.contains(&name.as_str()) {
            return Err(crate::Error::InvalidArgument(format!(
                "unknown suite {name:?}; expected one of {}",
                SUITES.join(", ")
            )));
        }
    }
    let suites: Vec<&'static str> = SUITES
        .iter()
        .copied()
        .filter(|s| selected.is_empty() || selected.iter().any(|x| x == s))
        .collect();
    let mut properties = Vec::new();
    for &suite in &suites {
        properties.extend(match suite {
            "disc_oracle" => disc_oracle(config)?,
            "discrete_series" => discrete_series(config)?,
            "first_order_ops" => first_order_ops(config)?,
            "shift_iso" => shift_iso(config)?,
            "su11_algebra" => su11_algebra(config),
            "uncertainty" => uncertainty(config),
            "weight_core" => weight_core(config)?,
            _ => unreachable!(),
        });
    }
    let kernel_shift = if suites.contains(&"shift_iso") {
        kernel_rows()?
    } else {
        Vec::new()
    };
    let failed = properties.iter().filter(|p| !p.passed).count();
    Ok(VerifyReport {
        config: config.clone(),
        suites,
        conventions: CONVENTIONS,
        kernel_shift,
        passed: properties.len() - failed,
        failed,
        properties,
    })
}

fn random_poly(rng: &mut ChaCha8Rng, max_degree: usize) -> CoeffVector {
    let deg = rng.random_range(0..=max_degree);
    CoeffVector::random(rng, deg)
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn weight_core(cfg: &VerifyConfig) -> Result<Vec<PropertyResult>> {
    const S: &str = "weight_core";
    let mut rng = cfg.rng(1);
    let mut out = Vec::new();

    let mut recurrence = 0.0f64;
    let mut monotone_breaks = 0.0;
    for xi in cfg.weights(&[-0.5, 0.0, 1.0, 2.5]) {
        for k in 1..=1000 {
            let lhs = monomial_norm_sq(xi, k - 1);
            let rhs = (xi.xi() + 1.0 + k as f64) / k as f64 * monomial_norm_sq(xi, k);
            recurrence = recurrence.max(rel_err(lhs, rhs));
        }
        for l in [1usize, 2, 5] {
            let mut prev = f64::INFINITY;
            for k in 0..=1000 {
                let gap = (monomial_norm_sq(xi, k + l) / monomial_norm_sq(xi, k) - 1.0).abs();
                if gap > prev * (1.0 + 1e-12) {
                    monotone_breaks += 1.0;
                }
                prev = gap;
            }
        }
    }
    out.push(PropertyResult::at_most(
        S,
        "norm_ratio_recurrence",
        recurrence,
        cfg.tol_exact,
        "tol_exact",
    ));
    out.push(PropertyResult::at_most(
        S,
        "shift_limit_monotone_breaks",
        monotone_breaks,
        0.0,
        "fixed",
    ));

    let top = cfg.degree.min(20);
    let mut oracle = 0.0f64;
    for xi in cfg.weights(&[-0.5, 0.0, 1.0, 2.5]) {
        let grid = QuadratureGrid::new(xi, cfg.quad_radial, cfg.quad_angular)?;
        for j in 0..=top {
            for k in 0..=top {
                let (f, g) = (CoeffVector::monomial(j), CoeffVector::monomial(k));
                oracle = oracle.max((inner_product(&f, &g, xi) - grid.inner_product(&f, &g)?).norm());
            }
        }
    }
    out.push(PropertyResult::at_most(
        S,
        "oracle_equivalence",
        oracle,
        cfg.tol_quad,
        "tol_quad",
    ));

    let xi = cfg.weight()?;
    let mut round_trip = 0.0f64;
    let mut sesqui = 0.0f64;
    for _ in 0..50 {
        let f = CoeffVector::random(&mut rng, cfg.degree);
        let g = CoeffVector::random(&mut rng, cfg.degree);
        round_trip = round_trip.max(taylor_to_basis(&basis_to_taylor(&f, xi), xi).max_abs_diff(&f));
        let (fg, gf) = (inner_product(&f, &g, xi), inner_product(&g, &f, xi));
        sesqui = sesqui.max((fg - gf.conj()).norm() / fg.norm().max(1.0));
    }
    out.push(PropertyResult::at_most(
        S,
        "basis_round_trip",
        round_trip,
        cfg.tol_exact,
        "tol_exact",
    ));
    out.push(PropertyResult::at_most(
        S,
        "conjugate_symmetry",
        sesqui,
        cfg.tol_exact,
        "tol_exact",
    ));

    // ‖·‖_{ξ,1} against Σ k(k+ξ+1)|a_k|²‖z^k‖²: bounds from k/(k+ξ+1) over the scanned range.
    let mut equivalence_violations = 0.0;
    for xi in cfg.weights(&[-0.5, 0.0, 1.0, 2.5]) {
        let ratios = (1..=cfg.degree).map(|k| k as f64 / (k as f64 + xi.xi() + 1.0));
        let (lo, hi) = ratios.fold((1.0f64, 1.0f64), |(lo, hi), r| (lo.min(r), hi.max(r)));
        for _ in 0..50 {
            let f = CoeffVector::random(&mut rng, cfg.degree);
            let integral = f.get(0).norm_sqr()
                + (1..=cfg.degree)
                    .map(|k| k as f64 * (k as f64 + xi.xi() + 1.0) * f.get(k).norm_sqr() * monomial_norm_sq(xi, k))
                    .sum::<f64>();
            let sob = sobolev_norm_sq(&f, xi, 1)?;
            if lo * integral > sob * (1.0 + 1e-12) || sob > hi * integral * (1.0 + 1e-12) {
                equivalence_violations += 1.0;
            }
        }
    }
    out.push(PropertyResult::at_most(
        S,
        "sobolev_norm_equivalence_violations",
        equivalence_violations,
        0.0,
        "fixed",
    ));
    Ok(out)
}

fn disc_oracle(cfg: &VerifyConfig) -> Result<Vec<PropertyResult>> {
    const S: &str = "disc_oracle";
    let mut rng = cfg.rng(2);
    let mut out = Vec::new();

    let mut mass = 0.0f64;
    for xi in cfg.weights(&[-0.5, 0.0, 1.0, 2.5]) {
        let grid = QuadratureGrid::new(xi, cfg.quad_radial, cfg.quad_angular)?;
        mass = mass.max((grid.integrate(|_| Complex64::new(1.0, 0.0))? - 1.0).norm());
    }
    out.push(PropertyResult::at_most(S, "probability_measure", mass, 1e-12, "fixed"));

    let mut exact = 0.0f64;
    for xi in [0.0, 1.0, 2.0] {
        let r = cfg.quad_radial;
        let rule = gauss_jacobi_unit(r, xi)?;
        for k in 0..2 * r {
            let q: f64 = rule.iter().map(|&(s, w)| w * s.powi(k as i32)).sum();
            let beta: f64 = (1..=k).map(|j| j as f64 / (j as f64 + xi + 1.0)).product();
            exact = exact.max((q - beta).abs());
        }
    }
    out.push(PropertyResult::at_most(S, "radial_exactness", exact, 1e-9, "fixed"));

    let grid = QuadratureGrid::new(cfg.weight()?, cfg.quad_radial, cfg.quad_angular)?;
    let m = cfg.quad_angular as i32;
    let mut angular = 0.0f64;
    for k in (1..m).step_by(((m / 32).max(1)) as usize) {
        angular = angular.max(grid.integrate(|z| (z / z.norm()).powi(k))?.norm());
    }
    out.push(PropertyResult::at_most(S, "angular_exactness", angular, 1e-12, "fixed"));

    let mut repro = 0.0f64;
    let weights = [-0.5, 0.0, 0.5, 1.0, 2.5];
    for i in 0..50 {
        let xi = WeightParam::new(weights[i % weights.len()])?;
        let grid = QuadratureGrid::new(xi, cfg.quad_radial, cfg.quad_angular)?;
        let f = random_poly(&mut rng, 12);
        let w = Complex64::from_polar(rng.random_range(0.0..0.8), rng.random_range(0.0..std::f64::consts::TAU));
        let got = reproduce(&f, KernelPoint::new(w)?, &grid)?;
        repro = repro.max((got - f.eval(w)).norm());
    }
    out.push(PropertyResult::at_most(
        S,
        "reproducing_identity",
        repro,
        cfg.tol_quad,
        "tol_quad",
    ));

    let xi = cfg.weight()?;
    let mut herm = 0.0f64;
    for _ in 0..50 {
        let z = Complex64::from_polar(
            rng.random_range(0.0..0.95),
            rng.random_range(0.0..std::f64::consts::TAU),
        );
        let w = Complex64::from_polar(
            rng.random_range(0.0..0.95),
            rng.random_range(0.0..std::f64::consts::TAU),
        );
        let a = kernel_eval(z, KernelPoint::new(w)?, xi)?;
        let b = kernel_eval(w, KernelPoint::new(z)?, xi)?;
        herm = herm.max((a - b.conj()).norm() / a.norm());
    }
    out.push(PropertyResult::at_most(
        S,
        "kernel_hermitian",
        herm,
        cfg.tol_exact,
        "tol_exact",
    ));
    Ok(out)
}

fn su11_algebra(cfg: &VerifyConfig) -> Vec<PropertyResult> {
    const S: &str = "su11_algebra";
    let mut rng = cfg.rng(3);
    let mut jacobi = 0.0f64;
    let mut group_law = 0.0f64;
    let mut det = 0.0f64;
    for _ in 0..200 {
        let (u, v, w) = (
            LieElement::random(&mut rng, 1.0),
            LieElement::random(&mut rng, 1.0),
            LieElement::random(&mut rng, 1.0),
        );
        let j = bracket(u, bracket(v, w)) + bracket(v, bracket(w, u)) + bracket(w, bracket(u, v));
        jacobi = jacobi.max(j.max_abs_diff(LieElement::ZERO));
        let (s, t) = (rng.random_range(-2.0..=2.0), rng.random_range(-2.0..=2.0));
        let lhs = u.exp_at(s + t);
        if let Ok(rhs) = u.exp_at(s).compose(u.exp_at(t)) {
            group_law = group_law.max(lhs.max_abs_diff(rhs) / lhs.alpha().norm());
        } else {
            group_law = f64::INFINITY;
        }
        det = det.max((lhs.det() - 1.0).abs());
    }
    let structure = bracket(LieElement::w(), LieElement::y()).max_abs_diff(LieElement::x().scale(-2.0));
    vec![
        PropertyResult::at_most(S, "jacobi_identity", jacobi, 1e-12, "fixed"),
        PropertyResult::at_most(S, "structure_relation_wy", structure, 0.0, "fixed"),
        PropertyResult::at_most(S, "one_parameter_group_law", group_law, 1e-10, "fixed"),
        PropertyResult::at_most(S, "unit_determinant", det, 1e-10, "fixed"),
    ]
}

fn sample_points(rng: &mut ChaCha8Rng, count: usize, radius: f64) -> Vec<Complex64> {
    (0..count)
        .map(|_| {
            Complex64::from_polar(
                rng.random_range(0.0..radius),
                rng.random_range(0.0..std::f64::consts::TAU),
            )
        })
        .collect()
}

fn discrete_series(cfg: &VerifyConfig) -> Result<Vec<PropertyResult>> {
    const S: &str = "discrete_series";
    let mut rng = cfg.rng(4);
    let mut out = Vec::new();

    let mut skew = 0.0f64;
    for xi in cfg.weights(&[-0.5, 0.0, 1.0, 2.5]) {
        for _ in 0..50 {
            let op = derived_op(LieElement::random(&mut rng, 1.0), xi);
            let f = random_poly(&mut rng, 16);
            let g = random_poly(&mut rng, 16);
            let lhs = inner_product(&op.apply(&f, 18), &g, xi);
            let rhs = -inner_product(&f, &op.apply(&g, 18), xi);
            skew = skew.max((lhs - rhs).norm() / lhs.norm().max(1.0));
        }
    }
    out.push(PropertyResult::at_most(
        S,
        "skew_symmetry",
        skew,
        cfg.tol_exact,
        "tol_exact",
    ));

    let mut min_order = f64::INFINITY;
    let points = sample_points(&mut rng, 8, 0.8);
    for xi in [0.0, 1.0, 2.0] {
        let ctx = RepContext::new(WeightParam::new(xi)?);
        let mut us = vec![LieElement::x(), LieElement::y(), LieElement::z()];
        us.extend((0..20).map(|_| LieElement::random(&mut rng, 1.0)));
        let f = CoeffVector::random(&mut rng, 6);
        for u in us {
            if let Some(order) = derivative_order(u, &f, 1e-3, &ctx, &points)?.order {
                min_order = min_order.min(order);
            }
        }
    }
    out.push(PropertyResult::at_least(
        S,
        "derivative_convergence_order",
        min_order,
        1.9,
        "fixed",
    ));

    let mut homo = 0.0f64;
    let mut unitarity = 0.0f64;
    for xi in [0.0, 1.0, 2.0] {
        let xi = WeightParam::new(xi)?;
        let ctx = RepContext::new(xi);
        let grid = QuadratureGrid::new(xi, cfg.quad_radial, cfg.quad_angular)?;
        for _ in 0..20 {
            let x = GroupElement::random(&mut rng, 0.5);
            let y = GroupElement::random(&mut rng, 0.5);
            let xy = x.compose(y)?;
            let f = CoeffVector::random(&mut rng, 6);
            for &z in &points {
                let lhs = group_act(
                    x,
                    |v| group_act_poly(y, &f, v, &ctx).unwrap_or(Complex64::new(f64::NAN, 0.0)),
                    z,
                    &ctx,
                )?;
                let rhs = group_act_poly(xy, &f, z, &ctx)?;
                let e = (lhs - rhs).norm() / rhs.norm().max(1.0);
                homo = homo.max(if e.is_nan() { f64::INFINITY } else { e });
            }
            let moved = grid.norm_sq(|z| group_act_poly(x, &f, z, &ctx).unwrap_or(Complex64::new(f64::NAN, 0.0)))?;
            unitarity = unitarity.max((moved.sqrt() - bergman_norm_sq(&f, xi).sqrt()).abs());
        }
    }
    out.push(PropertyResult::at_most(S, "homomorphism", homo, 1e-8, "fixed"));
    out.push(PropertyResult::at_most(
        S,
        "unitarity",
        unitarity,
        cfg.tol_quad,
        "tol_quad",
    ));

    let mut sandwich_violations = 0.0;
    let mut two_route = 0.0f64;
    for xi in cfg.weights(&[0.0, 0.5, 2.0]) {
        if xi.xi() < 0.0 {
            // The upper bound needs (2k+ξ+2) ≤ 2(ξ+2)k at k = 1, i.e. ξ ≥ 0.
            continue;
        }
        let h = xi.shifted();
        for _ in 0..500 {
            let f = CoeffVector::random(&mut rng, cfg.degree);
            let a0 = f.get(0).norm_sqr();
            let s1 = sobolev_norm_sq(&f, xi, 1)?;
            let x = xnorm_sq(&f, xi);
            if s1 + (h * h * a0 - a0) > x + 1e-12 || x > 4.0 * h * h * s1 + 1e-12 {
                sandwich_violations += 1.0;
            }
            let via_op = bergman_norm_sq(&derived_op(LieElement::x(), xi).apply(&f, cfg.degree), xi);
            two_route = two_route.max(rel_err(x, via_op));
        }
    }
    out.push(PropertyResult::at_most(
        S,
        "norm_sandwich_violations",
        sandwich_violations,
        0.0,
        "fixed",
    ));
    out.push(PropertyResult::at_most(
        S,
        "xnorm_two_routes",
        two_route,
        cfg.tol_exact,
        "tol_exact",
    ));
    Ok(out)
}

/// Random operator of degree ≤ 5: half in symmetric form, half perturbed off it.
pub fn random_classification_case(rng: &mut ChaCha8Rng, xi: WeightParam, conforming: bool) -> FirstOrderOp {
    let sf = SymmetricForm {
        a0: Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
        a1: rng.random_range(-2.0..2.0),
        b0: rng.random_range(-2.0..2.0),
        xi,
    };
    let op = sf.to_op().plus_scalar(Complex64::new(0.0, 0.0));
    if conforming {
        return op;
    }
    let (mut f, mut g) = (op.f.truncated(5).into_coeffs(), op.g.truncated(5).into_coeffs());
    let magnitude = 10f64.powf(rng.random_range(-3.0..0.0));
    let delta = Complex64::from_polar(magnitude, rng.random_range(0.0..std::f64::consts::TAU));
    match rng.random_range(0..6) {
        0 => f[rng.random_range(3..=5)] += delta,
        1 => g[rng.random_range(2..=5)] += delta,
        2 => f[1] += Complex64::new(0.0, magnitude),
        3 => g[0] += Complex64::new(0.0, magnitude),
        4 => f[2] += delta,
        _ => g[1] += delta,
    }
    FirstOrderOp::new(CoeffVector::new(f), CoeffVector::new(g))
}

fn first_order_ops(cfg: &VerifyConfig) -> Result<Vec<PropertyResult>> {
    const S: &str = "first_order_ops";
    let mut rng = cfg.rng(5);
    let mut out = Vec::new();

    let mut mismatches = 0.0;
    let weights = cfg.weights(&[0.0, 0.5, 2.0]);
    for i in 0..400 {
        let xi = weights[i % weights.len()];
        let op = random_classification_case(&mut rng, xi, i % 2 == 0);
        let verdict = classify_symmetric(&op, xi, 1e-9);
        let hermitian = hermitian_defect(&op.gram_matrix(xi, 16)).0 <= 1e-9;
        if verdict.is_symmetric() != hermitian {
            mismatches += 1.0;
        }
    }
    out.push(PropertyResult::at_most(
        S,
        "classification_iff_hermitian_mismatches",
        mismatches,
        0.0,
        "fixed",
    ));

    let mut tri = 0.0f64;
    let mut rep_rt = 0.0f64;
    let mut herm = 0.0f64;
    for xi in cfg.weights(&[-0.5, 0.0, 0.5, 2.0]) {
        for _ in 0..20 {
            let sf = SymmetricForm {
                a0: Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
                a1: rng.random_range(-2.0..2.0),
                b0: rng.random_range(-2.0..2.0),
                xi,
            };
            let gram = sf.to_op().gram_matrix(xi, cfg.degree);
            let scale = gram.iter().map(|x| x.norm()).fold(1.0, f64::max);
            tri = tri.max(max_abs_diff(&sf.tridiagonal(cfg.degree).to_dense(), &gram) / scale);

            let p = SelfAdjointParams {
                a: rng.random_range(-3.0..3.0),
                b: rng.random_range(-3.0..3.0),
                c: Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            };
            let r = to_rep(p, xi);
            rep_rt = rep_rt
                .max(from_rep(r, xi).max_abs_diff(p))
                .max(to_rep(from_rep(r, xi), xi).max_abs_diff(r));
            rep_rt = rep_rt.max(r.to_op(xi).max_abs_diff(&p.to_op(xi)));

            let u = LieElement::random(&mut rng, 1.0);
            let d = rng.random_range(-3.0..3.0);
            let g = derived_op(u, xi)
                .scale(Complex64::new(0.0, 1.0))
                .plus_scalar(Complex64::new(d, 0.0))
                .gram_matrix(xi, cfg.degree);
            let scale = g.iter().map(|x| x.norm()).fold(1.0, f64::max);
            herm = herm.max(hermitian_defect(&g).0 / scale);
        }
    }
    out.push(PropertyResult::at_most(
        S,
        "tridiagonal_identity",
        tri,
        cfg.tol_exact,
        "tol_exact",
    ));
    out.push(PropertyResult::at_most(
        S,
        "rep_round_trip",
        rep_rt,
        cfg.tol_exact,
        "tol_exact",
    ));
    out.push(PropertyResult::at_most(
        S,
        "self_adjoint_hermitian",
        herm,
        cfg.tol_exact,
        "tol_exact",
    ));

    let xi = cfg.weight()?;
    let mut compat = 0.0f64;
    let mut skew = 0.0f64;
    for _ in 0..200 {
        let (u, v) = (LieElement::random(&mut rng, 1.0), LieElement::random(&mut rng, 1.0));
        let (pu, pv) = (derived_op(u, xi), derived_op(v, xi));
        let comm = commutator_matrix(&pu, &pv, xi, cfg.degree);
        let expect = derived_op(bracket(u, v), xi).gram_matrix(xi, cfg.degree);
        let scale = expect.iter().map(|x| x.norm()).fold(1.0, f64::max);
        compat = compat.max(max_abs_diff(&comm, &expect) / scale);
        let g = pu.gram_matrix(xi, cfg.degree);
        skew = skew.max(skew_hermitian_defect(&g) / g.iter().map(|x| x.norm()).fold(1.0, f64::max));
    }
    out.push(PropertyResult::at_most(
        S,
        "bracket_compatibility",
        compat,
        cfg.tol_exact,
        "tol_exact",
    ));
    out.push(PropertyResult::at_most(
        S,
        "derived_gram_skew_hermitian",
        skew,
        cfg.tol_exact,
        "tol_exact",
    ));

    let mut zhu_violations = 0.0;
    for xi in cfg.weights(&[0.0, 1.0, 2.5]) {
        match zhu_scan(1000, xi, cfg.seed, 1e-8) {
            Ok(r) => zhu_violations += r.violations as f64,
            Err(_) => zhu_violations += 1.0,
        }
    }
    out.push(PropertyResult::at_most(
        S,
        "zhu_nonzero_scalar_commutators",
        zhu_violations,
        0.0,
        "fixed",
    ));
    Ok(out)
}

fn uncertainty(cfg: &VerifyConfig) -> Vec<PropertyResult> {
    const S: &str = "uncertainty";
    let mut rng = cfg.rng(6);
    let mut min_slack = f64::INFINITY;
    let mut imag = 0.0f64;
    let mut consistency = 0.0f64;
    let mut optimized = f64::INFINITY;
    let mut equality = 0.0f64;
    let grid = [-2.0, -1.0, 0.0, 1.0, 2.0];
    for xi in cfg.weights(&[-0.5, 0.0, 1.0, 2.5]) {
        for i in 0..500 {
            let f = random_poly(&mut rng, 20);
            for &w in &grid {
                for &y in &grid {
                    let r = soltani_up(&f, w, y, xi);
                    min_slack = min_slack.min(r.slack);
                    imag = imag.max(r.lhs_imag.abs() / r.lhs.abs().max(1.0));
                }
            }
            if i % 25 == 0 {
                let (w, y) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
                let scale = soltani_up(&f, w, y, xi).rhs.max(1.0);
                consistency = consistency.max(consistency_check(&f, w, y, xi) / scale);
                for which in [Shift::W, Shift::Y] {
                    let r = minimize_shift(&f, 0.0, which, xi);
                    optimized = optimized.min(r.slack / r.rhs.max(1.0));
                }
            }
        }
        let c = CoeffVector::constant(Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU)));
        equality = equality.max(soltani_up(&c, 0.0, 0.0, xi).slack.abs());
    }
    vec![
        PropertyResult::at_least(S, "inequality_min_slack", min_slack, -1e-10, "fixed"),
        PropertyResult::at_most(S, "equality_at_constants", equality, 1e-12, "fixed"),
        PropertyResult::at_most(S, "lhs_imaginary_part", imag, 1e-12, "fixed"),
        PropertyResult::at_most(S, "two_route_consistency", consistency, cfg.tol_exact, "tol_exact"),
        PropertyResult::at_least(S, "optimized_shift_min_slack", optimized, -cfg.tol_exact, "tol_exact"),
    ]
}

fn kernel_rows() -> Result<Vec<KernelShiftComparison>> {
    let mut rows = Vec::new();
    for xi in [0.0, 0.5, 1.0, 3.0] {
        for w in [
            Complex64::new(0.4, 0.0),
            Complex64::new(0.2, 0.0),
            Complex64::new(0.4, 0.3),
        ] {
            rows.push(compare_kernel_shift(KernelPoint::new(w)?, WeightParam::new(xi)?, 60)?);
        }
    }
    Ok(rows)
}

fn shift_iso(cfg: &VerifyConfig) -> Result<Vec<PropertyResult>> {
    const S: &str = "shift_iso";
    let mut rng = cfg.rng(7);
    let mut out = Vec::new();

    let unit = ShiftOp::new(Complex64::new(1.0, 0.0))?;
    let base = WeightParam::new(0.0)?;
    let fc = frame_constants(unit, base, 64.max(cfg.degree));
    out.push(PropertyResult::at_most(
        S,
        "frame_constants_c1_xi0",
        (fc.lower - 1.0).abs().max((fc.upper - 6.0).abs()),
        1e-12,
        "fixed",
    ));

    let mut violations = 0.0;
    let mut round_trip = 0.0f64;
    let cases = [
        (Complex64::new(1.0, 0.0), 0.0),
        (Complex64::new(-0.5, 0.3), 1.0),
        (Complex64::new(2.0, -1.0), cfg.xi),
    ];
    for (c, xi) in cases {
        let (op, xi) = (ShiftOp::new(c)?, WeightParam::new(xi)?);
        let up = xi.offset(2.0)?;
        let fc = frame_constants(op, xi, cfg.degree);
        for _ in 0..200 {
            let f = random_poly(&mut rng, cfg.degree);
            let (n0, n1) = (bergman_norm_sq(&f, xi), bergman_norm_sq(&op.apply(&f), up));
            if fc.lower * n0 > n1 * (1.0 + 1e-12) || n1 > fc.upper * n0 * (1.0 + 1e-12) {
                violations += 1.0;
            }
            round_trip = round_trip.max(op.invert(&op.apply(&f)).max_abs_diff(&f));
        }
    }
    out.push(PropertyResult::at_most(
        S,
        "frame_sandwich_violations",
        violations,
        0.0,
        "fixed",
    ));
    out.push(PropertyResult::at_most(
        S,
        "invert_apply_identity",
        round_trip,
        cfg.tol_exact.min(1e-12),
        "tol_exact",
    ));

    let mut tail_breaks = 0.0;
    for (c, xi) in cases {
        let (op, xi) = (ShiftOp::new(c)?, WeightParam::new(xi)?);
        let tail = (xi.xi() + 3.0) * (xi.xi() + 2.0);
        let start = (2.0 * xi.xi() + 2.0 * c.norm() + 10.0).ceil() as usize;
        let mut prev = f64::INFINITY;
        for k in start..start + 1000 {
            let gap = (op.ratio(xi, k) - tail).abs();
            if gap > prev {
                tail_breaks += 1.0;
            }
            prev = gap;
        }
    }
    out.push(PropertyResult::at_most(
        S,
        "monotone_tail_breaks",
        tail_breaks,
        0.0,
        "fixed",
    ));

    let rows = kernel_rows()?;
    let derived = rows.iter().map(|r| r.residual_derived).fold(0.0, f64::max);
    let printed = rows
        .iter()
        .filter(|r| r.w_re != 0.0 || r.w_im != 0.0)
        .map(|r| r.residual_printed)
        .fold(f64::INFINITY, f64::min);
    out.push(PropertyResult::at_most(
        S,
        "kernel_shift_derived_residual",
        derived,
        1e-12,
        "fixed",
    ));
    out.push(PropertyResult::at_least(
        S,
        "kernel_shift_printed_residual",
        printed,
        1e-3,
        "fixed",
    ));

    let mut domain_bad = 0.0;
    for xi in [1.5, 2.0, 4.0] {
        let (m, big_m) = domain_identification_check(WeightParam::new(xi)?, 256)?;
        if !(m > 0.0 && big_m.is_finite() && m <= big_m) {
            domain_bad += 1.0;
        }
    }
    out.push(PropertyResult::at_most(
        S,
        "domain_identification_degenerate",
        domain_bad,
        0.0,
        "fixed",
    ));

    let zero = ShiftOp::new_unchecked(Complex64::new(0.0, 0.0));
    let mut surj = 0.0f64;
    for _ in 0..20 {
        let g =
            CoeffVector::random(&mut rng, cfg.degree)
                .map_indexed(|k, a| if k == 0 { Complex64::new(0.0, 0.0) } else { a });
        let pre = g.map_indexed(|k, a| if k == 0 { a } else { a / k as f64 });
        surj = surj.max(zero.apply(&pre).max_abs_diff(&g));
        surj = surj.max(
            zero.apply(&CoeffVector::constant(g.get(1)))
                .max_abs_diff(&CoeffVector::zeros(0)),
        );
    }
    out.push(PropertyResult::at_most(
        S,
        "zero_shift_surjective_onto_vanishing",
        surj,
        1e-14,
        "fixed",
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_rejected() {
        let err = run(&VerifyConfig::default(), &["nope".to_string()]).unwrap_err();
        assert!(err.to_string().contains("unknown suite"));
    }

    #[test]
    fn su11_suite_passes_and_filters() {
        let r = run(&VerifyConfig::default(), &["su11_algebra".to_string()]).unwrap();
        assert_eq!(r.suites, vec!["su11_algebra"]);
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert!(r.properties.iter().all(|p| p.suite == "su11_algebra"));
    }

    #[test]
    fn classification_cases_split_as_requested() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let xi = WeightParam::new(0.5).unwrap();
        for i in 0..100 {
            let op = random_classification_case(&mut rng, xi, i % 2 == 0);
            assert_eq!(classify_symmetric(&op, xi, 1e-9).is_symmetric(), i % 2 == 0);
        }
    }
}
