use bergman_core::{
    basis_to_taylor, bergman_norm_sq, derived_op, from_rep, inner_product, taylor_to_basis, to_rep, CoeffVector,
    Complex64, LieElement, SelfAdjointParams, ShiftOp, WeightParam,
};
use proptest::prelude::*;

fn weight() -> impl Strategy<Value = WeightParam> {
    (-0.99f64..20.0).prop_map(|x| WeightParam::new(x).unwrap())
}

fn complex() -> impl Strategy<Value = Complex64> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn poly() -> impl Strategy<Value = CoeffVector> {
    prop::collection::vec(complex(), 1..16).prop_map(CoeffVector::new)
}

fn lie() -> impl Strategy<Value = LieElement> {
    (-2.0f64..2.0, complex()).prop_map(|(a, b)| LieElement { a, b })
}

proptest! {
    #[test]
    fn inner_product_is_conjugate_symmetric(f in poly(), g in poly(), xi in weight()) {
        let (fg, gf) = (inner_product(&f, &g, xi), inner_product(&g, &f, xi));
        prop_assert!((fg - gf.conj()).norm() <= 1e-12 * fg.norm().max(1.0));
    }

    #[test]
    fn inner_product_is_linear_in_first_slot(f in poly(), g in poly(), h in poly(), s in complex(), xi in weight()) {
        let lhs = inner_product(&(&(&f * s) + &g), &h, xi);
        let rhs = s * inner_product(&f, &h, xi) + inner_product(&g, &h, xi);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm().max(1.0));
    }

    #[test]
    fn norm_is_positive(f in poly(), xi in weight()) {
        let n = bergman_norm_sq(&f, xi);
        prop_assert!(n >= 0.0);
        prop_assert_eq!(n == 0.0, f.is_zero());
    }

    #[test]
    fn basis_round_trip(f in poly(), xi in weight()) {
        prop_assert!(basis_to_taylor(&taylor_to_basis(&f, xi), xi).max_abs_diff(&f) <= 1e-12);
    }

    #[test]
    fn shift_round_trip(f in poly(), c in complex()) {
        prop_assume!(ShiftOp::new(c).is_ok());
        let op = ShiftOp::new(c).unwrap();
        prop_assume!((0..16).all(|k| (c + k as f64).norm() > 1e-3));
        let back = op.invert(&op.apply(&f));
        prop_assert!(back.max_abs_diff(&f) <= 1e-10 * f.coeffs().iter().map(|a| a.norm()).fold(1.0, f64::max));
    }

    #[test]
    fn coords_round_trip(u in lie()) {
        prop_assert!(LieElement::from_coords(u.coords()).max_abs_diff(u) <= 1e-14);
    }

    #[test]
    fn derived_op_is_linear(u in lie(), v in lie(), xi in weight()) {
        let sum = derived_op(u + v, xi);
        let parts = derived_op(u, xi).add(&derived_op(v, xi));
        prop_assert!(sum.max_abs_diff(&parts) <= 1e-12);
    }

    #[test]
    fn rep_decomposition_round_trip(a in -3.0f64..3.0, b in -3.0f64..3.0, c in complex(), xi in weight()) {
        let p = SelfAdjointParams { a, b, c };
        prop_assert!(from_rep(to_rep(p, xi), xi).max_abs_diff(p) <= 1e-12);
    }
}
