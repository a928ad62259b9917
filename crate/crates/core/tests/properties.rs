use bergman_core::dynamics::{classify, operator_norm, Truth};
use bergman_core::kernelspace::{apply_adjoint, apply_composition, evaluate, gram, inner_product, norm, KernelVector};
use bergman_core::laplace::{
    hat_adjoint_apply, hat_apply, intertwining_check, mu_inner_product, mu_norm, ProfileFunction, ProfileTerm,
};
use bergman_core::{AffineSymbol, Weight};
use nalgebra::DMatrix;
use num_complex::Complex;
use proptest::prelude::*;

type C = Complex<f64>;

fn symbol() -> impl Strategy<Value = AffineSymbol<f64>> {
    (0.1f64..10.0, 0.0f64..5.0, -5.0f64..5.0).prop_map(|(a, re, im)| AffineSymbol::from_parts(a, re, im).unwrap())
}

fn imaginary_symbol() -> impl Strategy<Value = AffineSymbol<f64>> {
    (0.1f64..10.0, -5.0f64..5.0).prop_map(|(a, im)| AffineSymbol::from_parts(a, 0.0, im).unwrap())
}

fn weight() -> impl Strategy<Value = Weight<f64>> {
    prop_oneof![Just(-0.5), Just(0.0), Just(1.0), Just(2.3), -0.9f64..4.0].prop_map(|a| Weight::new(a).unwrap())
}

fn point() -> impl Strategy<Value = C> {
    (0.2f64..3.0, -3.0f64..3.0).prop_map(|(re, im)| C::new(re, im))
}

fn coeff() -> impl Strategy<Value = C> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| C::new(re, im))
}

fn vector(w: Weight<f64>, max_terms: usize) -> impl Strategy<Value = KernelVector<f64>> {
    prop::collection::vec((coeff(), point()), 1..=max_terms).prop_map(move |terms| {
        let mut f = KernelVector::zero(w);
        for (c, p) in terms {
            f.push(c, p).unwrap();
        }
        f
    })
}

fn weighted_vector() -> impl Strategy<Value = KernelVector<f64>> {
    weight().prop_flat_map(|w| vector(w, 4))
}

/// `2^α(α+1)/(z + w̄)^{α+2}` written out independently of the crate.
fn kernel_oracle(alpha: f64, w: C, z: C) -> C {
    let base = z + w.conj();
    (base.ln() * -(alpha + 2.0)).exp() * (2f64.powf(alpha) * (alpha + 1.0))
}

fn direct_eval(f: &KernelVector<f64>, z: C) -> C {
    let alpha = f.weight().alpha();
    f.terms().iter().map(|t| t.coeff * kernel_oracle(alpha, t.point, z)).sum()
}

fn close(x: C, y: C, tol: f64) -> bool {
    (x - y).norm() <= tol * (1.0 + x.norm().max(y.norm()))
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / x.abs().max(y.abs()).max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn semigroup_law(phi in symbol(), n in 0u64..40, m in 0u64..40) {
        let whole = phi.iterate(n + m).unwrap();
        let split = phi.iterate(n).unwrap().compose(&phi.iterate(m).unwrap());
        prop_assert!((whole.log_a() - split.log_a()).abs() <= 1e-12 * (1.0 + whole.log_a().abs()));
        prop_assert!(close(whole.b(), split.b(), 1e-12));
    }

    #[test]
    fn iterate_matches_repeated_composition(phi in symbol(), n in 0u64..=64) {
        let mut folded = AffineSymbol::identity();
        for _ in 0..n {
            folded = phi.compose(&folded);
        }
        let direct = phi.iterate(n).unwrap();
        prop_assert!((direct.log_a() - folded.log_a()).abs() <= 1e-12 * (1.0 + direct.log_a().abs()));
        prop_assert!(close(direct.b(), folded.b(), 1e-12));
    }

    #[test]
    fn inverse_round_trip(phi in imaginary_symbol()) {
        let inv = phi.inverse().unwrap();
        for id in [phi.compose(&inv), inv.compose(&phi)] {
            prop_assert!(id.log_a().abs() <= 1e-12);
            prop_assert!(id.b().norm() <= 1e-12 * (1.0 + phi.b().norm()));
        }
    }

    #[test]
    fn evaluation_matches_oracle(f in weighted_vector(), z in point()) {
        prop_assert!(close(evaluate(&f, z).unwrap(), direct_eval(&f, z), 1e-12));
    }

    #[test]
    fn reproducing_property(f in weighted_vector(), z in point()) {
        let kz = KernelVector::kernel(f.weight(), z).unwrap();
        let via_inner = inner_product(&f, &kz).unwrap();
        prop_assert!(close(via_inner, evaluate(&f, z).unwrap(), 1e-10));
    }

    #[test]
    fn gram_is_hermitian_psd(w in weight(), pts in prop::collection::vec(point(), 1..=20)) {
        let g = gram(&pts, w).unwrap();
        let n = g.dim();
        prop_assert!(g.hermitian_defect() <= 1e-12 * g.trace());
        let m = DMatrix::from_fn(n, n, |i, j| g.get(i, j));
        let m = (&m + m.adjoint()) * C::new(0.5, 0.0);
        let eig = m.symmetric_eigen();
        let floor = -1e-10 * g.trace();
        prop_assert!(eig.eigenvalues.iter().all(|&l| l >= floor), "{:?}", eig.eigenvalues);
    }

    #[test]
    fn composition_intertwines(phi in symbol(), f in weighted_vector(), z in point()) {
        let cf = apply_composition(&phi, &f);
        prop_assert!(close(evaluate(&cf, z).unwrap(), direct_eval(&f, phi.apply(z)), 1e-10));
    }

    #[test]
    fn adjoint_pairing(phi in symbol(), (f, g) in weight().prop_flat_map(|w| (vector(w, 4), vector(w, 4)))) {
        let lhs = inner_product(&apply_composition(&phi, &f), &g).unwrap();
        let rhs = inner_product(&f, &apply_adjoint(&phi, &g)).unwrap();
        prop_assert!(close(lhs, rhs, 1e-10));
    }

    #[test]
    fn norm_identity_for_imaginary_translation(phi in imaginary_symbol(), f in weighted_vector()) {
        prop_assume!(norm(&f) > 1e-4);
        let c = operator_norm(&phi, f.weight());
        let ratio = norm(&apply_composition(&phi, &f)) / norm(&f);
        prop_assert!(rel(ratio, c) <= 1e-10, "{} vs {}", ratio, c);
    }

    #[test]
    fn norm_inequality(phi in symbol(), f in weighted_vector()) {
        prop_assume!(norm(&f) > 1e-4);
        let c = operator_norm(&phi, f.weight());
        prop_assert!(norm(&apply_composition(&phi, &f)) <= c * norm(&f) * (1.0 + 1e-10));
    }

    #[test]
    fn model_is_unitary_up_to_scale(phi in imaginary_symbol(), w in weight(), beta in 0.0f64..3.0, decay in point()) {
        let beta = beta + w.alpha().max(0.0);
        let f = ProfileFunction::new(w, vec![
            ProfileTerm { gamma: C::new(1.0, 0.5), beta, decay },
            ProfileTerm { gamma: C::new(-0.3, 0.0), beta: w.alpha() + 1.0, decay: C::new(1.0, 0.0) },
        ]).unwrap();
        let c = operator_norm(&phi, w);
        prop_assert!(rel(mu_norm(&hat_apply(&phi, &f)).unwrap(), c * mu_norm(&f).unwrap()) <= 1e-10);
    }

    #[test]
    fn hat_adjoint_pairing(phi in symbol(), w in weight(), d1 in point(), d2 in point()) {
        let f = ProfileFunction::single(w, C::new(1.0, 0.0), w.alpha() + 1.0, d1).unwrap();
        let g = ProfileFunction::single(w, C::new(0.0, 1.0), w.alpha() + 0.5, d2).unwrap();
        let lhs = mu_inner_product(&hat_apply(&phi, &f), &g).unwrap();
        let rhs = mu_inner_product(&f, &hat_adjoint_apply(&phi, &g)).unwrap();
        prop_assert!(close(lhs, rhs, 1e-10));
    }

    #[test]
    fn laplace_intertwining(phi in symbol(), w in weight(), d in point(), z in point()) {
        let f = ProfileFunction::single(w, C::new(1.0, -1.0), w.alpha() + 1.0, d).unwrap();
        prop_assert!(intertwining_check(&phi, &f, &[z]).unwrap() <= 1e-10);
    }

    #[test]
    fn classification_is_consistent(phi in symbol(), w in weight()) {
        let r = classify(&phi, w);
        let below = phi.multiplier_below_one();
        let imaginary = phi.has_imaginary_translation();
        prop_assert_eq!(r.uniformly_positive_expansive.value, r.positive_expansive.value);
        prop_assert_eq!(r.uniformly_expansive.value, r.expansive.value);
        prop_assert_eq!(r.expansive.value == Truth::NotApplicable, !r.invertible.value);
        prop_assert_eq!(r.positive_shadowing.value, r.hyperbolic.value || (below && imaginary));
        if r.normal.value {
            prop_assert_eq!(r.positive_shadowing.value, r.hyperbolic.value);
        }
        prop_assert!(rel(r.spectrum.value.max_modulus(), r.operator_norm.value) <= 1e-15);
        prop_assert!(!r.li_yorke.value);
        prop_assert_eq!(&r, &classify(&phi, w));
    }
}

#[test]
fn single_precision_agrees() {
    let phi = AffineSymbol::<f32>::from_parts(0.5, 0.0, 1.0).unwrap();
    let w = Weight::<f32>::new(0.0).unwrap();
    let f = KernelVector::kernel(w, Complex::new(1.0f32, 0.0)).unwrap();
    let ratio = norm(&apply_composition(&phi, &f)) / norm(&f);
    assert!((ratio - 2.0).abs() < 1e-5);
    let r = classify(&phi, w);
    assert!(r.invertible.value && r.hyperbolic.value);
}
