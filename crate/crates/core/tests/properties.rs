use std::f64::consts::PI;

use coquat::calc::{evaluate, tokenize, CalcError, Value};
use coquat::{
    closed_power, decompose, exp_left_closed, exp_right_closed, left_matrix, left_pow_closed,
    mat_exp_series, mat_pow_naive, pow_closed, pow_naive, quaternion_from_left, reconstruct,
    right_matrix, right_pow_closed, CausalCharacter, ClassifyConfig, Mat4, PolarKind, PowerBranch,
    QuatCoords, SplitQuaternion, Vector3M,
};
use proptest::prelude::*;

fn cfg() -> ClassifyConfig {
    ClassifyConfig::default()
}

fn quat() -> impl Strategy<Value = SplitQuaternion> {
    [-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64]
        .prop_map(|c| SplitQuaternion::from_array(c).unwrap())
}

fn vector() -> impl Strategy<Value = Vector3M> {
    [-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64].prop_map(|[a, b, c]| Vector3M::new(a, b, c).unwrap())
}

/// At least 1% of `|q|²` away from the light cone.
fn off_cone(q: &SplitQuaternion) -> bool {
    q.iq().abs() >= 1e-2 * q.euclid_sq()
}

/// Vector part not within 0.1% of its own null cone.
fn vector_off_cone(q: &SplitQuaternion) -> bool {
    let v = q.vector();
    v.lorentz_inner(&v).abs() > 1e-3 * v.euclid_sq().max(1.0)
}

fn timelike_axis() -> impl Strategy<Value = Vector3M> {
    (-1.5..1.5f64, 0.0..2.0 * PI, any::<bool>()).prop_map(|(a, phi, up)| {
        let s = if up { 1.0 } else { -1.0 };
        Vector3M::new(s * a.cosh(), a.sinh() * phi.cos(), a.sinh() * phi.sin()).unwrap()
    })
}

fn spacelike_axis() -> impl Strategy<Value = Vector3M> {
    (-1.5..1.5f64, 0.0..2.0 * PI).prop_map(|(a, phi)| {
        Vector3M::new(a.sinh(), a.cosh() * phi.cos(), a.cosh() * phi.sin()).unwrap()
    })
}

fn null_axis() -> impl Strategy<Value = Vector3M> {
    (0.2..2.0f64, 0.0..2.0 * PI).prop_map(|(r, phi)| Vector3M::new(r, r * phi.cos(), r * phi.sin()).unwrap())
}

fn unit_axis() -> impl Strategy<Value = Vector3M> {
    prop_oneof![timelike_axis(), spacelike_axis(), null_axis()]
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    // algebra

    #[test]
    fn table_and_formula_products_agree(p in quat(), q in quat()) {
        prop_assert!((p.mul_table(&q) - p.mul_lorentz(&q)).max_abs() <= 1e-13);
    }

    #[test]
    fn multiplication_is_associative(p in quat(), q in quat(), r in quat()) {
        let scale = (p.max_abs() * q.max_abs() * r.max_abs()).max(1.0);
        prop_assert!(((p * q) * r - p * (q * r)).max_abs() <= 1e-12 * scale);
    }

    #[test]
    fn conjugation_reverses_products(p in quat(), q in quat()) {
        prop_assert!(((p * q).conjugate() - q.conjugate() * p.conjugate()).max_abs() <= 1e-13);
    }

    #[test]
    fn form_is_multiplicative(p in quat(), q in quat()) {
        prop_assert!(rel((p * q).iq(), p.iq() * q.iq()) <= 1e-12);
    }

    #[test]
    fn lorentz_cross_is_orthogonal(u in vector(), v in vector()) {
        let w = u.lorentz_cross(&v);
        prop_assert!(w.lorentz_inner(&u).abs() <= 1e-13);
        prop_assert!(w.lorentz_inner(&v).abs() <= 1e-13);
    }

    #[test]
    fn q_times_conjugate_is_form(q in quat()) {
        let p = q * q.conjugate();
        prop_assert!(rel(p.scalar(), q.iq()) <= 1e-13);
        prop_assert!(p.vector().to_array().iter().all(|x| x.abs() <= 1e-13));
    }

    #[test]
    fn normalize_gives_unit_norm(q in quat().prop_filter("off cone", off_cone)) {
        let n = q.normalize(&cfg()).unwrap();
        prop_assert!((n.norm() - 1.0).abs() <= 1e-12);
        prop_assert_eq!(n.classify(&cfg()), q.classify(&cfg()));
    }

    #[test]
    fn inverse_is_two_sided(q in quat().prop_filter("off cone", off_cone)) {
        let inv = q.inverse(&cfg()).unwrap();
        prop_assert!((q * inv - SplitQuaternion::ONE).max_abs() <= 1e-12);
        prop_assert!((inv * q - SplitQuaternion::ONE).max_abs() <= 1e-12);
    }

    #[test]
    fn classification_follows_sign_of_form(q in quat(), r in 0.25..4.0f64) {
        let c = q.classify(&cfg());
        if c != CausalCharacter::Lightlike {
            prop_assert_eq!(c == CausalCharacter::Timelike, q.iq() > 0.0);
        }
        // the band is scale aware, so off-band characters survive scaling
        if off_cone(&q) {
            prop_assert_eq!(q.scale(r).classify(&cfg()), c);
        }
    }

    #[test]
    fn cone_points_are_lightlike(a in -2.0..2.0f64, b in -2.0..2.0f64, phi in 0.0..2.0 * PI) {
        let r = a.hypot(b);
        let q = SplitQuaternion::new(a, b, r * phi.cos(), r * phi.sin()).unwrap();
        prop_assert_eq!(q.classify(&cfg()), CausalCharacter::Lightlike);
        prop_assert!(q.inverse(&cfg()).is_err());
    }

    // matrices

    #[test]
    fn matrices_represent_products(p in quat(), q in quat()) {
        prop_assert!(left_matrix(&q).apply(QuatCoords::from(p)).max_abs_diff(&QuatCoords::from(q * p)) <= 1e-13);
        prop_assert!(right_matrix(&q).apply(QuatCoords::from(p)).max_abs_diff(&QuatCoords::from(p * q)) <= 1e-13);
    }

    #[test]
    fn left_is_a_homomorphism(p in quat(), q in quat(), r in -3.0..3.0f64) {
        let lpq = left_matrix(&p).matmul(&left_matrix(&q));
        prop_assert!(left_matrix(&(p * q)).max_abs_diff(&lpq) <= 1e-12 * lpq.max_abs().max(1.0));
        prop_assert!(left_matrix(&(p + q)).max_abs_diff(&(left_matrix(&p) + left_matrix(&q))) <= 1e-12);
        prop_assert!(left_matrix(&p.scale(r)).max_abs_diff(&left_matrix(&p).scale(r)) <= 1e-12);
    }

    #[test]
    fn right_is_an_anti_homomorphism(p in quat(), q in quat(), r in -3.0..3.0f64) {
        let rqp = right_matrix(&q).matmul(&right_matrix(&p));
        prop_assert!(right_matrix(&(p * q)).max_abs_diff(&rqp) <= 1e-12 * rqp.max_abs().max(1.0));
        prop_assert!(right_matrix(&(p + q)).max_abs_diff(&(right_matrix(&p) + right_matrix(&q))) <= 1e-12);
        prop_assert!(right_matrix(&p.scale(r)).max_abs_diff(&right_matrix(&p).scale(r)) <= 1e-12);
    }

    #[test]
    fn left_and_right_commute(p in quat(), q in quat()) {
        let (l, r) = (left_matrix(&p), right_matrix(&q));
        prop_assert!(l.matmul(&r).max_abs_diff(&r.matmul(&l)) <= 1e-12);
    }

    #[test]
    fn pure_square_is_scalar(u in vector()) {
        let q = SplitQuaternion::pure(u).unwrap();
        let want = Mat4::IDENTITY.scale(u.lorentz_inner(&u));
        prop_assert!(left_matrix(&q).matmul(&left_matrix(&q)).max_abs_diff(&want) <= 1e-13);
        prop_assert!(right_matrix(&q).matmul(&right_matrix(&q)).max_abs_diff(&want) <= 1e-13);
    }

    #[test]
    fn left_matrix_extracts_back(q in quat()) {
        prop_assert_eq!(quaternion_from_left(&left_matrix(&q), 1e-9).unwrap(), q);
    }

    // polar forms

    #[test]
    fn polar_kind_and_axis(q in quat().prop_filter("vector off cone", vector_off_cone)) {
        let c = cfg();
        let Ok(f) = decompose(&q, &c) else {
            prop_assert_eq!(q.classify(&c), CausalCharacter::Lightlike);
            return Ok(());
        };
        let want = match (q.classify(&c), q.vector().classify(&c)) {
            (CausalCharacter::Timelike, CausalCharacter::Spacelike) => PolarKind::TimelikeSpacelikeVec,
            (CausalCharacter::Timelike, CausalCharacter::Timelike) => PolarKind::TimelikeTimelikeVec,
            _ => PolarKind::Spacelike,
        };
        prop_assert_eq!(f.kind, want);
        prop_assert!((f.eps.lorentz_inner(&f.eps) - f.kind.axis_square()).abs() <= 1e-12);
        prop_assert!(f.n > 0.0);
        match f.kind {
            PolarKind::TimelikeSpacelikeVec => prop_assert!(f.theta >= 0.0),
            PolarKind::TimelikeTimelikeVec => prop_assert!((0.0..=PI).contains(&f.theta)),
            PolarKind::Spacelike => prop_assert_eq!(f.sign, 1),
        }
        let back = reconstruct(&f).unwrap();
        prop_assert!((back - q).max_abs() <= 1e-12 * q.max_abs().max(1.0));
    }

    // powers

    #[test]
    fn closed_power_matches_naive(q in quat().prop_filter("vector off cone", vector_off_cone), n in 0u64..=20) {
        let Ok(c) = pow_closed(&q, n as i64, &cfg()) else {
            // only the null vector band is refused, and it was filtered out
            prop_assert!(false, "closed form failed for {}", q);
            return Ok(());
        };
        let naive = pow_naive(&q, n);
        let scale = q.norm().powi(n as i32).max(naive.max_abs()).max(f64::MIN_POSITIVE);
        prop_assert!((c - naive).max_abs() <= 1e-9 * scale);
    }

    #[test]
    fn closed_matrix_power_matches_naive(q in quat().prop_filter("vector off cone", vector_off_cone), n in 0u64..=20) {
        let c = cfg();
        let (l, r) = (left_pow_closed(&q, n, &c).unwrap(), right_pow_closed(&q, n, &c).unwrap());
        let (ln, rn) = (mat_pow_naive(&left_matrix(&q), n), mat_pow_naive(&right_matrix(&q), n));
        let scale = q.norm().powi(n as i32).max(ln.max_abs()).max(f64::MIN_POSITIVE);
        prop_assert!(l.max_abs_diff(&ln) <= 1e-9 * scale);
        prop_assert!(r.max_abs_diff(&rn) <= 1e-9 * scale);
        let p = pow_closed(&q, n as i64, &c).unwrap();
        prop_assert!(l.max_abs_diff(&left_matrix(&p)) <= 1e-9 * scale);
        prop_assert!(r.max_abs_diff(&right_matrix(&p)) <= 1e-9 * scale);
    }

    #[test]
    fn lightlike_power_formula(a in -2.0..2.0f64, b in -2.0..2.0f64, phi in 0.0..2.0 * PI, n in 0u64..=20) {
        let r = a.hypot(b);
        let q = SplitQuaternion::new(a, b, r * phi.cos(), r * phi.sin()).unwrap();
        let closed = pow_closed(&q, n as i64, &cfg()).unwrap();
        let naive = pow_naive(&q, n);
        let scale = q.euclid_sq().sqrt().powi(n as i32).max(naive.max_abs()).max(f64::MIN_POSITIVE);
        prop_assert!((closed - naive).max_abs() <= 1e-9 * scale);
    }

    #[test]
    fn spacelike_branch_follows_parity(q in quat().prop_filter("vector off cone", vector_off_cone), n in 0u64..=20) {
        prop_assume!(q.classify(&cfg()) == CausalCharacter::Spacelike);
        let branch = closed_power(&q, n, &cfg()).unwrap().branch;
        let want = if n % 2 == 1 { PowerBranch::SpacelikeOdd } else { PowerBranch::SpacelikeEven };
        prop_assert_eq!(branch, want);
    }

    #[test]
    fn negative_power_inverts(q in quat().prop_filter("off cone", off_cone).prop_filter("vector off cone", vector_off_cone), n in 1i64..=6) {
        let c = cfg();
        let (up, down) = (pow_closed(&q, n, &c).unwrap(), pow_closed(&q, -n, &c).unwrap());
        let scale = (up.max_abs() * down.max_abs()).max(1.0);
        prop_assert!((up * down - SplitQuaternion::ONE).max_abs() <= 1e-9 * scale);
    }

    // exponentials

    #[test]
    fn euler_matches_series(eps in unit_axis(), theta in -3.0..3.0f64) {
        let l = left_matrix(&SplitQuaternion::pure(eps).unwrap());
        let r = right_matrix(&SplitQuaternion::pure(eps).unwrap());
        let series_l = mat_exp_series(&l.scale(theta), 1e-14, 200).unwrap();
        let series_r = mat_exp_series(&r.scale(theta), 1e-14, 200).unwrap();
        prop_assert!(exp_left_closed(&eps, theta).unwrap().max_abs_diff(&series_l) <= 1e-10);
        prop_assert!(exp_right_closed(&eps, theta).unwrap().max_abs_diff(&series_r) <= 1e-10);
    }

    #[test]
    fn euler_composes(eps in unit_axis(), a in -1.5..1.5f64, b in -1.5..1.5f64) {
        let ab = exp_left_closed(&eps, a).unwrap().matmul(&exp_left_closed(&eps, b).unwrap());
        prop_assert!(ab.max_abs_diff(&exp_left_closed(&eps, a + b).unwrap()) <= 1e-11);
        let ab = exp_right_closed(&eps, a).unwrap().matmul(&exp_right_closed(&eps, b).unwrap());
        prop_assert!(ab.max_abs_diff(&exp_right_closed(&eps, a + b).unwrap()) <= 1e-11);
    }

    // calculator

    #[test]
    fn print_parse_round_trip(c in prop::array::uniform4(prop_oneof![
        Just(0.0),
        (-5i32..=5).prop_map(f64::from),
        -1e-9..1e-9f64,
        -1e20..1e20f64,
        -100.0..100.0f64,
    ])) {
        let q = SplitQuaternion::from_array(c).unwrap();
        let back = match evaluate(&q.to_string()).unwrap() {
            Value::Quat(b) => b,
            Value::Scalar(s) => SplitQuaternion::from_scalar(s).unwrap(),
            other => return Err(TestCaseError::fail(format!("unexpected {other:?}"))),
        };
        prop_assert_eq!(back.to_array(), q.to_array());
    }

    #[test]
    fn errors_point_inside_input(src in "[0-9ijk+*^(),. -]{0,10}|(conj|polar|inv|pow|matl|normalize)\\([0-9ijk+ -]{0,6}(, ?-?[0-9.]{1,3})?\\)") {
        // lexing is total: it returns, never panics
        let _ = tokenize(&src);
        if let Err(e) = evaluate(&src) {
            let span = e.span();
            prop_assert!(span.start <= span.end);
            match e {
                CalcError::Eval(_) => prop_assert!(span.end <= src.len()),
                // parse errors may point one past the end, at "end of input"
                _ => prop_assert!(span.start <= src.len()),
            }
            let annotated = e.annotate(&src);
            prop_assert_eq!(annotated.lines().count(), 3);
        }
    }
}

#[test]
fn induction_identities() {
    for step in -30..=30 {
        let t = step as f64 / 10.0;
        for n in 0..=20 {
            let nf = n as f64;
            let hyp = t.cosh() * (nf * t).cosh() + t.sinh() * (nf * t).sinh();
            let circ = t.cos() * (nf * t).cos() - t.sin() * (nf * t).sin();
            assert!(rel(hyp, ((nf + 1.0) * t).cosh()) <= 1e-12, "cosh at t={t}, n={n}");
            assert!((circ - ((nf + 1.0) * t).cos()).abs() <= 1e-12, "cos at t={t}, n={n}");
        }
    }
}

#[test]
fn exp_at_pi_is_minus_identity() {
    let i = Vector3M::new(1.0, 0.0, 0.0).unwrap();
    let m = exp_left_closed(&i, PI).unwrap();
    assert!(m.max_abs_diff(&Mat4::IDENTITY.scale(-1.0)) <= 1e-12);
}
