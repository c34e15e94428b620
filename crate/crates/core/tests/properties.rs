//! Structural invariants over random inputs, 200 cases each.

mod common;

use common::{random_invertible, random_model};
use curvlab::exact::{int, rat, Matrix, MultiPoly, Rational};
use curvlab::grassmann::{causal_type, cayley_orthogonal, random_frame, Causal};
use curvlab::metrics::{metric_g_3s, metric_g_f};
use curvlab::modelspace::{diagonal_action, hypersurface_model, model_v3s};
use curvlab::spectral::{skew_curv, theta};
use curvlab::verify::{check, random_point, stated_g3s_curvature, CheckSpec};
use proptest::prelude::*;

fn cfg() -> ProptestConfig {
    ProptestConfig::with_cases(200)
}

fn causal() -> impl Strategy<Value = Causal> {
    prop_oneof![Just(Causal::Spacelike), Just(Causal::Timelike)]
}

/// `(seed, n, number of negative directions)` with room for a definite 2-plane
/// of either type.
fn model_params() -> impl Strategy<Value = (u64, usize, usize)> {
    (any::<u64>(), 4usize..=5).prop_flat_map(|(seed, n)| (Just(seed), Just(n), 2..=n - 2))
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn random_models_satisfy_curvature_symmetries((seed, n, neg) in model_params()) {
        prop_assert!(random_model(seed, n, neg).validate().is_ok());
    }

    #[test]
    fn raw_is_skew_adjoint_and_theta_self_adjoint(
        (seed, n, neg) in model_params(), want in causal(), fseed in any::<u64>(), k in 2usize..=3
    ) {
        let m = random_model(seed, n, neg);
        let g = m.metric();
        let fr2 = random_frame(&m, 2, want, fseed).unwrap();
        let gr = g * &skew_curv(&m, &fr2).unwrap().raw;
        prop_assert_eq!(gr.transpose(), gr.scale(&int(-1)));
        let k = k.min(neg).min(n - neg);
        let frk = random_frame(&m, k, want, fseed).unwrap();
        let gt = g * &theta(&m, &frk).unwrap();
        prop_assert_eq!(gt.transpose(), gt);
    }

    #[test]
    fn operators_depend_only_on_the_plane(
        (seed, n, neg) in model_params(), want in causal(), fseed in any::<u64>(), bseed in any::<u64>()
    ) {
        let m = random_model(seed, n, neg);
        let fr = random_frame(&m, 2, want, fseed).unwrap();
        let b = random_invertible(2, bseed);
        let frb = fr.transform(&b).unwrap();
        let (ops, opsb) = (skew_curv(&m, &fr).unwrap(), skew_curv(&m, &frb).unwrap());
        prop_assert_eq!(&opsb.raw, &ops.raw.scale(&b.det().unwrap()));
        prop_assert_eq!(&opsb.normalized_square, &ops.normalized_square);
        prop_assert_eq!(theta(&m, &frb).unwrap(), theta(&m, &fr).unwrap());
        // orientation reversal
        prop_assert_eq!(skew_curv(&m, &fr.swapped(0, 1)).unwrap().raw, ops.raw.scale(&int(-1)));
    }

    #[test]
    fn theta_is_twice_the_normalized_square_on_two_planes(
        (seed, n, neg) in model_params(), want in causal(), fseed in any::<u64>()
    ) {
        let m = random_model(seed, n, neg);
        let fr = random_frame(&m, 2, want, fseed).unwrap();
        let sq = skew_curv(&m, &fr).unwrap().normalized_square.unwrap();
        prop_assert_eq!(theta(&m, &fr).unwrap(), sq.scale(&int(2)));
    }

    #[test]
    fn causal_type_is_a_plane_invariant(
        (seed, n, neg) in model_params(), want in causal(), k in 1usize..=2, fseed in any::<u64>(), bseed in any::<u64>()
    ) {
        let m = random_model(seed, n, neg);
        let fr = random_frame(&m, k, want, fseed).unwrap();
        let ct = causal_type(&m, &fr).unwrap();
        prop_assert!(want.matches(ct));
        let frb = fr.transform(&random_invertible(k, bseed)).unwrap();
        prop_assert_eq!(causal_type(&m, &frb).unwrap(), ct);
    }

    #[test]
    fn cayley_matrices_are_orthogonal_and_fix_v3s(s in 2usize..=3, seed in any::<u64>()) {
        let xi = cayley_orthogonal(s, seed);
        prop_assert_eq!(&xi.transpose() * &xi, Matrix::identity(s));
        let v = model_v3s(s).unwrap();
        let moved = v.apply_isomorphism(&diagonal_action(&xi)).unwrap();
        prop_assert_eq!(moved.metric(), v.metric());
        prop_assert_eq!(moved.curv_entries(), v.curv_entries());
    }

    #[test]
    fn hypersurface_metric_matches_gauss_model(
        p in 2usize..=3,
        coeffs in proptest::collection::vec((-3i64..=3, 1i64..=2), 20),
        pseed in any::<u64>()
    ) {
        let xs: Vec<String> = (1..=p).map(|i| format!("x{i}")).collect();
        // monomials of degree 1..=3
        let mut monos = Vec::new();
        for a in 0..=3u32 {
            for b in 0..=3 - a {
                for c in 0..=(if p == 3 { 3 - a - b } else { 0 }) {
                    if (1..=3).contains(&(a + b + c)) {
                        monos.push([a, b, c]);
                    }
                }
            }
        }
        let mut f = MultiPoly::zero(&xs);
        for (mono, &(nu, de)) in monos.iter().zip(&coeffs) {
            let mut t = MultiPoly::constant(&xs, rat(nu, de));
            for (i, &e) in mono.iter().take(p).enumerate() {
                t = &t * &MultiPoly::var(&xs, &xs[i]).unwrap().pow(e);
            }
            f = &f + &t;
        }
        let g = metric_g_f(p, &f).unwrap();
        let pt = random_point(2 * p, pseed);
        let x = &pt[..p];
        let grad: Vec<Rational> = (0..p).map(|i| f.diff_index(i).eval(x).unwrap()).collect();
        let h = Matrix::from_fn(p, p, |i, j| f.diff_index(i).diff_index(j).eval(x).unwrap());
        let from_metric = g.curvature_at(&pt).unwrap();
        prop_assert!(from_metric.validate().is_ok());
        let model = hypersurface_model(&h, &grad).unwrap();
        prop_assert_eq!(from_metric.metric(), model.metric());
        prop_assert_eq!(from_metric.curv_entries(), model.curv_entries());
    }

    #[test]
    fn verdicts_do_not_depend_on_worker_count(
        (seed, n, neg) in model_params(), want in causal(), vseed in any::<u64>(), stanilov in any::<bool>()
    ) {
        let m = random_model(seed, n, neg);
        let spec = if stanilov { CheckSpec::stanilov(2, want) } else { CheckSpec::ip(want) };
        let run = |threads: usize| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| check(&m, spec, 6, vseed).unwrap())
        };
        let one = run(1);
        prop_assert_eq!(&run(2), &one);
        prop_assert_eq!(&run(5), &one);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// Sign convention lock: the stated entries at 100 random points.
    #[test]
    fn g3s_curvature_is_the_stated_tensor(s in 2usize..=3, pseed in any::<u64>()) {
        let g = metric_g_3s(s).unwrap();
        let p = random_point(3 * s, pseed);
        let m = g.curvature_at(&p).unwrap();
        prop_assert!(m.validate().is_ok());
        let stated = stated_g3s_curvature(s, m.metric().clone(), &p).unwrap();
        prop_assert_eq!(m.curv_entries(), stated.curv_entries());
    }

    /// The coordinate map `(u,t,v) ↦ (ξu,ξt,ξv)` with `ξ ∈ O(s)` is an isometry
    /// of `g_{3s}`, so curvature at the image point pulls back to curvature at `p`.
    #[test]
    fn g3s_curvature_pulls_back_under_orthogonal_substitution(
        s in 2usize..=3, pseed in any::<u64>(), xseed in any::<u64>()
    ) {
        let g = metric_g_3s(s).unwrap();
        let xi = cayley_orthogonal(s, xseed);
        let d = diagonal_action(&xi.transpose());
        let p = random_point(3 * s, pseed);
        let q = d.mul_vec(&p);
        let at_p = g.curvature_at(&p).unwrap();
        let pulled = g.curvature_at(&q).unwrap().apply_isomorphism(&d).unwrap();
        prop_assert_eq!(pulled.metric(), at_p.metric());
        prop_assert_eq!(pulled.curv_entries(), at_p.curv_entries());
    }
}
