use mrdft::oracle::{level_errors, mrdft_dense_pipeline, mrdft_direct, mrdft_per_level_fft};
use mrdft::signal::seeded_signal;
use mrdft::{make_plan, mrdft_fast, Complex, Layout};

#[test]
fn fast_matches_direct_up_to_twelve_levels() {
    for m in 1..=12 {
        let plan = make_plan::<f64>(m).unwrap();
        for seed in 0..4 {
            let x = seeded_signal::<f64>(plan.n(), 7919 * m as u64 + seed);
            let fast = mrdft_fast(&x, &plan, None, Layout::Natural).unwrap();
            let direct = mrdft_direct(&x, m).unwrap();
            for (i, e) in level_errors(&fast, &direct).into_iter().enumerate() {
                assert!(e <= 1e-10, "m={m} seed={seed} level={} err={e:e}", i + 1);
            }
        }
    }
}

#[test]
fn dense_pipeline_matches_both_routes() {
    for m in 1..=4 {
        let plan = make_plan::<f64>(m).unwrap();
        for seed in 0..10 {
            let x = seeded_signal::<f64>(plan.n(), 42 + seed);
            let dense = mrdft_dense_pipeline(&x, m).unwrap();
            let fast = mrdft_fast(&x, &plan, None, Layout::Natural).unwrap();
            let direct = mrdft_direct(&x, m).unwrap();
            for e in level_errors(&fast, &dense) {
                assert!(e <= 1e-12, "m={m} fast vs dense {e:e}");
            }
            for e in level_errors(&direct, &dense) {
                assert!(e <= 1e-12, "m={m} direct vs dense {e:e}");
            }
        }
    }
}

#[test]
fn dense_pipeline_impulse() {
    let x = mrdft::signal::impulse::<f64>(8, 0);
    let y = mrdft_dense_pipeline(&x, 3).unwrap();
    let one = Complex::new(1.0, 0.0);
    let zero = Complex::new(0.0, 0.0);
    let expect: Vec<_> = [
        vec![one, one, zero, zero, zero, zero, zero, zero],
        vec![one, one, one, one, zero, zero, zero, zero],
        vec![one; 8],
    ]
    .concat();
    for (g, w) in y.data().iter().zip(&expect) {
        assert!((g - w).norm() < 1e-12);
    }
}

#[test]
fn dense_pipeline_four_points() {
    let x: Vec<_> = [1.0, 2.0, 3.0, 4.0]
        .iter()
        .map(|&v| Complex::new(v, 0.0))
        .collect();
    let y = mrdft_dense_pipeline(&x, 2).unwrap();
    let want = [
        Complex::new(3.0, 0.0),
        Complex::new(-1.0, 0.0),
        Complex::new(7.0, 0.0),
        Complex::new(-1.0, 0.0),
        Complex::new(10.0, 0.0),
        Complex::new(-2.0, 2.0),
        Complex::new(-2.0, 0.0),
        Complex::new(-2.0, -2.0),
    ];
    for (g, w) in y.data().iter().zip(&want) {
        assert!((g - w).norm() < 1e-12);
    }
}

#[test]
fn baseline_agrees_with_direct() {
    for m in 1..=10 {
        let x = seeded_signal::<f64>(1 << m, 500 + m as u64);
        let plf = mrdft_per_level_fft(&x, m, None).unwrap();
        let direct = mrdft_direct(&x, m).unwrap();
        for e in level_errors(&plf, &direct) {
            assert!(e <= 1e-10);
        }
    }
}

#[test]
fn single_precision_tracks_double() {
    for m in [1, 4, 8, 11] {
        let plan = make_plan::<f32>(m).unwrap();
        let x32 = seeded_signal::<f32>(plan.n(), 99);
        let x64: Vec<Complex<f64>> = x32
            .iter()
            .map(|z| Complex::new(f64::from(z.re), f64::from(z.im)))
            .collect();
        let fast32 = mrdft_fast(&x32, &plan, None, Layout::Natural).unwrap();
        let direct64 = mrdft_direct(&x64, m).unwrap();
        for i in 1..=m {
            let got: Vec<Complex<f64>> = fast32
                .level(i)
                .iter()
                .map(|z| Complex::new(f64::from(z.re), f64::from(z.im)))
                .collect();
            let e = mrdft::oracle::rel_l2_error(&got, direct64.level(i));
            assert!(e <= 1e-5, "m={m} level={i} err={e:e}");
        }
    }
}
