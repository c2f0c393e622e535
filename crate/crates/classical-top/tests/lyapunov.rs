use classical_top::{
    lyapunov, lyapunov_grid, lyapunov_two_trajectory, period1_symmetry_line_roots, GridSpec, LyapunovConfig, Params,
    SpherePoint,
};

#[test]
fn regular_near_trivial_point_at_k2() {
    let p = SpherePoint::from_angles(std::f64::consts::FRAC_PI_2 - 0.05, std::f64::consts::FRAC_PI_2);
    let e = lyapunov(&p, &Params::kicked(2.0), 10_000, &LyapunovConfig::default()).unwrap();
    assert!(e.lambda < 0.01, "{e:?}");
}

#[test]
fn renormalisation_interval_does_not_matter() {
    let p = SpherePoint::from_angles(2.0, 1.0);
    let prm = Params::kicked(6.0);
    let base = lyapunov(&p, &prm, 5000, &LyapunovConfig::default()).unwrap().lambda;
    for interval in [1, 5, 25, 50] {
        let cfg = LyapunovConfig { renorm_interval: interval, ..Default::default() };
        let l = lyapunov(&p, &prm, 5000, &cfg).unwrap().lambda;
        assert!((l - base).abs() < 0.02 * base, "interval {interval}: {l} vs {base}");
    }
}

#[test]
fn two_trajectory_cross_check() {
    let prm = Params::kicked(6.0);
    for (t, f) in [(2.0, 1.0), (2.25, 0.52), (0.7, -2.0)] {
        let p = SpherePoint::from_angles(t, f);
        let a = lyapunov(&p, &prm, 10_000, &LyapunovConfig::default()).unwrap();
        let b = lyapunov_two_trajectory(&p, &prm, 10_000, 1e-9).unwrap();
        assert!(a.lambda > 0.3);
        assert!((a.lambda - b.lambda).abs() < 0.05 * a.lambda, "{a:?} {b:?}");
    }
}

#[test]
fn zero_kick_grid_is_zero() {
    let g = lyapunov_grid(&Params::kicked(0.0), GridSpec::new(20, 20).unwrap(), 500, &LyapunovConfig::default()).unwrap();
    assert!(g.values.iter().all(|v| v.abs() < 1e-3));
}

#[test]
fn islands_at_2_5_are_regular() {
    // Centres of the islands around the bifurcated period-1 points.
    let k = 2.5;
    let x = period1_symmetry_line_roots(k)[0];
    let prm = Params::kicked(k);
    for c in [SpherePoint::new(x, x / (k * x / 2.0).tan(), -x), SpherePoint::new(-x, x / (k * x / 2.0).tan(), x)] {
        let (t, f) = c.to_angles();
        for (dt, df) in [(0.0, 0.0), (0.03, 0.0), (0.0, -0.03)] {
            let e = lyapunov(&SpherePoint::from_angles(t + dt, f + df), &prm, 1000, &LyapunovConfig::default()).unwrap();
            assert!(e.lambda < 0.02, "{e:?}");
        }
    }
}

#[test]
fn grid_is_independent_of_thread_count() {
    let prm = Params::kicked(3.0);
    let spec = GridSpec::new(12, 16).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| lyapunov_grid(&prm, spec, 300, &LyapunovConfig::default()).unwrap())
    };
    let a = run(1);
    let b = run(4);
    assert_eq!(a.values.iter().map(|v| v.to_bits()).collect::<Vec<_>>(), b.values.iter().map(|v| v.to_bits()).collect::<Vec<_>>());
}

#[test]
fn works_in_single_precision() {
    let p = SpherePoint::from_angles(2.0_f32, 1.0);
    let e = lyapunov(&p, &Params::kicked(6.0).into_f32(), 2000, &LyapunovConfig::default()).unwrap();
    assert!(e.lambda > 0.3);
}

trait IntoF32 {
    fn into_f32(self) -> classical_top::TopParams<f32>;
}

impl IntoF32 for Params {
    fn into_f32(self) -> classical_top::TopParams<f32> {
        classical_top::TopParams { k: self.k as f32, p: self.p as f32, k_prime: self.k_prime as f32, m_order: self.m_order }
    }
}
