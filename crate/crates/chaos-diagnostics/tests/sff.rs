use chaos_diagnostics::{sff, trace_power_sff, BlockLabel, EnsembleSpec, Resolution, SffSpec};
use spin_quantum::{build_floquet, Params, Spin};

#[test]
fn eigenphase_sff_matches_direct_product() {
    let u = build_floquet(&Params::kicked(6.0), Spin::new(50.0).unwrap()).unwrap();
    let n = u.dim() as f64;
    let direct = trace_power_sff(&u.u, 50);
    let c = sff(&u, &SffSpec { ensemble: None, ..SffSpec::new(50) }).unwrap();
    assert!((c.values[0] - n).abs() < 1e-8);
    let worst = c.values.iter().zip(&direct).map(|(a, b)| (a * n - b).abs() / b.max(1.0)).fold(0.0, f64::max);
    assert!(worst < 1e-6, "{worst}");
}

#[test]
fn block_plateau_at_k6() {
    let u = build_floquet(&Params::kicked(6.0), Spin::new(200.5).unwrap()).unwrap();
    for label in [BlockLabel::Plus, BlockLabel::Minus] {
        let spec = SffSpec { resolution: Resolution::Block(label), ..SffSpec::new(3000) };
        let c = sff(&u, &spec).unwrap();
        assert_eq!(c.descriptor.levels, 201);
        assert_eq!(c.descriptor.ensemble_size, 20);
        let late = &c.values[1000..];
        let plateau = late.iter().sum::<f64>() / late.len() as f64;
        println!("{} plateau {plateau:.3}", label.as_str());
        assert!((plateau - 1.0).abs() < 0.3);
    }
}

#[test]
fn full_spectrum_shows_block_shift() {
    // Minus phases sit π/2 above plus phases, so the full trace cancels at t ≡ 2 (mod 4).
    let u = build_floquet(&Params::kicked(6.0), Spin::new(40.5).unwrap()).unwrap();
    let c = sff(&u, &SffSpec { ensemble: Some(EnsembleSpec { members: 4, relative_width: 0.01 }), ..SffSpec::new(400) })
        .unwrap();
    let avg = |r: usize| {
        let v: Vec<f64> = (200..=400).filter(|t| t % 4 == r).map(|t| c.values[t]).collect();
        v.iter().sum::<f64>() / v.len() as f64
    };
    assert!(avg(2) < 0.3 * avg(0));
}

#[test]
fn values_are_non_negative() {
    let u = build_floquet(&Params::kicked(2.0), Spin::new(20.0).unwrap()).unwrap();
    let c = sff(&u, &SffSpec { smoothing: Some(3), ..SffSpec::new(100) }).unwrap();
    assert!(c.values.iter().all(|&v| v >= 0.0));
}
