use chaos_diagnostics::synthetic::poisson_phases;
use chaos_diagnostics::{loschmidt_echo, otoc_matrix, ratio_statistics_phases, spacing_reference, RatioLaw, SpacingKind};
use chaos_diagnostics::stats::integrate_half_line;
use proptest::prelude::*;
use spin_quantum::{build_floquet, coherent_state, Complex, Params, Spin, SpinState};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn ratios_invariant_under_affine_rescaling(seed in 0u64..1000, scale in 0.05..1.0_f64, shift in 0.0..1.0_f64) {
        let p = poisson_phases(200, seed);
        let q: Vec<f64> = p.iter().map(|x| x * scale + shift).collect();
        let a = ratio_statistics_phases(&p).unwrap();
        let b = ratio_statistics_phases(&q).unwrap();
        // The wrap-around spacing changes under rescaling; all interior ratios must not.
        for i in 0..a.ratios.len() - 2 {
            prop_assert!((a.ratios[i] - b.ratios[i]).abs() <= 1e-8 * a.ratios[i].max(1.0));
        }
    }

    #[test]
    fn echo_bounded_and_phase_invariant(k in 0.0..8.0_f64, dk in -0.2..0.2_f64, th in 0.0..3.1_f64, ph in -3.1..3.1_f64, g in 0.0..6.28_f64) {
        let spin = Spin::new(6.0).unwrap();
        let s = coherent_state(th, ph, spin).unwrap();
        let r = SpinState::new(spin, s.amplitudes.map(|z| z * Complex::from_polar(1.0, g))).unwrap();
        let a = loschmidt_echo(&Params::kicked(k), dk, &s, 30).unwrap();
        let b = loschmidt_echo(&Params::kicked(k), dk, &r, 30).unwrap();
        prop_assert!((a.values[0] - 1.0).abs() < 1e-12);
        for (x, y) in a.values.iter().zip(&b.values) {
            prop_assert!((0.0..=1.0).contains(x));
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn otoc_non_negative(k in 0.0..8.0_f64, twice in 2u32..16) {
        let spin = Spin::from_qubits(twice).unwrap();
        let u = build_floquet(&Params::kicked(k), spin).unwrap();
        let c = otoc_matrix(&u.u, &chaos_diagnostics::Observable::JzOverJ.matrix(spin), 10).unwrap();
        prop_assert!(c.iter().all(|&x| x >= -1e-10));
    }
}

#[test]
fn reference_densities_integrate_to_one() {
    for k in [SpacingKind::Poisson, SpacingKind::Goe, SpacingKind::Gue, SpacingKind::Gse] {
        assert!((integrate_half_line(|s| spacing_reference(k, s), 1e-12) - 1.0).abs() < 1e-6);
    }
    for law in [RatioLaw::Poisson, RatioLaw::Surmise { beta: 1 }, RatioLaw::Surmise { beta: 2 }, RatioLaw::Surmise { beta: 4 }] {
        assert!((integrate_half_line(|r| law.density(r), 1e-12) - 1.0).abs() < 1e-6);
    }
}
