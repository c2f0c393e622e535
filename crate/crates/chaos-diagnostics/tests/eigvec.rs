use chaos_diagnostics::{eigen_system, eigenstate_entropy, eth_stats, ipr, EigenBlock, EthSpec, Observable};
use spin_quantum::{build_floquet, Params, Spin};

fn system(k: f64, j: f64) -> (Spin, Vec<EigenBlock>) {
    let spin = Spin::new(j).unwrap();
    (spin, eigen_system(&build_floquet(&Params::kicked(k), spin).unwrap()).unwrap())
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    v[v.len() / 2]
}

#[test]
fn chaotic_participation_grows_with_n() {
    // Golden PR/N ≈ 0.35 at k = 6.
    let mut ratios = Vec::new();
    for j in [100.5, 200.5, 400.5] {
        let (spin, blocks) = system(6.0, j);
        let pr: Vec<f64> = blocks.iter().flat_map(|b| ipr(&b.vectors, None).unwrap().pr).collect();
        let r = median(pr) / spin.dim() as f64;
        println!("j={j}: median PR/N = {r:.4}");
        ratios.push(r);
    }
    for r in &ratios {
        assert!((r - 0.345).abs() < 0.03);
    }
}

#[test]
fn chaotic_eigenstates_are_nearly_maximally_entangled() {
    let (spin, blocks) = system(6.0, 200.5);
    let s: Vec<f64> = blocks.iter().flat_map(|b| eigenstate_entropy(&b.vectors, spin).unwrap()).collect();
    let m = median(s);
    println!("median entropy {m:.4}");
    assert!(m > 0.65);
}

#[test]
fn parity_odd_observables_vanish_on_the_diagonal() {
    let (spin, blocks) = system(6.0, 30.5);
    for obs in [Observable::JzOverJ, Observable::JxOverJ] {
        let spec = EthSpec { observable: obs, window: 11, offdiag_states: 11, ..EthSpec::default() };
        let st = eth_stats(&blocks[0], spin, &spec).unwrap();
        assert!(st.diagonal.iter().all(|d| d.abs() < 1e-10));
    }
}

fn fluctuation(k: f64, j: f64) -> f64 {
    let (spin, blocks) = system(k, j);
    let f: Vec<f64> = blocks.iter().map(|b| eth_stats(b, spin, &EthSpec::default()).unwrap().fluctuation).collect();
    f.iter().sum::<f64>() / f.len() as f64
}

#[test]
fn eth_diagonal_scaling() {
    let js = [100.5, 200.5, 400.5];
    let chaotic: Vec<f64> = js.iter().map(|&j| fluctuation(6.0, j)).collect();
    let regular: Vec<f64> = js.iter().map(|&j| fluctuation(0.1, j)).collect();
    let x: Vec<f64> = js.iter().map(|j| (2.0 * j + 1.0_f64).ln()).collect();
    let slope = |y: &[f64]| {
        let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
        chaos_diagnostics::stats::linear_fit(&x, &ly).0
    };
    let (sc, sr) = (slope(&chaotic), slope(&regular));
    println!("chaotic {chaotic:?} exponent {sc:.3}; regular {regular:?} exponent {sr:.3}");
    assert!((sc + 0.5).abs() < 0.15);
    assert!(sr.abs() < 0.15);
}

#[test]
fn eth_offdiagonal_is_gaussian() {
    let (spin, blocks) = system(6.0, 200.5);
    let st = eth_stats(&blocks[0], spin, &EthSpec::default()).unwrap();
    assert_eq!(st.bin_counts.iter().sum::<usize>(), st.offdiag.len());
    assert_eq!(st.offdiag.len(), 51 * 50 / 2);
    assert!(st.bin_variance.iter().all(|v| v.is_finite() && *v > 0.0));
    println!("excess kurtosis {:.3}", st.excess_kurtosis);
    assert!(st.excess_kurtosis.abs() < 0.5);
}

#[test]
fn narrow_window_is_rejected() {
    let (spin, blocks) = system(6.0, 30.5);
    assert!(eth_stats(&blocks[0], spin, &EthSpec { window: 9, ..EthSpec::default() }).is_err());
}
