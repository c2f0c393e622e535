use spin_quantum::{build_floquet, build_operators, max_abs_diff, parity_basis, block_leakage, unitary_eigen, CMatrix, Complex, Params, Spin};

fn comm(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

#[test]
fn su2_algebra_and_casimir() {
    let mut js: Vec<f64> = (1..=20).map(|t| t as f64 / 2.0).collect();
    js.extend([25.0, 50.5, 100.0]);
    let i = Complex::new(0.0, 1.0);
    for j in js {
        let s = build_operators(Spin::new(j).unwrap());
        // Products have entries of size j(j+1), so rounding alone reaches a few ulps of that.
        let tol = f64::max(1e-12, 4.0 * f64::EPSILON * j * (j + 1.0));
        assert!(max_abs_diff(&comm(&s.jx, &s.jy), &(&s.jz * i)) < tol, "j={j}");
        assert!(max_abs_diff(&comm(&s.jy, &s.jz), &(&s.jx * i)) < tol, "j={j}");
        assert!(max_abs_diff(&comm(&s.jz, &s.jx), &(&s.jy * i)) < tol, "j={j}");
        let cas = &s.jx * &s.jx + &s.jy * &s.jy + &s.jz * &s.jz;
        let n = s.spin.dim();
        assert!(max_abs_diff(&cas, &(CMatrix::identity(n, n) * Complex::new(j * (j + 1.0), 0.0))) < 1e-10, "j={j}");
        assert!(max_abs_diff(&(&s.jx + &s.jy * i), &s.jplus) < 1e-15);
    }
    assert!(Spin::new(0.0).is_err() && Spin::new(-0.5).is_err());
}

#[test]
fn floquet_is_unitary_for_every_variant() {
    let prms = [
        Params::kicked(3.0),
        Params::standard(6.0, 1.1),
        Params::kicked(2.0).with_k_prime(1.5),
        Params::kicked(2.0).with_m_order(3),
        Params::kicked(2.0).with_m_order(4),
    ];
    for j in [0.5, 3.0, 12.5, 60.0, 100.0] {
        for prm in &prms {
            let u = build_floquet(prm, Spin::new(j).unwrap()).unwrap();
            assert!(u.unitarity_defect() < 1e-10, "j={j} {prm:?}");
        }
    }
}

#[test]
fn free_precession_eigenphases() {
    // k = 0 leaves exp(−ipJy), whose eigenphases are −p·m.
    for (j, p) in [(3.5, 1.1), (4.0, std::f64::consts::FRAC_PI_2), (10.0, 0.37)] {
        let spin = Spin::new(j).unwrap();
        let u = build_floquet(&Params::standard(0.0, p), spin).unwrap();
        let got = unitary_eigen(&u.u).unwrap().phases;
        assert!(got.iter().all(|g| (0.0..std::f64::consts::TAU).contains(g)));
        let circ = |a: f64, b: f64| (a - b).sin().abs().max(1.0 - (a - b).cos());
        for a in 0..spin.dim() {
            let w = -p * spin.m(a);
            assert!(got.iter().any(|&g| circ(g, w) < 1e-10), "j={j}: missing {w}");
        }
    }
}

#[test]
fn degenerate_variants_reduce_to_standard() {
    let spin = Spin::new(7.0).unwrap();
    let std_u = build_floquet(&Params::standard(2.7, 0.9), spin).unwrap().u;
    let dk = build_floquet(&Params::standard(2.7, 0.9).with_k_prime(0.0), spin).unwrap().u;
    let mb = build_floquet(&Params::standard(2.7, 0.9).with_m_order(2), spin).unwrap().u;
    assert!(max_abs_diff(&std_u, &dk) < 1e-12);
    assert!(max_abs_diff(&std_u, &mb) < 1e-12);
    // A vanishing second kick is continuous.
    let tiny = build_floquet(&Params::standard(2.7, 0.9).with_k_prime(1e-14), spin).unwrap().u;
    assert!(max_abs_diff(&std_u, &tiny) < 1e-12);
}

#[test]
fn m_body_kick_is_diagonal_power() {
    // U = diag(e^{−i k m³/(3 j²)}) · U(k = 0).
    let spin = Spin::new(4.5).unwrap();
    let (k, p) = (2.2, 0.8);
    let rot = build_floquet(&Params::standard(0.0, p), spin).unwrap().u;
    let u = build_floquet(&Params::standard(k, p).with_m_order(3), spin).unwrap().u;
    let j = spin.j();
    let d = CMatrix::from_diagonal(&nalgebra::DVector::from_fn(spin.dim(), |a, _| {
        Complex::from_polar(1.0, -k * spin.m(a).powi(3) / (3.0 * j * j))
    }));
    assert!(max_abs_diff(&u, &(d * rot)) < 1e-12);
}

#[test]
fn parity_blocks() {
    for j in [0.5, 1.0, 2.5, 6.0, 13.5, 30.0] {
        let spin = Spin::new(j).unwrap();
        let b = parity_basis(spin);
        for prm in [Params::kicked(3.0), Params::standard(5.0, 0.4), Params::kicked(2.0).with_k_prime(1.2), Params::kicked(2.0).with_m_order(4)] {
            let u = build_floquet(&prm, spin).unwrap();
            assert!(block_leakage(&u.u, &b) < 1e-10, "j={j} {prm:?}");
        }
    }
    // Odd kick orders flip sign under the parity, so the blocks mix.
    let spin = Spin::new(6.0).unwrap();
    let u = build_floquet(&Params::kicked(2.0).with_m_order(3), spin).unwrap();
    assert!(block_leakage(&u.u, &parity_basis(spin)) > 1e-2);
}

/// Φ-basis vectors that are eigenvectors of U, as (label, eigenvalue).
fn decoupled(j: f64, k: f64) -> Vec<(String, Complex)> {
    let spin = Spin::new(j).unwrap();
    let u = build_floquet(&Params::kicked(k), spin).unwrap().u;
    let b = parity_basis(spin);
    let mut out = vec![];
    for (sign, m) in [("+", &b.plus), ("-", &b.minus)] {
        for q in 0..m.ncols() {
            let v = m.column(q).into_owned();
            let ev = v.dotc(&(&u * &v));
            if (ev.norm() - 1.0).abs() < 1e-10 {
                out.push((format!("{q}{sign}"), ev));
            }
        }
    }
    out
}

#[test]
fn decoupled_parity_states_at_quarter_turn() {
    // Observed for p = π/2: the printed "⟨Φ₀⁺|U|Φ₀⁺⟩ = −1" is not what this
    // convention gives. Single decoupled states exist only for j ≤ 3.
    for k in [0.7, 1.0, 2.3, 5.1] {
        let e = |m2: f64, j: f64| Complex::from_polar(1.0, -k * m2 / (2.0 * j));
        let d1 = decoupled(1.0, k);
        assert_eq!(d1.len(), 1);
        assert_eq!(d1[0].0, "0-");
        assert!((d1[0].1 - e(1.0, 1.0)).norm() < 1e-10);
        let d2 = decoupled(2.0, k);
        assert_eq!(d2.len(), 1);
        assert_eq!(d2[0].0, "1+");
        assert!((d2[0].1 + e(1.0, 2.0)).norm() < 1e-10);
        let d3 = decoupled(3.0, k);
        assert_eq!(d3.len(), 1);
        assert_eq!(d3[0].0, "1-");
        assert!((d3[0].1 + e(4.0, 3.0)).norm() < 1e-10);
        // j = 1/2 is excluded: both blocks are one-dimensional.
        for j in [1.5, 2.5, 4.0, 5.0, 6.0, 7.5] {
            assert!(decoupled(j, k).is_empty(), "j={j} k={k}");
        }
    }
}
