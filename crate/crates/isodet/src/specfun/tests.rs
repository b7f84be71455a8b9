use super::*;

// High-precision reference tables are appended by the sections marked below;
// the leading tests pin hand-checkable values and structural invariants.

#[test]
fn pinned_small_order_values() {
    // classic table anchors
    let i0 = mod_bessel(ModKind::I, 0, 1.0).unwrap();
    assert!((i0.value() - 1.2660658777520084).abs() < 1e-12);
    let k0 = mod_bessel(ModKind::K, 0, 1.0).unwrap();
    assert!((k0.value() - 0.42102443824070834).abs() < 1e-12);
    let j0 = cyl_bessel(CylKind::J, 0, 1.0).unwrap();
    assert!((j0.value.re - 0.7651976865579666).abs() < 1e-12);
    let y0 = cyl_bessel(CylKind::Y, 0, 1.0).unwrap();
    assert!((y0.value.re - 0.08825696421567696).abs() < 1e-12);
}

#[test]
fn pinned_zeros() {
    assert!((bessel_zero(0, 1) - 2.4048255576957728).abs() < 1e-10);
    assert!((bessel_zero(1, 1) - 3.8317059702075123).abs() < 1e-10);
}

#[test]
fn zero_interlacing() {
    // j_{n,k} < j_{n+1,k} < j_{n,k+1}
    for n in [0u32, 1, 4, 11] {
        for k in 1..=6u32 {
            let a = bessel_zero(n, k);
            let b = bessel_zero(n + 1, k);
            let c = bessel_zero(n, k + 1);
            assert!(a < b && b < c, "interlacing fails at n={n}, k={k}");
        }
    }
}

#[test]
fn zeros_upto_matches_indexed() {
    let zs = bessel_zeros_upto(3, 30.0);
    assert!(!zs.is_empty());
    for (i, &z) in zs.iter().enumerate() {
        let direct = bessel_zero(3, i as u32 + 1);
        assert!((z - direct).abs() < 1e-10, "k={}: {z} vs {direct}", i + 1);
        let j = cyl_bessel(CylKind::J, 3, z).unwrap().value.re;
        assert!(j.abs() < 1e-10, "residual at zero {z}: {j}");
    }
    assert!(zs.iter().all(|&z| z <= 30.0));
    assert!(bessel_zero(3, zs.len() as u32 + 1) > 30.0);
}

#[test]
fn hankel_small_argument_log_behavior() {
    // H1_0(λ) = 1 + (2i/π)(log(λ/2) + γ) + O(λ²·log λ)
    let lam = 1e-6;
    let h = cyl_bessel(CylKind::H1, 0, lam).unwrap().value;
    assert!((h.re - 1.0).abs() < 1e-10);
    let predicted = (2.0 / std::f64::consts::PI) * ((lam / 2.0_f64).ln() + 0.5772156649015329);
    assert!((h.im - predicted).abs() < 1e-9, "{} vs {predicted}", h.im);
}

#[test]
fn wronskian_across_the_box() {
    // J_{n+1}Y_n − J_nY_{n+1} = 2/(πx)
    for n in [0u32, 1, 7, 60, 300] {
        for &x in &[1e-6, 1e-2, 0.7, 12.0, 150.0, 4000.0] {
            let arrays = bessel_jy_arrays(n as usize + 1, x);
            let (jn, jn1) = (arrays.j[n as usize], arrays.j[n as usize + 1]);
            let (yn, yn1) = (arrays.y[n as usize], arrays.y[n as usize + 1]);
            if !yn1.is_finite() {
                continue; // below the representable turning region
            }
            let w = jn1 * yn - jn * yn1;
            let expect = 2.0 / (std::f64::consts::PI * x);
            assert!(
                (w - expect).abs() <= 1e-9 * expect.abs(),
                "n={n}, x={x}: {w} vs {expect}"
            );
        }
    }
}

#[test]
fn modified_product_decay() {
    // I_n(x)K_n(x) → 1/(2n): spot value from the uniform asymptotic regime
    let arrays = bessel_ik_arrays(500, 1.0);
    let p = arrays.ik_product(500);
    assert!(
        (p - 1.0 / 1000.0).abs() <= 1e-5 / 1000.0 * 10.0,
        "I_500 K_500 (1) = {p}"
    );
    // and the product is monotone decreasing in order
    let p100 = arrays.ik_product(100);
    let p200 = arrays.ik_product(200);
    assert!(p100 > p200 && p200 > p);
}

#[test]
fn modified_wronskian() {
    // I_n(x)K_{n+1}(x) + I_{n+1}(x)K_n(x) = 1/x
    for n in [0usize, 1, 5, 50] {
        for &x in &[1e-4, 0.5, 3.0, 50.0, 800.0] {
            let arrays = bessel_ik_arrays(n + 1, x);
            let lhs = arrays.i[n].mul(arrays.k[n + 1]).value()
                + arrays.i[n + 1].mul(arrays.k[n]).value();
            assert!(
                (lhs - 1.0 / x).abs() <= 1e-10 / x,
                "n={n}, x={x}: {lhs} vs {}",
                1.0 / x
            );
        }
    }
}

#[test]
fn scaled_pair_beyond_exponent_range() {
    let big = mod_bessel(ModKind::I, 0, 800.0).unwrap();
    assert!(big.is_scaled());
    // ln I_0(800) = 800 − (1/2)ln(2π·800) + ln(1+...) ≈ 795.74
    let ln_val = big.mantissa.ln() + big.log_scale;
    let expect = 800.0 - 0.5 * (2.0 * std::f64::consts::PI * 800.0).ln();
    assert!((ln_val - expect).abs() < 1e-3, "{ln_val} vs {expect}");
    let small = mod_bessel(ModKind::K, 0, 800.0).unwrap();
    let ln_k = small.mantissa.abs().ln() + small.log_scale;
    // e^x K_0 ~ sqrt(π/2x): ln K_0 ≈ −800 + (1/2)ln(π/1600)
    let expect_k = -800.0 + 0.5 * (std::f64::consts::PI / 1600.0).ln();
    assert!((ln_k - expect_k).abs() < 1e-3, "{ln_k} vs {expect_k}");
    // unchanged plain path
    let plain = mod_bessel(ModKind::I, 0, 5.0).unwrap();
    assert!(!plain.is_scaled());
    assert!((plain.value() - 27.239871823604442).abs() < 1e-10);
}

#[test]
fn domain_errors() {
    assert!(cyl_bessel(CylKind::J, 0, 0.0).is_err());
    assert!(cyl_bessel(CylKind::Y, 2, -1.0).is_err());
    assert!(mod_bessel(ModKind::K, 0, 0.0).is_err());
}

#[test]
fn degraded_flag_outside_box() {
    let inside = cyl_bessel(CylKind::J, 0, 100.0).unwrap();
    assert!(inside.rel_err_estimate < 1e-10);
    let outside = cyl_bessel(CylKind::J, 0, 2e4).unwrap();
    assert!(outside.rel_err_estimate >= 1e-8);
}

#[test]
fn log_scaled_arithmetic_exact() {
    let a = LogScaled::from_f64(3.0);
    let b = LogScaled::from_f64(0.125);
    assert_eq!(a.mul(b).value(), 0.375);
    assert_eq!(a.div(b).value(), 24.0);
    let huge = a.scale(2f64.powi(300)).scale(2f64.powi(300));
    assert_eq!(huge.div(LogScaled::from_f64(2f64.powi(600))).value(), 3.0);
    let s = LogScaled::from_f64(1.5).add(LogScaled::from_f64(2.5));
    assert_eq!(s.value(), 4.0);
    assert!((huge.ln() - (3f64.ln() + 600.0 * 2f64.ln())).abs() < 1e-12);
}

#[test]
fn selftest_green() {
    let report = selftest();
    assert!(report.grid_points > 0);
    assert!(
        report.max_cyl_wronskian <= 1e-9,
        "cylinder wronskian defect {}",
        report.max_cyl_wronskian
    );
    assert!(
        report.max_mod_wronskian <= 1e-9,
        "modified wronskian defect {}",
        report.max_mod_wronskian
    );
    assert!(
        report.max_cyl_recurrence <= 1e-9,
        "recurrence defect {}",
        report.max_cyl_recurrence
    );
    assert!(
        report.max_zero_residual <= 1e-10,
        "zero residual {}",
        report.max_zero_residual
    );
}

// ---------------------------------------------------------------------------
// cross-library reference tables (high-precision generation, 20 digits)
// ---------------------------------------------------------------------------

include!("ref_tables.rs");

#[test]
fn cylinder_reference_values() {
    for &(n, x, jw, yw) in JY_REFS {
        let e = cyl_bessel(CylKind::J, n, x).unwrap();
        let tol = e.rel_err_estimate.max(1e-12);
        assert!(
            (e.value.re - jw).abs() <= tol * jw.abs().max(1e-300),
            "J_{n}({x}): got {}, want {jw}",
            e.value.re
        );
        let ye = cyl_bessel(CylKind::Y, n, x).unwrap();
        let ytol = ye.rel_err_estimate.max(1e-12);
        assert!(
            (ye.value.re - yw).abs() <= ytol * yw.abs(),
            "Y_{n}({x}): got {}, want {yw}",
            ye.value.re
        );
    }
}

#[test]
fn modified_reference_values() {
    for &(n, x, ln_i, ln_k) in LN_IK_REFS {
        let arrays = bessel_ik_arrays(n as usize, x);
        let got_i = arrays.i[n as usize].ln();
        let got_k = arrays.k[n as usize].ln();
        assert!(
            (got_i - ln_i).abs() <= 1e-11 * ln_i.abs().max(1.0),
            "ln I_{n}({x}): got {got_i}, want {ln_i}"
        );
        assert!(
            (got_k - ln_k).abs() <= 1e-11 * ln_k.abs().max(1.0),
            "ln K_{n}({x}): got {got_k}, want {ln_k}"
        );
    }
}

#[test]
fn zero_reference_values() {
    for &(n, k, want) in ZERO_REFS {
        let got = bessel_zero(n, k);
        assert!(
            (got - want).abs() <= 1e-10,
            "j_{{{n},{k}}}: got {got}, want {want}"
        );
    }
}
