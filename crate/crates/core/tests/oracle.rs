use airy_tunnel::oracle::transfer_matrix;
use airy_tunnel::{exact_transmission, square_barrier_closed_form, PotentialSpec};

#[test]
fn square_calibration() {
    let p = PotentialSpec::square(1.0, 2.0).unwrap();
    let exact = square_barrier_closed_form(1.0, 2.0, 0.5).unwrap();
    assert!((exact - 0.210_771_093_966_13).abs() < 1e-12);
    let r = exact_transmission(&p, 0.5, (-12.0, 12.0), 20_000).unwrap();
    assert!((r.t_exact / exact - 1.0).abs() <= 1e-6);
    assert!((r.richardson_estimate / exact - 1.0).abs() <= 1e-6);
    for e in [0.1, 0.3, 0.9] {
        let exact = square_barrier_closed_form(1.0, 2.0, e).unwrap();
        let r = exact_transmission(&p, e, (-12.0, 12.0), 20_000).unwrap();
        assert!((r.t_exact / exact - 1.0).abs() <= 1e-6, "E = {e}");
    }
}

#[test]
fn flux_is_conserved() {
    for (p, domain) in [
        (PotentialSpec::square(1.0, 2.0).unwrap(), (-12.0, 12.0)),
        (PotentialSpec::sech2(1.0, 1.0).unwrap(), (-12.0, 12.0)),
        (PotentialSpec::gaussian(2.0, 1.0).unwrap(), (-8.0, 8.0)),
    ] {
        for e in [0.05, 0.5, 0.95] {
            let r = exact_transmission(&p, e * p.height(), domain, 20_000).unwrap();
            assert!(r.flux_defect <= 1e-10, "{} E = {e}: {}", p.family(), r.flux_defect);
        }
    }
}

fn successive_differences(p: &PotentialSpec, e: f64, domain: (f64, f64), n: usize) -> (f64, f64) {
    let t = |k: usize| transfer_matrix(p, e, domain, n * k).unwrap().transmission;
    let (t1, t2, t4) = (t(1), t(2), t(4));
    ((t2 - t1).abs(), (t4 - t2).abs())
}

#[test]
fn second_order_convergence() {
    // Past n ≈ 10⁴ the differences reach rounding level and the ratio wanders
    // around 4 by ~1e-5.
    let p = PotentialSpec::sech2(1.0, 1.0).unwrap();
    for n in [500, 1_000, 2_000, 5_000] {
        let (d1, d2) = successive_differences(&p, 0.5, (-12.0, 12.0), n);
        assert!(d1 / d2 >= 4.0, "n = {n}: ratio {}", d1 / d2);
    }
    // Other shapes approach 4 from below; the order is still two.
    let g = PotentialSpec::gaussian(1.0, 1.0).unwrap();
    let (d1, d2) = successive_differences(&g, 0.3, (-8.0, 8.0), 5_000);
    assert!((d1 / d2).log2() >= 1.95, "ratio {}", d1 / d2);
}

#[test]
fn domain_independence() {
    let p = PotentialSpec::sech2(1.0, 1.0).unwrap();
    let narrow = exact_transmission(&p, 0.5, (-12.0, 12.0), 20_000).unwrap();
    let wide = exact_transmission(&p, 0.5, (-16.0, 16.0), 20_000).unwrap();
    assert!((narrow.t_exact - wide.t_exact).abs() <= 1e-8);
    assert!((narrow.richardson_estimate - wide.richardson_estimate).abs() <= 1e-9);
}
