use plate_lab::radial::{group_speed, radial_convolution, root_bracket, stationary_point, AnnulusBump, RadialSpectrum};
use plate_lab::spectral::{GridGeometry, SpectralField};
use plate_lab::decay_lab::linear_solution;
use proptest::prelude::*;

proptest! {
    #[test]
    fn stationary_root_is_accurate(log_s in -3.0f64..4.0) {
        let s = 10f64.powf(log_s);
        let d = stationary_point(s);
        prop_assert!((group_speed(d.r0) - s).abs() <= 1e-12 * s);
        let (lo, hi) = root_bracket(s);
        let slack = 1e-12 * d.r0;
        prop_assert!(d.r0 >= lo - slack && d.r0 <= hi + slack, "{} not in [{}, {}]", d.r0, lo, hi);
    }

    #[test]
    fn stationary_root_is_increasing(log_s in -3.0f64..4.0, step in 1e-6f64..1.0) {
        let s = 10f64.powf(log_s);
        prop_assert!(stationary_point(s * (1.0 + step)).r0 > stationary_point(s).r0);
    }
}

#[test]
fn two_dimensional_oracle() {
    // radial data in n = 2 against the FFT solution on a modest square grid
    let profile = AnnulusBump::<f64>::new(1.0, 2.0, 1.0).unwrap();
    let g = GridGeometry::<f64>::new(2, 1024, 96.0).unwrap();
    let datum = SpectralField::from_radial_spectrum(&g, |r| profile.value(r));
    let t = 4.0;
    let u = linear_solution(&datum, t);
    let top = u.values().iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let mut checked = 0;
    for i in (0..g.total()).step_by(1009) {
        let v = u.values()[i];
        if v.abs() < 0.2 * top || g.radius(i) == 0.0 {
            continue;
        }
        let quad = radial_convolution(&profile, t, g.radius(i), 2).unwrap();
        assert!((v - quad).abs() <= 1e-4 * quad.abs(), "r = {}: {v} vs {quad}", g.radius(i));
        checked += 1;
    }
    assert!(checked >= 5);
}
