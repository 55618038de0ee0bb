use gpatch_core::spp::{confinement_sweep, DielectricHalfspaces};
use gpatch_core::GrapheneSheet;

fn ratios(sheets: &[GrapheneSheet], freqs: &[f64]) -> Vec<f64> {
    let h = DielectricHalfspaces::symmetric(1.0).unwrap();
    confinement_sweep(sheets, freqs, &h)
        .unwrap()
        .into_iter()
        .map(|c| c.result.unwrap().confinement_ratio)
        .collect()
}

#[test]
fn confinement_falls_with_fermi_level() {
    let sheets: Vec<_> = [0.1, 0.2, 0.3, 0.45, 0.6, 0.75, 0.9, 1.05, 1.2]
        .iter()
        .map(|&ef| GrapheneSheet::new(ef, 1.2).unwrap())
        .collect();
    for f in [220e9, 280e9, 325e9] {
        let r = ratios(&sheets, &[f]);
        assert!(r.windows(2).all(|w| w[1] < w[0]), "{r:?}");
        assert!(r.iter().all(|&x| x > 1.0));
    }
}

#[test]
fn confinement_rises_with_frequency() {
    // Re q / k0 - 1 ~ (2 w / (eta0 A))^2 / 2 for w tau >> 1.
    let freqs: Vec<f64> = (0..22).map(|i| 220e9 + 5e9 * i as f64).collect();
    for ef in [0.3, 0.6, 0.9, 1.2] {
        let r = ratios(&[GrapheneSheet::new(ef, 1.2).unwrap()], &freqs);
        assert!(r.windows(2).all(|w| w[1] > w[0]), "{ef}: {r:?}");
    }
}
