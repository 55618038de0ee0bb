use gpatch_core::circuit::{
    bandwidth_minus10db, gain_report, graphene_resonance, q_factors, s11_spectrum, Resonator,
};
use gpatch_core::patch::f_res_metal;
use gpatch_core::{ConductorSpec, GrapheneSheet, PatchGeometry, SubstrateSpec};

fn table_geometry() -> PatchGeometry {
    PatchGeometry::from_um(355.0, 262.0, SubstrateSpec::polyimide_50um()).unwrap()
}

fn graphene(ef: f64, tau: f64) -> ConductorSpec {
    ConductorSpec::Graphene(GrapheneSheet::new(ef, tau).unwrap())
}

fn min_s11(c: &ConductorSpec) -> f64 {
    s11_spectrum(&table_geometry(), c, (220e9, 325e9), 2101)
        .unwrap()
        .iter()
        .map(|p| p.s11_db)
        .fold(f64::INFINITY, f64::min)
}

#[test]
fn metal_bandwidth_matches_analytic_rlc() {
    // Matched parallel RLC: |G| = Q|y| / sqrt(4 + Q^2 y^2), y = f/f0 - f0/f, so the
    // -10 dB band is f0 * Y / Q with Y = 2 g / sqrt(1 - g^2), g = 10^(-1/2).
    let g = table_geometry();
    let metal = ConductorSpec::aluminum();
    let res = Resonator::of(&g, &metal).unwrap();
    let gm = 10f64.powf(-0.5);
    let analytic = res.frequency * (2.0 * gm / (1.0 - gm * gm).sqrt()) / res.q_total;
    let sp = s11_spectrum(&g, &metal, (250e9, 310e9), 20001).unwrap();
    let bw = bandwidth_minus10db(&sp);
    assert!((bw / analytic - 1.0).abs() < 0.01, "{bw} vs {analytic}");
}

#[test]
fn resonance_rises_with_fermi_level() {
    let g = table_geometry();
    let f: Vec<f64> = [0.3, 0.6, 0.9, 1.2]
        .iter()
        .map(|&ef| graphene_resonance(&g, &graphene(ef, 1.2)).unwrap())
        .collect();
    assert!(f.windows(2).all(|w| w[1] > w[0]));
    let shift = 1.0 - f[3] / f_res_metal(&g);
    assert!((0.04..=0.08).contains(&shift), "{shift}");
}

#[test]
fn dips_deepen_with_fermi_level_and_relaxation_time() {
    let by_ef: Vec<f64> = [0.3, 0.6, 0.9, 1.2].iter().map(|&e| min_s11(&graphene(e, 1.2))).collect();
    assert!(by_ef.windows(2).all(|w| w[1] < w[0]), "{by_ef:?}");
    let by_tau: Vec<f64> = [0.3, 0.6, 0.9, 1.2].iter().map(|&t| min_s11(&graphene(1.2, t))).collect();
    assert!(by_tau.windows(2).all(|w| w[1] < w[0]), "{by_tau:?}");
}

#[test]
fn gain_falls_with_relaxation_time() {
    let g = table_geometry();
    let hi = gain_report(&g, &graphene(1.2, 1.2)).unwrap();
    let lo = gain_report(&g, &graphene(1.2, 0.6)).unwrap();
    let delta = hi.gain_dbi - lo.gain_dbi;
    assert!((1.0..=4.0).contains(&delta), "{delta}");
    // Directivity barely moves; the gain change is efficiency.
    assert!((hi.directivity_dbi - lo.directivity_dbi).abs() < 1e-12);
}

#[test]
fn graphene_q_is_conductor_dominated_at_low_quality() {
    let g = table_geometry();
    let c = graphene(0.3, 0.3);
    let f = graphene_resonance(&g, &c).unwrap();
    let q = q_factors(&g, &c, f).unwrap();
    assert!(q.q_conductor < q.q_radiation);
}
