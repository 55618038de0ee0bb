//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fail.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use gpatch_core::circuit::{
    bandwidth_minus10db, gain_report, graphene_resonance, s11_spectrum,
};
use gpatch_core::fdtd::{compare_fdtd_analytic, run_sheet_scattering, Grid1D};
use gpatch_core::material::{kubo_sigma, mobility, relaxation_from_mobility};
use gpatch_core::patch::{design_patch, f_res_metal, patch_for_target};
use gpatch_core::spp::{confinement_sweep, dispersion_residual};
use gpatch_core::{
    Complex, ConductorSpec, DielectricHalfspaces, GrapheneSheet, PatchGeometry, SubstrateSpec,
};

const BAND: (f64, f64) = (220e9, 325e9);
const LEVELS: [f64; 4] = [0.3, 0.6, 0.9, 1.2];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn within(x: f64, centre: f64, tol: f64) -> bool {
    (x - centre).abs() <= tol
}

fn strictly_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] > w[0])
}

fn table_geometry() -> PatchGeometry {
    PatchGeometry::from_um(355.0, 262.0, SubstrateSpec::polyimide_50um()).unwrap()
}

fn graphene(ef: f64, tau: f64) -> ConductorSpec {
    ConductorSpec::Graphene(GrapheneSheet::new(ef, tau).unwrap())
}

fn min_s11(c: &ConductorSpec) -> f64 {
    s11_spectrum(&table_geometry(), c, BAND, 4201)
        .unwrap()
        .iter()
        .map(|p| p.s11_db)
        .fold(f64::INFINITY, f64::min)
}

fn c01_design() -> Outcome {
    let sub = SubstrateSpec::polyimide_50um();
    let g = design_patch(280e9, &sub).unwrap();
    let reps = 1000;
    let t0 = Instant::now();
    for _ in 0..reps {
        std::hint::black_box(design_patch(std::hint::black_box(280e9), &sub).unwrap());
    }
    let per_call = t0.elapsed().as_secs_f64() / reps as f64;
    let (w, l) = (g.width * 1e6, g.length * 1e6);
    check(
        within(w, 355.0, 5.0) && within(l, 262.0, 3.0) && per_call < 1e-3,
        format!("W = {w:.3} um, L = {l:.3} um, {:.2} us per call", per_call * 1e6),
    )
}

fn c02_metal_resonance() -> Outcome {
    let f = f_res_metal(&table_geometry()) * 1e-9;
    check(within(f, 280.0, 2.0), format!("f_res = {f:.3} GHz"))
}

fn resonances() -> Vec<f64> {
    LEVELS
        .iter()
        .map(|&ef| graphene_resonance(&table_geometry(), &graphene(ef, 1.2)).unwrap() * 1e-9)
        .collect()
}

fn c03_tuning() -> Outcome {
    let f = resonances();
    check(
        within(f[3], 263.0, 8.0) && within(f[0], 225.0, 12.0) && strictly_increasing(&f),
        format!("f(0.3..1.2 eV) = {f:.2?} GHz"),
    )
}

fn c04_shift() -> Outcome {
    let g = table_geometry();
    let fm = f_res_metal(&g);
    let shift = (fm - graphene_resonance(&g, &graphene(1.2, 1.2)).unwrap()) / fm;
    check((0.04..=0.08).contains(&shift), format!("shift = {:.2} %", shift * 100.0))
}

fn c05_below_metal() -> Outcome {
    let g = table_geometry();
    let fm = graphene_resonance(&g, &ConductorSpec::aluminum()).unwrap();
    let mut worst = f64::NEG_INFINITY;
    for ef in LEVELS {
        for tau in LEVELS {
            worst = worst.max(graphene_resonance(&g, &graphene(ef, tau)).unwrap() - fm);
        }
    }
    check(worst < 0.0, format!("max f_g - f_metal = {:.3} GHz over 16 cells", worst * 1e-9))
}

fn c06_mobility() -> Outcome {
    let m = mobility(&GrapheneSheet::new(0.9, 0.9).unwrap());
    let mut worst: f64 = 0.0;
    for ef in [0.1, 0.3, 0.9, 1.2, 2.0] {
        for tau in [0.05, 0.3, 0.9, 1.2, 5.0] {
            let s = GrapheneSheet::new(ef, tau).unwrap();
            let back = relaxation_from_mobility(mobility(&s), ef).unwrap();
            worst = worst.max((back / s.relaxation_time - 1.0).abs());
        }
    }
    check(
        within(m, 10_000.0, 100.0) && worst < 1e-12,
        format!("mobility = {m:.3} cm^2/Vs, round-trip error {worst:.1e}"),
    )
}

fn c07_bandwidth() -> Outcome {
    let sp = s11_spectrum(&table_geometry(), &graphene(1.2, 1.2), BAND, 4201).unwrap();
    let bw = bandwidth_minus10db(&sp) * 1e-9;
    check(within(bw, 19.0, 6.0), format!("bw(1.2 eV, 1.2 ps) = {bw:.3} GHz"))
}

fn c08_return_loss() -> Outcome {
    let by_ef: Vec<f64> = LEVELS.iter().map(|&ef| min_s11(&graphene(ef, 1.2))).collect();
    let by_tau: Vec<f64> = LEVELS.iter().map(|&tau| min_s11(&graphene(1.2, tau))).collect();
    let neg = |v: &[f64]| v.iter().map(|x| -x).collect::<Vec<_>>();
    check(
        strictly_increasing(&neg(&by_ef)) && strictly_increasing(&neg(&by_tau)) && by_ef[0] > -10.0,
        format!("min S11 vs E_F {by_ef:.2?} dB, vs tau {by_tau:.2?} dB"),
    )
}

fn c09_gain() -> Outcome {
    let g = table_geometry();
    let hi = gain_report(&g, &graphene(1.2, 1.2)).unwrap().gain_dbi;
    let lo = gain_report(&g, &graphene(1.2, 0.6)).unwrap().gain_dbi;
    let d = hi - lo;
    check(
        within(hi, 2.7, 2.5) && within(lo, 0.4, 2.5) && hi > lo && (1.0..=4.0).contains(&d),
        format!("G(1.2 ps) = {hi:.2} dBi, G(0.6 ps) = {lo:.2} dBi, delta {d:.2} dB"),
    )
}

fn c10_kubo_oracle() -> Outcome {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data/kubo_oracle.csv");
    let text = std::fs::read_to_string(&path).unwrap();
    let mut worst: f64 = 0.0;
    let mut rows = 0;
    for line in text.lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        let s = kubo_sigma(&GrapheneSheet::new(v[0], v[1]).unwrap(), 2.0 * std::f64::consts::PI * v[2]).unwrap();
        let o = Complex::new(v[3], v[4]);
        worst = worst.max((s.to_complex() - o).norm() / o.norm());
        rows += 1;
    }
    check(rows == 1600 && worst < 1e-10, format!("{rows} points, max relative error {worst:.2e}"))
}

fn c11_fdtd() -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    for (ef, tau) in [(1.2, 1.2), (0.3, 0.3)] {
        let sheet = GrapheneSheet::new(ef, tau).unwrap();
        let errs: Vec<f64> = [100, 200, 400]
            .iter()
            .map(|&r| compare_fdtd_analytic(&sheet, &Grid1D::for_resolution(r).unwrap(), BAND).unwrap().max_error)
            .collect();
        let balance = run_sheet_scattering(&sheet, &Grid1D::for_resolution(200).unwrap(), BAND)
            .unwrap()
            .energy_balance_error();
        pass &= errs[1] < 0.01 && errs.windows(2).all(|w| w[1] < w[0]) && balance < 0.01;
        let errs: Vec<String> = errs.iter().map(|e| format!("{e:.1e}")).collect();
        notes.push(format!("({ef}, {tau}): err [{}] at 100/200/400, balance {balance:.1e}", errs.join(", ")));
    }
    check(pass, notes.join("; "))
}

fn c12_spp() -> Outcome {
    let h = DielectricHalfspaces::symmetric(1.0).unwrap();
    let efs = [0.1, 0.2, 0.3, 0.45, 0.6, 0.75, 0.9, 1.05, 1.2];
    let freqs: Vec<f64> = (0..22).map(|i| 220e9 + 5e9 * i as f64).collect();
    let sheets: Vec<GrapheneSheet> = efs.iter().map(|&ef| GrapheneSheet::new(ef, 1.2).unwrap()).collect();
    let cells = confinement_sweep(&sheets, &freqs, &h).unwrap();
    let mut bound = 0;
    let mut worst_residual: f64 = 0.0;
    let mut slow = true;
    for c in &cells {
        if let Ok(s) = &c.result {
            bound += 1;
            let w = 2.0 * std::f64::consts::PI * c.frequency;
            let sigma = kubo_sigma(&c.sheet, w).unwrap();
            worst_residual = worst_residual.max(dispersion_residual(s, &sigma, &h));
            slow &= s.wavenumber.re > s.free_space_wavenumber;
        }
    }
    let mut decreasing = bound == cells.len();
    for j in 0..freqs.len() {
        let col: Vec<f64> = (0..efs.len())
            .filter_map(|i| cells[i * freqs.len() + j].result.as_ref().ok())
            .map(|s| -s.confinement_ratio)
            .collect();
        decreasing &= strictly_increasing(&col);
    }
    check(
        slow && worst_residual < 1e-10 && decreasing,
        format!("{bound}/{} bound, max residual {worst_residual:.1e}, decreasing in E_F: {decreasing}", cells.len()),
    )
}

fn c13_inverse_design() -> Outcome {
    let inv = patch_for_target(280e9, &SubstrateSpec::polyimide_50um(), &GrapheneSheet::new(1.2, 1.2).unwrap()).unwrap();
    let f = graphene_resonance(&inv.geometry, &graphene(1.2, 1.2)).unwrap() * 1e-9;
    let cmp = inv.compare_length(220e-6);
    let l = inv.geometry.length * 1e6;
    check(
        l < 262.0 && within(f, 280.0, 0.1),
        format!(
            "L = {l:.2} um at {f:.4} GHz; reference 220 um differs by {:.1} um (area reduction {:.1} % vs reference {:.1} %)",
            cmp.difference * 1e6,
            cmp.model_area_reduction * 100.0,
            cmp.reference_area_reduction * 100.0
        ),
    )
}

fn c14_determinism() -> Outcome {
    let cfg = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../paper.cfg");
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for run in ["a", "b"] {
        for format in ["csv", "json"] {
            let stem = dir.path().join(run).join("paper");
            let status = Command::new(env!("CARGO_BIN_EXE_gpatch"))
                .args(["sweep", cfg.to_str().unwrap(), "--quiet", "--format", format, "--out"])
                .arg(&stem)
                .status()
                .unwrap();
            assert!(status.success());
        }
        let mut names: Vec<_> = std::fs::read_dir(dir.path().join(run)).unwrap().map(|e| e.unwrap().path()).collect();
        names.sort();
        files.push(names);
    }
    let same = files[0].len() == 3
        && files[0].iter().zip(&files[1]).all(|(a, b)| std::fs::read(a).unwrap() == std::fs::read(b).unwrap());
    check(same, format!("{} output files compared byte for byte", files[0].len()))
}

fn main() {
    let criteria: [Criterion; 14] = [
        ("reference patch design at 280 GHz", c01_design),
        ("metal resonance of the reference patch", c02_metal_resonance),
        ("Fermi-level tuning endpoints", c03_tuning),
        ("relative resonance shift", c04_shift),
        ("graphene resonance below metal", c05_below_metal),
        ("mobility identity and round-trip", c06_mobility),
        ("-10 dB bandwidth at 1.2 eV / 1.2 ps", c07_bandwidth),
        ("return-loss trends", c08_return_loss),
        ("gain levels and ordering", c09_gain),
        ("Kubo arbitrary-precision oracle", c10_kubo_oracle),
        ("FDTD against analytic sheet", c11_fdtd),
        ("SPP confinement", c12_spp),
        ("inverse design", c13_inverse_design),
        ("sweep determinism", c14_determinism),
    ];
    let t0 = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        failed += usize::from(!o.pass);
        println!("{} {:>2} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!(
        "acceptance: {}/{} passed in {:.1} s",
        criteria.len() - failed,
        criteria.len(),
        t0.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
