use gpatch_core::fdtd::{compare_fdtd_analytic, run_sheet_scattering, Grid1D};
use gpatch_core::GrapheneSheet;

const BAND: (f64, f64) = (220e9, 325e9);

#[test]
fn refinement_study_converges_at_second_order() {
    for (ef, tau) in [(1.2, 1.2), (0.3, 0.3)] {
        let sheet = GrapheneSheet::new(ef, tau).unwrap();
        let errors: Vec<f64> = [100, 200, 400]
            .iter()
            .map(|&r| {
                compare_fdtd_analytic(&sheet, &Grid1D::for_resolution(r).unwrap(), BAND)
                    .unwrap()
                    .max_error
            })
            .collect();
        assert!(errors.windows(2).all(|w| w[1] < w[0]), "{errors:?}");
        for w in errors.windows(2) {
            let order = (w[0] / w[1]).log2();
            assert!(order >= 1.5, "order {order} from {errors:?}");
        }
        assert!(errors[1] < 0.01);
    }
}

#[test]
fn reflective_sheet_and_energy_balance() {
    let sheet = GrapheneSheet::new(1.2, 1.2).unwrap();
    let res = run_sheet_scattering(&sheet, &Grid1D::for_resolution(200).unwrap(), BAND).unwrap();
    let i = res.frequencies.iter().position(|&f| (f - 280e9).abs() < 1.0).unwrap();
    assert!((res.reflection[i].norm_sqr() - 0.936).abs() < 0.005);
    assert!(res.energy_balance_error() < 0.01);
}

#[test]
fn lossy_sheet_absorbs() {
    let sheet = GrapheneSheet::new(0.1, 0.3).unwrap();
    let res = run_sheet_scattering(&sheet, &Grid1D::for_resolution(200).unwrap(), BAND).unwrap();
    let i = res.frequencies.iter().position(|&f| (f - 280e9).abs() < 1.0).unwrap();
    assert!(res.transmission[i].norm_sqr() > res.reflection[i].norm_sqr());
    assert!(res.absorption[i] > 0.3);
    assert!(res.energy_balance_error() < 0.01);
}
