//! Rectangular microstrip patch design with the transmission-line model.
//!
//! ```text
//! W      = c / (2 f) * sqrt(2 / (eps_r + 1))
//! eps_eff = (eps_r + 1)/2 + (eps_r - 1)/2 * (1 + 12 h / W)^(-1/2)
//! dL     = 0.412 h (eps_eff + 0.3)(W/h + 0.264) / ((eps_eff - 0.258)(W/h + 0.8))
//! L      = c / (2 f sqrt(eps_eff)) - 2 dL
//! ```
//!
//! The CPW pad and via dimensions in [`PadGeometry`] are carried along for
//! output only. **No field computation uses them.**

use crate::circuit::{graphene_resonance, ConductorSpec};
use crate::constants::LIGHT_SPEED;
use crate::error::{check_positive, check_range, invalid, Error, Result};
use crate::material::GrapheneSheet;
use crate::math::{powf, sqrt};
use alloc::format;

pub const DESIGN_FREQUENCY_RANGE: (f64, f64) = (1e9, 10e12);
const MAX_BISECTION_STEPS: usize = 60;
const INVERSE_TOLERANCE_HZ: f64 = 1e3;

/// Coplanar feed pad and through-substrate via dimensions, in metres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PadGeometry {
    pub signal_pad_width: f64,
    pub ground_pad_width: f64,
    pub gap: f64,
    pub tsv_radius: f64,
}

impl PadGeometry {
    pub fn new(signal_pad_width: f64, ground_pad_width: f64, gap: f64, tsv_radius: f64) -> Result<Self> {
        Ok(PadGeometry {
            signal_pad_width: check_positive("signal_pad_width", signal_pad_width)?,
            ground_pad_width: check_positive("ground_pad_width", ground_pad_width)?,
            gap: check_positive("gap", gap)?,
            tsv_radius: check_positive("tsv_radius", tsv_radius)?,
        })
    }

    /// 40 um signal pad, 50 um ground pads, 5 um gaps, 5 um via radius.
    pub fn default_cpw() -> Self {
        PadGeometry {
            signal_pad_width: 40e-6,
            ground_pad_width: 50e-6,
            gap: 5e-6,
            tsv_radius: 5e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubstrateSpec {
    pub rel_permittivity: f64,
    pub loss_tangent: f64,
    /// Thickness h, m.
    pub thickness: f64,
    pub pads: PadGeometry,
}

impl SubstrateSpec {
    pub fn new(rel_permittivity: f64, loss_tangent: f64, thickness: f64, pads: PadGeometry) -> Result<Self> {
        if !rel_permittivity.is_finite() || rel_permittivity <= 1.0 {
            return Err(invalid("rel_permittivity", rel_permittivity, "must be > 1"));
        }
        if !loss_tangent.is_finite() || !(0.0..0.1).contains(&loss_tangent) {
            return Err(invalid("loss_tangent", loss_tangent, "accepted range is [0, 0.1)"));
        }
        check_positive("thickness [m]", thickness)?;
        let pads = PadGeometry::new(pads.signal_pad_width, pads.ground_pad_width, pads.gap, pads.tsv_radius)?;
        Ok(SubstrateSpec {
            rel_permittivity,
            loss_tangent,
            thickness,
            pads,
        })
    }

    /// 50 um polyimide (eps_r = 3.5, tan d = 0.0027) with the default CPW pads.
    pub fn polyimide_50um() -> Self {
        SubstrateSpec {
            rel_permittivity: 3.5,
            loss_tangent: 0.0027,
            thickness: 50e-6,
            pads: PadGeometry::default_cpw(),
        }
    }
}

/// Patch dimensions plus the transmission-line parameters derived from them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatchGeometry {
    pub width: f64,
    pub length: f64,
    pub substrate: SubstrateSpec,
    pub eps_eff: f64,
    /// Fringing extension dL at each radiating edge, m.
    pub fringing_extension: f64,
    pub substrate_width: f64,
    pub substrate_length: f64,
}

impl PatchGeometry {
    /// Builds a geometry from width and length in metres; requires `width > length > 0`.
    pub fn new(width: f64, length: f64, substrate: SubstrateSpec) -> Result<Self> {
        check_positive("patch width [m]", width)?;
        check_positive("patch length [m]", length)?;
        if width <= length {
            return Err(invalid("patch length [m]", length, format!("must be smaller than the width {width}")));
        }
        let substrate = SubstrateSpec::new(
            substrate.rel_permittivity,
            substrate.loss_tangent,
            substrate.thickness,
            substrate.pads,
        )?;
        let h = substrate.thickness;
        let eps_eff = effective_permittivity(width, h, substrate.rel_permittivity);
        Ok(PatchGeometry {
            width,
            length,
            substrate,
            eps_eff,
            fringing_extension: fringing_extension(width, h, eps_eff),
            substrate_width: 2.0 * width,
            substrate_length: 2.0 * length,
        })
    }

    /// Same as [`PatchGeometry::new`] with dimensions in micrometres.
    pub fn from_um(width_um: f64, length_um: f64, substrate: SubstrateSpec) -> Result<Self> {
        Self::new(width_um * 1e-6, length_um * 1e-6, substrate)
    }

    /// Electrical length L + 2 dL, m.
    pub fn effective_length(&self) -> f64 {
        self.length + 2.0 * self.fringing_extension
    }

    pub fn area(&self) -> f64 {
        self.width * self.length
    }
}

pub fn effective_permittivity(width: f64, thickness: f64, eps_r: f64) -> f64 {
    0.5 * (eps_r + 1.0) + 0.5 * (eps_r - 1.0) * powf(1.0 + 12.0 * thickness / width, -0.5)
}

pub fn fringing_extension(width: f64, thickness: f64, eps_eff: f64) -> f64 {
    let wh = width / thickness;
    0.412 * thickness * (eps_eff + 0.3) * (wh + 0.264) / ((eps_eff - 0.258) * (wh + 0.8))
}

/// Metal-patch TM010 resonance for raw dimensions, Hz.
pub fn metal_resonance(width: f64, length: f64, substrate: &SubstrateSpec) -> f64 {
    let h = substrate.thickness;
    let eps_eff = effective_permittivity(width, h, substrate.rel_permittivity);
    let dl = fringing_extension(width, h, eps_eff);
    LIGHT_SPEED / (2.0 * (length + 2.0 * dl) * sqrt(eps_eff))
}

/// Designs a metal patch resonating at `target_frequency` (Hz).
pub fn design_patch(target_frequency: f64, substrate: &SubstrateSpec) -> Result<PatchGeometry> {
    let (lo, hi) = DESIGN_FREQUENCY_RANGE;
    check_range("target_frequency [Hz]", target_frequency, lo, hi)?;
    let substrate = SubstrateSpec::new(
        substrate.rel_permittivity,
        substrate.loss_tangent,
        substrate.thickness,
        substrate.pads,
    )?;
    let eps_r = substrate.rel_permittivity;
    let h = substrate.thickness;
    let width = LIGHT_SPEED / (2.0 * target_frequency) * sqrt(2.0 / (eps_r + 1.0));
    let eps_eff = effective_permittivity(width, h, eps_r);
    let dl = fringing_extension(width, h, eps_eff);
    let length = LIGHT_SPEED / (2.0 * target_frequency * sqrt(eps_eff)) - 2.0 * dl;
    if length <= 0.0 {
        return Err(Error::InfeasibleDesign(format!(
            "length {length:.3e} m <= 0: substrate of {h:.3e} m is electrically too thick at {target_frequency:.4e} Hz"
        )));
    }
    PatchGeometry::new(width, length, substrate)
        .map_err(|e| Error::InfeasibleDesign(format!("{e}")))
}

/// Resonance of a metal patch with the stored dimensions, Hz.
pub fn f_res_metal(geometry: &PatchGeometry) -> f64 {
    metal_resonance(geometry.width, geometry.length, &geometry.substrate)
}

/// Graphene patch resized to resonate at a target frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseDesign {
    pub geometry: PatchGeometry,
    /// Metal design at the same target; its width is kept.
    pub metal_geometry: PatchGeometry,
    /// Graphene resonance of `geometry`, Hz.
    pub resonance: f64,
    pub iterations: usize,
}

impl InverseDesign {
    /// Fractional area saved with respect to the metal design.
    pub fn area_reduction(&self) -> f64 {
        1.0 - self.geometry.area() / self.metal_geometry.area()
    }

    /// Compares the computed length against an externally reported length (m).
    pub fn compare_length(&self, reference_length: f64) -> LengthComparison {
        let reference_area_reduction = 1.0 - reference_length / self.metal_geometry.length;
        LengthComparison {
            model_length: self.geometry.length,
            reference_length,
            difference: self.geometry.length - reference_length,
            model_area_reduction: self.area_reduction(),
            reference_area_reduction,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LengthComparison {
    pub model_length: f64,
    pub reference_length: f64,
    /// model - reference, m.
    pub difference: f64,
    pub model_area_reduction: f64,
    pub reference_area_reduction: f64,
}

/// Keeps the metal-design width and bisects the length until the graphene
/// patch resonates at `target_frequency`.
pub fn patch_for_target(
    target_frequency: f64,
    substrate: &SubstrateSpec,
    sheet: &GrapheneSheet,
) -> Result<InverseDesign> {
    let metal = design_patch(target_frequency, substrate)?;
    let conductor = ConductorSpec::Graphene(*sheet);
    let resonance_at = |length: f64| -> Result<f64> {
        let g = PatchGeometry::new(metal.width, length, metal.substrate)?;
        graphene_resonance(&g, &conductor)
    };

    let mut long = metal.length;
    let mut short = 0.5 * metal.length;
    let f_short = resonance_at(short)?;
    if f_short < target_frequency {
        return Err(Error::BracketFailure(format!(
            "graphene resonance at L = {short:.4e} m is {f_short:.6e} Hz, still below {target_frequency:.6e} Hz"
        )));
    }

    let mut mid = 0.5 * (long + short);
    let mut f_mid = resonance_at(mid)?;
    let mut iterations = 1;
    while iterations < MAX_BISECTION_STEPS && (f_mid - target_frequency).abs() > INVERSE_TOLERANCE_HZ {
        // Resonance falls as the patch gets longer.
        if f_mid > target_frequency {
            short = mid;
        } else {
            long = mid;
        }
        mid = 0.5 * (long + short);
        f_mid = resonance_at(mid)?;
        iterations += 1;
    }
    Ok(InverseDesign {
        geometry: PatchGeometry::new(metal.width, mid, metal.substrate)?,
        metal_geometry: metal,
        resonance: f_mid,
        iterations,
    })
}
