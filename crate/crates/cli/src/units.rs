//! Unit-suffixed numbers: `280GHz`, `50 um`, `1.2 eV`, `0.3:1.2:0.3 ps`.
//!
//! Values come back in the units the core API takes: Hz, eV, seconds,
//! metres, kelvin and S/m.

use gpatch_core::circuit::linspace;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Frequency,
    Energy,
    Time,
    Length,
    Temperature,
    Conductivity,
    /// Plain numbers such as permittivity or loss tangent.
    Ratio,
}

impl Dimension {
    /// Unit names with their power-of-ten scale.
    fn units(self) -> &'static [(&'static str, i32)] {
        match self {
            Dimension::Frequency => &[("Hz", 0), ("kHz", 3), ("MHz", 6), ("GHz", 9), ("THz", 12)],
            Dimension::Energy => &[("eV", 0), ("meV", -3)],
            Dimension::Time => &[("s", 0), ("ms", -3), ("us", -6), ("ns", -9), ("ps", -12), ("fs", -15)],
            Dimension::Length => &[("m", 0), ("mm", -3), ("um", -6), ("µm", -6), ("nm", -9)],
            Dimension::Temperature => &[("K", 0)],
            Dimension::Conductivity => &[("S/m", 0), ("MS/m", 6)],
            Dimension::Ratio => &[],
        }
    }

    pub fn expected(self) -> String {
        let names: Vec<&str> = self.units().iter().map(|u| u.0).collect();
        names.join(", ")
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum UnitError {
    #[error("`{text}` needs a unit suffix (one of {expected})")]
    Missing { text: String, expected: String },
    #[error("unknown unit `{unit}` (expected one of {expected})")]
    Unknown { unit: String, expected: String },
    #[error("`{unit}` takes no unit suffix")]
    Unexpected { unit: String },
    #[error("`{0}` is not a number")]
    Number(String),
    #[error("bad range `{0}`: {1}")]
    Range(String, &'static str),
}

/// Splits `"1.2 eV"` into `("1.2", "eV")`. The unit is the trailing run of
/// letters, `/` and `µ`.
fn split_unit(text: &str) -> (&str, &str) {
    let text = text.trim();
    let cut = text
        .char_indices()
        .rev()
        .take_while(|&(_, c)| c.is_alphabetic() || c == '/')
        .last()
        .map_or(text.len(), |(i, _)| i);
    (text[..cut].trim(), &text[cut..])
}

/// Decimal scale; dividing for negative exponents keeps `50 um` at exactly `5e-5`.
#[derive(Debug, Clone, Copy)]
struct Scale(i32);

impl Scale {
    fn apply(self, x: f64) -> f64 {
        if self.0 >= 0 {
            x * 10f64.powi(self.0)
        } else {
            x / 10f64.powi(-self.0)
        }
    }
}

fn scale(unit: &str, dim: Dimension) -> Result<Scale, UnitError> {
    if dim == Dimension::Ratio {
        return if unit.is_empty() {
            Ok(Scale(0))
        } else {
            Err(UnitError::Unexpected { unit: unit.into() })
        };
    }
    dim.units()
        .iter()
        .find(|u| u.0 == unit)
        .map(|u| Scale(u.1))
        .ok_or_else(|| UnitError::Unknown {
            unit: unit.into(),
            expected: dim.expected(),
        })
}

fn number(text: &str) -> Result<f64, UnitError> {
    let x: f64 = text.trim().parse().map_err(|_| UnitError::Number(text.trim().into()))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(UnitError::Number(text.trim().into()))
    }
}

fn unit_scale(text: &str, unit: &str, dim: Dimension) -> Result<Scale, UnitError> {
    if unit.is_empty() && dim != Dimension::Ratio {
        return Err(UnitError::Missing {
            text: text.trim().into(),
            expected: dim.expected(),
        });
    }
    scale(unit, dim)
}

/// One value with a mandatory suffix (none for [`Dimension::Ratio`]).
pub fn parse_quantity(text: &str, dim: Dimension) -> Result<f64, UnitError> {
    let (num, unit) = split_unit(text);
    let k = unit_scale(text, unit, dim)?;
    Ok(k.apply(number(num)?))
}

/// `a, b, c unit`, `start:stop:step unit` (stop inclusive) or a single value.
pub fn parse_list(text: &str, dim: Dimension) -> Result<Vec<f64>, UnitError> {
    let (body, unit) = split_unit(text);
    let k = unit_scale(text, unit, dim)?;
    if body.contains(':') {
        let parts = body.split(':').map(number).collect::<Result<Vec<_>, _>>()?;
        let [start, stop, step] = parts[..] else {
            return Err(UnitError::Range(text.trim().into(), "expected start:stop:step"));
        };
        if step <= 0.0 || stop < start {
            return Err(UnitError::Range(text.trim().into(), "need step > 0 and stop >= start"));
        }
        let intervals = (stop - start) / step;
        let n = intervals.round();
        if (intervals - n).abs() > 1e-9 * n.max(1.0) {
            return Err(UnitError::Range(text.trim().into(), "stop is not start plus a whole number of steps"));
        }
        if n == 0.0 {
            return Ok(vec![k.apply(start)]);
        }
        return Ok(linspace(start, stop, n as usize + 1).into_iter().map(|x| k.apply(x)).collect());
    }
    body.split(',').map(|s| number(s).map(|x| k.apply(x))).collect()
}

/// `lo:hi unit`, a two-point band.
pub fn parse_band(text: &str, dim: Dimension) -> Result<(f64, f64), UnitError> {
    let (body, unit) = split_unit(text);
    let k = unit_scale(text, unit, dim)?;
    match body.split(':').collect::<Vec<_>>()[..] {
        [lo, hi] => Ok((k.apply(number(lo)?), k.apply(number(hi)?))),
        _ => Err(UnitError::Range(text.trim().into(), "expected lo:hi")),
    }
}
