use std::f64::consts::PI;

use serde::{Deserialize, Deserializer};

use crate::error::{Error, Result};

/// Rotation axis of a Raman pulse in the qubit frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    /// Phase of the `c⁺ab` coupling that realizes a rotation about this axis.
    pub fn raman_phase(self) -> f64 {
        match self {
            Axis::X => 0.0,
            Axis::Y => PI / 2.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PulseStep {
    /// Square resonant Raman pulse applied simultaneously on `sites`.
    /// `rabi` is the Rabi angular frequency, so the rotation angle is
    /// `rabi * duration`.
    Raman {
        sites: Vec<usize>,
        axis: Axis,
        angle: f64,
        rabi: f64,
    },
    /// All drives off for `duration` (dimensionless time).
    FreeEvolution { duration: f64 },
}

impl PulseStep {
    pub fn duration(&self) -> f64 {
        match *self {
            PulseStep::Raman { angle, rabi, .. } => {
                if angle == 0.0 {
                    0.0
                } else {
                    angle.abs() / rabi
                }
            }
            PulseStep::FreeEvolution { duration } => duration,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PulseSchedule {
    steps: Vec<PulseStep>,
}

impl PulseSchedule {
    pub fn new(steps: Vec<PulseStep>) -> Result<Self> {
        for (k, step) in steps.iter().enumerate() {
            check_step(step).map_err(|msg| Error::InvalidArgument(format!("step {k}: {msg}")))?;
        }
        Ok(Self { steps })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn steps(&self) -> &[PulseStep] {
        &self.steps
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn total_duration(&self) -> f64 {
        self.steps.iter().map(PulseStep::duration).sum()
    }

    /// Highest site index referenced by any pulse.
    pub fn max_site(&self) -> Option<usize> {
        self.steps
            .iter()
            .filter_map(|s| match s {
                PulseStep::Raman { sites, .. } => sites.iter().copied().max(),
                PulseStep::FreeEvolution { .. } => None,
            })
            .max()
    }

    /// Parses the TOML schedule format:
    ///
    /// ```toml
    /// [[step]]
    /// type = "pulse"
    /// sites = [0, 1]
    /// axis = "y"
    /// angle = "pi/2"
    /// rabi = 100.0
    ///
    /// [[step]]
    /// type = "free"
    /// duration = 3.14159
    /// ```
    ///
    /// Angles are radians, either as numbers or as `pi` expressions like
    /// `"-pi/2"` and `"3pi/4"`. Parse errors carry the line number.
    pub fn parse(text: &str) -> Result<Self> {
        let file: ScheduleFile =
            toml::from_str(text).map_err(|e| Error::Parse(format!("schedule: {e}")))?;
        let steps = file
            .step
            .into_iter()
            .map(|s| match s {
                StepRecord::Pulse {
                    sites,
                    site,
                    axis,
                    angle,
                    rabi,
                } => {
                    let sites = match (sites, site) {
                        (Some(v), None) => v,
                        (None, Some(s)) => vec![s],
                        _ => {
                            return Err(Error::Parse(
                                "schedule: pulse needs exactly one of `site` or `sites`".into(),
                            ))
                        }
                    };
                    Ok(PulseStep::Raman {
                        sites,
                        axis: axis.unwrap_or(Axis::Y),
                        angle: angle.0,
                        rabi,
                    })
                }
                StepRecord::Free { duration } => Ok(PulseStep::FreeEvolution { duration }),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(steps)
    }
}

fn check_step(step: &PulseStep) -> std::result::Result<(), String> {
    match step {
        PulseStep::Raman {
            sites, angle, rabi, ..
        } => {
            if sites.is_empty() {
                return Err("pulse addresses no sites".into());
            }
            let mut sorted = sites.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != sites.len() {
                return Err("pulse lists a site twice".into());
            }
            if !angle.is_finite() {
                return Err(format!("angle must be finite, got {angle}"));
            }
            if !(rabi.is_finite() && *rabi >= 0.0) {
                return Err(format!("rabi must be finite and non-negative, got {rabi}"));
            }
            if *angle != 0.0 && *rabi == 0.0 {
                return Err("a nonzero rotation needs rabi > 0".into());
            }
        }
        PulseStep::FreeEvolution { duration } => {
            if !(duration.is_finite() && *duration >= 0.0) {
                return Err(format!(
                    "duration must be finite and non-negative, got {duration}"
                ));
            }
        }
    }
    Ok(())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScheduleFile {
    #[serde(default)]
    step: Vec<StepRecord>,
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum StepRecord {
    Pulse {
        sites: Option<Vec<usize>>,
        site: Option<usize>,
        axis: Option<Axis>,
        angle: Angle,
        rabi: f64,
    },
    Free {
        duration: f64,
    },
}

struct Angle(f64);

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Number(x) => Ok(Angle(x)),
            Raw::Int(x) => Ok(Angle(x as f64)),
            Raw::Text(s) => parse_angle(&s).map(Angle).map_err(serde::de::Error::custom),
        }
    }
}

/// Parses `[sign][coef]pi[/den]` or a plain number.
pub fn parse_angle(text: &str) -> std::result::Result<f64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot parse angle {text:?}");
    if let Ok(x) = s.parse::<f64>() {
        return Ok(x);
    }
    let (sign, rest) = match s.strip_prefix('-') {
        Some(r) => (-1.0, r),
        None => (1.0, s.strip_prefix('+').unwrap_or(&s)),
    };
    let pos = rest.find("pi").ok_or_else(bad)?;
    let coef_str = rest[..pos].trim_end_matches('*');
    let coef = if coef_str.is_empty() {
        1.0
    } else {
        coef_str.parse::<f64>().map_err(|_| bad())?
    };
    let tail = &rest[pos + 2..];
    let den = if tail.is_empty() {
        1.0
    } else {
        let d = tail.strip_prefix('/').ok_or_else(bad)?;
        d.parse::<f64>().map_err(|_| bad())?
    };
    if den == 0.0 {
        return Err(bad());
    }
    Ok(sign * coef * PI / den)
}
