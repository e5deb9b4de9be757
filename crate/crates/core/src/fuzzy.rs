//! Triangular fuzzy time values and their reduction to crisp coefficients.
//!
//! Flight times, task weights and the inter-task gap may all be supplied as
//! triangular fuzzy numbers. The optimizer itself works on crisp values, so
//! every fuzzy quantity is defuzzified once when a scenario is loaded.

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

use crate::error::FuzzyError;

/// A triangular fuzzy number described by its modal point and the half-widths
/// of its support on either side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangularFuzzyNumber {
    modal: f64,
    lower_width: f64,
    upper_width: f64,
}

impl TriangularFuzzyNumber {
    pub fn new(modal: f64, lower_width: f64, upper_width: f64) -> Result<Self, FuzzyError> {
        if !(modal.is_finite() && lower_width.is_finite() && upper_width.is_finite()) {
            return Err(FuzzyError::NonFinite);
        }
        if lower_width < 0.0 || upper_width < 0.0 {
            return Err(FuzzyError::NegativeWidth {
                lower: lower_width,
                upper: upper_width,
            });
        }
        Ok(Self {
            modal,
            lower_width,
            upper_width,
        })
    }

    /// The degenerate number `(value, 0, 0)`.
    pub fn crisp(value: f64) -> Self {
        Self {
            modal: value,
            lower_width: 0.0,
            upper_width: 0.0,
        }
    }

    pub fn modal(&self) -> f64 {
        self.modal
    }

    pub fn lower_width(&self) -> f64 {
        self.lower_width
    }

    pub fn upper_width(&self) -> f64 {
        self.upper_width
    }

    pub fn is_crisp(&self) -> bool {
        self.lower_width == 0.0 && self.upper_width == 0.0
    }

    /// Lowest point of the support.
    pub fn support_min(&self) -> f64 {
        self.modal - self.lower_width
    }

    /// Highest point of the support.
    pub fn support_max(&self) -> f64 {
        self.modal + self.upper_width
    }

    /// Checks the extra constraint for values that model a duration.
    pub fn check_time(&self) -> Result<(), FuzzyError> {
        if self.support_min() < 0.0 {
            return Err(FuzzyError::NegativeTime(self.support_min()));
        }
        Ok(())
    }

    /// Membership grade of `z`.
    ///
    /// A side with zero width is a step: it contributes grade 1 only at the
    /// modal point itself.
    pub fn membership(&self, z: f64) -> f64 {
        let d = z - self.modal;
        if d == 0.0 {
            1.0
        } else if d < 0.0 {
            if self.lower_width == 0.0 || -d > self.lower_width {
                0.0
            } else {
                1.0 + d / self.lower_width
            }
        } else if self.upper_width == 0.0 || d > self.upper_width {
            0.0
        } else {
            1.0 - d / self.upper_width
        }
    }

    pub fn defuzzify(&self, mode: DefuzzMode) -> f64 {
        match mode {
            DefuzzMode::Modal => self.modal,
            DefuzzMode::Centroid => (self.support_min() + self.modal + self.support_max()) / 3.0,
            DefuzzMode::AlphaCutPessimistic(a) => self.modal - (1.0 - a.value()) * self.lower_width,
            DefuzzMode::AlphaCutOptimistic(a) => self.modal + (1.0 - a.value()) * self.upper_width,
        }
    }
}

impl From<f64> for TriangularFuzzyNumber {
    fn from(value: f64) -> Self {
        Self::crisp(value)
    }
}

impl fmt::Display for TriangularFuzzyNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_crisp() {
            write!(f, "{}", self.modal)
        } else {
            write!(
                f,
                "({}, -{}, +{})",
                self.modal, self.lower_width, self.upper_width
            )
        }
    }
}

// Crisp values serialize as a bare number, everything else as [c, b-, b+].
impl Serialize for TriangularFuzzyNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.is_crisp() {
            serializer.serialize_f64(self.modal)
        } else {
            [self.modal, self.lower_width, self.upper_width].serialize(serializer)
        }
    }
}

impl<'de> Deserialize<'de> for TriangularFuzzyNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Bare(f64),
            Triple([f64; 3]),
        }
        match Repr::deserialize(deserializer).map_err(|_| {
            de::Error::custom("expected a number or a [modal, lower_width, upper_width] array")
        })? {
            Repr::Bare(v) => {
                if v.is_finite() {
                    Ok(Self::crisp(v))
                } else {
                    Err(de::Error::custom(FuzzyError::NonFinite))
                }
            }
            Repr::Triple([c, bm, bp]) => Self::new(c, bm, bp).map_err(de::Error::custom),
        }
    }
}

/// Alpha level of a cut, restricted to `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Alpha(f64);

impl Alpha {
    pub fn new(value: f64) -> Result<Self, FuzzyError> {
        if value > 0.0 && value <= 1.0 {
            Ok(Self(value))
        } else {
            Err(FuzzyError::AlphaOutOfRange(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// How a fuzzy value is turned into the crisp number used by the model.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum DefuzzMode {
    #[default]
    Modal,
    Centroid,
    AlphaCutPessimistic(Alpha),
    AlphaCutOptimistic(Alpha),
}

impl DefuzzMode {
    /// Builds a mode from its textual name. Alpha-cut modes require `alpha`,
    /// the others reject it.
    pub fn from_parts(mode: &str, alpha: Option<f64>) -> Result<Self, FuzzyError> {
        let needs_alpha = |alpha: Option<f64>| {
            alpha
                .ok_or_else(|| FuzzyError::MissingAlpha(mode.to_string()))
                .and_then(Alpha::new)
        };
        let parsed = match mode {
            "modal" => Self::Modal,
            "centroid" => Self::Centroid,
            "alpha_cut_pessimistic" | "alpha-pess" => {
                Self::AlphaCutPessimistic(needs_alpha(alpha)?)
            }
            "alpha_cut_optimistic" | "alpha-opt" => Self::AlphaCutOptimistic(needs_alpha(alpha)?),
            other => return Err(FuzzyError::UnknownMode(other.to_string())),
        };
        if matches!(parsed, Self::Modal | Self::Centroid) && alpha.is_some() {
            return Err(FuzzyError::UnexpectedAlpha(mode.to_string()));
        }
        Ok(parsed)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Modal => "modal",
            Self::Centroid => "centroid",
            Self::AlphaCutPessimistic(_) => "alpha_cut_pessimistic",
            Self::AlphaCutOptimistic(_) => "alpha_cut_optimistic",
        }
    }

    pub fn alpha(&self) -> Option<f64> {
        match self {
            Self::AlphaCutPessimistic(a) | Self::AlphaCutOptimistic(a) => Some(a.value()),
            _ => None,
        }
    }
}

/// One-sided ramp membership for task and departure times: 0 at `a`, rising
/// linearly to 1 at `peak`, 0 outside `[a, peak]`.
///
/// Not used by the solver; task and departure times stay crisp.
pub fn membership_ramp(a: f64, peak: f64, x: f64) -> f64 {
    if peak <= a {
        return if x == peak { 1.0 } else { 0.0 };
    }
    if x < a || x > peak {
        0.0
    } else {
        (x - a) / (peak - a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tfn(c: f64, bm: f64, bp: f64) -> TriangularFuzzyNumber {
        TriangularFuzzyNumber::new(c, bm, bp).unwrap()
    }

    #[test]
    fn membership_examples() {
        let t = tfn(4.24, 0.5, 0.5);
        assert_eq!(t.membership(4.24), 1.0);
        assert!(t.membership(4.74).abs() < 1e-12);
        assert!((tfn(2.0, 1.0, 1.0).membership(1.5) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn zero_width_side_is_a_step() {
        let t = tfn(3.0, 0.0, 1.0);
        assert_eq!(t.membership(3.0), 1.0);
        assert_eq!(t.membership(2.999_999), 0.0);
        assert!((t.membership(3.5) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn defuzzify_examples() {
        assert_eq!(tfn(3.7, 0.0, 0.0).defuzzify(DefuzzMode::Modal), 3.7);
        let pess = DefuzzMode::AlphaCutPessimistic(Alpha::new(0.5).unwrap());
        assert!((tfn(4.0, 2.0, 2.0).defuzzify(pess) - 3.0).abs() < 1e-12);
        let opt = DefuzzMode::AlphaCutOptimistic(Alpha::new(0.5).unwrap());
        assert!((tfn(4.0, 2.0, 2.0).defuzzify(opt) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_numbers() {
        assert!(TriangularFuzzyNumber::new(1.0, -0.1, 0.0).is_err());
        assert!(TriangularFuzzyNumber::new(f64::NAN, 0.0, 0.0).is_err());
        assert!(tfn(0.2, 0.5, 0.0).check_time().is_err());
        assert!(Alpha::new(0.0).is_err());
        assert!(Alpha::new(1.5).is_err());
    }

    #[test]
    fn mode_parsing() {
        assert_eq!(
            DefuzzMode::from_parts("modal", None).unwrap(),
            DefuzzMode::Modal
        );
        assert!(DefuzzMode::from_parts("alpha-pess", None).is_err());
        assert!(DefuzzMode::from_parts("centroid", Some(0.5)).is_err());
        assert!(DefuzzMode::from_parts("mean", None).is_err());
        let m = DefuzzMode::from_parts("alpha_cut_optimistic", Some(0.25)).unwrap();
        assert_eq!(m.alpha(), Some(0.25));
    }

    #[test]
    fn serde_shapes() {
        let t: TriangularFuzzyNumber = serde_json::from_str("2.5").unwrap();
        assert_eq!(t, TriangularFuzzyNumber::crisp(2.5));
        let t: TriangularFuzzyNumber = serde_json::from_str("[3, 1, 2]").unwrap();
        assert_eq!(t, tfn(3.0, 1.0, 2.0));
        assert_eq!(serde_json::to_string(&t).unwrap(), "[3.0,1.0,2.0]");
        assert!(serde_json::from_str::<TriangularFuzzyNumber>("[3, -1, 2]").is_err());
        assert!(serde_json::from_str::<TriangularFuzzyNumber>("\"x\"").is_err());
    }

    #[test]
    fn ramp() {
        assert_eq!(membership_ramp(1.0, 3.0, 1.0), 0.0);
        assert_eq!(membership_ramp(1.0, 3.0, 3.0), 1.0);
        assert!((membership_ramp(1.0, 3.0, 2.0) - 0.5).abs() < 1e-12);
        assert_eq!(membership_ramp(1.0, 3.0, 3.5), 0.0);
    }
}
