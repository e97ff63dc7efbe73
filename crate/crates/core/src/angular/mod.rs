//! Angular-momentum algebra for the probe-atom interaction: Wigner symbols,
//! hyperfine line data, the rank-0/1/2 polarizability coefficients of each
//! F -> F' transition, and the loss/decoherence branching split.

mod wigner;

use serde::Deserialize;
use thiserror::Error;

pub use wigner::{wigner_3j, wigner_6j};

/// Speed of light in m/s.
const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Scattered photons that remove the atom from the pseudo-spin system versus
/// those that return it to the `m = +-1` pair, as stated for this scheme.
pub const DEFAULT_BRANCHING_RATIO: f64 = 5.0 / 3.0;

#[derive(Debug, Error)]
pub enum AngularError {
    #[error("{0} is not a half-integer")]
    NotHalfInteger(f64),
    #[error("invalid spin quantum number {0}")]
    InvalidSpin(f64),
    #[error("polarizability rank must be 0, 1 or 2 (got {0})")]
    InvalidRank(u8),
    #[error("F={f} -> F'={f_prime} is not a transition of this line")]
    InvalidTransition { f: u32, f_prime: u32 },
    #[error("branching ratio must be positive (got {0})")]
    InvalidRatio(f64),
    #[error("line data: {0}")]
    LineData(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// One excited hyperfine level of the line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExcitedLevel {
    pub f_prime: u32,
    /// Offset from the line's reference frequency, in angular frequency
    /// (rad/s). The shipped Rb-87 D2 data puts F'=0 at the reference, so
    /// probe detunings are measured from the F=1 -> F'=0 transition.
    pub offset: f64,
}

/// Hyperfine structure of the probed optical line.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperfineLine {
    pub ground_f: u32,
    pub nuclear_i: f64,
    pub j_ground: f64,
    pub j_excited: f64,
    pub excited: Vec<ExcitedLevel>,
    /// Natural linewidth, angular frequency (rad/s).
    pub gamma: f64,
    /// Transition wavelength in meters.
    pub lambda0: f64,
}

#[derive(Deserialize)]
struct ExcitedLevelJson {
    #[serde(rename = "Fprime")]
    f_prime: u32,
    offset_MHz: f64,
}

#[derive(Deserialize)]
#[allow(non_snake_case)]
struct HyperfineLineJson {
    ground_F: u32,
    nuclear_I: f64,
    J_ground: f64,
    J_excited: f64,
    excited: Vec<ExcitedLevelJson>,
    gamma_MHz: f64,
    lambda0_nm: f64,
}

const MHZ: f64 = 2.0 * std::f64::consts::PI * 1e6;

impl HyperfineLine {
    /// The built-in Rb-87 D2 record (5S1/2 F=1 -> 5P3/2 F' in {0,1,2}).
    pub fn rb87_d2() -> Self {
        Self::from_json_str(include_str!("../../data/rb87_d2.json"))
            .expect("shipped Rb-87 D2 line data is valid")
    }

    /// Parses a line record from the JSON document schema
    /// `{ground_F, nuclear_I, J_ground, J_excited, excited: [{Fprime, offset_MHz}], gamma_MHz, lambda0_nm}`.
    pub fn from_json_str(s: &str) -> Result<Self, AngularError> {
        let raw: HyperfineLineJson =
            serde_json::from_str(s).map_err(|e| AngularError::LineData(e.to_string()))?;
        let line = HyperfineLine {
            ground_f: raw.ground_F,
            nuclear_i: raw.nuclear_I,
            j_ground: raw.J_ground,
            j_excited: raw.J_excited,
            excited: raw
                .excited
                .into_iter()
                .map(|l| ExcitedLevel {
                    f_prime: l.f_prime,
                    offset: l.offset_MHz * MHZ,
                })
                .collect(),
            gamma: raw.gamma_MHz * MHZ,
            lambda0: raw.lambda0_nm * 1e-9,
        };
        line.validate()?;
        Ok(line)
    }

    pub fn from_json_file(path: &std::path::Path) -> Result<Self, AngularError> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    fn validate(&self) -> Result<(), AngularError> {
        if self.gamma <= 0.0 || self.lambda0 <= 0.0 {
            return Err(AngularError::LineData(
                "gamma and lambda0 must be positive".into(),
            ));
        }
        if self.excited.is_empty() {
            return Err(AngularError::LineData("no excited levels".into()));
        }
        let f = self.ground_f as f64;
        for level in &self.excited {
            let fp = level.f_prime as f64;
            let dipole_ok = (f - 1.0).abs() <= fp && fp <= f + 1.0;
            let hyperfine_ok =
                (self.j_excited - self.nuclear_i).abs() <= fp && fp <= self.j_excited + self.nuclear_i;
            if !dipole_ok || !hyperfine_ok {
                return Err(AngularError::LineData(format!(
                    "excited F'={} violates the triangle rules for F={} (J'={}, I={})",
                    level.f_prime, self.ground_f, self.j_excited, self.nuclear_i
                )));
            }
        }
        Ok(())
    }

    /// Transition angular frequency, 2*pi*c / lambda0.
    pub fn omega0(&self) -> f64 {
        2.0 * std::f64::consts::PI * SPEED_OF_LIGHT / self.lambda0
    }

    /// Excited-state hyperfine splitting: largest pairwise offset difference.
    pub fn excited_hfs_span(&self) -> f64 {
        let mut span: f64 = 0.0;
        for a in &self.excited {
            for b in &self.excited {
                span = span.max((a.offset - b.offset).abs());
            }
        }
        span
    }

    pub fn offset_of(&self, f_prime: u32) -> Option<f64> {
        self.excited
            .iter()
            .find(|l| l.f_prime == f_prime)
            .map(|l| l.offset)
    }

    /// The lowest excited level; for the Rb-87 D2 record this is F'=0, the
    /// level that survives the large-detuning reduction.
    pub fn lowest_f_prime(&self) -> u32 {
        self.excited.iter().map(|l| l.f_prime).min().expect("validated non-empty")
    }
}

/// Unitless rank-0/1/2 polarizability coefficients of one F -> F' transition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankCoefficients {
    pub f_prime: u32,
    pub alpha0: f64,
    pub alpha1: f64,
    pub alpha2: f64,
}

/// Exact-rational evaluation, available whenever the recoupling 6j is itself
/// rational (true for the Rb-87 D2 integer-F cases). Keeping the arithmetic
/// rational until the end makes the sum rules cancel exactly in `f64`.
pub(crate) fn rank_coefficient_rational(
    k: u8,
    f: u32,
    f_prime: u32,
    line: &HyperfineLine,
) -> Option<num_rational::BigRational> {
    use num_bigint::BigInt;
    use num_rational::BigRational;

    let tf = 2 * f as i64;
    let tfp = 2 * f_prime as i64;
    let ti = wigner::twice(line.nuclear_i).ok()?;
    let tj = wigner::twice(line.j_ground).ok()?;
    let tjp = wigner::twice(line.j_excited).ok()?;

    let (hf_sum, hf_weight) = wigner::wigner_6j_parts([tjp, tfp, ti, tf, tj, 2]);
    let (rec_sum, rec_weight) = wigner::wigner_6j_parts([2, 2, 2 * k as i64, tf, tf, tfp]);
    let hf_squared = &hf_sum * &hf_sum * hf_weight;
    let recoupling = rec_sum * wigner::rational_sqrt(&rec_weight)?;

    let sign = if (k as u32 + f + f_prime + 1) % 2 == 0 { 1 } else { -1 };
    let prefactor = BigRational::from_integer(BigInt::from(
        sign * 4 * (tf + 1) * (tj + 1) * (tfp + 1),
    ));
    Some(prefactor * hf_squared * recoupling)
}

/// Rank-K unitless polarizability coefficient of the F -> F' transition.
///
/// Evaluated by irreducible-tensor recoupling,
///
/// ```text
/// alpha^(K)_{F,F'} = 4(2F+1)(2J+1) (-1)^{K+F+F'+1} (2F'+1)
///                    * {J' F' I; F J 1}^2 * {1 1 K; F F F'}
/// ```
///
/// normalized so that for the Rb-87 D2 F=1 scheme the vector and tensor
/// coefficients coincide with the microscopic Clebsch-Gordan path sums on the
/// `m = +-1` pseudo-spin pair (alpha1 is the `Sz Jz` coupling, alpha2 the
/// Raman coupling), and the scalar coefficients are positive.
pub fn rank_coefficient(
    k: u8,
    f: u32,
    f_prime: u32,
    line: &HyperfineLine,
) -> Result<f64, AngularError> {
    if k > 2 {
        return Err(AngularError::InvalidRank(k));
    }
    if f != line.ground_f || line.offset_of(f_prime).is_none() {
        return Err(AngularError::InvalidTransition { f, f_prime });
    }
    if let Some(exact) = rank_coefficient_rational(k, f, f_prime, line) {
        use num_traits::ToPrimitive;
        return Ok(exact.to_f64().unwrap_or(f64::NAN));
    }
    let ff = f as f64;
    let fp = f_prime as f64;
    let hyperfine =
        wigner_6j(line.j_excited, fp, line.nuclear_i, ff, line.j_ground, 1.0)?;
    let recoupling = wigner_6j(1.0, 1.0, k as f64, ff, ff, fp)?;
    let norm = 4.0 * (2.0 * ff + 1.0) * (2.0 * line.j_ground + 1.0);
    let sign = if (k as u32 + f + f_prime + 1) % 2 == 0 { 1.0 } else { -1.0 };
    Ok(norm * sign * (2.0 * fp + 1.0) * hyperfine * hyperfine * recoupling)
}

/// Sum over all excited levels of the rank-K coefficient, exact when every
/// term is exact. Drives the equal-detuning diagnostic of the Hamiltonian
/// decomposition.
pub(crate) fn rank_coefficient_sum(k: u8, line: &HyperfineLine) -> Result<f64, AngularError> {
    use num_rational::BigRational;
    use num_traits::{ToPrimitive, Zero};

    let mut exact_sum = BigRational::zero();
    let mut all_exact = true;
    for level in &line.excited {
        match rank_coefficient_rational(k, line.ground_f, level.f_prime, line) {
            Some(x) => exact_sum += x,
            None => {
                all_exact = false;
                break;
            }
        }
    }
    if all_exact {
        return Ok(exact_sum.to_f64().unwrap_or(f64::NAN));
    }
    let mut sum = 0.0;
    for level in &line.excited {
        sum += rank_coefficient(k, line.ground_f, level.f_prime, line)?;
    }
    Ok(sum)
}

/// All three rank coefficients for every excited level of the line.
pub fn rank_coefficients(line: &HyperfineLine) -> Result<Vec<RankCoefficients>, AngularError> {
    line.excited
        .iter()
        .map(|level| {
            Ok(RankCoefficients {
                f_prime: level.f_prime,
                alpha0: rank_coefficient(0, line.ground_f, level.f_prime, line)?,
                alpha1: rank_coefficient(1, line.ground_f, level.f_prime, line)?,
                alpha2: rank_coefficient(2, line.ground_f, level.f_prime, line)?,
            })
        })
        .collect()
}

/// Splits a scattering event into the probability that the scattered photon
/// produces loss (decay out of the `m = +-1` pair: into F=2 or |F=1, m=0>)
/// versus decoherence (decay back into the pair).
///
/// Defaults to the ratio gamma/beta = 5/3 stated for this scheme, i.e.
/// fractions (3/8, 5/8); `r_override` replaces the ratio. A from-scratch
/// amplitude-sum derivation exists as a cross-check oracle in the test suite
/// (it yields 17/7 in the far-detuned limit; see the tests for assumptions).
pub fn branching_split(
    _line: &HyperfineLine,
    r_override: Option<f64>,
) -> Result<(f64, f64), AngularError> {
    let r = r_override.unwrap_or(DEFAULT_BRANCHING_RATIO);
    if !(r > 0.0) {
        return Err(AngularError::InvalidRatio(r));
    }
    let beta = 1.0 / (1.0 + r);
    Ok((beta, 1.0 - beta))
}

#[cfg(test)]
mod tests {
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    use super::*;

    #[test]
    fn rb87_line_data() {
        let line = HyperfineLine::rb87_d2();
        assert_eq!(line.ground_f, 1);
        assert_eq!(
            line.excited.iter().map(|l| l.f_prime).collect::<Vec<_>>(),
            vec![0, 1, 2]
        );
        assert_relative_eq!(line.excited_hfs_span(), 229.165 * MHZ, max_relative = 1e-12);
        assert_eq!(line.lowest_f_prime(), 0);
        // 780.24 nm puts the D2 line around 2.41e15 rad/s
        assert_relative_eq!(line.omega0(), 2.414e15, max_relative = 1e-3);
    }

    #[test]
    fn line_data_rejects_bad_levels() {
        let bad = r#"{
            "ground_F": 1, "nuclear_I": 1.5, "J_ground": 0.5, "J_excited": 1.5,
            "excited": [{"Fprime": 3, "offset_MHz": 0.0}],
            "gamma_MHz": 6.0, "lambda0_nm": 780.0
        }"#;
        assert!(HyperfineLine::from_json_str(bad).is_err());
        let bad_gamma = r#"{
            "ground_F": 1, "nuclear_I": 1.5, "J_ground": 0.5, "J_excited": 1.5,
            "excited": [{"Fprime": 0, "offset_MHz": 0.0}],
            "gamma_MHz": -6.0, "lambda0_nm": 780.0
        }"#;
        assert!(HyperfineLine::from_json_str(bad_gamma).is_err());
    }

    #[test]
    fn rank_coefficients_exact_values() {
        // Frozen from the microscopic Clebsch-Gordan path oracle: exact
        // rationals for the Rb-87 D2 F=1 transitions.
        let line = HyperfineLine::rb87_d2();
        let expect = [
            (0u32, [2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0]),
            (1, [5.0 / 3.0, 5.0 / 6.0, -5.0 / 6.0]),
            (2, [5.0 / 3.0, -5.0 / 6.0, 1.0 / 6.0]),
        ];
        for (fp, vals) in expect {
            for (k, expected) in vals.into_iter().enumerate() {
                let got = rank_coefficient(k as u8, 1, fp, &line).unwrap();
                assert_relative_eq!(got, expected, max_relative = 1e-13);
            }
        }
    }

    #[test]
    fn rank_sum_rules() {
        let line = HyperfineLine::rb87_d2();
        let coeffs = rank_coefficients(&line).unwrap();
        let sum2: f64 = coeffs.iter().map(|c| c.alpha2).sum();
        assert_abs_diff_eq!(sum2, 0.0, epsilon = 1e-12);

        let a1_1 = rank_coefficient(1, 1, 1, &line).unwrap();
        let a1_2 = rank_coefficient(1, 1, 2, &line).unwrap();
        assert_abs_diff_eq!(a1_1 + a1_2, 0.0, epsilon = 1e-12);
        assert!(rank_coefficient(1, 1, 0, &line).unwrap().abs() > 0.1);

        for c in &coeffs {
            assert!(c.alpha0 > 0.0, "scalar coefficient must be positive");
        }
    }

    #[test]
    fn rank_coefficient_rejects_invalid_input() {
        let line = HyperfineLine::rb87_d2();
        assert!(rank_coefficient(3, 1, 0, &line).is_err());
        assert!(rank_coefficient(1, 2, 0, &line).is_err());
        assert!(rank_coefficient(1, 1, 3, &line).is_err());
    }

    #[test]
    fn branching_defaults_and_override() {
        let line = HyperfineLine::rb87_d2();
        let (beta, gamma) = branching_split(&line, None).unwrap();
        assert_relative_eq!(beta, 0.375, max_relative = 1e-15);
        assert_relative_eq!(gamma, 0.625, max_relative = 1e-15);
        assert_relative_eq!(beta + gamma, 1.0, max_relative = 1e-15);

        let (beta, gamma) = branching_split(&line, Some(1.0)).unwrap();
        assert_relative_eq!(beta, 0.5, max_relative = 1e-15);
        assert_relative_eq!(gamma, 0.5, max_relative = 1e-15);

        assert!(branching_split(&line, Some(0.0)).is_err());
        assert!(branching_split(&line, Some(-2.0)).is_err());
    }
}
