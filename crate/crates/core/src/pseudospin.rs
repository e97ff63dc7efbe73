//! Alignment-tensor operators on the F=1 ground manifold and the collective
//! pseudo-spin built from them.
//!
//! Basis ordering is fixed as (|m=-1>, |m=0>, |m=+1>) everywhere, including
//! serialized matrices.

use nalgebra::{Complex, Matrix3};
use thiserror::Error;

pub type Complex64 = Complex<f64>;
pub type Operator = Matrix3<Complex64>;

#[derive(Debug, Error)]
pub enum PseudospinError {
    #[error("atom number must be at least 1 (got {0})")]
    NoAtoms(u64),
}

/// Single-atom alignment-tensor operators and their pseudo-spin halves.
///
/// `tx` and `ty` act only on the {|m=-1>, |m=+1>} pair; |m=0> is annihilated
/// by all pseudo-spin components.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSet {
    pub tx: Operator,
    pub ty: Operator,
    pub fz: Operator,
    pub jx: Operator,
    pub jy: Operator,
    pub jz: Operator,
}

/// First and second moments of the collective pseudo-spin of `n_atoms`
/// independent atoms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollectiveMoments {
    pub n_atoms: u64,
    pub mean_jx: f64,
    pub mean_jy: f64,
    pub mean_jz: f64,
    pub var_jy: f64,
    pub var_jz: f64,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex::new(re, im)
}

/// Builds Tx = |-><+| + |+><-|, Ty = i(|-><+| - |+><-|),
/// Fz = |+><+| - |-><-|, and the pseudo-spin components (Tx/2, Ty/2, Fz/2).
pub fn build_alignment_operators() -> OperatorSet {
    let zero = c(0.0, 0.0);
    let tx = Matrix3::new(
        zero, zero, c(1.0, 0.0),
        zero, zero, zero,
        c(1.0, 0.0), zero, zero,
    );
    let ty = Matrix3::new(
        zero, zero, c(0.0, 1.0),
        zero, zero, zero,
        c(0.0, -1.0), zero, zero,
    );
    let fz = Matrix3::new(
        c(-1.0, 0.0), zero, zero,
        zero, zero, zero,
        zero, zero, c(1.0, 0.0),
    );
    let half = c(0.5, 0.0);
    OperatorSet {
        jx: tx * half,
        jy: ty * half,
        jz: fz * half,
        tx,
        ty,
        fz,
    }
}

/// AB - BA. Operands are statically 3x3, so a dimension mismatch is
/// unrepresentable.
pub fn commutator(a: &Operator, b: &Operator) -> Operator {
    a * b - b * a
}

/// Moments of N atoms each prepared in the Jx eigenstate (|+> + |->)/sqrt(2):
/// the x-polarized coherent state with mean N/2 and transverse variances N/4.
pub fn coherent_state_moments(n_atoms: u64) -> Result<CollectiveMoments, PseudospinError> {
    if n_atoms < 1 {
        return Err(PseudospinError::NoAtoms(n_atoms));
    }
    let n = n_atoms as f64;
    Ok(CollectiveMoments {
        n_atoms,
        mean_jx: n / 2.0,
        mean_jy: 0.0,
        mean_jz: 0.0,
        var_jy: n / 4.0,
        var_jz: n / 4.0,
    })
}

fn matrix_to_json(m: &Operator) -> serde_json::Value {
    let rows: Vec<Vec<[f64; 2]>> = (0..3)
        .map(|i| (0..3).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect();
    serde_json::json!(rows)
}

impl OperatorSet {
    /// Serializes every operator as a 3x3 array of [re, im] pairs in the
    /// (|m=-1>, |m=0>, |m=+1>) basis, for golden-file tests.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "Tx": matrix_to_json(&self.tx),
            "Ty": matrix_to_json(&self.ty),
            "Fz": matrix_to_json(&self.fz),
            "Jx": matrix_to_json(&self.jx),
            "Jy": matrix_to_json(&self.jy),
            "Jz": matrix_to_json(&self.jz),
        })
    }
}
