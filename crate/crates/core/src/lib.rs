//! Collective-spin squeezing of a cold Rb-87 ensemble by quantum non-demolition
//! (QND) measurement, computed from first principles.
//!
//! The crate covers the full chain:
//!
//! * [`angular`] — exact Wigner 3j/6j algebra, the rank-0/1/2 polarizability
//!   coefficients of the D2 hyperfine transitions, and the loss/decoherence
//!   branching split of the photon scattering rate.
//! * [`pseudospin`] — the alignment-tensor operators on the F=1 ground
//!   manifold and the effective spin-1/2 (pseudo-spin) they generate.
//! * [`hamiltonian`] — the rank decomposition of the probe-atom interaction
//!   and its large-detuning reduction to the QND form `Sz*Jz`.
//! * [`gaussian`] — Gaussian propagation of the collective fluctuations
//!   through the QND interaction and the polarimetric measurement update.
//! * [`noise`] — the analytic loss/decoherence variance laws and the
//!   squeezing curves for the ideal spin-1/2 and Rb-87 systems.
//! * [`oracle`] — seeded Monte Carlo validation of the analytic laws.
//! * [`cli`] — scenario configs and the runners behind the `qnd-squeeze`
//!   command line tool (curve sweeps, eta optimization, detuning scans,
//!   Monte Carlo validation reports).

pub mod angular;
pub mod cli;
pub mod gaussian;
pub mod hamiltonian;
pub mod noise;
pub mod oracle;
pub mod pseudospin;

pub use angular::{branching_split, rank_coefficient, wigner_3j, wigner_6j, HyperfineLine};
pub use gaussian::{condition_on_sy, kappa2_from_physics, propagate, wineland_xi2, GaussianState, ProbePulse};
pub use hamiltonian::{decompose, effective_coupling, raman_suppression_ratio, DecomposedHamiltonian};
pub use noise::{split_eta, xi2_ideal_spin_half, xi2_rb87, NoiseBudget, SqueezingOutcome, SystemTag};
pub use pseudospin::{build_alignment_operators, coherent_state_moments, commutator, OperatorSet};
