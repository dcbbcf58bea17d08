use thiserror::Error;

/// Errors raised by the computational kernel.
///
/// Every variant names the operation that rejected its input so front ends can
/// report a structured `(module, operation, reason)` triple.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported Cartan type `{0}`")]
    UnsupportedType(String),

    #[error("{op}: invalid argument: {msg}")]
    InvalidArgument { op: &'static str, msg: String },

    #[error("{op}: weight {weight} violates {inequality}")]
    NotDominant {
        op: &'static str,
        weight: String,
        inequality: String,
    },

    #[error("{op}: rank mismatch ({left} vs {right})")]
    RankMismatch {
        op: &'static str,
        left: usize,
        right: usize,
    },

    #[error("{op}: division by zero")]
    DivisionByZero { op: &'static str },

    #[error("{op}: hypothesis not satisfied: {msg}")]
    Hypothesis { op: &'static str, msg: String },

    #[error("{op}: pole: {msg}")]
    Pole { op: &'static str, msg: String },

    #[error("{op}: no stabilization within budget: {msg}")]
    NotStabilized { op: &'static str, msg: String },

    #[error("{op}: numeric limit did not converge: {msg}")]
    NotConverged { op: &'static str, msg: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{op}: internal consistency failure: {msg}")]
    Internal { op: &'static str, msg: String },
}

impl Error {
    /// The operation that produced the error.
    pub fn operation(&self) -> &'static str {
        match self {
            Error::UnsupportedType(_) => "build_root_datum",
            Error::Parse(_) => "parse",
            Error::InvalidArgument { op, .. }
            | Error::NotDominant { op, .. }
            | Error::RankMismatch { op, .. }
            | Error::DivisionByZero { op }
            | Error::Hypothesis { op, .. }
            | Error::Pole { op, .. }
            | Error::NotStabilized { op, .. }
            | Error::NotConverged { op, .. }
            | Error::Internal { op, .. } => op,
        }
    }

    /// The kernel module owning [`Error::operation`].
    pub fn module(&self) -> &'static str {
        match self.operation() {
            "build_root_datum"
            | "weyl_enumerate"
            | "affine_positive_coroots"
            | "stabilizer_poincare"
            | "weyl_element"
            | "fit_rational" => "rootdata",
            "qrat_arith" | "series_mul" | "series_add" | "geom_expand" | "weyl_act_series" | "divide_by_binomial" => {
                "fseries"
            }
            "macdonald_finite"
            | "weyl_character"
            | "inverse_satake_coeffs"
            | "delta_affine"
            | "macdonald_affine"
            | "gk_series"
            | "weyl_sum" => "satake",
            "bernstein_cross" | "hecke_mul" | "spherical_sandwich" | "degree_and_cone" | "hecke_add"
            | "hecke_element" => "hecke",
            "zeta_eval"
            | "curve"
            | "tamagawa_finite"
            | "tamagawa_affine"
            | "borel_constant_term"
            | "eisenstein_residue"
            | "affine_correction_and_ct" => "zeta-eisenstein",
            _ => "core",
        }
    }

    /// Whether the failure is a rejected input (as opposed to a computation
    /// that ran and failed to converge or stabilize).
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::NotStabilized { .. } | Error::NotConverged { .. } | Error::Internal { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
