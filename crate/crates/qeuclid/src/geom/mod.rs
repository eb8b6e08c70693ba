//! Frames, inner derivations, connections, torsion, curvature, metric
//! compatibility and the reality structure, each exposed as a list of
//! exact checks.

mod checks;
mod connection;
mod frame;

pub use checks::*;
pub use connection::{
    compat_contraction, conformal_defect, frame_basis, frame_g23, frame_metric, frame_pi, frame_pi12,
    frame_tensor_involution, frame_to_xi, xi_to_frame, Connection,
};
pub use frame::{Alpha, Frame};

use crate::ncalg::Element;

/// Outcome of one identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    /// Rendering of `lhs - rhs` (or a description) when the identity fails.
    pub residual: Option<String>,
    /// Informational value reported alongside, such as a computed constant.
    pub note: Option<String>,
}

impl Check {
    pub fn pass(id: impl Into<String>) -> Check {
        Check { id: id.into(), residual: None, note: None }
    }

    pub fn fail(id: impl Into<String>, residual: impl Into<String>) -> Check {
        Check { id: id.into(), residual: Some(residual.into()), note: None }
    }

    pub fn truth(id: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) -> Check {
        if ok {
            Check::pass(id)
        } else {
            Check::fail(id, detail())
        }
    }

    /// Passes iff `e` is zero.
    pub fn zero(id: impl Into<String>, e: &Element) -> Check {
        Check::truth(id, e.is_zero(), || e.render())
    }

    /// Passes iff `a == b`.
    pub fn equal(id: impl Into<String>, a: &Element, b: &Element) -> Check {
        Check::zero(id, &(a - b))
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Check {
        self.note = Some(note.into());
        self
    }

    pub fn ok(&self) -> bool {
        self.residual.is_none()
    }
}

#[cfg(test)]
mod tests;
