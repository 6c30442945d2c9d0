//! Reversibility and unitarity checks.

use serde::Serialize;

use crate::compose::compose;
use crate::error::{Error, Result};
use crate::matrix::StrategyMatrix;
use crate::scalar;
use crate::strategy::{Morphism, Strategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReversibilityCertificate {
    pub matrix_square: bool,
    /// `M†M = MM† = I`.
    pub adjoint_is_inverse: bool,
    /// Every nonzero entry has modulus one.
    pub unit_modulus: bool,
}

impl ReversibilityCertificate {
    pub fn holds(&self) -> bool {
        self.matrix_square && self.adjoint_is_inverse && self.unit_modulus
    }

    pub fn of_matrix(m: &StrategyMatrix) -> Self {
        let unit_modulus = m
            .to_rows()
            .iter()
            .flatten()
            .filter(|z| !scalar::is_zero(**z))
            .all(|z| (z.norm() - 1.0).abs() <= crate::config::tolerance());
        ReversibilityCertificate { matrix_square: m.is_square(), adjoint_is_inverse: m.is_unitary(), unit_modulus }
    }
}

pub fn is_reversible(s: &Strategy) -> Result<ReversibilityCertificate> {
    Ok(ReversibilityCertificate::of_matrix(&s.matrix()?))
}

/// Reversibility of a morphism with a single summand.
pub fn is_reversible_morphism(m: &Morphism) -> Result<ReversibilityCertificate> {
    let s = m
        .as_deterministic()
        .ok_or_else(|| Error::InvalidArgument("reversibility needs a single deterministic summand".into()))?;
    is_reversible(&s)
}

/// Every summand is reversible and the matrix of the sum is unitary.
pub fn is_unitary(m: &Morphism) -> Result<bool> {
    if m.summands().is_empty() {
        return Ok(false);
    }
    for (_, s) in m.summands() {
        if !is_reversible(s)?.holds() {
            return Ok(false);
        }
    }
    Ok(m.matrix()?.is_unitary())
}

/// `Δ ; Γ ≈ id` and `Γ ; Δ ≈ id`.
pub fn is_iso_pair(d: &Morphism, e: &Morphism) -> Result<bool> {
    let is_id = |m: &Morphism| -> Result<bool> {
        let mx = m.matrix()?;
        Ok(mx.is_square() && mx.approx_eq(&StrategyMatrix::identity(mx.row_labels().to_vec())))
    };
    Ok(is_id(&compose(d, e)?)? && is_id(&compose(e, d)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{bool_game, unit_game};
    use crate::structural::{dist, dist_inv, identity, injl, twist_tensor};

    #[test]
    fn reversible_witnesses() {
        let b = bool_game();
        assert!(is_reversible_morphism(&identity(&b).unwrap()).unwrap().holds());
        assert!(is_reversible_morphism(&twist_tensor(&b, &b).unwrap()).unwrap().holds());
        assert!(!is_reversible_morphism(&injl(&b, &b).unwrap()).unwrap().holds());
        assert!(!is_unitary(&injl(&b, &b).unwrap()).unwrap());
    }

    #[test]
    fn iso_pairs() {
        let (b, u) = (bool_game(), unit_game());
        let t = twist_tensor(&b, &b).unwrap();
        assert!(is_iso_pair(&t, &t).unwrap());
        assert!(is_iso_pair(&dist(&b, &u, &u).unwrap(), &dist_inv(&b, &u, &u).unwrap()).unwrap());
    }
}
