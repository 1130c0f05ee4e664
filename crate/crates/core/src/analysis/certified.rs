use crate::analysis::{check_confluence, check_forward_closed, distinct_lhs_violations, right_reduce};
use crate::error::PreconditionError;
use crate::system::{RewriteSystem, TerminationBasis};

/// A right-reduced system with termination evidence, checked confluence and
/// checked forward closure: the hypotheses of the pushdown construction.
#[derive(Debug, Clone)]
pub struct CertifiedSystem {
    original: RewriteSystem,
    reduced: RewriteSystem,
    termination: TerminationBasis,
}

impl CertifiedSystem {
    /// Right-reduces `system` and verifies the result.
    pub fn certify(system: &RewriteSystem) -> Result<Self, PreconditionError> {
        let termination = system.require_termination()?;
        let reduced = right_reduce(system)?;
        if !check_confluence(&reduced)?.confluent {
            return Err(PreconditionError::NotConfluent);
        }
        if let Some(&(i, j)) = distinct_lhs_violations(&reduced).first() {
            return Err(PreconditionError::SharedLhs(i, j));
        }
        if !check_forward_closed(&reduced).holds {
            return Err(PreconditionError::NotForwardClosed);
        }
        Ok(CertifiedSystem {
            original: system.clone(),
            reduced,
            termination,
        })
    }

    /// The right-reduced system all decisions run on.
    pub fn system(&self) -> &RewriteSystem {
        &self.reduced
    }

    pub fn original(&self) -> &RewriteSystem {
        &self.original
    }

    pub fn termination(&self) -> TerminationBasis {
        self.termination
    }
}
