//! Polynomial cartesian monads on families over a set of colours, presented by
//! their operations, and the free-operad construction.
//!
//! An operation has a list of source colours and a target colour. Applying
//! the monad to a family `X → S` gives the operations with one `X`-label per
//! source slot. Substitution is the multiplication on operation codes; it also
//! returns how the sources of the result are laid out relative to the
//! concatenated inner sources, because grafting need not preserve order.

mod apply;
mod basic;
mod checks;
mod free_operad;
mod opfunctor;
mod stages;

use thiserror::Error;

use crate::kernel::{Code, KernelError, Perm};

pub use apply::{apply_t, mu_element, mult_component, t_map, unit_component, TElem, TTElem};
pub use basic::{FreeMonoid, IdentityMonad, SignatureFile, SignatureMonad, SignatureOp, SubstitutionEntry};
pub use checks::{check_cartesian, check_monad_laws, check_suitable, CartesianConfig, LawConfig, SuitableConfig};
pub use free_operad::FreeOperad;
pub(crate) use opfunctor::inner_tuples;
pub use opfunctor::{ColorMap, MonadOpfunctor, OpMap};
pub use stages::{identity_fibers, nested_sequence_stage, Stage, StageElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("{0} is not a colour of this monad")]
    UnknownColor(String),
    #[error("{0} is not an operation of this monad")]
    UnknownOperation(String),
    #[error("{op} has {expected} slots but {found} operations were supplied")]
    Arity { op: String, expected: usize, found: usize },
    #[error("slot {slot} of {op} has colour {expected} but receives {found}")]
    Mismatch {
        op: String,
        slot: usize,
        expected: String,
        found: String,
    },
    #[error("substitution of {outer} with {inner} is not defined")]
    Undefined { outer: String, inner: String },
    #[error("invalid signature: {0}")]
    Signature(String),
    #[error("{0}")]
    Underlying(String),
}

/// A polynomial monad presented by its operations. Every enumeration is
/// bounded by size and returned in ascending `Code` order.
pub trait PolyMonad: Send + Sync {
    fn name(&self) -> String;

    /// Colours of size at most `max_size`.
    fn colors(&self, max_size: usize) -> Result<Vec<Code>, PolyError>;

    /// Size of a colour; an error when `c` is not a colour.
    fn color_size(&self, c: &Code) -> Result<usize, PolyError>;

    fn is_color(&self, c: &Code) -> bool {
        self.color_size(c).is_ok()
    }

    /// Operations of size at most `max_size`.
    fn operations(&self, max_size: usize) -> Result<Vec<Code>, PolyError>;

    fn source(&self, op: &Code) -> Result<Vec<Code>, PolyError>;

    fn target(&self, op: &Code) -> Result<Code, PolyError>;

    fn size(&self, op: &Code) -> Result<usize, PolyError>;

    /// The unit operation at colour `c`.
    fn unit(&self, c: &Code) -> Result<Code, PolyError>;

    /// `op` with `inner[i]` substituted into slot `i`. Returns the composite
    /// and `π` with `source(result) = π · (source(inner[0]) ++ …)`, that is
    /// `source(result)[j] = concat[π(j)]`.
    fn substitute(&self, op: &Code, inner: &[Code]) -> Result<(Code, Perm), PolyError>;

    fn arity(&self, op: &Code) -> Result<usize, PolyError> {
        Ok(self.source(op)?.len())
    }
}

/// Checks that `inner[i]` has target `source(op)[i]`.
pub(crate) fn check_slots(m: &dyn PolyMonad, op: &Code, inner: &[Code]) -> Result<Vec<Code>, PolyError> {
    let src = m.source(op)?;
    if src.len() != inner.len() {
        return Err(PolyError::Arity {
            op: op.to_string(),
            expected: src.len(),
            found: inner.len(),
        });
    }
    for (i, (s, g)) in src.iter().zip(inner).enumerate() {
        let t = m.target(g)?;
        if &t != s {
            return Err(PolyError::Mismatch {
                op: op.to_string(),
                slot: i,
                expected: s.to_string(),
                found: t.to_string(),
            });
        }
    }
    Ok(src)
}

/// Operations in output order: by size, then by text.
pub fn sorted_for_output(mut ops: Vec<Code>) -> Vec<Code> {
    ops.sort_by(Code::canonical_cmp);
    ops
}
