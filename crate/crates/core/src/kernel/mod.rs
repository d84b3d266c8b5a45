//! Finite families over a base set, their pullbacks and coproducts, canonical
//! codes, and the permutation algebra behind the equivariance axioms.

mod code;
mod family;
mod perm;

use thiserror::Error;

pub use code::{is_atom_text, Code};
pub use family::{coproduct, is_pullback_square, pullback, ElementMap, Family, Square, SquareVerdict, Sum};
pub use perm::Perm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("families have different bases")]
    BaseMismatch,
    #[error("fibre {0} is not in the base")]
    FiberOutsideBase(String),
    #[error("element {0} occurs twice")]
    DuplicateElement(String),
    #[error("permutation degrees differ: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("{0:?} is not a permutation")]
    NotAPermutation(Vec<usize>),
    #[error("code syntax error at byte {position}: {message}")]
    CodeSyntax { position: usize, message: String },
}

/// A finite list of elements whose fibres lie in a base; an object of the free
/// symmetric monoidal category on a discrete set. Permutations act on it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ListOverS<E> {
    pub entries: Vec<E>,
}

impl<E: Clone> ListOverS<E> {
    pub fn new(entries: Vec<E>) -> Self {
        ListOverS { entries }
    }

    pub fn act(&self, sigma: &Perm) -> Result<Self, KernelError> {
        if sigma.degree() != self.entries.len() {
            return Err(KernelError::DegreeMismatch {
                left: sigma.degree(),
                right: self.entries.len(),
            });
        }
        Ok(ListOverS {
            entries: sigma.permute(&self.entries),
        })
    }
}
