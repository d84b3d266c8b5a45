//! Skeletal tidy symmetric multicategories and the slice construction.
//!
//! Multicategories are exposed behaviourally through [`SymMulticat`]: objects
//! and arrows are [`Cell`] values, and every enumeration is bounded by size
//! because slices have countably many arrows. Object categories are discrete
//! (skeletal); isomorphism classes of arrows are represented by their planar
//! representative, and every arrow factors uniquely as `planar · σ`.

mod checks;
mod morphism;
mod presentation;
mod slice;
mod tree;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::kernel::{Code, KernelError, Perm};

pub use checks::{
    check_axioms, check_comb, check_slice_targets, eval_configuration, random_arrow, random_twisted_tree,
    AxiomCheckConfig,
};
pub use morphism::{is_equivalence, SymMulticatMorphism};
pub use presentation::{
    the_multicat_i, ActionSpec, ArrowSpec, CompositionSpec, FixedPoint, NamedAction, NamedComposition, Presentation,
    PresentationFile, TableEntry,
};
pub use slice::{iterated_slice, skeletalize, slice, slice_full, Config, Skeleton, Slice};
pub use tree::{comb, Combed, PlanarTree, TwistedTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymcatError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("{0} is not an object of this multicategory")]
    UnknownObject(String),
    #[error("{0} is not an arrow of this multicategory")]
    UnknownArrow(String),
    #[error("composite of {outer} with {inner} is not defined")]
    CompositionUndefined { outer: String, inner: String },
    #[error("arity mismatch: {arrow} has {expected} inputs, {found} supplied")]
    Arity {
        arrow: String,
        expected: usize,
        found: usize,
    },
    #[error("input {slot} of {arrow} is {expected} but the supplied arrow has target {found}")]
    Mismatch {
        arrow: String,
        slot: usize,
        expected: String,
        found: String,
    },
    #[error("twist of degree {found} where {expected} leaves were expected")]
    TwistDegree { expected: usize, found: usize },
    #[error("ill-formed configuration: {0}")]
    IllFormed(String),
    #[error("not tidy: {arrow} is fixed by the non-identity permutation {perm}")]
    NotTidy { arrow: String, perm: String },
    #[error("invalid presentation: {0}")]
    Presentation(String),
}

/// An object or arrow of a multicategory built here.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cell {
    /// A named object or generating arrow.
    Atom(Arc<str>),
    /// A planar arrow of a free multicategory: a tree of generators.
    Tree(Arc<PlanarTree>),
    /// A non-planar arrow `p · σ` of a presentation, `σ ≠ ι`.
    Twisted(Arc<Cell>, Perm),
    /// An arrow of a slice.
    Config(Arc<Config>),
}

impl Cell {
    pub fn atom(s: &str) -> Cell {
        Cell::Atom(Arc::from(s))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Atom(a) => f.write_str(a),
            Cell::Tree(t) => write!(f, "{}", DisplayTree(t)),
            Cell::Twisted(p, s) => write!(f, "{}·{}", p, s),
            Cell::Config(c) => write!(f, "{}", c),
        }
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

pub(crate) struct DisplayTree<'a>(pub &'a PlanarTree);

impl fmt::Display for DisplayTree<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            PlanarTree::Leaf(x) => write!(f, "u({})", x),
            PlanarTree::Node(l, ch) => {
                write!(f, "n({};", l)?;
                for (i, c) in ch.iter().enumerate() {
                    f.write_str(if i == 0 { " " } else { "," })?;
                    write!(f, "{}", DisplayTree(c))?;
                }
                f.write_str(")")
            }
        }
    }
}

/// A symmetric multicategory with a discrete object set, presented by its
/// operations. Sizes grade objects and arrows so that every stratum is finite.
pub trait SymMulticat: Send + Sync {
    fn name(&self) -> String;

    /// Objects of size at most `max_size`, sorted.
    fn objects(&self, max_size: usize) -> Result<Vec<Cell>, SymcatError>;

    fn object_size(&self, x: &Cell) -> Result<usize, SymcatError>;

    /// Planar arrows of size at most `max_size`, sorted.
    fn planar_arrows(&self, max_size: usize) -> Result<Vec<Cell>, SymcatError>;

    fn source(&self, f: &Cell) -> Result<Vec<Cell>, SymcatError>;

    fn target(&self, f: &Cell) -> Result<Cell, SymcatError>;

    fn size(&self, f: &Cell) -> Result<usize, SymcatError>;

    fn identity(&self, x: &Cell) -> Result<Cell, SymcatError>;

    /// `f ∘ (g_1, …, g_k)`; the target of `g_i` must be the `i`-th source of `f`.
    fn compose(&self, f: &Cell, gs: &[Cell]) -> Result<Cell, SymcatError>;

    /// Right action `f · σ`, with `s(f·σ)_j = s(f)_{σ(j)}`.
    fn act(&self, f: &Cell, sigma: &Perm) -> Result<Cell, SymcatError>;

    /// The unique factorisation `f = p · σ` with `p` planar.
    fn planar_rep(&self, f: &Cell) -> Result<(Cell, Perm), SymcatError>;

    /// Canonical code of an object.
    fn encode_object(&self, x: &Cell) -> Result<Code, SymcatError>;

    /// Canonical code of a planar arrow.
    fn encode_arrow(&self, f: &Cell) -> Result<Code, SymcatError>;

    fn decode_object(&self, c: &Code) -> Result<Cell, SymcatError>;

    fn decode_arrow(&self, c: &Code) -> Result<Cell, SymcatError>;

    /// A planar arrow fixed by a non-identity permutation, if the structure
    /// knows of one. Tidy multicategories return `None`.
    fn free_action_witness(&self) -> Option<(Cell, Perm)> {
        None
    }

    /// Canonical representative of an object together with the permutation
    /// component of the isomorphism to it. Skeletal structures return the
    /// object itself.
    fn canonical_object(&self, x: &Cell) -> Result<(Cell, Perm), SymcatError> {
        Ok((x.clone(), Perm::identity(0)))
    }

    fn arity(&self, f: &Cell) -> Result<usize, SymcatError> {
        Ok(self.source(f)?.len())
    }

    /// Every arrow (planar or not) with the given source list and target, of
    /// size at most `max_size`.
    fn arrows_of(&self, source: &[Cell], target: &Cell, max_size: usize) -> Result<Vec<Cell>, SymcatError> {
        let mut want = source.to_vec();
        want.sort();
        let mut out = Vec::new();
        for p in self.planar_arrows(max_size)? {
            if &self.target(&p)? != target {
                continue;
            }
            let src = self.source(&p)?;
            let mut sorted = src.clone();
            sorted.sort();
            if sorted != want {
                continue;
            }
            for sigma in Perm::all(src.len()) {
                if sigma.permute(&src) == source {
                    out.push(self.act(&p, &sigma)?);
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

/// Checks that `g_i` lands on the `i`-th input of an arrow with source `src`.
pub(crate) fn check_inputs(q: &dyn SymMulticat, f: &Cell, src: &[Cell], gs: &[Cell]) -> Result<(), SymcatError> {
    if src.len() != gs.len() {
        return Err(SymcatError::Arity {
            arrow: f.to_string(),
            expected: src.len(),
            found: gs.len(),
        });
    }
    for (i, (s, g)) in src.iter().zip(gs).enumerate() {
        let t = q.target(g)?;
        if &t != s {
            return Err(SymcatError::Mismatch {
                arrow: f.to_string(),
                slot: i,
                expected: s.to_string(),
                found: t.to_string(),
            });
        }
    }
    Ok(())
}
