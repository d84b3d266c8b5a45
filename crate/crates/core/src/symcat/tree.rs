//! Planar trees of arrows, trees with twists at inner nodes, and combing.

use std::sync::Arc;

use super::{Cell, SymMulticat, SymcatError};
use crate::kernel::{Code, Perm};

/// A planar tree: either a bare edge coloured by an object, or a node with one
/// subtree per input slot of its label.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlanarTree {
    Leaf(Cell),
    Node(Cell, Arc<[PlanarTree]>),
}

impl PlanarTree {
    pub fn node(label: Cell, children: Vec<PlanarTree>) -> PlanarTree {
        PlanarTree::Node(label, children.into())
    }

    /// Node labels in depth-first (pre-order) order.
    pub fn labels(&self) -> Vec<&Cell> {
        let mut out = Vec::new();
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels<'a>(&'a self, out: &mut Vec<&'a Cell>) {
        if let PlanarTree::Node(l, ch) = self {
            out.push(l);
            for c in ch.iter() {
                c.collect_labels(out);
            }
        }
    }

    /// Leaf colours in left-to-right order.
    pub fn leaves(&self) -> Vec<&Cell> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a Cell>) {
        match self {
            PlanarTree::Leaf(x) => out.push(x),
            PlanarTree::Node(_, ch) => ch.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            PlanarTree::Leaf(_) => 0,
            PlanarTree::Node(_, ch) => 1 + ch.iter().map(PlanarTree::node_count).sum::<usize>(),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            PlanarTree::Leaf(_) => 1,
            PlanarTree::Node(_, ch) => ch.iter().map(PlanarTree::leaf_count).sum(),
        }
    }

    /// The object on the root edge.
    pub fn root_color(&self, q: &dyn SymMulticat) -> Result<Cell, SymcatError> {
        match self {
            PlanarTree::Leaf(x) => Ok(x.clone()),
            PlanarTree::Node(l, _) => q.target(l),
        }
    }

    /// Checks that every node has one child per input slot and that colours
    /// match along each edge.
    pub fn check_well_formed(&self, q: &dyn SymMulticat) -> Result<(), SymcatError> {
        if let PlanarTree::Node(l, ch) = self {
            let src = q.source(l)?;
            if src.len() != ch.len() {
                return Err(SymcatError::IllFormed(format!(
                    "node {} has {} inputs but {} subtrees",
                    l,
                    src.len(),
                    ch.len()
                )));
            }
            for (s, c) in src.iter().zip(ch.iter()) {
                let color = c.root_color(q)?;
                if &color != s {
                    return Err(SymcatError::IllFormed(format!(
                        "edge into {} expects {} but subtree delivers {}",
                        l, s, color
                    )));
                }
                c.check_well_formed(q)?;
            }
        }
        Ok(())
    }

    /// Bottom-up composite in `q` (no twist applied).
    pub fn evaluate(&self, q: &dyn SymMulticat) -> Result<Cell, SymcatError> {
        match self {
            PlanarTree::Leaf(x) => q.identity(x),
            PlanarTree::Node(l, ch) => {
                let parts = ch.iter().map(|c| c.evaluate(q)).collect::<Result<Vec<_>, _>>()?;
                q.compose(l, &parts)
            }
        }
    }

    /// Text form: `u(x)` for an edge, `n(f; ...)` for a node.
    pub fn encode(&self, q: &dyn SymMulticat) -> Result<Code, SymcatError> {
        match self {
            PlanarTree::Leaf(x) => Ok(Code::unit(q.encode_object(x)?)),
            PlanarTree::Node(l, ch) => {
                let children = ch.iter().map(|c| c.encode(q)).collect::<Result<Vec<_>, _>>()?;
                Ok(Code::node(q.encode_arrow(l)?, children))
            }
        }
    }
}

/// A planar tree whose nodes may carry a twist on the leaves of their subtree.
/// Node tags survive combing and are used to rebuild source numberings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistedTree {
    Leaf(Cell),
    Node {
        label: Cell,
        twist: Perm,
        tag: usize,
        children: Vec<TwistedTree>,
    },
}

impl TwistedTree {
    /// Untwisted copy of a planar tree, nodes tagged in depth-first order
    /// starting from `*next`.
    pub fn from_planar(t: &PlanarTree, next: &mut usize) -> TwistedTree {
        match t {
            PlanarTree::Leaf(x) => TwistedTree::Leaf(x.clone()),
            PlanarTree::Node(l, ch) => {
                let tag = *next;
                *next += 1;
                let children = ch.iter().map(|c| Self::from_planar(c, next)).collect::<Vec<_>>();
                let degree = children.iter().map(TwistedTree::leaf_count).sum();
                TwistedTree::Node {
                    label: l.clone(),
                    twist: Perm::identity(degree),
                    tag,
                    children,
                }
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            TwistedTree::Leaf(_) => 1,
            TwistedTree::Node { children, .. } => children.iter().map(TwistedTree::leaf_count).sum(),
        }
    }

    /// Evaluates with every twist applied where it sits.
    pub fn evaluate(&self, q: &dyn SymMulticat) -> Result<Cell, SymcatError> {
        match self {
            TwistedTree::Leaf(x) => q.identity(x),
            TwistedTree::Node {
                label, twist, children, ..
            } => {
                let parts = children.iter().map(|c| c.evaluate(q)).collect::<Result<Vec<_>, _>>()?;
                q.act(&q.compose(label, &parts)?, twist)
            }
        }
    }
}

/// Result of combing: the untwisted tree, the single top twist, and node tags
/// in depth-first order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combed {
    pub tree: PlanarTree,
    pub twist: Perm,
    pub tags: Vec<usize>,
}

/// Moves every twist to the top. A node `f` with twist `σ` over combed
/// children `(T_j, ρ_j)` becomes the node over `T_j` with top twist
/// `(ρ_1 ⊕ … ⊕ ρ_k) ∘ σ`.
pub fn comb(t: &TwistedTree) -> Result<Combed, SymcatError> {
    match t {
        TwistedTree::Leaf(x) => Ok(Combed {
            tree: PlanarTree::Leaf(x.clone()),
            twist: Perm::identity(1),
            tags: Vec::new(),
        }),
        TwistedTree::Node {
            label,
            twist,
            tag,
            children,
        } => {
            let combed = children.iter().map(comb).collect::<Result<Vec<_>, _>>()?;
            let inner = Perm::juxtapose(&combed.iter().map(|c| c.twist.clone()).collect::<Vec<_>>());
            if inner.degree() != twist.degree() {
                return Err(SymcatError::TwistDegree {
                    expected: inner.degree(),
                    found: twist.degree(),
                });
            }
            let mut tags = vec![*tag];
            let mut kids = Vec::with_capacity(combed.len());
            for c in combed {
                tags.extend(c.tags);
                kids.push(c.tree);
            }
            Ok(Combed {
                tree: PlanarTree::node(label.clone(), kids),
                twist: inner.compose(twist).expect("degrees checked"),
                tags,
            })
        }
    }
}
