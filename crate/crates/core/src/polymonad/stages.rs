//! Stages of the nested sequence whose union is the set of pasting trees:
//! `C⁰ = S` and `Cᵏ⁺¹ = S ⨿ T(Cᵏ) ×_{S'} A`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use super::{PolyError, PolyMonad};
use crate::kernel::{Code, Family};

/// A null composite over a colour, or an `A`-labelled operation `op` whose
/// slots carry elements of the previous stage.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StageElement<E> {
    Null(Code),
    Composite {
        op: Code,
        labels: Vec<StageElement<E>>,
        a: E,
    },
}

impl<E> StageElement<E> {
    /// The pasting-tree code, forgetting the `A`-labels.
    pub fn code(&self) -> Code {
        match self {
            StageElement::Null(s) => Code::unit(s.clone()),
            StageElement::Composite { op, labels, .. } => {
                Code::node(op.clone(), labels.iter().map(StageElement::code).collect())
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            StageElement::Null(_) => 0,
            StageElement::Composite { labels, .. } => 1 + labels.iter().map(StageElement::depth).max().unwrap_or(0),
        }
    }
}

/// Stage `k`: its elements fibred by `f⁽ᵏ⁾` over `S`, together with
/// `d_k: Cᵏ → S'` and the size of each element.
#[derive(Clone, Debug)]
pub struct Stage<E: Ord> {
    pub elements: Family<StageElement<E>>,
    pub d: BTreeMap<StageElement<E>, Code>,
    pub sizes: BTreeMap<StageElement<E>, usize>,
}

/// `A = S'` fibred over itself by the identity.
pub fn identity_fibers(m: &dyn PolyMonad, max_size: usize) -> Result<Family<Code>, PolyError> {
    let ops = m.operations(max_size)?;
    let base: BTreeSet<Code> = ops.iter().cloned().collect();
    Ok(Family::from_pairs(base, ops.into_iter().map(|o| (o.clone(), o)))?)
}

/// An element with its colour `f`, its composite `d` and its size.
type Entry<E> = (StageElement<E>, Code, Code, usize);

/// Stage `k`, truncated to elements of size at most `max_size` (a node costs
/// one plus the size of its operation, a null composite the size of its
/// colour). `a` is fibred over operations of `m`.
pub fn nested_sequence_stage<E>(
    m: &dyn PolyMonad,
    a: &Family<E>,
    k: usize,
    max_size: usize,
) -> Result<Stage<E>, PolyError>
where
    E: Ord + Clone + Debug,
{
    let mut current: Vec<Entry<E>> = Vec::new();
    for s in m.colors(max_size)? {
        let sz = m.color_size(&s)?;
        if sz <= max_size {
            current.push((StageElement::Null(s.clone()), s.clone(), m.unit(&s)?, sz));
        }
    }
    let nulls = current.clone();
    for _ in 0..k {
        let mut by_color: BTreeMap<&Code, Vec<&Entry<E>>> = BTreeMap::new();
        for e in &current {
            by_color.entry(&e.1).or_default().push(e);
        }
        let mut next = nulls.clone();
        for (elem, op) in a.iter() {
            let head = 1 + m.size(op)?;
            if head > max_size {
                continue;
            }
            let mut partial: Vec<(Vec<&Entry<E>>, usize)> = vec![(Vec::new(), head)];
            for s in m.source(op)? {
                let mut grown = Vec::new();
                for (chosen, used) in &partial {
                    for c in by_color.get(&s).map(Vec::as_slice).unwrap_or(&[]) {
                        if used + c.3 <= max_size {
                            let mut v = chosen.clone();
                            v.push(*c);
                            grown.push((v, used + c.3));
                        }
                    }
                }
                partial = grown;
            }
            for (chosen, size) in partial {
                let inner: Vec<Code> = chosen.iter().map(|c| c.2.clone()).collect();
                let (d, _) = m.substitute(op, &inner)?;
                let f = m.target(&d)?;
                let labels = chosen.iter().map(|c| c.0.clone()).collect();
                next.push((
                    StageElement::Composite {
                        op: op.clone(),
                        labels,
                        a: elem.clone(),
                    },
                    f,
                    d,
                    size,
                ));
            }
        }
        current = next;
    }
    let mut base: BTreeSet<Code> = m.colors(max_size)?.into_iter().collect();
    base.extend(current.iter().map(|c| c.1.clone()));
    let mut elements = Family::new(base);
    let mut d = BTreeMap::new();
    let mut sizes = BTreeMap::new();
    for (e, f, dk, sz) in current {
        elements.insert(e.clone(), f)?;
        d.insert(e.clone(), dk);
        sizes.insert(e, sz);
    }
    Ok(Stage { elements, d, sizes })
}
