//! The endofunctor `T` on families, with its unit and multiplication.

use std::collections::BTreeMap;
use std::fmt::Debug;

use super::{PolyError, PolyMonad};
use crate::kernel::{ElementMap, Family};

/// An element of `TX`: an operation with one `X`-label per source slot.
pub type TElem<E> = (crate::kernel::Code, Vec<E>);

/// An element of `TTX`.
pub type TTElem<E> = TElem<TElem<E>>;

/// All `(op, labels)` with `size(op) ≤ max_size` and `fiber(labels[j]) =
/// source(op)[j]`, fibred by target. The base is that of `x`; operations
/// touching colours outside it are skipped.
pub fn apply_t<E>(m: &dyn PolyMonad, x: &Family<E>, max_size: usize) -> Result<Family<TElem<E>>, PolyError>
where
    E: Ord + Clone + Debug,
{
    let mut out = Family::new(x.base().clone());
    let mut by_fiber: BTreeMap<_, Vec<&E>> = BTreeMap::new();
    for (e, s) in x.iter() {
        by_fiber.entry(s.clone()).or_default().push(e);
    }
    for op in m.operations(max_size)? {
        let target = m.target(&op)?;
        if !x.base().contains(&target) {
            continue;
        }
        let src = m.source(&op)?;
        if src.iter().any(|s| !x.base().contains(s)) {
            continue;
        }
        let mut partial: Vec<Vec<E>> = vec![Vec::new()];
        for s in &src {
            let choices = by_fiber.get(s).map(Vec::as_slice).unwrap_or(&[]);
            let mut next = Vec::with_capacity(partial.len() * choices.len());
            for p in &partial {
                for e in choices {
                    let mut v = p.clone();
                    v.push((*e).clone());
                    next.push(v);
                }
            }
            partial = next;
        }
        for labels in partial {
            out.insert((op.clone(), labels), target.clone())?;
        }
    }
    Ok(out)
}

/// `η_X(x) = (unit(fiber x), [x])`.
pub fn unit_component<E>(m: &dyn PolyMonad, x: &Family<E>) -> Result<ElementMap<E, TElem<E>>, PolyError>
where
    E: Ord + Clone + Debug,
{
    let mut out = BTreeMap::new();
    for (e, s) in x.iter() {
        out.insert(e.clone(), (m.unit(s)?, vec![e.clone()]));
    }
    Ok(out)
}

/// `μ` on one element: substitute the inner operations and lay the
/// concatenated labels out as the sources of the composite.
pub fn mu_element<E: Clone>(m: &dyn PolyMonad, elem: &TTElem<E>) -> Result<TElem<E>, PolyError> {
    let (op, inner) = elem;
    let ops: Vec<_> = inner.iter().map(|(o, _)| o.clone()).collect();
    let (r, pi) = m.substitute(op, &ops)?;
    let concat: Vec<E> = inner.iter().flat_map(|(_, l)| l.iter().cloned()).collect();
    if pi.degree() != concat.len() {
        return Err(PolyError::Arity {
            op: r.to_string(),
            expected: pi.degree(),
            found: concat.len(),
        });
    }
    Ok((r, pi.permute(&concat)))
}

/// `μ_X` on every element of `ttx`.
pub fn mult_component<E>(
    m: &dyn PolyMonad,
    ttx: &Family<TTElem<E>>,
) -> Result<ElementMap<TTElem<E>, TElem<E>>, PolyError>
where
    E: Ord + Clone + Debug,
{
    let mut out = BTreeMap::new();
    for e in ttx.elements() {
        out.insert(e.clone(), mu_element(m, e)?);
    }
    Ok(out)
}

/// `T h` on one element.
pub fn t_map<A: Ord, B: Clone>(h: &ElementMap<A, B>, elem: &TElem<A>) -> Option<TElem<B>> {
    let labels = elem.1.iter().map(|a| h.get(a).cloned()).collect::<Option<Vec<_>>>()?;
    Some((elem.0.clone(), labels))
}
