//! Finite families `X → S` and the limits of them that the monad checks need.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use super::{Code, KernelError};

/// A finite family of elements fibred over a base set of codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family<E: Ord> {
    base: BTreeSet<Code>,
    fibers: BTreeMap<E, Code>,
}

impl<E: Ord + Clone + Debug> Family<E> {
    pub fn new(base: BTreeSet<Code>) -> Self {
        Family {
            base,
            fibers: BTreeMap::new(),
        }
    }

    pub fn from_pairs(base: BTreeSet<Code>, pairs: impl IntoIterator<Item = (E, Code)>) -> Result<Self, KernelError> {
        let mut fam = Family::new(base);
        for (e, s) in pairs {
            fam.insert(e, s)?;
        }
        Ok(fam)
    }

    pub fn insert(&mut self, element: E, fiber: Code) -> Result<(), KernelError> {
        if !self.base.contains(&fiber) {
            return Err(KernelError::FiberOutsideBase(fiber.to_string()));
        }
        if self.fibers.contains_key(&element) {
            return Err(KernelError::DuplicateElement(format!("{:?}", element)));
        }
        self.fibers.insert(element, fiber);
        Ok(())
    }

    pub fn base(&self) -> &BTreeSet<Code> {
        &self.base
    }

    pub fn fiber_of(&self, e: &E) -> Option<&Code> {
        self.fibers.get(e)
    }

    pub fn contains(&self, e: &E) -> bool {
        self.fibers.contains_key(e)
    }

    pub fn len(&self) -> usize {
        self.fibers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fibers.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&E, &Code)> {
        self.fibers.iter()
    }

    pub fn elements(&self) -> impl Iterator<Item = &E> {
        self.fibers.keys()
    }

    /// Elements lying over `s`.
    pub fn fiber(&self, s: &Code) -> Vec<&E> {
        self.fibers.iter().filter(|(_, f)| *f == s).map(|(e, _)| e).collect()
    }

    /// Same elements, reindexed along `g: S → S'` (postcomposition).
    pub fn reindex(&self, base: BTreeSet<Code>, g: impl Fn(&Code) -> Code) -> Result<Family<E>, KernelError> {
        Family::from_pairs(base, self.fibers.iter().map(|(e, s)| (e.clone(), g(s))))
    }

    pub fn subfamily(&self, keep: impl Fn(&E) -> bool) -> Family<E> {
        Family {
            base: self.base.clone(),
            fibers: self
                .fibers
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, s)| (e.clone(), s.clone()))
                .collect(),
        }
    }
}

/// Pullback of `p: X → Z` and `q: Y → Z`: the pairs with equal fibre, fibred
/// over `Z` by the common value. Projections are the pair components.
pub fn pullback<A, B>(p: &Family<A>, q: &Family<B>) -> Result<Family<(A, B)>, KernelError>
where
    A: Ord + Clone + Debug,
    B: Ord + Clone + Debug,
{
    if p.base != q.base {
        return Err(KernelError::BaseMismatch);
    }
    let mut out = Family::new(p.base.clone());
    for (a, z) in p.iter() {
        for b in q.fiber(z) {
            out.insert((a.clone(), b.clone()), z.clone())?;
        }
    }
    Ok(out)
}

/// A function between the element sets of two families.
pub type ElementMap<A, B> = BTreeMap<A, B>;

/// A commuting-square candidate
///
/// ```text
///   apex --top--> right_src
///    |               |
///   left           right
///    v               v
///  left_dst --bottom--> corner
/// ```
///
/// The sets are given as families; only their element sets matter for the
/// pullback test.
pub struct Square<'a, A: Ord, B: Ord, C: Ord, D: Ord> {
    pub apex: &'a Family<A>,
    pub right_src: &'a Family<B>,
    pub left_dst: &'a Family<C>,
    pub corner: &'a Family<D>,
    pub top: &'a ElementMap<A, B>,
    pub left: &'a ElementMap<A, C>,
    pub right: &'a ElementMap<B, D>,
    pub bottom: &'a ElementMap<C, D>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareVerdict {
    Pullback,
    Malformed(String),
    NotCommuting(String),
    NotInjective(String),
    NotSurjective(String),
}

impl SquareVerdict {
    pub fn is_pullback(&self) -> bool {
        matches!(self, SquareVerdict::Pullback)
    }
}

fn total<X: Ord + Clone + Debug, Y: Ord + Clone + Debug>(
    name: &str,
    dom: &Family<X>,
    cod: &Family<Y>,
    m: &ElementMap<X, Y>,
) -> Result<(), String> {
    for x in dom.elements() {
        match m.get(x) {
            None => return Err(format!("{} undefined at {:?}", name, x)),
            Some(y) if !cod.contains(y) => {
                return Err(format!("{} sends {:?} outside its codomain ({:?})", name, x, y))
            }
            _ => {}
        }
    }
    Ok(())
}

/// Decides whether a square of finite sets is a pullback: it must commute and
/// the comparison map into the computed pullback must be a bijection.
pub fn is_pullback_square<A, B, C, D>(sq: &Square<'_, A, B, C, D>) -> SquareVerdict
where
    A: Ord + Clone + Debug,
    B: Ord + Clone + Debug,
    C: Ord + Clone + Debug,
    D: Ord + Clone + Debug,
{
    let checks = [
        total("top", sq.apex, sq.right_src, sq.top),
        total("left", sq.apex, sq.left_dst, sq.left),
        total("right", sq.right_src, sq.corner, sq.right),
        total("bottom", sq.left_dst, sq.corner, sq.bottom),
    ];
    for c in checks {
        if let Err(msg) = c {
            return SquareVerdict::Malformed(msg);
        }
    }
    let mut image = BTreeSet::new();
    for a in sq.apex.elements() {
        let b = &sq.top[a];
        let c = &sq.left[a];
        if sq.right[b] != sq.bottom[c] {
            return SquareVerdict::NotCommuting(format!("{:?}", a));
        }
        if !image.insert((b.clone(), c.clone())) {
            return SquareVerdict::NotInjective(format!("{:?} collides with another apex element", a));
        }
    }
    // Pairs (b, c) over the same corner element, grouped by corner value.
    let mut by_corner: BTreeMap<&D, Vec<&C>> = BTreeMap::new();
    for c in sq.left_dst.elements() {
        by_corner.entry(&sq.bottom[c]).or_default().push(c);
    }
    for b in sq.right_src.elements() {
        if let Some(cs) = by_corner.get(&sq.right[b]) {
            for c in cs {
                if !image.contains(&(b.clone(), (*c).clone())) {
                    return SquareVerdict::NotSurjective(format!("({:?}, {:?}) is not reached", b, c));
                }
            }
        }
    }
    SquareVerdict::Pullback
}

/// Coproduct of two families over a common base, tagged `Left`/`Right`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sum<A, B> {
    Left(A),
    Right(B),
}

pub fn coproduct<A, B>(p: &Family<A>, q: &Family<B>) -> Result<Family<Sum<A, B>>, KernelError>
where
    A: Ord + Clone + Debug,
    B: Ord + Clone + Debug,
{
    if p.base != q.base {
        return Err(KernelError::BaseMismatch);
    }
    let left = p.iter().map(|(a, s)| (Sum::Left(a.clone()), s.clone()));
    let right = q.iter().map(|(b, s)| (Sum::Right(b.clone()), s.clone()));
    Family::from_pairs(p.base.clone(), left.chain(right))
}
