//! Monad opfunctors `(U, φ): (Set/S₁, T₁) → (Set/S₂, T₂)`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::{apply_t, mu_element, PolyError, PolyMonad, TElem};
use crate::kernel::{is_pullback_square, Code, ElementMap, Family, Square};
use crate::report::Report;

/// `op ↦ (op', positions)`: `φ` sends `(op, labels)` to `(op', labels')` with
/// `labels'[j] = labels[positions[j]]`. `φ` is cartesian exactly when every
/// `positions` is a bijection.
pub type OpMap = Arc<dyn Fn(&Code) -> Result<(Code, Vec<usize>), PolyError> + Send + Sync>;

pub type ColorMap = Arc<dyn Fn(&Code) -> Result<Code, PolyError> + Send + Sync>;

#[derive(Clone)]
pub struct MonadOpfunctor {
    pub source: Arc<dyn PolyMonad>,
    pub target: Arc<dyn PolyMonad>,
    color_map: ColorMap,
    op_map: OpMap,
}

impl MonadOpfunctor {
    pub fn new(source: Arc<dyn PolyMonad>, target: Arc<dyn PolyMonad>, color_map: ColorMap, op_map: OpMap) -> Self {
        MonadOpfunctor {
            source,
            target,
            color_map,
            op_map,
        }
    }

    pub fn identity(m: Arc<dyn PolyMonad>) -> Self {
        let m2 = m.clone();
        MonadOpfunctor::new(
            m.clone(),
            m,
            Arc::new(|c: &Code| Ok(c.clone())),
            Arc::new(move |op: &Code| Ok((op.clone(), (0..m2.arity(op)?).collect()))),
        )
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &MonadOpfunctor) -> MonadOpfunctor {
        let (f0, g0) = (self.clone(), g.clone());
        let (f1, g1) = (self.clone(), g.clone());
        MonadOpfunctor::new(
            self.source.clone(),
            g.target.clone(),
            Arc::new(move |c: &Code| g0.map_color(&f0.map_color(c)?)),
            Arc::new(move |op: &Code| {
                let (p, first) = f1.map_op(op)?;
                let (q, second) = g1.map_op(&p)?;
                Ok((q, second.iter().map(|&j| first[j]).collect()))
            }),
        )
    }

    pub fn map_color(&self, c: &Code) -> Result<Code, PolyError> {
        (self.color_map)(c)
    }

    pub fn map_op(&self, op: &Code) -> Result<(Code, Vec<usize>), PolyError> {
        (self.op_map)(op)
    }

    /// `φ` on one element of `UT₁X`.
    pub fn phi<E: Clone>(&self, elem: &TElem<E>) -> Result<TElem<E>, PolyError> {
        let (op, pos) = self.map_op(&elem.0)?;
        let mut labels = Vec::with_capacity(pos.len());
        for &j in &pos {
            labels.push(
                elem.1
                    .get(j)
                    .cloned()
                    .ok_or_else(|| PolyError::UnknownOperation(elem.0.to_string()))?,
            );
        }
        Ok((op, labels))
    }

    /// Typing, the unit and multiplication compatibilities with symbolic
    /// labels, and cartesianness of `φ` on the naturality squares of the
    /// quotient maps of small families.
    pub fn check(&self, bound: usize) -> Report {
        let mut report = Report::new(&format!("{} → {}", self.source.name(), self.target.name()));
        if let Err(e) = self.cases(bound, &mut report) {
            report.check("enumeration").fail(e.to_string());
        }
        report
    }

    fn cases(&self, bound: usize, report: &mut Report) -> Result<(), PolyError> {
        let (m1, m2) = (self.source.as_ref(), self.target.as_ref());
        let ops = m1.operations(bound)?;
        for op in &ops {
            let (p, pos) = self.map_op(op)?;
            let src1 = m1.source(op)?;
            let mapped: Vec<Code> = pos
                .iter()
                .map(|&j| {
                    src1.get(j)
                        .map(|s| self.map_color(s))
                        .unwrap_or_else(|| Err(PolyError::UnknownOperation(op.to_string())))
                })
                .collect::<Result<_, _>>()?;
            let ok = m2.source(&p)? == mapped && m2.target(&p)? == self.map_color(&m1.target(op)?)?;
            report.check("typing").record(ok, || format!("{} ↦ {}", op, p));
        }
        for c in m1.colors(bound)? {
            let lhs = self.phi(&(m1.unit(&c)?, vec![0usize]))?;
            let rhs = (m2.unit(&self.map_color(&c)?)?, vec![0usize]);
            report.check("unit").record(lhs == rhs, || format!("unit at {}", c));
        }
        // φ ∘ μ₁ = μ₂ ∘ T₂φ ∘ φ on symbolic labels.
        for op in &ops {
            let used = m1.size(op)?;
            for inner in inner_tuples(m1, op, &ops, bound.saturating_sub(used))? {
                let mut next = 0usize;
                let labelled: Vec<TElem<usize>> = inner
                    .iter()
                    .map(|g| {
                        let n = m1.arity(g)?;
                        next += n;
                        Ok((g.clone(), (next - n..next).collect()))
                    })
                    .collect::<Result<_, PolyError>>()?;
                let elem = (op.clone(), labelled.clone());
                let lhs = self.phi(&mu_element(m1, &elem)?)?;
                let outer = self.phi(&elem)?;
                let inner2: Vec<TElem<usize>> = outer.1.iter().map(|e| self.phi(e)).collect::<Result<_, _>>()?;
                let rhs = mu_element(m2, &(outer.0.clone(), inner2))?;
                report
                    .check("multiplication")
                    .record(lhs == rhs, || format!("{} with {:?}", op, inner));
            }
        }
        self.cartesian_cases(bound, report)
    }

    fn cartesian_cases(&self, bound: usize, report: &mut Report) -> Result<(), PolyError> {
        let colors: Vec<Code> = smallest_colors(self.source.as_ref(), 2)?;
        for x in small_families(&colors, 3) {
            for (y, h) in quotients(&x) {
                let verdict = self.naturality_square(&x, &y, &h, bound)?;
                report
                    .check("cartesian")
                    .record(verdict.is_none(), || verdict.clone().unwrap_or_default());
            }
        }
        Ok(())
    }

    /// The naturality square of `φ` at `h: X → Y`; `None` when it is a
    /// pullback.
    pub fn naturality_square(
        &self,
        x: &Family<String>,
        y: &Family<String>,
        h: &ElementMap<String, String>,
        bound: usize,
    ) -> Result<Option<String>, PolyError> {
        let tx = apply_t(self.source.as_ref(), x, bound)?;
        let ty = apply_t(self.source.as_ref(), y, bound)?;
        let image_bound = tx
            .elements()
            .chain(ty.elements())
            .map(|e| self.target.size(&self.map_op(&e.0)?.0))
            .try_fold(0, |acc, s| s.map(|s| acc.max(s)))?;
        let ux = self.push_family(x)?;
        let uy = self.push_family(y)?;
        let t2ux = apply_t(self.target.as_ref(), &ux, image_bound)?;
        let t2uy = apply_t(self.target.as_ref(), &uy, image_bound)?;
        let mut top = BTreeMap::new();
        let mut left = BTreeMap::new();
        for e in tx.elements() {
            top.insert(e.clone(), self.phi(e)?);
            left.insert(e.clone(), super::t_map(h, e).expect("h is total"));
        }
        let mut right = BTreeMap::new();
        for e in t2ux.elements() {
            right.insert(e.clone(), super::t_map(h, e).expect("h is total"));
        }
        let mut bottom = BTreeMap::new();
        for e in ty.elements() {
            bottom.insert(e.clone(), self.phi(e)?);
        }
        let verdict = is_pullback_square(&Square {
            apex: &tx,
            right_src: &t2ux,
            left_dst: &ty,
            corner: &t2uy,
            top: &top,
            left: &left,
            right: &right,
            bottom: &bottom,
        });
        Ok(if verdict.is_pullback() {
            None
        } else {
            Some(format!("{:?} over {:?}: {:?}", h, x, verdict))
        })
    }

    fn push_family(&self, x: &Family<String>) -> Result<Family<String>, PolyError> {
        let mut pairs = Vec::new();
        for (e, s) in x.iter() {
            pairs.push((e.clone(), self.map_color(s)?));
        }
        let base = x
            .base()
            .iter()
            .map(|s| self.map_color(s))
            .collect::<Result<BTreeSet<_>, _>>()?;
        Ok(Family::from_pairs(base, pairs)?)
    }
}

/// Tuples of operations, one per slot of `op`, whose sizes sum to at most
/// `budget`.
pub(crate) fn inner_tuples(
    m: &dyn PolyMonad,
    op: &Code,
    ops: &[Code],
    budget: usize,
) -> Result<Vec<Vec<Code>>, PolyError> {
    let mut by_target: BTreeMap<Code, Vec<(Code, usize)>> = BTreeMap::new();
    for g in ops {
        by_target.entry(m.target(g)?).or_default().push((g.clone(), m.size(g)?));
    }
    let mut partial: Vec<(Vec<Code>, usize)> = vec![(Vec::new(), 0)];
    for s in m.source(op)? {
        let mut next = Vec::new();
        for (gs, used) in &partial {
            for (g, sz) in by_target.get(&s).map(Vec::as_slice).unwrap_or(&[]) {
                if used + sz <= budget {
                    let mut v = gs.clone();
                    v.push(g.clone());
                    next.push((v, used + sz));
                }
            }
        }
        partial = next;
    }
    Ok(partial.into_iter().map(|(gs, _)| gs).collect())
}

/// The `n` colours of least size, ties broken by code.
pub(crate) fn smallest_colors(m: &dyn PolyMonad, n: usize) -> Result<Vec<Code>, PolyError> {
    let mut bound = 0;
    loop {
        let mut cs = m.colors(bound)?;
        if cs.len() >= n || bound >= 8 {
            cs.sort_by(|a, b| {
                let (sa, sb) = (
                    m.color_size(a).unwrap_or(usize::MAX),
                    m.color_size(b).unwrap_or(usize::MAX),
                );
                sa.cmp(&sb).then_with(|| a.cmp(b))
            });
            cs.truncate(n);
            return Ok(cs);
        }
        bound += 1;
    }
}

/// Every family over `colors` with at most `max_elements` elements, up to
/// renaming: one per multiset of fibres. Elements are `x0, x1, …`.
pub(crate) fn small_families(colors: &[Code], max_elements: usize) -> Vec<Family<String>> {
    let base: BTreeSet<Code> = colors.iter().cloned().collect();
    let mut out = Vec::new();
    let mut counts = vec![0usize; colors.len()];
    loop {
        let total: usize = counts.iter().sum();
        if total <= max_elements {
            let mut pairs = Vec::new();
            for (c, &n) in colors.iter().zip(&counts) {
                for _ in 0..n {
                    pairs.push((format!("x{}", pairs.len()), c.clone()));
                }
            }
            out.push(Family::from_pairs(base.clone(), pairs).expect("fibres lie in the base"));
        }
        let mut i = 0;
        loop {
            if i == counts.len() {
                return out;
            }
            counts[i] += 1;
            if counts.iter().sum::<usize>() <= max_elements {
                break;
            }
            counts[i] = 0;
            i += 1;
        }
    }
}

/// Every fibre-preserving surjection out of `x`, one per partition of each
/// fibre; the quotient elements are named after their least member.
pub(crate) fn quotients(x: &Family<String>) -> Vec<(Family<String>, ElementMap<String, String>)> {
    let elems: Vec<(String, Code)> = x.iter().map(|(e, s)| (e.clone(), s.clone())).collect();
    let mut out = Vec::new();
    let mut blocks: Vec<usize> = Vec::new();
    partitions(&elems, 0, &mut blocks, &mut out, x);
    out
}

fn partitions(
    elems: &[(String, Code)],
    i: usize,
    blocks: &mut Vec<usize>,
    out: &mut Vec<(Family<String>, ElementMap<String, String>)>,
    x: &Family<String>,
) {
    if i == elems.len() {
        let mut h = BTreeMap::new();
        let mut pairs = BTreeMap::new();
        for (k, (e, s)) in elems.iter().enumerate() {
            let rep = elems[blocks[k]].0.clone();
            h.insert(e.clone(), rep.clone());
            pairs.insert(rep, s.clone());
        }
        let y = Family::from_pairs(x.base().clone(), pairs).expect("fibres lie in the base");
        out.push((y, h));
        return;
    }
    let mut leaders: Vec<usize> = blocks.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    leaders.retain(|&l| elems[l].1 == elems[i].1);
    for l in leaders {
        blocks.push(l);
        partitions(elems, i + 1, blocks, out, x);
        blocks.pop();
    }
    blocks.push(i);
    partitions(elems, i + 1, blocks, out, x);
    blocks.pop();
}
