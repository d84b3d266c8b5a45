//! Morphisms of symmetric multicategories and the bounded equivalence test.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::{Cell, SymMulticat, SymcatError};
use crate::kernel::Perm;
use crate::report::Report;

pub type CellMap = Arc<dyn Fn(&Cell) -> Result<Cell, SymcatError> + Send + Sync>;

/// `F: Q → R`, given on objects and on planar arrows; twisted arrows are sent
/// to `F(p)·σ`.
#[derive(Clone)]
pub struct SymMulticatMorphism {
    pub source: Arc<dyn SymMulticat>,
    pub target: Arc<dyn SymMulticat>,
    object_map: CellMap,
    planar_map: CellMap,
}

impl SymMulticatMorphism {
    pub fn new(
        source: Arc<dyn SymMulticat>,
        target: Arc<dyn SymMulticat>,
        object_map: CellMap,
        planar_map: CellMap,
    ) -> Self {
        SymMulticatMorphism {
            source,
            target,
            object_map,
            planar_map,
        }
    }

    pub fn identity(q: Arc<dyn SymMulticat>) -> Self {
        let id: CellMap = Arc::new(|x: &Cell| Ok(x.clone()));
        SymMulticatMorphism::new(q.clone(), q, id.clone(), id)
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &SymMulticatMorphism) -> SymMulticatMorphism {
        let (f0, g0) = (self.clone(), g.clone());
        let (f1, g1) = (self.clone(), g.clone());
        SymMulticatMorphism::new(
            self.source.clone(),
            g.target.clone(),
            Arc::new(move |x: &Cell| g0.map_object(&f0.map_object(x)?)),
            Arc::new(move |p: &Cell| g1.map_arrow(&f1.map_arrow(p)?)),
        )
    }

    pub fn map_object(&self, x: &Cell) -> Result<Cell, SymcatError> {
        (self.object_map)(x)
    }

    pub fn map_arrow(&self, f: &Cell) -> Result<Cell, SymcatError> {
        let (p, sigma) = self.source.planar_rep(f)?;
        self.target.act(&(self.planar_map)(&p)?, &sigma)
    }

    /// Checks that identities, composites, sources, targets and the action are
    /// preserved on arrows of total size at most `bound`.
    pub fn check_functor(&self, bound: usize) -> Report {
        let mut report = Report::new(&format!("{} → {}", self.source.name(), self.target.name()));
        if let Err(e) = self.functor_cases(bound, &mut report) {
            report.check("enumeration").fail(e.to_string());
        }
        report
    }

    fn functor_cases(&self, bound: usize, report: &mut Report) -> Result<(), SymcatError> {
        let (q, r) = (self.source.as_ref(), self.target.as_ref());
        for x in q.objects(bound)? {
            let ok = self.map_arrow(&q.identity(&x)?)? == r.identity(&self.map_object(&x)?)?;
            report.check("identities").record(ok, || format!("identity of {}", x));
        }
        let arrows = q.planar_arrows(bound)?;
        for f in &arrows {
            let ff = self.map_arrow(f)?;
            let mut src = Vec::new();
            for s in q.source(f)? {
                src.push(self.map_object(&s)?);
            }
            let ok = r.source(&ff)? == src && r.target(&ff)? == self.map_object(&q.target(f)?)?;
            report.check("typing").record(ok, || format!("{}", f));
            for sigma in Perm::all(q.arity(f)?.min(4)) {
                if sigma.degree() != q.arity(f)? {
                    break;
                }
                let ok = self.map_arrow(&q.act(f, &sigma)?)? == r.act(&ff, &sigma)?;
                report.check("action").record(ok, || format!("{}·{}", f, sigma));
            }
            let fsize = q.size(f)?;
            let mut partial: Vec<(Vec<Cell>, usize)> = vec![(Vec::new(), fsize)];
            for s in q.source(f)? {
                let mut next = Vec::new();
                for (gs, used) in &partial {
                    for g in &arrows {
                        let sz = q.size(g)?;
                        if q.target(g)? == s && used + sz <= bound {
                            let mut v = gs.clone();
                            v.push(g.clone());
                            next.push((v, used + sz));
                        }
                    }
                }
                partial = next;
            }
            for (gs, _) in partial {
                let lhs = self.map_arrow(&q.compose(f, &gs)?)?;
                let images = gs.iter().map(|g| self.map_arrow(g)).collect::<Result<Vec<_>, _>>()?;
                let rhs = r.compose(&ff, &images)?;
                report
                    .check("composition")
                    .record(lhs == rhs, || format!("{} ∘ {} arrows", f, gs.len()));
            }
        }
        Ok(())
    }
}

/// Whether `f` is an equivalence as far as objects and arrows of size at most
/// `bound` can tell: injective on objects and planar arrows, every object of
/// the target is hit, and every planar arrow between objects in the image is
/// hit up to the action.
pub fn is_equivalence(f: &SymMulticatMorphism, bound: usize) -> Result<bool, SymcatError> {
    let (q, r) = (f.source.as_ref(), f.target.as_ref());
    let mut images = BTreeSet::new();
    for x in q.objects(bound)? {
        if !images.insert(f.map_object(&x)?) {
            return Ok(false);
        }
    }
    for y in r.objects(bound)? {
        if !images.contains(&y) {
            return Ok(false);
        }
    }
    let mut hit = BTreeSet::new();
    for p in q.planar_arrows(bound)? {
        if !hit.insert(r.planar_rep(&f.map_arrow(&p)?)?.0) {
            return Ok(false);
        }
    }
    for p in r.planar_arrows(bound)? {
        let inside = images.contains(&r.target(&p)?) && r.source(&p)?.iter().all(|s| images.contains(s));
        if inside && !hit.contains(&p) {
            return Ok(false);
        }
    }
    Ok(true)
}
