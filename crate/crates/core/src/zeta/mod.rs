//! From tidy symmetric multicategories to polynomial monads, and the
//! comparison between `ζ(Q)'` and `ζ(Q⁺)`.
//!
//! `ζ(Q)` has the objects of `Q` as colours and the planar arrows as
//! operations. Substitution composes in `Q` and takes the planar
//! representative; the twist that is split off becomes the layout
//! permutation of the sources.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use crate::kernel::{Code, Perm};
use crate::polymonad::{
    identity_fibers, nested_sequence_stage, FreeOperad, MonadOpfunctor, PolyError, PolyMonad, StageElement,
};
use crate::report::Report;
use crate::symcat::{slice, Cell, PlanarTree, SymMulticat, SymMulticatMorphism, SymcatError};

impl From<SymcatError> for PolyError {
    fn from(e: SymcatError) -> Self {
        PolyError::Underlying(e.to_string())
    }
}

#[derive(Clone)]
struct OpInfo {
    cell: Cell,
    source: Vec<Code>,
    target: Code,
    size: usize,
}

/// `ζ(Q)` on codes.
pub struct ZetaMonad {
    q: Arc<dyn SymMulticat>,
    ops: Mutex<HashMap<Code, Arc<OpInfo>>>,
    objects: Mutex<HashMap<Code, (Cell, usize)>>,
}

impl ZetaMonad {
    /// Refused when `q` is not freely symmetric.
    pub fn new(q: Arc<dyn SymMulticat>) -> Result<ZetaMonad, PolyError> {
        if let Some((f, perm)) = q.free_action_witness() {
            return Err(SymcatError::NotTidy {
                arrow: f.to_string(),
                perm: perm.to_string(),
            }
            .into());
        }
        Ok(ZetaMonad {
            q,
            ops: Mutex::new(HashMap::new()),
            objects: Mutex::new(HashMap::new()),
        })
    }

    pub fn multicat(&self) -> &Arc<dyn SymMulticat> {
        &self.q
    }

    fn info(&self, op: &Code) -> Result<Arc<OpInfo>, PolyError> {
        if let Some(i) = self.ops.lock().expect("op table").get(op) {
            return Ok(i.clone());
        }
        let cell = self
            .q
            .decode_arrow(op)
            .map_err(|_| PolyError::UnknownOperation(op.to_string()))?;
        self.learn(cell)
    }

    fn learn(&self, cell: Cell) -> Result<Arc<OpInfo>, PolyError> {
        let q = self.q.as_ref();
        let code = q.encode_arrow(&cell)?;
        let info = Arc::new(OpInfo {
            source: q
                .source(&cell)?
                .iter()
                .map(|s| q.encode_object(s))
                .collect::<Result<_, _>>()?,
            target: q.encode_object(&q.target(&cell)?)?,
            size: q.size(&cell)?,
            cell,
        });
        self.ops.lock().expect("op table").insert(code, info.clone());
        Ok(info)
    }

    /// The object of `Q` behind a colour, and its size.
    pub fn object(&self, c: &Code) -> Result<(Cell, usize), PolyError> {
        if let Some(v) = self.objects.lock().expect("object table").get(c) {
            return Ok(v.clone());
        }
        let x = self
            .q
            .decode_object(c)
            .map_err(|_| PolyError::UnknownColor(c.to_string()))?;
        let v = (x.clone(), self.q.object_size(&x)?);
        self.objects.lock().expect("object table").insert(c.clone(), v.clone());
        Ok(v)
    }

    /// The planar arrow behind an operation.
    pub fn arrow(&self, op: &Code) -> Result<Cell, PolyError> {
        Ok(self.info(op)?.cell.clone())
    }

    /// The operation of an arrow: the code of its planar representative.
    pub fn op_of_arrow(&self, f: &Cell) -> Result<Code, PolyError> {
        let (p, _) = self.q.planar_rep(f)?;
        Ok(self.q.encode_arrow(&p)?)
    }
}

impl PolyMonad for ZetaMonad {
    fn name(&self) -> String {
        format!("ζ({})", self.q.name())
    }

    fn colors(&self, max_size: usize) -> Result<Vec<Code>, PolyError> {
        let mut out = Vec::new();
        for x in self.q.objects(max_size)? {
            let c = self.q.encode_object(&x)?;
            let sz = self.q.object_size(&x)?;
            self.objects.lock().expect("object table").insert(c.clone(), (x, sz));
            out.push(c);
        }
        out.sort();
        Ok(out)
    }

    fn color_size(&self, c: &Code) -> Result<usize, PolyError> {
        Ok(self.object(c)?.1)
    }

    fn operations(&self, max_size: usize) -> Result<Vec<Code>, PolyError> {
        let mut out = Vec::new();
        for p in self.q.planar_arrows(max_size)? {
            let code = self.q.encode_arrow(&p)?;
            if !self.ops.lock().expect("op table").contains_key(&code) {
                self.learn(p)?;
            }
            out.push(code);
        }
        out.sort();
        Ok(out)
    }

    fn source(&self, op: &Code) -> Result<Vec<Code>, PolyError> {
        Ok(self.info(op)?.source.clone())
    }

    fn target(&self, op: &Code) -> Result<Code, PolyError> {
        Ok(self.info(op)?.target.clone())
    }

    fn size(&self, op: &Code) -> Result<usize, PolyError> {
        Ok(self.info(op)?.size)
    }

    fn unit(&self, c: &Code) -> Result<Code, PolyError> {
        let (x, _) = self.object(c)?;
        let id = self.q.identity(&x)?;
        self.op_of_arrow(&id)
    }

    fn substitute(&self, op: &Code, inner: &[Code]) -> Result<(Code, Perm), PolyError> {
        crate::polymonad::check_slots(self, op, inner)?;
        let f = self.arrow(op)?;
        let gs = inner.iter().map(|g| self.arrow(g)).collect::<Result<Vec<_>, _>>()?;
        let composite = self.q.compose(&f, &gs)?;
        let (p, sigma) = self.q.planar_rep(&composite)?;
        let code = self.q.encode_arrow(&p)?;
        if !self.ops.lock().expect("op table").contains_key(&code) {
            self.learn(p)?;
        }
        Ok((code, sigma.inverse()))
    }
}

/// `ζ(Q)` together with the multicategory it came from.
#[derive(Clone)]
pub struct ZetaImage {
    pub source: Arc<dyn SymMulticat>,
    pub monad: Arc<ZetaMonad>,
}

pub fn zeta_obj(q: Arc<dyn SymMulticat>) -> Result<ZetaImage, PolyError> {
    Ok(ZetaImage {
        source: q.clone(),
        monad: Arc::new(ZetaMonad::new(q)?),
    })
}

/// `ζ(F)`: colours map by `F` on objects; an operation `p` maps to the planar
/// representative of `F(p)`, with the labels moved along the split-off twist.
pub fn zeta_mor(f: &SymMulticatMorphism) -> Result<MonadOpfunctor, PolyError> {
    let src = Arc::new(ZetaMonad::new(f.source.clone())?);
    let tgt = Arc::new(ZetaMonad::new(f.target.clone())?);
    let (f0, s0, t0) = (f.clone(), src.clone(), tgt.clone());
    let (f1, s1, t1) = (f.clone(), src.clone(), tgt.clone());
    Ok(MonadOpfunctor::new(
        src,
        tgt,
        Arc::new(move |c: &Code| {
            let (x, _) = s0.object(c)?;
            Ok(t0.multicat().encode_object(&f0.map_object(&x)?)?)
        }),
        Arc::new(move |op: &Code| {
            let p = s1.arrow(op)?;
            let image = f1.map_arrow(&p)?;
            let (planar, sigma) = t1.multicat().planar_rep(&image)?;
            let code = t1.multicat().encode_arrow(&planar)?;
            Ok((code, sigma.inverse().image().to_vec()))
        }),
    ))
}

/// Builds `g` from pasting trees of `ζ(Q)'` to planar arrows of `Q⁺` stage by
/// stage and checks that it is a size-preserving bijection onto the planar
/// arrows of size at most `bound`, that `f₂ ∘ g = d` at every stage, that the
/// stages are nested, that `g` carries substitution to composition, and that
/// the colour sets agree.
pub fn comparison_iso(q: Arc<dyn SymMulticat>, bound: usize) -> Report {
    let mut report = Report::new(&format!("ζ({})' ≅ ζ({}+)", q.name(), q.name()));
    if let Err(e) = comparison_cases(q, bound, &mut report) {
        report.check("construction").fail(e.to_string());
    }
    report
}

fn comparison_cases(q: Arc<dyn SymMulticat>, bound: usize, report: &mut Report) -> Result<(), PolyError> {
    let zeta = Arc::new(ZetaMonad::new(q.clone())?);
    let plus = slice(q.clone())?;
    let a = identity_fibers(zeta.as_ref(), bound)?;

    let mut g: BTreeMap<Code, Cell> = BTreeMap::new();
    let mut previous: BTreeSet<StageElement<Code>> = BTreeSet::new();
    for k in 0..=bound {
        let stage = nested_sequence_stage(zeta.as_ref(), &a, k, bound)?;
        let current: BTreeSet<StageElement<Code>> = stage.elements.elements().cloned().collect();
        report.check("nested").record(previous.is_subset(&current), || {
            format!("stage {} does not contain stage {}", k, k.saturating_sub(1))
        });
        for y in current.difference(&previous) {
            let cell = g_of(y, &zeta, &plus, &g)?;
            let code = y.code();
            let target = plus.encode_object(&plus.target(&cell)?)?;
            let dk = &stage.d[y];
            report
                .check("commuting")
                .record(&target == dk, || format!("f₂(g({})) = {} but d = {}", code, target, dk));
            let size_ok = plus.size(&cell)? == stage.sizes[y];
            report.check("sizes").record(size_ok, || format!("size of {}", code));
            g.insert(code, cell);
        }
        previous = current;
    }

    let images: BTreeSet<Code> = g.values().map(|c| plus.encode_arrow(c)).collect::<Result<_, _>>()?;
    let planar: BTreeSet<Code> = plus
        .planar_arrows(bound)?
        .iter()
        .map(|p| plus.encode_arrow(p))
        .collect::<Result<_, _>>()?;
    report
        .check("bijection")
        .record(images.len() == g.len() && images == planar, || {
            let missing: Vec<String> = planar.difference(&images).take(3).map(Code::to_string).collect();
            let extra: Vec<String> = images.difference(&planar).take(3).map(Code::to_string).collect();
            format!(
                "{} trees, {} arrows; missing {:?}, extra {:?}",
                g.len(),
                planar.len(),
                missing,
                extra
            )
        });

    let free = FreeOperad::new(zeta.clone());
    let trees: BTreeSet<Code> = free.operations(bound)?.into_iter().collect();
    let staged: BTreeSet<Code> = g.keys().cloned().collect();
    report.check("free-operad-agreement").record(trees == staged, || {
        format!(
            "{} trees from the free operad, {} from the stages",
            trees.len(),
            staged.len()
        )
    });

    let colors: BTreeSet<Code> = free.colors(bound)?.into_iter().collect();
    let objects: BTreeSet<Code> = plus
        .objects(bound)?
        .iter()
        .map(|x| plus.encode_object(x))
        .collect::<Result<_, _>>()?;
    report.check("base").record(colors == objects, || {
        format!("{} colours, {} objects", colors.len(), objects.len())
    });

    let ops: Vec<Code> = g.keys().cloned().collect();
    for y in &ops {
        let used = free.size(y)?;
        for zs in crate::polymonad::inner_tuples(&free, y, &ops, bound - used)? {
            let verdict = substitution_case(&free, &plus, &g, y, &zs);
            report
                .check("substitution")
                .record_result(verdict, || format!("{} with {:?}", y, zs));
        }
    }
    Ok(())
}

fn g_of(
    y: &StageElement<Code>,
    zeta: &ZetaMonad,
    plus: &crate::symcat::Slice,
    g: &BTreeMap<Code, Cell>,
) -> Result<Cell, PolyError> {
    let tree = match y {
        StageElement::Null(s) => PlanarTree::Leaf(zeta.object(s)?.0),
        StageElement::Composite { op, labels, .. } => {
            let mut kids = Vec::with_capacity(labels.len());
            for b in labels {
                kids.push(match b {
                    StageElement::Null(s) => PlanarTree::Leaf(zeta.object(s)?.0),
                    _ => match &g[&b.code()] {
                        Cell::Config(cfg) => cfg.tree.clone(),
                        other => return Err(PolyError::Underlying(format!("{} is not a configuration", other))),
                    },
                });
            }
            PlanarTree::node(zeta.arrow(op)?, kids)
        }
    };
    Ok(plus.planar_config(tree)?)
}

fn substitution_case(
    free: &FreeOperad,
    plus: &crate::symcat::Slice,
    g: &BTreeMap<Code, Cell>,
    y: &Code,
    zs: &[Code],
) -> Result<bool, PolyError> {
    let (t, pi) = free.substitute(y, zs)?;
    let gs: Vec<Cell> = zs.iter().map(|z| g[z].clone()).collect();
    let composite = plus.compose(&g[y], &gs)?;
    let (p, sigma) = plus.planar_rep(&composite)?;
    let gt = g.get(&t).ok_or_else(|| PolyError::UnknownOperation(t.to_string()))?;
    Ok(&p == gt && sigma.inverse() == pi)
}
