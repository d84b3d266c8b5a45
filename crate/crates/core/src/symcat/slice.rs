//! The slice `Q⁺`: objects are arrows of `Q`, arrows are configurations for
//! composing them, stored as combed trees `(T, ρ, τ)`.
//!
//! `T` is a planar tree whose nodes carry arrows of `Q`, `ρ` permutes its
//! leaves and `τ` sends the node in depth-first position `k` to its position
//! in the source list. The configuration evaluates to `eval(T) · ρ`, which is
//! its target.
//!
//! In the skeletal slice the labels and targets are planar arrows, so for a
//! fixed tree the twist `ρ` is forced, and the planar arrows are exactly the
//! configurations with `τ = ι`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use super::{check_inputs, comb, Cell, DisplayTree, PlanarTree, SymMulticat, SymcatError, TwistedTree};
use crate::kernel::{Code, Perm};

/// An arrow of a slice.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Config {
    pub tree: PlanarTree,
    pub rho: Perm,
    pub tau: Perm,
    pub target: Cell,
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", DisplayTree(&self.tree))?;
        if !self.tau.is_identity() {
            write!(f, "·{}", self.tau.inverse())?;
        }
        Ok(())
    }
}

/// `Q⁺`, either skeletal (planar labels, forced twists) or full.
pub struct Slice {
    base: Arc<dyn SymMulticat>,
    skeletal: bool,
    cache: Mutex<HashMap<usize, Arc<Vec<Cell>>>>,
}

/// The skeletal slice. Refused when `q` is not freely symmetric.
pub fn slice(q: Arc<dyn SymMulticat>) -> Result<Slice, SymcatError> {
    Slice::new(q, true)
}

/// The slice with every arrow of `q` as an object, isomorphic objects kept
/// apart.
pub fn slice_full(q: Arc<dyn SymMulticat>) -> Result<Slice, SymcatError> {
    Slice::new(q, false)
}

/// `q` sliced `k` times.
pub fn iterated_slice(q: Arc<dyn SymMulticat>, k: usize) -> Result<Arc<dyn SymMulticat>, SymcatError> {
    let mut cur = q;
    for _ in 0..k {
        cur = Arc::new(slice(cur)?);
    }
    Ok(cur)
}

type Trees = Vec<(PlanarTree, usize)>;

impl Slice {
    fn new(base: Arc<dyn SymMulticat>, skeletal: bool) -> Result<Slice, SymcatError> {
        if let Some((f, perm)) = base.free_action_witness() {
            return Err(SymcatError::NotTidy {
                arrow: f.to_string(),
                perm: perm.to_string(),
            });
        }
        Ok(Slice {
            base,
            skeletal,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn base(&self) -> &Arc<dyn SymMulticat> {
        &self.base
    }

    pub fn is_skeletal(&self) -> bool {
        self.skeletal
    }

    fn config<'a>(&self, c: &'a Cell) -> Result<&'a Config, SymcatError> {
        match c {
            Cell::Config(cfg) => Ok(cfg),
            _ => Err(SymcatError::UnknownArrow(c.to_string())),
        }
    }

    fn tree_size(&self, t: &PlanarTree) -> Result<usize, SymcatError> {
        match t {
            PlanarTree::Leaf(x) => self.base.object_size(x),
            PlanarTree::Node(l, ch) => {
                let mut n = 1 + self.base.size(l)?;
                for c in ch.iter() {
                    n += self.tree_size(c)?;
                }
                Ok(n)
            }
        }
    }

    /// The planar arrow on `tree`; its twist and target are determined.
    pub fn planar_config(&self, tree: PlanarTree) -> Result<Cell, SymcatError> {
        tree.check_well_formed(self.base.as_ref())?;
        Ok(Cell::Config(Arc::new(self.forced(tree)?)))
    }

    /// The planar configuration on `tree` whose target is planar.
    fn forced(&self, tree: PlanarTree) -> Result<Config, SymcatError> {
        let (target, sigma) = self.base.planar_rep(&tree.evaluate(self.base.as_ref())?)?;
        let nodes = tree.node_count();
        Ok(Config {
            tree,
            rho: sigma.inverse(),
            tau: Perm::identity(nodes),
            target,
        })
    }

    /// Trees with root colour `color` and size at most `budget`, zero-node
    /// trees included.
    fn trees(
        &self,
        color: &Cell,
        budget: usize,
        labels: &BTreeMap<Cell, Vec<(Cell, usize)>>,
        memo: &mut BTreeMap<(Cell, usize), Arc<Trees>>,
    ) -> Result<Arc<Trees>, SymcatError> {
        if let Some(v) = memo.get(&(color.clone(), budget)) {
            return Ok(v.clone());
        }
        let mut out = Vec::new();
        let leaf = self.base.object_size(color)?;
        if leaf <= budget {
            out.push((PlanarTree::Leaf(color.clone()), leaf));
        }
        for (l, lsize) in labels.get(color).map(Vec::as_slice).unwrap_or(&[]) {
            if 1 + lsize > budget {
                continue;
            }
            let mut partial: Vec<(Vec<PlanarTree>, usize)> = vec![(Vec::new(), 1 + lsize)];
            for s in self.base.source(l)? {
                let mut next = Vec::new();
                for (kids, used) in &partial {
                    for (t, sz) in self.trees(&s, budget - used, labels, memo)?.iter() {
                        let mut k = kids.clone();
                        k.push(t.clone());
                        next.push((k, used + sz));
                    }
                }
                partial = next;
            }
            out.extend(
                partial
                    .into_iter()
                    .map(|(kids, used)| (PlanarTree::node(l.clone(), kids), used)),
            );
        }
        let out = Arc::new(out);
        memo.insert((color.clone(), budget), out.clone());
        Ok(out)
    }

    fn enumerate(&self, max_size: usize) -> Result<Vec<Cell>, SymcatError> {
        let mut labels: BTreeMap<Cell, Vec<(Cell, usize)>> = BTreeMap::new();
        for l in self.objects(max_size)? {
            let t = self.base.target(&l)?;
            let sz = self.base.size(&l)?;
            labels.entry(t).or_default().push((l, sz));
        }
        let mut memo = BTreeMap::new();
        let mut trees = Vec::new();
        for color in self.base.objects(max_size)? {
            for (t, _) in self.trees(&color, max_size, &labels, &mut memo)?.iter() {
                trees.push(t.clone());
            }
        }
        let base = self.base.as_ref();
        let skeletal = self.skeletal;
        let built: Vec<Vec<Cell>> = trees
            .into_par_iter()
            .map(|tree| -> Result<Vec<Cell>, SymcatError> {
                if skeletal {
                    return Ok(vec![Cell::Config(Arc::new(self.forced(tree)?))]);
                }
                let eval = tree.evaluate(base)?;
                let nodes = tree.node_count();
                Perm::all(tree.leaf_count())
                    .into_iter()
                    .map(|rho| {
                        Ok(Cell::Config(Arc::new(Config {
                            target: base.act(&eval, &rho)?,
                            tree: tree.clone(),
                            rho,
                            tau: Perm::identity(nodes),
                        })))
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        let mut out: Vec<Cell> = built.into_iter().flatten().collect();
        out.sort();
        Ok(out)
    }

    /// Checks that `cfg` is an arrow of this slice.
    pub fn validate(&self, cfg: &Config) -> Result<(), SymcatError> {
        let ill = |m: String| Err(SymcatError::IllFormed(m));
        cfg.tree.check_well_formed(self.base.as_ref())?;
        if cfg.tau.degree() != cfg.tree.node_count() {
            return ill(format!(
                "numbering has degree {}, tree has {} nodes",
                cfg.tau.degree(),
                cfg.tree.node_count()
            ));
        }
        if cfg.rho.degree() != cfg.tree.leaf_count() {
            return ill(format!(
                "twist has degree {}, tree has {} leaves",
                cfg.rho.degree(),
                cfg.tree.leaf_count()
            ));
        }
        let eval = self.base.act(&cfg.tree.evaluate(self.base.as_ref())?, &cfg.rho)?;
        if eval != cfg.target {
            return ill(format!("evaluates to {} but declares target {}", eval, cfg.target));
        }
        if self.skeletal {
            for l in cfg.tree.labels() {
                if !self.base.planar_rep(l)?.1.is_identity() {
                    return ill(format!("label {} is not planar", l));
                }
            }
            if !self.base.planar_rep(&cfg.target)?.1.is_identity() {
                return ill(format!("target {} is not planar", cfg.target));
            }
        }
        Ok(())
    }

    fn decode_tree(&self, c: &Code) -> Result<PlanarTree, SymcatError> {
        match c {
            Code::Unit(x) => Ok(PlanarTree::Leaf(self.base.decode_object(x)?)),
            Code::Node(l, ch) => {
                let label = self.base.decode_arrow(l)?;
                let kids = ch.iter().map(|k| self.decode_tree(k)).collect::<Result<Vec<_>, _>>()?;
                Ok(PlanarTree::node(label, kids))
            }
            Code::Atom(_) => Err(SymcatError::UnknownArrow(c.to_string())),
        }
    }

    /// Replaces the node in depth-first position `*dfs` and below by the trees
    /// of the configurations `ds`, recording source positions as tags.
    fn substitute(
        &self,
        t: &PlanarTree,
        tau: &Perm,
        ds: &[&Config],
        offsets: &[usize],
        dfs: &mut usize,
    ) -> Result<TwistedTree, SymcatError> {
        match t {
            PlanarTree::Leaf(x) => Ok(TwistedTree::Leaf(x.clone())),
            PlanarTree::Node(_, ch) => {
                let k = *dfs;
                *dfs += 1;
                let i = tau.apply(k);
                let kids = ch
                    .iter()
                    .map(|c| self.substitute(c, tau, ds, offsets, dfs))
                    .collect::<Result<Vec<_>, _>>()?;
                let d = ds[i];
                // The label is eval(T_i)·ρ_i, so leaf l of T_i takes the
                // subtree on slot ρ_i⁻¹(l), and the graft is twisted back by the
                // block permutation of ρ_i.
                let g = d.rho.inverse().permute(&kids);
                let counts: Vec<usize> = g.iter().map(TwistedTree::leaf_count).collect();
                let twist = d.rho.block(&counts)?;
                let mut leaves = g.into_iter();
                let mut node = 0;
                let grafted = graft(&d.tree, &d.tau, offsets[i], &mut leaves, &mut node);
                Ok(match grafted {
                    TwistedTree::Node {
                        label, tag, children, ..
                    } => TwistedTree::Node {
                        label,
                        twist,
                        tag,
                        children,
                    },
                    leaf => leaf,
                })
            }
        }
    }
}

fn graft(
    t: &PlanarTree,
    tau: &Perm,
    offset: usize,
    leaves: &mut impl Iterator<Item = TwistedTree>,
    node: &mut usize,
) -> TwistedTree {
    match t {
        PlanarTree::Leaf(_) => leaves.next().expect("one subtree per leaf"),
        PlanarTree::Node(l, ch) => {
            let tag = offset + tau.apply(*node);
            *node += 1;
            let children: Vec<TwistedTree> = ch.iter().map(|c| graft(c, tau, offset, leaves, node)).collect();
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

impl SymMulticat for Slice {
    fn name(&self) -> String {
        format!("{}+", self.base.name())
    }

    fn objects(&self, max_size: usize) -> Result<Vec<Cell>, SymcatError> {
        let planar = self.base.planar_arrows(max_size)?;
        if self.skeletal {
            return Ok(planar);
        }
        let mut out = Vec::new();
        for p in planar {
            for sigma in Perm::all(self.base.arity(&p)?) {
                out.push(self.base.act(&p, &sigma)?);
            }
        }
        out.sort();
        Ok(out)
    }

    fn object_size(&self, x: &Cell) -> Result<usize, SymcatError> {
        self.base.size(x)
    }

    fn planar_arrows(&self, max_size: usize) -> Result<Vec<Cell>, SymcatError> {
        if let Some(v) = self.cache.lock().expect("cache lock").get(&max_size) {
            return Ok(v.as_ref().clone());
        }
        let v = Arc::new(self.enumerate(max_size)?);
        self.cache.lock().expect("cache lock").insert(max_size, v.clone());
        Ok(v.as_ref().clone())
    }

    fn source(&self, f: &Cell) -> Result<Vec<Cell>, SymcatError> {
        let cfg = self.config(f)?;
        let labels: Vec<Cell> = cfg.tree.labels().into_iter().cloned().collect();
        Ok(cfg.tau.inverse().permute(&labels))
    }

    fn target(&self, f: &Cell) -> Result<Cell, SymcatError> {
        Ok(self.config(f)?.target.clone())
    }

    fn size(&self, f: &Cell) -> Result<usize, SymcatError> {
        self.tree_size(&self.config(f)?.tree)
    }

    fn identity(&self, x: &Cell) -> Result<Cell, SymcatError> {
        let leaves = self.base.source(x)?;
        let n = leaves.len();
        Ok(Cell::Config(Arc::new(Config {
            tree: PlanarTree::node(x.clone(), leaves.into_iter().map(PlanarTree::Leaf).collect()),
            rho: Perm::identity(n),
            tau: Perm::identity(1),
            target: x.clone(),
        })))
    }

    fn compose(&self, f: &Cell, gs: &[Cell]) -> Result<Cell, SymcatError> {
        let cfg = self.config(f)?;
        let src = self.source(f)?;
        check_inputs(self, f, &src, gs)?;
        let ds = gs.iter().map(|g| self.config(g)).collect::<Result<Vec<_>, _>>()?;
        let mut offsets = Vec::with_capacity(ds.len());
        let mut acc = 0;
        for d in &ds {
            offsets.push(acc);
            acc += d.tau.degree();
        }
        let mut dfs = 0;
        let twisted = self.substitute(&cfg.tree, &cfg.tau, &ds, &offsets, &mut dfs)?;
        let combed = comb(&twisted)?;
        Ok(Cell::Config(Arc::new(Config {
            tree: combed.tree,
            rho: combed.twist.compose(&cfg.rho)?,
            tau: Perm::from_image(combed.tags)?,
            target: cfg.target.clone(),
        })))
    }

    fn act(&self, f: &Cell, sigma: &Perm) -> Result<Cell, SymcatError> {
        let cfg = self.config(f)?;
        let tau = sigma.inverse().compose(&cfg.tau)?;
        Ok(Cell::Config(Arc::new(Config { tau, ..cfg.clone() })))
    }

    fn planar_rep(&self, f: &Cell) -> Result<(Cell, Perm), SymcatError> {
        let cfg = self.config(f)?;
        let sigma = cfg.tau.inverse();
        let planar = Config {
            tau: Perm::identity(cfg.tau.degree()),
            ..cfg.clone()
        };
        Ok((Cell::Config(Arc::new(planar)), sigma))
    }

    fn encode_object(&self, x: &Cell) -> Result<Code, SymcatError> {
        self.base.encode_arrow(x)
    }

    fn encode_arrow(&self, f: &Cell) -> Result<Code, SymcatError> {
        let cfg = self.config(f)?;
        if !cfg.tau.is_identity() {
            return Err(SymcatError::IllFormed(format!("{} is not planar", f)));
        }
        if !self.skeletal {
            for l in cfg.tree.labels() {
                self.base.encode_arrow(l)?;
            }
            self.base.encode_arrow(&cfg.target)?;
        }
        cfg.tree.encode(self.base.as_ref())
    }

    fn decode_object(&self, c: &Code) -> Result<Cell, SymcatError> {
        self.base.decode_arrow(c)
    }

    fn decode_arrow(&self, c: &Code) -> Result<Cell, SymcatError> {
        let tree = self.decode_tree(c)?;
        tree.check_well_formed(self.base.as_ref())?;
        Ok(Cell::Config(Arc::new(self.forced(tree)?)))
    }

    fn canonical_object(&self, x: &Cell) -> Result<(Cell, Perm), SymcatError> {
        self.base.planar_rep(x)
    }
}

/// The full subcategory on canonical objects of a structure whose objects may
/// be isomorphic without being equal.
pub struct Skeleton {
    inner: Arc<dyn SymMulticat>,
}

/// Restricts to canonical objects. Refused when the action is not free.
pub fn skeletalize(q: Arc<dyn SymMulticat>) -> Result<Skeleton, SymcatError> {
    if let Some((f, perm)) = q.free_action_witness() {
        return Err(SymcatError::NotTidy {
            arrow: f.to_string(),
            perm: perm.to_string(),
        });
    }
    Ok(Skeleton { inner: q })
}

impl Skeleton {
    fn is_canonical(&self, x: &Cell) -> Result<bool, SymcatError> {
        Ok(&self.inner.canonical_object(x)?.0 == x)
    }
}

impl SymMulticat for Skeleton {
    fn name(&self) -> String {
        self.inner.name()
    }

    fn objects(&self, max_size: usize) -> Result<Vec<Cell>, SymcatError> {
        let mut out = Vec::new();
        for x in self.inner.objects(max_size)? {
            if self.is_canonical(&x)? {
                out.push(x);
            }
        }
        Ok(out)
    }

    fn object_size(&self, x: &Cell) -> Result<usize, SymcatError> {
        self.inner.object_size(x)
    }

    fn planar_arrows(&self, max_size: usize) -> Result<Vec<Cell>, SymcatError> {
        let mut out = Vec::new();
        'arrows: for f in self.inner.planar_arrows(max_size)? {
            if !self.is_canonical(&self.inner.target(&f)?)? {
                continue;
            }
            for s in self.inner.source(&f)? {
                if !self.is_canonical(&s)? {
                    continue 'arrows;
                }
            }
            out.push(f);
        }
        Ok(out)
    }

    fn source(&self, f: &Cell) -> Result<Vec<Cell>, SymcatError> {
        self.inner.source(f)
    }

    fn target(&self, f: &Cell) -> Result<Cell, SymcatError> {
        self.inner.target(f)
    }

    fn size(&self, f: &Cell) -> Result<usize, SymcatError> {
        self.inner.size(f)
    }

    fn identity(&self, x: &Cell) -> Result<Cell, SymcatError> {
        self.inner.identity(x)
    }

    fn compose(&self, f: &Cell, gs: &[Cell]) -> Result<Cell, SymcatError> {
        self.inner.compose(f, gs)
    }

    fn act(&self, f: &Cell, sigma: &Perm) -> Result<Cell, SymcatError> {
        self.inner.act(f, sigma)
    }

    fn planar_rep(&self, f: &Cell) -> Result<(Cell, Perm), SymcatError> {
        self.inner.planar_rep(f)
    }

    fn encode_object(&self, x: &Cell) -> Result<Code, SymcatError> {
        self.inner.encode_object(x)
    }

    fn encode_arrow(&self, f: &Cell) -> Result<Code, SymcatError> {
        self.inner.encode_arrow(f)
    }

    fn decode_object(&self, c: &Code) -> Result<Cell, SymcatError> {
        self.inner.decode_object(c)
    }

    fn decode_arrow(&self, c: &Code) -> Result<Cell, SymcatError> {
        self.inner.decode_arrow(c)
    }
}
