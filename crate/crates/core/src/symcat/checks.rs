//! Bounded verification of the symmetric multicategory axioms, evaluation of
//! configurations, and combing soundness.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{comb, Cell, Config, Slice, SymMulticat, SymcatError, TwistedTree};
use crate::kernel::Perm;
use crate::report::{CheckResult, Report};

/// The arrow a configuration stands for: its tree composed bottom-up, then
/// twisted by `ρ`.
pub fn eval_configuration(q: &dyn SymMulticat, c: &Config) -> Result<Cell, SymcatError> {
    c.tree.check_well_formed(q)?;
    if c.rho.degree() != c.tree.leaf_count() {
        return Err(SymcatError::TwistDegree {
            expected: c.tree.leaf_count(),
            found: c.rho.degree(),
        });
    }
    q.act(&c.tree.evaluate(q)?, &c.rho)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheckConfig {
    /// Every tuple of planar arrows with total size up to this bound.
    pub exhaustive_size: usize,
    /// Total size bound for random trials.
    pub random_size: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for AxiomCheckConfig {
    fn default() -> Self {
        AxiomCheckConfig {
            exhaustive_size: 4,
            random_size: 6,
            trials: 500,
            seed: 0,
        }
    }
}

/// Largest arity whose whole symmetric group is walked exhaustively.
const FULL_GROUP: usize = 4;

type ByTarget = BTreeMap<Cell, Vec<(Cell, usize)>>;

fn by_target(q: &dyn SymMulticat, arrows: &[Cell]) -> Result<ByTarget, SymcatError> {
    let mut m: ByTarget = BTreeMap::new();
    for f in arrows {
        m.entry(q.target(f)?).or_default().push((f.clone(), q.size(f)?));
    }
    Ok(m)
}

/// All tuples `(g_1, …, g_k)` with `t(g_i) = colors[i]` and total size at
/// most `budget`, paired with the size they use.
fn tuples(colors: &[Cell], budget: usize, arrows: &ByTarget) -> Vec<(Vec<Cell>, usize)> {
    let mut partial = vec![(Vec::new(), 0usize)];
    for c in colors {
        let mut next = Vec::new();
        for (gs, used) in &partial {
            for (g, sz) in arrows.get(c).map(Vec::as_slice).unwrap_or(&[]) {
                if used + sz <= budget {
                    let mut v = gs.clone();
                    v.push(g.clone());
                    next.push((v, used + sz));
                }
            }
        }
        partial = next;
    }
    partial
}

fn perms_for(degree: usize, rng: &mut ChaCha8Rng) -> Vec<Perm> {
    if degree <= FULL_GROUP {
        Perm::all(degree)
    } else {
        let mut v = vec![Perm::identity(degree)];
        v.extend((0..6).map(|_| Perm::random(degree, rng)));
        v
    }
}

fn show(xs: &[Cell]) -> String {
    format!("({})", xs.iter().map(Cell::to_string).collect::<Vec<_>>().join(", "))
}

struct Checker<'a> {
    q: &'a dyn SymMulticat,
    report: Report,
}

impl Checker<'_> {
    fn sources_concat(&self, gs: &[Cell]) -> Result<Vec<Cell>, SymcatError> {
        let mut v = Vec::new();
        for g in gs {
            v.extend(self.q.source(g)?);
        }
        Ok(v)
    }

    fn action(&mut self, f: &Cell, sigma: &Perm, sigma2: &Perm) {
        let q = self.q;
        let r = (|| {
            let lhs = q.act(&q.act(f, sigma)?, sigma2)?;
            let rhs = q.act(f, &sigma.compose(sigma2)?)?;
            Ok::<_, SymcatError>(lhs == rhs)
        })();
        self.report.check("action").record_result(r, || {
            format!("({}·{})·{} ≠ {}·({}{})", f, sigma, sigma2, f, sigma, sigma2)
        });
    }

    fn free_action(&mut self, f: &Cell, sigma: &Perm) {
        let q = self.q;
        let r = (|| {
            let (p, s) = q.planar_rep(f)?;
            let g = q.act(f, sigma)?;
            let (p2, s2) = q.planar_rep(&g)?;
            let fixed_only_by_identity = g != *f || sigma.is_identity();
            let sources = q.source(&g)? == sigma.permute(&q.source(f)?);
            let unique = p2 == p && s2 == s.compose(sigma)? && q.act(&p, &s)? == *f;
            let grading = q.size(&g)? == q.size(f)?;
            Ok::<_, SymcatError>(fixed_only_by_identity && sources && unique && grading)
        })();
        self.report
            .check("free-action")
            .record_result(r, || format!("{} acted on by {}", f, sigma));
    }

    fn unit(&mut self, f: &Cell) {
        let q = self.q;
        let r = (|| {
            let ids = q
                .source(f)?
                .iter()
                .map(|s| q.identity(s))
                .collect::<Result<Vec<_>, _>>()?;
            let right = q.compose(f, &ids)? == *f;
            let left = q.compose(&q.identity(&q.target(f)?)?, std::slice::from_ref(f))? == *f;
            Ok::<_, SymcatError>(right && left)
        })();
        self.report
            .check("unit")
            .record_result(r, || format!("identities around {}", f));
    }

    fn typing(&mut self, f: &Cell, gs: &[Cell]) -> Option<Cell> {
        let q = self.q;
        let r = (|| {
            let c = q.compose(f, gs)?;
            let ok = q.source(&c)? == self.sources_concat(gs)? && q.target(&c)? == q.target(f)?;
            Ok::<_, SymcatError>((c, ok))
        })();
        match r {
            Ok((c, ok)) => {
                self.report
                    .check("typing")
                    .record(ok, || format!("{} ∘ {} has the wrong source or target", f, show(gs)));
                Some(c)
            }
            Err(e) => {
                self.report
                    .check("typing")
                    .record(false, || format!("{} ∘ {}: {}", f, show(gs), e));
                None
            }
        }
    }

    fn block(&mut self, f: &Cell, gs: &[Cell], fg: &Cell, sigma: &Perm) {
        let q = self.q;
        let r = (|| {
            let arities = gs.iter().map(|g| q.arity(g)).collect::<Result<Vec<_>, _>>()?;
            let lhs = q.compose(&q.act(f, sigma)?, &sigma.permute(gs))?;
            let rhs = q.act(fg, &sigma.block(&arities)?)?;
            Ok::<_, SymcatError>(lhs == rhs)
        })();
        self.report
            .check("equivariance-block")
            .record_result(r, || format!("{}·{} against {}", f, sigma, show(gs)));
    }

    fn juxtapose(&mut self, f: &Cell, gs: &[Cell], fg: &Cell, sigmas: &[Perm]) {
        let q = self.q;
        let r = (|| {
            let twisted = gs
                .iter()
                .zip(sigmas)
                .map(|(g, s)| q.act(g, s))
                .collect::<Result<Vec<_>, _>>()?;
            let lhs = q.compose(f, &twisted)?;
            let rhs = q.act(fg, &Perm::juxtapose(sigmas))?;
            Ok::<_, SymcatError>(lhs == rhs)
        })();
        self.report.check("equivariance-juxtapose").record_result(r, || {
            format!(
                "{} ∘ {} twisted by {}",
                f,
                show(gs),
                sigmas.iter().map(Perm::to_string).collect::<Vec<_>>().join("⊕")
            )
        });
    }

    fn associativity(&mut self, f: &Cell, gs: &[Cell], fg: &Cell, hs: &[Vec<Cell>]) {
        let q = self.q;
        let r = (|| {
            let flat: Vec<Cell> = hs.iter().flatten().cloned().collect();
            let lhs = q.compose(fg, &flat)?;
            let inner = gs
                .iter()
                .zip(hs)
                .map(|(g, h)| q.compose(g, h))
                .collect::<Result<Vec<_>, _>>()?;
            let rhs = q.compose(f, &inner)?;
            Ok::<_, SymcatError>(lhs == rhs)
        })();
        self.report.check("associativity").record_result(r, || {
            format!(
                "{} ∘ {} ∘ {}",
                f,
                show(gs),
                hs.iter().map(|h| show(h)).collect::<Vec<_>>().join(" ")
            )
        });
    }

    /// Splits a flat tuple into one block per arrow of `gs`.
    fn split(&self, gs: &[Cell], flat: Vec<Cell>) -> Result<Vec<Vec<Cell>>, SymcatError> {
        let mut it = flat.into_iter();
        gs.iter()
            .map(|g| Ok(it.by_ref().take(self.q.arity(g)?).collect()))
            .collect()
    }
}

/// Checks the axioms of a symmetric multicategory: units, associativity, the
/// group action, both equivariance laws, and freeness of the action with the
/// planar factorisation. Exhaustive over planar arrows of small total size,
/// then seeded random trials with twisted arrows.
pub fn check_axioms(q: &dyn SymMulticat, cfg: &AxiomCheckConfig) -> Report {
    let mut ck = Checker {
        q,
        report: Report::new(&format!("axioms of {}", q.name())),
    };
    for name in [
        "unit",
        "associativity",
        "action",
        "equivariance-block",
        "equivariance-juxtapose",
        "free-action",
        "typing",
    ] {
        ck.report.check(name);
    }
    if let Some((f, s)) = q.free_action_witness() {
        ck.report.check("free-action").fail(format!("{} is fixed by {}", f, s));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    if let Err(e) = exhaustive(&mut ck, cfg.exhaustive_size, &mut rng) {
        ck.report.check("enumeration").fail(e.to_string());
    }
    if let Err(e) = random(&mut ck, cfg, &mut rng) {
        ck.report.check("enumeration").fail(e.to_string());
    }
    ck.report
}

fn exhaustive(ck: &mut Checker<'_>, bound: usize, rng: &mut ChaCha8Rng) -> Result<(), SymcatError> {
    let q = ck.q;
    let arrows = q.planar_arrows(bound)?;
    let index = by_target(q, &arrows)?;
    for f in &arrows {
        let k = q.arity(f)?;
        let group = perms_for(k, rng);
        for s in &group {
            ck.free_action(f, s);
            for s2 in &group {
                ck.action(f, s, s2);
            }
        }
        ck.unit(f);
        let fsize = q.size(f)?;
        let src = q.source(f)?;
        for (gs, used) in tuples(&src, bound - fsize, &index) {
            let Some(fg) = ck.typing(f, &gs) else { continue };
            for s in &group {
                ck.block(f, &gs, &fg, s);
            }
            let groups = gs
                .iter()
                .map(|g| Ok(perms_for(q.arity(g)?, rng)))
                .collect::<Result<Vec<_>, SymcatError>>()?;
            for sigmas in product_capped(&groups, 64, rng) {
                ck.juxtapose(f, &gs, &fg, &sigmas);
            }
            let leaves = ck.sources_concat(&gs)?;
            for (flat, _) in tuples(&leaves, bound - fsize - used, &index) {
                let hs = ck.split(&gs, flat)?;
                ck.associativity(f, &gs, &fg, &hs);
            }
        }
    }
    Ok(())
}

/// The cartesian product of the groups, or a seeded sample of `cap` tuples
/// (always including the all-identity tuple) when it is larger.
fn product_capped(groups: &[Vec<Perm>], cap: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Perm>> {
    let total: usize = groups.iter().map(Vec::len).product();
    if total <= cap {
        let mut out = vec![Vec::new()];
        for g in groups {
            out = out
                .into_iter()
                .flat_map(|t| {
                    g.iter().map(move |s| {
                        let mut t = t.clone();
                        t.push(s.clone());
                        t
                    })
                })
                .collect();
        }
        return out;
    }
    let mut out = vec![groups.iter().map(|g| g[0].clone()).collect()];
    for _ in 1..cap {
        out.push(
            groups
                .iter()
                .map(|g| g.choose(rng).expect("groups are nonempty").clone())
                .collect(),
        );
    }
    out
}

/// Draws a random (possibly twisted) arrow with target `color` of size at
/// most `budget` from `index`.
fn draw(
    q: &dyn SymMulticat,
    index: &ByTarget,
    color: &Cell,
    budget: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Option<(Cell, usize)>, SymcatError> {
    let fits: Vec<&(Cell, usize)> = index
        .get(color)
        .map(|v| v.iter().filter(|(_, s)| *s <= budget).collect())
        .unwrap_or_default();
    let Some((p, sz)) = fits.choose(rng) else {
        return Ok(None);
    };
    let sigma = Perm::random(q.arity(p)?, rng);
    Ok(Some((q.act(p, &sigma)?, *sz)))
}

/// A random arrow of `q` of size at most `max_size`, twisted by a random
/// permutation.
pub fn random_arrow(q: &dyn SymMulticat, max_size: usize, rng: &mut impl Rng) -> Result<Option<Cell>, SymcatError> {
    let arrows = q.planar_arrows(max_size)?;
    let Some(p) = arrows.choose(rng) else {
        return Ok(None);
    };
    let sigma = Perm::random(q.arity(p)?, rng);
    Ok(Some(q.act(p, &sigma)?))
}

fn random(ck: &mut Checker<'_>, cfg: &AxiomCheckConfig, rng: &mut ChaCha8Rng) -> Result<(), SymcatError> {
    let q = ck.q;
    let bound = cfg.random_size;
    let arrows = q.planar_arrows(bound)?;
    if arrows.is_empty() {
        return Ok(());
    }
    let index = by_target(q, &arrows)?;
    let mut done = 0;
    let mut attempts = 0;
    while done < cfg.trials && attempts < cfg.trials * 50 {
        attempts += 1;
        let p = arrows.choose(rng).expect("nonempty");
        let f = q.act(p, &Perm::random(q.arity(p)?, rng))?;
        let mut used = q.size(&f)?;
        let mut gs = Vec::new();
        let mut ok = true;
        for s in q.source(&f)? {
            match draw(q, &index, &s, bound - used, rng)? {
                Some((g, sz)) => {
                    used += sz;
                    gs.push(g);
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let mut flat = Vec::new();
        for s in ck.sources_concat(&gs)? {
            match draw(q, &index, &s, bound - used, rng)? {
                Some((h, sz)) => {
                    used += sz;
                    flat.push(h);
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        done += 1;
        let k = gs.len();
        let sigma = Perm::random(k, rng);
        let sigma2 = Perm::random(k, rng);
        ck.action(&f, &sigma, &sigma2);
        ck.free_action(&f, &sigma);
        ck.unit(&f);
        let Some(fg) = ck.typing(&f, &gs) else { continue };
        ck.block(&f, &gs, &fg, &sigma);
        let sigmas = gs
            .iter()
            .map(|g| Ok(Perm::random(q.arity(g)?, rng)))
            .collect::<Result<Vec<_>, SymcatError>>()?;
        ck.juxtapose(&f, &gs, &fg, &sigmas);
        let hs = ck.split(&gs, flat)?;
        ck.associativity(&f, &gs, &fg, &hs);
    }
    ck.report.check("random-trials").record(done == cfg.trials, || {
        format!("only {} of {} random trials could be drawn", done, cfg.trials)
    });
    Ok(())
}

/// Every planar arrow of the slice evaluates, in the base, to its declared
/// target.
pub fn check_slice_targets(s: &Slice, max_size: usize) -> CheckResult {
    let mut c = CheckResult::new("slice-targets");
    match s.planar_arrows(max_size) {
        Ok(arrows) => {
            for a in arrows {
                let r = match &a {
                    Cell::Config(cfg) => eval_configuration(s.base().as_ref(), cfg).map(|e| e == cfg.target),
                    _ => Ok(false),
                };
                c.record_result(r, || format!("{}", a));
            }
        }
        Err(e) => c.fail(e.to_string()),
    }
    c
}

/// A random tree of arrows of `q` with at most `max_nodes` nodes and a random
/// twist at every node. Labels are drawn among twisted arrows of size at most
/// `label_size`.
pub fn random_twisted_tree(
    q: &dyn SymMulticat,
    max_nodes: usize,
    label_size: usize,
    rng: &mut impl Rng,
) -> Result<TwistedTree, SymcatError> {
    let arrows = q.planar_arrows(label_size)?;
    let Some(root) = arrows.choose(rng) else {
        return Err(SymcatError::IllFormed(format!("{} has no arrows", q.name())));
    };
    let mut index: BTreeMap<Cell, Vec<Cell>> = BTreeMap::new();
    for a in &arrows {
        index.entry(q.target(a)?).or_default().push(a.clone());
    }
    let mut budget = max_nodes;
    let mut tag = 0;
    grow(q, &index, &q.target(root)?, &mut budget, &mut tag, true, rng)
}

fn grow(
    q: &dyn SymMulticat,
    index: &BTreeMap<Cell, Vec<Cell>>,
    color: &Cell,
    budget: &mut usize,
    tag: &mut usize,
    force: bool,
    rng: &mut impl Rng,
) -> Result<TwistedTree, SymcatError> {
    let candidates = index.get(color).map(Vec::as_slice).unwrap_or(&[]);
    if *budget == 0 || candidates.is_empty() || (!force && rng.gen_bool(0.4)) {
        return Ok(TwistedTree::Leaf(color.clone()));
    }
    *budget -= 1;
    let p = candidates.choose(rng).expect("nonempty");
    let label = q.act(p, &Perm::random(q.arity(p)?, rng))?;
    let my_tag = *tag;
    *tag += 1;
    let mut children = Vec::new();
    for s in q.source(&label)? {
        children.push(grow(q, index, &s, budget, tag, false, rng)?);
    }
    let degree = children.iter().map(TwistedTree::leaf_count).sum();
    Ok(TwistedTree::Node {
        label,
        twist: Perm::random(degree, rng),
        tag: my_tag,
        children,
    })
}

/// Combing leaves the evaluation unchanged, on `trials` random twisted trees.
pub fn check_comb(q: &dyn SymMulticat, trials: usize, max_nodes: usize, label_size: usize, seed: u64) -> CheckResult {
    let mut c = CheckResult::new(&format!("comb soundness in {}", q.name()));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let t = match random_twisted_tree(q, max_nodes, label_size, &mut rng) {
            Ok(t) => t,
            Err(e) => {
                c.fail(e.to_string());
                break;
            }
        };
        let r = (|| {
            let direct = t.evaluate(q)?;
            let combed = comb(&t)?;
            let cfg = Config {
                target: direct.clone(),
                rho: combed.twist,
                tau: Perm::identity(combed.tree.node_count()),
                tree: combed.tree,
            };
            Ok::<_, SymcatError>(eval_configuration(q, &cfg)? == direct)
        })();
        c.record_result(r, || format!("{:?}", t));
    }
    c
}
