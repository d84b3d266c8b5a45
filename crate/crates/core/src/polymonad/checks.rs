//! Bounded verification of the monad laws, cartesianness, and the nested
//! colimit property.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::opfunctor::{inner_tuples, quotients, small_families, smallest_colors};
use super::{apply_t, mu_element, t_map, unit_component, PolyError, PolyMonad, TElem, TTElem};
use crate::kernel::{is_pullback_square, Code, ElementMap, Family, Square, Sum};
use crate::report::{CheckResult, Report};

#[derive(Clone, Debug)]
pub struct LawConfig {
    pub exhaustive_size: usize,
    pub random_size: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig {
            exhaustive_size: 4,
            random_size: 6,
            trials: 200,
            seed: 0,
        }
    }
}

/// Labels `start, start+1, …` on the sources of `g`.
fn symbolic(m: &dyn PolyMonad, g: &Code, next: &mut usize) -> Result<TElem<usize>, PolyError> {
    let n = m.arity(g)?;
    *next += n;
    Ok((g.clone(), (*next - n..*next).collect()))
}

/// Checks typing, both unit laws and associativity with symbolic labels, so
/// that a law holds only if the composites agree together with the order in
/// which they lay out their sources.
pub fn check_monad_laws(m: &dyn PolyMonad, cfg: &LawConfig) -> Report {
    let mut report = Report::new(&m.name());
    if let Err(e) = law_cases(m, cfg, &mut report) {
        report.check("enumeration").fail(e.to_string());
    }
    report
}

fn law_cases(m: &dyn PolyMonad, cfg: &LawConfig, report: &mut Report) -> Result<(), PolyError> {
    let ops = m.operations(cfg.exhaustive_size)?;
    for op in &ops {
        let ok = m.is_color(&m.target(op)?)
            && m.source(op)?.iter().all(|s| m.is_color(s))
            && m.size(op)? <= cfg.exhaustive_size;
        report.check("typing").record(ok, || op.to_string());
        let mut next = 0;
        let elem = symbolic(m, op, &mut next)?;
        let left = mu_element(m, &(m.unit(&m.target(op)?)?, vec![elem.clone()]));
        report
            .check("left-unit")
            .record_result(left.map(|r| r == elem), || format!("unit ∘ {}", op));
        let units: Vec<TElem<usize>> = m
            .source(op)?
            .iter()
            .enumerate()
            .map(|(j, s)| Ok((m.unit(s)?, vec![j])))
            .collect::<Result<_, PolyError>>()?;
        let right = mu_element(m, &(op.clone(), units));
        report
            .check("right-unit")
            .record_result(right.map(|r| r == elem), || format!("{} ∘ units", op));
    }
    for op in &ops {
        let used = m.size(op)?;
        for gs in inner_tuples(m, op, &ops, cfg.exhaustive_size - used)? {
            let used_g = used + gs.iter().map(|g| m.size(g)).sum::<Result<usize, _>>()?;
            let mut partial: Vec<Vec<Vec<Code>>> = vec![Vec::new()];
            let mut budgets = vec![used_g];
            for g in &gs {
                let mut next = Vec::new();
                let mut next_budgets = Vec::new();
                for (hs, b) in partial.iter().zip(&budgets) {
                    for h in inner_tuples(m, g, &ops, cfg.exhaustive_size - b)? {
                        let sz = h.iter().map(|x| m.size(x)).sum::<Result<usize, _>>()?;
                        let mut v = hs.clone();
                        v.push(h);
                        next.push(v);
                        next_budgets.push(b + sz);
                    }
                }
                partial = next;
                budgets = next_budgets;
            }
            for hs in partial {
                let verdict = associativity_case(m, op, &gs, &hs);
                report
                    .check("associativity")
                    .record_result(verdict, || format!("{} ∘ {:?} ∘ {:?}", op, gs, hs));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pool = m.operations(cfg.random_size)?;
    let mut by_target: BTreeMap<Code, Vec<Code>> = BTreeMap::new();
    for g in &pool {
        by_target.entry(m.target(g)?).or_default().push(g.clone());
    }
    for _ in 0..cfg.trials {
        let op = pool.choose(&mut rng).expect("operations are non-empty").clone();
        let pick = |s: &Code, rng: &mut ChaCha8Rng| -> Result<Code, PolyError> {
            match by_target.get(s).and_then(|v| v.choose(rng)) {
                Some(g) => Ok(g.clone()),
                None => m.unit(s),
            }
        };
        let gs = m
            .source(&op)?
            .iter()
            .map(|s| pick(s, &mut rng))
            .collect::<Result<Vec<_>, _>>()?;
        let mut hs = Vec::new();
        for g in &gs {
            hs.push(
                m.source(g)?
                    .iter()
                    .map(|s| pick(s, &mut rng))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        let verdict = associativity_case(m, &op, &gs, &hs);
        report
            .check("random-associativity")
            .record_result(verdict, || format!("{} ∘ {:?} ∘ {:?}", op, gs, hs));
    }
    Ok(())
}

fn associativity_case(m: &dyn PolyMonad, op: &Code, gs: &[Code], hs: &[Vec<Code>]) -> Result<bool, PolyError> {
    let mut next = 0;
    let mut nested: Vec<TTElem<usize>> = Vec::new();
    for (g, h) in gs.iter().zip(hs) {
        let leaves = h
            .iter()
            .map(|x| symbolic(m, x, &mut next))
            .collect::<Result<Vec<_>, _>>()?;
        nested.push((g.clone(), leaves));
    }
    let elem = (op.clone(), nested.clone());
    let outer_first = mu_element(m, &mu_element(m, &elem)?)?;
    let inner_first = nested.iter().map(|e| mu_element(m, e)).collect::<Result<Vec<_>, _>>()?;
    let inner_first = mu_element(m, &(op.clone(), inner_first))?;
    let target_kept = m.target(&outer_first.0)? == m.target(op)?;
    Ok(outer_first == inner_first && target_kept)
}

#[derive(Clone, Debug)]
pub struct CartesianConfig {
    /// Operation bound for `T` on families.
    pub op_bound: usize,
    /// Operation bound for the inner layer of `TT`.
    pub inner_bound: usize,
    pub colors: usize,
    pub max_elements: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for CartesianConfig {
    fn default() -> Self {
        CartesianConfig {
            op_bound: 2,
            inner_bound: 2,
            colors: 2,
            max_elements: 4,
            trials: 200,
            seed: 0,
        }
    }
}

/// The naturality squares of `η` and `μ` at `h`, and `T` applied to the
/// kernel pair of `h`, must be pullbacks. Exhaustive over the quotients of
/// families with at most `max_elements` elements over the smallest colours,
/// then `trials` random maps and cospans.
pub fn check_cartesian(m: &dyn PolyMonad, cfg: &CartesianConfig) -> Report {
    let mut report = Report::new(&m.name());
    if let Err(e) = cartesian_cases(m, cfg, &mut report) {
        report.check("enumeration").fail(e.to_string());
    }
    report
}

fn cartesian_cases(m: &dyn PolyMonad, cfg: &CartesianConfig, report: &mut Report) -> Result<(), PolyError> {
    let colors = smallest_colors(m, cfg.colors)?;
    for x in small_families(&colors, cfg.max_elements) {
        for (y, h) in quotients(&x) {
            map_squares(m, cfg, &x, &y, &h, report)?;
            let (p, p1, p2) = kernel_pair(&x, &h)?;
            let v = t_pullback_square(m, cfg.op_bound, &p, &x, &x, &y, &p1, &p2, &h, &h)?;
            report.check("T-pullback").record(v.is_none(), || v.unwrap_or_default());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.trials {
        let x = random_family(&colors, cfg.max_elements, "x", &mut rng);
        let (y, h) = random_map(&x, cfg.max_elements, &mut rng);
        map_squares(m, cfg, &x, &y, &h, report)?;
        let (w, z, f, g) = loop {
            let w = random_family(&colors, cfg.max_elements, "w", &mut rng);
            let z = random_family(&colors, cfg.max_elements, "z", &mut rng);
            if let (Some(f), Some(g)) = (random_map_into(&x, &z, &mut rng), random_map_into(&w, &z, &mut rng)) {
                break (w, z, f, g);
            }
        };
        let (p, p1, p2) = pullback_of(&x, &w, &f, &g)?;
        let v = t_pullback_square(m, cfg.op_bound, &p, &w, &x, &z, &p2, &p1, &g, &f)?;
        report
            .check("random-T-pullback")
            .record(v.is_none(), || v.unwrap_or_default());
    }
    Ok(())
}

fn verdict_text<A: Debug>(what: &str, h: &A, v: crate::kernel::SquareVerdict) -> Option<String> {
    if v.is_pullback() {
        None
    } else {
        Some(format!("{} square at {:?}: {:?}", what, h, v))
    }
}

fn map_squares(
    m: &dyn PolyMonad,
    cfg: &CartesianConfig,
    x: &Family<String>,
    y: &Family<String>,
    h: &ElementMap<String, String>,
    report: &mut Report,
) -> Result<(), PolyError> {
    // η
    let unit_bound = x
        .base()
        .iter()
        .map(|s| m.unit(s).and_then(|u| m.size(&u)))
        .try_fold(0, |a, s| s.map(|s| a.max(s)))?;
    let tx = apply_t(m, x, unit_bound)?;
    let ty = apply_t(m, y, unit_bound)?;
    let eta_x = unit_component(m, x)?;
    let eta_y = unit_component(m, y)?;
    let th = t_map_all(h, &tx);
    let v = is_pullback_square(&Square {
        apex: x,
        right_src: &tx,
        left_dst: y,
        corner: &ty,
        top: &eta_x,
        left: h,
        right: &th,
        bottom: &eta_y,
    });
    report
        .check("eta-cartesian")
        .record(v.is_pullback(), || verdict_text("η", h, v.clone()).unwrap_or_default());
    // μ
    let inner_x = apply_t(m, x, cfg.inner_bound)?;
    let inner_y = apply_t(m, y, cfg.inner_bound)?;
    let ttx = apply_t(m, &inner_x, cfg.op_bound)?;
    let tty = apply_t(m, &inner_y, cfg.op_bound)?;
    let mut mu_x = BTreeMap::new();
    let mut mu_bound = 0;
    for e in ttx.elements() {
        let r = mu_element(m, e)?;
        mu_bound = mu_bound.max(m.size(&r.0)?);
        mu_x.insert(e.clone(), r);
    }
    let mut mu_y = BTreeMap::new();
    for e in tty.elements() {
        let r = mu_element(m, e)?;
        mu_bound = mu_bound.max(m.size(&r.0)?);
        mu_y.insert(e.clone(), r);
    }
    let tx = apply_t(m, x, mu_bound)?;
    let ty = apply_t(m, y, mu_bound)?;
    let th_inner: ElementMap<TElem<String>, TElem<String>> = t_map_all(h, &inner_x);
    let tth = t_map_all(&th_inner, &ttx);
    let th = t_map_all(h, &tx);
    let v = is_pullback_square(&Square {
        apex: &ttx,
        right_src: &tx,
        left_dst: &tty,
        corner: &ty,
        top: &mu_x,
        left: &tth,
        right: &th,
        bottom: &mu_y,
    });
    report
        .check("mu-cartesian")
        .record(v.is_pullback(), || verdict_text("μ", h, v.clone()).unwrap_or_default());
    Ok(())
}

fn t_map_all<A, B>(h: &ElementMap<A, B>, fam: &Family<TElem<A>>) -> ElementMap<TElem<A>, TElem<B>>
where
    A: Ord + Clone + Debug,
    B: Clone,
{
    fam.elements()
        .filter_map(|e| t_map(h, e).map(|v| (e.clone(), v)))
        .collect()
}

type Pair = (String, String);

/// A pullback with its two projections.
type Projected = (Family<Pair>, ElementMap<Pair, String>, ElementMap<Pair, String>);

fn kernel_pair(x: &Family<String>, h: &ElementMap<String, String>) -> Result<Projected, PolyError> {
    pullback_of(x, x, h, h)
}

/// `X ×_Z W` along `f: X → Z`, `g: W → Z`, with its two projections.
fn pullback_of(
    x: &Family<String>,
    w: &Family<String>,
    f: &ElementMap<String, String>,
    g: &ElementMap<String, String>,
) -> Result<Projected, PolyError> {
    let mut p = Family::new(x.base().clone());
    let (mut p1, mut p2) = (BTreeMap::new(), BTreeMap::new());
    for (a, s) in x.iter() {
        for b in w.elements() {
            if f[a] == g[b] {
                let e = (a.clone(), b.clone());
                p.insert(e.clone(), s.clone())?;
                p1.insert(e.clone(), a.clone());
                p2.insert(e, b.clone());
            }
        }
    }
    Ok((p, p1, p2))
}

/// `T` applied to the square `P → B` (top), `P → C` (left), `B → D`
/// (right), `C → D` (bottom).
#[allow(clippy::too_many_arguments)]
fn t_pullback_square(
    m: &dyn PolyMonad,
    bound: usize,
    p: &Family<Pair>,
    b: &Family<String>,
    c: &Family<String>,
    d: &Family<String>,
    top: &ElementMap<Pair, String>,
    left: &ElementMap<Pair, String>,
    right: &ElementMap<String, String>,
    bottom: &ElementMap<String, String>,
) -> Result<Option<String>, PolyError> {
    let tp = apply_t(m, p, bound)?;
    let tb = apply_t(m, b, bound)?;
    let tc = apply_t(m, c, bound)?;
    let td = apply_t(m, d, bound)?;
    let v = is_pullback_square(&Square {
        apex: &tp,
        right_src: &tb,
        left_dst: &tc,
        corner: &td,
        top: &t_map_all(top, &tp),
        left: &t_map_all(left, &tp),
        right: &t_map_all(right, &tb),
        bottom: &t_map_all(bottom, &tc),
    });
    Ok(verdict_text("T", right, v))
}

fn random_family(colors: &[Code], max_elements: usize, prefix: &str, rng: &mut ChaCha8Rng) -> Family<String> {
    let n = rng.gen_range(0..=max_elements);
    let pairs = (0..n).map(|i| {
        (
            format!("{}{}", prefix, i),
            colors[rng.gen_range(0..colors.len())].clone(),
        )
    });
    Family::from_pairs(colors.iter().cloned().collect(), pairs).expect("fibres lie in the base")
}

/// A random fibre-preserving map out of `x` onto a fresh family.
fn random_map(
    x: &Family<String>,
    max_elements: usize,
    rng: &mut ChaCha8Rng,
) -> (Family<String>, ElementMap<String, String>) {
    let mut y = Family::new(x.base().clone());
    let mut by_fiber: BTreeMap<Code, Vec<String>> = BTreeMap::new();
    let mut h = BTreeMap::new();
    for (e, s) in x.iter() {
        let existing = by_fiber.entry(s.clone()).or_default();
        let fresh = existing.is_empty() || (y.len() < max_elements && rng.gen_bool(0.5));
        let target = if fresh {
            let name = format!("y{}", y.len());
            y.insert(name.clone(), s.clone()).expect("fresh name");
            existing.push(name.clone());
            name
        } else {
            existing[rng.gen_range(0..existing.len())].clone()
        };
        h.insert(e.clone(), target);
    }
    if y.len() < max_elements && rng.gen_bool(0.5) {
        let s = x
            .base()
            .iter()
            .nth(rng.gen_range(0..x.base().len()))
            .expect("non-empty base")
            .clone();
        y.insert(format!("y{}", y.len()), s).expect("fresh name");
    }
    (y, h)
}

fn random_map_into(x: &Family<String>, z: &Family<String>, rng: &mut ChaCha8Rng) -> Option<ElementMap<String, String>> {
    let mut h = BTreeMap::new();
    for (e, s) in x.iter() {
        let choices = z.fiber(s);
        if choices.is_empty() {
            return None;
        }
        h.insert(e.clone(), choices[rng.gen_range(0..choices.len())].clone());
    }
    Some(h)
}

#[derive(Clone, Debug)]
pub struct SuitableConfig {
    pub chain_length: usize,
    pub max_elements: usize,
    pub op_bound: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for SuitableConfig {
    fn default() -> Self {
        SuitableConfig {
            chain_length: 4,
            max_elements: 6,
            op_bound: 3,
            trials: 20,
            seed: 0,
        }
    }
}

/// `T` preserves colimits of chains of injective maps, and coproducts of
/// families are stable under pullback.
pub fn check_suitable(m: &dyn PolyMonad, cfg: &SuitableConfig) -> Report {
    let mut report = Report::new(&m.name());
    if let Err(e) = suitable_cases(m, cfg, &mut report) {
        report.check("enumeration").fail(e.to_string());
    }
    report
}

fn suitable_cases(m: &dyn PolyMonad, cfg: &SuitableConfig, report: &mut Report) -> Result<(), PolyError> {
    let colors = smallest_colors(m, 2)?;
    let base: BTreeSet<Code> = colors.iter().cloned().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let empty = vec![Family::new(base.clone()); cfg.chain_length + 1];
    let empty_maps = vec![BTreeMap::new(); cfg.chain_length];
    let mut chains = vec![(empty, empty_maps)];
    for _ in 0..cfg.trials {
        chains.push(random_chain(&colors, cfg, &mut rng));
    }
    for (stages, maps) in &chains {
        let mut c = CheckResult::new("nested-colimit");
        chain_case(m, cfg.op_bound, stages, maps, &mut c)?;
        merge(report, c);
    }
    for _ in 0..cfg.trials {
        let a = random_family(&colors, cfg.max_elements, "a", &mut rng);
        let b = random_family(&colors, cfg.max_elements, "b", &mut rng);
        let y = random_family(&colors, cfg.max_elements, "y", &mut rng);
        let sum = crate::kernel::coproduct(&a, &b)?;
        let lhs = crate::kernel::pullback(&sum, &y)?;
        let left = crate::kernel::pullback(&a, &y)?;
        let right = crate::kernel::pullback(&b, &y)?;
        let rhs = crate::kernel::coproduct(&left, &right)?;
        let image: BTreeSet<(Sum<String, String>, String)> = rhs
            .elements()
            .map(|e| match e {
                Sum::Left((a, y)) => (Sum::Left(a.clone()), y.clone()),
                Sum::Right((b, y)) => (Sum::Right(b.clone()), y.clone()),
            })
            .collect();
        let ok = image.len() == rhs.len() && image.iter().eq(lhs.elements());
        report
            .check("coproduct-stability")
            .record(ok, || format!("{:?} + {:?} against {:?}", a, b, y));
    }
    Ok(())
}

fn merge(report: &mut Report, c: CheckResult) {
    let r = report.check(&c.name);
    r.cases += c.cases;
    for w in c.counterexamples {
        r.fail(w);
    }
    if !c.passed {
        r.passed = false;
    }
}

type Chain = (Vec<Family<String>>, Vec<ElementMap<String, String>>);

fn random_chain(colors: &[Code], cfg: &SuitableConfig, rng: &mut ChaCha8Rng) -> Chain {
    let base: BTreeSet<Code> = colors.iter().cloned().collect();
    let mut stages = Vec::new();
    let mut maps = Vec::new();
    let start = rng.gen_range(0..=cfg.max_elements.min(3));
    let mut cur = Family::new(base.clone());
    for j in 0..start {
        cur.insert(format!("s0e{}", j), colors[rng.gen_range(0..colors.len())].clone())
            .expect("fresh");
    }
    stages.push(cur);
    for i in 1..=cfg.chain_length {
        let prev = stages.last().expect("non-empty");
        let room = cfg.max_elements - prev.len();
        let extra = rng.gen_range(0..=room.min(2));
        let mut entries: Vec<(Option<String>, Code)> = prev.iter().map(|(e, s)| (Some(e.clone()), s.clone())).collect();
        for _ in 0..extra {
            entries.push((None, colors[rng.gen_range(0..colors.len())].clone()));
        }
        entries.shuffle(rng);
        let mut next = Family::new(base.clone());
        let mut map = BTreeMap::new();
        for (j, (old, s)) in entries.into_iter().enumerate() {
            let name = format!("s{}e{}", i, j);
            next.insert(name.clone(), s).expect("fresh");
            if let Some(o) = old {
                map.insert(o, name);
            }
        }
        stages.push(next);
        maps.push(map);
    }
    (stages, maps)
}

/// Union-find classes of the disjoint union of `stages` under the chain maps.
fn colimit_classes<E: Ord + Clone>(stages: &[Vec<E>], maps: &[ElementMap<E, E>]) -> BTreeMap<(usize, E), usize> {
    let mut index = BTreeMap::new();
    let mut parent = Vec::new();
    for (i, st) in stages.iter().enumerate() {
        for e in st {
            index.insert((i, e.clone()), parent.len());
            parent.push(parent.len());
        }
    }
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    for (i, map) in maps.iter().enumerate() {
        for (a, b) in map {
            let (x, y) = (index[&(i, a.clone())], index[&(i + 1, b.clone())]);
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            parent[rx.max(ry)] = rx.min(ry);
        }
    }
    index.into_iter().map(|(k, v)| (k, find(&mut parent, v))).collect()
}

fn chain_case(
    m: &dyn PolyMonad,
    bound: usize,
    stages: &[Family<String>],
    maps: &[ElementMap<String, String>],
    c: &mut CheckResult,
) -> Result<(), PolyError> {
    let base = stages[0].base().clone();
    let elems: Vec<Vec<String>> = stages.iter().map(|s| s.elements().cloned().collect()).collect();
    let classes = colimit_classes(&elems, maps);
    let name = |k: usize| format!("k{}", k);
    let mut colim = Family::new(base.clone());
    for ((i, e), k) in &classes {
        let s = stages[*i].fiber_of(e).expect("element of its stage").clone();
        if let Some(prev) = colim.fiber_of(&name(*k)) {
            c.record(prev == &s, || format!("class {} has two fibres", k));
        } else {
            colim.insert(name(*k), s)?;
        }
    }
    let t_colim = apply_t(m, &colim, bound)?;
    let t_stages: Vec<Family<TElem<String>>> = stages.iter().map(|s| apply_t(m, s, bound)).collect::<Result<_, _>>()?;
    let t_maps: Vec<ElementMap<TElem<String>, TElem<String>>> =
        maps.iter().zip(&t_stages).map(|(h, ts)| t_map_all(h, ts)).collect();
    for (i, tm) in t_maps.iter().enumerate() {
        let image: BTreeSet<_> = tm.values().collect();
        c.record(image.len() == tm.len(), || {
            format!("T of the map out of stage {} is not injective", i)
        });
    }
    let t_elems: Vec<Vec<TElem<String>>> = t_stages.iter().map(|s| s.elements().cloned().collect()).collect();
    let t_classes = colimit_classes(&t_elems, &t_maps);
    let mut comparison: BTreeMap<usize, TElem<String>> = BTreeMap::new();
    for ((i, (op, labels)), k) in &t_classes {
        let image = (
            op.clone(),
            labels
                .iter()
                .map(|l| name(classes[&(*i, l.clone())]))
                .collect::<Vec<_>>(),
        );
        match comparison.get(k) {
            Some(prev) => c.record(prev == &image, || format!("comparison is not well defined at {:?}", op)),
            None => {
                comparison.insert(*k, image);
            }
        }
    }
    let image: BTreeSet<&TElem<String>> = comparison.values().collect();
    let bijective =
        image.len() == comparison.len() && image.len() == t_colim.len() && image.iter().all(|e| t_colim.contains(e));
    c.record(bijective, || {
        format!(
            "colimit of T(stages) has {} classes, T(colimit) has {} elements",
            comparison.len(),
            t_colim.len()
        )
    });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymonad::{FreeMonoid, IdentityMonad, SignatureMonad};

    #[test]
    fn identity_and_free_monoid_pass() {
        let cfg = LawConfig {
            trials: 50,
            ..LawConfig::default()
        };
        assert!(check_monad_laws(&IdentityMonad::on_point(), &cfg).passed());
        assert!(check_monad_laws(&FreeMonoid, &cfg).passed());
        let cart = CartesianConfig {
            trials: 20,
            ..CartesianConfig::default()
        };
        let r = check_cartesian(&FreeMonoid, &cart);
        assert!(r.passed(), "{:?}", r);
        assert!(check_suitable(&FreeMonoid, &SuitableConfig::default()).passed());
    }

    #[test]
    fn non_associative_table_is_caught() {
        let text = r#"{
            "base": ["x"],
            "operations": [
                {"code": "e", "source": ["x"], "target": "x", "size": 0},
                {"code": "a", "source": ["x"], "target": "x", "size": 1},
                {"code": "b", "source": ["x"], "target": "x", "size": 1}
            ],
            "units": {"x": "e"},
            "substitution": [
                {"outer": "a", "inner": ["a"], "result": "b"},
                {"outer": "a", "inner": ["b"], "result": "a"},
                {"outer": "b", "inner": ["a"], "result": "b"},
                {"outer": "b", "inner": ["b"], "result": "a"}
            ]
        }"#;
        let m = SignatureMonad::from_json(text).unwrap();
        let r = check_monad_laws(&m, &LawConfig::default());
        let assoc = r.checks.iter().find(|c| c.name == "associativity").unwrap();
        assert!(!assoc.passed);
        assert!(r.checks.iter().find(|c| c.name == "left-unit").unwrap().passed);
    }
}
