//! Finite presentations of symmetric multicategories, including `I`.
//!
//! A presentation lists objects, identity arrows and generating arrows. The
//! composite of planar arrows either comes from an explicit table or is free
//! (grafting trees of generators). Non-planar arrows are pairs `p · σ` and are
//! composed through the equivariance axioms, so only planar composites need
//! to be supplied.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{check_inputs, Cell, PlanarTree, SymMulticat, SymcatError};
use crate::kernel::{is_atom_text, Code, Perm};

/// On-disk form of a presentation.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    /// Identity arrow per object; `1_x` when omitted.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub identities: BTreeMap<String, String>,
    pub composition: CompositionSpec,
    pub action: ActionSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub code: String,
    pub source: Vec<String>,
    pub target: String,
    pub size: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CompositionSpec {
    Named(NamedComposition),
    Table { table: Vec<TableEntry> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NamedComposition {
    FreeOnGenerators,
}

/// `outer ∘ (inner…) = result · twist`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableEntry {
    pub outer: String,
    pub inner: Vec<String>,
    pub result: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<Perm>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionSpec {
    Named(NamedAction),
    Fixed { fixed: Vec<FixedPoint> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NamedAction {
    FreelySymmetric,
}

/// A declared relation `arrow · perm = arrow`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedPoint {
    pub arrow: String,
    pub perm: Perm,
}

#[derive(Clone, Debug)]
struct Generator {
    source: Vec<Cell>,
    target: Cell,
    size: usize,
}

#[derive(Clone, Debug)]
enum Mode {
    Free,
    Table(BTreeMap<(Cell, Vec<Cell>), (Cell, Perm)>),
}

/// A symmetric multicategory given by a finite presentation.
#[derive(Clone, Debug)]
pub struct Presentation {
    name: String,
    objects: Vec<Cell>,
    identities: BTreeMap<Cell, Cell>,
    identity_object: BTreeMap<Cell, Cell>,
    generators: BTreeMap<Cell, Generator>,
    mode: Mode,
    fixed: Vec<(Cell, Perm)>,
}

/// The multicategory with one object `pt` and one arrow, its identity `ar`.
pub fn the_multicat_i() -> Presentation {
    let pt = Cell::atom("pt");
    let ar = Cell::atom("ar");
    Presentation {
        name: "I".to_string(),
        objects: vec![pt.clone()],
        identities: BTreeMap::from([(pt.clone(), ar.clone())]),
        identity_object: BTreeMap::from([(ar, pt)]),
        generators: BTreeMap::new(),
        mode: Mode::Free,
        fixed: Vec::new(),
    }
}

fn bad(msg: impl Into<String>) -> SymcatError {
    SymcatError::Presentation(msg.into())
}

impl Presentation {
    pub fn from_json(text: &str) -> Result<Presentation, SymcatError> {
        let file: PresentationFile = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        Presentation::from_file(&file)
    }

    pub fn from_file(file: &PresentationFile) -> Result<Presentation, SymcatError> {
        let mut objects = Vec::new();
        let mut seen = BTreeSet::new();
        for o in &file.objects {
            if !is_atom_text(o) {
                return Err(bad(format!("object `{}` is not an atom", o)));
            }
            if !seen.insert(o.clone()) {
                return Err(bad(format!("object `{}` listed twice", o)));
            }
            objects.push(Cell::atom(o));
        }
        let object = |name: &str| -> Result<Cell, SymcatError> {
            if seen.contains(name) {
                Ok(Cell::atom(name))
            } else {
                Err(bad(format!("`{}` is not a declared object", name)))
            }
        };
        for key in file.identities.keys() {
            object(key)?;
        }
        let mut names = BTreeSet::new();
        let mut identities = BTreeMap::new();
        let mut identity_object = BTreeMap::new();
        for o in &objects {
            let id = file
                .identities
                .get(&o.to_string())
                .cloned()
                .unwrap_or_else(|| format!("1_{}", o));
            if !is_atom_text(&id) || !names.insert(id.clone()) {
                return Err(bad(format!("identity `{}` is not a fresh atom", id)));
            }
            identities.insert(o.clone(), Cell::atom(&id));
            identity_object.insert(Cell::atom(&id), o.clone());
        }
        let free = matches!(
            file.composition,
            CompositionSpec::Named(NamedComposition::FreeOnGenerators)
        );
        let mut generators = BTreeMap::new();
        for a in &file.arrows {
            if !is_atom_text(&a.code) || !names.insert(a.code.clone()) {
                return Err(bad(format!("arrow `{}` is not a fresh atom", a.code)));
            }
            if free && a.size == 0 {
                return Err(bad(format!("generator `{}` must have positive size", a.code)));
            }
            let source = a.source.iter().map(|s| object(s)).collect::<Result<Vec<_>, _>>()?;
            generators.insert(
                Cell::atom(&a.code),
                Generator {
                    source,
                    target: object(&a.target)?,
                    size: a.size,
                },
            );
        }
        let mut pres = Presentation {
            name: file.name.clone().unwrap_or_else(|| "presentation".to_string()),
            objects,
            identities,
            identity_object,
            generators,
            mode: Mode::Free,
            fixed: Vec::new(),
        };
        if let CompositionSpec::Table { table } = &file.composition {
            pres.mode = Mode::Table(BTreeMap::new());
            let mut map = BTreeMap::new();
            for e in table {
                let outer = pres.named_arrow(&e.outer)?;
                let inner = e
                    .inner
                    .iter()
                    .map(|n| pres.named_arrow(n))
                    .collect::<Result<Vec<_>, _>>()?;
                let result = pres.named_arrow(&e.result)?;
                let twist = e
                    .twist
                    .clone()
                    .unwrap_or_else(|| Perm::identity(pres.source(&result).map(|s| s.len()).unwrap_or(0)));
                let src = pres.source(&outer)?;
                check_inputs(&pres, &outer, &src, &inner)?;
                let mut concat = Vec::new();
                for g in &inner {
                    concat.extend(pres.source(g)?);
                }
                let rs = pres.source(&result)?;
                if twist.degree() != rs.len() || twist.permute(&rs) != concat {
                    return Err(bad(format!(
                        "table entry for `{}`: result sources do not match the inner sources",
                        e.outer
                    )));
                }
                if pres.target(&result)? != pres.target(&outer)? {
                    return Err(bad(format!("table entry for `{}`: targets differ", e.outer)));
                }
                if map.insert((outer, inner), (result, twist)).is_some() {
                    return Err(bad(format!("table entry for `{}` given twice", e.outer)));
                }
            }
            pres.mode = Mode::Table(map);
        }
        if let ActionSpec::Fixed { fixed } = &file.action {
            for fp in fixed {
                let arrow = pres.named_arrow(&fp.arrow)?;
                let src = pres.source(&arrow)?;
                if fp.perm.degree() != src.len() || fp.perm.permute(&src) != src {
                    return Err(bad(format!("`{}` cannot be fixed by {}", fp.arrow, fp.perm)));
                }
                if !fp.perm.is_identity() {
                    pres.fixed.push((arrow, fp.perm.clone()));
                }
            }
        }
        Ok(pres)
    }

    /// Round-trips back to the file format.
    pub fn to_file(&self) -> PresentationFile {
        let arrows = self
            .generators
            .iter()
            .map(|(g, info)| ArrowSpec {
                code: g.to_string(),
                source: info.source.iter().map(Cell::to_string).collect(),
                target: info.target.to_string(),
                size: info.size,
            })
            .collect();
        let composition = match &self.mode {
            Mode::Free => CompositionSpec::Named(NamedComposition::FreeOnGenerators),
            Mode::Table(map) => CompositionSpec::Table {
                table: map
                    .iter()
                    .map(|((o, i), (r, t))| TableEntry {
                        outer: o.to_string(),
                        inner: i.iter().map(Cell::to_string).collect(),
                        result: r.to_string(),
                        twist: (!t.is_identity()).then(|| t.clone()),
                    })
                    .collect(),
            },
        };
        let action = if self.fixed.is_empty() {
            ActionSpec::Named(NamedAction::FreelySymmetric)
        } else {
            ActionSpec::Fixed {
                fixed: self
                    .fixed
                    .iter()
                    .map(|(a, p)| FixedPoint {
                        arrow: a.to_string(),
                        perm: p.clone(),
                    })
                    .collect(),
            }
        };
        PresentationFile {
            name: Some(self.name.clone()),
            objects: self.objects.iter().map(Cell::to_string).collect(),
            arrows,
            identities: self
                .identities
                .iter()
                .map(|(o, i)| (o.to_string(), i.to_string()))
                .collect(),
            composition,
            action,
        }
    }

    /// A planar arrow named by an atom: an identity or a generator.
    fn named_arrow(&self, name: &str) -> Result<Cell, SymcatError> {
        let c = Cell::atom(name);
        if self.identity_object.contains_key(&c) {
            return Ok(c);
        }
        let Some(info) = self.generators.get(&c) else {
            return Err(SymcatError::UnknownArrow(name.to_string()));
        };
        Ok(match self.mode {
            Mode::Free => Cell::Tree(Arc::new(PlanarTree::node(
                c,
                info.source.iter().cloned().map(PlanarTree::Leaf).collect(),
            ))),
            Mode::Table(_) => c,
        })
    }

    fn is_identity(&self, f: &Cell) -> bool {
        self.identity_object.contains_key(f)
    }

    fn tree_size(&self, t: &PlanarTree) -> usize {
        match t {
            PlanarTree::Leaf(_) => 0,
            PlanarTree::Node(g, ch) => {
                self.generators.get(g).map_or(0, |i| i.size) + ch.iter().map(|c| self.tree_size(c)).sum::<usize>()
            }
        }
    }

    /// Trees of generators with at least one node, root colour `color`,
    /// size at most `budget`. Children are bare edges or further trees.
    fn free_trees(
        &self,
        color: &Cell,
        budget: usize,
        memo: &mut BTreeMap<(Cell, usize), Vec<PlanarTree>>,
    ) -> Vec<PlanarTree> {
        if let Some(v) = memo.get(&(color.clone(), budget)) {
            return v.clone();
        }
        let mut out = Vec::new();
        for (g, info) in &self.generators {
            if &info.target != color || info.size > budget {
                continue;
            }
            let mut partial: Vec<(Vec<PlanarTree>, usize)> = vec![(Vec::new(), info.size)];
            for s in &info.source {
                let mut next = Vec::new();
                for (kids, used) in &partial {
                    let mut k = kids.clone();
                    k.push(PlanarTree::Leaf(s.clone()));
                    next.push((k, *used));
                    for t in self.free_trees(s, budget - used, memo) {
                        let sz = self.tree_size(&t);
                        let mut k = kids.clone();
                        k.push(t);
                        next.push((k, used + sz));
                    }
                }
                partial = next;
            }
            out.extend(partial.into_iter().map(|(kids, _)| PlanarTree::node(g.clone(), kids)));
        }
        memo.insert((color.clone(), budget), out.clone());
        out
    }

    /// Planar composite of planar arrows: `p ∘ (q_1, …, q_k) = r · τ`.
    fn compose_planar(&self, p: &Cell, qs: &[Cell]) -> Result<(Cell, Perm), SymcatError> {
        if self.is_identity(p) {
            return Ok((qs[0].clone(), Perm::identity(self.arity(&qs[0])?)));
        }
        if qs.iter().all(|q| self.is_identity(q)) {
            return Ok((p.clone(), Perm::identity(qs.len())));
        }
        match &self.mode {
            Mode::Free => {
                let Cell::Tree(t) = p else {
                    return Err(SymcatError::UnknownArrow(p.to_string()));
                };
                let mut next = 0;
                let grafted = graft_leaves(t, qs, &mut next)?;
                let degree = grafted.leaf_count();
                Ok((Cell::Tree(Arc::new(grafted)), Perm::identity(degree)))
            }
            Mode::Table(map) => {
                map.get(&(p.clone(), qs.to_vec()))
                    .cloned()
                    .ok_or_else(|| SymcatError::CompositionUndefined {
                        outer: p.to_string(),
                        inner: format!("({})", qs.iter().map(Cell::to_string).collect::<Vec<_>>().join(", ")),
                    })
            }
        }
    }
}

/// Replaces the leaves of `t`, left to right, by the trees of `qs`.
fn graft_leaves(t: &PlanarTree, qs: &[Cell], next: &mut usize) -> Result<PlanarTree, SymcatError> {
    match t {
        PlanarTree::Leaf(x) => {
            let q = &qs[*next];
            *next += 1;
            Ok(match q {
                Cell::Tree(inner) => (**inner).clone(),
                _ => PlanarTree::Leaf(x.clone()),
            })
        }
        PlanarTree::Node(l, ch) => {
            let kids = ch
                .iter()
                .map(|c| graft_leaves(c, qs, next))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(PlanarTree::node(l.clone(), kids))
        }
    }
}

impl SymMulticat for Presentation {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn objects(&self, _max_size: usize) -> Result<Vec<Cell>, SymcatError> {
        let mut v = self.objects.clone();
        v.sort();
        Ok(v)
    }

    fn object_size(&self, x: &Cell) -> Result<usize, SymcatError> {
        if self.identities.contains_key(x) {
            Ok(0)
        } else {
            Err(SymcatError::UnknownObject(x.to_string()))
        }
    }

    fn planar_arrows(&self, max_size: usize) -> Result<Vec<Cell>, SymcatError> {
        let mut out: Vec<Cell> = self.identity_object.keys().cloned().collect();
        match &self.mode {
            Mode::Free => {
                let mut memo = BTreeMap::new();
                for o in &self.objects {
                    for t in self.free_trees(o, max_size, &mut memo) {
                        out.push(Cell::Tree(Arc::new(t)));
                    }
                }
            }
            Mode::Table(_) => {
                for (g, info) in &self.generators {
                    if info.size <= max_size {
                        out.push(g.clone());
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    fn source(&self, f: &Cell) -> Result<Vec<Cell>, SymcatError> {
        match f {
            Cell::Twisted(p, s) => Ok(s.permute(&self.source(p)?)),
            Cell::Tree(t) => Ok(t.leaves().into_iter().cloned().collect()),
            Cell::Atom(_) => {
                if let Some(o) = self.identity_object.get(f) {
                    return Ok(vec![o.clone()]);
                }
                match self.generators.get(f) {
                    Some(info) => Ok(info.source.clone()),
                    None => Err(SymcatError::UnknownArrow(f.to_string())),
                }
            }
            Cell::Config(_) => Err(SymcatError::UnknownArrow(f.to_string())),
        }
    }

    fn target(&self, f: &Cell) -> Result<Cell, SymcatError> {
        match f {
            Cell::Twisted(p, _) => self.target(p),
            Cell::Tree(t) => t.root_color(self),
            Cell::Atom(_) => {
                if let Some(o) = self.identity_object.get(f) {
                    return Ok(o.clone());
                }
                match self.generators.get(f) {
                    Some(info) => Ok(info.target.clone()),
                    None => Err(SymcatError::UnknownArrow(f.to_string())),
                }
            }
            Cell::Config(_) => Err(SymcatError::UnknownArrow(f.to_string())),
        }
    }

    fn size(&self, f: &Cell) -> Result<usize, SymcatError> {
        match f {
            Cell::Twisted(p, _) => self.size(p),
            Cell::Tree(t) => Ok(self.tree_size(t)),
            Cell::Atom(_) if self.is_identity(f) => Ok(0),
            Cell::Atom(_) => match self.generators.get(f) {
                Some(info) => Ok(info.size),
                None => Err(SymcatError::UnknownArrow(f.to_string())),
            },
            Cell::Config(_) => Err(SymcatError::UnknownArrow(f.to_string())),
        }
    }

    fn identity(&self, x: &Cell) -> Result<Cell, SymcatError> {
        self.identities
            .get(x)
            .cloned()
            .ok_or_else(|| SymcatError::UnknownObject(x.to_string()))
    }

    fn compose(&self, f: &Cell, gs: &[Cell]) -> Result<Cell, SymcatError> {
        let src = self.source(f)?;
        check_inputs(self, f, &src, gs)?;
        let (p, sigma) = self.planar_rep(f)?;
        // (p·σ) ∘ h = (p ∘ g)·block(σ, |g|) with g = σ⁻¹·h, and each
        // g_l = q_l·σ_l contributes σ_l to a juxtaposition.
        let g = sigma.inverse().permute(gs);
        let reps = g.iter().map(|x| self.planar_rep(x)).collect::<Result<Vec<_>, _>>()?;
        let qs: Vec<Cell> = reps.iter().map(|(q, _)| q.clone()).collect();
        let (r, tau) = self.compose_planar(&p, &qs)?;
        let arities: Vec<usize> = reps.iter().map(|(_, s)| s.degree()).collect();
        let juxt = Perm::juxtapose(&reps.iter().map(|(_, s)| s.clone()).collect::<Vec<_>>());
        let total = tau.compose(&juxt)?.compose(&sigma.block(&arities)?)?;
        self.act(&r, &total)
    }

    fn act(&self, f: &Cell, sigma: &Perm) -> Result<Cell, SymcatError> {
        let (p, s) = self.planar_rep(f)?;
        let total = s.compose(sigma)?;
        Ok(if total.is_identity() {
            p
        } else {
            Cell::Twisted(Arc::new(p), total)
        })
    }

    fn planar_rep(&self, f: &Cell) -> Result<(Cell, Perm), SymcatError> {
        match f {
            Cell::Twisted(p, s) => Ok(((**p).clone(), s.clone())),
            _ => Ok((f.clone(), Perm::identity(self.arity(f)?))),
        }
    }

    fn encode_object(&self, x: &Cell) -> Result<Code, SymcatError> {
        match x {
            Cell::Atom(a) if self.identities.contains_key(x) => Ok(Code::atom(a)),
            _ => Err(SymcatError::UnknownObject(x.to_string())),
        }
    }

    fn encode_arrow(&self, f: &Cell) -> Result<Code, SymcatError> {
        match f {
            Cell::Atom(a) if self.is_identity(f) || self.generators.contains_key(f) => Ok(Code::atom(a)),
            Cell::Tree(t) => match &**t {
                PlanarTree::Node(g, ch) if ch.iter().all(|c| matches!(c, PlanarTree::Leaf(_))) => {
                    Ok(Code::atom(&g.to_string()))
                }
                _ => t.encode(self),
            },
            _ => Err(SymcatError::UnknownArrow(f.to_string())),
        }
    }

    fn decode_object(&self, c: &Code) -> Result<Cell, SymcatError> {
        let cell = Cell::atom(&c.to_string());
        if matches!(c, Code::Atom(_)) && self.identities.contains_key(&cell) {
            Ok(cell)
        } else {
            Err(SymcatError::UnknownObject(c.to_string()))
        }
    }

    fn decode_arrow(&self, c: &Code) -> Result<Cell, SymcatError> {
        match c {
            Code::Atom(a) => self.named_arrow(a),
            Code::Node(..) if matches!(self.mode, Mode::Free) => {
                let t = self.decode_tree(c)?;
                t.check_well_formed(self)?;
                Ok(Cell::Tree(Arc::new(t)))
            }
            _ => Err(SymcatError::UnknownArrow(c.to_string())),
        }
    }

    fn free_action_witness(&self) -> Option<(Cell, Perm)> {
        self.fixed.first().cloned()
    }
}

impl Presentation {
    fn decode_tree(&self, c: &Code) -> Result<PlanarTree, SymcatError> {
        match c {
            Code::Unit(x) => Ok(PlanarTree::Leaf(self.decode_object(x)?)),
            Code::Node(l, ch) => {
                let g = Cell::atom(&l.to_string());
                if !self.generators.contains_key(&g) {
                    return Err(SymcatError::UnknownArrow(l.to_string()));
                }
                let kids = ch.iter().map(|k| self.decode_tree(k)).collect::<Result<Vec<_>, _>>()?;
                Ok(PlanarTree::node(g, kids))
            }
            Code::Atom(_) => Err(SymcatError::UnknownArrow(c.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_has_one_object_and_one_arrow() {
        let i = the_multicat_i();
        assert_eq!(i.objects(10).unwrap(), vec![Cell::atom("pt")]);
        assert_eq!(i.planar_arrows(10).unwrap(), vec![Cell::atom("ar")]);
        let ar = Cell::atom("ar");
        assert_eq!(i.compose(&ar, std::slice::from_ref(&ar)).unwrap(), ar);
        let pt = Cell::atom("pt");
        assert!(i.arrows_of(&[pt.clone(), pt.clone()], &pt, 10).unwrap().is_empty());
        assert_eq!(i.encode_arrow(&ar).unwrap().to_string(), "ar");
    }

    const FREE: &str = r#"{
        "objects": ["a"],
        "arrows": [{"code": "m", "source": ["a", "a"], "target": "a", "size": 1},
                   {"code": "e", "source": [], "target": "a", "size": 1}],
        "composition": "free-on-generators",
        "action": "freely-symmetric"
    }"#;

    #[test]
    fn free_counts_binary_trees_with_stumps() {
        let p = Presentation::from_json(FREE).unwrap();
        // Trees over m, e with n generators (plus the identity at size 0).
        // By hand: size 1 gives m, e; size 2 gives m(e,-), m(-,e), m(m,-), m(-,m).
        let all = p.planar_arrows(2).unwrap();
        assert_eq!(all.len(), 1 + 2 + 4);
        for f in &all {
            let code = p.encode_arrow(f).unwrap();
            assert_eq!(&p.decode_arrow(&code).unwrap(), f);
        }
    }

    #[test]
    fn free_composite_is_graft() {
        let p = Presentation::from_json(FREE).unwrap();
        let m = p.decode_arrow(&Code::atom("m")).unwrap();
        let e = p.decode_arrow(&Code::atom("e")).unwrap();
        let id = Cell::atom("1_a");
        let c = p.compose(&m, &[e.clone(), id]).unwrap();
        assert_eq!(p.encode_arrow(&c).unwrap().to_string(), "n(m; n(e;),u(a))");
        assert_eq!(p.size(&c).unwrap(), 2);
        assert_eq!(p.arity(&c).unwrap(), 1);
    }

    #[test]
    fn twisted_composite_follows_block_rule() {
        let p = Presentation::from_json(FREE).unwrap();
        let m = p.decode_arrow(&Code::atom("m")).unwrap();
        let swap = Perm::transposition(2, 0, 1);
        let ms = p.act(&m, &swap).unwrap();
        // (m·σ)∘(m, id) = (m∘(id, m))·block(σ, (1, 2))
        let id = Cell::atom("1_a");
        let lhs = p.compose(&ms, &[m.clone(), id.clone()]).unwrap();
        let inner = p.compose(&m, &[id, m.clone()]).unwrap();
        let rhs = p.act(&inner, &swap.block(&[1, 2]).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rejects_unknown_fields_and_bad_tables() {
        let extra = FREE.replace("\"objects\"", "\"colour\": 1, \"objects\"");
        assert!(Presentation::from_json(&extra).is_err());
        let zero = FREE.replace("\"size\": 1}", "\"size\": 0}");
        assert!(Presentation::from_json(&zero).is_err());
        let table = r#"{
            "objects": ["a", "b"],
            "arrows": [{"code": "f", "source": ["a"], "target": "b", "size": 1}],
            "composition": {"table": [{"outer": "f", "inner": ["f"], "result": "f"}]},
            "action": "freely-symmetric"
        }"#;
        assert!(Presentation::from_json(table).is_err());
    }

    #[test]
    fn fixed_action_is_reported() {
        let text = r#"{
            "objects": ["a"],
            "arrows": [{"code": "c", "source": ["a", "a"], "target": "a", "size": 1}],
            "composition": {"table": []},
            "action": {"fixed": [{"arrow": "c", "perm": [2, 1]}]}
        }"#;
        let p = Presentation::from_json(text).unwrap();
        let (a, s) = p.free_action_witness().unwrap();
        assert_eq!(a, Cell::atom("c"));
        assert_eq!(s.to_string(), "[2,1]");
    }
}
