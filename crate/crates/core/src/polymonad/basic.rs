//! Built-in monads: the identity monad, the free monoid, and monads read from a
//! JSON signature.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{check_slots, PolyError, PolyMonad};
use crate::kernel::{Code, Perm};

/// `(Set/S, id)`: one unary operation per colour, all of size 0.
#[derive(Clone, Debug)]
pub struct IdentityMonad {
    op_of: BTreeMap<Code, Code>,
    color_of: BTreeMap<Code, Code>,
}

impl IdentityMonad {
    /// Colours paired with the code of their unit operation.
    pub fn new(pairs: impl IntoIterator<Item = (Code, Code)>) -> Result<IdentityMonad, PolyError> {
        let mut m = IdentityMonad {
            op_of: BTreeMap::new(),
            color_of: BTreeMap::new(),
        };
        for (c, op) in pairs {
            if m.op_of.insert(c.clone(), op.clone()).is_some() || m.color_of.insert(op.clone(), c.clone()).is_some() {
                return Err(PolyError::Signature(format!("{} or {} occurs twice", c, op)));
            }
        }
        Ok(m)
    }

    /// The identity monad on one colour `pt`, whose operation is `ar`.
    pub fn on_point() -> IdentityMonad {
        IdentityMonad::new([(Code::atom("pt"), Code::atom("ar"))]).expect("one pair")
    }

    fn color(&self, op: &Code) -> Result<&Code, PolyError> {
        self.color_of
            .get(op)
            .ok_or_else(|| PolyError::UnknownOperation(op.to_string()))
    }
}

impl PolyMonad for IdentityMonad {
    fn name(&self) -> String {
        "identity".into()
    }

    fn colors(&self, _max_size: usize) -> Result<Vec<Code>, PolyError> {
        Ok(self.op_of.keys().cloned().collect())
    }

    fn color_size(&self, c: &Code) -> Result<usize, PolyError> {
        if self.op_of.contains_key(c) {
            Ok(0)
        } else {
            Err(PolyError::UnknownColor(c.to_string()))
        }
    }

    fn operations(&self, _max_size: usize) -> Result<Vec<Code>, PolyError> {
        Ok(self.color_of.keys().cloned().collect())
    }

    fn source(&self, op: &Code) -> Result<Vec<Code>, PolyError> {
        Ok(vec![self.color(op)?.clone()])
    }

    fn target(&self, op: &Code) -> Result<Code, PolyError> {
        Ok(self.color(op)?.clone())
    }

    fn size(&self, op: &Code) -> Result<usize, PolyError> {
        self.color(op).map(|_| 0)
    }

    fn unit(&self, c: &Code) -> Result<Code, PolyError> {
        self.op_of
            .get(c)
            .cloned()
            .ok_or_else(|| PolyError::UnknownColor(c.to_string()))
    }

    fn substitute(&self, op: &Code, inner: &[Code]) -> Result<(Code, Perm), PolyError> {
        check_slots(self, op, inner)?;
        Ok((op.clone(), Perm::identity(1)))
    }
}

/// The free-monoid monad on one colour `pt`: operation `mN` has `N` slots and
/// size `N`; substitution adds arities and keeps the order.
#[derive(Clone, Debug, Default)]
pub struct FreeMonoid;

impl FreeMonoid {
    pub fn op(n: usize) -> Code {
        Code::atom(&format!("m{}", n))
    }

    fn arity_of(op: &Code) -> Result<usize, PolyError> {
        if let Code::Atom(s) = op {
            if let Some(digits) = s.strip_prefix('m') {
                if !digits.is_empty() && (digits == "0" || !digits.starts_with('0')) {
                    if let Ok(n) = digits.parse() {
                        return Ok(n);
                    }
                }
            }
        }
        Err(PolyError::UnknownOperation(op.to_string()))
    }

    fn point() -> Code {
        Code::atom("pt")
    }
}

impl PolyMonad for FreeMonoid {
    fn name(&self) -> String {
        "free-monoid".into()
    }

    fn colors(&self, _max_size: usize) -> Result<Vec<Code>, PolyError> {
        Ok(vec![FreeMonoid::point()])
    }

    fn color_size(&self, c: &Code) -> Result<usize, PolyError> {
        if *c == FreeMonoid::point() {
            Ok(0)
        } else {
            Err(PolyError::UnknownColor(c.to_string()))
        }
    }

    fn operations(&self, max_size: usize) -> Result<Vec<Code>, PolyError> {
        let mut ops: Vec<Code> = (0..=max_size).map(FreeMonoid::op).collect();
        ops.sort();
        Ok(ops)
    }

    fn source(&self, op: &Code) -> Result<Vec<Code>, PolyError> {
        Ok(vec![FreeMonoid::point(); FreeMonoid::arity_of(op)?])
    }

    fn target(&self, op: &Code) -> Result<Code, PolyError> {
        FreeMonoid::arity_of(op).map(|_| FreeMonoid::point())
    }

    fn size(&self, op: &Code) -> Result<usize, PolyError> {
        FreeMonoid::arity_of(op)
    }

    fn unit(&self, c: &Code) -> Result<Code, PolyError> {
        self.color_size(c).map(|_| FreeMonoid::op(1))
    }

    fn substitute(&self, op: &Code, inner: &[Code]) -> Result<(Code, Perm), PolyError> {
        check_slots(self, op, inner)?;
        let mut n = 0;
        for g in inner {
            n += FreeMonoid::arity_of(g)?;
        }
        Ok((FreeMonoid::op(n), Perm::identity(n)))
    }
}

/// On-disk signature. Without `substitution` the monad is free on the listed
/// operations; with it, `units` must name a unit operation per colour and the
/// table must cover every substitution not settled by the unit laws.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignatureFile {
    #[serde(default)]
    pub name: Option<String>,
    pub base: Vec<String>,
    pub operations: Vec<SignatureOp>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub substitution: Option<Vec<SubstitutionEntry>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignatureOp {
    pub code: String,
    pub source: Vec<String>,
    pub target: String,
    pub size: usize,
}

/// `perm` is the 0-based image of `π`; omitted means the identity.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubstitutionEntry {
    pub outer: String,
    pub inner: Vec<String>,
    pub result: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perm: Option<Vec<usize>>,
}

#[derive(Clone, Debug)]
struct Generator {
    source: Vec<Code>,
    target: Code,
    size: usize,
}

#[derive(Clone, Debug)]
enum Law {
    /// Operations are trees `u(c)` / `n(g; …)` over the generators.
    Free,
    Table {
        units: BTreeMap<Code, Code>,
        table: BTreeMap<(Code, Vec<Code>), (Code, Perm)>,
    },
}

/// A monad given by a finite signature.
#[derive(Clone, Debug)]
pub struct SignatureMonad {
    name: String,
    base: BTreeSet<Code>,
    generators: BTreeMap<Code, Generator>,
    law: Law,
}

fn parse_code(s: &str) -> Result<Code, PolyError> {
    Code::parse(s).map_err(|e| PolyError::Signature(format!("{:?}: {}", s, e)))
}

impl SignatureMonad {
    pub fn from_json(text: &str) -> Result<SignatureMonad, PolyError> {
        let file: SignatureFile = serde_json::from_str(text).map_err(|e| PolyError::Signature(e.to_string()))?;
        SignatureMonad::from_file(file)
    }

    pub fn load(path: &Path) -> Result<SignatureMonad, PolyError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| PolyError::Signature(format!("{}: {}", path.display(), e)))?;
        SignatureMonad::from_json(&text)
    }

    pub fn from_file(file: SignatureFile) -> Result<SignatureMonad, PolyError> {
        let mut base = BTreeSet::new();
        for b in &file.base {
            if !base.insert(parse_code(b)?) {
                return Err(PolyError::Signature(format!("colour {} listed twice", b)));
            }
        }
        let mut generators = BTreeMap::new();
        for op in &file.operations {
            let code = parse_code(&op.code)?;
            if !matches!(code, Code::Atom(_)) {
                return Err(PolyError::Signature(format!(
                    "operation code {} must be an atom",
                    op.code
                )));
            }
            let source = op.source.iter().map(|s| parse_code(s)).collect::<Result<Vec<_>, _>>()?;
            let target = parse_code(&op.target)?;
            for c in source.iter().chain([&target]) {
                if !base.contains(c) {
                    return Err(PolyError::Signature(format!("{} uses unknown colour {}", op.code, c)));
                }
            }
            let g = Generator {
                source,
                target,
                size: op.size,
            };
            if generators.insert(code, g).is_some() {
                return Err(PolyError::Signature(format!("operation {} listed twice", op.code)));
            }
        }
        let name = file.name.clone().unwrap_or_else(|| "signature".into());
        let law = match (&file.units, &file.substitution) {
            (None, None) => {
                if let Some((c, _)) = generators.iter().find(|(_, g)| g.size == 0) {
                    return Err(PolyError::Signature(format!(
                        "free generator {} must have positive size",
                        c
                    )));
                }
                Law::Free
            }
            (Some(units), Some(entries)) => {
                let mut m = SignatureMonad {
                    name: name.clone(),
                    base: base.clone(),
                    generators: generators.clone(),
                    law: Law::Table {
                        units: BTreeMap::new(),
                        table: BTreeMap::new(),
                    },
                };
                let mut unit_map = BTreeMap::new();
                for (c, u) in units {
                    let (c, u) = (parse_code(c)?, parse_code(u)?);
                    let g = m
                        .generators
                        .get(&u)
                        .ok_or_else(|| PolyError::Signature(format!("unit {} is not an operation", u)))?;
                    if !base.contains(&c) || g.source != [c.clone()] || g.target != c || g.size != 0 {
                        return Err(PolyError::Signature(format!(
                            "{} is not a size-0 unary operation on {}",
                            u, c
                        )));
                    }
                    unit_map.insert(c, u);
                }
                if let Some(c) = base.iter().find(|c| !unit_map.contains_key(*c)) {
                    return Err(PolyError::Signature(format!("colour {} has no unit", c)));
                }
                m.law = Law::Table {
                    units: unit_map,
                    table: BTreeMap::new(),
                };
                let mut table = BTreeMap::new();
                for e in entries {
                    let outer = parse_code(&e.outer)?;
                    let inner = e.inner.iter().map(|s| parse_code(s)).collect::<Result<Vec<_>, _>>()?;
                    let result = parse_code(&e.result)?;
                    check_slots(&m, &outer, &inner)?;
                    let n: usize = inner.iter().map(|g| m.arity(g)).sum::<Result<usize, _>>()?;
                    let perm = match &e.perm {
                        Some(img) => Perm::from_image(img.clone())?,
                        None => Perm::identity(n),
                    };
                    if perm.degree() != n || m.target(&result)? != m.target(&outer)? {
                        return Err(PolyError::Signature(format!(
                            "entry for {} has the wrong shape",
                            e.outer
                        )));
                    }
                    let concat: Vec<Code> = inner
                        .iter()
                        .map(|g| m.source(g))
                        .collect::<Result<Vec<_>, _>>()?
                        .concat();
                    if m.source(&result)? != perm.permute(&concat) {
                        return Err(PolyError::Signature(format!(
                            "entry for {} has mismatched sources",
                            e.outer
                        )));
                    }
                    if table.insert((outer, inner), (result, perm)).is_some() {
                        return Err(PolyError::Signature(format!("duplicate entry for {}", e.outer)));
                    }
                }
                if let Law::Table { table: t, .. } = &mut m.law {
                    *t = table;
                }
                return Ok(m);
            }
            _ => {
                return Err(PolyError::Signature(
                    "units and substitution must be given together".into(),
                ))
            }
        };
        Ok(SignatureMonad {
            name,
            base,
            generators,
            law,
        })
    }

    fn generator(&self, g: &Code) -> Result<&Generator, PolyError> {
        self.generators
            .get(g)
            .ok_or_else(|| PolyError::UnknownOperation(g.to_string()))
    }

    /// Target colour of a free tree, after checking it is well formed.
    fn tree_target(&self, t: &Code) -> Result<Code, PolyError> {
        match t {
            Code::Unit(c) if self.base.contains(c.as_ref()) => Ok(c.as_ref().clone()),
            Code::Node(g, ch) => {
                let gen = self.generator(g)?;
                if gen.source.len() != ch.len() {
                    return Err(PolyError::UnknownOperation(t.to_string()));
                }
                for (s, c) in gen.source.iter().zip(ch.iter()) {
                    if &self.tree_target(c)? != s {
                        return Err(PolyError::UnknownOperation(t.to_string()));
                    }
                }
                Ok(gen.target.clone())
            }
            _ => Err(PolyError::UnknownOperation(t.to_string())),
        }
    }

    fn tree_leaves(&self, t: &Code, out: &mut Vec<Code>) {
        match t {
            Code::Unit(c) => out.push(c.as_ref().clone()),
            Code::Node(_, ch) => ch.iter().for_each(|c| self.tree_leaves(c, out)),
            Code::Atom(_) => {}
        }
    }

    fn tree_size(&self, t: &Code) -> Result<usize, PolyError> {
        match t {
            Code::Node(g, ch) => {
                let mut n = self.generator(g)?.size;
                for c in ch.iter() {
                    n += self.tree_size(c)?;
                }
                Ok(n)
            }
            _ => Ok(0),
        }
    }

    fn graft(t: &Code, inner: &mut std::slice::Iter<'_, Code>) -> Code {
        match t {
            Code::Unit(_) => inner.next().expect("checked arity").clone(),
            Code::Node(g, ch) => Code::node(
                g.as_ref().clone(),
                ch.iter().map(|c| SignatureMonad::graft(c, inner)).collect(),
            ),
            Code::Atom(_) => t.clone(),
        }
    }

    fn free_trees(&self, color: &Code, budget: usize) -> Vec<(Code, usize)> {
        let mut out = vec![(Code::unit(color.clone()), 0)];
        for (g, gen) in &self.generators {
            if &gen.target != color || gen.size > budget {
                continue;
            }
            let mut partial: Vec<(Vec<Code>, usize)> = vec![(Vec::new(), gen.size)];
            for s in &gen.source {
                let mut next = Vec::new();
                for (kids, used) in &partial {
                    for (t, sz) in self.free_trees(s, budget - used) {
                        let mut k = kids.clone();
                        k.push(t);
                        next.push((k, used + sz));
                    }
                }
                partial = next;
            }
            out.extend(partial.into_iter().map(|(k, sz)| (Code::node(g.clone(), k), sz)));
        }
        out
    }
}

impl PolyMonad for SignatureMonad {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn colors(&self, _max_size: usize) -> Result<Vec<Code>, PolyError> {
        Ok(self.base.iter().cloned().collect())
    }

    fn color_size(&self, c: &Code) -> Result<usize, PolyError> {
        if self.base.contains(c) {
            Ok(0)
        } else {
            Err(PolyError::UnknownColor(c.to_string()))
        }
    }

    fn operations(&self, max_size: usize) -> Result<Vec<Code>, PolyError> {
        let mut ops: Vec<Code> = match &self.law {
            Law::Free => self
                .base
                .iter()
                .flat_map(|c| self.free_trees(c, max_size))
                .map(|(t, _)| t)
                .collect(),
            Law::Table { .. } => self
                .generators
                .iter()
                .filter(|(_, g)| g.size <= max_size)
                .map(|(c, _)| c.clone())
                .collect(),
        };
        ops.sort();
        Ok(ops)
    }

    fn source(&self, op: &Code) -> Result<Vec<Code>, PolyError> {
        match &self.law {
            Law::Free => {
                self.tree_target(op)?;
                let mut out = Vec::new();
                self.tree_leaves(op, &mut out);
                Ok(out)
            }
            Law::Table { .. } => Ok(self.generator(op)?.source.clone()),
        }
    }

    fn target(&self, op: &Code) -> Result<Code, PolyError> {
        match &self.law {
            Law::Free => self.tree_target(op),
            Law::Table { .. } => Ok(self.generator(op)?.target.clone()),
        }
    }

    fn size(&self, op: &Code) -> Result<usize, PolyError> {
        match &self.law {
            Law::Free => {
                self.tree_target(op)?;
                self.tree_size(op)
            }
            Law::Table { .. } => Ok(self.generator(op)?.size),
        }
    }

    fn unit(&self, c: &Code) -> Result<Code, PolyError> {
        match &self.law {
            Law::Free if self.base.contains(c) => Ok(Code::unit(c.clone())),
            Law::Table { units, .. } => units
                .get(c)
                .cloned()
                .ok_or_else(|| PolyError::UnknownColor(c.to_string())),
            _ => Err(PolyError::UnknownColor(c.to_string())),
        }
    }

    fn substitute(&self, op: &Code, inner: &[Code]) -> Result<(Code, Perm), PolyError> {
        check_slots(self, op, inner)?;
        match &self.law {
            Law::Free => {
                let t = SignatureMonad::graft(op, &mut inner.iter());
                let n = self.source(&t)?.len();
                Ok((t, Perm::identity(n)))
            }
            Law::Table { units, table } => {
                let is_unit = |g: &Code| units.values().any(|u| u == g);
                if is_unit(op) {
                    let n = self.arity(&inner[0])?;
                    return Ok((inner[0].clone(), Perm::identity(n)));
                }
                if inner.iter().all(is_unit) {
                    return Ok((op.clone(), Perm::identity(inner.len())));
                }
                table
                    .get(&(op.clone(), inner.to_vec()))
                    .cloned()
                    .ok_or_else(|| PolyError::Undefined {
                        outer: op.to_string(),
                        inner: inner.iter().map(Code::to_string).collect::<Vec<_>>().join(","),
                    })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_monad_is_trivial() {
        let m = IdentityMonad::on_point();
        let ar = Code::atom("ar");
        assert_eq!(m.operations(3).unwrap(), vec![ar.clone()]);
        assert_eq!(m.unit(&Code::atom("pt")).unwrap(), ar);
        assert_eq!(
            m.substitute(&ar, std::slice::from_ref(&ar)).unwrap(),
            (ar, Perm::identity(1))
        );
    }

    #[test]
    fn free_monoid_adds_arities() {
        let m = FreeMonoid;
        let (r, p) = m
            .substitute(&FreeMonoid::op(2), &[FreeMonoid::op(0), FreeMonoid::op(3)])
            .unwrap();
        assert_eq!(r, FreeMonoid::op(3));
        assert!(p.is_identity());
        assert!(m.size(&Code::atom("m01")).is_err());
        assert_eq!(m.operations(2).unwrap().len(), 3);
    }

    #[test]
    fn free_signature_grafts_in_leaf_order() {
        let text = r#"{"base": ["x"], "operations": [{"code": "b", "source": ["x", "x"], "target": "x", "size": 1}]}"#;
        let m = SignatureMonad::from_json(text).unwrap();
        assert_eq!(m.operations(1).unwrap().len(), 2);
        assert_eq!(m.operations(2).unwrap().len(), 4);
        let b = Code::parse("n(b; u(x),u(x))").unwrap();
        let (r, _) = m.substitute(&b, &[b.clone(), Code::parse("u(x)").unwrap()]).unwrap();
        assert_eq!(r.to_string(), "n(b; n(b; u(x),u(x)),u(x))");
        assert_eq!(m.size(&r).unwrap(), 2);
    }

    #[test]
    fn rejects_partial_tables() {
        let text = r#"{"base": ["x"], "operations": [{"code": "e", "source": ["x"], "target": "x", "size": 0}], "units": {"x": "e"}}"#;
        assert!(SignatureMonad::from_json(text).is_err());
        let unknown = r#"{"base": [], "operations": [], "extra": 1}"#;
        assert!(SignatureMonad::from_json(unknown).is_err());
    }
}
