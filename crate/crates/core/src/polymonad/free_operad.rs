//! The free-operad monad `M'`: colours are operations of `M`, operations are
//! pasting trees of `M`-operations.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::{check_slots, PolyError, PolyMonad};
use crate::kernel::{Code, Perm};

/// Trees by (root colour, size budget).
type TreeMemo = HashMap<(Code, usize), Arc<Vec<(Code, usize)>>>;

/// A tree is `u(s)` for a colour `s` of `M`, or `n(p; t1,…,tm)` with one child
/// per slot of `p` whose root colour is that slot's colour. Its source is the
/// list of node labels in depth-first order; its target is the flattened
/// composite.
pub struct FreeOperad {
    base: Arc<dyn PolyMonad>,
    cache: Mutex<HashMap<usize, Arc<Vec<Code>>>>,
}

impl FreeOperad {
    pub fn new(base: Arc<dyn PolyMonad>) -> FreeOperad {
        FreeOperad {
            base,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn base(&self) -> &Arc<dyn PolyMonad> {
        &self.base
    }

    /// Colour of `M` at the root, after checking the tree is well formed.
    pub fn root_color(&self, t: &Code) -> Result<Code, PolyError> {
        match t {
            Code::Unit(s) => {
                self.base.color_size(s)?;
                Ok(s.as_ref().clone())
            }
            Code::Node(p, ch) => {
                let src = self.base.source(p)?;
                if src.len() != ch.len() {
                    return Err(PolyError::Arity {
                        op: p.to_string(),
                        expected: src.len(),
                        found: ch.len(),
                    });
                }
                for (j, (s, c)) in src.iter().zip(ch.iter()).enumerate() {
                    let r = self.root_color(c)?;
                    if &r != s {
                        return Err(PolyError::Mismatch {
                            op: p.to_string(),
                            slot: j,
                            expected: s.to_string(),
                            found: r.to_string(),
                        });
                    }
                }
                self.base.target(p)
            }
            Code::Atom(_) => Err(PolyError::UnknownOperation(t.to_string())),
        }
    }

    fn labels(t: &Code, out: &mut Vec<Code>) {
        if let Code::Node(p, ch) = t {
            out.push(p.as_ref().clone());
            ch.iter().for_each(|c| FreeOperad::labels(c, out));
        }
    }

    fn leaf_count(t: &Code) -> usize {
        match t {
            Code::Node(_, ch) => ch.iter().map(FreeOperad::leaf_count).sum(),
            _ => 1,
        }
    }

    /// The composite of a well-formed tree and `π` with
    /// `source(op) = π · leaves(t)`.
    pub fn flatten(&self, t: &Code) -> Result<(Code, Perm), PolyError> {
        match t {
            Code::Unit(s) => Ok((self.base.unit(s)?, Perm::identity(1))),
            Code::Node(p, ch) => {
                let mut ops = Vec::with_capacity(ch.len());
                let mut perms = Vec::with_capacity(ch.len());
                for c in ch.iter() {
                    let (op, pi) = self.flatten(c)?;
                    ops.push(op);
                    perms.push(pi);
                }
                let (r, tau) = self.base.substitute(p, &ops)?;
                Ok((r, Perm::juxtapose(&perms).compose(&tau)?))
            }
            Code::Atom(_) => Err(PolyError::UnknownOperation(t.to_string())),
        }
    }

    /// Grafts `inner[i]` at the node with depth-first index `i`. Returns the
    /// tree and, per node of it, the index of its label in the concatenated
    /// inner sources.
    fn graft(
        &self,
        t: &Code,
        inner: &[Code],
        next: &mut usize,
        offset: &mut usize,
    ) -> Result<(Code, Vec<usize>), PolyError> {
        match t {
            Code::Unit(_) => Ok((t.clone(), Vec::new())),
            Code::Node(_, ch) => {
                let piece = &inner[*next];
                *next += 1;
                let base = *offset;
                let mut labels = Vec::new();
                FreeOperad::labels(piece, &mut labels);
                *offset += labels.len();
                let mut kids = Vec::with_capacity(ch.len());
                for c in ch.iter() {
                    kids.push(Some(self.graft(c, inner, next, offset)?));
                }
                let slot_of_leaf = self.flatten(piece)?.1.inverse();
                let mut st = Rebuild {
                    kids,
                    slot_of_leaf,
                    leaf: 0,
                    node: base,
                    tags: Vec::new(),
                };
                let tree = st.go(piece);
                Ok((tree, st.tags))
            }
            Code::Atom(_) => Err(PolyError::UnknownOperation(t.to_string())),
        }
    }

    fn trees(
        &self,
        color: &Code,
        budget: usize,
        ops: &[(Code, usize)],
        memo: &mut TreeMemo,
    ) -> Result<Arc<Vec<(Code, usize)>>, PolyError> {
        if let Some(v) = memo.get(&(color.clone(), budget)) {
            return Ok(v.clone());
        }
        let mut out = Vec::new();
        let cs = self.base.color_size(color)?;
        if cs <= budget {
            out.push((Code::unit(color.clone()), cs));
        }
        for (p, psize) in ops {
            if 1 + psize > budget || &self.base.target(p)? != color {
                continue;
            }
            let mut partial: Vec<(Vec<Code>, usize)> = vec![(Vec::new(), 1 + psize)];
            for s in self.base.source(p)? {
                let mut next = Vec::new();
                for (kids, used) in &partial {
                    for (t, sz) in self.trees(&s, budget - used, ops, memo)?.iter() {
                        let mut k = kids.clone();
                        k.push(t.clone());
                        next.push((k, used + sz));
                    }
                }
                partial = next;
            }
            out.extend(partial.into_iter().map(|(k, sz)| (Code::node(p.clone(), k), sz)));
        }
        let out = Arc::new(out);
        memo.insert((color.clone(), budget), out.clone());
        Ok(out)
    }
}

struct Rebuild {
    kids: Vec<Option<(Code, Vec<usize>)>>,
    slot_of_leaf: Perm,
    leaf: usize,
    node: usize,
    tags: Vec<usize>,
}

impl Rebuild {
    fn go(&mut self, t: &Code) -> Code {
        match t {
            Code::Node(p, ch) => {
                self.tags.push(self.node);
                self.node += 1;
                let kids = ch.iter().map(|c| self.go(c)).collect();
                Code::node(p.as_ref().clone(), kids)
            }
            _ => {
                let slot = self.slot_of_leaf.apply(self.leaf);
                self.leaf += 1;
                let (c, tags) = self.kids[slot].take().expect("each slot is used once");
                self.tags.extend(tags);
                c
            }
        }
    }
}

impl PolyMonad for FreeOperad {
    fn name(&self) -> String {
        format!("({})'", self.base.name())
    }

    fn colors(&self, max_size: usize) -> Result<Vec<Code>, PolyError> {
        self.base.operations(max_size)
    }

    fn color_size(&self, c: &Code) -> Result<usize, PolyError> {
        self.base.size(c)
    }

    fn operations(&self, max_size: usize) -> Result<Vec<Code>, PolyError> {
        if let Some(v) = self.cache.lock().expect("cache").get(&max_size) {
            return Ok(v.as_ref().clone());
        }
        let mut ops = Vec::new();
        for p in self.base.operations(max_size.saturating_sub(1))? {
            let s = self.base.size(&p)?;
            ops.push((p, s));
        }
        let mut memo = HashMap::new();
        let mut out = Vec::new();
        for c in self.base.colors(max_size)? {
            out.extend(
                self.trees(&c, max_size, &ops, &mut memo)?
                    .iter()
                    .map(|(t, _)| t.clone()),
            );
        }
        out.sort();
        self.cache
            .lock()
            .expect("cache")
            .insert(max_size, Arc::new(out.clone()));
        Ok(out)
    }

    fn source(&self, op: &Code) -> Result<Vec<Code>, PolyError> {
        self.root_color(op)?;
        let mut out = Vec::new();
        FreeOperad::labels(op, &mut out);
        Ok(out)
    }

    fn target(&self, op: &Code) -> Result<Code, PolyError> {
        self.root_color(op)?;
        Ok(self.flatten(op)?.0)
    }

    fn size(&self, op: &Code) -> Result<usize, PolyError> {
        self.root_color(op)?;
        fn go(m: &dyn PolyMonad, t: &Code) -> Result<usize, PolyError> {
            match t {
                Code::Unit(s) => m.color_size(s),
                Code::Node(p, ch) => {
                    let mut n = 1 + m.size(p)?;
                    for c in ch.iter() {
                        n += go(m, c)?;
                    }
                    Ok(n)
                }
                Code::Atom(_) => Err(PolyError::UnknownOperation(t.to_string())),
            }
        }
        go(self.base.as_ref(), op)
    }

    fn unit(&self, p: &Code) -> Result<Code, PolyError> {
        let src = self.base.source(p)?;
        Ok(Code::node(p.clone(), src.into_iter().map(Code::unit).collect()))
    }

    fn substitute(&self, op: &Code, inner: &[Code]) -> Result<(Code, Perm), PolyError> {
        check_slots(self, op, inner)?;
        let (mut next, mut offset) = (0, 0);
        let (t, tags) = self.graft(op, inner, &mut next, &mut offset)?;
        debug_assert_eq!(FreeOperad::leaf_count(&t), FreeOperad::leaf_count(op));
        Ok((t, Perm::from_image(tags)?))
    }
}
