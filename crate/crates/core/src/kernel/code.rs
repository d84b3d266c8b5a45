//! Canonical nested codes shared by both opetope routes.
//!
//! Grammar:
//!
//! ```text
//! code  := atom | "u(" code ")" | "n(" code ";" [" " code ("," code)*] ")"
//! atom  := [A-Za-z0-9_*'.-]+
//! ```
//!
//! `u(c)` is a null composite over the colour `c`; `n(c; t1,...,tm)` is a node
//! labelled `c` with one subtree per input slot. Printing is injective, so two
//! codes are equal exactly when their texts are.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::KernelError;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Code {
    Atom(Arc<str>),
    Unit(Arc<Code>),
    Node(Arc<Code>, Arc<[Code]>),
}

impl Code {
    pub fn atom(s: &str) -> Code {
        Code::Atom(Arc::from(s))
    }

    pub fn unit(c: Code) -> Code {
        Code::Unit(Arc::new(c))
    }

    pub fn node(label: Code, children: Vec<Code>) -> Code {
        Code::Node(Arc::new(label), children.into())
    }

    /// Number of `n(` constructors anywhere in the code, labels included.
    pub fn size(&self) -> usize {
        match self {
            Code::Atom(_) => 0,
            Code::Unit(c) => c.size(),
            Code::Node(l, ch) => 1 + l.size() + ch.iter().map(Code::size).sum::<usize>(),
        }
    }

    /// Nesting depth of the outer tree (labels not counted). `u(c)` has depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Code::Atom(_) | Code::Unit(_) => 0,
            Code::Node(_, ch) => 1 + ch.iter().map(Code::depth).max().unwrap_or(0),
        }
    }

    pub fn parse(s: &str) -> Result<Code, KernelError> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let c = p.code()?;
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(c)
    }

    /// Ordering used for all emitted code lists: by size, then by text.
    pub fn canonical_cmp(&self, other: &Code) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.to_string().cmp(&other.to_string()))
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Code::Atom(a) => f.write_str(a),
            Code::Unit(c) => write!(f, "u({})", c),
            Code::Node(l, ch) => {
                write!(f, "n({};", l)?;
                for (i, c) in ch.iter().enumerate() {
                    f.write_str(if i == 0 { " " } else { "," })?;
                    write!(f, "{}", c)?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl serde::Serialize for Code {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Code {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Code::parse(&s).map_err(serde::de::Error::custom)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> KernelError {
        KernelError::CodeSyntax {
            position: self.pos,
            message: msg.to_string(),
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), KernelError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", s)))
        }
    }

    fn code(&mut self) -> Result<Code, KernelError> {
        if self.eat("u(") {
            let c = self.code()?;
            self.expect(")")?;
            return Ok(Code::unit(c));
        }
        if self.eat("n(") {
            let label = self.code()?;
            self.expect(";")?;
            let mut children = Vec::new();
            if self.eat(" ") {
                children.push(self.code()?);
                while self.eat(",") {
                    children.push(self.code()?);
                }
            }
            self.expect(")")?;
            return Ok(Code::node(label, children));
        }
        let start = self.pos;
        while self.pos < self.src.len() && is_atom_byte(self.src[self.pos]) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a code"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii atom");
        Ok(Code::atom(text))
    }
}

pub(crate) fn is_atom_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || matches!(b, b'_' | b'*' | b'\'' | b'.' | b'-')
}

/// True when `s` can be used verbatim as an atom.
pub fn is_atom_text(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(is_atom_byte) && !(s.starts_with("u(") || s.starts_with("n("))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_code() -> impl Strategy<Value = Code> {
        let leaf = prop_oneof![
            Just(Code::atom("pt")),
            Just(Code::atom("ar")),
            "[a-z][a-z0-9_]{0,3}".prop_map(|s| Code::atom(&s))
        ];
        leaf.prop_recursive(4, 24, 4, |inner| {
            prop_oneof![
                inner.clone().prop_map(Code::unit),
                (inner.clone(), prop::collection::vec(inner, 0..4)).prop_map(|(l, ch)| Code::node(l, ch)),
            ]
        })
    }

    #[test]
    fn prints_grammar() {
        let c = Code::node(Code::atom("ar"), vec![Code::unit(Code::atom("pt"))]);
        assert_eq!(c.to_string(), "n(ar; u(pt))");
        let z = Code::node(Code::atom("x"), vec![]);
        assert_eq!(z.to_string(), "n(x;)");
        let two = Code::node(Code::atom("x"), vec![z.clone(), z]);
        assert_eq!(two.to_string(), "n(x; n(x;),n(x;))");
    }

    #[test]
    fn size_counts_nested_nodes() {
        let chain1 = Code::parse("n(ar; u(pt))").unwrap();
        assert_eq!(chain1.size(), 1);
        let c = Code::parse("n(n(ar; u(pt)); u(ar))").unwrap();
        assert_eq!(c.size(), 2);
        assert_eq!(Code::parse("u(n(ar; u(pt)))").unwrap().size(), 1);
    }

    #[test]
    fn rejects_garbage() {
        assert!(Code::parse("").is_err());
        assert!(Code::parse("n(ar u(pt))").is_err());
        assert!(Code::parse("u(pt").is_err());
        assert!(Code::parse("pt)").is_err());
    }

    proptest! {
        #[test]
        fn parse_print_roundtrip(c in arb_code()) {
            let text = c.to_string();
            prop_assert_eq!(Code::parse(&text).unwrap(), c);
        }
    }
}
