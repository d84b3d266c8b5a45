//! Opetopes by two independent routes.
//!
//! The Baez–Dolan route takes the objects of the `k`-fold slice of `I`. The
//! Leinster route takes the operations of `T_{k-1}`, where `T_0` is the
//! identity monad on one colour and `T_{j+1}` is the free-operad monad of
//! `T_j`. The first uses only the multicategory code and the second only the
//! monad code, so agreement between them is evidence.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::kernel::Code;
use crate::polymonad::{FreeOperad, IdentityMonad, PolyError, PolyMonad};
use crate::report::Report;
use crate::symcat::{iterated_slice, the_multicat_i, SymcatError};
use crate::zeta::comparison_iso;

/// Codes of one dimension up to a size bound, in output order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OpetopeSet {
    pub dim: usize,
    pub size: usize,
    pub codes: Vec<Code>,
}

impl OpetopeSet {
    /// Number of codes of each size `0..=size`.
    pub fn counts(&self) -> Vec<usize> {
        let mut out = vec![0; self.size + 1];
        for c in &self.codes {
            out[c.size()] += 1;
        }
        out
    }

    /// One code per line.
    pub fn to_text(&self) -> String {
        self.codes.iter().map(|c| format!("{}\n", c)).collect()
    }
}

fn ordered(mut codes: Vec<Code>) -> Vec<Code> {
    codes.sort_by(Code::canonical_cmp);
    codes.dedup();
    codes
}

/// Objects of the `k`-fold slice of `I` of size at most `max_size`.
pub fn bd_opetopes(k: usize, max_size: usize) -> Result<OpetopeSet, SymcatError> {
    let q = iterated_slice(Arc::new(the_multicat_i()), k)?;
    let mut codes = Vec::new();
    for x in q.objects(max_size)? {
        if q.object_size(&x)? <= max_size {
            codes.push(q.encode_object(&x)?);
        }
    }
    Ok(OpetopeSet {
        dim: k,
        size: max_size,
        codes: ordered(codes),
    })
}

/// `T_k`.
pub fn leinster_monad(k: usize) -> Arc<dyn PolyMonad> {
    let mut t: Arc<dyn PolyMonad> = Arc::new(IdentityMonad::on_point());
    for _ in 0..k {
        t = Arc::new(FreeOperad::new(t));
    }
    t
}

/// `S_k`: the single colour of `T_0` for `k = 0`, otherwise the operations of
/// `T_{k-1}` of size at most `max_size`.
pub fn leinster_opetopes(k: usize, max_size: usize) -> Result<OpetopeSet, PolyError> {
    let codes = if k == 0 {
        leinster_monad(0).colors(max_size)?
    } else {
        let t = leinster_monad(k - 1);
        let mut out = Vec::new();
        for op in t.operations(max_size)? {
            if t.size(&op)? <= max_size {
                out.push(op);
            }
        }
        out
    };
    Ok(OpetopeSet {
        dim: k,
        size: max_size,
        codes: ordered(codes),
    })
}

/// Both routes side by side, with the checks that compared them.
#[derive(Clone, Debug, Serialize)]
pub struct Equivalence {
    pub dim: usize,
    pub size: usize,
    pub bd_counts: Vec<usize>,
    pub leinster_counts: Vec<usize>,
    pub report: Report,
}

/// Compares the two routes stratum by stratum, and for `k ≥ 2` runs the
/// comparison between `ζ(Q)'` and `ζ(Q⁺)` for `Q` the `(k-2)`-fold slice of
/// `I`, whose two sides have the dimension-`k` opetopes as operations.
pub fn check_opetope_equivalence(k: usize, max_size: usize) -> Equivalence {
    let mut report = Report::new(&format!("dimension {}", k));
    let bd = bd_opetopes(k, max_size);
    let le = leinster_opetopes(k, max_size);
    let (bd_counts, leinster_counts) = match (&bd, &le) {
        (Ok(a), Ok(b)) => {
            let (ca, cb) = (a.counts(), b.counts());
            for n in 0..=max_size {
                let sa: BTreeSet<&Code> = a.codes.iter().filter(|c| c.size() == n).collect();
                let sb: BTreeSet<&Code> = b.codes.iter().filter(|c| c.size() == n).collect();
                report.check("codes").record(sa == sb, || {
                    let only_bd: Vec<String> = sa.difference(&sb).take(3).map(|c| c.to_string()).collect();
                    let only_le: Vec<String> = sb.difference(&sa).take(3).map(|c| c.to_string()).collect();
                    format!(
                        "size {}: only by slicing {:?}, only by free operads {:?}",
                        n, only_bd, only_le
                    )
                });
            }
            report
                .check("order")
                .record(a.codes == b.codes, || "code lists differ in order".into());
            (ca, cb)
        }
        _ => {
            if let Err(e) = &bd {
                report.check("slicing").fail(e.to_string());
            }
            if let Err(e) = &le {
                report.check("free-operads").fail(e.to_string());
            }
            (Vec::new(), Vec::new())
        }
    };
    if k >= 2 {
        match iterated_slice(Arc::new(the_multicat_i()), k - 2) {
            Ok(q) => report.absorb("comparison", comparison_iso(q, max_size)),
            Err(e) => report.check("comparison").fail(e.to_string()),
        }
    }
    Equivalence {
        dim: k,
        size: max_size,
        bd_counts,
        leinster_counts,
        report,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub dim: usize,
    pub bd: Vec<usize>,
    pub leinster: Vec<usize>,
}

/// Counts by size for every dimension up to `max_dim`, from both routes.
pub fn count_table(max_dim: usize, max_size: usize) -> Result<Vec<CountRow>, PolyError> {
    let mut rows = Vec::new();
    for k in 0..=max_dim {
        rows.push(CountRow {
            dim: k,
            bd: bd_opetopes(k, max_size)?.counts(),
            leinster: leinster_opetopes(k, max_size)?.counts(),
        });
    }
    Ok(rows)
}

/// The table as aligned text, one line per dimension and route.
pub fn count_table_text(rows: &[CountRow]) -> String {
    let mut out = String::new();
    for r in rows {
        for (route, counts) in [("bd", &r.bd), ("leinster", &r.leinster)] {
            let cells: Vec<String> = counts.iter().map(|c| format!("{:>6}", c)).collect();
            out.push_str(&format!("dim {:>2} {:<9}{}\n", r.dim, route, cells.join("")));
        }
    }
    out
}
