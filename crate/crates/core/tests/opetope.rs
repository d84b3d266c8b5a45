//! Opetope counts against oracles that share no code with either route.
//!
//! A dimension-3 opetope is a planar tree whose nodes are polygons: a node
//! with `m` inputs weighs `1 + m`, a bare input edge weighs nothing. A
//! dimension-4 opetope is a tree whose nodes are dimension-3 opetopes, with
//! one input slot per polygon of the label, and whose input edges are
//! polygons weighing their number of inputs.

use std::collections::BTreeMap;

use opetope::opetope::{bd_opetopes, check_opetope_equivalence, count_table, leinster_opetopes};

/// A dimension-3 shape: weight, number of input edges, and the number of
/// inputs of every polygon.
#[derive(Clone, Debug)]
struct Shape {
    weight: usize,
    leaves: usize,
    polygons: Vec<usize>,
}

/// Every dimension-3 shape of weight exactly `w`, by brute force.
fn shapes(w: usize, memo: &mut BTreeMap<usize, Vec<Shape>>) -> Vec<Shape> {
    if let Some(s) = memo.get(&w) {
        return s.clone();
    }
    let mut out = Vec::new();
    for m in 0..w {
        for kids in forests(m, w - 1 - m, memo) {
            let mut polygons = vec![m];
            let mut leaves = 0;
            for k in &kids {
                match k {
                    None => leaves += 1,
                    Some(t) => {
                        leaves += t.leaves;
                        polygons.extend(&t.polygons);
                    }
                }
            }
            out.push(Shape {
                weight: w,
                leaves,
                polygons,
            });
        }
    }
    memo.insert(w, out.clone());
    out
}

/// Lists of `m` children (edge or subtree) of total weight `w`.
fn forests(m: usize, w: usize, memo: &mut BTreeMap<usize, Vec<Shape>>) -> Vec<Vec<Option<Shape>>> {
    if m == 0 {
        return if w == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for rest in forests(m - 1, w, memo) {
        let mut v = vec![None];
        v.extend(rest);
        out.push(v);
    }
    for first in 1..=w {
        for t in shapes(first, memo) {
            for rest in forests(m - 1, w - first, memo) {
                let mut v = vec![Some(t.clone())];
                v.extend(rest);
                out.push(v);
            }
        }
    }
    out
}

fn dim3_oracle(max: usize) -> Vec<usize> {
    let mut memo = BTreeMap::new();
    (0..=max)
        .map(|w| if w == 0 { 1 } else { shapes(w, &mut memo).len() })
        .collect()
}

/// `a[k][n]`: dimension-4 trees of weight `n` whose output is the polygon
/// with `k` inputs.
fn dim4_oracle(max: usize) -> Vec<usize> {
    let mut memo = BTreeMap::new();
    let mut all = vec![Shape {
        weight: 0,
        leaves: 1,
        polygons: vec![],
    }];
    for w in 1..max {
        all.extend(shapes(w, &mut memo));
    }
    let mut a = vec![vec![0usize; max + 1]; max + 1];
    for n in 0..=max {
        for k in 0..=max {
            let mut total = usize::from(n == k);
            for s in all.iter().filter(|s| s.leaves == k && s.weight < n) {
                // Distribute the remaining weight over the polygons' subtrees.
                let mut ways = vec![0usize; n + 1];
                ways[1 + s.weight] = 1;
                for &p in &s.polygons {
                    let mut next = vec![0usize; n + 1];
                    for (used, &c) in ways.iter().enumerate().filter(|(_, c)| **c > 0) {
                        for extra in 0..=n - used {
                            next[used + extra] += c * a[p][extra];
                        }
                    }
                    ways = next;
                }
                total += ways[n];
            }
            a[k][n] = total;
        }
    }
    (0..=max).map(|n| (0..=max).map(|k| a[k][n]).sum()).collect()
}

#[test]
fn oracles_match_known_shapes() {
    assert_eq!(dim3_oracle(8), vec![1, 1, 1, 2, 4, 9, 21, 51, 127]);
    assert_eq!(dim4_oracle(6), vec![1, 2, 2, 1, 4, 3, 3]);
}

#[test]
fn dimension_two_has_one_opetope_per_size() {
    for set in [bd_opetopes(2, 8).unwrap(), leinster_opetopes(2, 8).unwrap()] {
        assert_eq!(set.counts(), vec![1; 9]);
    }
}

#[test]
fn dimension_three_counts_match_the_oracle() {
    let want = dim3_oracle(7);
    assert_eq!(bd_opetopes(3, 7).unwrap().counts(), want);
    assert_eq!(leinster_opetopes(3, 7).unwrap().counts(), want);
}

#[test]
fn dimension_four_counts_match_the_oracle() {
    let want = dim4_oracle(5);
    assert_eq!(bd_opetopes(4, 5).unwrap().counts(), want);
    assert_eq!(leinster_opetopes(4, 5).unwrap().counts(), want);
}

#[test]
fn dimension_five_counts_are_frozen() {
    let bd = bd_opetopes(5, 4).unwrap();
    assert_eq!(bd.counts(), vec![1, 2, 3, 3, 8]);
    assert_eq!(bd, leinster_opetopes(5, 4).unwrap());
}

#[test]
fn routes_agree_code_for_code() {
    for (k, n) in [(0, 6), (1, 6), (2, 6), (3, 5), (4, 4)] {
        let e = check_opetope_equivalence(k, n);
        assert!(
            e.report.passed(),
            "dim {}: {:?}",
            k,
            e.report.failures().collect::<Vec<_>>()
        );
    }
}

#[test]
fn small_codes_are_readable() {
    let text = bd_opetopes(3, 2).unwrap().to_text();
    assert_eq!(text, "u(ar)\nn(u(pt);)\nn(n(ar; u(pt)); u(ar))\n");
    let rows = count_table(2, 3).unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.bd == r.leinster));
}
