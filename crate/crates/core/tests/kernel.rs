use std::cmp::Ordering;
use std::collections::BTreeSet;

use proptest::prelude::*;

use opetope::kernel::{coproduct, is_pullback_square, pullback, Code, ElementMap, Family, Perm, Square, Sum};

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_image(v).unwrap())
}

fn code() -> impl Strategy<Value = Code> {
    let leaf = prop_oneof![Just(Code::atom("pt")), Just(Code::atom("ar")), Just(Code::atom("m2"))];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(Code::unit),
            (inner.clone(), prop::collection::vec(inner, 0..3)).prop_map(|(l, ch)| Code::node(l, ch)),
        ]
    })
}

proptest! {
    #[test]
    fn compose_acts_right_to_left((a, b) in (0usize..7).prop_flat_map(|n| (perm(n), perm(n)))) {
        let items: Vec<usize> = (100..100 + a.degree()).collect();
        let ab = a.compose(&b).unwrap();
        prop_assert_eq!(ab.permute(&items), b.permute(&a.permute(&items)));
    }

    #[test]
    fn compose_is_associative((a, b, c) in (0usize..7).prop_flat_map(|n| (perm(n), perm(n), perm(n)))) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_cancels(a in (0usize..8).prop_flat_map(perm)) {
        let n = a.degree();
        prop_assert_eq!(a.compose(&a.inverse()).unwrap(), Perm::identity(n));
        prop_assert_eq!(a.inverse().compose(&a).unwrap(), Perm::identity(n));
    }

    #[test]
    fn juxtapose_permutes_blocks_separately((a, b) in (0usize..5, 0usize..5).prop_flat_map(|(n, m)| (perm(n), perm(m)))) {
        let x: Vec<usize> = (0..a.degree()).collect();
        let y: Vec<usize> = (50..50 + b.degree()).collect();
        let xy: Vec<usize> = x.iter().chain(&y).copied().collect();
        let mut want = a.permute(&x);
        want.extend(b.permute(&y));
        prop_assert_eq!(Perm::juxtapose(&[a, b]).permute(&xy), want);
    }

    #[test]
    fn codes_print_and_parse_back(c in code()) {
        let text = c.to_string();
        prop_assert_eq!(Code::parse(&text).unwrap(), c);
    }

    #[test]
    fn canonical_order_is_by_size_first(a in code(), b in code()) {
        let ord = a.canonical_cmp(&b);
        prop_assert_eq!(ord, b.canonical_cmp(&a).reverse());
        if a.size() != b.size() {
            prop_assert_eq!(ord, a.size().cmp(&b.size()));
        }
        prop_assert_eq!(ord == Ordering::Equal, a == b);
    }
}

#[test]
fn all_perms_of_four_are_distinct() {
    let all = Perm::all(4);
    assert_eq!(all.len(), 24);
    assert_eq!(all.iter().collect::<BTreeSet<_>>().len(), 24);
}

#[test]
fn malformed_codes_are_rejected() {
    for bad in ["", "n(", "u()", "n(a; )", "n(a;b)", "u(a) ", "a b"] {
        assert!(Code::parse(bad).is_err(), "{:?} parsed", bad);
    }
}

fn base() -> BTreeSet<Code> {
    ["s", "t"].iter().map(|n| Code::atom(n)).collect()
}

fn family(pairs: &[(u8, bool)]) -> Family<u8> {
    Family::from_pairs(
        base(),
        pairs.iter().map(|&(e, f)| (e, Code::atom(if f { "t" } else { "s" }))),
    )
    .unwrap()
}

fn fibre_map<E: Ord + Clone + std::fmt::Debug>(x: &Family<E>) -> ElementMap<E, Code> {
    x.iter().map(|(e, s)| (e.clone(), s.clone())).collect()
}

proptest! {
    #[test]
    fn pullback_matches_pair_enumeration(
        xs in prop::collection::btree_map(0u8..6, any::<bool>(), 0..6),
        ys in prop::collection::btree_map(0u8..6, any::<bool>(), 0..6),
    ) {
        let x = family(&xs.into_iter().collect::<Vec<_>>());
        let y = family(&ys.into_iter().collect::<Vec<_>>());
        let p = pullback(&x, &y).unwrap();
        let mut want = BTreeSet::new();
        for (a, s) in x.iter() {
            for (b, t) in y.iter() {
                if s == t {
                    want.insert((*a, *b));
                }
            }
        }
        prop_assert_eq!(p.elements().copied().collect::<BTreeSet<_>>(), want);

        let corner = Family::from_pairs(base(), base().into_iter().map(|c| (c.clone(), c))).unwrap();
        let top: ElementMap<(u8, u8), u8> = p.elements().map(|e| (*e, e.1)).collect();
        let left: ElementMap<(u8, u8), u8> = p.elements().map(|e| (*e, e.0)).collect();
        let sq = Square {
            apex: &p,
            right_src: &y,
            left_dst: &x,
            corner: &corner,
            top: &top,
            left: &left,
            right: &fibre_map(&y),
            bottom: &fibre_map(&x),
        };
        prop_assert!(is_pullback_square(&sq).is_pullback());
    }

    #[test]
    fn coproduct_sizes_add(
        xs in prop::collection::btree_map(0u8..6, any::<bool>(), 0..6),
        ys in prop::collection::btree_map(0u8..6, any::<bool>(), 0..6),
    ) {
        let x = family(&xs.into_iter().collect::<Vec<_>>());
        let y = family(&ys.into_iter().collect::<Vec<_>>());
        let s = coproduct(&x, &y).unwrap();
        prop_assert_eq!(s.len(), x.len() + y.len());
        for (e, f) in s.iter() {
            let orig = match e {
                Sum::Left(a) => x.fiber_of(a),
                Sum::Right(b) => y.fiber_of(b),
            };
            prop_assert_eq!(Some(f), orig);
        }
    }
}

#[test]
fn dropping_an_apex_element_breaks_the_pullback() {
    let x = family(&[(0, false), (1, true)]);
    let y = family(&[(0, false), (1, false)]);
    let mut p = pullback(&x, &y).unwrap();
    assert_eq!(p.len(), 2);
    p = p.subfamily(|e| *e != (0, 1));
    let corner = Family::from_pairs(base(), base().into_iter().map(|c| (c.clone(), c))).unwrap();
    let top: ElementMap<(u8, u8), u8> = p.elements().map(|e| (*e, e.1)).collect();
    let left: ElementMap<(u8, u8), u8> = p.elements().map(|e| (*e, e.0)).collect();
    let sq = Square {
        apex: &p,
        right_src: &y,
        left_dst: &x,
        corner: &corner,
        top: &top,
        left: &left,
        right: &fibre_map(&y),
        bottom: &fibre_map(&x),
    };
    assert!(!is_pullback_square(&sq).is_pullback());
}
