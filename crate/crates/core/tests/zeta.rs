use std::collections::BTreeSet;
use std::sync::Arc;

use opetope::kernel::{Code, Family};
use opetope::polymonad::{apply_t, FreeMonoid, IdentityMonad, MonadOpfunctor, PolyMonad};
use opetope::symcat::{iterated_slice, the_multicat_i, Cell, Presentation, SymMulticat, SymMulticatMorphism};
use opetope::zeta::{comparison_iso, zeta_mor, zeta_obj};

fn i() -> Arc<dyn SymMulticat> {
    Arc::new(the_multicat_i())
}

#[test]
fn zeta_of_i_acts_like_the_identity_on_small_families() {
    let z = zeta_obj(i()).unwrap().monad;
    let id = IdentityMonad::on_point();
    let base = BTreeSet::from([Code::atom("pt")]);
    for n in 0..=5 {
        let x = Family::from_pairs(base.clone(), (0..n).map(|e| (e, Code::atom("pt")))).unwrap();
        for s in 0..=5 {
            assert_eq!(apply_t(z.as_ref(), &x, s).unwrap(), apply_t(&id, &x, s).unwrap());
        }
    }
}

/// `ζ(I⁺)` is the free-monoid monad: colour `ar ↦ pt`, the chain with `n`
/// nodes `↦ m_n`, labels in place.
#[test]
fn zeta_of_the_first_slice_is_the_free_monoid() {
    let z = zeta_obj(iterated_slice(i(), 1).unwrap()).unwrap().monad;
    let ops = z.operations(6).unwrap();
    let arities: Vec<usize> = ops.iter().map(|o| z.arity(o).unwrap()).collect();
    assert_eq!(arities, (0..=6).collect::<Vec<_>>());
    for o in &ops {
        assert_eq!(z.size(o).unwrap(), z.arity(o).unwrap());
    }
    let z2 = z.clone();
    let f = MonadOpfunctor::new(
        z.clone(),
        Arc::new(FreeMonoid),
        Arc::new(|_: &Code| Ok(Code::atom("pt"))),
        Arc::new(move |op: &Code| {
            let n = z2.arity(op)?;
            Ok((FreeMonoid::op(n), (0..n).collect()))
        }),
    );
    let r = f.check(4);
    assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
}

#[test]
fn zeta_of_identity_morphisms_is_the_identity() {
    for k in 0..=2 {
        let q = iterated_slice(i(), k).unwrap();
        let f = zeta_mor(&SymMulticatMorphism::identity(q)).unwrap();
        let r = f.check(3);
        assert!(r.passed(), "k = {}: {:?}", k, r.failures().collect::<Vec<_>>());
        for op in f.source.operations(3).unwrap() {
            let (image, pos) = f.map_op(&op).unwrap();
            assert_eq!(image, op);
            assert_eq!(pos, (0..pos.len()).collect::<Vec<_>>());
        }
    }
}

#[test]
fn zeta_of_the_unit_inclusion_is_an_opfunctor() {
    let text = r#"{
        "objects": ["a"],
        "arrows": [{"code": "m", "source": ["a", "a"], "target": "a", "size": 1}],
        "composition": "free-on-generators",
        "action": "freely-symmetric"
    }"#;
    let b: Arc<dyn SymMulticat> = Arc::new(Presentation::from_json(text).unwrap());
    let id_a = b.identity(&Cell::atom("a")).unwrap();
    let f = SymMulticatMorphism::new(
        i(),
        b,
        Arc::new(|_: &Cell| Ok(Cell::atom("a"))),
        Arc::new(move |_: &Cell| Ok(id_a.clone())),
    );
    assert!(f.check_functor(3).passed());
    let phi = zeta_mor(&f).unwrap();
    assert_eq!(phi.map_color(&Code::atom("pt")).unwrap(), Code::atom("a"));
    let r = phi.check(3);
    assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
}

#[test]
fn comparison_holds_for_low_slices() {
    for k in 0..=1 {
        let r = comparison_iso(iterated_slice(i(), k).unwrap(), 4);
        assert!(r.passed(), "k = {}: {:?}", k, r.failures().collect::<Vec<_>>());
        for name in ["bijection", "commuting", "substitution"] {
            let c = r.checks.iter().find(|c| c.name == name).unwrap();
            assert!(c.cases > 0, "{} ran no cases", name);
        }
    }
}
