use std::sync::Arc;

use qskein::bq::BqContext;
use qskein::classical::classical_points;
use qskein::oq::OqContext;
use qskein::quotient::{Closure, QuotientEngine, Variant};
use qskein::tensor::{BraidWord, TensorPower};

fn engine(variant: Variant, closure: Closure) -> QuotientEngine {
    let tp = TensorPower::new(Arc::new(BqContext::new(Arc::new(OqContext::default()))));
    QuotientEngine::new(Arc::new(tp), variant).with_closure(closure)
}

fn unknot() -> BraidWord {
    BraidWord::parse("", 1).unwrap()
}

#[test]
fn unknot_stabilizes_with_slack_two() {
    let q = engine(Variant::PaperMuTop, Closure::None).link_quotient(&unknot(), 2, 2).unwrap();
    assert_eq!(q.working_degree, 4);
    assert_eq!(q.stabilized, vec![true; 3]);
    assert!(q.graded_dims.iter().all(|&d| d >= 1));
}

#[test]
fn more_working_degree_never_grows_the_quotient() {
    for closure in [Closure::None, Closure::Both] {
        let e = engine(Variant::PaperMuTop, closure);
        let mut prev: Option<Vec<usize>> = None;
        for slack in 0..=2 {
            let dims = e.link_quotient(&unknot(), 2, slack).unwrap().graded_dims;
            if let Some(p) = &prev {
                assert!(dims.iter().zip(p).all(|(a, b)| a <= b), "{closure}: {p:?} then {dims:?}");
            }
            prev = Some(dims);
        }
    }
}

#[test]
fn two_unknot_presentations() {
    let e = engine(Variant::PaperMuTop, Closure::None);
    let one = unknot();
    let two = BraidWord::parse("s1", 2).unwrap();
    // graded dimensions depend on the presentation and are only reported
    let d1 = e.link_quotient(&one, 1, 1).unwrap().graded_dims;
    let d2 = e.link_quotient(&two, 1, 1).unwrap().graded_dims;
    println!("unknot as closure of e in B1: {d1:?}, of s1 in B2: {d2:?}");
    for p in [3, 5] {
        let a = classical_points(&e, &one, p).unwrap();
        let b = classical_points(&e, &two, p).unwrap();
        assert_eq!(a.count, b.count);
        assert!(a.matches && b.matches);
    }
}

#[test]
fn mapping_torus_of_the_annulus() {
    let q = engine(Variant::PaperMuTop, Closure::None).mapping_torus_quotient(&unknot(), 2, 2).unwrap();
    assert_eq!(q.graded_dims.len(), 3);
    assert_eq!(q.stabilized.len(), 3);
    println!("mapping torus of the identity on the annulus: {:?} stabilized {:?}", q.graded_dims, q.stabilized);
}

#[test]
fn comparison_variant_is_reported_alongside() {
    let beta = BraidWord::parse("s1", 2).unwrap();
    let top = engine(Variant::PaperMuTop, Closure::None).link_quotient(&beta, 1, 1).unwrap();
    let cmp = engine(Variant::Mvdv, Closure::None).link_quotient(&beta, 1, 1).unwrap();
    println!("s1: mu-top {:?}, comparison {:?}", top.graded_dims, cmp.graded_dims);
    assert_eq!(top.graded_dims[0], 1);
    assert_eq!(cmp.graded_dims.len(), top.graded_dims.len());
}
