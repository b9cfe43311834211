//! Truncated quotients for a few braid closures.

use std::sync::Arc;

use qskein::bq::BqContext;
use qskein::oq::OqContext;
use qskein::quotient::{QuotientEngine, Variant};
use qskein::tensor::{BraidWord, TensorPower};

fn main() -> qskein::Result<()> {
    let tp = Arc::new(TensorPower::new(Arc::new(BqContext::new(Arc::new(OqContext::default())))));
    for variant in [Variant::PaperMuTop, Variant::Mvdv] {
        let engine = QuotientEngine::new(tp.clone(), variant);
        for (b, n, degree) in [("", 1, 3), ("s1", 2, 1), ("s1 s1", 2, 1), ("s1 s1 s1", 2, 1)] {
            let q = engine.link_quotient(&BraidWord::parse(b, n)?, degree, 1)?;
            println!("{variant:>12} [{b}] on {n}: dims {:?} stabilized {:?}", q.graded_dims, q.stabilized);
        }
    }
    Ok(())
}
