//! Quotient for the mapping torus of a braid acting on a punctured disk.

use std::sync::Arc;

use qskein::bq::BqContext;
use qskein::oq::OqContext;
use qskein::quotient::{QuotientEngine, Variant};
use qskein::tensor::{BraidWord, TensorPower};

fn main() -> qskein::Result<()> {
    let tp = TensorPower::new(Arc::new(BqContext::new(Arc::new(OqContext::default()))));
    let engine = QuotientEngine::new(Arc::new(tp), Variant::PaperMuTop);
    for (b, n, degree) in [("", 1, 2), ("s1", 2, 1), ("s1^-1", 2, 1)] {
        let q = engine.mapping_torus_quotient(&BraidWord::parse(b, n)?, degree, 1)?;
        println!("[{b}] on {n}: dims {:?} stabilized {:?}, {} relations", q.graded_dims, q.stabilized, q.relations_used);
    }
    Ok(())
}
