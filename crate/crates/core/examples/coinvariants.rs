//! Coinvariants of B_q(SL2) under the ordinary and braided coactions.

use std::sync::Arc;

use qskein::bq::BqContext;
use qskein::oq::OqContext;
use qskein::quotient::{coinvariants, CoactionKind};
use qskein::tensor::TensorPower;

fn main() {
    let tp = TensorPower::new(Arc::new(BqContext::new(Arc::new(OqContext::default()))));
    for kind in [CoactionKind::Ordinary, CoactionKind::Braided] {
        println!("{kind:?}:");
        for x in coinvariants(&tp, 1, 2, kind) {
            println!("  {x}");
        }
    }
    println!("quantum traces in B_q up to degree 2:");
    for x in tp.bq().quantum_trace(2) {
        println!("  {x}");
    }
}
