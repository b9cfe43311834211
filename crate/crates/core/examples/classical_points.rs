//! SL2(F_p) points of braid closures, with the Artin-presentation oracle.

use std::sync::Arc;

use qskein::bq::BqContext;
use qskein::classical::classical_points;
use qskein::oq::OqContext;
use qskein::quotient::{QuotientEngine, Variant};
use qskein::tensor::{BraidWord, TensorPower};

fn main() -> qskein::Result<()> {
    let tp = TensorPower::new(Arc::new(BqContext::new(Arc::new(OqContext::default()))));
    let engine = QuotientEngine::new(Arc::new(tp), Variant::PaperMuTop);
    let links = [("unknot", "", 1), ("unknot", "s1", 2), ("Hopf link", "s1 s1", 2), ("trefoil", "s1 s1 s1", 2), ("figure eight", "s1 s2^-1 s1 s2^-1", 3), ("unknot", "s1 s2", 3)];
    for p in [3, 5] {
        for (name, b, n) in links {
            let beta = BraidWord::parse(b, n)?;
            match classical_points(&engine, &beta, p) {
                Ok(pc) => println!("p = {p} {name:>12}: {} points, oracle {}", pc.count, pc.oracle_count),
                Err(e) => println!("p = {p} {name:>12}: {e}"),
            }
        }
    }
    Ok(())
}
