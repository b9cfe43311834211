//! Transmuted product on B_q(SL2) against its presented relations.

use std::sync::Arc;

use qskein::axioms::transmutation_cross_check;
use qskein::bq::BqContext;
use qskein::nc::{NcPoly, Word};
use qskein::oq::OqContext;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> qskein::Result<()> {
    let bq = BqContext::new(Arc::new(OqContext::default()));
    for (a, b) in [("b", "a"), ("d", "a"), ("c", "b"), ("d", "c")] {
        let (x, y) = (NcPoly::word(Word::from(a)), NcPoly::word(Word::from(b)));
        let twisted = bq.transmuted_mul(&bq.phi(&x), &bq.phi(&y))?;
        let presented = bq.mul(&x, &y);
        println!("{a} * {b} = {twisted}");
        assert_eq!(twisted, presented);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (n, witness) = transmutation_cross_check(&bq, 2, 50, &mut rng);
    println!("{n} pairs checked, witness: {witness:?}");
    Ok(())
}
