//! Braid generators acting on braided tensor powers of B_q(SL2).

use std::sync::Arc;

use qskein::bq::BqContext;
use qskein::nc::Word;
use qskein::oq::OqContext;
use qskein::tensor::{BraidWord, TensorElement, TensorPower};

fn main() -> qskein::Result<()> {
    let tp = TensorPower::new(Arc::new(BqContext::new(Arc::new(OqContext::default()))));
    for x in ["a", "b", "c", "d"] {
        let e = TensorElement::embed(2, 1, Word::from(x));
        println!("s1 (1 ⊗ {x}) = {}", tp.sigma(1, true, &e)?);
    }
    let x = TensorElement::pure(vec![Word::from("b"), Word::from("a"), Word::from("c")], 1.into());
    let l = tp.braid_act(&BraidWord::parse("s1 s2 s1", 3)?, &x)?;
    let r = tp.braid_act(&BraidWord::parse("s2 s1 s2", 3)?, &x)?;
    println!("braid relation on b ⊗ a ⊗ c: {} terms, equal = {}", l.len(), l == r);
    Ok(())
}
