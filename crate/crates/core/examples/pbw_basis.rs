//! Normal words of O_q(SL2) and B_q(SL2) by degree, and a normal form.

use qskein::bq::bq_rewrite;
use qskein::nc::NcPoly;
use qskein::oq::oq_rewrite;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> qskein::Result<()> {
    for (name, rs) in [("O_q", oq_rewrite()), ("B_q", bq_rewrite())] {
        let dims: Vec<usize> = (0..=5).map(|d| rs.graded_basis(d).len()).collect();
        let probe = rs.confluence_probe(3, 100, &mut ChaCha8Rng::seed_from_u64(0));
        println!("{name}: graded dims {dims:?}, {} confluence mismatches", probe.mismatches.len());
        let p = NcPoly::parse("d.a + -1 * c.b")?;
        println!("  {p}  ->  {}", rs.normal_form(&p));
    }
    Ok(())
}
