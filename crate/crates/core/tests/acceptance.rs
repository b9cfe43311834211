//! Exit-gate criteria AC1..AC9. Prints one PASS/FAIL line per criterion.
//!
//! AC8 asks for the module law with the plain product on the left. That law
//! does not hold for `μ^top`; it is a left action for `μΨ⁻¹` instead. The
//! criterion is evaluated as stated, its failure is expected, and the
//! corrected law is checked alongside.

use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use qskein::axioms::{mu_top_law, run_all, transmutation_cross_check, Group};
use qskein::bq::{bq_rewrite, BqContext, GENERATORS};
use qskein::classical::classical_points;
use qskein::linalg::dense_rank;
use qskein::nc::{RewriteSystem, Word};
use qskein::oq::{braiding_matrix, oq_rewrite, yang_baxter_holds, OqContext, RConvention, SecondLaw};
use qskein::quotient::{coinvariants, CoactionKind, QuotientEngine, Variant};
use qskein::scalar::{Laurent, Rational};
use qskein::tensor::{BraidWord, TensorElement, TensorPower};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn bq(conv: RConvention) -> Arc<BqContext> {
    Arc::new(BqContext::new(Arc::new(OqContext::new(conv, SecondLaw::default()))))
}

fn tp() -> Arc<TensorPower> {
    Arc::new(TensorPower::new(bq(RConvention::default())))
}

// straight to the stdout handle, which the test harness does not capture
fn say(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
}

struct Gate {
    failed: Vec<&'static str>,
}

impl Gate {
    fn run(&mut self, id: &'static str, what: &str, budget: u64, f: impl FnOnce() -> Result<String, String>) {
        let start = Instant::now();
        let out = f();
        let took = start.elapsed();
        let slow = took > Duration::from_secs(budget);
        let (ok, detail) = match out {
            Ok(d) if !slow => (true, d),
            Ok(d) => (false, format!("{d}; over the {budget} s budget")),
            Err(e) => (false, e),
        };
        let status = if ok { "PASS" } else { "FAIL" };
        say(&format!("{id} {status} {what} ({:.2} s): {detail}", took.as_secs_f64()));
        if !ok {
            self.failed.push(id);
        }
    }
}

// Hilbert function of Z[a,b,c,d]/(ad - bc): degree-d monomials a^i b^j c^k d^l
// not divisible by the leading term ad.
fn commutative_count(d: usize) -> usize {
    let mut n = 0;
    for i in 0..=d {
        for j in 0..=d - i {
            for k in 0..=d - i - j {
                let l = d - i - j - k;
                if i == 0 || l == 0 {
                    n += 1;
                }
            }
        }
    }
    n
}

fn pbw(name: &str, rs: &RewriteSystem) -> Result<String, String> {
    let dims: Vec<usize> = (0..=6).map(|d| rs.graded_basis(d).len()).collect();
    for (d, &n) in dims.iter().enumerate() {
        if n != commutative_count(d) || n != (d + 1) * (d + 1) {
            return Err(format!("{name}: degree {d} has {n} normal words, oracle {}", commutative_count(d)));
        }
    }
    let probe = rs.confluence_probe(3, 200, &mut ChaCha8Rng::seed_from_u64(2));
    if !probe.mismatches.is_empty() {
        return Err(format!("{name}: {} confluence mismatches", probe.mismatches.len()));
    }
    Ok(format!("{name} {dims:?}"))
}

fn span_rank(elems: &[TensorElement]) -> usize {
    let mut keys: Vec<_> = elems.iter().flat_map(|e| e.terms().map(|(k, _)| k.clone())).collect();
    keys.sort();
    keys.dedup();
    let rows: Vec<Vec<Rational>> = elems
        .iter()
        .map(|e| keys.iter().map(|k| e.coeff(k).to_rational()).collect())
        .collect();
    dense_rank(&rows)
}

#[test]
fn acceptance() {
    let mut gate = Gate { failed: Vec::new() };
    say("");

    gate.run("AC1", "transmutation cross-check", 10, || {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        match transmutation_cross_check(&bq(RConvention::default()), 2, 200, &mut rng) {
            (n, None) => Ok(format!("{n} pairs agree")),
            (_, Some(w)) => Err(w),
        }
    });

    gate.run("AC2", "PBW bases and confluence", 30, || {
        let o = pbw("O_q", &oq_rewrite())?;
        let b = pbw("B_q", &bq_rewrite())?;
        Ok(format!("{o}, {b}"))
    });

    gate.run("AC3", "dual BP Hopf axioms", 60, || {
        let r = run_all(2, 50, 42);
        let wanted = ["half-twist-square", "half-twist-inverse", "braided-commutativity"];
        let mut n = 0;
        for c in &r.checks {
            if c.group != Group::Support || wanted.contains(&c.name.as_str()) {
                n += 1;
                if !c.passed {
                    return Err(format!("{} failed: {}", c.name, c.witness.clone().unwrap_or_default()));
                }
            }
        }
        if run_all(2, 50, 42) != r {
            return Err("two runs with seed 42 differ".into());
        }
        Ok(format!("{n} relations pass, report is seed-deterministic"))
    });

    gate.run("AC4", "braid group representation", 60, || {
        let t = tp();
        let lhs = BraidWord::parse("s1 s2 s1", 3).unwrap();
        let rhs = BraidWord::parse("s2 s1 s2", 3).unwrap();
        let mut inputs = Vec::new();
        for &x in &GENERATORS {
            for &y in &GENERATORS {
                for &z in &GENERATORS {
                    inputs.push(TensorElement::pure(vec![Word::letter(x), Word::letter(y), Word::letter(z)], 1.into()));
                }
            }
        }
        // random combinations of keys with at most one letter per factor;
        // higher factor degrees grow too fast under three crossings
        let letters: Vec<Word> = std::iter::once(Word::unit()).chain(GENERATORS.iter().map(|&g| Word::letter(g))).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let mut x = TensorElement::zero(3);
            for _ in 0..3 {
                let key = (0..3).map(|_| letters[rng.gen_range(0..letters.len())].clone()).collect();
                let c = Laurent::from_int(rng.gen_range(1..4)) * Laurent::v_pow(rng.gen_range(-3..4));
                x.add_term(key, &c);
            }
            inputs.push(x);
        }
        for x in &inputs {
            let l = t.braid_act(&lhs, x).map_err(|e| e.to_string())?;
            let r = t.braid_act(&rhs, x).map_err(|e| e.to_string())?;
            if l != r {
                return Err(format!("braid relation fails on {x}"));
            }
            for i in 1..3 {
                let back = t.sigma(i, false, &t.sigma(i, true, x).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
                if &back != x {
                    return Err(format!("s{i}^-1 s{i} moves {x}"));
                }
            }
        }
        if !yang_baxter_holds(&braiding_matrix(t.bq().oq())) {
            return Err("matrix braid relation fails".into());
        }
        Ok(format!("{} inputs, matrix braid relation holds", inputs.len()))
    });

    let engine = QuotientEngine::new(tp(), Variant::PaperMuTop);

    gate.run("AC5", "classical unknot counts", 30, || {
        let mut seen = Vec::new();
        for p in [3, 5] {
            for (b, n) in [("", 1), ("s1", 2)] {
                let pc = classical_points(&engine, &BraidWord::parse(b, n).unwrap(), p).map_err(|e| e.to_string())?;
                if pc.count != p * (p * p - 1) || !pc.matches {
                    return Err(format!("{b:?} at p = {p}: count {}, oracle {}", pc.count, pc.oracle_count));
                }
                seen.push(pc.count);
            }
        }
        Ok(format!("counts {seen:?}"))
    });

    gate.run("AC6", "classical trefoil count", 30, || {
        let pc = classical_points(&engine, &BraidWord::parse("s1 s1 s1", 2).unwrap(), 3).map_err(|e| e.to_string())?;
        if pc.matches {
            Ok(format!("count {} = oracle {}", pc.count, pc.oracle_count))
        } else {
            Err(format!("count {} but oracle {}", pc.count, pc.oracle_count))
        }
    });

    gate.run("AC7", "solid torus coinvariants", 10, || {
        let t = tp();
        let ord = coinvariants(&t, 1, 1, CoactionKind::Ordinary);
        let br = coinvariants(&t, 1, 1, CoactionKind::Braided);
        let both: Vec<_> = ord.iter().chain(&br).cloned().collect();
        let joint = span_rank(&both);
        if ord.len() == 2 && br.len() == 2 && joint == 2 {
            Ok("dimension 2, both solves span the same space".into())
        } else {
            Err(format!("ordinary {}, braided {}, joint rank {joint}", ord.len(), br.len()))
        }
    });

    let mut corrected = String::new();
    gate.run("AC8", "mu-top module law", 30, || {
        let t = tp();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut witness = None;
        for n in [1, 2] {
            if let (_, Some(w)) = mu_top_law(&t, n, 1, 50, false, &mut rng).map_err(|e| e.to_string())? {
                witness.get_or_insert(w);
            }
            match mu_top_law(&t, n, 1, 50, true, &mut rng).map_err(|e| e.to_string())? {
                (k, None) => corrected.push_str(&format!("n = {n}: {k} triples satisfy the μΨ⁻¹ law; ")),
                (_, Some(w)) => corrected.push_str(&format!("n = {n}: μΨ⁻¹ law fails too: {w}; ")),
            }
        }
        match witness {
            None => Ok("literal law holds".into()),
            Some(w) => Err(format!("literal law fails (expected): {}", w.chars().take(160).collect::<String>())),
        }
    });
    say(&format!("    note: {corrected}"));

    gate.run("AC9", "negative control", 10, || {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        match transmutation_cross_check(&bq(RConvention::RowMajor), 2, 200, &mut rng) {
            (_, Some(w)) => Ok(format!("row-major convention caught: {}", w.chars().take(120).collect::<String>())),
            (n, None) => Err(format!("row-major convention passed {n} pairs")),
        }
    });

    assert_eq!(gate.failed, vec!["AC8"], "only the literal AC8 law is expected to fail");
    assert!(corrected.matches("satisfy").count() == 2, "{corrected}");
}
