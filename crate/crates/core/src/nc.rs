//! Noncommutative polynomials over `Z[v^{±1}]` and reduction to normal
//! form against a fixed rewrite system.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;
use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::{parse_scalar_monomial, split_plus, Laurent};

/// A word in generator indices. The empty word is the unit monomial.
///
/// Ordered degree-lexicographically: shorter words first, then
/// lexicographically by letter index.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn letter(x: u8) -> Self {
        Word(vec![x])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    fn find(&self, pat: &Word) -> Option<usize> {
        if pat.len() > self.len() {
            return None;
        }
        (0..=self.len() - pat.len()).find(|&i| self.0[i..i + pat.len()] == pat.0[..])
    }

    fn occurrences(&self, pat: &Word) -> Vec<usize> {
        if pat.len() > self.len() {
            return Vec::new();
        }
        (0..=self.len() - pat.len()).filter(|&i| self.0[i..i + pat.len()] == pat.0[..]).collect()
    }

    fn splice(&self, at: usize, removed: usize, inserted: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() - removed + inserted.len());
        v.extend_from_slice(&self.0[..at]);
        v.extend_from_slice(&inserted.0);
        v.extend_from_slice(&self.0[at + removed..]);
        Word(v)
    }

    /// Renders with the default alphabet `a, b, c, ...`, letters joined by `.`.
    pub fn render(&self) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        self.0.iter().map(|&x| ((b'a' + x) as char).to_string()).collect::<Vec<_>>().join(".")
    }
}

impl From<&str> for Word {
    /// `"abd"` or `"a.b.d"`; `""` or `"1"` is the unit word.
    fn from(s: &str) -> Self {
        if s == "1" {
            return Word::unit();
        }
        Word(s.bytes().filter(|&b| b != b'.').map(|b| b - b'a').collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Finite linear combination of words.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct NcPoly {
    terms: BTreeMap<Word, Laurent>,
}

impl NcPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Word::unit())
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, Laurent::one())
    }

    pub fn letter(x: u8) -> Self {
        Self::word(Word::letter(x))
    }

    pub fn term(w: Word, c: Laurent) -> Self {
        let mut p = Self::zero();
        p.add_term(w, &c);
        p
    }

    pub fn scalar(c: Laurent) -> Self {
        Self::term(Word::unit(), c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Laurent)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Laurent {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Largest word present.
    pub fn leading(&self) -> Option<(&Word, &Laurent)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<usize> {
        self.leading().map(|(w, _)| w.len())
    }

    pub fn add_term(&mut self, w: Word, c: &Laurent) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &NcPoly, c: &Laurent) {
        if c.is_one() {
            for (w, x) in &other.terms {
                self.add_term(w.clone(), x);
            }
        } else {
            for (w, x) in &other.terms {
                self.add_term(w.clone(), &(x * c));
            }
        }
    }

    pub fn scale(&self, c: &Laurent) -> NcPoly {
        let mut out = NcPoly::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out.add_scaled(other, &Laurent::one());
        out
    }

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out.add_scaled(other, &Laurent::from_int(-1));
        out
    }

    /// Product in the free algebra (concatenation), no reduction.
    pub fn free_mul(&self, other: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (u, x) in &self.terms {
            for (w, y) in &other.terms {
                out.add_term(u.concat(w), &(x * y));
            }
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Laurent) -> Laurent) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &f(c));
        }
        out
    }

    /// Parses the text format `c*v^e * a.b + ...`; the unit word is `1`.
    /// A term without ` * ` is read as a scalar times the unit word.
    pub fn parse(text: &str) -> Result<NcPoly> {
        let mut out = NcPoly::zero();
        if text.trim() == "0" {
            return Ok(out);
        }
        for (off, piece) in split_plus(text) {
            let (scalar_part, word_part, word_off) = match piece.rfind(" * ") {
                Some(i) => (&piece[..i], piece[i + 3..].trim(), i + 3),
                None => {
                    let t = piece.trim();
                    if !t.is_empty() && t.bytes().all(|b| b.is_ascii_lowercase() || b == b'.') && !t.contains('v') && !t.contains('q') {
                        ("1", t, 0)
                    } else {
                        (piece, "1", 0)
                    }
                }
            };
            let (c, e) = parse_scalar_monomial(scalar_part, off)?;
            let word = parse_word(word_part, off + word_off)?;
            out.add_term(word, &Laurent::term(c, e));
        }
        Ok(out)
    }
}

fn parse_word(text: &str, pos: usize) -> Result<Word> {
    if text == "1" {
        return Ok(Word::unit());
    }
    let mut letters = Vec::new();
    for (i, part) in text.split('.').enumerate() {
        let b = part.as_bytes();
        if b.len() != 1 || !b[0].is_ascii_lowercase() || b[0] == b'v' || b[0] == b'q' {
            return Err(Error::Parse { pos: pos + i * 2, msg: format!("bad letter `{part}`") });
        }
        letters.push(b[0] - b'a');
    }
    Ok(Word(letters))
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            for (e, k) in c.terms().rev() {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "{} * {}", Laurent::term(k.clone(), e), w.render())?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Debug)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: NcPoly,
}

/// Generator alphabet, deglex order and reduction rules of a presented
/// algebra. Reductions of single words are memoized.
pub struct RewriteSystem {
    alphabet: Vec<char>,
    rules: Vec<Rule>,
    // rule indices sorted by decreasing leading word
    by_lhs_desc: Vec<usize>,
    memo: RwLock<HashMap<Word, NcPoly>>,
}

impl Clone for RewriteSystem {
    fn clone(&self) -> Self {
        Self {
            alphabet: self.alphabet.clone(),
            rules: self.rules.clone(),
            by_lhs_desc: self.by_lhs_desc.clone(),
            memo: RwLock::new(HashMap::new()),
        }
    }
}

impl fmt::Debug for RewriteSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RewriteSystem").field("alphabet", &self.alphabet).field("rules", &self.rules).finish()
    }
}

impl RewriteSystem {
    /// Rejects rules whose replacement is not strictly below the leading
    /// word, or that mention letters outside the alphabet.
    pub fn new(alphabet: Vec<char>, rules: Vec<Rule>) -> Result<Self> {
        let n = alphabet.len() as u8;
        for r in &rules {
            if r.lhs.is_empty() {
                return Err(Error::BadRule("empty leading word".into()));
            }
            let bad_letter = |w: &Word| w.0.iter().any(|&x| x >= n);
            if bad_letter(&r.lhs) || r.rhs.terms().any(|(w, _)| bad_letter(w)) {
                return Err(Error::BadRule(format!("letter outside alphabet in {:?}", r.lhs)));
            }
            if let Some((w, _)) = r.rhs.terms().find(|(w, _)| **w >= r.lhs) {
                return Err(Error::BadRule(format!("{:?} -> ... contains non-smaller word {:?}", r.lhs, w)));
            }
        }
        let mut by_lhs_desc: Vec<usize> = (0..rules.len()).collect();
        by_lhs_desc.sort_by(|&i, &j| rules[j].lhs.cmp(&rules[i].lhs));
        Ok(Self { alphabet, rules, by_lhs_desc, memo: RwLock::new(HashMap::new()) })
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.rules.iter().all(|r| w.find(&r.lhs).is_none())
    }

    // largest applicable leading word, leftmost occurrence
    fn first_redex(&self, w: &Word) -> Option<(usize, usize)> {
        self.by_lhs_desc.iter().find_map(|&ri| w.find(&self.rules[ri].lhs).map(|pos| (ri, pos)))
    }

    pub fn normal_form_word(&self, w: &Word) -> NcPoly {
        if let Some(p) = self.memo.read().unwrap().get(w) {
            return p.clone();
        }
        let out = match self.first_redex(w) {
            None => NcPoly::word(w.clone()),
            Some((ri, pos)) => {
                let rule = &self.rules[ri];
                let mut out = NcPoly::zero();
                for (rw, c) in rule.rhs.terms() {
                    let next = w.splice(pos, rule.lhs.len(), rw);
                    out.add_scaled(&self.normal_form_word(&next), c);
                }
                out
            }
        };
        self.memo.write().unwrap().insert(w.clone(), out.clone());
        out
    }

    pub fn normal_form(&self, p: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in p.terms() {
            if self.memo.read().unwrap().get(w).is_none() && self.is_normal(w) {
                out.add_term(w.clone(), c);
            } else {
                out.add_scaled(&self.normal_form_word(w), c);
            }
        }
        out
    }

    /// Normal form of the product of two words.
    pub fn mul_words(&self, x: &Word, y: &Word) -> NcPoly {
        if x.is_empty() {
            return self.normal_form_word(y);
        }
        if y.is_empty() {
            return self.normal_form_word(x);
        }
        self.normal_form_word(&x.concat(y))
    }

    pub fn mul(&self, x: &NcPoly, y: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (u, a) in x.terms() {
            for (w, b) in y.terms() {
                out.add_scaled(&self.mul_words(u, w), &(a * b));
            }
        }
        out
    }

    /// Normal words of length exactly `d`, in monomial order.
    pub fn graded_basis(&self, d: usize) -> Vec<Word> {
        let n = self.alphabet.len() as u8;
        let mut level = vec![Word::unit()];
        for _ in 0..d {
            let mut next = Vec::new();
            for w in &level {
                for x in 0..n {
                    let mut v = w.0.clone();
                    v.push(x);
                    let cand = Word(v);
                    // factors of normal words are normal, so only suffixes
                    // ending at the new letter need checking
                    if self.rules.iter().all(|r| !cand.0.ends_with(&r.lhs.0)) {
                        next.push(cand);
                    }
                }
            }
            level = next;
        }
        level.sort();
        level
    }

    /// Normal words of length `<= d`, in monomial order.
    pub fn filtered_basis(&self, d: usize) -> Vec<Word> {
        (0..=d).flat_map(|k| self.graded_basis(k)).collect()
    }

    // Reduction with a random choice among all applicable (rule, position)
    // pairs at every step; no memo.
    fn reduce_random<R: Rng>(&self, p: &NcPoly, rng: &mut R, prefer_right: bool) -> NcPoly {
        let mut done = NcPoly::zero();
        let mut todo = p.clone();
        while let Some((w, c)) = todo.leading().map(|(w, c)| (w.clone(), c.clone())) {
            todo.add_term(w.clone(), &-&c);
            let mut redexes = Vec::new();
            for (ri, r) in self.rules.iter().enumerate() {
                for pos in w.occurrences(&r.lhs) {
                    redexes.push((ri, pos));
                }
            }
            if redexes.is_empty() {
                done.add_term(w, &c);
                continue;
            }
            let pick = if prefer_right && rng.gen_bool(0.5) {
                *redexes.iter().max_by_key(|(_, p)| *p).unwrap()
            } else {
                redexes[rng.gen_range(0..redexes.len())]
            };
            let rule = &self.rules[pick.0];
            for (rw, k) in rule.rhs.terms() {
                todo.add_term(w.splice(pick.1, rule.lhs.len(), rw), &(k * &c));
            }
        }
        done
    }

    /// Reduces `trials` random polynomials of degree `<= degree` by two
    /// independent randomized strategies and records every disagreement.
    pub fn confluence_probe<R: Rng>(&self, degree: usize, trials: usize, rng: &mut R) -> ConfluenceReport {
        let mut mismatches = Vec::new();
        let n = self.alphabet.len() as u8;
        for _ in 0..trials {
            let mut p = NcPoly::zero();
            for _ in 0..rng.gen_range(1..=4) {
                let len = rng.gen_range(0..=degree);
                let w = Word((0..len).map(|_| rng.gen_range(0..n)).collect());
                p.add_term(w, &random_coeff(rng));
            }
            let x = self.reduce_random(&p, rng, false);
            let y = self.reduce_random(&p, rng, true);
            if x != y {
                mismatches.push(ConfluenceWitness { input: p, first: x, second: y });
            }
        }
        ConfluenceReport { degree, trials, mismatches }
    }
}

#[derive(Clone, Debug)]
pub struct ConfluenceWitness {
    pub input: NcPoly,
    pub first: NcPoly,
    pub second: NcPoly,
}

#[derive(Clone, Debug)]
pub struct ConfluenceReport {
    pub degree: usize,
    pub trials: usize,
    pub mismatches: Vec<ConfluenceWitness>,
}

impl ConfluenceReport {
    pub fn is_confluent(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Small random scalar `c * v^e` with `c` in `-3..=3 \ {0}`.
pub fn random_coeff<R: Rng>(rng: &mut R) -> Laurent {
    let mut c: i64 = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        c = -c;
    }
    Laurent::term(BigInt::from(c), rng.gen_range(-4..=4))
}

/// Random combination of up to `max_terms` normal words of length `<= degree`.
pub fn random_normal_poly<R: Rng>(rs: &RewriteSystem, degree: usize, max_terms: usize, rng: &mut R) -> NcPoly {
    let basis = rs.filtered_basis(degree);
    let mut p = NcPoly::zero();
    for _ in 0..rng.gen_range(1..=max_terms.max(1)) {
        let w = basis[rng.gen_range(0..basis.len())].clone();
        p.add_term(w, &random_coeff(rng));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn single_rule() -> RewriteSystem {
        let rule = Rule { lhs: Word::from("ba"), rhs: NcPoly::term(Word::from("ab"), Laurent::q_pow(1)) };
        RewriteSystem::new(vec!['a', 'b'], vec![rule]).unwrap()
    }

    #[test]
    fn deglex_order() {
        assert!(Word::from("d") < Word::from("aa"));
        assert!(Word::from("ab") < Word::from("ba"));
        assert!(Word::unit() < Word::from("a"));
    }

    #[test]
    fn increasing_rule_rejected() {
        let rule = Rule { lhs: Word::from("ab"), rhs: NcPoly::word(Word::from("ba")) };
        assert!(matches!(RewriteSystem::new(vec!['a', 'b'], vec![rule]), Err(Error::BadRule(_))));
    }

    #[test]
    fn zero_reduces_to_zero() {
        assert!(single_rule().normal_form(&NcPoly::zero()).is_zero());
    }

    #[test]
    fn single_rule_is_confluent() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(single_rule().confluence_probe(2, 100, &mut rng).is_confluent());
    }

    #[test]
    fn broken_rules_are_witnessed() {
        let r1 = Rule { lhs: Word::from("ba"), rhs: NcPoly::word(Word::from("ab")) };
        let r2 = Rule { lhs: Word::from("ba"), rhs: NcPoly::term(Word::from("ab"), Laurent::from_int(2)) };
        let rs = RewriteSystem::new(vec!['a', 'b'], vec![r1, r2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let rep = rs.confluence_probe(2, 200, &mut rng);
        assert!(!rep.is_confluent());
    }

    #[test]
    fn text_round_trip() {
        let p = NcPoly::parse("1*v^4 * a.b + -1*v^4 * 1").unwrap();
        assert_eq!(p.coeff(&Word::from("ab")), Laurent::q_pow(1));
        assert_eq!(p.coeff(&Word::unit()), -Laurent::q_pow(1));
        assert_eq!(p.to_string(), "-1*v^4 * 1 + 1*v^4 * a.b");
        assert_eq!(NcPoly::parse(&p.to_string()).unwrap(), p);
        assert_eq!(NcPoly::parse("q * b.a").unwrap(), NcPoly::term(Word::from("ba"), Laurent::v_pow(4)));
        assert!(NcPoly::parse("1 * a.x9").is_err());
    }
}
