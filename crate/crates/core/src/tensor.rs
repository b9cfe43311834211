//! Braided tensor powers of `B_q(SL2)`: products, braiding, twist, the
//! twisted opposite product, total coactions and the braid group action.
//!
//! Tensor factors are stored in B-coordinates (B_q-normal words).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::bq::BqContext;
use crate::error::{Error, Result};
use crate::linalg::{dense_solve_least, SolveOutcome};
use crate::nc::{NcPoly, Word};
use crate::oq::OqContext;
use crate::scalar::{Laurent, Rational};

pub type Key = Vec<Word>;

/// Element of the `n`-fold braided tensor power.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TensorElement {
    arity: usize,
    terms: BTreeMap<Key, Laurent>,
}

impl TensorElement {
    pub fn zero(arity: usize) -> Self {
        Self { arity, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize) -> Self {
        Self::pure(vec![Word::unit(); arity], Laurent::one())
    }

    pub fn pure(key: Key, c: Laurent) -> Self {
        let mut t = Self::zero(key.len());
        t.add_term(key, &c);
        t
    }

    /// The word `w` placed in factor `slot` (0-based), units elsewhere.
    pub fn embed(arity: usize, slot: usize, w: Word) -> Self {
        let mut key = vec![Word::unit(); arity];
        key[slot] = w;
        Self::pure(key, Laurent::one())
    }

    /// `p` placed in factor `slot`.
    pub fn embed_poly(arity: usize, slot: usize, p: &NcPoly) -> Self {
        let mut t = Self::zero(arity);
        for (w, c) in p.terms() {
            let mut key = vec![Word::unit(); arity];
            key[slot] = w.clone();
            t.add_term(key, c);
        }
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
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

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &Laurent)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &Key) -> Laurent {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    /// Total degree of the largest term (sum of factor word lengths).
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(key_degree).max()
    }

    pub fn add_term(&mut self, key: Key, c: &Laurent) {
        use std::collections::btree_map::Entry;
        debug_assert_eq!(key.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &TensorElement, c: &Laurent) {
        for (k, x) in &other.terms {
            self.add_term(k.clone(), &(x * c));
        }
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.add_scaled(other, &Laurent::one());
        out
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.add_scaled(other, &Laurent::from_int(-1));
        out
    }

    pub fn scale(&self, c: &Laurent) -> TensorElement {
        let mut out = Self::zero(self.arity);
        out.add_scaled(self, c);
        out
    }

    pub fn check_arity(&self, other: &TensorElement) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        Ok(())
    }

    /// Evaluates every coefficient at `v = 1`, keeping terms as integers.
    pub fn specialize_at_one(&self) -> BTreeMap<Key, num_bigint::BigInt> {
        self.terms
            .iter()
            .map(|(k, c)| (k.clone(), c.eval_at_one()))
            .filter(|(_, c)| !num_traits::Zero::is_zero(c))
            .collect()
    }
}

/// Random element: up to `max_terms` monomials of total degree `<= degree`
/// with small coefficients.
pub fn random_tensor<R: rand::Rng>(tp: &TensorPower, arity: usize, degree: usize, max_terms: usize, rng: &mut R) -> TensorElement {
    let basis = tp.filtered_tensor_basis(arity, degree);
    let mut t = TensorElement::zero(arity);
    for _ in 0..rng.gen_range(1..=max_terms.max(1)) {
        let k = basis[rng.gen_range(0..basis.len())].clone();
        t.add_term(k, &crate::nc::random_coeff(rng));
    }
    t
}

pub fn key_degree(k: &Key) -> usize {
    k.iter().map(Word::len).sum()
}

impl fmt::Display for TensorElement {
    /// `c*v^e * [a.b, 1]` terms joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            let key = k.iter().map(Word::render).collect::<Vec<_>>().join(", ");
            for (e, x) in c.terms().rev() {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "{} * [{}]", Laurent::term(x.clone(), e), key)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A braid word on `strands` strands: letters `(i, positive)` with
/// `1 <= i <= strands - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<(usize, bool)>,
}

impl BraidWord {
    pub fn identity(strands: usize) -> Self {
        Self { strands, letters: Vec::new() }
    }

    pub fn new(strands: usize, letters: Vec<(usize, bool)>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidConfig("strand count must be at least 1".into()));
        }
        for &(i, _) in &letters {
            if i == 0 || i >= strands {
                return Err(Error::InvalidConfig(format!(
                    "generator index {i} exceeds strands-1={}",
                    strands - 1
                )));
            }
        }
        Ok(Self { strands, letters })
    }

    /// Parses whitespace-separated tokens `s<i>` / `s<i>^-1`.
    pub fn parse(text: &str, strands: usize) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Parse { pos: 0, msg: "strand count must be at least 1".into() });
        }
        let mut letters = Vec::new();
        for (n, tok) in text.split_whitespace().enumerate() {
            let token_no = n + 1;
            let err = |msg: String| Error::Parse { pos: token_no, msg };
            let body = tok
                .strip_prefix('s')
                .ok_or_else(|| err(format!("malformed token `{tok}`: expected s<i> or s<i>^-1")))?;
            let (idx, positive) = match body.split_once('^') {
                None => (body, true),
                Some((i, "-1")) => (i, false),
                Some(_) => return Err(err(format!("malformed exponent in `{tok}`: only ^-1 is allowed"))),
            };
            let i: usize = idx.parse().map_err(|_| err(format!("malformed generator index in `{tok}`")))?;
            if i == 0 {
                return Err(err("generator index must be at least 1".into()));
            }
            if i >= strands {
                return Err(err(format!("generator index {i} exceeds strands-1={}", strands - 1)));
            }
            letters.push((i, positive));
        }
        Ok(Self { strands, letters })
    }

    pub fn inverse(&self) -> Self {
        Self { strands: self.strands, letters: self.letters.iter().rev().map(|&(i, s)| (i, !s)).collect() }
    }

    pub fn concat(&self, other: &BraidWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self { strands: self.strands, letters }
    }

    /// Stabilization `β·σ_n` on `n + 1` strands.
    pub fn stabilize(&self) -> Self {
        let mut letters = self.letters.clone();
        letters.push((self.strands, true));
        Self { strands: self.strands + 1, letters }
    }

    /// Exponent sum (writhe).
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&(_, s)| if s { 1 } else { -1 }).sum()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> =
            self.letters.iter().map(|&(i, s)| if s { format!("s{i}") } else { format!("s{i}^-1") }).collect();
        write!(f, "{}", toks.join(" "))
    }
}

type PureList = Arc<Vec<(Key, Laurent)>>;
type CoactList = Arc<Vec<(Key, Word, Laurent)>>;

#[derive(Default)]
struct Memo {
    mul: RwLock<HashMap<(Key, Key), PureList>>,
    coact: RwLock<HashMap<Key, CoactList>>,
    // images of generators under σ^{±1} acting on slots (0, 1) of an
    // arity-2 power: [positive?][slot][letter]
    sigma: RwLock<HashMap<(bool, usize, u8), Arc<TensorElement>>>,
    // Ψ(x ⊗ y) on single words
    psi: RwLock<HashMap<(Word, Word), Arc<Vec<(Word, Word, Laurent)>>>>,
    // σ^{±1}(u ⊗ w) on an arity-2 power
    sigma_pair: RwLock<HashMap<(bool, Word, Word), Arc<TensorElement>>>,
}

/// Operations on braided tensor powers over a shared `B_q` context.
pub struct TensorPower {
    bq: Arc<BqContext>,
    mirror: bool,
    memo: Memo,
}

impl TensorPower {
    pub fn new(bq: Arc<BqContext>) -> Self {
        Self { bq, mirror: false, memo: Memo::default() }
    }

    /// With `mirror`, `σ_i` and `σ_i⁻¹` exchange their actions.
    pub fn with_mirror(bq: Arc<BqContext>, mirror: bool) -> Self {
        Self { bq, mirror, memo: Memo::default() }
    }

    pub fn mirror(&self) -> bool {
        self.mirror
    }

    pub fn bq(&self) -> &BqContext {
        &self.bq
    }

    pub fn bq_arc(&self) -> Arc<BqContext> {
        self.bq.clone()
    }

    fn oq(&self) -> &OqContext {
        self.bq.oq()
    }

    /// Total coaction of a pure tensor: `Σ X₀ ⊗ X₁` with the O-legs of the
    /// factors multiplied left to right.
    pub fn total_coaction_pure(&self, x: &[Word]) -> CoactList {
        if let Some(c) = self.memo.coact.read().unwrap().get(x) {
            return c.clone();
        }
        let out: Vec<(Key, Word, Laurent)> = match x.split_last() {
            None => vec![(Vec::new(), Word::unit(), Laurent::one())],
            Some((last, init)) => {
                let head = self.total_coaction_pure(init);
                let ad = self.bq.adjoint_coaction_word(last);
                let mut acc: BTreeMap<(Key, Word), Laurent> = BTreeMap::new();
                for (k, o1, c) in head.iter() {
                    for (w0, o2, d) in ad.iter() {
                        let cd = c * d;
                        for (o, s) in self.oq().mul_words(o1, o2).terms() {
                            let mut key = k.clone();
                            key.push(w0.clone());
                            let e = acc.entry((key, o.clone())).or_default();
                            *e += &(&cd * s);
                        }
                    }
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((k, o), c)| (k, o, c)).collect()
            }
        };
        let out = Arc::new(out);
        self.memo.coact.write().unwrap().insert(x.to_vec(), out.clone());
        out
    }

    /// Total coaction as a map `(key, O-word) -> coefficient`.
    pub fn total_coaction(&self, x: &TensorElement) -> BTreeMap<(Key, Word), Laurent> {
        let mut out: BTreeMap<(Key, Word), Laurent> = BTreeMap::new();
        for (k, c) in x.terms() {
            for (k0, o, d) in self.total_coaction_pure(k).iter() {
                let e = out.entry((k0.clone(), o.clone())).or_default();
                *e += &(c * d);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    // Ψ(X ⊗ Y) = Σ Y₀ ⊗ X₀ r(X₁ ⊗ Y₁) for pure tensors of any arities;
    // returns (Y', X', coefficient).
    fn braid_pure_direct(&self, x: &[Word], y: &[Word]) -> Vec<(Key, Key, Laurent)> {
        let cx = self.total_coaction_pure(x);
        let cy = self.total_coaction_pure(y);
        let mut acc: BTreeMap<(Key, Key), Laurent> = BTreeMap::new();
        for (x0, x1, s) in cx.iter() {
            for (y0, y1, t) in cy.iter() {
                let val = self.oq().r_word(x1, y1);
                if val.is_zero() {
                    continue;
                }
                let e = acc.entry((y0.clone(), x0.clone())).or_default();
                *e += &(&val * &(s * t));
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((a, b), c)| (a, b, c)).collect()
    }

    // Same map, computed from the generator table: a word crosses a tensor
    // factor by factor, and a factor crosses a word letter by letter, since Ψ
    // is natural for the product.
    fn braid_pure(&self, x: &[Word], y: &[Word]) -> Vec<(Key, Key, Laurent)> {
        let [w] = y else {
            return self.braid_pure_direct(x, y);
        };
        // (y_cur, x' reversed so far) -> coefficient
        let mut states: BTreeMap<(Word, Key), Laurent> = BTreeMap::new();
        states.insert((w.clone(), Vec::new()), Laurent::one());
        for xi in x.iter().rev() {
            let mut next: BTreeMap<(Word, Key), Laurent> = BTreeMap::new();
            for ((yc, done), c) in states {
                for (y2, x2, d) in self.braid_words(xi, &yc).iter() {
                    let mut k = done.clone();
                    k.push(x2.clone());
                    let e = next.entry((y2.clone(), k)).or_default();
                    *e += &(&c * d);
                }
            }
            states = next.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        }
        states
            .into_iter()
            .map(|((yc, mut done), c)| {
                done.reverse();
                (vec![yc], done, c)
            })
            .collect()
    }

    fn braid_words(&self, x: &Word, y: &Word) -> Arc<Vec<(Word, Word, Laurent)>> {
        let key = (x.clone(), y.clone());
        if let Some(t) = self.memo.psi.read().unwrap().get(&key) {
            return t.clone();
        }
        let mut acc: BTreeMap<(Word, Word), Laurent> = BTreeMap::new();
        if x.is_empty() || y.is_empty() {
            acc.insert((y.clone(), x.clone()), Laurent::one());
        } else if x.len() == 1 && y.len() == 1 {
            for (a, b, c) in self.braid_pure_direct(std::slice::from_ref(x), std::slice::from_ref(y)) {
                acc.insert((a[0].clone(), b[0].clone()), c);
            }
        } else if y.len() > 1 {
            // Ψ(x ⊗ y'm): cross y' then m, and multiply the crossed parts
            let (&m, init) = y.letters().split_last().expect("nonempty");
            for (y1, x1, c) in self.braid_words(x, &Word(init.to_vec())).iter() {
                for (m1, x2, d) in self.braid_words(x1, &Word::letter(m)).iter() {
                    let cd = c * d;
                    for (prod, e) in self.bq.mul_words(y1, m1).terms() {
                        *acc.entry((prod.clone(), x2.clone())).or_default() += &(&cd * e);
                    }
                }
            }
        } else {
            // Ψ(x'l ⊗ y): y crosses l first, then x'
            let (&l, init) = x.letters().split_last().expect("nonempty");
            for (y1, l1, c) in self.braid_words(&Word::letter(l), y).iter() {
                for (y2, x1, d) in self.braid_words(&Word(init.to_vec()), y1).iter() {
                    let cd = c * d;
                    for (prod, e) in self.bq.mul_words(x1, l1).terms() {
                        *acc.entry((y2.clone(), prod.clone())).or_default() += &(&cd * e);
                    }
                }
            }
        }
        let out: Arc<Vec<(Word, Word, Laurent)>> = Arc::new(acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((a, b), c)| (a, b, c)).collect());
        self.memo.psi.write().unwrap().insert(key, out.clone());
        out
    }

    // Ψ⁻¹(Y ⊗ X) = Σ X₀ ⊗ Y₀ r̄(X₁ ⊗ Y₁); input order (Y, X), output (X', Y').
    fn unbraid_pure(&self, y: &[Word], x: &[Word]) -> Vec<(Key, Key, Laurent)> {
        let cx = self.total_coaction_pure(x);
        let cy = self.total_coaction_pure(y);
        let mut acc: BTreeMap<(Key, Key), Laurent> = BTreeMap::new();
        for (x0, x1, s) in cx.iter() {
            for (y0, y1, t) in cy.iter() {
                let val = self.oq().r_bar_word(x1, y1);
                if val.is_zero() {
                    continue;
                }
                let e = acc.entry((x0.clone(), y0.clone())).or_default();
                *e += &(&val * &(s * t));
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((a, b), c)| (a, b, c)).collect()
    }

    /// The braiding `Ψ₀` of `B ⊗̄ B`.
    pub fn braiding(&self, x: &TensorElement) -> Result<TensorElement> {
        self.apply_pairwise(x, false)
    }

    /// `Ψ₀⁻¹`, built from `r̄`.
    pub fn braiding_inverse(&self, x: &TensorElement) -> Result<TensorElement> {
        self.apply_pairwise(x, true)
    }

    fn apply_pairwise(&self, x: &TensorElement, inverse: bool) -> Result<TensorElement> {
        if x.arity() != 2 {
            return Err(Error::ArityMismatch { expected: 2, found: x.arity() });
        }
        let mut out = TensorElement::zero(2);
        for (k, c) in x.terms() {
            let parts = if inverse {
                self.unbraid_pure(&k[..1], &k[1..])
            } else {
                self.braid_pure(&k[..1], &k[1..])
            };
            for (a, b, d) in parts {
                out.add_term(vec![a[0].clone(), b[0].clone()], &(c * &d));
            }
        }
        Ok(out)
    }

    /// Product of pure tensors: `(x ⊗ X')(y ⊗ Y') = x·Ψ(X' ⊗ y)·Y'`.
    pub fn mul_pure(&self, x: &[Word], y: &[Word]) -> PureList {
        let key = (x.to_vec(), y.to_vec());
        if let Some(p) = self.memo.mul.read().unwrap().get(&key) {
            return p.clone();
        }
        let out: Vec<(Key, Laurent)> = if x.is_empty() {
            vec![(Vec::new(), Laurent::one())]
        } else if x.iter().all(Word::is_empty) {
            vec![(y.to_vec(), Laurent::one())]
        } else if y.iter().all(Word::is_empty) {
            vec![(x.to_vec(), Laurent::one())]
        } else {
            let mut acc: BTreeMap<Key, Laurent> = BTreeMap::new();
            let tail_x = &x[1..];
            let crossed: Vec<(Key, Key, Laurent)> = if tail_x.iter().all(Word::is_empty) || y[0].is_empty() {
                vec![(vec![y[0].clone()], tail_x.to_vec(), Laurent::one())]
            } else {
                self.braid_pure(tail_x, &y[..1])
            };
            for (y1, xpp, s) in crossed {
                let head = self.bq.mul_words(&x[0], &y1[0]);
                let tail = self.mul_pure(&xpp, &y[1..]);
                for (h, sh) in head.terms() {
                    let ss = &s * sh;
                    for (t, st) in tail.iter() {
                        let mut k = Vec::with_capacity(x.len());
                        k.push(h.clone());
                        k.extend(t.iter().cloned());
                        let e = acc.entry(k).or_default();
                        *e += &(&ss * st);
                    }
                }
            }
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
        };
        let out = Arc::new(out);
        self.memo.mul.write().unwrap().insert(key, out.clone());
        out
    }

    /// Product in the braided tensor power.
    pub fn mul(&self, s: &TensorElement, t: &TensorElement) -> Result<TensorElement> {
        s.check_arity(t)?;
        let mut out = TensorElement::zero(s.arity());
        for (a, x) in s.terms() {
            for (b, y) in t.terms() {
                let xy = x * y;
                for (k, c) in self.mul_pure(a, b).iter() {
                    out.add_term(k.clone(), &(&xy * c));
                }
            }
        }
        Ok(out)
    }

    /// `θ(X) = Σ X₀ Θ(X₁)`.
    pub fn twist(&self, x: &TensorElement) -> TensorElement {
        self.contract_coaction(x, |w| self.oq().cotwist_word(w))
    }

    /// `θ⁻¹(X) = Σ X₀ Θ⁻¹(X₁)`.
    pub fn twist_inverse(&self, x: &TensorElement) -> TensorElement {
        self.contract_coaction(x, |w| self.oq().cotwist_inverse_word(w))
    }

    fn contract_coaction(&self, x: &TensorElement, f: impl Fn(&Word) -> Laurent) -> TensorElement {
        let mut out = TensorElement::zero(x.arity());
        for (k, c) in x.terms() {
            for (k0, o, d) in self.total_coaction_pure(k).iter() {
                let val = f(o);
                if !val.is_zero() {
                    out.add_term(k0.clone(), &(&val * &(c * d)));
                }
            }
        }
        out
    }

    /// `ψ(X ⊗ Y) = Σ Y₀ ⊗ X₀ r(X₁ ⊗ Y₁)` followed by the product:
    /// `μ(ψ(X ⊗ Y))`.
    pub fn braided_product_swapped(&self, x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
        x.check_arity(y)?;
        let mut out = TensorElement::zero(x.arity());
        for (a, s) in x.terms() {
            for (b, t) in y.terms() {
                let st = s * t;
                for (y0, x0, c) in self.braid_pure(a, b) {
                    let sc = &st * &c;
                    for (k, d) in self.mul_pure(&y0, &x0).iter() {
                        out.add_term(k.clone(), &(&sc * d));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `μ ∘ ψ⁻¹`: the product over which `μ^top` is a left action.
    pub fn inverse_braided_product(&self, x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
        x.check_arity(y)?;
        let mut out = TensorElement::zero(x.arity());
        for (a, s) in x.terms() {
            for (b, t) in y.terms() {
                let st = s * t;
                for (y0, x0, c) in self.unbraid_pure(a, b) {
                    let sc = &st * &c;
                    for (k, d) in self.mul_pure(&y0, &x0).iter() {
                        out.add_term(k.clone(), &(&sc * d));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `μ^top = μ ∘ ψ ∘ (θ ⊗ id)`.
    pub fn twisted_opposite_mul(&self, x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
        self.braided_product_swapped(&self.twist(x), y)
    }

    /// `Ψ₀` applied to factors `(i, i + 1)` (0-based `i`) of an arity-`n`
    /// element, identity elsewhere.
    pub fn braiding_on_factors(&self, i: usize, x: &TensorElement) -> Result<TensorElement> {
        let n = x.arity();
        if i + 1 >= n {
            return Err(Error::InvalidConfig(format!("factor pair ({i}, {}) out of range for arity {n}", i + 1)));
        }
        let mut out = TensorElement::zero(n);
        for (k, c) in x.terms() {
            for (a, b, d) in self.braid_pure(&k[i..=i], &k[i + 1..=i + 1]) {
                let mut key = k.clone();
                key[i] = a[0].clone();
                key[i + 1] = b[0].clone();
                out.add_term(key, &(c * &d));
            }
        }
        Ok(out)
    }

    /// Braided coaction of `B_q` on a pure tensor, as an arity `n + 1` list:
    /// `Ad^B` on each factor, the coacting legs braided to the right past
    /// later factors and multiplied in `B_q`.
    pub fn braided_coaction_pure(&self, x: &[Word]) -> PureList {
        let Some((last, init)) = x.split_last() else {
            return Arc::new(vec![(vec![Word::unit()], Laurent::one())]);
        };
        let ad_last: Vec<(Word, Word, Laurent)> = if last.is_empty() {
            vec![(Word::unit(), Word::unit(), Laurent::one())]
        } else {
            let mut acc = TensorElement::one(2);
            for &l in last.letters() {
                let img = self.bq.braided_adjoint_gen(l);
                let mut t = TensorElement::zero(2);
                for ((u, w), c) in img.iter() {
                    t.add_term(vec![u.clone(), w.clone()], c);
                }
                acc = self.braided_coaction_product(&acc, &t);
            }
            acc.terms().map(|(k, c)| (k[0].clone(), k[1].clone(), c.clone())).collect()
        };
        if init.is_empty() {
            return Arc::new(ad_last.into_iter().map(|(a, b, c)| (vec![a, b], c)).collect());
        }
        let head = self.braided_coaction_pure(init);
        let mut acc: BTreeMap<Key, Laurent> = BTreeMap::new();
        for (hk, hc) in head.iter() {
            let (h1, h0) = hk.split_last().expect("coacting leg");
            for (y0, y1, yc) in &ad_last {
                // Ψ(h₁ ⊗ y₀) = Σ y₀' ⊗ h₁'
                for (y0p, h1p, bc) in self.braid_pure(std::slice::from_ref(h1), std::slice::from_ref(y0)) {
                    let coeff = &(hc * yc) * &bc;
                    for (m, mc) in self.bq.mul_words(&h1p[0], y1).terms() {
                        let mut key = h0.to_vec();
                        key.push(y0p[0].clone());
                        key.push(m.clone());
                        let e = acc.entry(key).or_default();
                        *e += &(&coeff * mc);
                    }
                }
            }
        }
        Arc::new(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    // product of two arity-2 elements (B ⊗ coacting leg) as an algebra
    // B ⊗̄ B, used to extend Ad^B from letters to words
    fn braided_coaction_product(&self, s: &TensorElement, t: &TensorElement) -> TensorElement {
        self.mul(s, t).expect("equal arity")
    }

    /// `Ad_Σ`: the braided total coaction placed in an arity `n + 1` power.
    pub fn adjoint_embed(&self, x: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(x.arity() + 1);
        for (k, c) in x.terms() {
            for (k2, d) in self.braided_coaction_pure(k).iter() {
                out.add_term(k2.clone(), &(c * d));
            }
        }
        out
    }

    /// `x ↦ x ⊗ 1` into an arity `n + 1` power.
    pub fn embed_left(x: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(x.arity() + 1);
        for (k, c) in x.terms() {
            let mut key = k.clone();
            key.push(Word::unit());
            out.add_term(key, c);
        }
        out
    }

    // ----- braid group action -----

    /// Image under `σ^{±1}` (acting on the two factors of an arity-2 power)
    /// of the generator `x` placed in factor `slot`.
    ///
    /// `σ` sends `x ⊗ 1` to `1 ⊗ x` and `1 ⊗ y` to `Ad^B(y)`; at `v = 1` this
    /// is the pullback along the Hurwitz move
    /// `(A₁, A₂) ↦ (A₂, A₂⁻¹ A₁ A₂)`. The inverse images are solved for
    /// linearly and verified.
    pub fn sigma_image(&self, positive: bool, slot: usize, x: u8) -> Result<Arc<TensorElement>> {
        let key = (positive, slot, x);
        if let Some(t) = self.memo.sigma.read().unwrap().get(&key) {
            return Ok(t.clone());
        }
        let img = match (positive, slot) {
            (true, 0) => TensorElement::embed(2, 1, Word::letter(x)),
            (true, _) => {
                let mut t = TensorElement::zero(2);
                for ((u, w), c) in self.bq.braided_adjoint_gen(x).iter() {
                    t.add_term(vec![u.clone(), w.clone()], c);
                }
                t
            }
            (false, 1) => TensorElement::embed(2, 0, Word::letter(x)),
            (false, _) => self.solve_sigma_preimage(x)?,
        };
        let img = Arc::new(img);
        self.memo.sigma.write().unwrap().insert(key, img.clone());
        Ok(img)
    }

    // z with σ(z) = x ⊗ 1. The classical answer y ↦ y(A₁ A₂ A₁⁻¹) has
    // degree 2 in the first factor and 1 in the second, so the search runs
    // over that box.
    fn solve_sigma_preimage(&self, x: u8) -> Result<TensorElement> {
        let target = TensorElement::embed(2, 0, Word::letter(x));
        let rw = self.bq.rewrite();
        let mut basis = Vec::new();
        for u in rw.filtered_basis(2) {
            for w in rw.filtered_basis(1) {
                basis.push(vec![u.clone(), w]);
            }
        }
        let images: Vec<TensorElement> =
            basis.iter().map(|k| self.apply_sigma_pure(true, 0, 2, k)).collect::<Result<_>>()?;
        let mut rows_index: BTreeMap<Key, usize> = BTreeMap::new();
        for img in images.iter().chain(std::iter::once(&target)) {
            for (k, _) in img.terms() {
                let n = rows_index.len();
                rows_index.entry(k.clone()).or_insert(n);
            }
        }
        let nrows = rows_index.len();
        let mut a = vec![vec![Rational::zero(); basis.len()]; nrows];
        for (j, img) in images.iter().enumerate() {
            for (k, c) in img.terms() {
                a[rows_index[k]][j] = c.to_rational();
            }
        }
        let mut b = vec![Rational::zero(); nrows];
        for (k, c) in target.terms() {
            b[rows_index[k]] = c.to_rational();
        }
        let sol = match dense_solve_least(&a, &b) {
            SolveOutcome::Solution(s) => s,
            SolveOutcome::Inconsistent => {
                return Err(Error::NotInvertible(format!("no preimage of generator {x} under σ in degree <= 3")))
            }
        };
        let mut out = TensorElement::zero(2);
        for (k, c) in basis.iter().zip(sol) {
            if c.is_zero() {
                continue;
            }
            let l = c
                .to_laurent()
                .ok_or_else(|| Error::NotInvertible(format!("σ⁻¹ coefficient leaves Z[v^±1]: {c}")))?;
            out.add_term(k.clone(), &l);
        }
        Ok(out)
    }

    /// Tensor monomial basis: keys of arity `n` whose factors are B-normal
    /// and whose total degree is `<= degree`, ordered by total degree then key.
    pub fn filtered_tensor_basis(&self, n: usize, degree: usize) -> Vec<Key> {
        let per: Vec<Vec<Word>> = (0..=degree).map(|d| self.bq.rewrite().graded_basis(d)).collect();
        let mut out: Vec<Key> = vec![Vec::new()];
        for _ in 0..n {
            let mut next = Vec::new();
            for k in &out {
                let used = key_degree(k);
                for d in 0..=degree - used {
                    for w in &per[d] {
                        let mut k2 = k.clone();
                        k2.push(w.clone());
                        next.push(k2);
                    }
                }
            }
            out = next;
        }
        out.sort_by(|a, b| key_degree(a).cmp(&key_degree(b)).then_with(|| a.cmp(b)));
        out
    }

    // σ_{i+1}^{±1} (0-based i) on a pure tensor of arity n, as the ordered
    // product of the images of its letters
    // σ is an algebra map and a pure key is the ordered product of its
    // slot embeddings, so only slots i and i + 1 change.
    fn apply_sigma_pure(&self, positive: bool, i: usize, n: usize, key: &[Word]) -> Result<TensorElement> {
        let local = self.sigma_pair(positive, &key[i], &key[i + 1])?;
        let mut out = TensorElement::zero(n);
        for (k, c) in local.terms() {
            let mut full = key.to_vec();
            full[i] = k[0].clone();
            full[i + 1] = k[1].clone();
            out.add_term(full, c);
        }
        Ok(out)
    }

    // σ(u ⊗ w) = (1 ⊗ u)·Ad^B(w) and σ⁻¹(u ⊗ w) = σ⁻¹(u ⊗ 1)·(w ⊗ 1)
    fn sigma_pair(&self, positive: bool, u: &Word, w: &Word) -> Result<Arc<TensorElement>> {
        let key = (positive, u.clone(), w.clone());
        if let Some(t) = self.memo.sigma_pair.read().unwrap().get(&key) {
            return Ok(t.clone());
        }
        let img = if positive {
            let mut ad = TensorElement::zero(2);
            for (k, c) in self.braided_coaction_pure(std::slice::from_ref(w)).iter() {
                ad.add_term(k.clone(), c);
            }
            self.mul(&TensorElement::embed(2, 1, u.clone()), &ad)?
        } else if !w.is_empty() {
            let head = self.sigma_pair(false, u, &Word::unit())?;
            self.mul(&head, &TensorElement::embed(2, 0, w.clone()))?
        } else if u.is_empty() {
            TensorElement::one(2)
        } else {
            let (&last, init) = u.letters().split_last().expect("nonempty word");
            let head = self.sigma_pair(false, &Word(init.to_vec()), &Word::unit())?;
            self.mul(&head, &*self.sigma_image(false, 0, last)?)?
        };
        let img = Arc::new(img);
        self.memo.sigma_pair.write().unwrap().insert(key, img.clone());
        Ok(img)
    }

    /// Action of a single generator `σ_i^{±1}` (1-based `i`), honouring the
    /// mirror flag.
    pub fn sigma(&self, i: usize, positive: bool, x: &TensorElement) -> Result<TensorElement> {
        let n = x.arity();
        if i == 0 || i >= n {
            return Err(Error::InvalidConfig(format!("generator index {i} exceeds strands-1={}", n.saturating_sub(1))));
        }
        let positive = positive != self.mirror;
        let mut out = TensorElement::zero(n);
        for (k, c) in x.terms() {
            out.add_scaled(&self.apply_sigma_pure(positive, i - 1, n, k)?, c);
        }
        Ok(out)
    }

    /// [`Self::braid_act`], giving up once an intermediate image has more
    /// than `max_terms` terms. Factor degrees roughly triple per crossing.
    pub fn braid_act_bounded(&self, w: &BraidWord, x: &TensorElement, max_terms: usize) -> Result<TensorElement> {
        if w.strands != x.arity() {
            return Err(Error::ArityMismatch { expected: w.strands, found: x.arity() });
        }
        let mut cur = x.clone();
        for &(i, s) in w.letters.iter().rev() {
            cur = self.sigma(i, s, &cur)?;
            if cur.len() > max_terms {
                return Err(Error::ResourceLimit(format!(
                    "braid image of {x} under {w} exceeds {max_terms} terms"
                )));
            }
        }
        Ok(cur)
    }

    /// `β_*` for `β = g₁ ⋯ g_k`, applied as `T_{g₁} ∘ ⋯ ∘ T_{g_k}`.
    pub fn braid_act(&self, w: &BraidWord, x: &TensorElement) -> Result<TensorElement> {
        if w.strands != x.arity() {
            return Err(Error::ArityMismatch { expected: w.strands, found: x.arity() });
        }
        let mut cur = x.clone();
        for &(i, s) in w.letters.iter().rev() {
            cur = self.sigma(i, s, &cur)?;
        }
        Ok(cur)
    }
}
