//! Degree-truncated quotients of braided tensor powers: relation spans,
//! graded dimensions with stabilization flags, and coinvariants.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{clear_denominators_row, dense_nullspace, laurent_row_to_poly, Echelon, SparseRow};
use crate::nc::Word;
use crate::scalar::{Laurent, Rational};
use crate::tensor::{key_degree, BraidWord, Key, TensorElement, TensorPower};

/// Which product enters the left-hand side of the relations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// `μ^top(x ⊗ y) − β_*(x)·y`.
    #[default]
    PaperMuTop,
    /// `x·y − β_*(x)·y`, whose quotient is the comparison algebra `A_β`.
    Mvdv,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::PaperMuTop => "paper-mu-top",
            Variant::Mvdv => "mvdv",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-mu-top" => Ok(Variant::PaperMuTop),
            "mvdv" => Ok(Variant::Mvdv),
            _ => Err(Error::InvalidConfig(format!("unknown variant `{s}` (expected paper-mu-top or mvdv)"))),
        }
    }
}

/// Column index over the tensor monomials of total degree `<= degree`,
/// ordered by degree then key.
#[derive(Clone, Debug)]
pub struct ColumnIndex {
    arity: usize,
    keys: Vec<Key>,
    index: HashMap<Key, usize>,
    degree_start: Vec<usize>,
}

impl ColumnIndex {
    pub fn new(tp: &TensorPower, arity: usize, degree: usize) -> Self {
        let keys = tp.filtered_tensor_basis(arity, degree);
        let index = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        let mut degree_start = vec![0; degree + 2];
        for d in 0..=degree + 1 {
            degree_start[d] = keys.iter().take_while(|k| key_degree(k) < d).count();
        }
        Self { arity, keys, index, degree_start }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn key(&self, i: usize) -> &Key {
        &self.keys[i]
    }

    pub fn col(&self, k: &Key) -> Option<usize> {
        self.index.get(k).copied()
    }

    pub fn column_degree(&self, i: usize) -> usize {
        key_degree(&self.keys[i])
    }

    /// Number of monomials of exactly degree `d`.
    pub fn count_at(&self, d: usize) -> usize {
        if d + 1 >= self.degree_start.len() {
            return 0;
        }
        self.degree_start[d + 1] - self.degree_start[d]
    }

    pub fn row(&self, x: &TensorElement) -> Option<SparseRow> {
        let mut r = BTreeMap::new();
        for (k, c) in x.terms() {
            r.insert(self.col(k)?, c.clone());
        }
        Some(laurent_row_to_poly(&r))
    }

    pub fn element(&self, row: &SparseRow) -> TensorElement {
        let mut t = TensorElement::zero(self.arity);
        for (&c, p) in row {
            t.add_term(self.keys[c].clone(), &p.to_laurent());
        }
        t
    }
}

/// Truncated quotient of an arity-`n` braided tensor power.
#[derive(Clone, Debug)]
pub struct FilteredQuotient {
    pub arity: usize,
    pub degree: usize,
    pub working_degree: usize,
    pub columns: ColumnIndex,
    pub echelon: Echelon,
    /// Dimension of the degree-`d` part of the quotient, `d = 0..=degree`.
    pub graded_dims: Vec<usize>,
    /// Pivots at degree `<= d` unchanged from working degree `D' - 1`.
    pub stabilized: Vec<bool>,
    /// Relation generators that fit the working degree.
    pub relations_used: usize,
    /// Relation generators dropped for exceeding the working degree.
    pub relations_dropped: usize,
    /// Every row fed to the eliminator, kept only on request.
    pub fed_rows: Option<Vec<SparseRow>>,
}

impl FilteredQuotient {
    /// Monomials of degree `d` that are not pivots.
    pub fn quotient_basis(&self, d: usize) -> Vec<Key> {
        (0..self.columns.len())
            .filter(|&i| self.columns.column_degree(i) == d && !self.echelon.is_pivot(i))
            .map(|i| self.columns.key(i).clone())
            .collect()
    }

    /// Whether `x` lies in the relation span.
    pub fn contains(&self, x: &TensorElement) -> bool {
        self.columns.row(x).is_some_and(|r| self.echelon.contains(r))
    }

    /// Normal form of `x` on the quotient basis, over `Q(v)`.
    pub fn normal_form(&self, x: &TensorElement) -> Option<BTreeMap<usize, Rational>> {
        let mut r = BTreeMap::new();
        for (k, c) in x.terms() {
            r.insert(self.columns.col(k)?, c.to_rational());
        }
        Some(self.echelon.normal_form(r))
    }

    fn pivots_up_to(&self, d: usize) -> BTreeSet<usize> {
        self.echelon.pivot_columns().filter(|&c| self.columns.column_degree(c) <= d).collect()
    }
}

/// Sides on which the relation span is closed under multiplication by
/// degree-1 monomials.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Closure {
    Both,
    Left,
    Right,
    /// The span of the relation generators only (the cokernel of the
    /// relation map).
    #[default]
    None,
}

impl fmt::Display for Closure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Closure::Both => "both",
            Closure::Left => "left",
            Closure::Right => "right",
            Closure::None => "none",
        })
    }
}

impl FromStr for Closure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "both" => Ok(Closure::Both),
            "left" => Ok(Closure::Left),
            "right" => Ok(Closure::Right),
            "none" => Ok(Closure::None),
            _ => Err(Error::InvalidConfig(format!("unknown closure `{s}` (expected both, left, right or none)"))),
        }
    }
}

/// Limits guarding against runaway instances.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_columns: usize,
    /// Largest braid image (in terms) computed for a relation generator.
    pub max_image_terms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { max_columns: 2500, max_image_terms: 2000 }
    }
}

pub struct QuotientEngine {
    tp: Arc<TensorPower>,
    variant: Variant,
    closure: Closure,
    limits: Limits,
    record_rows: bool,
}

impl QuotientEngine {
    pub fn new(tp: Arc<TensorPower>, variant: Variant) -> Self {
        Self { tp, variant, closure: Closure::default(), limits: Limits::default(), record_rows: false }
    }

    pub fn with_closure(mut self, closure: Closure) -> Self {
        self.closure = closure;
        self
    }

    pub fn closure(&self) -> Closure {
        self.closure
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    /// Keep every row fed to the eliminator (for oracle comparison).
    pub fn recording_rows(mut self, on: bool) -> Self {
        self.record_rows = on;
        self
    }

    pub fn tensor_power(&self) -> &TensorPower {
        &self.tp
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    fn left_product(&self, x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
        match self.variant {
            Variant::PaperMuTop => self.tp.twisted_opposite_mul(x, y),
            Variant::Mvdv => self.tp.mul(x, y),
        }
    }

    fn basis_elements(&self, arity: usize, degree: usize) -> Vec<TensorElement> {
        self.tp
            .filtered_tensor_basis(arity, degree)
            .into_iter()
            .map(|k| TensorElement::pure(k, Laurent::one()))
            .collect()
    }

    /// `r_{x,y} = μ^top(x ⊗ y) − β_*(x)·y` (or `x·y − β_*(x)·y` for the
    /// mvdv variant) for basis tensors with `deg x + deg y <= degree`.
    pub fn relation_generators(&self, beta: &BraidWord, degree: usize) -> Result<Vec<TensorElement>> {
        Ok(self.link_relations(beta, degree, usize::MAX)?.0)
    }

    /// Degree of `β_*` on each generator in each slot, `None` where the image
    /// exceeds the term budget.
    pub fn letter_image_degrees(&self, beta: &BraidWord) -> Vec<[Option<usize>; 4]> {
        let n = beta.strands;
        (0..n)
            .map(|slot| {
                let mut d = [None; 4];
                for (x, e) in d.iter_mut().enumerate() {
                    let g = TensorElement::embed(n, slot, Word::letter(x as u8));
                    *e = self.tp.braid_act_bounded(beta, &g, self.limits.max_image_terms).ok().map(|b| b.degree().unwrap_or(0));
                }
                d
            })
            .collect()
    }

    // β_*(x) for each basis tensor x. With a finite `cap`, inputs whose image
    // degree is predicted (as the sum over their letters) to exceed it are
    // skipped. Skipping only loses relations, so dimensions stay upper bounds.
    fn braid_images(&self, beta: &BraidWord, xs: &[TensorElement], cap: usize) -> Result<Vec<Option<TensorElement>>> {
        let budget = self.limits.max_image_terms;
        if cap == usize::MAX {
            return xs.par_iter().map(|x| self.tp.braid_act_bounded(beta, x, budget).map(Some)).collect();
        }
        let letters = self.letter_image_degrees(beta);
        xs.par_iter()
            .map(|x| {
                let (k, _) = x.terms().next().expect("basis tensor");
                let mut predicted = 0usize;
                for (slot, w) in k.iter().enumerate() {
                    for &l in w.letters() {
                        predicted = predicted.saturating_add(letters[slot][l as usize].unwrap_or(usize::MAX));
                    }
                }
                if predicted > cap {
                    Ok(None)
                } else {
                    self.tp.braid_act_bounded(beta, x, budget).map(Some)
                }
            })
            .collect()
    }

    // relations whose degree bound fits `cap`, and the number dropped
    fn link_relations(&self, beta: &BraidWord, degree: usize, cap: usize) -> Result<(Vec<TensorElement>, usize)> {
        let n = beta.strands;
        let xs = self.basis_elements(n, degree);
        let images = self.braid_images(beta, &xs, cap)?;
        let ys = &xs;
        let mut pairs = Vec::new();
        let mut dropped = 0;
        for (i, x) in xs.iter().enumerate() {
            let dx = x.degree().unwrap_or(0);
            let dbx = images[i].as_ref().map_or(usize::MAX, |b| b.degree().unwrap_or(0));
            for y in ys {
                let dy = y.degree().unwrap_or(0);
                if dx + dy > degree {
                    continue;
                }
                if dx.max(dbx).saturating_add(dy) > cap {
                    dropped += 1;
                    continue;
                }
                pairs.push((i, y));
            }
        }
        let rels: Vec<TensorElement> = pairs
            .par_iter()
            .map(|&(i, y)| {
                let bx = images[i].as_ref().expect("kept inputs have images");
                Ok(self.left_product(&xs[i], y)?.sub(&self.tp.mul(bx, y)?))
            })
            .collect::<Result<_>>()?;
        Ok((rels.into_iter().filter(|r| !r.is_zero()).collect(), dropped))
    }

    /// `r_{x,y} = (β_*(x) ⊗ 1)·y − μ^top(Ad_Σ(x), y)` for `x` of arity `n`
    /// and `y` of arity `n + 1`.
    pub fn mapping_torus_relations(&self, beta: &BraidWord, degree: usize) -> Result<Vec<TensorElement>> {
        Ok(self.torus_relations(beta, degree, usize::MAX)?.0)
    }

    fn torus_relations(&self, beta: &BraidWord, degree: usize, cap: usize) -> Result<(Vec<TensorElement>, usize)> {
        let n = beta.strands;
        let xs = self.basis_elements(n, degree);
        let ys = self.basis_elements(n + 1, degree);
        let images: Vec<Option<(TensorElement, TensorElement)>> = self
            .braid_images(beta, &xs, cap)?
            .into_par_iter()
            .zip(&xs)
            .map(|(b, x)| b.map(|b| (TensorPower::embed_left(&b), self.tp.adjoint_embed(x))))
            .collect();
        let mut pairs = Vec::new();
        let mut dropped = 0;
        for (i, x) in xs.iter().enumerate() {
            let dx = x.degree().unwrap_or(0);
            let bound = images[i]
                .as_ref()
                .map_or(usize::MAX, |(b, a)| b.degree().unwrap_or(0).max(a.degree().unwrap_or(0)));
            for y in &ys {
                let dy = y.degree().unwrap_or(0);
                if dx + dy > degree {
                    continue;
                }
                if bound.saturating_add(dy) > cap {
                    dropped += 1;
                    continue;
                }
                pairs.push((i, y));
            }
        }
        let rels: Vec<TensorElement> = pairs
            .par_iter()
            .map(|&(i, y)| {
                let (bx, adx) = images[i].as_ref().expect("kept inputs have images");
                Ok(self.tp.mul(bx, y)?.sub(&self.left_product(adx, y)?))
            })
            .collect::<Result<_>>()?;
        Ok((rels.into_iter().filter(|r| !r.is_zero()).collect(), dropped))
    }

    /// Quotient for the link exterior of the closure of `beta`, truncated at
    /// `degree` and closed within working degree `degree + slack`.
    pub fn link_quotient(&self, beta: &BraidWord, degree: usize, slack: usize) -> Result<FilteredQuotient> {
        self.build(beta.strands, degree, slack, |wd| self.link_relations(beta, wd, wd))
    }

    /// Quotient for the mapping torus of `beta` acting on the `n`-punctured
    /// disc (ambient arity `n + 1`).
    pub fn mapping_torus_quotient(&self, beta: &BraidWord, degree: usize, slack: usize) -> Result<FilteredQuotient> {
        self.build(beta.strands + 1, degree, slack, |wd| self.torus_relations(beta, wd, wd))
    }

    /// Quotient by an explicit relation family (closed the same way).
    pub fn quotient_by(&self, arity: usize, rels: &[TensorElement], degree: usize, slack: usize) -> Result<FilteredQuotient> {
        self.build(arity, degree, slack, |wd| {
            let keep: Vec<TensorElement> = rels.iter().filter(|r| r.degree().unwrap_or(0) <= wd).cloned().collect();
            let dropped = rels.len() - keep.len();
            Ok((keep, dropped))
        })
    }

    fn build(
        &self,
        arity: usize,
        degree: usize,
        slack: usize,
        gen: impl Fn(usize) -> Result<(Vec<TensorElement>, usize)>,
    ) -> Result<FilteredQuotient> {
        let wd = degree + slack;
        let columns = ColumnIndex::new(&self.tp, arity, wd);
        if columns.len() > self.limits.max_columns {
            return Err(Error::ResourceLimit(format!(
                "{} tensor monomials of degree <= {wd} at arity {arity} exceed the limit of {}",
                columns.len(),
                self.limits.max_columns
            )));
        }
        let (rels, dropped) = gen(wd)?;
        let mut q = self.close(arity, degree, wd, columns, &rels)?;
        q.relations_used = rels.len();
        q.relations_dropped = dropped;
        q.stabilized = if wd == 0 {
            vec![false; degree + 1]
        } else {
            let (rels_prev, _) = gen(wd - 1)?;
            let prev = self.close(arity, degree.min(wd - 1), wd - 1, ColumnIndex::new(&self.tp, arity, wd - 1), &rels_prev)?;
            (0..=degree).map(|d| d < wd && prev.pivots_up_to(d) == q.pivots_up_to(d)).collect()
        };
        Ok(q)
    }

    // span of `rels` closed under left and right multiplication by degree-1
    // monomials, within degree `wd`, to a fixpoint
    fn close(
        &self,
        arity: usize,
        degree: usize,
        wd: usize,
        columns: ColumnIndex,
        rels: &[TensorElement],
    ) -> Result<FilteredQuotient> {
        let gens: Vec<TensorElement> = (0..arity)
            .flat_map(|slot| (0..4u8).map(move |x| TensorElement::embed(arity, slot, Word::letter(x))))
            .collect();
        let mut ech = Echelon::new();
        let mut fed: Option<Vec<SparseRow>> = self.record_rows.then(Vec::new);
        let mut sorted: Vec<&TensorElement> = rels.iter().collect();
        sorted.sort_by_key(|r| r.degree());
        let mut queue: Vec<SparseRow> = Vec::new();
        let mut feed = |ech: &mut Echelon, row: SparseRow, queue: &mut Vec<SparseRow>| {
            if let Some(f) = fed.as_mut() {
                f.push(row.clone());
            }
            let reduced = ech.reduce(row);
            if !reduced.is_empty() {
                ech.insert(reduced.clone());
                queue.push(reduced);
            }
        };
        for r in sorted {
            let row = columns.row(r).ok_or_else(|| {
                Error::InvalidConfig("relation has a term outside the working degree".into())
            })?;
            feed(&mut ech, row, &mut queue);
        }
        while !queue.is_empty() {
            let batch = std::mem::take(&mut queue);
            let products: Vec<SparseRow> = batch
                .par_iter()
                .flat_map_iter(|row| {
                    let el = columns.element(row);
                    let fits = el.degree().unwrap_or(0) < wd;
                    let mut out = Vec::new();
                    if fits {
                        for g in &gens {
                            let left = matches!(self.closure, Closure::Both | Closure::Left);
                            let right = matches!(self.closure, Closure::Both | Closure::Right);
                            let prods = [left.then(|| self.tp.mul(g, &el)), right.then(|| self.tp.mul(&el, g))];
                            for p in prods.into_iter().flatten() {
                                let p = p.expect("equal arity");
                                if !p.is_zero() {
                                    out.push(columns.row(&p).expect("degree within working degree"));
                                }
                            }
                        }
                    }
                    out
                })
                .collect();
            for p in products {
                feed(&mut ech, p, &mut queue);
            }
        }
        let graded_dims = (0..=degree)
            .map(|d| {
                let piv = ech.pivot_columns().filter(|&c| columns.column_degree(c) == d).count();
                columns.count_at(d) - piv
            })
            .collect();
        Ok(FilteredQuotient {
            arity,
            degree,
            working_degree: wd,
            columns,
            echelon: ech,
            graded_dims,
            stabilized: Vec::new(),
            relations_used: 0,
            relations_dropped: 0,
            fed_rows: fed,
        })
    }
}

/// Which coaction defines coinvariance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoactionKind {
    /// Total `O_q` coaction: `δ(x) = x ⊗ 1`.
    Ordinary,
    /// Braided total coaction `Ad_Σ`: `Ad_Σ(x) = x ⊗ 1`.
    Braided,
}

/// Basis over `Q(v)` of the coinvariants of total degree `<= degree` in the
/// full tensor power of the given arity.
pub fn coinvariants(tp: &TensorPower, arity: usize, degree: usize, kind: CoactionKind) -> Vec<TensorElement> {
    let basis = tp.filtered_tensor_basis(arity, degree);
    let mut eqs: BTreeMap<(Key, Word), BTreeMap<usize, Rational>> = BTreeMap::new();
    for (j, k) in basis.iter().enumerate() {
        let x = TensorElement::pure(k.clone(), Laurent::one());
        let mut diff: BTreeMap<(Key, Word), Laurent> = BTreeMap::new();
        match kind {
            CoactionKind::Ordinary => {
                for (kk, c) in tp.total_coaction(&x) {
                    diff.insert(kk, c);
                }
                *diff.entry((k.clone(), Word::unit())).or_default() -= &Laurent::one();
            }
            CoactionKind::Braided => {
                let mut ad = tp.adjoint_embed(&x);
                let mut unit = k.clone();
                unit.push(Word::unit());
                ad.add_term(unit, &Laurent::from_int(-1));
                for (kk, c) in ad.terms() {
                    let (last, init) = kk.split_last().expect("arity n + 1");
                    diff.insert((init.to_vec(), last.clone()), c.clone());
                }
            }
        }
        for (row, c) in diff {
            if !c.is_zero() {
                eqs.entry(row).or_default().insert(j, c.to_rational());
            }
        }
    }
    let rows: Vec<Vec<Rational>> = eqs
        .values()
        .map(|r| {
            let mut v = vec![Rational::zero(); basis.len()];
            for (&j, c) in r {
                v[j] = c.clone();
            }
            v
        })
        .collect();
    dense_nullspace(&rows, basis.len())
        .into_iter()
        .map(|vec| {
            let mut t = TensorElement::zero(arity);
            for (i, p) in clear_denominators_row(&vec) {
                t.add_term(basis[i].clone(), &p.to_laurent());
            }
            t
        })
        .collect()
}

/// Dimensions of the coinvariants of degree `<= d` in a truncated quotient
/// (ordinary coaction, legs reduced modulo the relation span), for
/// `d = 0..=q.degree`.
pub fn quotient_coinvariant_dims(tp: &TensorPower, q: &FilteredQuotient) -> Vec<usize> {
    (0..=q.degree)
        .map(|d| {
            let basis: Vec<Key> = (0..=d).flat_map(|e| q.quotient_basis(e)).collect();
            let mut eqs: BTreeMap<(Word, usize), BTreeMap<usize, Rational>> = BTreeMap::new();
            for (j, k) in basis.iter().enumerate() {
                let x = TensorElement::pure(k.clone(), Laurent::one());
                let mut by_leg: BTreeMap<Word, TensorElement> = BTreeMap::new();
                for ((kk, o), c) in tp.total_coaction(&x) {
                    by_leg.entry(o).or_insert_with(|| TensorElement::zero(q.arity)).add_term(kk, &c);
                }
                by_leg.entry(Word::unit()).or_insert_with(|| TensorElement::zero(q.arity)).add_term(k.clone(), &Laurent::from_int(-1));
                for (o, el) in by_leg {
                    let nf = q.normal_form(&el).expect("coaction preserves degree");
                    for (col, c) in nf {
                        eqs.entry((o.clone(), col)).or_default().insert(j, c);
                    }
                }
            }
            let rows: Vec<Vec<Rational>> = eqs
                .values()
                .map(|r| {
                    let mut v = vec![Rational::zero(); basis.len()];
                    for (&j, c) in r {
                        v[j] = c.clone();
                    }
                    v
                })
                .collect();
            basis.len() - crate::linalg::dense_rank(&rows)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bq::BqContext;
    use crate::linalg::dense_rank;
    use crate::oq::OqContext;

    fn engine(variant: Variant) -> QuotientEngine {
        let tp = TensorPower::new(Arc::new(BqContext::new(Arc::new(OqContext::default()))));
        QuotientEngine::new(Arc::new(tp), variant)
    }

    #[test]
    fn identity_unit_relation_vanishes() {
        let e = engine(Variant::PaperMuTop);
        let beta = BraidWord::identity(1);
        let rels = e.relation_generators(&beta, 0).unwrap();
        assert!(rels.is_empty());
    }

    #[test]
    fn relation_for_a_b_matches_expansion() {
        let e = engine(Variant::PaperMuTop);
        let tp = e.tensor_power();
        let a = TensorElement::embed(1, 0, Word::letter(0));
        let b = TensorElement::embed(1, 0, Word::letter(1));
        let want = tp.twisted_opposite_mul(&a, &b).unwrap().sub(&tp.mul(&a, &b).unwrap());
        let beta = BraidWord::identity(1);
        let rels = e.relation_generators(&beta, 2).unwrap();
        assert!(rels.contains(&want));
    }

    #[test]
    fn empty_family_keeps_full_dimensions() {
        let e = engine(Variant::PaperMuTop);
        let q = e.quotient_by(2, &[], 2, 0).unwrap();
        assert_eq!(q.graded_dims, vec![1, 8, 34]);
    }

    #[test]
    fn unknot_dims_match_dense_oracle() {
        let e = engine(Variant::PaperMuTop).recording_rows(true);
        let q = e.link_quotient(&BraidWord::identity(1), 2, 2).unwrap();
        let fed = q.fed_rows.as_ref().unwrap();
        let dense: Vec<Vec<Rational>> = fed
            .iter()
            .map(|r| {
                let mut v = vec![Rational::zero(); q.columns.len()];
                for (&c, p) in r {
                    v[c] = Rational::from_poly(p.clone());
                }
                v
            })
            .collect();
        assert_eq!(dense_rank(&dense), q.echelon.rank());
        eprintln!("unknot dims {:?} stabilized {:?}", q.graded_dims, q.stabilized);
    }

    #[test]
    fn free_coinvariants_degree_one() {
        let e = engine(Variant::PaperMuTop);
        let tp = e.tensor_power();
        let ord = coinvariants(tp, 1, 1, CoactionKind::Ordinary);
        let br = coinvariants(tp, 1, 1, CoactionKind::Braided);
        assert_eq!(ord.len(), 2);
        assert_eq!(ord, br);
        assert_eq!(coinvariants(tp, 1, 0, CoactionKind::Ordinary), vec![TensorElement::one(1)]);
    }

    #[test]
    fn unknot_span_is_one_per_degree_and_coinvariant() {
        let e = engine(Variant::PaperMuTop);
        let q = e.link_quotient(&BraidWord::identity(1), 3, 1).unwrap();
        assert_eq!(q.graded_dims, vec![1, 1, 1, 1]);
        assert_eq!(quotient_coinvariant_dims(e.tensor_power(), &q), vec![1, 2, 3, 4]);
    }

    #[test]
    fn closing_both_sides_shrinks_the_unknot_quotient() {
        let e = engine(Variant::PaperMuTop).with_closure(Closure::Both);
        let q = e.link_quotient(&BraidWord::identity(1), 2, 2).unwrap();
        assert_eq!(q.graded_dims, vec![1, 1, 0]);
    }

    #[test]
    fn image_degrees_add_over_letters() {
        let e = engine(Variant::PaperMuTop);
        for (b, d) in [("s1", 2), ("s1^-1", 2), ("s1 s1", 1), ("s1^-1 s1^-1", 1)] {
            let beta = BraidWord::parse(b, 2).unwrap();
            let letters = e.letter_image_degrees(&beta);
            for k in e.tensor_power().filtered_tensor_basis(2, d) {
                let predicted: usize =
                    k.iter().enumerate().flat_map(|(slot, w)| w.letters().iter().map(move |&l| (slot, l))).map(|(slot, l)| letters[slot][l as usize].unwrap()).sum();
                let img = e.tensor_power().braid_act(&beta, &TensorElement::pure(k.clone(), Laurent::one())).unwrap();
                assert_eq!(img.degree().unwrap_or(0), predicted, "{b} on {k:?}");
            }
        }
    }

    #[test]
    fn runaway_images_hit_the_term_budget() {
        let e = engine(Variant::PaperMuTop);
        let beta = BraidWord::parse("s1 s2^-1 s1 s2^-1", 3).unwrap();
        assert!(matches!(e.relation_generators(&beta, 1), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn identity_braid_mvdv_is_free() {
        let e = engine(Variant::Mvdv).with_closure(Closure::Both);
        let q = e.link_quotient(&BraidWord::identity(1), 2, 1).unwrap();
        assert_eq!(q.graded_dims, vec![1, 4, 9]);
    }
}
