//! Exact linear algebra over `Q(v)`.
//!
//! Two independent eliminators live here: a sparse fraction-free one whose
//! rows have entries in `Z[v]` (used by the quotient engine), and a dense one
//! over [`Rational`] (small solves and the cross-check oracle).

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::nc::{NcPoly, Word};
use crate::scalar::{Laurent, Rational, ZPoly};

/// Sparse row: column index -> non-zero entry.
pub type SparseRow = BTreeMap<usize, ZPoly>;

/// Converts a row with Laurent entries to `Z[v]` by clearing the common
/// power of `v` (a unit, so the span is unchanged).
pub fn laurent_row_to_poly(row: &BTreeMap<usize, Laurent>) -> SparseRow {
    let low = row.values().filter_map(|x| x.low_exp()).min().unwrap_or(0);
    row.iter()
        .filter(|(_, x)| !x.is_zero())
        .map(|(&c, x)| {
            let (k, p) = x.split_monomial();
            (c, p.shift((k - low) as usize))
        })
        .collect()
}

fn strip_content(row: &mut SparseRow) {
    if row.is_empty() {
        return;
    }
    // common power of v
    let vpow = row.values().map(|p| p.coeffs().iter().take_while(|c| c.is_zero()).count()).min().unwrap_or(0);
    if vpow > 0 {
        for p in row.values_mut() {
            *p = ZPoly::from_coeffs(p.coeffs()[vpow..].to_vec());
        }
    }
    let mut g: Option<ZPoly> = None;
    for p in row.values() {
        g = Some(match g {
            None => p.primitive(),
            Some(g) => g.gcd_primitive(p),
        });
        if g.as_ref().is_some_and(|g| g.degree() == Some(0)) {
            break;
        }
    }
    let g = g.unwrap();
    let mut content = num_bigint::BigInt::zero();
    for p in row.values() {
        content = num_integer::Integer::gcd(&content, &p.content());
        if content.is_one() {
            break;
        }
    }
    let lead_negative = row.values().next_back().is_some_and(|p| p.lc().is_negative());
    if lead_negative {
        content = -content;
    }
    let poly_factor = g.degree().is_some_and(|d| d > 0);
    for p in row.values_mut() {
        if poly_factor {
            *p = p.div_exact(&g);
        }
        if !content.is_one() {
            // content of p/g divides content of p; recompute cheaply
            *p = p.div_int_exact(&content);
        }
    }
}

/// Fraction-free echelon form with pivots at the largest column of each row.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseRow> {
        self.pivots.values()
    }

    /// Reduces `row` against the current pivots (leading columns only).
    /// Returns the reduced row, empty iff `row` is in the span.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        loop {
            let Some((&col, lead)) = row.iter().next_back() else { return row };
            let Some(prow) = self.pivots.get(&col) else { return row };
            let plead = &prow[&col];
            let g = lead.gcd_primitive(plead);
            let (mut fa, mut fb) = (plead.clone(), lead.clone());
            if g.degree().is_some_and(|d| d > 0) {
                fa = fa.div_exact(&g);
                fb = fb.div_exact(&g);
            }
            let ci = num_integer::Integer::gcd(&fa.content(), &fb.content());
            if !ci.is_one() {
                fa = fa.div_int_exact(&ci);
                fb = fb.div_int_exact(&ci);
            }
            // row := fa * row - fb * prow
            let mut out = SparseRow::new();
            for (&c, x) in &row {
                if c == col {
                    continue;
                }
                out.insert(c, &fa * x);
            }
            for (&c, y) in prow {
                if c == col {
                    continue;
                }
                let t = &fb * y;
                let e = out.entry(c).or_default();
                *e = &*e - &t;
                if e.is_zero() {
                    out.remove(&c);
                }
            }
            strip_content(&mut out);
            row = out;
        }
    }

    /// Inserts `row`; returns `true` if the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let r = self.reduce(row);
        match r.keys().next_back().copied() {
            None => false,
            Some(col) => {
                self.pivots.insert(col, r);
                true
            }
        }
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    /// Exact normal form over `Q(v)`: eliminates every pivot column, so the
    /// result is supported on non-pivot columns only.
    pub fn normal_form(&self, mut row: BTreeMap<usize, Rational>) -> BTreeMap<usize, Rational> {
        let mut cursor = usize::MAX;
        loop {
            let next = row.range(..cursor).rev().map(|(&c, _)| c).find(|c| self.pivots.contains_key(c));
            let Some(col) = next else { return row };
            let prow = &self.pivots[&col];
            let lead = Rational::from_poly(prow[&col].clone());
            let f = row[&col].div(&lead).expect("pivot entries are non-zero");
            for (&c, p) in prow {
                let t = &f * &Rational::from_poly(p.clone());
                let e = row.entry(c).or_insert_with(Rational::zero);
                *e = &*e - &t;
                if e.is_zero() {
                    row.remove(&c);
                }
            }
            cursor = col;
        }
    }
}

/// Rank of a list of rows by dense Gaussian elimination over `Q(v)`.
pub fn dense_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = m[rank][col].inverse().expect("non-zero pivot");
        let prow: Vec<Rational> = m[rank].iter().map(|x| x * &inv).collect();
        for i in rank + 1..m.len() {
            if m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone();
            for j in col..ncols {
                if !prow[j].is_zero() {
                    m[i][j] = &m[i][j] - &(&f * &prow[j]);
                }
            }
        }
        m[rank] = prow;
        rank += 1;
    }
    rank
}

/// Reduced row echelon form over `Q(v)`; returns the non-zero rows and the
/// pivot column of each.
pub fn dense_rref(rows: &[Vec<Rational>], ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = m[rank][col].inverse().expect("non-zero pivot");
        m[rank] = m[rank].iter().map(|x| x * &inv).collect();
        for i in 0..m.len() {
            if i == rank || m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone();
            for j in 0..ncols {
                if !m[rank][j].is_zero() {
                    let t = &f * &m[rank][j];
                    m[i][j] = &m[i][j] - &t;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    m.truncate(rank);
    (m, pivots)
}

/// Basis of `{x : A x = 0}` for the matrix with the given rows.
pub fn dense_nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (r, pivots) = dense_rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); ncols];
            x[f] = Rational::one();
            for (row, &pc) in r.iter().zip(&pivots) {
                x[pc] = -&row[f];
            }
            x
        })
        .collect()
}

/// Unique solution of the square system `A x = b`.
pub fn dense_solve(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>> {
    let n = b.len();
    let aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = dense_rref(&aug, n + 1);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return Err(Error::NotInvertible("singular linear system".into()));
    }
    Ok(r.into_iter().map(|row| row[n].clone()).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub enum SolveOutcome {
    /// A solution with every free variable set to zero.
    Solution(Vec<Rational>),
    Inconsistent,
}

/// Solves a possibly non-square system `A x = b`.
pub fn dense_solve_least(a: &[Vec<Rational>], b: &[Rational]) -> SolveOutcome {
    let ncols = a.first().map_or(0, |r| r.len());
    let aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = dense_rref(&aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return SolveOutcome::Inconsistent;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &pc) in r.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    SolveOutcome::Solution(x)
}

/// Scales a `Q(v)` vector by a common multiple of its denominators and
/// strips the common factor, leaving a primitive row over `Z[v]`.
pub fn clear_denominators_row(vec: &[Rational]) -> SparseRow {
    let mut l = ZPoly::one();
    for x in vec.iter().filter(|x| !x.is_zero()) {
        let d = x.denominator();
        let g = l.gcd_primitive(d);
        l = &l * &d.div_exact(&g);
    }
    let lr = Rational::from_poly(l);
    let mut row = SparseRow::new();
    for (i, x) in vec.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let y = x * &lr;
        debug_assert!(y.denominator().is_one());
        row.insert(i, y.numerator().clone());
    }
    strip_content(&mut row);
    row
}

/// [`clear_denominators_row`] with the coefficients placed on `basis`.
pub fn clear_denominators(vec: &[Rational], basis: &[Word]) -> NcPoly {
    let mut out = NcPoly::zero();
    for (i, p) in clear_denominators_row(vec) {
        out.add_term(basis[i].clone(), &p.to_laurent());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(cs: &[i64]) -> ZPoly {
        ZPoly::from_i64s(cs)
    }

    fn rat(cs: &[i64]) -> Rational {
        Rational::from_poly(zp(cs))
    }

    #[test]
    fn echelon_detects_dependency() {
        let mut e = Echelon::new();
        let r1: SparseRow = [(0, zp(&[1])), (2, zp(&[0, 1]))].into_iter().collect();
        let r2: SparseRow = [(1, zp(&[1, 1])), (2, zp(&[1]))].into_iter().collect();
        // (v+1) r1 - v r2... any Q(v)-combination
        let mut r3 = SparseRow::new();
        for (c, x) in &r1 {
            r3.insert(*c, x * &zp(&[1, 1]));
        }
        for (c, x) in &r2 {
            let e = r3.entry(*c).or_default();
            *e = &*e - &(x * &zp(&[0, 1]));
        }
        r3.retain(|_, x| !x.is_zero());
        assert!(e.insert(r1));
        assert!(e.insert(r2));
        assert!(!e.insert(r3));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn dense_solve_two_by_two() {
        // [[1, v], [v, 1]] x = [1, 0]
        let a = vec![vec![rat(&[1]), rat(&[0, 1])], vec![rat(&[0, 1]), rat(&[1])]];
        let x = dense_solve(&a, &[rat(&[1]), Rational::zero()]).unwrap();
        let det = zp(&[1, 0, -1]);
        assert_eq!(x[0], Rational::new(zp(&[1]), det.clone()).unwrap());
        assert_eq!(x[1], Rational::new(zp(&[0, -1]), det).unwrap());
    }

    #[test]
    fn singular_system_rejected() {
        let a = vec![vec![rat(&[1]), rat(&[1])], vec![rat(&[2]), rat(&[2])]];
        assert!(dense_solve(&a, &[rat(&[1]), rat(&[0])]).is_err());
    }

    #[test]
    fn nullspace_dimension() {
        let rows = vec![vec![rat(&[1]), rat(&[0, 1]), Rational::zero()]];
        let ns = dense_nullspace(&rows, 3);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            let s = &(&rows[0][0] * &x[0]) + &(&rows[0][1] * &x[1]);
            assert!(s.is_zero());
        }
    }
}
