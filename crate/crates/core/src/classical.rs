//! Classical (`v = 1`) specialization: counting `SL2(F_p)` points of the
//! relation family, against an oracle built from the Artin presentation of
//! the braid closure group.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oq::indices;
use crate::quotient::QuotientEngine;
use crate::scalar::is_prime;
use crate::tensor::{BraidWord, Key};

/// `2 x 2` matrix over `F_p`, row-major `[a, b, c, d]`.
pub type Mat = [u64; 4];

/// Largest instance accepted by [`classical_points`].
pub const MAX_STRANDS: usize = 3;
pub const MAX_PRIME: u64 = 7;
pub const MAX_TUPLES: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCount {
    pub p: u64,
    pub braid: String,
    pub strands: usize,
    pub count: u64,
    pub oracle_count: u64,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// All of `SL2(F_p)`, in lexicographic order of entries.
pub fn sl2_elements(p: u64) -> Vec<Mat> {
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d + p * p - b * c) % p == 1 % p {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

fn mat_mul(x: &Mat, y: &Mat, p: u64) -> Mat {
    [
        (x[0] * y[0] + x[1] * y[2]) % p,
        (x[0] * y[1] + x[1] * y[3]) % p,
        (x[2] * y[0] + x[3] * y[2]) % p,
        (x[2] * y[1] + x[3] * y[3]) % p,
    ]
}

fn mat_inv(x: &Mat, p: u64) -> Mat {
    [x[3], (p - x[1]) % p, (p - x[2]) % p, x[0]]
}

fn check_instance(strands: usize, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if strands > MAX_STRANDS || p > MAX_PRIME {
        return Err(Error::ResourceLimit(format!(
            "classical points need strands <= {MAX_STRANDS} and p <= {MAX_PRIME} (got {strands}, {p})"
        )));
    }
    let group = p * (p * p - 1);
    let tuples = group.pow(strands as u32);
    if tuples > MAX_TUPLES {
        return Err(Error::ResourceLimit(format!("{tuples} tuples exceed the limit of {MAX_TUPLES}")));
    }
    Ok(tuples)
}

// ----- relation side -----

// A relation at v = 1 reduced mod p: terms (coefficient, key).
type Poly = Vec<(u64, Key)>;

fn reduce_coeff(c: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    (((c % &m) + &m) % &m).to_u64().expect("reduced mod p")
}

/// Entry `x_ij` of the generator matrix in factor `slot`, read through the
/// dictionary with sign matrix `C = (0, -1; 1, 0)`: `x = C·A`.
fn entry_value(a: &Mat, x: u8, p: u64) -> u64 {
    let (i, j) = indices(x);
    // (C·A)_{0j} = -A_{1j}, (C·A)_{1j} = A_{0j}
    match i {
        0 => (p - a[2 + j]) % p,
        _ => a[j],
    }
}

fn eval(poly: &Poly, point: &[Mat], p: u64) -> u64 {
    let mut total = 0;
    for (c, key) in poly {
        let mut t = *c;
        for (slot, w) in key.iter().enumerate() {
            for &x in w.letters() {
                t = t * entry_value(&point[slot], x, p) % p;
                if t == 0 {
                    break;
                }
            }
        }
        total = (total + t) % p;
    }
    total
}

fn for_each_tuple(elems: &[Mat], n: usize, mut f: impl FnMut(&[Mat])) {
    let mut idx = vec![0usize; n];
    let mut point: Vec<Mat> = vec![elems[0]; n];
    if n == 0 {
        f(&point);
        return;
    }
    loop {
        for (k, &i) in idx.iter().enumerate() {
            point[k] = elems[i];
        }
        f(&point);
        let mut k = 0;
        loop {
            idx[k] += 1;
            if idx[k] < elems.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
            if k == n {
                return;
            }
        }
    }
}

/// Number of tuples in `SL2(F_p)^n` at which every relation generator of
/// degree `<= 1`, specialized at `v = 1`, vanishes.
pub fn relation_count(engine: &QuotientEngine, beta: &BraidWord, p: u64) -> Result<u64> {
    check_instance(beta.strands, p)?;
    let rels = engine.relation_generators(beta, 1)?;
    let mut polys: Vec<Poly> = rels
        .iter()
        .map(|r| {
            r.specialize_at_one()
                .into_iter()
                .map(|(k, c)| (reduce_coeff(&c, p), k))
                .filter(|(c, _)| *c != 0)
                .collect::<Poly>()
        })
        .filter(|poly: &Poly| !poly.is_empty())
        .collect();
    polys.sort_by_key(Vec::len);
    let elems = sl2_elements(p);
    let mut count = 0;
    for_each_tuple(&elems, beta.strands, |pt| {
        if polys.iter().all(|poly| eval(poly, pt, p) == 0) {
            count += 1;
        }
    });
    Ok(count)
}

// ----- Artin oracle -----

/// Free-group word: letters `(generator, inverse?)`.
pub type FreeWord = Vec<(usize, bool)>;

fn invert(w: &FreeWord) -> FreeWord {
    w.iter().rev().map(|&(g, inv)| (g, !inv)).collect()
}

fn reduce_free(w: FreeWord) -> FreeWord {
    let mut out: FreeWord = Vec::with_capacity(w.len());
    for l in w {
        if out.last().is_some_and(|&(g, inv)| g == l.0 && inv != l.1) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

// Artin automorphism of σ_i^{±1} (0-based i) on one generator:
// σ_i: x_i ↦ x_i x_{i+1} x_i⁻¹, x_{i+1} ↦ x_i
fn artin_gen(i: usize, positive: bool, g: usize) -> FreeWord {
    let x = |k: usize| (k, false);
    let xi = |k: usize| (k, true);
    match (positive, g) {
        (true, g) if g == i => vec![x(i), x(i + 1), xi(i)],
        (true, g) if g == i + 1 => vec![x(i)],
        (false, g) if g == i => vec![x(i + 1)],
        (false, g) if g == i + 1 => vec![xi(i + 1), x(i), x(i + 1)],
        _ => vec![x(g)],
    }
}

/// Image of generator `j` under the Artin action of `beta` (composite of
/// the letters' automorphisms, first letter outermost).
pub fn artin_image(beta: &BraidWord, j: usize) -> FreeWord {
    let mut w: FreeWord = vec![(j, false)];
    for &(i, positive) in beta.letters.iter().rev() {
        let mut next = Vec::new();
        for &(g, inv) in &w {
            let img = artin_gen(i - 1, positive, g);
            next.extend(if inv { invert(&img) } else { img });
        }
        w = reduce_free(next);
    }
    w
}

fn eval_free(w: &FreeWord, point: &[Mat], p: u64) -> Mat {
    let mut acc: Mat = [1, 0, 0, 1];
    for &(g, inv) in w {
        let m = if inv { mat_inv(&point[g], p) } else { point[g] };
        acc = mat_mul(&acc, &m, p);
    }
    acc
}

/// Number of representations of the closure group: tuples with
/// `A_j = ρ(β_*(x_j))` for every `j`.
pub fn artin_count(beta: &BraidWord, p: u64) -> Result<u64> {
    check_instance(beta.strands, p)?;
    let images: Vec<FreeWord> = (0..beta.strands).map(|j| artin_image(beta, j)).collect();
    let elems = sl2_elements(p);
    let mut count = 0;
    for_each_tuple(&elems, beta.strands, |pt| {
        if images.iter().enumerate().all(|(j, w)| eval_free(w, pt, p) == pt[j]) {
            count += 1;
        }
    });
    Ok(count)
}

/// Both counts for `beta` at the prime `p`.
pub fn classical_points(engine: &QuotientEngine, beta: &BraidWord, p: u64) -> Result<PointCount> {
    let count = relation_count(engine, beta, p)?;
    let oracle_count = artin_count(beta, p)?;
    Ok(PointCount {
        p,
        braid: beta.to_string(),
        strands: beta.strands,
        count,
        oracle_count,
        matches: count == oracle_count,
    })
}
