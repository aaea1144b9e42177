//! Smith normal form diagonals of sparse integer matrices.
//!
//! Elimination runs first in checked `i64` arithmetic; if any intermediate
//! value overflows, the whole reduction restarts over `BigInt`.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::matrix::SparseMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnfResult {
    /// `min(rows, cols)` entries; nonzero ones first, each dividing the next.
    #[serde(serialize_with = "super::serialize_biguints")]
    pub diagonal: Vec<BigUint>,
    pub rank: usize,
}

impl SnfResult {
    /// Diagonal entries greater than one.
    pub fn torsion(&self) -> Vec<BigUint> {
        self.diagonal
            .iter()
            .filter(|d| **d > BigUint::one())
            .cloned()
            .collect()
    }
}

#[derive(Debug)]
struct Overflow;

trait Scalar: Clone + std::fmt::Debug {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// `|self| < |other|`
    fn smaller(&self, other: &Self) -> bool;
    /// Quotient rounded to nearest, so the remainder is at most half the divisor.
    fn round_div(&self, d: &Self) -> Self;
    /// `self - q * b`
    fn sub_mul(&self, q: &Self, b: &Self) -> Result<Self, Overflow>;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        self.unsigned_abs() == 1
    }
    fn smaller(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn round_div(&self, d: &Self) -> Self {
        let (q, r) = (self / d, self % d);
        if 2 * r.unsigned_abs() > d.unsigned_abs() {
            if (r < 0) == (*d < 0) {
                q + 1
            } else {
                q - 1
            }
        } else {
            q
        }
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Result<Self, Overflow> {
        q.checked_mul(*b)
            .and_then(|p| self.checked_sub(p))
            .filter(|v| *v != i64::MIN)
            .ok_or(Overflow)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn smaller(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn round_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        if r.magnitude() * 2u32 > *d.magnitude() {
            if r.sign() == d.sign() {
                q + 1
            } else {
                q - 1
            }
        } else {
            q
        }
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Result<Self, Overflow> {
        Ok(self - q * b)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Reducer<T> {
    rows: Vec<Vec<(usize, T)>>,
    col_rows: Vec<BTreeSet<usize>>,
    pivots: Vec<T>,
}

impl<T: Scalar> Reducer<T> {
    fn new(m: &SparseMatrix) -> Self {
        let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); m.rows()];
        let mut col_rows = vec![BTreeSet::new(); m.cols()];
        for (r, c, v) in m.triplets() {
            rows[r].push((c, T::from_i64(v)));
            col_rows[c].insert(r);
        }
        for row in &mut rows {
            row.sort_by_key(|&(c, _)| c);
        }
        Self {
            rows,
            col_rows,
            pivots: Vec::new(),
        }
    }

    fn entry(&self, r: usize, c: usize) -> &T {
        let row = &self.rows[r];
        let idx = row
            .binary_search_by_key(&c, |&(j, _)| j)
            .expect("entry present");
        &row[idx].1
    }

    /// Smallest-magnitude entry, ties broken by Markowitz cost.
    fn choose_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                let cost = (row.len() - 1) * (self.col_rows[*c].len() - 1);
                let better = match best {
                    None => true,
                    Some((br, bc, bcost)) => {
                        let bv = self.entry(br, bc);
                        v.smaller(bv) || (!bv.smaller(v) && cost < bcost)
                    }
                };
                if better {
                    best = Some((r, *c, cost));
                    if v.is_unit() && cost == 0 {
                        return Some((r, *c));
                    }
                }
            }
        }
        best.map(|(r, c, _)| (r, c))
    }

    /// `row[target] -= q * row[source]`, maintaining the column index.
    fn row_sub(&mut self, target: usize, q: &T, source: usize) -> Result<(), Overflow> {
        let src = std::mem::take(&mut self.rows[source]);
        let tgt = std::mem::take(&mut self.rows[target]);
        let mut out = Vec::with_capacity(src.len() + tgt.len());
        let (mut i, mut j) = (0, 0);
        while i < tgt.len() || j < src.len() {
            let take_tgt = j >= src.len() || (i < tgt.len() && tgt[i].0 < src[j].0);
            let take_src = i >= tgt.len() || (j < src.len() && src[j].0 < tgt[i].0);
            if take_tgt {
                out.push(tgt[i].clone());
                i += 1;
            } else if take_src {
                let (c, ref b) = src[j];
                let v = T::from_i64(0).sub_mul(q, b)?;
                self.col_rows[c].insert(target);
                out.push((c, v));
                j += 1;
            } else {
                let c = tgt[i].0;
                let v = tgt[i].1.sub_mul(q, &src[j].1)?;
                if v.is_zero() {
                    self.col_rows[c].remove(&target);
                } else {
                    out.push((c, v));
                }
                i += 1;
                j += 1;
            }
        }
        self.rows[source] = src;
        self.rows[target] = out;
        Ok(())
    }

    fn run(mut self) -> Result<Vec<T>, Overflow> {
        while let Some((r, c)) = self.choose_pivot() {
            let p = self.entry(r, c).clone();

            let others: Vec<usize> = self.col_rows[c]
                .iter()
                .copied()
                .filter(|&i| i != r)
                .collect();
            let mut clean = true;
            for i in others {
                let q = self.entry(i, c).round_div(&p);
                self.row_sub(i, &q, r)?;
                if self.col_rows[c].contains(&i) {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }

            // Column c now holds only p, so column operations touch row r alone.
            let row = std::mem::take(&mut self.rows[r]);
            let mut kept = Vec::new();
            for (j, b) in row {
                if j == c {
                    continue;
                }
                let q = b.round_div(&p);
                let rem = b.sub_mul(&q, &p)?;
                if rem.is_zero() {
                    self.col_rows[j].remove(&r);
                } else {
                    kept.push((j, rem));
                }
            }
            if kept.is_empty() {
                self.col_rows[c].remove(&r);
                self.pivots.push(p);
            } else {
                let pos = kept.partition_point(|&(j, _)| j < c);
                kept.insert(pos, (c, p));
                self.rows[r] = kept;
            }
        }
        Ok(self.pivots)
    }
}

/// Turns a diagonal matrix into its Smith form.
fn invariant_factors(pivots: Vec<BigInt>) -> Vec<BigUint> {
    let mut units = 0;
    let mut rest: Vec<BigUint> = Vec::new();
    for p in pivots {
        let m = p.magnitude().clone();
        if m.is_one() {
            units += 1;
        } else {
            rest.push(m);
        }
    }
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let g = rest[i].gcd(&rest[j]);
            if g != rest[i] {
                let l = &rest[i] / &g * &rest[j];
                rest[i] = g;
                rest[j] = l;
            }
        }
    }
    // gcd steps can produce new units
    let mut out = vec![BigUint::one(); units];
    let (mut ones, others): (Vec<BigUint>, Vec<BigUint>) =
        rest.into_iter().partition(|d| d.is_one());
    out.append(&mut ones);
    out.extend(others);
    out
}

pub fn snf(m: &SparseMatrix) -> SnfResult {
    let pivots: Vec<BigInt> = match Reducer::<i64>::new(m).run() {
        Ok(p) => p.iter().map(Scalar::to_big).collect(),
        Err(Overflow) => Reducer::<BigInt>::new(m)
            .run()
            .expect("bigint arithmetic cannot overflow"),
    };
    let rank = pivots.len();
    let mut diagonal = invariant_factors(pivots);
    diagonal.resize(m.rows().min(m.cols()), BigUint::zero());
    SnfResult { diagonal, rank }
}

/// Rank over the integers (equivalently over the rationals).
pub fn rank_z(m: &SparseMatrix) -> usize {
    snf(m).rank
}

#[allow(dead_code)]
pub(crate) fn snf_bigint_only(m: &SparseMatrix) -> SnfResult {
    let pivots = Reducer::<BigInt>::new(m).run().expect("no overflow");
    let rank = pivots.len();
    let mut diagonal = invariant_factors(pivots);
    diagonal.resize(m.rows().min(m.cols()), BigUint::zero());
    SnfResult { diagonal, rank }
}

pub(crate) fn biguint_to_json(v: &BigUint) -> serde_json::Value {
    match v.to_u64() {
        Some(small) => serde_json::Value::from(small),
        None => serde_json::Value::from(BigInt::from_biguint(Sign::Plus, v.clone()).to_string()),
    }
}
