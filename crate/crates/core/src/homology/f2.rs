//! Linear algebra over the field with two elements on packed bit vectors.

use crate::matrix::SparseMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.flip(i);
            }
        }
        v
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn leading(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }
}

/// Echelon basis of a span, remembering which input vectors produced each
/// basis element so that membership queries can return coefficients.
pub struct SpanBasis {
    dim: usize,
    generators: usize,
    /// Indexed by leading bit.
    pivots: Vec<Option<(BitVec, BitVec)>>,
    rank: usize,
}

impl SpanBasis {
    pub fn new(dim: usize, generators: usize) -> Self {
        Self {
            dim,
            generators,
            pivots: vec![None; dim],
            rank: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Reduces `v` against the basis; returns the residue and the combination
    /// of generators that was subtracted.
    fn reduce(&self, mut v: BitVec) -> (BitVec, BitVec) {
        let mut combo = BitVec::zeros(self.generators);
        // Basis rows are only reduced below their own leading bit, so scan
        // positions in increasing order.
        let mut start = 0;
        while let Some(lead) = leading_from(&v, start) {
            match &self.pivots[lead] {
                Some((row, tag)) => {
                    v.xor_assign(row);
                    combo.xor_assign(tag);
                    start = lead + 1;
                }
                None => start = lead + 1,
            }
        }
        (v, combo)
    }

    /// Adds generator number `index`.
    pub fn insert(&mut self, v: BitVec, index: usize) {
        debug_assert_eq!(v.len, self.dim);
        let (residue, mut combo) = self.reduce(v);
        if let Some(lead) = residue.leading() {
            combo.flip(index);
            self.pivots[lead] = Some((residue, combo));
            self.rank += 1;
        }
    }

    /// Coefficients `c` with `sum c_i g_i = target`, if the target is in the span.
    pub fn solve(&self, target: BitVec) -> Option<BitVec> {
        let (residue, combo) = self.reduce(target);
        residue.is_zero().then_some(combo)
    }
}

fn leading_from(v: &BitVec, start: usize) -> Option<usize> {
    if start >= v.len {
        return None;
    }
    let mut w = start / 64;
    let mut word = v.words[w] & (!0u64 << (start % 64));
    loop {
        if word != 0 {
            return Some(w * 64 + word.trailing_zeros() as usize);
        }
        w += 1;
        if w >= v.words.len() {
            return None;
        }
        word = v.words[w];
    }
}

/// Columns of `m` reduced mod 2.
pub fn columns_mod2(m: &SparseMatrix) -> Vec<BitVec> {
    (0..m.cols())
        .map(|c| {
            let mut v = BitVec::zeros(m.rows());
            for &(r, x) in m.column(c) {
                if x % 2 != 0 {
                    v.flip(r);
                }
            }
            v
        })
        .collect()
}

pub fn rank_f2(m: &SparseMatrix) -> usize {
    let mut basis = SpanBasis::new(m.rows(), m.cols());
    for (i, col) in columns_mod2(m).into_iter().enumerate() {
        basis.insert(col, i);
    }
    basis.rank()
}

/// Some `x` with `m x = b` over F2, or `None` if the system is inconsistent.
pub fn solve_f2(m: &SparseMatrix, b: &BitVec) -> Option<BitVec> {
    let mut basis = SpanBasis::new(m.rows(), m.cols());
    for (i, col) in columns_mod2(m).into_iter().enumerate() {
        basis.insert(col, i);
    }
    basis.solve(b.clone())
}

/// `m x` over F2.
pub fn apply_f2(m: &SparseMatrix, x: &BitVec) -> BitVec {
    let mut out = BitVec::zeros(m.rows());
    for c in 0..m.cols() {
        if x.get(c) {
            for &(r, v) in m.column(c) {
                if v % 2 != 0 {
                    out.flip(r);
                }
            }
        }
    }
    out
}
