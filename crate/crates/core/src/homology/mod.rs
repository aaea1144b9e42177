//! Integral and mod-2 homology of cube complexes, and mod-2 cochains.

pub mod f2;
mod snf;

pub use snf::{rank_z, snf, SnfResult};

use num_bigint::BigUint;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::abrams::CubeComplex;
use f2::{apply_f2, rank_f2, solve_f2, BitVec};

pub(crate) fn serialize_biguints<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(snf::biguint_to_json))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeHomology {
    pub degree: usize,
    pub betti: usize,
    #[serde(serialize_with = "serialize_biguints")]
    pub torsion: Vec<BigUint>,
    pub betti_mod2: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct HomologyResult {
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyResult {
    /// Betti number in degree `d` (zero above the top degree).
    pub fn betti(&self, d: usize) -> usize {
        self.degrees.get(d).map_or(0, |h| h.betti)
    }

    pub fn betti_mod2(&self, d: usize) -> usize {
        self.degrees.get(d).map_or(0, |h| h.betti_mod2)
    }

    pub fn torsion(&self, d: usize) -> Vec<u64> {
        self.degrees.get(d).map_or(Vec::new(), |h| {
            h.torsion
                .iter()
                .map(|t| u64::try_from(t).expect("torsion coefficient fits in u64"))
                .collect()
        })
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .map(|h| {
                if h.degree % 2 == 0 {
                    h.betti as i64
                } else {
                    -(h.betti as i64)
                }
            })
            .sum()
    }
}

/// Homology over the integers (Betti numbers and torsion) and over F2.
pub fn homology_z(c: &CubeComplex) -> HomologyResult {
    let top = c.top_dimension();
    // ranks[d] = rank of the boundary out of dimension d; zero for d = 0 and above top
    let mut snfs = vec![None; top + 2];
    for (d, slot) in snfs.iter_mut().enumerate().take(top + 1).skip(1) {
        *slot = Some(snf(&c.boundary(d)));
    }
    let rank = |d: usize| snfs[d].as_ref().map_or(0, |s: &SnfResult| s.rank);
    let rank2: Vec<usize> = (0..top + 2)
        .map(|d| {
            if d == 0 || d > top {
                0
            } else {
                rank_f2(&c.boundary(d))
            }
        })
        .collect();

    let degrees = (0..=top)
        .map(|d| {
            let cells = c.cell_count(d);
            DegreeHomology {
                degree: d,
                betti: cells - rank(d) - rank(d + 1),
                torsion: snfs[d + 1].as_ref().map_or(Vec::new(), SnfResult::torsion),
                betti_mod2: cells - rank2[d] - rank2[d + 1],
            }
        })
        .collect();
    HomologyResult { degrees }
}

pub fn euler_char(c: &CubeComplex) -> i64 {
    c.euler_characteristic()
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CochainError {
    #[error("cochain has {actual} values but the complex has {expected} cells in degree {degree}")]
    DimensionMismatch {
        degree: usize,
        expected: usize,
        actual: usize,
    },
    #[error("degree {0} has no coboundary preimage to solve for")]
    NoLowerDegree(usize),
    #[error("cochain is not a cocycle")]
    NotCocycle,
}

/// An F2-valued cochain on the cells of one degree of a fixed complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub values: Vec<bool>,
}

impl Cochain {
    pub fn zero(c: &CubeComplex, degree: usize) -> Self {
        Self {
            degree,
            values: vec![false; c.cell_count(degree)],
        }
    }

    pub fn indicator(c: &CubeComplex, degree: usize, cell: usize) -> Self {
        let mut z = Self::zero(c, degree);
        z.values[cell] = true;
        z
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| !v)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v)
            .map(|(i, _)| i)
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree);
        Cochain {
            degree: self.degree,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a ^ b)
                .collect(),
        }
    }

    fn check(&self, c: &CubeComplex) -> Result<(), CochainError> {
        let expected = c.cell_count(self.degree);
        if self.values.len() != expected {
            return Err(CochainError::DimensionMismatch {
                degree: self.degree,
                expected,
                actual: self.values.len(),
            });
        }
        Ok(())
    }
}

/// The coboundary over F2: `(δz)(σ) = z(∂σ)`.
pub fn coboundary_f2(c: &CubeComplex, z: &Cochain) -> Result<Cochain, CochainError> {
    z.check(c)?;
    let delta = c.boundary(z.degree + 1).transpose();
    let image = apply_f2(&delta, &BitVec::from_bools(&z.values));
    Ok(Cochain {
        degree: z.degree + 1,
        values: image.to_bools(),
    })
}

pub fn is_cocycle_f2(c: &CubeComplex, z: &Cochain) -> Result<bool, CochainError> {
    Ok(coboundary_f2(c, z)?.is_zero())
}

/// Finds `y` with `δy = z`, or `None` when `z` represents a nonzero class.
pub fn solve_coboundary_f2(c: &CubeComplex, z: &Cochain) -> Result<Option<Cochain>, CochainError> {
    z.check(c)?;
    if z.degree == 0 {
        return Err(CochainError::NoLowerDegree(0));
    }
    let delta = c.boundary(z.degree).transpose();
    Ok(
        solve_f2(&delta, &BitVec::from_bools(&z.values)).map(|y| Cochain {
            degree: z.degree - 1,
            values: y.to_bools(),
        }),
    )
}
