//! Order and stable order of the canonical bundle over the unordered
//! configuration space, with cohomological evidence.
//!
//! The verdict is read off the homeomorphism type and planarity of the graph.
//! Evidence comes from the discrete model: the first Stiefel-Whitney class is
//! the sign of the covering holonomy, and its square is computed as the
//! Bockstein `Sq¹` of that class. A nonzero `w1` rules out order 1 and a
//! nonzero `w1²` rules out order 2.

mod holonomy;

pub use holonomy::{
    holonomy_rep, holonomy_rep_with, move_step, square_boundary, w1_cocycle, HolonomyRep,
    Permutation, SpanningTree,
};

use serde::Serialize;
use thiserror::Error;

use crate::abrams::{
    build_unordered_with, BuildOptions, ComplexError, CubeComplex, DEFAULT_CELL_BUDGET,
};
use crate::graph::{classify_space, subdivide, Graph, GraphError, TopoClass};
use crate::homology::{is_cocycle_f2, solve_coboundary_f2, Cochain, CochainError};
use crate::planarity::{find_kuratowski, KuratowskiCertificate, KuratowskiSearch};

#[derive(Debug, Error)]
pub enum BundleError {
    #[error("holonomy is defined on the unordered complex only")]
    OrderedComplex,
    #[error("holonomy data does not belong to this complex")]
    Mismatch,
    #[error("cochain is not a cocycle")]
    NotCocycle,
    #[error("particle count must be at least 1")]
    ZeroParticles,
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A representative of `Sq¹[z]` and whether its class is nonzero.
#[derive(Clone, Debug)]
pub struct Square {
    pub cochain: Cochain,
    pub nontrivial: bool,
}

/// Bockstein of a mod-2 1-cocycle: lift to a 0/1 integer cochain, take the
/// integral coboundary (which is even), halve it and reduce mod 2.
pub fn sq1(c: &CubeComplex, z: &Cochain) -> Result<Square, BundleError> {
    if z.degree != 1 {
        return Err(BundleError::Cochain(CochainError::DimensionMismatch {
            degree: z.degree,
            expected: 1,
            actual: z.degree,
        }));
    }
    if !is_cocycle_f2(c, z)? {
        return Err(BundleError::NotCocycle);
    }
    let d2 = c.boundary(2);
    let values: Vec<bool> = (0..d2.cols())
        .map(|col| {
            let total: i64 = d2
                .column(col)
                .iter()
                .filter(|&&(row, _)| z.values[row])
                .map(|&(_, coef)| coef)
                .sum();
            debug_assert!(total % 2 == 0, "coboundary of a cocycle lift is even");
            (total / 2).rem_euclid(2) == 1
        })
        .collect();
    let cochain = Cochain { degree: 2, values };
    let nontrivial = solve_coboundary_f2(c, &cochain)?.is_none();
    Ok(Square {
        cochain,
        nontrivial,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OrderCase {
    #[serde(rename = "n-equals-1")]
    NEqualsOne,
    #[serde(rename = "empty-configuration")]
    EmptyConfiguration,
    #[serde(rename = "L-trivial")]
    LTrivial,
    #[serde(rename = "circle-odd")]
    CircleOdd,
    #[serde(rename = "circle-even")]
    CircleEven,
    #[serde(rename = "planar-general")]
    PlanarGeneral,
    #[serde(rename = "nonplanar")]
    Nonplanar,
}

impl OrderCase {
    pub fn order(self) -> u8 {
        match self {
            OrderCase::NEqualsOne
            | OrderCase::EmptyConfiguration
            | OrderCase::LTrivial
            | OrderCase::CircleOdd => 1,
            OrderCase::CircleEven | OrderCase::PlanarGeneral => 2,
            OrderCase::Nonplanar => 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Planarity {
    Planar,
    Nonplanar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub w1_nonzero: bool,
    pub sq1_nonzero: bool,
    pub consistent: bool,
    /// Cell counts of the unordered complex the evidence was computed on.
    pub cell_counts: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderReport {
    pub n: usize,
    pub case: OrderCase,
    pub order: u8,
    pub stable_order: u8,
    pub planarity: Planarity,
    pub kuratowski: Option<KuratowskiCertificate>,
    pub topology: TopoClass,
    pub evidence: Option<Evidence>,
    pub notes: Vec<String>,
}

pub fn classify_order(g: &Graph, n: usize) -> Result<OrderReport, BundleError> {
    if n == 0 {
        return Err(BundleError::ZeroParticles);
    }
    let topology = classify_space(g);
    let search = find_kuratowski(g);
    let planarity = match search {
        KuratowskiSearch::Planar => Planarity::Planar,
        _ => Planarity::Nonplanar,
    };
    let mut notes = Vec::new();
    if search == KuratowskiSearch::Omitted {
        notes.push("kuratowski certificate omitted: search budget exhausted".to_string());
    }

    let case = if n == 1 {
        OrderCase::NEqualsOne
    } else if g.edge_count() == 0 && g.vertex_count() < n {
        OrderCase::EmptyConfiguration
    } else if topology.in_l {
        OrderCase::LTrivial
    } else if topology.is_single_circle {
        if n % 2 == 1 {
            OrderCase::CircleOdd
        } else {
            OrderCase::CircleEven
        }
    } else if planarity == Planarity::Planar {
        if topology.has_circle_component() {
            notes.push(
                "circle component inside a disconnected graph: treated as planar-general".into(),
            );
        }
        OrderCase::PlanarGeneral
    } else {
        notes.push("contains a subdivision of K5 or K3,3; verdict holds for every n >= 2".into());
        OrderCase::Nonplanar
    };

    Ok(OrderReport {
        n,
        case,
        order: case.order(),
        stable_order: case.order(),
        planarity,
        kuratowski: search.certificate().cloned(),
        topology,
        evidence: None,
        notes,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub cell_budget: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            cell_budget: DEFAULT_CELL_BUDGET,
        }
    }
}

/// Nontriviality of `w1` and `w1²` on the unordered complex of `g`.
pub fn bundle_evidence(
    g: &Graph,
    n: usize,
    opts: VerifyOptions,
) -> Result<(bool, bool, Vec<usize>), BundleError> {
    let (host, allow_insufficient) = match subdivide(g, n) {
        Ok(s) => (s, false),
        Err(GraphError::EmptyConfiguration { .. }) => (g.clone(), true),
        Err(GraphError::ZeroParticles) => return Err(BundleError::ZeroParticles),
        Err(e) => unreachable!("subdivide only fails on empty input: {e}"),
    };
    let c = build_unordered_with(
        &host,
        n,
        BuildOptions {
            allow_insufficient,
            cell_budget: opts.cell_budget,
        },
    )?;
    let h = holonomy_rep(&c)?;
    let w1 = w1_cocycle(&h, &c)?;
    let w1_nonzero = solve_coboundary_f2(&c, &w1)?.is_none();
    let sq1_nonzero = w1_nonzero && sq1(&c, &w1)?.nontrivial;
    Ok((w1_nonzero, sq1_nonzero, c.cell_counts()))
}

/// Classification plus evidence from the discrete model. If the complex
/// exceeds the budget the classification is returned without evidence.
pub fn verify_order(g: &Graph, n: usize) -> Result<OrderReport, BundleError> {
    verify_order_with(g, n, VerifyOptions::default())
}

pub fn verify_order_with(
    g: &Graph,
    n: usize,
    opts: VerifyOptions,
) -> Result<OrderReport, BundleError> {
    let mut report = classify_order(g, n)?;
    match bundle_evidence(g, n, opts) {
        Ok((w1_nonzero, sq1_nonzero, cell_counts)) => {
            let consistent = match report.order {
                1 => !w1_nonzero,
                2 => w1_nonzero && !sq1_nonzero,
                _ => sq1_nonzero,
            };
            report.evidence = Some(Evidence {
                w1_nonzero,
                sq1_nonzero,
                consistent,
                cell_counts,
            });
        }
        Err(BundleError::Complex(ComplexError::BudgetExceeded { limit })) => {
            report
                .notes
                .push(format!("evidence omitted: complex exceeds {limit} cells"));
        }
        Err(e) => return Err(e),
    }
    Ok(report)
}

impl OrderReport {
    pub fn evidence_omitted(&self) -> bool {
        self.evidence.is_none()
    }
}
