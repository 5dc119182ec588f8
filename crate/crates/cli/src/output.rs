//! JSON shapes for every command. Field order is declaration order and map
//! keys are sorted, so identical inputs serialize to identical bytes.

use std::collections::BTreeMap;

use serde::Serialize;

use apoly_core::amalgam::UnityReport;
use apoly_core::newton::{BasisChange, Edge, NewtonPolygon};
use apoly_core::numeric::ConvergenceTrace;
use apoly_core::LaurentPolynomial;

#[derive(Serialize)]
pub struct TermJson {
    /// Decimal string: arbitrary-precision coefficients survive any reader.
    pub coeff: String,
    pub exps: BTreeMap<String, i64>,
}

#[derive(Serialize)]
pub struct PolyJson {
    /// Canonical printed form; parses back to the same polynomial.
    pub poly: String,
    pub vars: Vec<String>,
    pub num_terms: usize,
    /// Terms in the canonical (ascending monomial) order.
    pub terms: Vec<TermJson>,
}

impl PolyJson {
    pub fn of(f: &LaurentPolynomial) -> Self {
        PolyJson {
            poly: f.to_string(),
            vars: f.vars().into_iter().map(|v| v.to_string()).collect(),
            num_terms: f.num_terms(),
            terms: f
                .terms()
                .map(|(m, c)| TermJson {
                    coeff: c.to_string(),
                    exps: m
                        .exponents()
                        .map(|(v, e)| (v.to_string(), e))
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct EdgeJson {
    pub from: [i64; 2],
    pub to: [i64; 2],
    /// "p/q" for finite slopes, "vertical" otherwise.
    pub slope: String,
    pub lattice_length: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<BasisJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_poly: Option<PolyJson>,
}

impl EdgeJson {
    pub fn of(edge: &Edge) -> Self {
        EdgeJson {
            from: [edge.from().i, edge.from().j],
            to: [edge.to().i, edge.to().j],
            slope: edge.slope().to_string(),
            lattice_length: edge.lattice_length(),
            basis: None,
            edge_poly: None,
        }
    }

    pub fn with_poly(mut self, basis: &BasisChange, f_e: &LaurentPolynomial) -> Self {
        self.basis = Some(BasisJson {
            p: basis.p,
            q: basis.q,
            a: basis.a,
            b: basis.b,
        });
        self.edge_poly = Some(PolyJson::of(f_e));
        self
    }
}

#[derive(Serialize)]
pub struct BasisJson {
    pub p: i64,
    pub q: i64,
    pub a: i64,
    pub b: i64,
}

#[derive(Serialize)]
pub struct PolygonJson {
    pub vertices: Vec<[i64; 2]>,
    pub edges: Vec<EdgeJson>,
}

impl PolygonJson {
    pub fn vertices_of(polygon: &NewtonPolygon) -> Vec<[i64; 2]> {
        polygon.vertices().iter().map(|v| [v.i, v.j]).collect()
    }
}

#[derive(Serialize)]
pub struct EdgeSelectionJson {
    pub slope: String,
    pub edges: Vec<EdgeJson>,
}

#[derive(Serialize)]
pub struct AmalgamJson {
    pub n: u32,
    pub gluing: [i64; 4],
    pub method: String,
    pub result: PolyJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unity: Option<UnityJson>,
}

#[derive(Serialize)]
pub struct UnityJson {
    pub n: u32,
    pub vertical_edge_found: bool,
    pub multiplicity: u32,
    pub fiber: PolyJson,
}

impl UnityJson {
    pub fn of(report: &UnityReport) -> Self {
        UnityJson {
            n: report.n,
            vertical_edge_found: report.vertical_edge_found,
            multiplicity: report.multiplicity,
            fiber: PolyJson::of(&report.fiber_polynomial),
        }
    }
}

#[derive(Serialize)]
pub struct CheckRootsJson {
    pub n: u32,
    pub multiplicity: u32,
    pub divisible: bool,
}

#[derive(Serialize)]
pub struct MatchJson {
    pub index: u32,
    pub target: [f64; 2],
    pub root: [f64; 2],
    pub distance: f64,
}

#[derive(Serialize)]
pub struct StepJson {
    pub k: usize,
    pub p: f64,
    pub b: f64,
    pub matches: Vec<MatchJson>,
}

#[derive(Serialize)]
pub struct TraceJson {
    pub n: u32,
    pub steps: Vec<StepJson>,
}

impl TraceJson {
    pub fn of(trace: &ConvergenceTrace) -> Self {
        TraceJson {
            n: trace.n,
            steps: trace
                .steps
                .iter()
                .enumerate()
                .map(|(k, step)| StepJson {
                    k,
                    p: step.p,
                    b: step.b,
                    matches: step
                        .matches
                        .iter()
                        .map(|m| MatchJson {
                            index: m.index,
                            target: [m.target.re, m.target.im],
                            root: [m.root.re, m.root.im],
                            distance: m.distance,
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}
