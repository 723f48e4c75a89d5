//! Machine-readable reports: JSON structures (with exact arbitrary-precision
//! integers) and CSV emission for census runs. Output field order is fixed,
//! so identical inputs yield byte-identical reports.

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::Number;

use crate::census::CensusReport;
use crate::expr::{print_mono, print_pbw};
use crate::factor::{BoundsReport, FactorizationSet};
use crate::field::Field;
use crate::gallery::{IdentityCase, SweepReport};
use crate::pbw::{GAlgebra, GrReport};

fn big(n: &BigUint) -> Number {
    serde_json::from_str(&n.to_string()).expect("integer literal")
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SplitBoundJson {
    pub n1: u64,
    pub n2: u64,
    pub bound: Number,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundsJson {
    pub n: u64,
    pub g: u64,
    pub per_split: Vec<SplitBoundJson>,
    pub two_factor: Number,
    pub two_factor_proof: Number,
    pub total: Number,
}

impl BoundsJson {
    pub fn from_report(b: &BoundsReport) -> Self {
        BoundsJson {
            n: b.degree,
            g: b.growth,
            per_split: b
                .per_split
                .iter()
                .map(|(n1, n2, bound)| SplitBoundJson {
                    n1: *n1,
                    n2: *n2,
                    bound: big(bound),
                })
                .collect(),
            two_factor: big(&b.two_factor),
            two_factor_proof: big(&b.two_factor_proof),
            total: big(&b.total),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FactorJson {
    pub target: String,
    pub pairs: Vec<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chains: Option<Vec<Vec<String>>>,
    pub exhaustive: bool,
    pub diagnostics: Vec<String>,
    pub bounds: BoundsJson,
}

pub fn factor_json<K: Field>(fs: &FactorizationSet<K>, include_chains: bool) -> FactorJson {
    FactorJson {
        target: print_pbw(&fs.target),
        pairs: fs
            .pairs
            .iter()
            .map(|(b, c)| [print_pbw(b), print_pbw(c)])
            .collect(),
        chains: if include_chains {
            Some(
                fs.chains
                    .iter()
                    .map(|ch| ch.iter().map(print_pbw).collect())
                    .collect(),
            )
        } else {
            None
        },
        exhaustive: fs.exhaustive,
        diagnostics: fs.diagnostics.clone(),
        bounds: BoundsJson::from_report(&fs.bounds),
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CensusJson {
    pub element: String,
    pub count: usize,
    pub pairs: Vec<[String; 2]>,
    pub bound_two_factor: Number,
    pub within_bound: bool,
}

pub fn census_json<K: Field>(r: &CensusReport<K>) -> CensusJson {
    CensusJson {
        element: print_pbw(&r.element),
        count: r.count,
        pairs: r
            .pairs
            .iter()
            .map(|(b, c)| [print_pbw(b), print_pbw(c)])
            .collect(),
        bound_two_factor: big(&r.bound_two_factor),
        within_bound: r.within_bound,
    }
}

pub fn census_csv<K: Field>(reports: &[CensusReport<K>]) -> String {
    let mut out = String::from("element,count,boundTwoFactor,withinBound\n");
    for r in reports {
        out.push_str(&format!(
            "\"{}\",{},{},{}\n",
            print_pbw(&r.element),
            r.count,
            r.bound_two_factor,
            r.within_bound
        ));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GalleryCaseJson {
    pub name: String,
    pub ring: String,
    pub parameters: String,
    pub lhs: String,
    pub rhs: String,
    pub verified: bool,
}

impl GalleryCaseJson {
    pub fn from_case(c: &IdentityCase) -> Self {
        GalleryCaseJson {
            name: c.name.clone(),
            ring: c.ring.clone(),
            parameters: c.parameters.clone(),
            lhs: c.lhs.clone(),
            rhs: c.rhs.clone(),
            verified: c.verified,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GallerySweepJson {
    pub family: String,
    pub cases: Vec<GalleryCaseJson>,
    pub all_verified: bool,
    pub pairwise_distinct: bool,
    pub pairs_checked: usize,
}

pub fn gallery_json(r: &SweepReport) -> GallerySweepJson {
    GallerySweepJson {
        family: r.family.clone(),
        cases: r.cases.iter().map(GalleryCaseJson::from_case).collect(),
        all_verified: r.all_verified,
        pairwise_distinct: r.pairwise_distinct,
        pairs_checked: r.pairs_checked,
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GrViolationJson {
    pub i: String,
    pub j: String,
    pub monomial: String,
    pub degree: u64,
    pub bound: u64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GrCheckJson {
    pub admissible: bool,
    pub violations: Vec<GrViolationJson>,
}

pub fn grcheck_json<K: Field>(ring: &GAlgebra<K>, r: &GrReport) -> GrCheckJson {
    GrCheckJson {
        admissible: r.admissible,
        violations: r
            .violations
            .iter()
            .map(|v| GrViolationJson {
                i: ring.names()[v.i].clone(),
                j: ring.names()[v.j].clone(),
                monomial: print_mono(ring, &v.monomial),
                degree: v.degree,
                bound: v.bound,
            })
            .collect(),
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GrowthJson {
    pub n: u64,
    pub g: u64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FindWeightsJson {
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MulJson {
    pub result: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ErrorBodyJson {
    pub kind: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offset: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorJson {
    pub error: ErrorBodyJson,
}
