//! Decision rules for quasi-isometry questions between completely solvable
//! algebras, with replayable certificates.
//!
//! Rules run in a fixed order (R0 growth, R1 cone dimension, R2 conformal
//! dimension, R3 product matching, R4 rigidity) and stop at the first one
//! that separates. Every rule evaluated is recorded.

mod reports;

pub use reports::{
    canonical_image, family_report, table1_report, FamilyPair, FamilyReport, RowStatus, Table1Report, Table1Row,
};

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exactlin::{Matrix, Rational};
use crate::geometry::{
    conformal_dimension, detect_diagonal_heintze, has_abelian_derived, identify_rank_one_iwasawa,
    strong_pointed_sphere, NilradicalKind, Spsp, SymmetricTag,
};
use crate::liealg::{triangularize, LieAlgebra};
use crate::reduction::{exponential_radical, rho1, ReductionError};
use crate::structure::{isomorphic, match_catalog, split_factors, CatalogMatch, IsoAnswer, StructureError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QiError {
    #[error("input {side} is not completely solvable: {reason}")]
    NotCompletelySolvable { side: &'static str, reason: String },
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

impl QiError {
    pub fn is_unsupported(&self) -> bool {
        match self {
            QiError::NotCompletelySolvable { .. } => true,
            QiError::Reduction(e) | QiError::Structure(StructureError::Reduction(e)) => e.is_unsupported(),
            QiError::Structure(_) => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VerdictKind {
    NotQuasiisometric,
    OLogEquivalent,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Separates,
    Equivalent,
    NoConclusion,
    NotApplicable,
}

fn ser_opt_rationals<S: Serializer>(v: &[Option<Rational>], s: S) -> Result<S::Ok, S::Error> {
    let strs: Vec<Option<String>> = v.iter().map(|r| r.as_ref().map(ToString::to_string)).collect();
    strs.serialize(s)
}

/// One factor of a split ρ₁ image, with the invariants R3 looks at.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorSummary {
    pub dim: usize,
    /// Catalog normal form, when recognized.
    pub class: Option<String>,
    pub heintze: bool,
    #[serde(serialize_with = "crate::report::ser_opt_rational")]
    pub cdim: Option<Rational>,
    pub iwasawa: SymmetricTag,
    pub spsp: Spsp,
    pub abelian_nilradical: bool,
    pub abelian_derived: bool,
}

impl FactorSummary {
    fn of(f: &LieAlgebra) -> FactorSummary {
        let class = match_catalog(f).map(|m| m.to_string());
        let abelian_derived = has_abelian_derived(f);
        match detect_diagonal_heintze(f) {
            Ok(h) => FactorSummary {
                dim: f.dim(),
                class,
                heintze: true,
                cdim: Some(conformal_dimension(&h)),
                iwasawa: identify_rank_one_iwasawa(&h),
                spsp: strong_pointed_sphere(&h).value,
                abelian_nilradical: h.nilradical_kind == NilradicalKind::Abelian,
                abelian_derived,
            },
            Err(_) => FactorSummary {
                dim: f.dim(),
                class,
                heintze: false,
                cdim: None,
                iwasawa: SymmetricTag::None,
                spsp: Spsp::Unknown,
                abelian_nilradical: false,
                abelian_derived,
            },
        }
    }

    /// Admitted to product matching: a diagonal Heintze factor that is
    /// rank-one symmetric, has the strong pointed sphere property, or has an
    /// abelian derived subalgebra. Unknown SPSP never qualifies on its own.
    pub fn qualifies(&self) -> bool {
        self.heintze && (self.iwasawa.is_some() || self.spsp == Spsp::True || self.abelian_derived)
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum RuleInputs {
    Growth {
        exprad_dim: [usize; 2],
    },
    Cone {
        cone_dim: [usize; 2],
    },
    Conformal {
        #[serde(serialize_with = "ser_opt_rationals")]
        cdim: [Option<Rational>; 2],
    },
    Product {
        complete: [bool; 2],
        euclidean_dim: [usize; 2],
        factors: [Vec<FactorSummary>; 2],
    },
    Rigidity {
        answer: IsoAnswer,
        reason: String,
        #[serde(serialize_with = "crate::report::ser_opt_matrix")]
        witness: Option<Matrix>,
        images: [LieAlgebra; 2],
        iwasawa_without_euclidean: bool,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct RuleApplication {
    pub rule_id: &'static str,
    pub inputs: RuleInputs,
    pub outcome: Outcome,
    pub conclusion: String,
    pub citation: &'static str,
}

pub const CITATIONS: [(&str, &str); 5] = [
    (
        "R0",
        "growth: a trivial exponential radical means polynomial growth, a nontrivial one exponential growth",
    ),
    ("R1", "the cone dimension (covering dimension of the asymptotic cone) is a quasi-isometry invariant"),
    ("R2", "quasi-isometries between Heintze groups preserve the conformal dimension of the boundary"),
    (
        "R3",
        "product rigidity: for factors meeting the hypotheses, quasi-isometric groups have isomorphic reductions; Heintze factors with different conformal dimensions are never matched",
    ),
    (
        "R4",
        "a completely solvable group is O(log)-bilipschitz equivalent to its reduction; Iwasawa images without Euclidean factor upgrade this to isomorphism",
    ),
];

fn citation(id: &str) -> &'static str {
    CITATIONS.iter().find(|(r, _)| *r == id).map(|(_, c)| *c).expect("rule id in table")
}

fn multiset(fs: &[FactorSummary]) -> Option<BTreeMap<String, usize>> {
    let mut m = BTreeMap::new();
    for f in fs {
        *m.entry(f.class.clone()?).or_insert(0) += 1;
    }
    Some(m)
}

/// Pure decision for each rule from its recorded inputs; used both by
/// `compare` and by replay.
fn decide(inputs: &RuleInputs) -> (Outcome, String) {
    match inputs {
        RuleInputs::Growth { exprad_dim: [a, b] } => {
            if (*a == 0) != (*b == 0) {
                (Outcome::Separates, "one input has polynomial growth, the other exponential".into())
            } else {
                (Outcome::NoConclusion, "same growth type".into())
            }
        }
        RuleInputs::Cone { cone_dim: [a, b] } => {
            if a != b {
                (Outcome::Separates, format!("cone dimensions differ ({a} vs {b})"))
            } else {
                (Outcome::NoConclusion, format!("equal cone dimension {a}"))
            }
        }
        RuleInputs::Conformal { cdim } => match cdim {
            [Some(a), Some(b)] if a != b => {
                (Outcome::Separates, format!("conformal dimensions differ ({a} vs {b})"))
            }
            [Some(a), Some(_)] => (Outcome::NoConclusion, format!("equal conformal dimension {a}")),
            _ => (
                Outcome::NotApplicable,
                "a reduction is not a single diagonal Heintze algebra".into(),
            ),
        },
        RuleInputs::Product {
            complete,
            euclidean_dim,
            factors,
        } => {
            if !(complete[0] && complete[1]) {
                return (Outcome::NotApplicable, "a reduction has no certified factor splitting".into());
            }
            if let Some(f) = factors.iter().flatten().find(|f| !f.qualifies()) {
                return (
                    Outcome::NotApplicable,
                    format!(
                        "factor {} does not meet the product hypotheses",
                        f.class.as_deref().unwrap_or("(unrecognized)")
                    ),
                );
            }
            let (Some(ma), Some(mb)) = (multiset(&factors[0]), multiset(&factors[1])) else {
                return (Outcome::NotApplicable, "a factor is outside the catalog".into());
            };
            if euclidean_dim[0] != euclidean_dim[1] {
                return (
                    Outcome::Separates,
                    format!("Euclidean factors differ (R^{} vs R^{})", euclidean_dim[0], euclidean_dim[1]),
                );
            }
            if ma != mb {
                let a: Vec<&String> = ma.keys().collect();
                let b: Vec<&String> = mb.keys().collect();
                let cd = |fs: &[FactorSummary]| -> Vec<Rational> { fs.iter().filter_map(|f| f.cdim.clone()).collect() };
                let (ca, cb) = (cd(&factors[0]), cd(&factors[1]));
                let mut sorted_a = ca.clone();
                let mut sorted_b = cb.clone();
                sorted_a.sort();
                sorted_b.sort();
                let sub = if sorted_a != sorted_b {
                    format!(
                        "; conformal dimensions of the factors differ ({} vs {})",
                        join(&sorted_a),
                        join(&sorted_b)
                    )
                } else {
                    String::new()
                };
                return (
                    Outcome::Separates,
                    format!("factor classes differ ({a:?} vs {b:?}){sub}"),
                );
            }
            (Outcome::NoConclusion, "same Euclidean rank and factor classes".into())
        }
        RuleInputs::Rigidity {
            answer,
            witness,
            images,
            iwasawa_without_euclidean,
            ..
        } => {
            let verified = *answer == IsoAnswer::True
                && witness
                    .as_ref()
                    .and_then(|w| images[0].transport(w).ok())
                    .is_some_and(|t| t.same_constants(&images[1]));
            if verified {
                let mut s = "reductions are isomorphic (witness verified)".to_string();
                if *iwasawa_without_euclidean {
                    s.push_str("; the image is a rank-one Iwasawa algebra without Euclidean factor");
                }
                (Outcome::Equivalent, s)
            } else {
                (Outcome::NoConclusion, "no verified isomorphism between the reductions".into())
            }
        }
    }
}

fn join(v: &[Rational]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

impl RuleApplication {
    fn new(rule_id: &'static str, inputs: RuleInputs) -> Self {
        let (outcome, conclusion) = decide(&inputs);
        RuleApplication {
            rule_id,
            inputs,
            outcome,
            conclusion,
            citation: citation(rule_id),
        }
    }

    /// Re-derive the conclusion from the stored inputs.
    pub fn replay(&self) -> bool {
        let (o, c) = decide(&self.inputs);
        o == self.outcome && c == self.conclusion && citation(self.rule_id) == self.citation
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub certificate: Vec<RuleApplication>,
}

impl Verdict {
    pub fn replay(&self) -> bool {
        if !self.certificate.iter().all(RuleApplication::replay) {
            return false;
        }
        let kind = if self.certificate.iter().any(|r| r.outcome == Outcome::Separates) {
            VerdictKind::NotQuasiisometric
        } else if self.certificate.iter().any(|r| r.outcome == Outcome::Equivalent) {
            VerdictKind::OLogEquivalent
        } else {
            VerdictKind::Inconclusive
        };
        kind == self.kind
    }

    pub fn separating_rule(&self) -> Option<&RuleApplication> {
        self.certificate.iter().find(|r| r.outcome == Outcome::Separates)
    }
}

/// ρ₁ image split into factors and matched against the catalog.
#[derive(Clone, Debug, Serialize)]
pub struct ImageSummary {
    pub image: LieAlgebra,
    pub euclidean_dim: usize,
    pub complete: bool,
    pub factors: Vec<LieAlgebra>,
    pub matches: Vec<Option<CatalogMatch>>,
    /// e.g. `R x g3_3`; unrecognized factors show as `?<dim>`.
    pub display: String,
}

pub fn image_display(euclidean_dim: usize, factors: &[String]) -> String {
    let mut parts = Vec::new();
    match euclidean_dim {
        0 => {}
        1 => parts.push("R".to_string()),
        k => parts.push(format!("R^{k}")),
    }
    let mut fs = factors.to_vec();
    fs.sort();
    parts.extend(fs);
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" x ")
    }
}

pub fn summarize_image(image: &LieAlgebra) -> Result<ImageSummary, QiError> {
    let split = split_factors(image)?;
    let matches: Vec<Option<CatalogMatch>> = split.factors.iter().map(match_catalog).collect();
    let names: Vec<String> = matches
        .iter()
        .zip(&split.factors)
        .map(|(m, f)| m.as_ref().map_or_else(|| format!("?{}", f.dim()), ToString::to_string))
        .collect();
    Ok(ImageSummary {
        image: image.clone(),
        display: image_display(split.euclidean_dim, &names),
        euclidean_dim: split.euclidean_dim,
        complete: split.complete,
        factors: split.factors,
        matches,
    })
}

pub fn rho1_image(g: &LieAlgebra) -> Result<ImageSummary, QiError> {
    summarize_image(&rho1(g)?.output)
}

fn side_data(g: &LieAlgebra, side: &'static str) -> Result<(usize, LieAlgebra), QiError> {
    triangularize(g).map_err(|f| QiError::NotCompletelySolvable {
        side,
        reason: f.reason().to_string(),
    })?;
    let r = exponential_radical(g)?;
    Ok((r.dim(), rho1(g)?.output))
}

pub fn compare(a: &LieAlgebra, b: &LieAlgebra) -> Result<Verdict, QiError> {
    let (ra, ia) = side_data(a, "a")?;
    let (rb, ib) = side_data(b, "b")?;
    let mut cert = Vec::new();
    let finish = |cert: Vec<RuleApplication>| {
        let kind = if cert.iter().any(|r: &RuleApplication| r.outcome == Outcome::Separates) {
            VerdictKind::NotQuasiisometric
        } else if cert.iter().any(|r| r.outcome == Outcome::Equivalent) {
            VerdictKind::OLogEquivalent
        } else {
            VerdictKind::Inconclusive
        };
        Verdict { kind, certificate: cert }
    };
    macro_rules! step {
        ($id:expr, $inputs:expr) => {{
            let app = RuleApplication::new($id, $inputs);
            let sep = app.outcome == Outcome::Separates;
            cert.push(app);
            if sep {
                return Ok(finish(cert));
            }
        }};
    }
    step!("R0", RuleInputs::Growth { exprad_dim: [ra, rb] });
    step!(
        "R1",
        RuleInputs::Cone {
            cone_dim: [a.dim() - ra, b.dim() - rb]
        }
    );
    let cd = |g: &LieAlgebra| detect_diagonal_heintze(g).ok().map(|h| conformal_dimension(&h));
    step!("R2", RuleInputs::Conformal { cdim: [cd(&ia), cd(&ib)] });
    let (sa, sb) = (split_factors(&ia)?, split_factors(&ib)?);
    step!(
        "R3",
        RuleInputs::Product {
            complete: [sa.complete, sb.complete],
            euclidean_dim: [sa.euclidean_dim, sb.euclidean_dim],
            factors: [
                sa.factors.iter().map(FactorSummary::of).collect(),
                sb.factors.iter().map(FactorSummary::of).collect(),
            ],
        }
    );
    let iso = isomorphic(&ia, &ib);
    let iwasawa_without_euclidean = sa.euclidean_dim == 0
        && detect_diagonal_heintze(&ia)
            .map(|h| identify_rank_one_iwasawa(&h).is_some())
            .unwrap_or(false);
    step!(
        "R4",
        RuleInputs::Rigidity {
            answer: iso.answer,
            reason: iso.reason,
            witness: iso.witness,
            images: [ia, ib],
            iwasawa_without_euclidean,
        }
    );
    Ok(finish(cert))
}
