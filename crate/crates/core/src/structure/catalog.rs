use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::recognize::{self, Candidate};
use super::StructureError;
use crate::exactlin::{int, q, Matrix, Rational};
use crate::liealg::{triangularize, LieAlgebra};
use crate::reduction::cone_dimension;

/// Dehn-function class. Carried as metadata only; nothing here computes it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DehnType {
    Quadratic,
    Cubic,
    Exponential,
    Unknown,
}

impl DehnType {
    pub fn parse(s: &str) -> Option<DehnType> {
        Some(match s.trim() {
            "quadratic" => DehnType::Quadratic,
            "cubic" => DehnType::Cubic,
            "exponential" => DehnType::Exponential,
            "unknown" => DehnType::Unknown,
            _ => return None,
        })
    }
}

impl fmt::Display for DehnType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DehnType::Quadratic => "quadratic",
            DehnType::Cubic => "cubic",
            DehnType::Exponential => "exponential",
            DehnType::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub constraint: &'static str,
}

pub struct CatalogEntry {
    pub name: &'static str,
    pub dim: usize,
    pub params: &'static [ParamSpec],
    pub constraint: &'static str,
    pub conedim: usize,
    pub source: &'static str,
    generate: fn(&[Rational]) -> Vec<(usize, usize, usize, Rational)>,
    admissible: fn(&[Rational]) -> bool,
    dehn: fn(&[Rational]) -> DehnType,
    samples: fn() -> Vec<Vec<Rational>>,
    recognize: fn(&LieAlgebra) -> Option<Candidate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogMatch {
    pub name: String,
    #[serde(serialize_with = "crate::report::ser_params")]
    pub params: Vec<(String, Rational)>,
    /// Columns are the normal-form basis in input coordinates:
    /// `input.transport(witness)` equals the catalog generator.
    #[serde(serialize_with = "crate::report::ser_matrix")]
    pub witness: Matrix,
}

impl CatalogMatch {
    pub fn param_values(&self) -> Vec<Rational> {
        self.params.iter().map(|(_, v)| v.clone()).collect()
    }

    /// Same name and parameters.
    pub fn same_class(&self, other: &CatalogMatch) -> bool {
        self.name == other.name && self.params == other.params
    }
}

impl fmt::Display for CatalogMatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&display_name(self.name.as_str(), &self.param_values()))
    }
}

pub(crate) fn display_name(name: &str, params: &[Rational]) -> String {
    if params.is_empty() {
        name.to_string()
    } else {
        let ps: Vec<String> = params.iter().map(ToString::to_string).collect();
        format!("{name}({})", ps.join(","))
    }
}

impl CatalogEntry {
    pub fn is_admissible(&self, params: &[Rational]) -> bool {
        params.len() == self.params.len() && (self.admissible)(params)
    }

    pub fn generator(&self, params: &[Rational]) -> Result<LieAlgebra, StructureError> {
        if !self.is_admissible(params) {
            return Err(StructureError::Inadmissible {
                name: self.name.into(),
                given: params.iter().map(ToString::to_string).collect::<Vec<_>>().join(","),
                constraint: self.constraint.into(),
            });
        }
        Ok(LieAlgebra::from_constants(
            display_name(self.name, params),
            self.dim,
            &(self.generate)(params),
        ))
    }

    /// The bracket table at any parameter values of the right arity, with no
    /// admissibility check (used to normalize descriptions like `g4_5(2,1)`).
    pub fn raw_generator(&self, params: &[Rational]) -> Option<LieAlgebra> {
        (params.len() == self.params.len()).then(|| {
            LieAlgebra::from_constants(display_name(self.name, params), self.dim, &(self.generate)(params))
        })
    }

    pub fn dehn_type(&self, params: &[Rational]) -> DehnType {
        (self.dehn)(params)
    }

    pub fn samples(&self) -> Vec<Vec<Rational>> {
        (self.samples)()
    }

    /// Certified match: the candidate basis must carry `g` exactly onto the
    /// generator.
    pub fn recognize(&self, g: &LieAlgebra) -> Option<CatalogMatch> {
        if g.dim() != self.dim {
            return None;
        }
        let (params, basis) = (self.recognize)(g)?;
        if !self.is_admissible(&params) {
            return None;
        }
        let witness = Matrix::from_columns(g.dim(), &basis);
        let target = self.generator(&params).ok()?;
        if !g.transport(&witness).ok()?.same_constants(&target) {
            return None;
        }
        Some(CatalogMatch {
            name: self.name.into(),
            params: self.params.iter().map(|p| p.name.to_string()).zip(params).collect(),
            witness,
        })
    }
}

const NO_PARAMS: &[ParamSpec] = &[];

fn none() -> Vec<Vec<Rational>> {
    vec![vec![]]
}

fn always(_: &[Rational]) -> bool {
    true
}

fn unlisted(_: &[Rational]) -> DehnType {
    DehnType::Unknown
}

fn in_unit(a: &Rational) -> bool {
    *a >= int(-1) && *a <= int(1)
}

static CATALOG: [CatalogEntry; 9] = [
    CatalogEntry {
        name: "a2",
        dim: 2,
        params: NO_PARAMS,
        constraint: "",
        conedim: 1,
        source: "[e2,e1] = e1",
        generate: |_| vec![(2, 1, 1, int(1))],
        admissible: always,
        dehn: unlisted,
        samples: none,
        recognize: recognize::a2,
    },
    CatalogEntry {
        name: "heis",
        dim: 3,
        params: NO_PARAMS,
        constraint: "",
        conedim: 3,
        source: "[e1,e2] = e3",
        generate: |_| vec![(1, 2, 3, int(1))],
        admissible: always,
        dehn: |_| DehnType::Cubic,
        samples: none,
        recognize: recognize::heis,
    },
    CatalogEntry {
        name: "g3_3",
        dim: 3,
        params: NO_PARAMS,
        constraint: "",
        conedim: 1,
        source: "[e3,e1] = e1, [e3,e2] = e2",
        generate: |_| vec![(3, 1, 1, int(1)), (3, 2, 2, int(1))],
        admissible: always,
        dehn: unlisted,
        samples: none,
        recognize: recognize::g3_3,
    },
    CatalogEntry {
        name: "g3_5",
        dim: 3,
        params: &[ParamSpec {
            name: "alpha",
            constraint: "-1 <= alpha < 1, alpha != 0",
        }],
        constraint: "-1 <= alpha < 1, alpha != 0",
        conedim: 1,
        source: "[e3,e1] = e1, [e3,e2] = alpha e2",
        generate: |p| vec![(3, 1, 1, int(1)), (3, 2, 2, p[0].clone())],
        admissible: |p| p[0] >= int(-1) && p[0] < int(1) && !p[0].is_zero(),
        dehn: unlisted,
        samples: || vec![vec![q(1, 2)], vec![q(-1, 2)], vec![int(-1)], vec![q(2, 3)]],
        recognize: recognize::g3_5,
    },
    CatalogEntry {
        name: "g4_5",
        dim: 4,
        params: &[
            ParamSpec {
                name: "alpha",
                constraint: "-1 <= alpha <= beta <= 1, alpha beta != 0",
            },
            ParamSpec {
                name: "beta",
                constraint: "-1 <= alpha <= beta <= 1, alpha beta != 0",
            },
        ],
        constraint: "-1 <= alpha <= beta <= 1, alpha beta != 0; beta >= 0 when alpha = -1",
        conedim: 1,
        source: "[e4,e1] = e1, [e4,e2] = alpha e2, [e4,e3] = beta e3",
        generate: |p| vec![(4, 1, 1, int(1)), (4, 2, 2, p[0].clone()), (4, 3, 3, p[1].clone())],
        admissible: |p| {
            let (a, b) = (&p[0], &p[1]);
            in_unit(a)
                && in_unit(b)
                && a <= b
                && !a.is_zero()
                && !b.is_zero()
                && !(*a == int(-1) && b.is_negative())
        },
        dehn: unlisted,
        samples: || {
            vec![
                vec![int(1), int(1)],
                vec![q(1, 2), int(1)],
                vec![q(-1, 2), q(1, 3)],
                vec![int(-1), q(1, 2)],
                vec![q(1, 3), q(1, 2)],
            ]
        },
        recognize: recognize::g4_5,
    },
    CatalogEntry {
        name: "g4_8",
        dim: 4,
        params: NO_PARAMS,
        constraint: "",
        conedim: 1,
        source: "[e1,e2] = e3, [e4,e1] = e1, [e4,e2] = -e2",
        generate: |_| vec![(1, 2, 3, int(1)), (4, 1, 1, int(1)), (4, 2, 2, int(-1))],
        admissible: always,
        dehn: unlisted,
        samples: none,
        recognize: recognize::g4_8,
    },
    CatalogEntry {
        name: "g4_9",
        dim: 4,
        params: &[ParamSpec {
            name: "beta",
            constraint: "-1 < beta <= 1, beta != 0",
        }],
        constraint: "-1 < beta <= 1, beta != 0",
        conedim: 1,
        source: "[e1,e2] = e3, [e4,e1] = e1, [e4,e2] = beta e2, [e4,e3] = (1+beta) e3",
        generate: |p| {
            vec![
                (1, 2, 3, int(1)),
                (4, 1, 1, int(1)),
                (4, 2, 2, p[0].clone()),
                (4, 3, 3, int(1) + &p[0]),
            ]
        },
        admissible: |p| p[0] > int(-1) && p[0] <= int(1) && !p[0].is_zero(),
        dehn: unlisted,
        samples: || vec![vec![int(1)], vec![q(1, 2)], vec![q(-1, 2)], vec![q(1, 3)]],
        recognize: recognize::g4_9,
    },
    CatalogEntry {
        name: "g4_9_0",
        dim: 4,
        params: NO_PARAMS,
        constraint: "",
        conedim: 2,
        source: "[e4,e1] = e1, [e4,e2] = e2, [e2,e3] = e1",
        generate: |_| vec![(4, 1, 1, int(1)), (4, 2, 2, int(1)), (2, 3, 1, int(1))],
        admissible: always,
        dehn: unlisted,
        samples: none,
        recognize: recognize::g4_9_0,
    },
    CatalogEntry {
        name: "g5_19",
        dim: 5,
        params: &[
            ParamSpec {
                name: "alpha",
                constraint: "alpha = 1",
            },
            ParamSpec {
                name: "beta",
                constraint: "beta != 0",
            },
        ],
        constraint: "alpha = 1, beta != 0",
        conedim: 2,
        source: "[e1,e2] = e3, [e5,e1] = e1, [e5,e3] = e3, [e5,e4] = beta e4",
        generate: |p| {
            vec![
                (1, 2, 3, int(1)),
                (5, 1, 1, p[0].clone()),
                (5, 3, 3, p[0].clone()),
                (5, 4, 4, p[1].clone()),
            ]
        },
        admissible: |p| p[0] == int(1) && !p[1].is_zero(),
        dehn: |p| {
            if p[1].is_positive() {
                DehnType::Quadratic
            } else {
                DehnType::Exponential
            }
        },
        samples: || vec![vec![int(1), q(1, 2)], vec![int(1), q(-1, 2)], vec![int(1), q(1, 3)]],
        recognize: recognize::g5_19,
    },
];

pub fn catalog() -> &'static [CatalogEntry] {
    &CATALOG
}

pub fn lookup(name: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.name == name)
}

/// First certified catalog match, filtered by dimension and cone dimension.
/// Algebras that are not completely solvable never match.
pub fn match_catalog(g: &LieAlgebra) -> Option<CatalogMatch> {
    triangularize(g).ok()?;
    let cone = cone_dimension(g).ok()?;
    CATALOG
        .iter()
        .filter(|e| e.dim == g.dim() && e.conedim == cone)
        .find_map(|e| e.recognize(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_lie_and_self_recognizing() {
        for e in catalog() {
            for p in e.samples() {
                let g = e.generator(&p).unwrap();
                g.validate().unwrap();
                assert_eq!(cone_dimension(&g).unwrap(), e.conedim, "{}", e.name);
                let m = match_catalog(&g).unwrap_or_else(|| panic!("{} {:?}", e.name, p));
                assert_eq!(m.name, e.name);
                assert_eq!(m.param_values(), p, "{}", e.name);
            }
        }
    }

    #[test]
    fn inadmissible_parameters() {
        let g35 = lookup("g3_5").unwrap();
        assert!(g35.generator(&[int(1)]).is_err());
        assert!(g35.generator(&[int(0)]).is_err());
        let g45 = lookup("g4_5").unwrap();
        assert!(g45.generator(&[int(-1), q(-1, 2)]).is_err());
        assert!(lookup("g5_19").unwrap().generator(&[int(2), int(1)]).is_err());
    }

    #[test]
    fn normalization_of_scaled_inputs() {
        // [e3,e1] = -2 e1, [e3,e2] = 1 e2: dominant weight -2, alpha = -1/2.
        let g = LieAlgebra::from_constants("x", 3, &[(3, 1, 1, int(-2)), (3, 2, 2, int(1))]);
        let m = match_catalog(&g).unwrap();
        assert_eq!(m.to_string(), "g3_5(-1/2)");
        // g4_9(-1/2) with e4 scaled by -2 and e1, e2 swapped.
        let g = LieAlgebra::from_constants(
            "y",
            4,
            &[(2, 1, 3, int(1)), (4, 2, 2, int(-2)), (4, 1, 1, int(1)), (4, 3, 3, int(-1))],
        );
        assert_eq!(match_catalog(&g).unwrap().to_string(), "g4_9(-1/2)");
    }

    #[test]
    fn sl2_and_unknowns_do_not_match() {
        let sl2 = LieAlgebra::from_constants(
            "sl2",
            3,
            &[(1, 2, 3, int(1)), (3, 1, 1, int(2)), (3, 2, 2, int(-2))],
        );
        assert!(match_catalog(&sl2).is_none());
        assert!(match_catalog(&LieAlgebra::abelian(2)).is_none());
    }
}
