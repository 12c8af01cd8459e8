use serde::Serialize;

use super::LieAlgebra;
use crate::exactlin::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    LowerCentral,
    Derived,
}

/// Terms of a series up to and including its stable term, which is recorded
/// once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub terms: Vec<Subspace>,
    pub dims: Vec<usize>,
}

impl SeriesReport {
    pub fn last(&self) -> &Subspace {
        self.terms.last().expect("series has at least one term")
    }

    pub fn reaches_zero(&self) -> bool {
        self.last().is_zero()
    }
}

impl LieAlgebra {
    fn series(&self, kind: SeriesKind) -> SeriesReport {
        let full = self.full();
        let mut terms = vec![full.clone()];
        loop {
            let cur = terms.last().expect("nonempty");
            if cur.is_zero() {
                break;
            }
            let next = match kind {
                SeriesKind::LowerCentral => self.product_space(&full, cur),
                SeriesKind::Derived => self.product_space(cur, cur),
            }
            .expect("dims agree");
            if &next == cur {
                break;
            }
            terms.push(next);
        }
        let dims = terms.iter().map(Subspace::dim).collect();
        SeriesReport { kind, terms, dims }
    }

    /// `C^1 = g`, `C^{i+1} = [g, C^i]`.
    pub fn lower_central_series(&self) -> SeriesReport {
        self.series(SeriesKind::LowerCentral)
    }

    /// `D^1 = g`, `D^{i+1} = [D^i, D^i]`.
    pub fn derived_series(&self) -> SeriesReport {
        self.series(SeriesKind::Derived)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().reaches_zero()
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().reaches_zero()
    }
}
