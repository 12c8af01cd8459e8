use serde::Serialize;

use super::{fingerprint, match_catalog, split_factors, CatalogMatch, SplitResult};
use crate::exactlin::Matrix;
use crate::liealg::LieAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoAnswer {
    True,
    False,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoVerdict {
    pub answer: IsoAnswer,
    pub reason: String,
    /// When `True`: `a.transport(witness)` has the constants of `b`.
    #[serde(serialize_with = "crate::report::ser_opt_matrix")]
    pub witness: Option<Matrix>,
}

impl IsoVerdict {
    fn no(reason: impl Into<String>) -> Self {
        IsoVerdict {
            answer: IsoAnswer::False,
            reason: reason.into(),
            witness: None,
        }
    }

    fn unknown(reason: impl Into<String>) -> Self {
        IsoVerdict {
            answer: IsoAnswer::Unknown,
            reason: reason.into(),
            witness: None,
        }
    }

    /// `True` only if the witness checks out; otherwise `Unknown`.
    fn yes(a: &LieAlgebra, b: &LieAlgebra, witness: Matrix, reason: impl Into<String>) -> Self {
        match a.transport(&witness) {
            Ok(t) if t.same_constants(b) => IsoVerdict {
                answer: IsoAnswer::True,
                reason: reason.into(),
                witness: Some(witness),
            },
            _ => IsoVerdict::unknown("candidate witness failed verification"),
        }
    }
}

fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols: Vec<_> = b.columns().iter().map(|c| a.mul_vec(c)).collect();
    Matrix::from_columns(a.rows(), &cols)
}

/// Witness carrying `a` onto `b` when both match the same normal form:
/// `a ~ N` via `Pa`, `b ~ N` via `Pb`, so `a.transport(Pa Pb^-1) = b`.
fn via_normal_form(ma: &CatalogMatch, mb: &CatalogMatch) -> Option<Matrix> {
    Some(mul(&ma.witness, &mb.witness.inverse()?))
}

/// Factor identities of a complete split, or the index of an unmatched
/// factor.
fn identify(s: &SplitResult) -> Result<Vec<CatalogMatch>, usize> {
    s.factors
        .iter()
        .enumerate()
        .map(|(i, f)| match_catalog(f).ok_or(i))
        .collect()
}

/// Decision procedure in order: invariants, literal equality, catalog normal
/// forms, then complete factor splittings (unique up to isomorphism and
/// order of the indecomposable factors). Anything else is `Unknown`.
pub fn isomorphic(a: &LieAlgebra, b: &LieAlgebra) -> IsoVerdict {
    let (fa, fb) = (fingerprint(a), fingerprint(b));
    if fa != fb {
        let mut diffs = Vec::new();
        macro_rules! cmp {
            ($f:ident) => {
                if fa.$f != fb.$f {
                    diffs.push(format!("{}: {:?} vs {:?}", stringify!($f), fa.$f, fb.$f));
                }
            };
        }
        cmp!(dim);
        cmp!(lcs_dims);
        cmp!(derived_dims);
        cmp!(center_dim);
        cmp!(exprad_dim);
        cmp!(nilpotent);
        cmp!(completely_solvable);
        return IsoVerdict::no(format!("invariants differ ({})", diffs.join("; ")));
    }
    if a.same_constants(b) {
        return IsoVerdict::yes(a, b, Matrix::identity(a.dim()), "identical structure constants");
    }
    match (match_catalog(a), match_catalog(b)) {
        (Some(ma), Some(mb)) => {
            if ma.same_class(&mb) {
                return match via_normal_form(&ma, &mb) {
                    Some(w) => IsoVerdict::yes(a, b, w, format!("both are {ma}")),
                    None => IsoVerdict::unknown("singular normal-form witness"),
                };
            }
            return IsoVerdict::no(format!("distinct normal forms {ma} and {mb}"));
        }
        (Some(m), None) | (None, Some(m)) => {
            // The catalog recognizers are complete on their own classes, but
            // the unmatched side could still be outside the catalog's reach.
            return IsoVerdict::unknown(format!("only one side matched the catalog ({m})"));
        }
        (None, None) => {}
    }
    let (Ok(sa), Ok(sb)) = (split_factors(a), split_factors(b)) else {
        return IsoVerdict::unknown("factor splitting failed");
    };
    if !(sa.complete && sb.complete) {
        return IsoVerdict::unknown("no certified decomposition into indecomposable factors");
    }
    if sa.euclidean_dim != sb.euclidean_dim {
        return IsoVerdict::no(format!(
            "Euclidean factors differ (R^{} vs R^{})",
            sa.euclidean_dim, sb.euclidean_dim
        ));
    }
    let (ia, ib) = match (identify(&sa), identify(&sb)) {
        (Ok(ia), Ok(ib)) => (ia, ib),
        _ => return IsoVerdict::unknown("a factor is outside the catalog"),
    };
    // Pair factors of a with equal factors of b.
    let mut used = vec![false; ib.len()];
    let mut pairing = Vec::with_capacity(ia.len());
    for ma in &ia {
        match (0..ib.len()).find(|&j| !used[j] && ib[j].same_class(ma)) {
            Some(j) => {
                used[j] = true;
                pairing.push(j);
            }
            None => return IsoVerdict::no(format!("factor {ma} has no counterpart")),
        }
    }
    if ia.len() != ib.len() {
        return IsoVerdict::no("different numbers of factors");
    }
    // In split coordinates: a ~ R^k + F_1 + ..., b ~ R^k + G_1 + ... with
    // F_i ~ G_pairing(i). Assemble the block witness and conjugate back.
    let k = sa.euclidean_dim;
    let mut offsets_b = vec![0; ib.len()];
    let mut off = k;
    for (j, f) in sb.factors.iter().enumerate() {
        offsets_b[j] = off;
        off += f.dim();
    }
    // Reorder a's factors to b's order, then map each block.
    let n = a.dim();
    let mut w = Matrix::zeros(n, n);
    for i in 0..k {
        w.set(i, i, crate::exactlin::int(1));
    }
    let mut off_a = k;
    for (i, fa_) in sa.factors.iter().enumerate() {
        let j = pairing[i];
        let Some(block) = via_normal_form(&ia[i], &ib[j]) else {
            return IsoVerdict::unknown("singular factor witness");
        };
        // Column c of b's block j is the image in a's block i.
        for r in 0..fa_.dim() {
            for c in 0..fa_.dim() {
                w.set(off_a + r, offsets_b[j] + c, block.get(r, c).clone());
            }
        }
        off_a += fa_.dim();
    }
    let Some(pb_inv) = sb.change_of_basis.inverse() else {
        return IsoVerdict::unknown("singular split basis");
    };
    let witness = mul(&mul(&sa.change_of_basis, &w), &pb_inv);
    let names: Vec<String> = ia.iter().map(ToString::to_string).collect();
    IsoVerdict::yes(
        a,
        b,
        witness,
        format!("same decomposition R^{k} + {}", names.join(" + ")),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{int, q};
    use crate::structure::lookup;

    fn gen(name: &str, p: &[crate::exactlin::Rational]) -> LieAlgebra {
        lookup(name).unwrap().generator(p).unwrap()
    }

    #[test]
    fn catalog_pairs() {
        let a = gen("g3_5", &[q(1, 2)]);
        let b = LieAlgebra::from_constants("b", 3, &[(3, 1, 1, int(2)), (3, 2, 2, int(1))]);
        let v = isomorphic(&a, &b);
        assert_eq!(v.answer, IsoAnswer::True, "{}", v.reason);
        assert!(a.transport(v.witness.as_ref().unwrap()).unwrap().same_constants(&b));
        let c = gen("g3_5", &[q(1, 3)]);
        assert_eq!(isomorphic(&a, &c).answer, IsoAnswer::False);
        assert_eq!(isomorphic(&a, &gen("heis", &[])).answer, IsoAnswer::False);
    }

    #[test]
    fn split_pairs() {
        let r_g35 = LieAlgebra::direct_sum(&LieAlgebra::abelian(1), &gen("g3_5", &[q(1, 2)]));
        let g35_r = LieAlgebra::direct_sum(&gen("g3_5", &[q(1, 2)]), &LieAlgebra::abelian(1));
        let v = isomorphic(&r_g35, &g35_r);
        assert_eq!(v.answer, IsoAnswer::True, "{}", v.reason);
        let other = LieAlgebra::direct_sum(&LieAlgebra::abelian(1), &gen("g3_5", &[q(-1, 2)]));
        assert_eq!(isomorphic(&r_g35, &other).answer, IsoAnswer::False);

        let x = LieAlgebra::direct_sum(&gen("a2", &[]), &gen("g3_3", &[]));
        let y = LieAlgebra::direct_sum(&gen("g3_3", &[]), &gen("a2", &[]));
        let v = isomorphic(&x, &y);
        assert_eq!(v.answer, IsoAnswer::True, "{}", v.reason);
    }
}
