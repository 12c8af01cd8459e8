use serde::Serialize;

use super::{jordan_chevalley, ReductionError};
use crate::exactlin::{unit, Matrix, Subspace, Vector};
use crate::liealg::{triangularize, DerivationAction, LieAlgebra};

#[derive(Clone, Debug, Serialize)]
pub struct ReductionResult {
    pub input: LieAlgebra,
    #[serde(serialize_with = "crate::report::ser_subspace")]
    pub exprad: Subspace,
    pub quotient_rank: usize,
    /// Basis of `R_exp` first, then the quotient basis.
    pub output: LieAlgebra,
    #[serde(skip)]
    pub action_diag: DerivationAction,
    pub construction_log: Vec<String>,
}

/// Stable term of the lower central series.
pub fn exponential_radical(g: &LieAlgebra) -> Result<Subspace, ReductionError> {
    if !g.is_solvable() {
        return Err(ReductionError::NotSolvable);
    }
    let r = g.lower_central_series().last().clone();
    debug_assert!(g.quotient(&r).map(|q| q.algebra.is_nilpotent()).unwrap_or(false));
    Ok(r)
}

pub fn cone_dimension(g: &LieAlgebra) -> Result<usize, ReductionError> {
    triangularize(g)?;
    Ok(g.dim() - exponential_radical(g)?.dim())
}

pub fn rho1(g: &LieAlgebra) -> Result<ReductionResult, ReductionError> {
    triangularize(g)?;
    let exprad = exponential_radical(g)?;
    let mut log = vec![format!(
        "R_exp has dimension {} (lower central series dims {:?})",
        exprad.dim(),
        g.lower_central_series().dims
    )];
    let quot = g.quotient(&exprad)?;
    let n_alg = g.restrict(&exprad)?;
    let mut semis = Vec::with_capacity(quot.complement.len());
    for &c in &quot.complement {
        let a = g.adjoint_on(&unit(g.dim(), c), &exprad)?;
        let jp = jordan_chevalley(&a)?;
        log.push(format!(
            "ad({})|R_exp: nilpotent part {}",
            g.labels()[c],
            if jp.is_semisimple() { "zero" } else { "nonzero, dropped" }
        ));
        semis.push(jp.semisimple);
    }
    for a in 0..semis.len() {
        for b in a + 1..semis.len() {
            if !semis[a].commutator(&semis[b]).is_zero() {
                return Err(ReductionError::CommutationFailure {
                    a: g.labels()[quot.complement[a]].clone(),
                    b: g.labels()[quot.complement[b]].clone(),
                });
            }
        }
    }
    let act = DerivationAction::new(quot.algebra.clone(), n_alg, semis)
        .map_err(ReductionError::ActionFailure)?;
    let mut output = LieAlgebra::semidirect_product(&act)?.with_default_labels();
    output.set_name(format!("rho1({})", g.name()));
    if output.validate().is_err() {
        return Err(ReductionError::Internal("rho1 output fails the Jacobi identity"));
    }
    if exprad.is_zero() {
        log.push("nilpotent input: rho1(g) = g".to_string());
    }
    Ok(ReductionResult {
        input: g.clone(),
        quotient_rank: quot.algebra.dim(),
        exprad,
        output,
        action_diag: act,
        construction_log: log,
    })
}

/// ρ∞ computed as ρ∞ ∘ ρ₁.
pub fn rho_infinity(g: &LieAlgebra) -> Result<ReductionResult, ReductionError> {
    let r1 = rho1(g)?;
    let act = &r1.action_diag;
    let h = act.source();
    let lcs = h.lower_central_series();
    if !lcs.reaches_zero() {
        return Err(ReductionError::Internal("quotient by R_exp is not nilpotent"));
    }
    // Basis of h adapted to C^1 ⊃ C^2 ⊃ …, layer by layer.
    let terms = &lcs.terms;
    let mut layers: Vec<Vec<Vector>> = Vec::new();
    for k in 0..terms.len() - 1 {
        let seed = terms[k + 1].basis_vectors();
        let full = terms[k].extend_basis(&seed);
        layers.push(full[seed.len()..].to_vec());
    }
    let basis: Vec<Vector> = layers.concat();
    let layer_of: Vec<usize> = layers
        .iter()
        .enumerate()
        .flat_map(|(k, l)| std::iter::repeat_n(k + 1, l.len()))
        .collect();
    let dh = h.dim();
    let mut graded = LieAlgebra::with_labels(format!("gr({})", h.name()), crate::liealg::default_labels(dh));
    for a in 0..dh {
        for b in a + 1..dh {
            let target = layer_of[a] + layer_of[b];
            if target > layers.len() {
                continue;
            }
            let br = h.bracket(&basis[a], &basis[b])?;
            // Coordinates in (layer `target`) ∪ basis of C^{target+1}; keep the layer part.
            let mut frame = layers[target - 1].clone();
            frame.extend(terms[target].basis_vectors());
            let coords = LieAlgebra::coords_in(&frame, &br)
                .ok_or(ReductionError::Internal("bracket leaves the expected filtration term"))?;
            let offset: usize = layers[..target - 1].iter().map(Vec::len).sum();
            let mut v = crate::exactlin::zero_vec(dh);
            for (i, c) in coords.iter().take(layers[target - 1].len()).enumerate() {
                v[offset + i] = c.clone();
            }
            if !crate::exactlin::is_zero_vec(&v) {
                graded.set_bracket(a, b, &v);
            }
        }
    }
    let dn = act.target().dim();
    let mut mats = Vec::with_capacity(dh);
    for (a, v) in basis.iter().enumerate() {
        let m = act.apply(v);
        if layer_of[a] == 1 {
            mats.push(m);
        } else if m.is_zero() {
            mats.push(Matrix::zeros(dn, dn));
        } else {
            return Err(ReductionError::GradedActionNonzero(a + 1));
        }
    }
    let new_act = DerivationAction::new(graded, act.target().clone(), mats)
        .map_err(ReductionError::ActionFailure)?;
    let mut output = LieAlgebra::semidirect_product(&new_act)?.with_default_labels();
    output.set_name(format!("rhoinf({})", g.name()));
    if output.validate().is_err() {
        return Err(ReductionError::Internal("rhoinf output fails the Jacobi identity"));
    }
    let mut log = r1.construction_log.clone();
    log.push(format!(
        "quotient graded by its lower central series (layer sizes {:?})",
        layers.iter().map(Vec::len).collect::<Vec<_>>()
    ));
    Ok(ReductionResult {
        input: g.clone(),
        exprad: r1.exprad,
        quotient_rank: r1.quotient_rank,
        output,
        action_diag: new_act,
        construction_log: log,
    })
}
