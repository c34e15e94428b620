//! Identity checks for curvature tensors of the form `c·R_φ`, and the
//! Riemannian relation between `Θ` on 2-planes and `𝓡(π)²`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::{check_stanilov, sample_planes, LabeledFrame, Verdict};
use crate::error::{Error, Result};
use crate::exact::{int, Matrix, Rational, UniPoly};
use crate::grassmann::{causal_index, Causal};
use crate::modelspace::{build_r_phi, classify_phi, ModelSpace, PhiClass, SelfAdjointMap};
use crate::spectral::{projection, skew_curv, theta};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsometryIdentityReport {
    pub holds: bool,
    pub k: usize,
    pub want: Causal,
    #[serde(serialize_with = "crate::exact::ser_rational")]
    pub c: Rational,
    /// `−2(k−1)c²`, the factor in `Θ = factor·P_{φπ}` for ordered sums.
    #[serde(serialize_with = "crate::exact::ser_rational")]
    pub coefficient: Rational,
    pub planes_checked: usize,
    pub theta_identity_holds: bool,
    /// `𝓡(π)² = −c²·P_{φπ}`; only evaluated for `k = 2`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub square_identity_holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<LabeledFrame>,
    pub stanilov: Verdict,
    pub notes: Vec<String>,
}

/// For `R = c·R_φ` with `φ` an isometry and `φ² = Id`, checks on every
/// sampled definite k-frame that `Θ = −2(k−1)c²·P_{φπ}`, with `P_{φπ}` the
/// `g`-orthogonal projection onto `φ(π)`, and that the Stanilov verdict holds.
pub fn verify_theorem_1_4(
    g: &Matrix,
    phi: &SelfAdjointMap,
    c: &Rational,
    k: usize,
    want: Causal,
    n: usize,
    seed: u64,
) -> Result<IsometryIdentityReport> {
    if classify_phi(g, phi) != PhiClass::Isometry || phi.matrix() * phi.matrix() != Matrix::identity(g.rows())
    {
        return Err(Error::PhiNotAdmissible);
    }
    let m = build_r_phi(g, phi, c)?;
    let planes = sample_planes(&m, k, want, n, seed)?;
    let c2 = c * c;
    let coefficient = -(int(2) * int(k as i64 - 1) * &c2);
    let results: Vec<(bool, Option<bool>)> = planes
        .par_iter()
        .map(|f| {
            let p = projection(g, &f.frame.push_forward(phi.matrix())?)?;
            let th = theta(&m, &f.frame)? == p.scale(&coefficient);
            let sq = if k == 2 {
                let ns = skew_curv(&m, &f.frame)?.normalized_square.expect("2-frame");
                Some(ns == p.scale(&-c2.clone()))
            } else {
                None
            };
            Ok((th, sq))
        })
        .collect::<Result<_>>()?;
    let theta_identity_holds = results.iter().all(|r| r.0);
    let square_identity_holds = (k == 2).then(|| results.iter().all(|r| r.1 == Some(true)));
    let first_failure = results
        .iter()
        .position(|r| !r.0 || r.1 == Some(false))
        .map(|i| planes[i].clone());
    let stanilov = check_stanilov(&m, k, want, n, seed)?;
    let holds = theta_identity_holds && square_identity_holds != Some(false) && stanilov.holds;
    Ok(IsometryIdentityReport {
        holds,
        k,
        want,
        c: c.clone(),
        coefficient,
        planes_checked: planes.len(),
        theta_identity_holds,
        square_identity_holds,
        first_failure,
        stanilov,
        notes: vec!["Theta sums over ordered index pairs; an unordered sum halves the coefficient".into()],
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RiemannianBridgeReport {
    pub dim: usize,
    pub planes_checked: usize,
    /// `Θ = 2·𝓡(π)²` on every sampled 2-plane.
    pub bridge_holds: bool,
    pub theta_charpoly_constant: bool,
    pub square_charpoly_constant: bool,
    /// Both constancy flags agree.
    pub coherent: bool,
    pub notes: Vec<String>,
}

/// On a positive definite model, compares the spectra of `Θ` and `𝓡(π)²`
/// over sampled 2-planes.
pub fn verify_theorem_1_5_samples(m: &ModelSpace, n: usize, seed: u64) -> Result<RiemannianBridgeReport> {
    if causal_index(m, Causal::Spacelike) != m.dim() {
        return Err(Error::NotRiemannian);
    }
    let planes = sample_planes(m, 2, Causal::Spacelike, n, seed)?;
    let rows: Vec<(bool, UniPoly, UniPoly)> = planes
        .par_iter()
        .map(|f| {
            let th = theta(m, &f.frame)?;
            let sq = skew_curv(m, &f.frame)?.normalized_square.expect("2-frame");
            let bridge = th == sq.scale(&int(2));
            Ok((bridge, th.char_poly()?, sq.char_poly()?))
        })
        .collect::<Result<_>>()?;
    let theta_polys: BTreeSet<&UniPoly> = rows.iter().map(|r| &r.1).collect();
    let square_polys: BTreeSet<&UniPoly> = rows.iter().map(|r| &r.2).collect();
    let theta_charpoly_constant = theta_polys.len() == 1;
    let square_charpoly_constant = square_polys.len() == 1;
    let mut notes = vec!["only the exact pointwise relation is checked; no continuity argument".to_string()];
    if m.dim() == 3 || m.dim() == 7 {
        notes.push(format!(
            "dimension {} is excluded from the classification; no claim is made",
            m.dim()
        ));
    }
    Ok(RiemannianBridgeReport {
        dim: m.dim(),
        planes_checked: planes.len(),
        bridge_holds: rows.iter().all(|r| r.0),
        theta_charpoly_constant,
        square_charpoly_constant,
        coherent: theta_charpoly_constant == square_charpoly_constant,
        notes,
    })
}
