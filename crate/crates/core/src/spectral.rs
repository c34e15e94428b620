//! Curvature operators attached to definite planes and their similarity
//! fingerprints.
//!
//! `𝓡(π) = R(e₁,e₂)` needs an orthonormal basis, hence a square root of the
//! Gram determinant. It is represented by `raw = R(x₁,x₂)` for the given
//! frame (same rank sequence) together with `raw²/det G`, which equals
//! `𝓡(π)²` exactly.

use std::collections::BTreeMap;

use num::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{int, Matrix, Rational, UniPoly};
use crate::grassmann::{causal_type_of_gram, gram, CausalType, PlaneFrame};
use crate::modelspace::ModelSpace;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneOperators {
    /// `R(x₁,x₂)` for 2-frames, `Θ` for k-frames.
    pub raw: Matrix,
    pub gram_det: Rational,
    /// `raw²/det G` (2-frames only).
    pub normalized_square: Option<Matrix>,
}

fn definite_gram(m: &ModelSpace, fr: &PlaneFrame) -> Result<Matrix> {
    let g = gram(m, fr)?;
    match causal_type_of_gram(&g) {
        CausalType::Spacelike | CausalType::Timelike => Ok(g),
        _ => Err(Error::NotDefinitePlane),
    }
}

pub fn skew_curv(m: &ModelSpace, fr: &PlaneFrame) -> Result<PlaneOperators> {
    if fr.k() != 2 {
        return Err(Error::DimMismatch {
            expected: 2,
            got: fr.k(),
        });
    }
    let g = definite_gram(m, fr)?;
    let gram_det = g.det()?;
    let raw = m.curvature_operator(fr.vector(0), fr.vector(1));
    let normalized_square = (&raw * &raw).scale(&gram_det.recip());
    Ok(PlaneOperators {
        raw,
        gram_det,
        normalized_square: Some(normalized_square),
    })
}

/// `Θ(π) = Σ_{a,b} R(e_a,e_b)²` over an orthonormal basis, summing over
/// ordered pairs. Evaluated on an arbitrary frame as `Σ_{a,b} R(x_a,x_b) R(y_a,y_b)`
/// with the dual frame `y_a = Σ_c G^{ac} x_c`.
pub fn theta(m: &ModelSpace, fr: &PlaneFrame) -> Result<Matrix> {
    if fr.k() < 2 {
        return Err(Error::KTooSmall(fr.k()));
    }
    let g = definite_gram(m, fr)?;
    let ginv = g.inverse()?;
    let k = fr.k();
    let n = m.dim();
    let dual: Vec<Vec<Rational>> = (0..k)
        .map(|a| {
            let mut y = vec![Rational::zero(); n];
            for c in 0..k {
                if ginv[(a, c)].is_zero() {
                    continue;
                }
                for (yi, xi) in y.iter_mut().zip(fr.vector(c)) {
                    *yi += &ginv[(a, c)] * xi;
                }
            }
            y
        })
        .collect();
    let mut out = Matrix::zeros(n, n);
    for a in 0..k {
        for b in a + 1..k {
            let r = m.curvature_operator(fr.vector(a), fr.vector(b));
            if r.is_zero() {
                continue;
            }
            let s = m.curvature_operator(&dual[a], &dual[b]);
            out = &out + &(&r * &s);
        }
    }
    Ok(out.scale(&int(2)))
}

/// Rank of the auxiliary form restricted to the plane.
pub fn ell(m: &ModelSpace, fr: &PlaneFrame) -> Result<usize> {
    let aux = m.aux_form().ok_or(Error::NoAuxForm)?;
    Ok(crate::grassmann::gram_with(aux, fr)?.rank())
}

/// `g`-orthogonal projection onto the span of a nondegenerate frame:
/// `P = Y (Yᵀ g Y)⁻¹ Yᵀ g`.
pub fn projection(g: &Matrix, fr: &PlaneFrame) -> Result<Matrix> {
    let y = fr.matrix();
    let gram = crate::grassmann::gram_with(g, fr)?;
    let inv = gram.inverse()?;
    Ok(&(&(&y * &inv) * &y.transpose()) * g)
}

/// Similarity invariants of a square matrix: characteristic polynomial,
/// ranks of powers, and ranks of powers of `A − λ` at each rational
/// eigenvalue of `A` and of `A²`.
///
/// Equal profiles are necessary for similarity, and sufficient when every
/// eigenvalue is rational or purely imaginary with rational square.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JordanProfile {
    pub dim: usize,
    pub charpoly: UniPoly,
    pub power_ranks: Vec<usize>,
    pub eigen_ranks: BTreeMap<Rational, Vec<usize>>,
    pub square_eigen_ranks: BTreeMap<Rational, Vec<usize>>,
}

/// `rank(Aᵐ)` for `m = 1..n`. Stops multiplying once the sequence stabilizes.
pub fn power_ranks(a: &Matrix) -> Vec<usize> {
    let n = a.rows();
    let mut out = Vec::with_capacity(n);
    let mut p = a.clone();
    while out.len() < n {
        let r = p.rank();
        if out.last() == Some(&r) {
            out.resize(n, r);
            break;
        }
        out.push(r);
        if out.len() < n {
            p = &p * a;
        }
    }
    out
}

fn shifted(a: &Matrix, lambda: &Rational) -> Matrix {
    let mut b = a.clone();
    for i in 0..a.rows() {
        b[(i, i)] -= lambda;
    }
    b
}

fn eigen_ranks(a: &Matrix, charpoly: &UniPoly) -> BTreeMap<Rational, Vec<usize>> {
    charpoly
        .rational_roots()
        .into_iter()
        .map(|l| {
            let ranks = power_ranks(&shifted(a, &l));
            (l, ranks)
        })
        .collect()
}

pub fn jordan_profile(a: &Matrix) -> Result<JordanProfile> {
    let charpoly = a.char_poly()?;
    let sq = a * a;
    let sq_poly = sq.char_poly()?;
    Ok(JordanProfile {
        dim: a.rows(),
        power_ranks: power_ranks(a),
        eigen_ranks: eigen_ranks(a, &charpoly),
        square_eigen_ranks: eigen_ranks(&sq, &sq_poly),
        charpoly,
    })
}

pub fn profiles_equal(p1: &JordanProfile, p2: &JordanProfile) -> bool {
    p1 == p2
}

fn rank_map(m: &BTreeMap<Rational, Vec<usize>>) -> BTreeMap<String, &Vec<usize>> {
    m.iter().map(|(k, v)| (k.to_string(), v)).collect()
}

impl Serialize for JordanProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("JordanProfile", 5)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("charpoly", &self.charpoly)?;
        st.serialize_field("power_ranks", &self.power_ranks)?;
        st.serialize_field("eigen_ranks", &rank_map(&self.eigen_ranks))?;
        st.serialize_field("square_eigen_ranks", &rank_map(&self.square_eigen_ranks))?;
        st.end()
    }
}

impl JordanProfile {
    pub fn is_nilpotent(&self) -> bool {
        self.power_ranks.last().is_none_or(Zero::is_zero)
    }

    /// Smallest `m` with `Aᵐ = 0`, if nilpotent.
    pub fn nilpotency_index(&self) -> Option<usize> {
        if self.dim == 0 {
            return Some(0);
        }
        self.power_ranks.iter().position(Zero::is_zero).map(|i| i + 1)
    }
}
