//! Explicit isomorphism from a tangent space of a `g_{3s}`-type metric to
//! the model `V_{3s}`.
//!
//! The basis is `Uᵢ = ∂uᵢ + εᵢ∂tᵢ + ϱᵢ∂vᵢ`, `Tᵢ = ∂tᵢ + εᵢ∂vᵢ`, `Vᵢ = ∂vᵢ`.
//! The `εᵢ` are chosen so that `R(Uᵢ,Uⱼ,Uⱼ,Uᵢ) = 0` for all `i ≠ j`, which is
//! a linear system in `ε` (quadratic terms are checked to vanish). For
//! `g_{3s}` with `s = 2` the system is underdetermined and the minimum-norm
//! solution `εᵢ = −¼|u|²` is taken. Then `ϱᵢ` solves `g(Uᵢ,Uᵢ) = 0`.

use num::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int, Matrix, Rational};
use crate::metrics::{MetricFamily, PolynomialMetric};
use crate::modelspace::{basis_vector, model_v3s, ModelSpace};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Normalization {
    /// Columns are `U₁..U_s, T₁..T_s, V₁..V_s` in coordinates.
    pub basis: Matrix,
    #[serde(serialize_with = "crate::exact::ser_rationals")]
    pub epsilon: Vec<Rational>,
    #[serde(serialize_with = "crate::exact::ser_rationals")]
    pub rho: Vec<Rational>,
    /// The pulled-back model equals `V_{3s}` entry for entry.
    pub check: bool,
}

fn failed(msg: impl Into<String>) -> Error {
    Error::NormalizationFailed(msg.into())
}

/// Coefficients of `R(aᵢ + εᵢbᵢ, aⱼ + εⱼbⱼ, aⱼ + εⱼbⱼ, aᵢ + εᵢbᵢ)` as a
/// polynomial in `(εᵢ, εⱼ)`, indexed by the degrees `[dᵢ][dⱼ]`.
fn pair_coefficients(m: &ModelSpace, ai: usize, bi: usize, aj: usize, bj: usize) -> [[Rational; 3]; 3] {
    let mut c: [[Rational; 3]; 3] = Default::default();
    for mask in 0u8..16 {
        let pick = |pos: u8, a: usize, b: usize| if mask & (1 << pos) != 0 { b } else { a };
        let idx = [pick(0, ai, bi), pick(1, aj, bj), pick(2, aj, bj), pick(3, ai, bi)];
        let v = m.curv(idx[0], idx[1], idx[2], idx[3]);
        if v.is_zero() {
            continue;
        }
        let di = ((mask & 1) + ((mask >> 3) & 1)) as usize;
        let dj = (((mask >> 1) & 1) + ((mask >> 2) & 1)) as usize;
        c[di][dj] += v;
    }
    c
}

/// Minimum-norm exact solution of `A x = b`, or `None` if inconsistent.
fn min_norm_solve(a: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let mut rows: Vec<usize> = Vec::new();
    for i in 0..a.rows() {
        let mut trial = rows.clone();
        trial.push(i);
        let sub = Matrix::from_fn(trial.len(), a.cols(), |r, c| a[(trial[r], c)].clone());
        if sub.rank() == trial.len() {
            rows = trial;
        }
    }
    let x = if rows.is_empty() {
        vec![Rational::zero(); a.cols()]
    } else {
        let sub = Matrix::from_fn(rows.len(), a.cols(), |r, c| a[(rows[r], c)].clone());
        let rhs: Vec<Rational> = rows.iter().map(|&r| b[r].clone()).collect();
        let y = (&sub * &sub.transpose()).inverse().ok()?.mul_vec(&rhs);
        sub.transpose().mul_vec(&y)
    };
    (a.mul_vec(&x) == b).then_some(x)
}

pub fn normalize_basis_3s(g: &PolynomialMetric, p: &[Rational]) -> Result<Normalization> {
    let MetricFamily::ThreeS { s } = g.family() else {
        return Err(failed("metric is not in the (u, t, v) family"));
    };
    let m = g.curvature_at(p)?;
    let n = 3 * s;
    let (u, t, v) = (|i: usize| i, |i: usize| s + i, |i: usize| 2 * s + i);

    let pairs: Vec<(usize, usize)> = (0..s).flat_map(|i| (i + 1..s).map(move |j| (i, j))).collect();
    let mut a = Matrix::zeros(pairs.len(), s);
    let mut rhs = Vec::with_capacity(pairs.len());
    for (row, &(i, j)) in pairs.iter().enumerate() {
        let c = pair_coefficients(&m, u(i), t(i), u(j), t(j));
        for (di, cs) in c.iter().enumerate() {
            for (dj, x) in cs.iter().enumerate() {
                if di + dj >= 2 && !x.is_zero() {
                    return Err(failed(format!(
                        "R(U{0},U{1},U{1},U{0}) is not linear in epsilon",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        a[(row, i)] = c[1][0].clone();
        a[(row, j)] = c[0][1].clone();
        rhs.push(-c[0][0].clone());
    }
    let epsilon = min_norm_solve(&a, &rhs).ok_or_else(|| failed("no epsilon cancels R(U_i,U_j,U_j,U_i)"))?;

    let mut rho = Vec::with_capacity(s);
    for i in 0..s {
        let mut ai = basis_vector(n, u(i));
        ai[t(i)] = epsilon[i].clone();
        let vi = basis_vector(n, v(i));
        if !m.inner(&vi, &vi).is_zero() {
            return Err(failed(format!("g(V{0},V{0}) is not zero", i + 1)));
        }
        let cross = m.inner(&ai, &vi);
        if cross.is_zero() {
            return Err(failed(format!("g(U{0},V{0}) vanishes", i + 1)));
        }
        rho.push(-m.inner(&ai, &ai) / (cross * int(2)));
    }

    let mut basis = Matrix::zeros(n, n);
    for i in 0..s {
        basis[(u(i), u(i))] = int(1);
        basis[(t(i), u(i))] = epsilon[i].clone();
        basis[(v(i), u(i))] = rho[i].clone();
        basis[(t(i), t(i))] = int(1);
        basis[(v(i), t(i))] = epsilon[i].clone();
        basis[(v(i), v(i))] = int(1);
    }
    let pulled = m.apply_isomorphism(&basis)?;
    let model = model_v3s(s)?;
    let check = pulled.metric() == model.metric() && pulled.curv_entries() == model.curv_entries();
    Ok(Normalization {
        basis,
        epsilon,
        rho,
        check,
    })
}
