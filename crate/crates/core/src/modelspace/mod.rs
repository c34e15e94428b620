//! Algebraic model spaces `(V, g, R)`.
//!
//! The curvature tensor is stored densely with every symmetry image
//! materialized. Constructors fill in images themselves, but [`ModelSpace::validate`]
//! never trusts them and re-checks all `dim⁴` entries.

mod io;

use std::fmt;

use num::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{rat, Matrix, Rational};

pub use io::{ModelFile, TensorEntry};

/// Which fixed basis convention a model was built in. Only used to add
/// named witness planes to the deterministic sampling battery.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    Generic,
    /// Normalized basis `(U₁..U_s, T₁..T_s, V₁..V_s)`.
    V3s {
        s: usize,
    },
    /// Coordinate basis `(∂x₁..∂x_p, ∂y₁..∂y_p)` of a graph hypersurface.
    Hypersurface {
        p: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SymmetryLaw {
    /// `R(x,y,z,w) = −R(y,x,z,w)`
    AntisymmetryFirstPair,
    /// `R(x,y,z,w) = −R(x,y,w,z)`
    AntisymmetrySecondPair,
    /// `R(x,y,z,w) = R(z,w,x,y)`
    PairSymmetry,
    /// `R(x,y,z,w) + R(y,z,x,w) + R(z,x,y,w) = 0`
    FirstBianchi,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Curvature {
        law: SymmetryLaw,
        index: [usize; 4],
        found: Rational,
        expected: Rational,
    },
    DegenerateMetric,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Curvature {
                law,
                index,
                found,
                expected,
            } => write!(
                f,
                "{law:?} violated at {index:?}: found {found}, expected {expected}"
            ),
            Violation::DegenerateMetric => write!(f, "metric is degenerate"),
        }
    }
}

/// Classification of a self-adjoint map relative to a metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PhiClass {
    Isometry,
    ParaIsometry,
    NilpotentAdmissible,
    Other,
}

/// A linear map `φ` of `V`, meant to satisfy `g(φx, y) = g(x, φy)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfAdjointMap(pub Matrix);

impl SelfAdjointMap {
    pub fn identity(n: usize) -> Self {
        SelfAdjointMap(Matrix::identity(n))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    /// `g φ` symmetric.
    pub fn is_self_adjoint(&self, g: &Matrix) -> bool {
        g.rows() == self.0.rows() && self.0.is_square() && (g * &self.0).is_symmetric()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct ModelSpace {
    dim: usize,
    metric: Matrix,
    metric_inv: Matrix,
    curv: Vec<Rational>,
    nonzero: Vec<([usize; 4], Rational)>,
    aux_form: Option<Matrix>,
    family: Family,
}

impl fmt::Debug for ModelSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModelSpace")
            .field("dim", &self.dim)
            .field("family", &self.family)
            .field("metric", &self.metric)
            .field("nonzero_curvature", &self.nonzero.len())
            .finish()
    }
}

impl ModelSpace {
    /// `curv` is the dense row-major `dim⁴` array `R_{abcd}`.
    pub fn new(metric: Matrix, curv: Vec<Rational>) -> Result<Self> {
        if !metric.is_square() {
            return Err(Error::NotSquare {
                rows: metric.rows(),
                cols: metric.cols(),
            });
        }
        if !metric.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let dim = metric.rows();
        if curv.len() != dim.pow(4) {
            return Err(Error::DimMismatch {
                expected: dim.pow(4),
                got: curv.len(),
            });
        }
        let metric_inv = metric.inverse().map_err(|_| Error::DegenerateAtPoint)?;
        let nonzero = curv
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(flat, v)| (unflatten(dim, flat), v.clone()))
            .collect();
        Ok(ModelSpace {
            dim,
            metric,
            metric_inv,
            curv,
            nonzero,
            aux_form: None,
            family: Family::Generic,
        })
    }

    /// Builds the dense tensor from generators, filling in all eight
    /// symmetry images of each and rejecting conflicting assignments.
    pub fn from_generators(metric: Matrix, generators: &[([usize; 4], Rational)]) -> Result<Self> {
        let dim = metric.rows();
        let curv = close_under_symmetries(dim, generators)?;
        Self::new(metric, curv)
    }

    /// Attaches a symmetric positive semi-definite auxiliary form.
    pub fn with_aux_form(mut self, form: Matrix) -> Result<Self> {
        if form.rows() != self.dim || !form.is_square() {
            return Err(Error::DimMismatch {
                expected: self.dim,
                got: form.rows(),
            });
        }
        if form.signature()?.n_neg != 0 {
            return Err(Error::Parse(
                "auxiliary form must be positive semi-definite".into(),
            ));
        }
        self.aux_form = Some(form);
        Ok(self)
    }

    pub fn with_family(mut self, family: Family) -> Self {
        self.family = family;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn metric(&self) -> &Matrix {
        &self.metric
    }

    pub fn metric_inv(&self) -> &Matrix {
        &self.metric_inv
    }

    pub fn aux_form(&self) -> Option<&Matrix> {
        self.aux_form.as_ref()
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn curv(&self, a: usize, b: usize, c: usize, d: usize) -> &Rational {
        &self.curv[flatten(self.dim, [a, b, c, d])]
    }

    pub fn curv_entries(&self) -> &[Rational] {
        &self.curv
    }

    /// Nonzero entries in index order.
    pub fn nonzero_entries(&self) -> &[([usize; 4], Rational)] {
        &self.nonzero
    }

    pub fn inner(&self, x: &[Rational], y: &[Rational]) -> Rational {
        self.metric.bilinear(x, y)
    }

    /// `R(x, y, z, w)`.
    pub fn curvature_form(&self, x: &[Rational], y: &[Rational], z: &[Rational], w: &[Rational]) -> Rational {
        self.nonzero
            .iter()
            .fold(Rational::zero(), |acc, ([a, b, c, d], v)| {
                if x[*a].is_zero() || y[*b].is_zero() || z[*c].is_zero() || w[*d].is_zero() {
                    acc
                } else {
                    acc + v * &x[*a] * &y[*b] * &z[*c] * &w[*d]
                }
            })
    }

    /// Matrix of `z ↦ R(x, y) z`, with the last index raised by `g⁻¹`.
    pub fn curvature_operator(&self, x: &[Rational], y: &[Rational]) -> Matrix {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        // lowered[c][d] = R(x, y, e_c, e_d)
        let mut lowered = Matrix::zeros(self.dim, self.dim);
        for ([a, b, c, d], v) in &self.nonzero {
            if x[*a].is_zero() || y[*b].is_zero() {
                continue;
            }
            lowered[(*c, *d)] += v * &x[*a] * &y[*b];
        }
        &self.metric_inv * &lowered.transpose()
    }

    /// Checks metric nondegeneracy and, in order, both antisymmetries, pair
    /// symmetry and the first Bianchi identity over all index tuples.
    /// Reports the first tuple whose entry disagrees with its image.
    #[allow(clippy::result_large_err)]
    pub fn validate(&self) -> Result<(), Violation> {
        if self.metric.det().map_or(true, |d| d.is_zero()) {
            return Err(Violation::DegenerateMetric);
        }
        let n = self.dim;
        let r = |i: [usize; 4]| &self.curv[flatten(n, i)];
        let all = || (0..n.pow(4)).map(move |flat| unflatten(n, flat));
        for [a, b, c, d] in all() {
            let expected = -r([a, b, c, d]);
            if *r([b, a, c, d]) != expected {
                return Err(Violation::Curvature {
                    law: SymmetryLaw::AntisymmetryFirstPair,
                    index: [b, a, c, d],
                    found: r([b, a, c, d]).clone(),
                    expected,
                });
            }
        }
        for [a, b, c, d] in all() {
            let expected = -r([a, b, c, d]);
            if *r([a, b, d, c]) != expected {
                return Err(Violation::Curvature {
                    law: SymmetryLaw::AntisymmetrySecondPair,
                    index: [a, b, d, c],
                    found: r([a, b, d, c]).clone(),
                    expected,
                });
            }
        }
        for [a, b, c, d] in all() {
            if r([c, d, a, b]) != r([a, b, c, d]) {
                return Err(Violation::Curvature {
                    law: SymmetryLaw::PairSymmetry,
                    index: [c, d, a, b],
                    found: r([c, d, a, b]).clone(),
                    expected: r([a, b, c, d]).clone(),
                });
            }
        }
        for [x, y, z, w] in all() {
            let sum = r([x, y, z, w]) + r([y, z, x, w]) + r([z, x, y, w]);
            if !sum.is_zero() {
                return Err(Violation::Curvature {
                    law: SymmetryLaw::FirstBianchi,
                    index: [x, y, z, w],
                    found: sum,
                    expected: Rational::zero(),
                });
            }
        }
        Ok(())
    }

    /// Pullback along the linear isomorphism whose columns are the new basis
    /// vectors: `g' = Bᵀ g B`, `R'_{abcd} = Σ R_{ijkl} B_{ia} B_{jb} B_{kc} B_{ld}`.
    pub fn apply_isomorphism(&self, b: &Matrix) -> Result<ModelSpace> {
        let n = self.dim;
        if b.rows() != n || b.cols() != n {
            return Err(Error::DimMismatch {
                expected: n,
                got: b.rows(),
            });
        }
        if b.det()?.is_zero() {
            return Err(Error::Singular);
        }
        let bt = b.transpose();
        let metric = &(&bt * &self.metric) * b;
        let mut t = self.curv.clone();
        for mode in 0..4 {
            t = mode_product(n, &t, b, mode);
        }
        let mut out = ModelSpace::new(metric, t)?;
        if let Some(aux) = &self.aux_form {
            out.aux_form = Some(&(&bt * aux) * b);
        }
        Ok(out)
    }
}

fn flatten(n: usize, [a, b, c, d]: [usize; 4]) -> usize {
    ((a * n + b) * n + c) * n + d
}

fn unflatten(n: usize, flat: usize) -> [usize; 4] {
    [flat / (n * n * n), (flat / (n * n)) % n, (flat / n) % n, flat % n]
}

/// Contracts one tensor slot with `B`: `T'[..a..] = Σ_i T[..i..] B[i][a]`.
fn mode_product(n: usize, t: &[Rational], b: &Matrix, mode: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); t.len()];
    for (flat, v) in t.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let idx = unflatten(n, flat);
        let i = idx[mode];
        for a in 0..n {
            let bia = &b[(i, a)];
            if bia.is_zero() {
                continue;
            }
            let mut j = idx;
            j[mode] = a;
            out[flatten(n, j)] += v * bia;
        }
    }
    out
}

/// The eight images of `R(a,b,c,d)` under the pair and antisymmetry laws.
pub fn symmetry_images([a, b, c, d]: [usize; 4]) -> [([usize; 4], bool); 8] {
    [
        ([a, b, c, d], false),
        ([b, a, c, d], true),
        ([a, b, d, c], true),
        ([b, a, d, c], false),
        ([c, d, a, b], false),
        ([d, c, a, b], true),
        ([c, d, b, a], true),
        ([d, c, b, a], false),
    ]
}

fn close_under_symmetries(n: usize, generators: &[([usize; 4], Rational)]) -> Result<Vec<Rational>> {
    let mut out: Vec<Option<Rational>> = vec![None; n.pow(4)];
    for (idx, v) in generators {
        if idx.iter().any(|&i| i >= n) {
            return Err(Error::DimMismatch {
                expected: n,
                got: idx.iter().copied().max().unwrap_or(0) + 1,
            });
        }
        for (img, neg) in symmetry_images(*idx) {
            let val = if neg { -v.clone() } else { v.clone() };
            let slot = &mut out[flatten(n, img)];
            match slot {
                Some(existing) if *existing != val => {
                    return Err(Error::Parse(format!(
                        "curvature entry {img:?} assigned both {existing} and {val}"
                    )))
                }
                _ => *slot = Some(val),
            }
        }
    }
    Ok(out.into_iter().map(Option::unwrap_or_default).collect())
}

/// Curvature of the form `R_{abcd} = c·(A_{bc} A_{ad} − A_{ac} A_{bd})` for a
/// symmetric bilinear form `A`. Covers both `c·R_φ` (with `A = φᵀ g`) and the
/// Gauss equation of a hypersurface (with `A` the second fundamental form).
pub fn tensor_from_form(a: &Matrix, c: &Rational) -> Vec<Rational> {
    let n = a.rows();
    let mut out = vec![Rational::zero(); n.pow(4)];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let v = &a[(j, k)] * &a[(i, l)] - &a[(i, k)] * &a[(j, l)];
                    if !v.is_zero() {
                        out[flatten(n, [i, j, k, l])] = v * c;
                    }
                }
            }
        }
    }
    out
}

/// `c·R_φ` with `R_φ(x,y)z = g(φy,z)φx − g(φx,z)φy`.
pub fn build_r_phi(g: &Matrix, phi: &SelfAdjointMap, c: &Rational) -> Result<ModelSpace> {
    if phi.0.rows() != g.rows() || !phi.0.is_square() {
        return Err(Error::DimMismatch {
            expected: g.rows(),
            got: phi.0.rows(),
        });
    }
    if !phi.is_self_adjoint(g) {
        return Err(Error::NotSelfAdjoint);
    }
    let a = &phi.0.transpose() * g;
    ModelSpace::new(g.clone(), tensor_from_form(&a, c))
}

pub fn classify_phi(g: &Matrix, phi: &SelfAdjointMap) -> PhiClass {
    let f = &phi.0;
    if f.rows() != g.rows() || !f.is_square() {
        return PhiClass::Other;
    }
    let pulled = &(&f.transpose() * g) * f;
    if pulled == *g {
        return PhiClass::Isometry;
    }
    if pulled == -g {
        return PhiClass::ParaIsometry;
    }
    if (f * f).is_zero() {
        let ker = f.kernel();
        if ker.is_empty() {
            return PhiClass::NilpotentAdmissible;
        }
        let basis = Matrix::from_columns(&ker).expect("kernel vectors share a length");
        let restricted = &(&basis.transpose() * g) * &basis;
        if restricted.signature().is_ok_and(|s| s.n_pos == 0) {
            return PhiClass::NilpotentAdmissible;
        }
    }
    PhiClass::Other
}

/// The model `V_{3s}` on the basis `(U₁..U_s, T₁..T_s, V₁..V_s)`:
/// `g(U_i,V_i) = 1`, `g(T_i,T_i) = −1`, `R(U_i,U_j,U_j,T_i) = 1` for `i ≠ j`,
/// with the auxiliary form `g̃(U_i,U_j) = δ_ij`.
pub fn model_v3s(s: usize) -> Result<ModelSpace> {
    if s < 2 {
        return Err(Error::STooSmall(s));
    }
    let n = 3 * s;
    let (u, t, v) = (|i: usize| i, |i: usize| s + i, |i: usize| 2 * s + i);
    let mut g = Matrix::zeros(n, n);
    let mut aux = Matrix::zeros(n, n);
    for i in 0..s {
        g[(u(i), v(i))] = Rational::one();
        g[(v(i), u(i))] = Rational::one();
        g[(t(i), t(i))] = -Rational::one();
        aux[(u(i), u(i))] = Rational::one();
    }
    let mut gens = Vec::new();
    for i in 0..s {
        for j in 0..s {
            if i != j {
                gens.push(([u(i), u(j), u(j), t(i)], Rational::one()));
            }
        }
    }
    Ok(ModelSpace::from_generators(g, &gens)?
        .with_aux_form(aux)?
        .with_family(Family::V3s { s }))
}

/// Pointwise model of the graph hypersurface metric: basis
/// `(∂x₁..∂x_p, ∂y₁..∂y_p)`, `g(∂xᵢ,∂xⱼ) = ∂ᵢf ∂ⱼf`, `g(∂xᵢ,∂yⱼ) = δᵢⱼ`,
/// `g(∂yᵢ,∂yⱼ) = 0`, and curvature from `L(∂xᵢ,∂xⱼ) = Hᵢⱼ` by the Gauss
/// equation `R(Z₁,Z₂,Z₃,Z₄) = L(Z₁,Z₄)L(Z₂,Z₃) − L(Z₁,Z₃)L(Z₂,Z₄)`.
pub fn hypersurface_model(hessian: &Matrix, grad: &[Rational]) -> Result<ModelSpace> {
    if !hessian.is_square() {
        return Err(Error::NotSquare {
            rows: hessian.rows(),
            cols: hessian.cols(),
        });
    }
    if !hessian.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let p = hessian.rows();
    if grad.len() != p {
        return Err(Error::DimMismatch {
            expected: p,
            got: grad.len(),
        });
    }
    let n = 2 * p;
    let mut g = Matrix::zeros(n, n);
    let mut l = Matrix::zeros(n, n);
    for i in 0..p {
        for j in 0..p {
            g[(i, j)] = &grad[i] * &grad[j];
            l[(i, j)] = hessian[(i, j)].clone();
        }
        g[(i, p + i)] = Rational::one();
        g[(p + i, i)] = Rational::one();
    }
    Ok(ModelSpace::new(g, tensor_from_form(&l, &Rational::one()))?.with_family(Family::Hypersurface { p }))
}

/// The block-diagonal action of an `s×s` matrix `ξ` on `V_{3s}`:
/// `U_i ↦ Σ_j ξ_ij U_j`, likewise on the `T` and `V` blocks. Columns of the
/// result are the images of the basis vectors.
pub fn diagonal_action(xi: &Matrix) -> Matrix {
    let s = xi.rows();
    let mut b = Matrix::zeros(3 * s, 3 * s);
    for block in 0..3 {
        for i in 0..s {
            for j in 0..s {
                b[(block * s + j, block * s + i)] = xi[(i, j)].clone();
            }
        }
    }
    b
}

/// Euclidean `ℝⁿ` with constant sectional curvature `c` (`c·R_Id`).
pub fn constant_curvature(n: usize, c: &Rational) -> ModelSpace {
    build_r_phi(&Matrix::identity(n), &SelfAdjointMap::identity(n), c).expect("identity is self-adjoint")
}

/// `Z_i^± = U_i ± ½V_i` in the normalized `V_{3s}` basis.
pub fn v3s_z(s: usize, i: usize, plus: bool) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); 3 * s];
    v[i] = Rational::one();
    v[2 * s + i] = if plus { rat(1, 2) } else { rat(-1, 2) };
    v
}

/// Basis vector `e_i` of `ℚⁿ`.
pub fn basis_vector(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn zero_tensor(n: usize) -> Vec<Rational> {
        vec![Rational::zero(); n.pow(4)]
    }

    #[test]
    fn v3s_validates_and_has_expected_orbit() {
        let m = model_v3s(2).unwrap();
        assert_eq!(m.validate(), Ok(()));
        assert_eq!(m.nonzero_entries().len(), 16);
        let sig = m.metric().signature().unwrap();
        assert_eq!((sig.n_neg, sig.n_zero, sig.n_pos), (4, 0, 2));
        assert_eq!(model_v3s(1).unwrap_err(), Error::STooSmall(1));
        assert_eq!(model_v3s(3).unwrap().validate(), Ok(()));
    }

    #[test]
    fn zero_tensor_is_valid() {
        let g = Matrix::diagonal(&[int(1), int(-1), int(2)]);
        let m = ModelSpace::new(g, zero_tensor(3)).unwrap();
        assert_eq!(m.validate(), Ok(()));
    }

    #[test]
    fn broken_antisymmetry_is_located() {
        // 1-based R_{1212} = 1 and R_{2112} = 1
        let mut t = zero_tensor(2);
        t[flatten(2, [0, 1, 0, 1])] = int(1);
        t[flatten(2, [1, 0, 0, 1])] = int(1);
        let m = ModelSpace::new(Matrix::identity(2), t).unwrap();
        match m.validate() {
            Err(Violation::Curvature { law, index, .. }) => {
                assert_eq!(law, SymmetryLaw::AntisymmetryFirstPair);
                assert_eq!(index, [1, 0, 0, 1]);
            }
            other => panic!("expected a violation, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_metric_rejected() {
        assert_eq!(
            ModelSpace::new(Matrix::zeros(2, 2), zero_tensor(2)).unwrap_err(),
            Error::DegenerateAtPoint
        );
    }

    #[test]
    fn v3s_operator_on_u1_u2() {
        let s = 2;
        let m = model_v3s(s).unwrap();
        let e = |i| basis_vector(6, i);
        let op = m.curvature_operator(&e(0), &e(1));
        // U1->T2, U2->-T1, T1->-V2, T2->V1
        let mut expected = Matrix::zeros(6, 6);
        expected[(3, 0)] = int(1);
        expected[(2, 1)] = int(-1);
        expected[(5, 2)] = int(-1);
        expected[(4, 3)] = int(1);
        assert_eq!(op, expected);
        assert!(m.curvature_operator(&e(0), &e(0)).is_zero());
    }

    #[test]
    fn constant_curvature_example() {
        let m = constant_curvature(4, &int(1));
        let e = |i| basis_vector(4, i);
        assert_eq!(m.curvature_operator(&e(0), &e(1)).mul_vec(&e(1)), e(0));
        let m3 = constant_curvature(3, &int(1));
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i != j { int(1) } else { int(0) };
                assert_eq!(*m3.curv(i, j, j, i), expected);
            }
        }
        assert_eq!(m3.validate(), Ok(()));
    }

    #[test]
    fn r_phi_edge_cases() {
        let g = Matrix::identity(3);
        let zero = build_r_phi(&g, &SelfAdjointMap(Matrix::zeros(3, 3)), &int(1)).unwrap();
        assert!(zero.nonzero_entries().is_empty());
        let not_sa = SelfAdjointMap(Matrix::from_ints(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]));
        assert_eq!(
            build_r_phi(&g, &not_sa, &int(1)).unwrap_err(),
            Error::NotSelfAdjoint
        );
    }

    #[test]
    fn r_phi_nilpotent_squares_to_zero() {
        // Neutral ℝ⁴ with hyperbolic pairs (e0,e1), (e2,e3); φ maps e1->e0, e3->e2.
        let g = Matrix::from_ints(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
        let phi = SelfAdjointMap(Matrix::from_ints(&[
            &[0, 1, 0, 0],
            &[0, 0, 0, 0],
            &[0, 0, 0, 1],
            &[0, 0, 0, 0],
        ]));
        assert!(phi.is_self_adjoint(&g));
        let m = build_r_phi(&g, &phi, &int(1)).unwrap();
        assert_eq!(m.validate(), Ok(()));
        for a in 0..4 {
            for b in 0..4 {
                let op = m.curvature_operator(&basis_vector(4, a), &basis_vector(4, b));
                assert!((&op * &op).is_zero());
            }
        }
        assert_eq!(classify_phi(&g, &phi), PhiClass::NilpotentAdmissible);
    }

    #[test]
    fn classify_examples() {
        let g = Matrix::diagonal(&[int(1), int(-1), int(1)]);
        assert_eq!(classify_phi(&g, &SelfAdjointMap::identity(3)), PhiClass::Isometry);
        let neg = SelfAdjointMap(Matrix::identity(3).scale(&int(-1)));
        assert_eq!(classify_phi(&g, &neg), PhiClass::Isometry);

        let hyp = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        let phi = SelfAdjointMap(Matrix::diagonal(&[int(1), int(-1)]));
        assert_eq!(classify_phi(&hyp, &phi), PhiClass::ParaIsometry);

        let g2 = Matrix::diagonal(&[int(1), int(-1)]);
        let nil = SelfAdjointMap(Matrix::from_ints(&[&[0, 1], &[0, 0]]));
        assert_eq!(classify_phi(&g2, &nil), PhiClass::Other);
    }

    #[test]
    fn hypersurface_examples() {
        let h = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        let m = hypersurface_model(&h, &[int(0), int(0)]).unwrap();
        assert_eq!(*m.curv(0, 1, 1, 0), int(-1));
        assert_eq!(m.nonzero_entries().len(), 4);
        assert_eq!(m.validate(), Ok(()));

        // L(x1,x1)L(x2,x2) − L(x1,x2)² = det H
        let round = hypersurface_model(&Matrix::diagonal(&[int(2), int(2)]), &[int(2), int(2)]).unwrap();
        assert_eq!(*round.curv(0, 1, 1, 0), int(4));

        let zero = hypersurface_model(&Matrix::zeros(2, 2), &[int(1), int(2)]).unwrap();
        assert!(zero.nonzero_entries().is_empty());

        assert_eq!(
            hypersurface_model(&Matrix::from_ints(&[&[0, 1], &[2, 0]]), &[int(0), int(0)]).unwrap_err(),
            Error::NotSymmetric
        );
    }

    #[test]
    fn isomorphism_examples() {
        let m = model_v3s(2).unwrap();
        let same = m.apply_isomorphism(&Matrix::identity(6)).unwrap();
        assert_eq!(same.metric(), m.metric());
        assert_eq!(same.curv_entries(), m.curv_entries());

        let two = m.apply_isomorphism(&Matrix::identity(6).scale(&int(2))).unwrap();
        assert_eq!(*two.metric(), m.metric().scale(&int(4)));
        for (a, b) in two.curv_entries().iter().zip(m.curv_entries()) {
            assert_eq!(*a, b * int(16));
        }
        assert_eq!(
            m.apply_isomorphism(&Matrix::zeros(6, 6)).unwrap_err(),
            Error::Singular
        );
    }

    #[test]
    fn signed_permutation_action_fixes_v3s() {
        let m = model_v3s(3).unwrap();
        let xi = Matrix::from_ints(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 1]]);
        let pulled = m.apply_isomorphism(&diagonal_action(&xi)).unwrap();
        assert_eq!(pulled.metric(), m.metric());
        assert_eq!(pulled.curv_entries(), m.curv_entries());
        assert_eq!(pulled.aux_form(), m.aux_form());
    }
}
