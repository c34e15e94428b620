//! Rational frames spanning k-planes, their causal type, and seeded sampling.
//!
//! Planes are never orthonormalized. Everything downstream works with the
//! Gram matrix of the frame instead.

use std::fmt;
use std::str::FromStr;

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{int, rat, Matrix, Rational};
use crate::modelspace::ModelSpace;

/// An ordered list of linearly independent vectors. For 2-frames the order
/// is the orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneFrame {
    vectors: Vec<Vec<Rational>>,
    ambient_dim: usize,
}

impl PlaneFrame {
    pub fn new(vectors: Vec<Vec<Rational>>) -> Result<Self> {
        let ambient_dim = vectors.first().map_or(0, Vec::len);
        if let Some(bad) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimMismatch {
                expected: ambient_dim,
                got: bad.len(),
            });
        }
        let frame = PlaneFrame { vectors, ambient_dim };
        if frame.k() == 0 || frame.matrix().rank() < frame.k() {
            return Err(Error::DependentFrame);
        }
        Ok(frame)
    }

    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        Self::new(m.columns())
    }

    pub fn k(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &[Rational] {
        &self.vectors[i]
    }

    /// The `n×k` matrix with the frame vectors as columns.
    pub fn matrix(&self) -> Matrix {
        Matrix::from_columns(&self.vectors).expect("frame vectors share a length")
    }

    /// The frame `fr·B` for a `k×k'` matrix `B`.
    pub fn transform(&self, b: &Matrix) -> Result<PlaneFrame> {
        if b.rows() != self.k() {
            return Err(Error::DimMismatch {
                expected: self.k(),
                got: b.rows(),
            });
        }
        PlaneFrame::from_matrix(&(&self.matrix() * b))
    }

    /// The image frame `(A x₁, …, A x_k)` under a linear map of the ambient space.
    pub fn push_forward(&self, a: &Matrix) -> Result<PlaneFrame> {
        if a.cols() != self.ambient_dim {
            return Err(Error::DimMismatch {
                expected: self.ambient_dim,
                got: a.cols(),
            });
        }
        PlaneFrame::new(self.vectors.iter().map(|v| a.mul_vec(v)).collect())
    }

    pub fn swapped(&self, i: usize, j: usize) -> PlaneFrame {
        let mut out = self.clone();
        out.vectors.swap(i, j);
        out
    }
}

impl Serialize for PlaneFrame {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<Vec<String>> = self
            .vectors
            .iter()
            .map(|v| v.iter().map(ToString::to_string).collect())
            .collect();
        strs.serialize(s)
    }
}

impl fmt::Display for PlaneFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .vectors
            .iter()
            .map(|v| {
                let inner: Vec<String> = v.iter().map(ToString::to_string).collect();
                format!("({})", inner.join(", "))
            })
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CausalType {
    Spacelike,
    Timelike,
    Degenerate,
    Mixed,
}

/// The causal type a sampler or verifier is asked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Causal {
    Spacelike,
    Timelike,
}

impl Causal {
    pub fn as_str(self) -> &'static str {
        match self {
            Causal::Spacelike => "spacelike",
            Causal::Timelike => "timelike",
        }
    }

    pub fn matches(self, t: CausalType) -> bool {
        matches!(
            (self, t),
            (Causal::Spacelike, CausalType::Spacelike) | (Causal::Timelike, CausalType::Timelike)
        )
    }
}

impl fmt::Display for Causal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Causal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spacelike" => Ok(Causal::Spacelike),
            "timelike" => Ok(Causal::Timelike),
            other => Err(Error::Parse(format!("unknown causal type `{other}`"))),
        }
    }
}

/// `G_ij = g(x_i, x_j)` for an explicit metric matrix.
pub fn gram_with(g: &Matrix, fr: &PlaneFrame) -> Result<Matrix> {
    if g.rows() != fr.ambient_dim() {
        return Err(Error::DimMismatch {
            expected: g.rows(),
            got: fr.ambient_dim(),
        });
    }
    let gx: Vec<Vec<Rational>> = fr.vectors.iter().map(|x| g.mul_vec(x)).collect();
    let k = fr.k();
    let mut out = Matrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let v: Rational = fr.vectors[i].iter().zip(&gx[j]).map(|(a, b)| a * b).sum();
            out[(i, j)] = v.clone();
            out[(j, i)] = v;
        }
    }
    Ok(out)
}

pub fn gram(m: &ModelSpace, fr: &PlaneFrame) -> Result<Matrix> {
    gram_with(m.metric(), fr)
}

pub fn causal_type_of_gram(gram: &Matrix) -> CausalType {
    let inertia = gram.signature().expect("Gram matrices are symmetric");
    let k = gram.rows();
    if inertia.n_zero > 0 {
        CausalType::Degenerate
    } else if inertia.n_pos == k {
        CausalType::Spacelike
    } else if inertia.n_neg == k {
        CausalType::Timelike
    } else {
        CausalType::Mixed
    }
}

pub fn causal_type(m: &ModelSpace, fr: &PlaneFrame) -> Result<CausalType> {
    Ok(causal_type_of_gram(&gram(m, fr)?))
}

/// A `g`-orthogonal rational basis split by the sign of `g(e, e)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptedBasis {
    pub positive: Vec<Vec<Rational>>,
    pub negative: Vec<Vec<Rational>>,
}

impl AdaptedBasis {
    pub fn of(g: &Matrix) -> Result<Self> {
        let (b, diag) = g.congruence_diagonalize()?;
        let mut out = AdaptedBasis {
            positive: Vec::new(),
            negative: Vec::new(),
        };
        for (col, d) in b.columns().into_iter().zip(diag) {
            if d > Rational::zero() {
                out.positive.push(col);
            } else if d < Rational::zero() {
                out.negative.push(col);
            } else {
                return Err(Error::DegenerateAtPoint);
            }
        }
        Ok(out)
    }

    pub fn part(&self, want: Causal) -> &[Vec<Rational>] {
        match want {
            Causal::Spacelike => &self.positive,
            Causal::Timelike => &self.negative,
        }
    }

    pub fn opposite(&self, want: Causal) -> &[Vec<Rational>] {
        match want {
            Causal::Spacelike => &self.negative,
            Causal::Timelike => &self.positive,
        }
    }
}

/// Dimension of a maximal spacelike or timelike subspace.
pub fn causal_index(m: &ModelSpace, want: Causal) -> usize {
    let s = m.metric().signature().expect("metric is symmetric");
    match want {
        Causal::Spacelike => s.n_pos,
        Causal::Timelike => s.n_neg,
    }
}

/// Mixes a sample index into a base seed (splitmix64 finalizer), so that
/// parallel sampling does not depend on scheduling.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index.wrapping_mul(0xBF58_476D_1CE4_E5B9));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn small_int(rng: &mut ChaCha8Rng) -> Rational {
    int(rng.gen_range(-3..=3))
}

fn combine(basis: &[Vec<Rational>], coeffs: &Matrix, col: usize, n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for (i, b) in basis.iter().enumerate() {
        let c = &coeffs[(i, col)];
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            *o += c * x;
        }
    }
    out
}

/// A random definite k-frame. Mixes `k` random combinations of adapted
/// directions of the wanted sign with a random perturbation toward the
/// opposite part, starting at magnitude `1/n` and halving until the Gram
/// matrix is definite.
pub fn random_frame(m: &ModelSpace, k: usize, want: Causal, seed: u64) -> Result<PlaneFrame> {
    let basis = AdaptedBasis::of(m.metric())?;
    random_frame_in(&basis, m.metric(), k, want, seed)
}

pub fn random_frame_in(
    basis: &AdaptedBasis,
    g: &Matrix,
    k: usize,
    want: Causal,
    seed: u64,
) -> Result<PlaneFrame> {
    let same = basis.part(want);
    let opp = basis.opposite(want);
    if k > same.len() {
        return Err(Error::KTooLarge { k, index: same.len() });
    }
    if k == 0 {
        return Err(Error::KTooSmall(0));
    }
    let n = g.rows();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = loop {
        let a = Matrix::from_fn(same.len(), k, |_, _| small_int(&mut rng));
        if a.rank() == k {
            break a;
        }
    };
    let c = Matrix::from_fn(opp.len(), k, |_, _| small_int(&mut rng));
    let base: Vec<_> = (0..k).map(|j| combine(same, &a, j, n)).collect();
    let pert: Vec<_> = (0..k).map(|j| combine(opp, &c, j, n)).collect();
    let mut t = rat(1, n as i64);
    loop {
        let vectors: Vec<Vec<Rational>> = base
            .iter()
            .zip(&pert)
            .map(|(b, p)| b.iter().zip(p).map(|(x, y)| x + &t * y).collect())
            .collect();
        let frame = PlaneFrame {
            vectors,
            ambient_dim: n,
        };
        if want.matches(causal_type_of_gram(&gram_with(g, &frame)?)) {
            return Ok(frame);
        }
        t /= int(2);
    }
}

/// `ξ = (I − S)(I + S)⁻¹`; orthogonal whenever `S` is skew-symmetric.
pub fn cayley_from_skew(skew: &Matrix) -> Result<Matrix> {
    if !skew.is_square() {
        return Err(Error::NotSquare {
            rows: skew.rows(),
            cols: skew.cols(),
        });
    }
    let id = Matrix::identity(skew.rows());
    Ok(&(&id - skew) * &(&id + skew).inverse()?)
}

/// A random rational orthogonal `s×s` matrix.
pub fn cayley_orthogonal(s: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut skew = Matrix::zeros(s, s);
    for i in 0..s {
        for j in i + 1..s {
            let q = rat(rng.gen_range(-4..=4), rng.gen_range(1..=3));
            skew[(j, i)] = -q.clone();
            skew[(i, j)] = q;
        }
    }
    cayley_from_skew(&skew).expect("I + S is invertible for skew S")
}

/// `B` with `fr2 = fr1·B` when both frames span the same plane.
pub fn same_plane(fr1: &PlaneFrame, fr2: &PlaneFrame) -> Option<Matrix> {
    if fr1.k() != fr2.k() || fr1.ambient_dim() != fr2.ambient_dim() {
        return None;
    }
    fr1.matrix().solve_left(&fr2.matrix())
}

/// A frame made of explicit vectors; panics on dependence. Meant for named
/// witness planes that are independent by construction.
pub(crate) fn frame_of(vectors: Vec<Vec<Rational>>) -> PlaneFrame {
    PlaneFrame::new(vectors).expect("named frame is independent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modelspace::{basis_vector, diagonal_action, model_v3s, v3s_z};

    fn t(s: usize, i: usize) -> Vec<Rational> {
        basis_vector(3 * s, s + i)
    }

    #[test]
    fn gram_examples() {
        let m = model_v3s(2).unwrap();
        let zp = frame_of(vec![v3s_z(2, 0, true), v3s_z(2, 1, true)]);
        assert_eq!(gram(&m, &zp).unwrap(), Matrix::identity(2));
        let tt = frame_of(vec![t(2, 0), t(2, 1)]);
        assert_eq!(gram(&m, &tt).unwrap(), -&Matrix::identity(2));
        let short = frame_of(vec![vec![int(1), int(0)]]);
        assert!(matches!(gram(&m, &short), Err(Error::DimMismatch { .. })));
    }

    #[test]
    fn causal_examples() {
        let s = 3;
        let m = model_v3s(s).unwrap();
        let zp = frame_of(vec![v3s_z(s, 0, true), v3s_z(s, 1, true)]);
        assert_eq!(causal_type(&m, &zp).unwrap(), CausalType::Spacelike);
        let mut tz: Vec<_> = (0..s).map(|i| t(s, i)).collect();
        tz.extend((0..s).map(|i| v3s_z(s, i, false)));
        assert_eq!(causal_type(&m, &frame_of(tz)).unwrap(), CausalType::Timelike);
        let uu = frame_of(vec![basis_vector(9, 0), basis_vector(9, 1)]);
        assert_eq!(causal_type(&m, &uu).unwrap(), CausalType::Degenerate);
        let mixed = frame_of(vec![v3s_z(s, 0, true), t(s, 0)]);
        assert_eq!(causal_type(&m, &mixed).unwrap(), CausalType::Mixed);
    }

    #[test]
    fn dependent_frames_rejected() {
        let v = vec![int(1), int(2)];
        let w = vec![int(2), int(4)];
        assert_eq!(PlaneFrame::new(vec![v, w]).unwrap_err(), Error::DependentFrame);
        assert_eq!(PlaneFrame::new(vec![]).unwrap_err(), Error::DependentFrame);
    }

    #[test]
    fn random_frame_contract() {
        let m = model_v3s(2).unwrap();
        assert_eq!(
            random_frame(&m, 3, Causal::Spacelike, 0).unwrap_err(),
            Error::KTooLarge { k: 3, index: 2 }
        );
        for seed in 0..20 {
            for (k, want) in [
                (2, Causal::Spacelike),
                (3, Causal::Timelike),
                (4, Causal::Timelike),
            ] {
                let fr = random_frame(&m, k, want, seed).unwrap();
                assert_eq!(fr.k(), k);
                assert!(want.matches(causal_type(&m, &fr).unwrap()));
                assert_eq!(fr, random_frame(&m, k, want, seed).unwrap());
            }
        }
    }

    #[test]
    fn adapted_basis_is_definite_unperturbed() {
        let m = model_v3s(3).unwrap();
        let b = AdaptedBasis::of(m.metric()).unwrap();
        assert_eq!((b.positive.len(), b.negative.len()), (3, 6));
        let fr = frame_of(b.positive.clone());
        assert_eq!(causal_type(&m, &fr).unwrap(), CausalType::Spacelike);
        let fr = frame_of(b.negative.clone());
        assert_eq!(causal_type(&m, &fr).unwrap(), CausalType::Timelike);
    }

    #[test]
    fn cayley_examples() {
        assert_eq!(
            cayley_from_skew(&Matrix::zeros(3, 3)).unwrap(),
            Matrix::identity(3)
        );
        let s = Matrix::from_ints(&[&[0, 1], &[-1, 0]]);
        // (I − S)(I + S)⁻¹ = [[1,−1],[1,1]]·½[[1,−1],[1,1]]
        let xi = cayley_from_skew(&s).unwrap();
        assert_eq!(xi, Matrix::from_ints(&[&[0, -1], &[1, 0]]));
        assert_eq!(&xi.transpose() * &xi, Matrix::identity(2));
    }

    #[test]
    fn cayley_action_fixes_v3s() {
        for s in 2..=3 {
            let m = model_v3s(s).unwrap();
            for seed in 0..5 {
                let xi = cayley_orthogonal(s, seed);
                assert_eq!(&xi.transpose() * &xi, Matrix::identity(s));
                let moved = m.apply_isomorphism(&diagonal_action(&xi)).unwrap();
                assert_eq!(moved.metric(), m.metric());
                assert_eq!(moved.curv_entries(), m.curv_entries());
            }
        }
    }

    #[test]
    fn same_plane_examples() {
        let a = frame_of(vec![vec![int(1), int(0), int(0)], vec![int(0), int(1), int(1)]]);
        let b = same_plane(&a, &a.swapped(0, 1)).unwrap();
        assert_eq!(b, Matrix::from_ints(&[&[0, 1], &[1, 0]]));
        assert_eq!(b.det().unwrap(), int(-1));
        let doubled = a.transform(&Matrix::identity(2).scale(&int(2))).unwrap();
        assert_eq!(
            same_plane(&a, &doubled).unwrap(),
            Matrix::identity(2).scale(&int(2))
        );
        let other = frame_of(vec![vec![int(0), int(0), int(1)], vec![int(0), int(1), int(0)]]);
        let xy = frame_of(vec![vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)]]);
        assert!(same_plane(&xy, &other).is_none());
    }

    #[test]
    fn causal_parse() {
        assert_eq!("timelike".parse::<Causal>().unwrap(), Causal::Timelike);
        assert!("null".parse::<Causal>().is_err());
    }
}
