//! Coordinate metrics with polynomial components.
//!
//! Curvature is computed pointwise from the exact 2-jet of the metric. The
//! sign convention is `R(X,Y) = ∇_X∇_Y − ∇_Y∇_X` on coordinate fields and
//! `R(X,Y,Z,W) = g(R(X,Y)Z, W)`, so that a round sphere has `R(e₁,e₂,e₂,e₁) > 0`.

use std::collections::BTreeMap;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int, rat, Matrix, MultiPoly, Rational};
use crate::modelspace::{Family, ModelSpace};

/// Basis convention of a metric family, propagated to pointwise models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MetricFamily {
    Generic,
    /// Coordinates `(x₁..x_p, y₁..y_p)` of a graph hypersurface metric.
    Hypersurface {
        p: usize,
    },
    /// Coordinates `(u₁..u_s, t₁..t_s, v₁..v_s)`.
    ThreeS {
        s: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialMetric {
    coords: Vec<String>,
    components: Vec<MultiPoly>,
    family: MetricFamily,
}

/// Exact values of `g`, `∂g` and `∂∂g` at a point.
#[derive(Debug, Clone)]
pub struct Jets {
    dim: usize,
    pub g0: Matrix,
    g1: Vec<Rational>,
    g2: Vec<Rational>,
}

impl Jets {
    /// `∂_k g_ij`
    pub fn d1(&self, k: usize, i: usize, j: usize) -> &Rational {
        let n = self.dim;
        &self.g1[(k * n + i) * n + j]
    }

    /// `∂_l ∂_k g_ij`
    pub fn d2(&self, l: usize, k: usize, i: usize, j: usize) -> &Rational {
        let n = self.dim;
        &self.g2[((l * n + k) * n + i) * n + j]
    }
}

#[derive(Debug, Clone)]
pub struct Christoffel {
    dim: usize,
    first: Vec<Rational>,
    second: Vec<Rational>,
}

impl Christoffel {
    /// `Γ_{ijk} = g(∇_{∂i} ∂j, ∂k)`
    pub fn first(&self, i: usize, j: usize, k: usize) -> &Rational {
        let n = self.dim;
        &self.first[(i * n + j) * n + k]
    }

    /// `Γ^m_{ij}`, so that `∇_{∂i} ∂j = Σ_m Γ^m_{ij} ∂m`.
    pub fn second(&self, m: usize, i: usize, j: usize) -> &Rational {
        let n = self.dim;
        &self.second[(m * n + i) * n + j]
    }

    /// Coordinates of `∇_{∂i} ∂j`.
    pub fn covariant(&self, i: usize, j: usize) -> Vec<Rational> {
        (0..self.dim).map(|m| self.second(m, i, j).clone()).collect()
    }
}

impl PolynomialMetric {
    /// `components` is row-major `dim×dim` and must be symmetric.
    pub fn new(coords: Vec<String>, components: Vec<MultiPoly>) -> Result<Self> {
        let n = coords.len();
        if components.len() != n * n {
            return Err(Error::DimMismatch {
                expected: n * n,
                got: components.len(),
            });
        }
        if components.iter().any(|p| p.vars() != coords.as_slice()) {
            return Err(Error::BadVariables(
                "components must be polynomials in the coordinate list".into(),
            ));
        }
        for i in 0..n {
            for j in i + 1..n {
                if components[i * n + j] != components[j * n + i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(PolynomialMetric {
            coords,
            components,
            family: MetricFamily::Generic,
        })
    }

    /// Sparse constructor; each `(i, j)` entry also sets `(j, i)`.
    pub fn from_entries(coords: Vec<String>, entries: &[((usize, usize), MultiPoly)]) -> Result<Self> {
        let n = coords.len();
        let mut comps = vec![MultiPoly::zero(&coords); n * n];
        for ((i, j), p) in entries {
            if *i >= n || *j >= n {
                return Err(Error::DimMismatch {
                    expected: n,
                    got: (*i).max(*j) + 1,
                });
            }
            let p = p.embed(&coords).map_err(|e| Error::BadVariables(e.to_string()))?;
            for (a, b) in [(*i, *j), (*j, *i)] {
                if !comps[a * n + b].is_zero() && comps[a * n + b] != p {
                    return Err(Error::Parse(format!("component ({a},{b}) assigned twice")));
                }
                comps[a * n + b] = p.clone();
            }
        }
        Self::new(coords, comps)
    }

    pub fn with_family(mut self, family: MetricFamily) -> Self {
        self.family = family;
        self
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn family(&self) -> MetricFamily {
        self.family
    }

    pub fn component(&self, i: usize, j: usize) -> &MultiPoly {
        &self.components[i * self.dim() + j]
    }

    fn check_point(&self, p: &[Rational]) -> Result<()> {
        if p.len() != self.dim() {
            return Err(Error::DimMismatch {
                expected: self.dim(),
                got: p.len(),
            });
        }
        Ok(())
    }

    /// The metric matrix at `p` (no nondegeneracy check).
    pub fn eval(&self, p: &[Rational]) -> Result<Matrix> {
        self.check_point(p)?;
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = self.component(i, j).eval(p)?;
                m[(i, j)] = v.clone();
                m[(j, i)] = v;
            }
        }
        Ok(m)
    }

    pub fn jets(&self, p: &[Rational]) -> Result<Jets> {
        let g0 = self.eval(p)?;
        if g0.det()?.is_zero() {
            return Err(Error::DegenerateAtPoint);
        }
        let n = self.dim();
        let mut g1 = vec![Rational::zero(); n.pow(3)];
        let mut g2 = vec![Rational::zero(); n.pow(4)];
        for i in 0..n {
            for j in i..n {
                let c = self.component(i, j);
                for k in c.support() {
                    let dk = c.diff_index(k);
                    let v = dk.eval(p)?;
                    g1[(k * n + i) * n + j] = v.clone();
                    g1[(k * n + j) * n + i] = v;
                    for l in dk.support() {
                        let v = dk.diff_index(l).eval(p)?;
                        g2[((l * n + k) * n + i) * n + j] = v.clone();
                        g2[((l * n + k) * n + j) * n + i] = v;
                    }
                }
            }
        }
        Ok(Jets { dim: n, g0, g1, g2 })
    }

    pub fn christoffel(&self, p: &[Rational]) -> Result<Christoffel> {
        let jets = self.jets(p)?;
        Ok(christoffel_from_jets(&jets)?.0)
    }

    /// Pointwise model `(T_pM, g_p, R_p)` in the coordinate basis.
    pub fn curvature_at(&self, p: &[Rational]) -> Result<ModelSpace> {
        let jets = self.jets(p)?;
        let (ch, _) = christoffel_from_jets(&jets)?;
        let n = self.dim();
        let half = rat(1, 2);
        let mut curv = vec![Rational::zero(); n.pow(4)];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut v = jets.d2(i, k, j, l) + jets.d2(j, l, i, k)
                            - jets.d2(i, l, j, k)
                            - jets.d2(j, k, i, l);
                        v *= &half;
                        for m in 0..n {
                            let a = ch.second(m, i, k);
                            if !a.is_zero() {
                                v += ch.first(j, l, m) * a;
                            }
                            let b = ch.second(m, j, k);
                            if !b.is_zero() {
                                v -= ch.first(i, l, m) * b;
                            }
                        }
                        curv[((i * n + j) * n + k) * n + l] = v;
                    }
                }
            }
        }
        let family = match self.family {
            MetricFamily::Hypersurface { p } => Family::Hypersurface { p },
            _ => Family::Generic,
        };
        Ok(ModelSpace::new(jets.g0, curv)?.with_family(family))
    }
}

fn christoffel_from_jets(jets: &Jets) -> Result<(Christoffel, Matrix)> {
    let n = jets.dim;
    let inv = jets.g0.inverse().map_err(|_| Error::DegenerateAtPoint)?;
    let half = rat(1, 2);
    let mut first = vec![Rational::zero(); n.pow(3)];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = jets.d1(i, j, k) + jets.d1(j, i, k) - jets.d1(k, i, j);
                first[(i * n + j) * n + k] = v * &half;
            }
        }
    }
    let mut second = vec![Rational::zero(); n.pow(3)];
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut v = Rational::zero();
                for k in 0..n {
                    let f = &first[(i * n + j) * n + k];
                    if !f.is_zero() && !inv[(m, k)].is_zero() {
                        v += &inv[(m, k)] * f;
                    }
                }
                second[(m * n + i) * n + j] = v;
            }
        }
    }
    Ok((
        Christoffel {
            dim: n,
            first,
            second,
        },
        inv,
    ))
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Coordinate names `u1..us, t1..ts, v1..vs`.
pub fn coords_3s(s: usize) -> Vec<String> {
    let mut c = names("u", s);
    c.extend(names("t", s));
    c.extend(names("v", s));
    c
}

/// Coordinate names `x1..xp, y1..yp`.
pub fn coords_hypersurface(p: usize) -> Vec<String> {
    let mut c = names("x", p);
    c.extend(names("y", p));
    c
}

/// The neutral-signature graph metric: `g(∂xᵢ,∂xⱼ) = ∂ᵢf·∂ⱼf`,
/// `g(∂xᵢ,∂yⱼ) = δᵢⱼ`, `g(∂yᵢ,∂yⱼ) = 0`. `f` may only involve `x1..xp`.
pub fn metric_g_f(p: usize, f: &MultiPoly) -> Result<PolynomialMetric> {
    if p < 2 {
        return Err(Error::BadVariables(format!("need p >= 2, got {p}")));
    }
    let coords = coords_hypersurface(p);
    let f = f.embed(&coords).map_err(|e| Error::BadVariables(e.to_string()))?;
    if f.support().iter().any(|&i| i >= p) {
        return Err(Error::BadVariables("f may only depend on x1..xp".into()));
    }
    let grad: Vec<MultiPoly> = (0..p).map(|i| f.diff_index(i)).collect();
    let one = MultiPoly::constant(&coords, Rational::one());
    let mut entries = Vec::new();
    for i in 0..p {
        for j in i..p {
            let c = &grad[i] * &grad[j];
            if !c.is_zero() {
                entries.push(((i, j), c));
            }
        }
        entries.push(((i, p + i), one.clone()));
    }
    Ok(PolynomialMetric::from_entries(coords, &entries)?.with_family(MetricFamily::Hypersurface { p }))
}

fn metric_3s_with(s: usize, extra: &MultiPoly) -> Result<PolynomialMetric> {
    if s < 2 {
        return Err(Error::STooSmall(s));
    }
    let coords = coords_3s(s);
    let var = |name: String| MultiPoly::var(&coords, &name).expect("coordinate exists");
    let mut ut = MultiPoly::zero(&coords);
    for k in 1..=s {
        ut = &ut + &(&var(format!("u{k}")) * &var(format!("t{k}")));
    }
    let uu = &ut.scale(&int(-2)) + extra;
    let one = MultiPoly::constant(&coords, Rational::one());
    let mut entries = Vec::new();
    for i in 0..s {
        entries.push(((i, i), uu.clone()));
        entries.push(((i, 2 * s + i), one.clone()));
        entries.push(((s + i, s + i), -&one));
    }
    Ok(PolynomialMetric::from_entries(coords, &entries)?.with_family(MetricFamily::ThreeS { s }))
}

/// `g(∂uᵢ,∂uⱼ) = −2δᵢⱼ Σ u_k t_k`, `g(∂uᵢ,∂vⱼ) = δᵢⱼ`, `g(∂tᵢ,∂tⱼ) = −δᵢⱼ`.
pub fn metric_g_3s(s: usize) -> Result<PolynomialMetric> {
    metric_3s_with(s, &MultiPoly::zero(&coords_3s(s)))
}

/// Generalization with `g(∂uᵢ,∂uᵢ) = −2F(u) − 2Σ u_k t_k` where
/// `F = f₁(u₁) + … + f_s(u_s)`. Each `fᵢ` may only involve `uᵢ`.
pub fn metric_g_big_f(s: usize, fs: &[MultiPoly]) -> Result<PolynomialMetric> {
    if s < 2 {
        return Err(Error::STooSmall(s));
    }
    if fs.len() != s {
        return Err(Error::DimMismatch {
            expected: s,
            got: fs.len(),
        });
    }
    let coords = coords_3s(s);
    let mut big_f = MultiPoly::zero(&coords);
    for (i, f) in fs.iter().enumerate() {
        let f = f.embed(&coords).map_err(|e| Error::BadVariables(e.to_string()))?;
        if f.support().iter().any(|&v| v != i) {
            return Err(Error::BadVariables(format!(
                "f{} may only depend on u{}",
                i + 1,
                i + 1
            )));
        }
        big_f = &big_f + &f;
    }
    metric_3s_with(s, &big_f.scale(&int(-2)))
}

/// Declarative metric file:
/// `{"coords": ["x","y"], "components": {"0,0": "1 + x^2", "1,1": "1"}}`.
/// Indices are 0-based; each entry also sets its transpose.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricFile {
    pub coords: Vec<String>,
    pub components: BTreeMap<String, String>,
}

impl MetricFile {
    pub fn from_json(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn into_metric(&self) -> Result<PolynomialMetric> {
        let n = self.coords.len();
        let entries = self
            .components
            .iter()
            .map(|(k, v)| {
                let (i, j) = k
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("bad component key `{k}`")))?;
                let parse = |s: &str| {
                    s.trim()
                        .parse::<usize>()
                        .ok()
                        .filter(|&x| x < n)
                        .ok_or_else(|| Error::Parse(format!("bad component key `{k}`")))
                };
                Ok(((parse(i)?, parse(j)?), MultiPoly::parse(v, &self.coords)?))
            })
            .collect::<Result<Vec<_>>>()?;
        PolynomialMetric::from_entries(self.coords.clone(), &entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::modelspace::hypersurface_model;

    fn xs(p: usize) -> Vec<String> {
        names("x", p)
    }

    #[test]
    fn flat_metric_has_trivial_jets() {
        let coords = names("x", 3);
        let m = PolynomialMetric::from_entries(
            coords.clone(),
            &[
                ((0, 0), MultiPoly::constant(&coords, int(1))),
                ((1, 2), MultiPoly::constant(&coords, int(1))),
            ],
        )
        .unwrap();
        let p = [int(1), int(2), int(3)];
        let j = m.jets(&p).unwrap();
        assert!(j.g1.iter().all(Zero::is_zero));
        assert!(j.g2.iter().all(Zero::is_zero));
        let ch = m.christoffel(&p).unwrap();
        assert!(ch.first.iter().chain(&ch.second).all(Zero::is_zero));
        assert!(m.curvature_at(&p).unwrap().nonzero_entries().is_empty());
    }

    #[test]
    fn g3s_jet_component() {
        let g = metric_g_3s(2).unwrap();
        let p = [int(3), int(-1), int(2), int(5), int(0), int(7)];
        let j = g.jets(&p).unwrap();
        // ∂_{t1} g(∂u1, ∂u1) = -2 u1
        assert_eq!(*j.d1(2, 0, 0), int(-6));
        assert_eq!(*j.d2(0, 2, 0, 0), int(-2));
    }

    #[test]
    fn g_f_components() {
        let f = MultiPoly::parse("x1*x2", &xs(2)).unwrap();
        let g = metric_g_f(2, &f).unwrap();
        // g(∂x1,∂x1) = x2², so ∂_{x2} at (1,1) is 2
        let p = [int(1), int(1), int(0), int(0)];
        assert_eq!(*g.jets(&p).unwrap().d1(1, 0, 0), int(2));

        let f = MultiPoly::parse("x1^2 + x2^2", &xs(2)).unwrap();
        let g = metric_g_f(2, &f).unwrap();
        assert_eq!(
            g.component(0, 0),
            &MultiPoly::parse("4*x1^2", g.coords()).unwrap()
        );
        let sig = g
            .eval(&[int(1), int(2), int(3), int(4)])
            .unwrap()
            .signature()
            .unwrap();
        assert_eq!((sig.n_neg, sig.n_zero, sig.n_pos), (2, 0, 2));

        let zero = metric_g_f(3, &MultiPoly::zero(&xs(3))).unwrap();
        let pt = vec![int(1); 6];
        assert!(zero.curvature_at(&pt).unwrap().nonzero_entries().is_empty());

        let bad = MultiPoly::parse("y1", &["y1".to_string()]).unwrap();
        assert!(matches!(metric_g_f(2, &bad), Err(Error::BadVariables(_))));
    }

    #[test]
    fn g3s_christoffel_matches_hand_values() {
        let s = 2;
        let g = metric_g_3s(s).unwrap();
        let p = [rat(1, 2), int(-3), int(2), rat(5, 7), int(1), int(9)];
        let ch = g.christoffel(&p).unwrap();
        let (u, t, v) = (|i: usize| i, |i: usize| s + i, |i: usize| 2 * s + i);
        for i in 0..s {
            // g(∇_{∂ui}∂ui, ∂ti) = u_i
            assert_eq!(*ch.first(u(i), u(i), t(i)), p[u(i)]);
            // ∇_{∂ui}∂ti = -u_i ∂vi
            let mut expected = vec![Rational::zero(); 3 * s];
            expected[v(i)] = -p[u(i)].clone();
            assert_eq!(ch.covariant(u(i), t(i)), expected);
            assert_eq!(ch.covariant(t(i), u(i)), expected);
        }
    }

    #[test]
    fn g3s_signature_at_origin() {
        for s in 2..=4 {
            let g = metric_g_3s(s).unwrap();
            let sig = g
                .eval(&vec![Rational::zero(); 3 * s])
                .unwrap()
                .signature()
                .unwrap();
            assert_eq!((sig.n_neg, sig.n_zero, sig.n_pos), (2 * s, 0, s));
            // g(∂ti, ∂ti) = -1
            assert_eq!(g.component(s, s), &MultiPoly::constant(g.coords(), int(-1)));
        }
        assert_eq!(metric_g_3s(1).unwrap_err(), Error::STooSmall(1));
    }

    #[test]
    fn g_big_f_adds_f_to_u_diagonal() {
        let s = 2;
        let c = coords_3s(s);
        let fs = [MultiPoly::parse("u1^2", &c).unwrap(), MultiPoly::zero(&c)];
        let gf = metric_g_big_f(s, &fs).unwrap();
        let g = metric_g_3s(s).unwrap();
        let shift = MultiPoly::parse("-2*u1^2", &c).unwrap();
        for i in 0..3 * s {
            for j in 0..3 * s {
                let expected = if i == j && i < s {
                    g.component(i, j) + &shift
                } else {
                    g.component(i, j).clone()
                };
                assert_eq!(*gf.component(i, j), expected);
            }
        }
        let zero = metric_g_big_f(s, &[MultiPoly::zero(&c), MultiPoly::zero(&c)]).unwrap();
        assert_eq!(zero, g);
        let wrong = [MultiPoly::parse("u2", &c).unwrap(), MultiPoly::zero(&c)];
        assert!(matches!(metric_g_big_f(s, &wrong), Err(Error::BadVariables(_))));
    }

    #[test]
    fn degenerate_point_reported() {
        let coords = xs(2);
        let m = PolynomialMetric::from_entries(
            coords.clone(),
            &[
                ((0, 0), MultiPoly::parse("x1", &coords).unwrap()),
                ((1, 1), MultiPoly::constant(&coords, int(1))),
            ],
        )
        .unwrap();
        assert_eq!(m.jets(&[int(0), int(0)]).unwrap_err(), Error::DegenerateAtPoint);
        assert_eq!(
            m.curvature_at(&[int(0), int(0)]).unwrap_err(),
            Error::DegenerateAtPoint
        );
    }

    #[test]
    fn g_f_xy_matches_hypersurface_model() {
        let f = MultiPoly::parse("x1*x2", &xs(2)).unwrap();
        let g = metric_g_f(2, &f).unwrap();
        let h = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        for p in [[int(1), int(1)], [rat(2, 3), int(-5)], [int(0), int(0)]] {
            let point = [p[0].clone(), p[1].clone(), int(4), rat(-1, 2)];
            let grad = [p[1].clone(), p[0].clone()];
            let direct = g.curvature_at(&point).unwrap();
            let model = hypersurface_model(&h, &grad).unwrap();
            assert_eq!(direct.metric(), model.metric());
            assert_eq!(direct.curv_entries(), model.curv_entries());
        }
    }

    #[test]
    fn metric_file_parses() {
        let src = r#"{"coords": ["u1","u2","t1","t2","v1","v2"],
            "components": {"0,0": "-2*u1*t1 - 2*u2*t2", "1,1": "-2*u1*t1 - 2*u2*t2",
                           "0,4": "1", "1,5": "1", "2,2": "-1", "3,3": "-1"}}"#;
        let m = MetricFile::from_json(src).unwrap().into_metric().unwrap();
        assert_eq!(m.components, metric_g_3s(2).unwrap().components);
        let bad = r#"{"coords": ["x"], "components": {"0,1": "1"}}"#;
        assert!(MetricFile::from_json(bad).unwrap().into_metric().is_err());
    }
}
