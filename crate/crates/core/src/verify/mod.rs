//! Sampling-based deciders for the Ivanov-Petrova and Stanilov conditions,
//! and scripted reproductions of the published claims.
//!
//! A verdict means "the profile was constant over N random planes plus a
//! deterministic battery", not a proof. The battery always contains the
//! named witness planes known for the model family, so every published
//! counterexample is found regardless of the seed.

mod normalize;
mod reproduce;
mod theorems;

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{int, rat, Rational};
use crate::grassmann::{
    causal_index, causal_type, derive_seed, frame_of, random_frame_in, AdaptedBasis, Causal, PlaneFrame,
};
use crate::metrics::{MetricFamily, PolynomialMetric};
use crate::modelspace::{basis_vector, v3s_z, Family, ModelSpace};
use crate::spectral::{jordan_profile, power_ranks, skew_curv, theta, JordanProfile};

pub use normalize::{normalize_basis_3s, Normalization};
pub use reproduce::{
    reproduce, stated_g3s_curvature, sum_of_squares_big_f, ReproduceOptions, Reproduction, REPRODUCTIONS,
};
pub use theorems::{
    verify_theorem_1_4, verify_theorem_1_5_samples, IsometryIdentityReport, RiemannianBridgeReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    /// Skew-symmetric curvature operator on 2-planes.
    Ip,
    /// Higher order operator `Θ` on k-planes.
    Stanilov { k: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckSpec {
    pub kind: CheckKind,
    pub want: Causal,
}

impl CheckSpec {
    pub fn ip(want: Causal) -> Self {
        CheckSpec {
            kind: CheckKind::Ip,
            want,
        }
    }

    pub fn stanilov(k: usize, want: Causal) -> Self {
        CheckSpec {
            kind: CheckKind::Stanilov { k },
            want,
        }
    }

    pub fn k(&self) -> usize {
        match self.kind {
            CheckKind::Ip => 2,
            CheckKind::Stanilov { k } => k,
        }
    }

    pub fn property(&self) -> String {
        match self.kind {
            CheckKind::Ip => format!("{}-Jordan-IP", self.want),
            CheckKind::Stanilov { k } => format!("k={k} {}-Jordan-Stanilov", self.want),
        }
    }
}

/// What is compared between planes. For the skew operator: the rank
/// sequence of `R(x₁,x₂)` (which equals that of `𝓡(π)`) and the profile of
/// `𝓡(π)²`. For `Θ`: its own profile, whose rank sequence is repeated in
/// `power_ranks`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaneProfile {
    pub power_ranks: Vec<usize>,
    pub operator: JordanProfile,
    pub squared: bool,
}

impl Serialize for PlaneProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PlaneProfile", 6)?;
        st.serialize_field("power_ranks", &self.power_ranks)?;
        st.serialize_field("operator", if self.squared { "R(pi)^2" } else { "Theta(pi)" })?;
        let op = serde_json::to_value(&self.operator).map_err(serde::ser::Error::custom)?;
        st.serialize_field("charpoly", &op["charpoly"])?;
        st.serialize_field("operator_power_ranks", &op["power_ranks"])?;
        st.serialize_field("eigen_ranks", &op["eigen_ranks"])?;
        st.serialize_field("square_eigen_ranks", &op["square_eigen_ranks"])?;
        st.end()
    }
}

pub fn plane_profile(m: &ModelSpace, fr: &PlaneFrame, kind: CheckKind) -> Result<PlaneProfile> {
    match kind {
        CheckKind::Ip => {
            let ops = skew_curv(m, fr)?;
            let sq = ops.normalized_square.expect("2-frames carry the square");
            Ok(PlaneProfile {
                power_ranks: power_ranks(&ops.raw),
                operator: jordan_profile(&sq)?,
                squared: true,
            })
        }
        CheckKind::Stanilov { .. } => {
            let p = jordan_profile(&theta(m, fr)?)?;
            Ok(PlaneProfile {
                power_ranks: p.power_ranks.clone(),
                operator: p,
                squared: false,
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledFrame {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub frame: PlaneFrame,
}

impl LabeledFrame {
    fn named(label: impl Into<String>, frame: PlaneFrame) -> Self {
        LabeledFrame {
            label: Some(label.into()),
            frame,
        }
    }
}

fn windows(vectors: &[Vec<Rational>], k: usize) -> Vec<Vec<Vec<Rational>>> {
    let n = vectors.len();
    if k > n {
        return Vec::new();
    }
    let starts = if k == n { 1 } else { n };
    (0..starts)
        .map(|s| (0..k).map(|j| vectors[(s + j) % n].clone()).collect())
        .collect()
}

/// Named planes of the `V_{3s}` family: the `Z⁺` frames; the timelike pairs
/// `π₁ = (T₁,…)`, `π₂ = (…,Z₁⁻,Z₂⁻)` that separate ranks for `k < 2s`; and
/// the maximal timelike frame `(T₁..T_s, Z₁⁻..Z_s⁻)`.
pub fn v3s_witnesses(s: usize, k: usize, want: Causal) -> Vec<LabeledFrame> {
    let n = 3 * s;
    let t = |i: usize| basis_vector(n, s + i);
    let zm = |i: usize| v3s_z(s, i, false);
    let mut out = Vec::new();
    match want {
        Causal::Spacelike => {
            let zp: Vec<_> = (0..s).map(|i| v3s_z(s, i, true)).collect();
            for (i, w) in windows(&zp, k).into_iter().enumerate() {
                out.push(LabeledFrame::named(format!("Z+ window {i}"), frame_of(w)));
            }
        }
        Causal::Timelike if k == 2 * s => {
            let mut v: Vec<_> = (0..s).map(t).collect();
            v.extend((0..s).map(zm));
            out.push(LabeledFrame::named("T1..Ts,Z1-..Zs-", frame_of(v)));
        }
        Causal::Timelike if (2..2 * s).contains(&k) => {
            let (p1, p2) = witness_pair(s, k);
            out.push(LabeledFrame::named("pi1", p1));
            out.push(LabeledFrame::named("pi2", p2));
        }
        Causal::Timelike => {}
    }
    out
}

/// The timelike k-planes `π₁`, `π₂` of `V_{3s}` for `2 ≤ k < 2s`.
pub fn witness_pair(s: usize, k: usize) -> (PlaneFrame, PlaneFrame) {
    assert!((2..2 * s).contains(&k));
    let n = 3 * s;
    let t = |i: usize| basis_vector(n, s + i);
    let zm = |i: usize| v3s_z(s, i, false);
    let collect = |nt: usize, nz: usize| {
        let mut v: Vec<_> = (0..nt).map(t).collect();
        v.extend((0..nz).map(zm));
        frame_of(v)
    };
    if k <= s {
        (collect(k, 0), collect(k - 2, 2))
    } else {
        (collect(s, k - s), collect(s - 1, k + 1 - s))
    }
}

/// Expected `(rank Θ(π₁), rank Θ(π₂))` for the pair above.
pub fn witness_pair_ranks(s: usize, k: usize) -> (usize, usize) {
    if k <= s + 1 {
        (0, 2)
    } else {
        (k - s, k + 1 - s)
    }
}

/// Graph-hypersurface planes spanned by `∂xᵢ + cᵢ∂yᵢ` over windows of
/// coordinate indices. `cᵢ = 1` gives spacelike planes; `cᵢ = −(k·g(∂xᵢ,∂xᵢ) + 1)`
/// timelike ones. Pairs of coordinate directions separate ranks 0 and 2
/// when the Hessian is degenerate.
fn hypersurface_witnesses(m: &ModelSpace, p: usize, k: usize, want: Causal) -> Vec<LabeledFrame> {
    let n = 2 * p;
    let dirs: Vec<Vec<Rational>> = (0..p)
        .map(|i| {
            let c = match want {
                Causal::Spacelike => int(1),
                Causal::Timelike => -(&m.metric()[(i, i)] * int(k as i64) + int(1)),
            };
            let mut v = basis_vector(n, i);
            v[p + i] = c;
            v
        })
        .collect();
    let mut out = Vec::new();
    if k == 2 {
        for i in 0..p {
            for j in i + 1..p {
                out.push(LabeledFrame::named(
                    format!("x{}x{} pair", i + 1, j + 1),
                    frame_of(vec![dirs[i].clone(), dirs[j].clone()]),
                ));
            }
        }
    } else {
        for (i, w) in windows(&dirs, k).into_iter().enumerate() {
            out.push(LabeledFrame::named(format!("coordinate window {i}"), frame_of(w)));
        }
    }
    out
}

/// Deterministic planes checked before any random sample: the family's
/// named witnesses followed by windows of the adapted basis. Only planes of
/// the requested causal type are kept.
pub fn battery(m: &ModelSpace, k: usize, want: Causal) -> Result<Vec<LabeledFrame>> {
    let mut out = match m.family() {
        Family::V3s { s } => v3s_witnesses(s, k, want),
        Family::Hypersurface { p } => hypersurface_witnesses(m, p, k, want),
        Family::Generic => Vec::new(),
    };
    let basis = AdaptedBasis::of(m.metric())?;
    for (i, w) in windows(basis.part(want), k).into_iter().enumerate() {
        out.push(LabeledFrame::named(format!("adapted window {i}"), frame_of(w)));
    }
    let mut kept = Vec::new();
    for f in out {
        if want.matches(causal_type(m, &f.frame)?) && !kept.iter().any(|g: &LabeledFrame| g.frame == f.frame)
        {
            kept.push(f);
        }
    }
    Ok(kept)
}

/// The battery followed by `n` random frames; the i-th random frame uses
/// the seed `derive_seed(seed, i)`.
pub fn sample_planes(
    m: &ModelSpace,
    k: usize,
    want: Causal,
    n: usize,
    seed: u64,
) -> Result<Vec<LabeledFrame>> {
    let index = causal_index(m, want);
    if k > index {
        return Err(Error::KTooLarge { k, index });
    }
    let mut out = battery(m, k, want)?;
    let basis = AdaptedBasis::of(m.metric())?;
    let random: Vec<PlaneFrame> = (0..n as u64)
        .into_par_iter()
        .map(|i| random_frame_in(&basis, m.metric(), k, want, derive_seed(seed, i)))
        .collect::<Result<_>>()?;
    out.extend(
        random
            .into_iter()
            .map(|frame| LabeledFrame { label: None, frame }),
    );
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub frame: PlaneFrame,
    pub profile: PlaneProfile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub property: String,
    pub holds: bool,
    /// Number of random planes; the battery is counted separately.
    pub samples: usize,
    pub battery: usize,
    pub seed: u64,
    pub distinct_profiles: usize,
    pub reference_profile: PlaneProfile,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
}

/// Profiles every sampled plane and compares against the first one (the
/// first battery plane, if any). On failure the witnesses are the reference
/// plane and the first plane whose profile differs.
pub fn check(m: &ModelSpace, spec: CheckSpec, n: usize, seed: u64) -> Result<Verdict> {
    check_with(m, spec, n, seed, Vec::new())
}

/// As [`check`], with extra planes placed ahead of the battery. Extra planes
/// of the wrong causal type are dropped.
pub fn check_with(
    m: &ModelSpace,
    spec: CheckSpec,
    n: usize,
    seed: u64,
    extra: Vec<LabeledFrame>,
) -> Result<Verdict> {
    let k = spec.k();
    if k < 2 {
        return Err(Error::KTooSmall(k));
    }
    let mut planes = Vec::new();
    for f in extra {
        if f.frame.k() == k && spec.want.matches(causal_type(m, &f.frame)?) {
            planes.push(f);
        }
    }
    planes.extend(sample_planes(m, k, spec.want, n, seed)?);
    let battery_len = planes.len() - n;
    let profiles: Vec<PlaneProfile> = planes
        .par_iter()
        .map(|f| plane_profile(m, &f.frame, spec.kind))
        .collect::<Result<_>>()?;
    let reference = profiles[0].clone();
    let distinct: BTreeSet<&PlaneProfile> = profiles.iter().collect();
    let differing = profiles.iter().position(|p| *p != reference);
    let witnesses = match differing {
        None => Vec::new(),
        Some(i) => [0, i]
            .into_iter()
            .map(|j| Witness {
                label: planes[j].label.clone(),
                frame: planes[j].frame.clone(),
                profile: profiles[j].clone(),
            })
            .collect(),
    };
    let notes = vec![format!(
        "sampled: {n} random planes plus a deterministic battery of {battery_len}; a holding verdict is not a proof"
    )];
    Ok(Verdict {
        property: spec.property(),
        holds: differing.is_none(),
        samples: n,
        battery: battery_len,
        seed,
        distinct_profiles: distinct.len(),
        reference_profile: reference,
        witnesses,
        notes,
    })
}

pub fn check_ip(m: &ModelSpace, want: Causal, n: usize, seed: u64) -> Result<Verdict> {
    check(m, CheckSpec::ip(want), n, seed)
}

pub fn check_stanilov(m: &ModelSpace, k: usize, want: Causal, n: usize, seed: u64) -> Result<Verdict> {
    check(m, CheckSpec::stanilov(k, want), n, seed)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointVerdict {
    #[serde(serialize_with = "crate::exact::ser_rationals")]
    pub point: Vec<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetricReport {
    pub property: String,
    /// The property held at every evaluated point.
    pub holds: bool,
    /// Informational only: whether the reference profiles agree across points.
    pub cross_point_constant: bool,
    pub seed: u64,
    pub points: Vec<PointVerdict>,
    pub notes: Vec<String>,
}

/// A random rational point; coordinates have numerators in `[-3, 3]` and
/// denominators in `[1, 3]`.
pub fn random_point(dim: usize, seed: u64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..dim)
        .map(|_| rat(rng.gen_range(-3..=3), rng.gen_range(1..=3)))
        .collect()
}

/// Named `V_{3s}` witness planes carried to coordinates by the normalizing
/// basis at `p`. Empty if the normalization does not reproduce `V_{3s}`.
fn pushed_v3s_witnesses(
    g: &PolynomialMetric,
    p: &[Rational],
    s: usize,
    spec: CheckSpec,
) -> Result<Vec<LabeledFrame>> {
    let norm = match normalize_basis_3s(g, p) {
        Ok(n) if n.check => n,
        Ok(_) | Err(Error::NormalizationFailed(_)) => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };
    v3s_witnesses(s, spec.k(), spec.want)
        .into_iter()
        .map(|f| {
            Ok(LabeledFrame {
                label: f.label,
                frame: f.frame.push_forward(&norm.basis)?,
            })
        })
        .collect()
}

const POINT_STREAM: u64 = 0x05EE_D0F9_01E7;

pub fn check_metric(
    g: &PolynomialMetric,
    spec: CheckSpec,
    points: usize,
    planes_per_point: usize,
    seed: u64,
) -> Result<MetricReport> {
    let mut out = Vec::with_capacity(points);
    for i in 0..points as u64 {
        let p = random_point(g.dim(), derive_seed(seed ^ POINT_STREAM, i));
        let model = match g.curvature_at(&p) {
            Ok(m) => m,
            Err(Error::DegenerateAtPoint) => {
                out.push(PointVerdict {
                    point: p,
                    verdict: None,
                    note: Some("metric degenerate at this point; skipped".into()),
                });
                continue;
            }
            Err(e) => return Err(e),
        };
        let extra = match g.family() {
            MetricFamily::ThreeS { s } => pushed_v3s_witnesses(g, &p, s, spec)?,
            _ => Vec::new(),
        };
        let verdict = check_with(&model, spec, planes_per_point, derive_seed(seed, i), extra)?;
        out.push(PointVerdict {
            point: p,
            verdict: Some(verdict),
            note: None,
        });
    }
    let verdicts: Vec<&Verdict> = out.iter().filter_map(|p| p.verdict.as_ref()).collect();
    let holds = !verdicts.is_empty() && verdicts.iter().all(|v| v.holds);
    let cross_point_constant = verdicts
        .windows(2)
        .all(|w| w[0].reference_profile == w[1].reference_profile);
    let mut notes =
        vec!["cross-point comparison is informational; the profile may vary with the point".to_string()];
    if verdicts.len() < out.len() {
        notes.push(format!(
            "{} degenerate points skipped",
            out.len() - verdicts.len()
        ));
    }
    Ok(MetricReport {
        property: spec.property(),
        holds,
        cross_point_constant,
        seed,
        points: out,
        notes,
    })
}
