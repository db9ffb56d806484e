//! Actions, mean indices and Conley–Zehnder indices of capped periodic
//! orbits, in π-units, with their recapping and iteration laws.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{self, serde_str, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectraError {
    #[error("monotonicity constant must be nonzero")]
    ZeroLambda,
    #[error("minimal Chern number must be positive")]
    ZeroChern,
    #[error("lambda0 = {given} disagrees with lambda·N = {expected}")]
    InconsistentLambda0 { given: String, expected: String },
    #[error("iteration order must be at least 1")]
    ZeroIteration,
    #[error("angle {0} is an integer: degenerate direction")]
    DegenerateDirection(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Monotonicity {
    Monotone,
    NegativeMonotone,
}

/// `[ω] = λ·c₁` on spheres, with generator `A` of `c₁(A) = N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneData {
    chern: u32,
    lambda: Rational,
}

impl MonotoneData {
    pub fn new(chern: u32, lambda: Rational) -> Result<Self, SpectraError> {
        if chern == 0 {
            return Err(SpectraError::ZeroChern);
        }
        if lambda.is_zero() {
            return Err(SpectraError::ZeroLambda);
        }
        Ok(MonotoneData { chern, lambda })
    }

    pub fn chern(&self) -> u32 {
        self.chern
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    /// Rationality constant `λ₀ = λ·N`.
    pub fn lambda0(&self) -> Rational {
        &self.lambda * rational::int(self.chern as i64)
    }

    pub fn sign(&self) -> Monotonicity {
        if self.lambda.is_positive() {
            Monotonicity::Monotone
        } else {
            Monotonicity::NegativeMonotone
        }
    }

    /// `I_ω(A) = −λ₀`.
    pub fn i_omega(&self) -> Rational {
        -self.lambda0()
    }

    /// `I_{c₁}(A) = −2N`.
    pub fn i_c1(&self) -> i64 {
        -2 * self.chern as i64
    }
}

#[derive(Serialize, Deserialize)]
struct MonotoneJson {
    #[serde(rename = "N")]
    chern: u32,
    #[serde(with = "serde_str")]
    lambda: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lambda0: Option<String>,
}

impl Serialize for MonotoneData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MonotoneJson {
            chern: self.chern,
            lambda: self.lambda.clone(),
            lambda0: Some(self.lambda0().to_string()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonotoneData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = MonotoneJson::deserialize(d)?;
        let md = MonotoneData::new(raw.chern, raw.lambda).map_err(D::Error::custom)?;
        if let Some(l0) = raw.lambda0 {
            let given = rational::parse_rational(&l0).map_err(D::Error::custom)?;
            if given != md.lambda0() {
                return Err(D::Error::custom(SpectraError::InconsistentLambda0 {
                    given: given.to_string(),
                    expected: md.lambda0().to_string(),
                }));
            }
        }
        Ok(md)
    }
}

/// A periodic orbit together with a capping, as
/// `{"id":"x0","m":0,"action":"1/2","delta":"-2","cz":null}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CappedOrbit {
    pub id: String,
    #[serde(rename = "m", default)]
    pub capping: i64,
    #[serde(with = "serde_str")]
    pub action: Rational,
    #[serde(rename = "delta", with = "serde_str")]
    pub mean_index: Rational,
    #[serde(default)]
    pub cz: Option<i64>,
    #[serde(default)]
    pub weakly_nondegenerate: bool,
}

impl CappedOrbit {
    pub fn new(id: impl Into<String>, action: Rational, mean_index: Rational) -> Self {
        CappedOrbit {
            id: id.into(),
            capping: 0,
            action,
            mean_index,
            cz: None,
            weakly_nondegenerate: false,
        }
    }
}

/// Attaches `m` copies of `A`: action `−mλ₀`, indices `−2Nm`.
pub fn recap(o: &CappedOrbit, m: i64, md: &MonotoneData) -> CappedOrbit {
    let shift = 2 * md.chern() as i64 * m;
    CappedOrbit {
        id: o.id.clone(),
        capping: o.capping + m,
        action: &o.action - md.lambda0() * rational::int(m),
        mean_index: &o.mean_index - rational::int(shift),
        cz: o.cz.map(|c| c - shift),
        weakly_nondegenerate: o.weakly_nondegenerate,
    }
}

/// `k`-th iterate: action, mean index and capping scale by `k`; the
/// Conley–Zehnder index is dropped since it is not homogeneous.
pub fn iterate(o: &CappedOrbit, k: u32) -> Result<CappedOrbit, SpectraError> {
    if k == 0 {
        return Err(SpectraError::ZeroIteration);
    }
    if k == 1 {
        return Ok(o.clone());
    }
    let kk = rational::int(k as i64);
    Ok(CappedOrbit {
        id: o.id.clone(),
        capping: o.capping * k as i64,
        action: &o.action * &kk,
        mean_index: &o.mean_index * &kk,
        cz: None,
        weakly_nondegenerate: o.weakly_nondegenerate,
    })
}

/// `𝒜̃ = 𝒜 − (λ/2)Δ`.
pub fn augmented_action(o: &CappedOrbit, md: &MonotoneData) -> Rational {
    augmented(&o.action, &o.mean_index, md)
}

pub fn augmented(action: &Rational, mean_index: &Rational, md: &MonotoneData) -> Rational {
    action - md.lambda() * mean_index / rational::int(2)
}

/// Rotation numbers of a split linear flow over one period.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AngleVector(#[serde(with = "serde_str::vec")] pub Vec<Rational>);

impl AngleVector {
    pub fn scaled(&self, k: i64) -> Self {
        let kk = rational::int(k);
        AngleVector(self.0.iter().map(|t| t * &kk).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Some direction rotates by a non-integer number of turns.
    pub fn weakly_nondegenerate(&self) -> bool {
        self.0.iter().any(|t| !t.is_integer())
    }

    pub fn nondegenerate(&self) -> bool {
        self.0.iter().all(|t| !t.is_integer())
    }
}

/// `Δ = 2·Σθ`.
pub fn mean_index_split(av: &AngleVector) -> Rational {
    av.0.iter().fold(Rational::zero(), |acc, t| acc + t) * rational::int(2)
}

/// `μ_CZ = Σ(2⌊θ⌋ + 1)`, defined when no `θ` is an integer.
pub fn cz_index_split(av: &AngleVector) -> Result<i64, SpectraError> {
    let mut total = 0;
    for t in &av.0 {
        if t.is_integer() {
            return Err(SpectraError::DegenerateDirection(t.to_string()));
        }
        total += 2 * rational::floor_i64(t) + 1;
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum IndexGap {
    /// `0 < |Δ − μ| < n`.
    Strict { gap: String },
    /// `Δ = μ`: the lower inequality collapses; reported, not rejected.
    Equality,
    /// `|Δ − μ| ≥ n`.
    Violation { gap: String },
}

pub fn index_gap(mean_index: &Rational, cz: i64, n: u32) -> IndexGap {
    let gap = (mean_index - rational::int(cz)).abs();
    if gap.is_zero() {
        IndexGap::Equality
    } else if gap < rational::int(n as i64) {
        IndexGap::Strict {
            gap: gap.to_string(),
        }
    } else {
        IndexGap::Violation {
            gap: gap.to_string(),
        }
    }
}

/// `|v| − 2n ≤ Δ ≤ |v|` for homological `|v|`, strict when the orbit is
/// weakly non-degenerate.
pub fn index_window_check(o: &CappedOrbit, class_degree_hom: i64, n: u32) -> bool {
    in_window(&o.mean_index, class_degree_hom, n, o.weakly_nondegenerate)
}

pub fn in_window(delta: &Rational, class_degree_hom: i64, n: u32, strict: bool) -> bool {
    let hi = rational::int(class_degree_hom);
    let lo = rational::int(class_degree_hom - 2 * n as i64);
    if strict {
        &lo < delta && delta < &hi
    } else {
        &lo <= delta && delta <= &hi
    }
}
