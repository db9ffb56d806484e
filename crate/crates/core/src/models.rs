//! Explicit Hamiltonian models: quadratic Hamiltonians
//! `H = π(λ₀|z₀|² + ⋯ + λ_n|z_n|²)` on `CP^n` and their products.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ladders::Decomposition;
use crate::rational::{self, serde_str, Rational};
use crate::rings::RingPresentation;
use crate::spectra::{self, AngleVector, CappedOrbit, IndexGap, MonotoneData, SpectraError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("a CP^n model needs at least two weights, got {0}")]
    TooFewWeights(usize),
    #[error("weights λ_{i} and λ_{j} are both {value}; fixed points would not be isolated")]
    RepeatedWeight { i: usize, j: usize, value: String },
    #[error("monotonicity constants differ ({0} vs {1})")]
    MonotonicityMismatch(String, String),
    #[error("a product needs at least one factor")]
    EmptyProduct,
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

/// `CP^n` with weights `λ₀, …, λ_n` (pairwise distinct).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CpnModel {
    lambdas: Vec<Rational>,
}

impl CpnModel {
    pub fn new(lambdas: Vec<Rational>) -> Result<Self, ModelError> {
        if lambdas.len() < 2 {
            return Err(ModelError::TooFewWeights(lambdas.len()));
        }
        for i in 0..lambdas.len() {
            for j in i + 1..lambdas.len() {
                if lambdas[i] == lambdas[j] {
                    return Err(ModelError::RepeatedWeight {
                        i,
                        j,
                        value: lambdas[i].to_string(),
                    });
                }
            }
        }
        Ok(CpnModel { lambdas })
    }

    pub fn lambdas(&self) -> &[Rational] {
        &self.lambdas
    }

    pub fn dim(&self) -> u32 {
        self.lambdas.len() as u32 - 1
    }

    /// `N = n + 1`, `λ₀ = 1`, `λ = 1/(n+1)`.
    pub fn monotone_data(&self) -> MonotoneData {
        let n1 = self.lambdas.len() as i64;
        MonotoneData::new(n1 as u32, rational::rat(1, n1)).expect("positive constants")
    }

    /// `Σλ_i/(n+1)`.
    pub fn expected_augmented_action(&self) -> Rational {
        let n1 = self.lambdas.len() as i64;
        self.lambdas.iter().sum::<Rational>() / rational::int(n1)
    }

    /// The coordinate points `x_j` with trivial capping.
    pub fn fixed_points(&self) -> Vec<FixedPoint> {
        (0..self.lambdas.len())
            .map(|j| {
                let angles = AngleVector(
                    self.lambdas
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != j)
                        .map(|(_, li)| &self.lambdas[j] - li)
                        .collect(),
                );
                FixedPoint::from_angles(format!("x{j}"), self.lambdas[j].clone(), angles)
            })
            .collect()
    }
}

/// A fixed point of a model, with its linearized rotation data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedPoint {
    pub orbit: CappedOrbit,
    pub angles: AngleVector,
}

impl FixedPoint {
    fn from_angles(id: String, action: Rational, angles: AngleVector) -> Self {
        let mean_index = spectra::mean_index_split(&angles);
        let cz = spectra::cz_index_split(&angles).ok();
        let weakly_nondegenerate = angles.weakly_nondegenerate();
        FixedPoint {
            orbit: CappedOrbit {
                id,
                capping: 0,
                action,
                mean_index,
                cz,
                weakly_nondegenerate,
            },
            angles,
        }
    }

    /// Gap between mean index and Conley–Zehnder index, when the latter exists.
    pub fn index_gap(&self) -> Option<IndexGap> {
        self.orbit
            .cz
            .map(|cz| spectra::index_gap(&self.orbit.mean_index, cz, self.angles.dim() as u32))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Model {
    Cpn(CpnModel),
    Product(Vec<Model>),
}

impl Model {
    pub fn cpn(lambdas: Vec<Rational>) -> Result<Self, ModelError> {
        Ok(Model::Cpn(CpnModel::new(lambdas)?))
    }

    /// Direct product; factors must share the monotonicity constant.
    pub fn product(factors: Vec<Model>) -> Result<Self, ModelError> {
        let first = factors.first().ok_or(ModelError::EmptyProduct)?;
        let lambda = first.monotone_data()?.lambda().clone();
        for f in &factors[1..] {
            let other = f.monotone_data()?.lambda().clone();
            if other != lambda {
                return Err(ModelError::MonotonicityMismatch(
                    lambda.to_string(),
                    other.to_string(),
                ));
            }
        }
        if factors.len() == 1 {
            return Ok(factors.into_iter().next().expect("one factor"));
        }
        Ok(Model::Product(factors))
    }

    pub fn dim(&self) -> u32 {
        match self {
            Model::Cpn(m) => m.dim(),
            Model::Product(fs) => fs.iter().map(Model::dim).sum(),
        }
    }

    pub fn monotone_data(&self) -> Result<MonotoneData, ModelError> {
        match self {
            Model::Cpn(m) => Ok(m.monotone_data()),
            Model::Product(fs) => {
                let mds: Vec<MonotoneData> =
                    fs.iter().map(Model::monotone_data).collect::<Result<_, _>>()?;
                let chern = mds.iter().map(|m| m.chern()).fold(0, |a, b| a.gcd(&b));
                Ok(MonotoneData::new(chern, mds[0].lambda().clone())?)
            }
        }
    }

    pub fn expected_augmented_action(&self) -> Rational {
        match self {
            Model::Cpn(m) => m.expected_augmented_action(),
            Model::Product(fs) => fs.iter().map(Model::expected_augmented_action).sum(),
        }
    }

    /// Fixed points; for products, all tuples of factor fixed points with
    /// ids joined by `,` and actions, indices and angles combined.
    pub fn fixed_points(&self) -> Vec<FixedPoint> {
        match self {
            Model::Cpn(m) => m.fixed_points(),
            Model::Product(fs) => {
                let mut acc: Vec<(Vec<String>, Rational, Vec<Rational>)> =
                    vec![(Vec::new(), Rational::from_integer(0.into()), Vec::new())];
                for f in fs {
                    let pts = f.fixed_points();
                    let mut next = Vec::with_capacity(acc.len() * pts.len());
                    for (ids, action, angles) in &acc {
                        for p in &pts {
                            let mut ids = ids.clone();
                            ids.push(p.orbit.id.clone());
                            let mut angles = angles.clone();
                            angles.extend(p.angles.0.iter().cloned());
                            next.push((ids, action + &p.orbit.action, angles));
                        }
                    }
                    acc = next;
                }
                acc.into_iter()
                    .map(|(ids, action, angles)| {
                        FixedPoint::from_angles(ids.join(","), action, AngleVector(angles))
                    })
                    .collect()
            }
        }
    }

    pub fn orbits(&self) -> Vec<CappedOrbit> {
        self.fixed_points().into_iter().map(|p| p.orbit).collect()
    }

    pub fn to_spec(&self) -> ModelSpec {
        match self {
            Model::Cpn(m) => ModelSpec::Cpn {
                lambdas: m.lambdas.clone(),
            },
            Model::Product(fs) => ModelSpec::Product {
                factors: fs.iter().map(Model::to_spec).collect(),
            },
        }
    }

    pub fn from_spec(spec: &ModelSpec) -> Result<Self, ModelError> {
        match spec {
            ModelSpec::Cpn { lambdas } => Model::cpn(lambdas.clone()),
            ModelSpec::Product { factors } => {
                Model::product(factors.iter().map(Model::from_spec).collect::<Result<_, _>>()?)
            }
        }
    }
}

/// JSON form: `{"kind":"cpn","lambdas":["0","1","3"]}` or
/// `{"kind":"product","factors":[…]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", try_from = "RawModelSpec")]
pub enum ModelSpec {
    Cpn {
        #[serde(with = "serde_str::vec")]
        lambdas: Vec<Rational>,
    },
    Product {
        factors: Vec<ModelSpec>,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModelSpec {
    kind: ModelKindTag,
    #[serde(default, with = "serde_str::opt_vec")]
    lambdas: Option<Vec<Rational>>,
    factors: Option<Vec<ModelSpec>>,
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum ModelKindTag {
    Cpn,
    Product,
}

impl TryFrom<RawModelSpec> for ModelSpec {
    type Error = String;

    fn try_from(r: RawModelSpec) -> Result<Self, String> {
        match (r.kind, r.lambdas, r.factors) {
            (ModelKindTag::Cpn, Some(lambdas), None) => Ok(ModelSpec::Cpn { lambdas }),
            (ModelKindTag::Product, None, Some(factors)) => Ok(ModelSpec::Product { factors }),
            (ModelKindTag::Cpn, _, Some(_)) => Err("field `factors` does not apply to kind `cpn`".into()),
            (ModelKindTag::Cpn, None, _) => Err("missing field `lambdas` for kind `cpn`".into()),
            (ModelKindTag::Product, Some(_), _) => Err("field `lambdas` does not apply to kind `product`".into()),
            (ModelKindTag::Product, None, None) => Err("missing field `factors` for kind `product`".into()),
        }
    }
}

pub fn cpn_fixed_points(model: &CpnModel) -> Vec<CappedOrbit> {
    model.fixed_points().into_iter().map(|p| p.orbit).collect()
}

pub fn product_model(models: Vec<Model>) -> Result<Model, ModelError> {
    Model::product(models)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AugmentedEntry {
    pub id: String,
    pub action: String,
    /// `(λ/2)·Δ`, the index side of `𝒜 − (λ/2)Δ`.
    pub index_term: String,
    pub augmented: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Deviation {
    pub x: String,
    pub y: String,
    pub x_value: String,
    pub y_value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AugmentedReport {
    pub equal: bool,
    /// Shared value when all entries agree.
    pub common: Option<String>,
    /// `Σλ_i/(n+1)` (summed over factors) when the table comes from a model.
    pub expected: Option<String>,
    pub matches_expected: Option<bool>,
    pub entries: Vec<AugmentedEntry>,
    pub deviation: Option<Deviation>,
}

/// Augmented actions of an arbitrary orbit table; the first pair that
/// disagrees is kept as a witness.
pub fn augmented_report(orbits: &[CappedOrbit], md: &MonotoneData) -> AugmentedReport {
    let values: Vec<Rational> = orbits
        .iter()
        .map(|o| spectra::augmented_action(o, md))
        .collect();
    let entries = orbits
        .iter()
        .zip(&values)
        .map(|(o, v)| AugmentedEntry {
            id: o.id.clone(),
            action: o.action.to_string(),
            index_term: (md.lambda() * &o.mean_index / rational::int(2)).to_string(),
            augmented: v.to_string(),
        })
        .collect();
    let deviation = values
        .iter()
        .position(|v| v != &values[0])
        .map(|i| Deviation {
            x: orbits[0].id.clone(),
            y: orbits[i].id.clone(),
            x_value: values[0].to_string(),
            y_value: values[i].to_string(),
        });
    AugmentedReport {
        equal: deviation.is_none(),
        common: if deviation.is_none() {
            values.first().map(|v| v.to_string())
        } else {
            None
        },
        expected: None,
        matches_expected: None,
        entries,
        deviation,
    }
}

pub fn verify_equal_augmented_actions(model: &Model) -> Result<AugmentedReport, ModelError> {
    let md = model.monotone_data()?;
    let mut report = augmented_report(&model.orbits(), &md);
    let expected = model.expected_augmented_action();
    report.matches_expected = Some(report.common.as_deref() == Some(expected.to_string().as_str()));
    report.expected = Some(expected.to_string());
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub pass: bool,
    pub ell: usize,
    /// Size of the largest set of fixed points sharing one augmented action.
    pub shared: usize,
    pub shared_value: Option<String>,
    pub equality: bool,
    pub reasons: Vec<String>,
    pub witness: Option<Deviation>,
}

/// Checks that at least `ℓ(dec)` fixed points share an augmented action, as
/// a decomposition of length `ℓ` predicts.
pub fn theorem_consistency_report(
    orbits: &[CappedOrbit],
    md: &MonotoneData,
    n: u32,
    ring: &RingPresentation,
    dec: &Decomposition,
) -> ConsistencyReport {
    let mut reasons = Vec::new();
    if ring.dim() != n {
        reasons.push(format!("ring has dimension {}, table has n = {n}", ring.dim()));
    }
    if ring.chern() != md.chern() {
        reasons.push(format!(
            "ring has N = {}, table has N = {}",
            ring.chern(),
            md.chern()
        ));
    }
    let mut groups: BTreeMap<Rational, Vec<&CappedOrbit>> = BTreeMap::new();
    for o in orbits {
        groups
            .entry(spectra::augmented_action(o, md))
            .or_default()
            .push(o);
    }
    let best = groups
        .iter()
        .max_by(|a, b| a.1.len().cmp(&b.1.len()).then(b.0.cmp(a.0)));
    let shared = best.map_or(0, |(_, v)| v.len());
    let ell = dec.ell();
    let witness = if groups.len() > 1 {
        let mut it = groups.iter();
        let (va, a) = it.next().expect("two groups");
        let (vb, b) = it.next().expect("two groups");
        Some(Deviation {
            x: a[0].id.clone(),
            y: b[0].id.clone(),
            x_value: va.to_string(),
            y_value: vb.to_string(),
        })
    } else {
        None
    };
    if shared < ell {
        reasons.push(format!(
            "only {shared} fixed points share an augmented action, fewer than ℓ = {ell}"
        ));
    }
    ConsistencyReport {
        pass: reasons.is_empty(),
        ell,
        shared,
        shared_value: best.map(|(v, _)| v.to_string()),
        equality: shared == ell,
        reasons,
        witness: if shared < ell { witness } else { None },
    }
}
