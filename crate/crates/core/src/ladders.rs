//! Product decompositions `u₀ * u₁ * ⋯ * u_ℓ = q^ν u₀`, the ladders built
//! from them, and the power-matching parameters used when only a single
//! non-nilpotent class `u` is available.

use std::cmp::Reverse;
use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qalgebra::{BasisLabel, QAlgebraError, QuantumClass};
use crate::rational::{self, Rational};
use crate::rings::{RingError, RingPresentation, RingSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LadderError {
    #[error("u0 must be a nonzero homogeneous class: {0}")]
    BadBase(QAlgebraError),
    #[error("decomposition is not valid: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("degree chain is not strict at v_{i} (homological degree {left}) and v_{j} ({right})", j = .i + 1)]
    DegenerateChain { i: usize, left: i64, right: i64 },
    #[error("|u| = {degree} must satisfy 0 < |u| < 2n = {top}")]
    DegreeOutOfRange { degree: i64, top: i64 },
    #[error("u^{exponent} = 0 with exponent ≤ d = {d}; the power-matching hypothesis fails")]
    PowerVanishes { exponent: u32, d: u32, ell: u32 },
    #[error("{0}")]
    Pigeonhole(String),
    #[error("ν = {0} is not an integer for this pair; try the next admissible pair")]
    NonIntegralNu(String),
    #[error("s+ − s− − ℓ + 1 = {0} must be positive")]
    ShortGap(i64),
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub u0: QuantumClass,
    pub factors: Vec<QuantumClass>,
    pub nu: i64,
}

impl Decomposition {
    pub fn ell(&self) -> usize {
        self.factors.len()
    }

    pub fn to_spec(&self) -> DecompositionSpec {
        DecompositionSpec {
            u0: self.u0.to_string(),
            factors: self.factors.iter().map(|f| f.to_string()).collect(),
            nu: self.nu,
        }
    }

    pub fn from_spec(ring: &RingPresentation, spec: &DecompositionSpec) -> Result<Self, RingError> {
        Ok(Decomposition {
            u0: ring.parse_class(&spec.u0)?,
            factors: spec
                .factors
                .iter()
                .map(|f| ring.parse_class(f))
                .collect::<Result<_, _>>()?,
            nu: spec.nu,
        })
    }
}

/// JSON form: `{"u0":"s[1]","factors":["s[2]","s[2]"],"nu":1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionSpec {
    pub u0: String,
    pub factors: Vec<String>,
    pub nu: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub valid: bool,
    pub reasons: Vec<String>,
    pub ell: usize,
    pub product: String,
}

/// Checks the product identity, `ν > 0`, positivity of factor degrees and
/// `|u₁| + ⋯ + |u_{ℓ−1}| < 2N`, listing every failure.
pub fn verify_decomposition(
    ring: &RingPresentation,
    dec: &Decomposition,
) -> Result<VerificationReport, LadderError> {
    dec.u0.degree().map_err(LadderError::BadBase)?;
    let mut reasons = Vec::new();
    let two_n = 2 * ring.chern() as i64;

    if dec.factors.is_empty() {
        reasons.push("no factors given (ℓ must be at least 1)".to_string());
    }
    if dec.nu <= 0 {
        reasons.push(format!("ν = {} is not positive", dec.nu));
    }
    let mut degrees = Vec::with_capacity(dec.factors.len());
    for (i, f) in dec.factors.iter().enumerate() {
        match f.degree() {
            Ok(d) if d > 0 => degrees.push(d),
            Ok(d) => {
                reasons.push(format!("u_{} has degree {d}, not positive", i + 1));
                degrees.push(d);
            }
            Err(e) => {
                reasons.push(format!("u_{} has no degree: {e}", i + 1));
                degrees.push(0);
            }
        }
    }
    if !degrees.is_empty() {
        let inner: i64 = degrees[..degrees.len() - 1].iter().sum();
        if inner >= two_n {
            reasons.push(format!(
                "|u_1| + … + |u_(ℓ-1)| = {inner} is not below 2N = {two_n}"
            ));
        }
    }

    let mut product = dec.u0.clone();
    for f in &dec.factors {
        product = ring.quantum_product(&product, f)?;
    }
    let target = dec.u0.q_shift(dec.nu);
    if product != target {
        reasons.push(format!(
            "u_0 * … * u_ℓ = {product}, expected q^{} u_0 = {target}",
            dec.nu
        ));
    }
    Ok(VerificationReport {
        valid: reasons.is_empty(),
        reasons,
        ell: dec.factors.len(),
        product: product.to_string(),
    })
}

/// Every decomposition with `u₀` and factors drawn from the additive basis,
/// `ℓ ≤ ell_max`, `ν ≤ nu_max`, ordered by `ℓ` descending, then `ν`
/// ascending, then basis order of the labels.
pub fn search_decompositions(
    ring: &RingPresentation,
    ell_max: usize,
    nu_max: i64,
) -> Vec<Decomposition> {
    let basis = ring.full_basis();
    let rank: HashMap<BasisLabel, usize> = basis
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, l)| (l, i))
        .collect();
    let positive: Vec<BasisLabel> = basis.iter().filter(|l| l.degree() > 0).cloned().collect();
    let two_n = 2 * ring.chern() as i64;

    let mut found: Vec<(Vec<usize>, i64, Decomposition)> = basis
        .par_iter()
        .flat_map_iter(|u0_label| {
            let u0 = ring.class_of(u0_label.clone());
            let mut out = Vec::new();
            for nu in 1..=nu_max {
                let target = u0.q_shift(nu);
                let mut stack = Vec::new();
                extend(
                    ring, &positive, &target, nu * two_n, two_n, ell_max, u0.clone(), 0,
                    &mut stack, &mut out, nu,
                );
            }
            out.into_iter()
                .map(|(labels, nu)| {
                    let mut key = vec![rank[u0_label]];
                    key.extend(labels.iter().map(|l| rank[l]));
                    let dec = Decomposition {
                        u0: u0.clone(),
                        factors: labels.into_iter().map(|l| ring.class_of(l)).collect(),
                        nu,
                    };
                    (key, nu, dec)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    found.sort_by(|a, b| {
        (Reverse(a.2.ell()), a.1, &a.0).cmp(&(Reverse(b.2.ell()), b.1, &b.0))
    });
    found.into_iter().map(|(_, _, d)| d).collect()
}

#[allow(clippy::too_many_arguments)]
fn extend(
    ring: &RingPresentation,
    positive: &[BasisLabel],
    target: &QuantumClass,
    total: i64,
    two_n: i64,
    ell_max: usize,
    running: QuantumClass,
    used: i64,
    stack: &mut Vec<BasisLabel>,
    out: &mut Vec<(Vec<BasisLabel>, i64)>,
    nu: i64,
) {
    // Try closing the chain with a last factor of the remaining degree.
    let last = total - used;
    if stack.len() < ell_max && last > 0 {
        for label in positive.iter().filter(|l| l.degree() == last) {
            let p = ring
                .quantum_product(&running, &ring.class_of(label.clone()))
                .expect("basis labels of the same ring");
            if &p == target {
                let mut labels = stack.clone();
                labels.push(label.clone());
                out.push((labels, nu));
            }
        }
    }
    // Growing the chain keeps |u₁| + … + |u_{ℓ−1}| below 2N.
    if stack.len() + 1 >= ell_max {
        return;
    }
    for label in positive {
        let d = label.degree();
        if used + d >= two_n || used + d >= total {
            continue;
        }
        let next = ring
            .quantum_product(&running, &ring.class_of(label.clone()))
            .expect("basis labels of the same ring");
        if next.is_zero() {
            continue;
        }
        stack.push(label.clone());
        extend(
            ring, positive, target, total, two_n, ell_max, next, used + d, stack, out, nu,
        );
        stack.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LadderKind {
    Decomposition(Decomposition),
    /// Window of consecutive powers `u^{s−}, …, u^{s−+ℓ−1}`.
    PowerMatch {
        u: QuantumClass,
        s_minus: u32,
        s_plus: u32,
    },
}

/// One period `v₀, …, v_{ℓ−1}` of a `q^ν`-periodic ladder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ladder {
    ring: RingPresentation,
    window: Vec<QuantumClass>,
    homology_degrees: Vec<i64>,
    steps: Vec<QuantumClass>,
    nu: i64,
    kind: LadderKind,
}

impl Ladder {
    pub fn ring(&self) -> &RingPresentation {
        &self.ring
    }

    pub fn ell(&self) -> usize {
        self.window.len()
    }

    pub fn nu(&self) -> i64 {
        self.nu
    }

    pub fn window(&self) -> &[QuantumClass] {
        &self.window
    }

    /// Homological degrees `|v₀| > ⋯ > |v_{ℓ−1}|`.
    pub fn homology_degrees(&self) -> &[i64] {
        &self.homology_degrees
    }

    /// `w_j` with `v_j = v_{j−1} * w_j`, `j = 1, …, ℓ`.
    pub fn steps(&self) -> &[QuantumClass] {
        &self.steps
    }

    pub fn kind(&self) -> &LadderKind {
        &self.kind
    }

    /// `v_j = q^{ν·⌊j/ℓ⌋} v_{j mod ℓ}` for any integer `j`.
    pub fn ladder_class(&self, j: i64) -> QuantumClass {
        let ell = self.ell() as i64;
        let period = j.div_euclid(ell);
        self.window[j.rem_euclid(ell) as usize].q_shift(self.nu * period)
    }

    /// Homological degree of `v_j`.
    pub fn homology_degree(&self, j: i64) -> i64 {
        let ell = self.ell() as i64;
        self.homology_degrees[j.rem_euclid(ell) as usize]
            - 2 * self.ring.chern() as i64 * self.nu * j.div_euclid(ell)
    }

    pub fn to_artifact(&self) -> LadderArtifact {
        let source = match &self.kind {
            LadderKind::Decomposition(d) => LadderSource::Decomposition {
                decomposition: d.to_spec(),
            },
            LadderKind::PowerMatch {
                u,
                s_minus,
                s_plus,
            } => LadderSource::PowerMatch {
                u: u.to_string(),
                s_minus: *s_minus,
                s_plus: *s_plus,
            },
        };
        LadderArtifact {
            ring: self.ring.to_spec(),
            source,
            ell: Some(self.ell()),
            nu: Some(self.nu),
            window: self.window.iter().map(|v| v.to_string()).collect(),
            homology_degrees: self.homology_degrees.clone(),
        }
    }

    /// Rebuilds (and so re-verifies) a ladder from its stored recipe.
    pub fn from_artifact(
        artifact: &LadderArtifact,
        field_override: Option<crate::qalgebra::Field>,
    ) -> Result<Self, LadderError> {
        let ring = RingPresentation::from_spec(&artifact.ring, field_override)?;
        match &artifact.source {
            LadderSource::Decomposition { decomposition } => {
                let dec = Decomposition::from_spec(&ring, decomposition)?;
                build_ladder(&ring, &dec)
            }
            LadderSource::PowerMatch {
                u,
                s_minus,
                s_plus,
            } => {
                let u = ring.parse_class(u)?;
                case_ii_ladder(&ring, &u, *s_minus, *s_plus)
            }
        }
    }
}

/// Stored ladder: the ring plus the recipe it came from. The window and
/// degrees are informational and recomputed on load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderArtifact {
    pub ring: RingSpec,
    #[serde(flatten)]
    pub source: LadderSource,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub window: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub homology_degrees: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum LadderSource {
    Decomposition {
        decomposition: DecompositionSpec,
    },
    PowerMatch {
        u: String,
        s_minus: u32,
        s_plus: u32,
    },
}

fn degree_chain(ring: &RingPresentation, window: &[QuantumClass], nu: i64) -> Result<Vec<i64>, LadderError> {
    let mut hom = Vec::with_capacity(window.len());
    for v in window {
        let d = v.degree().map_err(LadderError::BadBase)?;
        hom.push(ring.convert_grading(d));
    }
    let two_n = 2 * ring.chern() as i64;
    for i in 0..hom.len() {
        let left = hom[i];
        let right = if i + 1 < hom.len() {
            hom[i + 1]
        } else {
            hom[0] - two_n * nu
        };
        if left <= right {
            return Err(LadderError::DegenerateChain { i, left, right });
        }
    }
    if let Some(&last) = hom.last() {
        if last <= hom[0] - two_n {
            return Err(LadderError::DegenerateChain {
                i: hom.len() - 1,
                left: last,
                right: hom[0] - two_n,
            });
        }
    }
    Ok(hom)
}

/// `v₀ = u₀`, `v_j = v_{j−1} * u_j`; checks
/// `|v₀| > |v₁| > ⋯ > |v_{ℓ−1}| > |v₀| − 2N` in homological degrees.
pub fn build_ladder(ring: &RingPresentation, dec: &Decomposition) -> Result<Ladder, LadderError> {
    let report = verify_decomposition(ring, dec)?;
    if !report.valid {
        return Err(LadderError::Invalid(report.reasons));
    }
    let mut window = vec![dec.u0.clone()];
    for f in &dec.factors[..dec.factors.len() - 1] {
        let next = ring.quantum_product(window.last().expect("nonempty"), f)?;
        window.push(next);
    }
    let homology_degrees = degree_chain(ring, &window, dec.nu)?;
    Ok(Ladder {
        ring: ring.clone(),
        window,
        homology_degrees,
        steps: dec.factors.clone(),
        nu: dec.nu,
        kind: LadderKind::Decomposition(dec.clone()),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseTwoParameters {
    /// Number of powers `u, …, u^d` fed to the pigeonhole.
    pub d: u32,
    /// `⌊2N/|u|⌋`.
    pub ell: u32,
    pub u_degree: i64,
    pub chern: u32,
    pub n_orbits: u32,
}

/// `d = ⌈2N·|P|/|u|⌉ + 1` and `ℓ = ⌊2N/|u|⌋` for cohomological `|u|`, after
/// checking that `u^r ≠ 0` for `r ≤ d`.
pub fn case_ii_parameters(
    ring: &RingPresentation,
    u: &QuantumClass,
    n_orbits: u32,
) -> Result<CaseTwoParameters, LadderError> {
    let degree = u.degree().map_err(LadderError::BadBase)?;
    let top = 2 * ring.dim() as i64;
    if degree <= 0 || degree >= top {
        return Err(LadderError::DegreeOutOfRange { degree, top });
    }
    if n_orbits == 0 {
        return Err(LadderError::Pigeonhole("the orbit count must be positive".into()));
    }
    let two_n = 2 * ring.chern() as i64;
    let d = (two_n * n_orbits as i64 + degree - 1) / degree + 1;
    let ell = two_n / degree;
    let mut p = ring.unit();
    for r in 1..=d as u32 {
        p = ring.quantum_product(&p, u)?;
        if p.is_zero() {
            return Err(LadderError::PowerVanishes {
                exponent: r,
                d: d as u32,
                ell: ell as u32,
            });
        }
    }
    Ok(CaseTwoParameters {
        d: d as u32,
        ell: ell as u32,
        u_degree: degree,
        chern: ring.chern(),
        n_orbits,
    })
}

/// All `(s−, s+)` (1-based) with equal ids and `(s+ − s−)|u| > 2N`, ordered
/// by `s−` then `s+`.
pub fn admissible_pairs(ids: &[String], params: &CaseTwoParameters) -> Vec<(u32, u32)> {
    let two_n = 2 * params.chern as i64;
    let mut out = Vec::new();
    for i in 0..ids.len() {
        for j in i + 1..ids.len() {
            if ids[i] == ids[j] && (j - i) as i64 * params.u_degree > two_n {
                out.push((i as u32 + 1, j as u32 + 1));
            }
        }
    }
    out
}

/// First admissible pair: smallest `s−`, then smallest `s+`.
pub fn pigeonhole_pair(ids: &[String], params: &CaseTwoParameters) -> Result<(u32, u32), LadderError> {
    if ids.len() != params.d as usize {
        return Err(LadderError::Pigeonhole(format!(
            "expected {} carrier ids (one per power u^1..u^d), got {}",
            params.d,
            ids.len()
        )));
    }
    admissible_pairs(ids, params).into_iter().next().ok_or_else(|| {
        let distinct: std::collections::BTreeSet<&String> = ids.iter().collect();
        LadderError::Pigeonhole(format!(
            "no two powers more than 2N/|u| apart share a carrier; {} distinct ids contradict |P| = {}",
            distinct.len(),
            params.n_orbits
        ))
    })
}

/// Window `u^{s−}, …, u^{s−+ℓ−1}` with `ν = (s+ − s−)|u|/2N`.
pub fn case_ii_ladder(
    ring: &RingPresentation,
    u: &QuantumClass,
    s_minus: u32,
    s_plus: u32,
) -> Result<Ladder, LadderError> {
    let degree = u.degree().map_err(LadderError::BadBase)?;
    let top = 2 * ring.dim() as i64;
    if degree <= 0 || degree >= top {
        return Err(LadderError::DegreeOutOfRange { degree, top });
    }
    if s_minus < 1 || s_plus <= s_minus {
        return Err(LadderError::Pigeonhole(format!(
            "need 1 ≤ s− < s+, got ({s_minus}, {s_plus})"
        )));
    }
    let two_n = 2 * ring.chern() as i64;
    let gap = (s_plus - s_minus) as i64;
    let nu: Rational = rational::rat(gap * degree, two_n);
    if !nu.is_integer() {
        return Err(LadderError::NonIntegralNu(nu.to_string()));
    }
    let nu = nu.to_integer().try_into().expect("small ν");
    let ell = two_n / degree;
    let tail = gap - ell + 1;
    if tail <= 0 {
        return Err(LadderError::ShortGap(tail));
    }
    let mut window = vec![ring.power(u, s_minus)?];
    for _ in 1..ell {
        let next = ring.quantum_product(window.last().expect("nonempty"), u)?;
        window.push(next);
    }
    if window.iter().any(|v| v.is_zero()) {
        return Err(LadderError::BadBase(QAlgebraError::ZeroClass));
    }
    let homology_degrees = degree_chain(ring, &window, nu)?;
    let mut steps = vec![u.clone(); ell as usize - 1];
    steps.push(ring.power(u, tail as u32)?);
    Ok(Ladder {
        ring: ring.clone(),
        window,
        homology_degrees,
        steps,
        nu,
        kind: LadderKind::PowerMatch {
            u: u.clone(),
            s_minus,
            s_plus,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::Field;
    use crate::rings::Partition;

    fn s(parts: &[u32]) -> BasisLabel {
        BasisLabel::Schubert(Partition::new(parts.to_vec()))
    }

    fn g24() -> RingPresentation {
        RingPresentation::grassmannian(2, 4, Field::Rationals).unwrap()
    }

    fn cp(n: u32) -> RingPresentation {
        RingPresentation::projective_space(n, Field::Rationals).unwrap()
    }

    fn cpn_dec(r: &RingPresentation) -> Decomposition {
        let u = r.first_chern_generator();
        Decomposition {
            u0: r.unit(),
            factors: vec![u; r.dim() as usize + 1],
            nu: 1,
        }
    }

    fn g24_dec(r: &RingPresentation) -> Decomposition {
        Decomposition {
            u0: r.class_of(s(&[1])),
            factors: vec![r.class_of(s(&[2])), r.class_of(s(&[2]))],
            nu: 1,
        }
    }

    #[test]
    fn verifies_known_decompositions() {
        let r = cp(3);
        let rep = verify_decomposition(&r, &cpn_dec(&r)).unwrap();
        assert!(rep.valid, "{:?}", rep.reasons);
        assert_eq!(rep.ell, 4);
        let g = g24();
        assert!(verify_decomposition(&g, &g24_dec(&g)).unwrap().valid);
    }

    #[test]
    fn rejects_short_product() {
        let r = cp(2);
        let dec = Decomposition {
            u0: r.unit(),
            factors: vec![r.first_chern_generator()],
            nu: 1,
        };
        let rep = verify_decomposition(&r, &dec).unwrap();
        assert!(!rep.valid);
        assert_eq!(rep.reasons.len(), 1);
    }

    #[test]
    fn zero_base_is_an_error() {
        let r = cp(2);
        let dec = Decomposition {
            u0: r.zero(),
            factors: vec![r.first_chern_generator()],
            nu: 1,
        };
        assert!(matches!(
            verify_decomposition(&r, &dec),
            Err(LadderError::BadBase(_))
        ));
    }

    #[test]
    fn cp1_search() {
        let r = cp(1);
        let found = search_decompositions(&r, 2, 1);
        assert!(found.iter().all(|d| d.ell() == 2));
        assert!(found.contains(&cpn_dec(&r)));
        assert!(search_decompositions(&r, 1, 1).is_empty());
    }

    #[test]
    fn ladders_and_periodicity() {
        let r = cp(2);
        let l = build_ladder(&r, &cpn_dec(&r)).unwrap();
        assert_eq!(l.homology_degrees(), &[4, 2, 0]);
        assert_eq!(l.homology_degree(3), -2);
        assert_eq!(l.ladder_class(3), r.unit().q_shift(1));
        assert_eq!(l.ladder_class(-1), l.window()[2].q_shift(-1));

        let g = g24();
        let l = build_ladder(&g, &g24_dec(&g)).unwrap();
        assert_eq!(l.homology_degrees(), &[6, 2]);
        assert_eq!(l.homology_degree(2), -2);
    }

    #[test]
    fn case_two_parameters() {
        let g = g24();
        let p = case_ii_parameters(&g, &g.first_chern_generator(), 6).unwrap();
        assert_eq!((p.d, p.ell), (25, 4));
        let f2 = RingPresentation::grassmannian(2, 4, Field::prime(2).unwrap()).unwrap();
        assert!(matches!(
            case_ii_parameters(&f2, &f2.first_chern_generator(), 6),
            Err(LadderError::PowerVanishes { exponent: 3, .. })
        ));
    }

    #[test]
    fn pigeonhole_rules() {
        let g = g24();
        let p = case_ii_parameters(&g, &g.first_chern_generator(), 6).unwrap();
        let same = vec!["x".to_string(); 25];
        assert_eq!(pigeonhole_pair(&same, &p).unwrap(), (1, 6));
        let cyc: Vec<String> = (0..25).map(|i| format!("x{}", i % 6)).collect();
        let (a, b) = pigeonhole_pair(&cyc, &p).unwrap();
        assert!(b - a >= 5);
        let distinct: Vec<String> = (0..25).map(|i| format!("x{i}")).collect();
        assert!(pigeonhole_pair(&distinct, &p).is_err());
    }

    #[test]
    fn power_ladders() {
        let g = g24();
        let u = g.first_chern_generator();
        assert!(matches!(
            case_ii_ladder(&g, &u, 1, 6),
            Err(LadderError::NonIntegralNu(_))
        ));
        let l = case_ii_ladder(&g, &u, 1, 9).unwrap();
        assert_eq!((l.ell(), l.nu()), (4, 2));
        let r = cp(2);
        let l = case_ii_ladder(&r, &r.first_chern_generator(), 1, 4).unwrap();
        assert_eq!(l.nu(), 1);
        assert_eq!(l.homology_degrees(), &[2, 0, -2]);
    }

    #[test]
    fn artifact_round_trip() {
        let g = g24();
        let l = build_ladder(&g, &g24_dec(&g)).unwrap();
        let json = serde_json::to_string(&l.to_artifact()).unwrap();
        let back: LadderArtifact = serde_json::from_str(&json).unwrap();
        assert_eq!(Ladder::from_artifact(&back, None).unwrap(), l);
    }
}
