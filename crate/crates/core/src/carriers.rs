//! Carrier assignments over finite orbit tables.
//!
//! The spectral invariants are never computed. Instead a carrier map sends
//! each ladder class `v_j` to a capped orbit subject to the constraints the
//! selector is known to satisfy: recapping equivariance
//! (`v_{j+ℓ} ↦ x̄_j # νA`), the index window `|v| − 2n ≤ Δ ≤ |v|`, and the
//! strict action ordering `c(v₀) > c(v₁) > ⋯ > c(v_ℓ) = c(v₀) − νλ₀`. The
//! counting argument and the negative-monotone obstruction are then run on
//! the finitely many maps that survive.

use std::collections::{BTreeMap, HashSet};

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ladders::{Ladder, LadderArtifact};
use crate::models::Model;
use crate::rational::{self, serde_str, Rational};
use crate::spectra::{self, MonotoneData, Monotonicity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CarrierError {
    #[error("orbit table is empty")]
    EmptyTable,
    #[error("orbit id `{0}` appears twice")]
    DuplicateId(String),
    #[error("no primes given")]
    NoPrimes,
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("primes must be strictly increasing ({0} then {1})")]
    NotIncreasing(u32, u32),
    #[error("no admissible carrier assignment at iterate k = {k}")]
    NoAdmissibleAssignment { k: u32 },
    #[error("orbit `{0}` is not in the stable image")]
    NotInImage(String),
    #[error("negative-monotone obstruction needs λ < 0, got λ = {0}")]
    NotNegativeMonotone(String),
    #[error("table does not match the ladder: {0}")]
    Mismatch(String),
    #[error("scenario is missing `{0}`")]
    Missing(&'static str),
}

/// One periodic orbit at its reference capping.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableOrbit {
    pub id: String,
    #[serde(with = "serde_str")]
    pub action: Rational,
    #[serde(rename = "delta", with = "serde_str")]
    pub mean_index: Rational,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub weakly_nondegenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitTable {
    pub monotone: MonotoneData,
    pub n: u32,
    pub orbits: Vec<TableOrbit>,
}

impl OrbitTable {
    pub fn new(monotone: MonotoneData, n: u32, orbits: Vec<TableOrbit>) -> Result<Self, CarrierError> {
        if orbits.is_empty() {
            return Err(CarrierError::EmptyTable);
        }
        let mut seen = HashSet::new();
        for o in &orbits {
            if !seen.insert(o.id.as_str()) {
                return Err(CarrierError::DuplicateId(o.id.clone()));
            }
        }
        Ok(OrbitTable {
            monotone,
            n,
            orbits,
        })
    }

    /// The fixed points of a model at trivial capping.
    pub fn from_model(model: &Model) -> Self {
        let orbits = model
            .orbits()
            .into_iter()
            .map(|o| TableOrbit {
                id: o.id,
                action: o.action,
                mean_index: o.mean_index,
                weakly_nondegenerate: o.weakly_nondegenerate,
            })
            .collect();
        OrbitTable::new(
            model.monotone_data().expect("model constants are valid"),
            model.dim(),
            orbits,
        )
        .expect("model fixed points have distinct ids")
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.orbits.iter().position(|o| o.id == id)
    }

    /// Action and mean index of `x̄^k # mA`: `kA − mλ₀` and `kΔ − 2Nm`.
    pub fn capped(&self, orbit: usize, k: u32, m: i64) -> (Rational, Rational) {
        let o = &self.orbits[orbit];
        let kk = rational::int(k as i64);
        let action = &o.action * &kk - self.monotone.lambda0() * rational::int(m);
        let delta = &o.mean_index * &kk - rational::int(2 * self.monotone.chern() as i64 * m);
        (action, delta)
    }

    pub fn augmented(&self, orbit: usize) -> Rational {
        let o = &self.orbits[orbit];
        spectra::augmented(&o.action, &o.mean_index, &self.monotone)
    }

    /// Checks `N`, `λ` and `n` against the ladder's ring.
    pub fn check_ladder(&self, ladder: &Ladder) -> Result<(), CarrierError> {
        let ring = ladder.ring();
        if ring.chern() != self.monotone.chern() {
            return Err(CarrierError::Mismatch(format!(
                "monotone.N = {} but the ladder ring has N = {}",
                self.monotone.chern(),
                ring.chern()
            )));
        }
        if &ring.monotonicity() != self.monotone.lambda() {
            return Err(CarrierError::Mismatch(format!(
                "monotone.lambda = {} but the ladder ring has λ = {}",
                self.monotone.lambda(),
                ring.monotonicity()
            )));
        }
        if ring.dim() != self.n {
            return Err(CarrierError::Mismatch(format!(
                "n = {} but the ladder ring has dimension {}",
                self.n,
                ring.dim()
            )));
        }
        Ok(())
    }
}

/// Carrier of one window class at iterate `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CarrierEntry {
    #[serde(skip)]
    pub orbit: usize,
    pub id: String,
    #[serde(rename = "m")]
    pub capping: i64,
    #[serde(with = "serde_str")]
    pub action: Rational,
    #[serde(rename = "delta", with = "serde_str")]
    pub mean_index: Rational,
}

/// Carriers of `v₀, …, v_{ℓ−1}` at one iterate; the rest of the ladder
/// follows by equivariance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CarrierAssignment {
    pub k: u32,
    pub entries: Vec<CarrierEntry>,
}

impl CarrierAssignment {
    /// `Φ`: the uncapped orbit ids on the window.
    pub fn phi(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.id.clone()).collect()
    }

    /// Carrier of `v_j` for any `j`: window entry recapped by `ν·⌊j/ℓ⌋`.
    pub fn at(&self, j: i64, nu: i64) -> (usize, i64) {
        let ell = self.entries.len() as i64;
        let e = &self.entries[j.rem_euclid(ell) as usize];
        (e.orbit, e.capping + nu * j.div_euclid(ell))
    }
}

fn window_candidates(table: &OrbitTable, k: u32, hom_degree: i64) -> Vec<CarrierEntry> {
    let n = table.n as i64;
    let two_n = 2 * table.monotone.chern() as i64;
    let mut out = Vec::new();
    for (idx, o) in table.orbits.iter().enumerate() {
        let kd = &o.mean_index * rational::int(k as i64);
        // hom − 2n ≤ kΔ − 2Nm ≤ hom  ⇔  (kΔ − hom)/2N ≤ m ≤ (kΔ − hom + 2n)/2N
        let lo = rational::ceil_i64(&((&kd - rational::int(hom_degree)) / rational::int(two_n)));
        let hi = rational::floor_i64(&((&kd - rational::int(hom_degree - 2 * n)) / rational::int(two_n)));
        for m in lo..=hi {
            let (action, delta) = table.capped(idx, k, m);
            if spectra::in_window(&delta, hom_degree, table.n, o.weakly_nondegenerate) {
                out.push(CarrierEntry {
                    orbit: idx,
                    id: o.id.clone(),
                    capping: m,
                    action,
                    mean_index: delta,
                });
            }
        }
    }
    out
}

fn search(
    table: &OrbitTable,
    ladder: &Ladder,
    k: u32,
    limit: Option<usize>,
) -> Vec<CarrierAssignment> {
    let cands: Vec<Vec<CarrierEntry>> = ladder
        .homology_degrees()
        .iter()
        .map(|&d| window_candidates(table, k, d))
        .collect();
    let period = table.monotone.lambda0() * rational::int(ladder.nu());
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(cands.len());
    dfs(&cands, &period, &mut chosen, &mut out, limit, k);
    out
}

fn dfs(
    cands: &[Vec<CarrierEntry>],
    period: &Rational,
    chosen: &mut Vec<usize>,
    out: &mut Vec<CarrierAssignment>,
    limit: Option<usize>,
    k: u32,
) {
    if limit.is_some_and(|l| out.len() >= l) {
        return;
    }
    let j = chosen.len();
    if j == cands.len() {
        out.push(CarrierAssignment {
            k,
            entries: chosen
                .iter()
                .enumerate()
                .map(|(j, &c)| cands[j][c].clone())
                .collect(),
        });
        return;
    }
    for (ci, c) in cands[j].iter().enumerate() {
        if j > 0 {
            let first = &cands[0][chosen[0]].action;
            let prev = &cands[j - 1][chosen[j - 1]].action;
            // Strictly below the previous carrier, strictly above the
            // recapped first one.
            if !(&c.action < prev && c.action > first - period) {
                continue;
            }
        }
        chosen.push(ci);
        dfs(cands, period, chosen, out, limit, k);
        chosen.pop();
        if limit.is_some_and(|l| out.len() >= l) {
            return;
        }
    }
}

/// All carrier maps on the ladder window at iterate `k`, in lexicographic
/// order of `(table index, capping)` per class.
pub fn admissible_assignments(table: &OrbitTable, ladder: &Ladder, k: u32) -> Vec<CarrierAssignment> {
    if k == 0 {
        return Vec::new();
    }
    search(table, ladder, k, None)
}

/// The lexicographically least admissible assignment.
pub fn least_assignment(table: &OrbitTable, ladder: &Ladder, k: u32) -> Option<CarrierAssignment> {
    if k == 0 {
        return None;
    }
    search(table, ladder, k, Some(1)).into_iter().next()
}

/// Independent re-check of the three constraint families for one
/// assignment, over two full periods of the ladder.
pub fn check_assignment(
    table: &OrbitTable,
    ladder: &Ladder,
    a: &CarrierAssignment,
) -> Result<(), String> {
    let ell = ladder.ell() as i64;
    if a.entries.len() as i64 != ell {
        return Err(format!("{} entries for a window of {ell}", a.entries.len()));
    }
    let mut actions = Vec::new();
    for j in -ell..=2 * ell {
        let (orbit, m) = a.at(j, ladder.nu());
        let o = &table.orbits[orbit];
        let k = rational::int(a.k as i64);
        let action = &o.action * &k + table.monotone.i_omega() * rational::int(m);
        let delta = &o.mean_index * &k + rational::int(table.monotone.i_c1() * m);
        let hom = ladder.homology_degree(j);
        let hi = rational::int(hom);
        let lo = rational::int(hom - 2 * table.n as i64);
        let ok = if o.weakly_nondegenerate {
            lo < delta && delta < hi
        } else {
            lo <= delta && delta <= hi
        };
        if !ok {
            return Err(format!("v_{j}: Δ = {delta} outside the window for |v| = {hom}"));
        }
        actions.push((j, action));
    }
    for w in actions.windows(2) {
        if w[0].1 <= w[1].1 {
            return Err(format!(
                "action of v_{} ({}) is not above that of v_{} ({})",
                w[0].0, w[0].1, w[1].0, w[1].1
            ));
        }
    }
    Ok(())
}

fn validate_primes(primes: &[u32]) -> Result<(), CarrierError> {
    if primes.is_empty() {
        return Err(CarrierError::NoPrimes);
    }
    for &p in primes {
        if !is_prime(p) {
            return Err(CarrierError::NotPrime(p));
        }
    }
    for w in primes.windows(2) {
        if w[0] >= w[1] {
            return Err(CarrierError::NotIncreasing(w[0], w[1]));
        }
    }
    Ok(())
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// All primes up to `bound`.
pub fn primes_up_to(bound: u32) -> Vec<u32> {
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        out.push(p as u32);
        for m in (p * p..=n).step_by(p) {
            composite[m] = true;
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    #[serde(skip)]
    pub table: OrbitTable,
    pub ell: usize,
    pub nu: i64,
    pub homology_degrees: Vec<i64>,
    pub primes: Vec<u32>,
    /// Lexicographically least assignment per prime.
    pub assignments: Vec<CarrierAssignment>,
    /// Primes on which `Φ` equals [`StabilityReport::phi`].
    pub stable_primes: Vec<u32>,
    pub phi: Vec<String>,
    /// Number of distinct `Φ` seen across all primes.
    pub distinct_maps: usize,
}

impl StabilityReport {
    pub fn stable_assignments(&self) -> impl Iterator<Item = &CarrierAssignment> {
        self.assignments
            .iter()
            .filter(move |a| self.stable_primes.contains(&a.k))
    }

    /// Distinct orbit ids in the stable image, in window order.
    pub fn image(&self) -> Vec<String> {
        let mut seen = HashSet::new();
        self.phi
            .iter()
            .filter(|id| seen.insert(id.as_str()))
            .cloned()
            .collect()
    }
}

/// One assignment per prime, then the most frequent `Φ` (ties go to the
/// earliest) and the primes realizing it.
pub fn stable_subsequence(
    table: &OrbitTable,
    ladder: &Ladder,
    primes: &[u32],
) -> Result<StabilityReport, CarrierError> {
    validate_primes(primes)?;
    table.check_ladder(ladder)?;
    let found: Vec<(u32, Option<CarrierAssignment>)> = primes
        .par_iter()
        .map(|&k| (k, least_assignment(table, ladder, k)))
        .collect();
    let mut assignments = Vec::with_capacity(found.len());
    for (k, a) in found {
        assignments.push(a.ok_or(CarrierError::NoAdmissibleAssignment { k })?);
    }
    let mut counts: Vec<(Vec<String>, usize)> = Vec::new();
    for a in &assignments {
        let phi = a.phi();
        match counts.iter_mut().find(|(p, _)| *p == phi) {
            Some((_, c)) => *c += 1,
            None => counts.push((phi, 1)),
        }
    }
    let best = counts.iter().map(|(_, c)| *c).max().expect("at least one prime");
    let phi = counts
        .iter()
        .find(|(_, c)| *c == best)
        .map(|(p, _)| p.clone())
        .expect("maximum is attained");
    let stable_primes = assignments
        .iter()
        .filter(|a| a.phi() == phi)
        .map(|a| a.k)
        .collect();
    Ok(StabilityReport {
        table: table.clone(),
        ell: ladder.ell(),
        nu: ladder.nu(),
        homology_degrees: ladder.homology_degrees().to_vec(),
        primes: primes.to_vec(),
        assignments,
        stable_primes,
        phi,
        distinct_maps: counts.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub k: u32,
    /// Signed number of ladder steps from the carrier nearest `x̄^k` to the
    /// one nearest `ȳ^k`.
    pub steps: i64,
    /// `ℓ·k(A_x − A_y)/(νλ₀)`.
    #[serde(with = "serde_str")]
    pub by_action: Rational,
    /// `ℓ·k(Δ_x − Δ_y)/(2Nν)`.
    #[serde(with = "serde_str")]
    pub by_index: Rational,
    #[serde(with = "serde_str")]
    pub action_error: Rational,
    #[serde(with = "serde_str")]
    pub index_error: Rational,
    #[serde(with = "serde_str")]
    pub prediction_gap: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountingReport {
    pub x: String,
    pub y: String,
    pub verdict: Verdict,
    pub rows: Vec<CountRow>,
    /// Bound on `|steps − by_action|`: `2ℓ`.
    #[serde(with = "serde_str")]
    pub action_bound: Rational,
    /// Bound on `|steps − by_index|`: `2ℓ + ℓn/(Nν)`.
    #[serde(with = "serde_str")]
    pub index_bound: Rational,
    /// `ℓ·(1/2 + 1) + 2`, the coarser budget for `|by_action − by_index|`.
    #[serde(with = "serde_str")]
    pub nominal_gap_bound: Rational,
    /// Every row stays within `action_bound` and `index_bound`.
    pub bounded: bool,
    /// `(𝒜̃_x − 𝒜̃_y)/λ₀`; the two counts drift apart at `ℓ/ν` times this per
    /// unit of `k`.
    #[serde(with = "serde_str")]
    pub slope: Rational,
    /// Largest `|𝒜̃_x − 𝒜̃_y|` compatible with the bounds at the largest
    /// prime used.
    #[serde(with = "serde_str")]
    pub residual_bound: Rational,
}

fn nearest_step(a: &CarrierAssignment, orbit: usize, nu: i64) -> Option<i64> {
    let ell = a.entries.len() as i64;
    let mut best: Option<(i64, i64)> = None;
    for (j, e) in a.entries.iter().enumerate() {
        if e.orbit != orbit {
            continue;
        }
        let t0 = (-e.capping).div_euclid(nu);
        for t in [t0, t0 + 1] {
            let cap = (e.capping + t * nu).abs();
            let step = j as i64 + t * ell;
            let better = match best {
                None => true,
                Some((bc, bs)) => cap < bc || (cap == bc && step < bs),
            };
            if better {
                best = Some((cap, step));
            }
        }
    }
    best.map(|(_, s)| s)
}

/// Runs the orbit count between `x` and `y` on every stable prime, once by
/// action and once by mean index.
pub fn counting_check(report: &StabilityReport, x: &str, y: &str) -> Result<CountingReport, CarrierError> {
    let table = &report.table;
    let image = report.image();
    for id in [x, y] {
        if !image.iter().any(|i| i == id) {
            return Err(CarrierError::NotInImage(id.to_string()));
        }
    }
    let xi = table.index_of(x).expect("image ids come from the table");
    let yi = table.index_of(y).expect("image ids come from the table");
    let ell = rational::int(report.ell as i64);
    let nu = rational::int(report.nu);
    let lambda0 = table.monotone.lambda0();
    let chern = rational::int(table.monotone.chern() as i64);
    let action_bound = &ell * rational::int(2);
    let index_bound = &action_bound + &ell * rational::int(table.n as i64) / (&chern * &nu);
    let nominal_gap_bound = &ell * rational::rat(3, 2) + rational::int(2);

    let (ox, oy) = (&table.orbits[xi], &table.orbits[yi]);
    let mut rows = Vec::new();
    let mut bounded = true;
    for a in report.stable_assignments() {
        let k = rational::int(a.k as i64);
        let sx = nearest_step(a, xi, report.nu).expect("x is in the image");
        let sy = nearest_step(a, yi, report.nu).expect("y is in the image");
        let steps = sy - sx;
        let by_action = &ell * &k * (&ox.action - &oy.action) / (&nu * &lambda0);
        let by_index = &ell * &k * (&ox.mean_index - &oy.mean_index) / (rational::int(2) * &chern * &nu);
        let action_error = rational::int(steps) - &by_action;
        let index_error = rational::int(steps) - &by_index;
        if action_error.abs() > action_bound || index_error.abs() > index_bound {
            bounded = false;
        }
        rows.push(CountRow {
            k: a.k,
            steps,
            prediction_gap: &by_action - &by_index,
            by_action,
            by_index,
            action_error,
            index_error,
        });
    }
    let slope = (table.augmented(xi) - table.augmented(yi)) / &lambda0;
    let k_max = report.stable_primes.last().copied().unwrap_or(1);
    let residual_bound =
        (&action_bound + &index_bound) * &nu * lambda0.abs() / (&ell * rational::int(k_max as i64));
    Ok(CountingReport {
        x: x.to_string(),
        y: y.to_string(),
        verdict: if slope.is_zero() {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        rows,
        action_bound,
        index_bound,
        nominal_gap_bound,
        bounded,
        slope,
        residual_bound,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    NoAdmissibleAssignment { k: u32 },
    AugmentedMismatch {
        x: String,
        y: String,
        #[serde(with = "serde_str")]
        augmented_x: Rational,
        #[serde(with = "serde_str")]
        augmented_y: Rational,
        counts: Box<CountingReport>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum RelationVerdict {
    Consistent {
        phi: Vec<String>,
        stable_primes: Vec<u32>,
        /// Common augmented action of the image.
        #[serde(with = "serde_str")]
        augmented: Rational,
        /// Interval `|𝒜̃_x − 𝒜̃_y| ≤ residual` certified by the counts alone.
        #[serde(with = "serde_str")]
        residual_bound: Rational,
    },
    Contradiction { witness: Witness },
}

impl RelationVerdict {
    pub fn is_consistent(&self) -> bool {
        matches!(self, RelationVerdict::Consistent { .. })
    }
}

/// Stabilizes the carrier image and requires equal augmented actions on it.
pub fn relation_verdict(
    table: &OrbitTable,
    ladder: &Ladder,
    primes: &[u32],
) -> Result<RelationVerdict, CarrierError> {
    let report = match stable_subsequence(table, ladder, primes) {
        Ok(r) => r,
        Err(CarrierError::NoAdmissibleAssignment { k }) => {
            return Ok(RelationVerdict::Contradiction {
                witness: Witness::NoAdmissibleAssignment { k },
            })
        }
        Err(e) => return Err(e),
    };
    let image = report.image();
    let mut residual = Rational::zero();
    for (i, x) in image.iter().enumerate() {
        for y in &image[i + 1..] {
            let counts = counting_check(&report, x, y)?;
            if counts.verdict == Verdict::Fail {
                let xi = table.index_of(x).expect("image id");
                let yi = table.index_of(y).expect("image id");
                return Ok(RelationVerdict::Contradiction {
                    witness: Witness::AugmentedMismatch {
                        x: x.clone(),
                        y: y.clone(),
                        augmented_x: table.augmented(xi),
                        augmented_y: table.augmented(yi),
                        counts: Box::new(counts),
                    },
                });
            }
            residual = residual.max(counts.residual_bound);
        }
    }
    let first = table.index_of(&image[0]).expect("image id");
    Ok(RelationVerdict::Consistent {
        phi: report.phi.clone(),
        stable_primes: report.stable_primes.clone(),
        augmented: table.augmented(first),
        residual_bound: residual,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum DistinctnessVerdict {
    /// `ν = 1`: carrier actions lie in an interval shorter than `λ₀`.
    DistinctByAction { ids: Vec<String> },
    /// `ν > 1`: Conley–Zehnder indices `|v_j| − n` lie within `2N`.
    DistinctByIndex { ids: Vec<String>, cz: Vec<i64> },
    /// The assignment repeats an orbit although the mechanism forbids it.
    Contradiction { ids: Vec<String>, repeated: String },
    /// `ν > 1` without non-degeneracy.
    Inconclusive { reason: String },
}

pub fn distinctness_check(
    ladder: &Ladder,
    assignment: &CarrierAssignment,
    nondegenerate: bool,
) -> DistinctnessVerdict {
    let ids = assignment.phi();
    let repeated = {
        let mut seen = HashSet::new();
        ids.iter().find(|id| !seen.insert(id.as_str())).cloned()
    };
    if ladder.nu() > 1 && !nondegenerate {
        return DistinctnessVerdict::Inconclusive {
            reason: "ν > 1 requires a non-degenerate map to separate carriers by index".into(),
        };
    }
    if let Some(r) = repeated {
        return DistinctnessVerdict::Contradiction { ids, repeated: r };
    }
    if ladder.nu() == 1 {
        DistinctnessVerdict::DistinctByAction { ids }
    } else {
        let n = ladder.ring().dim() as i64;
        let cz = ladder.homology_degrees().iter().map(|d| d - n).collect();
        DistinctnessVerdict::DistinctByIndex { ids, cz }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionStep {
    pub k: u32,
    pub l: u32,
    pub r: u32,
    pub nu: i64,
    /// `ν_i · I_ω(A)`.
    #[serde(with = "serde_str")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ObstructionVerdict {
    FiniteOrbitContradiction {
        orbit: String,
        k1: u32,
        #[serde(with = "serde_str")]
        delta_k1: Rational,
        #[serde(with = "serde_str")]
        bound: Rational,
        witness: ObstructionStep,
        steps: Vec<ObstructionStep>,
    },
    /// No capped orbit of the table fits the window of `[M]` at iterate `k`,
    /// so the table cannot list every periodic orbit.
    MissingCarrier { k: u32 },
    NoObstruction {
        reason: NoObstructionReason,
        orbit: Option<String>,
        steps: Vec<ObstructionStep>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NoObstructionReason {
    /// The stable carrier has `Δ = 0` at `k₁`; that branch is not modeled.
    DegenerateBranch,
    /// The primes given never push `ν_i·I_ω(A)` past the bound.
    BoundNotExceeded,
}

fn fundamental_carrier(table: &OrbitTable, k: u32) -> Option<CarrierEntry> {
    let mut c = window_candidates(table, k, 2 * table.n as i64);
    c.sort_by(|a, b| {
        (&a.mean_index, a.orbit, a.capping).cmp(&(&b.mean_index, b.orbit, b.capping))
    });
    c.into_iter().next()
}

/// Carrier of `[M]` along prime iterates of a negative monotone map.
///
/// With `k_i = l_i k₁ + r_i` and `x̄_{k_i} = x̄_{k₁}^{l_i} # ν_i A`,
/// sub-additivity gives `ν_i·I_ω(A) ≤ C + k₁|𝒜(x)|`, where `C` bounds the
/// carrier actions at iterates below `k₁`. When `Δ(x̄_{k₁}) > 0` the index
/// window forces `ν_i → ∞`, and since `I_ω(A) > 0` the bound breaks.
pub fn neg_monotone_obstruction(table: &OrbitTable, primes: &[u32]) -> Result<ObstructionVerdict, CarrierError> {
    if table.monotone.sign() != Monotonicity::NegativeMonotone {
        return Err(CarrierError::NotNegativeMonotone(table.monotone.lambda().to_string()));
    }
    validate_primes(primes)?;
    let carriers: Vec<Option<CarrierEntry>> = primes
        .par_iter()
        .map(|&k| fundamental_carrier(table, k))
        .collect();
    if let Some(pos) = carriers.iter().position(Option::is_none) {
        return Ok(ObstructionVerdict::MissingCarrier { k: primes[pos] });
    }
    let carriers: Vec<(u32, CarrierEntry)> = primes
        .iter()
        .copied()
        .zip(carriers.into_iter().map(|c| c.expect("checked")))
        .collect();

    let mut freq: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for (pos, (_, c)) in carriers.iter().enumerate() {
        freq.entry(c.orbit).or_insert((0, pos)).0 += 1;
    }
    let (&orbit, _) = freq
        .iter()
        .max_by(|a, b| a.1 .0.cmp(&b.1 .0).then(b.1 .1.cmp(&a.1 .1)))
        .expect("nonempty");
    let stable: Vec<&(u32, CarrierEntry)> = carriers.iter().filter(|(_, c)| c.orbit == orbit).collect();
    let id = table.orbits[orbit].id.clone();
    let (k1, first) = stable[0];
    let (k1, m1) = (*k1, first.capping);
    if first.mean_index.is_zero() {
        return Ok(ObstructionVerdict::NoObstruction {
            reason: NoObstructionReason::DegenerateBranch,
            orbit: Some(id),
            steps: Vec::new(),
        });
    }

    let mut c_bound = Rational::zero();
    for r in 1..k1 {
        for cand in window_candidates(table, r, 2 * table.n as i64) {
            c_bound = c_bound.max(cand.action);
        }
    }
    let bound = c_bound + rational::int(k1 as i64) * table.orbits[orbit].action.abs();
    let i_omega = table.monotone.i_omega();

    let mut steps = Vec::new();
    for (k, c) in &stable[1..] {
        let l = k / k1;
        let r = k % k1;
        let nu = c.capping - l as i64 * m1;
        let value = rational::int(nu) * &i_omega;
        let step = ObstructionStep {
            k: *k,
            l,
            r,
            nu,
            value: value.clone(),
        };
        steps.push(step.clone());
        if value > bound {
            return Ok(ObstructionVerdict::FiniteOrbitContradiction {
                orbit: id,
                k1,
                delta_k1: first.mean_index.clone(),
                bound,
                witness: step,
                steps,
            });
        }
    }
    Ok(ObstructionVerdict::NoObstruction {
        reason: NoObstructionReason::BoundNotExceeded,
        orbit: Some(id),
        steps,
    })
}

/// Where a scenario's ladder comes from: a path to a ladder artifact or the
/// artifact inline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LadderRef {
    Path(String),
    Inline(Box<LadderArtifact>),
}

/// Scenario file:
/// `{"monotone":{"N":3,"lambda":"1/3"},"orbits":[…],"ladder":"cp2.json","primes":[5,7,11]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub monotone: MonotoneData,
    /// Half-dimension; taken from the ladder ring when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    pub orbits: Vec<TableOrbit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ladder: Option<LadderRef>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub primes: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nondegenerate: Option<bool>,
}

impl Scenario {
    /// A scenario carrying only the table, as written by the model commands.
    pub fn from_table(table: &OrbitTable) -> Self {
        Scenario {
            monotone: table.monotone.clone(),
            n: Some(table.n),
            orbits: table.orbits.clone(),
            ladder: None,
            primes: Vec::new(),
            nondegenerate: None,
        }
    }

    /// The orbit table, with `n` falling back to `default_n`.
    pub fn table(&self, default_n: Option<u32>) -> Result<OrbitTable, CarrierError> {
        let n = self.n.or(default_n).ok_or(CarrierError::Missing("n"))?;
        OrbitTable::new(self.monotone.clone(), n, self.orbits.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ladders::{build_ladder, Decomposition};
    use crate::qalgebra::Field;
    use crate::rational::{int, rat};
    use crate::rings::RingPresentation;

    fn cpn_ladder(n: u32) -> Ladder {
        let r = RingPresentation::projective_space(n, Field::Rationals).unwrap();
        let u = r.first_chern_generator();
        let dec = Decomposition {
            u0: r.unit(),
            factors: vec![u; n as usize + 1],
            nu: 1,
        };
        build_ladder(&r, &dec).unwrap()
    }

    fn cp1_table() -> OrbitTable {
        OrbitTable::from_model(&Model::cpn(vec![int(0), rat(1, 101)]).unwrap())
    }

    #[test]
    fn cp1_single_assignment() {
        let t = cp1_table();
        let l = cpn_ladder(1);
        let all = admissible_assignments(&t, &l, 1);
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].phi(), vec!["x1", "x0"]);
        check_assignment(&t, &l, &all[0]).unwrap();
    }

    #[test]
    fn infeasible_window() {
        let md = MonotoneData::new(2, rat(1, 2)).unwrap();
        let t = OrbitTable::new(
            md,
            1,
            vec![TableOrbit {
                id: "x".into(),
                action: int(0),
                mean_index: int(0),
                weakly_nondegenerate: true,
            }],
        )
        .unwrap();
        assert!(admissible_assignments(&t, &cpn_ladder(1), 1).is_empty());
    }

    #[test]
    fn ties_give_several_carriers() {
        let md = MonotoneData::new(2, rat(1, 2)).unwrap();
        let orbit = |id: &str, a: Rational, d: i64| TableOrbit {
            id: id.into(),
            action: a,
            mean_index: int(d),
            weakly_nondegenerate: false,
        };
        let t = OrbitTable::new(
            md,
            1,
            vec![orbit("a", rat(1, 2), 1), orbit("b", int(0), -1), orbit("c", rat(1, 4), -1)],
        )
        .unwrap();
        let all = admissible_assignments(&t, &cpn_ladder(1), 1);
        assert_eq!(all.len(), 2, "{all:?}");
        assert_eq!(all[0].phi(), vec!["a", "b"]);
        assert_eq!(least_assignment(&t, &cpn_ladder(1), 1).unwrap(), all[0]);
    }

    #[test]
    fn model_tables_are_consistent() {
        let primes = primes_up_to(50);
        let v = relation_verdict(&cp1_table(), &cpn_ladder(1), &primes).unwrap();
        assert!(v.is_consistent(), "{v:?}");
        let cp2 = OrbitTable::from_model(
            &Model::cpn(vec![int(0), rat(1, 103), rat(3, 103)]).unwrap(),
        );
        let v = relation_verdict(&cp2, &cpn_ladder(2), &primes).unwrap();
        assert!(v.is_consistent(), "{v:?}");
    }

    #[test]
    fn perturbed_action_is_caught() {
        let mut t = OrbitTable::from_model(
            &Model::cpn(vec![int(0), rat(1, 103), rat(3, 103)]).unwrap(),
        );
        t.orbits[1].action += rat(1, 3);
        let v = relation_verdict(&t, &cpn_ladder(2), &primes_up_to(100)).unwrap();
        assert!(!v.is_consistent());
    }

    #[test]
    fn counting_on_consistent_table() {
        let t = cp1_table();
        let rep = stable_subsequence(&t, &cpn_ladder(1), &primes_up_to(50)).unwrap();
        let c = counting_check(&rep, "x1", "x0").unwrap();
        assert_eq!(c.verdict, Verdict::Pass);
        assert!(c.bounded);
        assert!(c.rows.iter().all(|r| r.prediction_gap.is_zero()));
        let same = counting_check(&rep, "x0", "x0").unwrap();
        assert!(same.rows.iter().all(|r| r.steps == 0));
    }

    #[test]
    fn negative_monotone() {
        let md = MonotoneData::new(1, int(-1)).unwrap();
        let t = OrbitTable::new(
            md.clone(),
            1,
            vec![TableOrbit {
                id: "x".into(),
                action: rat(1, 2),
                mean_index: rat(1, 3),
                weakly_nondegenerate: true,
            }],
        )
        .unwrap();
        let v = neg_monotone_obstruction(&t, &primes_up_to(200)).unwrap();
        assert!(matches!(v, ObstructionVerdict::FiniteOrbitContradiction { .. }), "{v:?}");

        let flat = OrbitTable::new(
            md,
            1,
            vec![TableOrbit {
                id: "x".into(),
                action: int(0),
                mean_index: int(0),
                weakly_nondegenerate: false,
            }],
        )
        .unwrap();
        let v = neg_monotone_obstruction(&flat, &primes_up_to(50)).unwrap();
        assert!(matches!(
            v,
            ObstructionVerdict::NoObstruction {
                reason: NoObstructionReason::DegenerateBranch,
                ..
            }
        ));
        assert!(neg_monotone_obstruction(&cp1_table(), &[2, 3]).is_err());
    }

    #[test]
    fn scenario_json() {
        let text = r#"{"monotone":{"N":2,"lambda":"1/2"},"orbits":[{"id":"x0","action":"0","delta":"-2/101"}],"primes":[2,3]}"#;
        let s: Scenario = serde_json::from_str(text).unwrap();
        assert_eq!(s.table(None).unwrap_err(), CarrierError::Missing("n"));
        let t = s.table(Some(1)).unwrap();
        assert_eq!(t.orbits[0].mean_index, rat(-2, 101));
        let back: Scenario = serde_json::from_str(&serde_json::to_string(&Scenario::from_table(&t)).unwrap()).unwrap();
        assert_eq!(back.table(None).unwrap(), t);
        assert!(serde_json::from_str::<Scenario>(&text.replace("\"primes\"", "\"primez\"")).is_err());
    }

    #[test]
    fn prime_validation() {
        let t = cp1_table();
        let l = cpn_ladder(1);
        assert_eq!(
            stable_subsequence(&t, &l, &[2, 4]).unwrap_err(),
            CarrierError::NotPrime(4)
        );
        assert_eq!(
            stable_subsequence(&t, &l, &[5, 3]).unwrap_err(),
            CarrierError::NotIncreasing(5, 3)
        );
    }
}
