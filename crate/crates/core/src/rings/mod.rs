//! Presented quantum cohomology rings: `CP^n`, `G(k,N)` and monotone
//! products of these.
//!
//! Classes use the cohomological grading throughout (`|q| = 2N`);
//! [`RingPresentation::convert_grading`] gives the homological view.

mod literal;
pub mod lr;
pub mod partition;
pub mod pieri;
pub mod rim_hook;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use lr::littlewood_richardson;
pub use partition::Partition;
pub use rim_hook::{rim_hook_reduce, Reduced};

use crate::qalgebra::{BasisLabel, ClassContext, Coefficient, Field, Monomial, QAlgebraError, QuantumClass};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("invalid ring: {0}")]
    Invalid(String),
    #[error("monotonicity constants differ ({0} vs {1}); only monotone products are supported")]
    MonotonicityMismatch(String, String),
    #[error("class lives in {found}, expected {expected}")]
    RingMismatch { expected: String, found: String },
    #[error("`{label}` is not a basis label of {ring}")]
    UnknownLabel { label: String, ring: String },
    #[error("cannot parse class `{literal}`: {reason}")]
    Parse { literal: String, reason: String },
    #[error("Pieri degree {p} outside 1..={max}")]
    PieriRange { p: u32, max: u32 },
    #[error("partition {0} does not fit the Schubert box")]
    OutsideBox(Partition),
    #[error(transparent)]
    Algebra(#[from] QAlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingKind {
    ProjectiveSpace { n: u32 },
    Grassmannian { k: u32, n: u32 },
    Product(Box<RingPresentation>, Box<RingPresentation>),
}

/// One structure constant: `coefficient · q^q_power · label`.
pub type StructureTerm = (BasisLabel, i64, i64);

type ProductCache = RwLock<HashMap<(BasisLabel, BasisLabel), Arc<Vec<StructureTerm>>>>;

#[derive(Debug, Clone)]
pub struct RingPresentation {
    kind: RingKind,
    field: Field,
    line_area: Rational,
    ctx: Arc<ClassContext>,
    cache: Arc<ProductCache>,
}

impl PartialEq for RingPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.field == other.field && self.line_area == other.line_area
    }
}

impl Eq for RingPresentation {}

impl fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.ctx.family, self.field)
    }
}

impl RingPresentation {
    pub fn projective_space(n: u32, field: Field) -> Result<Self, RingError> {
        if n == 0 {
            return Err(RingError::Invalid("CP^n needs n ≥ 1".into()));
        }
        Ok(Self::build(
            RingKind::ProjectiveSpace { n },
            field,
            rational::one(),
            format!("CP^{n}"),
            n + 1,
        ))
    }

    pub fn grassmannian(k: u32, n: u32, field: Field) -> Result<Self, RingError> {
        if k == 0 || k >= n {
            return Err(RingError::Invalid(format!(
                "G(k,N) needs 0 < k < N, got G({k},{n})"
            )));
        }
        Ok(Self::build(
            RingKind::Grassmannian { k, n },
            field,
            rational::one(),
            format!("G({k},{n})"),
            n,
        ))
    }

    /// Monotone product via the quantum Künneth formula.
    pub fn kunneth(a: &RingPresentation, b: &RingPresentation) -> Result<Self, RingError> {
        if a.field != b.field {
            return Err(QAlgebraError::FieldMismatch(a.field, b.field).into());
        }
        let (la, lb) = (a.monotonicity(), b.monotonicity());
        if la != lb {
            return Err(RingError::MonotonicityMismatch(la.to_string(), lb.to_string()));
        }
        let chern = a.chern().gcd(&b.chern());
        let line_area = &la * rational::int(chern as i64);
        let family = format!("{} x {}", a.ctx.family, b.ctx.family);
        Ok(Self::build(
            RingKind::Product(Box::new(a.clone()), Box::new(b.clone())),
            a.field,
            line_area,
            family,
            chern,
        ))
    }

    fn build(kind: RingKind, field: Field, line_area: Rational, family: String, chern: u32) -> Self {
        RingPresentation {
            kind,
            field,
            line_area,
            ctx: Arc::new(ClassContext {
                field,
                chern,
                family,
            }),
            cache: Arc::new(RwLock::new(HashMap::new())),
        }
    }

    /// Sets the symplectic area of the generator of `π₂` (in π-units).
    /// Products derive theirs from the factors, so this only applies to
    /// projective spaces and Grassmannians.
    pub fn with_line_area(mut self, area: Rational) -> Result<Self, RingError> {
        if matches!(self.kind, RingKind::Product(..)) {
            return Err(RingError::Invalid(
                "a product inherits its area from its factors".into(),
            ));
        }
        if area.is_zero() {
            return Err(RingError::Invalid("line area must be nonzero".into()));
        }
        self.line_area = area;
        Ok(self)
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn context(&self) -> &Arc<ClassContext> {
        &self.ctx
    }

    pub fn family(&self) -> &str {
        &self.ctx.family
    }

    /// Complex dimension `n`.
    pub fn dim(&self) -> u32 {
        match &self.kind {
            RingKind::ProjectiveSpace { n } => *n,
            RingKind::Grassmannian { k, n } => k * (n - k),
            RingKind::Product(a, b) => a.dim() + b.dim(),
        }
    }

    /// Minimal Chern number `N`.
    pub fn chern(&self) -> u32 {
        self.ctx.chern
    }

    /// `ω(A)` for the generator `A` with `c₁(A) = N`.
    pub fn line_area(&self) -> &Rational {
        &self.line_area
    }

    /// Monotonicity constant `λ = ω(A)/N`.
    pub fn monotonicity(&self) -> Rational {
        &self.line_area / rational::int(self.chern() as i64)
    }

    /// Non-product factors, left to right.
    pub fn leaves(&self) -> Vec<&RingPresentation> {
        match &self.kind {
            RingKind::Product(a, b) => {
                let mut v = a.leaves();
                v.extend(b.leaves());
                v
            }
            _ => vec![self],
        }
    }

    /// `2n − deg`: cohomological to homological degree and back.
    pub fn convert_grading(&self, degree: i64) -> i64 {
        2 * self.dim() as i64 - degree
    }

    pub fn unit_label(&self) -> BasisLabel {
        match &self.kind {
            RingKind::ProjectiveSpace { .. } => BasisLabel::Power(0),
            RingKind::Grassmannian { .. } => BasisLabel::Schubert(Partition::empty()),
            RingKind::Product(a, b) => BasisLabel::tensor(a.unit_label(), b.unit_label()),
        }
    }

    pub fn unit(&self) -> QuantumClass {
        self.class_of(self.unit_label())
    }

    pub fn zero(&self) -> QuantumClass {
        QuantumClass::zero(self.ctx.clone())
    }

    /// `1 · label` in this ring.
    pub fn class_of(&self, label: BasisLabel) -> QuantumClass {
        QuantumClass::basis(self.ctx.clone(), label)
    }

    /// Basis labels of cohomological degree `degree`, in the fixed order.
    pub fn basis(&self, degree: i64) -> Vec<BasisLabel> {
        if degree < 0 || degree % 2 != 0 || degree > 2 * self.dim() as i64 {
            return Vec::new();
        }
        let half = (degree / 2) as u32;
        match &self.kind {
            RingKind::ProjectiveSpace { .. } => vec![BasisLabel::Power(half)],
            RingKind::Grassmannian { k, n } => Partition::in_box(half, *k as usize, n - k)
                .into_iter()
                .map(BasisLabel::Schubert)
                .collect(),
            RingKind::Product(a, b) => {
                let mut out = Vec::new();
                for da in (0..=degree).step_by(2) {
                    for la in a.basis(da) {
                        for lb in b.basis(degree - da) {
                            out.push(BasisLabel::tensor(la.clone(), lb));
                        }
                    }
                }
                out
            }
        }
    }

    /// The whole additive basis, by ascending degree.
    pub fn full_basis(&self) -> Vec<BasisLabel> {
        (0..=2 * self.dim() as i64)
            .step_by(2)
            .flat_map(|d| self.basis(d))
            .collect()
    }

    pub fn contains_label(&self, label: &BasisLabel) -> bool {
        match (&self.kind, label) {
            (RingKind::ProjectiveSpace { n }, BasisLabel::Power(p)) => p <= n,
            (RingKind::Grassmannian { k, n }, BasisLabel::Schubert(l)) => {
                l.fits_box(*k as usize, n - k)
            }
            (RingKind::Product(a, b), BasisLabel::Tensor(la, lb)) => {
                a.contains_label(la) && b.contains_label(lb)
            }
            _ => false,
        }
    }

    fn check_label(&self, label: &BasisLabel) -> Result<(), RingError> {
        if self.contains_label(label) {
            Ok(())
        } else {
            Err(RingError::UnknownLabel {
                label: label.to_string(),
                ring: self.to_string(),
            })
        }
    }

    fn check_class(&self, a: &QuantumClass) -> Result<(), RingError> {
        if a.context() != &self.ctx {
            return Err(RingError::RingMismatch {
                expected: self.to_string(),
                found: format!("{} over {}", a.context().family, a.context().field),
            });
        }
        for (m, _) in a.terms() {
            self.check_label(&m.label)?;
        }
        Ok(())
    }

    /// Integer structure constants of `a * b` for basis labels.
    pub fn basis_product(
        &self,
        a: &BasisLabel,
        b: &BasisLabel,
    ) -> Result<Arc<Vec<StructureTerm>>, RingError> {
        self.check_label(a)?;
        self.check_label(b)?;
        let key = if a <= b {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        };
        if let Some(hit) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(hit.clone());
        }
        let terms = Arc::new(self.compute_basis_product(&key.0, &key.1)?);
        self.cache
            .write()
            .expect("cache lock")
            .insert(key, terms.clone());
        Ok(terms)
    }

    fn compute_basis_product(
        &self,
        a: &BasisLabel,
        b: &BasisLabel,
    ) -> Result<Vec<StructureTerm>, RingError> {
        match (&self.kind, a, b) {
            (RingKind::ProjectiveSpace { n }, BasisLabel::Power(i), BasisLabel::Power(j)) => {
                let s = i + j;
                Ok(if s <= *n {
                    vec![(BasisLabel::Power(s), 0, 1)]
                } else {
                    vec![(BasisLabel::Power(s - n - 1), 1, 1)]
                })
            }
            (RingKind::Grassmannian { k, n }, BasisLabel::Schubert(l), BasisLabel::Schubert(m)) => {
                let mut acc: HashMap<(Partition, i64), i64> = HashMap::new();
                for (nu, c) in littlewood_richardson(l, m, *k as usize) {
                    if let Some(r) = rim_hook_reduce(&nu, *k as usize, *n as usize) {
                        *acc.entry((r.partition, r.q_power)).or_insert(0) += r.sign * c as i64;
                    }
                }
                let mut out: Vec<StructureTerm> = acc
                    .into_iter()
                    .filter(|(_, c)| *c != 0)
                    .map(|((p, q), c)| (BasisLabel::Schubert(p), q, c))
                    .collect();
                out.sort();
                Ok(out)
            }
            (RingKind::Product(ra, rb), BasisLabel::Tensor(a1, b1), BasisLabel::Tensor(a2, b2)) => {
                let n = self.chern() as i64;
                let sa = ra.chern() as i64 / n;
                let sb = rb.chern() as i64 / n;
                let left = ra.basis_product(a1, a2)?;
                let right = rb.basis_product(b1, b2)?;
                let mut out = Vec::with_capacity(left.len() * right.len());
                for (la, qa, ca) in left.iter() {
                    for (lb, qb, cb) in right.iter() {
                        out.push((
                            BasisLabel::tensor(la.clone(), lb.clone()),
                            qa * sa + qb * sb,
                            ca * cb,
                        ));
                    }
                }
                out.sort();
                Ok(out)
            }
            _ => Err(RingError::UnknownLabel {
                label: format!("{a} * {b}"),
                ring: self.to_string(),
            }),
        }
    }

    /// Bilinear extension of the basis products.
    pub fn quantum_product(&self, a: &QuantumClass, b: &QuantumClass) -> Result<QuantumClass, RingError> {
        self.check_class(a)?;
        self.check_class(b)?;
        let mut out = self.zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let cab = ca * cb;
                for (label, q, c) in self.basis_product(&ma.label, &mb.label)?.iter() {
                    let coeff = &cab * &Coefficient::from_i64(self.field, *c);
                    out.add_term(Monomial::new(label.clone(), ma.q.0 + mb.q.0 + q), coeff);
                }
            }
        }
        Ok(out)
    }

    /// `u^d`, with `u^0` the unit.
    pub fn power(&self, u: &QuantumClass, d: u32) -> Result<QuantumClass, RingError> {
        self.check_class(u)?;
        let mut acc = self.unit();
        let mut base = u.clone();
        let mut e = d;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.quantum_product(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.quantum_product(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Quantum Pieri `σ_λ * σ_p`, independent of the LR/rim-hook pipeline.
    pub fn quantum_pieri(&self, lambda: &Partition, p: u32) -> Result<QuantumClass, RingError> {
        let RingKind::Grassmannian { k, n } = self.kind else {
            return Err(RingError::Invalid(format!(
                "quantum Pieri needs a Grassmannian, got {self}"
            )));
        };
        if p < 1 || p > n - k {
            return Err(RingError::PieriRange { p, max: n - k });
        }
        if !lambda.fits_box(k as usize, n - k) {
            return Err(RingError::OutsideBox(lambda.clone()));
        }
        let mut out = self.zero();
        for (mu, q) in pieri::pieri_terms(lambda, p, k as usize, n as usize) {
            out.add_term(
                Monomial::new(BasisLabel::Schubert(mu), q),
                Coefficient::one(self.field),
            );
        }
        Ok(out)
    }

    /// The degree-2 generator `u`: `u`, `σ₁`, or the sum of the factors'.
    pub fn first_chern_generator(&self) -> QuantumClass {
        match &self.kind {
            RingKind::ProjectiveSpace { .. } => self.class_of(BasisLabel::Power(1)),
            RingKind::Grassmannian { .. } => {
                self.class_of(BasisLabel::Schubert(Partition::new(vec![1])))
            }
            RingKind::Product(a, b) => {
                let mut out = self.zero();
                for (m, c) in a.first_chern_generator().terms() {
                    out.add_term(
                        Monomial::new(BasisLabel::tensor(m.label.clone(), b.unit_label()), m.q.0),
                        c.clone(),
                    );
                }
                for (m, c) in b.first_chern_generator().terms() {
                    out.add_term(
                        Monomial::new(BasisLabel::tensor(a.unit_label(), m.label.clone()), m.q.0),
                        c.clone(),
                    );
                }
                out
            }
        }
    }

    pub fn to_spec(&self) -> RingSpec {
        let mut spec = self.to_spec_inner();
        match &mut spec {
            RingSpec::Cpn { field, .. }
            | RingSpec::Grassmannian { field, .. }
            | RingSpec::Product { field, .. } => *field = Some(self.field),
        }
        spec
    }

    fn to_spec_inner(&self) -> RingSpec {
        let area = if self.line_area == rational::one() {
            None
        } else {
            Some(self.line_area.to_string())
        };
        match &self.kind {
            RingKind::ProjectiveSpace { n } => RingSpec::Cpn {
                n: *n,
                field: None,
                area,
            },
            RingKind::Grassmannian { k, n } => RingSpec::Grassmannian {
                k: *k,
                big_n: *n,
                field: None,
                area,
            },
            RingKind::Product(a, b) => {
                // Left-nested products flatten back into one factor list.
                let mut factors = match a.to_spec_inner() {
                    RingSpec::Product { factors, .. } => factors,
                    other => vec![other],
                };
                factors.push(b.to_spec_inner());
                RingSpec::Product {
                    factors,
                    field: None,
                }
            }
        }
    }

    pub fn from_spec(spec: &RingSpec, field_override: Option<Field>) -> Result<Self, RingError> {
        Self::from_spec_inner(spec, field_override, None)
    }

    fn from_spec_inner(
        spec: &RingSpec,
        field_override: Option<Field>,
        inherited: Option<Field>,
    ) -> Result<Self, RingError> {
        let own = match spec {
            RingSpec::Cpn { field, .. }
            | RingSpec::Grassmannian { field, .. }
            | RingSpec::Product { field, .. } => *field,
        };
        let field = field_override
            .or(own)
            .or(inherited)
            .unwrap_or(Field::Rationals);
        let parse_area = |area: &Option<String>| -> Result<Option<Rational>, RingError> {
            area.as_deref()
                .map(|a| {
                    rational::parse_rational(a).map_err(|e| RingError::Invalid(format!("area: {e}")))
                })
                .transpose()
        };
        let ring = match spec {
            RingSpec::Cpn { n, area, .. } => {
                let r = Self::projective_space(*n, field)?;
                match parse_area(area)? {
                    Some(a) => r.with_line_area(a)?,
                    None => r,
                }
            }
            RingSpec::Grassmannian { k, big_n, area, .. } => {
                let r = Self::grassmannian(*k, *big_n, field)?;
                match parse_area(area)? {
                    Some(a) => r.with_line_area(a)?,
                    None => r,
                }
            }
            RingSpec::Product { factors, .. } => {
                if factors.len() < 2 {
                    return Err(RingError::Invalid("a product needs at least two factors".into()));
                }
                let mut acc = Self::from_spec_inner(&factors[0], Some(field), Some(field))?;
                for f in &factors[1..] {
                    let next = Self::from_spec_inner(f, Some(field), Some(field))?;
                    acc = Self::kunneth(&acc, &next)?;
                }
                acc
            }
        };
        Ok(ring)
    }
}

/// JSON form of a ring, e.g. `{"kind":"grassmannian","k":2,"N":4,"field":"Q"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", try_from = "RawRingSpec")]
pub enum RingSpec {
    Cpn {
        n: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        field: Option<Field>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        area: Option<String>,
    },
    Grassmannian {
        k: u32,
        #[serde(rename = "N")]
        big_n: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        field: Option<Field>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        area: Option<String>,
    },
    Product {
        factors: Vec<RingSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        field: Option<Field>,
    },
}

/// Flat form read first so that a bad value is reported under its own key.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRingSpec {
    kind: RingKindTag,
    n: Option<u32>,
    k: Option<u32>,
    #[serde(rename = "N")]
    big_n: Option<u32>,
    factors: Option<Vec<RingSpec>>,
    #[serde(default)]
    field: Option<Field>,
    #[serde(default)]
    area: Option<String>,
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum RingKindTag {
    Cpn,
    Grassmannian,
    Product,
}

impl TryFrom<RawRingSpec> for RingSpec {
    type Error = String;

    fn try_from(r: RawRingSpec) -> Result<Self, String> {
        let missing = |key: &str, kind: &str| format!("missing field `{key}` for kind `{kind}`");
        let stray = |key: &str, kind: &str| format!("field `{key}` does not apply to kind `{kind}`");
        match r.kind {
            RingKindTag::Cpn => {
                for (set, key) in [(r.k.is_some(), "k"), (r.big_n.is_some(), "N"), (r.factors.is_some(), "factors")] {
                    if set {
                        return Err(stray(key, "cpn"));
                    }
                }
                Ok(RingSpec::Cpn {
                    n: r.n.ok_or_else(|| missing("n", "cpn"))?,
                    field: r.field,
                    area: r.area,
                })
            }
            RingKindTag::Grassmannian => {
                for (set, key) in [(r.n.is_some(), "n"), (r.factors.is_some(), "factors")] {
                    if set {
                        return Err(stray(key, "grassmannian"));
                    }
                }
                Ok(RingSpec::Grassmannian {
                    k: r.k.ok_or_else(|| missing("k", "grassmannian"))?,
                    big_n: r.big_n.ok_or_else(|| missing("N", "grassmannian"))?,
                    field: r.field,
                    area: r.area,
                })
            }
            RingKindTag::Product => {
                for (set, key) in [
                    (r.n.is_some(), "n"),
                    (r.k.is_some(), "k"),
                    (r.big_n.is_some(), "N"),
                    (r.area.is_some(), "area"),
                ] {
                    if set {
                        return Err(stray(key, "product"));
                    }
                }
                Ok(RingSpec::Product {
                    factors: r.factors.ok_or_else(|| missing("factors", "product"))?,
                    field: r.field,
                })
            }
        }
    }
}
