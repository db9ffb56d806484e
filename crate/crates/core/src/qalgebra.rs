//! Exact coefficients and graded classes with Laurent Novikov coefficients.
//!
//! A [`QuantumClass`] is a finite sum of terms `c · q^m · b` where `b` is a
//! basis label of the underlying ring, `q` is the Novikov variable and `c`
//! lives in the ground field (the rationals or a prime field). Degrees use the
//! cohomological convention: `|q^m · b| = |b| + 2N·m`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::Rational;
use crate::rings::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QAlgebraError {
    #[error("inverse of zero")]
    InverseOfZero,
    #[error("coefficients over different fields ({0} vs {1})")]
    FieldMismatch(Field, Field),
    #[error("classes from different rings ({0} vs {1})")]
    ContextMismatch(String, String),
    #[error("class is not homogeneous (term degrees {0} and {1})")]
    Inhomogeneous(i64, i64),
    #[error("the zero class has no degree")]
    ZeroClass,
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("denominator {0} vanishes modulo {1}")]
    DenominatorVanishes(String, u64),
}

/// Ground field of coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self, QAlgebraError> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(QAlgebraError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl std::str::FromStr for Field {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "Q" {
            return Ok(Field::Rationals);
        }
        let p = t
            .strip_prefix("Fp:")
            .ok_or_else(|| format!("unknown field `{s}` (expected `Q` or `Fp:<p>`)"))?;
        let p: u64 = p
            .parse()
            .map_err(|_| format!("unknown field `{s}` (expected `Q` or `Fp:<p>`)"))?;
        Field::prime(p).map_err(|e| e.to_string())
    }
}

impl Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A field element. Residues mod `p` are always kept in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Rational(Rational),
    Modular { residue: u64, modulus: u64 },
}

impl Coefficient {
    pub fn zero(field: Field) -> Self {
        Self::from_i64(field, 0)
    }

    pub fn one(field: Field) -> Self {
        Self::from_i64(field, 1)
    }

    pub fn from_i64(field: Field, n: i64) -> Self {
        match field {
            Field::Rationals => Coefficient::Rational(Rational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Coefficient::Modular {
                residue: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(field: Field, n: &BigInt) -> Self {
        match field {
            Field::Rationals => Coefficient::Rational(Rational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Coefficient::Modular {
                    residue: r.to_u64().expect("residue below modulus"),
                    modulus: p,
                }
            }
        }
    }

    pub fn from_rational(field: Field, r: &Rational) -> Result<Self, QAlgebraError> {
        match field {
            Field::Rationals => Ok(Coefficient::Rational(r.clone())),
            Field::Prime(p) => {
                let num = Self::from_bigint(field, r.numer());
                let den = Self::from_bigint(field, r.denom());
                if den.is_zero() {
                    return Err(QAlgebraError::DenominatorVanishes(r.denom().to_string(), p));
                }
                Ok(&num * &den.inv()?)
            }
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Coefficient::Rational(_) => Field::Rationals,
            Coefficient::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Rational(r) => r.is_zero(),
            Coefficient::Modular { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coefficient::Rational(r) => r.is_one(),
            Coefficient::Modular { residue, .. } => *residue == 1,
        }
    }

    /// `true` when the canonical rendering starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        matches!(self, Coefficient::Rational(r) if r.is_negative())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, QAlgebraError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Coefficient::Rational(a + b),
            (
                Coefficient::Modular { residue: a, modulus },
                Coefficient::Modular { residue: b, .. },
            ) => Coefficient::Modular {
                residue: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => unreachable!("fields checked"),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, QAlgebraError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Coefficient::Rational(a * b),
            (
                Coefficient::Modular { residue: a, modulus },
                Coefficient::Modular { residue: b, .. },
            ) => Coefficient::Modular {
                residue: ((*a as u128 * *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => unreachable!("fields checked"),
        })
    }

    pub fn negated(&self) -> Self {
        match self {
            Coefficient::Rational(a) => Coefficient::Rational(-a),
            Coefficient::Modular { residue, modulus } => Coefficient::Modular {
                residue: (modulus - residue) % modulus,
                modulus: *modulus,
            },
        }
    }

    pub fn inv(&self) -> Result<Self, QAlgebraError> {
        if self.is_zero() {
            return Err(QAlgebraError::InverseOfZero);
        }
        Ok(match self {
            Coefficient::Rational(a) => Coefficient::Rational(a.recip()),
            Coefficient::Modular { residue, modulus } => Coefficient::Modular {
                residue: pow_mod(*residue, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    fn same_field(&self, other: &Self) -> Result<(), QAlgebraError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(QAlgebraError::FieldMismatch(self.field(), other.field()))
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m as u128;
        }
        b = b * b % m as u128;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Rational(r) => write!(f, "{r}"),
            Coefficient::Modular { residue, .. } => write!(f, "{residue}"),
        }
    }
}

// Operator forms panic on mixed fields; use the `checked_*` methods when the
// operands may come from different rings.
impl Add for &Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        self.checked_add(rhs).expect("coefficient field mismatch")
    }
}

impl Sub for &Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        self.checked_add(&rhs.negated())
            .expect("coefficient field mismatch")
    }
}

impl Mul for &Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        self.checked_mul(rhs).expect("coefficient field mismatch")
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        self.negated()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffOp {
    Add,
    Mul,
    Neg,
    Inv,
}

/// Single entry point for field arithmetic; `b` is ignored for unary ops.
pub fn coeff_arith(
    a: &Coefficient,
    b: &Coefficient,
    op: CoeffOp,
) -> Result<Coefficient, QAlgebraError> {
    match op {
        CoeffOp::Add => a.checked_add(b),
        CoeffOp::Mul => a.checked_mul(b),
        CoeffOp::Neg => Ok(a.negated()),
        CoeffOp::Inv => a.inv(),
    }
}

/// Exponent of the Novikov generator `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NovikovPower(pub i64);

/// Additive basis label of a presented ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    /// `u^p` in a projective space.
    Power(u32),
    /// Schubert class `σ_λ` in a Grassmannian.
    Schubert(Partition),
    /// `a ⊗ b` in a product ring.
    Tensor(Box<BasisLabel>, Box<BasisLabel>),
}

impl BasisLabel {
    /// Cohomological degree of the ordinary class.
    pub fn degree(&self) -> i64 {
        match self {
            BasisLabel::Power(p) => 2 * *p as i64,
            BasisLabel::Schubert(l) => 2 * l.size() as i64,
            BasisLabel::Tensor(a, b) => a.degree() + b.degree(),
        }
    }

    pub fn tensor(a: BasisLabel, b: BasisLabel) -> Self {
        BasisLabel::Tensor(Box::new(a), Box::new(b))
    }

    pub fn is_unit(&self) -> bool {
        match self {
            BasisLabel::Power(0) => true,
            BasisLabel::Power(_) => false,
            BasisLabel::Schubert(l) => l.is_empty(),
            BasisLabel::Tensor(a, b) => a.is_unit() && b.is_unit(),
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Power(0) => write!(f, "1"),
            BasisLabel::Power(1) => write!(f, "u"),
            BasisLabel::Power(p) => write!(f, "u^{p}"),
            BasisLabel::Schubert(l) if l.is_empty() => write!(f, "1"),
            BasisLabel::Schubert(l) => write!(f, "s{l}"),
            BasisLabel::Tensor(a, b) => write!(f, "{a} ox {b}"),
        }
    }
}

/// A basis label twisted by a Novikov power; the key of a class's term map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub label: BasisLabel,
    pub q: NovikovPower,
}

impl Monomial {
    pub fn new(label: BasisLabel, q: i64) -> Self {
        Monomial {
            label,
            q: NovikovPower(q),
        }
    }

    pub fn degree(&self, chern: u32) -> i64 {
        self.label.degree() + 2 * chern as i64 * self.q.0
    }
}

/// Ring identity carried by every class so that mixing rings is caught.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassContext {
    pub field: Field,
    /// Minimal Chern number `N`.
    pub chern: u32,
    pub family: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumClass {
    ctx: Arc<ClassContext>,
    terms: BTreeMap<Monomial, Coefficient>,
}

impl QuantumClass {
    pub fn zero(ctx: Arc<ClassContext>) -> Self {
        QuantumClass {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(ctx: Arc<ClassContext>, label: BasisLabel, q: i64, c: Coefficient) -> Self {
        let mut out = Self::zero(ctx);
        out.add_term(Monomial::new(label, q), c);
        out
    }

    /// `1 · label` with no Novikov twist.
    pub fn basis(ctx: Arc<ClassContext>, label: BasisLabel) -> Self {
        let one = Coefficient::one(ctx.field);
        Self::monomial(ctx, label, 0, one)
    }

    pub fn context(&self) -> &Arc<ClassContext> {
        &self.ctx
    }

    pub fn field(&self) -> Field {
        self.ctx.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coefficient)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coefficient {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| Coefficient::zero(self.ctx.field))
    }

    /// Accumulates `c · m`, pruning the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_context(&self, other: &Self) -> Result<(), QAlgebraError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(QAlgebraError::ContextMismatch(
                describe(&self.ctx),
                describe(&other.ctx),
            ))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, QAlgebraError> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, QAlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        QuantumClass {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.negated()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Result<Self, QAlgebraError> {
        if c.field() != self.ctx.field {
            return Err(QAlgebraError::FieldMismatch(c.field(), self.ctx.field));
        }
        let mut out = Self::zero(self.ctx.clone());
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        Ok(out)
    }

    pub fn scale_int(&self, n: i64) -> Self {
        let c = Coefficient::from_i64(self.ctx.field, n);
        self.scale(&c).expect("same field by construction")
    }

    /// Multiplies by `q^m`.
    pub fn q_shift(&self, m: i64) -> Self {
        QuantumClass {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mono, c)| (Monomial::new(mono.label.clone(), mono.q.0 + m), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree().is_ok()
    }

    /// Common cohomological degree of all terms.
    pub fn degree(&self) -> Result<i64, QAlgebraError> {
        let mut degrees = self.terms.keys().map(|m| m.degree(self.ctx.chern));
        let first = degrees.next().ok_or(QAlgebraError::ZeroClass)?;
        for d in degrees {
            if d != first {
                return Err(QAlgebraError::Inhomogeneous(first, d));
            }
        }
        Ok(first)
    }

    /// The `q^0` part.
    pub fn classical_part(&self) -> Self {
        QuantumClass {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.q.0 == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

fn describe(ctx: &ClassContext) -> String {
    format!("{} over {}", ctx.family, ctx.field)
}

impl fmt::Display for QuantumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = if negative { c.negated() } else { c.clone() };
            let mut parts: Vec<String> = Vec::new();
            if !magnitude.is_one() {
                parts.push(magnitude.to_string());
            }
            match m.q.0 {
                0 => {}
                1 => parts.push("q".into()),
                e => parts.push(format!("q^{e}")),
            }
            parts.push(m.label.to_string());
            let body = parts.join("*");
            match (i, negative) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn ctx(field: Field, chern: u32) -> Arc<ClassContext> {
        Arc::new(ClassContext {
            field,
            chern,
            family: "test".into(),
        })
    }

    fn schubert(parts: &[u32]) -> BasisLabel {
        BasisLabel::Schubert(Partition::new(parts.to_vec()))
    }

    #[test]
    fn rational_sum() {
        let a = Coefficient::Rational(rat(1, 2));
        let b = Coefficient::Rational(rat(1, 3));
        let s = coeff_arith(&a, &b, CoeffOp::Add).unwrap();
        assert_eq!(s, Coefficient::Rational(rat(5, 6)));
    }

    #[test]
    fn characteristic_two_sum_vanishes() {
        let f2 = Field::prime(2).unwrap();
        let one = Coefficient::one(f2);
        assert!(coeff_arith(&one, &one, CoeffOp::Add).unwrap().is_zero());
    }

    #[test]
    fn inverse_mod_five() {
        let f5 = Field::prime(5).unwrap();
        let two = Coefficient::from_i64(f5, 2);
        let inv = coeff_arith(&two, &two, CoeffOp::Inv).unwrap();
        assert_eq!(inv, Coefficient::from_i64(f5, 3));
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        for field in [Field::Rationals, Field::prime(7).unwrap()] {
            let z = Coefficient::zero(field);
            assert_eq!(z.inv(), Err(QAlgebraError::InverseOfZero));
        }
    }

    #[test]
    fn residues_are_canonical() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(
            Coefficient::from_i64(f5, -1),
            Coefficient::Modular {
                residue: 4,
                modulus: 5
            }
        );
        let half = Coefficient::from_rational(f5, &rat(1, 2)).unwrap();
        assert_eq!(half, Coefficient::from_i64(f5, 3));
        assert!(Coefficient::from_rational(f5, &rat(1, 5)).is_err());
    }

    #[test]
    fn non_prime_modulus_rejected() {
        assert_eq!(Field::prime(4), Err(QAlgebraError::NotPrime(4)));
        assert_eq!("Fp:7".parse::<Field>().unwrap(), Field::Prime(7));
        assert!("Fp:9".parse::<Field>().is_err());
    }

    #[test]
    fn additive_identities_and_cancellation() {
        let c = ctx(Field::Rationals, 4);
        let u = QuantumClass::basis(c.clone(), schubert(&[1]));
        let zero = QuantumClass::zero(c.clone());
        assert_eq!(u.add(&zero).unwrap(), u);
        assert!(u.add(&u.neg()).unwrap().is_zero());

        let q1 = QuantumClass::monomial(
            c.clone(),
            schubert(&[]),
            1,
            Coefficient::one(Field::Rationals),
        );
        let a = QuantumClass::basis(c.clone(), schubert(&[2]))
            .add(&q1)
            .unwrap();
        let b = QuantumClass::basis(c.clone(), schubert(&[1, 1]))
            .sub(&q1)
            .unwrap();
        let expected = QuantumClass::basis(c.clone(), schubert(&[2]))
            .add(&QuantumClass::basis(c, schubert(&[1, 1])))
            .unwrap();
        assert_eq!(a.add(&b).unwrap(), expected);
    }

    #[test]
    fn mismatched_contexts_rejected() {
        let a = QuantumClass::basis(ctx(Field::Rationals, 3), BasisLabel::Power(1));
        let b = QuantumClass::basis(ctx(Field::Rationals, 2), BasisLabel::Power(1));
        assert!(matches!(
            a.add(&b),
            Err(QAlgebraError::ContextMismatch(_, _))
        ));
    }

    #[test]
    fn degrees_follow_cohomological_convention() {
        let cp2 = ctx(Field::Rationals, 3);
        let u = QuantumClass::basis(cp2.clone(), BasisLabel::Power(1));
        assert_eq!(u.degree().unwrap(), 2);
        let q = QuantumClass::basis(cp2.clone(), BasisLabel::Power(0)).q_shift(1);
        assert_eq!(q.degree().unwrap(), 6);

        let g24 = ctx(Field::Rationals, 4);
        let top = QuantumClass::basis(g24, schubert(&[2, 2])).q_shift(-1);
        assert_eq!(top.degree().unwrap(), 0);
    }

    #[test]
    fn degree_errors() {
        let c = ctx(Field::Rationals, 3);
        assert_eq!(
            QuantumClass::zero(c.clone()).degree(),
            Err(QAlgebraError::ZeroClass)
        );
        let mixed = QuantumClass::basis(c.clone(), BasisLabel::Power(1))
            .add(&QuantumClass::basis(c, BasisLabel::Power(2)))
            .unwrap();
        assert!(matches!(
            mixed.degree(),
            Err(QAlgebraError::Inhomogeneous(_, _))
        ));
    }

    #[test]
    fn q_shift_identity_and_inverse() {
        let cp1 = ctx(Field::Rationals, 2);
        let one = QuantumClass::basis(cp1.clone(), BasisLabel::Power(0));
        assert_eq!(one.q_shift(0), one);
        assert_eq!(one.q_shift(1).degree().unwrap(), 4);
        let u = QuantumClass::basis(cp1, BasisLabel::Power(1));
        assert_eq!(u.q_shift(3).q_shift(-3), u);
    }

    #[test]
    fn display_forms() {
        let c = ctx(Field::Rationals, 3);
        let q1 = QuantumClass::basis(c.clone(), BasisLabel::Power(0)).q_shift(1);
        assert_eq!(q1.to_string(), "q*1");
        let x = QuantumClass::basis(c.clone(), BasisLabel::Power(2))
            .scale_int(-2)
            .add(&QuantumClass::basis(c.clone(), BasisLabel::Power(1)).q_shift(-1))
            .unwrap();
        assert_eq!(x.to_string(), "q^-1*u - 2*u^2");
        assert_eq!(QuantumClass::zero(c).to_string(), "0");
    }
}
