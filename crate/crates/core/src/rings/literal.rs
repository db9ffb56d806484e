//! Class literals: `u^3`, `s[2,1]`, `q^2*s[1]`, `1/2*u ox s[1] - q*1`.
//!
//! A literal is a signed sum of terms. Each term is a `ox`-separated list of
//! factors, one per leaf ring; each factor is a `*`-separated list of numbers,
//! `q`/`q^m` and at most one basis label. A missing label means the unit.

use super::{Partition, RingError, RingKind, RingPresentation};
use crate::qalgebra::{BasisLabel, Coefficient, Monomial, QuantumClass};
use crate::rational::parse_rational;

impl RingPresentation {
    pub fn parse_class(&self, literal: &str) -> Result<QuantumClass, RingError> {
        let err = |reason: String| RingError::Parse {
            literal: literal.to_string(),
            reason,
        };
        let text = literal.trim();
        if text.is_empty() {
            return Err(err("empty literal".into()));
        }
        let mut out = self.zero();
        if text == "0" {
            return Ok(out);
        }
        for (negative, term) in split_sum(text).map_err(err)? {
            let (coeff, q, label) = self.parse_term(term).map_err(|e| match e {
                TermError::Syntax(r) => err(r),
                TermError::Ring(r) => r,
            })?;
            let coeff = if negative { coeff.negated() } else { coeff };
            out.add_term(Monomial::new(label, q), coeff);
        }
        Ok(out)
    }

    /// A single basis label such as `s[2,1]` or `u ox 1`.
    pub fn parse_label(&self, text: &str) -> Result<BasisLabel, RingError> {
        let class = self.parse_class(text)?;
        let mut terms = class.terms();
        match (terms.next(), terms.next()) {
            (Some((m, c)), None) if m.q.0 == 0 && c.is_one() => Ok(m.label.clone()),
            _ => Err(RingError::Parse {
                literal: text.to_string(),
                reason: "expected a single basis label".into(),
            }),
        }
    }

    fn parse_term(&self, term: &str) -> Result<(Coefficient, i64, BasisLabel), TermError> {
        let leaves = self.leaves();
        let parts: Vec<&str> = split_tensor(term);
        let mut coeff = Coefficient::one(self.field);
        let mut q = 0i64;
        let mut labels = Vec::with_capacity(leaves.len());
        if parts.len() == leaves.len() {
            for (part, leaf) in parts.iter().zip(&leaves) {
                let (c, m, label) = parse_factor(part, self)?;
                coeff = &coeff * &c;
                q += m;
                labels.push(match label {
                    Some(l) => leaf.parse_leaf_label(l)?,
                    None => leaf.unit_label(),
                });
            }
        } else if parts.len() == 1 {
            // A bare scalar such as `q` or `3` multiplies the unit.
            let (c, m, label) = parse_factor(parts[0], self)?;
            if label.is_some() {
                return Err(TermError::Syntax(format!(
                    "`{term}` has 1 tensor factor, the ring has {}",
                    leaves.len()
                )));
            }
            coeff = c;
            q = m;
            labels = leaves.iter().map(|l| l.unit_label()).collect();
        } else {
            return Err(TermError::Syntax(format!(
                "`{term}` has {} tensor factors, the ring has {}",
                parts.len(),
                leaves.len()
            )));
        }
        let mut it = labels.into_iter();
        let label = self.assemble(&mut it);
        Ok((coeff, q, label))
    }

    fn assemble(&self, leaves: &mut impl Iterator<Item = BasisLabel>) -> BasisLabel {
        match &self.kind {
            RingKind::Product(a, b) => {
                let la = a.assemble(leaves);
                let lb = b.assemble(leaves);
                BasisLabel::tensor(la, lb)
            }
            _ => leaves.next().expect("one label per leaf"),
        }
    }

    fn parse_leaf_label(&self, text: &str) -> Result<BasisLabel, TermError> {
        let unknown = || {
            TermError::Ring(RingError::UnknownLabel {
                label: text.to_string(),
                ring: self.to_string(),
            })
        };
        let label = if text == "1" {
            self.unit_label()
        } else {
            match &self.kind {
                RingKind::ProjectiveSpace { .. } => {
                    if text == "u" {
                        BasisLabel::Power(1)
                    } else if let Some(p) = text.strip_prefix("u^") {
                        BasisLabel::Power(p.trim().parse().map_err(|_| unknown())?)
                    } else {
                        return Err(unknown());
                    }
                }
                RingKind::Grassmannian { .. } => {
                    let inner = text
                        .strip_prefix("s[")
                        .and_then(|t| t.strip_suffix(']'))
                        .ok_or_else(unknown)?;
                    let parts: Vec<u32> = if inner.trim().is_empty() {
                        Vec::new()
                    } else {
                        inner
                            .split(',')
                            .map(|p| p.trim().parse::<u32>())
                            .collect::<Result<_, _>>()
                            .map_err(|_| unknown())?
                    };
                    BasisLabel::Schubert(Partition::try_new(parts).map_err(|_| unknown())?)
                }
                RingKind::Product(..) => unreachable!("leaves are never products"),
            }
        };
        if self.contains_label(&label) {
            Ok(label)
        } else {
            Err(unknown())
        }
    }
}

enum TermError {
    Syntax(String),
    Ring(RingError),
}

impl From<RingError> for TermError {
    fn from(e: RingError) -> Self {
        TermError::Ring(e)
    }
}

/// Numbers, `q`, `q^m` and at most one label, joined by `*`.
fn parse_factor<'a>(
    part: &'a str,
    ring: &RingPresentation,
) -> Result<(Coefficient, i64, Option<&'a str>), TermError> {
    let mut coeff = Coefficient::one(ring.field);
    let mut q = 0i64;
    let mut label = None;
    for tok in part.split('*').map(str::trim) {
        if tok.is_empty() {
            return Err(TermError::Syntax(format!("empty factor in `{part}`")));
        }
        if tok == "q" {
            q += 1;
        } else if let Some(e) = tok.strip_prefix("q^") {
            q += e
                .trim()
                .parse::<i64>()
                .map_err(|_| TermError::Syntax(format!("bad q exponent `{tok}`")))?;
        } else if tok.starts_with(|c: char| c.is_ascii_digit()) {
            let r = parse_rational(tok).map_err(|e| TermError::Syntax(e.to_string()))?;
            let c = Coefficient::from_rational(ring.field, &r).map_err(RingError::from)?;
            coeff = &coeff * &c;
        } else {
            if label.is_some() {
                return Err(TermError::Syntax(format!(
                    "`{part}` names more than one basis label"
                )));
            }
            label = Some(tok);
        }
    }
    Ok((coeff, q, label))
}

/// Splits at top-level `+`/`-`, returning `(negative, term)` pairs.
fn split_sum(text: &str) -> Result<Vec<(bool, &str)>, String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    let mut negative = false;
    let mut prev: Option<char> = None;
    for (i, ch) in text.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            '+' | '-' if depth == 0 && !matches!(prev, Some('^') | Some('*')) => {
                let chunk = text[start..i].trim();
                if chunk.is_empty() {
                    if !out.is_empty() || prev.is_some() {
                        return Err(format!("dangling sign at position {i}"));
                    }
                } else {
                    out.push((negative, chunk));
                }
                negative = ch == '-';
                start = i + 1;
            }
            _ => {}
        }
        if !ch.is_whitespace() {
            prev = Some(ch);
        }
    }
    let chunk = text[start..].trim();
    if chunk.is_empty() {
        return Err("literal ends with a sign".into());
    }
    out.push((negative, chunk));
    Ok(out)
}

/// Splits at top-level `ox`.
fn split_tensor(term: &str) -> Vec<&str> {
    let bytes = term.as_bytes();
    let mut parts = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'[' => depth += 1,
            b']' => depth -= 1,
            b'o' if depth == 0 && bytes.get(i + 1) == Some(&b'x') => {
                parts.push(term[start..i].trim());
                start = i + 2;
                i += 1;
            }
            _ => {}
        }
        i += 1;
    }
    parts.push(term[start..].trim());
    parts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::Field;

    fn g24() -> RingPresentation {
        RingPresentation::grassmannian(2, 4, Field::Rationals).unwrap()
    }

    #[test]
    fn round_trips_through_display() {
        let r = g24();
        for lit in ["s[2,1]", "q*1", "4*q*s[1]", "s[2] - q^-1*s[2,2]", "1/2*s[1,1]"] {
            let c = r.parse_class(lit).unwrap();
            assert_eq!(r.parse_class(&c.to_string()).unwrap(), c, "{lit}");
        }
        assert_eq!(r.parse_class("q").unwrap(), r.unit().q_shift(1));
    }

    #[test]
    fn tensor_literals() {
        let cp1 = RingPresentation::projective_space(1, Field::Rationals).unwrap();
        let cp3 = RingPresentation::projective_space(3, Field::Rationals).unwrap();
        let p = RingPresentation::kunneth(&g24(), &cp3).unwrap();
        let a = p.parse_class("s[2]ox u").unwrap();
        assert_eq!(a.degree().unwrap(), 6);
        assert_eq!(p.parse_class(&a.to_string()).unwrap(), a);
        let pp = RingPresentation::kunneth(&cp1, &cp1).unwrap();
        let u = pp.first_chern_generator();
        assert_eq!(u.to_string(), "1 ox u + u ox 1");
        assert_eq!(pp.parse_class("u ox 1 + 1 ox u").unwrap(), u);
    }

    #[test]
    fn rejects_out_of_basis_labels() {
        let r = g24();
        assert!(matches!(
            r.parse_class("s[3]"),
            Err(RingError::UnknownLabel { .. })
        ));
        let cp2 = RingPresentation::projective_space(2, Field::Rationals).unwrap();
        assert!(cp2.parse_class("u^3").is_err());
        assert!(cp2.parse_class("u +").is_err());
        assert!(cp2.parse_class("s[1]").is_err());
    }

    #[test]
    fn modular_coefficients() {
        let r = RingPresentation::grassmannian(2, 4, Field::prime(3).unwrap()).unwrap();
        let c = r.parse_class("4*s[1] + -1*s[1]").ok();
        // `+ -` is not valid syntax; the sign must be a single operator.
        assert!(c.is_none());
        assert!(r.parse_class("3*s[1]").unwrap().is_zero());
        assert_eq!(r.parse_class("-s[1]").unwrap().to_string(), "2*s[1]");
    }
}
