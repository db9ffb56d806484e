use std::fmt;

use serde::{Deserialize, Serialize};

/// Weakly decreasing list of positive parts; trailing zeros are dropped so
/// that `(2,1,0)` and `(2,1)` compare equal.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Panics if `parts` is not weakly decreasing.
    pub fn new(parts: Vec<u32>) -> Self {
        Self::try_new(parts).expect("partition parts must be weakly decreasing")
    }

    pub fn try_new(mut parts: Vec<u32>) -> Result<Self, String> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(format!("{parts:?} is not weakly decreasing"));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// The `i`-th part (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn fits_box(&self, rows: usize, cols: u32) -> bool {
        self.len() <= rows && self.part(0) <= cols
    }

    pub fn conjugate(&self) -> Self {
        let cols = self.part(0);
        Partition(
            (0..cols)
                .map(|c| self.0.iter().filter(|&&p| p > c).count() as u32)
                .collect(),
        )
    }

    /// Parts padded with zeros to exactly `rows` entries.
    pub fn padded(&self, rows: usize) -> Vec<u32> {
        (0..rows).map(|i| self.part(i)).collect()
    }

    /// All partitions of `size` inside the `rows × cols` box, in descending
    /// lexicographic order.
    pub fn in_box(size: u32, rows: usize, cols: u32) -> Vec<Partition> {
        fn rec(left: u32, rows: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if left == 0 {
                out.push(Partition::new(cur.clone()));
                return;
            }
            if rows == 0 {
                return;
            }
            for p in (1..=max.min(left)).rev() {
                cur.push(p);
                rec(left - p, rows - 1, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(size, rows, cols, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = String;
    fn try_from(v: Vec<u32>) -> Result<Self, String> {
        Partition::try_new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trailing_zeros_are_dropped() {
        assert_eq!(Partition::new(vec![2, 1, 0]), Partition::new(vec![2, 1]));
        assert!(Partition::try_new(vec![1, 2]).is_err());
    }

    #[test]
    fn box_enumeration() {
        let deg4 = Partition::in_box(2, 2, 2);
        assert_eq!(
            deg4,
            vec![Partition::new(vec![2]), Partition::new(vec![1, 1])]
        );
        let total: usize = (0..=4).map(|s| Partition::in_box(s, 2, 2).len()).sum();
        assert_eq!(total, 6);
    }

    #[test]
    fn conjugation() {
        let p = Partition::new(vec![3, 1]);
        assert_eq!(p.conjugate(), Partition::new(vec![2, 1, 1]));
        assert_eq!(p.conjugate().conjugate(), p);
    }
}
