//! Classical Littlewood–Richardson coefficients.

use std::collections::BTreeMap;

use super::Partition;

/// `c^ν_{λμ}` for all `ν` with at most `rows` parts (no column bound).
///
/// Counts LR tableaux of shape `ν/λ` and content `μ`, built one label at a
/// time: label `i` is added as a horizontal strip, and the reverse reading
/// word stays a lattice word.
pub fn littlewood_richardson(
    lambda: &Partition,
    mu: &Partition,
    rows: usize,
) -> BTreeMap<Partition, u64> {
    let mut out = BTreeMap::new();
    if lambda.len() > rows || mu.len() > rows {
        return out;
    }
    let (outer, content) = if mu.size() <= lambda.size() {
        (lambda, mu)
    } else {
        (mu, lambda)
    };
    let shape = outer.padded(rows);
    let mut counts: Vec<Vec<u32>> = Vec::with_capacity(content.len());
    place_label(0, content.parts(), shape, &mut counts, &mut out);
    out
}

fn place_label(
    label: usize,
    content: &[u32],
    shape: Vec<u32>,
    counts: &mut Vec<Vec<u32>>,
    out: &mut BTreeMap<Partition, u64>,
) {
    if label == content.len() {
        *out.entry(Partition::new(shape)).or_insert(0) += 1;
        return;
    }
    let mut added = vec![0u32; shape.len()];
    strips(
        label, content[label], 0, &shape, &mut added, counts, content, out,
    );

    #[allow(clippy::too_many_arguments)]
    fn strips(
        label: usize,
        left: u32,
        row: usize,
        shape: &[u32],
        added: &mut Vec<u32>,
        counts: &mut Vec<Vec<u32>>,
        content: &[u32],
        out: &mut BTreeMap<Partition, u64>,
    ) {
        let rows = shape.len();
        if row == rows {
            if left == 0 {
                let new_shape: Vec<u32> = shape.iter().zip(added.iter()).map(|(s, a)| s + a).collect();
                counts.push(added.clone());
                place_label(label + 1, content, new_shape, counts, out);
                counts.pop();
            }
            return;
        }
        // Horizontal strip: the new row may not overhang the old row above.
        let cap = if row == 0 {
            left
        } else {
            (shape[row - 1] - shape[row]).min(left)
        };
        // Lattice condition against the previous label.
        let cap = if label == 0 {
            cap
        } else {
            let mine: u32 = added[..row].iter().sum();
            let prev: u32 = counts[label - 1][..row].iter().sum();
            cap.min(prev.saturating_sub(mine))
        };
        for c in (0..=cap).rev() {
            added[row] = c;
            strips(label, left - c, row + 1, shape, added, counts, content, out);
        }
        added[row] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn pieri_cases() {
        let r = littlewood_richardson(&p(&[1]), &p(&[1]), 2);
        assert_eq!(r, BTreeMap::from([(p(&[2]), 1), (p(&[1, 1]), 1)]));
        let r = littlewood_richardson(&p(&[2, 1]), &p(&[1]), 2);
        assert_eq!(r, BTreeMap::from([(p(&[3, 1]), 1), (p(&[2, 2]), 1)]));
    }

    #[test]
    fn unit() {
        let l = p(&[3, 1]);
        assert_eq!(
            littlewood_richardson(&l, &p(&[]), 2),
            BTreeMap::from([(l.clone(), 1)])
        );
    }

    #[test]
    fn first_multiplicity_two() {
        let r = littlewood_richardson(&p(&[2, 1]), &p(&[2, 1]), 3);
        assert_eq!(r[&p(&[3, 2, 1])], 2);
        assert_eq!(r[&p(&[4, 2])], 1);
        assert_eq!(r[&p(&[3, 3])], 1);
    }
}
