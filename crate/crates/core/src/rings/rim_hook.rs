//! Rim-hook reduction of partitions into the `k × (N−k)` box.

use super::Partition;

/// Outcome of reducing an out-of-box partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduced {
    pub partition: Partition,
    pub q_power: i64,
    pub sign: i64,
}

/// Strips `N`-rim hooks from `nu` until it fits the `k × (N−k)` box.
///
/// Works on β-numbers `β_i = ν_i + k − i`: removing an `N`-rim hook is the
/// same as lowering one β-number by `N`. The largest β is lowered each time;
/// a collision means no valid hook exists and the class vanishes. The sign of
/// a hook spanning `h` rows is `(−1)^{k−h}`, with `h − 1` equal to the number
/// of β-numbers jumped over.
pub fn rim_hook_reduce(nu: &Partition, k: usize, n: usize) -> Option<Reduced> {
    if nu.len() > k || k > n {
        return None;
    }
    let mut beta: Vec<i64> = (0..k)
        .map(|i| nu.part(i) as i64 + (k - 1 - i) as i64)
        .collect();
    let n = n as i64;
    let mut q_power = 0;
    let mut sign = 1;
    loop {
        let (imax, &top) = beta
            .iter()
            .enumerate()
            .max_by_key(|(_, b)| **b)
            .expect("k ≥ 1 for a Grassmannian");
        if top < n {
            break;
        }
        let lowered = top - n;
        if beta.contains(&lowered) {
            return None;
        }
        let jumped = beta.iter().filter(|&&b| b > lowered && b < top).count() as i64;
        let height = jumped + 1;
        if (k as i64 - height) % 2 != 0 {
            sign = -sign;
        }
        beta[imax] = lowered;
        q_power += 1;
    }
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let parts: Vec<u32> = beta
        .iter()
        .enumerate()
        .map(|(i, b)| (b - (k - 1 - i) as i64) as u32)
        .collect();
    Some(Reduced {
        partition: Partition::new(parts),
        q_power,
        sign,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn in_box_is_untouched() {
        let r = rim_hook_reduce(&p(&[2, 1]), 2, 4).unwrap();
        assert_eq!((r.partition, r.q_power, r.sign), (p(&[2, 1]), 0, 1));
    }

    #[test]
    fn g24_hooks() {
        let r = rim_hook_reduce(&p(&[3, 1]), 2, 4).unwrap();
        assert_eq!((r.partition, r.q_power, r.sign), (p(&[]), 1, 1));
        let r = rim_hook_reduce(&p(&[4]), 2, 4).unwrap();
        assert_eq!((r.partition, r.q_power, r.sign), (p(&[]), 1, -1));
        assert!(rim_hook_reduce(&p(&[3]), 2, 4).is_none());
    }

    #[test]
    fn projective_space_case() {
        // G(1,3) = CP^2: u^3 = q.
        let r = rim_hook_reduce(&p(&[3]), 1, 3).unwrap();
        assert_eq!((r.partition, r.q_power, r.sign), (p(&[]), 1, 1));
    }
}
