//! Quantum Pieri rule for `σ_λ * σ_p` in `G(k,N)`.

use super::Partition;

/// Terms `(μ, q-power)` of `σ_λ * σ_p`, each with coefficient one.
///
/// Classical part: horizontal strips of size `p` added to `λ` inside the box.
/// Quantum part: `ρ` with `λ_i − 1 ≥ ρ_i ≥ λ_{i+1} − 1`, `ρ_k ≥ 0`,
/// `|ρ| = |λ| + p − N`; empty unless `λ` has exactly `k` parts.
pub fn pieri_terms(lambda: &Partition, p: u32, k: usize, n: usize) -> Vec<(Partition, i64)> {
    let cols = (n - k) as u32;
    let lam = lambda.padded(k);
    let mut out = Vec::new();

    let mut mu = lam.clone();
    classical(&lam, cols, 0, p, &mut mu, &mut out);

    let target = lambda.size() as i64 + p as i64 - n as i64;
    if target >= 0 && lam[k - 1] >= 1 {
        let mut rho = vec![0u32; k];
        quantum(&lam, 0, target as u32, &mut rho, &mut out);
    }
    out
}

fn classical(
    lam: &[u32],
    cols: u32,
    row: usize,
    left: u32,
    mu: &mut Vec<u32>,
    out: &mut Vec<(Partition, i64)>,
) {
    if row == lam.len() {
        if left == 0 {
            out.push((Partition::new(mu.clone()), 0));
        }
        return;
    }
    let upper = if row == 0 { cols } else { lam[row - 1] };
    let room = upper.saturating_sub(lam[row]).min(left);
    for c in (0..=room).rev() {
        mu[row] = lam[row] + c;
        classical(lam, cols, row + 1, left - c, mu, out);
    }
    mu[row] = lam[row];
}

fn quantum(lam: &[u32], row: usize, left: u32, rho: &mut Vec<u32>, out: &mut Vec<(Partition, i64)>) {
    let k = lam.len();
    if row == k {
        if left == 0 {
            out.push((Partition::new(rho.clone()), 1));
        }
        return;
    }
    let hi = lam[row] - 1;
    let lo = if row + 1 < k {
        lam[row + 1].saturating_sub(1)
    } else {
        0
    };
    for r in (lo..=hi.min(left)).rev() {
        rho[row] = r;
        quantum(lam, row + 1, left - r, rho, out);
    }
    rho[row] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn g24_examples() {
        assert_eq!(
            pieri_terms(&p(&[2, 1]), 1, 2, 4),
            vec![(p(&[2, 2]), 0), (p(&[]), 1)]
        );
        assert_eq!(pieri_terms(&p(&[2, 2]), 1, 2, 4), vec![(p(&[1]), 1)]);
        assert_eq!(pieri_terms(&p(&[]), 2, 2, 4), vec![(p(&[2]), 0)]);
    }
}
