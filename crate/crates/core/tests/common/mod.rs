//! Oracles and checkers shared by the integration tests. The oracles do not
//! call into the crate's product code.

#![allow(dead_code)]

use std::collections::BTreeMap;

use ladders_core::ladders::{Ladder, LadderKind};

/// A polynomial in `k` variables, keyed by exponent vector.
pub type Poly = BTreeMap<Vec<u32>, i64>;

/// `s_λ(x₁, …, x_k)` by enumerating semistandard tableaux.
pub fn schur(lambda: &[u32], k: usize) -> Poly {
    let lambda: Vec<u32> = lambda.iter().copied().filter(|&p| p > 0).collect();
    let mut out = Poly::new();
    if lambda.len() > k {
        return out;
    }
    let cells: Vec<(usize, usize)> = lambda
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<u32>> = lambda.iter().map(|&l| vec![0; l as usize]).collect();
    fill(&cells, 0, &mut grid, k as u32, &mut out);
    out
}

fn fill(cells: &[(usize, usize)], i: usize, grid: &mut Vec<Vec<u32>>, k: u32, out: &mut Poly) {
    if i == cells.len() {
        let mut e = vec![0u32; k as usize];
        for row in grid.iter() {
            for &v in row {
                e[v as usize - 1] += 1;
            }
        }
        *out.entry(e).or_insert(0) += 1;
        return;
    }
    let (r, c) = cells[i];
    let mut lo = 1;
    if c > 0 {
        lo = lo.max(grid[r][c - 1]);
    }
    if r > 0 {
        lo = lo.max(grid[r - 1][c] + 1);
    }
    for v in lo..=k {
        grid[r][c] = v;
        fill(cells, i + 1, grid, k, out);
    }
    grid[r][c] = 0;
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Expands a symmetric polynomial in Schur polynomials by peeling off the
/// lexicographically largest monomial.
pub fn schur_expand(mut p: Poly, k: usize) -> BTreeMap<Vec<u32>, i64> {
    let mut out = BTreeMap::new();
    while let Some((lead, &c)) = p.iter().next_back() {
        let lead = lead.clone();
        let s = schur(&lead, k);
        for (e, v) in s {
            let entry = p.entry(e).or_insert(0);
            *entry -= c * v;
        }
        p.retain(|_, v| *v != 0);
        let key: Vec<u32> = lead.into_iter().filter(|&x| x > 0).collect();
        out.insert(key, c);
    }
    out
}

/// Littlewood–Richardson coefficients of `s_λ s_μ` restricted to `k` rows.
pub fn lr_oracle(lambda: &[u32], mu: &[u32], k: usize) -> BTreeMap<Vec<u32>, i64> {
    schur_expand(poly_mul(&schur(lambda, k), &schur(mu, k)), k)
}

/// All partitions inside a `rows × cols` box, any size.
pub fn box_partitions(rows: usize, cols: u32) -> Vec<Vec<u32>> {
    fn go(rows: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        if cur.len() == rows {
            return;
        }
        for p in 1..=max {
            cur.push(p);
            go(rows, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(rows, cols, &mut Vec::new(), &mut out);
    out
}

/// Exact polynomial arithmetic for `ℚ[u, q]/(u^{n+1} − q)` via integer
/// polynomial long division.
pub fn cpn_power(n: u32, d: u32) -> (u32, i64) {
    // u^d = q^{⌊d/(n+1)⌋} u^{d mod (n+1)}
    (d % (n + 1), (d / (n + 1)) as i64)
}

/// Re-derives the ladder identities over three periods: `v_{j+1} = v_j * w`
/// (degrees only across the wrap of a power-matching window),
/// `v_{j+ℓ} = q^ν v_j`, degrees read off the classes themselves, strictly
/// decreasing, and `|v_{ℓ−1}| > |v_0| − 2N` on every period.
pub fn check_ladder(ladder: &Ladder) -> Result<(), String> {
    let ring = ladder.ring();
    let ell = ladder.ell() as i64;
    let two_n = 2 * ring.chern() as i64;
    let top = 2 * ring.dim() as i64;
    for j in -ell..2 * ell {
        let v = ladder.ladder_class(j);
        let w = &ladder.steps()[j.rem_euclid(ell) as usize];
        let next = ring.quantum_product(&v, w).map_err(|e| e.to_string())?;
        let wrap = j.rem_euclid(ell) == ell - 1;
        if wrap && matches!(ladder.kind(), LadderKind::PowerMatch { .. }) {
            // u^{s+} and q^ν u^{s−} share a carrier, not a class; only the
            // degrees have to agree.
            if next.degree().ok() != ladder.ladder_class(j + 1).degree().ok() {
                return Err(format!("degree mismatch across the wrap at v_{j}"));
            }
        } else if next != ladder.ladder_class(j + 1) {
            return Err(format!("v_{} != v_{j} * w", j + 1));
        }
        if ladder.ladder_class(j + ell) != v.q_shift(ladder.nu()) {
            return Err(format!("v_{} != q^nu v_{j}", j + ell));
        }
        let hom = top - v.degree().map_err(|e| e.to_string())?;
        if hom != ladder.homology_degree(j) {
            return Err(format!("|v_{j}| = {hom}, ladder says {}", ladder.homology_degree(j)));
        }
        if ladder.homology_degree(j + 1) >= hom {
            return Err(format!("degrees do not drop at v_{j}"));
        }
        if ladder.homology_degree(j + ell) != hom - two_n * ladder.nu() {
            return Err(format!("period shift fails at v_{j}"));
        }
        if j.rem_euclid(ell) == 0 && ladder.homology_degree(j + ell - 1) <= hom - two_n {
            return Err(format!("window starting at v_{j} spans 2N or more"));
        }
    }
    Ok(())
}
