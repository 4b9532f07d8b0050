//! Exponent vectors of homogeneous monomials in graded-lex order.

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Number of degree-`degree` monomials in `nvars` variables.
pub fn monomial_count(nvars: usize, degree: usize) -> u128 {
    if nvars == 0 {
        return u128::from(degree == 0);
    }
    binomial((nvars + degree - 1) as u128, degree as u128)
}

/// All exponent vectors of total degree `degree` in `nvars` variables, lexicographically
/// descending (`x_1^d` first, `x_n^d` last).
pub fn monomials(nvars: usize, degree: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = vec![0; nvars];
    fill(&mut out, &mut current, 0, degree);
    out
}

fn fill(out: &mut Vec<Vec<usize>>, current: &mut Vec<usize>, idx: usize, remaining: usize) {
    if idx + 1 >= current.len() {
        if let Some(last) = current.last_mut() {
            *last = remaining;
            out.push(current.clone());
        } else if remaining == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for e in (0..=remaining).rev() {
        current[idx] = e;
        fill(out, current, idx + 1, remaining - e);
    }
    current[idx] = 0;
}

/// Position lookup for exponent vectors produced by [`monomials`].
pub fn index_map(monos: &[Vec<usize>]) -> std::collections::HashMap<Vec<usize>, usize> {
    monos
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect()
}
