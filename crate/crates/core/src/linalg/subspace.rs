use crate::error::{Error, Result};
use crate::field::{Field, FiniteField};

use super::echelon::kernel_of_rows;
use super::matrix::{combine, Matrix};

/// Subspace of `F^n` stored by its canonical reduced row echelon basis, so two
/// subspaces are equal exactly when their representations are.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(n: usize) -> Self {
        Subspace {
            ambient: n,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        let basis = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { F::one() } else { F::zero() })
                    .collect()
            })
            .collect();
        Subspace {
            ambient: n,
            basis,
            pivots: (0..n).collect(),
        }
    }

    /// Span of arbitrary vectors of length `n`.
    pub fn span(n: usize, vectors: Vec<Vec<F>>) -> Self {
        let mut rows = vectors;
        for v in &rows {
            assert_eq!(v.len(), n, "vector length does not match ambient dimension");
        }
        let pivots = F::reduce_rows(&mut rows, n);
        rows.truncate(pivots.len());
        Subspace {
            ambient: n,
            basis: rows,
            pivots,
        }
    }

    /// Span of standard basis vectors `e_i` (0-based).
    pub fn coordinate(n: usize, indices: &[usize]) -> Self {
        Self::span(
            n,
            indices
                .iter()
                .map(|&i| {
                    (0..n)
                        .map(|j| if i == j { F::one() } else { F::zero() })
                        .collect()
                })
                .collect(),
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> Matrix<F> {
        if self.basis.is_empty() {
            Matrix::zeros(0, self.ambient)
        } else {
            Matrix::from_rows(self.basis.clone())
        }
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        assert_eq!(v.len(), self.ambient);
        let coeffs: Vec<F> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = combine(&coeffs, &self.basis, self.ambient);
        (back == v).then_some(coeffs)
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn from_coordinates(&self, coeffs: &[F]) -> Vec<F> {
        combine(coeffs, &self.basis, self.ambient)
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|v| other.contains(v))
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        Ok(Self::span(self.ambient, vectors))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut rows = self.annihilator().basis;
        rows.extend(other.annihilator().basis);
        Ok(kernel_of_rows(&rows, self.ambient))
    }

    /// `{w : <u, w> = 0 for all u in self}`
    pub fn annihilator(&self) -> Self {
        kernel_of_rows(&self.basis, self.ambient)
    }

    /// Vectors extending the echelon basis of `self` to a basis of `larger`, chosen
    /// greedily from the echelon basis of `larger`.
    pub fn complement_in(&self, larger: &Self) -> Vec<Vec<F>> {
        let mut current = self.clone();
        let mut extra = Vec::new();
        for v in &larger.basis {
            if !current.contains(v) {
                extra.push(v.clone());
                current = current
                    .sum(&Self::span(self.ambient, vec![v.clone()]))
                    .expect("same ambient");
            }
        }
        extra
    }

    /// Image under a linear map given by a matrix acting on column vectors.
    pub fn image_under(&self, m: &Matrix<F>) -> Self {
        assert_eq!(m.cols(), self.ambient);
        Self::span(m.rows(), self.basis.iter().map(|v| m.mul_vec(v)).collect())
    }

    pub fn is_invariant_under(&self, m: &Matrix<F>) -> bool {
        self.basis.iter().all(|v| self.contains(&m.mul_vec(v)))
    }
}

/// Gaussian binomial coefficient `[n choose k]_q`, saturating at `u128::MAX`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        let a = q.checked_pow((n - i) as u32).map(|x| x - 1);
        let b = q.checked_pow((i + 1) as u32).map(|x| x - 1);
        match (
            a.and_then(|a| num.checked_mul(a)),
            b.and_then(|b| den.checked_mul(b)),
        ) {
            (Some(x), Some(y)) => {
                num = x;
                den = y;
                let g = gcd(num, den);
                num /= g;
                den /= g;
            }
            _ => return u128::MAX,
        }
    }
    num / den
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Total number of subspaces of `GF(q)^n`.
pub fn subspace_count(n: usize, q: u64) -> u128 {
    (0..=n).fold(0u128, |acc, k| {
        acc.saturating_add(gaussian_binomial(n, k, q))
    })
}

pub const DEFAULT_SUBSPACE_GUARD: u128 = 1_000_000;

/// Every subspace of `F^n` exactly once: by dimension, then pivot profile in
/// lexicographic order, then free entries in odometer order.
pub fn enumerate_subspaces<F: FiniteField>(n: usize, guard: u128) -> Result<SubspaceEnumerator<F>> {
    let total = subspace_count(n, F::order());
    if total > guard {
        return Err(Error::GuardExceeded {
            what: format!("subspace count of GF({})^{n}", F::order()),
            count: total,
            limit: guard,
        });
    }
    let mut profiles = Vec::new();
    for k in 0..=n {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            profiles.push(combo.clone());
            // next k-combination of 0..n
            let mut i = k;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if combo[i] < n - k + i {
                    combo[i] += 1;
                    for j in i + 1..k {
                        combo[j] = combo[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    Ok(SubspaceEnumerator {
        n,
        total,
        elements: F::elements(),
        profiles,
        profile_idx: 0,
        free: Vec::new(),
        counter: None,
    })
}

pub struct SubspaceEnumerator<F> {
    n: usize,
    total: u128,
    elements: Vec<F>,
    profiles: Vec<Vec<usize>>,
    profile_idx: usize,
    /// (row, column) positions of the free entries of the current profile.
    free: Vec<(usize, usize)>,
    counter: Option<Vec<usize>>,
}

impl<F: FiniteField> SubspaceEnumerator<F> {
    pub fn total(&self) -> u128 {
        self.total
    }

    fn load_profile(&mut self) {
        let profile = &self.profiles[self.profile_idx];
        self.free = profile
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| {
                (p + 1..self.n)
                    .filter(move |c| !profile.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        self.counter = Some(vec![0; self.free.len()]);
    }

    fn build(&self) -> Subspace<F> {
        let profile = &self.profiles[self.profile_idx];
        let counter = self.counter.as_ref().expect("loaded");
        let mut basis: Vec<Vec<F>> = profile
            .iter()
            .map(|&p| {
                let mut v = vec![F::zero(); self.n];
                v[p] = F::one();
                v
            })
            .collect();
        for (&(r, c), &e) in self.free.iter().zip(counter) {
            basis[r][c] = self.elements[e].clone();
        }
        Subspace {
            ambient: self.n,
            basis,
            pivots: profile.clone(),
        }
    }
}

impl<F: FiniteField> Iterator for SubspaceEnumerator<F> {
    type Item = Subspace<F>;

    fn next(&mut self) -> Option<Subspace<F>> {
        if self.profile_idx >= self.profiles.len() {
            return None;
        }
        if self.counter.is_none() {
            self.load_profile();
        }
        let out = self.build();
        // advance the odometer
        let q = self.elements.len();
        let counter = self.counter.as_mut().expect("loaded");
        let mut i = counter.len();
        let mut carried_out = true;
        while i > 0 {
            i -= 1;
            counter[i] += 1;
            if counter[i] < q {
                carried_out = false;
                break;
            }
            counter[i] = 0;
        }
        if carried_out {
            self.profile_idx += 1;
            self.counter = None;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf2, Gf3, Rational};
    use proptest::prelude::*;
    use std::collections::HashSet;

    type Q = Rational;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| Q::from(x)).collect()
    }

    #[test]
    fn sum_and_intersection_basic() {
        let u = Subspace::span(2, vec![v(&[1, 1])]);
        assert_eq!(u.sum(&u).unwrap(), u);
        assert_eq!(u.intersection(&u).unwrap(), u);
        let a = Subspace::span(2, vec![v(&[1, 0])]);
        let b = Subspace::span(2, vec![v(&[1, 2])]);
        assert_eq!(a.sum(&b).unwrap().dim(), 2);
        assert_eq!(a.intersection(&b).unwrap().dim(), 0);
        assert!(a.sum(&Subspace::zero(3)).is_err());
        assert!(a.intersection(&Subspace::zero(3)).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(
            enumerate_subspaces::<Gf2>(2, DEFAULT_SUBSPACE_GUARD)
                .unwrap()
                .count(),
            5
        );
        assert_eq!(
            enumerate_subspaces::<Gf2>(3, DEFAULT_SUBSPACE_GUARD)
                .unwrap()
                .count(),
            16
        );
        assert_eq!(
            enumerate_subspaces::<Gf2>(1, DEFAULT_SUBSPACE_GUARD)
                .unwrap()
                .count(),
            2
        );
        assert_eq!(
            enumerate_subspaces::<Gf3>(1, DEFAULT_SUBSPACE_GUARD)
                .unwrap()
                .count(),
            2
        );
        // 1 + 13 + 13 + 1
        assert_eq!(
            enumerate_subspaces::<Gf3>(3, DEFAULT_SUBSPACE_GUARD)
                .unwrap()
                .count(),
            28
        );
        assert!(enumerate_subspaces::<Gf2>(8, 100).is_err());
    }

    #[test]
    fn enumeration_is_exhaustive_and_duplicate_free() {
        // Oracle: spans of all subsets of nonzero vectors of GF(2)^3 of size <= 3.
        let n = 3;
        let vectors: Vec<Vec<Gf2>> = (1u32..8)
            .map(|bits| (0..n).map(|i| Gf2::new(((bits >> i) & 1) as i64)).collect())
            .collect();
        let mut oracle = HashSet::new();
        oracle.insert(Subspace::<Gf2>::zero(n));
        for mask in 1u32..(1 << vectors.len()) {
            let chosen: Vec<Vec<Gf2>> = (0..vectors.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| vectors[i].clone())
                .collect();
            oracle.insert(Subspace::span(n, chosen));
        }
        let listed: Vec<_> = enumerate_subspaces::<Gf2>(n, DEFAULT_SUBSPACE_GUARD)
            .unwrap()
            .collect();
        let as_set: HashSet<_> = listed.iter().cloned().collect();
        assert_eq!(listed.len(), as_set.len());
        assert_eq!(as_set, oracle);
        // each listed element is already canonical
        for s in &listed {
            assert_eq!(&Subspace::span(n, s.basis().to_vec()), s);
        }
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(3, 1, 2), 7);
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(subspace_count(2, 2), 5);
        assert_eq!(subspace_count(5, 3), 1 + 121 + 1210 + 1210 + 121 + 1);
    }

    #[test]
    fn modularity_on_all_pairs_gf2() {
        let all: Vec<_> = enumerate_subspaces::<Gf2>(3, DEFAULT_SUBSPACE_GUARD)
            .unwrap()
            .collect();
        for a in &all {
            for b in &all {
                let s = a.sum(b).unwrap();
                let i = a.intersection(b).unwrap();
                assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
                assert!(i.is_subspace_of(a) && i.is_subspace_of(b));
                assert!(a.is_subspace_of(&s) && b.is_subspace_of(&s));
            }
        }
    }

    proptest! {
        #[test]
        fn modularity_random_rational(
            a in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 4), 0..4),
            b in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 4), 0..4),
        ) {
            let u = Subspace::span(4, a.iter().map(|r| v(r)).collect());
            let w = Subspace::span(4, b.iter().map(|r| v(r)).collect());
            let s = u.sum(&w).unwrap();
            let i = u.intersection(&w).unwrap();
            prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
            prop_assert!(i.is_subspace_of(&u) && i.is_subspace_of(&w));
        }
    }
}
