//! Homogeneous kernel-vector certificates of singularity.
//!
//! A certificate of degree `d` is a vector `v(x) = sum_alpha x^alpha v_alpha` of degree-`d`
//! forms in the coordinates `x_1..x_m` of the space with `v(x)^T B(x) = 0` (left) or
//! `B(x) v(x) = 0` (right) identically, where `B(x) = sum_i x_i B_i`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::lie::structure_constants;
use crate::linalg::echelon::kernel_basis_free_order;
use crate::linalg::Matrix;
use crate::monomial::{index_map, monomial_count, monomials};
use crate::space::MatrixSpace;

/// Largest degree searched unless a cap is given explicitly.
pub const DEFAULT_DEGREE_CAP: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelCertificate<F> {
    pub side: Side,
    pub degree: usize,
    /// Number of variables `m` (dimension of the space).
    pub nvars: usize,
    /// Length of each coefficient vector.
    pub n: usize,
    /// Exponent vectors in graded-lex order, parallel to `coeffs`.
    pub monomials: Vec<Vec<usize>>,
    pub coeffs: Vec<Vec<F>>,
}

impl<F: Field> KernelCertificate<F> {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(Field::is_zero)
    }

    /// For degree one: `v_j`, the coefficient of `x_j`.
    pub fn linear_vectors(&self) -> Option<&[Vec<F>]> {
        (self.degree == 1).then_some(&self.coeffs[..])
    }

    /// Builds a degree-one certificate from `v_1..v_m`.
    pub fn linear(side: Side, vectors: Vec<Vec<F>>) -> Self {
        let nvars = vectors.len();
        let n = vectors.first().map_or(0, Vec::len);
        KernelCertificate {
            side,
            degree: 1,
            nvars,
            n,
            monomials: monomials(nvars, 1),
            coeffs: vectors,
        }
    }

    /// `v(point)`
    pub fn evaluate(&self, point: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.n];
        for (mono, v) in self.monomials.iter().zip(&self.coeffs) {
            let mut w = F::one();
            for (x, &e) in point.iter().zip(mono) {
                for _ in 0..e {
                    w = w * x.clone();
                }
            }
            for (o, c) in out.iter_mut().zip(v) {
                *o = o.clone() + w.clone() * c.clone();
            }
        }
        out
    }
}

fn acting_matrices<F: Field>(s: &MatrixSpace<F>, side: Side) -> Vec<Matrix<F>> {
    match side {
        Side::Right => s.basis().to_vec(),
        Side::Left => s.basis().iter().map(Matrix::transpose).collect(),
    }
}

pub fn find_kernel_certificate<F: Field>(
    s: &MatrixSpace<F>,
    degree: usize,
    side: Side,
) -> Result<Option<KernelCertificate<F>>> {
    find_kernel_certificate_capped(s, degree, side, DEFAULT_DEGREE_CAP)
}

/// Solves the linear system with `C(m+d-1, d) * n` unknowns; returns the first kernel
/// vector in free-column order.
pub fn find_kernel_certificate_capped<F: Field>(
    s: &MatrixSpace<F>,
    degree: usize,
    side: Side,
    cap: usize,
) -> Result<Option<KernelCertificate<F>>> {
    if degree == 0 {
        return Err(Error::InvalidParameter("degree must be at least 1".into()));
    }
    if degree > cap {
        return Err(Error::GuardExceeded {
            what: "certificate degree".into(),
            count: degree as u128,
            limit: cap as u128,
        });
    }
    let (m, n) = (s.dim(), s.n());
    let unknowns = monomial_count(m, degree).saturating_mul(n as u128);
    let eqs = monomial_count(m, degree + 1).saturating_mul(n as u128);
    const SYSTEM_GUARD: u128 = 1 << 24;
    if unknowns.saturating_mul(eqs) > SYSTEM_GUARD * 16 {
        return Err(Error::GuardExceeded {
            what: "certificate system size".into(),
            count: unknowns.saturating_mul(eqs),
            limit: SYSTEM_GUARD * 16,
        });
    }
    let alphas = monomials(m, degree);
    let betas = monomials(m, degree + 1);
    let beta_index = index_map(&betas);
    let mats = acting_matrices(s, side);
    let ncols = alphas.len() * n;
    let mut rows = vec![vec![F::zero(); ncols]; betas.len() * n];
    for (a, alpha) in alphas.iter().enumerate() {
        for (i, b) in mats.iter().enumerate() {
            let mut beta = alpha.clone();
            beta[i] += 1;
            let bi = beta_index[&beta];
            for c in 0..n {
                let row = &mut rows[bi * n + c];
                for r in 0..n {
                    let entry = b.get(c, r);
                    if !entry.is_zero() {
                        row[a * n + r] = row[a * n + r].clone() + entry.clone();
                    }
                }
            }
        }
    }
    let kernel = kernel_basis_free_order(&rows, ncols);
    Ok(kernel.into_iter().next().map(|flat| KernelCertificate {
        side,
        degree,
        nvars: m,
        n,
        coeffs: flat.chunks(n.max(1)).map(<[F]>::to_vec).collect(),
        monomials: alphas,
    }))
}

/// Expands `v^T B(x)` (or `B(x) v`) coefficient by coefficient.
pub fn verify_certificate<F: Field>(s: &MatrixSpace<F>, c: &KernelCertificate<F>) -> Result<bool> {
    if c.n != s.n() || c.nvars != s.dim() {
        return Err(Error::ShapeMismatch {
            expected: format!("{} variables, vectors of length {}", s.dim(), s.n()),
            got: format!("{} variables, vectors of length {}", c.nvars, c.n),
        });
    }
    if c.monomials.len() != c.coeffs.len()
        || c.coeffs.iter().any(|v| v.len() != c.n)
        || c.monomials
            .iter()
            .any(|a| a.len() != c.nvars || a.iter().sum::<usize>() != c.degree)
    {
        return Err(Error::ShapeMismatch {
            expected: format!("degree-{} coefficient table", c.degree),
            got: "malformed coefficient table".into(),
        });
    }
    if c.is_zero() {
        return Err(Error::ZeroCertificate);
    }
    let mats = acting_matrices(s, c.side);
    let mut expansion: HashMap<Vec<usize>, Vec<F>> = HashMap::new();
    for (alpha, v) in c.monomials.iter().zip(&c.coeffs) {
        for (i, b) in mats.iter().enumerate() {
            let mut beta = alpha.clone();
            beta[i] += 1;
            let term = b.mul_vec(v);
            let slot = expansion
                .entry(beta)
                .or_insert_with(|| vec![F::zero(); c.n]);
            for (acc, t) in slot.iter_mut().zip(term) {
                *acc = acc.clone() + t;
            }
        }
    }
    Ok(expansion.values().flatten().all(Field::is_zero))
}

/// `{[C_1 v, ..., C_n v] : v in F^n}` for alternating `C_1..C_n`; basis `M_j` has
/// column `i` equal to `C_i e_j`.
pub fn example2_space<F: Field>(cs: &[Matrix<F>]) -> Result<MatrixSpace<F>> {
    let n = cs.len();
    if n == 0 {
        return Err(Error::InvalidParameter("need at least one matrix".into()));
    }
    for (index, c) in cs.iter().enumerate() {
        if c.shape() != (n, n) {
            return Err(Error::ShapeMismatch {
                expected: format!("{n}x{n}"),
                got: format!("{}x{}", c.rows(), c.cols()),
            });
        }
        if !c.is_alternating() {
            return Err(Error::NotAlternating { index: index + 1 });
        }
    }
    let mats = (0..n)
        .map(|j| {
            let mut m = Matrix::zeros(n, n);
            for (i, c) in cs.iter().enumerate() {
                for r in 0..n {
                    m.set(r, i, c.get(r, j).clone());
                }
            }
            m
        })
        .collect();
    MatrixSpace::new(n, mats)
}

/// Polarized form of a degree-one certificate: `B_i v_j + B_j v_i = 0` for all `i <= j`
/// (transposed for left certificates).
pub fn linker_cross_identity_check<F: Field>(s: &MatrixSpace<F>, c: &KernelCertificate<F>) -> bool {
    let Some(vs) = c.linear_vectors() else {
        return false;
    };
    if c.n != s.n() || vs.len() != s.dim() || vs.iter().any(|v| v.len() != s.n()) {
        return false;
    }
    if c.is_zero() {
        return false;
    }
    let mats = acting_matrices(s, c.side);
    for i in 0..vs.len() {
        for j in i..vs.len() {
            let a = mats[i].mul_vec(&vs[j]);
            let b = mats[j].mul_vec(&vs[i]);
            if a.into_iter().zip(b).any(|(x, y)| !(x + y).is_zero()) {
                return false;
            }
        }
    }
    true
}

/// `psi([a_i, a_j]) = rho(a_i) psi(a_j)` on all basis pairs, for a Lie-closed space and a
/// degree-one certificate `psi(a_j) = v_j`. Left certificates are read against the dual
/// representation `x -> -B(x)^T`.
pub fn intertwining_check<F: Field>(s: &MatrixSpace<F>, c: &KernelCertificate<F>) -> Result<bool> {
    let vs = c
        .linear_vectors()
        .ok_or_else(|| Error::InvalidParameter("intertwining check needs degree 1".into()))?;
    if c.n != s.n() || vs.len() != s.dim() {
        return Err(Error::ShapeMismatch {
            expected: format!("{} vectors of length {}", s.dim(), s.n()),
            got: format!("{} vectors of length {}", vs.len(), c.n),
        });
    }
    let lie = structure_constants(s)?;
    let rho: Vec<Matrix<F>> = match c.side {
        Side::Right => s.basis().to_vec(),
        Side::Left => s
            .basis()
            .iter()
            .map(|b| b.transpose().scale(&-F::one()))
            .collect(),
    };
    let m = s.dim();
    for i in 0..m {
        for j in 0..m {
            let mut lhs = vec![F::zero(); c.n];
            for (k, vk) in vs.iter().enumerate() {
                let a = lie.constant(i, j, k);
                if a.is_zero() {
                    continue;
                }
                for (l, x) in lhs.iter_mut().zip(vk) {
                    *l = l.clone() + a.clone() * x.clone();
                }
            }
            if lhs != rho[i].mul_vec(&vs[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::field::Rational;

    type Q = Rational;

    fn unit_vectors(n: usize) -> Vec<Vec<Q>> {
        (0..n)
            .map(|i| (0..n).map(|j| Q::from(i64::from(i == j))).collect())
            .collect()
    }

    #[test]
    fn adjoint_sl2_gives_identity() {
        let adj = families::adjoint_of(&families::sl_standard(2).unwrap()).unwrap();
        let c = find_kernel_certificate(&adj, 1, Side::Right)
            .unwrap()
            .unwrap();
        assert_eq!(c.linear_vectors().unwrap(), &unit_vectors(3)[..]);
        assert!(verify_certificate(&adj, &c).unwrap());
        assert!(linker_cross_identity_check(&adj, &c));
        assert!(intertwining_check(&adj, &c).unwrap());
        assert_eq!(
            c.evaluate(&[Q::from(2), Q::from(5), Q::from(-1)]),
            vec![Q::from(2), Q::from(5), Q::from(-1)]
        );
    }

    #[test]
    fn standard_representations_have_none() {
        for n in [2, 3] {
            let s = families::sl_standard(n).unwrap();
            for side in [Side::Left, Side::Right] {
                assert!(find_kernel_certificate(&s, 1, side).unwrap().is_none());
            }
        }
    }

    #[test]
    fn alternating_spaces() {
        // so(3) in its defining representation is isomorphic to the adjoint one
        let l3 = families::lambda_space(3).unwrap();
        let c = find_kernel_certificate(&l3, 1, Side::Right)
            .unwrap()
            .unwrap();
        assert!(verify_certificate(&l3, &c).unwrap());
        assert!(intertwining_check(&l3, &c).unwrap());
        let l5 = families::lambda_space(5).unwrap();
        assert!(find_kernel_certificate(&l5, 1, Side::Right)
            .unwrap()
            .is_none());
        let c2 = find_kernel_certificate(&l5, 2, Side::Right)
            .unwrap()
            .unwrap();
        assert_eq!(c2.degree, 2);
        assert!(verify_certificate(&l5, &c2).unwrap());
        let l4 = families::lambda_space(4).unwrap();
        assert!(find_kernel_certificate(&l4, 1, Side::Right)
            .unwrap()
            .is_none());
    }

    #[test]
    fn example2_constructions() {
        let j = Matrix::<Q>::from_i64(&[&[0, 1], &[-1, 0]]);
        let s = example2_space(&[j.clone(), j.clone()]).unwrap();
        assert_eq!(s.basis()[0], Matrix::from_i64(&[&[0, 0], &[-1, -1]]));
        assert_eq!(s.basis()[1], Matrix::from_i64(&[&[1, 1], &[0, 0]]));
        let cs: Vec<Matrix<Q>> = families::lambda_space(3).unwrap().basis().to_vec();
        let s3 = example2_space(&cs).unwrap();
        assert_eq!(s3.dim(), 3);
        let c = KernelCertificate::linear(Side::Left, unit_vectors(3));
        assert!(verify_certificate(&s3, &c).unwrap());
        assert!(linker_cross_identity_check(&s3, &c));
        for seed in 0..5 {
            let cs = families::random_alternating_family(4, seed).unwrap();
            let s = example2_space(&cs).unwrap();
            let c = find_kernel_certificate(&s, 1, Side::Left).unwrap().unwrap();
            assert!(verify_certificate(&s, &c).unwrap());
        }
        assert_eq!(
            example2_space(&[Matrix::<Q>::identity(2), j]),
            Err(Error::NotAlternating { index: 1 })
        );
    }

    #[test]
    fn rejection() {
        let adj = families::adjoint_of(&families::sl_standard(2).unwrap()).unwrap();
        let mut c = find_kernel_certificate(&adj, 1, Side::Right)
            .unwrap()
            .unwrap();
        c.coeffs[1][2] = Q::from(7);
        assert!(!verify_certificate(&adj, &c).unwrap());
        assert!(!linker_cross_identity_check(&adj, &c));
        let zero = KernelCertificate::linear(Side::Right, vec![vec![Q::from(0); 3]; 3]);
        assert_eq!(verify_certificate(&adj, &zero), Err(Error::ZeroCertificate));
        let short = KernelCertificate::linear(Side::Right, vec![vec![Q::from(1); 2]; 3]);
        assert!(verify_certificate(&adj, &short).is_err());
        assert!(matches!(
            find_kernel_certificate(&adj, 5, Side::Right),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn adjoint_so3_cross_identity() {
        let adj = families::adjoint_of(&families::lambda_space(3).unwrap()).unwrap();
        let c = KernelCertificate::linear(Side::Right, unit_vectors(3));
        assert!(linker_cross_identity_check(&adj, &c));
        assert!(verify_certificate(&adj, &c).unwrap());
    }
}
