//! Matrix spaces: linear spans of square matrices given by a basis.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::echelon::{combine_matrices, kernel_of_rows, EchelonBuilder};
use crate::linalg::{Matrix, SpanSolver, Subspace};

/// `span{B_1, ..., B_m}` inside `M(n, F)` with a linearly independent basis.
#[derive(Clone, Debug)]
pub struct MatrixSpace<F> {
    n: usize,
    basis: Vec<Matrix<F>>,
    solver: SpanSolver<F>,
    warnings: Vec<String>,
}

impl<F: Field> PartialEq for MatrixSpace<F> {
    /// Equality of the stored bases (ordered), not merely of the spans.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.basis == other.basis
    }
}

impl<F: Field> Eq for MatrixSpace<F> {}

impl<F: Field> MatrixSpace<F> {
    /// Builds a space from a spanning list. Dependent members are dropped (the first
    /// independent ones are kept in order) and each drop is recorded as a warning.
    pub fn new(n: usize, spanning: Vec<Matrix<F>>) -> Result<Self> {
        if let Some(bad) = spanning.iter().find(|m| m.shape() != (n, n)) {
            return Err(Error::ShapeMismatch {
                expected: format!("{n}x{n}"),
                got: format!("{}x{}", bad.rows(), bad.cols()),
            });
        }
        let mut builder = EchelonBuilder::new(n * n);
        let mut basis = Vec::new();
        let mut warnings = Vec::new();
        for (idx, m) in spanning.into_iter().enumerate() {
            if builder.insert(m.as_flat()) {
                basis.push(m);
            } else {
                warnings.push(format!(
                    "input matrix {} is dependent on the previous ones and was dropped",
                    idx + 1
                ));
            }
        }
        Ok(Self::from_independent(n, basis, warnings))
    }

    fn from_independent(n: usize, basis: Vec<Matrix<F>>, warnings: Vec<String>) -> Self {
        let flats: Vec<Vec<F>> = basis.iter().map(|m| m.as_flat().to_vec()).collect();
        let solver = SpanSolver::new(&flats, n * n);
        MatrixSpace {
            n,
            basis,
            solver,
            warnings,
        }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_independent(n, Vec::new(), Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix<F>] {
        &self.basis
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn coordinates(&self, m: &Matrix<F>) -> Option<Vec<F>> {
        if m.shape() != (self.n, self.n) {
            return None;
        }
        self.solver.solve(m.as_flat())
    }

    pub fn contains(&self, m: &Matrix<F>) -> bool {
        self.coordinates(m).is_some()
    }

    /// `sum_i coeffs[i] B_i`
    pub fn element(&self, coeffs: &[F]) -> Matrix<F> {
        assert_eq!(
            coeffs.len(),
            self.dim(),
            "coefficient vector length mismatch"
        );
        combine_matrices(coeffs, &self.basis, self.n, self.n)
    }

    /// Same span, regardless of basis.
    pub fn same_span(&self, other: &Self) -> bool {
        self.n == other.n
            && self.dim() == other.dim()
            && other.basis.iter().all(|m| self.contains(m))
    }

    pub fn transpose(&self) -> Self {
        Self::from_independent(
            self.n,
            self.basis.iter().map(Matrix::transpose).collect(),
            self.warnings.clone(),
        )
    }

    /// `{ A^{-1} B A : B in self }` with `A` invertible.
    pub fn conjugate_by(&self, a: &Matrix<F>, a_inv: &Matrix<F>) -> Self {
        Self::from_independent(
            self.n,
            self.basis.iter().map(|b| a_inv.mul(b).mul(a)).collect(),
            Vec::new(),
        )
    }

    /// Entry-wise image in another field; the result may lose dimension.
    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> Option<G>) -> Result<MatrixSpace<G>> {
        let mut mats = Vec::with_capacity(self.dim());
        for b in &self.basis {
            let mut entries = Vec::with_capacity(self.n * self.n);
            for x in b.as_flat() {
                entries.push(f(x).ok_or_else(|| Error::NotReducible {
                    value: x.to_string(),
                    p: G::characteristic(),
                })?);
            }
            mats.push(Matrix::from_flat(self.n, self.n, entries)?);
        }
        MatrixSpace::new(self.n, mats)
    }

    /// `{v : B v = 0 for every B}`
    pub fn common_kernel(&self) -> Subspace<F> {
        let rows: Vec<Vec<F>> = self.basis.iter().flat_map(Matrix::to_rows).collect();
        kernel_of_rows(&rows, self.n)
    }

    /// `B(U) = span{B_i u : i, u in basis(U)}`
    pub fn image_space(&self, u: &Subspace<F>) -> Result<Subspace<F>> {
        if u.ambient_dim() != self.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: u.ambient_dim(),
            });
        }
        let vectors = self
            .basis
            .iter()
            .flat_map(|b| u.basis().iter().map(move |v| b.mul_vec(v)))
            .collect();
        Ok(Subspace::span(self.n, vectors))
    }

    pub fn is_invariant(&self, u: &Subspace<F>) -> bool {
        self.basis.iter().all(|b| u.is_invariant_under(b))
    }

    /// Closure of `span(basis, I if unital)` under matrix products.
    pub fn associative_envelope(&self, unital: bool) -> Self {
        let n = self.n;
        let mut builder = EchelonBuilder::new(n * n);
        let mut members = Vec::new();
        let mut frontier = Vec::new();
        let seeds = unital
            .then(|| Matrix::identity(n))
            .into_iter()
            .chain(self.basis.iter().cloned());
        for m in seeds {
            if builder.insert(m.as_flat()) {
                members.push(m.clone());
                frontier.push(m);
            }
        }
        // Words in the generators: left-multiplying the newest members suffices.
        while !frontier.is_empty() && builder.rank() < n * n {
            let mut next = Vec::new();
            for f in &frontier {
                for g in &self.basis {
                    let p = g.mul(f);
                    if builder.insert(p.as_flat()) {
                        members.push(p.clone());
                        next.push(p);
                    }
                }
            }
            frontier = next;
        }
        Self::from_independent(n, members, Vec::new())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    type Q = Rational;

    fn e(n: usize, i: usize, j: usize) -> Matrix<Q> {
        Matrix::unit(n, i - 1, j - 1)
    }

    fn sl2() -> MatrixSpace<Q> {
        MatrixSpace::new(
            2,
            vec![
                Matrix::from_i64(&[&[1, 0], &[0, -1]]),
                e(2, 1, 2),
                e(2, 2, 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn dependent_inputs_are_dropped_with_warning() {
        let s = MatrixSpace::new(
            2,
            vec![e(2, 1, 2), e(2, 1, 2).scale(&Q::from(3)), e(2, 2, 1)],
        )
        .unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.warnings().len(), 1);
        assert!(MatrixSpace::new(2, vec![Matrix::<Q>::zeros(3, 3)]).is_err());
    }

    #[test]
    fn envelope_examples() {
        assert_eq!(sl2().associative_envelope(true).dim(), 4);
        let line = MatrixSpace::new(2, vec![e(2, 1, 2)]).unwrap();
        let env = line.associative_envelope(true);
        assert_eq!(env.dim(), 2);
        assert!(env.contains(&Matrix::identity(2)) && env.contains(&e(2, 1, 2)));
        let zero = MatrixSpace::<Q>::zero(3).associative_envelope(true);
        assert_eq!(zero.dim(), 1);
        assert!(zero.contains(&Matrix::identity(3)));
        assert_eq!(
            MatrixSpace::<Q>::zero(3).associative_envelope(false).dim(),
            0
        );
    }

    #[test]
    fn kernel_and_image() {
        let line = MatrixSpace::new(2, vec![e(2, 1, 2)]).unwrap();
        let img = line.image_space(&Subspace::coordinate(2, &[1])).unwrap();
        assert_eq!(img, Subspace::coordinate(2, &[0]));
        let s = MatrixSpace::new(3, vec![e(3, 1, 2), e(3, 1, 3)]).unwrap();
        assert_eq!(s.common_kernel(), Subspace::coordinate(3, &[0]));
        assert!(line.image_space(&Subspace::zero(3)).is_err());
    }
}
