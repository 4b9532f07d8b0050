//! Lie structure of a matrix Lie algebra, computed from its structure constants.
//!
//! Subalgebras, ideals and series terms are always [`Subspace`] values in coefficient
//! space `F^m` (coordinates with respect to the stored basis of the matrix space), so
//! the lattice operations of [`crate::linalg`] apply to them directly.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::echelon::{kernel_of_rows, EchelonBuilder};
use crate::linalg::matrix::{combine, dot};
use crate::linalg::{determinant, Matrix, Subspace};
use crate::space::MatrixSpace;

/// Outcome of the bracket-closure test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureCheck {
    Closed,
    /// First basis pair (0-based, `i < j`) whose bracket leaves the span.
    Counterexample {
        i: usize,
        j: usize,
    },
}

impl ClosureCheck {
    pub fn is_closed(self) -> bool {
        self == ClosureCheck::Closed
    }
}

pub fn closure_check<F: Field>(space: &MatrixSpace<F>) -> ClosureCheck {
    let b = space.basis();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            if !space.contains(&b[i].commutator(&b[j])) {
                return ClosureCheck::Counterexample { i, j };
            }
        }
    }
    ClosureCheck::Closed
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    LowerCentral,
    Derived,
}

/// Terms `g_1 > g_2 > ...` of a lower central or derived series, strictly decreasing.
/// The last term is either zero or the nonzero fixed point the series stabilized at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport<F> {
    pub kind: SeriesKind,
    pub terms: Vec<Subspace<F>>,
    /// True when the series stopped at a nonzero term rather than reaching zero.
    pub stabilized: bool,
}

impl<F: Field> SeriesReport<F> {
    pub fn reaches_zero(&self) -> bool {
        !self.stabilized
    }

    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }
}

/// Structure constants `[a_i, a_j] = sum_k alpha_ijk a_k` of a matrix Lie algebra.
#[derive(Clone, Debug)]
pub struct LieStructure<F> {
    dim: usize,
    constants: Vec<F>,
    /// `ad_{a_i}` for each basis element; column j holds the coordinates of `[a_i, a_j]`.
    ad_basis: Vec<Matrix<F>>,
    source: MatrixSpace<F>,
}

pub fn structure_constants<F: Field>(space: &MatrixSpace<F>) -> Result<LieStructure<F>> {
    let m = space.dim();
    let b = space.basis();
    let mut constants = vec![F::zero(); m * m * m];
    for i in 0..m {
        for j in i + 1..m {
            let coeffs = space
                .coordinates(&b[i].commutator(&b[j]))
                .ok_or(Error::NotClosed { i, j })?;
            for (k, c) in coeffs.into_iter().enumerate() {
                constants[(j * m + i) * m + k] = -c.clone();
                constants[(i * m + j) * m + k] = c;
            }
        }
    }
    Ok(LieStructure::from_constants(m, constants, space.clone()))
}

impl<F: Field> LieStructure<F> {
    fn from_constants(dim: usize, constants: Vec<F>, source: MatrixSpace<F>) -> Self {
        let ad_basis = (0..dim)
            .map(|i| {
                let mut ad = Matrix::zeros(dim, dim);
                for j in 0..dim {
                    for k in 0..dim {
                        ad.set(k, j, constants[(i * dim + j) * dim + k].clone());
                    }
                }
                ad
            })
            .collect();
        LieStructure {
            dim,
            constants,
            ad_basis,
            source,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn source(&self) -> &MatrixSpace<F> {
        &self.source
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &F {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    fn check_len(&self, x: &[F]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::ShapeMismatch {
                expected: format!("coefficient vector of length {}", self.dim),
                got: format!("length {}", x.len()),
            });
        }
        Ok(())
    }

    /// Bracket of two coefficient vectors.
    pub fn bracket(&self, x: &[F], y: &[F]) -> Vec<F> {
        let adx = self.ad_unchecked(x);
        adx.mul_vec(y)
    }

    fn ad_unchecked(&self, x: &[F]) -> Matrix<F> {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (c, ad) in x.iter().zip(&self.ad_basis) {
            out.add_scaled(c, ad);
        }
        out
    }

    /// Matrix of `ad_x` in the stored basis.
    pub fn ad_matrix(&self, x: &[F]) -> Result<Matrix<F>> {
        self.check_len(x)?;
        Ok(self.ad_unchecked(x))
    }

    pub fn ad_basis(&self) -> &[Matrix<F>] {
        &self.ad_basis
    }

    /// Matrix of the element with coordinates `x` in the original matrix space.
    pub fn to_matrix(&self, x: &[F]) -> Matrix<F> {
        self.source.element(x)
    }

    pub fn is_antisymmetric(&self) -> bool {
        let m = self.dim;
        (0..m).all(|i| {
            (0..m).all(|j| {
                (0..m).all(|k| {
                    (self.constant(i, j, k).clone() + self.constant(j, i, k).clone()).is_zero()
                })
            })
        })
    }

    /// Direct triple-sum check of `[[a_i,a_j],a_k] + [[a_j,a_k],a_i] + [[a_k,a_i],a_j] = 0`.
    pub fn satisfies_jacobi(&self) -> bool {
        let m = self.dim;
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        let mut acc = F::zero();
                        for s in 0..m {
                            acc = acc
                                + self.constant(i, j, s).clone() * self.constant(s, k, l).clone()
                                + self.constant(j, k, s).clone() * self.constant(s, i, l).clone()
                                + self.constant(k, i, s).clone() * self.constant(s, j, l).clone();
                        }
                        if !acc.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Image of `ad`: the adjoint matrix space on the algebra itself.
    pub fn adjoint_space(&self) -> MatrixSpace<F> {
        MatrixSpace::new(self.dim, self.ad_basis.clone()).expect("square ad matrices")
    }

    /// Gram matrix of `kappa(x, y) = tr(ad_x ad_y)`.
    pub fn killing_form(&self) -> Matrix<F> {
        let m = self.dim;
        let mut k = Matrix::zeros(m, m);
        for i in 0..m {
            for j in i..m {
                let v = self.ad_basis[i].mul(&self.ad_basis[j]).trace();
                k.set(j, i, v.clone());
                k.set(i, j, v);
            }
        }
        k
    }

    /// Cartan's criterion (characteristic zero): the Killing form is nondegenerate.
    pub fn is_semisimple(&self) -> bool {
        if self.dim == 0 {
            return true;
        }
        !determinant(&self.killing_form()).expect("square").is_zero()
    }

    /// `[U, V] = span{[u, v]}`
    pub fn bracket_spaces(&self, u: &Subspace<F>, v: &Subspace<F>) -> Subspace<F> {
        let vectors = u
            .basis()
            .iter()
            .flat_map(|x| {
                let adx = self.ad_unchecked(x);
                v.basis().iter().map(move |y| adx.mul_vec(y))
            })
            .collect();
        Subspace::span(self.dim, vectors)
    }

    pub fn is_subalgebra(&self, h: &Subspace<F>) -> bool {
        h.ambient_dim() == self.dim && self.bracket_spaces(h, h).is_subspace_of(h)
    }

    pub fn is_ideal(&self, h: &Subspace<F>) -> bool {
        h.ambient_dim() == self.dim
            && self
                .bracket_spaces(&Subspace::full(self.dim), h)
                .is_subspace_of(h)
    }

    fn series(&self, start: &Subspace<F>, kind: SeriesKind) -> SeriesReport<F> {
        let mut terms = vec![start.clone()];
        loop {
            let last = terms.last().expect("nonempty");
            if last.is_zero() {
                return SeriesReport {
                    kind,
                    terms,
                    stabilized: false,
                };
            }
            let next = match kind {
                SeriesKind::LowerCentral => self.bracket_spaces(last, start),
                SeriesKind::Derived => self.bracket_spaces(last, last),
            };
            if next.dim() == last.dim() {
                return SeriesReport {
                    kind,
                    terms,
                    stabilized: true,
                };
            }
            terms.push(next);
        }
    }

    /// `g^1 = g, g^i = [g^{i-1}, g]`
    pub fn lower_central_series(&self) -> SeriesReport<F> {
        self.series(&Subspace::full(self.dim), SeriesKind::LowerCentral)
    }

    /// `g^(1) = g, g^(i) = [g^(i-1), g^(i-1)]`
    pub fn derived_series(&self) -> SeriesReport<F> {
        self.series(&Subspace::full(self.dim), SeriesKind::Derived)
    }

    /// Lower central series of a subalgebra `h`, brackets taken inside `h`.
    pub fn lower_central_series_of(&self, h: &Subspace<F>) -> Result<SeriesReport<F>> {
        if !self.is_subalgebra(h) {
            return Err(Error::NotSubalgebra);
        }
        Ok(self.series(h, SeriesKind::LowerCentral))
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().reaches_zero()
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().reaches_zero()
    }

    /// `n_g(h) = {x : [x, h] in h}`
    pub fn normalizer(&self, h: &Subspace<F>) -> Result<Subspace<F>> {
        if !self.is_subalgebra(h) {
            return Err(Error::NotSubalgebra);
        }
        // [x, h_j] = -ad_{h_j} x must be annihilated by every functional vanishing on h.
        let ann = h.annihilator();
        let mut rows = Vec::new();
        for hj in h.basis() {
            let ad = self.ad_unchecked(hj);
            for f in ann.basis() {
                rows.push(ad.vec_mul(f));
            }
        }
        Ok(kernel_of_rows(&rows, self.dim))
    }

    pub fn is_self_normalizing(&self, h: &Subspace<F>) -> Result<bool> {
        Ok(&self.normalizer(h)? == h)
    }

    /// Smallest bracket-closed subspace containing `gens`.
    pub fn generated_subalgebra(&self, gens: &[Vec<F>]) -> Result<Subspace<F>> {
        for g in gens {
            self.check_len(g)?;
        }
        let mut builder = EchelonBuilder::new(self.dim);
        let mut members: Vec<Vec<F>> = Vec::new();
        let mut frontier = Vec::new();
        for g in gens {
            if builder.insert(g) {
                members.push(g.clone());
                frontier.push(g.clone());
            }
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for f in &frontier {
                let adf = self.ad_unchecked(f);
                for m in members.clone() {
                    let b = adf.mul_vec(&m);
                    if builder.insert(&b) {
                        members.push(b.clone());
                        next.push(b);
                    }
                }
            }
            frontier = next;
        }
        Ok(Subspace::span(self.dim, members))
    }

    /// Matrix of `ad_y` restricted to an `ad_y`-invariant subspace `k`, in the echelon
    /// basis of `k`.
    pub fn restricted_ad(&self, y: &[F], k: &Subspace<F>) -> Matrix<F> {
        let ad = self.ad_unchecked(y);
        let d = k.dim();
        let mut out = Matrix::zeros(d, d);
        for (j, v) in k.basis().iter().enumerate() {
            let image = ad.mul_vec(v);
            let coords = k
                .coordinates(&image)
                .expect("subspace must be invariant under ad_y");
            for (i, c) in coords.into_iter().enumerate() {
                out.set(i, j, c);
            }
        }
        out
    }

    /// Killing form evaluated on two coefficient vectors.
    pub fn killing(&self, x: &[F], y: &[F]) -> F {
        let k = self.killing_form();
        dot(x, &k.mul_vec(y))
    }

    /// Element of the algebra from coefficients in a subspace basis.
    pub fn lift(&self, h: &Subspace<F>, coeffs: &[F]) -> Vec<F> {
        combine(coeffs, h.basis(), self.dim)
    }
}
