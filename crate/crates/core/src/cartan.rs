//! Fitting null components and Cartan subalgebras by regular-element descent.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::lie::LieStructure;
use crate::linalg::{kernel, Matrix, Subspace};
use crate::space::MatrixSpace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanConfig<F> {
    /// Distinct trial values for the descent scan.
    pub omega: Vec<F>,
    pub max_rounds: usize,
    pub enlarge_factor: usize,
}

impl<F: Field> CartanConfig<F> {
    /// `omega = {0, 1, ..., m}` with modest stall handling.
    pub fn for_dim(m: usize) -> Self {
        Self::with_omega_size(m + 1)
    }

    /// `omega = {0, 1, ..., size - 1}`.
    pub fn with_omega_size(size: usize) -> Self {
        CartanConfig {
            omega: (0..size as i64).map(F::from_i64).collect(),
            max_rounds: 4,
            enlarge_factor: 2,
        }
    }

    pub fn validate(&self, m: usize) -> Result<()> {
        if self.omega.len() < m + 1 {
            return Err(Error::InvalidParameter(format!(
                "omega has {} values, need at least {}",
                self.omega.len(),
                m + 1
            )));
        }
        for (i, a) in self.omega.iter().enumerate() {
            if self.omega[..i].contains(a) {
                return Err(Error::InvalidParameter(format!("omega value {a} repeated")));
            }
        }
        if self.enlarge_factor < 2 {
            return Err(Error::InvalidParameter(
                "enlarge factor must be at least 2".into(),
            ));
        }
        Ok(())
    }

    /// Appends fresh integers until `omega` has grown by `enlarge_factor`.
    fn enlarged(&self) -> Self {
        let target = self.omega.len() * self.enlarge_factor;
        let mut omega = self.omega.clone();
        let mut next = 0i64;
        while omega.len() < target {
            let c = F::from_i64(next);
            if !omega.contains(&c) {
                omega.push(c);
            }
            next += 1;
        }
        CartanConfig {
            omega,
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanResult<F> {
    pub subalgebra: Subspace<F>,
    pub regular_element: Vec<F>,
    pub verified: bool,
    /// Elements visited by the descent with `dim F_0(ad_x)`, strictly decreasing.
    pub descent_trace: Vec<(Vec<F>, usize)>,
}

/// `F_0(ad_x)`: the kernel of `ad_x^k` once it stops growing (at the latest `k = m`).
pub fn fitting_null<F: Field>(l: &LieStructure<F>, x: &[F]) -> Result<Subspace<F>> {
    let ad = l.ad_matrix(x)?;
    Ok(fitting_null_of(&ad))
}

pub(crate) fn fitting_null_of<F: Field>(a: &Matrix<F>) -> Subspace<F> {
    let m = a.rows();
    let mut power = a.clone();
    let mut last = kernel(&power);
    for _ in 1..m {
        power = power.mul(a);
        let next = kernel(&power);
        if next.dim() == last.dim() {
            break;
        }
        last = next;
    }
    if m == 0 {
        return Subspace::zero(0);
    }
    last
}

/// Nilpotent (lower central series reaches zero) and self-normalizing.
pub fn verify_cartan<F: Field>(l: &LieStructure<F>, h: &Subspace<F>) -> Result<bool> {
    if !l.is_subalgebra(h) {
        return Err(Error::NotSubalgebra);
    }
    if !l.lower_central_series_of(h)?.reaches_zero() {
        return Ok(false);
    }
    l.is_self_normalizing(h)
}

fn unit_vec<F: Field>(m: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); m];
    v[i] = F::one();
    v
}

fn lincomb<F: Field>(x: &[F], y: &[F], c: &F) -> Vec<F> {
    // x + c (y - x)
    x.iter()
        .zip(y)
        .map(|(a, b)| a.clone() + c.clone() * (b.clone() - a.clone()))
        .collect()
}

/// Element of `k` whose adjoint action on `k` is not nilpotent: basis vectors first,
/// then pairwise combinations `b_i + c b_j`.
fn non_nilpotent_in<F: Field>(l: &LieStructure<F>, k: &Subspace<F>, omega: &[F]) -> Option<Vec<F>> {
    let basis = k.basis();
    if let Some(y) = basis.iter().find(|y| !l.restricted_ad(y, k).is_nilpotent()) {
        return Some(y.clone());
    }
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i == j {
                continue;
            }
            for c in omega.iter().filter(|c| !c.is_zero()) {
                let y: Vec<F> = basis[i]
                    .iter()
                    .zip(&basis[j])
                    .map(|(a, b)| a.clone() + c.clone() * b.clone())
                    .collect();
                if !l.restricted_ad(&y, k).is_nilpotent() {
                    return Some(y);
                }
            }
        }
    }
    None
}

pub fn cartan_subalgebra<F: Field + Ord>(
    l: &LieStructure<F>,
    cfg: &CartanConfig<F>,
) -> Result<CartanResult<F>> {
    let m = l.dim();
    cfg.validate(m)?;
    if m == 0 {
        return Ok(CartanResult {
            subalgebra: Subspace::zero(0),
            regular_element: Vec::new(),
            verified: true,
            descent_trace: Vec::new(),
        });
    }
    if l.ad_basis().iter().all(Matrix::is_nilpotent) && l.is_nilpotent() {
        let whole = Subspace::full(m);
        let verified = verify_cartan(l, &whole)?;
        let x = unit_vec(m, 0);
        return Ok(CartanResult {
            subalgebra: whole,
            regular_element: x.clone(),
            verified,
            descent_trace: vec![(x, m)],
        });
    }

    let mut x = unit_vec::<F>(m, 0);
    let mut k = fitting_null(l, &x)?;
    for i in 1..m {
        let cand = unit_vec::<F>(m, i);
        let f = fitting_null(l, &cand)?;
        if f.dim() < k.dim() {
            x = cand;
            k = f;
        }
    }
    let mut trace = vec![(x.clone(), k.dim())];
    let mut cfg = cfg.clone();
    let mut rounds = 0;
    loop {
        if verify_cartan(l, &k)? {
            return Ok(CartanResult {
                subalgebra: k,
                regular_element: x,
                verified: true,
                descent_trace: trace,
            });
        }
        let y = non_nilpotent_in(l, &k, &cfg.omega).ok_or(Error::DescentStalled { rounds })?;
        let mut best: Option<(usize, F, Vec<F>, Subspace<F>)> = None;
        for c in &cfg.omega {
            let z = lincomb(&x, &y, c);
            let f = fitting_null(l, &z)?;
            if f.dim() >= k.dim() {
                continue;
            }
            let better = match &best {
                None => true,
                Some((d, bc, _, _)) => f.dim() < *d || (f.dim() == *d && c < bc),
            };
            if better {
                best = Some((f.dim(), c.clone(), z, f));
            }
        }
        match best {
            Some((d, _, z, f)) => {
                x = z;
                k = f;
                trace.push((x.clone(), d));
            }
            None => {
                rounds += 1;
                if rounds > cfg.max_rounds {
                    return Err(Error::DescentStalled { rounds: rounds - 1 });
                }
                cfg = cfg.enlarged();
            }
        }
    }
}

/// Matrices of the original space spanning `h`.
pub fn cartan_as_matrix_space<F: Field>(l: &LieStructure<F>, h: &Subspace<F>) -> MatrixSpace<F> {
    let mats = h.basis().iter().map(|v| l.to_matrix(v)).collect();
    MatrixSpace::new(l.source().n(), mats).expect("matrices from the same space")
}
