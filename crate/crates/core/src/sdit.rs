//! Singularity testing of matrix Lie algebras through a Cartan subalgebra and a
//! Vandermonde hitting set, plus weight-space analysis and two independent oracles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cartan::{cartan_as_matrix_space, cartan_subalgebra, CartanConfig, CartanResult};
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::lie::structure_constants;
use crate::linalg::echelon::{combine_matrices, poly_eval_matrix};
use crate::linalg::poly::{format_poly, rational_roots};
use crate::linalg::{char_poly, determinant, kernel, rank, Matrix, Subspace};
use crate::space::MatrixSpace;

type Q = Rational;

/// Largest grid the exhaustive evaluation oracle walks.
pub const DEFAULT_GRID_GUARD: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Singular,
    NonSingular,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Singular => "Singular",
            Verdict::NonSingular => "NonSingular",
        }
    }
}

/// Points `(1, a, ..., a^{k-1})` for `a = 0, 1, ..., (k-1) n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HittingSet {
    pub k: usize,
    pub n: usize,
    pub alphas: Vec<i64>,
    pub points: Vec<Vec<Q>>,
}

pub fn hitting_set(k: usize, n: usize) -> Result<HittingSet> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidParameter(
            "hitting set needs k >= 1 and n >= 1".into(),
        ));
    }
    let size = (k - 1)
        .checked_mul(n)
        .and_then(|v| v.checked_add(1))
        .filter(|&v| i64::try_from(v).is_ok())
        .ok_or_else(|| Error::InvalidParameter("hitting set too large".into()))?;
    let alphas: Vec<i64> = (0..size as i64).collect();
    let points = alphas
        .iter()
        .map(|&a| {
            let a = Q::from(a);
            let mut p = Vec::with_capacity(k);
            let mut pow = Q::from(1);
            for _ in 0..k {
                p.push(pow.clone());
                pow = pow * a.clone();
            }
            p
        })
        .collect();
    Ok(HittingSet {
        k,
        n,
        alphas,
        points,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Coefficients with respect to the basis the point was applied to.
    pub point: Vec<Q>,
    pub matrix: Matrix<Q>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SditVerdict {
    pub verdict: Verdict,
    /// Full-rank combination of the Cartan basis, when one was hit.
    pub witness: Option<Witness>,
    pub cartan: CartanResult<Q>,
    pub cartan_basis: Vec<Matrix<Q>>,
    pub max_rank_over_hits: usize,
    pub points_evaluated: usize,
}

fn scan(
    basis: &[Matrix<Q>],
    n: usize,
    stop_at_full: bool,
) -> Result<(usize, Option<Witness>, usize)> {
    let k = basis.len();
    let hs = hitting_set(k, n.max(1))?;
    let mut best: Option<Witness> = None;
    let mut evaluated = 0;
    for p in hs.points {
        let m = combine_matrices(&p, basis, n, n);
        let r = rank(&m);
        evaluated += 1;
        if best.as_ref().is_none_or(|b| r > b.rank) {
            best = Some(Witness {
                point: p,
                matrix: m,
                rank: r,
            });
        }
        if stop_at_full && r == n {
            break;
        }
    }
    let max = best.as_ref().map_or(0, |b| b.rank);
    Ok((max, best, evaluated))
}

/// Cartan subalgebra, hitting set over its basis with degree bound `n`, exact ranks.
pub fn sdit_decide(s: &MatrixSpace<Q>, cfg: &CartanConfig<Q>) -> Result<SditVerdict> {
    let l = structure_constants(s)?;
    let cartan = cartan_subalgebra(&l, cfg)?;
    let c = cartan_as_matrix_space(&l, &cartan.subalgebra);
    let n = s.n();
    let basis = c.basis().to_vec();
    if n == 0 {
        return Ok(SditVerdict {
            verdict: Verdict::NonSingular,
            witness: None,
            cartan,
            cartan_basis: basis,
            max_rank_over_hits: 0,
            points_evaluated: 0,
        });
    }
    if basis.is_empty() {
        return Ok(SditVerdict {
            verdict: Verdict::Singular,
            witness: None,
            cartan,
            cartan_basis: basis,
            max_rank_over_hits: 0,
            points_evaluated: 0,
        });
    }
    let (max, best, evaluated) = scan(&basis, n, true)?;
    let full = max == n;
    Ok(SditVerdict {
        verdict: if full {
            Verdict::NonSingular
        } else {
            Verdict::Singular
        },
        witness: best.filter(|_| full),
        cartan,
        cartan_basis: basis,
        max_rank_over_hits: max,
        points_evaluated: evaluated,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxRankReport {
    pub max_rank: usize,
    pub witness: Option<Witness>,
    pub cartan: CartanResult<Q>,
    pub cartan_basis: Vec<Matrix<Q>>,
}

/// Max rank over the Cartan hitting set; only offered for semisimple algebras.
pub fn semisimple_max_rank(s: &MatrixSpace<Q>, cfg: &CartanConfig<Q>) -> Result<MaxRankReport> {
    let l = structure_constants(s)?;
    if !l.is_semisimple() {
        return Err(Error::NotSemisimple);
    }
    let cartan = cartan_subalgebra(&l, cfg)?;
    let basis = cartan_as_matrix_space(&l, &cartan.subalgebra)
        .basis()
        .to_vec();
    let (max_rank, witness) = if basis.is_empty() || s.n() == 0 {
        (0, None)
    } else {
        let (max, best, _) = scan(&basis, s.n(), false)?;
        (max, best)
    };
    Ok(MaxRankReport {
        max_rank,
        witness,
        cartan,
        cartan_basis: basis,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumMode {
    /// Irrational eigenvalues are an error.
    Strict,
    /// Parts with no rational eigenvalues are collected in a residual subspace.
    Permissive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpace {
    /// Values on the Cartan basis.
    pub weight: Vec<Q>,
    pub multiplicity: usize,
    /// Generalized simultaneous eigenspace.
    pub space: Subspace<Q>,
    /// True when every Cartan element acts on `space` as the scalar given by `weight`.
    pub semisimple: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDecomposition {
    /// Sorted by weight, largest first.
    pub weights: Vec<WeightSpace>,
    /// Sum of the parts on which some Cartan element has no rational eigenvalue.
    pub residual: Subspace<Q>,
    /// Irreducible-over-the-rationals factors responsible for the residual.
    pub residual_factors: Vec<String>,
}

impl WeightDecomposition {
    pub fn has_zero_weight(&self) -> bool {
        self.weights
            .iter()
            .any(|w| w.weight.iter().all(Field::is_zero))
    }
}

/// Matrix of `a` restricted to an `a`-invariant subspace, in its echelon basis.
fn restrict(a: &Matrix<Q>, v: &Subspace<Q>) -> Matrix<Q> {
    let d = v.dim();
    let mut out = Matrix::zeros(d, d);
    for (j, b) in v.basis().iter().enumerate() {
        let coords = v.coordinates(&a.mul_vec(b)).expect("invariant subspace");
        for (i, c) in coords.into_iter().enumerate() {
            out.set(i, j, c);
        }
    }
    out
}

fn lift(v: &Subspace<Q>, inner: &Subspace<Q>) -> Subspace<Q> {
    Subspace::span(
        v.ambient_dim(),
        inner
            .basis()
            .iter()
            .map(|c| v.from_coordinates(c))
            .collect(),
    )
}

/// Simultaneous generalized eigenspaces of commuting matrices by iterative splitting.
pub fn weights(cartan: &[Matrix<Q>], mode: SpectrumMode) -> Result<WeightDecomposition> {
    let n = match cartan.first() {
        Some(m) => m.rows(),
        None => {
            return Err(Error::InvalidParameter("empty Cartan basis".into()));
        }
    };
    for m in cartan {
        if m.shape() != (n, n) {
            return Err(Error::ShapeMismatch {
                expected: format!("{n}x{n}"),
                got: format!("{}x{}", m.rows(), m.cols()),
            });
        }
    }
    for i in 0..cartan.len() {
        for j in i + 1..cartan.len() {
            if !cartan[i].commutator(&cartan[j]).is_zero() {
                return Err(Error::NonCommuting { i: i + 1, j: j + 1 });
            }
        }
    }
    let mut blocks: Vec<(Vec<Q>, Subspace<Q>)> = vec![(Vec::new(), Subspace::full(n))];
    let mut residual = Subspace::zero(n);
    let mut residual_factors = Vec::new();
    for h in cartan {
        let mut next = Vec::new();
        for (w, v) in blocks {
            let r = restrict(h, &v);
            let cp = char_poly(&r)?;
            let (roots, cofactor) = rational_roots(&cp)?;
            for (lambda, mult) in roots {
                let shifted = r.sub(&Matrix::identity(r.rows()).scale(&lambda));
                let gen = kernel(&shifted.pow(mult));
                let mut w2 = w.clone();
                w2.push(lambda);
                next.push((w2, lift(&v, &gen)));
            }
            if cofactor.len() > 1 {
                let factor = format_poly(&cofactor);
                if mode == SpectrumMode::Strict {
                    return Err(Error::UnsupportedSpectrum {
                        factor: format!("{factor} has no rational roots"),
                    });
                }
                let part = lift(&v, &kernel(&poly_eval_matrix(&cofactor, &r)));
                residual = residual.sum(&part)?;
                if !residual_factors.contains(&factor) {
                    residual_factors.push(factor);
                }
            }
        }
        blocks = next;
    }
    let mut weights: Vec<WeightSpace> = blocks
        .into_iter()
        .map(|(weight, space)| {
            let semisimple = cartan.iter().zip(&weight).all(|(h, c)| {
                let shifted = h.sub(&Matrix::identity(n).scale(c));
                space
                    .basis()
                    .iter()
                    .all(|b| shifted.mul_vec(b).iter().all(Field::is_zero))
            });
            WeightSpace {
                multiplicity: space.dim(),
                weight,
                space,
                semisimple,
            }
        })
        .collect();
    weights.sort_by(|a, b| b.weight.cmp(&a.weight));
    Ok(WeightDecomposition {
        weights,
        residual,
        residual_factors,
    })
}

/// Singular iff the zero weight occurs.
pub fn singular_via_weights(w: &WeightDecomposition) -> Verdict {
    if w.has_zero_weight() {
        Verdict::Singular
    } else {
        Verdict::NonSingular
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridVerdict {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub points_evaluated: u128,
}

/// Exhaustive test for arbitrary matrix spaces: `det(sum x_i B_i)` has degree at most
/// `n`, so it vanishes identically iff it vanishes on `{0..n}^m`.
pub fn grid_sdit(s: &MatrixSpace<Q>, guard: u128) -> Result<GridVerdict> {
    let (m, n) = (s.dim(), s.n());
    if n == 0 {
        return Ok(GridVerdict {
            verdict: Verdict::NonSingular,
            witness: None,
            points_evaluated: 0,
        });
    }
    let side = n as u128 + 1;
    let total = (0..m).try_fold(1u128, |acc, _| acc.checked_mul(side));
    match total {
        Some(t) if t <= guard => {}
        _ => {
            return Err(Error::GuardExceeded {
                what: "grid points".into(),
                count: total.unwrap_or(u128::MAX),
                limit: guard,
            })
        }
    }
    let mut idx = vec![0usize; m];
    let mut evaluated = 0u128;
    loop {
        let point: Vec<Q> = idx.iter().map(|&i| Q::from(i as i64)).collect();
        let mat = s.element(&point);
        evaluated += 1;
        if !determinant(&mat)?.is_zero() {
            return Ok(GridVerdict {
                verdict: Verdict::NonSingular,
                witness: Some(Witness {
                    point,
                    matrix: mat,
                    rank: n,
                }),
                points_evaluated: evaluated,
            });
        }
        let mut pos = 0;
        loop {
            if pos == m {
                return Ok(GridVerdict {
                    verdict: Verdict::Singular,
                    witness: None,
                    points_evaluated: evaluated,
                });
            }
            idx[pos] += 1;
            if idx[pos] <= n {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub samples: usize,
    pub max_rank: usize,
    pub witness: Option<Witness>,
}

/// Seeded random rational combinations `sum c_i B_i` with `c_i = a/b`, `|a| <= 50`,
/// `1 <= b <= 10`. Can only confirm non-singularity.
pub fn random_rank_probe(s: &MatrixSpace<Q>, samples: usize, seed: u64) -> ProbeReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<Witness> = None;
    for _ in 0..samples {
        let point: Vec<Q> = (0..s.dim())
            .map(|_| Q::new(rng.gen_range(-50..=50), rng.gen_range(1..=10)))
            .collect();
        let m = s.element(&point);
        let r = rank(&m);
        if best.as_ref().is_none_or(|b| r > b.rank) {
            best = Some(Witness {
                point,
                matrix: m,
                rank: r,
            });
        }
    }
    ProbeReport {
        samples,
        max_rank: best.as_ref().map_or(0, |b| b.rank),
        witness: best,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn cfg(s: &MatrixSpace<Q>) -> CartanConfig<Q> {
        CartanConfig::for_dim(s.dim())
    }

    fn q(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| Q::from(x)).collect()
    }

    #[test]
    fn hitting_set_shapes() {
        let h = hitting_set(1, 5).unwrap();
        assert_eq!(h.points, vec![q(&[1])]);
        let h = hitting_set(3, 2).unwrap();
        assert_eq!(h.points.len(), 5);
        assert_eq!(h.points[4], q(&[1, 4, 16]));
        let h = hitting_set(2, 3).unwrap();
        assert_eq!(h.alphas, vec![0, 1, 2, 3]);
        for k in 1..=20 {
            for n in 1..=20 {
                assert_eq!(hitting_set(k, n).unwrap().points.len(), (k - 1) * n + 1);
            }
        }
        assert!(hitting_set(0, 3).is_err());
    }

    #[test]
    fn decide_examples() {
        let l3 = families::lambda_space(3).unwrap();
        let v = sdit_decide(&l3, &cfg(&l3)).unwrap();
        assert_eq!(v.verdict, Verdict::Singular);
        assert_eq!(v.max_rank_over_hits, 2);
        let l4 = families::lambda_space(4).unwrap();
        let v = sdit_decide(&l4, &cfg(&l4)).unwrap();
        assert_eq!(v.verdict, Verdict::NonSingular);
        let w = v.witness.unwrap();
        assert_eq!(w.rank, 4);
        assert!(!determinant(&w.matrix).unwrap().is_zero());
        let sl2 = families::sl_standard(2).unwrap();
        let v = sdit_decide(&sl2, &cfg(&sl2)).unwrap();
        assert_eq!(v.verdict, Verdict::NonSingular);
        assert_eq!(v.witness.unwrap().rank, 2);
        let bad = families::example2_random(3, 1).unwrap();
        assert!(matches!(
            sdit_decide(&bad, &cfg(&bad)),
            Err(Error::NotClosed { .. })
        ));
    }

    #[test]
    fn max_rank_examples() {
        let l3 = families::lambda_space(3).unwrap();
        assert_eq!(semisimple_max_rank(&l3, &cfg(&l3)).unwrap().max_rank, 2);
        let sl2 = families::sl_standard(2).unwrap();
        assert_eq!(semisimple_max_rank(&sl2, &cfg(&sl2)).unwrap().max_rank, 2);
        let adj = families::adjoint_of(&sl2).unwrap();
        assert_eq!(semisimple_max_rank(&adj, &cfg(&adj)).unwrap().max_rank, 2);
        let h = families::heisenberg(3).unwrap();
        assert_eq!(semisimple_max_rank(&h, &cfg(&h)), Err(Error::NotSemisimple));
    }

    fn weight_values(w: &WeightDecomposition) -> Vec<(Vec<Q>, usize)> {
        w.weights
            .iter()
            .map(|x| (x.weight.clone(), x.multiplicity))
            .collect()
    }

    #[test]
    fn weight_examples() {
        let h_adj = Matrix::diagonal(&q(&[0, 2, -2]));
        let w = weights(&[h_adj], SpectrumMode::Strict).unwrap();
        assert_eq!(
            weight_values(&w),
            vec![(q(&[2]), 1), (q(&[0]), 1), (q(&[-2]), 1)]
        );
        assert_eq!(singular_via_weights(&w), Verdict::Singular);
        let h = Matrix::from_i64(&[&[1, 0], &[0, -1]]);
        let w = weights(&[h], SpectrumMode::Strict).unwrap();
        assert_eq!(weight_values(&w), vec![(q(&[1]), 1), (q(&[-1]), 1)]);
        assert_eq!(singular_via_weights(&w), Verdict::NonSingular);
        let rep = families::sl_monomial_rep(2, 1).unwrap();
        let w = weights(&rep.basis()[..1], SpectrumMode::Strict).unwrap();
        assert_eq!(
            weight_values(&w),
            vec![(q(&[2]), 1), (q(&[0]), 1), (q(&[-2]), 1)]
        );
        let cubic = families::sl_polynomial_rep(2, 3, 64).unwrap();
        let w = weights(&cubic.basis()[..1], SpectrumMode::Strict).unwrap();
        assert_eq!(
            weight_values(&w),
            vec![(q(&[3]), 1), (q(&[1]), 1), (q(&[-1]), 1), (q(&[-3]), 1)]
        );
        assert_eq!(singular_via_weights(&w), Verdict::NonSingular);
        let v = sdit_decide(&cubic, &cfg(&cubic)).unwrap();
        assert_eq!(v.verdict, Verdict::NonSingular);
    }

    #[test]
    fn weight_errors_and_residual() {
        let rot = Matrix::<Q>::from_i64(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]]);
        assert!(matches!(
            weights(std::slice::from_ref(&rot), SpectrumMode::Strict),
            Err(Error::UnsupportedSpectrum { .. })
        ));
        let w = weights(&[rot], SpectrumMode::Permissive).unwrap();
        assert_eq!(w.residual.dim(), 2);
        assert_eq!(w.residual_factors, vec!["x^2 + 1".to_string()]);
        assert_eq!(weight_values(&w), vec![(q(&[0]), 1)]);
        let a = Matrix::<Q>::unit(2, 0, 1);
        let b = Matrix::<Q>::unit(2, 1, 0);
        assert_eq!(
            weights(&[a, b], SpectrumMode::Strict),
            Err(Error::NonCommuting { i: 1, j: 2 })
        );
    }

    #[test]
    fn generalized_weight_spaces() {
        let j = Matrix::<Q>::from_i64(&[&[2, 1], &[0, 2]]);
        let w = weights(&[j], SpectrumMode::Strict).unwrap();
        assert_eq!(w.weights.len(), 1);
        assert_eq!(w.weights[0].multiplicity, 2);
        assert!(!w.weights[0].semisimple);
    }

    #[test]
    fn grid_oracle() {
        let l3 = families::lambda_space(3).unwrap();
        assert_eq!(
            grid_sdit(&l3, DEFAULT_GRID_GUARD).unwrap().verdict,
            Verdict::Singular
        );
        let l4 = families::lambda_space(4).unwrap();
        let g = grid_sdit(&l4, DEFAULT_GRID_GUARD).unwrap();
        assert_eq!(g.verdict, Verdict::NonSingular);
        assert_eq!(g.witness.unwrap().rank, 4);
        for seed in 0..3 {
            let s = families::example2_random(4, seed).unwrap();
            assert_eq!(
                grid_sdit(&s, DEFAULT_GRID_GUARD).unwrap().verdict,
                Verdict::Singular
            );
        }
        assert!(grid_sdit(&families::sl_standard(4).unwrap(), 1000).is_err());
    }

    #[test]
    fn probe_is_deterministic() {
        let l4 = families::lambda_space(4).unwrap();
        let a = random_rank_probe(&l4, 20, 3);
        assert_eq!(a, random_rank_probe(&l4, 20, 3));
        assert_eq!(a.max_rank, 4);
        let l3 = families::lambda_space(3).unwrap();
        assert_eq!(random_rank_probe(&l3, 50, 1).max_rank, 2);
    }
}
