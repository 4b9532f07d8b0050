//! Shrunk subspaces: the deficit function, a finite-field brute-force oracle,
//! block-triangular structure and composition series.

use crate::error::{Error, Result};
use crate::field::{Field, FiniteField, Rational};
use crate::lie::closure_check;
use crate::linalg::poly::rational_roots;
use crate::linalg::{char_poly, enumerate_subspaces, kernel, Matrix, SpanSolver, Subspace};
use crate::space::MatrixSpace;

type Q = Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeficitReport<F> {
    pub subspace: Subspace<F>,
    pub image: Subspace<F>,
    /// `dim U - dim B(U)`
    pub deficit: i64,
}

impl<F: Field> DeficitReport<F> {
    pub fn is_shrunk(&self) -> bool {
        self.deficit > 0
    }
}

pub fn shrink_deficit<F: Field>(s: &MatrixSpace<F>, u: &Subspace<F>) -> Result<DeficitReport<F>> {
    let image = s.image_space(u)?;
    Ok(DeficitReport {
        deficit: u.dim() as i64 - image.dim() as i64,
        subspace: u.clone(),
        image,
    })
}

fn deficit<F: Field>(s: &MatrixSpace<F>, u: &Subspace<F>) -> Result<i64> {
    Ok(shrink_deficit(s, u)?.deficit)
}

/// `sd(U1 cap U2) + sd(U1 + U2) >= sd(U1) + sd(U2)`
pub fn supermodularity_check<F: Field>(
    s: &MatrixSpace<F>,
    u1: &Subspace<F>,
    u2: &Subspace<F>,
) -> Result<bool> {
    let meet = u1.intersection(u2)?;
    let join = u1.sum(u2)?;
    Ok(deficit(s, &meet)? + deficit(s, &join)? >= deficit(s, u1)? + deficit(s, u2)?)
}

/// Size limits for exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteForceLimits {
    pub max_n: usize,
    pub max_p: u64,
    pub max_subspaces: u128,
}

impl Default for BruteForceLimits {
    fn default() -> Self {
        BruteForceLimits {
            max_n: 5,
            max_p: 3,
            max_subspaces: crate::linalg::DEFAULT_SUBSPACE_GUARD,
        }
    }
}

impl BruteForceLimits {
    /// Only the subspace-count guard applies.
    pub fn count_only(max_subspaces: u128) -> Self {
        BruteForceLimits {
            max_n: usize::MAX,
            max_p: u64::MAX,
            max_subspaces,
        }
    }

    fn check<F: FiniteField>(&self, n: usize) -> Result<()> {
        if n > self.max_n {
            return Err(Error::GuardExceeded {
                what: "ambient size for brute force".into(),
                count: n as u128,
                limit: self.max_n as u128,
            });
        }
        if F::order() > self.max_p {
            return Err(Error::GuardExceeded {
                what: "field size for brute force".into(),
                count: u128::from(F::order()),
                limit: u128::from(self.max_p),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcrkReport<F> {
    pub field: String,
    pub n: usize,
    pub ncrk: usize,
    pub max_deficit: usize,
    /// Intersection of all max-deficit subspaces.
    pub canonical_lower: Subspace<F>,
    /// Span of all max-deficit subspaces.
    pub canonical_upper: Subspace<F>,
    pub all_max_deficit_count: u128,
    pub subspaces_examined: u128,
    /// Both canonical subspaces attain the maximum deficit.
    pub canonical_attain_max: bool,
}

/// Exhaustive `max_U dim U - dim B(U)` over `GF(p)^n`.
pub fn ncrk_bruteforce<F: FiniteField>(
    s: &MatrixSpace<F>,
    limits: &BruteForceLimits,
) -> Result<NcrkReport<F>> {
    let n = s.n();
    limits.check::<F>(n)?;
    let mut best = i64::MIN;
    let mut lower = Subspace::full(n);
    let mut upper = Subspace::zero(n);
    let mut count = 0u128;
    let mut examined = 0u128;
    for u in enumerate_subspaces::<F>(n, limits.max_subspaces)? {
        examined += 1;
        let d = deficit(s, &u)?;
        if d > best {
            best = d;
            lower = u.clone();
            upper = u;
            count = 1;
        } else if d == best {
            lower = lower.intersection(&u)?;
            upper = upper.sum(&u)?;
            count += 1;
        }
    }
    let max_deficit = best.max(0) as usize;
    let attain = deficit(s, &lower)? == best && deficit(s, &upper)? == best;
    Ok(NcrkReport {
        field: format!("GF({})", F::order()),
        n,
        ncrk: n - max_deficit,
        max_deficit,
        canonical_lower: lower,
        canonical_upper: upper,
        all_max_deficit_count: count,
        subspaces_examined: examined,
        canonical_attain_max: attain,
    })
}

/// Checks that a shrunk subspace, if any exists, can be found inside `v` or containing
/// `v`, for an invariant subspace `v`.
pub fn invariant_split_check<F: FiniteField>(
    s: &MatrixSpace<F>,
    v: &Subspace<F>,
    limits: &BruteForceLimits,
) -> Result<bool> {
    limits.check::<F>(s.n())?;
    if !s.is_invariant(v) {
        return Err(Error::ChainNotInvariant { index: 1 });
    }
    let mut any = false;
    for u in enumerate_subspaces::<F>(s.n(), limits.max_subspaces)? {
        if deficit(s, &u)? > 0 {
            any = true;
            if u.is_subspace_of(v) || v.is_subspace_of(&u) {
                return Ok(true);
            }
        }
    }
    Ok(!any)
}

/// Permutations `p` (as images of `0..n`) whose permutation matrix `P` satisfies
/// `P B P^{-1} = B`.
pub fn permutation_stabilizers<F: Field>(s: &MatrixSpace<F>) -> Result<Vec<Vec<usize>>> {
    let n = s.n();
    if n > 7 {
        return Err(Error::GuardExceeded {
            what: "permutations".into(),
            count: (1..=n as u128).product(),
            limit: 5040,
        });
    }
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let p = permutation_matrix::<F>(&perm);
        let pt = p.transpose();
        if s.basis().iter().all(|b| s.contains(&p.mul(b).mul(&pt))) {
            out.push(perm.clone());
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(out)
}

pub fn permutation_matrix<F: Field>(perm: &[usize]) -> Matrix<F> {
    let n = perm.len();
    let mut p = Matrix::zeros(n, n);
    for (j, &i) in perm.iter().enumerate() {
        p.set(i, j, F::one());
    }
    p
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Matrix of the action induced by `b` on `upper / lower`, in the basis `comp`.
fn quotient_block<F: Field>(b: &Matrix<F>, lower: &Subspace<F>, comp: &[Vec<F>]) -> Matrix<F> {
    let n = b.rows();
    let mut full: Vec<Vec<F>> = lower.basis().to_vec();
    full.extend(comp.iter().cloned());
    let solver = SpanSolver::new(&full, n);
    let offset = lower.dim();
    let d = comp.len();
    let mut out = Matrix::zeros(d, d);
    for (j, w) in comp.iter().enumerate() {
        let coords = solver.solve(&b.mul_vec(w)).expect("invariant chain step");
        for i in 0..d {
            out.set(i, j, coords[offset + i].clone());
        }
    }
    out
}

fn normalize_chain<F: Field>(n: usize, chain: &[Subspace<F>]) -> Result<Vec<Subspace<F>>> {
    let mut out = Vec::with_capacity(chain.len() + 2);
    if chain.first().is_none_or(|v| !v.is_zero()) {
        out.push(Subspace::zero(n));
    }
    out.extend(chain.iter().cloned());
    if out.last().is_none_or(|v| !v.is_full()) {
        out.push(Subspace::full(n));
    }
    for (idx, w) in out.windows(2).enumerate() {
        if w[0].ambient_dim() != n || w[1].ambient_dim() != n {
            return Err(Error::AmbientMismatch {
                left: n,
                right: if w[0].ambient_dim() != n {
                    w[0].ambient_dim()
                } else {
                    w[1].ambient_dim()
                },
            });
        }
        if !(w[0].is_subspace_of(&w[1]) && w[0].dim() < w[1].dim()) {
            return Err(Error::InvalidParameter(format!(
                "chain is not strictly increasing at step {}",
                idx + 1
            )));
        }
    }
    Ok(out)
}

/// Induced actions on the successive quotients of an invariant flag. Missing `0` and
/// `F^n` endpoints are added.
pub fn diagonal_blocks<F: Field>(
    s: &MatrixSpace<F>,
    chain: &[Subspace<F>],
) -> Result<Vec<MatrixSpace<F>>> {
    let chain = normalize_chain(s.n(), chain)?;
    for (index, v) in chain.iter().enumerate() {
        if !s.is_invariant(v) {
            return Err(Error::ChainNotInvariant { index });
        }
    }
    Ok(chain
        .windows(2)
        .map(|w| {
            let comp = w[0].complement_in(&w[1]);
            let mats = s
                .basis()
                .iter()
                .map(|b| quotient_block(b, &w[0], &comp))
                .collect();
            MatrixSpace::new(comp.len(), mats).expect("square blocks")
        })
        .collect())
}

/// Block criterion: some diagonal block has a shrunk subspace.
pub fn blockd_shrunk_check<F: FiniteField>(
    blocks: &[MatrixSpace<F>],
    limits: &BruteForceLimits,
) -> Result<bool> {
    for b in blocks {
        if ncrk_bruteforce(b, limits)?.max_deficit > 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorStatus {
    /// One-dimensional with zero action.
    Trivial,
    /// Nonzero and absolutely irreducible (Burnside certificate, or dimension one).
    Irreducible,
    /// No invariant subspace was found and the envelope is not all of `M(d)`, but the
    /// identity lies in the non-unital envelope, so no constituent over any extension
    /// field has zero action.
    NoTrivialConstituent,
    Undetermined,
}

impl FactorStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            FactorStatus::Trivial => "trivial",
            FactorStatus::Irreducible => "irreducible",
            FactorStatus::NoTrivialConstituent => "no-trivial-constituent",
            FactorStatus::Undetermined => "undetermined",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionFactor {
    pub dim: usize,
    pub block: MatrixSpace<Q>,
    pub trivial: bool,
    /// `None` when irreducibility could not be settled.
    pub absolutely_irreducible: Option<bool>,
    pub status: FactorStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionSeries {
    /// `0 = V_0 < V_1 < ... < V_d = Q^n`
    pub chain: Vec<Subspace<Q>>,
    pub factors: Vec<CompositionFactor>,
}

impl CompositionSeries {
    pub fn is_complete(&self) -> bool {
        self.factors
            .iter()
            .all(|f| f.status != FactorStatus::Undetermined)
    }
}

fn spin(mats: &[Matrix<Q>], d: usize, seeds: Vec<Vec<Q>>) -> Subspace<Q> {
    let mut current = Subspace::span(d, seeds);
    let mut frontier = current.basis().to_vec();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in &frontier {
            for b in mats {
                let w = b.mul_vec(v);
                if !current.contains(&w) {
                    current = current
                        .sum(&Subspace::span(d, vec![w.clone()]))
                        .expect("same ambient");
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    current
}

fn common_kernel_of(mats: &[&Matrix<Q>], d: usize) -> Subspace<Q> {
    let rows: Vec<Vec<Q>> = mats.iter().flat_map(|m| m.to_rows()).collect();
    crate::linalg::echelon::kernel_of_rows(&rows, d)
}

/// Vectors worth spinning: standard basis, rational eigenvectors of each generator,
/// kernels of single generators and of pairs.
fn spin_candidates(mats: &[Matrix<Q>], d: usize) -> Vec<Vec<Q>> {
    let mut out: Vec<Vec<Q>> = (0..d)
        .map(|i| {
            let mut v = vec![Q::zero(); d];
            v[i] = Q::one();
            v
        })
        .collect();
    for b in mats {
        if let Ok(cp) = char_poly(b) {
            if let Ok((roots, _)) = rational_roots(&cp) {
                for (lambda, _) in roots {
                    let shifted = b.sub(&Matrix::identity(d).scale(&lambda));
                    out.extend(kernel(&shifted).basis().iter().cloned());
                }
            }
        }
    }
    for i in 0..mats.len() {
        for j in i + 1..mats.len() {
            out.extend(
                common_kernel_of(&[&mats[i], &mats[j]], d)
                    .basis()
                    .iter()
                    .cloned(),
            );
        }
    }
    out
}

fn proper(u: &Subspace<Q>, d: usize) -> bool {
    u.dim() > 0 && u.dim() < d
}

fn find_invariant_direct(
    mats: &[Matrix<Q>],
    d: usize,
    envelope: &MatrixSpace<Q>,
) -> Option<Subspace<Q>> {
    let refs: Vec<&Matrix<Q>> = mats.iter().collect();
    let ck = common_kernel_of(&refs, d);
    if !ck.is_zero() {
        let line = Subspace::span(d, vec![ck.basis()[0].clone()]);
        if proper(&line, d) {
            return Some(line);
        }
    }
    let full = Subspace::full(d);
    let coimage = Subspace::span(
        d,
        mats.iter()
            .flat_map(|b| {
                full.basis()
                    .iter()
                    .map(|v| b.mul_vec(v))
                    .collect::<Vec<_>>()
            })
            .collect(),
    );
    if proper(&coimage, d) {
        return Some(coimage);
    }
    let env_image = envelope.image_space(&full).expect("same ambient");
    if proper(&env_image, d) {
        return Some(env_image);
    }
    let env_kernel = envelope.common_kernel();
    if proper(&env_kernel, d) {
        return Some(env_kernel);
    }
    for v in spin_candidates(mats, d) {
        let u = spin(mats, d, vec![v]);
        if proper(&u, d) {
            return Some(u);
        }
    }
    None
}

/// A proper nonzero invariant subspace, found directly or as the annihilator of an
/// invariant subspace of the transposed action.
fn find_invariant(mats: &[Matrix<Q>], d: usize) -> Option<Subspace<Q>> {
    let space = MatrixSpace::new(d, mats.to_vec()).expect("square");
    let env = space.associative_envelope(false);
    if let Some(u) = find_invariant_direct(mats, d, &env) {
        return Some(u);
    }
    let transposed: Vec<Matrix<Q>> = mats.iter().map(Matrix::transpose).collect();
    find_invariant_direct(&transposed, d, &env.transpose()).map(|w| w.annihilator())
}

fn lift(lower: &Subspace<Q>, comp: &[Vec<Q>], w: &Subspace<Q>) -> Subspace<Q> {
    let n = lower.ambient_dim();
    let mut vectors = lower.basis().to_vec();
    for c in w.basis() {
        vectors.push(crate::linalg::matrix::combine(c, comp, n));
    }
    Subspace::span(n, vectors)
}

fn refine(
    s: &MatrixSpace<Q>,
    lower: &Subspace<Q>,
    upper: &Subspace<Q>,
    out: &mut Vec<Subspace<Q>>,
) {
    let comp = lower.complement_in(upper);
    let d = comp.len();
    let blocks: Vec<Matrix<Q>> = s
        .basis()
        .iter()
        .map(|b| quotient_block(b, lower, &comp))
        .collect();
    if d > 1 {
        if let Some(w) = find_invariant(&blocks, d) {
            let mid = lift(lower, &comp, &w);
            refine(s, lower, &mid, out);
            refine(s, &mid, upper, out);
            return;
        }
    }
    out.push(upper.clone());
}

fn classify(blocks: Vec<Matrix<Q>>, d: usize) -> CompositionFactor {
    let block = MatrixSpace::new(d, blocks).expect("square");
    let zero = block.dim() == 0;
    if d == 1 {
        return CompositionFactor {
            dim: 1,
            trivial: zero,
            absolutely_irreducible: Some(true),
            status: if zero {
                FactorStatus::Trivial
            } else {
                FactorStatus::Irreducible
            },
            block,
        };
    }
    let full = block.associative_envelope(true).dim() == d * d;
    let status = if full {
        FactorStatus::Irreducible
    } else if block
        .associative_envelope(false)
        .contains(&Matrix::identity(d))
    {
        FactorStatus::NoTrivialConstituent
    } else {
        FactorStatus::Undetermined
    };
    CompositionFactor {
        dim: d,
        trivial: false,
        absolutely_irreducible: if full { Some(true) } else { None },
        status,
        block,
    }
}

/// Invariant flag with irreducible factors, by kernel, image and spinning splits.
pub fn composition_series(s: &MatrixSpace<Q>) -> Result<CompositionSeries> {
    if let crate::lie::ClosureCheck::Counterexample { i, j } = closure_check(s) {
        return Err(Error::NotClosed { i, j });
    }
    let n = s.n();
    let mut chain = vec![Subspace::zero(n)];
    if n > 0 {
        refine(s, &Subspace::zero(n), &Subspace::full(n), &mut chain);
    }
    let factors = chain
        .windows(2)
        .map(|w| {
            let comp = w[0].complement_in(&w[1]);
            let blocks = s
                .basis()
                .iter()
                .map(|b| quotient_block(b, &w[0], &comp))
                .collect();
            classify(blocks, comp.len())
        })
        .collect();
    Ok(CompositionSeries { chain, factors })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShrunkAnswer {
    /// `factor` is 1-based; `witness = V_factor` satisfies `dim B(V) < dim V`.
    Yes {
        factor: usize,
        witness: DeficitReport<Q>,
    },
    No,
    Undetermined {
        factors: Vec<usize>,
    },
}

impl ShrunkAnswer {
    pub fn is_yes(&self) -> bool {
        matches!(self, ShrunkAnswer::Yes { .. })
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ShrunkAnswer::Yes { .. } => "yes",
            ShrunkAnswer::No => "no",
            ShrunkAnswer::Undetermined { .. } => "undetermined",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShrunkDecision {
    pub answer: ShrunkAnswer,
    pub series: CompositionSeries,
}

/// Shrunk subspace exists iff some composition factor is trivial.
pub fn has_shrunk_subspace(s: &MatrixSpace<Q>) -> Result<ShrunkDecision> {
    let series = composition_series(s)?;
    let answer = if let Some(idx) = series.factors.iter().position(|f| f.trivial) {
        let witness = shrink_deficit(s, &series.chain[idx + 1])?;
        ShrunkAnswer::Yes {
            factor: idx + 1,
            witness,
        }
    } else {
        let open: Vec<usize> = series
            .factors
            .iter()
            .enumerate()
            .filter(|(_, f)| f.status == FactorStatus::Undetermined)
            .map(|(i, _)| i + 1)
            .collect();
        if open.is_empty() {
            ShrunkAnswer::No
        } else {
            ShrunkAnswer::Undetermined { factors: open }
        }
    };
    Ok(ShrunkDecision { answer, series })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::field::{Fp, Gf2};
    use proptest::prelude::*;

    fn e(n: usize, i: usize, j: usize) -> Matrix<Q> {
        Matrix::unit(n, i - 1, j - 1)
    }

    fn upper_pair() -> MatrixSpace<Q> {
        MatrixSpace::new(3, vec![e(3, 1, 3), e(3, 2, 3)]).unwrap()
    }

    fn middle_trivial() -> MatrixSpace<Q> {
        MatrixSpace::new(
            3,
            vec![e(3, 1, 1), e(3, 1, 2), e(3, 1, 3), e(3, 2, 3), e(3, 3, 3)],
        )
        .unwrap()
    }

    fn to_gf<const P: u64>(s: &MatrixSpace<Q>) -> MatrixSpace<Fp<P>> {
        s.map_field(Fp::<P>::from_rational).unwrap()
    }

    #[test]
    fn deficit_examples() {
        let s = upper_pair();
        let r = shrink_deficit(&s, &Subspace::coordinate(3, &[0, 1])).unwrap();
        assert_eq!(r.deficit, 2);
        assert!(r.image.is_zero());
        let r = shrink_deficit(&s, &Subspace::full(3)).unwrap();
        assert_eq!(r.deficit, 1);
        assert_eq!(r.image, Subspace::coordinate(3, &[0, 1]));
        assert_eq!(shrink_deficit(&s, &Subspace::zero(3)).unwrap().deficit, 0);
        assert!(shrink_deficit(&s, &Subspace::zero(2)).is_err());
    }

    #[test]
    fn bruteforce_examples() {
        let l3 = to_gf::<3>(&families::lambda_space(3).unwrap());
        let r = ncrk_bruteforce(&l3, &BruteForceLimits::default()).unwrap();
        assert_eq!((r.max_deficit, r.ncrk), (0, 3));
        let up = to_gf::<2>(&upper_pair());
        let r = ncrk_bruteforce(&up, &BruteForceLimits::default()).unwrap();
        assert_eq!(r.max_deficit, 2);
        assert_eq!(r.canonical_lower, Subspace::coordinate(3, &[0, 1]));
        assert_eq!(r.canonical_upper, Subspace::coordinate(3, &[0, 1]));
        assert_eq!(r.subspaces_examined, 16);
        assert!(r.canonical_attain_max);
        let line = to_gf::<2>(&families::strict_upper_line());
        assert_eq!(
            ncrk_bruteforce(&line, &BruteForceLimits::default())
                .unwrap()
                .max_deficit,
            1
        );
        let big = to_gf::<2>(&families::lambda_space(6).unwrap());
        assert!(ncrk_bruteforce(&big, &BruteForceLimits::default()).is_err());
    }

    #[test]
    fn supermodular_on_all_gf2_pairs() {
        let up = to_gf::<2>(&upper_pair());
        let all: Vec<_> = enumerate_subspaces::<Gf2>(3, 100).unwrap().collect();
        for a in &all {
            assert!(supermodularity_check(&up, a, a).unwrap());
            for b in &all {
                assert!(supermodularity_check(&up, a, b).unwrap());
            }
        }
    }

    #[test]
    fn block_examples() {
        let chain = [
            Subspace::<Q>::zero(2),
            Subspace::coordinate(2, &[0]),
            Subspace::full(2),
        ];
        let b = diagonal_blocks(&families::borel_sl2().unwrap(), &chain).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].basis(), &[Matrix::from_i64(&[&[1]])]);
        assert!(b[1].contains(&Matrix::from_i64(&[&[-1]])) && b[1].dim() == 1);
        let b = diagonal_blocks(&families::strict_upper_line(), &chain).unwrap();
        assert!(b.iter().all(|x| x.dim() == 0));
        let l3 = families::lambda_space(3).unwrap();
        let b = diagonal_blocks(&l3, &[]).unwrap();
        assert!(b.len() == 1 && b[0].same_span(&l3));
        let bad = [Subspace::coordinate(2, &[1])];
        assert!(matches!(
            diagonal_blocks(&families::borel_sl2().unwrap(), &bad),
            Err(Error::ChainNotInvariant { .. })
        ));
    }

    #[test]
    fn block_shrunk_examples() {
        let one = |v: i64| {
            MatrixSpace::new(
                1,
                vec![Matrix::<Gf2>::from_rows(vec![vec![Gf2::from_i64(v)]])],
            )
            .unwrap()
        };
        let lim = BruteForceLimits::default();
        assert!(!blockd_shrunk_check(&[one(1), one(1)], &lim).unwrap());
        assert!(blockd_shrunk_check(&[MatrixSpace::zero(1), one(1)], &lim).unwrap());
        let chain = [
            Subspace::<Gf2>::coordinate(3, &[0]),
            Subspace::coordinate(3, &[0, 1]),
        ];
        let blocks = diagonal_blocks(&to_gf::<2>(&middle_trivial()), &chain).unwrap();
        assert!(blockd_shrunk_check(&blocks, &lim).unwrap());
    }

    #[test]
    fn composition_examples() {
        let cs = composition_series(&middle_trivial()).unwrap();
        assert_eq!(
            cs.chain,
            vec![
                Subspace::zero(3),
                Subspace::coordinate(3, &[0]),
                Subspace::coordinate(3, &[0, 1]),
                Subspace::full(3)
            ]
        );
        let kinds: Vec<bool> = cs.factors.iter().map(|f| f.trivial).collect();
        assert_eq!(kinds, vec![false, true, false]);
        for s in [
            families::lambda_space(3).unwrap(),
            families::sl_standard(2).unwrap(),
        ] {
            let cs = composition_series(&s).unwrap();
            assert_eq!(cs.factors.len(), 1);
            assert_eq!(cs.factors[0].absolutely_irreducible, Some(true));
        }
        let bad = MatrixSpace::new(3, vec![e(3, 1, 2), e(3, 2, 3)]).unwrap();
        assert!(composition_series(&bad).is_err());
    }

    #[test]
    fn decision_examples() {
        let no = has_shrunk_subspace(&families::lambda_space(3).unwrap()).unwrap();
        assert_eq!(no.answer, ShrunkAnswer::No);
        match has_shrunk_subspace(&middle_trivial()).unwrap().answer {
            ShrunkAnswer::Yes { factor, witness } => {
                assert_eq!(factor, 2);
                assert!(witness.deficit > 0);
            }
            other => panic!("{other:?}"),
        }
        match has_shrunk_subspace(&families::strict_upper_line())
            .unwrap()
            .answer
        {
            ShrunkAnswer::Yes { factor, .. } => assert_eq!(factor, 1),
            other => panic!("{other:?}"),
        }
        let cs = composition_series(&families::strict_upper_line()).unwrap();
        assert!(cs.factors.iter().all(|f| f.trivial));
        assert_eq!(
            has_shrunk_subspace(&families::lambda_space(4).unwrap())
                .unwrap()
                .answer,
            ShrunkAnswer::No
        );
        assert!(has_shrunk_subspace(&families::heisenberg(3).unwrap())
            .unwrap()
            .answer
            .is_yes());
    }

    #[test]
    fn rationally_irreducible_factor_without_trivial_constituent() {
        // so(2) acting on Q^2: irreducible over Q, splits over C into weights +-i.
        let s = families::lambda_space(2).unwrap();
        let cs = composition_series(&s).unwrap();
        assert_eq!(cs.factors.len(), 1);
        assert_eq!(cs.factors[0].status, FactorStatus::NoTrivialConstituent);
        assert_eq!(has_shrunk_subspace(&s).unwrap().answer, ShrunkAnswer::No);
    }

    #[test]
    fn stabilizers_fix_canonical_lower() {
        for s in [
            upper_pair(),
            middle_trivial(),
            families::lambda_space(3).unwrap(),
        ] {
            let g = to_gf::<2>(&s);
            let r = ncrk_bruteforce(&g, &BruteForceLimits::default()).unwrap();
            let perms = permutation_stabilizers(&g).unwrap();
            assert!(!perms.is_empty());
            for p in perms {
                let pm = permutation_matrix::<Gf2>(&p);
                assert_eq!(r.canonical_lower.image_under(&pm), r.canonical_lower);
                assert_eq!(r.canonical_upper.image_under(&pm), r.canonical_upper);
            }
        }
        assert_eq!(
            permutation_stabilizers(&to_gf::<2>(&families::lambda_space(3).unwrap()))
                .unwrap()
                .len(),
            6
        );
    }

    #[test]
    fn invariant_split_examples() {
        let g = to_gf::<2>(&middle_trivial());
        for v in enumerate_subspaces::<Gf2>(3, 100)
            .unwrap()
            .filter(|v| g.is_invariant(v))
        {
            assert!(invariant_split_check(&g, &v, &BruteForceLimits::default()).unwrap());
        }
    }

    fn small_pair() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<Vec<i64>>)> {
        let v = || proptest::collection::vec(proptest::collection::vec(-2i64..=2, 4), 0..4);
        (v(), v())
    }

    proptest! {
        #[test]
        fn supermodular_on_rational_pairs((a, b) in small_pair()) {
            let s = families::lambda_space(4).unwrap();
            let u1 = Subspace::span(4, a.iter().map(|r| r.iter().map(|&x| Q::from(x)).collect()).collect());
            let u2 = Subspace::span(4, b.iter().map(|r| r.iter().map(|&x| Q::from(x)).collect()).collect());
            prop_assert!(supermodularity_check(&s, &u1, &u2).unwrap());
        }
    }
}
