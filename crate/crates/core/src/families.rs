//! Generators for the standard example spaces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certificate::example2_space;
use crate::error::{Error, Result};
use crate::field::Rational;
use crate::lie::structure_constants;
use crate::linalg::Matrix;
use crate::monomial::{index_map, monomial_count, monomials};
use crate::space::MatrixSpace;

type Q = Rational;

/// Largest module dimension [`sl_monomial_rep`] builds unless told otherwise.
pub const DEFAULT_MODULE_GUARD: usize = 64;

fn need(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg.into()))
    }
}

fn space(n: usize, mats: Vec<Matrix<Q>>) -> MatrixSpace<Q> {
    MatrixSpace::new(n, mats).expect("generators are square")
}

/// `Lambda(n)`: alternating matrices, basis `E_ij - E_ji` for `i < j` in lex order.
pub fn lambda_space(n: usize) -> Result<MatrixSpace<Q>> {
    need(n >= 2, "lambda needs n >= 2")?;
    let mut mats = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            mats.push(Matrix::unit(n, i, j).sub(&Matrix::unit(n, j, i)));
        }
    }
    Ok(space(n, mats))
}

/// Index pairs in the basis order shared by the `sl` families: the diagonal differences
/// `(i, i)` standing for `E_ii - E_{i+1,i+1}`, then `E_ij` with `i < j`, then `i > j`.
fn sl_generators(n: usize) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    for i in 0..n {
        for j in 0..i {
            out.push((i, j));
        }
    }
    out
}

/// `sl(n)` in its defining representation; for `n = 2` the basis is `(h, e, f)`.
pub fn sl_standard(n: usize) -> Result<MatrixSpace<Q>> {
    need(n >= 2, "sl-standard needs n >= 2")?;
    let mats = sl_generators(n)
        .into_iter()
        .map(|(i, j)| {
            if i == j {
                Matrix::unit(n, i, i).sub(&Matrix::unit(n, i + 1, i + 1))
            } else {
                Matrix::unit(n, i, j)
            }
        })
        .collect();
    Ok(space(n, mats))
}

/// Action of `x_i d/dx_j` on homogeneous polynomials of the given degree.
fn polarization(monos: &[Vec<usize>], i: usize, j: usize) -> Matrix<Q> {
    let index = index_map(monos);
    let dim = monos.len();
    let mut m = Matrix::<Q>::zeros(dim, dim);
    for (col, e) in monos.iter().enumerate() {
        if e[j] == 0 {
            continue;
        }
        let mut target = e.clone();
        target[j] -= 1;
        target[i] += 1;
        let row = index[&target];
        let v = m.get(row, col).clone() + Q::from(e[j] as i64);
        m.set(row, col, v);
    }
    m
}

/// Image of `sl(n)` acting on degree-`degree` polynomials in `n` variables, basis in
/// the order of [`sl_standard`], monomials in graded-lex order.
pub fn sl_polynomial_rep(n: usize, degree: usize, guard: usize) -> Result<MatrixSpace<Q>> {
    need(n >= 2, "sl polynomial representation needs n >= 2")?;
    need(degree >= 1, "degree must be at least 1")?;
    let count = monomial_count(n, degree);
    if count > guard as u128 {
        return Err(Error::GuardExceeded {
            what: "module dimension".into(),
            count,
            limit: guard as u128,
        });
    }
    let monos = monomials(n, degree);
    let dim = monos.len();
    let mats = sl_generators(n)
        .into_iter()
        .map(|(i, j)| {
            if i == j {
                polarization(&monos, i, i).sub(&polarization(&monos, i + 1, i + 1))
            } else {
                polarization(&monos, i, j)
            }
        })
        .collect();
    Ok(space(dim, mats))
}

/// `sl(n)` acting on degree-`d n` monomials; module dimension `C(dn+n-1, n-1)`.
pub fn sl_monomial_rep(n: usize, d: usize) -> Result<MatrixSpace<Q>> {
    need(d >= 1, "sl-monomial needs d >= 1")?;
    sl_polynomial_rep(n, d * n, DEFAULT_MODULE_GUARD)
}

/// `span{E_1j, E_jn (1<j<n), E_1n}`; for `n = 3` this is `span{E12, E23, E13}`.
pub fn heisenberg(n: usize) -> Result<MatrixSpace<Q>> {
    need(n >= 3, "heisenberg needs n >= 3")?;
    let mut mats: Vec<Matrix<Q>> = (1..n - 1).map(|j| Matrix::unit(n, 0, j)).collect();
    mats.extend((1..n - 1).map(|j| Matrix::unit(n, j, n - 1)));
    mats.push(Matrix::unit(n, 0, n - 1));
    Ok(space(n, mats))
}

/// `span{E12}` in `M(2)`.
pub fn strict_upper_line() -> MatrixSpace<Q> {
    space(2, vec![Matrix::unit(2, 0, 1)])
}

/// `span{h, e}` in `M(2)`.
pub fn borel_sl2() -> Result<MatrixSpace<Q>> {
    Ok(space(
        2,
        vec![
            Matrix::from_i64(&[&[1, 0], &[0, -1]]),
            Matrix::unit(2, 0, 1),
        ],
    ))
}

/// Image of the adjoint representation of a Lie-closed space.
pub fn adjoint_of(s: &MatrixSpace<Q>) -> Result<MatrixSpace<Q>> {
    Ok(structure_constants(s)?.adjoint_space())
}

/// `n` alternating `n x n` matrices with entries drawn uniformly from `[-3, 3]`.
pub fn random_alternating_family(n: usize, seed: u64) -> Result<Vec<Matrix<Q>>> {
    need(n >= 2, "random alternating family needs n >= 2")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n)
        .map(|_| {
            let mut m = Matrix::zeros(n, n);
            for i in 0..n {
                for j in i + 1..n {
                    let v: i64 = rng.gen_range(-3..=3);
                    m.set(i, j, Q::from(v));
                    m.set(j, i, Q::from(-v));
                }
            }
            m
        })
        .collect())
}

/// `example2_space` of [`random_alternating_family`].
pub fn example2_random(n: usize, seed: u64) -> Result<MatrixSpace<Q>> {
    example2_space(&random_alternating_family(n, seed)?)
}

/// Named family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExampleSpec {
    Lambda { n: usize },
    SlStandard { n: usize },
    SlMonomial { n: usize, d: usize },
    Adjoint(Box<ExampleSpec>),
    Heisenberg { n: usize },
    StrictUpper,
    Borel,
    Example2Random { n: usize, seed: u64 },
}

fn parse_num<T: std::str::FromStr>(args: &[&str], idx: usize, what: &str) -> Result<T> {
    let raw = args
        .get(idx)
        .ok_or_else(|| Error::InvalidParameter(format!("missing parameter {what}")))?;
    raw.parse()
        .map_err(|_| Error::InvalidParameter(format!("bad value {raw:?} for {what}")))
}

fn no_extra(args: &[&str], used: usize) -> Result<()> {
    need(
        args.len() <= used,
        format!(
            "unexpected extra parameters {:?}",
            &args[used.min(args.len())..]
        ),
    )
}

impl ExampleSpec {
    /// Parses `family param...`, e.g. `["sl-monomial", "2", "1"]` or `["adjoint", "sl2"]`.
    pub fn parse(args: &[&str]) -> Result<Self> {
        let (family, rest) = args
            .split_first()
            .ok_or_else(|| Error::InvalidParameter("missing family name".into()))?;
        let spec = match *family {
            "lambda" => Self::Lambda {
                n: parse_num(rest, 0, "n")?,
            },
            "sl-standard" => Self::SlStandard {
                n: parse_num(rest, 0, "n")?,
            },
            "sl-monomial" => Self::SlMonomial {
                n: parse_num(rest, 0, "n")?,
                d: parse_num(rest, 1, "d")?,
            },
            "heisenberg" => Self::Heisenberg {
                n: parse_num(rest, 0, "n")?,
            },
            "strict-upper" => Self::StrictUpper,
            "borel-sl2" => Self::Borel,
            "example2-random" => Self::Example2Random {
                n: parse_num(rest, 0, "n")?,
                seed: parse_num(rest, 1, "seed")?,
            },
            "adjoint" => {
                let inner = match rest.first() {
                    Some(s)
                        if s.len() > 2
                            && s.starts_with("sl")
                            && s[2..].parse::<usize>().is_ok() =>
                    {
                        no_extra(rest, 1)?;
                        Self::SlStandard {
                            n: s[2..].parse().expect("checked"),
                        }
                    }
                    Some(s)
                        if s.len() > 2
                            && s.starts_with("so")
                            && s[2..].parse::<usize>().is_ok() =>
                    {
                        no_extra(rest, 1)?;
                        Self::Lambda {
                            n: s[2..].parse().expect("checked"),
                        }
                    }
                    _ => Self::parse(rest)?,
                };
                let spec = Self::Adjoint(Box::new(inner));
                spec.validate()?;
                return Ok(spec);
            }
            other => return Err(Error::InvalidParameter(format!("unknown family {other:?}"))),
        };
        no_extra(rest, spec.params().len())?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn family(&self) -> &'static str {
        match self {
            Self::Lambda { .. } => "lambda",
            Self::SlStandard { .. } => "sl-standard",
            Self::SlMonomial { .. } => "sl-monomial",
            Self::Adjoint(_) => "adjoint",
            Self::Heisenberg { .. } => "heisenberg",
            Self::StrictUpper => "strict-upper",
            Self::Borel => "borel-sl2",
            Self::Example2Random { .. } => "example2-random",
        }
    }

    pub fn params(&self) -> Vec<String> {
        match self {
            Self::Lambda { n } | Self::SlStandard { n } | Self::Heisenberg { n } => {
                vec![n.to_string()]
            }
            Self::SlMonomial { n, d } => vec![n.to_string(), d.to_string()],
            Self::Example2Random { n, seed } => vec![n.to_string(), seed.to_string()],
            Self::Adjoint(inner) => {
                let mut v = vec![inner.family().to_string()];
                v.extend(inner.params());
                v
            }
            Self::StrictUpper | Self::Borel => Vec::new(),
        }
    }

    /// Short display name such as `sl-monomial(2,1)`.
    pub fn name(&self) -> String {
        match self {
            Self::Adjoint(inner) => format!("adjoint[{}]", inner.name()),
            _ if self.params().is_empty() => self.family().to_string(),
            _ => format!("{}({})", self.family(), self.params().join(",")),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Lambda { n } | Self::SlStandard { n } | Self::Example2Random { n, .. } => {
                need(*n >= 2, format!("{} needs n >= 2", self.family()))
            }
            Self::Heisenberg { n } => need(*n >= 3, "heisenberg needs n >= 3"),
            Self::SlMonomial { n, d } => {
                need(*n >= 2 && *d >= 1, "sl-monomial needs n >= 2 and d >= 1")?;
                let count = monomial_count(*n, d.saturating_mul(*n));
                if count > DEFAULT_MODULE_GUARD as u128 {
                    return Err(Error::GuardExceeded {
                        what: "module dimension".into(),
                        count,
                        limit: DEFAULT_MODULE_GUARD as u128,
                    });
                }
                Ok(())
            }
            Self::Adjoint(inner) => {
                need(
                    !matches!(**inner, Self::Example2Random { .. }),
                    "adjoint needs a Lie-closed family",
                )?;
                inner.validate()
            }
            Self::StrictUpper | Self::Borel => Ok(()),
        }
    }

    pub fn build(&self) -> Result<MatrixSpace<Q>> {
        self.validate()?;
        match self {
            Self::Lambda { n } => lambda_space(*n),
            Self::SlStandard { n } => sl_standard(*n),
            Self::SlMonomial { n, d } => sl_monomial_rep(*n, *d),
            Self::Adjoint(inner) => adjoint_of(&inner.build()?),
            Self::Heisenberg { n } => heisenberg(*n),
            Self::StrictUpper => Ok(strict_upper_line()),
            Self::Borel => borel_sl2(),
            Self::Example2Random { n, seed } => example2_random(*n, *seed),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::closure_check;

    #[test]
    fn dimensions() {
        assert_eq!(lambda_space(3).unwrap().dim(), 3);
        assert_eq!(lambda_space(4).unwrap().dim(), 6);
        assert_eq!(lambda_space(2).unwrap().dim(), 1);
        assert!(lambda_space(1).is_err());
        assert_eq!(sl_standard(2).unwrap().dim(), 3);
        assert_eq!(sl_standard(3).unwrap().dim(), 8);
        assert_eq!(heisenberg(3).unwrap().dim(), 3);
        assert_eq!(heisenberg(5).unwrap().dim(), 7);
        assert_eq!(strict_upper_line().dim(), 1);
        for ((n, d), module) in [((2, 1), 3), ((2, 2), 5), ((3, 1), 10)] {
            let s = sl_monomial_rep(n, d).unwrap();
            assert_eq!(s.n(), module);
            assert_eq!(s.dim(), n * n - 1);
        }
        assert!(matches!(
            sl_polynomial_rep(4, 8, DEFAULT_MODULE_GUARD),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn sl2_on_quadratics() {
        let s = sl_monomial_rep(2, 1).unwrap();
        // x1^2, x1 x2, x2^2: h acts by x1 d1 - x2 d2
        assert_eq!(
            s.basis()[0],
            Matrix::diagonal(&[Q::from(2), Q::from(0), Q::from(-2)])
        );
        // e = x1 d2: x1 x2 -> x1^2, x2^2 -> 2 x1 x2
        assert_eq!(
            s.basis()[1],
            Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 2], &[0, 0, 0]])
        );
    }

    #[test]
    fn all_families_closed() {
        let specs = [
            "lambda 2",
            "lambda 5",
            "sl-standard 2",
            "sl-standard 3",
            "sl-monomial 2 1",
            "sl-monomial 2 2",
            "sl-monomial 3 1",
            "heisenberg 3",
            "heisenberg 4",
            "strict-upper",
            "borel-sl2",
            "adjoint sl2",
            "adjoint so3",
            "adjoint sl-standard 3",
        ];
        for s in specs {
            let args: Vec<&str> = s.split(' ').collect();
            let spec = ExampleSpec::parse(&args).unwrap();
            assert!(closure_check(&spec.build().unwrap()).is_closed(), "{s}");
        }
        assert!(closure_check(&sl_polynomial_rep(2, 3, 64).unwrap()).is_closed());
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(
            ExampleSpec::parse(&["adjoint", "sl2"]).unwrap(),
            ExampleSpec::Adjoint(Box::new(ExampleSpec::SlStandard { n: 2 }))
        );
        assert_eq!(
            ExampleSpec::parse(&["adjoint", "so3"]).unwrap().name(),
            "adjoint[lambda(3)]"
        );
        assert!(ExampleSpec::parse(&["lambda"]).is_err());
        assert!(ExampleSpec::parse(&["lambda", "3", "4"]).is_err());
        assert!(ExampleSpec::parse(&["heisenberg", "2"]).is_err());
        assert!(ExampleSpec::parse(&["nope"]).is_err());
        assert!(ExampleSpec::parse(&["sl-monomial", "5", "3"]).is_err());
    }

    #[test]
    fn alternating_family_is_deterministic() {
        let a = random_alternating_family(4, 7).unwrap();
        assert_eq!(a, random_alternating_family(4, 7).unwrap());
        assert_eq!(a.len(), 4);
        for m in &a {
            assert!(m.is_alternating());
            assert!(m.as_flat().iter().all(|x| x.abs() <= Q::from(3)));
        }
        assert_ne!(a, random_alternating_family(4, 8).unwrap());
    }

    #[test]
    fn monomial_factors_absolutely_irreducible() {
        for (n, d) in [(2, 1), (2, 2), (3, 1)] {
            let s = sl_monomial_rep(n, d).unwrap();
            assert_eq!(s.associative_envelope(true).dim(), s.n() * s.n());
        }
    }
}
