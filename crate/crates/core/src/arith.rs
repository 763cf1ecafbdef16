//! Exact rational scalars, dense rational matrices and an exact Gauss–Jordan
//! solver for affine systems `M v = b`.
//!
//! Nothing in this module rounds. Scalars are arbitrary-precision rationals
//! kept in lowest terms with a positive denominator.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

/// Exact rational number in canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Reduced, positive-denominator representative of `n/d`.
    pub fn new(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self, ArithError> {
        let d = d.into();
        if d.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(n.into(), d)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self, ArithError> {
        if rhs.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }
}

/// `q_canonical(n, d)`: the canonical representative of `n/d`.
pub fn q_canonical(n: i64, d: i64) -> Result<Rational, ArithError> {
    Rational::new(n, d)
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_integer(i64::from(n))
    }
}

impl From<usize> for Rational {
    fn from(n: usize) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }
}

/// Renders as `p/q`, or `p` when the denominator is 1.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse_int = |t: &str| -> Result<BigInt, ArithError> {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| ArithError::Parse(s.to_string()))
        };
        match s.split_once('/') {
            Some((n, d)) => Rational::new(parse_int(n)?, parse_int(d)?),
            None => Ok(Rational::from(parse_int(s)?)),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($tr::$method(&self.0, &rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($tr::$method(self.0, rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($tr::$method(self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

/// Panics on a zero divisor, like integer division. Use
/// [`Rational::checked_div`] where the divisor may vanish.
impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        self.checked_div(rhs).expect("division by zero rational")
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

/// Formats a vector as `[a, b, c]`.
pub fn format_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, ArithError> {
        if entries.len() != rows * cols {
            return Err(ArithError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(QMatrix { rows, cols, entries })
    }

    /// Builds a matrix from integer rows. Panics on ragged input.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let entries = rows.iter().flatten().map(|&x| Rational::from(x)).collect();
        QMatrix { rows: r, cols: c, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, ArithError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(ArithError::DimensionMismatch("ragged rows".into()));
        }
        Ok(QMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Kronecker product: block `(i, j)` of the result is `self[i][j] * other`.
    pub fn kronecker(&self, other: &QMatrix) -> QMatrix {
        let (p, q) = (other.rows, other.cols);
        let mut out = QMatrix::zeros(self.rows * p, self.cols * q);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..p {
                    for l in 0..q {
                        out.set(i * p + k, j * q + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, ArithError> {
        if v.len() != self.cols {
            return Err(ArithError::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, x)| a * x).sum())
            .collect())
    }

    /// Rows separated by ` / `, entries by spaces: `1 1 / 0 1`.
    pub fn to_compact_string(&self) -> String {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join(" / ")
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QMatrix[{}x{}: {}]", self.rows, self.cols, self.to_compact_string())
    }
}

/// Solution set of `M v = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSolution {
    pub consistent: bool,
    /// Free variables pinned to zero.
    pub particular: Option<Vec<Rational>>,
    /// One vector per free column, in column order, each scaled by ±1 so
    /// that its first nonzero entry is positive.
    pub nullspace_basis: Vec<Vec<Rational>>,
}

impl LinearSolution {
    fn inconsistent() -> Self {
        LinearSolution {
            consistent: false,
            particular: None,
            nullspace_basis: Vec::new(),
        }
    }
}

/// Reduced row echelon form of an augmented system, with pivot columns.
struct Rref {
    m: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

/// Gauss–Jordan on `[M | b]`. The pivot for each column is the first
/// row at or below the current one with a nonzero entry.
fn rref(matrix: &QMatrix, rhs: &[Rational]) -> Rref {
    let (rows, cols) = (matrix.rows(), matrix.cols());
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            let mut r = matrix.row(i).to_vec();
            r.push(rhs[i].clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip().expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = &*x - &(&factor * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { m, pivots }
}

/// Exact solution of `M v = b`.
pub fn solve_affine(matrix: &QMatrix, rhs: &[Rational]) -> Result<LinearSolution, ArithError> {
    if rhs.len() != matrix.rows() {
        return Err(ArithError::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            rhs.len(),
            matrix.rows()
        )));
    }
    let cols = matrix.cols();
    let Rref { m, pivots } = rref(matrix, rhs);
    let rank = pivots.len();
    if m[rank..].iter().any(|row| !row[cols].is_zero()) {
        return Ok(LinearSolution::inconsistent());
    }

    let mut particular = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = m[r][cols].clone();
    }

    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let nullspace_basis = (0..cols)
        .filter(|&j| !is_pivot[j])
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -&m[r][free];
            }
            // sign convention: first nonzero entry positive
            if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.numer().is_negative()) {
                v = v.into_iter().map(|x| -x).collect();
            }
            v
        })
        .collect();

    Ok(LinearSolution {
        consistent: true,
        particular: Some(particular),
        nullspace_basis,
    })
}

/// Rank of a matrix.
pub fn rank(matrix: &QMatrix) -> usize {
    let zeros = vec![Rational::zero(); matrix.rows()];
    rref(matrix, &zeros).pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        q_canonical(n, d).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(q(2, 4).to_string(), "1/2");
        assert_eq!(q(3, -9).to_string(), "-1/3");
        let z = q(0, 7);
        assert_eq!((z.numer().clone(), z.denom().clone()), (BigInt::from(0), BigInt::from(1)));
        assert_eq!(q_canonical(1, 0), Err(ArithError::ZeroDenominator));
        assert_eq!(ArithError::ZeroDenominator.to_string(), "zero denominator");
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "-3", "1/2", "-7/4"] {
            assert_eq!(s.parse::<Rational>().unwrap().to_string(), s);
        }
        assert_eq!("4/8".parse::<Rational>().unwrap(), q(1, 2));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn solve_two_arrow() {
        let m = QMatrix::from_int_rows(&[vec![1, 1], vec![0, 1]]);
        let s = solve_affine(&m, &ints(&[1, 1])).unwrap();
        assert!(s.consistent);
        assert_eq!(s.particular.unwrap(), ints(&[0, 1]));
        assert!(s.nullspace_basis.is_empty());
    }

    #[test]
    fn solve_identity() {
        let s = solve_affine(&QMatrix::identity(2), &ints(&[1, 1])).unwrap();
        assert_eq!(s.particular.unwrap(), ints(&[1, 1]));
        assert!(s.nullspace_basis.is_empty());
    }

    #[test]
    fn solve_three_object() {
        let m = QMatrix::from_int_rows(&[vec![1, 1, 1], vec![1, 1, 1], vec![0, 0, 1]]);
        let s = solve_affine(&m, &ints(&[1, 1, 1])).unwrap();
        assert_eq!(s.particular.unwrap(), ints(&[0, 0, 1]));
        assert_eq!(s.nullspace_basis, vec![ints(&[1, -1, 0])]);
    }

    #[test]
    fn solve_inconsistent() {
        let m = QMatrix::from_int_rows(&[vec![1, 1], vec![1, 1]]);
        let s = solve_affine(&m, &ints(&[1, 2])).unwrap();
        assert!(!s.consistent);
        assert!(s.particular.is_none() && s.nullspace_basis.is_empty());
    }

    #[test]
    fn solve_dimension_mismatch() {
        let m = QMatrix::identity(2);
        assert!(matches!(
            solve_affine(&m, &ints(&[1])),
            Err(ArithError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn solve_empty_system() {
        let s = solve_affine(&QMatrix::zeros(0, 0), &[]).unwrap();
        assert!(s.consistent);
        assert_eq!(s.particular.unwrap(), Vec::<Rational>::new());
    }

    #[test]
    fn transpose_examples() {
        let m = QMatrix::from_int_rows(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(m.transpose(), QMatrix::from_int_rows(&[vec![1, 0], vec![1, 1]]));
        assert_eq!(QMatrix::identity(3).transpose(), QMatrix::identity(3));
        let row = QMatrix::from_int_rows(&[vec![1, 2, 3]]);
        assert_eq!(row.transpose(), QMatrix::from_int_rows(&[vec![1], vec![2], vec![3]]));
    }

    fn kron_oracle(a: &QMatrix, b: &QMatrix) -> QMatrix {
        let mut rows = Vec::new();
        for i in 0..a.rows() * b.rows() {
            let mut row = Vec::new();
            for j in 0..a.cols() * b.cols() {
                let x = a.get(i / b.rows(), j / b.cols());
                let y = b.get(i % b.rows(), j % b.cols());
                row.push(x * y);
            }
            rows.push(row);
        }
        QMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn kronecker_examples() {
        let m = QMatrix::from_int_rows(&[vec![1, 1], vec![0, 1]]);
        let expected = QMatrix::from_int_rows(&[
            vec![1, 1, 1, 1],
            vec![0, 1, 0, 1],
            vec![0, 0, 1, 1],
            vec![0, 0, 0, 1],
        ]);
        assert_eq!(kron_oracle(&m, &m), expected);
        assert_eq!(m.kronecker(&m), expected);

        let n = QMatrix::from_int_rows(&[vec![2, 3], vec![5, 7]]);
        let block = QMatrix::from_int_rows(&[
            vec![2, 3, 0, 0],
            vec![5, 7, 0, 0],
            vec![0, 0, 2, 3],
            vec![0, 0, 5, 7],
        ]);
        assert_eq!(QMatrix::identity(2).kronecker(&n), block);

        let a = QMatrix::from_rows(vec![vec![q(2, 3)]]).unwrap();
        let b = QMatrix::from_rows(vec![vec![q(-3, 5)]]).unwrap();
        assert_eq!(a.kronecker(&b).get(0, 0), &q(-2, 5));
    }

    #[test]
    fn compact_string() {
        let m = QMatrix::from_rows(vec![
            vec![q(1, 1), q(2, 1)],
            vec![q(0, 1), q(1, 2)],
        ])
        .unwrap();
        assert_eq!(m.to_compact_string(), "1 2 / 0 1/2");
    }

    #[test]
    fn rank_of_examples() {
        assert_eq!(rank(&QMatrix::identity(3)), 3);
        assert_eq!(rank(&QMatrix::from_int_rows(&[vec![1, 2], vec![2, 4]])), 1);
        assert_eq!(rank(&QMatrix::zeros(2, 3)), 0);
    }
}
