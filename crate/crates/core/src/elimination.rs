//! Resultants by Sylvester matrix, with a fraction-free determinant.
//!
//! `resultant(f, g, v)` eliminates `v` from the pair `(f, g)`: it vanishes
//! exactly when the two share a root in `v` (over the algebraic closure of
//! the coefficient field), and its entries live in the remaining variables.
//! Sign conventions follow from the matrix layout below; in particular
//! `resultant(v - a, v - b, v) = a - b`, and swapping the arguments
//! multiplies the result by `(-1)^(deg f * deg g)`.

use thiserror::Error;

use crate::poly::{LaurentPolynomial, PolyError, VarName};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EliminationError {
    /// The eliminated variable appears with a negative exponent; clear
    /// denominators first.
    #[error("`{0}` occurs with a negative exponent; multiply through before eliminating")]
    LaurentInEliminationVar(VarName),
    /// Both polynomials have degree zero in the eliminated variable, so
    /// there is nothing to eliminate.
    #[error("neither polynomial involves the eliminated variable")]
    NothingToEliminate,
    /// The cofactor expansion is for cross-checking small matrices only.
    #[error("naive determinant limited to 8x8 matrices, got {0}x{0}")]
    MatrixTooLarge(usize),
    /// Rows of unequal length, or a non-square matrix.
    #[error("determinant requires a square matrix")]
    NotSquare,
    /// The fraction-free elimination hit a non-exact division; this cannot
    /// happen for well-formed inputs and indicates a corrupted matrix.
    #[error("fraction-free elimination encountered a non-exact division")]
    InexactDivision,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The Sylvester matrix of `f` and `g` with respect to `v`, of dimension
/// `deg_v f + deg_v g`. The first `deg_v g` rows carry the coefficients of
/// `f` in descending powers of `v`, each row shifted one column right of the
/// previous; the remaining `deg_v f` rows do the same for `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SylvesterMatrix {
    entries: Vec<Vec<LaurentPolynomial>>,
    f_degree: usize,
    g_degree: usize,
}

impl SylvesterMatrix {
    pub fn dim(&self) -> usize {
        self.f_degree + self.g_degree
    }

    /// Degrees in the eliminated variable of the two inputs.
    pub fn degrees(&self) -> (usize, usize) {
        (self.f_degree, self.g_degree)
    }

    pub fn rows(&self) -> &[Vec<LaurentPolynomial>] {
        &self.entries
    }
}

/// Builds the Sylvester matrix of `f` and `g` with respect to `v`.
///
/// Both polynomials must be ordinary in `v` (no negative exponents of `v`;
/// other variables may still be Laurent) and at least one must actually
/// involve `v`. A zero polynomial is treated as having degree 0, which makes
/// its block a block of zero rows and the determinant zero — consistent with
/// the resultant of a zero polynomial being zero.
pub fn sylvester(
    f: &LaurentPolynomial,
    g: &LaurentPolynomial,
    v: &VarName,
) -> Result<SylvesterMatrix, EliminationError> {
    for poly in [f, g] {
        if poly.min_exponent(v).unwrap_or(0) < 0 {
            return Err(EliminationError::LaurentInEliminationVar(v.clone()));
        }
    }
    let m = f.max_exponent(v).unwrap_or(0).max(0) as usize;
    let n = g.max_exponent(v).unwrap_or(0).max(0) as usize;
    if m == 0 && n == 0 {
        return Err(EliminationError::NothingToEliminate);
    }
    let dim = m + n;
    let mut entries = vec![vec![LaurentPolynomial::zero(); dim]; dim];
    for row in 0..n {
        for k in 0..=m {
            entries[row][row + k] = f.coefficient_of(v, (m - k) as i64);
        }
    }
    for row in 0..m {
        for k in 0..=n {
            entries[n + row][row + k] = g.coefficient_of(v, (n - k) as i64);
        }
    }
    Ok(SylvesterMatrix {
        entries,
        f_degree: m,
        g_degree: n,
    })
}

/// The resultant of `f` and `g` with respect to `v`: the determinant of
/// their Sylvester matrix, computed fraction-free.
pub fn resultant(
    f: &LaurentPolynomial,
    g: &LaurentPolynomial,
    v: &VarName,
) -> Result<LaurentPolynomial, EliminationError> {
    let matrix = sylvester(f, g, v)?;
    determinant_fraction_free(matrix.rows())
}

fn check_square(matrix: &[Vec<LaurentPolynomial>]) -> Result<usize, EliminationError> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(EliminationError::NotSquare);
    }
    Ok(n)
}

/// Determinant by Bareiss's fraction-free elimination: every intermediate
/// entry is a minor of the input matrix, so each division is exact and
/// coefficient growth stays polynomial instead of exponential. Row swaps
/// (tracked in the sign) handle zero pivots; if a column has no pivot at
/// all, the determinant is zero.
pub fn determinant_fraction_free(
    matrix: &[Vec<LaurentPolynomial>],
) -> Result<LaurentPolynomial, EliminationError> {
    let n = check_square(matrix)?;
    if n == 0 {
        return Ok(LaurentPolynomial::one());
    }
    let mut a: Vec<Vec<LaurentPolynomial>> = matrix.to_vec();
    let mut negated = false;
    let mut previous_pivot = LaurentPolynomial::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(LaurentPolynomial::zero());
            };
            a.swap(k, swap);
            negated = !negated;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let numerator = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = if previous_pivot.is_one() {
                    numerator
                } else {
                    numerator
                        .divide_exact(&previous_pivot)
                        .map_err(|_| EliminationError::InexactDivision)?
                };
            }
            a[i][k] = LaurentPolynomial::zero();
        }
        previous_pivot = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negated { -&det } else { det })
}

/// Determinant by cofactor expansion along the first row. Exponential in the
/// dimension — it exists purely as an independent cross-check for the
/// fraction-free path, hence the hard 8x8 cap.
pub fn determinant_naive(
    matrix: &[Vec<LaurentPolynomial>],
) -> Result<LaurentPolynomial, EliminationError> {
    let n = check_square(matrix)?;
    if n > 8 {
        return Err(EliminationError::MatrixTooLarge(n));
    }
    Ok(cofactor_expand(matrix))
}

fn cofactor_expand(matrix: &[Vec<LaurentPolynomial>]) -> LaurentPolynomial {
    let n = matrix.len();
    if n == 0 {
        return LaurentPolynomial::one();
    }
    if n == 1 {
        return matrix[0][0].clone();
    }
    let mut det = LaurentPolynomial::zero();
    for col in 0..n {
        if matrix[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<LaurentPolynomial>> = matrix[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != col)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = &matrix[0][col] * &cofactor_expand(&minor);
        det = if col % 2 == 0 { &det + &term } else { &det - &term };
    }
    det
}
