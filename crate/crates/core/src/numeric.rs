//! Floating-point witness of the degeneration: as `p -> 0`, the roots of
//! `F(A, p)` in `A` split into a cluster collapsing toward the origin and
//! `n` roots converging to the n-th roots of unity. Everything upstream of
//! the univariate solve stays exact; this module is the only place
//! floating point enters.

use num_complex::Complex64;
use num_traits::Zero;
use thiserror::Error;

use crate::amalgam::{a_var, glue_substitution, p_var, AmalgamError, AmalgamParams};
use crate::poly::{LaurentPolynomial, VarName};

const MAX_ITERATIONS: usize = 400;

#[derive(Debug, Error)]
pub enum NumericError {
    /// The polynomial involves more than one variable.
    #[error("expected a univariate polynomial, found variables {0:?}")]
    NotUnivariate(Vec<VarName>),
    /// Laurent exponents have no meaning for the root finder.
    #[error("variable `{0}` occurs with a negative exponent")]
    NegativeExponent(VarName),
    /// Degree is zero (or the polynomial is zero): no roots to find.
    #[error("polynomial has no roots: degree is zero")]
    ConstantPolynomial,
    /// A coefficient does not fit a double.
    #[error("coefficient overflows double precision")]
    CoefficientOverflow,
    /// A parameter violates its documented range.
    #[error("{0}")]
    InvalidParameter(&'static str),
    /// The simultaneous iteration hit its cap; the partial result carries
    /// the last iterate and its residuals, which must not be trusted.
    #[error("root iteration did not converge within {iterations} iterations")]
    NonConvergence {
        iterations: usize,
        partial: ComplexRootSet,
    },
    #[error(transparent)]
    Amalgam(#[from] AmalgamError),
}

/// All complex roots of one polynomial, with the evidence: per-root
/// residuals `|f(root)|` and the conditioning scale they should be read
/// against. A residual is acceptable when it is at most `tol * condition`.
#[derive(Debug, Clone)]
pub struct ComplexRootSet {
    /// Roots sorted by real part, then imaginary part.
    pub roots: Vec<Complex64>,
    /// `|f(root)|` for each root, in the same order.
    pub residuals: Vec<f64>,
    /// `sum_i |c_i| * R^i` with `R = max(1, max |root|)`: the natural size
    /// of evaluation noise for this polynomial.
    pub condition: f64,
}

/// All complex roots of a univariate polynomial with integer coefficients.
///
/// `tol` is the relative step-size threshold at which the simultaneous
/// iteration declares a root settled; residuals are reported so the caller
/// can audit the claim.
pub fn roots_univariate(
    f: &LaurentPolynomial,
    tol: f64,
) -> Result<ComplexRootSet, NumericError> {
    let vars: Vec<VarName> = f.vars().into_iter().collect();
    if vars.len() > 1 {
        return Err(NumericError::NotUnivariate(vars));
    }
    let Some(var) = vars.first() else {
        return Err(NumericError::ConstantPolynomial);
    };
    if f.min_exponent(var).unwrap_or(0) < 0 {
        return Err(NumericError::NegativeExponent(var.clone()));
    }
    let degree = f.max_exponent(var).unwrap_or(0);
    if degree < 1 {
        return Err(NumericError::ConstantPolynomial);
    }
    let mut coeffs = vec![0.0f64; degree as usize + 1];
    for (m, _) in f.terms() {
        let exponent = m.exponent(var);
        let value = f
            .coefficient_of(var, exponent)
            .terms_as_f64()
            .and_then(|terms| terms.first().map(|(_, x)| *x));
        // Every term is (var^e, integer), so the slice is a single constant.
        coeffs[exponent as usize] = value.ok_or(NumericError::CoefficientOverflow)?;
    }
    roots_from_coefficients(&coeffs, tol)
}

/// All complex roots of `c[0] + c[1] x + ... + c[d] x^d`, by the Aberth
/// simultaneous iteration with cluster-aware starting points.
pub fn roots_from_coefficients(
    coeffs: &[f64],
    tol: f64,
) -> Result<ComplexRootSet, NumericError> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(NumericError::InvalidParameter("tolerance must be positive"));
    }
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(NumericError::CoefficientOverflow);
    }
    let degree = match coeffs.iter().rposition(|&c| c != 0.0) {
        Some(0) | None => return Err(NumericError::ConstantPolynomial),
        Some(d) => d,
    };
    let coeffs = &coeffs[..=degree];

    // Exact zero roots come off first; the iteration only sees the part
    // with a nonzero constant term.
    let low = coeffs
        .iter()
        .position(|&c| c != 0.0)
        .expect("degree checked above");
    let reduced = &coeffs[low..];

    let mut z = initial_guesses(reduced);
    let mut converged = false;
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS && !converged {
        iterations += 1;
        let mut worst: f64 = 0.0;
        for i in 0..z.len() {
            let (value, derivative) = eval_with_derivative(reduced, z[i]);
            if value.norm() == 0.0 {
                continue; // sitting exactly on a root
            }
            let newton = if derivative.norm() == 0.0 {
                // A critical point; nudge deterministically and move on.
                Complex64::new(1e-8 * (1.0 + z[i].norm()), 1e-8)
            } else {
                value / derivative
            };
            let mut repulsion = Complex64::zero();
            for j in 0..z.len() {
                if i != j {
                    let mut gap = z[i] - z[j];
                    if gap.norm() == 0.0 {
                        gap = Complex64::new(1e-12 * (1.0 + i as f64), 1e-12);
                    }
                    repulsion += gap.inv();
                }
            }
            let denominator = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denominator.norm() < 1e-300 {
                newton
            } else {
                newton / denominator
            };
            z[i] -= step;
            worst = worst.max(step.norm() / z[i].norm().max(1.0));
        }
        converged = worst <= tol;
    }

    let mut roots: Vec<Complex64> = std::iter::repeat(Complex64::zero())
        .take(low)
        .chain(z.iter().copied())
        .collect();
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let radius = roots.iter().map(|r| r.norm()).fold(1.0f64, f64::max);
    let condition = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| c.abs() * radius.powi(i as i32))
        .sum();
    let residuals = roots.iter().map(|&r| evaluate(coeffs, r).norm()).collect();
    let set = ComplexRootSet {
        roots,
        residuals,
        condition,
    };
    if converged {
        Ok(set)
    } else {
        Err(NumericError::NonConvergence {
            iterations,
            partial: set,
        })
    }
}

/// Starting points on circles whose radii come from the upper convex hull
/// of `(i, ln |c_i|)`: between consecutive hull indices `k1 < k2` there are
/// `k2 - k1` roots of modulus roughly `(|c_k1| / |c_k2|)^(1/(k2-k1))`.
/// This lands each start in the right annulus even when the root moduli
/// span many orders of magnitude.
fn initial_guesses(coeffs: &[f64]) -> Vec<Complex64> {
    let degree = coeffs.len() - 1;
    let support: Vec<(usize, f64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0.0)
        .map(|(i, &c)| (i, c.abs().ln()))
        .collect();
    // Upper hull by monotone chain (support is already sorted by index).
    let mut hull: Vec<(usize, f64)> = Vec::with_capacity(support.len());
    for &(i, y) in &support {
        while hull.len() >= 2 {
            let (i1, y1) = hull[hull.len() - 2];
            let (i2, y2) = hull[hull.len() - 1];
            let turn =
                (i2 - i1) as f64 * (y - y1) - (y2 - y1) * (i - i1) as f64;
            if turn >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((i, y));
    }
    let mut guesses = Vec::with_capacity(degree);
    for pair in hull.windows(2) {
        let (k1, y1) = pair[0];
        let (k2, y2) = pair[1];
        let count = k2 - k1;
        let radius = ((y1 - y2) / count as f64).exp();
        for j in 0..count {
            // Deterministic angles, offset per annulus so no start lies on
            // a symmetry axis of the usual test polynomials.
            let angle = 2.0 * std::f64::consts::PI * (j as f64 + 0.27) / count as f64
                + 0.43 * (k1 as f64 + 1.0);
            guesses.push(Complex64::from_polar(radius, angle));
        }
    }
    debug_assert_eq!(guesses.len(), degree);
    guesses
}

fn evaluate(coeffs: &[f64], x: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::zero(), |acc, &c| acc * x + c)
}

fn eval_with_derivative(coeffs: &[f64], x: Complex64) -> (Complex64, Complex64) {
    let mut value = Complex64::zero();
    let mut derivative = Complex64::zero();
    for &c in coeffs.iter().rev() {
        derivative = derivative * x + value;
        value = value * x + c;
    }
    (value, derivative)
}

/// One exact n-th root of unity matched against the computed root nearest
/// to it (without replacement).
#[derive(Debug, Clone)]
pub struct RootMatch {
    /// Which root of unity: `target = exp(2*pi*i*index / n)`.
    pub index: u32,
    pub target: Complex64,
    pub root: Complex64,
    pub distance: f64,
}

/// One step of the trace: the parameter value, the exact `B = p^n`, and the
/// matches for all `n` roots of unity.
#[derive(Debug, Clone)]
pub struct TraceStep {
    pub p: f64,
    pub b: f64,
    pub matches: Vec<RootMatch>,
}

#[derive(Debug, Clone)]
pub struct ConvergenceTrace {
    pub n: u32,
    pub steps: Vec<TraceStep>,
}

/// Follows the roots of the default family `F(A, p_k)` along the geometric
/// schedule `p_k = p0 * ratio^k` for `k = 0, ..., steps-1`, matching each
/// n-th root of unity to its nearest computed root at every step. `tol` is
/// forwarded to the root finder.
pub fn convergence_trace(
    n: u32,
    p0: f64,
    ratio: f64,
    steps: usize,
    tol: f64,
) -> Result<ConvergenceTrace, NumericError> {
    if n < 1 {
        return Err(NumericError::InvalidParameter("n must be at least 1"));
    }
    if !(p0 > 0.0 && p0 <= 0.1) {
        return Err(NumericError::InvalidParameter(
            "p0 must lie in (0, 0.1] to stay in the convergence basin",
        ));
    }
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(NumericError::InvalidParameter("ratio must lie in (0, 1)"));
    }
    if steps < 2 {
        return Err(NumericError::InvalidParameter("steps must be at least 2"));
    }

    let family = glue_substitution(&AmalgamParams::fig8(n)?)?;
    let terms = family
        .terms_as_f64()
        .ok_or(NumericError::CoefficientOverflow)?;
    let (a, p) = (a_var(), p_var());
    let degree = family
        .max_exponent(&a)
        .expect("family polynomial is nonzero");

    let mut trace_steps = Vec::with_capacity(steps);
    for k in 0..steps {
        let p_k = p0 * ratio.powi(k as i32);
        let b_k = p_k.powi(n as i32);
        let mut coeffs = vec![0.0f64; degree as usize + 1];
        for (monomial, c) in &terms {
            let a_exp = monomial.exponent(&a) as usize;
            let p_exp = monomial.exponent(&p) as i32;
            coeffs[a_exp] += c * p_k.powi(p_exp);
        }
        let solved = roots_from_coefficients(&coeffs, tol)?;
        trace_steps.push(TraceStep {
            p: p_k,
            b: b_k,
            matches: match_unity_roots(n, &solved.roots),
        });
    }
    Ok(ConvergenceTrace {
        n,
        steps: trace_steps,
    })
}

/// Greedy minimum-distance matching of the `n` exact roots of unity against
/// the computed roots, without replacement: globally closest pair first.
fn match_unity_roots(n: u32, roots: &[Complex64]) -> Vec<RootMatch> {
    let targets: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * f64::from(k) / f64::from(n)))
        .collect();
    let mut pairs: Vec<(f64, usize, usize)> = targets
        .iter()
        .enumerate()
        .flat_map(|(ti, t)| {
            roots
                .iter()
                .enumerate()
                .map(move |(ri, r)| ((t - r).norm(), ti, ri))
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut matched: Vec<Option<RootMatch>> = vec![None; targets.len()];
    let mut used_roots = vec![false; roots.len()];
    let mut remaining = targets.len().min(roots.len());
    for (distance, ti, ri) in pairs {
        if remaining == 0 {
            break;
        }
        if matched[ti].is_none() && !used_roots[ri] {
            matched[ti] = Some(RootMatch {
                index: ti as u32,
                target: targets[ti],
                root: roots[ri],
                distance,
            });
            used_roots[ri] = true;
            remaining -= 1;
        }
    }
    matched.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_poly;

    fn poly(s: &str) -> LaurentPolynomial {
        parse_poly(s).expect("test polynomial parses")
    }

    fn assert_root_present(set: &ComplexRootSet, expected: Complex64, tol: f64) {
        let nearest = set
            .roots
            .iter()
            .map(|r| (r - expected).norm())
            .fold(f64::INFINITY, f64::min);
        assert!(
            nearest <= tol,
            "no root within {tol:e} of {expected}; nearest at distance {nearest:e}"
        );
    }

    #[test]
    fn square_roots_of_unity() {
        let set = roots_univariate(&poly("t^2 - 1"), 1e-12).unwrap();
        assert_eq!(set.roots.len(), 2);
        assert_root_present(&set, Complex64::new(1.0, 0.0), 1e-12);
        assert_root_present(&set, Complex64::new(-1.0, 0.0), 1e-12);
        for (residual, _) in set.residuals.iter().zip(&set.roots) {
            assert!(*residual <= 1e-12 * set.condition);
        }
    }

    #[test]
    fn fifth_roots_of_unity() {
        let set = roots_univariate(&poly("t^5 - 1"), 1e-12).unwrap();
        assert_eq!(set.roots.len(), 5);
        for k in 0..5 {
            let angle = 2.0 * std::f64::consts::PI * f64::from(k) / 5.0;
            assert_root_present(&set, Complex64::from_polar(1.0, angle), 1e-10);
        }
    }

    #[test]
    fn zero_roots_split_off_exactly() {
        // t^3 (t - 2): three exact zeros and one root at 2.
        let set = roots_univariate(&poly("t^4 - 2*t^3"), 1e-12).unwrap();
        let zeros = set.roots.iter().filter(|r| r.norm() == 0.0).count();
        assert_eq!(zeros, 3);
        assert_root_present(&set, Complex64::new(2.0, 0.0), 1e-12);
    }

    #[test]
    fn sum_of_roots_matches_trace_coefficient() {
        // Roots sum to -c3/c4.
        let set = roots_univariate(&poly("3*t^4 + 7*t^3 - t + 1"), 1e-12).unwrap();
        let sum: Complex64 = set.roots.iter().sum();
        assert!((sum - Complex64::new(-7.0 / 3.0, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn rejects_improper_inputs() {
        assert!(matches!(
            roots_univariate(&poly("x + y"), 1e-12),
            Err(NumericError::NotUnivariate(_))
        ));
        assert!(matches!(
            roots_univariate(&poly("x^-1 + 1"), 1e-12),
            Err(NumericError::NegativeExponent(_))
        ));
        assert!(matches!(
            roots_univariate(&poly("5"), 1e-12),
            Err(NumericError::ConstantPolynomial)
        ));
        assert!(matches!(
            roots_from_coefficients(&[1.0, 1.0], 0.0),
            Err(NumericError::InvalidParameter(_))
        ));
        assert!(matches!(
            roots_from_coefficients(&[1.0, f64::INFINITY], 1e-12),
            Err(NumericError::CoefficientOverflow)
        ));
    }

    #[test]
    fn multiple_roots_stay_in_a_tight_cluster() {
        // (t - 1)^4: a multiple root cannot be certified to 1e-15, but
        // whether the iteration stops or hits the cap, all four values must
        // sit in the usual eps^(1/4) cluster around 1.
        let f = poly("t^4 - 4*t^3 + 6*t^2 - 4*t + 1");
        let roots = match roots_univariate(&f, 1e-15) {
            Ok(set) => set.roots,
            Err(NumericError::NonConvergence { partial, .. }) => partial.roots,
            Err(other) => panic!("unexpected error: {other}"),
        };
        assert_eq!(roots.len(), 4);
        for r in roots {
            assert!(
                (r - Complex64::new(1.0, 0.0)).norm() < 2e-3,
                "cluster escaped: {r}"
            );
        }
    }

    #[test]
    fn trace_parameters_are_validated() {
        assert!(matches!(
            convergence_trace(0, 1e-2, 0.1, 4, 1e-12),
            Err(NumericError::InvalidParameter(_))
        ));
        assert!(matches!(
            convergence_trace(1, 0.5, 0.1, 4, 1e-12),
            Err(NumericError::InvalidParameter(_))
        ));
        assert!(matches!(
            convergence_trace(1, 1e-2, 1.5, 4, 1e-12),
            Err(NumericError::InvalidParameter(_))
        ));
        assert!(matches!(
            convergence_trace(1, 1e-2, 0.1, 1, 1e-12),
            Err(NumericError::InvalidParameter(_))
        ));
    }

    #[test]
    fn trace_converges_to_one_for_n_1() {
        let trace = convergence_trace(1, 1e-2, 0.1, 4, 1e-12).unwrap();
        assert_eq!(trace.steps.len(), 4);
        let distances: Vec<f64> = trace
            .steps
            .iter()
            .map(|s| s.matches[0].distance)
            .collect();
        for pair in distances.windows(2) {
            assert!(pair[1] < pair[0], "distances must shrink: {distances:?}");
        }
        assert!(distances[3] < 1e-4);
        // B column is p^1 = p exactly.
        for step in &trace.steps {
            assert_eq!(step.b, step.p);
        }
    }

    #[test]
    fn greedy_matching_is_without_replacement() {
        // Two targets, one computed root: only one match, to the closer one.
        let roots = [Complex64::new(0.9, 0.0)];
        let matches = match_unity_roots(2, &roots);
        assert_eq!(matches.len(), 1);
        assert_eq!(matches[0].index, 0);
    }
}
