//! The gluing pipeline: starting from a two-variable eigenvalue polynomial
//! in `(L, M)` and the exponents identifying the boundary curves of two
//! glued pieces, produce the one-parameter family `F(A, p)`, eliminate down
//! to a two-variable polynomial `G(A, B)`, and inspect the vertical edges of
//! its Newton polygon for roots of unity.
//!
//! The variable roles are fixed by name: the base polynomial lives in `L`
//! and `M`, the glued family in `A` and `p`, and the eliminated output in
//! `A` and `B` (where `B` stands for `p^n`).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::elimination::{resultant, EliminationError};
use crate::newton::{
    basis_change_for_slope, edge_polynomial_substitution, newton_polygon, unity_divisibility,
    NewtonError, Slope,
};
use crate::poly::{vn, LaurentPolynomial, Monomial, PolyError, VarName};
use crate::text::parse_poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AmalgamError {
    /// The four gluing exponents must identify bases of the same lattice.
    #[error("gluing exponents ({r}, {s}, {u}, {v}) do not satisfy |r*v - s*u| = 1")]
    InvalidGluing { r: i64, s: i64, u: i64, v: i64 },
    /// The base polynomial is zero.
    #[error("base polynomial must be nonzero")]
    ZeroBase,
    /// The base polynomial may only involve the variables `L` and `M`.
    #[error("base polynomial must be a polynomial in L and M, found `{0}`")]
    UnexpectedVariable(VarName),
    /// The family parameter must be positive.
    #[error("parameter n must be at least 1")]
    ZeroN,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Newton(#[from] NewtonError),
    #[error(transparent)]
    Elimination(#[from] EliminationError),
}

/// Exponents identifying the peripheral curves of the glued piece:
/// `l = mu^r * lambda^s` and `m = mu^u * lambda^v` on the shared torus.
/// The pairs must span the lattice, i.e. `|r*v - s*u| = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GluingData {
    r: i64,
    s: i64,
    u: i64,
    v: i64,
}

impl GluingData {
    pub fn new(r: i64, s: i64, u: i64, v: i64) -> Result<Self, AmalgamError> {
        let det = r
            .checked_mul(v)
            .and_then(|rv| s.checked_mul(u).map(|su| (rv, su)))
            .and_then(|(rv, su)| rv.checked_sub(su));
        match det {
            Some(1) | Some(-1) => Ok(GluingData { r, s, u, v }),
            _ => Err(AmalgamError::InvalidGluing { r, s, u, v }),
        }
    }

    pub fn exponents(&self) -> (i64, i64, i64, i64) {
        (self.r, self.s, self.u, self.v)
    }

    pub fn determinant(&self) -> i64 {
        self.r * self.v - self.s * self.u
    }
}

impl Default for GluingData {
    /// The gluing `l = mu^4 lambda`, `m = mu^3 lambda` used throughout the
    /// worked examples.
    fn default() -> Self {
        GluingData {
            r: 4,
            s: 1,
            u: 3,
            v: 1,
        }
    }
}

/// Everything the pipeline needs: a nonzero base polynomial in `(L, M)`
/// (normalized on construction), the gluing exponents, and the positive
/// twisting parameter `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmalgamParams {
    base: LaurentPolynomial,
    gluing: GluingData,
    n: u32,
}

/// The name of the base meridian-eigenvalue variable.
pub fn l_var() -> VarName {
    vn("L")
}

/// The name of the base longitude-eigenvalue variable.
pub fn m_var() -> VarName {
    vn("M")
}

/// Output variables of the pipeline: `A` and `p` for the glued family,
/// `B = p^n` after the final elimination.
pub fn a_var() -> VarName {
    vn("A")
}

pub fn p_var() -> VarName {
    vn("p")
}

pub fn b_var() -> VarName {
    vn("B")
}

impl AmalgamParams {
    pub fn new(
        base: LaurentPolynomial,
        gluing: GluingData,
        n: u32,
    ) -> Result<Self, AmalgamError> {
        if n == 0 {
            return Err(AmalgamError::ZeroN);
        }
        if base.is_zero() {
            return Err(AmalgamError::ZeroBase);
        }
        let (l, m) = (l_var(), m_var());
        for var in base.vars() {
            if var != l && var != m {
                return Err(AmalgamError::UnexpectedVariable(var));
            }
        }
        Ok(AmalgamParams {
            base: base.normalize()?,
            gluing,
            n,
        })
    }

    /// The default instance: figure-eight base, default gluing.
    pub fn fig8(n: u32) -> Result<Self, AmalgamError> {
        AmalgamParams::new(fig8_a_polynomial(), GluingData::default(), n)
    }

    pub fn base(&self) -> &LaurentPolynomial {
        &self.base
    }

    pub fn gluing(&self) -> GluingData {
        self.gluing
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

/// The catalog entry `fig8`: the figure-eight knot's eigenvalue polynomial
/// `-L + L*M^2 + M^4 + 2*L*M^4 + L^2*M^4 + L*M^6 - L*M^8`.
pub fn fig8_a_polynomial() -> LaurentPolynomial {
    parse_poly("-L + L*M^2 + M^4 + 2*L*M^4 + L^2*M^4 + L*M^6 - L*M^8")
        .expect("catalog polynomial parses")
}

/// What the vertical-edge inspection found for one parameter value `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnityReport {
    pub n: u32,
    /// Whether the Newton polygon of `G` in `(B, A)` has a vertical edge.
    pub vertical_edge_found: bool,
    /// The largest `k` with `(1 - t^n)^k` dividing a vertical edge
    /// polynomial (maximal over vertical edges; 0 when none is divisible).
    /// Any value >= 1 certifies that every n-th root of unity is a root.
    pub multiplicity: u32,
    /// The normalized specialization of `G` at `B = 0`.
    pub fiber_polynomial: LaurentPolynomial,
}

/// The eigenvalue images induced by the gluing, as exponent vectors over
/// `(A, p)`: `M -> A^(n*v) * p^(-s)` and `L -> A^(-n*u) * p^r`. With the
/// default gluing these read `M = A^n / p` and `L = p^4 / A^(3n)`.
fn glue_images(params: &AmalgamParams) -> BTreeMap<VarName, Monomial> {
    let (r, s, u, v) = params.gluing.exponents();
    let n = i64::from(params.n);
    BTreeMap::from([
        (
            m_var(),
            Monomial::from_exponents([(a_var(), n * v), (p_var(), -s)]),
        ),
        (
            l_var(),
            Monomial::from_exponents([(a_var(), -n * u), (p_var(), r)]),
        ),
    ])
}

/// Applies the gluing images to the base polynomial and normalizes away the
/// resulting monomial denominators, producing the family `F(A, p)`.
pub fn glue_substitution(params: &AmalgamParams) -> Result<LaurentPolynomial, AmalgamError> {
    let substituted = params.base.substitute_monomials(&glue_images(params))?;
    // Monomial substitution with an invertible exponent matrix is injective,
    // so a nonzero base cannot collapse to zero.
    Ok(substituted.normalize()?)
}

/// The linear relation `target = A^a_exp * p^p_exp`, cleared of negative
/// exponents by the minimal monomial: both sides are multiplied by exactly
/// the powers of `A` and `p` needed to make them ordinary.
fn cleared_relation(target: VarName, a_exp: i64, p_exp: i64) -> LaurentPolynomial {
    let lhs = Monomial::from_exponents([
        (target, 1),
        (a_var(), (-a_exp).max(0)),
        (p_var(), (-p_exp).max(0)),
    ]);
    let rhs = Monomial::from_exponents([(a_var(), a_exp.max(0)), (p_var(), p_exp.max(0))]);
    &LaurentPolynomial::from_monomial(BigInt::from(1), lhs)
        - &LaurentPolynomial::from_monomial(BigInt::from(1), rhs)
}

/// Eliminates `M`, then `L`, then `p` from the base polynomial against the
/// gluing relations, producing `G(A, B)`.
///
/// The relations are the cleared forms of `M = A^(n*v) p^(-s)`,
/// `L = A^(-n*u) p^r`, and finally `p^n = B` (with defaults:
/// `p*M - A^n`, `A^(3n)*L - p^4`, `p^n - B`). The intermediate resultants
/// are normalized after every step; each normalization only strips a unit
/// — a sign, a content, a monomial in the surviving variables — so the end
/// result agrees with the unnormalized chain up to one final normalization,
/// while keeping the intermediate coefficient growth down.
pub fn resultant_chain(params: &AmalgamParams) -> Result<LaurentPolynomial, AmalgamError> {
    let (r, s, u, v) = params.gluing.exponents();
    let n = i64::from(params.n);

    let rel_m = cleared_relation(m_var(), n * v, -s);
    let step = resultant(&params.base, &rel_m, &m_var())?.normalize()?;

    let rel_l = cleared_relation(l_var(), -n * u, r);
    let step = resultant(&step, &rel_l, &l_var())?.normalize()?;

    let rel_p = &LaurentPolynomial::from_monomial(
        BigInt::from(1),
        Monomial::from_exponents([(p_var(), n)]),
    ) - &LaurentPolynomial::variable(b_var());
    Ok(resultant(&step, &rel_p, &p_var())?.normalize()?)
}

/// Runs the chain and inspects the result: find the vertical edges of the
/// Newton polygon of `G` in `(B, A)` (horizontal `B`, vertical `A`), take
/// the maximal `(1 - t^n)`-multiplicity of their edge polynomials, and
/// record the fiber `G(A, 0)` whose roots are the limiting eigenvalues.
pub fn unity_report(params: &AmalgamParams) -> Result<UnityReport, AmalgamError> {
    let chain = resultant_chain(params)?;
    let polygon = newton_polygon(&chain, &b_var(), &a_var())?;
    let vertical_edges = match polygon.edges() {
        Ok(edges) => edges
            .into_iter()
            .filter(|e| e.slope() == Slope::Vertical)
            .collect(),
        // A one-point polygon (constant chain output) has no edges at all.
        Err(NewtonError::DegeneratePolygon) => Vec::new(),
        Err(other) => return Err(other.into()),
    };
    let basis = basis_change_for_slope(1, 0)?;
    let mut multiplicity = 0;
    for edge in &vertical_edges {
        let f_e = edge_polynomial_substitution(&chain, edge, &basis)?;
        multiplicity = multiplicity.max(unity_divisibility(&f_e, params.n));
    }
    let fiber = chain.specialize(&b_var(), &BigInt::zero())?.normalize()?;
    Ok(UnityReport {
        n: params.n,
        vertical_edge_found: !vertical_edges.is_empty(),
        multiplicity,
        fiber_polynomial: fiber,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> LaurentPolynomial {
        parse_poly(s).expect("test polynomial parses")
    }

    /// The seven-term family polynomial, written out for a given n.
    fn family_poly(n: u32) -> LaurentPolynomial {
        let n = u64::from(n);
        poly(&format!(
            "-p^8 + p^6*A^{} + A^{} + 2*p^4*A^{} + p^8*A^{} + p^2*A^{} - A^{}",
            2 * n,
            7 * n,
            4 * n,
            n,
            6 * n,
            8 * n
        ))
    }

    #[test]
    fn gluing_data_validates_determinant() {
        assert!(GluingData::new(4, 1, 3, 1).is_ok());
        assert!(GluingData::new(1, 0, 0, 1).is_ok());
        assert!(GluingData::new(2, 1, 3, 1).is_ok()); // det -1
        assert_eq!(
            GluingData::new(2, 0, 0, 2),
            Err(AmalgamError::InvalidGluing {
                r: 2,
                s: 0,
                u: 0,
                v: 2
            })
        );
        assert_eq!(GluingData::default().determinant(), 1);
    }

    #[test]
    fn params_validate_base_and_n() {
        assert_eq!(
            AmalgamParams::new(fig8_a_polynomial(), GluingData::default(), 0),
            Err(AmalgamError::ZeroN)
        );
        assert_eq!(
            AmalgamParams::new(LaurentPolynomial::zero(), GluingData::default(), 1),
            Err(AmalgamError::ZeroBase)
        );
        assert_eq!(
            AmalgamParams::new(poly("L + x"), GluingData::default(), 1),
            Err(AmalgamError::UnexpectedVariable(vn("x")))
        );
        // Base is stored normalized.
        let params = AmalgamParams::new(poly("2*L*M^-1 - 2*M"), GluingData::default(), 1).unwrap();
        assert_eq!(params.base(), &poly("L - M^2"));
    }

    #[test]
    fn catalog_polynomial_is_normalized_with_seven_terms() {
        let fig8 = fig8_a_polynomial();
        assert_eq!(fig8.num_terms(), 7);
        assert_eq!(fig8.normalize().unwrap(), fig8);
    }

    #[test]
    fn glue_substitution_gives_the_family_polynomial() {
        for n in 1..=3 {
            let params = AmalgamParams::fig8(n).unwrap();
            let family = glue_substitution(&params).unwrap();
            assert_eq!(
                family,
                family_poly(n).normalize().unwrap(),
                "family polynomial at n = {n}"
            );
        }
    }

    #[test]
    fn family_at_p_zero_leaves_the_unity_factor() {
        for n in [1u32, 4] {
            let params = AmalgamParams::fig8(n).unwrap();
            let family = glue_substitution(&params).unwrap();
            let fiber = family
                .specialize(&p_var(), &BigInt::zero())
                .unwrap()
                .normalize()
                .unwrap();
            assert_eq!(fiber, poly(&format!("A^{n} - 1")), "fiber at n = {n}");
        }
    }

    #[test]
    fn chain_agrees_with_direct_elimination_of_the_family() {
        // Eliminating p from F(A, p) against p^n - B must match the full
        // M, L, p chain after normalization, up to global sign.
        for n in 1..=2 {
            let params = AmalgamParams::fig8(n).unwrap();
            let family = glue_substitution(&params).unwrap();
            let rel_p = &LaurentPolynomial::from_monomial(
                BigInt::from(1),
                Monomial::from_exponents([(p_var(), i64::from(n))]),
            ) - &LaurentPolynomial::variable(b_var());
            let direct = resultant(&family, &rel_p, &p_var())
                .unwrap()
                .normalize()
                .unwrap();
            let chain = resultant_chain(&params).unwrap();
            assert!(
                chain == direct || chain == -&direct,
                "pipelines disagree at n = {n}: chain = {chain}, direct = {direct}"
            );
        }
    }

    #[test]
    fn unity_report_detects_the_first_root() {
        let report = unity_report(&AmalgamParams::fig8(1).unwrap()).unwrap();
        assert!(report.vertical_edge_found);
        assert!(report.multiplicity >= 1, "1 - t must divide a vertical edge");
        // The fiber's roots in A are the limiting eigenvalues; A = 1 among them.
        let one = report
            .fiber_polynomial
            .specialize(&a_var(), &BigInt::from(1))
            .unwrap();
        assert!(one.is_zero(), "A = 1 is a root of the fiber polynomial");
    }

    #[test]
    fn cleared_relations_match_the_default_shapes() {
        assert_eq!(cleared_relation(m_var(), 5, -1), poly("p*M - A^5"));
        assert_eq!(cleared_relation(l_var(), -15, 4), poly("A^15*L - p^4"));
        // Negative exponents land on whichever side needs them.
        assert_eq!(cleared_relation(m_var(), -2, 3), poly("A^2*M - p^3"));
    }
}
