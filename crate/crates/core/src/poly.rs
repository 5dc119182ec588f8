//! Sparse Laurent polynomials over arbitrary-precision integers.
//!
//! A polynomial is a finite map from monomials to nonzero `BigInt`
//! coefficients, where a monomial assigns a (possibly negative) integer
//! exponent to each of finitely many named variables. The zero polynomial is
//! the empty map. All arithmetic is exact.
//!
//! Monomials are totally ordered: compare exponent vectors variable by
//! variable in alphabetical order, treating a missing variable as exponent 0;
//! the first difference decides. Term iteration, the printed form, and the
//! sign convention of [`LaurentPolynomial::normalize`] all use this order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Hard cap on the number of terms any single arithmetic operation may
/// produce, configurable through the `APOLY_MAX_TERMS` environment variable
/// (read once per process; default one million). Exceeding it raises a panic
/// with [`TermLimitExceeded`] as the payload so a driver can unwind cleanly
/// instead of letting an intermediate swell fill all memory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TermLimitExceeded {
    /// The limit that was in force when the operation blew past it.
    pub limit: usize,
}

impl fmt::Display for TermLimitExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "term budget exceeded: an intermediate polynomial grew past {} terms \
             (raise APOLY_MAX_TERMS to allow more)",
            self.limit
        )
    }
}

fn term_limit() -> usize {
    static LIMIT: OnceLock<usize> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var("APOLY_MAX_TERMS")
            .ok()
            .and_then(|raw| raw.trim().parse::<usize>().ok())
            .filter(|&n| n > 0)
            .unwrap_or(1_000_000)
    })
}

#[inline]
fn check_term_budget(terms: usize) {
    let limit = term_limit();
    if terms > limit {
        std::panic::panic_any(TermLimitExceeded { limit });
    }
}

/// Errors from polynomial construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    /// A variable name failed validation (must be an ASCII letter followed
    /// by letters, digits, or underscores).
    #[error("invalid variable name `{0}`")]
    InvalidVarName(String),
    /// The zero polynomial was passed to an operation that has no sensible
    /// answer for it (normalization, division by zero, ...).
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    /// A substitution map is missing an image for a variable that actually
    /// occurs in the polynomial.
    #[error("no image assigned for variable `{0}`")]
    MissingImage(VarName),
    /// Specializing a variable at 0 when it occurs with a negative exponent.
    #[error("variable `{0}` occurs with a negative exponent, cannot evaluate at 0")]
    NegativeExponentAtZero(VarName),
    /// Specializing a variable at an integer of magnitude at least two when
    /// it occurs with a negative exponent; the result would leave the ring.
    #[error("variable `{0}` occurs with a negative exponent, evaluating at {1} is not integral")]
    NonIntegralSpecialization(VarName, BigInt),
    /// Exact division was requested but the divisor is zero.
    #[error("division by the zero polynomial")]
    DivisionByZero,
    /// Exact division was requested and no exact quotient exists.
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
}

/// A variable name: one ASCII letter followed by any mix of ASCII letters,
/// digits, and underscores. Names compare alphabetically (byte order), and
/// that order is what makes the monomial order — and hence every canonical
/// form in this crate — well defined.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarName(String);

impl VarName {
    pub fn new(name: impl Into<String>) -> Result<Self, PolyError> {
        let name = name.into();
        let mut chars = name.chars();
        let valid = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if valid {
            Ok(VarName(name))
        } else {
            Err(PolyError::InvalidVarName(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl FromStr for VarName {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        VarName::new(s)
    }
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Crate-internal shorthand for naming a variable that is known to be valid.
pub(crate) fn vn(name: &str) -> VarName {
    VarName::new(name).expect("statically known variable name")
}

/// A monomial: a finite exponent vector over named variables. Exponents may
/// be negative; zero exponents are never stored, so equal monomials have
/// equal representations.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: BTreeMap<VarName, i64>,
}

impl Monomial {
    /// The empty monomial (the multiplicative unit).
    pub fn one() -> Self {
        Monomial::default()
    }

    /// The monomial `v^1`.
    pub fn var(v: VarName) -> Self {
        Monomial {
            exponents: BTreeMap::from([(v, 1)]),
        }
    }

    /// Builds a monomial from `(variable, exponent)` pairs. Repeated
    /// variables have their exponents added; zero exponents are dropped.
    pub fn from_exponents<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (VarName, i64)>,
    {
        let mut exponents: BTreeMap<VarName, i64> = BTreeMap::new();
        for (v, e) in pairs {
            let slot = exponents.entry(v).or_insert(0);
            *slot = slot.checked_add(e).expect("monomial exponent overflow");
        }
        exponents.retain(|_, e| *e != 0);
        Monomial { exponents }
    }

    /// The exponent of `v`, which is 0 when `v` does not occur.
    pub fn exponent(&self, v: &VarName) -> i64 {
        self.exponents.get(v).copied().unwrap_or(0)
    }

    /// Iterates over `(variable, exponent)` pairs in alphabetical order;
    /// only nonzero exponents appear.
    pub fn exponents(&self) -> impl Iterator<Item = (&VarName, i64)> {
        self.exponents.iter().map(|(v, &e)| (v, e))
    }

    /// The variables that occur (with nonzero exponent).
    pub fn vars(&self) -> impl Iterator<Item = &VarName> {
        self.exponents.keys()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Product of two monomials (exponents add).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exponents = self.exponents.clone();
        for (v, &e) in &other.exponents {
            let slot = exponents.entry(v.clone()).or_insert(0);
            *slot = slot.checked_add(e).expect("monomial exponent overflow");
            if *slot == 0 {
                exponents.remove(v);
            }
        }
        Monomial { exponents }
    }

    /// `self` raised to the integer power `k` (which may be negative).
    pub fn pow(&self, k: i64) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            exponents: self
                .exponents
                .iter()
                .map(|(v, &e)| {
                    (
                        v.clone(),
                        e.checked_mul(k).expect("monomial exponent overflow"),
                    )
                })
                .collect(),
        }
    }

    /// The multiplicative inverse (all exponents negated).
    pub fn inverse(&self) -> Monomial {
        self.pow(-1)
    }

    /// True when every exponent is nonnegative after dividing by `other`,
    /// i.e. when `other` divides `self` in the ordinary polynomial ring.
    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let quotient = self.mul(&other.inverse());
        if quotient.exponents.values().all(|&e| e >= 0) {
            Some(quotient)
        } else {
            None
        }
    }
}

impl Ord for Monomial {
    /// Lexicographic on exponent vectors: walk the variables of both sides in
    /// alphabetical order, treat a missing variable as exponent 0, and let
    /// the first differing exponent decide. Note this is *not* the derived
    /// map order: `L` must compare above `L*M^-3` because the `M` slot of the
    /// former reads 0 > -3.
    fn cmp(&self, other: &Self) -> Ordering {
        let mut lhs = self.exponents.iter().peekable();
        let mut rhs = other.exponents.iter().peekable();
        loop {
            match (lhs.peek(), rhs.peek()) {
                (None, None) => return Ordering::Equal,
                // Only one side has variables left; its first remaining
                // exponent is compared against an implicit 0.
                (Some((_, &e)), None) => return e.cmp(&0),
                (None, Some((_, &e))) => return 0.cmp(&e),
                (Some((lv, &le)), Some((rv, &re))) => match lv.cmp(rv) {
                    Ordering::Equal => {
                        if le != re {
                            return le.cmp(&re);
                        }
                        lhs.next();
                        rhs.next();
                    }
                    // The alphabetically earlier variable is missing (hence
                    // exponent 0) on the other side.
                    Ordering::Less => return le.cmp(&0),
                    Ordering::Greater => return 0.cmp(&re),
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, e) in self.exponents() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A sparse Laurent polynomial with `BigInt` coefficients. Stored
/// coefficients are always nonzero; term iteration follows the monomial
/// order, smallest first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LaurentPolynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        LaurentPolynomial::default()
    }

    pub fn one() -> Self {
        LaurentPolynomial::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        LaurentPolynomial { terms }
    }

    pub fn from_int(c: i64) -> Self {
        LaurentPolynomial::constant(BigInt::from(c))
    }

    /// The polynomial `v`.
    pub fn variable(v: VarName) -> Self {
        LaurentPolynomial::from_monomial(BigInt::one(), Monomial::var(v))
    }

    /// The single-term polynomial `c * m`.
    pub fn from_monomial(c: BigInt, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPolynomial { terms }
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, summing
    /// repeats and discarding anything that cancels to zero.
    pub fn from_terms<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut poly = LaurentPolynomial::zero();
        for (m, c) in pairs {
            poly.add_term(m, c);
        }
        poly
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
                check_term_budget(self.terms.len());
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterates over terms in increasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// The coefficient of `m` (zero when absent).
    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Every variable that occurs in some term.
    pub fn vars(&self) -> BTreeSet<VarName> {
        self.terms
            .keys()
            .flat_map(|m| m.vars().cloned())
            .collect()
    }

    /// The greatest term in the monomial order, unless the polynomial is 0.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Smallest exponent of `v` over all terms (a missing variable counts
    /// as exponent 0). `None` for the zero polynomial.
    pub fn min_exponent(&self, v: &VarName) -> Option<i64> {
        self.terms.keys().map(|m| m.exponent(v)).min()
    }

    /// Largest exponent of `v` over all terms, with the same conventions.
    pub fn max_exponent(&self, v: &VarName) -> Option<i64> {
        self.terms.keys().map(|m| m.exponent(v)).max()
    }

    /// The positive gcd of all coefficients; 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Multiplies every term by the monomial `m` (an invertible operation).
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        LaurentPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return LaurentPolynomial::zero();
        }
        LaurentPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = LaurentPolynomial::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The canonical representative of `self` up to multiplication by
    /// `c * m` with `c` rational and `m` a monomial:
    ///
    /// 1. divide out the content, so the coefficient gcd is 1;
    /// 2. shift each variable so its minimum exponent over all terms is 0
    ///    (this removes all negative exponents without introducing gaps);
    /// 3. flip the global sign if needed so the greatest term has a positive
    ///    coefficient.
    ///
    /// Idempotent; fails only on the zero polynomial, which has no such
    /// representative.
    pub fn normalize(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let content = self.content();
        let shift = Monomial::from_exponents(
            self.vars()
                .into_iter()
                .map(|v| {
                    let min = self.min_exponent(&v).expect("nonzero polynomial");
                    (v, -min)
                }),
        );
        let mut result = LaurentPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(&shift), c / &content))
                .collect(),
        };
        let (_, lead) = result.leading_term().expect("nonzero polynomial");
        if lead.is_negative() {
            result = -&result;
        }
        Ok(result)
    }

    /// Simultaneously substitutes a monomial for every variable: a ring
    /// homomorphism, since monomials are units in the Laurent ring. Every
    /// variable occurring in `self` must have an image in `images`; images
    /// may involve any variables at all.
    pub fn substitute_monomials(
        &self,
        images: &BTreeMap<VarName, Monomial>,
    ) -> Result<Self, PolyError> {
        for v in self.vars() {
            if !images.contains_key(&v) {
                return Err(PolyError::MissingImage(v));
            }
        }
        let mut result = LaurentPolynomial::zero();
        for (m, c) in &self.terms {
            let mut image = Monomial::one();
            for (v, e) in m.exponents() {
                image = image.mul(&images[v].pow(e));
            }
            result.add_term(image, c.clone());
        }
        Ok(result)
    }

    /// Evaluates one variable at an integer, leaving the others alone.
    /// Negative exponents of `v` are only meaningful when `value` is a unit:
    /// at `value = 0` they are poles, and at `|value| >= 2` the result would
    /// have denominators, so both cases are errors.
    pub fn specialize(&self, v: &VarName, value: &BigInt) -> Result<Self, PolyError> {
        for m in self.terms.keys() {
            if m.exponent(v) < 0 {
                if value.is_zero() {
                    return Err(PolyError::NegativeExponentAtZero(v.clone()));
                }
                if !value.magnitude().is_one() {
                    return Err(PolyError::NonIntegralSpecialization(
                        v.clone(),
                        value.clone(),
                    ));
                }
            }
        }
        let mut result = LaurentPolynomial::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            let factor = if e == 0 {
                BigInt::one()
            } else if value.magnitude().is_one() {
                // (+-1)^e depends only on the parity of e.
                if value.is_negative() && e % 2 != 0 {
                    -BigInt::one()
                } else {
                    BigInt::one()
                }
            } else if e > 0 {
                num_traits::pow::Pow::pow(value, e as u64)
            } else {
                // value = 0 with e < 0 was rejected above; 0^e for e > 0 is
                // handled by the generic power (it yields 0).
                unreachable!("negative exponent with non-unit value")
            };
            let rest = Monomial::from_exponents(
                m.exponents()
                    .filter(|(mv, _)| *mv != v)
                    .map(|(mv, me)| (mv.clone(), me)),
            );
            result.add_term(rest, c * factor);
        }
        Ok(result)
    }

    /// Exact division: returns `q` with `self = q * divisor`, or
    /// [`PolyError::NotDivisible`] when no such `q` exists over the integer
    /// Laurent ring.
    ///
    /// Both operands are first shifted by their extremal monomials into
    /// ordinary polynomials whose per-variable minimum exponents are 0; in a
    /// domain those shifts are exactly recoverable, so divisibility is
    /// unaffected. The ordinary case is settled by leading-term division in
    /// the monomial order: if `divisor`'s leading term fails to divide the
    /// current remainder's, no quotient exists, because the leading term of
    /// any product is the product of the leading terms.
    pub fn divide_exact(&self, divisor: &Self) -> Result<Self, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPolynomial::zero());
        }
        let (f_shift, f) = self.split_extremal_monomial();
        let (g_shift, g) = divisor.split_extremal_monomial();

        let (g_lead, g_lead_coeff) = g.leading_term().expect("nonzero divisor");
        let g_lead = g_lead.clone();
        let g_lead_coeff = g_lead_coeff.clone();

        let mut remainder = f;
        let mut quotient = LaurentPolynomial::zero();
        while let Some((r_lead, r_coeff)) = remainder.leading_term() {
            let Some(m) = r_lead.checked_div(&g_lead) else {
                return Err(PolyError::NotDivisible);
            };
            let (c, rem) = r_coeff.div_rem(&g_lead_coeff);
            if !rem.is_zero() {
                return Err(PolyError::NotDivisible);
            }
            let step = LaurentPolynomial::from_monomial(c, m);
            remainder = &remainder - &(&step * &g);
            // Each round contributes one fresh term below the previous ones,
            // so the budget check doubles as a termination rail.
            quotient = &quotient + &step;
            check_term_budget(quotient.num_terms());
        }
        Ok(quotient.mul_monomial(&f_shift.mul(&g_shift.inverse())))
    }

    /// Splits `self` as `m * g` where `m` collects the per-variable minimum
    /// exponents and `g` is an ordinary polynomial in which every variable
    /// attains exponent 0 somewhere.
    fn split_extremal_monomial(&self) -> (Monomial, LaurentPolynomial) {
        let shift = Monomial::from_exponents(self.vars().into_iter().map(|v| {
            let min = self.min_exponent(&v).expect("nonzero polynomial");
            (v, min)
        }));
        (shift.clone(), self.mul_monomial(&shift.inverse()))
    }

    /// The coefficient of `v^k`, as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, v: &VarName, k: i64) -> Self {
        LaurentPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(v) == k)
                .map(|(m, c)| {
                    let rest = Monomial::from_exponents(
                        m.exponents()
                            .filter(|(mv, _)| *mv != v)
                            .map(|(mv, me)| (mv.clone(), me)),
                    );
                    (rest, c.clone())
                })
                .collect(),
        }
    }

    /// Converts each coefficient to `f64`, pairing it with its monomial.
    /// `None` if any coefficient overflows the double range.
    pub fn terms_as_f64(&self) -> Option<Vec<(Monomial, f64)>> {
        self.terms
            .iter()
            .map(|(m, c)| c.to_f64().filter(|x| x.is_finite()).map(|x| (m.clone(), x)))
            .collect()
    }
}

impl std::ops::Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl std::ops::Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut result = self.clone();
        for (m, c) in &rhs.terms {
            result.add_term(m.clone(), c.clone());
        }
        result
    }
}

impl std::ops::Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut result = self.clone();
        for (m, c) in &rhs.terms {
            result.add_term(m.clone(), -c);
        }
        result
    }
}

impl std::ops::Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut result = LaurentPolynomial::zero();
        for (ml, cl) in &self.terms {
            for (mr, cr) in &rhs.terms {
                result.add_term(ml.mul(mr), cl * cr);
            }
        }
        result
    }
}

impl fmt::Display for LaurentPolynomial {
    /// Canonical text form: terms in increasing monomial order, joined with
    /// ` + ` / ` - `, coefficient magnitudes printed only when they carry
    /// information. Round-trips through [`crate::text::parse_poly`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mag = c.magnitude();
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> LaurentPolynomial {
        crate::text::parse_poly(s).expect("test polynomial parses")
    }

    #[test]
    fn var_name_validation() {
        assert!(VarName::new("L").is_ok());
        assert!(VarName::new("tmp_2").is_ok());
        assert!(VarName::new("").is_err());
        assert!(VarName::new("2x").is_err());
        assert!(VarName::new("a b").is_err());
        assert!(VarName::new("_x").is_err());
    }

    #[test]
    fn monomial_order_first_difference_decides() {
        let l = Monomial::var(vn("L"));
        let lm_neg = Monomial::from_exponents([(vn("L"), 1), (vn("M"), -3)]);
        // Equal in L, then 0 > -3 in M.
        assert!(l > lm_neg);

        let m4 = Monomial::from_exponents([(vn("M"), 4)]);
        let l2m4 = Monomial::from_exponents([(vn("L"), 2), (vn("M"), 4)]);
        // L decides before M is consulted.
        assert!(m4 < l2m4);

        let neg = Monomial::from_exponents([(vn("L"), -1), (vn("M"), 9)]);
        assert!(neg < Monomial::one());
    }

    #[test]
    fn monomial_from_exponents_merges_and_drops_zeros() {
        let m = Monomial::from_exponents([(vn("x"), 2), (vn("x"), -2), (vn("y"), 1)]);
        assert_eq!(m, Monomial::var(vn("y")));
        assert_eq!(m.exponent(&vn("x")), 0);
    }

    #[test]
    fn addition_cancels_to_zero() {
        let f = parse("L*M^2 - 3");
        let g = parse("3 - L*M^2");
        assert!((&f + &g).is_zero());
    }

    #[test]
    fn multiplication_matches_hand_expansion() {
        // (x + y)(x - y) = x^2 - y^2
        let f = parse("x + y");
        let g = parse("x - y");
        assert_eq!(&f * &g, parse("x^2 - y^2"));
    }

    #[test]
    fn multiplication_with_laurent_exponents() {
        // (x + x^-1)^2 = x^2 + 2 + x^-2
        let f = parse("x + x^-1");
        assert_eq!(&f * &f, parse("x^2 + 2 + x^-2"));
    }

    #[test]
    fn normalize_divides_content_shifts_and_fixes_sign() {
        // 2*L - 4*M^-1 -> content 2, M shifted up by 1, leading term L*M
        // already positive: L*M - 2.
        let f = parse("2*L - 4*M^-1");
        assert_eq!(f.normalize().unwrap(), parse("L*M - 2"));
        // 6x^2 + 9x -> content 3, x shift 1.
        let g = parse("6*x^2 + 9*x");
        assert_eq!(g.normalize().unwrap(), parse("2*x + 3"));
        // Leading-coefficient sign flip.
        let h = parse("-x^2 + 1");
        assert_eq!(h.normalize().unwrap(), parse("x^2 - 1"));
    }

    #[test]
    fn normalize_is_idempotent() {
        let f = parse("-6*L^-2*M + 10*L*M^-4");
        let once = f.normalize().unwrap();
        assert_eq!(once.normalize().unwrap(), once);
    }

    #[test]
    fn normalize_rejects_zero() {
        assert_eq!(
            LaurentPolynomial::zero().normalize(),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn substitute_monomials_is_multiplicative() {
        // x -> u*v^-1, y -> v^2 applied to x^2*y + y.
        let images = BTreeMap::from([
            (
                vn("x"),
                Monomial::from_exponents([(vn("u"), 1), (vn("v"), -1)]),
            ),
            (vn("y"), Monomial::from_exponents([(vn("v"), 2)])),
        ]);
        let f = parse("x^2*y + y");
        let image = f.substitute_monomials(&images).unwrap();
        assert_eq!(image, parse("u^2 + v^2"));
    }

    #[test]
    fn substitute_monomials_requires_every_image() {
        let f = parse("x*y");
        let images = BTreeMap::from([(vn("x"), Monomial::var(vn("u")))]);
        assert_eq!(
            f.substitute_monomials(&images),
            Err(PolyError::MissingImage(vn("y")))
        );
    }

    #[test]
    fn substitution_can_collapse_terms() {
        // x -> u, y -> u: x + y collapses to 2u; x - y collapses to 0.
        let images = BTreeMap::from([
            (vn("x"), Monomial::var(vn("u"))),
            (vn("y"), Monomial::var(vn("u"))),
        ]);
        assert_eq!(parse("x + y").substitute_monomials(&images).unwrap(), parse("2*u"));
        assert!(parse("x - y").substitute_monomials(&images).unwrap().is_zero());
    }

    #[test]
    fn specialize_at_zero_and_units() {
        let f = parse("x^2*y + 3*x - y");
        let zero = BigInt::zero();
        assert_eq!(f.specialize(&vn("x"), &zero).unwrap(), parse("-y"));

        let g = parse("x^-1*y + x");
        assert_eq!(
            g.specialize(&vn("x"), &zero),
            Err(PolyError::NegativeExponentAtZero(vn("x")))
        );
        let minus_one = BigInt::from(-1);
        assert_eq!(g.specialize(&vn("x"), &minus_one).unwrap(), parse("-y - 1"));
        let two = BigInt::from(2);
        assert_eq!(
            g.specialize(&vn("x"), &two),
            Err(PolyError::NonIntegralSpecialization(vn("x"), two.clone()))
        );
        // With only nonnegative exponents, any integer value is fine.
        let f_at_two = f.specialize(&vn("x"), &two).unwrap();
        assert_eq!(f_at_two, parse("3*y + 6"));
    }

    #[test]
    fn divide_exact_recovers_factor() {
        let f = parse("x^2 - y^2");
        let q = f.divide_exact(&parse("x - y")).unwrap();
        assert_eq!(q, parse("x + y"));
    }

    #[test]
    fn divide_exact_handles_laurent_shifts() {
        // (x - x^-1) / (x^-1) = x^2 - 1; also divisible by (x + 1)*x^-3.
        let f = parse("x - x^-1");
        assert_eq!(f.divide_exact(&parse("x^-1")).unwrap(), parse("x^2 - 1"));
        let g = parse("x^-3 + x^-2");
        assert_eq!(f.divide_exact(&g).unwrap(), parse("x^3 - x^2"));
    }

    #[test]
    fn divide_exact_detects_non_divisibility() {
        let f = parse("x^2 + 1");
        assert_eq!(
            f.divide_exact(&parse("x + 1")),
            Err(PolyError::NotDivisible)
        );
        // Coefficient obstruction, not monomial obstruction.
        assert_eq!(
            parse("3*x + 1").divide_exact(&parse("2")),
            Err(PolyError::NotDivisible)
        );
        assert_eq!(
            parse("x").divide_exact(&LaurentPolynomial::zero()),
            Err(PolyError::DivisionByZero)
        );
        // Zero divided by anything nonzero is zero.
        assert!(LaurentPolynomial::zero()
            .divide_exact(&parse("x + 1"))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn divide_exact_multivariate() {
        let f = parse("x + y");
        let g = parse("x^2 + 2*x*y + y^2 - 1"); // (x + y)^2 - 1 = (x+y-1)(x+y+1)
        assert_eq!(
            g.divide_exact(&parse("x + y + 1")).unwrap(),
            parse("x + y - 1")
        );
        let product = &(&f * &f) * &f;
        assert_eq!(product.divide_exact(&(&f * &f)).unwrap(), f);
    }

    #[test]
    fn coefficient_of_extracts_slices() {
        let f = parse("x^2*y + 3*x - y + 7");
        assert_eq!(f.coefficient_of(&vn("x"), 2), parse("y"));
        assert_eq!(f.coefficient_of(&vn("x"), 1), parse("3"));
        assert_eq!(f.coefficient_of(&vn("x"), 0), parse("-y + 7"));
        assert!(f.coefficient_of(&vn("x"), 5).is_zero());
    }

    #[test]
    fn display_is_canonical_and_round_trips() {
        let f = parse("1 - t");
        assert_eq!(f.to_string(), "1 - t");
        let g = parse("-L + M^4 + 2*L*M^4");
        assert_eq!(g.to_string(), "M^4 - L + 2*L*M^4");
        assert_eq!(parse(&g.to_string()), g);
        assert_eq!(LaurentPolynomial::zero().to_string(), "0");
        assert_eq!(parse("x^-2").to_string(), "x^-2");
    }
}
