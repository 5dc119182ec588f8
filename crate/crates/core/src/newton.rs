//! Newton polygons of two-variable Laurent polynomials, their edges, and
//! edge polynomials.
//!
//! The support of `f` in variables `(h, v)` is the set of lattice points
//! `(i, j)` such that the coefficient of `h^i v^j` is nonzero. Its convex
//! hull is the Newton polygon. Each edge `e` has a slope (vertical rise per
//! horizontal run) and carries a one-variable polynomial `f_e(t)` built from
//! the coefficients along the edge; the roots of `f_e` govern how solutions
//! of `f = 0` degenerate along curves whose exponents follow that slope.
//!
//! Two constructions of `f_e` are provided. [`edge_polynomial_direct`] reads
//! the coefficients off the edge's lattice points. The canonical
//! [`edge_polynomial_substitution`] changes basis by a unimodular monomial
//! substitution that makes the edge horizontal and then takes the bottom
//! slice; the two agree up to reversing `t` and a global sign.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::poly::{vn, LaurentPolynomial, Monomial, PolyError, VarName};

/// Errors from polygon construction and edge-polynomial extraction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NewtonError {
    /// The zero polynomial has no Newton polygon.
    #[error("the zero polynomial has no Newton polygon")]
    ZeroPolynomial,
    /// The polynomial mentions a variable other than the two axes.
    #[error("variable `{0}` is not one of the polygon axes")]
    ExtraneousVariable(VarName),
    /// The two axis variables must differ.
    #[error("horizontal and vertical axes must be distinct variables")]
    DuplicateVariable,
    /// A single support point spans no edges.
    #[error("the Newton polygon is a single point and has no edges")]
    DegeneratePolygon,
    /// Basis directions must be coprime and not both zero.
    #[error("({p}, {q}) is not a primitive direction")]
    NotCoprime { p: i64, q: i64 },
    /// The basis change does not travel along the given edge.
    #[error("basis change direction does not match the edge slope")]
    SlopeMismatch,
    /// The four basis-change entries fail the determinant condition.
    #[error("basis change matrix is not unimodular")]
    NotUnimodular,
    /// The given segment is not an edge of the polynomial's Newton polygon.
    #[error("segment is not an edge of the Newton polygon")]
    NotAnEdge,
    /// Edge polynomials live in the single variable `t`.
    #[error("not a polynomial in `t` alone: contains `{0}`")]
    NotInT(VarName),
    /// The zero polynomial is divisible by everything, so divisibility
    /// questions about it are meaningless.
    #[error("the zero polynomial is not a valid edge polynomial")]
    ZeroEdgePolynomial,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A point of the exponent lattice: `i` along the horizontal axis,
/// `j` along the vertical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint {
    pub i: i64,
    pub j: i64,
}

impl LatticePoint {
    pub fn new(i: i64, j: i64) -> Self {
        LatticePoint { i, j }
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// Cross product of `a - o` and `b - o`; positive exactly when the turn
/// `o -> a -> b` is counterclockwise. Widened to avoid overflow.
fn cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i128 {
    let (ax, ay) = ((a.i - o.i) as i128, (a.j - o.j) as i128);
    let (bx, by) = ((b.i - o.i) as i128, (b.j - o.j) as i128);
    ax * by - ay * bx
}

/// Slope of a polygon edge: change in the vertical exponent per unit change
/// in the horizontal exponent, in lowest terms with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slope {
    Vertical,
    Finite { num: i64, den: i64 },
}

impl Slope {
    fn from_direction(di: i64, dj: i64) -> Self {
        if di == 0 {
            Slope::Vertical
        } else {
            let g = gcd(di.unsigned_abs(), dj.unsigned_abs()) as i64;
            let (mut den, mut num) = (di / g, dj / g);
            if den < 0 {
                den = -den;
                num = -num;
            }
            Slope::Finite { num, den }
        }
    }

    /// The primitive pair `(p, q)` with `p/q = slope`, i.e. the canonical
    /// input to [`basis_change_for_slope`]: `(num, den)` for a finite slope
    /// and `(1, 0)` for a vertical edge.
    pub fn direction_pair(&self) -> (i64, i64) {
        match *self {
            Slope::Vertical => (1, 0),
            Slope::Finite { num, den } => (num, den),
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Vertical => f.write_str("vertical"),
            Slope::Finite { num, den } => write!(f, "{num}/{den}"),
        }
    }
}

impl FromStr for Slope {
    type Err = String;

    /// Accepts `vertical`, an integer like `-3`, or a fraction like `4/1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("vertical") {
            return Ok(Slope::Vertical);
        }
        let (num_text, den_text) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num: i64 = num_text
            .trim()
            .parse()
            .map_err(|_| format!("invalid slope numerator `{num_text}`"))?;
        let den: i64 = den_text
            .trim()
            .parse()
            .map_err(|_| format!("invalid slope denominator `{den_text}`"))?;
        if den == 0 {
            return Err("slope denominator must be nonzero (use `vertical`)".into());
        }
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i64;
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        Ok(Slope::Finite { num, den })
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// One edge of a Newton polygon, directed along the counterclockwise
/// boundary walk. `direction` is the primitive step, so the edge's lattice
/// points are `from + s * direction` for `s = 0, ..., len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    from: LatticePoint,
    to: LatticePoint,
    direction: (i64, i64),
    slope: Slope,
    vars: (VarName, VarName),
}

impl Edge {
    /// Builds the directed segment from `from` to `to` over the given axis
    /// variables. The endpoints must be distinct; whether the segment is an
    /// actual polygon edge of a given polynomial is checked by the
    /// edge-polynomial constructors.
    pub fn new(
        from: LatticePoint,
        to: LatticePoint,
        horizontal: VarName,
        vertical: VarName,
    ) -> Result<Self, NewtonError> {
        if from == to {
            return Err(NewtonError::NotAnEdge);
        }
        if horizontal == vertical {
            return Err(NewtonError::DuplicateVariable);
        }
        let (di, dj) = (to.i - from.i, to.j - from.j);
        let g = gcd(di.unsigned_abs(), dj.unsigned_abs()) as i64;
        Ok(Edge {
            from,
            to,
            direction: (di / g, dj / g),
            slope: Slope::from_direction(di, dj),
            vars: (horizontal, vertical),
        })
    }

    pub fn from(&self) -> LatticePoint {
        self.from
    }

    pub fn to(&self) -> LatticePoint {
        self.to
    }

    /// The primitive lattice step from `from` towards `to`.
    pub fn direction(&self) -> (i64, i64) {
        self.direction
    }

    pub fn slope(&self) -> Slope {
        self.slope
    }

    /// `(horizontal, vertical)` axis variables of the ambient polygon.
    pub fn vars(&self) -> (&VarName, &VarName) {
        (&self.vars.0, &self.vars.1)
    }

    /// Number of primitive steps from one endpoint to the other, i.e. one
    /// less than the number of lattice points on the edge.
    pub fn lattice_length(&self) -> i64 {
        let (di, dj) = (self.to.i - self.from.i, self.to.j - self.from.j);
        gcd(di.unsigned_abs(), dj.unsigned_abs()) as i64
    }

    /// True when `other` covers the same segment, regardless of direction.
    fn same_segment(&self, other: &Edge) -> bool {
        (self.from == other.from && self.to == other.to)
            || (self.from == other.to && self.to == other.from)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} (slope {})", self.from, self.to, self.slope)
    }
}

/// The convex hull of a polynomial's support, with vertices in
/// counterclockwise order starting from the lexicographically smallest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    vertices: Vec<LatticePoint>,
    vars: (VarName, VarName),
}

/// Computes the Newton polygon of `f` with `horizontal` exponents on the
/// first axis and `vertical` exponents on the second. `f` must be nonzero
/// and involve no variables besides these two (it may involve fewer).
pub fn newton_polygon(
    f: &LaurentPolynomial,
    horizontal: &VarName,
    vertical: &VarName,
) -> Result<NewtonPolygon, NewtonError> {
    if horizontal == vertical {
        return Err(NewtonError::DuplicateVariable);
    }
    if f.is_zero() {
        return Err(NewtonError::ZeroPolynomial);
    }
    for v in f.vars() {
        if v != *horizontal && v != *vertical {
            return Err(NewtonError::ExtraneousVariable(v));
        }
    }
    let mut points: Vec<LatticePoint> = f
        .terms()
        .map(|(m, _)| LatticePoint::new(m.exponent(horizontal), m.exponent(vertical)))
        .collect();
    points.sort();
    points.dedup();
    Ok(NewtonPolygon {
        vertices: convex_hull(points),
        vars: (horizontal.clone(), vertical.clone()),
    })
}

/// Andrew's monotone chain on sorted, deduplicated points. Collinear interior
/// points are discarded (turns must be strictly counterclockwise), so every
/// returned point is a corner. Output order is counterclockwise from the
/// smallest point; a single point or a segment comes back as-is.
fn convex_hull(points: Vec<LatticePoint>) -> Vec<LatticePoint> {
    debug_assert!(points.windows(2).all(|w| w[0] < w[1]), "sorted unique input");
    if points.len() <= 2 {
        return points;
    }
    let mut hull: Vec<LatticePoint> = Vec::with_capacity(points.len() + 1);
    // Lower hull, left to right.
    for &p in &points {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    // Upper hull, right to left; `floor` keeps the lower hull intact.
    let floor = hull.len() + 1;
    for &p in points.iter().rev().skip(1) {
        while hull.len() >= floor && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop(); // first point repeated at the end of the walk
    hull
}

impl NewtonPolygon {
    /// Corner points, counterclockwise from the lexicographically smallest.
    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// `(horizontal, vertical)` axis variables.
    pub fn vars(&self) -> (&VarName, &VarName) {
        (&self.vars.0, &self.vars.1)
    }

    /// The boundary edges in counterclockwise order. A two-vertex polygon
    /// (all support on one line) yields the segment once in each direction —
    /// it bounds the hull on both sides. A single vertex has no edges.
    pub fn edges(&self) -> Result<Vec<Edge>, NewtonError> {
        if self.vertices.len() < 2 {
            return Err(NewtonError::DegeneratePolygon);
        }
        let n = self.vertices.len();
        (0..n)
            .map(|k| {
                Edge::new(
                    self.vertices[k],
                    self.vertices[(k + 1) % n],
                    self.vars.0.clone(),
                    self.vars.1.clone(),
                )
            })
            .collect()
    }

    /// The edges whose slope equals `slope` (zero, one, or two of them).
    pub fn edges_with_slope(&self, slope: Slope) -> Result<Vec<Edge>, NewtonError> {
        Ok(self
            .edges()?
            .into_iter()
            .filter(|e| e.slope() == slope)
            .collect())
    }
}

/// A unimodular change of basis adapted to a slope: the pair `(p, q)` points
/// along the edge and `(a, b)` completes it to a determinant-one matrix,
/// `p*b - q*a = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisChange {
    pub p: i64,
    pub q: i64,
    pub a: i64,
    pub b: i64,
}

/// Completes the primitive direction `(p, q)` to a unimodular basis change,
/// choosing the canonical complement with `0 <= a < |p|` (and `(a, b) =
/// (-q, 0)` in the degenerate case `p = 0`).
pub fn basis_change_for_slope(p: i64, q: i64) -> Result<BasisChange, NewtonError> {
    if (p == 0 && q == 0) || gcd(p.unsigned_abs(), q.unsigned_abs()) != 1 {
        return Err(NewtonError::NotCoprime { p, q });
    }
    if p == 0 {
        // q = +-1; the complement (-q, 0) gives p*b - q*a = q^2 = 1.
        return Ok(BasisChange { p, q, a: -q, b: 0 });
    }
    // Extended Euclid: x*p + y*q = 1, so (a, b) = (-y, x) satisfies
    // p*b - q*a = 1. Then slide (a, b) by multiples of (p, q) — which
    // preserves the determinant — until 0 <= a < |p|.
    let (x, y) = extended_gcd(p, q);
    let (a, b) = (-y, x);
    let a_canon = a.rem_euclid(p.abs());
    let k = (a_canon - a) / p;
    Ok(BasisChange {
        p,
        q,
        a: a_canon,
        b: b + k * q,
    })
}

/// Bezout coefficients `(x, y)` with `x*a + y*b = gcd(|a|, |b|)`.
fn extended_gcd(a: i64, b: i64) -> (i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i64, 0i64);
    let (mut y0, mut y1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    if r0 < 0 {
        (-x0, -y0)
    } else {
        (x0, y0)
    }
}

/// The polynomial attached to a polygon edge: one variable `t`, nonzero
/// constant term, integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgePolynomial {
    poly: LaurentPolynomial,
}

impl EdgePolynomial {
    /// Wraps a hand-built polynomial for the divisibility checks. Accepts
    /// any nonzero Laurent polynomial in `t` alone (a constant counts);
    /// anything else is rejected rather than silently misread.
    pub fn new(poly: LaurentPolynomial) -> Result<Self, NewtonError> {
        if poly.is_zero() {
            return Err(NewtonError::ZeroEdgePolynomial);
        }
        if let Some(foreign) = poly.vars().into_iter().find(|v| *v != Self::var()) {
            return Err(NewtonError::NotInT(foreign));
        }
        Ok(EdgePolynomial { poly })
    }

    pub fn poly(&self) -> &LaurentPolynomial {
        &self.poly
    }

    /// The variable every edge polynomial is written in.
    pub fn var() -> VarName {
        vn("t")
    }

    pub fn degree(&self) -> i64 {
        self.poly
            .max_exponent(&Self::var())
            .expect("edge polynomials are nonzero")
    }
}

impl fmt::Display for EdgePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// Checks that `edge` really is an edge of `f`'s Newton polygon (as an
/// undirected segment) and returns the polygon.
fn validate_edge(f: &LaurentPolynomial, edge: &Edge) -> Result<NewtonPolygon, NewtonError> {
    let polygon = newton_polygon(f, &edge.vars.0, &edge.vars.1)?;
    if polygon.vertices.len() < 2 {
        return Err(NewtonError::DegeneratePolygon);
    }
    if polygon.edges()?.iter().any(|e| e.same_segment(edge)) {
        Ok(polygon)
    } else {
        Err(NewtonError::NotAnEdge)
    }
}

/// The canonical edge polynomial, by unimodular substitution.
///
/// Writing `(h, v)` for the axis variables, the substitution sends
/// `h -> Y^p * Z^-a` and `v -> Y^-q * Z^b`, so the term `h^i v^j` lands on
/// `Y^(p*i - q*j) * Z^(-a*i + b*j)`. Since `(p, q)` points along `edge`, the
/// `Y`-exponent is constant exactly on lines of the edge's slope, and the
/// edge's lattice points sweep out consecutive `Z`-exponents (that is what
/// `p*b - q*a = 1` buys). After normalizing, the `Y^0` slice therefore picks
/// out the edge coefficients, and re-reading it in `t` with the low end
/// shifted to `t^0` gives `f_e`.
///
/// The `Y`-degree-zero slice is the *minimum* of `p*i - q*j` over the
/// support, so when the given edge sits on the maximal face instead, the
/// whole basis is negated — same edge, opposite co-orientation — before
/// substituting.
pub fn edge_polynomial_substitution(
    f: &LaurentPolynomial,
    edge: &Edge,
    basis: &BasisChange,
) -> Result<EdgePolynomial, NewtonError> {
    let (ep, eq) = edge.slope.direction_pair();
    if (basis.p, basis.q) != (ep, eq) && (basis.p, basis.q) != (-ep, -eq) {
        return Err(NewtonError::SlopeMismatch);
    }
    let det = basis.p as i128 * basis.b as i128 - basis.q as i128 * basis.a as i128;
    if det != 1 {
        return Err(NewtonError::NotUnimodular);
    }
    validate_edge(f, edge)?;

    let (hvar, vvar) = (&edge.vars.0, &edge.vars.1);
    let weight = |pt: LatticePoint| basis.p as i128 * pt.i as i128 - basis.q as i128 * pt.j as i128;
    let support_min = f
        .terms()
        .map(|(m, _)| weight(LatticePoint::new(m.exponent(hvar), m.exponent(vvar))))
        .min()
        .expect("nonzero polynomial");
    // A hull edge parallel to (p, q) lies on the minimal or the maximal
    // weight face; flipping the whole basis swaps the two and keeps the
    // determinant.
    let BasisChange { p, q, a, b } = if weight(edge.from) == support_min {
        *basis
    } else {
        BasisChange {
            p: -basis.p,
            q: -basis.q,
            a: -basis.a,
            b: -basis.b,
        }
    };

    // Fresh working variables. Their relative alphabetical order fixes the
    // sign that `normalize` picks, so keep the Y-role name below the Z-role
    // name no matter which fallback pair is chosen.
    let taken = f.vars();
    let (yv, zv) = std::iter::once(("Y".to_string(), "Z".to_string()))
        .chain((0..).map(|k| (format!("Y{k}"), format!("Z{k}"))))
        .map(|(y, z)| (vn(&y), vn(&z)))
        .find(|(y, z)| !taken.contains(y) && !taken.contains(z))
        .expect("some fresh pair is free");

    let images = std::collections::BTreeMap::from([
        (
            hvar.clone(),
            Monomial::from_exponents([(yv.clone(), p), (zv.clone(), -a)]),
        ),
        (
            vvar.clone(),
            Monomial::from_exponents([(yv.clone(), -q), (zv.clone(), b)]),
        ),
    ]);
    let transformed = f.substitute_monomials(&images)?.normalize()?;

    let slice = transformed.coefficient_of(&yv, 0);
    debug_assert!(!slice.is_zero(), "minimal face is nonempty after normalize");
    let t = EdgePolynomial::var();
    let in_t = slice.substitute_monomials(&std::collections::BTreeMap::from([(
        zv.clone(),
        Monomial::var(t.clone()),
    )]))?;
    let low = in_t.min_exponent(&t).expect("nonzero slice");
    Ok(EdgePolynomial {
        poly: in_t.mul_monomial(&Monomial::from_exponents([(t, -low)])),
    })
}

/// The edge polynomial read straight off the lattice: coefficient `s` of
/// `f_e` is the coefficient of `f` at the `s`-th lattice point of the edge,
/// walking from `edge.from()` to `edge.to()` in primitive steps.
pub fn edge_polynomial_direct(
    f: &LaurentPolynomial,
    edge: &Edge,
) -> Result<EdgePolynomial, NewtonError> {
    validate_edge(f, edge)?;
    let (hvar, vvar) = (edge.vars.0.clone(), edge.vars.1.clone());
    let t = EdgePolynomial::var();
    let mut terms = Vec::new();
    for s in 0..=edge.lattice_length() {
        let point = LatticePoint::new(
            edge.from.i + s * edge.direction.0,
            edge.from.j + s * edge.direction.1,
        );
        let monomial =
            Monomial::from_exponents([(hvar.clone(), point.i), (vvar.clone(), point.j)]);
        let coeff = f.coeff(&monomial);
        if !coeff.is_zero() {
            terms.push((Monomial::from_exponents([(t.clone(), s)]), coeff));
        }
    }
    Ok(EdgePolynomial {
        poly: LaurentPolynomial::from_terms(terms),
    })
}

/// The largest `k` such that `(1 - t^n)^k` divides the edge polynomial;
/// positive exactly when every `n`-th root of unity is a root of `f_e`.
/// `n` must be positive.
pub fn unity_divisibility(f_e: &EdgePolynomial, n: u32) -> u32 {
    assert!(n >= 1, "root-of-unity order must be positive");
    let t = EdgePolynomial::var();
    let divisor = &LaurentPolynomial::one()
        - &LaurentPolynomial::from_monomial(
            BigInt::from(1),
            Monomial::from_exponents([(t, n as i64)]),
        );
    let mut multiplicity = 0;
    let mut current = f_e.poly.clone();
    while let Ok(quotient) = current.divide_exact(&divisor) {
        multiplicity += 1;
        current = quotient;
    }
    multiplicity
}
