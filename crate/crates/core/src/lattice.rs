//! Points of ℕ^d, boxes under the componentwise order, and relaxed monomial
//! orders.
//!
//! A relaxed monomial order is a total order on ℕ^d in which `0` is the
//! minimum and `v ⪯ w` implies `v ⪯ w + u` for every `u`. Every order here is
//! a runtime value, so order-dependent operations take a [`RelaxedOrder`]
//! argument rather than a type parameter.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use smallvec::SmallVec;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("points must have at least one coordinate")]
    EmptyPoint,
    #[error("invalid coordinate {0:?}")]
    BadCoordinate(String),
    #[error("coordinate overflow")]
    Overflow,
    #[error("order {0} has no effective initial-segment enumeration in dimension {1}")]
    UnsupportedOrder(OrderKind, usize),
    #[error("unknown order name {0:?} (expected lex, grlex or minlex)")]
    UnknownOrder(String),
}

type Coords = SmallVec<[usize; 4]>;

/// An element of ℕ^d.
///
/// The derived `Ord` is the lexicographic order on coordinates, which is also
/// the canonical order used for storing gap sets.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(Coords);

impl Point {
    pub fn new(coords: impl IntoIterator<Item = usize>) -> Result<Self, LatticeError> {
        let coords: Coords = coords.into_iter().collect();
        if coords.is_empty() {
            return Err(LatticeError::EmptyPoint);
        }
        Ok(Point(coords))
    }

    pub fn zero(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        Point(SmallVec::from_elem(0, dim))
    }

    /// The standard basis vector `e_axis` (zero-based axis).
    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut p = Self::zero(dim);
        p.0[axis] = 1;
        p
    }

    /// `value · e_axis`.
    pub fn on_axis(dim: usize, axis: usize, value: usize) -> Self {
        let mut p = Self::zero(dim);
        p.0[axis] = value;
        p
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn min_coord(&self) -> usize {
        self.0.iter().copied().min().unwrap_or(0)
    }

    /// Componentwise `self ≤ other`.
    pub fn leq(&self, other: &Point) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_add(&self, other: &Point) -> Result<Point, LatticeError> {
        self.check_dim(other)?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Coords>>()
            .map(Point)
            .ok_or(LatticeError::Overflow)
    }

    /// `self − other` when `other ≤ self`, otherwise `None`.
    pub fn checked_sub(&self, other: &Point) -> Option<Point> {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Coords>>()
            .map(Point)
    }

    pub fn checked_scale(&self, k: usize) -> Result<Point, LatticeError> {
        self.0
            .iter()
            .map(|c| c.checked_mul(k))
            .collect::<Option<Coords>>()
            .map(Point)
            .ok_or(LatticeError::Overflow)
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &Point) -> Point {
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn check_dim(&self, other: &Point) -> Result<(), LatticeError> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(LatticeError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            })
        }
    }
}

impl Add for &Point {
    type Output = Point;

    /// Componentwise sum; panics on coordinate overflow.
    fn add(self, other: &Point) -> Point {
        debug_assert_eq!(self.dim(), other.dim());
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("coordinate overflow"))
                .collect(),
        )
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Point {
    type Err = LatticeError;

    /// Parses `1,0` style text; surrounding whitespace and parentheses are
    /// tolerated.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        Point::new(
            s.split(',')
                .map(|c| {
                    c.trim()
                        .parse::<usize>()
                        .map_err(|_| LatticeError::BadCoordinate(c.trim().to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?,
        )
    }
}

/// Parses a semicolon-separated point list such as `2,0;3,0;1,1`, checking
/// every point has dimension `dim`. Blank input is the empty list.
pub fn parse_point_list(s: &str, dim: usize) -> Result<Vec<Point>, LatticeError> {
    s.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let p: Point = t.parse()?;
            if p.dim() != dim {
                return Err(LatticeError::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
            Ok(p)
        })
        .collect()
}

pub fn format_point_list(points: &[Point]) -> String {
    points
        .iter()
        .map(Point::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

/// Iterator over `B(x) = {n ∈ ℕ^d : n ≤ x}` in lexicographic order.
pub struct BoxIter {
    upper: Point,
    next: Option<Point>,
}

impl Iterator for BoxIter {
    type Item = Point;

    fn next(&mut self) -> Option<Point> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut axis = succ.dim();
        loop {
            if axis == 0 {
                break;
            }
            axis -= 1;
            if succ.0[axis] < self.upper.0[axis] {
                succ.0[axis] += 1;
                self.next = Some(succ);
                break;
            }
            succ.0[axis] = 0;
        }
        Some(current)
    }
}

/// The box `B(x)`, lazily, in lexicographic order.
pub fn box_iter(x: &Point) -> BoxIter {
    BoxIter {
        upper: x.clone(),
        next: Some(Point::zero(x.dim())),
    }
}

pub fn box_points(x: &Point) -> Vec<Point> {
    box_iter(x).collect()
}

/// `Π (x_i + 1)`, or `None` on overflow.
pub fn box_cardinality(x: &Point) -> Option<usize> {
    x.coords()
        .iter()
        .try_fold(1usize, |acc, &c| acc.checked_mul(c.checked_add(1)?))
}

/// The monomial order used inside a min-then-monomial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GradedLex,
}

impl MonomialOrder {
    fn cmp(self, u: &Point, v: &Point) -> Ordering {
        match self {
            MonomialOrder::Lex => u.coords().cmp(v.coords()),
            MonomialOrder::GradedLex => u
                .degree()
                .cmp(&v.degree())
                .then_with(|| u.coords().cmp(v.coords())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    /// `u ≺ v` iff the first nonzero coordinate of `v − u` is positive.
    Lex,
    /// Total degree first, ties broken by `Lex`.
    GradedLex,
    /// Smallest coordinate first, ties broken by a monomial order. Relaxed
    /// but not monomial.
    MinThenMonomial(MonomialOrder),
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderKind::Lex => f.write_str("lex"),
            OrderKind::GradedLex => f.write_str("grlex"),
            OrderKind::MinThenMonomial(MonomialOrder::Lex) => f.write_str("minlex"),
            OrderKind::MinThenMonomial(MonomialOrder::GradedLex) => f.write_str("mingrlex"),
        }
    }
}

impl FromStr for OrderKind {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "lex" => Ok(OrderKind::Lex),
            "grlex" => Ok(OrderKind::GradedLex),
            "minlex" => Ok(OrderKind::MinThenMonomial(MonomialOrder::Lex)),
            "mingrlex" => Ok(OrderKind::MinThenMonomial(MonomialOrder::GradedLex)),
            other => Err(LatticeError::UnknownOrder(other.to_string())),
        }
    }
}

/// A relaxed monomial order on ℕ^d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RelaxedOrder {
    kind: OrderKind,
    dim: usize,
}

impl RelaxedOrder {
    pub fn new(kind: OrderKind, dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        RelaxedOrder { kind, dim }
    }

    pub fn lex(dim: usize) -> Self {
        Self::new(OrderKind::Lex, dim)
    }

    pub fn graded_lex(dim: usize) -> Self {
        Self::new(OrderKind::GradedLex, dim)
    }

    pub fn min_lex(dim: usize) -> Self {
        Self::new(OrderKind::MinThenMonomial(MonomialOrder::Lex), dim)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn compare(&self, u: &Point, v: &Point) -> Result<Ordering, LatticeError> {
        for p in [u, v] {
            if p.dim() != self.dim {
                return Err(LatticeError::DimensionMismatch {
                    expected: self.dim,
                    found: p.dim(),
                });
            }
        }
        Ok(self.cmp(u, v))
    }

    /// Unchecked comparison for hot paths; both points must have the order's
    /// dimension.
    #[inline]
    pub fn cmp(&self, u: &Point, v: &Point) -> Ordering {
        debug_assert!(u.dim() == self.dim && v.dim() == self.dim);
        match self.kind {
            OrderKind::Lex => u.coords().cmp(v.coords()),
            OrderKind::GradedLex => MonomialOrder::GradedLex.cmp(u, v),
            OrderKind::MinThenMonomial(inner) => u
                .min_coord()
                .cmp(&v.min_coord())
                .then_with(|| inner.cmp(u, v)),
        }
    }

    #[inline]
    pub fn lt(&self, u: &Point, v: &Point) -> bool {
        self.cmp(u, v) == Ordering::Less
    }

    pub fn max<'a>(&self, points: impl IntoIterator<Item = &'a Point>) -> Option<&'a Point> {
        points.into_iter().max_by(|a, b| self.cmp(a, b))
    }

    pub fn min<'a>(&self, points: impl IntoIterator<Item = &'a Point>) -> Option<&'a Point> {
        points.into_iter().min_by(|a, b| self.cmp(a, b))
    }

    pub fn sort(&self, points: &mut [Point]) {
        points.sort_by(|a, b| self.cmp(a, b));
    }

    /// Whether `{t : t ⪯ p}` is finite.
    pub fn has_finite_down_set(&self, p: &Point) -> bool {
        match self.kind {
            _ if self.dim == 1 => true,
            // Every point with a nonzero coordinate before the last one sits
            // above all of (0,…,0,j).
            OrderKind::Lex => p.coords()[..self.dim - 1].iter().all(|&c| c == 0),
            OrderKind::GradedLex => true,
            OrderKind::MinThenMonomial(_) => false,
        }
    }

    /// The `k` smallest points `s_0 = 0 ≺ s_1 ≺ … ≺ s_{k−1}`.
    pub fn initial_segment(&self, k: usize) -> Result<Vec<Point>, LatticeError> {
        let d = self.dim;
        let segment: Vec<Point> = match self.kind {
            _ if d == 1 => (0..k).map(|j| Point::on_axis(1, 0, j)).collect(),
            OrderKind::Lex => (0..k).map(|j| Point::on_axis(d, d - 1, j)).collect(),
            OrderKind::GradedLex => {
                let mut out = Vec::with_capacity(k);
                let mut degree = 0;
                while out.len() < k {
                    let mut layer = points_of_degree(d, degree);
                    layer.sort();
                    out.extend(layer.into_iter().take(k - out.len()));
                    degree += 1;
                }
                out
            }
            OrderKind::MinThenMonomial(_) => {
                return Err(LatticeError::UnsupportedOrder(self.kind, d));
            }
        };
        for p in &segment {
            assert!(
                self.has_finite_down_set(p),
                "initial segment point {p:?} has an infinite down-set under {}",
                self.kind
            );
        }
        Ok(segment)
    }
}

/// All points of ℕ^d with coordinate sum `degree`.
fn points_of_degree(dim: usize, degree: usize) -> Vec<Point> {
    fn rec(dim: usize, remaining: usize, prefix: &mut Vec<usize>, out: &mut Vec<Point>) {
        if prefix.len() + 1 == dim {
            prefix.push(remaining);
            out.push(Point(prefix.iter().copied().collect()));
            prefix.pop();
            return;
        }
        for c in 0..=remaining {
            prefix.push(c);
            rec(dim, remaining - c, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, degree, &mut Vec::with_capacity(dim), &mut out);
    out
}

/// Dimension of the ℚ-span of `points`, by fraction-free elimination.
pub fn rank(points: &[Point]) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let cols = first.dim();
    let mut rows: Vec<Vec<i128>> = points
        .iter()
        .map(|p| p.coords().iter().map(|&c| c as i128).collect())
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in rank + 1..rows.len() {
            if rows[r][col] == 0 {
                continue;
            }
            let (a, b) = (rows[rank][col], rows[r][col]);
            let g = gcd_i128(a, b);
            let (fa, fb) = (a / g, b / g);
            let pivot_row = rows[rank].clone();
            for (x, p) in rows[r][col..].iter_mut().zip(&pivot_row[col..]) {
                *x = *x * fa - p * fb;
            }
            let row_gcd = rows[r].iter().fold(0, |acc, &x| gcd_i128(acc, x));
            if row_gcd > 1 {
                rows[r].iter_mut().for_each(|x| *x /= row_gcd);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
