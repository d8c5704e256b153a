//! Generalized numerical semigroups, represented by their finite gap sets.
//!
//! A [`Gns`] stores its gaps in lexicographic order; that list is the
//! canonical form used for equality, hashing and serialization. The minimal
//! generating set is computed on demand and cached.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::convert;
use crate::lattice::{box_iter, LatticeError, Point, RelaxedOrder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GnsError {
    #[error("0 cannot be a gap")]
    ZeroGap,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("complement is not a monoid: {gap:?} = {part:?} + {rest:?} with both summands outside the gap set")]
    NotAMonoid {
        gap: Point,
        part: Point,
        rest: Point,
    },
    #[error("{0:?} is not a minimal generator")]
    NotAMinimalGenerator(Point),
    #[error("{0:?} is not a special gap")]
    NotASpecialGap(Point),
    #[error("the semigroup has no gaps")]
    EmptyGaps,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("malformed semigroup JSON: {0}")]
    Json(String),
}

/// `F_⪯(S)`: the largest gap, or the sentinel `(−1,…,−1)` for ℕ^d.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FrobeniusValue {
    SentinelAllOfNd,
    At(Point),
}

impl FrobeniusValue {
    pub fn point(&self) -> Option<&Point> {
        match self {
            FrobeniusValue::SentinelAllOfNd => None,
            FrobeniusValue::At(p) => Some(p),
        }
    }

    /// Whether this value is strictly below `p` under `ord`. The sentinel is
    /// below every point.
    pub fn precedes(&self, ord: &RelaxedOrder, p: &Point) -> bool {
        match self {
            FrobeniusValue::SentinelAllOfNd => true,
            FrobeniusValue::At(f) => ord.lt(f, p),
        }
    }
}

impl fmt::Display for FrobeniusValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrobeniusValue::At(p) => write!(f, "{p}"),
            FrobeniusValue::SentinelAllOfNd => f.write_str("-1"),
        }
    }
}

/// A submonoid of ℕ^d with finite complement.
#[derive(Clone)]
pub struct Gns {
    dim: usize,
    gaps: Vec<Point>,
    min_gens: OnceLock<Vec<Point>>,
}

impl Gns {
    /// ℕ^d itself.
    pub fn full(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        let gens = (0..dim).rev().map(|i| Point::unit(dim, i)).collect();
        Self::with_generators(dim, Vec::new(), gens)
    }

    /// Validates `ℕ^d ∖ gaps` with the box criterion: for each gap `h` and each
    /// non-gap `x ≤ h`, `h − x` must be a gap.
    pub fn from_gaps(gaps: impl IntoIterator<Item = Point>, dim: usize) -> Result<Self, GnsError> {
        let mut gaps: Vec<Point> = gaps.into_iter().collect();
        for h in &gaps {
            if h.dim() != dim {
                return Err(GnsError::DimensionMismatch {
                    expected: dim,
                    found: h.dim(),
                });
            }
            if h.is_zero() {
                return Err(GnsError::ZeroGap);
            }
        }
        gaps.sort();
        gaps.dedup();
        if let Some((gap, part, rest)) = find_decomposed_gap(&gaps) {
            return Err(GnsError::NotAMonoid { gap, part, rest });
        }
        Ok(Self::from_sorted_gaps(dim, gaps))
    }

    /// Trusted constructor: `gaps` must be lex-sorted, duplicate-free and a
    /// valid gap set.
    pub(crate) fn from_sorted_gaps(dim: usize, gaps: Vec<Point>) -> Self {
        debug_assert!(gaps.windows(2).all(|w| w[0] < w[1]));
        Gns {
            dim,
            gaps,
            min_gens: OnceLock::new(),
        }
    }

    /// Trusted constructor with a precomputed, lex-sorted minimal generating
    /// set.
    pub(crate) fn with_generators(dim: usize, gaps: Vec<Point>, gens: Vec<Point>) -> Self {
        let s = Self::from_sorted_gaps(dim, gaps);
        let mut gens = gens;
        gens.sort();
        let _ = s.min_gens.set(gens);
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Gaps in lexicographic order.
    pub fn gaps(&self) -> &[Point] {
        &self.gaps
    }

    pub fn genus(&self) -> usize {
        self.gaps.len()
    }

    #[inline]
    pub fn is_gap(&self, x: &Point) -> bool {
        self.gaps.binary_search(x).is_ok()
    }

    pub fn contains(&self, x: &Point) -> bool {
        debug_assert_eq!(x.dim(), self.dim);
        !self.is_gap(x)
    }

    /// `𝒜(S)`, lex-sorted.
    pub fn minimal_generators(&self) -> &[Point] {
        self.min_gens.get_or_init(|| {
            let ord = RelaxedOrder::lex(self.dim);
            convert::walk_to_generators(&self.gaps, self.dim, &ord)
                .expect("validated gap set walks to its generators")
        })
    }

    pub fn is_minimal_generator(&self, v: &Point) -> bool {
        self.minimal_generators().binary_search(v).is_ok()
    }

    /// `m_⪯(S)`, the smallest nonzero element. It is always a minimal
    /// generator, so the search runs over `𝒜(S)` only.
    pub fn multiplicity(&self, ord: &RelaxedOrder) -> Point {
        ord.min(self.minimal_generators())
            .expect("a semigroup has at least one generator")
            .clone()
    }

    pub fn frobenius_element(&self, ord: &RelaxedOrder) -> FrobeniusValue {
        match ord.max(&self.gaps) {
            Some(f) => FrobeniusValue::At(f.clone()),
            None => FrobeniusValue::SentinelAllOfNd,
        }
    }

    fn is_pseudo_frobenius(&self, h: &Point) -> bool {
        self.minimal_generators()
            .iter()
            .all(|g| !self.is_gap(&(h + g)))
    }

    /// Gaps `h` with `h + s ∈ S` for every nonzero `s ∈ S`.
    pub fn pseudo_frobenius(&self) -> Result<Vec<Point>, GnsError> {
        if self.gaps.is_empty() {
            return Err(GnsError::EmptyGaps);
        }
        Ok(self
            .gaps
            .iter()
            .filter(|h| self.is_pseudo_frobenius(h))
            .cloned()
            .collect())
    }

    /// Pseudo-Frobenius gaps whose double lies in `S`; exactly the gaps whose
    /// adjunction leaves a semigroup.
    pub fn special_gaps(&self) -> Vec<Point> {
        self.gaps
            .iter()
            .filter(|h| self.is_special_gap(h))
            .cloned()
            .collect()
    }

    pub fn is_special_gap(&self, h: &Point) -> bool {
        self.is_gap(h) && !self.is_gap(&(h + h)) && self.is_pseudo_frobenius(h)
    }

    /// `U_⪯(S)`: minimal generators above the Frobenius element.
    pub fn unbounded_generators(&self, ord: &RelaxedOrder) -> Vec<Point> {
        let frob = self.frobenius_element(ord);
        self.minimal_generators()
            .iter()
            .filter(|g| frob.precedes(ord, g))
            .cloned()
            .collect()
    }

    /// The generating set `(𝒜∖{v}) ∪ {g + v} ∪ {2v, 3v}` of `S ∖ {v}`, before
    /// minimalization.
    pub fn provisional_generators(&self, v: &Point) -> Result<Vec<Point>, GnsError> {
        if !self.is_minimal_generator(v) {
            return Err(GnsError::NotAMinimalGenerator(v.clone()));
        }
        let (mut kept, candidates) = split_provisional(self.minimal_generators(), v);
        kept.extend(candidates);
        Ok(kept)
    }

    pub fn remove_minimal_generator(&self, v: &Point) -> Result<Gns, GnsError> {
        if v.dim() != self.dim {
            return Err(GnsError::DimensionMismatch {
                expected: self.dim,
                found: v.dim(),
            });
        }
        if !self.is_minimal_generator(v) {
            return Err(GnsError::NotAMinimalGenerator(v.clone()));
        }
        Ok(self.remove_generator_unchecked(v))
    }

    pub(crate) fn remove_generator_unchecked(&self, v: &Point) -> Gns {
        let gaps = insert_sorted(&self.gaps, v);
        let gens = generators_after_removal(self.minimal_generators(), v, |x| {
            gaps.binary_search(x).is_ok()
        });
        Gns::with_generators(self.dim, gaps, gens)
    }

    pub fn add_special_gap(&self, h: &Point) -> Result<Gns, GnsError> {
        if h.dim() != self.dim {
            return Err(GnsError::DimensionMismatch {
                expected: self.dim,
                found: h.dim(),
            });
        }
        if !self.is_special_gap(h) {
            return Err(GnsError::NotASpecialGap(h.clone()));
        }
        Ok(self.add_gap_unchecked(h))
    }

    pub(crate) fn add_gap_unchecked(&self, h: &Point) -> Gns {
        let gaps: Vec<Point> = self.gaps.iter().filter(|x| *x != h).cloned().collect();
        let is_gap = |x: &Point| gaps.binary_search(x).is_ok();
        // Old generators stay minimal unless they now factor through h.
        let mut gens: Vec<Point> = self
            .minimal_generators()
            .iter()
            .filter(|g| match g.checked_sub(h) {
                Some(rest) => is_gap(&rest),
                None => true,
            })
            .cloned()
            .collect();
        gens.push(h.clone());
        Gns::with_generators(self.dim, gaps, gens)
    }

    /// Whether every gap precedes every nonzero element.
    pub fn is_ordinary(&self, ord: &RelaxedOrder) -> bool {
        match self.frobenius_element(ord) {
            FrobeniusValue::SentinelAllOfNd => true,
            FrobeniusValue::At(f) => ord.lt(&f, &self.multiplicity(ord)),
        }
    }

    /// The ordinarization transform: swap the multiplicity out and the
    /// Frobenius element in. Ordinary semigroups are fixed points.
    pub fn ordinarization(&self, ord: &RelaxedOrder) -> Gns {
        let FrobeniusValue::At(frob) = self.frobenius_element(ord) else {
            return self.clone();
        };
        let mult = self.multiplicity(ord);
        if ord.lt(&frob, &mult) {
            return self.clone();
        }
        // The multiplicity is unchanged by adjoining the Frobenius element.
        self.add_gap_unchecked(&frob)
            .remove_generator_unchecked(&mult)
    }

    /// Dimension of the span of the gap set.
    pub fn rank(&self) -> usize {
        crate::lattice::rank(&self.gaps)
    }

    pub fn to_record(&self, with_generators: bool) -> GnsRecord {
        let coords = |ps: &[Point]| ps.iter().map(|p| p.coords().to_vec()).collect();
        GnsRecord {
            dim: self.dim,
            gaps: coords(&self.gaps),
            min_gens: with_generators.then(|| coords(self.minimal_generators())),
        }
    }

    /// Canonical JSON: `{"dim":d,"gaps":[[..],..]}` with lex-sorted gaps.
    pub fn to_json(&self, with_generators: bool) -> String {
        serde_json::to_string(&self.to_record(with_generators)).expect("record serializes")
    }

    pub fn from_json(text: &str) -> Result<Gns, GnsError> {
        let record: GnsRecord =
            serde_json::from_str(text).map_err(|e| GnsError::Json(e.to_string()))?;
        Gns::try_from(record)
    }
}

/// Serialized form of a [`Gns`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GnsRecord {
    pub dim: usize,
    pub gaps: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_gens: Option<Vec<Vec<usize>>>,
}

impl TryFrom<GnsRecord> for Gns {
    type Error = GnsError;

    fn try_from(record: GnsRecord) -> Result<Gns, GnsError> {
        if record.dim == 0 {
            return Err(GnsError::Json("dimension must be positive".into()));
        }
        let gaps = record
            .gaps
            .into_iter()
            .map(Point::new)
            .collect::<Result<Vec<_>, _>>()?;
        Gns::from_gaps(gaps, record.dim)
    }
}

impl PartialEq for Gns {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.gaps == other.gaps
    }
}

impl Eq for Gns {}

impl Hash for Gns {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.gaps.hash(state);
    }
}

impl PartialOrd for Gns {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by dimension, then by the lex-sorted gap list.
impl Ord for Gns {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim
            .cmp(&other.dim)
            .then_with(|| self.gaps.cmp(&other.gaps))
    }
}

impl fmt::Debug for Gns {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N^{} \\ {:?}", self.dim, self.gaps)
    }
}

/// A witness `h = x + (h − x)` with both summands outside `gaps`, if any.
/// `gaps` must be lex-sorted.
pub(crate) fn find_decomposed_gap(gaps: &[Point]) -> Option<(Point, Point, Point)> {
    let is_gap = |x: &Point| gaps.binary_search(x).is_ok();
    for h in gaps {
        for x in box_iter(h) {
            if x.is_zero() || is_gap(&x) {
                continue;
            }
            let rest = h.checked_sub(&x).expect("x lies in B(h)");
            if !is_gap(&rest) {
                return Some((h.clone(), x, rest));
            }
        }
    }
    None
}

fn insert_sorted(sorted: &[Point], p: &Point) -> Vec<Point> {
    let mut out = Vec::with_capacity(sorted.len() + 1);
    let idx = sorted.partition_point(|x| x < p);
    out.extend_from_slice(&sorted[..idx]);
    out.push(p.clone());
    out.extend_from_slice(&sorted[idx..]);
    out
}

/// Splits the provisional generators of `S ∖ {v}` into the surviving old
/// generators and the new candidates `{g + v} ∪ {2v, 3v}`.
fn split_provisional(gens: &[Point], v: &Point) -> (Vec<Point>, Vec<Point>) {
    let kept: Vec<Point> = gens.iter().filter(|g| *g != v).cloned().collect();
    let two_v = v + v;
    let three_v = &two_v + v;
    let mut candidates: Vec<Point> = kept.iter().map(|g| g + v).collect();
    candidates.push(two_v);
    candidates.push(three_v);
    (kept, candidates)
}

/// Minimal generators of `S ∖ {v}` from `𝒜(S)` and the gap test of
/// `S ∖ {v}`. Old generators other than `v` remain minimal; a candidate `c`
/// is dropped when `c − p` is a nonzero element for some other provisional
/// generator `p`.
pub(crate) fn generators_after_removal(
    gens: &[Point],
    v: &Point,
    is_gap: impl Fn(&Point) -> bool,
) -> Vec<Point> {
    let (mut kept, candidates) = split_provisional(gens, v);
    let survivors: Vec<Point> = candidates
        .iter()
        .filter(|c| {
            !kept.iter().chain(candidates.iter()).any(|p| {
                p != *c
                    && match c.checked_sub(p) {
                        Some(rest) => !is_gap(&rest),
                        None => false,
                    }
            })
        })
        .cloned()
        .collect();
    kept.extend(survivors);
    kept.sort();
    kept.dedup();
    kept
}
