//! Conversions between gap sets and generating sets.
//!
//! [`gaps_to_generators`] walks the unique genus-tree branch from ℕ^d down to
//! `ℕ^d ∖ H`, removing one gap at a time in increasing order. The reverse
//! direction, [`generators_to_gaps`], bounds the gaps by a box `B(v)` built
//! from the axis numerical semigroups and sieves that box.

use thiserror::Error;

use crate::gns::generators_after_removal;
use crate::lattice::{box_cardinality, LatticeError, Point, RelaxedOrder};
use crate::numsgp::{NumericalError, NumericalSemigroup};

/// Upper limit on the number of box points a sieve may allocate.
pub const MAX_SIEVE_POINTS: usize = 1 << 28;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConvertError {
    #[error("not a gap set: {0:?} is not a minimal generator when it is removed")]
    NotAGns(Point),
    #[error("0 cannot be a gap")]
    ZeroGap,
    #[error("the generators on axis {0} do not span a numerical semigroup")]
    AxisNotNumerical(usize),
    #[error("no generator of the form e_{0} + n·e_{1}")]
    MissingMixedGenerator(usize, usize),
    #[error("generator set is empty")]
    EmptyGenerators,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("bounding box {0:?} is too large to sieve")]
    BoxTooLarge(Point),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

fn check_dims(points: &[Point], dim: usize) -> Result<(), ConvertError> {
    match points.iter().find(|p| p.dim() != dim) {
        Some(p) => Err(ConvertError::DimensionMismatch {
            expected: dim,
            found: p.dim(),
        }),
        None => Ok(()),
    }
}

/// Minimal generators of `ℕ^d ∖ H`, or `NotAGns(h)` naming the first gap
/// (in `ord` order) that is not a minimal generator when its turn comes.
pub fn gaps_to_generators(
    gaps: &[Point],
    dim: usize,
    ord: &RelaxedOrder,
) -> Result<Vec<Point>, ConvertError> {
    check_dims(gaps, dim)?;
    if gaps.iter().any(Point::is_zero) {
        return Err(ConvertError::ZeroGap);
    }
    let mut gaps = gaps.to_vec();
    gaps.sort();
    gaps.dedup();
    walk_to_generators(&gaps, dim, ord)
}

/// The branch walk itself; `gaps` need not be sorted.
pub(crate) fn walk_to_generators(
    gaps: &[Point],
    dim: usize,
    ord: &RelaxedOrder,
) -> Result<Vec<Point>, ConvertError> {
    let mut ordered = gaps.to_vec();
    ord.sort(&mut ordered);

    let mut removed: Vec<Point> = Vec::with_capacity(ordered.len());
    let mut gens: Vec<Point> = (0..dim).map(|i| Point::unit(dim, i)).collect();
    gens.sort();
    for h in ordered {
        if gens.binary_search(&h).is_err() {
            return Err(ConvertError::NotAGns(h));
        }
        let at = removed.partition_point(|x| x < &h);
        removed.insert(at, h.clone());
        gens = generators_after_removal(&gens, &h, |x| removed.binary_search(x).is_ok());
    }
    Ok(gens)
}

/// The gap bound `v` with `v_j = Σ_{i≠j} F_i·n_i(j) + F_j`, where `F_i` is the
/// clamped Frobenius number of axis `i` and `n_i(k)` the smallest `n` with
/// `e_i + n·e_k` among the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundVector {
    pub v: Point,
    pub axis_frobenius: Vec<usize>,
    /// `mixed_exponents[i][k]` is `n_i(k)`; the diagonal is zero.
    pub mixed_exponents: Vec<Vec<usize>>,
}

/// Result of [`generators_to_gaps`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedGaps {
    pub gaps: Vec<Point>,
    pub bound: BoundVector,
}

fn axis_semigroups(gens: &[Point], dim: usize) -> Result<Vec<NumericalSemigroup>, ConvertError> {
    (0..dim)
        .map(|j| {
            let on_axis: Vec<usize> = gens
                .iter()
                .filter(|a| {
                    a.coords()
                        .iter()
                        .enumerate()
                        .all(|(i, &c)| i == j || c == 0)
                })
                .map(|a| a.coords()[j])
                .filter(|&c| c > 0)
                .collect();
            NumericalSemigroup::from_generators(&on_axis)
                .map_err(|_: NumericalError| ConvertError::AxisNotNumerical(j + 1))
        })
        .collect()
}

/// Checks that `A` generates a generalized numerical semigroup and computes
/// its gap bound.
pub fn bound_vector(gens: &[Point], dim: usize) -> Result<BoundVector, ConvertError> {
    check_dims(gens, dim)?;
    if gens.is_empty() {
        return Err(ConvertError::EmptyGenerators);
    }
    let axes = axis_semigroups(gens, dim)?;
    let axis_frobenius: Vec<usize> = axes.iter().map(|s| s.clamped_frobenius()).collect();

    let mut mixed = vec![vec![0usize; dim]; dim];
    for (i, row) in mixed.iter_mut().enumerate() {
        for k in (0..dim).filter(|&k| k != i) {
            row[k] = gens
                .iter()
                .filter(|a| {
                    a.coords().iter().enumerate().all(|(t, &c)| match t {
                        t if t == i => c == 1,
                        t if t == k => true,
                        _ => c == 0,
                    })
                })
                .map(|a| a.coords()[k])
                .min()
                .ok_or(ConvertError::MissingMixedGenerator(i + 1, k + 1))?;
        }
    }

    let coords = (0..dim)
        .map(|j| {
            (0..dim)
                .filter(|&i| i != j)
                .try_fold(axis_frobenius[j], |acc, i| {
                    axis_frobenius[i]
                        .checked_mul(mixed[i][j])
                        .and_then(|t| acc.checked_add(t))
                })
                .ok_or(LatticeError::Overflow)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BoundVector {
        v: Point::new(coords)?,
        axis_frobenius,
        mixed_exponents: mixed,
    })
}

/// Gap set of `⟨A⟩`. Dimension one is handled by the numerical-semigroup
/// sieve; otherwise the box `B(v)` is sieved, with products of axis elements
/// marked as members up front.
pub fn generators_to_gaps(gens: &[Point], dim: usize) -> Result<GeneratedGaps, ConvertError> {
    check_dims(gens, dim)?;
    if gens.is_empty() {
        return Err(ConvertError::EmptyGenerators);
    }
    if dim == 1 {
        let values: Vec<usize> = gens.iter().map(|a| a.coords()[0]).collect();
        let ns = NumericalSemigroup::from_generators(&values)
            .map_err(|_| ConvertError::AxisNotNumerical(1))?;
        let bound = BoundVector {
            v: Point::on_axis(1, 0, ns.clamped_frobenius()),
            axis_frobenius: vec![ns.clamped_frobenius()],
            mixed_exponents: vec![vec![0]],
        };
        let gaps = ns.gaps().iter().map(|&g| Point::on_axis(1, 0, g)).collect();
        return Ok(GeneratedGaps { gaps, bound });
    }

    let bound = bound_vector(gens, dim)?;
    let axes = axis_semigroups(gens, dim)?;
    let sieve = BoxSieve::new(&bound.v)?;
    let useful: Vec<(usize, &Point)> = gens
        .iter()
        .filter(|a| !a.is_zero() && a.leq(&bound.v))
        .map(|a| (sieve.offset(a), a))
        .collect();
    let mut member = vec![false; sieve.len];
    // Lex order on the box visits p − a before p.
    let mut cursor = Point::zero(dim);
    for idx in 0..sieve.len {
        // Cartesian products of axis-semigroup elements are members outright.
        member[idx] = cursor
            .coords()
            .iter()
            .zip(&axes)
            .all(|(&c, s)| s.contains(c))
            || useful
                .iter()
                .any(|&(off, a)| a.leq(&cursor) && member[idx - off]);
        sieve.advance(&mut cursor);
    }

    let gaps = (0..sieve.len)
        .filter(|&i| !member[i])
        .map(|i| sieve.point(i))
        .collect();
    Ok(GeneratedGaps { gaps, bound })
}

/// Whether `x` is a non-negative integer combination of `gens`, by dynamic
/// programming over `B(x)`.
pub fn membership_in_generated(gens: &[Point], x: &Point) -> Result<bool, ConvertError> {
    check_dims(gens, x.dim())?;
    let sieve = BoxSieve::new(x)?;
    let useful: Vec<(usize, &Point)> = gens
        .iter()
        .filter(|a| !a.is_zero() && a.leq(x))
        .map(|a| (sieve.offset(a), a))
        .collect();
    let mut reachable = vec![false; sieve.len];
    reachable[0] = true;
    let mut cursor = Point::zero(x.dim());
    for idx in 0..sieve.len {
        if idx > 0 {
            reachable[idx] = useful
                .iter()
                .any(|&(off, a)| a.leq(&cursor) && reachable[idx - off]);
        }
        sieve.advance(&mut cursor);
    }
    Ok(reachable[sieve.len - 1])
}

/// Flat mixed-radix indexing of a box, lex order (last axis fastest).
struct BoxSieve {
    upper: Point,
    strides: Vec<usize>,
    len: usize,
}

impl BoxSieve {
    fn new(upper: &Point) -> Result<Self, ConvertError> {
        let len = box_cardinality(upper)
            .filter(|&n| n <= MAX_SIEVE_POINTS)
            .ok_or_else(|| ConvertError::BoxTooLarge(upper.clone()))?;
        let dim = upper.dim();
        let mut strides = vec![1usize; dim];
        for i in (0..dim.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * (upper.coords()[i + 1] + 1);
        }
        Ok(BoxSieve {
            upper: upper.clone(),
            strides,
            len,
        })
    }

    fn offset(&self, p: &Point) -> usize {
        p.coords()
            .iter()
            .zip(&self.strides)
            .map(|(c, s)| c * s)
            .sum()
    }

    fn point(&self, mut idx: usize) -> Point {
        let coords: Vec<usize> = self
            .strides
            .iter()
            .map(|s| {
                let c = idx / s;
                idx %= s;
                c
            })
            .collect();
        Point::new(coords).expect("box dimension is positive")
    }

    fn advance(&self, cursor: &mut Point) {
        let mut coords = cursor.coords().to_vec();
        for axis in (0..coords.len()).rev() {
            if coords[axis] < self.upper.coords()[axis] {
                coords[axis] += 1;
                break;
            }
            coords[axis] = 0;
        }
        *cursor = Point::new(coords).expect("box dimension is positive");
    }
}

/// Independent oracle: closes `gens` under addition inside `B(bound)` by
/// repeated set addition and returns the box points never reached.
pub mod oracle {
    use std::collections::HashSet;

    use crate::lattice::{box_iter, Point};

    pub fn brute_force_gaps_oracle(gens: &[Point], bound: &Point) -> Vec<Point> {
        let gens: Vec<&Point> = gens.iter().filter(|a| a.leq(bound)).collect();
        let mut reached: HashSet<Point> = HashSet::new();
        reached.insert(Point::zero(bound.dim()));
        let mut frontier: Vec<Point> = reached.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in &frontier {
                for a in &gens {
                    if let Ok(y) = x.checked_add(a) {
                        if y.leq(bound) && reached.insert(y.clone()) {
                            next.push(y);
                        }
                    }
                }
            }
            frontier = next;
        }
        let mut gaps: Vec<Point> = box_iter(bound).filter(|x| !reached.contains(x)).collect();
        gaps.sort();
        gaps
    }

    /// Elements of `gens` (nonzero, deduplicated) that are not a sum of two
    /// nonzero elements of `⟨gens⟩`, found by exhaustive closure below each
    /// candidate.
    pub fn brute_force_minimalize(gens: &[Point]) -> Vec<Point> {
        let mut cands: Vec<Point> = gens.iter().filter(|a| !a.is_zero()).cloned().collect();
        cands.sort();
        cands.dedup();
        cands
            .iter()
            .filter(|v| {
                // Summands of a nontrivial decomposition are strictly below v,
                // so v decomposes iff the other generators reach it.
                let others: Vec<Point> = cands.iter().filter(|a| a != v).cloned().collect();
                brute_force_gaps_oracle(&others, v).contains(v)
            })
            .cloned()
            .collect()
    }
}
