//! Exhaustive enumeration of generalized numerical semigroups by genus.
//!
//! Two trees cover `𝒮_{g,d}`:
//!
//! * the genus tree, rooted at ℕ^d, where the children of `S` are `S ∖ {v}`
//!   for `v ∈ U_⪯(S)` and depth equals genus;
//! * the ordinarization tree of a fixed genus, rooted at the ordinary
//!   semigroup `R_{g,d}(⪯)`, where the parent of `S` is its ordinarization.
//!
//! Both are walked depth first. Nodes at the split depth become independent
//! work items for rayon; counts merge by checked addition, and streamed
//! output is emitted in work-item order so every thread count produces the
//! same sequence.

use std::io;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::gns::{FrobeniusValue, Gns};
use crate::lattice::{LatticeError, Point, RelaxedOrder};

#[derive(Debug, Error)]
pub enum EnumError {
    #[error("count overflowed 64 bits")]
    Overflow,
    #[error("time limit exceeded")]
    TimeLimit,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("order dimension {order} does not match requested dimension {dim}")]
    OrderDimension { order: usize, dim: usize },
    #[error("sink failed: {0}")]
    Sink(#[from] io::Error),
    #[error("could not build thread pool: {0}")]
    ThreadPool(String),
}

/// Counts for one genus and dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub genus: usize,
    pub dim: usize,
    /// `N_{g,d}`.
    pub total: u64,
    /// `by_rank[r − 1]` is the number of semigroups whose gaps span an
    /// `r`-dimensional space. ℕ^d (genus 0, empty span) is in no bucket.
    pub by_rank: Option<Vec<u64>>,
    /// `per_genus[i] = N_{i,d}` for `i = 0..=genus`.
    pub per_genus: Option<Vec<u64>>,
}

fn add(a: u64, b: u64) -> Result<u64, EnumError> {
    a.checked_add(b).ok_or(EnumError::Overflow)
}

fn add_into(acc: &mut [u64], other: &[u64]) -> Result<(), EnumError> {
    for (a, b) in acc.iter_mut().zip(other) {
        *a = add(*a, *b)?;
    }
    Ok(())
}

/// A rooted tree whose children are produced on demand.
trait Tree: Sync {
    type Node: Send + Sync;
    fn children(&self, node: &Self::Node, depth: usize) -> Vec<Self::Node>;
}

/// Genus tree: `(S, F_⪯(S))` pairs, expanded while depth < `limit`.
struct GenusTree {
    ord: RelaxedOrder,
    limit: usize,
}

impl Tree for GenusTree {
    type Node = (Gns, FrobeniusValue);

    fn children(&self, (s, frob): &Self::Node, depth: usize) -> Vec<Self::Node> {
        if depth >= self.limit {
            return Vec::new();
        }
        let mut kids: Vec<Self::Node> = unbounded(s, frob, &self.ord)
            .map(|v| {
                (
                    s.remove_generator_unchecked(v),
                    FrobeniusValue::At(v.clone()),
                )
            })
            .collect();
        kids.sort_by(|a, b| a.0.cmp(&b.0));
        kids
    }
}

fn unbounded<'a>(
    s: &'a Gns,
    frob: &'a FrobeniusValue,
    ord: &'a RelaxedOrder,
) -> impl Iterator<Item = &'a Point> + 'a {
    s.minimal_generators()
        .iter()
        .filter(move |g| frob.precedes(ord, g))
}

struct OrdinarizationTree {
    ord: RelaxedOrder,
}

impl Tree for OrdinarizationTree {
    type Node = Gns;

    fn children(&self, node: &Gns, _depth: usize) -> Vec<Gns> {
        let mut kids = sons_ordinarization(node, &self.ord);
        kids.sort();
        kids
    }
}

/// Sons of `t` in the ordinarization tree: `(t ∪ {h}) ∖ {x}` for special
/// gaps `h ≺ m_⪯(t)` and `x ∈ U_⪯(t ∪ {h}) ∖ {h}`. Empty exactly at leaves.
pub fn sons_ordinarization(t: &Gns, ord: &RelaxedOrder) -> Vec<Gns> {
    if t.genus() == 0 {
        return Vec::new();
    }
    let mult = t.multiplicity(ord);
    let mut sons = Vec::new();
    for h in t.gaps().iter().filter(|h| ord.lt(h, &mult)) {
        if !t.is_special_gap(h) {
            continue;
        }
        let parent = t.add_gap_unchecked(h);
        let frob = parent.frobenius_element(ord);
        for x in unbounded(&parent, &frob, ord).filter(|x| *x != h) {
            sons.push(parent.remove_generator_unchecked(x));
        }
    }
    debug_assert!(
        {
            let mut seen = sons.clone();
            seen.sort();
            seen.windows(2).all(|w| w[0] != w[1])
        },
        "ordinarization tree produced a repeated son"
    );
    sons
}

/// The ordinary semigroup `R_{g,d}(⪯)`: every point after the first `g + 1`
/// in the order is a member.
pub fn ordinary_semigroup(genus: usize, dim: usize, ord: &RelaxedOrder) -> Result<Gns, EnumError> {
    check_order(dim, ord)?;
    let mut gaps = ord.initial_segment(genus + 1)?;
    gaps.remove(0);
    gaps.sort();
    Ok(Gns::from_sorted_gaps(dim, gaps))
}

fn check_order(dim: usize, ord: &RelaxedOrder) -> Result<(), EnumError> {
    if ord.dim() == dim {
        Ok(())
    } else {
        Err(EnumError::OrderDimension {
            order: ord.dim(),
            dim,
        })
    }
}

struct Guard {
    deadline: Option<Instant>,
    tripped: AtomicBool,
}

impl Guard {
    fn new(limit: Option<Duration>) -> Self {
        Guard {
            deadline: limit.map(|l| Instant::now() + l),
            tripped: AtomicBool::new(false),
        }
    }

    fn check(&self) -> Result<(), EnumError> {
        let Some(deadline) = self.deadline else {
            return Ok(());
        };
        if self.tripped.load(AtomicOrdering::Relaxed) || Instant::now() > deadline {
            self.tripped.store(true, AtomicOrdering::Relaxed);
            return Err(EnumError::TimeLimit);
        }
        Ok(())
    }
}

type Visit<'a, N> = dyn FnMut(&N, usize) -> Result<(), EnumError> + 'a;

/// Pre-order walk of the subtree below `node`.
fn dfs<T: Tree>(
    tree: &T,
    node: &T::Node,
    depth: usize,
    guard: &Guard,
    visit: &mut Visit<'_, T::Node>,
) -> Result<(), EnumError> {
    guard.check()?;
    visit(node, depth)?;
    for child in tree.children(node, depth) {
        dfs(tree, &child, depth + 1, guard, visit)?;
    }
    Ok(())
}

enum PlanItem<N> {
    /// A node above the split depth, visited on its own.
    Single(N, usize),
    /// A node at the split depth together with its whole subtree.
    Subtree(N, usize),
}

/// Pre-order list of the nodes above `split`, with subtrees cut at `split`.
fn plan<T: Tree>(tree: &T, root: T::Node, split: usize) -> Vec<PlanItem<T::Node>> {
    fn rec<T: Tree>(
        tree: &T,
        node: T::Node,
        depth: usize,
        split: usize,
        out: &mut Vec<PlanItem<T::Node>>,
    ) {
        if depth >= split {
            out.push(PlanItem::Subtree(node, depth));
            return;
        }
        let kids = tree.children(&node, depth);
        out.push(PlanItem::Single(node, depth));
        for k in kids {
            rec(tree, k, depth + 1, split, out);
        }
    }
    let mut out = Vec::new();
    rec(tree, root, 0, split, &mut out);
    out
}

/// Configuration for the enumeration engines.
#[derive(Debug, Clone)]
pub struct Engine {
    threads: Option<usize>,
    split_depth: usize,
    time_limit: Option<Duration>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine {
            threads: None,
            split_depth: 2,
            time_limit: None,
        }
    }
}

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    /// Worker count; `1` runs everything on the calling thread. `None` uses
    /// rayon's global pool.
    pub fn with_threads(mut self, threads: Option<usize>) -> Self {
        self.threads = threads.map(|t| t.max(1));
        self
    }

    pub fn with_split_depth(mut self, depth: usize) -> Self {
        self.split_depth = depth;
        self
    }

    pub fn with_time_limit(mut self, limit: Option<Duration>) -> Self {
        self.time_limit = limit;
        self
    }

    fn serial(&self) -> bool {
        self.threads == Some(1)
    }

    fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> Result<R, EnumError> {
        match self.threads {
            Some(n) if n > 1 => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| EnumError::ThreadPool(e.to_string()))?;
                Ok(pool.install(f))
            }
            _ => Ok(f()),
        }
    }

    /// Folds `visit` over every node of the tree. Each work item gets its own
    /// accumulator; accumulators are merged in work-item order.
    fn fold<T, A>(
        &self,
        tree: &T,
        root: T::Node,
        init: impl Fn() -> A + Sync,
        visit: impl Fn(&mut A, &T::Node, usize) -> Result<(), EnumError> + Sync,
        merge: impl Fn(&mut A, A) -> Result<(), EnumError> + Sync,
    ) -> Result<A, EnumError>
    where
        T: Tree,
        A: Send,
    {
        let guard = Guard::new(self.time_limit);
        if self.serial() {
            let mut acc = init();
            dfs(tree, &root, 0, &guard, &mut |n, d| visit(&mut acc, n, d))?;
            return Ok(acc);
        }
        let items = plan(tree, root, self.split_depth);
        let partials: Vec<Result<A, EnumError>> = self.install(|| {
            items
                .into_par_iter()
                .map(|item| {
                    let mut acc = init();
                    match item {
                        PlanItem::Single(n, d) => visit(&mut acc, &n, d)?,
                        PlanItem::Subtree(n, d) => {
                            dfs(tree, &n, d, &guard, &mut |n, d| visit(&mut acc, n, d))?
                        }
                    }
                    Ok(acc)
                })
                .collect()
        })?;
        let mut acc = init();
        for partial in partials {
            merge(&mut acc, partial?)?;
        }
        Ok(acc)
    }

    /// Streams every node selected by `keep` to `sink` in pre-order with
    /// sorted children. Parallel runs buffer one batch of work items at a
    /// time and emit them in order.
    fn stream<T: Tree>(
        &self,
        tree: &T,
        root: T::Node,
        keep: impl Fn(&T::Node, usize) -> Option<Gns> + Sync,
        sink: &mut dyn FnMut(&Gns) -> io::Result<()>,
    ) -> Result<u64, EnumError> {
        let guard = Guard::new(self.time_limit);
        let mut count = 0u64;
        if self.serial() {
            dfs(tree, &root, 0, &guard, &mut |n, d| {
                if let Some(s) = keep(n, d) {
                    sink(&s)?;
                    count = add(count, 1)?;
                }
                Ok(())
            })?;
            return Ok(count);
        }
        let items = plan(tree, root, self.split_depth);
        let batch = rayon::current_num_threads().max(1) * 8;
        let mut items = items.into_iter().peekable();
        while items.peek().is_some() {
            let chunk: Vec<_> = items.by_ref().take(batch).collect();
            let outputs: Vec<Result<Vec<Gns>, EnumError>> = self.install(|| {
                chunk
                    .into_par_iter()
                    .map(|item| {
                        let mut out = Vec::new();
                        match item {
                            PlanItem::Single(n, d) => out.extend(keep(&n, d)),
                            PlanItem::Subtree(n, d) => dfs(tree, &n, d, &guard, &mut |n, d| {
                                out.extend(keep(n, d));
                                Ok(())
                            })?,
                        }
                        Ok(out)
                    })
                    .collect()
            })?;
            for out in outputs {
                for s in out? {
                    sink(&s)?;
                    count = add(count, 1)?;
                }
            }
        }
        Ok(count)
    }

    /// `N_{i,d}` for `i = 0..=genus` from the genus tree. The last level is
    /// counted as `Σ |U_⪯(S)|` over depth `genus − 1` without being built.
    pub fn count_genus_tree(
        &self,
        genus: usize,
        dim: usize,
        ord: &RelaxedOrder,
    ) -> Result<CountReport, EnumError> {
        check_order(dim, ord)?;
        let tree = GenusTree {
            ord: *ord,
            limit: genus.saturating_sub(1),
        };
        let root = (Gns::full(dim), FrobeniusValue::SentinelAllOfNd);
        let per_genus = self.fold(
            &tree,
            root,
            || vec![0u64; genus + 1],
            |acc, (s, frob), depth| {
                acc[depth] = add(acc[depth], 1)?;
                if depth + 1 == genus {
                    let n = unbounded(s, frob, ord).count() as u64;
                    acc[genus] = add(acc[genus], n)?;
                }
                Ok(())
            },
            |acc, other| add_into(acc, &other),
        )?;
        Ok(CountReport {
            genus,
            dim,
            total: per_genus[genus],
            by_rank: None,
            per_genus: Some(per_genus),
        })
    }

    /// `N_{g,d}` and its rank partition from the ordinarization tree.
    pub fn count_ordinarization(
        &self,
        genus: usize,
        dim: usize,
        ord: &RelaxedOrder,
    ) -> Result<CountReport, EnumError> {
        let root = ordinary_semigroup(genus, dim, ord)?;
        let tree = OrdinarizationTree { ord: *ord };
        let counts = self.fold(
            &tree,
            root,
            || vec![0u64; dim + 1],
            |acc, s, _| {
                acc[0] = add(acc[0], 1)?;
                let r = s.rank();
                if r > 0 {
                    acc[r] = add(acc[r], 1)?;
                }
                Ok(())
            },
            |acc, other| add_into(acc, &other),
        )?;
        Ok(CountReport {
            genus,
            dim,
            total: counts[0],
            by_rank: Some(counts[1..].to_vec()),
            per_genus: None,
        })
    }

    /// Streams `𝒮_{g,d}` from the ordinarization tree.
    pub fn enumerate_genus(
        &self,
        genus: usize,
        dim: usize,
        ord: &RelaxedOrder,
        sink: &mut dyn FnMut(&Gns) -> io::Result<()>,
    ) -> Result<u64, EnumError> {
        let root = ordinary_semigroup(genus, dim, ord)?;
        let tree = OrdinarizationTree { ord: *ord };
        self.stream(&tree, root, |s, _| Some(s.clone()), sink)
    }

    /// Streams level `genus` of the genus tree.
    pub fn enumerate_genus_tree(
        &self,
        genus: usize,
        dim: usize,
        ord: &RelaxedOrder,
        sink: &mut dyn FnMut(&Gns) -> io::Result<()>,
    ) -> Result<u64, EnumError> {
        check_order(dim, ord)?;
        let tree = GenusTree {
            ord: *ord,
            limit: genus,
        };
        let root = (Gns::full(dim), FrobeniusValue::SentinelAllOfNd);
        self.stream(
            &tree,
            root,
            |(s, _), depth| (depth == genus).then(|| s.clone()),
            sink,
        )
    }
}

pub fn count_genus_tree(
    genus: usize,
    dim: usize,
    ord: &RelaxedOrder,
) -> Result<CountReport, EnumError> {
    Engine::default().count_genus_tree(genus, dim, ord)
}

pub fn count_ordinarization(
    genus: usize,
    dim: usize,
    ord: &RelaxedOrder,
) -> Result<CountReport, EnumError> {
    Engine::default().count_ordinarization(genus, dim, ord)
}

pub fn enumerate_genus(
    genus: usize,
    dim: usize,
    ord: &RelaxedOrder,
    sink: &mut dyn FnMut(&Gns) -> io::Result<()>,
) -> Result<u64, EnumError> {
    Engine::default().enumerate_genus(genus, dim, ord, sink)
}

/// Collects `𝒮_{g,d}` (ordinarization tree, single-threaded order).
pub fn semigroups_of_genus(
    genus: usize,
    dim: usize,
    ord: &RelaxedOrder,
) -> Result<Vec<Gns>, EnumError> {
    let mut out = Vec::new();
    Engine::default()
        .with_threads(Some(1))
        .enumerate_genus(genus, dim, ord, &mut |s| {
            out.push(s.clone());
            Ok(())
        })?;
    Ok(out)
}

/// A semigroup of genus `genus` reached from ℕ^d by removing, at each step, a
/// minimal generator drawn uniformly from the lex-sorted list.
///
/// The random stream is `ChaCha8Rng::seed_from_u64(seed)` and each step draws
/// one index with `gen_range(0..n)`; this is part of the output contract.
pub fn random_gns(genus: usize, dim: usize, seed: u64) -> Gns {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = Gns::full(dim);
    for _ in 0..genus {
        let gens = s.minimal_generators();
        let v = gens[rng.gen_range(0..gens.len())].clone();
        s = s.remove_generator_unchecked(&v);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[usize]) -> Point {
        Point::new(c.iter().copied()).unwrap()
    }

    fn gns(list: &[&[usize]]) -> Gns {
        Gns::from_gaps(list.iter().map(|c| p(c)), 2).unwrap()
    }

    #[test]
    fn ordinary_semigroup_examples() {
        assert_eq!(
            ordinary_semigroup(3, 2, &RelaxedOrder::lex(2)).unwrap(),
            gns(&[&[0, 1], &[0, 2], &[0, 3]])
        );
        assert_eq!(
            ordinary_semigroup(0, 4, &RelaxedOrder::graded_lex(4)).unwrap(),
            Gns::full(4)
        );
        assert_eq!(
            ordinary_semigroup(2, 3, &RelaxedOrder::lex(3))
                .unwrap()
                .gaps(),
            &[p(&[0, 0, 1]), p(&[0, 0, 2])]
        );
        let r = ordinary_semigroup(5, 3, &RelaxedOrder::graded_lex(3)).unwrap();
        assert!(r.is_ordinary(&RelaxedOrder::graded_lex(3)));
        assert!(matches!(
            ordinary_semigroup(2, 2, &RelaxedOrder::min_lex(2)),
            Err(EnumError::Lattice(LatticeError::UnsupportedOrder(..)))
        ));
        assert!(matches!(
            ordinary_semigroup(2, 3, &RelaxedOrder::lex(2)),
            Err(EnumError::OrderDimension { .. })
        ));
    }

    #[test]
    fn genus_tree_examples() {
        let lex2 = RelaxedOrder::lex(2);
        let r = count_genus_tree(3, 2, &lex2).unwrap();
        assert_eq!(r.total, 23);
        assert_eq!(r.per_genus, Some(vec![1, 2, 7, 23]));
        assert_eq!(
            count_genus_tree(0, 3, &RelaxedOrder::lex(3)).unwrap().total,
            1
        );
        assert_eq!(
            count_genus_tree(6, 1, &RelaxedOrder::lex(1)).unwrap().total,
            23
        );
    }

    #[test]
    fn ordinarization_counts() {
        let lex2 = RelaxedOrder::lex(2);
        assert_eq!(count_ordinarization(3, 2, &lex2).unwrap().total, 23);
        let r = count_ordinarization(4, 2, &lex2).unwrap();
        assert_eq!(r.total, 71);
        assert_eq!(r.by_rank, Some(vec![14, 57]));
        let g0 = count_ordinarization(0, 3, &RelaxedOrder::lex(3)).unwrap();
        assert_eq!((g0.total, g0.by_rank), (1, Some(vec![0, 0, 0])));
    }

    #[test]
    fn sons_examples() {
        let lex = RelaxedOrder::lex(2);
        let r32 = gns(&[&[0, 1], &[0, 2], &[0, 3]]);
        assert_eq!(sons_ordinarization(&r32, &lex).len(), 8);
        let s5 = gns(&[&[0, 1], &[0, 2], &[1, 1]]);
        assert_eq!(
            sons_ordinarization(&s5, &lex),
            vec![gns(&[&[0, 1], &[1, 1], &[2, 1]])]
        );
        let s1 = gns(&[&[0, 1], &[0, 3], &[1, 0]]);
        assert!(sons_ordinarization(&s1, &lex).is_empty());
    }

    #[test]
    fn enumerate_examples() {
        let lex = RelaxedOrder::lex(2);
        let mut got = semigroups_of_genus(1, 2, &lex).unwrap();
        got.sort();
        assert_eq!(got, vec![gns(&[&[0, 1]]), gns(&[&[1, 0]])]);
        assert_eq!(semigroups_of_genus(0, 2, &lex).unwrap(), vec![Gns::full(2)]);
        assert_eq!(semigroups_of_genus(3, 2, &lex).unwrap().len(), 23);
    }

    #[test]
    fn parallel_matches_serial_order() {
        let ord = RelaxedOrder::lex(3);
        let collect = |engine: Engine| {
            let mut out = Vec::new();
            engine
                .enumerate_genus(4, 3, &ord, &mut |s| {
                    out.push(s.to_json(false));
                    Ok(())
                })
                .unwrap();
            out
        };
        let serial = collect(Engine::new().with_threads(Some(1)));
        assert_eq!(serial.len(), 292);
        for split in [0, 1, 2, 3] {
            let par = collect(Engine::new().with_threads(Some(4)).with_split_depth(split));
            assert_eq!(par, serial, "split depth {split}");
        }
    }

    #[test]
    fn sink_failure_aborts() {
        let err = enumerate_genus(2, 2, &RelaxedOrder::lex(2), &mut |_| {
            Err(io::Error::other("disk full"))
        })
        .unwrap_err();
        assert!(matches!(err, EnumError::Sink(_)));
    }

    #[test]
    fn time_limit_aborts() {
        let engine = Engine::new()
            .with_threads(Some(1))
            .with_time_limit(Some(Duration::ZERO));
        assert!(matches!(
            engine.count_ordinarization(6, 3, &RelaxedOrder::lex(3)),
            Err(EnumError::TimeLimit)
        ));
    }

    #[test]
    fn random_examples() {
        assert_eq!(random_gns(0, 3, 99), Gns::full(3));
        for seed in 0..100 {
            assert_eq!(random_gns(7, 2, seed).genus(), 7);
        }
        assert_eq!(random_gns(5, 2, 42), random_gns(5, 2, 42));
    }
}
