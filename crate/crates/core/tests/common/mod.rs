#![allow(dead_code)]

use gns_core::{parse_point_list, Gns, OrderKind, Point, RelaxedOrder};
use rand::Rng;

pub fn pts(dim: usize, text: &str) -> Vec<Point> {
    let mut v = parse_point_list(text, dim).expect("test point list parses");
    v.sort();
    v
}

pub fn gns(dim: usize, gaps: &str) -> Gns {
    Gns::from_gaps(pts(dim, gaps), dim).expect("test gap set is valid")
}

pub const ORDER_NAMES: [&str; 4] = ["lex", "grlex", "minlex", "mingrlex"];

pub fn random_order(rng: &mut impl Rng, dim: usize) -> RelaxedOrder {
    let kind: OrderKind = ORDER_NAMES[rng.gen_range(0..ORDER_NAMES.len())]
        .parse()
        .unwrap();
    RelaxedOrder::new(kind, dim)
}

pub fn random_point(rng: &mut impl Rng, dim: usize, max: usize) -> Point {
    Point::new((0..dim).map(|_| rng.gen_range(0..=max))).unwrap()
}

/// Whether the order supports enumerating its initial segments.
pub fn has_segments(ord: &RelaxedOrder) -> bool {
    matches!(ord.kind(), OrderKind::Lex | OrderKind::GradedLex) || ord.dim() == 1
}
