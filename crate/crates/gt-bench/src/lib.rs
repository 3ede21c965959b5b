//! Benchmark inputs shared by the criterion benches.

use gt_core::corpus::cyclic_classes;
use gt_core::CyclicClass;

/// Class pairs of length exactly `len` in three generators, in corpus order.
pub fn class_pairs(len: usize, count: usize) -> Vec<(CyclicClass, CyclicClass)> {
    let classes: Vec<CyclicClass> = cyclic_classes(3, len).into_iter().filter(|c| c.len() == len).collect();
    classes.iter().zip(classes.iter().rev()).take(count).map(|(a, b)| (a.clone(), b.clone())).collect()
}
