//! Data-parallel sweep core.
//!
//! Exhaustive identity checks map a list of canonical index tuples through a
//! pure evaluator and keep the violations. With the `parallel` feature the
//! map runs on rayon; without it the same code runs sequentially. Callers
//! sort the collected witnesses (see `CheckReport::new`), so the two modes
//! produce identical reports.

use crate::report::Witness;

#[cfg(feature = "parallel")]
pub(crate) fn collect_violations<K, F>(keys: &[K], eval: F) -> Vec<Witness>
where
    K: Sync,
    F: Fn(&K) -> Option<Witness> + Sync + Send,
{
    use rayon::prelude::*;
    keys.par_iter().filter_map(&eval).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn collect_violations<K, F>(keys: &[K], eval: F) -> Vec<Witness>
where
    K: Sync,
    F: Fn(&K) -> Option<Witness> + Sync + Send,
{
    keys.iter().filter_map(&eval).collect()
}

/// Strictly increasing pairs `(i, j)`, `i < j < n`, in lexicographic order.
pub(crate) fn increasing_pairs(n: usize) -> Vec<[usize; 2]> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push([i, j]);
        }
    }
    out
}

/// Strictly increasing triples `(i, j, k)`, lexicographic.
pub(crate) fn increasing_triples(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                out.push([i, j, k]);
            }
        }
    }
    out
}

/// Full Cartesian product of index tuples, lexicographic.
pub(crate) fn index_product(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &d in dims {
        let mut next = Vec::with_capacity(out.len() * d);
        for prefix in &out {
            for i in 0..d {
                let mut t = prefix.clone();
                t.push(i);
                next.push(t);
            }
        }
        out = next;
    }
    out
}
