#![allow(dead_code)]

pub mod lattice;

use grasper_core::{GrasperClass, ReductionContext};

/// Exponent range of the truncated Laurent lattice.
pub const K: i64 = 12;

pub fn col(k: i64) -> usize {
    (k + K) as usize
}

pub fn unit(k: i64) -> Vec<i64> {
    let mut v = vec![0; (2 * K + 1) as usize];
    v[col(k)] = 1;
    v
}

/// Generators of the kernel meeting `Z<t^-12, …, t^12>`: `1` and
/// `t^k + t^(-k-1)`.
pub fn kernel_rows() -> Vec<Vec<i64>> {
    let mut rows = vec![unit(0)];
    for k in 0..K {
        let mut r = unit(k);
        r[col(-k - 1)] += 1;
        rows.push(r);
    }
    rows
}

/// Barbell symmetry: `t^i + t^-i + i·t` for `i = 1..=12`.
pub fn symmetry_rows() -> Vec<Vec<i64>> {
    (1..=K)
        .map(|i| {
            let mut r = unit(i);
            r[col(-i)] += 1;
            r[col(1)] += i;
            r
        })
        .collect()
}

/// Eliminate `1, t^-1, …, t^-12` first so remainders live on positive powers.
pub fn pivot_order() -> Vec<usize> {
    let mut order = vec![col(0)];
    order.extend((1..=K).map(|k| col(-k)));
    order.extend((1..=K).map(col));
    order
}

/// A 4-sphere class as a coefficient vector on `t^1..t^12`.
pub fn class_vector(c: &GrasperClass, r: &ReductionContext) -> Vec<i64> {
    let mut v = vec![0; (2 * K + 1) as usize];
    for k in 1..=K {
        v[col(k)] = c.coefficient(&r.t(k));
    }
    v
}
