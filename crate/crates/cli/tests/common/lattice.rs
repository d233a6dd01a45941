//! Integer row reduction and Smith normal form on small dense matrices.
//!
//! Written against plain `Vec<i64>` rows so it shares nothing with the
//! library's reduction code.

/// Rows in echelon form, each with the column it is solved for.
pub struct Echelon {
    pivots: Vec<(usize, Vec<i64>)>,
}

fn sub_multiple(target: &mut [i64], row: &[i64], q: i64) {
    for (a, b) in target.iter_mut().zip(row) {
        *a -= q * b;
    }
}

/// Eliminates columns in `order`; each pivot row is removed from the pool
/// once its column is cleared in every other row.
pub fn echelon(mut rows: Vec<Vec<i64>>, order: &[usize]) -> Echelon {
    let mut pivots = Vec::new();
    for &col in order {
        loop {
            let nonzero: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if nonzero.is_empty() {
                break;
            }
            let p = *nonzero.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            if nonzero.len() == 1 {
                let mut row = rows.remove(p);
                if row[col] < 0 {
                    row.iter_mut().for_each(|a| *a = -*a);
                }
                pivots.push((col, row));
                break;
            }
            let pivot = rows[p].clone();
            for &i in &nonzero {
                if i != p {
                    let q = rows[i][col].div_euclid(pivot[col]);
                    sub_multiple(&mut rows[i], &pivot, q);
                }
            }
        }
    }
    Echelon { pivots }
}

impl Echelon {
    /// Canonical remainder of `v` modulo the row lattice.
    pub fn reduce(&self, mut v: Vec<i64>) -> Vec<i64> {
        for (col, row) in &self.pivots {
            let q = v[*col].div_euclid(row[*col]);
            sub_multiple(&mut v, row, q);
        }
        v
    }

    pub fn contains(&self, v: Vec<i64>) -> bool {
        self.reduce(v).iter().all(|&a| a == 0)
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.iter().map(|(c, _)| *c).collect()
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Nonzero invariant factors of the matrix, in divisibility order.
pub fn smith_invariants(mut m: Vec<Vec<i64>>) -> Vec<i64> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    for k in 0..rows.min(cols) {
        // smallest nonzero entry of the remaining block goes to (k, k)
        let Some((pi, pj)) = (k..rows)
            .flat_map(|i| (k..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| m[i][j].abs())
        else {
            break;
        };
        m.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }
        loop {
            let mut dirty = false;
            for i in k + 1..rows {
                let q = m[i][k].div_euclid(m[k][k]);
                let pivot = m[k].clone();
                sub_multiple(&mut m[i], &pivot, q);
                if m[i][k] != 0 {
                    dirty = true;
                }
            }
            for j in k + 1..cols {
                let q = m[k][j].div_euclid(m[k][k]);
                for row in m.iter_mut() {
                    let pk = row[k];
                    row[j] -= q * pk;
                }
                if m[k][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            // move a smaller remainder into the pivot and repeat
            let (mut bi, mut bj, mut best) = (k, k, m[k][k].abs());
            for (i, row) in m.iter().enumerate().skip(k + 1) {
                if row[k] != 0 && row[k].abs() < best {
                    (bi, bj, best) = (i, k, row[k].abs());
                }
            }
            for (j, &v) in m[k].iter().enumerate().skip(k + 1) {
                if v != 0 && v.abs() < best {
                    (bi, bj, best) = (k, j, v.abs());
                }
            }
            m.swap(k, bi);
            for row in m.iter_mut() {
                row.swap(k, bj);
            }
        }
        diag.push(m[k][k].abs());
    }
    // enforce d1 | d2 | ... via gcd/lcm exchanges
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = gcd(diag[i], diag[j]);
            let l = diag[i] / g * diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}
