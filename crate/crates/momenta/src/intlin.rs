//! Exact integer linear algebra for weight-lattice computations: Smith normal
//! form and a Hermite-style canonical basis of a row lattice.
//!
//! Matrices are dense `Vec<Vec<i64>>` rows; everything here operates on the
//! small weight matrices of torus representations, so no effort is spent on
//! sparsity or overflow-proof arithmetic beyond `i64`.

/// Result of the Smith decomposition `u * a * v = d` with `u`, `v` unimodular
/// and `d` diagonal with nonnegative entries `d[0] | d[1] | ...`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
    /// Diagonal of `d`, length `min(nrows, ncols)`.
    pub diag: Vec<i64>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn swap_rows(a: &mut [Vec<i64>], i: usize, j: usize) {
    a.swap(i, j);
}

fn swap_cols(a: &mut [Vec<i64>], i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// row[i] += c * row[j]
fn add_row(a: &mut [Vec<i64>], i: usize, j: usize, c: i64) {
    let rj = a[j].clone();
    for (x, y) in a[i].iter_mut().zip(rj.iter()) {
        *x += c * y;
    }
}

/// col[i] += c * col[j]
fn add_col(a: &mut [Vec<i64>], i: usize, j: usize, c: i64) {
    for row in a.iter_mut() {
        row[i] += c * row[j];
    }
}

fn negate_row(a: &mut [Vec<i64>], i: usize) {
    for x in a[i].iter_mut() {
        *x = -*x;
    }
}

/// Smith normal form of an integer matrix.
pub fn smith(a: &[Vec<i64>]) -> Smith {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut d: Vec<Vec<i64>> = a.to_vec();
    let mut u = identity(m);
    let mut v = identity(n);
    let rank_bound = m.min(n);

    let mut t = 0;
    while t < rank_bound {
        // Pivot: smallest nonzero absolute value in the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if d[i][j] != 0
                    && pivot.is_none_or(|(pi, pj)| d[i][j].abs() < d[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut d, t, pi);
        swap_rows(&mut u, t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);

        // Clear row and column t by Euclidean steps.
        let mut clean = false;
        while !clean {
            clean = true;
            for i in (t + 1)..m {
                if d[i][t] != 0 {
                    let q = d[i][t].div_euclid(d[t][t]);
                    add_row(&mut d, i, t, -q);
                    add_row(&mut u, i, t, -q);
                    if d[i][t] != 0 {
                        swap_rows(&mut d, t, i);
                        swap_rows(&mut u, t, i);
                        clean = false;
                    }
                }
            }
            for j in (t + 1)..n {
                if d[t][j] != 0 {
                    let q = d[t][j].div_euclid(d[t][t]);
                    add_col(&mut d, j, t, -q);
                    add_col(&mut v, j, t, -q);
                    if d[t][j] != 0 {
                        swap_cols(&mut d, t, j);
                        swap_cols(&mut v, t, j);
                        clean = false;
                    }
                }
            }
        }

        // Divisibility: d[t][t] must divide the trailing block.
        let p = d[t][t];
        let mut offender = None;
        'outer: for i in (t + 1)..m {
            for j in (t + 1)..n {
                if d[i][j] % p != 0 {
                    offender = Some(i);
                    break 'outer;
                }
            }
        }
        if let Some(i) = offender {
            add_row(&mut d, t, i, 1);
            add_row(&mut u, t, i, 1);
            continue; // redo this pivot
        }

        if d[t][t] < 0 {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
        t += 1;
    }

    let diag = (0..rank_bound).map(|i| d[i][i]).collect();
    Smith { u, v, diag }
}

/// Canonical (Hermite-style) basis of the lattice generated by the rows of
/// `a`: row echelon over the integers with positive pivots and entries above
/// each pivot reduced into `[0, pivot)`. Two row sets generate the same
/// lattice iff their canonical bases are equal.
pub fn hermite_rows(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut h: Vec<Vec<i64>> = a.to_vec();
    let mut row = 0;
    for col in 0..n {
        if row >= m {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in row..m {
                if h[i][col] != 0 && best.is_none_or(|b| h[i][col].abs() < h[b][col].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            swap_rows(&mut h, row, b);
            let mut again = false;
            for i in (row + 1)..m {
                if h[i][col] != 0 {
                    let q = h[i][col].div_euclid(h[row][col]);
                    add_row(&mut h, i, row, -q);
                    if h[i][col] != 0 {
                        again = true;
                    }
                }
            }
            if !again {
                break;
            }
        }
        if h[row][col] != 0 {
            if h[row][col] < 0 {
                negate_row(&mut h, row);
            }
            let p = h[row][col];
            for i in 0..row {
                let q = h[i][col].div_euclid(p);
                add_row(&mut h, i, row, -q);
            }
            row += 1;
        }
    }
    h.truncate(row);
    h
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let m = a.len();
    let k = if m == 0 { 0 } else { a[0].len() };
    let n = if b.is_empty() { 0 } else { b[0].len() };
    let mut out = vec![vec![0i64; n]; m];
    for i in 0..m {
        for l in 0..k {
            if a[i][l] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][l] * b[l][j];
            }
        }
    }
    out
}
