//! Smith normal form over the integers.

use alloc::vec::Vec;

/// Dense row-major integer matrix.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: alloc::vec![0; rows * cols] }
    }

    /// Builds from row vectors; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: impl IntoIterator<Item = Vec<i64>>) -> Self {
        let mut data = Vec::new();
        let mut count = 0;
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            data.extend(r);
            count += 1;
        }
        IntMatrix { rows: count, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
}

struct Work {
    rows: usize,
    cols: usize,
    a: Vec<i128>,
}

impl Work {
    fn at(&self, r: usize, c: usize) -> i128 {
        self.a[r * self.cols + c]
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 != r2 {
            for c in 0..self.cols {
                self.a.swap(r1 * self.cols + c, r2 * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, c1: usize, c2: usize) {
        if c1 != c2 {
            for r in 0..self.rows {
                self.a.swap(r * self.cols + c1, r * self.cols + c2);
            }
        }
    }

    /// row[dst] -= q * row[src], starting at column `from`.
    fn row_sub(&mut self, dst: usize, src: usize, q: i128, from: usize) {
        for c in from..self.cols {
            let s = self.a[src * self.cols + c];
            if s != 0 {
                let d = &mut self.a[dst * self.cols + c];
                *d = d
                    .checked_sub(q.checked_mul(s).expect("SNF entry overflow"))
                    .expect("SNF entry overflow");
            }
        }
    }

    /// col[dst] -= q * col[src], starting at row `from`.
    fn col_sub(&mut self, dst: usize, src: usize, q: i128, from: usize) {
        for r in from..self.rows {
            let s = self.a[r * self.cols + src];
            if s != 0 {
                let d = &mut self.a[r * self.cols + dst];
                *d = d
                    .checked_sub(q.checked_mul(s).expect("SNF entry overflow"))
                    .expect("SNF entry overflow");
            }
        }
    }

    fn min_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(i128, usize, usize)> = None;
        for r in t..self.rows {
            for c in t..self.cols {
                let v = self.at(r, c).abs();
                if v != 0 && best.is_none_or(|(b, _, _)| v < b) {
                    best = Some((v, r, c));
                    if v == 1 {
                        return Some((r, c));
                    }
                }
            }
        }
        best.map(|(_, r, c)| (r, c))
    }
}

/// Invariant factors `d_1 | d_2 | ...` of `m`, one per diagonal position
/// (`min(rows, cols)` entries, zeros last). Entries are nonnegative.
///
/// Intermediate values are held in `i128`; the function panics if they
/// still overflow.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<i64> {
    let mut w = Work {
        rows: m.rows,
        cols: m.cols,
        a: m.data.iter().map(|&v| v as i128).collect(),
    };
    let diag_len = m.rows.min(m.cols);
    let mut diag = Vec::with_capacity(diag_len);
    for t in 0..diag_len {
        let Some((r, c)) = w.min_nonzero(t) else {
            break;
        };
        w.swap_rows(t, r);
        w.swap_cols(t, c);
        loop {
            let p = w.at(t, t);
            let mut dirty = false;
            for r in t + 1..w.rows {
                let v = w.at(r, t);
                if v != 0 {
                    w.row_sub(r, t, v.div_euclid(p), t);
                    if w.at(r, t) != 0 {
                        dirty = true;
                    }
                }
            }
            for c in t + 1..w.cols {
                let v = w.at(t, c);
                if v != 0 {
                    w.col_sub(c, t, v.div_euclid(p), t);
                    if w.at(t, c) != 0 {
                        dirty = true;
                    }
                }
            }
            if dirty {
                let (r, c) = w.min_nonzero_in_cross(t);
                w.swap_rows(t, r);
                w.swap_cols(t, c);
                continue;
            }
            // Pivot row and column are clear; enforce divisibility on the rest.
            let bad = (t + 1..w.rows).find(|&r| (t + 1..w.cols).any(|c| w.at(r, c) % p != 0));
            match bad {
                Some(r) => {
                    // Adding the row brings a non-multiple into the pivot row.
                    w.row_sub(t, r, -1, t);
                }
                None => break,
            }
        }
        diag.push(w.at(t, t).abs());
    }
    diag.resize(diag_len, 0);
    diag.into_iter()
        .map(|d| i64::try_from(d).expect("invariant factor exceeds i64"))
        .collect()
}

impl Work {
    /// Smallest nonzero entry in pivot row `t` or pivot column `t`.
    fn min_nonzero_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (self.at(t, t).abs(), t, t);
        for r in t + 1..self.rows {
            let v = self.at(r, t).abs();
            if v != 0 && (best.0 == 0 || v < best.0) {
                best = (v, r, t);
            }
        }
        for c in t + 1..self.cols {
            let v = self.at(t, c).abs();
            if v != 0 && (best.0 == 0 || v < best.0) {
                best = (v, t, c);
            }
        }
        (best.1, best.2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn snf(cols: usize, rows: Vec<Vec<i64>>) -> Vec<i64> {
        smith_normal_form(&IntMatrix::from_rows(cols, rows))
    }

    #[test]
    fn already_diagonal() {
        assert_eq!(snf(2, vec![vec![2, 0], vec![0, 4]]), [2, 4]);
    }

    #[test]
    fn rank_deficient() {
        // Row ops by hand: R2 - R1 = (1,1); swap, clear: diag(1, 0).
        assert_eq!(snf(2, vec![vec![2, 2], vec![3, 3]]), [1, 0]);
    }

    #[test]
    fn empty_matrix() {
        assert!(snf(0, vec![]).is_empty());
        assert_eq!(smith_normal_form(&IntMatrix::zeros(0, 3)), Vec::<i64>::new());
    }

    #[test]
    fn coprime_diagonal_becomes_chain() {
        assert_eq!(snf(2, vec![vec![2, 0], vec![0, 3]]), [1, 6]);
        assert_eq!(snf(3, vec![vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 10]]), [2, 2, 60]);
    }

    #[test]
    fn negative_entries_normalized() {
        assert_eq!(snf(1, vec![vec![-3]]), [3]);
    }
}
