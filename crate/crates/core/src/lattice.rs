//! Exact linear algebra over ℤ and GF(2).
//!
//! Integer row reduction decides whether a family of shift vectors spans ℤ^d
//! (connectivity of the periodic graph), and a small GF(2) solver handles the
//! parity systems behind precise points and periodic 2-colorings.

/// Row-style Hermite normal form of the lattice spanned by `rows` in ℤ^dim.
///
/// Returns the nonzero rows: upper triangular, positive pivots, entries above
/// each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(rows: &[Vec<i64>], dim: usize) -> Vec<Vec<i128>> {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .filter(|r: &Vec<i128>| r.iter().any(|&x| x != 0))
        .collect();
    let mut pivot_row = 0;
    for col in 0..dim {
        if pivot_row >= m.len() {
            break;
        }
        // Euclid on column `col` among rows pivot_row.. until one nonzero entry remains.
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..m.len() {
                if m[r][col] != 0 && best.is_none_or(|b| m[r][col].abs() < m[b][col].abs()) {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            m.swap(pivot_row, b);
            let mut done = true;
            for r in pivot_row + 1..m.len() {
                let q = m[r][col].div_euclid(m[pivot_row][col]);
                if q != 0 {
                    for c in col..dim {
                        m[r][c] -= q * m[pivot_row][c];
                    }
                }
                if m[r][col] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[pivot_row][col] == 0 {
            continue;
        }
        if m[pivot_row][col] < 0 {
            for c in col..dim {
                m[pivot_row][c] = -m[pivot_row][c];
            }
        }
        let p = m[pivot_row][col];
        for r in 0..pivot_row {
            let q = m[r][col].div_euclid(p);
            if q != 0 {
                for c in col..dim {
                    m[r][c] -= q * m[pivot_row][c];
                }
            }
        }
        pivot_row += 1;
    }
    m.truncate(pivot_row);
    m.retain(|r| r.iter().any(|&x| x != 0));
    m
}

/// Index of the sublattice spanned by `vectors` in ℤ^dim, or `None` when the
/// span has rank below `dim`. An index of 1 means the vectors generate ℤ^dim.
pub fn sublattice_index(vectors: &[Vec<i64>], dim: usize) -> Option<u64> {
    let h = hermite_normal_form(vectors, dim);
    if h.len() < dim {
        return None;
    }
    let det: i128 = (0..dim).map(|i| h[i][i]).product();
    Some(det.unsigned_abs() as u64)
}

/// Dense linear system over GF(2), one bit-packed row per equation.
#[derive(Debug, Clone)]
pub struct Gf2System {
    ncols: usize,
    rows: Vec<(Vec<u64>, bool)>,
}

impl Gf2System {
    pub fn new(ncols: usize) -> Self {
        Self { ncols, rows: Vec::new() }
    }

    fn words(&self) -> usize {
        self.ncols.div_ceil(64).max(1)
    }

    /// Adds the equation Σ_{i ∈ ones} x_i = rhs. Repeated indices cancel.
    pub fn push(&mut self, ones: impl IntoIterator<Item = usize>, rhs: bool) {
        let mut row = vec![0u64; self.words()];
        for i in ones {
            assert!(i < self.ncols, "column {i} out of range");
            row[i / 64] ^= 1 << (i % 64);
        }
        self.rows.push((row, rhs));
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Gauss-Jordan elimination. Returns one solution (free variables set to
    /// zero) or `None` if the system is inconsistent.
    pub fn solve(&self) -> Option<Vec<bool>> {
        let mut rows = self.rows.clone();
        let bit = |r: &Vec<u64>, c: usize| (r[c / 64] >> (c % 64)) & 1 == 1;
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.ncols {
            let Some(p) = (next..rows.len()).find(|&r| bit(&rows[r].0, col)) else {
                continue;
            };
            rows.swap(next, p);
            let (prow, prhs) = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && bit(&row.0, col) {
                    for (w, pw) in row.0.iter_mut().zip(&prow) {
                        *w ^= pw;
                    }
                    row.1 ^= prhs;
                }
            }
            pivots.push(col);
            next += 1;
        }
        if rows[next..].iter().any(|(_, rhs)| *rhs) {
            return None;
        }
        let mut x = vec![false; self.ncols];
        for (r, &col) in pivots.iter().enumerate() {
            x[col] = rows[r].1;
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_of_unit_vectors() {
        let h = hermite_normal_form(&[vec![0, 1], vec![1, 0]], 2);
        assert_eq!(h, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn index_of_even_sublattice() {
        assert_eq!(sublattice_index(&[vec![2]], 1), Some(2));
        assert_eq!(sublattice_index(&[vec![4], vec![6]], 1), Some(2));
        assert_eq!(sublattice_index(&[vec![2, 1], vec![0, 3]], 2), Some(6));
        assert_eq!(sublattice_index(&[vec![1, 1], vec![1, -1]], 2), Some(2));
        assert_eq!(sublattice_index(&[vec![1, 1], vec![2, 3]], 2), Some(1));
    }

    #[test]
    fn rank_deficient_span() {
        assert_eq!(sublattice_index(&[vec![1, 1], vec![2, 2]], 2), None);
        assert_eq!(sublattice_index(&[], 1), None);
    }

    #[test]
    fn gf2_inconsistent_triangle() {
        let mut s = Gf2System::new(2);
        s.push([0], true);
        s.push([1], true);
        s.push([0, 1], true);
        assert!(s.solve().is_none());
    }

    #[test]
    fn gf2_solution_satisfies_system() {
        let mut s = Gf2System::new(3);
        s.push([0, 1], true);
        s.push([1, 2], false);
        s.push([0, 0, 2], true);
        let x = s.solve().unwrap();
        assert!(x[0] ^ x[1]);
        assert!(!(x[1] ^ x[2]));
        assert!(x[2]);
    }
}
