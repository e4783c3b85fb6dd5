//! Exact integer matrices and the Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A dense row-major matrix of unbounded integers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of equal length. `cols` is needed so that
    /// matrices with no rows keep their shape.
    pub fn from_rows<T: Into<BigInt> + Clone>(cols: usize, rows: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(
                row.len(),
                cols,
                "row {i} has length {}, expected {cols}",
                row.len()
            );
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = v.clone().into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = &self[(i, j)];
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * q;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * q;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
            }
            prev = m[(k, k)].clone();
        }
        sign * &m[(n - 1, n - 1)]
    }

    pub fn rank(&self) -> usize {
        smith_normal_form(self).rank
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of range"
        );
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i},{j}) out of range"
        );
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntegerMatrix {
    /// `rows cols` header, then one whitespace-separated row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Smith normal form `left * A * right = diag(d_1, ..., d_r, 0, ...)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SmithForm {
    /// Positive invariant factors, each dividing the next.
    pub divisors: Vec<BigInt>,
    pub rank: usize,
    pub left: Option<IntegerMatrix>,
    pub right: Option<IntegerMatrix>,
}

impl SmithForm {
    /// The diagonal matrix of the given shape.
    pub fn diagonal(&self, rows: usize, cols: usize) -> IntegerMatrix {
        let mut d = IntegerMatrix::zeros(rows, cols);
        for (i, v) in self.divisors.iter().enumerate() {
            d[(i, i)] = v.clone();
        }
        d
    }
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SmithForm {
    let (divisors, _) = reduce(a, false);
    SmithForm {
        rank: divisors.len(),
        divisors,
        left: None,
        right: None,
    }
}

pub fn smith_normal_form_with_transforms(a: &IntegerMatrix) -> SmithForm {
    let (divisors, transforms) = reduce(a, true);
    let (left, right) = transforms.expect("transforms requested");
    SmithForm {
        rank: divisors.len(),
        divisors,
        left: Some(left),
        right: Some(right),
    }
}

struct Work {
    m: IntegerMatrix,
    left: Option<IntegerMatrix>,
    right: Option<IntegerMatrix>,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        if let Some(l) = &mut self.left {
            l.swap_rows(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        if let Some(r) = &mut self.right {
            r.swap_cols(a, b);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.m.add_row(dst, src, q);
        if let Some(l) = &mut self.left {
            l.add_row(dst, src, q);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.m.add_col(dst, src, q);
        if let Some(r) = &mut self.right {
            r.add_col(dst, src, q);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.m.negate_row(i);
        if let Some(l) = &mut self.left {
            l.negate_row(i);
        }
    }
}

type Transforms = Option<(IntegerMatrix, IntegerMatrix)>;

fn reduce(a: &IntegerMatrix, transforms: bool) -> (Vec<BigInt>, Transforms) {
    let (rows, cols) = (a.rows(), a.cols());
    let mut w = Work {
        m: a.clone(),
        left: transforms.then(|| IntegerMatrix::identity(rows)),
        right: transforms.then(|| IntegerMatrix::identity(cols)),
    };
    let mut divisors = Vec::new();
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&ij| !w.m[ij].is_zero())
            .min_by(|&x, &y| w.m[x].abs().cmp(&w.m[y].abs()));
        let Some((pi, pj)) = pivot else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if w.m[(i, t)].is_zero() {
                    continue;
                }
                let q = w.m[(i, t)].div_floor(&w.m[(t, t)]);
                w.add_row(i, t, &-q);
                if !w.m[(i, t)].is_zero() {
                    if w.m[(i, t)].abs() < w.m[(t, t)].abs() {
                        w.swap_rows(i, t);
                    }
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if w.m[(t, j)].is_zero() {
                    continue;
                }
                let q = w.m[(t, j)].div_floor(&w.m[(t, t)]);
                w.add_col(j, t, &-q);
                if !w.m[(t, j)].is_zero() {
                    if w.m[(t, j)].abs() < w.m[(t, t)].abs() {
                        w.swap_cols(j, t);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&ij| !w.m[ij].is_multiple_of(&w.m[(t, t)]));
            match bad {
                Some((i, _)) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.m[(t, t)].is_negative() {
            w.negate_row(t);
        }
        divisors.push(w.m[(t, t)].clone());
    }
    let transforms = match (w.left, w.right) {
        (Some(l), Some(r)) => Some((l, r)),
        _ => None,
    };
    (divisors, transforms)
}

/// A finitely generated abelian group `Z^free_rank + sum Z/t_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbelianGroup {
    pub free_rank: usize,
    /// Invariant factors greater than one, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    /// Cokernel of the map `Z^cols -> Z^rows` given by `a`.
    pub fn cokernel(a: &IntegerMatrix) -> Self {
        let snf = smith_normal_form(a);
        AbelianGroup {
            free_rank: a.rows() - snf.rank,
            torsion: snf.divisors.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// Rank over the field with two elements.
pub fn rank_gf2(rows: &[Vec<bool>]) -> usize {
    let mut m: Vec<Vec<bool>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c]) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && m[i][c] {
                let pivot = m[rank].clone();
                for (x, y) in m[i].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(cols: usize, rows: &[&[i64]]) -> IntegerMatrix {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        IntegerMatrix::from_rows(cols, &rows)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn diag_two_three() {
        let s = smith_normal_form(&m(2, &[&[2, 0], &[0, 3]]));
        assert_eq!(s.divisors, ints(&[1, 6]));
    }

    #[test]
    fn identity_three() {
        let s = smith_normal_form(&IntegerMatrix::identity(3));
        assert_eq!((s.rank, s.divisors), (3, ints(&[1, 1, 1])));
    }

    #[test]
    fn transforms_reproduce_diagonal() {
        let a = m(3, &[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_normal_form_with_transforms(&a);
        assert_eq!(s.divisors, ints(&[2, 6, 12]));
        let (l, r) = (s.left.as_ref().unwrap(), s.right.as_ref().unwrap());
        assert_eq!(l.mul(&a).mul(r), s.diagonal(3, 3));
        assert!(l.determinant().abs().is_one());
        assert!(r.determinant().abs().is_one());
    }

    #[test]
    fn empty_and_zero_matrices() {
        assert_eq!(smith_normal_form(&IntegerMatrix::zeros(0, 0)).rank, 0);
        assert_eq!(smith_normal_form(&IntegerMatrix::zeros(2, 3)).rank, 0);
        assert_eq!(IntegerMatrix::zeros(0, 0).determinant(), BigInt::one());
    }

    #[test]
    fn bareiss_matches_small_cases() {
        assert_eq!(m(2, &[&[1, 1], &[1, 2]]).determinant(), BigInt::from(1));
        assert_eq!(m(2, &[&[2, 0], &[0, 1]]).determinant(), BigInt::from(2));
        assert_eq!(
            m(3, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]).determinant(),
            BigInt::from(-1)
        );
        assert_eq!(m(2, &[&[0, 0], &[0, 1]]).determinant(), BigInt::zero());
    }

    #[test]
    fn cokernel_display() {
        let g = AbelianGroup::cokernel(&m(2, &[&[2, 0], &[0, 0], &[0, 3]]));
        assert_eq!(g.to_string(), "Z + Z/6");
        assert_eq!(
            AbelianGroup::cokernel(&IntegerMatrix::identity(2)).to_string(),
            "0"
        );
    }

    #[test]
    fn gf2_rank() {
        let t = true;
        let f = false;
        assert_eq!(rank_gf2(&[vec![t, t, f], vec![f, t, t], vec![t, f, t]]), 2);
        assert_eq!(rank_gf2(&[vec![t, t], vec![f, t]]), 2);
        assert_eq!(rank_gf2(&[]), 0);
    }
}
