//! Dense exact matrices over GF(2^m): arithmetic, Gaussian elimination,
//! direct sums and conjugation. Column-vector convention: matrices act on
//! the left, e_i is the i-th standard column.

use crate::error::{Error, Result};
use crate::gf2m::{Fe, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    entries: Vec<Fe>,
}

impl Mat {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            field,
            entries: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Fe,
    ) -> Mat {
        let mut m = Mat::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Square matrix from row-major bit patterns; for tests and fixtures.
    pub fn from_rows(field: FieldSpec, rows: &[&[u64]]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Mat::from_fn(field, r, c, |i, j| field.el(rows[i][j]))
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    fn check_same_field(&self, other: &Mat) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.check_same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch);
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries,
        })
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        self.check_same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch);
        }
        let f = self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(aik, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: Fe) -> Mat {
        let entries = self.entries.iter().map(|&x| self.field.mul(x, c)).collect();
        Mat {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries,
        }
    }

    pub fn pow(&self, mut e: u64) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch);
        }
        let mut base = self.clone();
        let mut acc = Mat::identity(self.field, self.rows);
        while e != 0 {
            if e & 1 != 0 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e != 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Fe {
        let mut t = Fe::ZERO;
        for i in 0..self.rows.min(self.cols) {
            t = self.field.add(t, self.get(i, i));
        }
        t
    }

    pub fn direct_sum(&self, other: &Mat) -> Result<Mat> {
        self.check_same_field(other)?;
        let mut out = Mat::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        Ok(out)
    }

    /// Matrix-vector product (column vector).
    pub fn apply(&self, v: &[Fe]) -> Result<Vec<Fe>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch);
        }
        let f = self.field;
        let mut out = vec![Fe::ZERO; self.rows];
        for i in 0..self.rows {
            let mut acc = Fe::ZERO;
            for j in 0..self.cols {
                acc = f.add(acc, f.mul(self.get(i, j), v[j]));
            }
            out[i] = acc;
        }
        Ok(out)
    }

    pub fn col(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn from_cols(field: FieldSpec, rows: usize, cols: &[Vec<Fe>]) -> Mat {
        Mat::from_fn(field, rows, cols.len(), |i, j| cols[j][i])
    }

    /// Row-reduce in place to reduced row echelon form; returns pivot columns.
    /// Pivots on the first nonzero entry in column order.
    fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    let t = self.get(r, j);
                    self.set(r, j, self.get(p, j));
                    self.set(p, j, t);
                }
            }
            let inv = f.inv(self.get(r, c)).unwrap();
            for j in 0..self.cols {
                self.set(r, j, f.mul(self.get(r, j), inv));
            }
            for i in 0..self.rows {
                if i != r && !self.get(i, c).is_zero() {
                    let factor = self.get(i, c);
                    for j in 0..self.cols {
                        let v = f.add(self.get(i, j), f.mul(factor, self.get(r, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.rref().len()
    }

    /// Canonical basis of the right kernel, as columns.
    pub fn nullspace(&self) -> Mat {
        let mut work = self.clone();
        let pivots = work.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Mat::zeros(self.field, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, Fe::ONE);
            for (r, &pc) in pivots.iter().enumerate() {
                basis.set(pc, k, work.get(r, fc));
            }
        }
        basis
    }

    pub fn inv(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch);
        }
        let n = self.rows;
        let mut aug = Mat::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, Fe::ONE);
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(Mat::from_fn(self.field, n, n, |i, j| aug.get(i, n + j)))
    }

    /// Solve self * X = rhs exactly. Requires every rhs column to lie in the
    /// column space; returns None otherwise.
    pub fn solve(&self, rhs: &Mat) -> Result<Option<Mat>> {
        self.check_same_field(rhs)?;
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch);
        }
        let mut aug = Mat::zeros(self.field, self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            for j in 0..rhs.cols {
                aug.set(i, self.cols + j, rhs.get(i, j));
            }
        }
        let pivots = aug.rref();
        // inconsistent if any pivot lands in the rhs block
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Mat::zeros(self.field, self.cols, rhs.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, aug.get(r, self.cols + j));
            }
        }
        Ok(Some(x))
    }

    /// P * M * P^-1.
    pub fn conjugate(p: &Mat, m: &Mat) -> Result<Mat> {
        let pinv = p.inv()?;
        p.mul(m)?.mul(&pinv)
    }

    /// Text format: header "field <designation>", "n <order>", then n rows of
    /// hexadecimal entries. Bit-exact round trip.
    pub fn to_text(&self) -> String {
        assert!(self.is_square(), "matrix file format is square-only");
        let mut s = format!("field {}\nn {}\n", self.field.designation(), self.rows);
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{:x}", self.get(i, j).0)).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(s: &str) -> Result<Mat> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let field_line = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
        let designation = field_line
            .trim()
            .strip_prefix("field ")
            .ok_or_else(|| Error::Parse(format!("line 1: expected 'field ...', got '{field_line}'")))?;
        let field = FieldSpec::parse_designation(designation)?;
        let n_line = lines.next().ok_or_else(|| Error::Parse("missing 'n <order>' line".into()))?;
        let n: usize = n_line
            .trim()
            .strip_prefix("n ")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("line 2: expected 'n <order>', got '{n_line}'")))?;
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("line {}: missing matrix row", i + 3)))?;
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != n {
                return Err(Error::Parse(format!(
                    "line {}: expected {} entries, got {}",
                    i + 3,
                    n,
                    toks.len()
                )));
            }
            for (j, tok) in toks.iter().enumerate() {
                let bits = u64::from_str_radix(tok, 16)
                    .map_err(|_| Error::Parse(format!("line {}: bad entry '{tok}'", i + 3)))?;
                if bits >= field.q() {
                    return Err(Error::Parse(format!(
                        "line {}: entry '{tok}' out of field",
                        i + 3
                    )));
                }
                m.set(i, j, Fe(bits));
            }
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2m::make_field;

    fn gf(m: u32) -> FieldSpec {
        make_field(m, None).unwrap()
    }

    fn rand_mat(field: FieldSpec, n: usize, seed: &mut u64) -> Mat {
        Mat::from_fn(field, n, n, |_, _| {
            *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            Fe((*seed >> 33) % field.q())
        })
    }

    #[test]
    fn pow_zero_is_identity() {
        let f = gf(2);
        let m = Mat::from_rows(f, &[&[2, 1], &[3, 0]]);
        assert_eq!(m.pow(0).unwrap(), Mat::identity(f, 2));
    }

    #[test]
    fn diagonal_inverse_gf4() {
        let f = gf(2);
        let m = Mat::from_rows(f, &[&[2, 0], &[0, 3]]);
        assert_eq!(m.inv().unwrap(), Mat::from_rows(f, &[&[3, 0], &[0, 2]]));
        assert_eq!(Mat::identity(f, 3).inv().unwrap(), Mat::identity(f, 3));
    }

    #[test]
    fn singular_detected() {
        let f = gf(1);
        let m = Mat::from_rows(f, &[&[1, 1], &[1, 1]]);
        assert_eq!(m.inv(), Err(Error::Singular));
    }

    #[test]
    fn direct_sum_and_trace() {
        let f = gf(1);
        let a = Mat::from_rows(f, &[&[1]]);
        let b = Mat::from_rows(f, &[&[0]]);
        let s = a.direct_sum(&b).unwrap();
        assert_eq!(s, Mat::from_rows(f, &[&[1, 0], &[0, 0]]));
        assert_eq!(s.trace(), Fe::ONE);
    }

    #[test]
    fn ster_a_trace_is_one() {
        let f = gf(1);
        let a = Mat::from_rows(
            f,
            &[&[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 1]],
        );
        assert_eq!(a.trace(), Fe::ONE);
    }

    #[test]
    fn inverse_round_trip_randomized() {
        let mut seed = 42u64;
        for m in [1u32, 2, 3] {
            let f = gf(m);
            for n in 1..=6 {
                for _ in 0..20 {
                    let a = rand_mat(f, n, &mut seed);
                    match a.inv() {
                        Ok(ainv) => {
                            assert_eq!(a.mul(&ainv).unwrap(), Mat::identity(f, n));
                        }
                        Err(Error::Singular) => assert!(a.rank() < n),
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }

    #[test]
    fn rank_nullity() {
        let f = gf(1);
        // exhaustive over 2x2 matrices over GF(2)
        for bits in 0u64..16 {
            let m = Mat::from_fn(f, 2, 2, |i, j| Fe((bits >> (2 * i + j)) & 1));
            let ns = m.nullspace();
            assert_eq!(m.rank() + ns.n_cols(), 2);
            if ns.n_cols() > 0 {
                assert!(m.mul(&ns).unwrap().is_zero());
            }
        }
        let mut seed = 5u64;
        let f8 = gf(3);
        for _ in 0..30 {
            let m = rand_mat(f8, 5, &mut seed);
            let ns = m.nullspace();
            assert_eq!(m.rank() + ns.n_cols(), 5);
            if ns.n_cols() > 0 {
                assert!(m.mul(&ns).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn conjugation_preserves_trace_and_square_zero() {
        let f = gf(2);
        let mut seed = 77u64;
        for _ in 0..30 {
            let p = rand_mat(f, 4, &mut seed);
            if p.inv().is_err() {
                continue;
            }
            let m = rand_mat(f, 4, &mut seed);
            let conj = Mat::conjugate(&p, &m).unwrap();
            assert_eq!(conj.trace(), m.trace());
            assert_eq!(Mat::conjugate(&Mat::identity(f, 4), &m).unwrap(), m);
            // square-zero is a similarity invariant
            let n = rand_mat(f, 4, &mut seed);
            if n.mul(&n).unwrap().is_zero() {
                let cn = Mat::conjugate(&p, &n).unwrap();
                assert!(cn.mul(&cn).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn block_power_identity() {
        let f = gf(3);
        let mut seed = 11u64;
        let a = rand_mat(f, 3, &mut seed);
        let b = rand_mat(f, 2, &mut seed);
        let s = a.direct_sum(&b).unwrap();
        let k = 5;
        assert_eq!(
            s.pow(k).unwrap(),
            a.pow(k).unwrap().direct_sum(&b.pow(k).unwrap()).unwrap()
        );
        assert!(s.add(&s).unwrap().is_zero());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = gf(2);
        let mut seed = 13u64;
        let w = Mat::from_fn(f, 4, 2, |i, j| {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(99);
            let _ = (i, j);
            Fe((seed >> 30) % 4)
        });
        if w.rank() == 2 {
            let x = Mat::from_rows(f, &[&[1, 2], &[3, 0]]);
            let rhs = w.mul(&x).unwrap();
            let sol = w.solve(&rhs).unwrap().unwrap();
            assert_eq!(w.mul(&sol).unwrap(), rhs);
        }
    }

    #[test]
    fn text_round_trip() {
        let f = gf(2);
        let mut seed = 3u64;
        let m = rand_mat(f, 4, &mut seed);
        let s = m.to_text();
        assert_eq!(Mat::from_text(&s).unwrap(), m);
        assert!(s.starts_with("field gf(2^2)[modulus=0x7]\nn 4\n"));
    }
}
