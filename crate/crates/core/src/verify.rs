//! Independent certificate checking and brute-force oracles.
//!
//! Nothing here calls into the splitter or canonical modules: the minimal
//! polynomial is recomputed from scratch (first linear dependence among the
//! powers of D viewed as vectors), so a bug in the construction code cannot
//! hide from the checker.

use crate::error::{Error, Result};
use crate::gf2m::{Fe, FieldSpec};
use crate::matrix::Mat;
use crate::polyring::Poly;
use crate::splitter::{SplitCertificate, SplitMode};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub sum_ok: bool,
    pub square_zero_ok: bool,
    pub diagonalizable_ok: bool,
    pub potency_ok: bool,
    pub potency_claimed: u64,
    pub eigenvalues: Vec<(Fe, usize)>,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn all_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Minimal polynomial computed independently of the canonical module: stack
/// I, D, D², … as n²-vectors and stop at the first linear dependence.
pub fn independent_minpoly(d: &Mat) -> Result<Poly> {
    if !d.is_square() {
        return Err(Error::DimensionMismatch);
    }
    let field = d.field();
    let n = d.n_rows();
    if n == 0 {
        return Ok(Poly::one(field));
    }
    let flatten = |m: &Mat| -> Vec<Fe> {
        let mut v = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                v.push(m.get(i, j));
            }
        }
        v
    };
    let mut powers = vec![flatten(&Mat::identity(field, n))];
    let mut cur = Mat::identity(field, n);
    loop {
        cur = cur.mul(d)?;
        let target = flatten(&cur);
        let lhs = Mat::from_cols(field, n * n, &powers);
        let rhs = Mat::from_cols(field, n * n, std::slice::from_ref(&target));
        if let Some(sol) = lhs.solve(&rhs)? {
            let mut coeffs: Vec<Fe> = (0..powers.len()).map(|i| sol.get(i, 0)).collect();
            coeffs.push(Fe::ONE);
            return Ok(Poly::new(field, coeffs));
        }
        powers.push(target);
    }
}

/// Re-derive every claim of the certificate from A, N, D alone.
pub fn check_certificate(a: &Mat, cert: &SplitCertificate) -> CheckReport {
    let mut failures = Vec::new();
    let field = a.field();
    let dims_ok = cert.n_mat.n_rows() == a.n_rows()
        && cert.d_mat.n_rows() == a.n_rows()
        && cert.n_mat.field() == field
        && cert.d_mat.field() == field;
    let sum_ok = dims_ok
        && cert
            .n_mat
            .add(&cert.d_mat)
            .map(|s| &s == a)
            .unwrap_or(false);
    if !sum_ok {
        failures.push("sum".to_string());
    }
    let square_zero_ok = cert
        .n_mat
        .mul(&cert.n_mat)
        .map(|s| s.is_zero())
        .unwrap_or(false);
    if !square_zero_ok {
        failures.push("square_zero".to_string());
    }
    let potency_claimed = cert.potency_s.unwrap_or(field.q());
    let potency_ok = cert
        .d_mat
        .pow(potency_claimed)
        .map(|p| p == cert.d_mat)
        .unwrap_or(false);
    let mut diagonalizable_ok = true;
    let mut eigenvalues = Vec::new();
    match cert.mode {
        SplitMode::DiagSplit => {
            match independent_minpoly(&cert.d_mat) {
                Ok(mp) => {
                    diagonalizable_ok = a.n_rows() == 0 || mp.splits_distinct().unwrap_or(false);
                    if diagonalizable_ok {
                        if let Ok(roots) = mp.roots() {
                            eigenvalues = roots;
                        }
                    }
                }
                Err(_) => diagonalizable_ok = false,
            }
            if !diagonalizable_ok {
                failures.push("diagonalizable".to_string());
            }
            if !potency_ok {
                failures.push("potency".to_string());
            }
        }
        SplitMode::Potent4F2 | SplitMode::PotentSubfield => {
            if !potency_ok {
                failures.push("potency".to_string());
            }
        }
    }
    CheckReport {
        sum_ok,
        square_zero_ok,
        diagonalizable_ok,
        potency_ok,
        potency_claimed,
        eigenvalues,
        failures,
    }
}

const BF_MAX_ORDER: usize = 4;

fn bb_mul(x: u16, y: u16, n: usize) -> u16 {
    let mask = (1u32 << n) - 1;
    let mut out = 0u16;
    for i in 0..n {
        let mut row = 0u32;
        for j in 0..n {
            if (x >> (i * n + j)) & 1 == 1 {
                row ^= (y as u32 >> (j * n)) & mask;
            }
        }
        out |= (row as u16) << (i * n);
    }
    out
}

fn bb_pow(x: u16, e: u32, n: usize) -> u16 {
    let mut id = 0u16;
    for i in 0..n {
        id |= 1 << (i * n + i);
    }
    let mut acc = id;
    for _ in 0..e {
        acc = bb_mul(acc, x, n);
    }
    acc
}

fn to_bits(m: &Mat) -> u16 {
    let n = m.n_rows();
    let mut bits = 0u16;
    for i in 0..n {
        for j in 0..n {
            if m.get(i, j) == Fe::ONE {
                bits |= 1 << (i * n + j);
            }
        }
    }
    bits
}

fn from_bits(field: FieldSpec, n: usize, bits: u16) -> Mat {
    Mat::from_fn(field, n, n, |i, j| Fe(((bits >> (i * n + j)) & 1) as u64))
}

/// Exhaustive search over GF(2): does A = E + N with E^potency = E and
/// N^nil_index_max = 0 exist? First witness in bit-pattern order of E.
pub fn brute_force_exists(
    a: &Mat,
    nil_index_max: u32,
    potency: u32,
) -> Result<(bool, Option<Mat>)> {
    let field = a.field();
    if field.m() != 1 {
        return Err(Error::FieldMismatch);
    }
    if !a.is_square() || a.n_rows() > BF_MAX_ORDER {
        return Err(Error::SearchSpaceLimit);
    }
    if !matches!(potency, 2 | 4) || !matches!(nil_index_max, 2 | 3 | 4) {
        return Err(Error::SearchSpaceLimit);
    }
    let n = a.n_rows();
    let abits = to_bits(a);
    for e in 0u32..1 << (n * n) {
        let e = e as u16;
        if bb_pow(e, potency, n) != e {
            continue;
        }
        let nb = abits ^ e;
        if bb_pow(nb, nil_index_max, n) == 0 {
            return Ok((true, Some(from_bits(field, n, e))));
        }
    }
    Ok((false, None))
}

/// All square-zero matrices of the given order, streamed in canonical
/// (base-q digit) enumeration order.
pub fn enumerate_square_zero(
    n: usize,
    field: FieldSpec,
) -> Result<impl Iterator<Item = Mat>> {
    let cells = (n * n) as u32;
    let total = field
        .q()
        .checked_pow(cells)
        .filter(|&t| t <= 1 << 24)
        .ok_or(Error::SearchSpaceLimit)?;
    let q = field.q();
    Ok((0..total).filter_map(move |idx| {
        let mut rem = idx;
        let m = Mat::from_fn(field, n, n, |_, _| {
            let digit = rem % q;
            rem /= q;
            Fe(digit)
        });
        if m.mul(&m).unwrap().is_zero() {
            Some(m)
        } else {
            None
        }
    }))
}
