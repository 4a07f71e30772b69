//! Rational canonical form over GF(2^m), computed deterministically with an
//! explicit change of basis.
//!
//! The decomposition is the classical cyclic one: find a vector of maximal
//! order, split off its Krylov space with an invariant complement built from
//! a dual functional, and recurse on the restriction. Invariant factors come
//! out in ascending divisibility order with the minimal polynomial last.

use crate::error::{Error, Result};
use crate::gf2m::{Fe, FieldSpec};
use crate::matrix::Mat;
use crate::polyring::Poly;

/// Companion matrix of a monic polynomial of degree >= 1: ones on the
/// subdiagonal, coefficients of the polynomial down the last column.
pub fn companion_of(f: &Poly) -> Result<Mat> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = f.degree().unwrap();
    if n == 0 {
        return Err(Error::InvalidDegree);
    }
    let field = f.field();
    let mut c = Mat::zeros(field, n, n);
    for i in 1..n {
        c.set(i, i - 1, Fe::ONE);
    }
    for i in 0..n {
        c.set(i, n - 1, f.coeff(i));
    }
    Ok(c)
}

/// Evaluate f at a square matrix by Horner's rule.
pub fn poly_at_matrix(f: &Poly, a: &Mat) -> Result<Mat> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch);
    }
    let field = a.field();
    let n = a.n_rows();
    let mut acc = Mat::zeros(field, n, n);
    for i in (0..=f.degree().unwrap_or(0)).rev() {
        acc = a.mul(&acc)?;
        let c = f.coeff(i);
        for j in 0..n {
            acc.set(j, j, field.add(acc.get(j, j), c));
        }
    }
    Ok(acc)
}

/// f(A) x without forming f(A).
pub fn apply_poly(a: &Mat, f: &Poly, x: &[Fe]) -> Result<Vec<Fe>> {
    let field = a.field();
    let mut acc = vec![Fe::ZERO; x.len()];
    for i in (0..=f.degree().unwrap_or(0)).rev() {
        acc = a.apply(&acc)?;
        let c = f.coeff(i);
        for (av, &xv) in acc.iter_mut().zip(x) {
            *av = field.add(*av, field.mul(c, xv));
        }
    }
    Ok(acc)
}

/// Minimal monic g with g(A) x = 0, found at the first Krylov dependence.
pub fn ann_of_vector(a: &Mat, x: &[Fe]) -> Result<Poly> {
    let field = a.field();
    let n = a.n_rows();
    if x.iter().all(|c| c.is_zero()) {
        return Ok(Poly::one(field));
    }
    let mut kry = vec![x.to_vec()];
    loop {
        let next = a.apply(kry.last().unwrap())?;
        let m = Mat::from_cols(field, n, &kry);
        let rhs = Mat::from_cols(field, n, std::slice::from_ref(&next));
        if let Some(sol) = m.solve(&rhs)? {
            // A^k x = sum c_i A^i x, so the annihilator is x^k + sum c_i x^i
            let mut coeffs: Vec<Fe> = (0..kry.len()).map(|i| sol.get(i, 0)).collect();
            coeffs.push(Fe::ONE);
            return Ok(Poly::new(field, coeffs));
        }
        kry.push(next);
    }
}

/// Largest monic divisor of g coprime to h.
fn h_free(g: &Poly, h: &Poly) -> Result<Poly> {
    let mut g = g.clone();
    loop {
        let d = g.gcd(h)?;
        if d.degree() == Some(0) {
            return Ok(g);
        }
        g = g.div_exact(&d)?;
    }
}

/// Split monic g, h into coprime monic u | g, v | h with u v = lcm(g, h).
/// For each irreducible the full multiplicity goes to whichever of g, h
/// carries more of it (ties to h). Uses only gcds, no factorization.
pub fn coprime_split(g: &Poly, h: &Poly) -> Result<(Poly, Poly)> {
    let g0 = h_free(g, h)?;
    let g1 = g.div_exact(&g0)?;
    let h0 = h_free(h, g)?;
    let c = g1.gcd(&h.div_exact(&h0)?)?;
    let g2 = g1.div_exact(&c)?;
    let gs = g1.div_exact(&h_free(&g1, &g2)?)?;
    let u = g0.mul(&gs)?;
    let v = h_free(h, &gs)?;
    Ok((u, v))
}

/// A vector whose annihilator is the minimal polynomial, together with that
/// annihilator. Deterministic: standard basis vectors are folded in order,
/// combined through `coprime_split`.
pub fn max_order_vector(a: &Mat) -> Result<(Vec<Fe>, Poly)> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch);
    }
    let field = a.field();
    let n = a.n_rows();
    let mut z = vec![Fe::ZERO; n];
    let mut g = Poly::one(field);
    for i in 0..n {
        if g.degree() == Some(n) {
            break;
        }
        let mut e = vec![Fe::ZERO; n];
        e[i] = Fe::ONE;
        let h = ann_of_vector(a, &e)?;
        if h.div_exact(&h.gcd(&g)?)?.degree() == Some(0) {
            continue; // h | g, nothing new
        }
        let (u, v) = coprime_split(&g, &h)?;
        let part1 = apply_poly(a, &g.div_exact(&u)?, &z)?;
        let part2 = apply_poly(a, &h.div_exact(&v)?, &e)?;
        z = part1
            .iter()
            .zip(&part2)
            .map(|(&x, &y)| field.add(x, y))
            .collect();
        g = u.mul(&v)?;
    }
    Ok((z, g))
}

pub fn minpoly(a: &Mat) -> Result<Poly> {
    Ok(max_order_vector(a)?.1)
}

/// Rational canonical form: `basis` is invertible with
/// basis^-1 * A * basis = companion(factors[0]) + ... + companion(factors[k]),
/// factors in ascending divisibility order (the last is the minimal
/// polynomial).
#[derive(Debug, Clone)]
pub struct RcfResult {
    pub factors: Vec<Poly>,
    pub basis: Mat,
}

impl RcfResult {
    pub fn form(&self, field: FieldSpec) -> Result<Mat> {
        let mut out = Mat::zeros(field, 0, 0);
        for f in &self.factors {
            out = out.direct_sum(&companion_of(f)?)?;
        }
        Ok(out)
    }
}

fn row_times_mat(field: FieldSpec, row: &[Fe], m: &Mat) -> Vec<Fe> {
    let mut out = vec![Fe::ZERO; m.n_cols()];
    for (i, &ri) in row.iter().enumerate() {
        if ri.is_zero() {
            continue;
        }
        for (j, o) in out.iter_mut().enumerate() {
            *o = field.add(*o, field.mul(ri, m.get(i, j)));
        }
    }
    out
}

pub fn rcf(a: &Mat) -> Result<RcfResult> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch);
    }
    let field = a.field();
    let n = a.n_rows();
    if n == 0 {
        return Ok(RcfResult {
            factors: vec![],
            basis: Mat::identity(field, 0),
        });
    }
    let (z, m) = max_order_vector(a)?;
    let d = m.degree().unwrap();
    let mut kry = vec![z];
    for _ in 1..d {
        kry.push(a.apply(kry.last().unwrap())?);
    }
    if d == n {
        return Ok(RcfResult {
            factors: vec![m],
            basis: Mat::from_cols(field, n, &kry),
        });
    }
    // Complete the Krylov columns to a basis with standard vectors, invert,
    // and read off the functional dual to A^(d-1) z.
    let mut cols = kry.clone();
    for i in 0..n {
        if cols.len() == n {
            break;
        }
        let mut e = vec![Fe::ZERO; n];
        e[i] = Fe::ONE;
        cols.push(e);
        if Mat::from_cols(field, n, &cols).rank() < cols.len() {
            cols.pop();
        }
    }
    let b = Mat::from_cols(field, n, &cols);
    let binv = b.inv()?;
    let mut phi: Vec<Fe> = (0..n).map(|j| binv.get(d - 1, j)).collect();
    // W = vectors killed by phi o A^j for all j; since A^d is a combination
    // of lower powers, j < d suffices and W is A-invariant.
    let mut constraint = Mat::zeros(field, d, n);
    for j in 0..d {
        for (c, &v) in phi.iter().enumerate() {
            constraint.set(j, c, v);
        }
        phi = row_times_mat(field, &phi, a);
    }
    let w = constraint.nullspace();
    if w.n_cols() != n - d {
        return Err(Error::ConstructionError);
    }
    let aw = a.mul(&w)?;
    let restricted = w.solve(&aw)?.ok_or(Error::ConstructionError)?;
    let sub = rcf(&restricted)?;
    let wq = w.mul(&sub.basis)?;
    let mut final_cols: Vec<Vec<Fe>> = (0..wq.n_cols()).map(|j| wq.col(j)).collect();
    final_cols.extend(kry);
    let mut factors = sub.factors;
    factors.push(m);
    Ok(RcfResult {
        factors,
        basis: Mat::from_cols(field, n, &final_cols),
    })
}

/// Product of the invariant factors.
pub fn charpoly(a: &Mat) -> Result<Poly> {
    let field = a.field();
    let mut out = Poly::one(field);
    for f in rcf(a)?.factors {
        out = out.mul(&f)?;
    }
    Ok(out)
}

/// For a cyclic (non-derogatory) matrix: the defining polynomial and a basis
/// P with P^-1 A P = companion. Errors with `NotCyclic` otherwise.
pub fn recompanion_cyclic(a: &Mat) -> Result<(Poly, Mat)> {
    let r = rcf(a)?;
    if r.factors.len() != 1 {
        return Err(Error::NotCyclic);
    }
    Ok((r.factors.into_iter().next().unwrap(), r.basis))
}
