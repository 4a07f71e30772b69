//! Exact univariate polynomial arithmetic over GF(2^m).
//!
//! A `Poly` keeps its coefficients low-to-high with a nonzero leading
//! coefficient; the zero polynomial has an empty coefficient vector.

use crate::error::{Error, Result};
use crate::gf2m::{Fe, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<Fe>,
}

impl Poly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<Fe>) -> Poly {
        while coeffs.last() == Some(&Fe::ZERO) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: FieldSpec) -> Poly {
        Poly {
            field,
            coeffs: vec![],
        }
    }

    pub fn one(field: FieldSpec) -> Poly {
        Poly::constant(field, Fe::ONE)
    }

    pub fn constant(field: FieldSpec, c: Fe) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn x(field: FieldSpec) -> Poly {
        Poly::new(field, vec![Fe::ZERO, Fe::ONE])
    }

    /// x^n + (lower terms from `tail`), the monic polynomial whose companion
    /// matrix has `tail` as its last column.
    pub fn monic_from_tail(field: FieldSpec, tail: &[Fe]) -> Poly {
        let mut coeffs = tail.to_vec();
        coeffs.push(Fe::ONE);
        Poly::new(field, coeffs)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Fe::ONE
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.field.add(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(Poly::new(self.field, coeffs))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.field));
        }
        let mut coeffs = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &ci) in self.coeffs.iter().enumerate() {
            for (j, &cj) in other.coeffs.iter().enumerate() {
                let p = self.field.mul(ci, cj);
                coeffs[i + j] = self.field.add(coeffs[i + j], p);
            }
        }
        Ok(Poly::new(self.field, coeffs))
    }

    pub fn scale(&self, c: Fe) -> Poly {
        Poly::new(
            self.field,
            self.coeffs.iter().map(|&x| self.field.mul(x, c)).collect(),
        )
    }

    /// (quotient, remainder) with deg(remainder) < deg(divisor).
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = self.field;
        let dlead_inv = f.inv(divisor.leading())?;
        let dd = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Fe::ZERO; self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = f.mul(*rem.last().unwrap(), dlead_inv);
            if !c.is_zero() {
                quot[k] = c;
                for (i, &dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] = f.add(rem[k + i], f.mul(c, dc));
                }
            }
            rem.pop();
        }
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    /// Exact division; panics if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(divisor)?;
        assert!(r.is_zero(), "div_exact with nonzero remainder");
        Ok(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return Ok(a);
        }
        let linv = self.field.inv(a.leading())?;
        Ok(a.scale(linv))
    }

    pub fn eval(&self, x: Fe) -> Fe {
        let mut acc = Fe::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = self.field.add(self.field.mul(acc, x), c);
        }
        acc
    }

    /// f(x + b), expanded over the field. An involution in characteristic 2.
    pub fn shift(&self, b: Fe) -> Poly {
        let f = self.field;
        let mut acc = Poly::zero(f);
        let xb = Poly::new(f, vec![b, Fe::ONE]);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(&xb).unwrap().add(&Poly::constant(f, c)).unwrap();
        }
        acc
    }

    /// Formal derivative. Diagnostic only: in characteristic 2 it can vanish
    /// for non-constant polynomials (every even-degree term drops).
    pub fn derivative(&self) -> Poly {
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| if i % 2 == 1 { c } else { Fe::ZERO })
            .collect();
        Poly::new(f, coeffs)
    }

    /// True iff f splits over GF(q) with distinct roots, tested as
    /// f | x^q - x (x^q computed modulo f by repeated squaring).
    pub fn splits_distinct(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        let f = self.field;
        let x = Poly::x(f);
        let (_, mut r) = x.divrem(self)?;
        for _ in 0..f.m() {
            let sq = r.mul(&r)?;
            r = sq.divrem(self)?.1;
        }
        let (_, x_mod) = x.divrem(self)?;
        Ok(r == x_mod)
    }

    /// All roots in the field with multiplicities, by exhaustive scan and
    /// deflation. Ordered by bit pattern of the root.
    pub fn roots(&self) -> Result<Vec<(Fe, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = self.field;
        if f.q() > 1 << 16 {
            return Err(Error::FieldScanLimit);
        }
        let mut out = Vec::new();
        let mut cur = self.clone();
        for r in f.elements() {
            let mut mult = 0;
            while !cur.degree().map_or(true, |d| d == 0) && cur.eval(r).is_zero() {
                let lin = Poly::new(f, vec![r, Fe::ONE]);
                cur = cur.div_exact(&lin)?;
                mult += 1;
            }
            if mult > 0 {
                out.push((r, mult));
            }
        }
        Ok(out)
    }

    /// Comma-separated coefficients low-to-high, elements in hexadecimal
    /// ("1,0,0,1,1" = x^4 + x^3 + 1 over GF(2)).
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| format!("{:x}", c.0))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn from_text(field: FieldSpec, s: &str) -> Result<Poly> {
        let mut coeffs = Vec::new();
        for tok in s.trim().split(',') {
            let bits = u64::from_str_radix(tok.trim(), 16)
                .map_err(|_| Error::Parse(format!("bad coefficient: {tok}")))?;
            if bits >= field.q() {
                return Err(Error::Parse(format!("coefficient out of field: {tok}")));
            }
            coeffs.push(Fe(bits));
        }
        Ok(Poly::new(field, coeffs))
    }
}
