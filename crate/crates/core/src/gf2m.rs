//! Construction of GF(2^m) and exact element arithmetic.
//!
//! Elements are stored in the polynomial basis with bit-packed coefficients
//! (bit i = coefficient of x^i). Multiplication is a carry-less shift-xor
//! product followed by reduction modulo the field polynomial.

use crate::error::{Error, Result};

/// Smallest irreducible polynomial of each degree 1..=16, encoded with bit i
/// as the coefficient of x^i (leading bit included). Frozen so certificates
/// are reproducible across runs; see the regeneration test below.
const DEFAULT_MODULI: [u64; 16] = [
    0x2, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11b, 0x203, 0x409, 0x805, 0x1009, 0x201b, 0x4021,
    0x8003, 0x1002b,
];

pub const MAX_DEGREE: u32 = 16;

/// A field element of GF(2^m), valid only together with its `FieldSpec`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fe(pub u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A concrete finite field GF(2^m). Immutable after construction; all
/// operations are pure functions of their inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldSpec {
    m: u32,
    modulus: u64,
    q: u64,
}

fn poly_degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32 - if p == 0 { 64 } else { 0 }
}

/// Remainder of carry-less division of `a` by `m` (m != 0).
fn poly_mod(mut a: u64, m: u64) -> u64 {
    let dm = poly_degree(m);
    while a != 0 && poly_degree(a) >= dm {
        a ^= m << (poly_degree(a) - dm);
    }
    a
}

/// Irreducibility over F2 by trial division against every polynomial of
/// degree 1..=deg/2.
fn poly_irreducible(p: u64) -> bool {
    let d = poly_degree(p);
    if d < 1 {
        return false;
    }
    for q in 2u64..(1u64 << (d / 2 + 1)) {
        if poly_degree(q) < 1 {
            continue;
        }
        if poly_mod(p, q) == 0 {
            return false;
        }
    }
    true
}

/// Construct GF(2^m). Without an explicit modulus the frozen default for
/// that degree is used.
pub fn make_field(m: u32, modulus: Option<u64>) -> Result<FieldSpec> {
    if m == 0 || m > MAX_DEGREE {
        return Err(Error::InvalidDegree);
    }
    let modulus = match modulus {
        Some(p) => {
            if poly_degree(p) != m as i32 || !poly_irreducible(p) {
                return Err(Error::InvalidModulus);
            }
            p
        }
        None => DEFAULT_MODULI[(m - 1) as usize],
    };
    Ok(FieldSpec {
        m,
        modulus,
        q: 1u64 << m,
    })
}

impl FieldSpec {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Checked element constructor.
    pub fn el(&self, bits: u64) -> Fe {
        assert!(bits < self.q, "element out of range for GF(2^{})", self.m);
        Fe(bits)
    }

    pub fn contains(&self, x: Fe) -> bool {
        x.0 < self.q
    }

    /// Iterator over all field elements in canonical (bit-pattern) order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(Fe)
    }

    pub fn add(&self, x: Fe, y: Fe) -> Fe {
        Fe(x.0 ^ y.0)
    }

    pub fn mul(&self, x: Fe, y: Fe) -> Fe {
        let mut acc = 0u64;
        let (mut a, mut b) = (x.0, y.0);
        while b != 0 {
            if b & 1 != 0 {
                acc ^= a;
            }
            a <<= 1;
            b >>= 1;
        }
        Fe(poly_mod(acc, self.modulus))
    }

    pub fn pow(&self, x: Fe, mut e: u64) -> Fe {
        let mut base = x;
        let mut acc = Fe::ONE;
        while e != 0 {
            if e & 1 != 0 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: Fe) -> Result<Fe> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(x, self.q - 2))
    }

    /// The unique square root, via x^(2^(m-1)). Total on the field because
    /// the Frobenius map is bijective.
    pub fn sqrt(&self, x: Fe) -> Fe {
        self.pow(x, 1u64 << (self.m - 1))
    }

    /// True iff x lies in the subfield of cardinality 2^d, i.e. x^(2^d) = x.
    pub fn in_subfield(&self, x: Fe, d: u32) -> Result<bool> {
        if d == 0 || self.m % d != 0 {
            return Err(Error::NotSubfield);
        }
        Ok(self.pow(x, 1u64 << d) == x)
    }

    /// Designation string used in all file formats and CLI flags,
    /// e.g. GF(4) is "gf(2^2)[modulus=0x7]".
    pub fn designation(&self) -> String {
        format!("gf(2^{})[modulus={:#x}]", self.m, self.modulus)
    }

    pub fn parse_designation(s: &str) -> Result<FieldSpec> {
        let s = s.trim();
        let body = s
            .strip_prefix("gf(2^")
            .ok_or_else(|| Error::Parse(format!("bad field designation: {s}")))?;
        let (m_str, rest) = body
            .split_once(')')
            .ok_or_else(|| Error::Parse(format!("bad field designation: {s}")))?;
        let m: u32 = m_str
            .parse()
            .map_err(|_| Error::Parse(format!("bad field degree: {m_str}")))?;
        let hex = rest
            .strip_prefix("[modulus=0x")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("bad field designation: {s}")))?;
        let modulus = u64::from_str_radix(hex, 16)
            .map_err(|_| Error::Parse(format!("bad modulus: {hex}")))?;
        make_field(m, Some(modulus))
    }
}
