//! Constructive decompositions A = N + D with N square-zero.
//!
//! Companion blocks of order <= 4 have explicit splits; orders >= 5 are
//! normalized by a trace scale/shift, re-companioned, and covered by a
//! residue-class layout of D1/D2/D3/D4 diagonal atoms with correction
//! entries in the final column(s). N is always derived as A + D and the
//! square-zero identity is asserted at runtime, so a transcription error in
//! any table surfaces as a hard "construction error" rather than a wrong
//! certificate.

use crate::canonical::{charpoly, companion_of, minpoly, rcf, recompanion_cyclic};
use crate::error::{Error, Result};
use crate::gf2m::{make_field, Fe, FieldSpec};
use crate::matrix::Mat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitMode {
    DiagSplit,
    Potent4F2,
    PotentSubfield,
}

impl SplitMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            SplitMode::DiagSplit => "diag-split",
            SplitMode::Potent4F2 => "potent4-f2",
            SplitMode::PotentSubfield => "potent-subfield",
        }
    }

    pub fn parse(s: &str) -> Result<SplitMode> {
        match s {
            "diag-split" => Ok(SplitMode::DiagSplit),
            "potent4-f2" => Ok(SplitMode::Potent4F2),
            "potent-subfield" => Ok(SplitMode::PotentSubfield),
            _ => Err(Error::Parse(format!("unknown mode: {s}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitOptions {
    pub mode: SplitMode,
    pub a: Option<Fe>,
    pub subfield_degree: Option<u32>,
}

impl Default for SplitOptions {
    fn default() -> Self {
        SplitOptions {
            mode: SplitMode::DiagSplit,
            a: None,
            subfield_degree: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    None,
    Scale(Fe),
    Shift(Fe),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    D1,
    D2,
    D3,
    D4,
}

impl BlockKind {
    pub fn len(&self) -> usize {
        match self {
            BlockKind::D1 => 1,
            BlockKind::D2 => 2,
            BlockKind::D3 => 3,
            BlockKind::D4 => 4,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            BlockKind::D1 => "D1",
            BlockKind::D2 => "D2",
            BlockKind::D3 => "D3",
            BlockKind::D4 => "D4",
        }
    }
}

/// Per-invariant-factor record of how the split was made.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockRecord {
    pub order: usize,
    pub chosen_a: Option<Fe>,
    pub normalization: Normalization,
    pub layout: Vec<(BlockKind, usize)>,
    /// Distinct eigenvalues of this block's D part (over GF(4) for the
    /// potent4-f2 mode, whose D lives in GF(2) but splits over GF(4)).
    pub eigenvalues: Vec<Fe>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitCertificate {
    pub field: FieldSpec,
    pub mode: SplitMode,
    pub a_mat: Mat,
    pub n_mat: Mat,
    pub d_mat: Mat,
    pub blocks: Vec<BlockRecord>,
    /// Claimed s with D^s = D for the potent modes; None means the
    /// certificate claims D diagonalizable over the base field.
    pub potency_s: Option<u64>,
}

/// Reinterpret a matrix in an extension field (bit patterns unchanged).
pub fn embed(m: &Mat, to: FieldSpec) -> Mat {
    Mat::from_fn(to, m.n_rows(), m.n_cols(), |i, j| m.get(i, j))
}

/// Reinterpret back in a subfield; every entry must fit.
pub fn project(m: &Mat, to: FieldSpec) -> Result<Mat> {
    for i in 0..m.n_rows() {
        for j in 0..m.n_cols() {
            if m.get(i, j).0 >= to.q() {
                return Err(Error::ProjectionFailure);
            }
        }
    }
    Ok(Mat::from_fn(to, m.n_rows(), m.n_cols(), |i, j| m.get(i, j)))
}

/// Smallest admissible a in bit-pattern order, honoring an override and, in
/// subfield mode, membership in GF(2^d).
fn choose_a(field: FieldSpec, forbidden: &[Fe], opts: &SplitOptions) -> Result<Fe> {
    let restricted = opts.mode == SplitMode::PotentSubfield;
    let exhausted = || {
        if restricted {
            Error::NoAdmissibleAInSubfield
        } else {
            Error::NoAdmissibleA
        }
    };
    let admissible = |x: Fe| -> Result<bool> {
        if forbidden.contains(&x) {
            return Ok(false);
        }
        if restricted {
            let d = opts.subfield_degree.ok_or(Error::NotSubfield)?;
            return field.in_subfield(x, d);
        }
        Ok(true)
    };
    if let Some(a) = opts.a {
        if !admissible(a)? {
            return Err(exhausted());
        }
        return Ok(a);
    }
    for x in field.elements() {
        if admissible(x)? {
            return Ok(x);
        }
    }
    Err(exhausted())
}

fn block_atom(field: FieldSpec, kind: BlockKind, e: Fe) -> Mat {
    let one = Fe::ONE;
    let e1 = field.add(e, one);
    let z = Fe::ZERO;
    match kind {
        BlockKind::D1 => Mat::zeros(field, 1, 1),
        BlockKind::D2 => Mat::from_fn(field, 2, 2, |i, j| match (i, j) {
            (1, 0) | (1, 1) => one,
            _ => z,
        }),
        BlockKind::D3 => {
            let mut m = Mat::zeros(field, 3, 3);
            m.set(0, 2, e);
            m.set(1, 0, one);
            m.set(1, 2, e1);
            m.set(2, 1, one);
            m
        }
        BlockKind::D4 => {
            let mut m = Mat::zeros(field, 4, 4);
            m.set(1, 0, one);
            m.set(1, 3, e);
            m.set(2, 1, one);
            m.set(2, 3, e1);
            m.set(3, 2, one);
            m
        }
    }
}

/// Distinct eigenvalues of D, read off the characteristic polynomial.
fn eigenvalues_of(d: &Mat) -> Result<Vec<Fe>> {
    let cp = charpoly(d)?;
    Ok(cp.roots()?.into_iter().map(|(r, _)| r).collect())
}

fn is_companion(c: &Mat) -> bool {
    if !c.is_square() || c.n_rows() == 0 {
        return false;
    }
    let n = c.n_rows();
    for i in 0..n {
        for j in 0..n.saturating_sub(1) {
            let expect = if i == j + 1 { Fe::ONE } else { Fe::ZERO };
            if c.get(i, j) != expect {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Class {
    K4A,
    K4B,
    K4p1,
    K4p2A,
    K4p2B,
    K4p3,
}

/// Split one companion block over a field with q >= 4.
fn split_block_parts(c: &Mat, opts: &SplitOptions) -> Result<(Mat, Mat, BlockRecord)> {
    let field = c.field();
    let n = c.n_rows();
    let u: Vec<Fe> = (0..n).map(|i| c.get(i, n - 1)).collect();
    let one = Fe::ONE;
    match n {
        1 => {
            let nil = Mat::zeros(field, 1, 1);
            Ok((
                nil,
                c.clone(),
                BlockRecord {
                    order: 1,
                    chosen_a: None,
                    normalization: Normalization::None,
                    layout: vec![(BlockKind::D1, 0)],
                    eigenvalues: vec![u[0]],
                },
            ))
        }
        2 => {
            if !u[1].is_zero() {
                let mut nil = Mat::zeros(field, 2, 2);
                nil.set(0, 1, u[0]);
                let mut d = Mat::zeros(field, 2, 2);
                d.set(1, 0, one);
                d.set(1, 1, u[1]);
                let eig = eigenvalues_of(&d)?;
                Ok((
                    nil,
                    d,
                    BlockRecord {
                        order: 2,
                        chosen_a: None,
                        normalization: Normalization::None,
                        layout: vec![(BlockKind::D2, 0)],
                        eigenvalues: eig,
                    },
                ))
            } else {
                // trace zero: D = sqrt(u0) * Id, a rank-one square-zero N
                let v = field.sqrt(u[0]);
                let mut nil = Mat::zeros(field, 2, 2);
                nil.set(0, 0, v);
                nil.set(0, 1, field.mul(v, v));
                nil.set(1, 0, one);
                nil.set(1, 1, v);
                let d = Mat::identity(field, 2).scale(v);
                Ok((
                    nil,
                    d,
                    BlockRecord {
                        order: 2,
                        chosen_a: None,
                        normalization: Normalization::None,
                        layout: vec![(BlockKind::D1, 0), (BlockKind::D1, 1)],
                        eigenvalues: vec![v],
                    },
                ))
            }
        }
        3 => {
            let a = choose_a(field, &[u[2], field.add(u[2], one)], opts)?;
            let e = field.add(field.mul(a, a), a);
            let mut d = Mat::zeros(field, 3, 3);
            d.set(0, 2, field.mul(e, field.add(u[2], one)));
            d.set(1, 0, one);
            d.set(1, 2, field.add(u[2], field.add(e, one)));
            d.set(2, 1, one);
            d.set(2, 2, u[2]);
            let nil = c.add(&d)?;
            let eig = eigenvalues_of(&d)?;
            Ok((
                nil,
                d,
                BlockRecord {
                    order: 3,
                    chosen_a: Some(a),
                    normalization: Normalization::None,
                    layout: vec![(BlockKind::D3, 0)],
                    eigenvalues: eig,
                },
            ))
        }
        4 => {
            if !u[3].is_zero() {
                let a = choose_a(field, &[Fe::ZERO, u[3]], opts)?;
                let s = field.add(a, u[3]);
                let mut nil = Mat::zeros(field, 4, 4);
                nil.set(1, 0, one);
                nil.set(2, 2, s);
                nil.set(2, 3, field.mul(s, s));
                nil.set(3, 2, one);
                nil.set(3, 3, s);
                let d = c.add(&nil)?;
                let eig = eigenvalues_of(&d)?;
                Ok((
                    nil,
                    d,
                    BlockRecord {
                        order: 4,
                        chosen_a: Some(a),
                        normalization: Normalization::None,
                        layout: vec![(BlockKind::D4, 0)],
                        eigenvalues: eig,
                    },
                ))
            } else {
                let a = choose_a(field, &[Fe::ZERO, one], opts)?;
                let e = field.add(field.mul(a, a), a);
                let d = block_atom(field, BlockKind::D4, e);
                let nil = c.add(&d)?;
                let eig = eigenvalues_of(&d)?;
                Ok((
                    nil,
                    d,
                    BlockRecord {
                        order: 4,
                        chosen_a: Some(a),
                        normalization: Normalization::None,
                        layout: vec![(BlockKind::D4, 0)],
                        eigenvalues: eig,
                    },
                ))
            }
        }
        _ => normalize_and_split(c, opts),
    }
}

/// Orders >= 5: normalize the trace, re-companion, lay down the residue
/// class's diagonal atoms with correction columns, derive N, undo.
fn normalize_and_split(c: &Mat, opts: &SplitOptions) -> Result<(Mat, Mat, BlockRecord)> {
    let field = c.field();
    let n = c.n_rows();
    let k = n / 4;
    let one = Fe::ONE;
    let u: Vec<Fe> = (0..n).map(|i| c.get(i, n - 1)).collect();
    let tr = u[n - 1];
    let a = choose_a(field, &[Fe::ZERO, one], opts)?;
    let e = field.add(field.mul(a, a), a);
    let e1 = field.add(e, one);

    let (class, norm) = match n % 4 {
        0 if !tr.is_zero() => (Class::K4A, Normalization::Scale(tr)),
        0 => (Class::K4B, Normalization::None),
        1 => (Class::K4p1, Normalization::Shift(field.add(tr, one))),
        2 if !tr.is_zero() => (Class::K4p2A, Normalization::Scale(tr)),
        2 => {
            // b^2 = w_{n-2} + a^2 + a + 1, unique square root by Frobenius
            let b = field.sqrt(field.add(u[n - 2], e1));
            (Class::K4p2B, Normalization::Shift(b))
        }
        _ => (Class::K4p3, Normalization::Shift(tr)),
    };

    let a_norm = match norm {
        Normalization::None => c.clone(),
        Normalization::Scale(cv) => c.scale(field.inv(cv)?),
        Normalization::Shift(b) => c.add(&Mat::identity(field, n).scale(b))?,
    };
    let (g, p) = recompanion_cyclic(&a_norm)?;
    let cn = companion_of(&g)?;
    let un: Vec<Fe> = (0..n).map(|i| g.coeff(i)).collect();

    let kinds: Vec<BlockKind> = match class {
        Class::K4A => {
            let mut v = vec![BlockKind::D4; k - 2];
            v.extend([BlockKind::D3, BlockKind::D3, BlockKind::D2]);
            v
        }
        Class::K4B => {
            let mut v = vec![BlockKind::D1];
            v.extend(vec![BlockKind::D4; k - 1]);
            v.push(BlockKind::D3);
            v
        }
        Class::K4p1 => {
            let mut v = vec![BlockKind::D4; k - 1];
            v.extend([BlockKind::D3, BlockKind::D2]);
            v
        }
        Class::K4p2A => {
            let mut v = vec![BlockKind::D4; k];
            v.push(BlockKind::D2);
            v
        }
        Class::K4p2B => {
            let mut v = vec![BlockKind::D4; k - 1];
            v.extend([BlockKind::D3, BlockKind::D3]);
            v
        }
        Class::K4p3 => {
            let mut v = vec![BlockKind::D4; k];
            v.push(BlockKind::D3);
            v
        }
    };
    let mut layout = Vec::new();
    let mut pos = 0;
    for &kind in &kinds {
        layout.push((kind, pos));
        pos += kind.len();
    }
    debug_assert_eq!(pos, n);

    let mut d = Mat::zeros(field, n, n);
    for &(kind, b) in &layout {
        let atom = block_atom(field, kind, e);
        for i in 0..kind.len() {
            for j in 0..kind.len() {
                d.set(b + i, b + j, atom.get(i, j));
            }
        }
    }

    // Correction columns; every non-final entry lands in the zero region of
    // the block diagonal.
    let last = layout.len() - 1;
    match class {
        Class::K4A | Class::K4p1 => {
            for &(kind, b) in &layout[..last] {
                let end = b + kind.len() - 1;
                d.set(end - 1, n - 1, un[end]);
                d.set(end, n - 1, un[end]);
            }
        }
        Class::K4p2A => {
            for &(kind, b) in &layout[..last] {
                debug_assert_eq!(kind, BlockKind::D4);
                d.set(b + 1, n - 1, un[b + 3]);
                d.set(b + 3, n - 1, un[b + 3]);
            }
        }
        Class::K4B | Class::K4p3 => {
            for &(kind, b) in &layout[..last] {
                match kind {
                    BlockKind::D1 => d.set(0, n - 1, un[0]),
                    BlockKind::D4 => {
                        d.set(b, n - 1, field.mul(e, un[b + 3]));
                        d.set(b + 1, n - 1, field.mul(e1, un[b + 3]));
                        d.set(b + 3, n - 1, un[b + 3]);
                    }
                    _ => unreachable!("layout invariant"),
                }
            }
        }
        Class::K4p2B => {
            for &(kind, b) in &layout[..last] {
                match kind {
                    BlockKind::D4 => {
                        d.set(b + 2, n - 2, un[b + 3]);
                        d.set(b + 3, n - 1, un[b + 3]);
                    }
                    BlockKind::D3 => {
                        d.set(b + 1, n - 2, un[b + 2]);
                        d.set(b + 2, n - 1, un[b + 2]);
                    }
                    _ => unreachable!("layout invariant"),
                }
            }
        }
    }

    let nn = cn.add(&d)?;
    if !nn.mul(&nn)?.is_zero() {
        return Err(Error::ConstructionError);
    }
    let (nprime, dprime) = match norm {
        Normalization::None => (nn, d),
        Normalization::Scale(cv) => (nn.scale(cv), d.scale(cv)),
        Normalization::Shift(b) => (nn, d.add(&Mat::identity(field, n).scale(b))?),
    };
    let pinv = p.inv()?;
    let nfin = p.mul(&nprime)?.mul(&pinv)?;
    let dfin = p.mul(&dprime)?.mul(&pinv)?;
    let eig = eigenvalues_of(&dfin)?;
    Ok((
        nfin,
        dfin,
        BlockRecord {
            order: n,
            chosen_a: Some(a),
            normalization: norm,
            layout,
            eigenvalues: eig,
        },
    ))
}

fn finalize(
    a: &Mat,
    n_mat: Mat,
    d_mat: Mat,
    mode: SplitMode,
    blocks: Vec<BlockRecord>,
    potency_s: Option<u64>,
) -> Result<SplitCertificate> {
    if a != &n_mat.add(&d_mat)? || !n_mat.mul(&n_mat)?.is_zero() {
        return Err(Error::ConstructionError);
    }
    match potency_s {
        Some(s) => {
            if d_mat.pow(s)? != d_mat {
                return Err(Error::ConstructionError);
            }
        }
        None => {
            if a.n_rows() > 0 && !minpoly(&d_mat)?.splits_distinct()? {
                return Err(Error::ConstructionError);
            }
        }
    }
    Ok(SplitCertificate {
        field: a.field(),
        mode,
        a_mat: a.clone(),
        n_mat,
        d_mat,
        blocks,
        potency_s,
    })
}

/// Split a single companion block (q >= 4) into square-zero + diagonalizable.
pub fn split_block(c: &Mat, opts: &SplitOptions) -> Result<SplitCertificate> {
    if !is_companion(c) {
        return Err(Error::Parse("matrix is not in companion form".into()));
    }
    if c.field().q() < 4 {
        return Err(Error::FieldTooSmall);
    }
    let (n_mat, d_mat, rec) = split_block_parts(c, opts)?;
    finalize(c, n_mat, d_mat, SplitMode::DiagSplit, vec![rec], None)
}

/// Split an arbitrary square matrix over GF(q), q >= 4: per-invariant-factor
/// split through the rational canonical form, conjugated back.
pub fn split_any(a: &Mat, opts: &SplitOptions) -> Result<SplitCertificate> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch);
    }
    match opts.mode {
        SplitMode::DiagSplit => {}
        SplitMode::Potent4F2 => return split_f2(a, opts),
        SplitMode::PotentSubfield => {
            let d = opts.subfield_degree.ok_or(Error::NotSubfield)?;
            return split_subfield(a, d, opts);
        }
    }
    let field = a.field();
    if field.q() < 4 {
        return Err(Error::FieldTooSmall);
    }
    let r = rcf(a)?;
    let mut nf = Mat::zeros(field, 0, 0);
    let mut df = Mat::zeros(field, 0, 0);
    let mut blocks = Vec::new();
    for fpoly in &r.factors {
        let c = companion_of(fpoly)?;
        let (nb, db, rec) = split_block_parts(&c, opts)?;
        nf = nf.direct_sum(&nb)?;
        df = df.direct_sum(&db)?;
        blocks.push(rec);
    }
    let pinv = r.basis.inv()?;
    let n_mat = r.basis.mul(&nf)?.mul(&pinv)?;
    let d_mat = r.basis.mul(&df)?.mul(&pinv)?;
    finalize(a, n_mat, d_mat, SplitMode::DiagSplit, blocks, None)
}

/// Frozen first-in-enumeration-order square-zero N for each trace-1 quartic
/// companion over F2, indexed by u0 + 2 u1 + 4 u2 (u3 = 1). Bit i of the
/// value is entry (i/4, i%4). Regenerated by an exhaustive test.
const F2_QUARTIC_FALLBACK: [u16; 8] = [0x77, 0x833, 0x50, 0xff, 0x10, 0x33, 0x90, 0x858];

fn mat_from_bits(field: FieldSpec, n: usize, bits: u16) -> Mat {
    Mat::from_fn(field, n, n, |i, j| Fe(((bits >> (i * n + j)) & 1) as u64))
}

fn f2_quartic_trace1(c: &Mat) -> Result<(Mat, Mat)> {
    let field = c.field();
    let (u0, u1, u2) = (c.get(0, 3), c.get(1, 3), c.get(2, 3));
    if u0 == Fe::ONE && u1 == Fe::ONE && u2 == Fe::ONE {
        // x^4+x^3+x^2+x+1: shifting by the identity gives x^4+x^3+1
        let b = c.add(&Mat::identity(field, 4))?;
        let (g, p) = recompanion_cyclic(&b)?;
        let cg = companion_of(&g)?;
        let (np, dp) = f2_quartic_trace1(&cg)?;
        let pinv = p.inv()?;
        let n_mat = p.mul(&np)?.mul(&pinv)?;
        let d_shift = dp.add(&Mat::identity(field, 4))?;
        let d_mat = p.mul(&d_shift)?.mul(&pinv)?;
        return Ok((n_mat, d_mat));
    }
    let idx = (u0.0 + 2 * u1.0 + 4 * u2.0) as usize;
    let n_mat = mat_from_bits(field, 4, F2_QUARTIC_FALLBACK[idx]);
    let d_mat = c.add(&n_mat)?;
    Ok((n_mat, d_mat))
}

/// The F2 route: every block is either split natively by the order <= 4
/// corollaries or embedded into GF(4) with a = the generator (a^2+a = 1),
/// where every construction stays GF(2)-valued and projects back.
pub fn split_f2(a: &Mat, _opts: &SplitOptions) -> Result<SplitCertificate> {
    let field = a.field();
    if field.m() != 1 {
        return Err(Error::FieldMismatch);
    }
    if !a.is_square() {
        return Err(Error::DimensionMismatch);
    }
    let f4 = make_field(2, None)?;
    let one = Fe::ONE;
    let r = rcf(a)?;
    let mut nf = Mat::zeros(field, 0, 0);
    let mut df = Mat::zeros(field, 0, 0);
    let mut blocks = Vec::new();
    for fpoly in &r.factors {
        let c = companion_of(fpoly)?;
        let n = c.n_rows();
        let u: Vec<Fe> = (0..n).map(|i| c.get(i, n - 1)).collect();
        let (nb, db) = match n {
            1 => (Mat::zeros(field, 1, 1), c.clone()),
            2 => {
                if !u[1].is_zero() {
                    let mut nil = Mat::zeros(field, 2, 2);
                    nil.set(0, 1, u[0]);
                    let d = c.add(&nil)?;
                    (nil, d)
                } else {
                    let v = u[0]; // its own square root in F2
                    let mut nil = Mat::zeros(field, 2, 2);
                    nil.set(0, 0, v);
                    nil.set(0, 1, v);
                    nil.set(1, 0, one);
                    nil.set(1, 1, v);
                    (nil, Mat::identity(field, 2).scale(v))
                }
            }
            3 => {
                let mut d = Mat::zeros(field, 3, 3);
                d.set(0, 2, field.add(u[2], one));
                d.set(1, 0, one);
                d.set(1, 2, u[2]);
                d.set(2, 1, one);
                d.set(2, 2, u[2]);
                let nil = c.add(&d)?;
                (nil, d)
            }
            4 => {
                if u[3].is_zero() {
                    let mut d = Mat::zeros(field, 4, 4);
                    d.set(1, 0, one);
                    d.set(1, 3, one);
                    d.set(2, 1, one);
                    d.set(3, 2, one);
                    (c.add(&d)?, d)
                } else {
                    f2_quartic_trace1(&c)?
                }
            }
            _ => {
                let c4 = embed(&c, f4);
                let sub_opts = SplitOptions {
                    mode: SplitMode::DiagSplit,
                    a: Some(f4.el(0b10)),
                    subfield_degree: None,
                };
                let (n4, d4, _) = split_block_parts(&c4, &sub_opts)?;
                (project(&n4, field)?, project(&d4, field)?)
            }
        };
        let eig = eigenvalues_of(&embed(&db, f4))?;
        blocks.push(BlockRecord {
            order: n,
            chosen_a: if n >= 3 { Some(f4.el(0b10)) } else { None },
            normalization: Normalization::None,
            layout: vec![],
            eigenvalues: eig,
        });
        nf = nf.direct_sum(&nb)?;
        df = df.direct_sum(&db)?;
    }
    let pinv = r.basis.inv()?;
    let n_mat = r.basis.mul(&nf)?.mul(&pinv)?;
    let d_mat = r.basis.mul(&df)?.mul(&pinv)?;
    finalize(a, n_mat, d_mat, SplitMode::Potent4F2, blocks, Some(4))
}

/// Potency-adjusted split for a non-derogatory matrix: a is confined to the
/// subfield K = GF(2^d), giving D^s = D with s = #K (case i: s = 3).
pub fn split_subfield(a: &Mat, d: u32, opts: &SplitOptions) -> Result<SplitCertificate> {
    let field = a.field();
    if field.q() < 4 {
        return Err(Error::FieldTooSmall);
    }
    if d == 0 || field.m() % d != 0 {
        return Err(Error::NotSubfield);
    }
    let r = rcf(a)?;
    if r.factors.len() != 1 {
        return Err(Error::NotNonDerogatory);
    }
    let g = &r.factors[0];
    let n = g.degree().unwrap();
    if n < 2 {
        return Err(Error::InvalidDegree);
    }
    let tr = g.coeff(n - 1);
    let pinv = r.basis.inv()?;
    let c = companion_of(g)?;

    if n == 2 && tr.is_zero() {
        // case i: D' = [[0,1],[1,0]] has cube D', regardless of K
        let one = Fe::ONE;
        let mut dp = Mat::zeros(field, 2, 2);
        dp.set(0, 1, one);
        dp.set(1, 0, one);
        let np = c.add(&dp)?;
        let n_mat = r.basis.mul(&np)?.mul(&pinv)?;
        let d_mat = r.basis.mul(&dp)?.mul(&pinv)?;
        let rec = BlockRecord {
            order: 2,
            chosen_a: None,
            normalization: Normalization::None,
            layout: vec![],
            eigenvalues: eigenvalues_of(&d_mat)?,
        };
        return finalize(a, n_mat, d_mat, SplitMode::PotentSubfield, vec![rec], Some(3));
    }

    // cases ii/iii: the governing coefficient must already lie in K
    let governing = if n % 4 == 2 && tr.is_zero() {
        g.coeff(n - 2)
    } else {
        tr
    };
    if !field.in_subfield(governing, d)? {
        return Err(Error::SubfieldHypothesisViolated);
    }
    let sub_opts = SplitOptions {
        mode: SplitMode::PotentSubfield,
        a: opts.a,
        subfield_degree: Some(d),
    };
    let (nb, db, rec) = split_block_parts(&c, &sub_opts)?;
    let n_mat = r.basis.mul(&nb)?.mul(&pinv)?;
    let d_mat = r.basis.mul(&db)?.mul(&pinv)?;
    finalize(
        a,
        n_mat,
        d_mat,
        SplitMode::PotentSubfield,
        vec![rec],
        Some(1u64 << d),
    )
}

impl Normalization {
    fn to_json(self) -> serde_json::Value {
        match self {
            Normalization::None => serde_json::json!({ "kind": "none" }),
            Normalization::Scale(c) => {
                serde_json::json!({ "kind": "scale", "value": format!("{:x}", c.0) })
            }
            Normalization::Shift(b) => {
                serde_json::json!({ "kind": "shift", "value": format!("{:x}", b.0) })
            }
        }
    }

    fn from_json(v: &serde_json::Value) -> Result<Normalization> {
        let kind = v["kind"]
            .as_str()
            .ok_or_else(|| Error::Parse("normalization kind missing".into()))?;
        let value = || -> Result<Fe> {
            let s = v["value"]
                .as_str()
                .ok_or_else(|| Error::Parse("normalization value missing".into()))?;
            Ok(Fe(u64::from_str_radix(s, 16)
                .map_err(|_| Error::Parse(format!("bad normalization value: {s}")))?))
        };
        match kind {
            "none" => Ok(Normalization::None),
            "scale" => Ok(Normalization::Scale(value()?)),
            "shift" => Ok(Normalization::Shift(value()?)),
            _ => Err(Error::Parse(format!("bad normalization kind: {kind}"))),
        }
    }
}

impl BlockKind {
    fn parse(s: &str) -> Result<BlockKind> {
        match s {
            "D1" => Ok(BlockKind::D1),
            "D2" => Ok(BlockKind::D2),
            "D3" => Ok(BlockKind::D3),
            "D4" => Ok(BlockKind::D4),
            _ => Err(Error::Parse(format!("bad block kind: {s}"))),
        }
    }
}

impl SplitCertificate {
    /// Schema "cert-v1". Matrices are embedded in the plain matrix text
    /// format; field elements are hexadecimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        let fe_str = |x: Fe| format!("{:x}", x.0);
        let blocks: Vec<serde_json::Value> = self
            .blocks
            .iter()
            .map(|b| {
                serde_json::json!({
                    "order": b.order,
                    "chosen_a": b.chosen_a.map(fe_str),
                    "normalization": b.normalization.to_json(),
                    "layout": b.layout.iter()
                        .map(|&(k, p)| serde_json::json!([k.as_str(), p]))
                        .collect::<Vec<_>>(),
                    "eigenvalues": b.eigenvalues.iter().map(|&x| fe_str(x)).collect::<Vec<_>>(),
                })
            })
            .collect();
        let sum_ok = self
            .n_mat
            .add(&self.d_mat)
            .map(|s| s == self.a_mat)
            .unwrap_or(false);
        let square_zero_ok = self
            .n_mat
            .mul(&self.n_mat)
            .map(|s| s.is_zero())
            .unwrap_or(false);
        let mode_ok = match self.potency_s {
            Some(s) => self
                .d_mat
                .pow(s)
                .map(|p| p == self.d_mat)
                .unwrap_or(false),
            None => {
                self.a_mat.n_rows() == 0
                    || minpoly(&self.d_mat)
                        .and_then(|mp| mp.splits_distinct())
                        .unwrap_or(false)
            }
        };
        serde_json::json!({
            "schema": "cert-v1",
            "field": self.field.designation(),
            "order": self.a_mat.n_rows(),
            "mode": self.mode.as_str(),
            "a_matrix": self.a_mat.to_text(),
            "n_matrix": self.n_mat.to_text(),
            "d_matrix": self.d_mat.to_text(),
            "diagonalizable": self.potency_s.is_none(),
            "potency_s": self.potency_s,
            "blocks": blocks,
            "flags": { "sum_ok": sum_ok, "square_zero_ok": square_zero_ok, "mode_ok": mode_ok },
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<SplitCertificate> {
        if v["schema"].as_str() != Some("cert-v1") {
            return Err(Error::Parse("unknown certificate schema".into()));
        }
        let field = FieldSpec::parse_designation(
            v["field"]
                .as_str()
                .ok_or_else(|| Error::Parse("field missing".into()))?,
        )?;
        let mode = SplitMode::parse(
            v["mode"]
                .as_str()
                .ok_or_else(|| Error::Parse("mode missing".into()))?,
        )?;
        let mat_of = |key: &str| -> Result<Mat> {
            let text = v[key]
                .as_str()
                .ok_or_else(|| Error::Parse(format!("{key} missing")))?;
            let m = Mat::from_text(text)?;
            if m.field() != field {
                return Err(Error::FieldMismatch);
            }
            Ok(m)
        };
        let a_mat = mat_of("a_matrix")?;
        let n_mat = mat_of("n_matrix")?;
        let d_mat = mat_of("d_matrix")?;
        // potent4-f2 block eigenvalues live in GF(4), one level above the base
        let eig_bound = if mode == SplitMode::Potent4F2 {
            field.q().max(4)
        } else {
            field.q()
        };
        let fe_of = |s: &str, bound: u64| -> Result<Fe> {
            let bits = u64::from_str_radix(s, 16)
                .map_err(|_| Error::Parse(format!("bad element: {s}")))?;
            if bits >= bound {
                return Err(Error::Parse(format!("element out of field: {s}")));
            }
            Ok(Fe(bits))
        };
        let mut blocks = Vec::new();
        for b in v["blocks"].as_array().unwrap_or(&vec![]) {
            let order = b["order"]
                .as_u64()
                .ok_or_else(|| Error::Parse("block order missing".into()))? as usize;
            let chosen_a = match b["chosen_a"].as_str() {
                Some(s) => Some(fe_of(s, eig_bound)?),
                None => None,
            };
            let normalization = Normalization::from_json(&b["normalization"])?;
            let mut layout = Vec::new();
            for item in b["layout"].as_array().unwrap_or(&vec![]) {
                let kind = BlockKind::parse(
                    item[0]
                        .as_str()
                        .ok_or_else(|| Error::Parse("layout kind missing".into()))?,
                )?;
                let pos = item[1]
                    .as_u64()
                    .ok_or_else(|| Error::Parse("layout position missing".into()))?
                    as usize;
                layout.push((kind, pos));
            }
            let mut eigenvalues = Vec::new();
            for e in b["eigenvalues"].as_array().unwrap_or(&vec![]) {
                eigenvalues.push(fe_of(
                    e.as_str().ok_or_else(|| Error::Parse("bad eigenvalue".into()))?,
                    eig_bound,
                )?);
            }
            blocks.push(BlockRecord {
                order,
                chosen_a,
                normalization,
                layout,
                eigenvalues,
            });
        }
        Ok(SplitCertificate {
            field,
            mode,
            a_mat,
            n_mat,
            d_mat,
            blocks,
            potency_s: v["potency_s"].as_u64(),
        })
    }
}
