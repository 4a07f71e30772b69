//! Acceptance gate: one test per criterion, each printing a single
//! PASS/FAIL line (run with --nocapture to see them). All arithmetic is
//! exact, so every tolerance is exact equality.

use sqzsplit::canonical::{charpoly, companion_of, minpoly, rcf};
use sqzsplit::error::Error;
use sqzsplit::gf2m::{make_field, Fe, FieldSpec};
use sqzsplit::matrix::Mat;
use sqzsplit::polyring::Poly;
use sqzsplit::rng::SplitMix64;
use sqzsplit::splitter::{
    split_any, split_block, split_f2, split_subfield, Normalization, SplitCertificate, SplitMode,
    SplitOptions,
};
use sqzsplit::verify::{brute_force_exists, check_certificate};

fn gf(m: u32) -> FieldSpec {
    make_field(m, None).unwrap()
}

fn companion_from_tail(field: FieldSpec, tail: &[Fe]) -> Mat {
    companion_of(&Poly::monic_from_tail(field, tail)).unwrap()
}

fn verdict(name: &str, pass: bool) {
    println!(
        "acceptance {}: {}",
        name,
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "acceptance criterion failed: {name}");
}

fn eig_set(cert: &SplitCertificate) -> Vec<Fe> {
    let mut v: Vec<Fe> = cert
        .blocks
        .iter()
        .flat_map(|b| b.eigenvalues.clone())
        .collect();
    v.sort();
    v.dedup();
    v
}

fn sorted(mut v: Vec<Fe>) -> Vec<Fe> {
    v.sort();
    v.dedup();
    v
}

/// Criteria 1 + 2 share instances: the main theorem suite over GF(4), GF(8),
/// GF(16), orders 1..=12, 1000 seeded matrices each; then D^q = D on the
/// same certificates.
#[test]
fn criterion_1_and_2_theorem_main_and_potency() {
    let mut all_split = true;
    let mut all_potent = true;
    for m in [2u32, 3, 4] {
        let field = gf(m);
        let mut rng = SplitMix64::new(0xACCE_0001 + m as u64);
        for n in 1..=12 {
            for _ in 0..1000 {
                let a = rng.mat(field, n);
                let cert = split_any(&a, &SplitOptions::default()).unwrap();
                let sum = cert.n_mat.add(&cert.d_mat).unwrap() == a;
                let sq = cert.n_mat.mul(&cert.n_mat).unwrap().is_zero();
                let diag = minpoly(&cert.d_mat).unwrap().splits_distinct().unwrap();
                all_split &= sum && sq && diag;
                all_potent &= cert.d_mat.pow(field.q()).unwrap() == cert.d_mat;
            }
        }
    }
    verdict("1 theorem-main split suite (3 fields x 12 orders x 1000)", all_split);
    verdict("2 corollary potent2^m D^q = D on the same instances", all_potent);
}

#[test]
fn criterion_3_f2_potent_suite() {
    let field = gf(1);
    let mut rng = SplitMix64::new(0xACCE_0003);
    let opts = SplitOptions {
        mode: SplitMode::Potent4F2,
        ..Default::default()
    };
    let mut all = true;
    for n in 1..=16 {
        for _ in 0..1000 {
            let a = rng.mat(field, n);
            let cert = split_f2(&a, &opts).unwrap();
            all &= cert.n_mat.add(&cert.d_mat).unwrap() == a
                && cert.n_mat.mul(&cert.n_mat).unwrap().is_zero()
                && cert.d_mat.pow(4).unwrap() == cert.d_mat
                && cert.n_mat.field() == field
                && cert.d_mat.field() == field;
        }
    }
    verdict("3 corollary F2-potent suite (16 orders x 1000)", all);
}

#[test]
fn criterion_4_golden_reproductions() {
    let mut all = true;

    // (i) Ster's A = companion(x^4+x^3+1)
    let f2 = gf(1);
    let ster = companion_from_tail(f2, &[Fe(1), Fe(0), Fe(0), Fe(1)]);
    let cert = split_f2(&ster, &SplitOptions::default()).unwrap();
    all &= cert.n_mat
        == Mat::from_rows(
            f2,
            &[&[1, 1, 0, 0], &[1, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, 0, 0]],
        );
    all &= cert.d_mat
        == Mat::from_rows(
            f2,
            &[&[1, 1, 0, 1], &[0, 1, 0, 0], &[0, 1, 0, 1], &[0, 0, 1, 1]],
        );

    // (ii) order-3 F2 decomposition for all 8 coefficient triples
    for bits in 0u64..8 {
        let (u0, u1, u2) = (bits & 1, (bits >> 1) & 1, (bits >> 2) & 1);
        let c = companion_from_tail(f2, &[Fe(u0), Fe(u1), Fe(u2)]);
        let cert = split_f2(&c, &SplitOptions::default()).unwrap();
        all &= cert.d_mat
            == Mat::from_rows(f2, &[&[0, 0, u2 ^ 1], &[1, 0, u2], &[0, 1, u2]]);
        all &= cert.n_mat
            == Mat::from_rows(
                f2,
                &[&[0, 0, u2 ^ 1 ^ u0], &[0, 0, u2 ^ u1], &[0, 0, 0]],
            );
    }

    // (iii) both order-2 decompositions of Prop case2, over GF(4)
    let f4 = gf(2);
    let c = companion_from_tail(f4, &[f4.el(3), f4.el(2)]);
    let cert = split_block(&c, &SplitOptions::default()).unwrap();
    all &= cert.n_mat == Mat::from_rows(f4, &[&[0, 3], &[0, 0]])
        && cert.d_mat == Mat::from_rows(f4, &[&[0, 0], &[1, 2]]);
    let c = companion_from_tail(f4, &[f4.el(3), f4.el(0)]);
    let cert = split_block(&c, &SplitOptions::default()).unwrap();
    // sqrt(a+1) = a in GF(4)
    all &= cert.n_mat == Mat::from_rows(f4, &[&[2, 3], &[1, 2]])
        && cert.d_mat == Mat::from_rows(f4, &[&[2, 0], &[0, 2]]);

    // (iv) n = 2 trace-0 improvement of Prop adjusting
    let c = companion_from_tail(f4, &[f4.el(2), f4.el(0)]);
    let cert = split_subfield(&c, 1, &SplitOptions::default()).unwrap();
    all &= cert.d_mat == Mat::from_rows(f4, &[&[0, 1], &[1, 0]])
        && cert.n_mat == Mat::from_rows(f4, &[&[0, 3], &[0, 0]])
        && cert.n_mat.mul(&cert.n_mat).unwrap().is_zero()
        && cert.d_mat.pow(3).unwrap() == cert.d_mat
        && cert.potency_s == Some(3);

    verdict("4 golden reproductions (Ster-A, order-3 x8, order-2 x2, adjusting)", all);
}

#[test]
fn criterion_5_impossibility_reproduction() {
    let f2 = gf(1);
    let start = std::time::Instant::now();
    let a = companion_from_tail(f2, &[Fe(1), Fe(0), Fe(0), Fe(1)]); // x^4+x^3+1
    let b = companion_from_tail(f2, &[Fe(1), Fe(1), Fe(1), Fe(1)]); // x^4+x^3+x^2+x+1
    let mut all = true;
    for m in [&a, &b] {
        let (idem_split, _) = brute_force_exists(m, 3, 2).unwrap();
        all &= !idem_split;
        let (potent_split, witness) = brute_force_exists(m, 2, 4).unwrap();
        all &= potent_split;
        let e = witness.unwrap();
        let n = m.add(&e).unwrap();
        all &= e.pow(4).unwrap() == e && n.mul(&n).unwrap().is_zero();
    }
    all &= start.elapsed().as_secs() < 120;
    verdict("5 impossibility of E^2=E with N^3=0 for Ster's A and B", all);
}

#[test]
fn criterion_6_eigenvalue_set_conformance() {
    let mut all = true;
    for m in [2u32, 3] {
        let field = gf(m);
        let mut rng = SplitMix64::new(0xACCE_0006 + m as u64);
        let one = Fe::ONE;
        let nonzero = |rng: &mut SplitMix64| Fe(1 + rng.below(field.q() - 1));
        // (order, forced trace: None = random nonzero, Some(x) = exactly x)
        let classes: Vec<(usize, Option<Fe>, &str)> = vec![
            (2, None, "order2 trace!=0"),
            (2, Some(Fe::ZERO), "order2 trace 0"),
            (3, None, "order3"),
            (3, Some(Fe::ZERO), "order3 trace 0"),
            (4, None, "order4 trace!=0"),
            (4, Some(Fe::ZERO), "order4 trace 0"),
            (8, None, "4k trace!=0"),
            (8, Some(Fe::ZERO), "4k trace 0"),
            (5, None, "4k+1"),
            (5, Some(Fe::ZERO), "4k+1 trace 0"),
            (6, None, "4k+2 trace!=0"),
            (10, Some(Fe::ZERO), "4k+2 trace 0"),
            (7, None, "4k+3"),
            (7, Some(Fe::ZERO), "4k+3 trace 0"),
        ];
        for (n, tr, label) in classes {
            for _ in 0..200 {
                let mut tail: Vec<Fe> = (0..n).map(|_| rng.fe(field)).collect();
                tail[n - 1] = match tr {
                    Some(x) => x,
                    None => nonzero(&mut rng),
                };
                let c = companion_from_tail(field, &tail);
                let cert = split_block(&c, &SplitOptions::default()).unwrap();
                let a = cert.blocks[0].chosen_a;
                let tr_val = tail[n - 1];
                let expect: Vec<Fe> = match (n, tr_val.is_zero()) {
                    (2, false) => vec![Fe::ZERO, tr_val],
                    (2, true) => vec![field.sqrt(tail[0])],
                    (3, _) => {
                        let a = a.unwrap();
                        vec![a, field.add(a, one), field.add(tail[2], one)]
                    }
                    (4, false) => {
                        let a = a.unwrap();
                        vec![Fe::ZERO, a, field.add(a, tail[3])]
                    }
                    (4, true) | (8, true) => {
                        let a = a.unwrap();
                        vec![Fe::ZERO, one, a, field.add(a, one)]
                    }
                    (8, false) | (6, false) => {
                        let a = a.unwrap();
                        vec![
                            Fe::ZERO,
                            tr_val,
                            field.mul(tr_val, a),
                            field.mul(tr_val, field.add(a, one)),
                        ]
                    }
                    (10, true) => {
                        let a = a.unwrap();
                        let b = match cert.blocks[0].normalization {
                            Normalization::Shift(b) => b,
                            _ => panic!("expected shift normalization"),
                        };
                        vec![
                            b,
                            field.add(b, one),
                            field.add(b, a),
                            field.add(b, field.add(a, one)),
                        ]
                    }
                    (5, _) | (7, _) => {
                        let a = a.unwrap();
                        vec![
                            tr_val,
                            field.add(tr_val, one),
                            field.add(tr_val, a),
                            field.add(tr_val, field.add(a, one)),
                        ]
                    }
                    _ => unreachable!(),
                };
                let got = eig_set(&cert);
                if got != sorted(expect.clone()) {
                    eprintln!(
                        "mismatch gf(2^{m}) {label}: tail {:?} got {:?} expect {:?}",
                        tail, got, expect
                    );
                    all = false;
                }
            }
        }
    }
    verdict("6 eigenvalue-set conformance (200 per class, GF(4) and GF(8))", all);
}

#[test]
fn criterion_7_subfield_potency() {
    let field = gf(4); // GF(16)
    let d = 2;
    let members: Vec<Fe> = field
        .elements()
        .filter(|&x| field.in_subfield(x, d).unwrap())
        .collect();
    let outsiders: Vec<Fe> = field
        .elements()
        .filter(|&x| !field.in_subfield(x, d).unwrap())
        .collect();
    let mut rng = SplitMix64::new(0xACCE_0007);
    let opts = SplitOptions {
        mode: SplitMode::PotentSubfield,
        a: None,
        subfield_degree: Some(d),
    };
    let mut all = true;

    // case i: n = 2, trace 0 -> D^3 = D
    for _ in 0..200 {
        let c = companion_from_tail(field, &[rng.fe(field), Fe::ZERO]);
        let p = rng.invertible(field, 2);
        let a = Mat::conjugate(&p, &c).unwrap();
        let cert = split_subfield(&a, d, &opts).unwrap();
        all &= cert.potency_s == Some(3) && cert.d_mat.pow(3).unwrap() == cert.d_mat;
        all &= check_certificate(&a, &cert).all_ok();
    }

    // case ii: n = 6, trace 0, u4 in GF(4) -> D^4 = D
    for i in 0..200 {
        let mut tail: Vec<Fe> = (0..6).map(|_| rng.fe(field)).collect();
        tail[4] = members[(i % members.len()) as usize];
        tail[5] = Fe::ZERO;
        let c = companion_from_tail(field, &tail);
        let p = rng.invertible(field, 6);
        let a = Mat::conjugate(&p, &c).unwrap();
        let cert = split_subfield(&a, d, &opts).unwrap();
        all &= cert.potency_s == Some(4) && cert.d_mat.pow(4).unwrap() == cert.d_mat;
        all &= check_certificate(&a, &cert).all_ok();
    }
    // hypothesis violation: u4 outside GF(4)
    for (i, &bad) in outsiders.iter().enumerate() {
        let mut tail: Vec<Fe> = (0..6).map(|_| rng.fe(field)).collect();
        tail[4] = bad;
        tail[5] = Fe::ZERO;
        let c = companion_from_tail(field, &tail);
        all &= split_subfield(&c, d, &opts) == Err(Error::SubfieldHypothesisViolated);
        let _ = i;
    }

    // case iii: trace in GF(4), assorted orders -> D^4 = D
    for i in 0..200 {
        let n = [3usize, 4, 5, 7, 8][i % 5];
        let mut tail: Vec<Fe> = (0..n).map(|_| rng.fe(field)).collect();
        tail[n - 1] = members[(i % members.len()) as usize];
        let c = companion_from_tail(field, &tail);
        let p = rng.invertible(field, n);
        let a = Mat::conjugate(&p, &c).unwrap();
        let cert = split_subfield(&a, d, &opts).unwrap();
        all &= cert.potency_s == Some(4) && cert.d_mat.pow(4).unwrap() == cert.d_mat;
        all &= check_certificate(&a, &cert).all_ok();
    }
    // hypothesis violation: trace outside GF(4)
    for &bad in &outsiders {
        let mut tail: Vec<Fe> = (0..5).map(|_| rng.fe(field)).collect();
        tail[4] = bad;
        let c = companion_from_tail(field, &tail);
        all &= split_subfield(&c, d, &opts) == Err(Error::SubfieldHypothesisViolated);
    }

    verdict("7 subfield potency over GF(16), d = 2 (200 per case + violations)", all);
}

#[test]
fn criterion_8_oracle_equivalence() {
    let f2 = gf(1);
    let mut all = true;
    // all 512 order-3 matrices over GF(2)
    for bits in 0u64..512 {
        let a = Mat::from_fn(f2, 3, 3, |i, j| Fe((bits >> (3 * i + j)) & 1));
        let (exists, _) = brute_force_exists(&a, 2, 4).unwrap();
        all &= exists;
        let cert = split_f2(&a, &SplitOptions::default()).unwrap();
        all &= check_certificate(&a, &cert).all_ok();
    }
    // all 16 order-4 companion matrices
    for bits in 0u64..16 {
        let tail: Vec<Fe> = (0..4).map(|i| Fe((bits >> i) & 1)).collect();
        let a = companion_from_tail(f2, &tail);
        let (exists, _) = brute_force_exists(&a, 2, 4).unwrap();
        all &= exists;
        let cert = split_f2(&a, &SplitOptions::default()).unwrap();
        all &= check_certificate(&a, &cert).all_ok();
    }
    verdict("8 oracle equivalence (512 order-3 + 16 order-4 companions)", all);
}

#[test]
fn criterion_9_rcf_contract() {
    let mut all = true;
    for m in [2u32, 3, 4] {
        let field = gf(m);
        let mut rng = SplitMix64::new(0xACCE_0009 + m as u64);
        for n in 1..=12 {
            for _ in 0..500 {
                let a = rng.mat(field, n);
                let r = rcf(&a).unwrap();
                let pinv = match r.basis.inv() {
                    Ok(p) => p,
                    Err(_) => {
                        all = false;
                        continue;
                    }
                };
                let conj = pinv.mul(&a).unwrap().mul(&r.basis).unwrap();
                all &= conj == r.form(field).unwrap();
                for w in r.factors.windows(2) {
                    all &= w[1].divrem(&w[0]).unwrap().1.is_zero();
                }
                let mut prod = Poly::one(field);
                for f in &r.factors {
                    prod = prod.mul(f).unwrap();
                }
                all &= prod == charpoly(&a).unwrap();
            }
        }
    }
    verdict("9 RCF contract (3 fields x 12 orders x 500)", all);
}
