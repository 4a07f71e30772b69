//! Command-line front end: split / verify / rcf / oracle / selftest.
//!
//! Exit codes: 0 success or all-pass, 1 verification failure, 2 usage or
//! precondition error, 3 internal construction error (a bug, never bad
//! user input).

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::canonical::{companion_of, rcf};
use crate::error::Error;
use crate::gf2m::{make_field, Fe, FieldSpec};
use crate::matrix::Mat;
use crate::polyring::Poly;
use crate::rng::SplitMix64;
use crate::splitter::{
    split_any, split_f2, split_subfield, SplitCertificate, SplitMode, SplitOptions,
};
use crate::verify::{brute_force_exists, check_certificate, CheckReport};

#[derive(Parser)]
#[command(
    name = "sqzsplit",
    about = "Exact square-zero + diagonalizable/potent matrix decompositions over GF(2^m)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a matrix file, emitting a cert-v1 JSON certificate
    Split {
        /// Matrix file (matrix text format, self-describing field header)
        input: PathBuf,
        /// Expected field designation; rejected if the file disagrees
        #[arg(long)]
        field: Option<String>,
        #[arg(long, default_value = "diag-split")]
        mode: String,
        /// Override the free parameter a (hexadecimal field element)
        #[arg(long)]
        a: Option<String>,
        /// Subfield degree d for mode potent-subfield
        #[arg(long)]
        subfield_degree: Option<u32>,
        /// Write the certificate here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Re-check a certificate from scratch
    Verify {
        cert: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print invariant factors and the change-of-basis matrix
    Rcf {
        input: PathBuf,
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive existence search over GF(2), order <= 4
    Oracle {
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        nil_index: u32,
        #[arg(long, default_value_t = 4)]
        potency: u32,
        #[arg(long)]
        json: bool,
    },
    /// Deterministic self-test suite (bit-identical output per seed)
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::ConstructionError | Error::ProjectionFailure => 3,
        _ => 2,
    }
}

fn load_matrix(path: &PathBuf, field: &Option<String>) -> Result<Mat, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let m = Mat::from_text(&text)?;
    if let Some(designation) = field {
        let expect = FieldSpec::parse_designation(designation)?;
        if m.field() != expect {
            return Err(Error::FieldMismatch);
        }
    }
    Ok(m)
}

fn report_text(report: &CheckReport) -> String {
    let mut s = String::new();
    s.push_str(&format!("sum_ok: {}\n", report.sum_ok));
    s.push_str(&format!("square_zero_ok: {}\n", report.square_zero_ok));
    s.push_str(&format!("diagonalizable_ok: {}\n", report.diagonalizable_ok));
    s.push_str(&format!(
        "potency_ok: {} (claimed s = {})\n",
        report.potency_ok, report.potency_claimed
    ));
    if !report.eigenvalues.is_empty() {
        let eig: Vec<String> = report
            .eigenvalues
            .iter()
            .map(|(v, m)| format!("{:x}^{m}", v.0))
            .collect();
        s.push_str(&format!("eigenvalues: {}\n", eig.join(" ")));
    }
    if report.failures.is_empty() {
        s.push_str("result: PASS\n");
    } else {
        s.push_str(&format!("result: FAIL ({})\n", report.failures.join(", ")));
    }
    s
}

fn report_json(report: &CheckReport) -> serde_json::Value {
    serde_json::json!({
        "sum_ok": report.sum_ok,
        "square_zero_ok": report.square_zero_ok,
        "diagonalizable_ok": report.diagonalizable_ok,
        "potency_ok": report.potency_ok,
        "potency_claimed": report.potency_claimed,
        "eigenvalues": report.eigenvalues.iter()
            .map(|(v, m)| serde_json::json!([format!("{:x}", v.0), m]))
            .collect::<Vec<_>>(),
        "failures": report.failures,
        "all_ok": report.all_ok(),
    })
}

fn cmd_split(
    input: PathBuf,
    field: Option<String>,
    mode: String,
    a: Option<String>,
    subfield_degree: Option<u32>,
    out: Option<PathBuf>,
) -> Result<(), Error> {
    let m = load_matrix(&input, &field)?;
    let mode = SplitMode::parse(&mode)?;
    let a = match a {
        Some(s) => {
            let bits = u64::from_str_radix(&s, 16)
                .map_err(|_| Error::Parse(format!("bad --a value: {s}")))?;
            if bits >= m.field().q() {
                return Err(Error::Parse(format!("--a out of field: {s}")));
            }
            Some(Fe(bits))
        }
        None => None,
    };
    let opts = SplitOptions {
        mode,
        a,
        subfield_degree,
    };
    let cert = match mode {
        SplitMode::DiagSplit => split_any(&m, &opts)?,
        SplitMode::Potent4F2 => split_f2(&m, &opts)?,
        SplitMode::PotentSubfield => {
            let d = subfield_degree.ok_or(Error::NotSubfield)?;
            split_subfield(&m, d, &opts)?
        }
    };
    let text = serde_json::to_string_pretty(&cert.to_json())
        .expect("certificate serialization cannot fail");
    match out {
        Some(path) => {
            std::fs::write(&path, text + "\n")
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            println!(
                "wrote certificate for order {} over {} to {}",
                m.n_rows(),
                m.field().designation(),
                path.display()
            );
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn cmd_verify(cert: PathBuf, json: bool) -> Result<i32, Error> {
    let text = std::fs::read_to_string(&cert)
        .map_err(|e| Error::Parse(format!("{}: {e}", cert.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("bad JSON: {e}")))?;
    let cert = SplitCertificate::from_json(&value)?;
    let report = check_certificate(&cert.a_mat.clone(), &cert);
    if json {
        println!("{}", serde_json::to_string_pretty(&report_json(&report)).unwrap());
    } else {
        print!("{}", report_text(&report));
    }
    Ok(if report.all_ok() { 0 } else { 1 })
}

fn cmd_rcf(input: PathBuf, field: Option<String>, json: bool) -> Result<(), Error> {
    let m = load_matrix(&input, &field)?;
    let r = rcf(&m)?;
    if json {
        let v = serde_json::json!({
            "field": m.field().designation(),
            "factors": r.factors.iter().map(|f| f.to_text()).collect::<Vec<_>>(),
            "basis": r.basis.to_text(),
        });
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        for f in &r.factors {
            println!("factor {}", f.to_text());
        }
        print!("{}", r.basis.to_text());
    }
    Ok(())
}

fn cmd_oracle(input: PathBuf, nil_index: u32, potency: u32, json: bool) -> Result<i32, Error> {
    let m = load_matrix(&input, &None)?;
    let (found, witness) = brute_force_exists(&m, nil_index, potency)?;
    if json {
        let v = serde_json::json!({
            "exists": found,
            "potency": potency,
            "nil_index_max": nil_index,
            "witness": witness.as_ref().map(|w| w.to_text()),
        });
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else if let Some(w) = witness {
        println!("exists: true (E^{potency} = E, (A+E)^{nil_index} = 0)");
        print!("{}", w.to_text());
    } else {
        println!("exists: false");
    }
    Ok(if found { 0 } else { 1 })
}

struct SelfTest {
    lines: Vec<(String, bool, usize)>,
}

impl SelfTest {
    fn record(&mut self, name: &str, pass: bool, cases: usize) {
        self.lines.push((name.to_string(), pass, cases));
    }
}

fn selftest_suite(seed: u64) -> Result<SelfTest, Error> {
    let mut st = SelfTest { lines: Vec::new() };
    let mut rng = SplitMix64::new(seed);

    for m in [2u32, 3] {
        let f = make_field(m, None)?;
        let mut pass = true;
        let mut cases = 0;
        for n in 1..=8 {
            for _ in 0..10 {
                let a = rng.mat(f, n);
                let cert = split_any(&a, &SplitOptions::default())?;
                pass &= check_certificate(&a, &cert).all_ok();
                cases += 1;
            }
        }
        st.record(&format!("diag-split random {}", f.designation()), pass, cases);
    }

    {
        let f = make_field(1, None)?;
        let opts = SplitOptions {
            mode: SplitMode::Potent4F2,
            ..Default::default()
        };
        let mut pass = true;
        let mut cases = 0;
        for n in 1..=10 {
            for _ in 0..10 {
                let a = rng.mat(f, n);
                let cert = split_f2(&a, &opts)?;
                let ok = check_certificate(&a, &cert).all_ok()
                    && cert.d_mat.pow(4)? == cert.d_mat;
                pass &= ok;
                cases += 1;
            }
        }
        st.record("potent4-f2 random gf(2)", pass, cases);
    }

    {
        let f = make_field(1, None)?;
        let tail: Vec<Fe> = [1u64, 0, 0, 1].iter().map(|&b| Fe(b)).collect();
        let c = companion_of(&Poly::monic_from_tail(f, &tail))?;
        let cert = split_f2(&c, &SplitOptions::default())?;
        let n_expect = Mat::from_rows(
            f,
            &[&[1, 1, 0, 0], &[1, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, 0, 0]],
        );
        let d_expect = Mat::from_rows(
            f,
            &[&[1, 1, 0, 1], &[0, 1, 0, 0], &[0, 1, 0, 1], &[0, 0, 1, 1]],
        );
        st.record(
            "golden x^4+x^3+1 decomposition",
            cert.n_mat == n_expect && cert.d_mat == d_expect,
            1,
        );
        let (found4, _) = brute_force_exists(&c, 2, 4)?;
        let (found2, _) = brute_force_exists(&c, 3, 2)?;
        st.record("oracle on x^4+x^3+1 companion", found4 && !found2, 2);
    }

    Ok(st)
}

fn cmd_selftest(seed: u64, json: bool) -> Result<i32, Error> {
    let st = selftest_suite(seed)?;
    let all = st.lines.iter().all(|&(_, p, _)| p);
    if json {
        let v = serde_json::json!({
            "seed": seed,
            "suites": st.lines.iter().map(|(n, p, c)| serde_json::json!({
                "name": n, "pass": p, "cases": c,
            })).collect::<Vec<_>>(),
            "all_pass": all,
        });
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        for (name, pass, cases) in &st.lines {
            println!(
                "{} {name} ({cases} cases)",
                if *pass { "PASS" } else { "FAIL" }
            );
        }
        println!("seed {seed}: {}", if all { "all pass" } else { "FAILURES" });
    }
    Ok(if all { 0 } else { 1 })
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    let outcome: Result<i32, Error> = match cli.command {
        Command::Split {
            input,
            field,
            mode,
            a,
            subfield_degree,
            out,
            json: _,
        } => cmd_split(input, field, mode, a, subfield_degree, out).map(|()| 0),
        Command::Verify { cert, json } => cmd_verify(cert, json),
        Command::Rcf { input, field, json } => cmd_rcf(input, field, json).map(|()| 0),
        Command::Oracle {
            input,
            nil_index,
            potency,
            json,
        } => cmd_oracle(input, nil_index, potency, json),
        Command::Selftest { seed, json } => cmd_selftest(seed, json),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}
