//! Helpers shared by the integration tests: golden CLI cases and the
//! serialization round-trip property.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use mvw_cli::codec::{emit_case, emit_elem, emit_matrix, emit_rational, parse_case, parse_elem, parse_matrix, parse_rational_value, Case};
use mvw_cli::commands::{random_case, VariantArg};
use mvw_core::families::{random_elem, random_module};
use mvw_core::grp::BreveElement;
use mvw_core::hermod::ModuleVector;
use mvw_core::invalg::fmat::FMatrix;
use mvw_core::invalg::{Sign, SimpleInvolutiveAlgebra};
use mvw_core::mvw::JacobiData;
use mvw_core::numfield::{Matrix, NumberField, Poly, Rational};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub struct GoldenResult {
    pub command: String,
    pub args: Vec<String>,
    pub passed: bool,
    pub detail: String,
}

/// Runs every case of the golden manifest against the built binary.
pub fn run_golden() -> Vec<GoldenResult> {
    let dir = golden_dir();
    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap();
    let mut out = Vec::new();
    for c in manifest.as_array().unwrap() {
        let args: Vec<String> = c["args"].as_array().unwrap().iter().map(|a| a.as_str().unwrap().to_string()).collect();
        let want = c["exit"].as_i64().unwrap() as i32;
        let r = Command::new(env!("CARGO_BIN_EXE_mvw")).args(&args).current_dir(&dir).output().unwrap();
        let stdout = String::from_utf8_lossy(&r.stdout);
        let stderr = String::from_utf8_lossy(&r.stderr);
        let code = r.status.code().unwrap_or(-1);
        let has = |key: &str, text: &str| c.get(key).and_then(|v| v.as_array()).is_none_or(|v| v.iter().all(|s| text.contains(s.as_str().unwrap())));
        let passed = code == want && has("contains", &stdout) && has("stderr", &stderr);
        out.push(GoldenResult {
            command: args[0].clone(),
            detail: format!("exit {code} (expected {want})"),
            args,
            passed,
        });
    }
    out
}

fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    let n = BigInt::from(rng.gen::<i64>()) * BigInt::from(rng.gen_range(1..=1_000_000i64)).pow(rng.gen_range(0..3));
    let d = BigInt::from(rng.gen_range(1..=u32::MAX as i64)).pow(rng.gen_range(1..3));
    Rational::new(n, d)
}

fn algebras() -> Vec<SimpleInvolutiveAlgebra> {
    let sqrt2 = NumberField::new(Poly::from_ints(&[-2, 0, 1])).unwrap();
    let cbrt2 = NumberField::new(Poly::from_ints(&[-2, 0, 0, 1])).unwrap();
    let sqrt3 = NumberField::new(Poly::from_ints(&[-3, 0, 1])).unwrap();
    let neg3 = sqrt3.elem(&Poly::from_ints(&[0, -1]));
    vec![
        SimpleInvolutiveAlgebra::rationals(),
        SimpleInvolutiveAlgebra::gaussian(),
        SimpleInvolutiveAlgebra::FieldTrivial { field: sqrt2 },
        SimpleInvolutiveAlgebra::FieldTrivial { field: cbrt2.clone() },
        SimpleInvolutiveAlgebra::quadratic(sqrt3, neg3).unwrap(),
        SimpleInvolutiveAlgebra::split_rationals(),
        SimpleInvolutiveAlgebra::SplitPair { field: cbrt2 },
    ]
}

fn big_elem<R: Rng>(f: &SimpleInvolutiveAlgebra, rng: &mut R) -> mvw_core::invalg::FactorElem {
    let c: Vec<Rational> = (0..f.dim_q()).map(|_| random_rational(rng)).collect();
    f.from_coords(&c)
}

fn random_fmatrix<R: Rng>(f: &SimpleInvolutiveAlgebra, n: usize, rng: &mut R) -> FMatrix {
    Matrix::from_fn(n, n, |_, _| big_elem(f, rng))
}

/// One random serializable value; returns whether it round-trips exactly
/// (value equality and byte-identical re-emission).
pub fn roundtrip_one(i: usize, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let algs = algebras();
    match i % 5 {
        0 => {
            let q = random_rational(rng);
            let v = emit_rational(&q);
            let back = parse_rational_value(&v, "q").map_err(|e| e.to_string())?;
            (back == q).then_some(()).ok_or_else(|| format!("rational {v}"))
        }
        1 => {
            let f = &algs[rng.gen_range(0..algs.len())];
            let x = big_elem(f, rng);
            let v = emit_elem(f, &x);
            let back = parse_elem(f, &v, "x").map_err(|e| e.to_string())?;
            (back == x && emit_elem(f, &back) == v).then_some(()).ok_or_else(|| format!("element {v}"))
        }
        2 => {
            let f = &algs[rng.gen_range(0..algs.len())];
            let n = rng.gen_range(1..=4);
            let m = random_fmatrix(f, n, rng);
            let v = emit_matrix(f, &m);
            let back = parse_matrix(f, &v, "m").map_err(|e| e.to_string())?;
            (back == m).then_some(()).ok_or_else(|| "matrix".to_string())
        }
        3 => {
            let fams = ["sp", "o", "gl", "u"];
            let fam = fams[rng.gen_range(0..4)];
            let rank = if fam == "sp" { 2 * rng.gen_range(1..=2) } else { rng.gen_range(1..=3) };
            let v = [VariantArg::Group, VariantArg::Lie][rng.gen_range(0..2)];
            let c = random_case(fam, rank, rng.gen(), rng.gen(), Some(v)).map_err(|o| o.stderr)?;
            check_case(&c)
        }
        _ => {
            let f = &algs[rng.gen_range(0..algs.len())];
            let eps = if f.is_trivial() { Sign::Plus } else { [Sign::Plus, Sign::Minus][rng.gen_range(0..2)] };
            let n = rng.gen_range(1..=3);
            let e = random_module(f, eps, n, rng).map_err(|e| e.to_string())?;
            let x = random_fmatrix(f, n, rng);
            let w = BreveElement::new(vec![random_fmatrix(f, n, rng)], [Sign::Plus, Sign::Minus][rng.gen_range(0..2)]);
            let vec_of = |rng: &mut ChaCha8Rng| ModuleVector { parts: vec![(0..n).map(|_| random_elem(f, rng)).collect()] };
            let jd = JacobiData { l: vec_of(rng), lplus: vec_of(rng) };
            let c = Case {
                family: None,
                seed: Some(rng.gen()),
                variant: Some("jacobi".into()),
                module: e,
                x: Some(vec![x]),
                witness: Some(w),
                jacobi: Some(jd),
            };
            check_case(&c)
        }
    }
}

fn check_case(c: &Case) -> Result<(), String> {
    let text = emit_case(c);
    let back = parse_case(&text).map_err(|e| e.to_string())?;
    if back != *c {
        return Err("case value differs".into());
    }
    if emit_case(&back) != text {
        return Err("case bytes differ".into());
    }
    Ok(())
}

/// Runs `n` round-trip checks; returns the failures.
pub fn roundtrip(n: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).filter_map(|i| roundtrip_one(i, &mut rng).err().map(|e| format!("value {i}: {e}"))).collect()
}
