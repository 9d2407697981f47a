//! The subcommands, each returning its stdout document and exit code.

use std::fmt::Display;

use mvw_core::families::{standard_module, Family};
use mvw_core::grp::{random_lie, random_nilpotent, random_unipotent, random_unitary, BreveElement, LieElement};
use mvw_core::hermod::{orthogonal_decompose, HermitianModule, SimpleSummandLabel};
use mvw_core::invalg::fmat::FMatrix;
use mvw_core::invalg::{DiscriminantClass, Sign};
use mvw_core::mvw::{mvw_element, mvw_jacobi, mvw_lie, mvw_so, verify_breve_conjugation, Variant, VerifyReport};
use mvw_core::sl2mod::{isotypic_decompose, jacobson_morozov, Sl2Case, Sl2Triple};
use mvw_core::Error;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::codec::{emit_blocks, emit_case, emit_elem, emit_vector, parse_case, to_json, Case, InputError, FORMAT};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// Result of one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(doc: &Value, code: i32) -> Self {
        Outcome { stdout: to_json(doc), stderr: String::new(), code }
    }

    pub fn invalid(msg: impl Display) -> Self {
        Outcome { stdout: String::new(), stderr: format!("error: {msg}\n"), code: EXIT_INVALID }
    }

    fn failed(msg: impl Display) -> Self {
        Outcome { stdout: String::new(), stderr: format!("error: {msg}\n"), code: EXIT_FAIL }
    }
}

/// Exit code for a library error: search exhaustion and internal failures
/// are verification failures, everything else is bad input.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::NoWitness(_) | Error::Internal(_) => EXIT_FAIL,
        _ => EXIT_INVALID,
    }
}

fn from_error(e: &Error) -> Outcome {
    if error_code(e) == EXIT_FAIL {
        Outcome::failed(e)
    } else {
        Outcome::invalid(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum VariantArg {
    Group,
    Lie,
    So,
    Jacobi,
}

impl VariantArg {
    pub fn name(self) -> &'static str {
        match self {
            VariantArg::Group => "group",
            VariantArg::Lie => "lie",
            VariantArg::So => "so",
            VariantArg::Jacobi => "jacobi",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "group" => Some(VariantArg::Group),
            "lie" => Some(VariantArg::Lie),
            "so" => Some(VariantArg::So),
            "jacobi" => Some(VariantArg::Jacobi),
            _ => None,
        }
    }
}

fn class_value(e: &HermitianModule, factor: usize, c: &DiscriminantClass) -> Value {
    let comps = &c.representative.components;
    let x = if comps.len() == 1 { &comps[0] } else { &comps[factor] };
    emit_elem(e.factor(factor), x)
}

pub fn classify(case: &Case) -> Outcome {
    let e = &case.module;
    let summands = match orthogonal_decompose(e) {
        Ok(s) => s,
        Err(err) => return from_error(&err),
    };
    let a = e.algebra();
    let items: Vec<Value> = summands
        .iter()
        .map(|s| {
            let label = match &s.label {
                SimpleSummandLabel::SplitRank1 => json!({"kind": "split_rank1"}),
                SimpleSummandLabel::SymplecticRank2 => json!({"kind": "symplectic_rank2"}),
                SimpleSummandLabel::Diagonal(c) => json!({"kind": "diagonal", "class": class_value(e, s.factor, c)}),
            };
            json!({
                "factor": s.factor,
                "rank": s.basis.len(),
                "label": label,
                "basis": s.basis.iter().map(|v| emit_vector(a, v)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut doc = json!({"format": FORMAT, "command": "classify", "summands": items});
    if let Some(x) = &case.x {
        match sl2_summands(e, x) {
            Ok(v) => doc["sl2"] = v,
            Err(err) => return from_error(&err),
        }
    }
    Outcome::ok(&doc, EXIT_OK)
}

fn sl2_summands(e: &HermitianModule, x: &[FMatrix]) -> mvw_core::Result<Value> {
    let xe = LieElement { blocks: x.to_vec() };
    let zero = x.iter().enumerate().all(|(k, m)| mvw_core::invalg::fmat::is_zero(e.factor(k), m));
    let t = if zero { Sl2Triple { h: xe.clone(), e: xe.clone(), f: xe } } else { jacobson_morozov(e, &xe)? };
    let a = e.algebra();
    let items: Vec<Value> = isotypic_decompose(e, &t)?
        .iter()
        .map(|s| {
            let case = match &s.label.case {
                Sl2Case::SplitAnyRank => json!({"kind": "split"}),
                Sl2Case::QuadraticEvenRank => json!({"kind": "quadratic_even"}),
                Sl2Case::QuadraticOdd(c) => json!({"kind": "quadratic_odd", "class": class_value(e, s.factor, c)}),
                Sl2Case::SymplecticEven { irreducible } => json!({"kind": "symplectic", "irreducible": irreducible}),
                Sl2Case::OrthogonalRank4d => json!({"kind": "orthogonal_4d"}),
                Sl2Case::OrthogonalOdd(c) => json!({"kind": "orthogonal_odd", "class": class_value(e, s.factor, c)}),
            };
            json!({
                "factor": s.factor,
                "rank": s.label.rank,
                "label": case,
                "basis": s.basis.iter().map(|v| emit_vector(a, v)).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(Value::Array(items))
}

fn report_value(r: &VerifyReport) -> Value {
    json!({
        "all_pass": r.all_pass(),
        "checks": r.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
    })
}

fn variant_of(case: &Case, flag: Option<VariantArg>) -> Result<VariantArg, InputError> {
    match (flag, &case.variant) {
        (Some(v), _) => Ok(v),
        (None, Some(s)) => VariantArg::parse(s).ok_or_else(|| InputError(format!("variant: unknown variant {s:?}"))),
        (None, None) => Ok(VariantArg::Group),
    }
}

fn core_variant(case: &Case, v: VariantArg) -> Result<Variant, InputError> {
    Ok(match v {
        VariantArg::Group => Variant::Group,
        VariantArg::Lie => Variant::Lie,
        VariantArg::So => Variant::So,
        VariantArg::Jacobi => Variant::Jacobi(case.jacobi.clone().ok_or_else(|| InputError("jacobi: the jacobi variant needs L and L+".into()))?),
    })
}

fn required_x(case: &Case) -> Result<&[FMatrix], InputError> {
    case.x.as_deref().ok_or_else(|| InputError("x: the case has no element".into()))
}

/// Computes a witness for every variant.
pub fn witness_for(case: &Case, v: VariantArg, max_search: usize) -> Result<mvw_core::Result<BreveElement>, InputError> {
    let e = &case.module;
    let x = required_x(case)?;
    let group = BreveElement::new(x.to_vec(), Sign::Plus);
    Ok(match v {
        VariantArg::Group => mvw_element(e, &group),
        VariantArg::Lie => mvw_lie(e, &LieElement { blocks: x.to_vec() }),
        VariantArg::So => mvw_so(e, &group, max_search),
        VariantArg::Jacobi => {
            let jd = case.jacobi.as_ref().ok_or_else(|| InputError("jacobi: the jacobi variant needs L and L+".into()))?;
            mvw_jacobi(e, jd, &group)
        }
    })
}

pub fn mvw(case: &Case, flag: Option<VariantArg>, max_search: usize) -> Outcome {
    let v = match variant_of(case, flag) {
        Ok(v) => v,
        Err(e) => return Outcome::invalid(e),
    };
    let g = match witness_for(case, v, max_search) {
        Err(e) => return Outcome::invalid(e),
        Ok(Err(e)) => return from_error(&e),
        Ok(Ok(g)) => g,
    };
    let variant = match core_variant(case, v) {
        Ok(x) => x,
        Err(e) => return Outcome::invalid(e),
    };
    let x = case.x.as_deref().unwrap_or_default();
    let report = verify_breve_conjugation(&case.module, x, &g, &variant);
    let doc = json!({
        "format": FORMAT,
        "command": "mvw",
        "variant": v.name(),
        "witness": {"delta": g.delta.value(), "blocks": emit_blocks(case.module.algebra(), &g.blocks)},
        "report": report_value(&report),
    });
    Outcome::ok(&doc, if report.all_pass() { EXIT_OK } else { EXIT_FAIL })
}

pub fn verify(case: &Case, flag: Option<VariantArg>) -> Outcome {
    let run = || -> Result<(VariantArg, VerifyReport), InputError> {
        let v = variant_of(case, flag)?;
        let variant = core_variant(case, v)?;
        let x = required_x(case)?;
        let g = case.witness.as_ref().ok_or_else(|| InputError("witness: the case has no witness".into()))?;
        Ok((v, verify_breve_conjugation(&case.module, x, g, &variant)))
    };
    match run() {
        Err(e) => Outcome::invalid(e),
        Ok((v, report)) => {
            let doc = json!({"format": FORMAT, "command": "verify", "variant": v.name(), "report": report_value(&report)});
            Outcome::ok(&doc, if report.all_pass() { EXIT_OK } else { EXIT_FAIL })
        }
    }
}

/// A reproducible random case.
pub fn random_case(family: &str, rank: usize, seed: u64, unipotent: bool, variant: Option<VariantArg>) -> Result<Case, Outcome> {
    let fam = Family::parse(family).ok_or_else(|| Outcome::invalid(format!("--family: unsupported family {family:?} (expected sp, o, gl or u)")))?;
    let e = standard_module(fam, rank).map_err(|e| Outcome::invalid(format!("--rank: {e}")))?;
    let v = variant.unwrap_or(VariantArg::Group);
    if v == VariantArg::Jacobi {
        return Err(Outcome::invalid("--variant: random cases do not carry Jacobi data"));
    }
    if v == VariantArg::So && fam != Family::O {
        return Err(Outcome::invalid("--variant: so needs the o family"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = match (v, unipotent) {
        (VariantArg::Lie, true) => random_nilpotent(&e, &mut rng).map(|x| x.blocks),
        (VariantArg::Lie, false) => random_lie(&e, &mut rng).map(|x| x.blocks),
        (_, true) => random_unipotent(&e, &mut rng).map(|x| x.blocks),
        (_, false) => random_unitary(&e, &mut rng).map(|x| x.blocks),
    }
    .map_err(|e| from_error(&e))?;
    Ok(Case {
        family: Some(fam.name().into()),
        seed: Some(seed),
        variant: Some(v.name().into()),
        module: e,
        x: Some(x),
        witness: None,
        jacobi: None,
    })
}

pub fn random(family: &str, rank: usize, seed: u64, unipotent: bool, variant: Option<VariantArg>) -> Outcome {
    match random_case(family, rank, seed, unipotent, variant) {
        Ok(c) => Outcome { stdout: emit_case(&c), stderr: String::new(), code: EXIT_OK },
        Err(o) => o,
    }
}

/// Runs `mvw` on every case of `{"format": 1, "cases": [...]}`.
pub fn batch(text: &str, max_search: usize) -> Outcome {
    let doc: Value = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(e) => return Outcome::invalid(format!("batch file: {e}")),
    };
    if doc.get("format") != Some(&json!(FORMAT)) {
        return Outcome::invalid(format!("format: expected {FORMAT}"));
    }
    let Some(cases) = doc.get("cases").and_then(|c| c.as_array()) else {
        return Outcome::invalid("cases: expected an array of case objects");
    };
    let mut results = Vec::new();
    let (mut passed, mut failed, mut invalid) = (0, 0, 0);
    let mut stderr = String::new();
    for (i, c) in cases.iter().enumerate() {
        let out = match parse_case(&c.to_string()) {
            Ok(case) => mvw(&case, None, max_search),
            Err(e) => Outcome::invalid(e),
        };
        match out.code {
            EXIT_OK => passed += 1,
            EXIT_FAIL => failed += 1,
            _ => invalid += 1,
        }
        if !out.stderr.is_empty() {
            stderr.push_str(&format!("case {i}: {}", out.stderr));
        }
        let report = serde_json::from_str::<Value>(&out.stdout).ok().and_then(|v| v.get("report").cloned());
        results.push(json!({"index": i, "exit": out.code, "report": report}));
    }
    let code = if invalid > 0 {
        EXIT_INVALID
    } else if failed > 0 {
        EXIT_FAIL
    } else {
        EXIT_OK
    };
    let doc = json!({
        "format": FORMAT,
        "command": "batch",
        "results": results,
        "summary": {"total": cases.len(), "passed": passed, "failed": failed, "invalid": invalid},
    });
    Outcome { stdout: to_json(&doc), stderr, code }
}
