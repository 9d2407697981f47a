//! JSON encoding of algebras, modules, elements and case files.
//!
//! Rationals are strings `"p/q"`. Elements of a degree-one field are a
//! single rational string; elements of larger fields are coefficient arrays
//! (lowest degree first, padded to the field degree). Split-pair elements
//! are two-element arrays of such encodings.

use mvw_core::grp::BreveElement;
use mvw_core::hermod::{validate_module, HermitianModule, ModuleVector};
use mvw_core::invalg::fmat::FMatrix;
use mvw_core::invalg::{FactorElem, InvolutiveAlgebra, Sign, SimpleInvolutiveAlgebra};
use mvw_core::mvw::JacobiData;
use mvw_core::numfield::{format_rational, parse_rational, Matrix, NFElem, NumberField, Poly, Rational};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const FORMAT: u32 = 1;

/// An input problem: exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

pub type Parsed<T> = Result<T, InputError>;

fn err<T>(path: &str, msg: impl std::fmt::Display) -> Parsed<T> {
    Err(InputError(format!("{path}: {msg}")))
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FactorDesc {
    Trivial { modulus: Vec<String> },
    Quadratic { modulus: Vec<String>, sigma: Vec<String> },
    Split { modulus: Vec<String> },
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct WitnessDesc {
    pub delta: i64,
    pub blocks: Vec<Value>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct JacobiDesc {
    pub l: Value,
    pub lplus: Value,
}

/// The on-disk shape of a case.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CaseFile {
    pub format: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    pub algebra: Vec<FactorDesc>,
    pub epsilon: i64,
    pub gram: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDesc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jacobi: Option<JacobiDesc>,
}

/// A decoded case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Case {
    pub family: Option<String>,
    pub seed: Option<u64>,
    pub variant: Option<String>,
    pub module: HermitianModule,
    pub x: Option<Vec<FMatrix>>,
    pub witness: Option<BreveElement>,
    pub jacobi: Option<JacobiData>,
}

pub fn emit_rational(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn parse_rational_value(v: &Value, path: &str) -> Parsed<Rational> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| InputError(format!("{path}: malformed rational {s:?}"))),
        _ => err(path, "expected a rational string \"p/q\""),
    }
}

fn parse_int_poly(c: &[String], path: &str) -> Parsed<Poly> {
    let mut out = Vec::with_capacity(c.len());
    for (i, s) in c.iter().enumerate() {
        let q = parse_rational(s).ok_or_else(|| InputError(format!("{path}[{i}]: malformed coefficient {s:?}")))?;
        if !q.is_integer() {
            return err(&format!("{path}[{i}]"), "modulus coefficients must be integers");
        }
        out.push(q);
    }
    Ok(Poly::new(out))
}

fn emit_poly(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(format_rational).collect()
}

pub fn parse_algebra(descs: &[FactorDesc]) -> Parsed<InvolutiveAlgebra> {
    let mut factors = Vec::new();
    for (k, d) in descs.iter().enumerate() {
        let path = format!("algebra[{k}]");
        let modulus = match d {
            FactorDesc::Trivial { modulus } | FactorDesc::Quadratic { modulus, .. } | FactorDesc::Split { modulus } => modulus,
        };
        let field = NumberField::new(parse_int_poly(modulus, &format!("{path}.modulus"))?)
            .map_err(|e| InputError(format!("{path}.modulus: {e}")))?;
        let f = match d {
            FactorDesc::Trivial { .. } => SimpleInvolutiveAlgebra::FieldTrivial { field },
            FactorDesc::Split { .. } => SimpleInvolutiveAlgebra::SplitPair { field },
            FactorDesc::Quadratic { sigma, .. } => {
                let mut c = Vec::new();
                for (i, s) in sigma.iter().enumerate() {
                    c.push(parse_rational(s).ok_or_else(|| InputError(format!("{path}.sigma[{i}]: malformed rational {s:?}")))?);
                }
                let s = field.from_coeffs(c).map_err(|e| InputError(format!("{path}.sigma: {e}")))?;
                SimpleInvolutiveAlgebra::quadratic(field, s).map_err(|e| InputError(format!("{path}.sigma: {e}")))?
            }
        };
        factors.push(f);
    }
    InvolutiveAlgebra::new(factors).map_err(|e| InputError(format!("algebra: {e}")))
}

pub fn emit_algebra(a: &InvolutiveAlgebra) -> Vec<FactorDesc> {
    a.factors()
        .iter()
        .map(|f| {
            let modulus = emit_poly(f.field().modulus());
            match f {
                SimpleInvolutiveAlgebra::FieldTrivial { .. } => FactorDesc::Trivial { modulus },
                SimpleInvolutiveAlgebra::SplitPair { .. } => FactorDesc::Split { modulus },
                SimpleInvolutiveAlgebra::FieldQuadratic { field, sigma } => {
                    FactorDesc::Quadratic { modulus, sigma: sigma.coeffs(field.degree()).iter().map(format_rational).collect() }
                }
            }
        })
        .collect()
}

fn emit_nf(field: &NumberField, x: &NFElem) -> Value {
    let d = field.degree();
    if d == 1 {
        emit_rational(&x.coeffs(1)[0])
    } else {
        Value::Array(x.coeffs(d).iter().map(emit_rational).collect())
    }
}

fn parse_nf(field: &NumberField, v: &Value, path: &str) -> Parsed<NFElem> {
    let d = field.degree();
    let coeffs = match v {
        Value::String(_) if d == 1 => vec![parse_rational_value(v, path)?],
        Value::Array(items) => {
            if items.len() != d {
                return err(path, format!("expected {d} coefficients, found {}", items.len()));
            }
            items.iter().enumerate().map(|(i, c)| parse_rational_value(c, &format!("{path}[{i}]"))).collect::<Parsed<Vec<_>>>()?
        }
        _ => return err(path, if d == 1 { "expected a rational string" } else { "expected a coefficient array" }),
    };
    field.from_coeffs(coeffs).map_err(|e| InputError(format!("{path}: {e}")))
}

pub fn emit_elem(f: &SimpleInvolutiveAlgebra, x: &FactorElem) -> Value {
    match x {
        FactorElem::Field(a) => emit_nf(f.field(), a),
        FactorElem::Pair(a, b) => Value::Array(vec![emit_nf(f.field(), a), emit_nf(f.field(), b)]),
    }
}

pub fn parse_elem(f: &SimpleInvolutiveAlgebra, v: &Value, path: &str) -> Parsed<FactorElem> {
    if f.is_split() {
        match v {
            Value::Array(items) if items.len() == 2 => Ok(FactorElem::Pair(
                parse_nf(f.field(), &items[0], &format!("{path}[0]"))?,
                parse_nf(f.field(), &items[1], &format!("{path}[1]"))?,
            )),
            _ => err(path, "expected a pair [first, second]"),
        }
    } else {
        Ok(FactorElem::Field(parse_nf(f.field(), v, path)?))
    }
}

pub fn emit_matrix(f: &SimpleInvolutiveAlgebra, m: &FMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array((0..m.cols()).map(|j| emit_elem(f, m.get(i, j))).collect())).collect())
}

pub fn parse_matrix(f: &SimpleInvolutiveAlgebra, v: &Value, path: &str) -> Parsed<FMatrix> {
    let rows = v.as_array().ok_or_else(|| InputError(format!("{path}: expected an array of rows")))?;
    let n = rows.len();
    let mut data = Vec::with_capacity(n * n);
    for (i, r) in rows.iter().enumerate() {
        let r = r.as_array().ok_or_else(|| InputError(format!("{path}[{i}]: expected a row array")))?;
        if r.len() != n {
            return err(&format!("{path}[{i}]"), format!("matrix must be square: row has {} entries, expected {n}", r.len()));
        }
        for (j, x) in r.iter().enumerate() {
            data.push(parse_elem(f, x, &format!("{path}[{i}][{j}]"))?);
        }
    }
    Matrix::from_vec(n, n, data).map_err(|e| InputError(format!("{path}: {e}")))
}

pub fn emit_blocks(a: &InvolutiveAlgebra, blocks: &[FMatrix]) -> Vec<Value> {
    a.factors().iter().zip(blocks).map(|(f, m)| emit_matrix(f, m)).collect()
}

/// Per-factor square matrices, sized like the module's Gram blocks when
/// `e` is given.
pub fn parse_blocks(a: &InvolutiveAlgebra, e: Option<&HermitianModule>, v: &[Value], path: &str) -> Parsed<Vec<FMatrix>> {
    if v.len() != a.factors().len() {
        return err(path, format!("expected {} blocks (one per factor), found {}", a.factors().len(), v.len()));
    }
    let mut out = Vec::new();
    for (k, (f, b)) in a.factors().iter().zip(v).enumerate() {
        let p = format!("{path}[{k}]");
        let m = parse_matrix(f, b, &p)?;
        if let Some(e) = e {
            if m.rows() != e.gram(k).rows() {
                return err(&p, format!("expected a {0}x{0} block, found {1}x{1}", e.gram(k).rows(), m.rows()));
            }
        }
        out.push(m);
    }
    Ok(out)
}

pub fn emit_vector(a: &InvolutiveAlgebra, v: &ModuleVector) -> Value {
    Value::Array(
        a.factors().iter().zip(&v.parts).map(|(f, p)| Value::Array(p.iter().map(|x| emit_elem(f, x)).collect())).collect(),
    )
}

pub fn parse_vector(e: &HermitianModule, v: &Value, path: &str) -> Parsed<ModuleVector> {
    let parts = v.as_array().ok_or_else(|| InputError(format!("{path}: expected one array per factor")))?;
    if parts.len() != e.num_factors() {
        return err(path, format!("expected {} factor parts, found {}", e.num_factors(), parts.len()));
    }
    let mut out = Vec::new();
    for (k, p) in parts.iter().enumerate() {
        let pp = format!("{path}[{k}]");
        let items = p.as_array().ok_or_else(|| InputError(format!("{pp}: expected an array")))?;
        if items.len() != e.gram(k).rows() {
            return err(&pp, format!("expected {} coordinates, found {}", e.gram(k).rows(), items.len()));
        }
        out.push(items.iter().enumerate().map(|(i, x)| parse_elem(e.factor(k), x, &format!("{pp}[{i}]"))).collect::<Parsed<Vec<_>>>()?);
    }
    Ok(ModuleVector { parts: out })
}

fn parse_sign(v: i64, path: &str) -> Parsed<Sign> {
    Sign::from_i64(v).ok_or_else(|| InputError(format!("{path}: must be 1 or -1, found {v}")))
}

/// Decodes a module from its algebra, sign and Gram blocks, reporting the
/// first violated axiom with its location.
pub fn parse_module(algebra: &[FactorDesc], epsilon: i64, gram: &[Value]) -> Parsed<HermitianModule> {
    let a = parse_algebra(algebra)?;
    let eps = parse_sign(epsilon, "epsilon")?;
    let grams = parse_blocks(&a, None, gram, "gram")?;
    let e = HermitianModule::from_parts(a, eps, grams);
    validate_module(&e).map_err(|v| InputError(format!("gram: {v}")))?;
    Ok(e)
}

impl CaseFile {
    pub fn decode(&self) -> Parsed<Case> {
        if self.format != FORMAT {
            return err("format", format!("unsupported format {} (expected {FORMAT})", self.format));
        }
        let module = parse_module(&self.algebra, self.epsilon, &self.gram)?;
        let a = module.algebra().clone();
        let x = match &self.x {
            Some(x) => Some(parse_blocks(&a, Some(&module), x, "x")?),
            None => None,
        };
        let witness = match &self.witness {
            Some(w) => Some(BreveElement::new(
                parse_blocks(&a, Some(&module), &w.blocks, "witness.blocks")?,
                parse_sign(w.delta, "witness.delta")?,
            )),
            None => None,
        };
        let jacobi = match &self.jacobi {
            Some(j) => Some(JacobiData { l: parse_vector(&module, &j.l, "jacobi.l")?, lplus: parse_vector(&module, &j.lplus, "jacobi.lplus")? }),
            None => None,
        };
        Ok(Case { family: self.family.clone(), seed: self.seed, variant: self.variant.clone(), module, x, witness, jacobi })
    }
}

impl Case {
    pub fn encode(&self) -> CaseFile {
        let a = self.module.algebra();
        CaseFile {
            format: FORMAT,
            family: self.family.clone(),
            seed: self.seed,
            variant: self.variant.clone(),
            algebra: emit_algebra(a),
            epsilon: self.module.epsilon().value(),
            gram: emit_blocks(a, self.module.grams()),
            x: self.x.as_ref().map(|x| emit_blocks(a, x)),
            witness: self.witness.as_ref().map(|w| WitnessDesc { delta: w.delta.value(), blocks: emit_blocks(a, &w.blocks) }),
            jacobi: self.jacobi.as_ref().map(|j| JacobiDesc { l: emit_vector(a, &j.l), lplus: emit_vector(a, &j.lplus) }),
        }
    }
}

pub fn parse_case(text: &str) -> Parsed<Case> {
    let file: CaseFile = serde_json::from_str(text).map_err(|e| InputError(format!("case file: {e}")))?;
    file.decode()
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn emit_case(c: &Case) -> String {
    to_json(&c.encode())
}
