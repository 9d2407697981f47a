//! Independent exact checks of a claimed witness.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{apply_breve, so_required_sign, JacobiData};
use crate::grp::{conjugate_raw, is_breve, is_lie, is_unitary, BreveElement};
use crate::hermod::HermitianModule;
use crate::invalg::fmat::{self, FMatrix};
use crate::invalg::Sign;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Variant {
    Group,
    Lie,
    So,
    Jacobi(JacobiData),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    fn push(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name, passed, detail: detail.into() });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn passed(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.passed)
    }

    /// Names of failed checks, comma separated.
    pub fn failures(&self) -> String {
        let v: Vec<&str> = self.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        v.join(", ")
    }
}

fn negate(e: &HermitianModule, x: &[FMatrix]) -> Vec<FMatrix> {
    x.iter().enumerate().map(|(k, m)| fmat::neg(e.factor(k), m)).collect()
}

fn inverse(e: &HermitianModule, x: &[FMatrix]) -> Option<Vec<FMatrix>> {
    x.iter().enumerate().map(|(k, m)| fmat::inverse(e.factor(k), m).ok()).collect()
}

/// Runs every check for the variant; malformed input yields failed
/// entries, never an error.
pub fn verify_breve_conjugation(e: &HermitianModule, x: &[FMatrix], g: &BreveElement, variant: &Variant) -> VerifyReport {
    let mut r = VerifyReport::default();
    let shapes = e.check_map(x).and(e.check_map(&g.blocks));
    if let Err(err) = shapes {
        r.push("shape", false, format!("{err}"));
        return r;
    }
    r.push("shape", true, "");
    r.push("delta", g.delta == Sign::Minus, format!("delta = {}", g.delta));
    r.push("membership", is_breve(e, &g.blocks, Sign::Minus).unwrap_or(false), "form reversal and invertibility");
    let lie = matches!(variant, Variant::Lie);
    let element_ok = if lie { is_lie(e, x).unwrap_or(false) } else { is_unitary(e, x).unwrap_or(false) };
    r.push("element", element_ok, if lie { "x in u(E)" } else { "x in U(E)" });
    let target = if lie { Some(negate(e, x)) } else { inverse(e, x) };
    let conj = conjugate_raw(e, g, x).ok();
    let eq = match (conj, target) {
        (Some(c), Some(t)) => c == t,
        _ => false,
    };
    r.push("equation", eq, if lie { "g x g^-1 = -x" } else { "g x g^-1 = x^-1" });
    match variant {
        Variant::So => {
            let want = so_required_sign(e);
            let ok = e.single().ok().filter(|(f, _)| f.is_trivial() && e.epsilon() == Sign::Plus).is_some_and(|(f, _)| {
                fmat::det(f, &g.blocks[0]).is_ok_and(|d| d == f.from_int(want.value()))
            });
            r.push("determinant", ok, format!("det g = {want}"));
        }
        Variant::Jacobi(jd) => {
            let ok = e.check_vector(&jd.lplus).is_ok() && apply_breve(e, g, &jd.lplus) == jd.lplus;
            r.push("fixes_lplus", ok, "g fixes the L+ generator");
        }
        Variant::Group | Variant::Lie => {}
    }
    r
}
