//! Per-diagram reports and table sweeps with conjecture checks.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::alexander::{diagram_smith_form, module_invariants, AlexanderError, ModuleInvariants, SmithForm};
use crate::diagram::Diagram;
use crate::gf::QuadField;
use crate::invariant::{
    conjecture_check, phi_brute_force, phi_closed_form, phi_factored_text, ColoringSpace, InvariantError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReportError {
    #[error(transparent)]
    Alexander(#[from] AlexanderError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct KnotReport {
    pub name: String,
    pub p: u32,
    pub kappa: u32,
    pub components: usize,
    pub crossings: usize,
    pub nu0: usize,
    pub nuh: usize,
    pub nuh_prime: usize,
    pub exponents: Vec<u32>,
    pub dim: usize,
    pub r: usize,
    pub s: usize,
    /// Coefficients of `u^0, ..., u^(p-1)`.
    pub phi: Vec<u128>,
    pub phi_text: String,
    pub phi_factored: String,
    pub c1: bool,
    pub c2: bool,
    pub consistent: bool,
    /// `None` when enumeration exceeds the cap.
    pub brute_agrees: Option<bool>,
}

impl KnotReport {
    /// `Phi(1) = p^(2 dim)`, `dim = nu_0 + nu_h`, `s >= 1`, and `r <= nu_h` for knots.
    pub fn sanity(&self) -> bool {
        let total: u128 = self.phi.iter().sum();
        let expect = (self.p as u128).checked_pow(2 * self.dim as u32);
        Some(total) == expect
            && self.dim == self.nu0 + self.nuh
            && self.s >= 1
            && (self.nu0 != 1 || self.r <= self.nuh)
    }
}

/// Full pipeline for one diagram; `brute_cap = None` skips enumeration.
pub fn analyze(name: &str, d: &Diagram, field: &QuadField, brute_cap: Option<u128>) -> Result<KnotReport, ReportError> {
    let sf = diagram_smith_form(d, field.p())?;
    analyze_with(name, d, field, &sf, brute_cap)
}

/// As [`analyze`] with a precomputed Smith form over `Lambda_p`.
pub fn analyze_with(
    name: &str,
    d: &Diagram,
    field: &QuadField,
    sf: &SmithForm,
    brute_cap: Option<u128>,
) -> Result<KnotReport, ReportError> {
    let inv: ModuleInvariants = module_invariants(sf, field);
    let space = ColoringSpace::new(d, field);
    let cc = conjecture_check(&space, sf, &inv)?;
    let p = field.p();
    let phi = phi_closed_form(cc.r, cc.s as i64, p)?;
    let brute_agrees = match brute_cap {
        None => None,
        Some(cap) => match phi_brute_force(&space, cap) {
            Ok(b) => Some(b == phi),
            Err(InvariantError::EnumerationCapExceeded { .. }) => None,
            Err(e) => return Err(e.into()),
        },
    };
    Ok(KnotReport {
        name: name.to_string(),
        p,
        kappa: field.kappa(),
        components: d.components(),
        crossings: d.crossings().len(),
        nu0: inv.nu0,
        nuh: inv.nuh,
        nuh_prime: inv.nuh_prime,
        exponents: inv.exponents,
        dim: space.dim(),
        r: cc.r,
        s: cc.s,
        phi_text: phi.to_string(),
        phi_factored: phi_factored_text(cc.r, cc.s, p),
        phi: phi.coeffs().to_vec(),
        c1: cc.c1,
        c2: cc.c2,
        consistent: cc.consistent,
        brute_agrees,
    })
}

/// One row of the classification by `(p, kappa, exponents, r)`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SummaryRow {
    pub p: u32,
    pub kappa: u32,
    pub exponents: Vec<u32>,
    pub r: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Counterexample {
    pub name: String,
    pub p: u32,
    pub kappa: u32,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct SweepReport {
    pub records: Vec<KnotReport>,
    pub summary: Vec<SummaryRow>,
    pub counterexamples: Vec<Counterexample>,
}

impl SweepReport {
    /// Summary counts sum to the record count.
    pub fn is_balanced(&self) -> bool {
        self.summary.iter().map(|r| r.count).sum::<usize>() == self.records.len()
    }
}

fn problems(rep: &KnotReport) -> Vec<String> {
    let mut out = Vec::new();
    if !rep.c1 {
        out.push(format!("rank eta = {} but nu'_h = {}", rep.r, rep.nuh_prime));
    }
    if !rep.c2 {
        out.push("rad eta differs from rep'".to_string());
    }
    if !rep.consistent {
        out.push("internal cross-checks disagree".to_string());
    }
    if rep.brute_agrees == Some(false) {
        out.push("brute-force state sum differs from the closed form".to_string());
    }
    if !rep.sanity() {
        out.push("record fails Phi(1), s >= 1 or r <= nu_h".to_string());
    }
    out
}

/// Analyze every `(diagram, field)` pair; output order follows the input
/// regardless of scheduling. Brute force runs only within `brute_cap` states
/// and, if given, `max_dim` coloring dimensions.
pub fn sweep(
    table: &[(String, Diagram)],
    fields: &[QuadField],
    brute_cap: Option<u128>,
    max_dim: Option<usize>,
) -> SweepReport {
    let per_knot: Vec<Vec<Result<KnotReport, (u32, u32, String)>>> = table
        .par_iter()
        .map(|(name, d)| {
            let mut forms: BTreeMap<u32, Result<SmithForm, String>> = BTreeMap::new();
            fields
                .iter()
                .map(|k| {
                    let sf = forms
                        .entry(k.p())
                        .or_insert_with(|| diagram_smith_form(d, k.p()).map_err(|e| e.to_string()));
                    let sf = sf.as_ref().map_err(|e| (k.p(), k.kappa(), e.clone()))?;
                    let cap = match (brute_cap, max_dim) {
                        (Some(c), Some(m)) => Some(c.min((k.p() as u128).saturating_pow(2 * m as u32))),
                        (c, _) => c,
                    };
                    analyze_with(name, d, k, sf, cap).map_err(|e| (k.p(), k.kappa(), e.to_string()))
                })
                .collect()
        })
        .collect();
    let mut report = SweepReport::default();
    let mut counts: BTreeMap<(u32, u32, Vec<u32>, usize), usize> = BTreeMap::new();
    for ((name, _), results) in table.iter().zip(per_knot) {
        for res in results {
            match res {
                Ok(rep) => {
                    for reason in problems(&rep) {
                        report.counterexamples.push(Counterexample {
                            name: name.clone(),
                            p: rep.p,
                            kappa: rep.kappa,
                            reason,
                        });
                    }
                    *counts.entry((rep.p, rep.kappa, rep.exponents.clone(), rep.r)).or_default() += 1;
                    report.records.push(rep);
                }
                Err((p, kappa, reason)) => {
                    report.counterexamples.push(Counterexample { name: name.clone(), p, kappa, reason })
                }
            }
        }
    }
    report.summary = counts
        .into_iter()
        .map(|((p, kappa, exponents, r), count)| SummaryRow { p, kappa, exponents, r, count })
        .collect();
    report
}
