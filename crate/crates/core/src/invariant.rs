//! Colorings by a quadratic quandle, the Hermitian form `eta`, and the state
//! sum `Phi` in `Z[C_p]`.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::alexander::{eval_matrix, rep_prime_indices, reduce_matrix, ModuleInvariants, SmithForm};
use crate::diagram::{relation_matrix, Diagram};
use crate::gf::{add_mod, FqElt, QuadField};
use crate::linalg::{nullspace, rank, span_basis, Field, Matrix};

/// Default bound on `p^(2 dim)` for brute-force enumeration.
pub const DEFAULT_ENUMERATION_CAP: u128 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("rank of eta' is odd ({0})")]
    OddRank(usize),
    #[error("nullity s = {0} must be at least 1")]
    BadNullity(i64),
    #[error("enumeration of {states} states exceeds the cap {cap}")]
    EnumerationCapExceeded { states: u128, cap: u128 },
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("group ring coefficient overflow")]
    Overflow,
}

/// `rep(K, F_{p^2})`: arc colorings satisfying every crossing relation at `t = theta`.
#[derive(Clone, Debug)]
pub struct ColoringSpace {
    field: QuadField,
    diagram: Diagram,
    basis: Vec<Vec<FqElt>>,
}

impl ColoringSpace {
    pub fn new(d: &Diagram, field: &QuadField) -> Self {
        let m = eval_matrix(&reduce_matrix(&relation_matrix(d), field.p()), field);
        let basis = nullspace(field, &m);
        ColoringSpace { field: field.clone(), diagram: d.clone(), basis }
    }

    pub fn field(&self) -> &QuadField {
        &self.field
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn basis(&self) -> &[Vec<FqElt>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn arcs(&self) -> usize {
        self.diagram.arcs()
    }

    pub fn is_coloring(&self, f: &[FqElt]) -> bool {
        let k = &self.field;
        f.len() == self.arcs()
            && self.diagram.crossings().iter().all(|c| {
                let rhs = k.add(k.mul(k.theta(), f[c.rho]), k.mul(k.sub(k.one(), k.theta()), f[c.omega]));
                f[c.lambda] == rhs
            })
    }

    /// `sum_i coeffs[i] f_i`.
    pub fn combine(&self, coeffs: &[FqElt]) -> Vec<FqElt> {
        let k = &self.field;
        let mut out = vec![FqElt::ZERO; self.arcs()];
        for (c, f) in coeffs.iter().zip(&self.basis) {
            for (o, &x) in out.iter_mut().zip(f) {
                *o = k.add(*o, k.mul(*c, x));
            }
        }
        out
    }

    pub fn constant(&self, c: FqElt) -> Vec<FqElt> {
        vec![c; self.arcs()]
    }

    /// `F_p`-basis `f_0, theta f_0, f_1, theta f_1, ...`.
    pub fn fp_basis(&self) -> Vec<Vec<FqElt>> {
        let k = &self.field;
        self.basis
            .iter()
            .flat_map(|f| [f.clone(), f.iter().map(|&x| k.mul(k.theta(), x)).collect()])
            .collect()
    }

    /// `F_{p^2}`-subspace membership.
    pub fn contains(&self, f: &[FqElt]) -> bool {
        if f.len() != self.arcs() {
            return false;
        }
        let mut rows = self.basis.clone();
        rows.push(f.to_vec());
        rank(&self.field, &Matrix::from_rows(rows, self.arcs())) == self.dim()
    }

    fn check_len(&self, f: &[FqElt]) -> Result<(), InvariantError> {
        if f.len() != self.arcs() {
            return Err(InvariantError::DimensionMismatch { got: f.len(), expected: self.arcs() });
        }
        Ok(())
    }
}

/// `eta(f, g) = sum_c sign(c) eps (f(rho) conj g(omega) - f(omega) conj g(rho))`.
pub fn eta(space: &ColoringSpace, f: &[FqElt], g: &[FqElt]) -> Result<FqElt, InvariantError> {
    space.check_len(f)?;
    space.check_len(g)?;
    let k = &space.field;
    let mut acc = FqElt::ZERO;
    for c in space.diagram.crossings() {
        let term = k.sub(k.mul(f[c.rho], k.conj(g[c.omega])), k.mul(f[c.omega], k.conj(g[c.rho])));
        let term = if c.sign > 0 { term } else { k.neg(term) };
        acc = k.add(acc, term);
    }
    Ok(k.mul(k.epsilon(), acc))
}

/// `B(f) = sum_c sign(c) phi(f(rho), f(omega))`.
pub fn boltzmann(space: &ColoringSpace, f: &[FqElt]) -> Result<u32, InvariantError> {
    space.check_len(f)?;
    Ok(boltzmann_raw(&space.field, space.diagram.crossings(), f))
}

fn boltzmann_raw(k: &QuadField, crossings: &[crate::diagram::Crossing], f: &[FqElt]) -> u32 {
    let p = k.p();
    crossings.iter().fold(0, |acc, c| {
        let v = k.phi(f[c.rho], f[c.omega]);
        add_mod(acc, if c.sign > 0 { v } else { (p - v) % p }, p)
    })
}

/// Gram matrix `G[i][j] = eta(f_i, f_j)` on the `F_{p^2}` basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianForm {
    pub gram: Matrix<FqElt>,
}

pub fn hermitian_form(space: &ColoringSpace) -> HermitianForm {
    let n = space.dim();
    let gram = Matrix::from_fn(n, n, |i, j| eta(space, &space.basis[i], &space.basis[j]).unwrap());
    HermitianForm { gram }
}

/// `eta'(f, g) = eta(f, g) + eta(g, f)` on the `F_p` basis.
pub fn eta_prime(space: &ColoringSpace) -> Matrix<u32> {
    let k = &space.field;
    let b = space.fp_basis();
    Matrix::from_fn(b.len(), b.len(), |i, j| {
        let x = eta(space, &b[i], &b[j]).unwrap();
        let tr = k.add(x, k.conj(x));
        debug_assert!(tr.is_rational());
        tr.a
    })
}

/// `(r, s)` with `r = rank eta = rank eta' / 2` and `s = dim - r`.
pub fn eta_rank(space: &ColoringSpace) -> Result<(usize, usize), InvariantError> {
    let fp = space.field.prime_field();
    let rk = rank(&fp, &eta_prime(space));
    if rk % 2 == 1 {
        return Err(InvariantError::OddRank(rk));
    }
    let r = rk / 2;
    let s = space.dim() as i64 - r as i64;
    if s < 1 {
        return Err(InvariantError::BadNullity(s));
    }
    Ok((r, s as usize))
}

/// Rank of the Gram matrix over `F_{p^2}`.
pub fn hermitian_rank(space: &ColoringSpace) -> usize {
    rank(&space.field, &hermitian_form(space).gram)
}

fn canonical_span(space: &ColoringSpace, vectors: &[Vec<FqElt>]) -> Vec<Vec<FqElt>> {
    span_basis(&space.field, vectors, space.arcs())
}

/// `rad eta` as the kernel of `eta'`, returned as a canonical `F_{p^2}` basis
/// of arc colorings.
pub fn radical(space: &ColoringSpace) -> Vec<Vec<FqElt>> {
    let fp = space.field.prime_field();
    let k = &space.field;
    let b = space.fp_basis();
    let vectors: Vec<Vec<FqElt>> = nullspace(&fp, &eta_prime(space))
        .iter()
        .map(|c| {
            let mut v = vec![FqElt::ZERO; space.arcs()];
            for (&ci, bi) in c.iter().zip(&b) {
                for (o, &x) in v.iter_mut().zip(bi) {
                    *o = k.add(*o, k.scale(ci, x));
                }
            }
            v
        })
        .collect();
    canonical_span(space, &vectors)
}

/// `rad eta` from the Gram matrix over `F_{p^2}`: `g = sum b_j f_j` is in the
/// radical iff `conj(b)` is in the kernel of `G`.
pub fn radical_hermitian(space: &ColoringSpace) -> Vec<Vec<FqElt>> {
    let k = &space.field;
    let vectors: Vec<Vec<FqElt>> = nullspace(k, &hermitian_form(space).gram)
        .iter()
        .map(|c| space.combine(&c.iter().map(|&x| k.conj(x)).collect::<Vec<_>>()))
        .collect();
    canonical_span(space, &vectors)
}

/// `rep'`: colorings vanishing on the diagonal generators with `v_h(d_i) = 1`.
pub fn rep_prime(space: &ColoringSpace, sf: &SmithForm) -> Vec<Vec<FqElt>> {
    let k = &space.field;
    let idx = rep_prime_indices(sf, k);
    let v_inv = eval_matrix(sf.v_inv(), k);
    // constraint rows in basis coordinates: (V^-1(theta) f_j)_i
    let rows: Vec<Vec<FqElt>> = idx
        .iter()
        .map(|&i| {
            space
                .basis
                .iter()
                .map(|f| (0..space.arcs()).fold(FqElt::ZERO, |acc, a| k.add(acc, k.mul(v_inv[(i, a)], f[a]))))
                .collect()
        })
        .collect();
    let coords = if rows.is_empty() {
        (0..space.dim())
            .map(|j| (0..space.dim()).map(|i| if i == j { k.one() } else { k.zero() }).collect())
            .collect()
    } else {
        nullspace(k, &Matrix::from_rows(rows, space.dim()))
    };
    let vectors: Vec<Vec<FqElt>> = coords.iter().map(|c| space.combine(c)).collect();
    canonical_span(space, &vectors)
}

/// Outcome of comparing `rank eta` with `nu'_h` and `rad eta` with `rep'`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ConjectureReport {
    pub c1: bool,
    pub c2: bool,
    pub r: usize,
    pub s: usize,
    pub nuh_prime: usize,
    pub dim_radical: usize,
    pub dim_rep_prime: usize,
    /// `Some(true)` when `c1` plus the module shape already force `c2`.
    pub c2_forced: Option<bool>,
    /// Consistency of every internal cross-check.
    pub consistent: bool,
}

pub fn conjecture_check(
    space: &ColoringSpace,
    sf: &SmithForm,
    inv: &ModuleInvariants,
) -> Result<ConjectureReport, InvariantError> {
    let (r, s) = eta_rank(space)?;
    let rad = radical(space);
    let rep_p = rep_prime(space, sf);
    let c1 = r == inv.nuh_prime;
    let c2 = rad == rep_p;
    let forced = c1 && ((inv.nuh_prime == inv.nuh && inv.nu0 == 1) || inv.nuh_prime == 0);
    let k = &space.field;
    let constants_in_rad = {
        let mut rows = rad.clone();
        rows.push(space.constant(k.one()));
        rank(k, &Matrix::from_rows(rows, space.arcs())) == rad.len()
    };
    let consistent = rad.len() == s
        && rad == radical_hermitian(space)
        && hermitian_rank(space) == r
        && space.dim() - rep_p.len() == inv.nuh_prime
        && constants_in_rad
        && (!forced || c2);
    Ok(ConjectureReport {
        c1,
        c2,
        r,
        s,
        nuh_prime: inv.nuh_prime,
        dim_radical: rad.len(),
        dim_rep_prime: rep_p.len(),
        c2_forced: forced.then_some(true),
        consistent,
    })
}

/// Element of `Z[C_p]`; `coeffs[i]` multiplies `u^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupRingElt {
    coeffs: Vec<u128>,
}

impl GroupRingElt {
    pub fn zero(p: u32) -> Self {
        GroupRingElt { coeffs: vec![0; p as usize] }
    }

    pub fn constant(c: u128, p: u32) -> Self {
        let mut e = Self::zero(p);
        e.coeffs[0] = c;
        e
    }

    pub fn from_coeffs(coeffs: Vec<u128>) -> Self {
        assert!(!coeffs.is_empty());
        GroupRingElt { coeffs }
    }

    pub fn p(&self) -> u32 {
        self.coeffs.len() as u32
    }

    pub fn coeffs(&self) -> &[u128] {
        &self.coeffs
    }

    /// Value at `u = 1`.
    pub fn augmentation(&self) -> u128 {
        self.coeffs.iter().sum()
    }

    pub fn add_u_pow(&mut self, i: u32, c: u128) -> Result<(), InvariantError> {
        let slot = &mut self.coeffs[i as usize];
        *slot = slot.checked_add(c).ok_or(InvariantError::Overflow)?;
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, InvariantError> {
        assert_eq!(self.p(), other.p());
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(*b).ok_or(InvariantError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(GroupRingElt { coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, InvariantError> {
        assert_eq!(self.p(), other.p());
        let p = self.coeffs.len();
        let mut out = vec![0u128; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                let t = a.checked_mul(b).ok_or(InvariantError::Overflow)?;
                out[(i + j) % p] = out[(i + j) % p].checked_add(t).ok_or(InvariantError::Overflow)?;
            }
        }
        Ok(GroupRingElt { coeffs: out })
    }

    pub fn checked_pow(&self, n: usize) -> Result<Self, InvariantError> {
        let mut acc = Self::constant(1, self.p());
        for _ in 0..n {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }
}

/// `c0 + c1*u + c2*u^2 + ...`, zero terms omitted.
impl fmt::Display for GroupRingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*u"),
                _ => format!("{c}*u^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `Gamma_p = 1 + (p + 1) sum_{i=1}^{p-1} u^i`.
pub fn gamma_p(p: u32) -> GroupRingElt {
    let mut coeffs = vec![p as u128 + 1; p as usize];
    coeffs[0] = 1;
    GroupRingElt { coeffs }
}

/// `Gamma_p^r p^(2s)`.
pub fn phi_closed_form(r: usize, s: i64, p: u32) -> Result<GroupRingElt, InvariantError> {
    if s < 1 {
        return Err(InvariantError::BadNullity(s));
    }
    let scale = (p as u128).checked_pow(2 * s as u32).ok_or(InvariantError::Overflow)?;
    gamma_p(p).checked_pow(r)?.checked_mul(&GroupRingElt::constant(scale, p))
}

pub fn phi_factored_text(r: usize, s: usize, p: u32) -> String {
    format!("Γ_{p}^{r} * {p}^{}", 2 * s)
}

/// `sum_f u^B(f)` over every coloring, with `B` from the crossing sum.
pub fn phi_brute_force(space: &ColoringSpace, cap: u128) -> Result<GroupRingElt, InvariantError> {
    let k = &space.field;
    let p = k.p();
    let basis = space.fp_basis();
    let digits = basis.len();
    let states = (p as u128).checked_pow(digits as u32).unwrap_or(u128::MAX);
    if states > cap {
        return Err(InvariantError::EnumerationCapExceeded { states, cap });
    }
    // the first `outer` digits are fixed per task; the rest run as an odometer
    let outer = digits.min(4);
    let inner = digits - outer;
    let crossings = space.diagram.crossings();
    let partials: Vec<Vec<u128>> = (0..(p as u64).pow(outer as u32))
        .into_par_iter()
        .map(|mut code| {
            let mut f = vec![FqElt::ZERO; space.arcs()];
            for b in &basis[..outer] {
                let c = (code % p as u64) as u32;
                code /= p as u64;
                for (o, &x) in f.iter_mut().zip(b) {
                    *o = k.add(*o, k.scale(c, x));
                }
            }
            let mut counts = vec![0u128; p as usize];
            let mut odo = vec![0u32; inner];
            loop {
                counts[boltzmann_raw(k, crossings, &f) as usize] += 1;
                let mut d = 0;
                loop {
                    if d == inner {
                        return counts;
                    }
                    // p additions of a basis vector return f to its old value
                    for (o, &x) in f.iter_mut().zip(&basis[outer + d]) {
                        *o = k.add(*o, x);
                    }
                    odo[d] += 1;
                    if odo[d] < p {
                        break;
                    }
                    odo[d] = 0;
                    d += 1;
                }
            }
        })
        .collect();
    let mut total = GroupRingElt::zero(p);
    for c in partials {
        total = total.checked_add(&GroupRingElt { coeffs: c })?;
    }
    Ok(total)
}
