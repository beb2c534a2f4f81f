//! Torus links `T_{m,n}` as closures of `(sigma_{m-1} ... sigma_1)^n`.

use thiserror::Error;

use crate::gf::{FqElt, QuadField};
use crate::invariant::{phi_closed_form, GroupRingElt};
use crate::laurent::cyclotomic_valuation;
use crate::linalg::{identity, mat_mul, nullspace, rank, Field, Matrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error("torus parameters must be positive, got m = {m}, n = {n}")]
    BadParams { m: u64, n: u64 },
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Order of `a` in `(Z/c)^x`; `ord_1 = 1`, `None` unless `gcd(a, c) = 1`.
pub fn ord_mod(a: u64, c: u64) -> Option<u64> {
    if c == 0 || gcd(a, c) != 1 {
        return None;
    }
    if c == 1 {
        return Some(1);
    }
    let a = a % c;
    let (mut x, mut k) = (a, 1);
    while x != 1 {
        x = ((x as u128 * a as u128) % c as u128) as u64;
        k += 1;
    }
    Some(k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TorusParams {
    pub m: u64,
    pub n: u64,
    pub c: u64,
    pub q: u64,
    pub ord_c_p: Option<u64>,
}

impl TorusParams {
    pub fn new(m: u64, n: u64, field: &QuadField) -> Result<Self, TorusError> {
        if m == 0 || n == 0 {
            return Err(TorusError::BadParams { m, n });
        }
        let c = gcd(m, n);
        Ok(TorusParams { m, n, c, q: field.q() as u64, ord_c_p: ord_mod(field.p() as u64, c) })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TorusNu {
    pub nuh: u64,
    pub nuh_prime: u64,
    pub excluded: bool,
}

/// Case analysis of `nu_h` and `nu'_h`, after swapping `m` and `n` if needed.
pub fn torus_nu(m: u64, n: u64, field: &QuadField) -> Result<TorusNu, TorusError> {
    let tp = TorusParams::new(m, n, field)?;
    let (p, q, c) = (field.p() as u64, tp.q, tp.c);
    let excluded = (m * n / c).is_multiple_of(q) && !(m * n).is_multiple_of(p) && tp.ord_c_p.is_some_and(|o| o % 4 == 0);
    if !(m * n / c).is_multiple_of(q) {
        return Ok(TorusNu { nuh: 0, nuh_prime: 0, excluded });
    }
    let dv = |a: u64, b: u64| a.is_multiple_of(b);
    let (nuh, nuh_prime) = if dv(c, p) {
        let (m, n) = if !dv(m / c, p) { (m, n) } else { (n, m) };
        let nuh = if !dv(n, q) && (!dv(m, q) || dv(n / c, p)) {
            c
        } else if dv(m, q) && dv(n, q) && !dv(n / c, p) {
            c - 2
        } else {
            c - 1
        };
        (nuh, 0)
    } else if dv(m, p) || dv(n, p) {
        let (m, n) = if dv(m, p) { (m, n) } else { (n, m) };
        let nuh = if dv(m, q) { c - 1 } else { c };
        (nuh, (p == 2 && dv(n, 3) && m % 4 == 2) as u64)
    } else {
        let nu = match (dv(m, q), dv(n, q)) {
            (false, false) => c,
            (true, true) => c - 2,
            _ => c - 1,
        };
        (nu, nu)
    };
    Ok(TorusNu { nuh, nuh_prime, excluded })
}

/// Nonzero `h`-exponents of the Alexander module, ascending.
pub fn torus_htorsion(m: u64, n: u64, field: &QuadField) -> Result<Vec<u32>, TorusError> {
    let c = TorusParams::new(m, n, field)?.c;
    let v = |k: u64| cyclotomic_valuation(k, field) as i64;
    let mut e: Vec<i64> = if c == 1 {
        vec![v(m * n) - v(m) - v(n)]
    } else {
        let top = v(m * n / c);
        let mut e = vec![top - v(m), top - v(n)];
        e.extend(std::iter::repeat_n(top, c as usize - 2));
        e
    };
    debug_assert!(e.iter().all(|&x| x >= 0));
    e.retain(|&x| x > 0);
    e.sort_unstable();
    Ok(e.into_iter().map(|x| x as u32).collect())
}

/// `M_m`: first row `e_m`, row `i` has `theta` in column `i - 1` and `1 - theta` in column `m`.
pub fn torus_matrix(m: usize, field: &QuadField) -> Matrix<FqElt> {
    let th = field.theta();
    let one_minus = field.sub(field.one(), th);
    Matrix::from_fn(m, m, |i, j| {
        if i == 0 {
            if j == m - 1 { field.one() } else { field.zero() }
        } else if j == m - 1 {
            one_minus
        } else if j == i - 1 {
            th
        } else {
            field.zero()
        }
    })
}

/// `M_m x` without forming the matrix.
pub fn apply_torus(x: &[FqElt], field: &QuadField) -> Vec<FqElt> {
    let m = x.len();
    let th = field.theta();
    let tail = field.mul(field.sub(field.one(), th), x[m - 1]);
    (0..m).map(|i| if i == 0 { x[m - 1] } else { field.add(field.mul(th, x[i - 1]), tail) }).collect()
}

/// Basis of `V_{m,n} = ker(M_m^n - I)`.
pub fn v_space(m: usize, n: u64, field: &QuadField) -> Vec<Vec<FqElt>> {
    let base = torus_matrix(m, field);
    let mut pw = identity(field, m);
    for _ in 0..n {
        pw = mat_mul(field, &base, &pw);
    }
    let diff = Matrix::from_fn(m, m, |i, j| field.sub(pw[(i, j)], if i == j { field.one() } else { field.zero() }));
    nullspace(field, &diff)
}

/// `eta(x, y) = sum_{i<n} sum_{j<m} eps (M^i(x)_j conj(M^i(y)_m) - M^i(x)_m conj(M^i(y)_j))`.
pub fn torus_eta(x: &[FqElt], y: &[FqElt], n: u64, field: &QuadField) -> FqElt {
    let m = x.len();
    let (mut x, mut y) = (x.to_vec(), y.to_vec());
    let mut acc = field.zero();
    for _ in 0..n {
        let (xm, ym) = (x[m - 1], field.conj(y[m - 1]));
        for j in 0..m - 1 {
            let term = field.sub(field.mul(x[j], ym), field.mul(xm, field.conj(y[j])));
            acc = field.add(acc, term);
        }
        x = apply_torus(&x, field);
        y = apply_torus(&y, field);
    }
    field.mul(field.epsilon(), acc)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TorusReport {
    pub params: TorusParams,
    pub nuh: u64,
    pub nuh_prime: u64,
    pub exponents: Vec<u32>,
    pub excluded: bool,
    /// `dim V_{m,n}`.
    pub dim: usize,
    /// Rank of `eta` on `V_{m,n}`.
    pub r: usize,
    pub s: usize,
    #[serde(serialize_with = "crate::families::ser_phi")]
    pub phi: GroupRingElt,
}

impl TorusReport {
    /// `r = nu'_h` off the excluded set.
    pub fn rank_matches_formula(&self) -> bool {
        self.excluded || self.r as u64 == self.nuh_prime
    }
}

/// Case formulas together with `eta` evaluated on `V_{m,n}`.
pub fn torus_invariant(m: u64, n: u64, field: &QuadField) -> Result<TorusReport, TorusError> {
    let params = TorusParams::new(m, n, field)?;
    let nu = torus_nu(m, n, field)?;
    let exponents = torus_htorsion(m, n, field)?;
    let basis = v_space(m as usize, n, field);
    let dim = basis.len();
    let gram = Matrix::from_fn(dim, dim, |i, j| torus_eta(&basis[i], &basis[j], n, field));
    let r = rank(field, &gram);
    let s = dim - r;
    Ok(TorusReport {
        params,
        nuh: nu.nuh,
        nuh_prime: nu.nuh_prime,
        exponents,
        excluded: nu.excluded,
        dim,
        r,
        s,
        phi: phi_closed_form(r, s as i64, field.p()).expect("the constant coloring lies in the radical"),
    })
}
