//! The polynomial identity behind the two-bridge rank computation, checked
//! symbolically in `Z[x, y_1, z_1, ..., y_k, z_k]`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

pub const MAX_K: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdentityError {
    #[error("k = {0} is outside 1..={MAX_K}")]
    KTooLarge(usize),
}

/// Exponent vector `[x, y_1, z_1, ..., y_k, z_k]`.
pub type Monomial = Vec<u32>;

/// Sparse integer polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiPoly {
    vars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero(k: usize) -> Self {
        MultiPoly { vars: 1 + 2 * k, terms: BTreeMap::new() }
    }

    pub fn one(k: usize) -> Self {
        Self::monomial(k, vec![0; 1 + 2 * k], BigInt::one())
    }

    pub fn monomial(k: usize, exps: Monomial, c: BigInt) -> Self {
        let mut p = Self::zero(k);
        assert_eq!(exps.len(), p.vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    fn var(k: usize, idx: usize) -> Self {
        let mut e = vec![0; 1 + 2 * k];
        e[idx] = 1;
        Self::monomial(k, e, BigInt::one())
    }

    pub fn x(k: usize) -> Self {
        Self::var(k, 0)
    }

    /// `y_i`, `1 <= i <= k`.
    pub fn y(k: usize, i: usize) -> Self {
        Self::var(k, 2 * i - 1)
    }

    /// `z_i`, `1 <= i <= k`.
    pub fn z(k: usize, i: usize) -> Self {
        Self::var(k, 2 * i)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    fn insert(&mut self, e: Monomial, c: BigInt) {
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.insert(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.vars, o.vars);
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Monomial = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        MultiPoly { vars: self.vars, terms: acc }
    }

    /// Partial derivative in `x`.
    pub fn dx(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[0] > 0)
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2[0] -= 1;
                (e2, c * BigInt::from(e[0]))
            })
            .collect();
        MultiPoly { vars: self.vars, terms }
    }
}

/// `f_0, ..., f_k` with `f_j = f_{j-1} + x z_j sum_{i<=j} y_i f_{i-1}`.
pub fn f_sequence(k: usize) -> Vec<MultiPoly> {
    let mut f = vec![MultiPoly::one(k)];
    for j in 1..=k {
        let inner = (1..=j).fold(MultiPoly::zero(k), |acc, i| acc.add(&MultiPoly::y(k, i).mul(&f[i - 1])));
        let next = f[j - 1].add(&MultiPoly::x(k).mul(&MultiPoly::z(k, j)).mul(&inner));
        f.push(next);
    }
    f
}

/// `sum x^l(mu) mu` over words `y_{i1} z_{j1} ... y_{il} z_{jl}` with
/// `i1 <= j1 < i2 <= j2 < ...` and `j_l < height` (empty word included), in
/// `k` variable pairs.
pub fn monomial_sum(k: usize, height: usize) -> MultiPoly {
    fn go(height: usize, lo: usize, e: &mut Monomial, out: &mut MultiPoly) {
        out.insert(e.clone(), BigInt::one());
        for i in lo..height {
            for j in i..height {
                e[0] += 1;
                e[2 * i - 1] += 1;
                e[2 * j] += 1;
                go(height, j + 1, e, out);
                e[0] -= 1;
                e[2 * i - 1] -= 1;
                e[2 * j] -= 1;
            }
        }
    }
    let mut out = MultiPoly::zero(k);
    go(height, 1, &mut vec![0; 1 + 2 * k], &mut out);
    out
}

/// `f_j' f_{j-1} - f_j f_{j-1}' = z_j sum_{i<=j} y_i f_{i-1}^2` and
/// `f_j = sum_{mu in M_{j+1}} x^l(mu) mu` for every `j <= k`.
pub fn poly_identity_check(k: usize) -> Result<bool, IdentityError> {
    if k == 0 || k > MAX_K {
        return Err(IdentityError::KTooLarge(k));
    }
    let f = f_sequence(k);
    let ok = (1..=k).all(|j| {
        let lhs = f[j].dx().mul(&f[j - 1]).sub(&f[j].mul(&f[j - 1].dx()));
        let sum = (1..=j).fold(MultiPoly::zero(k), |acc, i| acc.add(&MultiPoly::y(k, i).mul(&f[i - 1]).mul(&f[i - 1])));
        let rhs = MultiPoly::z(k, j).mul(&sum);
        lhs == rhs && f[j] == monomial_sum(k, j + 1)
    });
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_case() {
        let f = f_sequence(1);
        let expect = MultiPoly::one(1).add(&MultiPoly::x(1).mul(&MultiPoly::y(1, 1)).mul(&MultiPoly::z(1, 1)));
        assert_eq!(f[1], expect);
        assert_eq!(monomial_sum(1, 2), expect);
        assert_eq!(monomial_sum(1, 1), MultiPoly::one(1));
    }

    #[test]
    fn identity_up_to_five() {
        for k in 1..=MAX_K {
            assert_eq!(poly_identity_check(k), Ok(true), "k = {k}");
        }
        assert_eq!(poly_identity_check(6), Err(IdentityError::KTooLarge(6)));
        assert_eq!(poly_identity_check(0), Err(IdentityError::KTooLarge(0)));
    }

    #[test]
    fn detects_a_broken_identity() {
        let k = 2;
        let f = f_sequence(k);
        let perturbed = f[2].add(&MultiPoly::x(k));
        let lhs = perturbed.dx().mul(&f[1]).sub(&perturbed.mul(&f[1].dx()));
        let sum = MultiPoly::y(k, 1).mul(&f[0]).mul(&f[0]).add(&MultiPoly::y(k, 2).mul(&f[1]).mul(&f[1]));
        assert_ne!(lhs, MultiPoly::z(k, 2).mul(&sum));
    }
}
