//! Arithmetic in the prime field `F_p` and in the quadratic extension
//! `F_{p^2} = F_p[t]/(t^2 + kappa*t + 1)`, together with the Alexander quandle
//! structure `a^b = theta*a + (1 - theta)*b` and the explicit 2-cocycle.

use std::fmt;

use thiserror::Error;

use crate::linalg::Field;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("kappa = {kappa} is not reduced modulo {p}")]
    KappaOutOfRange { p: u32, kappa: u32 },
    #[error("t^2 + {kappa}t + 1 is reducible modulo {p}; not a quadratic quandle")]
    ReducibleH { p: u32, kappa: u32 },
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

#[inline]
pub fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + p as u64 - b as u64 % p as u64) % p as u64) as u32
}

#[inline]
pub fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn pow_mod(mut base: u32, mut exp: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime. Panics on zero.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    assert!(!a.is_multiple_of(p), "inverse of zero modulo {p}");
    pow_mod(a, (p - 2) as u64, p)
}

/// Reduce a signed integer into `[0, p)`.
#[inline]
pub fn reduce_i64(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

/// The prime field `F_p` as a [`Field`] for the generic elimination routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
}

impl Field for PrimeField {
    type Elt = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        add_mod(a, b, self.p)
    }
    fn sub(&self, a: u32, b: u32) -> u32 {
        sub_mod(a, b, self.p)
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        mul_mod(a, b, self.p)
    }
    fn inv(&self, a: u32) -> u32 {
        inv_mod(a, self.p)
    }
}

/// An element `a + b*theta` of `F_{p^2}`, coordinates in `[0, p)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElt {
    pub a: u32,
    pub b: u32,
}

impl FqElt {
    pub const ZERO: FqElt = FqElt { a: 0, b: 0 };

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// True when the element lies in the prime field.
    pub fn is_rational(self) -> bool {
        self.b == 0
    }
}

impl fmt::Display for FqElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "θ"),
            (0, b) => write!(f, "{b}θ"),
            (a, 1) => write!(f, "{a}+θ"),
            (a, b) => write!(f, "{a}+{b}θ"),
        }
    }
}

/// The quadratic quandle `F_{p^2}` with `theta` a root of `h = t^2 + kappa*t + 1`.
///
/// Values are immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadField {
    p: u32,
    kappa: u32,
    epsilon: FqElt,
    q: u32,
}

/// Whether `t^2 + kappa*t + 1` is irreducible over `F_p`.
fn h_irreducible(p: u32, kappa: u32) -> bool {
    if p == 2 {
        return kappa == 1;
    }
    // discriminant kappa^2 - 4 must be a non-residue
    let disc = sub_mod(mul_mod(kappa, kappa, p), 4 % p, p);
    disc != 0 && pow_mod(disc, ((p - 1) / 2) as u64, p) == p - 1
}

/// All `kappa` for which `t^2 + kappa*t + 1` is irreducible mod `p`.
pub fn enumerate_kappas(p: u32) -> Result<Vec<u32>, GfError> {
    if !is_prime(p) {
        return Err(GfError::NotPrime(p));
    }
    Ok((0..p).filter(|&k| h_irreducible(p, k)).collect())
}

impl QuadField {
    pub fn new(p: u32, kappa: u32) -> Result<Self, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if kappa >= p {
            return Err(GfError::KappaOutOfRange { p, kappa });
        }
        if !h_irreducible(p, kappa) {
            return Err(GfError::ReducibleH { p, kappa });
        }
        let epsilon = if p == 2 {
            FqElt { a: 1, b: 0 }
        } else {
            // 2*theta + kappa = theta - conj(theta)
            FqElt { a: kappa, b: 2 }
        };
        let mut field = QuadField { p, kappa, epsilon, q: 0 };
        let theta = field.theta();
        let mut x = theta;
        let mut q = 1;
        while x != field.one() {
            x = field.mul(x, theta);
            q += 1;
        }
        field.q = q;
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn kappa(&self) -> u32 {
        self.kappa
    }

    pub fn epsilon(&self) -> FqElt {
        self.epsilon
    }

    /// Multiplicative order of `theta`.
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn prime_field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    pub fn theta(&self) -> FqElt {
        FqElt { a: 0, b: 1 }
    }

    pub fn elt(&self, a: i64, b: i64) -> FqElt {
        FqElt { a: reduce_i64(a, self.p), b: reduce_i64(b, self.p) }
    }

    pub fn from_fp(&self, c: u32) -> FqElt {
        FqElt { a: c % self.p, b: 0 }
    }

    /// Coefficients of `h` in ascending order: `[1, kappa, 1]`.
    pub fn h_coeffs(&self) -> [u32; 3] {
        [1, self.kappa, 1]
    }

    pub fn neg(&self, x: FqElt) -> FqElt {
        FqElt { a: sub_mod(0, x.a, self.p), b: sub_mod(0, x.b, self.p) }
    }

    pub fn scale(&self, c: u32, x: FqElt) -> FqElt {
        FqElt { a: mul_mod(c, x.a, self.p), b: mul_mod(c, x.b, self.p) }
    }

    /// Frobenius `x -> x^p`; on the basis `{1, theta}` this is
    /// `a + b*theta -> (a - kappa*b) - b*theta`.
    pub fn conj(&self, x: FqElt) -> FqElt {
        let p = self.p;
        FqElt { a: sub_mod(x.a, mul_mod(self.kappa, x.b, p), p), b: sub_mod(0, x.b, p) }
    }

    pub fn norm(&self, x: FqElt) -> u32 {
        // a^2 - kappa*a*b + b^2
        let p = self.p;
        let aa = mul_mod(x.a, x.a, p);
        let bb = mul_mod(x.b, x.b, p);
        let ab = mul_mod(mul_mod(x.a, x.b, p), self.kappa, p);
        sub_mod(add_mod(aa, bb, p), ab, p)
    }

    pub fn pow(&self, x: FqElt, e: i64) -> FqElt {
        let mut base = if e < 0 { self.inv(x) } else { x };
        let mut e = e.unsigned_abs();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^b = theta*a + (1 - theta)*b`.
    pub fn quandle_op(&self, a: FqElt, b: FqElt) -> FqElt {
        let t = self.theta();
        let one_minus_t = self.sub(self.one(), t);
        self.add(self.mul(t, a), self.mul(one_minus_t, b))
    }

    /// `phi(x, y) = epsilon * (x*conj(y) - conj(x)*y)`, an element of `F_p`.
    pub fn phi(&self, x: FqElt, y: FqElt) -> u32 {
        let z = self.mul(x, self.conj(y));
        let v = self.mul(self.epsilon, self.sub(z, self.conj(z)));
        debug_assert!(v.is_rational());
        v.a
    }

    /// Every element of the field, in lexicographic `(b, a)` order.
    pub fn elements(&self) -> impl Iterator<Item = FqElt> + '_ {
        let p = self.p;
        (0..p).flat_map(move |b| (0..p).map(move |a| FqElt { a, b }))
    }
}

impl Field for QuadField {
    type Elt = FqElt;

    fn zero(&self) -> FqElt {
        FqElt::ZERO
    }

    fn one(&self) -> FqElt {
        FqElt { a: 1, b: 0 }
    }

    fn add(&self, x: FqElt, y: FqElt) -> FqElt {
        FqElt { a: add_mod(x.a, y.a, self.p), b: add_mod(x.b, y.b, self.p) }
    }

    fn sub(&self, x: FqElt, y: FqElt) -> FqElt {
        FqElt { a: sub_mod(x.a, y.a, self.p), b: sub_mod(x.b, y.b, self.p) }
    }

    fn mul(&self, x: FqElt, y: FqElt) -> FqElt {
        // theta^2 = -kappa*theta - 1
        let p = self.p;
        let ac = mul_mod(x.a, y.a, p);
        let bd = mul_mod(x.b, y.b, p);
        let cross = add_mod(mul_mod(x.a, y.b, p), mul_mod(x.b, y.a, p), p);
        FqElt { a: sub_mod(ac, bd, p), b: sub_mod(cross, mul_mod(self.kappa, bd, p), p) }
    }

    fn inv(&self, x: FqElt) -> FqElt {
        let n = self.norm(x);
        assert!(n != 0, "inverse of zero in F_{}^2", self.p);
        self.scale(inv_mod(n, self.p), self.conj(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fields() -> Vec<QuadField> {
        [2, 3, 5, 7, 11]
            .iter()
            .flat_map(|&p| enumerate_kappas(p).unwrap().into_iter().map(move |k| QuadField::new(p, k).unwrap()))
            .collect()
    }

    #[test]
    fn make_field_examples() {
        let f2 = QuadField::new(2, 1).unwrap();
        assert_eq!(f2.q(), 3);
        let f3 = QuadField::new(3, 0).unwrap();
        assert_eq!(f3.q(), 4);
        assert_eq!(QuadField::new(3, 1), Err(GfError::ReducibleH { p: 3, kappa: 1 }));
        assert_eq!(QuadField::new(9, 1), Err(GfError::NotPrime(9)));
        assert_eq!(QuadField::new(5, 7), Err(GfError::KappaOutOfRange { p: 5, kappa: 7 }));
        // t^2 + 2t + 1 = (t + 1)^2
        assert!(matches!(QuadField::new(7, 2), Err(GfError::ReducibleH { .. })));
        assert!(QuadField::new(7, 3).is_ok());
    }

    #[test]
    fn kappa_enumeration_matches_trial_factorization() {
        for p in [2u32, 3, 5, 7, 11, 13] {
            let brute: Vec<u32> = (0..p)
                .filter(|&k| (0..p).all(|t| (t * t + k * t + 1) % p != 0))
                .collect();
            assert_eq!(enumerate_kappas(p).unwrap(), brute, "p = {p}");
        }
        assert_eq!(enumerate_kappas(2).unwrap(), vec![1]);
        assert_eq!(enumerate_kappas(3).unwrap(), vec![0]);
        assert!(enumerate_kappas(5).unwrap().contains(&1));
        let total: usize = [2, 3, 5, 7, 11].iter().map(|&p| enumerate_kappas(p).unwrap().len()).sum();
        assert_eq!(total, 12);
        assert_eq!(enumerate_kappas(4), Err(GfError::NotPrime(4)));
    }

    #[test]
    fn conj_and_norm() {
        for f in fields() {
            let k = f.kappa() as i64;
            assert_eq!(f.conj(f.theta()), f.elt(-k, -1));
            assert_eq!(f.norm(f.theta()), 1);
            assert_eq!(f.norm(FqElt::ZERO), 0);
            for x in f.elements() {
                assert_eq!(f.conj(f.conj(x)), x);
                assert_eq!(f.conj(x), f.pow(x, f.p() as i64));
                assert_eq!(f.conj(x) == x, x.is_rational());
                assert_eq!(f.from_fp(f.norm(x)), f.mul(x, f.conj(x)));
            }
            let eps = f.epsilon();
            assert!(!eps.is_zero());
            assert_eq!(f.conj(eps), f.neg(eps));
        }
        let f3 = QuadField::new(3, 0).unwrap();
        assert_eq!(f3.norm(f3.elt(1, 1)), 2);
    }

    #[test]
    fn q_divides_p_plus_one() {
        for f in fields() {
            assert!(f.q() > 2);
            assert_eq!((f.p() + 1) % f.q(), 0);
            assert_eq!(f.pow(f.theta(), f.q() as i64), f.one());
        }
    }

    #[test]
    fn norm_fibres_have_size_p_plus_one() {
        for f in fields().into_iter().filter(|f| f.p() <= 5) {
            let mut counts = vec![0u32; f.p() as usize];
            for x in f.elements() {
                counts[f.norm(x) as usize] += 1;
            }
            assert_eq!(counts[0], 1);
            assert!(counts[1..].iter().all(|&c| c == f.p() + 1));
        }
    }

    #[test]
    fn quandle_axioms() {
        for f in fields().into_iter().filter(|f| f.p() <= 3) {
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.quandle_op(a, a), a);
                assert_eq!(f.quandle_op(a, FqElt::ZERO), f.mul(f.theta(), a));
                for &b in &els {
                    // right multiplication by b is a bijection
                    let hits = els.iter().filter(|&&x| f.quandle_op(x, b) == a).count();
                    assert_eq!(hits, 1);
                    for &c in &els {
                        let lhs = f.quandle_op(f.quandle_op(a, b), c);
                        let rhs = f.quandle_op(f.quandle_op(a, c), f.quandle_op(b, c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn phi_is_alternating_and_detects_the_cycle() {
        for f in fields() {
            for x in f.elements() {
                assert_eq!(f.phi(x, x), 0);
            }
            // c = (1, -theta) - (1, 0) - (theta, 0)
            let one = f.one();
            let th = f.theta();
            let p = f.p();
            let val = sub_mod(
                sub_mod(f.phi(one, f.neg(th)), f.phi(one, FqElt::ZERO), p),
                f.phi(th, FqElt::ZERO),
                p,
            );
            let expect = f.mul(f.epsilon(), f.sub(th, f.conj(th)));
            assert!(expect.is_rational() && !expect.is_zero());
            assert_eq!(val, expect.a);
        }
    }
}
