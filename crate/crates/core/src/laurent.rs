//! Laurent polynomials over `F_p` (the ring `Lambda_p`) and over the integers.
//!
//! A [`LaurentPoly`] is `t^shift * (c_0 + c_1 t + ... + c_d t^d)` with
//! `c_0` and `c_d` nonzero; zero is the empty coefficient list with shift 0.
//! Euclidean division strips the `t`-powers, divides in `F_p[t]`, and puts
//! the powers back, so the Euclidean size of an element is its exponent span.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::gf::{add_mod, inv_mod, mul_mod, reduce_i64, sub_mod, FqElt, QuadField};
use crate::linalg::Field;

/// Largest exponent span tolerated by the Smith form routines.
pub const DEGREE_CAP: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd(0, 0) is undefined")]
    BothZero,
    #[error("valuation of the zero polynomial")]
    ZeroArgument,
    #[error("valuation modulus is not an irreducible non-unit")]
    ReducibleModulus,
    #[error("cannot parse Laurent polynomial {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

// ---- dense F_p[t] helpers; slices are ascending and trimmed ----

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_add(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out: Vec<u32> = (0..n)
        .map(|i| add_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
        .collect();
    trim(&mut out);
    out
}

fn poly_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out: Vec<u32> = (0..n)
        .map(|i| sub_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
        .collect();
    trim(&mut out);
    out
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    let pp = p as u64;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] = (acc[i + j] + x as u64 * y as u64) % pp;
        }
    }
    let mut out: Vec<u32> = acc.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

/// Long division in `F_p[t]`; `b` nonempty.
fn poly_divrem(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    assert!(!b.is_empty());
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = inv_mod(*b.last().unwrap(), p);
    let mut quot = vec![0u32; a.len() - db];
    for i in (0..quot.len()).rev() {
        let c = mul_mod(rem[i + db], lead_inv, p);
        quot[i] = c;
        if c == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            rem[i + j] = sub_mod(rem[i + j], mul_mod(c, bj, p), p);
        }
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    poly_divrem(&poly_mul(a, b, p), m, p).1
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !y.is_empty() {
        let r = poly_divrem(&x, &y, p).1;
        x = y;
        y = r;
    }
    x
}

/// Laurent polynomial over `F_p` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    p: u32,
    shift: i64,
    coeffs: Vec<u32>,
}

impl LaurentPoly {
    fn canonical(p: u32, shift: i64, mut coeffs: Vec<u32>) -> Self {
        trim(&mut coeffs);
        let lead_zeros = coeffs.iter().take_while(|&&c| c == 0).count();
        if lead_zeros == coeffs.len() {
            return LaurentPoly { p, shift: 0, coeffs: Vec::new() };
        }
        coeffs.drain(..lead_zeros);
        LaurentPoly { p, shift: shift + lead_zeros as i64, coeffs }
    }

    pub fn zero(p: u32) -> Self {
        LaurentPoly { p, shift: 0, coeffs: Vec::new() }
    }

    pub fn one(p: u32) -> Self {
        Self::constant(1, p)
    }

    pub fn constant(c: i64, p: u32) -> Self {
        Self::canonical(p, 0, vec![reduce_i64(c, p)])
    }

    /// `c * t^e`.
    pub fn monomial(c: i64, e: i64, p: u32) -> Self {
        Self::canonical(p, e, vec![reduce_i64(c, p)])
    }

    pub fn t(p: u32) -> Self {
        Self::monomial(1, 1, p)
    }

    /// `t^shift * sum coeffs[i] t^i`, with arbitrary integer coefficients.
    pub fn from_coeffs(p: u32, shift: i64, coeffs: &[i64]) -> Self {
        Self::canonical(p, shift, coeffs.iter().map(|&c| reduce_i64(c, p)).collect())
    }

    /// The minimal polynomial `h = t^2 + kappa t + 1` of `theta`.
    pub fn h(field: &QuadField) -> Self {
        let [a, b, c] = field.h_coeffs();
        Self::canonical(field.p(), 0, vec![a, b, c])
    }

    /// `t^n - 1`.
    pub fn t_pow_minus_one(n: u64, p: u32) -> Self {
        let mut coeffs = vec![0u32; n as usize + 1];
        coeffs[0] = p - 1;
        coeffs[n as usize] = add_mod(coeffs[n as usize], 1, p);
        Self::canonical(p, 0, coeffs)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Units of `Lambda_p` are `c * t^k` with `c != 0`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.shift)
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.shift + self.coeffs.len() as i64 - 1)
    }

    /// Exponent span `max - min`; the Euclidean size.
    pub fn span(&self) -> Option<usize> {
        (!self.is_zero()).then(|| self.coeffs.len() - 1)
    }

    /// Coefficient of `t^e`.
    pub fn coeff(&self, e: i64) -> u32 {
        let i = e - self.shift;
        if i < 0 {
            return 0;
        }
        *self.coeffs.get(i as usize).unwrap_or(&0)
    }

    pub fn scale(&self, c: u32) -> Self {
        let p = self.p;
        Self::canonical(p, self.shift, self.coeffs.iter().map(|&x| mul_mod(x, c, p)).collect())
    }

    pub fn mul_t_pow(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { p: self.p, shift: self.shift + k, coeffs: self.coeffs.clone() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.p);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse of a unit `c t^k`.
    pub fn unit_inverse(&self) -> Option<Self> {
        self.is_unit()
            .then(|| Self::monomial(inv_mod(self.coeffs[0], self.p) as i64, -self.shift, self.p))
    }

    /// Split as `unit * canonical`, where the canonical associate has shift 0
    /// and leading coefficient 1. Zero maps to `(1, 0)`.
    pub fn associate_split(&self) -> (Self, Self) {
        if self.is_zero() {
            return (Self::one(self.p), self.clone());
        }
        let lead = *self.coeffs.last().unwrap();
        let inv = inv_mod(lead, self.p);
        let canon = LaurentPoly {
            p: self.p,
            shift: 0,
            coeffs: self.coeffs.iter().map(|&c| mul_mod(c, inv, self.p)).collect(),
        };
        (Self::monomial(lead as i64, self.shift, self.p), canon)
    }

    pub fn canonical_associate(&self) -> Self {
        self.associate_split().1
    }

    /// `f = q g + r` with `span(r) < span(g)`.
    pub fn divmod(&self, g: &Self) -> Result<(Self, Self), LaurentError> {
        self.check_ring(g);
        if g.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok((Self::zero(self.p), Self::zero(self.p)));
        }
        let (q, r) = poly_divrem(&self.coeffs, &g.coeffs, self.p);
        Ok((
            Self::canonical(self.p, self.shift - g.shift, q),
            Self::canonical(self.p, self.shift, r),
        ))
    }

    pub fn divides(&self, f: &Self) -> bool {
        match f.divmod(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => f.is_zero(),
        }
    }

    /// Monic, shift-0 generator of the ideal `(self, g)`.
    pub fn gcd(&self, g: &Self) -> Result<Self, LaurentError> {
        self.check_ring(g);
        if self.is_zero() && g.is_zero() {
            return Err(LaurentError::BothZero);
        }
        let d = poly_gcd(&self.coeffs, &g.coeffs, self.p);
        Ok(Self::canonical(self.p, 0, d).canonical_associate())
    }

    /// `(d, u, v)` with `u*self + v*g = d`, `d` the canonical gcd.
    pub fn ext_gcd(&self, g: &Self) -> Result<(Self, Self, Self), LaurentError> {
        self.check_ring(g);
        if self.is_zero() && g.is_zero() {
            return Err(LaurentError::BothZero);
        }
        let p = self.p;
        // Euclid on the shift-free parts a = t^-s f, b = t^-s' g.
        let (mut r0, mut r1) = (self.coeffs.clone(), g.coeffs.clone());
        let (mut s0, mut s1) = (vec![1u32], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u32]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1, p);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1, p), p);
            let t2 = poly_sub(&t0, &poly_mul(&q, &t1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = inv_mod(*r0.last().unwrap(), p);
        let d = Self::canonical(p, 0, r0).scale(inv);
        let u = Self::canonical(p, -self.shift, s0).scale(inv);
        let v = Self::canonical(p, -g.shift, t0).scale(inv);
        Ok((d, u, v))
    }

    /// Irreducible non-unit of `Lambda_p`: no factor of degree at most half
    /// its degree (via `gcd(g, t^(p^i) - t mod g)`).
    pub fn is_irreducible(&self) -> bool {
        let g = self.canonical_associate();
        let d = match g.span() {
            Some(d) if d >= 1 => d,
            _ => return false,
        };
        let p = self.p;
        let m = &g.coeffs;
        let t = vec![0, 1];
        let mut x = poly_divrem(&t, m, p).1;
        for _ in 1..=d / 2 {
            // x <- x^p mod m
            let mut acc = vec![1u32];
            let mut base = x.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = poly_mulmod(&acc, &base, m, p);
                }
                base = poly_mulmod(&base, &base, m, p);
                e >>= 1;
            }
            x = acc;
            let diff = poly_sub(&x, &t, p);
            let common = poly_gcd(m, &diff, p);
            if common.len() > 1 {
                return false;
            }
        }
        true
    }

    /// Largest `e` with `g^e | self`, for `g` irreducible.
    pub fn valuation(&self, g: &Self) -> Result<u32, LaurentError> {
        self.check_ring(g);
        if self.is_zero() {
            return Err(LaurentError::ZeroArgument);
        }
        if !g.is_irreducible() {
            return Err(LaurentError::ReducibleModulus);
        }
        let mut e = 0;
        let mut f = self.clone();
        loop {
            let (q, r) = f.divmod(g)?;
            if !r.is_zero() {
                return Ok(e);
            }
            f = q;
            e += 1;
        }
    }

    /// Specialization `t -> theta`, a ring map `Lambda_p -> F_{p^2}`.
    pub fn eval_at_theta(&self, field: &QuadField) -> FqElt {
        assert_eq!(self.p, field.p(), "characteristic mismatch");
        let theta = field.theta();
        // Horner, then multiply by theta^shift
        let mut acc = FqElt::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = field.add(field.mul(acc, theta), field.from_fp(c));
        }
        field.mul(acc, field.pow(theta, self.shift))
    }

    pub fn parse(text: &str, p: u32) -> Result<Self, LaurentError> {
        let terms = parse_terms(text)?;
        let mut acc = Self::zero(p);
        for (c, e) in terms {
            acc = &acc + &Self::monomial(c.rem_euclid(p as i64), e, p);
        }
        Ok(acc)
    }

    fn check_ring(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixing Laurent polynomials of different characteristic");
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_ring(rhs);
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let s = self.shift.min(rhs.shift);
        let a = pad(&self.coeffs, (self.shift - s) as usize);
        let b = pad(&rhs.coeffs, (rhs.shift - s) as usize);
        LaurentPoly::canonical(self.p, s, poly_add(&a, &b, self.p))
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let p = self.p;
        LaurentPoly { p, shift: self.shift, coeffs: self.coeffs.iter().map(|&c| sub_mod(0, c, p)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_ring(rhs);
        LaurentPoly::canonical(self.p, self.shift + rhs.shift, poly_mul(&self.coeffs, &rhs.coeffs, self.p))
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(LaurentPoly, Add add, Sub sub, Mul mul);

fn pad(c: &[u32], k: usize) -> Vec<u32> {
    let mut v = vec![0; k];
    v.extend_from_slice(c);
    v
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (i64, i64)>) -> fmt::Result {
    let mut first = true;
    for (c, e) in terms {
        let mag = c.unsigned_abs();
        if first {
            if c < 0 {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if c < 0 { "-" } else { "+" })?;
        }
        first = false;
        match (mag, e) {
            (m, 0) => write!(f, "{m}")?,
            (1, 1) => write!(f, "t")?,
            (1, e) => write!(f, "t^{e}")?,
            (m, 1) => write!(f, "{m}*t")?,
            (m, e) => write!(f, "{m}*t^{e}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Descending powers, coefficients in `[0, p)`: `t^2+t+1`, `2*t+1+t^-1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (c as i64, self.shift + i as i64));
        write_terms(f, terms)
    }
}

fn parse_terms(text: &str) -> Result<Vec<(i64, i64)>, LaurentError> {
    let err = |reason: &str| LaurentError::Parse { text: text.to_string(), reason: reason.to_string() };
    let s: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err("empty input"));
    }
    let mut i = 0;
    let mut out = Vec::new();
    let read_int = |i: &mut usize| -> Option<i64> {
        let start = *i;
        while *i < s.len() && s[*i].is_ascii_digit() {
            *i += 1;
        }
        (start < *i).then(|| s[start..*i].iter().collect::<String>().parse().ok()).flatten()
    };
    while i < s.len() {
        let mut sign = 1i64;
        if s[i] == '+' || s[i] == '-' {
            if s[i] == '-' {
                sign = -1;
            }
            i += 1;
        } else if !out.is_empty() {
            return Err(err("expected '+' or '-' between terms"));
        }
        let coeff = read_int(&mut i);
        if coeff.is_some() && i < s.len() && s[i] == '*' {
            i += 1;
            if i >= s.len() || s[i] != 't' {
                return Err(err("expected 't' after '*'"));
            }
        }
        let mut exp = 0i64;
        if i < s.len() && s[i] == 't' {
            i += 1;
            exp = 1;
            if i < s.len() && s[i] == '^' {
                i += 1;
                let mut esign = 1;
                if i < s.len() && s[i] == '-' {
                    esign = -1;
                    i += 1;
                }
                exp = esign * read_int(&mut i).ok_or_else(|| err("missing exponent"))?;
            }
        } else if coeff.is_none() {
            return Err(err("expected a coefficient or 't'"));
        }
        out.push((sign * coeff.unwrap_or(1), exp));
    }
    Ok(out)
}

/// Laurent polynomial with integer coefficients, an element of `Lambda`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntLaurent {
    terms: BTreeMap<i64, i64>,
}

impl IntLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn t_inv() -> Self {
        Self::monomial(1, -1)
    }

    pub fn monomial(c: i64, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(e, c);
        }
        IntLaurent { terms }
    }

    /// `t - 2 + t^-1 = -(t - 1)(t^-1 - 1)`.
    pub fn nabla() -> Self {
        Self::from_terms([(1, 1), (-2, 0), (1, -1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut out = Self::zero();
        for (c, e) in terms {
            out.add_term(c, e);
        }
        out
    }

    fn add_term(&mut self, c: i64, e: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(coefficient, exponent)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (c, e))
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.terms().map(|(c, e)| (c * k, e)))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute `t -> t^-1`.
    pub fn bar(&self) -> Self {
        Self::from_terms(self.terms().map(|(c, e)| (c, -e)))
    }

    pub fn reduce(&self, p: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::zero(p);
        for (c, e) in self.terms() {
            acc = &acc + &LaurentPoly::monomial(c, e, p);
        }
        acc
    }
}

impl Add for &IntLaurent {
    type Output = IntLaurent;
    fn add(self, rhs: &IntLaurent) -> IntLaurent {
        let mut out = self.clone();
        for (c, e) in rhs.terms() {
            out.add_term(c, e);
        }
        out
    }
}

impl Sub for &IntLaurent {
    type Output = IntLaurent;
    fn sub(self, rhs: &IntLaurent) -> IntLaurent {
        self + &(-rhs)
    }
}

impl Neg for &IntLaurent {
    type Output = IntLaurent;
    fn neg(self) -> IntLaurent {
        self.scale(-1)
    }
}

impl Mul for &IntLaurent {
    type Output = IntLaurent;
    fn mul(self, rhs: &IntLaurent) -> IntLaurent {
        let mut out = IntLaurent::zero();
        for (a, e) in self.terms() {
            for (b, f) in rhs.terms() {
                out.add_term(a * b, e + f);
            }
        }
        out
    }
}
forward_owned!(IntLaurent, Add add, Sub sub, Mul mul);

impl fmt::Display for IntLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().rev().map(|(&e, &c)| (c, e)))
    }
}

/// `v_h(t^n - 1)` from the order `q` of `theta`: zero unless `q | n`, and
/// then `p^(v_p(n))`.
pub fn cyclotomic_valuation(n: u64, field: &QuadField) -> u64 {
    assert!(n >= 1);
    if !n.is_multiple_of(field.q() as u64) {
        return 0;
    }
    let p = field.p() as u64;
    let mut m = n;
    let mut pe = 1;
    while m.is_multiple_of(p) {
        m /= p;
        pe *= p;
    }
    pe
}
