//! Two-bridge knots `K(P, Q)` from even continued fractions.

use std::fmt;

use thiserror::Error;

use crate::gf::{reduce_i64, QuadField};
use crate::invariant::{phi_closed_form, GroupRingElt};
use crate::laurent::{IntLaurent, LaurentPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwoBridgeError {
    #[error("P = {p} and Q = {q} are not coprime")]
    NotCoprime { p: i64, q: i64 },
    #[error("need P odd and positive with 0 < Q < P, got P = {p}, Q = {q}")]
    BadRange { p: i64, q: i64 },
    #[error("a twist sequence needs at least one pair")]
    EmptyTwists,
}

/// Dense integer polynomial in `x`, ascending coefficients, trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly(Vec<i64>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn zero() -> Self {
        IntPoly(Vec::new())
    }

    pub fn constant(c: i64) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::new(vec![0, 1])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Self::new((0..n).map(|i| add_i(*self.0.get(i).unwrap_or(&0), *o.0.get(i).unwrap_or(&0))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::new(self.0.iter().map(|&c| mul_i(c, k)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0i64; self.0.len() + o.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in o.0.iter().enumerate() {
                out[i + j] = add_i(out[i + j], mul_i(a, b));
            }
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.0.iter().enumerate().skip(1).map(|(i, &c)| mul_i(c, i as i64)).collect())
    }

    /// Substitute `x -> y` for a Laurent polynomial `y`.
    pub fn eval_laurent(&self, y: &IntLaurent) -> IntLaurent {
        self.0.iter().rev().fold(IntLaurent::zero(), |acc, &c| &(&acc * y) + &IntLaurent::constant(c))
    }

    pub fn eval_mod(&self, x: u32, p: u32) -> u32 {
        self.0.iter().rev().fold(0u64, |acc, &c| (acc * x as u64 + reduce_i64(c, p) as u64) % p as u64) as u32
    }

    /// Multiplicity of `x` as a root of the reduction mod `p`; `None` if that
    /// reduction vanishes.
    pub fn root_multiplicity_mod(&self, x: u32, p: u32) -> Option<u32> {
        let mut c: Vec<u32> = self.0.iter().map(|&a| reduce_i64(a, p)).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        if c.is_empty() {
            return None;
        }
        let mut mult = 0;
        loop {
            // synthetic division by (X - x)
            let n = c.len();
            let mut q = vec![0u32; n.saturating_sub(1)];
            let mut acc = 0u64;
            for i in (0..n).rev() {
                acc = (acc * x as u64 + c[i] as u64) % p as u64;
                if i > 0 {
                    q[i - 1] = acc as u32;
                }
            }
            if acc != 0 || n == 1 {
                return Some(mult);
            }
            mult += 1;
            c = q;
        }
    }
}

fn add_i(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("integer polynomial coefficient overflow")
}

fn mul_i(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("integer polynomial coefficient overflow")
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            match (i, mag) {
                (0, m) => write!(f, "{sign}{m}")?,
                (1, 1) => write!(f, "{sign}x")?,
                (1, m) => write!(f, "{sign}{m}*x")?,
                (e, 1) => write!(f, "{sign}x^{e}")?,
                (e, m) => write!(f, "{sign}{m}*x^{e}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub type Mat2 = [[IntLaurent; 2]; 2];

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j])))
}

pub fn mat2_identity() -> Mat2 {
    [[IntLaurent::one(), IntLaurent::zero()], [IntLaurent::zero(), IntLaurent::one()]]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Plus,
    Minus,
}

fn t_pm(which: Which) -> IntLaurent {
    match which {
        Which::Plus => IntLaurent::t(),
        Which::Minus => IntLaurent::t_inv(),
    }
}

/// `M_+` or `M_-`.
pub fn m_pm(which: Which) -> Mat2 {
    mn_power(1, which)
}

/// `M_pm^n = n M_pm - (n - 1) I` in closed form.
pub fn mn_power(n: i64, which: Which) -> Mat2 {
    let s = t_pm(which);
    let s1 = &s - &IntLaurent::one();
    let one = IntLaurent::one();
    [[&s1.scale(n) + &one, s1.scale(-n)], [s1.scale(n), &s1.scale(-n) + &one]]
}

/// Pairs `(m_i, n_i)` of the expansion `2m_1 - 1/(2n_1 - 1/(2m_2 - ... - 1/(2n_k)))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwistSequence {
    pairs: Vec<(i64, i64)>,
}

impl TwistSequence {
    pub fn new(pairs: Vec<(i64, i64)>) -> Result<Self, TwoBridgeError> {
        if pairs.is_empty() {
            return Err(TwoBridgeError::EmptyTwists);
        }
        Ok(TwistSequence { pairs })
    }

    pub fn pairs(&self) -> &[(i64, i64)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The continued fraction as a reduced `(P, Q)` with `Q > 0`; `None` if a
    /// partial denominator vanishes.
    pub fn value(&self) -> Option<(i128, i128)> {
        let coeffs: Vec<i128> = self.pairs.iter().flat_map(|&(m, n)| [2 * m as i128, 2 * n as i128]).collect();
        let (mut num, mut den) = (*coeffs.last().unwrap(), 1i128);
        for &a in coeffs.iter().rev().skip(1) {
            if num == 0 {
                return None;
            }
            // a - den/num
            (num, den) = (a * num - den, num);
        }
        if den == 0 {
            return None;
        }
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i128;
        let s = den.signum();
        Some((s * num / g, s * den / g))
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Nearest integer to `a / d`; ties cannot occur for the fractions used here.
fn nearest(a: i128, d: i128) -> i128 {
    let (a, d) = if d < 0 { (-a, -d) } else { (a, d) };
    (2 * a + d).div_euclid(2 * d)
}

/// Even continued fraction of `P/Q`, after replacing an odd `Q` by `P - Q`.
pub fn cf_expand(p: i64, q: i64) -> Result<TwistSequence, TwoBridgeError> {
    if p <= 0 || p % 2 == 0 || q <= 0 || q >= p {
        return Err(TwoBridgeError::BadRange { p, q });
    }
    if gcd(p as u128, q as u128) != 1 {
        return Err(TwoBridgeError::NotCoprime { p, q });
    }
    let q = if q % 2 == 1 { p - q } else { q };
    let (mut a, mut b) = (p as i128, q as i128);
    let mut coeffs = Vec::new();
    loop {
        let k = nearest(a, 2 * b);
        coeffs.push(k as i64);
        let rem = a - 2 * k * b;
        if rem == 0 {
            break;
        }
        (a, b) = (b, -rem);
    }
    debug_assert!(coeffs.len() % 2 == 0);
    let pairs = coeffs.chunks(2).map(|c| (c[0], c[1])).collect();
    Ok(TwistSequence { pairs })
}

/// `alpha_i, beta_i, gamma_i, delta_i` for `i = 0..=k` and `epsilon_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistPolys {
    pub alpha: Vec<IntPoly>,
    pub beta: Vec<IntPoly>,
    pub gamma: Vec<IntPoly>,
    pub delta: Vec<IntPoly>,
    pub epsilon: Vec<IntPoly>,
}

impl TwistPolys {
    pub fn k(&self) -> usize {
        self.alpha.len() - 1
    }

    pub fn epsilon_k(&self) -> &IntPoly {
        &self.epsilon[self.k()]
    }

    /// `[[alpha_i(D), -(t^-1 - 1) beta_i(D)], [(t - 1) gamma_i(D), delta_i(D)]]`
    /// with `D = t - 2 + t^-1`.
    pub fn matrix(&self, i: usize) -> Mat2 {
        let nabla = IntLaurent::nabla();
        let tm1 = &IntLaurent::t() - &IntLaurent::one();
        let tim1 = &IntLaurent::t_inv() - &IntLaurent::one();
        [
            [self.alpha[i].eval_laurent(&nabla), -&(&tim1 * &self.beta[i].eval_laurent(&nabla))],
            [&tm1 * &self.gamma[i].eval_laurent(&nabla), self.delta[i].eval_laurent(&nabla)],
        ]
    }
}

pub fn twist_polys(seq: &TwistSequence) -> TwistPolys {
    let x = IntPoly::x();
    let mut tp = TwistPolys {
        alpha: vec![IntPoly::constant(1)],
        beta: vec![IntPoly::zero()],
        gamma: vec![IntPoly::zero()],
        delta: vec![IntPoly::constant(1)],
        epsilon: vec![IntPoly::zero()],
    };
    for (i, &(m, n)) in seq.pairs.iter().enumerate() {
        let (a, b, g, d) = (&tp.alpha[i], &tp.beta[i], &tp.gamma[i], &tp.delta[i]);
        let lead = IntPoly::constant(1).add(&x.scale(mul_i(m, n)));
        let alpha = lead.mul(a).add(&x.scale(n).mul(g));
        let beta = lead.mul(b).add(&d.scale(n));
        let gamma = a.scale(m).add(g);
        let delta = x.scale(m).mul(b).add(d);
        let eps = tp.epsilon[i].add(&a.mul(a).scale(m));
        tp.alpha.push(alpha);
        tp.beta.push(beta);
        tp.gamma.push(gamma);
        tp.delta.push(delta);
        tp.epsilon.push(eps);
    }
    tp
}

/// `[[1 + m n D, -n (t^-1 - 1)], [m (t - 1), 1]]`.
pub fn two_box_matrix(m: i64, n: i64) -> Mat2 {
    let nabla = IntLaurent::nabla();
    let tm1 = &IntLaurent::t() - &IntLaurent::one();
    let tim1 = &IntLaurent::t_inv() - &IntLaurent::one();
    [[&IntLaurent::one() + &nabla.scale(m * n), tim1.scale(-n)], [tm1.scale(m), IntLaurent::one()]]
}

/// `alpha_i' alpha_{i-1} - alpha_i alpha_{i-1}' = n_i epsilon_i` and
/// `alpha_i delta_i - x beta_i gamma_i = 1` for every `i`.
pub fn twist_identity_check(seq: &TwistSequence) -> bool {
    let tp = twist_polys(seq);
    let x = IntPoly::x();
    (1..=tp.k()).all(|i| {
        let (a, a0) = (&tp.alpha[i], &tp.alpha[i - 1]);
        let lhs = a.derivative().mul(a0).sub(&a.mul(&a0.derivative()));
        let n = seq.pairs[i - 1].1;
        let det = a.mul(&tp.delta[i]).sub(&x.mul(&tp.beta[i]).mul(&tp.gamma[i]));
        lhs == tp.epsilon[i].scale(n) && det == IntPoly::constant(1)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TwoBridgeReport {
    pub twists: Vec<(i64, i64)>,
    pub alexander: String,
    /// `v_h(alpha_k(D))`.
    pub exponent: u32,
    pub nuh: usize,
    pub nuh_prime: usize,
    pub r: usize,
    pub s: usize,
    #[serde(serialize_with = "crate::families::ser_phi")]
    pub phi: GroupRingElt,
}

pub fn twobridge_invariant(p_num: i64, q_den: i64, field: &QuadField) -> Result<TwoBridgeReport, TwoBridgeError> {
    Ok(twist_invariant(&cf_expand(p_num, q_den)?, field))
}

/// Closed-form invariants of the plat closure of a twist sequence.
pub fn twist_invariant(seq: &TwistSequence, field: &QuadField) -> TwoBridgeReport {
    let p = field.p();
    let tp = twist_polys(seq);
    let alpha_k = &tp.alpha[tp.k()];
    let delta_poly = alpha_k.eval_laurent(&IntLaurent::nabla());
    let exponent = delta_poly.reduce(p).valuation(&LaurentPoly::h(field)).expect("alpha_k(D)(1) = 1");
    let lambda = reduce_i64(-(field.kappa() as i64) - 2, p);
    assert_eq!(alpha_k.root_multiplicity_mod(lambda, p), Some(exponent), "h-adic valuation and root multiplicity");
    let nuh = (exponent > 0) as usize;
    let nuh_prime = (exponent == 1) as usize;
    let r = (nuh == 1 && tp.epsilon_k().eval_mod(lambda, p) != 0) as usize;
    let s = nuh + 1 - r;
    TwoBridgeReport {
        twists: seq.pairs.clone(),
        alexander: delta_poly.to_string(),
        exponent,
        nuh,
        nuh_prime,
        r,
        s,
        phi: phi_closed_form(r, s as i64, p).expect("s >= 1"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn mn_examples() {
        assert_eq!(mn_power(0, Which::Plus), mat2_identity());
        let t = IntLaurent::t();
        let one = IntLaurent::one();
        let expect = [[t.clone(), &one - &t], [&t - &one, &IntLaurent::constant(2) - &t]];
        assert_eq!(m_pm(Which::Plus), expect);
        let two_i_minus: Mat2 = std::array::from_fn(|i| {
            std::array::from_fn(|j| &mat2_identity()[i][j].scale(2) - &m_pm(Which::Plus)[i][j])
        });
        assert_eq!(mn_power(-1, Which::Plus), two_i_minus);
    }

    #[test]
    fn cf_examples() {
        assert_eq!(cf_expand(3, 2).unwrap().pairs(), &[(1, 1)]);
        assert_eq!(cf_expand(5, 2).unwrap().pairs(), &[(1, -1)]);
        assert_eq!(cf_expand(3, 1).unwrap().pairs(), &[(1, 1)]);
        assert_eq!(cf_expand(9, 3), Err(TwoBridgeError::NotCoprime { p: 9, q: 3 }));
        assert_eq!(cf_expand(8, 3), Err(TwoBridgeError::BadRange { p: 8, q: 3 }));
        assert_eq!(cf_expand(7, 7), Err(TwoBridgeError::BadRange { p: 7, q: 7 }));
        assert_eq!(cf_expand(7, 0), Err(TwoBridgeError::BadRange { p: 7, q: 0 }));
    }

    #[test]
    fn polys_examples() {
        let tp = twist_polys(&TwistSequence::new(vec![(3, -2)]).unwrap());
        assert_eq!(tp.alpha[1], IntPoly::new(vec![1, -6]));
        let tp = twist_polys(&TwistSequence::new(vec![(1, 1)]).unwrap());
        assert_eq!(tp.alpha[1].eval_laurent(&IntLaurent::nabla()).to_string(), "t-1+t^-1");
        let tp = twist_polys(&TwistSequence::new(vec![(1, -1)]).unwrap());
        assert_eq!(tp.alpha[1], IntPoly::new(vec![1, -1]));
        assert_eq!(tp.alpha[1].eval_laurent(&IntLaurent::nabla()).to_string(), "-t+3-t^-1");
    }

    #[test]
    fn identity_examples() {
        assert!(twist_identity_check(&TwistSequence::new(vec![(1, 1)]).unwrap()));
        assert!(twist_identity_check(&TwistSequence::new(vec![(2, -3), (1, 4)]).unwrap()));
    }

    #[test]
    fn two_k_box_is_a_product_of_two_boxes() {
        let seqs = [vec![(1, 1), (2, -1), (-3, 2), (1, 5)], vec![(0, 1), (4, -4), (2, 2), (-1, -1)]];
        for pairs in seqs {
            let seq = TwistSequence::new(pairs.clone()).unwrap();
            let tp = twist_polys(&seq);
            let mut prod = mat2_identity();
            for (i, &(m, n)) in pairs.iter().enumerate() {
                prod = mat2_mul(&two_box_matrix(m, n), &prod);
                assert_eq!(tp.matrix(i + 1), prod);
            }
        }
    }

    #[test]
    fn report_examples() {
        let f2 = QuadField::new(2, 1).unwrap();
        let r = twobridge_invariant(3, 2, &f2).unwrap();
        assert_eq!((r.nuh, r.nuh_prime, r.r, r.s), (1, 1, 1, 1));
        assert_eq!(r.phi.coeffs(), &[4, 12]);
        let f3 = QuadField::new(3, 0).unwrap();
        assert_eq!(twobridge_invariant(5, 2, &f3).unwrap().nuh, 1);
        let f5 = QuadField::new(5, 1).unwrap();
        let r = twobridge_invariant(5, 2, &f5).unwrap();
        assert_eq!((r.nuh, r.phi.coeffs()), (0, &[25, 0, 0, 0, 0][..]));
    }

    #[test]
    fn root_multiplicity() {
        // (x - 1)^2 (x + 1) over F_3
        let f = IntPoly::new(vec![1, -1, -1, 1]);
        assert_eq!(f.root_multiplicity_mod(1, 3), Some(2));
        assert_eq!(f.root_multiplicity_mod(2, 3), Some(1));
        assert_eq!(f.root_multiplicity_mod(0, 3), Some(0));
        assert_eq!(IntPoly::constant(3).root_multiplicity_mod(0, 3), None);
    }

    proptest! {
        #[test]
        fn mn_closed_form_is_a_power(n in -6i64..=6) {
            for which in [Which::Plus, Which::Minus] {
                let m = m_pm(which);
                let inv = mn_power(-1, which);
                prop_assert_eq!(mat2_mul(&m, &inv), mat2_identity());
                let step = if n >= 0 { &m } else { &inv };
                let mut acc = mat2_identity();
                for _ in 0..n.unsigned_abs() {
                    acc = mat2_mul(&acc, step);
                }
                prop_assert_eq!(mn_power(n, which), acc);
            }
        }

        #[test]
        fn cf_round_trips(p in (1i64..400).prop_map(|p| 2 * p + 1), q in 1i64..800) {
            let q = q % p;
            prop_assume!(q > 0 && gcd(p as u128, q as u128) == 1);
            let seq = cf_expand(p, q).unwrap();
            let even_q = if q % 2 == 1 { p - q } else { q };
            prop_assert_eq!(seq.value(), Some((p as i128, even_q as i128)));
            prop_assert!(seq.pairs().iter().all(|&(m, n)| m != 0 && n != 0));
        }

        #[test]
        fn identity_holds(pairs in proptest::collection::vec((-5i64..=5, -5i64..=5), 1..=4)) {
            prop_assert!(twist_identity_check(&TwistSequence::new(pairs).unwrap()));
        }
    }
}
