//! Smith normal form over `Lambda_p` and the invariants of `A_p(K)` read off it.

use thiserror::Error;

use crate::diagram::{relation_matrix, Diagram};
use crate::gf::{FqElt, QuadField};
use crate::laurent::{IntLaurent, LaurentPoly, DEGREE_CAP};
use crate::linalg::Matrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlexanderError {
    #[error("Smith form entry exceeded the degree cap of {DEGREE_CAP}")]
    DegreeCapExceeded,
}

/// `U M V = D` with `D` diagonal, entries monic with shift 0, each dividing
/// the next, zeros last.
#[derive(Clone, Debug)]
pub struct SmithForm {
    p: u32,
    diag: Vec<LaurentPoly>,
    rank: usize,
    u: Matrix<LaurentPoly>,
    v: Matrix<LaurentPoly>,
    u_inv: Matrix<LaurentPoly>,
    v_inv: Matrix<LaurentPoly>,
}

impl SmithForm {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.u.rows()
    }

    pub fn cols(&self) -> usize {
        self.v.rows()
    }

    /// The `min(rows, cols)` diagonal entries.
    pub fn diag(&self) -> &[LaurentPoly] {
        &self.diag
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn u(&self) -> &Matrix<LaurentPoly> {
        &self.u
    }

    pub fn v(&self) -> &Matrix<LaurentPoly> {
        &self.v
    }

    pub fn u_inv(&self) -> &Matrix<LaurentPoly> {
        &self.u_inv
    }

    pub fn v_inv(&self) -> &Matrix<LaurentPoly> {
        &self.v_inv
    }

    pub fn d_matrix(&self) -> Matrix<LaurentPoly> {
        let mut d = Matrix::filled(self.rows(), self.cols(), LaurentPoly::zero(self.p));
        for (i, x) in self.diag.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }

    /// Checks `U M V = D`, `U U^-1 = I` and `V V^-1 = I`.
    pub fn verify(&self, m: &Matrix<LaurentPoly>) -> bool {
        let p = self.p;
        laurent_mat_mul(&laurent_mat_mul(&self.u, m, p), &self.v, p) == self.d_matrix()
            && laurent_mat_mul(&self.u, &self.u_inv, p) == laurent_identity(self.rows(), p)
            && laurent_mat_mul(&self.v, &self.v_inv, p) == laurent_identity(self.cols(), p)
    }

    /// Whether `x` (a vector indexed by columns) lies in the row space of `M`.
    pub fn in_row_space(&self, x: &[LaurentPoly]) -> bool {
        assert_eq!(x.len(), self.cols());
        (0..self.cols()).all(|i| {
            let w = (0..self.cols()).fold(LaurentPoly::zero(self.p), |acc, j| &acc + &(&x[j] * &self.v[(j, i)]));
            if i < self.rank {
                self.diag[i].divides(&w)
            } else {
                w.is_zero()
            }
        })
    }
}

pub fn laurent_identity(n: usize, p: u32) -> Matrix<LaurentPoly> {
    Matrix::from_fn(n, n, |i, j| if i == j { LaurentPoly::one(p) } else { LaurentPoly::zero(p) })
}

pub fn laurent_mat_mul(a: &Matrix<LaurentPoly>, b: &Matrix<LaurentPoly>, p: u32) -> Matrix<LaurentPoly> {
    assert_eq!(a.cols(), b.rows());
    Matrix::from_fn(a.rows(), b.cols(), |i, j| {
        (0..a.cols()).fold(LaurentPoly::zero(p), |acc, k| {
            if a[(i, k)].is_zero() || b[(k, j)].is_zero() {
                acc
            } else {
                &acc + &(&a[(i, k)] * &b[(k, j)])
            }
        })
    })
}

pub fn reduce_matrix(m: &Matrix<IntLaurent>, p: u32) -> Matrix<LaurentPoly> {
    m.map(|x| x.reduce(p))
}

pub fn eval_matrix(m: &Matrix<LaurentPoly>, field: &QuadField) -> Matrix<FqElt> {
    m.map(|x| x.eval_at_theta(field))
}

struct Work {
    m: Matrix<LaurentPoly>,
    u: Matrix<LaurentPoly>,
    v: Matrix<LaurentPoly>,
    u_inv: Matrix<LaurentPoly>,
    v_inv: Matrix<LaurentPoly>,
}

impl Work {
    fn check(x: &LaurentPoly) -> Result<(), AlexanderError> {
        match x.span() {
            Some(s) if s > DEGREE_CAP => Err(AlexanderError::DegreeCapExceeded),
            _ => Ok(()),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// `row_i += q row_t`.
    fn add_row(&mut self, i: usize, t: usize, q: &LaurentPoly) -> Result<(), AlexanderError> {
        for j in 0..self.m.cols() {
            if !self.m[(t, j)].is_zero() {
                self.m[(i, j)] = &self.m[(i, j)] + &(q * &self.m[(t, j)]);
                Self::check(&self.m[(i, j)])?;
            }
        }
        for j in 0..self.u.cols() {
            if !self.u[(t, j)].is_zero() {
                self.u[(i, j)] = &self.u[(i, j)] + &(q * &self.u[(t, j)]);
                Self::check(&self.u[(i, j)])?;
            }
        }
        for r in 0..self.u_inv.rows() {
            if !self.u_inv[(r, i)].is_zero() {
                self.u_inv[(r, t)] = &self.u_inv[(r, t)] - &(q * &self.u_inv[(r, i)]);
                Self::check(&self.u_inv[(r, t)])?;
            }
        }
        Ok(())
    }

    /// `col_j += q col_t`.
    fn add_col(&mut self, j: usize, t: usize, q: &LaurentPoly) -> Result<(), AlexanderError> {
        for i in 0..self.m.rows() {
            if !self.m[(i, t)].is_zero() {
                self.m[(i, j)] = &self.m[(i, j)] + &(q * &self.m[(i, t)]);
                Self::check(&self.m[(i, j)])?;
            }
        }
        for i in 0..self.v.rows() {
            if !self.v[(i, t)].is_zero() {
                self.v[(i, j)] = &self.v[(i, j)] + &(q * &self.v[(i, t)]);
                Self::check(&self.v[(i, j)])?;
            }
        }
        for c in 0..self.v_inv.cols() {
            if !self.v_inv[(j, c)].is_zero() {
                self.v_inv[(t, c)] = &self.v_inv[(t, c)] - &(q * &self.v_inv[(j, c)]);
                Self::check(&self.v_inv[(t, c)])?;
            }
        }
        Ok(())
    }

    /// Multiply row `t` by the unit `c`.
    fn scale_row(&mut self, t: usize, c: &LaurentPoly) {
        let c_inv = c.unit_inverse().expect("scaling by a unit");
        for j in 0..self.m.cols() {
            self.m[(t, j)] = &self.m[(t, j)] * c;
        }
        for j in 0..self.u.cols() {
            self.u[(t, j)] = &self.u[(t, j)] * c;
        }
        for r in 0..self.u_inv.rows() {
            self.u_inv[(r, t)] = &self.u_inv[(r, t)] * &c_inv;
        }
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in t..self.m.rows() {
            for j in t..self.m.cols() {
                if let Some(s) = self.m[(i, j)].span() {
                    if best.is_none_or(|(b, _, _)| s < b) {
                        best = Some((s, i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

pub fn smith_normal_form(m: &Matrix<LaurentPoly>, p: u32) -> Result<SmithForm, AlexanderError> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        m: m.clone(),
        u: laurent_identity(rows, p),
        v: laurent_identity(cols, p),
        u_inv: laurent_identity(rows, p),
        v_inv: laurent_identity(cols, p),
    };
    let mut rank = 0;
    for t in 0..rows.min(cols) {
        'pivot: loop {
            let Some((i, j)) = w.min_pivot(t) else { break };
            w.swap_rows(t, i);
            w.swap_cols(t, j);
            let pivot = w.m[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if w.m[(i, t)].is_zero() {
                    continue;
                }
                let (q, r) = w.m[(i, t)].divmod(&pivot).expect("nonzero pivot");
                w.add_row(i, t, &-&q)?;
                dirty |= !r.is_zero();
            }
            for j in t + 1..cols {
                if w.m[(t, j)].is_zero() {
                    continue;
                }
                let (q, r) = w.m[(t, j)].divmod(&pivot).expect("nonzero pivot");
                w.add_col(j, t, &-&q)?;
                dirty |= !r.is_zero();
            }
            if dirty {
                continue;
            }
            for i in t + 1..rows {
                if (t + 1..cols).any(|j| !pivot.divides(&w.m[(i, j)])) {
                    w.add_row(t, i, &LaurentPoly::one(p))?;
                    continue 'pivot;
                }
            }
            let (unit, _) = pivot.associate_split();
            w.scale_row(t, &unit.unit_inverse().unwrap());
            rank = t + 1;
            break;
        }
        if rank <= t {
            break;
        }
    }
    let diag = (0..rows.min(cols)).map(|i| w.m[(i, i)].clone()).collect();
    let sf = SmithForm { p, diag, rank, u: w.u, v: w.v, u_inv: w.u_inv, v_inv: w.v_inv };
    debug_assert!(sf.verify(m));
    Ok(sf)
}

/// Smith form of the relation matrix of `d` over `Lambda_p`.
pub fn diagram_smith_form(d: &Diagram, p: u32) -> Result<SmithForm, AlexanderError> {
    smith_normal_form(&reduce_matrix(&relation_matrix(d), p), p)
}

/// Free rank, `h`-primary summary, and the `h`-exponents of `A_p(K)`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ModuleInvariants {
    pub nu0: usize,
    pub nuh: usize,
    pub nuh_prime: usize,
    /// Nonzero `v_h(d_i)`, ascending.
    pub exponents: Vec<u32>,
}

fn h_valuations(sf: &SmithForm, field: &QuadField) -> Vec<u32> {
    assert_eq!(sf.p, field.p(), "characteristic mismatch");
    let h = LaurentPoly::h(field);
    sf.diag[..sf.rank].iter().map(|d| d.valuation(&h).expect("nonzero diagonal, irreducible h")).collect()
}

pub fn module_invariants(sf: &SmithForm, field: &QuadField) -> ModuleInvariants {
    let mut exponents: Vec<u32> = h_valuations(sf, field).into_iter().filter(|&e| e > 0).collect();
    exponents.sort_unstable();
    ModuleInvariants {
        nu0: sf.cols() - sf.rank,
        nuh: exponents.len(),
        nuh_prime: exponents.iter().filter(|&&e| e == 1).count(),
        exponents,
    }
}

/// Diagonal generators `g_i` with `v_h(d_i) = 1`.
pub fn rep_prime_indices(sf: &SmithForm, field: &QuadField) -> Vec<usize> {
    h_valuations(sf, field).into_iter().enumerate().filter(|&(_, e)| e == 1).map(|(i, _)| i).collect()
}

/// `(1 - t) sum_c sign(c) (rho(c) - omega(c))` vanishes in `A_p(K)`.
pub fn check_relation_lemma(d: &Diagram, field: &QuadField) -> Result<bool, AlexanderError> {
    let p = field.p();
    let sf = diagram_smith_form(d, p)?;
    let mut x = vec![LaurentPoly::zero(p); d.arcs()];
    let one_minus_t = LaurentPoly::from_coeffs(p, 0, &[1, -1]);
    for c in d.crossings() {
        let s = LaurentPoly::constant(c.sign as i64, p);
        let term = &one_minus_t * &s;
        x[c.rho] = &x[c.rho] + &term;
        x[c.omega] = &x[c.omega] - &term;
    }
    Ok(sf.in_row_space(&x))
}

/// Product of the nonzero diagonal entries: the Alexander polynomial of a knot
/// mod `p`, up to units.
pub fn alexander_polynomial(sf: &SmithForm) -> LaurentPoly {
    sf.diag[..sf.rank].iter().fold(LaurentPoly::one(sf.p), |acc, d| &acc * d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{braid_to_diagram, parse_pd, pd_to_diagram, BraidWord};
    use proptest::prelude::*;

    fn trefoil() -> Diagram {
        pd_to_diagram(&parse_pd("[[1,4,2,5],[3,6,4,1],[5,2,6,3]]").unwrap()).unwrap()
    }

    fn lp(s: &str, p: u32) -> LaurentPoly {
        LaurentPoly::parse(s, p).unwrap()
    }

    #[test]
    fn trefoil_smith_form() {
        for p in [2, 3, 5, 7] {
            let m = reduce_matrix(&relation_matrix(&trefoil()), p);
            let sf = smith_normal_form(&m, p).unwrap();
            assert!(sf.verify(&m));
            assert_eq!(sf.diag(), &[LaurentPoly::one(p), lp("t^2-t+1", p).canonical_associate(), LaurentPoly::zero(p)]);
        }
    }

    #[test]
    fn zero_matrix() {
        let m = Matrix::filled(2, 2, LaurentPoly::zero(3));
        let sf = smith_normal_form(&m, 3).unwrap();
        assert_eq!(sf.rank(), 0);
        assert_eq!(sf.u(), &laurent_identity(2, 3));
        assert_eq!(sf.v(), &laurent_identity(2, 3));
    }

    #[test]
    fn invariants_examples() {
        let f2 = QuadField::new(2, 1).unwrap();
        let sf = diagram_smith_form(&trefoil(), 2).unwrap();
        let inv = module_invariants(&sf, &f2);
        assert_eq!(inv, ModuleInvariants { nu0: 1, nuh: 1, nuh_prime: 1, exponents: vec![1] });
        assert_eq!(rep_prime_indices(&sf, &f2), vec![1]);

        let unknot = diagram_smith_form(&Diagram::unknot(), 2).unwrap();
        assert_eq!(module_invariants(&unknot, &f2), ModuleInvariants { nu0: 1, nuh: 0, nuh_prime: 0, exponents: vec![] });
        assert!(rep_prime_indices(&unknot, &f2).is_empty());
    }

    #[test]
    fn relation_lemma_small_diagrams() {
        let f3 = QuadField::new(3, 0).unwrap();
        assert!(check_relation_lemma(&trefoil(), &f3).unwrap());
        assert!(check_relation_lemma(&Diagram::unknot(), &f3).unwrap());
        for w in [vec![1, -2, 1, -2], vec![2, 1, 2, 1, 2, 1], vec![1, 1]] {
            let d = braid_to_diagram(&BraidWord::new(3, w).unwrap());
            assert!(check_relation_lemma(&d, &f3).unwrap());
        }
    }

    #[test]
    fn row_permutation_gives_same_diagonal() {
        let m = reduce_matrix(&relation_matrix(&trefoil()), 5);
        let mut perm = m.clone();
        perm.swap_rows(0, 2);
        let a = smith_normal_form(&m, 5).unwrap();
        let b = smith_normal_form(&perm, 5).unwrap();
        assert_eq!(a.diag(), b.diag());
    }

    fn arb_matrix(p: u32, n: usize) -> impl Strategy<Value = Matrix<LaurentPoly>> {
        let entry = (-2i64..2, proptest::collection::vec(0i64..p as i64, 0..4))
            .prop_map(move |(s, c)| LaurentPoly::from_coeffs(p, s, &c));
        proptest::collection::vec(entry, n * n).prop_map(move |v| {
            let mut it = v.into_iter();
            Matrix::from_fn(n, n, |_, _| it.next().unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn recomposes(m in arb_matrix(3, 4)) {
            let sf = smith_normal_form(&m, 3).unwrap();
            prop_assert!(sf.verify(&m));
            let back = laurent_mat_mul(&laurent_mat_mul(sf.u_inv(), &sf.d_matrix(), 3), sf.v_inv(), 3);
            prop_assert_eq!(back, m);
            for w in sf.diag()[..sf.rank()].windows(2) {
                prop_assert!(w[0].divides(&w[1]));
            }
            for d in &sf.diag()[..sf.rank()] {
                prop_assert_eq!(d, &d.canonical_associate());
            }
        }
    }
}
