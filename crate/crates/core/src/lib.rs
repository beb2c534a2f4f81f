//! Quandle cocycle state-sum invariants for quadratic Alexander quandles
//! `F_p[t, t^-1] / (t^2 + kappa t + 1)`.

pub mod alexander;
pub mod diagram;
pub mod families;
pub mod gf;
pub mod invariant;
pub mod laurent;
pub mod linalg;
pub mod report;
