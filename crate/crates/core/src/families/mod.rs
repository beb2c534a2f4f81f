//! Closed forms for torus links and two-bridge knots.

pub mod identity;
pub mod torus;
pub mod twobridge;

use crate::invariant::GroupRingElt;

/// Group ring elements serialize as their coefficient list.
pub fn ser_phi<S: serde::Serializer>(phi: &GroupRingElt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(phi.coeffs())
}
