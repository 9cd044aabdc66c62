//! Skein polynomials and their relation to the invariants of single-block structures.

mod bridge;
mod skein;

pub use bridge::{Branch, Identification, SingleBlock, SkeinCheck, SkeinTriple, XP_IS_SKEIN_POSITIVE};
pub use skein::SkeinPolynomial;

use crate::diagram::MorseDiagram;
use crate::error::{OqaError, Result};

fn closed(d: &MorseDiagram) -> Result<()> {
    if d.boundary().is_open() {
        return Err(OqaError::Diagram("skein polynomials need a closed diagram".into()));
    }
    Ok(())
}

/// The regular-isotopy HOMFLY polynomial `H(α, z)` with `H(L₊) − H(L₋) = z H(L₀)`, positive kinks
/// contributing `α`, `H(unknot) = 1`, and `xp` as `L₊`.
pub fn homfly(d: &MorseDiagram) -> Result<SkeinPolynomial> {
    closed(d)?;
    Ok(skein::homfly(d))
}

/// The Conway polynomial `∇(z)`.
pub fn conway(d: &MorseDiagram) -> Result<SkeinPolynomial> {
    closed(d)?;
    Ok(skein::conway(d))
}
