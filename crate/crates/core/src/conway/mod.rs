//! Conway polynomials of links given as PD codes, and the normalized
//! coefficient â₁ fed to the surgery formula.

mod builtin;
mod diagram;
mod pd;
mod poly;
mod skein;

pub use builtin::{braid_pd, builtin_pd, twisted_whitehead_pd, unlink_pd, Closure, BUILTIN_NAMES};
pub use diagram::{Diagram, Passage};
pub use pd::{parse_pd, PdCode};
pub use poly::IntPoly;
pub use skein::{SkeinEngine, SkeinOptions, DEFAULT_CROSSING_BOUND};

use crate::error::Error;
use crate::surgery::{ComponentSubset, ConwayData};

/// ∇ with default options.
pub fn conway(d: &Diagram) -> Result<IntPoly, Error> {
    SkeinEngine::default().conway(d)
}

/// ∇ of the mirror image, computed from the mirrored diagram. Equals
/// (−1)^{μ−1}∇.
pub fn hat_conway(d: &Diagram) -> Result<IntPoly, Error> {
    conway(&d.mirror())
}

/// Coefficient of z^k.
pub fn a_coeff(p: &IntPoly, k: usize) -> i64 {
    p.coeff(k)
}

/// â₁ = (−1)^{μ−1} a_{μ+1}: the z^{μ+1} coefficient of the mirror's ∇.
pub fn a1hat_of(p: &IntPoly, mu: usize) -> i64 {
    let a = p.coeff(mu + 1);
    if mu % 2 == 1 {
        a
    } else {
        -a
    }
}

pub fn a1hat(d: &Diagram) -> Result<i64, Error> {
    Ok(a1hat_of(&conway(d)?, d.mu()))
}

/// Diagram of a named link.
pub fn builtin(name: &str, param: Option<i64>) -> Result<Diagram, Error> {
    builtin_pd(name, param)?.to_diagram()
}

/// â₁ of every nonempty sublink, keyed by component subset.
pub fn conway_data_from_diagram(d: &Diagram, engine: &SkeinEngine) -> Result<ConwayData, Error> {
    let mut cd = ConwayData::new();
    for j in ComponentSubset::all_nonempty(d.mu()) {
        let sub = d.sublink(j.indices());
        let a = a1hat_of(&engine.conway(&sub)?, sub.mu());
        cd.insert(j, a);
    }
    Ok(cd)
}
