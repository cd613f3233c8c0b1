use serde::{Deserialize, Serialize};

use crate::hardy_numerics::InnerFunctionSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub verdict: bool,
    pub reason: String,
}

/// Whether K_Θ contains a bounded univalent function. Every Cantor
/// component representable here is self-similar with ratio below 1/2, so
/// its support has finite entropy and the question is always decided.
pub fn decide_existence(theta: &InnerFunctionSpec) -> Decision {
    let yes = |reason: &str| Decision { verdict: true, reason: reason.into() };
    if let Some(z) = theta.blaschke_zeros.first() {
        return yes(&format!("zero of Θ at {z} in the disc"));
    }
    if let Some(mu) = &theta.singular_part {
        if let Some(a) = mu.atoms.iter().find(|a| a.mass > 0.0) {
            return yes(&format!("atom of mass {} at {} turns", a.mass, a.angle_turns));
        }
        if let Some(c) = mu.cantor.iter().find(|c| c.effective_mass() > 0.0) {
            return yes(&format!("Cantor component of mass {} on a finite-entropy set (ratio {})", c.effective_mass(), c.ratio));
        }
    }
    Decision { verdict: false, reason: "Θ is constant, so K_Θ = {0}".into() }
}
