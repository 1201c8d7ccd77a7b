//! Poincaré series of plane curve branches and monomial loci, with point
//! counters that check them after substituting `L := p`.

pub mod algebra;
pub mod branch;
pub mod counter;
pub mod modp;
pub mod presburger;
pub mod verifier;
