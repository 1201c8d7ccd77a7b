use super::{BranchError, BranchSpec};
use crate::modp;

/// `ord_w (y(w) - y(ζ w))` over `F_p`, or `None` when the difference vanishes
/// identically (as it does for `ζ = 1`).
///
/// The coefficient of `w^j` is `a_j (1 - ζ^j)`, so this is the least `j`
/// with `a_j ≢ 0` and `ζ^j ≠ 1` in `F_p`.
pub fn order_gap(b: &BranchSpec, p: u64, zeta: u64) -> Result<Option<u32>, BranchError> {
    if !modp::is_prime(p) {
        return Err(BranchError::Invalid(format!("{p} is not prime")));
    }
    let zeta = zeta % p;
    if zeta == 0 || modp::pow_mod(zeta, b.m() as u64, p) != 1 {
        return Err(BranchError::BadRoot { zeta, p, m: b.m() });
    }
    for (j, a) in b.coeffs() {
        let a = modp::rat_mod(a, p).ok_or(BranchError::BadPrime { p })?;
        if a != 0 && modp::pow_mod(zeta, j as u64, p) != 1 {
            return Ok(Some(j));
        }
    }
    Ok(None)
}
