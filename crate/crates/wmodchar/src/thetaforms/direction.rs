use crate::liealg::{NilpotentSlice, RootSystem};
use crate::{qi, Error, Result, Q};
use num_traits::Zero;

const PRIMES: [i64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic generic direction z₀ ∈ 𝔥^f: (α|z₀) ≠ 0 for every root not
/// vanishing on 𝔥^f. Returns the zero vector when 𝔥^f = 0 or is unavailable.
pub fn generic_direction(rs: &RootSystem, slice: &NilpotentSlice) -> Result<Vec<Q>> {
    let l = rs.rank();
    let basis = match &slice.hf_basis {
        Some(b) if !b.is_empty() => b,
        _ => return Ok(vec![Q::zero(); l]),
    };
    for attempt in 0..64 {
        let mut z = vec![Q::zero(); l];
        for (i, b) in basis.iter().enumerate() {
            let c = qi(PRIMES[(i + attempt) % PRIMES.len()] + attempt as i64);
            let c = if (i + attempt) % 2 == 1 { -c } else { c };
            for (zj, bj) in z.iter_mut().zip(b) {
                *zj += c * bj;
            }
        }
        if is_generic(rs, slice, &z) {
            return Ok(z);
        }
    }
    Err(Error::Precondition("no generic direction found in h^f".into()))
}

/// Checks that z₀ lies in 𝔥^f (β(z₀) = 0, and (z₀|θ) = 0 for minimal slices)
/// and is generic.
pub fn is_generic(rs: &RootSystem, slice: &NilpotentSlice, z: &[Q]) -> bool {
    in_hf(rs, slice, z)
        && rs
            .positive
            .iter()
            .all(|r| slice.vanishes_on_hf(rs, r) || !rs.ip(&rs.root_q(r), z).is_zero())
}

/// Membership in 𝔥^f: orthogonal to x and to β (and to everything in 𝔥^f's complement
/// as far as the slice describes it).
pub fn in_hf(rs: &RootSystem, slice: &NilpotentSlice, z: &[Q]) -> bool {
    match &slice.hf_basis {
        None => z.iter().all(|c| c.is_zero()),
        Some(b) if b.is_empty() => z.iter().all(|c| c.is_zero()),
        Some(_) => {
            rs.ip(&rs.root_q(&slice.beta), z).is_zero()
                && rs.ip(&slice.x, z).is_zero()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_directions_are_generic() {
        for name in ["A2", "B3", "D4", "E6", "G2", "C3"] {
            let rs = RootSystem::from_name(name).unwrap();
            let s = NilpotentSlice::minimal(&rs);
            let z = generic_direction(&rs, &s).unwrap();
            assert!(is_generic(&rs, &s, &z), "{name}");
            assert!(rs.ip(&rs.theta_q(), &z).is_zero());
        }
        let rs = RootSystem::from_name("A1").unwrap();
        let z = generic_direction(&rs, &NilpotentSlice::minimal(&rs)).unwrap();
        assert!(z.iter().all(|c| c.is_zero()));
    }
}
