//! The congruence form: fibres are congruence lattices, and a homomorphism
//! `f: X → Y` lifts from `R` to `S` when it maps `R`-related pairs to
//! `S`-related pairs.

use crate::algebra::{Congruence, Homomorphism};
use crate::error::{Error, Result};

fn check_fibres(f: &Homomorphism, r: Option<&Congruence>, s: Option<&Congruence>) -> Result<()> {
    if let Some(r) = r {
        if r.size() != f.dom().size() {
            return Err(Error::FibreMismatch(r.size(), f.dom().size()));
        }
    }
    if let Some(s) = s {
        if s.size() != f.cod().size() {
            return Err(Error::FibreMismatch(s.size(), f.cod().size()));
        }
    }
    Ok(())
}

pub fn lifts(f: &Homomorphism, r: &Congruence, s: &Congruence) -> Result<bool> {
    check_fibres(f, Some(r), Some(s))?;
    let reps = r.representatives();
    Ok((0..r.size()).all(|a| s.related(f.apply(a), f.apply(reps[r.block_of(a)]))))
}

/// Cartesian lifting: `a ≡ b` iff `f a S f b`. The largest `R` with `lifts(f, R, S)`.
pub fn preimage_congruence(f: &Homomorphism, s: &Congruence) -> Result<Congruence> {
    check_fibres(f, None, Some(s))?;
    let labels: Vec<usize> = f.map().iter().map(|&b| s.block_of(b)).collect();
    Ok(Congruence::from_labels(&labels))
}

/// Cocartesian lifting along a surjection: the congruence generated by the
/// image pairs, i.e. the kernel of the pushout of `X → X/R` along `f`.
pub fn image_congruence(f: &Homomorphism, r: &Congruence) -> Result<Congruence> {
    check_fibres(f, Some(r), None)?;
    if !f.is_surjective() {
        return Err(Error::NotInE);
    }
    let reps = r.representatives();
    let pairs: Vec<(usize, usize)> = (0..r.size())
        .filter(|&a| reps[r.block_of(a)] != a)
        .map(|a| (f.apply(a), f.apply(reps[r.block_of(a)])))
        .collect();
    Ok(f.cod().generated_congruence(&pairs))
}

/// Right universalizers of the domain functor on quotients are exactly the
/// quotient maps themselves.
pub fn right_universalizer_check(f: &Homomorphism) -> bool {
    f.is_surjective()
}
