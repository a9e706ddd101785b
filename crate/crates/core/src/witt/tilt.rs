//! The tilt `R♭ = lim (... -> R -> R)` along Frobenius, for finite rings of
//! characteristic p.

use crate::base::FiniteRing;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Tilt {
    pub ring: FiniteRing,
    /// `projections[k]` sends an element of `R♭` (a compatible sequence) to its
    /// stage-`k` coordinate in `R`.
    pub projections: Vec<Vec<usize>>,
}

/// The tilt, with projections to stages `0..=depth`. For a finite ring the
/// Frobenius images stabilize on the largest perfect subring, on which
/// Frobenius is bijective; a compatible sequence is determined by its
/// stage-0 coordinate there.
pub fn tilt(ring: &FiniteRing, depth: usize) -> Result<Tilt> {
    let p = ring.characteristic();
    if !crate::poly::field::is_prime(p) {
        return Err(Error::Characteristic(format!("{} does not have prime characteristic", ring.name())));
    }
    let frob = |x: usize| ring.pow(x, p);
    let mut image: Vec<usize> = ring.elements().collect();
    loop {
        let mut next: Vec<usize> = image.iter().map(|&x| frob(x)).collect();
        next.sort_unstable();
        next.dedup();
        if next.len() == image.len() {
            break;
        }
        image = next;
    }
    let name = format!("({})♭", ring.name());
    let (flat, embed) = ring.subring(&image, name)?;
    // inverse Frobenius on the perfect part
    let mut inv = vec![usize::MAX; ring.cardinality()];
    for &x in &image {
        inv[frob(x)] = x;
    }
    let mut projections = vec![embed.clone()];
    for k in 1..=depth {
        let prev = &projections[k - 1];
        projections.push(prev.iter().map(|&x| inv[x]).collect());
    }
    Ok(Tilt { ring: flat, projections })
}
