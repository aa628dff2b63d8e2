//! Lexicographic orbit representatives, the tie-breaker perturbation and
//! closure membership for `Lex_G = {x : x >= g x lexicographically, all g}`.
//!
//! Everything here enumerates orbits explicitly and is bounded by an orbit
//! cap; lex-max selection is hard in general.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::geometry::RatVec;
use crate::group::PermGroup;

/// First-difference comparison.
pub fn lex_compare(x: &RatVec, y: &RatVec) -> Result<Ordering> {
    y.check_dim(x.dim())?;
    Ok(x.coords().cmp(y.coords()))
}

/// The lexicographically greatest vector of `Orb_G(x)`.
pub fn lex_max_in_orbit(group: &PermGroup, x: &RatVec, cap: usize) -> Result<RatVec> {
    x.check_dim(group.degree())?;
    let labels = x.rank_labels();
    let best = group
        .orbit_of_points(&labels, cap)?
        .into_iter()
        .max()
        .expect("orbit is non-empty");
    // Map labels back to values.
    let mut values: Vec<&BigRational> = x.coords().iter().collect();
    values.sort();
    values.dedup();
    Ok(RatVec::new(
        best.into_iter().map(|l| values[l as usize].clone()).collect(),
    ))
}

/// `x` is lexicographically maximal in its orbit.
pub fn in_lex(group: &PermGroup, x: &RatVec, cap: usize) -> Result<bool> {
    x.check_dim(group.degree())?;
    let labels = x.rank_labels();
    let orbit = group.orbit_of_points(&labels, cap)?;
    Ok(orbit.iter().all(|y| *y <= labels))
}

#[derive(Clone, Debug, PartialEq)]
pub struct TieBreakerResult {
    /// `x_i - i * epsilon / n^2` with 1-based `i`.
    pub perturbed: RatVec,
    pub epsilon: BigRational,
    /// 1 if all coordinates are equal, otherwise the smallest positive gap.
    pub gap: BigRational,
}

/// Smallest positive `|x_i - x_j|`, or 1 when all coordinates coincide.
pub fn coordinate_gap(x: &RatVec) -> BigRational {
    let mut sorted: Vec<&BigRational> = x.coords().iter().collect();
    sorted.sort();
    sorted
        .windows(2)
        .map(|w| w[1] - w[0])
        .filter(|d| d.is_positive())
        .min()
        .unwrap_or_else(BigRational::one)
}

/// Tie-breaker perturbation with `epsilon = gap / 2`.
pub fn tie_breaker(x: &RatVec) -> TieBreakerResult {
    let gap = coordinate_gap(x);
    let epsilon = &gap / BigRational::from_integer(2.into());
    tie_breaker_with(x, epsilon).expect("gap / 2 lies in (0, gap)")
}

/// Tie-breaker perturbation for an explicit `0 < epsilon < gap`.
pub fn tie_breaker_with(x: &RatVec, epsilon: BigRational) -> Result<TieBreakerResult> {
    let gap = coordinate_gap(x);
    if !epsilon.is_positive() || epsilon >= gap {
        return Err(Error::InvalidArgument(format!(
            "epsilon must lie strictly between 0 and {}",
            crate::geometry::format_rational(&gap)
        )));
    }
    let n = x.dim();
    let n2 = BigRational::from_integer((n * n).into());
    let step = &epsilon / n2;
    let perturbed = RatVec::new(
        x.coords()
            .iter()
            .enumerate()
            .map(|(i, v)| v - &step * BigRational::from_integer((i + 1).into()))
            .collect(),
    );
    Ok(TieBreakerResult {
        perturbed,
        epsilon,
        gap,
    })
}

/// Membership in the closure of `Lex_G`: the tie-broken vector is lex-max
/// in its orbit.
pub fn in_closure_lex(group: &PermGroup, x: &RatVec, cap: usize) -> Result<bool> {
    let t = tie_breaker(x);
    in_lex(group, &t.perturbed, cap)
}

/// `Lex_G` is closed exactly when `G` is the full product of symmetric
/// groups on its coordinate orbits. `G` is always a subgroup of that
/// product, so comparing orders decides it.
pub fn is_lex_closed(group: &PermGroup) -> bool {
    let product = group
        .orbits_on_indices()
        .iter()
        .fold(BigUint::one(), |acc, o| acc * factorial(o.len()));
    group.order() == product
}

fn factorial(m: usize) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}
