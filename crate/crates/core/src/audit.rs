//! Brute-force checks of fundamental-domain axioms and of how many
//! representatives each binary orbit keeps.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{integer_representative, ConeSystem, Membership};
use crate::group::{PermGroup, DEFAULT_ENUMERATION_CAP};
use crate::perm::Permutation;
use crate::sampling::{trial_rng, RationalGrid};

pub const DEFAULT_BINARY_CAP: usize = 20;
pub const DEFAULT_VERIFY_BINARY_CAP: usize = 12;

/// Limits for the enumerations performed by an audit.
#[derive(Clone, Debug)]
pub struct AuditLimits {
    /// Largest `|G|` for which collisions are checked exhaustively.
    pub enumeration_cap: usize,
    pub orbit_cap: usize,
    /// Largest `n` for which all of `{0,1}^n` is enumerated.
    pub binary_cap: usize,
    /// Random group elements tried per interior point when the collision
    /// check is sampled.
    pub collision_samples: usize,
}

impl Default for AuditLimits {
    fn default() -> Self {
        AuditLimits {
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            orbit_cap: DEFAULT_ENUMERATION_CAP,
            binary_cap: DEFAULT_VERIFY_BINARY_CAP,
            collision_samples: 1000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CollisionCheck {
    Exhaustive,
    /// Group too large to enumerate; random elements were tried instead.
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinaryCoverage {
    pub orbits_total: usize,
    pub orbits_with_rep: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FDReport {
    pub seed: u64,
    pub coverage_trials: usize,
    pub coverage_failures: usize,
    pub interior_collision_trials: usize,
    pub interior_collisions: usize,
    pub collision_check: CollisionCheck,
    pub binary_orbit_coverage: Option<BinaryCoverage>,
}

impl FDReport {
    pub fn passed(&self) -> bool {
        self.coverage_failures == 0
            && self.interior_collisions == 0
            && self
                .binary_orbit_coverage
                .as_ref()
                .is_none_or(|b| b.orbits_total == b.orbits_with_rep)
    }
}

/// Samples `trials` rational points and checks that (a) some image of each
/// lies in `cone`, (b) no other image of an interior representative is
/// interior, and (c) for small `n` every binary orbit meets the cone.
pub fn verify_fundamental_domain(
    group: &PermGroup,
    cone: &ConeSystem,
    trials: usize,
    seed: u64,
    limits: &AuditLimits,
) -> Result<FDReport> {
    let n = group.degree();
    if cone.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: cone.dim(),
        });
    }
    let compiled = cone.compile();
    let order = group.order();
    let exhaustive = order <= BigUint::from(limits.enumeration_cap);
    let grid = RationalGrid::default();

    let mut report = FDReport {
        seed,
        coverage_trials: trials,
        coverage_failures: 0,
        interior_collision_trials: 0,
        interior_collisions: 0,
        collision_check: if exhaustive {
            CollisionCheck::Exhaustive
        } else {
            CollisionCheck::Sampled
        },
        binary_orbit_coverage: None,
    };

    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let x = grid.sample(n, &mut rng);
        let xi = integer_representative(&x).expect("grid points fit in i64");
        let orbit = group.orbit_of_points(&xi, limits.orbit_cap)?;
        let classes: Vec<Membership> = orbit.iter().map(|y| compiled.classify_i64(y)).collect();
        if classes.iter().all(|c| !c.is_member()) {
            report.coverage_failures += 1;
            continue;
        }
        let Some(rep) = classes.iter().position(|&c| c == Membership::Interior) else {
            continue;
        };
        report.interior_collision_trials += 1;
        let collided = if exhaustive {
            // g y = y for some g != id shows up as a short orbit.
            BigUint::from(orbit.len()) != order
                || classes
                    .iter()
                    .enumerate()
                    .any(|(k, &c)| k != rep && c == Membership::Interior)
        } else {
            let y = &orbit[rep];
            (0..limits.collision_samples).any(|_| {
                let g = group.random_element(&mut rng);
                !g.is_identity() && compiled.classify_i64(&g.act(y)) == Membership::Interior
            })
        };
        if collided {
            report.interior_collisions += 1;
        }
    }

    if n <= limits.binary_cap {
        let eff = effectiveness(group, cone, limits.binary_cap)?;
        report.binary_orbit_coverage = Some(BinaryCoverage {
            orbits_total: eff.orbit_count,
            orbits_with_rep: eff.orbit_count - eff.orbits_without_rep,
        });
    }
    Ok(report)
}

struct DisjointSets {
    parent: Vec<u32>,
}

impl DisjointSets {
    fn new(size: usize) -> Self {
        DisjointSets {
            parent: (0..size as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Smaller root wins so roots are orbit minima.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// Image of a 0/1 point (bitmask, bit `j` = coordinate `j`) under `g`.
pub fn permute_mask(g: &Permutation, mask: u64) -> u64 {
    let mut out = 0u64;
    let mut rest = mask;
    while rest != 0 {
        let j = rest.trailing_zeros() as usize;
        out |= 1 << g.apply(j);
        rest &= rest - 1;
    }
    out
}

/// Orbits of `G` on `{0,1}^n` as sorted bitmask lists, ordered by their
/// smallest mask.
pub fn binary_orbits(group: &PermGroup, cap: usize) -> Result<Vec<Vec<u64>>> {
    let n = group.degree();
    if n > cap || n > 31 {
        return Err(Error::BinaryCap { n, cap: cap.min(31) });
    }
    let size = 1usize << n;
    let mut sets = DisjointSets::new(size);
    for g in group.generators() {
        for mask in 0..size as u64 {
            sets.union(mask as u32, permute_mask(g, mask) as u32);
        }
    }
    let mut slot: HashMap<u32, usize> = HashMap::new();
    let mut orbits: Vec<Vec<u64>> = Vec::new();
    for mask in 0..size as u32 {
        let root = sets.find(mask);
        let k = *slot.entry(root).or_insert_with(|| {
            orbits.push(Vec::new());
            orbits.len() - 1
        });
        orbits[k].push(mask as u64);
    }
    Ok(orbits)
}

pub fn mask_to_vector(mask: u64, n: usize) -> Vec<u8> {
    (0..n).map(|j| ((mask >> j) & 1) as u8).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EffectivenessReport {
    /// Largest number of representatives kept by a single orbit.
    pub lambda: usize,
    /// Representative count -> number of orbits with that count.
    pub histogram: BTreeMap<usize, usize>,
    pub orbit_count: usize,
    pub orbits_without_rep: usize,
    /// An orbit attaining `lambda` (first by smallest member), lex-descending.
    pub witness_orbit: Vec<Vec<u8>>,
    /// The members of `witness_orbit` lying in the cone, lex-descending.
    pub witness_representatives: Vec<Vec<u8>>,
}

/// Worst-case effectiveness on `X = {0,1}^n`.
pub fn effectiveness(group: &PermGroup, cone: &ConeSystem, n_cap: usize) -> Result<EffectivenessReport> {
    let n = group.degree();
    if cone.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: cone.dim(),
        });
    }
    let orbits = binary_orbits(group, n_cap)?;
    let compiled = cone.compile();
    let mut histogram = BTreeMap::new();
    let mut best: Option<(usize, usize)> = None;
    let mut reps_of = Vec::with_capacity(orbits.len());
    for (k, orbit) in orbits.iter().enumerate() {
        let reps: Vec<u64> = orbit
            .iter()
            .copied()
            .filter(|&m| compiled.classify_mask(m).is_member())
            .collect();
        *histogram.entry(reps.len()).or_insert(0) += 1;
        if best.is_none_or(|(_, c)| reps.len() > c) {
            best = Some((k, reps.len()));
        }
        reps_of.push(reps);
    }
    let (wk, lambda) = best.expect("at least the zero vector's orbit");
    let to_vectors = |masks: &[u64]| {
        let mut v: Vec<Vec<u8>> = masks.iter().map(|&m| mask_to_vector(m, n)).collect();
        v.sort_by(|a, b| b.cmp(a));
        v
    };
    Ok(EffectivenessReport {
        lambda,
        orbits_without_rep: histogram.get(&0).copied().unwrap_or(0),
        histogram,
        orbit_count: orbits.len(),
        witness_orbit: to_vectors(&orbits[wk]),
        witness_representatives: to_vectors(&reps_of[wk]),
    })
}

/// Whether the group elements attached to the inequalities of `cone`,
/// closed under inverses, generate `G`.
pub fn facet_elements_generate(group: &PermGroup, cone: &ConeSystem) -> bool {
    let mut elements: Vec<Permutation> = Vec::new();
    for ineq in cone.ineqs() {
        for g in [ineq.g().clone(), ineq.g().inverse()] {
            if !g.is_identity() && !elements.contains(&g) {
                elements.push(g);
            }
        }
    }
    if elements.iter().any(|g| g.degree() != group.degree() || !group.contains(g)) {
        return false;
    }
    match PermGroup::new(group.degree(), elements) {
        Ok(sub) => sub.order() == group.order(),
        Err(_) => false,
    }
}

/// Smallest number of group elements generating `G`, by exhaustive search
/// over subsets of increasing size.
pub fn min_generating_size(group: &PermGroup, cap: usize) -> Result<usize> {
    let elements: Vec<Permutation> = group
        .elements(cap)?
        .into_iter()
        .filter(|g| !g.is_identity())
        .collect();
    if elements.is_empty() {
        return Ok(0);
    }
    let order = group.order();
    for k in 1..=elements.len() {
        for subset in elements.iter().combinations(k) {
            let sub = PermGroup::new(group.degree(), subset.into_iter().cloned().collect())?;
            if sub.order() == order {
                return Ok(k);
            }
        }
    }
    unreachable!("the full element list generates the group")
}

/// Every inequality normal is orthogonal to the fixed space of its group
/// element.
pub fn fix_orthogonality_check(cone: &ConeSystem) -> bool {
    cone.ineqs().iter().all(|i| i.is_orthogonal_to_fixed_space())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{gdd, ssp, ssp_reduced, GammaStrategy};
    use crate::geometry::{DirichletIneq, RatVec};

    fn c3_blocks(n: usize) -> PermGroup {
        PermGroup::direct_product(&vec![PermGroup::cyclic(3); n / 3]).unwrap()
    }

    fn limits() -> AuditLimits {
        AuditLimits::default()
    }

    #[test]
    fn verify_ssp_c3() {
        let g = PermGroup::cyclic(3);
        let r = verify_fundamental_domain(&g, &ssp(&g), 1000, 11, &limits()).unwrap();
        assert_eq!(r.coverage_failures, 0);
        assert_eq!(r.interior_collisions, 0);
        assert!(r.interior_collision_trials > 0);
        assert!(r.passed());
    }

    #[test]
    fn verify_detects_weak_system() {
        let g = PermGroup::symmetric(3);
        let weak = ConeSystem::from_ineqs(
            3,
            [DirichletIneq::coordinate_order(0, 1, Permutation::parse_cycles(3, "(1 2)").unwrap())
                .unwrap()],
        )
        .unwrap();
        let r = verify_fundamental_domain(&g, &weak, 500, 3, &limits()).unwrap();
        // Too weak means overlapping interiors rather than missing coverage.
        assert!(r.interior_collisions > 0);
        assert!(!r.passed());

        // A cone that is too small misses orbits.
        let strict = ConeSystem::from_ineqs(
            3,
            [
                DirichletIneq::coordinate_order(0, 1, Permutation::parse_cycles(3, "(1 2)").unwrap())
                    .unwrap(),
                DirichletIneq::coordinate_order(1, 0, Permutation::parse_cycles(3, "(1 2)").unwrap())
                    .unwrap(),
                DirichletIneq::coordinate_order(1, 2, Permutation::parse_cycles(3, "(2 3)").unwrap())
                    .unwrap(),
            ],
        )
        .unwrap();
        let r = verify_fundamental_domain(&g, &strict, 500, 3, &limits()).unwrap();
        assert!(r.coverage_failures > 0);
    }

    #[test]
    fn verify_gdd_c3_blocks() {
        let g = c3_blocks(6);
        let cone = gdd(&g, &GammaStrategy::PerOrbitWeights(2), 1000).unwrap();
        let r = verify_fundamental_domain(&g, &cone, 1000, 5, &limits()).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn sampled_collision_mode() {
        let g = PermGroup::symmetric(5);
        let small = AuditLimits {
            enumeration_cap: 10,
            ..AuditLimits::default()
        };
        let r = verify_fundamental_domain(&g, &ssp(&g), 200, 1, &small).unwrap();
        assert_eq!(r.collision_check, CollisionCheck::Sampled);
        assert!(r.passed());
    }

    #[test]
    fn effectiveness_c3_blocks() {
        let g = c3_blocks(6);
        let e = effectiveness(&g, &ssp(&g), 20).unwrap();
        assert_eq!(e.lambda, 4);
        assert_eq!(e.witness_orbit.len(), 9);
        assert!(e.witness_orbit.contains(&vec![1, 1, 0, 1, 1, 0]));
        let cone = gdd(&g, &GammaStrategy::PerOrbitWeights(2), 1000).unwrap();
        assert_eq!(effectiveness(&g, &cone, 20).unwrap().lambda, 1);
    }

    #[test]
    fn effectiveness_symmetric_and_cap() {
        let g = PermGroup::symmetric(5);
        let e = effectiveness(&g, &ssp(&g), 20).unwrap();
        assert_eq!(e.lambda, 1);
        assert_eq!(e.orbit_count, 6);
        assert!(matches!(
            effectiveness(&g, &ssp(&g), 4).unwrap_err(),
            Error::BinaryCap { .. }
        ));
    }

    #[test]
    fn facet_generation() {
        let s3 = PermGroup::symmetric(3);
        assert!(facet_elements_generate(&s3, &ssp(&s3).irredundant_core()));
        let g = c3_blocks(6);
        let cone = gdd(&g, &GammaStrategy::PerOrbitWeights(2), 1000).unwrap();
        assert!(facet_elements_generate(&g, &cone.irredundant_core()));
        let reduced = ssp_reduced(&s3);
        let dropped = ConeSystem::from_ineqs(3, reduced.ineqs()[..1].iter().cloned()).unwrap();
        assert!(!facet_elements_generate(&s3, &dropped));
    }

    #[test]
    fn min_generating_examples() {
        let klein = PermGroup::from_cycle_strings(4, &["(1 2)", "(3 4)"]).unwrap();
        assert_eq!(min_generating_size(&klein, 1000).unwrap(), 2);
        assert_eq!(min_generating_size(&PermGroup::cyclic(3), 1000).unwrap(), 1);
        assert_eq!(min_generating_size(&PermGroup::trivial(2), 1000).unwrap(), 0);
        assert!(min_generating_size(&PermGroup::symmetric(6), 100).is_err());
    }

    #[test]
    fn fix_orthogonality_fixtures() {
        let g23 = Permutation::parse_cycles(3, "(2 3)").unwrap();
        let bad = DirichletIneq::with_gamma(RatVec::unit(3, 0), g23.clone(), RatVec::unit(3, 0))
            .unwrap();
        assert!(!fix_orthogonality_check(&ConeSystem::from_ineqs(3, [bad]).unwrap()));
        let good = DirichletIneq::new(RatVec::from_ints(&[4, 2, 1]), g23).unwrap().unwrap();
        assert_eq!(good.gamma(), &RatVec::from_ints(&[0, 1, -1]));
        assert!(fix_orthogonality_check(&ConeSystem::from_ineqs(3, [good]).unwrap()));
    }

    #[test]
    fn mask_permutation_matches_vector_action() {
        let g = Permutation::parse_cycles(5, "(1 3 5 2)").unwrap();
        for mask in 0..32u64 {
            let v = mask_to_vector(mask, 5);
            assert_eq!(mask_to_vector(permute_mask(&g, mask), 5), g.act(&v));
        }
    }
}
