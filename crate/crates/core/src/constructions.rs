//! Builders for fundamental domains: Dirichlet domains, the Schreier-Sims
//! polyhedron (full and transitively reduced) and generalized Dirichlet
//! domains built from a sequence of vectors and their stabilizers.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::geometry::{ConeSystem, DirichletIneq, RatVec, TraceRound};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// `(k^{n-1}, k^{n-2}, ..., k, 1)`.
pub fn k_universal_vector(n: usize, k: u64) -> Result<RatVec> {
    if k < 2 {
        return Err(Error::InvalidStrategy(format!("k-universal vector needs k >= 2, got {k}")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    let k = BigInt::from(k);
    let coords = (0..n)
        .map(|i| BigRational::from_integer(num_traits::pow(k.clone(), n - 1 - i)))
        .collect();
    Ok(RatVec::new(coords))
}

/// How the vectors `gamma_1, gamma_2, ...` of a generalized Dirichlet domain
/// are chosen.
#[derive(Clone, Debug, PartialEq)]
pub enum GammaStrategy {
    Explicit(Vec<RatVec>),
    /// `e_1, e_2, ..., e_n`; yields the Schreier-Sims polyhedron.
    CanonicalBasis,
    /// One vector per orbit `{o_1 < ... < o_m}` of the group on coordinates,
    /// with `base^{m-t}` at `o_t` and zeros elsewhere.
    PerOrbitWeights(u64),
    /// The single vector `(k^{n-1}, ..., 1)`; the result is the Dirichlet
    /// domain of that vector.
    KUniversal(u64),
}

impl GammaStrategy {
    /// Candidate vectors in the order they are offered to the builder.
    pub fn vectors(&self, group: &PermGroup) -> Result<Vec<RatVec>> {
        let n = group.degree();
        match self {
            GammaStrategy::Explicit(vs) => {
                for (k, v) in vs.iter().enumerate() {
                    if v.dim() != n {
                        return Err(Error::InvalidStrategy(format!(
                            "explicit vector {} has dimension {}, expected {n}",
                            k + 1,
                            v.dim()
                        )));
                    }
                }
                Ok(vs.clone())
            }
            GammaStrategy::CanonicalBasis => Ok((0..n).map(|i| RatVec::unit(n, i)).collect()),
            GammaStrategy::PerOrbitWeights(base) => {
                if *base < 2 {
                    return Err(Error::InvalidStrategy(format!(
                        "orbit weights need base >= 2, got {base}"
                    )));
                }
                let base = BigInt::from(*base);
                Ok(group
                    .orbits_on_indices()
                    .into_iter()
                    .map(|orbit| {
                        let m = orbit.len();
                        let mut coords = RatVec::zeros(n).into_coords();
                        for (t, &o) in orbit.iter().enumerate() {
                            coords[o] = BigRational::from_integer(num_traits::pow(base.clone(), m - 1 - t));
                        }
                        RatVec::new(coords)
                    })
                    .collect())
            }
            GammaStrategy::KUniversal(k) => Ok(vec![k_universal_vector(n, *k)?]),
        }
    }
}

/// `F_alpha = {x : alpha^T x >= alpha^T g x for all g in G}`; requires the
/// stabilizer of `alpha` to be trivial.
pub fn dirichlet_domain(group: &PermGroup, alpha: &RatVec, cap: usize) -> Result<ConeSystem> {
    alpha.check_dim(group.degree())?;
    let elements = group.elements(cap)?;
    let mut cone = ConeSystem::new(group.degree());
    let mut added = 0;
    let mut fixing = 0usize;
    for g in &elements {
        if g.is_identity() {
            continue;
        }
        match DirichletIneq::new(alpha.clone(), g.clone())? {
            Some(ineq) => {
                if cone.push(ineq)? {
                    added += 1;
                }
            }
            None => fixing += 1,
        }
    }
    if fixing > 0 {
        return Err(Error::NontrivialStabilizer {
            order: (fixing + 1).to_string(),
        });
    }
    cone.trace.rounds.push(TraceRound {
        gamma: alpha.clone(),
        coset_count: elements.len(),
        stabilizer_order: BigUint::one(),
        inequalities_added: added,
        transversal: elements,
    });
    Ok(cone)
}

/// Generalized Dirichlet domain. Each round picks the next strategy vector
/// moved by the current group `G_{i-1}`, computes `G_i`, the stabilizer of
/// that vector, and adds `gamma_i^T x >= gamma_i^T h x` for every `h` in a
/// transversal of `G_i` in `G_{i-1}` together with its inverse.
pub fn gdd(group: &PermGroup, strategy: &GammaStrategy, orbit_cap: usize) -> Result<ConeSystem> {
    let n = group.degree();
    let candidates = strategy.vectors(group)?;
    let mut cone = ConeSystem::new(n);
    let mut current = group.clone();
    let mut next_candidate = candidates.into_iter();
    let mut round = 1;

    while round <= n && !current.is_trivial() {
        let gamma = loop {
            match next_candidate.next() {
                Some(v) if current.generators().iter().any(|g| v.permuted(g) != v) => break v,
                // Fixed by all of G_{i-1}: skipped without using up a round.
                Some(_) => continue,
                None => {
                    return Err(Error::StrategyExhausted {
                        rounds: round - 1,
                        order: current.order().to_string(),
                    })
                }
            }
        };

        let orbit = current.orbit_of_vector(&gamma, orbit_cap)?;
        let mut transversal: Vec<Permutation> = Vec::with_capacity(orbit.witnesses.len() * 2);
        for h in &orbit.witnesses {
            transversal.push(h.clone());
        }
        for h in &orbit.witnesses {
            let inv = h.inverse();
            if !transversal.contains(&inv) {
                transversal.push(inv);
            }
        }

        let mut added = 0;
        for h in &transversal {
            if let Some(ineq) = DirichletIneq::new(gamma.clone(), h.clone())? {
                if cone.push(ineq)? {
                    added += 1;
                }
            }
        }

        let stabilizer = orbit.stabilizer;
        cone.trace.rounds.push(TraceRound {
            gamma,
            coset_count: orbit.witnesses.len(),
            stabilizer_order: stabilizer.order(),
            inequalities_added: added,
            transversal,
        });
        current = stabilizer;
        round += 1;
    }

    // An accepted gamma is moved by G_{i-1}, which fixes gamma_1..gamma_{i-1},
    // so it lies outside their span and n rounds always suffice.
    debug_assert!(current.is_trivial());
    Ok(cone)
}

/// Schreier-Sims polyhedron: `x_i >= x_j` for every off-diagonal table
/// entry `h_{i,j}`, in row-major table order.
pub fn ssp(group: &PermGroup) -> ConeSystem {
    let table = group.schreier_sims_table();
    let mut cone = ConeSystem::new(group.degree());
    for (i, j, h) in table.off_diagonal() {
        // With alpha = e_i, alpha^T (g x) = x_{g^{-1}(i)}, so the element
        // paired with e_i is h^{-1}.
        let ineq = DirichletIneq::coordinate_order(i, j, h.inverse())
            .expect("table entry maps i to j");
        cone.push(ineq).expect("dimension matches");
    }
    cone
}

/// Edges `(i, j)` of the table digraph.
fn table_edges(group: &PermGroup) -> Vec<(usize, usize, Permutation)> {
    group
        .schreier_sims_table()
        .off_diagonal()
        .map(|(i, j, h)| (i, j, h.clone()))
        .collect()
}

/// Transitive reduction of a DAG given as an edge list: an edge is kept iff
/// its head is not reachable from its tail by another path.
pub fn transitive_reduction(n: usize, edges: &[(usize, usize)]) -> Vec<bool> {
    let mut adj = vec![Vec::new(); n];
    for (k, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, k));
    }
    edges
        .iter()
        .enumerate()
        .map(|(skip, &(u, v))| {
            let mut seen = vec![false; n];
            let mut stack = vec![u];
            seen[u] = true;
            while let Some(a) = stack.pop() {
                for &(b, k) in &adj[a] {
                    if k == skip || seen[b] {
                        continue;
                    }
                    if b == v {
                        return false;
                    }
                    seen[b] = true;
                    stack.push(b);
                }
            }
            true
        })
        .collect()
}

/// The Schreier-Sims polyhedron restricted to the transitive reduction of
/// its table digraph. At most `n - f` inequalities, `f` the number of
/// orbits on coordinates.
pub fn ssp_reduced(group: &PermGroup) -> ConeSystem {
    let edges = table_edges(group);
    let pairs: Vec<(usize, usize)> = edges.iter().map(|(i, j, _)| (*i, *j)).collect();
    let keep = transitive_reduction(group.degree(), &pairs);
    let mut cone = ConeSystem::new(group.degree());
    for ((i, j, h), kept) in edges.into_iter().zip(keep) {
        if kept {
            let ineq = DirichletIneq::coordinate_order(i, j, h.inverse())
                .expect("table entry maps i to j");
            cone.push(ineq).expect("dimension matches");
        }
    }
    cone
}

/// Which construction to run, as selected on the command line.
#[derive(Clone, Debug, PartialEq)]
pub enum Construction {
    Dirichlet(GammaStrategy),
    Ssp,
    SspReduced,
    Gdd(GammaStrategy),
}

impl Construction {
    pub fn build(&self, group: &PermGroup, cap: usize) -> Result<ConeSystem> {
        match self {
            Construction::Ssp => Ok(ssp(group)),
            Construction::SspReduced => Ok(ssp_reduced(group)),
            Construction::Gdd(strategy) => gdd(group, strategy, cap),
            Construction::Dirichlet(strategy) => {
                let alpha = strategy
                    .vectors(group)?
                    .into_iter()
                    .next()
                    .ok_or_else(|| Error::InvalidStrategy("no vector for the Dirichlet domain".into()))?;
                dirichlet_domain(group, &alpha, cap)
            }
        }
    }
}

/// Product of the trace's coset counts (equals `|G|` for a completed
/// construction).
pub fn trace_coset_product(cone: &ConeSystem) -> BigUint {
    cone.trace
        .rounds
        .iter()
        .fold(BigUint::one(), |acc, r| acc * BigUint::from(r.coset_count))
}
