//! Permutation groups, stabilizer chains and Schreier-Sims tables.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::RatVec;
use crate::perm::Permutation;

/// Default cap on the number of group elements or orbit points enumerated
/// explicitly.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

/// One level of a stabilizer chain: the group `G^(i)` fixing the first `i`
/// base points, with its orbit of the next base point.
#[derive(Clone, Debug)]
pub struct ChainLevel {
    base_point: usize,
    generators: Vec<Permutation>,
    orbit: Vec<usize>,
    transversal: Vec<Option<Permutation>>,
    inverse_transversal: Vec<Option<Permutation>>,
}

impl ChainLevel {
    fn new(degree: usize, base_point: usize) -> Self {
        let mut level = ChainLevel {
            base_point,
            generators: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
            inverse_transversal: vec![None; degree],
        };
        level.recompute_orbit(degree);
        level
    }

    pub fn base_point(&self) -> usize {
        self.base_point
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Orbit of the base point in BFS discovery order.
    pub fn orbit(&self) -> &[usize] {
        &self.orbit
    }

    /// Witness `u` with `u(base_point) = point`, if `point` is in the orbit.
    pub fn witness(&self, point: usize) -> Option<&Permutation> {
        self.transversal.get(point).and_then(Option::as_ref)
    }

    // BFS in generator order; the first witness found for a point wins.
    fn recompute_orbit(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.inverse_transversal = vec![None; degree];
        self.transversal[self.base_point] = Some(Permutation::identity(degree));
        self.orbit = vec![self.base_point];
        let mut head = 0;
        while head < self.orbit.len() {
            let q = self.orbit[head];
            head += 1;
            for s in &self.generators {
                let image = s.apply(q);
                if self.transversal[image].is_none() {
                    let u = s * self.transversal[q].as_ref().unwrap();
                    self.transversal[image] = Some(u);
                    self.orbit.push(image);
                }
            }
        }
        for &p in &self.orbit {
            self.inverse_transversal[p] = Some(self.transversal[p].as_ref().unwrap().inverse());
        }
    }
}

/// Chain of pointwise stabilizers `G = G^(0) >= G^(1) >= ... >= G^(n) = 1`
/// along a complete base (every point appears, so the chain has exactly
/// `degree` levels; levels with a singleton orbit are kept).
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<ChainLevel>,
}

impl StabilizerChain {
    /// Deterministic Schreier-Sims. `base_order` lists distinct points that
    /// come first in the base; the remaining points follow in ascending
    /// order.
    pub fn build(degree: usize, generators: &[Permutation], base_order: &[usize]) -> Result<Self> {
        let mut used = vec![false; degree];
        let mut base = Vec::with_capacity(degree);
        for &b in base_order {
            if b >= degree {
                return Err(Error::InvalidArgument(format!(
                    "base point {} is out of range 1..={degree}",
                    b + 1
                )));
            }
            if used[b] {
                return Err(Error::InvalidArgument(format!(
                    "base point {} listed twice",
                    b + 1
                )));
            }
            used[b] = true;
            base.push(b);
        }
        base.extend((0..degree).filter(|&p| !used[p]));

        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }

        let mut chain = StabilizerChain {
            degree,
            levels: base.iter().map(|&b| ChainLevel::new(degree, b)).collect(),
        };
        for g in generators {
            if g.is_identity() {
                continue;
            }
            let depth = chain.first_moved_level(g);
            for level in &mut chain.levels[..=depth] {
                if !level.generators.contains(g) {
                    level.generators.push(g.clone());
                }
            }
        }
        chain.complete();
        Ok(chain)
    }

    fn first_moved_level(&self, g: &Permutation) -> usize {
        self.levels
            .iter()
            .position(|l| g.apply(l.base_point) != l.base_point)
            .expect("non-identity permutation moves some base point")
    }

    fn complete(&mut self) {
        if self.degree == 0 {
            return;
        }
        let mut i = self.degree as isize - 1;
        while i >= 0 {
            let level = i as usize;
            self.levels[level].recompute_orbit(self.degree);
            let orbit = self.levels[level].orbit.clone();
            let gens = self.levels[level].generators.clone();
            let mut jump = None;
            'pairs: for &p in &orbit {
                for s in &gens {
                    let sp = s.apply(p);
                    let lvl = &self.levels[level];
                    let h = &(lvl.inverse_transversal[sp].as_ref().unwrap() * s)
                        * lvl.transversal[p].as_ref().unwrap();
                    if h.is_identity() {
                        continue;
                    }
                    let (residue, stop) = self.sift_from(h, level + 1);
                    if !residue.is_identity() {
                        for l in &mut self.levels[level + 1..=stop] {
                            l.generators.push(residue.clone());
                        }
                        jump = Some(stop);
                        break 'pairs;
                    }
                }
            }
            match jump {
                Some(stop) => i = stop as isize,
                None => i -= 1,
            }
        }
    }

    /// Sifts `g` starting at level `from`. Returns the residue and the level
    /// at which sifting stopped (`degree` if it passed every level).
    fn sift_from(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (idx, level) in self.levels.iter().enumerate().skip(from) {
            let p = g.apply(level.base_point);
            match &level.inverse_transversal[p] {
                Some(inv) => g = inv * &g,
                None => return (g, idx),
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[ChainLevel] {
        &self.levels
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift_from(g.clone(), 0).0.is_identity()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Every element exactly once, as products `u_0 u_1 ... u_{n-1}` of
    /// transversal elements.
    pub fn elements(&self, cap: usize) -> Result<Vec<Permutation>> {
        let order = self.order();
        if order > BigUint::from(cap) {
            return Err(Error::EnumerationCap {
                order: order.to_string(),
                cap,
            });
        }
        let mut elements = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            if level.orbit.len() == 1 {
                continue;
            }
            let mut next = Vec::with_capacity(elements.len() * level.orbit.len());
            for &p in &level.orbit {
                let u = level.transversal[p].as_ref().unwrap();
                next.extend(elements.iter().map(|e| u * e));
            }
            elements = next;
        }
        Ok(elements)
    }

    /// Uniformly random element (product of uniformly chosen transversal
    /// elements).
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in &self.levels {
            if level.orbit.len() > 1 {
                let p = level.orbit[rng.gen_range(0..level.orbit.len())];
                g = &g * level.transversal[p].as_ref().unwrap();
            }
        }
        g
    }
}

/// The table `T[i][j] = h_{i,j}` built from the chain of pointwise
/// stabilizers of `1, 2, ..., n` in natural order.
#[derive(Clone, Debug)]
pub struct SchreierSimsTable {
    degree: usize,
    rows: Vec<Vec<(usize, Permutation)>>,
}

impl SchreierSimsTable {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Row `i` (0-based) as `(column, h_{i,j})` pairs sorted by column.
    pub fn row(&self, i: usize) -> &[(usize, Permutation)] {
        &self.rows[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&Permutation> {
        self.rows[i]
            .binary_search_by_key(&j, |(c, _)| *c)
            .ok()
            .map(|k| &self.rows[i][k].1)
    }

    /// Off-diagonal entries `(i, j, h_{i,j})` in row-major order.
    pub fn off_diagonal(&self) -> impl Iterator<Item = (usize, usize, &Permutation)> {
        self.rows.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .filter(move |(j, _)| *j != i)
                .map(move |(j, h)| (i, *j, h))
        })
    }
}

/// Orbit of a vector with one witness per image and generators of the
/// vector's stabilizer.
#[derive(Clone, Debug)]
pub struct VectorOrbit {
    pub points: Vec<RatVec>,
    /// `witnesses[k] * v = points[k]`; `witnesses[0]` is the identity.
    pub witnesses: Vec<Permutation>,
    pub stabilizer: PermGroup,
}

/// A permutation group given by generators; the stabilizer chain along the
/// natural base is built on first use.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabilizerChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            chain: self.chain.clone(),
        }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field(
                "generators",
                &self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidArgument("degree must be positive".into()));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    /// Convenience constructor from 1-based cycle strings.
    pub fn from_cycle_strings(degree: usize, generators: &[&str]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|s| Permutation::parse_cycles(degree, s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(degree, gens)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new()).expect("positive degree")
    }

    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Permutation::from_cycles(degree, &[vec![0, 1]]).unwrap());
        }
        if degree >= 3 {
            gens.push(Permutation::from_cycles(degree, &[(0..degree).collect()]).unwrap());
        }
        Self::new(degree, gens).expect("positive degree")
    }

    pub fn cyclic(degree: usize) -> Self {
        let gens = if degree >= 2 {
            vec![Permutation::from_cycles(degree, &[(0..degree).collect()]).unwrap()]
        } else {
            Vec::new()
        };
        Self::new(degree, gens).expect("positive degree")
    }

    /// Symmetries of a regular `degree`-gon acting on its vertices.
    pub fn dihedral(degree: usize) -> Self {
        if degree < 3 {
            return Self::symmetric(degree);
        }
        let rotation = Permutation::from_cycles(degree, &[(0..degree).collect()]).unwrap();
        let reflection =
            Permutation::from_images((0..degree).map(|i| (degree - i) % degree).collect()).unwrap();
        Self::new(degree, vec![rotation, reflection]).expect("positive degree")
    }

    /// Direct product acting on consecutive blocks of coordinates.
    pub fn direct_product(factors: &[PermGroup]) -> Result<Self> {
        let degree: usize = factors.iter().map(|f| f.degree).sum();
        let mut gens = Vec::new();
        let mut offset = 0;
        for f in factors {
            for g in &f.generators {
                let mut images: Vec<usize> = (0..degree).collect();
                for i in 0..f.degree {
                    images[offset + i] = offset + g.apply(i);
                }
                gens.push(Permutation::from_images(images)?);
            }
            offset += f.degree;
        }
        Self::new(degree, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Stabilizer chain along the natural base `1, .., n`.
    pub fn chain(&self) -> &StabilizerChain {
        self.chain.get_or_init(|| {
            StabilizerChain::build(self.degree, &self.generators, &[])
                .expect("generators validated at construction")
        })
    }

    /// Stabilizer chain with the given 0-based base prefix.
    pub fn build_stabilizer_chain(&self, base_order: &[usize]) -> Result<StabilizerChain> {
        StabilizerChain::build(self.degree, &self.generators, base_order)
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    /// Order as `usize` when it fits.
    pub fn order_usize(&self) -> Option<usize> {
        self.order().to_usize()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Permutation::is_identity)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    pub fn elements(&self, cap: usize) -> Result<Vec<Permutation>> {
        self.chain().elements(cap)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        self.chain().random_element(rng)
    }

    /// Orbits of `G` on `{0, .., n-1}`, each sorted, ordered by minimum.
    pub fn orbits_on_indices(&self) -> Vec<Vec<usize>> {
        let n = self.degree;
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut block = vec![start];
            let mut head = 0;
            while head < block.len() {
                let q = block[head];
                head += 1;
                for g in &self.generators {
                    let r = g.apply(q);
                    if !seen[r] {
                        seen[r] = true;
                        block.push(r);
                    }
                }
            }
            block.sort_unstable();
            out.push(block);
        }
        out
    }

    pub fn schreier_sims_table(&self) -> SchreierSimsTable {
        let chain = self.chain();
        let mut rows = vec![Vec::new(); self.degree];
        for level in chain.levels() {
            let i = level.base_point();
            let mut row: Vec<(usize, Permutation)> = level
                .orbit()
                .iter()
                .map(|&j| (j, level.witness(j).unwrap().clone()))
                .collect();
            row.sort_by_key(|(j, _)| *j);
            rows[i] = row;
        }
        SchreierSimsTable {
            degree: self.degree,
            rows,
        }
    }

    /// Orbit of an arbitrary coordinate vector under the generator action,
    /// in BFS order.
    pub fn orbit_of_points<T: Clone + Eq + Hash>(&self, x: &[T], cap: usize) -> Result<Vec<Vec<T>>> {
        if x.len() != self.degree {
            return Err(Error::DimensionMismatch {
                expected: self.degree,
                found: x.len(),
            });
        }
        let mut index: HashMap<Vec<T>, ()> = HashMap::new();
        let mut points = vec![x.to_vec()];
        index.insert(x.to_vec(), ());
        let mut head = 0;
        while head < points.len() {
            for g in &self.generators {
                let image = g.act(&points[head]);
                if let Entry::Vacant(e) = index.entry(image) {
                    if points.len() >= cap {
                        return Err(Error::OrbitCap { cap });
                    }
                    points.push(e.key().clone());
                    e.insert(());
                }
            }
            head += 1;
        }
        Ok(points)
    }

    /// Orbit of `v` with witnesses and the stabilizer `G_v`. Stabilizer
    /// generators are the Schreier generators `u_{s y}^{-1} s u_y`, kept only
    /// when they enlarge the subgroup collected so far.
    pub fn orbit_of_vector(&self, v: &RatVec, cap: usize) -> Result<VectorOrbit> {
        if v.dim() != self.degree {
            return Err(Error::DimensionMismatch {
                expected: self.degree,
                found: v.dim(),
            });
        }
        let labels = v.rank_labels();
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        index.insert(labels.clone(), 0);
        let mut points = vec![labels];
        let mut witnesses = vec![Permutation::identity(self.degree)];
        let mut stab_gens: Vec<Permutation> = Vec::new();
        let mut stab_chain = StabilizerChain::build(self.degree, &[], &[])?;

        let mut head = 0;
        while head < points.len() {
            for s in &self.generators {
                let image = s.act(&points[head]);
                match index.get(&image) {
                    Some(&k) => {
                        let h = &(&witnesses[k].inverse() * s) * &witnesses[head];
                        if !h.is_identity() && !stab_chain.contains(&h) {
                            stab_gens.push(h);
                            stab_chain = StabilizerChain::build(self.degree, &stab_gens, &[])?;
                        }
                    }
                    None => {
                        if points.len() >= cap {
                            return Err(Error::OrbitCap { cap });
                        }
                        index.insert(image.clone(), points.len());
                        points.push(image);
                        witnesses.push(s * &witnesses[head]);
                    }
                }
            }
            head += 1;
        }

        let stabilizer = PermGroup {
            degree: self.degree,
            generators: stab_gens,
            chain: OnceLock::from(stab_chain),
        };
        let points = witnesses.iter().map(|w| v.permuted(w)).collect();
        Ok(VectorOrbit {
            points,
            witnesses,
            stabilizer,
        })
    }

    /// `G_v = {g : g v = v}` as a group.
    pub fn vector_stabilizer(&self, v: &RatVec, cap: usize) -> Result<PermGroup> {
        Ok(self.orbit_of_vector(v, cap)?.stabilizer)
    }

    /// The subgroup generated by `elements` (same degree).
    pub fn subgroup(&self, elements: Vec<Permutation>) -> Result<PermGroup> {
        PermGroup::new(self.degree, elements)
    }
}

impl PartialEq for PermGroup {
    /// Equality of generator lists (not of the generated groups).
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.generators == other.generators
    }
}
