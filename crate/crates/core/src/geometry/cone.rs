use std::collections::HashSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::Result;
use crate::geometry::farkas::conic_combination;
use crate::geometry::ratvec::rational_sign;
use crate::geometry::{DirichletIneq, RatVec};
use crate::perm::Permutation;

/// Where a point sits relative to a cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    Interior,
    Boundary,
    Outside,
}

impl Membership {
    /// Weak membership (interior or boundary).
    pub fn is_member(self) -> bool {
        self != Membership::Outside
    }
}

/// One round of a construction.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceRound {
    pub gamma: RatVec,
    pub coset_count: usize,
    pub stabilizer_order: num_bigint::BigUint,
    pub inequalities_added: usize,
    pub transversal: Vec<Permutation>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConstructionTrace {
    pub rounds: Vec<TraceRound>,
}

/// A homogeneous system `gamma_k^T x >= 0`, deduplicated on the primitive
/// normal, plus the trace of the construction that produced it.
#[derive(Clone, Debug)]
pub struct ConeSystem {
    dim: usize,
    ineqs: Vec<DirichletIneq>,
    keys: HashSet<Vec<BigInt>>,
    pub trace: ConstructionTrace,
}

impl PartialEq for ConeSystem {
    /// Same dimension and the same inequalities in the same order.
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.ineqs == other.ineqs
    }
}

impl ConeSystem {
    pub fn new(dim: usize) -> Self {
        ConeSystem {
            dim,
            ineqs: Vec::new(),
            keys: HashSet::new(),
            trace: ConstructionTrace::default(),
        }
    }

    pub fn from_ineqs(dim: usize, ineqs: impl IntoIterator<Item = DirichletIneq>) -> Result<Self> {
        let mut c = ConeSystem::new(dim);
        for ineq in ineqs {
            c.push(ineq)?;
        }
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ineqs(&self) -> &[DirichletIneq] {
        &self.ineqs
    }

    pub fn len(&self) -> usize {
        self.ineqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ineqs.is_empty()
    }

    /// Adds an inequality unless one with the same primitive normal is
    /// already present. Returns whether it was added.
    pub fn push(&mut self, ineq: DirichletIneq) -> Result<bool> {
        ineq.gamma().check_dim(self.dim)?;
        if !self.keys.insert(ineq.normal().to_vec()) {
            return Ok(false);
        }
        self.ineqs.push(ineq);
        Ok(true)
    }

    pub fn classify(&self, x: &RatVec) -> Result<Membership> {
        x.check_dim(self.dim)?;
        let mut tight = false;
        for ineq in &self.ineqs {
            match rational_sign(&ineq.gamma().dot(x)?) {
                std::cmp::Ordering::Less => return Ok(Membership::Outside),
                std::cmp::Ordering::Equal => tight = true,
                std::cmp::Ordering::Greater => {}
            }
        }
        Ok(if tight {
            Membership::Boundary
        } else {
            Membership::Interior
        })
    }

    /// Whether `normal^T x >= 0` holds on the whole cone (Farkas: `normal`
    /// lies in the conic hull of the system's normals).
    pub fn implies_normal(&self, normal: &[BigInt]) -> bool {
        if self.keys.contains(normal) {
            return true;
        }
        let gens: Vec<&[BigInt]> = self.ineqs.iter().map(|i| i.normal()).collect();
        conic_combination(&gens, normal).is_some()
    }

    pub fn implies(&self, ineq: &DirichletIneq) -> Result<bool> {
        ineq.gamma().check_dim(self.dim)?;
        Ok(self.implies_normal(ineq.normal()))
    }

    /// Every inequality of `other` is implied by `self`.
    pub fn implies_system(&self, other: &ConeSystem) -> bool {
        other.ineqs.iter().all(|i| self.implies_normal(i.normal()))
    }

    pub fn mutually_implies(&self, other: &ConeSystem) -> bool {
        self.dim == other.dim && self.implies_system(other) && other.implies_system(self)
    }

    /// Greedy removal in stored order: inequality `k` is dropped when the
    /// inequalities still kept (other than `k`) imply it.
    pub fn irredundant_core(&self) -> ConeSystem {
        let mut keep = vec![true; self.ineqs.len()];
        for k in 0..self.ineqs.len() {
            let others: Vec<&[BigInt]> = self
                .ineqs
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k && keep[*j])
                .map(|(_, i)| i.normal())
                .collect();
            if conic_combination(&others, self.ineqs[k].normal()).is_some() {
                keep[k] = false;
            }
        }
        let mut out = ConeSystem::new(self.dim);
        for (ineq, kept) in self.ineqs.iter().zip(keep) {
            if kept {
                out.push(ineq.clone()).expect("same dimension");
            }
        }
        out.trace = self.trace.clone();
        out
    }

    /// One line per inequality, `c1 x1 + c2 x2 - c3 x3 >= 0`, integer
    /// coefficients, zero terms omitted.
    pub fn cut_format(&self) -> String {
        let mut out = String::new();
        for ineq in &self.ineqs {
            let mut first = true;
            for (j, c) in ineq.normal().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if first {
                    write!(out, "{} x{}", c, j + 1).unwrap();
                    first = false;
                } else if c.is_negative() {
                    write!(out, " - {} x{}", -c, j + 1).unwrap();
                } else {
                    write!(out, " + {} x{}", c, j + 1).unwrap();
                }
            }
            out.push_str(" >= 0\n");
        }
        out
    }

    /// Integer-only evaluator for repeated classification of integer points.
    pub fn compile(&self) -> CompiledCone {
        let small: Option<Vec<Vec<i64>>> = self
            .ineqs
            .iter()
            .map(|i| i.normal().iter().map(|c| c.to_i64()).collect())
            .collect();
        CompiledCone {
            dim: self.dim,
            small,
            big: self.ineqs.iter().map(|i| i.normal().to_vec()).collect(),
        }
    }
}

/// Classifies integer points against the primitive normals. Uses `i128`
/// accumulation when every normal fits in `i64`, falling back to big
/// integers on overflow.
#[derive(Clone, Debug)]
pub struct CompiledCone {
    dim: usize,
    small: Option<Vec<Vec<i64>>>,
    big: Vec<Vec<BigInt>>,
}

impl CompiledCone {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn classify_i64(&self, x: &[i64]) -> Membership {
        debug_assert_eq!(x.len(), self.dim);
        let mut tight = false;
        for (k, big) in self.big.iter().enumerate() {
            let sign = match &self.small {
                Some(rows) => match dot_i128(&rows[k], x) {
                    Some(v) => v.signum(),
                    None => dot_big(big, x).signum().to_i128().unwrap(),
                },
                None => dot_big(big, x).signum().to_i128().unwrap(),
            };
            if sign < 0 {
                return Membership::Outside;
            }
            if sign == 0 {
                tight = true;
            }
        }
        if tight {
            Membership::Boundary
        } else {
            Membership::Interior
        }
    }

    /// Classification of a 0/1 point encoded as a bitmask (bit `j` is
    /// coordinate `j`).
    pub fn classify_mask(&self, mask: u64) -> Membership {
        let x: Vec<i64> = (0..self.dim).map(|j| ((mask >> j) & 1) as i64).collect();
        self.classify_i64(&x)
    }
}

fn dot_i128(a: &[i64], x: &[i64]) -> Option<i128> {
    a.iter().zip(x).try_fold(0i128, |acc, (&c, &v)| {
        acc.checked_add(c as i128 * v as i128)
    })
}

fn dot_big(a: &[BigInt], x: &[i64]) -> BigInt {
    a.iter()
        .zip(x)
        .fold(BigInt::zero(), |acc, (c, &v)| acc + c * BigInt::from(v))
}

/// Scales a rational vector by a positive factor onto integers that fit in
/// `i64`, if possible.
pub fn integer_representative(x: &RatVec) -> Option<Vec<i64>> {
    x.cleared_denominators().iter().map(|v| v.to_i64()).collect()
}
