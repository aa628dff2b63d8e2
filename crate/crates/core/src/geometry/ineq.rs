use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::RatVec;
use crate::perm::Permutation;

/// The inequality `alpha^T x >= alpha^T (g x)`, stored together with its
/// normal `gamma` (so the inequality reads `gamma^T x >= 0`) and a primitive
/// integer positive multiple of `gamma` used as a canonical key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletIneq {
    alpha: RatVec,
    g: Permutation,
    gamma: RatVec,
    normal: Vec<BigInt>,
}

/// `gamma_j = alpha_j - alpha_{g(j)}`.
fn dirichlet_normal(alpha: &RatVec, g: &Permutation) -> RatVec {
    let a = alpha.coords();
    RatVec::new(
        (0..a.len())
            .map(|j| &a[j] - &a[g.apply(j)])
            .collect::<Vec<BigRational>>(),
    )
}

impl DirichletIneq {
    /// Returns `None` when `g alpha = alpha`, i.e. the inequality is `0 >= 0`.
    pub fn new(alpha: RatVec, g: Permutation) -> Result<Option<Self>> {
        alpha.check_dim(g.degree())?;
        let gamma = dirichlet_normal(&alpha, &g);
        if gamma.is_zero() {
            return Ok(None);
        }
        let normal = gamma.primitive_integer();
        Ok(Some(DirichletIneq {
            alpha,
            g,
            gamma,
            normal,
        }))
    }

    /// Builds an inequality from a normal that was not derived from
    /// `(alpha, g)`. Used when reading foreign systems and for fixtures that
    /// deliberately violate fixed-space orthogonality.
    pub fn with_gamma(alpha: RatVec, g: Permutation, gamma: RatVec) -> Result<Self> {
        alpha.check_dim(g.degree())?;
        gamma.check_dim(g.degree())?;
        if gamma.is_zero() {
            return Err(Error::InvalidArgument("inequality normal is zero".into()));
        }
        let normal = gamma.primitive_integer();
        Ok(DirichletIneq {
            alpha,
            g,
            gamma,
            normal,
        })
    }

    /// `x_i >= x_j` (0-based), recorded with `alpha = e_i` and a group
    /// element `g` satisfying `g^{-1}(i) = j`.
    pub fn coordinate_order(i: usize, j: usize, g: Permutation) -> Result<Self> {
        let n = g.degree();
        let ineq = Self::new(RatVec::unit(n, i), g)?
            .ok_or_else(|| Error::InvalidArgument("g fixes the coordinate".into()))?;
        let mut expected = RatVec::zeros(n).into_coords();
        expected[i] += BigRational::from_integer(1.into());
        expected[j] -= BigRational::from_integer(1.into());
        if ineq.gamma.coords() != expected.as_slice() {
            return Err(Error::InvalidArgument(format!(
                "group element {} does not send x_{} to position {}",
                ineq.g,
                j + 1,
                i + 1
            )));
        }
        Ok(ineq)
    }

    pub fn dim(&self) -> usize {
        self.gamma.dim()
    }

    pub fn alpha(&self) -> &RatVec {
        &self.alpha
    }

    pub fn g(&self) -> &Permutation {
        &self.g
    }

    pub fn gamma(&self) -> &RatVec {
        &self.gamma
    }

    /// Coprime integer vector, a positive multiple of `gamma`.
    pub fn normal(&self) -> &[BigInt] {
        &self.normal
    }

    /// `gamma^T x`.
    pub fn evaluate(&self, x: &RatVec) -> Result<BigRational> {
        self.gamma.dot(x)
    }

    /// `gamma^T v = 0` for every cycle indicator `v` of `g`.
    pub fn is_orthogonal_to_fixed_space(&self) -> bool {
        self.g.cycles().iter().all(|cycle| {
            cycle
                .iter()
                .fold(BigRational::zero(), |acc, &k| acc + &self.gamma.coords()[k])
                .is_zero()
        })
    }
}

/// Basis of `fix(g) = {x : g x = x}`: one 0/1 indicator per cycle of `g`,
/// fixed points included.
pub fn fix_space_basis(g: &Permutation) -> Vec<RatVec> {
    let n = g.degree();
    g.cycles()
        .into_iter()
        .map(|cycle| {
            let mut v = vec![0i64; n];
            for k in cycle {
                v[k] = 1;
            }
            RatVec::from_ints(&v)
        })
        .collect()
}
