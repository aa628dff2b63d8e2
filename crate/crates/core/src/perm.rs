//! Permutations of `{0, .., n-1}`.
//!
//! Points are 0-based everywhere inside the crate. The 1-based convention
//! only appears at the parsing and printing boundary (`from_one_based`,
//! `parse_cycles`, `Display`).

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from 0-based images, `images[i] = g(i)`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        let mut seen = vec![false; n];
        for (i, &img) in images.iter().enumerate() {
            if img >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {} of point {} is out of range 1..={n}",
                    img + 1,
                    i + 1
                )));
            }
            if seen[img] {
                return Err(Error::InvalidPermutation(format!(
                    "image {} appears more than once",
                    img + 1
                )));
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from a 1-based one-line image array.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if let Some(pos) = images.iter().position(|&v| v == 0) {
            return Err(Error::InvalidPermutation(format!(
                "image at position {} is 0 (points are 1-based)",
                pos + 1
            )));
        }
        Self::from_images(images.iter().map(|&v| v - 1).collect())
    }

    /// Builds a permutation of the given degree from 0-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} is out of range 1..={degree}",
                        p + 1
                    )));
                }
                if touched[p] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} appears in more than one cycle position",
                        p + 1
                    )));
                }
                touched[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses 1-based cycle notation such as `"(1 2 3)(4 5 6)"`. Commas are
    /// accepted as separators; `"()"` and the empty string denote the
    /// identity. Fixed points may be omitted.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut current: Option<Vec<usize>> = None;
        let mut number: Option<(usize, usize)> = None; // (value, start column)
        let err = |col: usize, msg: String| Error::parse(format!("column {}", col + 1), msg);

        let flush = |number: &mut Option<(usize, usize)>,
                     current: &mut Option<Vec<usize>>|
         -> Result<()> {
            if let Some((value, col)) = number.take() {
                if value == 0 || value > degree {
                    return Err(err(col, format!("point {value} is out of range 1..={degree}")));
                }
                match current {
                    Some(c) => {
                        if c.contains(&(value - 1)) {
                            return Err(err(col, format!("point {value} repeated inside a cycle")));
                        }
                        c.push(value - 1)
                    }
                    None => return Err(err(col, "point outside of parentheses".into())),
                }
            }
            Ok(())
        };

        for (col, ch) in text.char_indices() {
            match ch {
                '0'..='9' => {
                    let d = ch as usize - '0' as usize;
                    number = Some(match number {
                        Some((v, start)) => (
                            v.checked_mul(10)
                                .and_then(|v| v.checked_add(d))
                                .ok_or_else(|| err(start, "point index overflows".into()))?,
                            start,
                        ),
                        None => (d, col),
                    });
                }
                '(' => {
                    flush(&mut number, &mut current)?;
                    if current.is_some() {
                        return Err(err(col, "nested '('".into()));
                    }
                    current = Some(Vec::new());
                }
                ')' => {
                    flush(&mut number, &mut current)?;
                    match current.take() {
                        Some(c) => cycles.push(c),
                        None => return Err(err(col, "unmatched ')'".into())),
                    }
                }
                ' ' | ',' | '\t' => flush(&mut number, &mut current)?,
                other => return Err(err(col, format!("unexpected character '{other}'"))),
            }
        }
        flush(&mut number, &mut current)?;
        if current.is_some() {
            return Err(err(text.len(), "unterminated cycle, missing ')'".into()));
        }
        Self::from_cycles(degree, &cycles).map_err(|e| match e {
            Error::InvalidPermutation(msg) => Error::parse(format!("cycle string {text:?}"), msg),
            other => other,
        })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image of point `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based_images(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `compose(g, h)(i) = g(h(i))`.
    pub fn compose(&self, h: &Permutation) -> Result<Permutation> {
        if self.degree() != h.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: h.degree(),
            });
        }
        Ok(self * h)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    /// All cycles in 0-based form, fixed points included, each starting at
    /// its smallest point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.images[start];
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .fold(1, |acc, c| num_integer::lcm(acc, c.len()))
    }

    /// Coordinate action `x -> gx` with `(gx)_i = x_{g^{-1}(i)}`, i.e. the
    /// entry at position `j` moves to position `g(j)`.
    pub fn act<T: Clone>(&self, x: &[T]) -> Vec<T> {
        debug_assert_eq!(x.len(), self.degree());
        let mut out = x.to_vec();
        for (j, v) in x.iter().enumerate() {
            out[self.images[j]] = v.clone();
        }
        out
    }

    /// Checked variant of [`Permutation::act`].
    pub fn try_act<T: Clone>(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.degree() {
            return Err(Error::DimensionMismatch {
                expected: self.degree(),
                found: x.len(),
            });
        }
        Ok(self.act(x))
    }
}

impl Mul<&Permutation> for &Permutation {
    type Output = Permutation;

    /// `(g * h)(i) = g(h(i))`. Panics on degree mismatch; use
    /// [`Permutation::compose`] for a checked product.
    fn mul(self, h: &Permutation) -> Permutation {
        assert_eq!(self.degree(), h.degree(), "permutation degree mismatch");
        Permutation {
            images: h.images.iter().map(|&j| self.images[j]).collect(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn compose_examples() {
        let c = cyc(3, "(1 2 3)");
        let id = Permutation::identity(3);
        assert_eq!(c.compose(&id).unwrap(), c);
        let t = cyc(2, "(1 2)");
        assert!(t.compose(&t).unwrap().is_identity());
        // (1 2 3)^2 = (1 3 2)
        assert_eq!(c.compose(&c).unwrap(), cyc(3, "(1 3 2)"));
        assert_eq!(c.compose(&c).unwrap().one_based_images(), vec![3, 1, 2]);
    }

    #[test]
    fn compose_degree_mismatch() {
        let err = cyc(3, "(1 2)").compose(&Permutation::identity(4)).unwrap_err();
        assert!(matches!(err, Error::DegreeMismatch { .. }));
    }

    #[test]
    fn act_examples() {
        let c = cyc(3, "(1 2 3)");
        assert_eq!(c.act(&[1, 1, 0]), vec![0, 1, 1]);
        assert_eq!(cyc(2, "(1 2)").act(&[5, 7]), vec![7, 5]);
        assert_eq!(Permutation::identity(3).act(&[4, 5, 6]), vec![4, 5, 6]);
        assert!(c.try_act(&[1, 2]).is_err());
    }

    #[test]
    fn inverse_and_cycles() {
        let g = cyc(6, "(1 2 3)(5 6)");
        assert!((&g * &g.inverse()).is_identity());
        assert_eq!(g.cycles(), vec![vec![0, 1, 2], vec![3], vec![4, 5]]);
        assert_eq!(g.order(), 6);
        assert_eq!(g.to_string(), "(1 2 3)(5 6)");
        assert_eq!(Permutation::identity(2).to_string(), "()");
    }

    #[test]
    fn parse_errors() {
        assert!(Permutation::parse_cycles(3, "(1 2 4)").is_err());
        assert!(Permutation::parse_cycles(3, "(1 2").is_err());
        assert!(Permutation::parse_cycles(3, "1 2)").is_err());
        assert!(Permutation::parse_cycles(3, "(1 2)(2 3)").is_err());
        assert!(Permutation::parse_cycles(3, "(1 x)").is_err());
        assert!(Permutation::parse_cycles(3, "(0 1)").is_err());
        assert!(Permutation::parse_cycles(3, "((1 2))").is_err());
        assert_eq!(cyc(3, "(1,2)"), cyc(3, "(1 2)"));
        assert!(cyc(3, "()").is_identity());
        match Permutation::parse_cycles(3, "(1 9)") {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "column 4"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn one_based_validation() {
        assert!(Permutation::from_one_based(&[1, 1, 2]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
        assert!(Permutation::from_one_based(&[1, 4, 2]).is_err());
        assert_eq!(
            Permutation::from_one_based(&[2, 3, 1]).unwrap(),
            cyc(3, "(1 2 3)")
        );
    }
}
