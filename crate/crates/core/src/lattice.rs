//! The Neron-Severi lattice as an integer Gram matrix, with exact pairings,
//! orthogonal decomposition against span(C, D), and bounded cone enumeration.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Error;
use crate::rat::{rat, Rat};

/// An integral lattice given by a named basis and a symmetric integer Gram
/// matrix of intersection numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionLattice {
    basis_names: Vec<String>,
    gram: Vec<Vec<BigInt>>,
}

/// A divisor class as an exact-rational coordinate vector in a lattice basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    pub coords: Vec<Rat>,
}

impl IntersectionLattice {
    /// Builds a lattice after checking the Gram matrix is square, symmetric,
    /// and matches the number of basis names.
    pub fn new(basis_names: Vec<String>, gram: Vec<Vec<i64>>) -> Result<Self, Error> {
        let gram: Vec<Vec<BigInt>> = gram
            .into_iter()
            .map(|row| row.into_iter().map(BigInt::from).collect())
            .collect();
        Self::from_bigint(basis_names, gram)
    }

    pub fn from_bigint(basis_names: Vec<String>, gram: Vec<Vec<BigInt>>) -> Result<Self, Error> {
        let n = basis_names.len();
        if gram.len() != n || gram.iter().any(|row| row.len() != n) {
            return Err(Error::Dimension {
                what: format!("gram matrix must be {n}x{n} to match basis"),
            });
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Parse {
                        what: format!("gram matrix not symmetric at ({i}, {j})"),
                    });
                }
            }
        }
        Ok(Self { basis_names, gram })
    }

    pub fn rank(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn gram(&self) -> &[Vec<BigInt>] {
        &self.gram
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis_names.iter().position(|b| b == name)
    }

    /// The i-th basis vector as a class.
    pub fn basis_class(&self, i: usize) -> DivisorClass {
        let mut coords = vec![rat(0); self.rank()];
        coords[i] = rat(1);
        DivisorClass { coords }
    }

    fn check_member(&self, a: &DivisorClass) -> Result<(), Error> {
        if a.coords.len() != self.rank() {
            return Err(Error::Dimension {
                what: format!(
                    "class has {} coordinates, lattice rank is {}",
                    a.coords.len(),
                    self.rank()
                ),
            });
        }
        Ok(())
    }

    /// Intersection pairing `a . b = a^T gram b`, exact and symmetric.
    pub fn pair(&self, a: &DivisorClass, b: &DivisorClass) -> Result<Rat, Error> {
        self.check_member(a)?;
        self.check_member(b)?;
        let mut total = rat(0);
        for (i, ai) in a.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coords.iter().enumerate() {
                if bj.is_zero() || self.gram[i][j].is_zero() {
                    continue;
                }
                total += ai * bj * Rat::from_integer(self.gram[i][j].clone());
            }
        }
        Ok(total)
    }

    /// Self-intersection `a . a`.
    pub fn norm(&self, a: &DivisorClass) -> Result<Rat, Error> {
        self.pair(a, a)
    }

    /// Splits `a` into a part in span(C, D) and a part orthogonal to both,
    /// using the Gram inverse on the (C, D) block.
    pub fn decompose_cd(
        &self,
        a: &DivisorClass,
        c: &DivisorClass,
        d: &DivisorClass,
    ) -> Result<(DivisorClass, DivisorClass), Error> {
        let (x, y) = self.cd_coefficients(a, c, d)?;
        let span = c.scale(&x).add(&d.scale(&y))?;
        let orth = a.sub(&span)?;
        Ok((span, orth))
    }

    /// The (x, y) with `a - xC - yD` orthogonal to C and D.
    pub fn cd_coefficients(
        &self,
        a: &DivisorClass,
        c: &DivisorClass,
        d: &DivisorClass,
    ) -> Result<(Rat, Rat), Error> {
        let cc = self.pair(c, c)?;
        let cd = self.pair(c, d)?;
        let dd = self.pair(d, d)?;
        let det = &cc * &dd - &cd * &cd;
        if det.is_zero() {
            return Err(Error::DegenerateSublattice);
        }
        let ac = self.pair(a, c)?;
        let ad = self.pair(a, d)?;
        // Solve [cc cd; cd dd] [x y]^T = [ac ad]^T.
        let x = (&ac * &dd - &ad * &cd) / det.clone();
        let y = (&ad * &cc - &ac * &cd) / det;
        Ok((x, y))
    }
}

impl DivisorClass {
    pub fn new(coords: Vec<Rat>) -> Self {
        Self { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self {
            coords: coords.iter().map(|&c| rat(c)).collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        Self {
            coords: vec![rat(0); rank],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Self {
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Self, f: impl Fn(&Rat, &Rat) -> Rat) -> Result<Self, Error> {
        if self.coords.len() != other.coords.len() {
            return Err(Error::Dimension {
                what: format!(
                    "classes of length {} and {}",
                    self.coords.len(),
                    other.coords.len()
                ),
            });
        }
        Ok(Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    /// True when `self = k * other` for some rational k (including both zero).
    pub fn is_proportional_to(&self, other: &Self) -> bool {
        if self.coords.len() != other.coords.len() {
            return false;
        }
        // Find the first nonzero coordinate of `other` to fix the ratio.
        let Some(i) = other.coords.iter().position(|c| !c.is_zero()) else {
            return self.is_zero();
        };
        let k = &self.coords[i] / &other.coords[i];
        self.coords
            .iter()
            .zip(&other.coords)
            .all(|(a, b)| a == &(b * &k))
    }
}

/// All nonzero nonnegative integer combinations of `generators` with
/// coefficient sum at most `height_bound`.
///
/// Order is the depth-first order over nondecreasing generator-index words:
/// for generators {C1, C2} and bound 2 the output is
/// C1, 2C1, C1+C2, C2, 2C2. Deterministic across runs.
pub fn enumerate_cone_classes(
    generators: &[DivisorClass],
    height_bound: u32,
) -> Vec<DivisorClass> {
    enumerate_cone_coefficients(generators.len(), height_bound)
        .into_iter()
        .map(|coeffs| combine(generators, &coeffs))
        .collect()
}

/// Coefficient vectors underlying [`enumerate_cone_classes`], in the same
/// canonical order. Useful when the caller needs per-generator multiplicities.
pub fn enumerate_cone_coefficients(n_generators: usize, height_bound: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n_generators];
    fn descend(
        start: usize,
        remaining: u32,
        current: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        for i in start..current.len() {
            if remaining == 0 {
                break;
            }
            current[i] += 1;
            out.push(current.clone());
            descend(i, remaining - 1, current, out);
            current[i] -= 1;
        }
    }
    descend(0, height_bound, &mut current, &mut out);
    out
}

fn combine(generators: &[DivisorClass], coeffs: &[u32]) -> DivisorClass {
    let rank = generators.first().map_or(0, |g| g.coords.len());
    let mut acc = DivisorClass::zero(rank);
    for (g, &k) in generators.iter().zip(coeffs) {
        if k > 0 {
            acc = acc.add(&g.scale(&rat(k as i64))).expect("equal ranks");
        }
    }
    acc
}
