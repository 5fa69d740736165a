//! Mukai vectors and pairings on a K3 surface, B-field twisted Chern
//! characters, and hom/ext dimensions between line bundles on the (-2)-curve.


use crate::error::Error;
use crate::lattice::{DivisorClass, IntersectionLattice};
use crate::rat::{rat, ratio, Rat};

/// `e = -C^2`. Validated against the lattice wherever a (-2)-curve enters;
/// kept symbolic so the failure mode is explicit rather than a silent 2.
pub const CURVE_E: i64 = 2;

/// Mukai vector (r, c1, s) with r the rank and s the Mukai degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MukaiVector {
    pub r: Rat,
    pub c1: DivisorClass,
    pub s: Rat,
}

/// Chern character (ch0, ch1, ch2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernCharacter {
    pub ch0: Rat,
    pub ch1: DivisorClass,
    pub ch2: Rat,
}

impl MukaiVector {
    pub fn new(r: Rat, c1: DivisorClass, s: Rat) -> Self {
        Self { r, c1, s }
    }

    pub fn from_ints(r: i64, c1: &[i64], s: i64) -> Self {
        Self::new(rat(r), DivisorClass::from_ints(c1), rat(s))
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        Ok(Self {
            r: &self.r + &other.r,
            c1: self.c1.add(&other.c1)?,
            s: &self.s + &other.s,
        })
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Self {
            r: &self.r * k,
            c1: self.c1.scale(k),
            s: &self.s * k,
        }
    }
}

impl ChernCharacter {
    pub fn new(ch0: Rat, ch1: DivisorClass, ch2: Rat) -> Self {
        Self { ch0, ch1, ch2 }
    }

    pub fn from_ints(ch0: i64, ch1: &[i64], ch2: i64) -> Self {
        Self::new(rat(ch0), DivisorClass::from_ints(ch1), rat(ch2))
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        Ok(Self {
            ch0: &self.ch0 + &other.ch0,
            ch1: self.ch1.add(&other.ch1)?,
            ch2: &self.ch2 + &other.ch2,
        })
    }
}

/// Mukai vector from a Chern character: v = ch . sqrt(td) = (ch0, ch1, ch2 + ch0).
pub fn mukai_from_chern(ch: &ChernCharacter) -> MukaiVector {
    MukaiVector {
        r: ch.ch0.clone(),
        c1: ch.ch1.clone(),
        s: &ch.ch2 + &ch.ch0,
    }
}

/// Inverse of [`mukai_from_chern`].
pub fn chern_from_mukai(v: &MukaiVector) -> ChernCharacter {
    ChernCharacter {
        ch0: v.r.clone(),
        ch1: v.c1.clone(),
        ch2: &v.s - &v.r,
    }
}

/// Mukai pairing `<(r,c,s), (r',c',s')> = c.c' - r s' - s r'`.
pub fn mukai_pairing(
    lattice: &IntersectionLattice,
    v: &MukaiVector,
    w: &MukaiVector,
) -> Result<Rat, Error> {
    let cc = lattice.pair(&v.c1, &w.c1)?;
    Ok(cc - &v.r * &w.s - &v.s * &w.r)
}

/// Euler pairing `chi(E, F) = -<v(E), v(F)>` (Riemann-Roch on a K3).
pub fn euler_chi(
    lattice: &IntersectionLattice,
    v: &MukaiVector,
    w: &MukaiVector,
) -> Result<Rat, Error> {
    Ok(-mukai_pairing(lattice, v, w)?)
}

/// True iff `<v, v> = -2`.
pub fn is_spherical(lattice: &IntersectionLattice, v: &MukaiVector) -> Result<bool, Error> {
    Ok(mukai_pairing(lattice, v, v)? == rat(-2))
}

/// B-field twist `ch . e^{-B}`:
/// (ch0, ch1 - ch0 B, ch2 - ch1.B + ch0 B^2/2).
pub fn twisted_chern(
    lattice: &IntersectionLattice,
    ch: &ChernCharacter,
    b: &DivisorClass,
) -> Result<ChernCharacter, Error> {
    let ch1_b = lattice.pair(&ch.ch1, b)?;
    let b_sq = lattice.pair(b, b)?;
    Ok(ChernCharacter {
        ch0: ch.ch0.clone(),
        ch1: ch.ch1.sub(&b.scale(&ch.ch0))?,
        ch2: &ch.ch2 - ch1_b + &ch.ch0 * b_sq * ratio(1, 2),
    })
}

/// (hom, ext1, ext2) between the degree-a and degree-b line bundles on the
/// (-2)-curve, which is a smooth rational curve. Closed form:
/// hom = max(b-a+1, 0), ext2 = max(a-b+1, 0) (Serre duality on the K3),
/// ext1 fixed by chi = 2.
pub fn hom_ext_on_c(a: i64, b: i64) -> (u64, u64, u64) {
    let hom = (b - a + 1).max(0) as u64;
    let ext2 = (a - b + 1).max(0) as u64;
    let ext1 = hom + ext2 - 2; // hom + ext2 >= 2 always
    (hom, ext1, ext2)
}
