//! The spherical-twist action on Mukai vectors: reflection in a spherical
//! class, the four-invariant form, and the skyscraper cohomology table.

use crate::error::Error;
use crate::lattice::{DivisorClass, IntersectionLattice};
use crate::mukai::{is_spherical, mukai_pairing, MukaiVector};
use crate::rat::{fmt_rat, rat, Rat};

/// The twist by O_C(t): the spherical class is (0, C, t+1).
#[derive(Debug, Clone)]
pub struct TwistParams {
    pub t: i64,
    pub spherical_class: MukaiVector,
}

impl TwistParams {
    /// Builds the (0, C, t+1) family; fails unless the class is spherical
    /// (i.e. C^2 = -2 in the lattice).
    pub fn new(
        lattice: &IntersectionLattice,
        curve_c: &DivisorClass,
        t: i64,
    ) -> Result<Self, Error> {
        let v = MukaiVector::new(rat(0), curve_c.clone(), rat(t + 1));
        Self::from_class(lattice, t, v)
    }

    /// General reflection vector; must satisfy <v, v> = -2.
    pub fn from_class(
        lattice: &IntersectionLattice,
        t: i64,
        spherical_class: MukaiVector,
    ) -> Result<Self, Error> {
        if !is_spherical(lattice, &spherical_class)? {
            let p = mukai_pairing(lattice, &spherical_class, &spherical_class)?;
            return Err(Error::NotSpherical {
                pairing: fmt_rat(&p),
            });
        }
        Ok(Self { t, spherical_class })
    }
}

/// Reflection `v -> v + <v_S, v> v_S`. For v_S = (0, C, t+1) this is the
/// twist formula v + (c - n(t+1))(0, C, t+1).
pub fn twist_mukai(
    lattice: &IntersectionLattice,
    v: &MukaiVector,
    tw: &TwistParams,
) -> Result<MukaiVector, Error> {
    let coeff = mukai_pairing(lattice, &tw.spherical_class, v)?;
    v.add(&tw.spherical_class.scale(&coeff))
}

/// The transformed invariants (n, c, d, s) -> (n', c', d', s') where
/// c = ch1.C and d = ch1.D:
/// n' = n, c' = -c + 2n(t+1), d' = d + c - n(t+1), s' = s + (c - n(t+1))(t+1).
pub fn twist_invariants(n: &Rat, c: &Rat, d: &Rat, s: &Rat, t: i64) -> (Rat, Rat, Rat, Rat) {
    let t1 = rat(t + 1);
    let coeff = c - n * &t1; // <v_S, v>
    let n_out = n.clone();
    let c_out = -c + rat(2) * n * &t1;
    let d_out = d + &coeff;
    let s_out = s + &coeff * &t1;
    (n_out, c_out, d_out, s_out)
}

/// Sheaf labels appearing in the skyscraper twist table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SheafLabel {
    SkyscraperPoint,
    LineBundleOnC(i64),
}

/// Cohomology sheaves of a twisted skyscraper, keyed by degree. Finitely many
/// entries; degrees not listed are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyTable {
    pub entries: Vec<(i64, SheafLabel)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistDirection {
    Forward,
    Inverse,
}

/// Cohomology of ST^{+-1}(O_p) under the twist by O_C(t). A point off the
/// curve is fixed; on the curve the image is a two-term complex of line
/// bundles on C.
pub fn skyscraper_twist(on_curve: bool, t: i64, direction: TwistDirection) -> CohomologyTable {
    if !on_curve {
        return CohomologyTable {
            entries: vec![(0, SheafLabel::SkyscraperPoint)],
        };
    }
    let entries = match direction {
        TwistDirection::Forward => vec![
            (-1, SheafLabel::LineBundleOnC(t - 1)),
            (0, SheafLabel::LineBundleOnC(t)),
        ],
        TwistDirection::Inverse => vec![
            (-1, SheafLabel::LineBundleOnC(t)),
            (0, SheafLabel::LineBundleOnC(t + 1)),
        ],
    };
    CohomologyTable { entries }
}

impl CohomologyTable {
    /// The alternating sum `sum (-1)^i v(H^i)` of Mukai vectors of the
    /// entries, computed in the given lattice with the given curve class.
    pub fn alternating_mukai_sum(
        &self,
        lattice: &IntersectionLattice,
        curve_c: &DivisorClass,
    ) -> Result<MukaiVector, Error> {
        let rank = lattice.rank();
        let mut acc = MukaiVector::new(rat(0), DivisorClass::zero(rank), rat(0));
        for (deg, label) in &self.entries {
            let v = match label {
                SheafLabel::SkyscraperPoint => {
                    MukaiVector::new(rat(0), DivisorClass::zero(rank), rat(1))
                }
                SheafLabel::LineBundleOnC(m) => {
                    MukaiVector::new(rat(0), curve_c.clone(), rat(m + 1))
                }
            };
            let sign = if deg.rem_euclid(2) == 0 { rat(1) } else { rat(-1) };
            acc = acc.add(&v.scale(&sign))?;
        }
        Ok(acc)
    }
}
