//! Central charges Z_{V,nu,B}, phases, slopes, kernel detection, and the
//! limit-phase family.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::lattice::{DivisorClass, IntersectionLattice};
use crate::mukai::{twisted_chern, ChernCharacter};
use crate::rat::{fmt_rat, ratio, to_f64, Rat};

/// Parameters (V, nu, B) of the central charge
/// `Z(E) = -ch2^B(E) + V ch0^B(E) + i nu.ch1^B(E)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeParams {
    v: Rat,
    pub nu: DivisorClass,
    pub b: DivisorClass,
}

impl ChargeParams {
    /// Requires V > 0.
    pub fn new(v: Rat, nu: DivisorClass, b: DivisorClass) -> Result<Self, Error> {
        if !v.is_positive() {
            return Err(Error::OutOfDomain {
                what: format!("V must be positive, got {}", fmt_rat(&v)),
            });
        }
        Ok(Self { v, nu, b })
    }

    /// B = 0 convenience form.
    pub fn without_b(v: Rat, nu: DivisorClass) -> Result<Self, Error> {
        let rank = nu.coords.len();
        Self::new(v, nu, DivisorClass::zero(rank))
    }

    pub fn v(&self) -> &Rat {
        &self.v
    }
}

/// A complex number with exact rational real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexExact {
    pub re: Rat,
    pub im: Rat,
}

impl ComplexExact {
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            re: &self.re + &other.re,
            im: &self.im + &other.im,
        }
    }
}

/// Whether a phase value is exact (lies on an axis where arg is rational in
/// units of pi) or a float approximation of a transcendental value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    TranscendentalApprox,
}

/// A phase value in (0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct Phase {
    pub value: f64,
    pub exactness: Exactness,
}

impl Phase {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            exactness: Exactness::Exact,
        }
    }
}

/// Extension of the rationals by +infinity, used for slopes (the phase-1
/// convention) and limit-phase arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtendedRat {
    Finite(Rat),
    PosInfinity,
}

/// Evaluates the central charge exactly.
pub fn central_charge(
    lattice: &IntersectionLattice,
    params: &ChargeParams,
    ch: &ChernCharacter,
) -> Result<ComplexExact, Error> {
    let twisted = twisted_chern(lattice, ch, &params.b)?;
    let re = -&twisted.ch2 + params.v() * &twisted.ch0;
    let im = lattice.pair(&params.nu, &twisted.ch1)?;
    Ok(ComplexExact { re, im })
}

/// Phase `(1/pi) arg Z` with arg in (0, pi]. A zero charge takes the
/// caller-supplied `kernel_rule`; no default is assumed.
pub fn phase(
    lattice: &IntersectionLattice,
    params: &ChargeParams,
    ch: &ChernCharacter,
    kernel_rule: Option<Phase>,
) -> Result<Phase, Error> {
    let z = central_charge(lattice, params, ch)?;
    phase_of(&z, kernel_rule)
}

/// Phase of an already-computed charge.
pub fn phase_of(z: &ComplexExact, kernel_rule: Option<Phase>) -> Result<Phase, Error> {
    if z.is_zero() {
        return kernel_rule.ok_or(Error::KernelPhaseUndefined);
    }
    if z.im.is_negative() || (z.im.is_zero() && z.re.is_positive()) {
        return Err(Error::OutsideRegion {
            re: fmt_rat(&z.re),
            im: fmt_rat(&z.im),
        });
    }
    if z.im.is_zero() {
        // negative real axis
        return Ok(Phase::exact(1.0));
    }
    if z.re.is_zero() {
        return Ok(Phase::exact(0.5));
    }
    let re = to_f64(&z.re);
    let im = to_f64(&z.im);
    Ok(Phase {
        value: im.atan2(re) / std::f64::consts::PI,
        exactness: Exactness::TranscendentalApprox,
    })
}

/// Slope `rho = -cot(pi phi) = -Re/Im`, exact; +infinity on the negative real
/// axis (phase 1).
pub fn slope(
    lattice: &IntersectionLattice,
    params: &ChargeParams,
    ch: &ChernCharacter,
) -> Result<ExtendedRat, Error> {
    let z = central_charge(lattice, params, ch)?;
    slope_of(&z)
}

pub fn slope_of(z: &ComplexExact) -> Result<ExtendedRat, Error> {
    if z.is_zero() {
        return Err(Error::KernelSlopeUndefined);
    }
    if z.im.is_zero() {
        if z.re.is_positive() {
            return Err(Error::OutsideRegion {
                re: fmt_rat(&z.re),
                im: fmt_rat(&z.im),
            });
        }
        return Ok(ExtendedRat::PosInfinity);
    }
    Ok(ExtendedRat::Finite(-&z.re / &z.im))
}

/// True iff the central charge of `ch` is exactly zero.
pub fn kernel_contains(
    lattice: &IntersectionLattice,
    params: &ChargeParams,
    ch: &ChernCharacter,
) -> Result<bool, Error> {
    Ok(central_charge(lattice, params, ch)?.is_zero())
}

/// The limit-phase family: `(1/pi) arccot(k p)` with `k = 2/(omega.C)` and
/// arccot valued in (0, pi). Exact only at p = 0 (value 1/2).
pub fn limit_phase(p_ratio: &Rat, omega_dot_c: &Rat) -> Result<Phase, Error> {
    if !omega_dot_c.is_positive() {
        return Err(Error::OutOfDomain {
            what: format!("omega.C must be positive, got {}", fmt_rat(omega_dot_c)),
        });
    }
    let arg = ratio(2, 1) / omega_dot_c * p_ratio;
    if arg.is_zero() {
        return Ok(Phase::exact(0.5));
    }
    // arccot(x) on (0, pi) is atan2(1, x).
    let x = arg.to_f64().unwrap_or_else(|| to_f64(&arg));
    Ok(Phase {
        value: 1f64.atan2(x) / std::f64::consts::PI,
        exactness: Exactness::TranscendentalApprox,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::DivisorClass;
    use crate::rat::rat;

    fn minimal() -> IntersectionLattice {
        IntersectionLattice::new(
            vec!["C".into(), "D".into()],
            vec![vec![-2, 1], vec![1, 0]],
        )
        .unwrap()
    }

    fn nu() -> DivisorClass {
        DivisorClass::from_ints(&[1, 2]) // C + 2D, nu.C = 0
    }

    #[test]
    fn kernel_vector_has_zero_charge() {
        let l = minimal();
        let p = ChargeParams::without_b(ratio(7, 2), nu()).unwrap();
        // ch(O_C(-1)) = (0, C, 0)
        let ch = ChernCharacter::from_ints(0, &[1, 0], 0);
        let z = central_charge(&l, &p, &ch).unwrap();
        assert!(z.is_zero());
        assert!(kernel_contains(&l, &p, &ch).unwrap());
        // multiples stay in the kernel
        for n in 1..=4 {
            let ch = ChernCharacter::from_ints(0, &[n, 0], 0);
            assert!(kernel_contains(&l, &p, &ch).unwrap());
        }
    }

    #[test]
    fn perturbed_nu_gives_pure_imaginary_charge() {
        let l = minimal();
        // omega = C + 3D is ample-ish here: omega.C = 1 > 0.
        let omega = DivisorClass::from_ints(&[1, 3]);
        let eps = ratio(1, 5);
        let nu_eps = nu().add(&omega.scale(&eps)).unwrap();
        let p = ChargeParams::without_b(rat(1), nu_eps).unwrap();
        let ch = ChernCharacter::from_ints(0, &[1, 0], 0);
        let z = central_charge(&l, &p, &ch).unwrap();
        let omega_dot_c = l.pair(&omega, &DivisorClass::from_ints(&[1, 0])).unwrap();
        assert_eq!(z.re, rat(0));
        assert_eq!(z.im, eps * omega_dot_c);
    }

    #[test]
    fn skyscraper_charge() {
        let l = minimal();
        let p = ChargeParams::without_b(rat(5), nu()).unwrap();
        let ch = ChernCharacter::from_ints(0, &[0, 0], 1);
        let z = central_charge(&l, &p, &ch).unwrap();
        assert_eq!(z.re, rat(-1));
        assert_eq!(z.im, rat(0));
        assert_eq!(phase_of(&z, None).unwrap(), Phase::exact(1.0));
        assert_eq!(slope_of(&z).unwrap(), ExtendedRat::PosInfinity);
    }

    #[test]
    fn phase_cases() {
        let z = ComplexExact { re: rat(0), im: rat(2) };
        assert_eq!(phase_of(&z, None).unwrap(), Phase::exact(0.5));

        let zero = ComplexExact { re: rat(0), im: rat(0) };
        assert_eq!(phase_of(&zero, Some(Phase::exact(0.5))).unwrap(), Phase::exact(0.5));
        assert!(matches!(phase_of(&zero, None), Err(Error::KernelPhaseUndefined)));

        let bad = ComplexExact { re: rat(1), im: rat(0) };
        assert!(matches!(phase_of(&bad, None), Err(Error::OutsideRegion { .. })));
        let lower = ComplexExact { re: rat(1), im: rat(-1) };
        assert!(matches!(phase_of(&lower, None), Err(Error::OutsideRegion { .. })));

        let generic = ComplexExact { re: rat(-1), im: rat(1) };
        let ph = phase_of(&generic, None).unwrap();
        assert_eq!(ph.exactness, Exactness::TranscendentalApprox);
        assert!((ph.value - 0.75).abs() < 1e-15);
    }

    #[test]
    fn slope_cases() {
        let z = ComplexExact { re: rat(-3), im: rat(6) };
        assert_eq!(slope_of(&z).unwrap(), ExtendedRat::Finite(ratio(1, 2)));
        let z = ComplexExact { re: rat(0), im: rat(5) };
        assert_eq!(slope_of(&z).unwrap(), ExtendedRat::Finite(rat(0)));
        let zero = ComplexExact { re: rat(0), im: rat(0) };
        assert!(matches!(slope_of(&zero), Err(Error::KernelSlopeUndefined)));
        let bad = ComplexExact { re: rat(2), im: rat(0) };
        assert!(matches!(slope_of(&bad), Err(Error::OutsideRegion { .. })));
    }

    #[test]
    fn limit_phase_family() {
        // p = 0 -> 1/2 exactly
        let ph = limit_phase(&rat(0), &rat(3)).unwrap();
        assert_eq!(ph, Phase::exact(0.5));
        // k p = 1 -> 1/4 (arccot(1) = pi/4)
        let ph = limit_phase(&ratio(3, 2), &rat(3)).unwrap();
        assert!((ph.value - 0.25).abs() < 1e-15);
        assert_eq!(ph.exactness, Exactness::TranscendentalApprox);
        // value decreases toward 0 as p grows
        let mut prev = 1.0;
        for p in [1, 10, 100, 1000, 10000] {
            let ph = limit_phase(&rat(p), &rat(1)).unwrap();
            assert!(ph.value > 0.0 && ph.value < prev);
            prev = ph.value;
        }
        assert!(prev < 1e-4);
        // omega.C must be positive
        assert!(limit_phase(&rat(1), &rat(0)).is_err());
    }

    #[test]
    fn charge_params_require_positive_v() {
        assert!(ChargeParams::without_b(rat(0), nu()).is_err());
        assert!(ChargeParams::without_b(rat(-1), nu()).is_err());
    }
}
