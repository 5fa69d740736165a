//! Numerical wall analysis for line bundles in the V-ray (B = 0): wall
//! values, the rank bound and its threshold, BG/HIT screening, and the
//! rank-one semistability screen.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::lattice::{enumerate_cone_coefficients, DivisorClass, IntersectionLattice};
use crate::mukai::{mukai_pairing, ChernCharacter, MukaiVector};
use crate::rat::{fmt_rat, rat, ratio, to_f64, Rat};
use crate::surface::SurfaceModel;

/// Outcome of the wall equation between a candidate and a line bundle class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WallOutcome {
    /// Phases agree at exactly one positive V.
    Wall(WallSolution),
    /// Phases never agree for positive V.
    NoWall,
    /// Phases agree identically in V.
    DegenerateAllV,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallSolution {
    pub v_value: Rat,
    pub candidate: MukaiVector,
}

/// Solves the phase-equality condition
/// `(-ch2_A + V r_A)(nu.c1_L) = (-ch2_L + V r_L)(nu.c1_A)` for V > 0.
/// Charges are taken at B = 0; ch2 is recovered from the Mukai degree.
pub fn wall_value(
    lattice: &IntersectionLattice,
    v_a: &MukaiVector,
    v_l: &MukaiVector,
    nu: &DivisorClass,
) -> Result<WallOutcome, Error> {
    let x = lattice.pair(nu, &v_l.c1)?; // nu . c1(L)
    let y = lattice.pair(nu, &v_a.c1)?; // nu . c1(A)
    let ch2_a = &v_a.s - &v_a.r;
    let ch2_l = &v_l.s - &v_l.r;
    // V (r_A x - r_L y) = ch2_A x - ch2_L y
    let coeff = &v_a.r * &x - &v_l.r * &y;
    let constant = ch2_a * x - ch2_l * y;
    if coeff.is_zero() {
        return Ok(if constant.is_zero() {
            WallOutcome::DegenerateAllV
        } else {
            WallOutcome::NoWall
        });
    }
    let v = constant / coeff;
    if v.is_positive() {
        Ok(WallOutcome::Wall(WallSolution {
            v_value: v,
            candidate: v_a.clone(),
        }))
    } else {
        Ok(WallOutcome::NoWall)
    }
}

/// The rank bound
/// `alpha.nu / (nu^2 (sqrt(T^2 + 2V/nu^2) + T))` with
/// `T = (alpha^2/2 - V)/(alpha.nu)`.
///
/// The radical is never evaluated in floating point for comparisons:
/// [`RankBoundResult::cmp_rational`] decides by sign-aware squaring.
#[derive(Debug, Clone)]
pub struct RankBoundResult {
    /// alpha . nu (> 0)
    n: Rat,
    /// nu^2 (> 0)
    nu_sq: Rat,
    /// alpha^2
    alpha_sq: Rat,
    /// V (> 0)
    v: Rat,
}

impl RankBoundResult {
    fn t(&self) -> Rat {
        (&self.alpha_sq * ratio(1, 2) - &self.v) / &self.n
    }

    /// Radicand T^2 + 2V/nu^2; strictly greater than T^2 since V > 0.
    fn radicand(&self) -> Rat {
        let t = self.t();
        &t * &t + rat(2) * &self.v / &self.nu_sq
    }

    /// Exact three-way comparison of the bound against a rational.
    pub fn cmp_rational(&self, r: &Rat) -> Ordering {
        // bound > 0 always, so r <= 0 is immediate.
        if !r.is_positive() {
            return Ordering::Greater;
        }
        // bound >= r  <=>  N - r nu^2 T >= r nu^2 sqrt(R)
        let t = self.t();
        let lhs = &self.n - r * &self.nu_sq * &t;
        if lhs.is_negative() {
            return Ordering::Less;
        }
        let rhs_sq = r * r * &self.nu_sq * &self.nu_sq * self.radicand();
        (&lhs * &lhs).cmp(&rhs_sq)
    }

    pub fn equals_rational(&self, r: &Rat) -> bool {
        self.cmp_rational(r) == Ordering::Equal
    }

    /// Float value, computed cancellation-free: when T >= 0 via
    /// N/(nu^2(sqrt(R)+T)), otherwise via the rationalized form
    /// N(sqrt(R)-T)/(2V).
    pub fn to_f64(&self) -> f64 {
        let t = to_f64(&self.t());
        let root = to_f64(&self.radicand()).sqrt();
        if t >= 0.0 {
            to_f64(&self.n) / (to_f64(&self.nu_sq) * (root + t))
        } else {
            to_f64(&self.n) * (root - t) / (2.0 * to_f64(&self.v))
        }
    }

    /// Exact rational value when the radicand is a perfect square (always
    /// the case for alpha proportional to nu), otherwise None.
    pub fn exact_value(&self) -> Option<Rat> {
        let root = crate::rat::rational_sqrt(&self.radicand())?;
        Some(&self.n / (&self.nu_sq * (root + self.t())))
    }

    pub fn inputs(&self) -> (&Rat, &Rat, &Rat, &Rat) {
        (&self.n, &self.nu_sq, &self.alpha_sq, &self.v)
    }
}

/// Evaluates the rank bound at (alpha, nu, V). Requires alpha.nu > 0,
/// nu^2 > 0, V > 0.
pub fn rank_bound(
    lattice: &IntersectionLattice,
    alpha: &DivisorClass,
    nu: &DivisorClass,
    v: &Rat,
) -> Result<RankBoundResult, Error> {
    let n = lattice.pair(alpha, nu)?;
    let nu_sq = lattice.pair(nu, nu)?;
    if !n.is_positive() || !nu_sq.is_positive() {
        return Err(Error::OutOfDomain {
            what: format!(
                "need alpha.nu > 0 and nu^2 > 0, got {} and {}",
                fmt_rat(&n),
                fmt_rat(&nu_sq)
            ),
        });
    }
    if !v.is_positive() {
        return Err(Error::OutOfDomain {
            what: format!("V must be positive, got {}", fmt_rat(v)),
        });
    }
    let alpha_sq = lattice.pair(alpha, alpha)?;
    Ok(RankBoundResult {
        n,
        nu_sq,
        alpha_sq,
        v: v.clone(),
    })
}

/// Supremum of {V > 0 : rank bound >= r}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RankThreshold {
    /// The bound stays >= r for all V > 0 (only for r = 1).
    Unbounded,
    /// The bound never reaches r; `supremum` is its V -> 0 limit
    /// (alpha.nu)^2/(alpha^2 nu^2), attained only in the limit.
    None { supremum: Rat },
    /// Exact rational wall: bound(v) = r, bound < r beyond it.
    Wall(Rat),
}

/// Computes the threshold exactly. Isolating the radical in
/// `bound(V) >= r` and squaring (the sign case where the rational side is
/// negative is automatically satisfied) reduces, for r >= 2, to
/// `V <= V* = 2((alpha.nu)^2/nu^2 - r alpha^2) / ((2r-1)^2 - 1)`.
pub fn rank_threshold(
    lattice: &IntersectionLattice,
    alpha: &DivisorClass,
    nu: &DivisorClass,
    r: i64,
) -> Result<RankThreshold, Error> {
    if r < 1 {
        return Err(Error::OutOfDomain {
            what: format!("rank must be >= 1, got {r}"),
        });
    }
    // Validate domain via rank_bound at a dummy V.
    let probe = rank_bound(lattice, alpha, nu, &rat(1))?;
    let (n, nu_sq, alpha_sq, _) = probe.inputs();
    let gap = n * n / nu_sq - rat(r) * alpha_sq;
    if r == 1 {
        // Hodge-index: (alpha.nu)^2 >= alpha^2 nu^2, so the bound is >= 1
        // everywhere whenever the lattice has hyperbolic signature.
        return Ok(if !gap.is_negative() {
            RankThreshold::Unbounded
        } else {
            RankThreshold::None {
                supremum: n * n / (alpha_sq * nu_sq),
            }
        });
    }
    let denom = rat((2 * r - 1) * (2 * r - 1) - 1);
    let v_star = rat(2) * gap / denom;
    if v_star.is_positive() {
        Ok(RankThreshold::Wall(v_star))
    } else {
        // alpha^2 > 0 here, so the V -> 0 supremum is finite.
        Ok(RankThreshold::None {
            supremum: n * n / (alpha_sq * nu_sq),
        })
    }
}

/// BG discriminant `<v, v> + 2`; nonnegative means BG-admissible.
pub fn bg_discriminant(lattice: &IntersectionLattice, v: &MukaiVector) -> Result<Rat, Error> {
    Ok(mukai_pairing(lattice, v, v)? + rat(2))
}

/// The BG/HIT chain `ch2 <= ch1^2/(2 ch0) <= (nu.ch1)^2/(2 ch0 nu^2)`,
/// both inequalities exact. Requires ch0 > 0.
pub fn hit_bound_check(
    lattice: &IntersectionLattice,
    ch: &ChernCharacter,
    nu: &DivisorClass,
) -> Result<bool, Error> {
    if !ch.ch0.is_positive() {
        return Err(Error::OutOfDomain {
            what: format!("ch0 must be positive, got {}", fmt_rat(&ch.ch0)),
        });
    }
    let ch1_sq = lattice.pair(&ch.ch1, &ch.ch1)?;
    let nu_ch1 = lattice.pair(nu, &ch.ch1)?;
    let nu_sq = lattice.pair(nu, nu)?;
    if !nu_sq.is_positive() {
        return Err(Error::OutOfDomain {
            what: format!("nu^2 must be positive, got {}", fmt_rat(&nu_sq)),
        });
    }
    let two_ch0 = rat(2) * &ch.ch0;
    let mid = &ch1_sq / &two_ch0;
    let upper = &nu_ch1 * &nu_ch1 / (&two_ch0 * nu_sq);
    Ok(ch.ch2 <= mid && mid <= upper)
}

/// One enumerated effective class, with the screen's bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScreenCandidate {
    pub class: DivisorClass,
    pub coefficients: Vec<u32>,
}

/// Enumerates effective classes C' (nonnegative generator combinations with
/// coefficient sum <= height_bound and C-coefficient <= 1), and keeps those
/// with C'.C <= 0 whose every non-C generator component C'' satisfies
/// 0 <= C''.C <= 2. Requires alpha.C = 0.
pub fn rank_one_screen(
    surface: &SurfaceModel,
    alpha: &DivisorClass,
    height_bound: u32,
) -> Result<Vec<ScreenCandidate>, Error> {
    let lattice = &surface.lattice;
    let c = &surface.curve_c;
    let alpha_c = lattice.pair(alpha, c)?;
    if !alpha_c.is_zero() {
        return Err(Error::HypothesisViolated {
            what: format!("alpha.C = {}, need 0", fmt_rat(&alpha_c)),
        });
    }
    let gens = &surface.effective_generators;
    let c_index: Vec<bool> = gens.iter().map(|g| g == c).collect();
    let gen_dot_c: Vec<Rat> = gens
        .iter()
        .map(|g| lattice.pair(g, c))
        .collect::<Result<_, _>>()?;

    let mut survivors = Vec::new();
    'combos: for coeffs in enumerate_cone_coefficients(gens.len(), height_bound) {
        let mut class = DivisorClass::zero(lattice.rank());
        for (i, &k) in coeffs.iter().enumerate() {
            if k == 0 {
                continue;
            }
            if c_index[i] {
                if k > 1 {
                    continue 'combos; // a0 <= 1
                }
            } else if gen_dot_c[i].is_negative() || gen_dot_c[i] > rat(2) {
                continue 'combos; // component constraint 0 <= C''.C <= 2
            }
            class = class.add(&gens[i].scale(&rat(k as i64)))?;
        }
        if lattice.pair(&class, c)?.is_positive() {
            continue; // C'.C <= 0
        }
        survivors.push(ScreenCandidate {
            class,
            coefficients: coeffs,
        });
    }
    Ok(survivors)
}

/// V-independent slope gap `rho(I_n (x) L(-C)) - rho(L) = -(1+n)/(nu.alpha)`
/// under the running hypotheses alpha.C = 0, alpha.nu > 0.
pub fn slope_compare_twist(
    lattice: &IntersectionLattice,
    curve_c: &DivisorClass,
    alpha: &DivisorClass,
    nu: &DivisorClass,
    n_points: u32,
) -> Result<Rat, Error> {
    let alpha_c = lattice.pair(alpha, curve_c)?;
    if !alpha_c.is_zero() {
        return Err(Error::HypothesisViolated {
            what: format!("alpha.C = {}, need 0", fmt_rat(&alpha_c)),
        });
    }
    let nu_alpha = lattice.pair(nu, alpha)?;
    if !nu_alpha.is_positive() {
        return Err(Error::OutOfDomain {
            what: format!("alpha.nu must be positive, got {}", fmt_rat(&nu_alpha)),
        });
    }
    Ok(rat(-(1 + n_points as i64)) / nu_alpha)
}

/// Verdict of the line-bundle semistability screen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScreenVerdict {
    SemistableAllV,
    Inconclusive { failing_clause: Clause },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clause {
    /// (a): some effective-cone generator other than C meets C in <= 2.
    GeneratorMeetsCAtMostTwo,
    /// (b): rank-one survivors other than C remain, or the slope gap fails.
    RankOneSurvivors,
}

impl Clause {
    pub fn name(&self) -> &'static str {
        match self {
            Clause::GeneratorMeetsCAtMostTwo => "a",
            Clause::RankOneSurvivors => "b",
        }
    }
}

/// How the higher-rank clause (c) was discharged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HigherRankStatus {
    /// The rank bound never reaches 2: no higher-rank window exists.
    ClosedByRankBound { supremum: Rat },
    /// A higher-rank window exists numerically up to the recorded threshold;
    /// its exclusion cites the B-deformation argument, which lives in a
    /// stability-manifold slice outside the V-ray model and is not
    /// recomputed here.
    CitedBFieldDeformation { threshold: Rat },
}

/// Supporting data for a screen verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScreenCertificate {
    /// (generator index, generator.C) for every generator.
    pub generator_pairings: Vec<(usize, Rat)>,
    /// Survivors of the rank-one screen.
    pub survivors: Vec<ScreenCandidate>,
    /// Slope gap -(1+n)/(nu.alpha) at n = 0.
    pub slope_gap: Rat,
    /// Clause (c) status.
    pub higher_rank: HigherRankStatus,
    /// Modeling assumption: irreducible curves are represented by
    /// effective-cone generators, which lattice data cannot refine.
    pub irreducibility_assumption: &'static str,
}

pub const IRREDUCIBILITY_NOTE: &str =
    "irreducible curves modeled by effective-cone generators (not decidable from lattice data)";

/// The end-to-end semistability screen for a line bundle class alpha with
/// alpha.C = 0 and alpha.nu > 0.
pub fn semistable_screen(
    surface: &SurfaceModel,
    alpha: &DivisorClass,
    height_bound: u32,
) -> Result<(ScreenVerdict, ScreenCertificate), Error> {
    let lattice = &surface.lattice;
    let c = &surface.curve_c;
    let slope_gap = slope_compare_twist(lattice, c, alpha, &surface.nu, 0)?;
    let survivors = rank_one_screen(surface, alpha, height_bound)?;

    let mut generator_pairings = Vec::new();
    let mut clause_a_ok = true;
    for (i, g) in surface.effective_generators.iter().enumerate() {
        let p = lattice.pair(g, c)?;
        if g != c && p <= rat(2) {
            clause_a_ok = false;
        }
        generator_pairings.push((i, p));
    }

    let clause_b_ok =
        survivors.iter().all(|s| &s.class == c) && slope_gap.is_negative();

    let higher_rank = match rank_threshold(lattice, alpha, &surface.nu, 2)? {
        RankThreshold::None { supremum } => HigherRankStatus::ClosedByRankBound { supremum },
        RankThreshold::Wall(v) => HigherRankStatus::CitedBFieldDeformation { threshold: v },
        RankThreshold::Unbounded => unreachable!("r = 2 threshold is never unbounded"),
    };

    let certificate = ScreenCertificate {
        generator_pairings,
        survivors,
        slope_gap,
        higher_rank,
        irreducibility_assumption: IRREDUCIBILITY_NOTE,
    };

    let verdict = if !clause_a_ok {
        ScreenVerdict::Inconclusive {
            failing_clause: Clause::GeneratorMeetsCAtMostTwo,
        }
    } else if !clause_b_ok {
        ScreenVerdict::Inconclusive {
            failing_clause: Clause::RankOneSurvivors,
        }
    } else {
        ScreenVerdict::SemistableAllV
    };
    Ok((verdict, certificate))
}
