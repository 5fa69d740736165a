//! Command-line front end. Every library operation is reachable through a
//! subcommand; output is a key/value table or JSON, with all rationals
//! serialized exactly.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::charge::{
    self, ChargeParams, Exactness, ExtendedRat, Phase,
};
use crate::error::Error;
use crate::lattice::DivisorClass;
use crate::mukai::{self, ChernCharacter, MukaiVector};
use crate::rat::{fmt_rat, parse_rat, Rat};
use crate::surface::{self, SurfaceModel};
use crate::transport::{self, Gl2Factor};
use crate::twist::{self, SheafLabel, TwistDirection, TwistParams};
use crate::walls::{self, HigherRankStatus, RankThreshold, ScreenVerdict, WallOutcome};

#[derive(Parser)]
#[command(name = "k3stab", about = "Exact stability computations on K3 lattices")]
pub struct Cli {
    /// Output format (env: K3STAB_FORMAT)
    #[arg(long, global = true, env = "K3STAB_FORMAT", default_value = "table")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Surface model validation and example builders
    Surface {
        #[command(subcommand)]
        action: SurfaceAction,
    },
    /// Spherical-twist action on Mukai vectors
    Twist(TwistCmd),
    /// Central charges, phases, slopes, kernels
    Charge {
        #[command(subcommand)]
        action: ChargeAction,
    },
    /// Charge-transport identities
    Transport {
        #[command(subcommand)]
        action: TransportAction,
    },
    /// Wall values, rank bounds, BG/HIT checks
    Walls {
        #[command(subcommand)]
        action: WallsAction,
    },
    /// Line-bundle semistability screen
    Screen(ScreenArgs),
    /// Hom/Ext dimensions on the (-2)-curve
    Ext {
        #[command(subcommand)]
        action: ExtAction,
    },
}

#[derive(Subcommand)]
enum SurfaceAction {
    /// Check every model invariant and list violations
    Validate {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long)]
        allow_invalid: bool,
    },
    /// Build the rank-2 example surface
    Example {
        #[arg(long)]
        q: i64,
        #[arg(long)]
        y: i64,
        /// Write the surface file here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct TwistCmd {
    #[command(subcommand)]
    action: Option<TwistAction>,
    // Default action: twist a Mukai vector (same as `twist mukai`).
    #[arg(long)]
    surface: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    mukai: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    t: Option<i64>,
}

#[derive(Subcommand)]
enum TwistAction {
    /// Reflect a Mukai vector in (0, C, t+1)
    Mukai {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        mukai: String,
        #[arg(long, allow_negative_numbers = true)]
        t: i64,
    },
    /// The four-invariant form (n, c, d, s) -> (n', c', d', s')
    Invariants {
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, allow_hyphen_values = true)]
        d: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_negative_numbers = true)]
        t: i64,
    },
    /// Cohomology table of a twisted skyscraper
    Skyscraper {
        #[arg(long)]
        on_curve: bool,
        #[arg(long, allow_negative_numbers = true)]
        t: i64,
        #[arg(long, default_value = "forward")]
        direction: Direction,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Forward,
    Inverse,
}

#[derive(Args)]
struct ChargeCommon {
    #[arg(long)]
    surface: PathBuf,
    /// Chern character "ch0,(coords),ch2"
    #[arg(long, allow_hyphen_values = true)]
    ch: String,
    #[arg(long = "V", allow_hyphen_values = true)]
    v: String,
    /// B-field coordinates (default 0)
    #[arg(long = "B", allow_hyphen_values = true)]
    b: Option<String>,
    /// Polarization coordinates (default: the surface's nu)
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
}

#[derive(Subcommand)]
enum ChargeAction {
    /// Evaluate Z = -ch2^B + V ch0^B + i nu.ch1^B exactly
    Eval(ChargeCommon),
    /// Phase (1/pi) arg Z in (0, 1]
    Phase {
        #[command(flatten)]
        common: ChargeCommon,
        /// Phase to assign when Z = 0 (e.g. "1/2")
        #[arg(long, allow_hyphen_values = true)]
        kernel_rule: Option<String>,
    },
    /// Slope -Re/Im
    Slope(ChargeCommon),
    /// Kernel membership (Z exactly zero)
    Kernel(ChargeCommon),
    /// The limit-phase family (1/pi) arccot(2 p / omega.C)
    LimitPhase {
        #[arg(long, allow_hyphen_values = true)]
        p_ratio: String,
        #[arg(long, allow_hyphen_values = true)]
        omega_dot_c: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseKind {
    One,
    Two,
    Three,
}

#[derive(Subcommand)]
enum TransportAction {
    /// Solve case one: t = -1, B = 0
    Case1 {
        #[arg(long, allow_hyphen_values = true)]
        d_omega_bar: String,
    },
    /// Solve case two: D_omega_bar = 0, arbitrary t
    Case2 {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        t: i64,
    },
    /// Solve case three: B-field u-parameter flip
    Case3 {
        #[arg(long, allow_hyphen_values = true)]
        u_bar: String,
    },
    /// Verify the transport identity for a solved case on the spanning set
    Verify {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long)]
        case: CaseKind,
        #[arg(long = "V", allow_hyphen_values = true)]
        v: String,
        #[arg(long, allow_hyphen_values = true)]
        d_omega_bar: Option<String>,
        #[arg(long, allow_negative_numbers = true)]
        t: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        u_bar: Option<String>,
    },
    /// The non-nef image parameter b = -a/(a+1)
    NonNef {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
}

#[derive(Subcommand)]
enum WallsAction {
    /// Solve the phase-equality wall equation for V
    Value {
        #[arg(long)]
        surface: PathBuf,
        /// Candidate Mukai vector "r,(coords),s"
        #[arg(long, allow_hyphen_values = true)]
        va: String,
        /// Line-bundle Mukai vector
        #[arg(long, allow_hyphen_values = true)]
        vl: String,
    },
    /// Rank bound at (alpha, nu, V)
    RankBound {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long = "V", allow_hyphen_values = true)]
        v: String,
    },
    /// sup{V : rank bound >= r}, exactly
    Threshold {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        r: i64,
    },
    /// BG discriminant <v, v> + 2
    Bg {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        mukai: String,
    },
    /// The BG/HIT inequality chain
    Hit {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        ch: String,
    },
}

#[derive(Args)]
struct ScreenArgs {
    #[arg(long)]
    surface: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long)]
    height: u32,
}

#[derive(Subcommand)]
enum ExtAction {
    /// (hom, ext1, ext2) between O_C(a) and O_C(b)
    OnCurve {
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
    },
}

// --- parsing helpers ---------------------------------------------------

fn parse_coords(s: &str) -> Result<DivisorClass, Error> {
    let coords = s
        .split(',')
        .map(|c| parse_rat(c.trim()))
        .collect::<Result<Vec<Rat>, _>>()?;
    Ok(DivisorClass::new(coords))
}

/// Parses "r,(c1,...,cn),s".
fn parse_triple(s: &str) -> Result<(Rat, DivisorClass, Rat), Error> {
    let err = || Error::Parse {
        what: format!("expected `r,(coords),s`, got `{s}`"),
    };
    let open = s.find('(').ok_or_else(err)?;
    let close = s.rfind(')').ok_or_else(err)?;
    if close < open {
        return Err(err());
    }
    let head = s[..open].trim().trim_end_matches(',').trim();
    let tail = s[close + 1..].trim().trim_start_matches(',').trim();
    let r = parse_rat(head)?;
    let coords = parse_coords(&s[open + 1..close])?;
    let sval = parse_rat(tail)?;
    Ok((r, coords, sval))
}

fn parse_mukai(s: &str) -> Result<MukaiVector, Error> {
    let (r, c1, sv) = parse_triple(s)?;
    Ok(MukaiVector::new(r, c1, sv))
}

fn parse_chern(s: &str) -> Result<ChernCharacter, Error> {
    let (ch0, ch1, ch2) = parse_triple(s)?;
    Ok(ChernCharacter::new(ch0, ch1, ch2))
}

fn fmt_mukai(v: &MukaiVector) -> String {
    let coords = v
        .c1
        .coords
        .iter()
        .map(fmt_rat)
        .collect::<Vec<_>>()
        .join(",");
    format!("{},({}),{}", fmt_rat(&v.r), coords, fmt_rat(&v.s))
}

fn fmt_coords(d: &DivisorClass) -> String {
    d.coords.iter().map(fmt_rat).collect::<Vec<_>>().join(",")
}

fn load_model(path: &Path, allow_invalid: bool) -> Result<SurfaceModel, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        what: format!("cannot read {}: {e}", path.display()),
    })?;
    surface::load_surface(&text, allow_invalid)
}

fn charge_params(model: &SurfaceModel, common: &ChargeCommon) -> Result<ChargeParams, Error> {
    let v = parse_rat(&common.v)?;
    let nu = match &common.nu {
        Some(s) => parse_coords(s)?,
        None => model.nu.clone(),
    };
    let b = match &common.b {
        Some(s) => parse_coords(s)?,
        None => DivisorClass::zero(model.lattice.rank()),
    };
    ChargeParams::new(v, nu, b)
}

fn phase_json(ph: &Phase) -> Value {
    json!({
        "value": ph.value,
        "exactness": match ph.exactness {
            Exactness::Exact => "exact",
            Exactness::TranscendentalApprox => "transcendental-approx",
        },
    })
}

fn gl2_json(g: &Gl2Factor) -> Value {
    let m = g.matrix();
    json!({
        "matrix": [
            [fmt_rat(&m[0][0]), fmt_rat(&m[0][1])],
            [fmt_rat(&m[1][0]), fmt_rat(&m[1][1])],
        ],
        "phase_lift": if g.phase_lift_is_identity() {
            "identity on (0,1]"
        } else {
            "unique lift with f((0,1]) in (0,1]"
        },
    })
}

fn sheaf_label(label: &SheafLabel) -> String {
    match label {
        SheafLabel::SkyscraperPoint => "O_p".into(),
        SheafLabel::LineBundleOnC(m) => format!("O_C({m})"),
    }
}

// --- command execution --------------------------------------------------

fn execute(command: &Command) -> Result<Value, Error> {
    match command {
        Command::Surface { action } => run_surface(action),
        Command::Twist(cmd) => run_twist(cmd),
        Command::Charge { action } => run_charge(action),
        Command::Transport { action } => run_transport(action),
        Command::Walls { action } => run_walls(action),
        Command::Screen(args) => run_screen(args),
        Command::Ext { action } => run_ext(action),
    }
}

fn run_surface(action: &SurfaceAction) -> Result<Value, Error> {
    match action {
        SurfaceAction::Validate {
            surface: path,
            allow_invalid,
        } => {
            let model = load_model(path, true)?;
            let violations = surface::validate_surface(&model);
            if !violations.is_empty() && !allow_invalid {
                return Err(Error::OutOfDomain {
                    what: format!(
                        "surface fails validation: {}",
                        violations
                            .iter()
                            .map(|v| format!("{}: {}", v.field, v.message))
                            .collect::<Vec<_>>()
                            .join("; ")
                    ),
                });
            }
            Ok(json!({
                "name": model.name,
                "ok": violations.is_empty(),
                "violations": violations
                    .iter()
                    .map(|v| json!({ "field": v.field, "message": v.message }))
                    .collect::<Vec<_>>(),
            }))
        }
        SurfaceAction::Example { q, y, out } => {
            let model = surface::build_example_rank2(*q, *y)?;
            let text = surface::save_surface(&model);
            if let Some(path) = out {
                std::fs::write(path, &text).map_err(|e| Error::Parse {
                    what: format!("cannot write {}: {e}", path.display()),
                })?;
            }
            Ok(json!({
                "name": model.name,
                "nu": fmt_coords(&model.nu),
                "file": text,
            }))
        }
    }
}

fn run_twist(cmd: &TwistCmd) -> Result<Value, Error> {
    match &cmd.action {
        Some(action) => run_twist_action(action),
        None => {
            let (surface, mukai, t) = match (&cmd.surface, &cmd.mukai, cmd.t) {
                (Some(s), Some(m), Some(t)) => (s.clone(), m.clone(), t),
                _ => {
                    return Err(Error::Parse {
                        what: "twist requires --surface, --mukai and --t (or a subcommand)"
                            .into(),
                    })
                }
            };
            run_twist_action(&TwistAction::Mukai { surface, mukai, t })
        }
    }
}

fn run_twist_action(action: &TwistAction) -> Result<Value, Error> {
    match action {
        TwistAction::Mukai { surface, mukai, t } => {
            let model = load_model(surface, false)?;
            let v = parse_mukai(mukai)?;
            let tw = TwistParams::new(&model.lattice, &model.curve_c, *t)?;
            let out = twist::twist_mukai(&model.lattice, &v, &tw)?;
            Ok(json!({ "mukai": fmt_mukai(&out) }))
        }
        TwistAction::Invariants { n, c, d, s, t } => {
            let (n, c, d, s) = (parse_rat(n)?, parse_rat(c)?, parse_rat(d)?, parse_rat(s)?);
            let (n2, c2, d2, s2) = twist::twist_invariants(&n, &c, &d, &s, *t);
            Ok(json!({
                "n": fmt_rat(&n2),
                "c": fmt_rat(&c2),
                "d": fmt_rat(&d2),
                "s": fmt_rat(&s2),
            }))
        }
        TwistAction::Skyscraper {
            on_curve,
            t,
            direction,
        } => {
            let dir = match direction {
                Direction::Forward => TwistDirection::Forward,
                Direction::Inverse => TwistDirection::Inverse,
            };
            let table = twist::skyscraper_twist(*on_curve, *t, dir);
            Ok(json!({
                "entries": table
                    .entries
                    .iter()
                    .map(|(deg, label)| json!({
                        "degree": deg,
                        "sheaf": sheaf_label(label),
                    }))
                    .collect::<Vec<_>>(),
            }))
        }
    }
}

fn run_charge(action: &ChargeAction) -> Result<Value, Error> {
    match action {
        ChargeAction::Eval(common) => {
            let model = load_model(&common.surface, false)?;
            let params = charge_params(&model, common)?;
            let ch = parse_chern(&common.ch)?;
            let z = charge::central_charge(&model.lattice, &params, &ch)?;
            Ok(json!({ "re": fmt_rat(&z.re), "im": fmt_rat(&z.im) }))
        }
        ChargeAction::Phase {
            common,
            kernel_rule,
        } => {
            let model = load_model(&common.surface, false)?;
            let params = charge_params(&model, common)?;
            let ch = parse_chern(&common.ch)?;
            let rule = kernel_rule
                .as_ref()
                .map(|s| -> Result<Phase, Error> {
                    Ok(Phase::exact(crate::rat::to_f64(&parse_rat(s)?)))
                })
                .transpose()?;
            let ph = charge::phase(&model.lattice, &params, &ch, rule)?;
            Ok(phase_json(&ph))
        }
        ChargeAction::Slope(common) => {
            let model = load_model(&common.surface, false)?;
            let params = charge_params(&model, common)?;
            let ch = parse_chern(&common.ch)?;
            let rho = charge::slope(&model.lattice, &params, &ch)?;
            Ok(json!({
                "slope": match rho {
                    ExtendedRat::Finite(r) => fmt_rat(&r),
                    ExtendedRat::PosInfinity => "inf".into(),
                },
            }))
        }
        ChargeAction::Kernel(common) => {
            let model = load_model(&common.surface, false)?;
            let params = charge_params(&model, common)?;
            let ch = parse_chern(&common.ch)?;
            let inside = charge::kernel_contains(&model.lattice, &params, &ch)?;
            Ok(json!({ "in_kernel": inside }))
        }
        ChargeAction::LimitPhase {
            p_ratio,
            omega_dot_c,
        } => {
            let ph = charge::limit_phase(&parse_rat(p_ratio)?, &parse_rat(omega_dot_c)?)?;
            Ok(phase_json(&ph))
        }
    }
}

fn d_class_of(model: &SurfaceModel) -> Result<DivisorClass, Error> {
    match &model.d_class {
        Some(d) => Ok(d.clone()),
        None => surface::build_d_class(model),
    }
}

fn run_transport(action: &TransportAction) -> Result<Value, Error> {
    match action {
        TransportAction::Case1 { d_omega_bar } => {
            let (d_omega, g) = transport::solve_case_one(&parse_rat(d_omega_bar)?)?;
            Ok(json!({ "d_omega": fmt_rat(&d_omega), "g": gl2_json(&g) }))
        }
        TransportAction::Case2 { surface, t } => {
            let model = load_model(surface, false)?;
            let (b, g) = transport::solve_case_two(*t, &model.curve_c);
            Ok(json!({ "B": fmt_coords(&b), "g": gl2_json(&g) }))
        }
        TransportAction::Case3 { u_bar } => {
            let (u, g) = transport::solve_case_three(&parse_rat(u_bar)?);
            Ok(json!({ "u": fmt_rat(&u), "g": gl2_json(&g) }))
        }
        TransportAction::Verify {
            surface,
            case,
            v,
            d_omega_bar,
            t,
            u_bar,
        } => {
            let model = load_model(surface, false)?;
            let c = model.curve_c.clone();
            let d = d_class_of(&model)?;
            let v = parse_rat(v)?;
            let e = crate::mukai::CURVE_E;
            let omega_of = |d_omega: &Rat| -> Result<DivisorClass, Error> {
                c.add(&d.scale(&(crate::rat::rat(e) + d_omega)))
            };
            let nu = omega_of(&crate::rat::rat(0))?;
            let (params, params_bar, g, t_used) = match case {
                CaseKind::One => {
                    let d_obar = parse_rat(d_omega_bar.as_deref().ok_or_else(|| Error::Parse {
                        what: "case one requires --d-omega-bar".into(),
                    })?)?;
                    let (d_omega, g) = transport::solve_case_one(&d_obar)?;
                    (
                        ChargeParams::without_b(v.clone(), omega_of(&d_omega)?)?,
                        ChargeParams::without_b(v, omega_of(&d_obar)?)?,
                        g,
                        -1,
                    )
                }
                CaseKind::Two => {
                    let t = t.ok_or_else(|| Error::Parse {
                        what: "case two requires --t".into(),
                    })?;
                    let (b, g) = transport::solve_case_two(t, &c);
                    (
                        ChargeParams::new(v.clone(), nu.clone(), b)?,
                        ChargeParams::without_b(v, nu.clone())?,
                        g,
                        t,
                    )
                }
                CaseKind::Three => {
                    let u_bar = parse_rat(u_bar.as_deref().ok_or_else(|| Error::Parse {
                        what: "case three requires --u-bar".into(),
                    })?)?;
                    let (u, g) = transport::solve_case_three(&u_bar);
                    (
                        ChargeParams::new(v.clone(), nu.clone(), c.scale(&u))?,
                        ChargeParams::new(v, nu.clone(), c.scale(&u_bar))?,
                        g,
                        -1,
                    )
                }
            };
            let ok =
                transport::verify_transport(&model.lattice, &c, &params, &params_bar, &g, t_used)?;
            Ok(json!({ "verified": ok }))
        }
        TransportAction::NonNef { a } => {
            let b = transport::non_nef_image(&parse_rat(a)?)?;
            Ok(json!({ "b": fmt_rat(&b) }))
        }
    }
}

fn run_walls(action: &WallsAction) -> Result<Value, Error> {
    match action {
        WallsAction::Value { surface, va, vl } => {
            let model = load_model(surface, false)?;
            let v_a = parse_mukai(va)?;
            let v_l = parse_mukai(vl)?;
            let outcome = walls::wall_value(&model.lattice, &v_a, &v_l, &model.nu)?;
            Ok(match outcome {
                WallOutcome::Wall(w) => json!({
                    "kind": "proper",
                    "V": fmt_rat(&w.v_value),
                    "candidate": fmt_mukai(&w.candidate),
                }),
                WallOutcome::NoWall => json!({ "kind": "no-wall" }),
                WallOutcome::DegenerateAllV => json!({ "kind": "degenerate-all-V" }),
            })
        }
        WallsAction::RankBound { surface, alpha, v } => {
            let model = load_model(surface, false)?;
            let alpha = parse_coords(alpha)?;
            let bound =
                walls::rank_bound(&model.lattice, &alpha, &model.nu, &parse_rat(v)?)?;
            Ok(match bound.exact_value() {
                Some(exact) => json!({ "bound": fmt_rat(&exact), "exact": true }),
                None => json!({ "bound": format!("{:.12}", bound.to_f64()), "exact": false }),
            })
        }
        WallsAction::Threshold { surface, alpha, r } => {
            let model = load_model(surface, false)?;
            let alpha = parse_coords(alpha)?;
            let threshold = walls::rank_threshold(&model.lattice, &alpha, &model.nu, *r)?;
            Ok(match threshold {
                RankThreshold::Unbounded => json!({ "kind": "unbounded" }),
                RankThreshold::None { supremum } => json!({
                    "kind": "none",
                    "supremum": fmt_rat(&supremum),
                }),
                RankThreshold::Wall(v) => json!({ "kind": "wall", "V": fmt_rat(&v) }),
            })
        }
        WallsAction::Bg { surface, mukai } => {
            let model = load_model(surface, false)?;
            let v = parse_mukai(mukai)?;
            let disc = walls::bg_discriminant(&model.lattice, &v)?;
            Ok(json!({
                "discriminant": fmt_rat(&disc),
                "admissible": disc >= crate::rat::rat(0),
            }))
        }
        WallsAction::Hit { surface, ch } => {
            let model = load_model(surface, false)?;
            let ch = parse_chern(ch)?;
            let ok = walls::hit_bound_check(&model.lattice, &ch, &model.nu)?;
            Ok(json!({ "holds": ok }))
        }
    }
}

fn run_screen(args: &ScreenArgs) -> Result<Value, Error> {
    let model = load_model(&args.surface, false)?;
    let alpha = parse_coords(&args.alpha)?;
    let (verdict, cert) = walls::semistable_screen(&model, &alpha, args.height)?;
    let verdict_json = match &verdict {
        ScreenVerdict::SemistableAllV => json!("SemistableAllV"),
        ScreenVerdict::Inconclusive { failing_clause } => json!({
            "Inconclusive": { "failing_clause": failing_clause.name() }
        }),
    };
    let higher_rank = match &cert.higher_rank {
        HigherRankStatus::ClosedByRankBound { supremum } => json!({
            "status": "closed-by-rank-bound",
            "supremum": fmt_rat(supremum),
        }),
        HigherRankStatus::CitedBFieldDeformation { threshold } => json!({
            "status": "cited-B-field-deformation (external argument, not recomputed)",
            "threshold": fmt_rat(threshold),
        }),
    };
    Ok(json!({
        "verdict": verdict_json,
        "certificate": {
            "survivors": cert
                .survivors
                .iter()
                .map(|s| fmt_coords(&s.class))
                .collect::<Vec<_>>(),
            "slope_gap": fmt_rat(&cert.slope_gap),
            "generator_pairings": cert
                .generator_pairings
                .iter()
                .map(|(i, p)| json!({ "generator": i, "dot_C": fmt_rat(p) }))
                .collect::<Vec<_>>(),
            "higher_rank": higher_rank,
            "assumption": cert.irreducibility_assumption,
        },
    }))
}

fn run_ext(action: &ExtAction) -> Result<Value, Error> {
    match action {
        ExtAction::OnCurve { a, b } => {
            let (hom, ext1, ext2) = mukai::hom_ext_on_c(*a, *b);
            Ok(json!({ "hom": hom, "ext1": ext1, "ext2": ext2 }))
        }
    }
}

// --- rendering ----------------------------------------------------------

fn render_table(value: &Value, prefix: &str, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                render_table(v, &key, out);
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str(&format!("{prefix}: []\n"));
            }
            for (i, v) in items.iter().enumerate() {
                render_table(v, &format!("{prefix}[{i}]"), out);
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
        other => out.push_str(&format!("{prefix}: {other}\n")),
    }
}

/// Runs the CLI. Returns the process exit code: 0 success, 1 domain error.
/// Usage errors exit with code 2 via clap.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 0 for --help/--version, 2 for usage errors.
            e.exit();
        }
    };
    match execute(&cli.command) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{report}"),
                Format::Table => {
                    let mut out = String::new();
                    render_table(&report, "", &mut out);
                    print!("{out}");
                }
            }
            0
        }
        Err(err) => {
            let record = json!({
                "error": { "code": err.code(), "message": err.to_string() }
            });
            eprintln!("{record}");
            1
        }
    }
}
