//! Property suite: algebraic invariants checked over randomized inputs.

use num_traits::Zero;
use proptest::prelude::*;

use k3stab::charge::{self, ChargeParams};
use k3stab::lattice::{enumerate_cone_coefficients, DivisorClass, IntersectionLattice};
use k3stab::mukai::{self, ChernCharacter, MukaiVector};
use k3stab::rat::{fmt_rat, parse_rat, rat, ratio, Rat};
use k3stab::surface::{build_example_rank2, load_surface, save_surface, validate_surface};
use k3stab::twist::{self, TwistParams};
use k3stab::walls;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| ratio(p, q))
}

fn positive_rat() -> impl Strategy<Value = Rat> {
    (1i64..=60, 1i64..=12).prop_map(|(p, q)| ratio(p, q))
}

fn divisor2() -> impl Strategy<Value = DivisorClass> {
    (small_rat(), small_rat()).prop_map(|(a, b)| DivisorClass::new(vec![a, b]))
}

fn mukai2() -> impl Strategy<Value = MukaiVector> {
    (small_rat(), divisor2(), small_rat()).prop_map(|(r, c1, s)| MukaiVector::new(r, c1, s))
}

fn base_lattice() -> IntersectionLattice {
    IntersectionLattice::new(
        vec!["C".into(), "D".into()],
        vec![vec![-2, 1], vec![1, 0]],
    )
    .unwrap()
}

proptest! {
    #[test]
    fn rational_text_round_trips(p in -1000i64..=1000, q in 1i64..=500) {
        let r = ratio(p, q);
        prop_assert_eq!(parse_rat(&fmt_rat(&r)).unwrap(), r);
    }

    #[test]
    fn pairing_is_symmetric_and_bilinear(
        a in divisor2(), b in divisor2(), c in divisor2(), k in small_rat()
    ) {
        let l = base_lattice();
        prop_assert_eq!(l.pair(&a, &b).unwrap(), l.pair(&b, &a).unwrap());
        let lhs = l.pair(&a.scale(&k).add(&b).unwrap(), &c).unwrap();
        let rhs = k * l.pair(&a, &c).unwrap() + l.pair(&b, &c).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cd_decomposition_reconstructs(a in divisor2()) {
        let l = base_lattice();
        let c = l.basis_class(0);
        let d = l.basis_class(1);
        let (x, y) = l.cd_coefficients(&a, &c, &d).unwrap();
        let rebuilt = c.scale(&x).add(&d.scale(&y)).unwrap();
        prop_assert_eq!(rebuilt, a);
    }

    #[test]
    fn mukai_chern_round_trip(v in mukai2()) {
        prop_assert_eq!(mukai::mukai_from_chern(&mukai::chern_from_mukai(&v)), v);
    }

    #[test]
    fn mukai_pairing_symmetric_and_chi(v in mukai2(), w in mukai2()) {
        let l = base_lattice();
        let vw = mukai::mukai_pairing(&l, &v, &w).unwrap();
        prop_assert_eq!(vw.clone(), mukai::mukai_pairing(&l, &w, &v).unwrap());
        prop_assert_eq!(mukai::euler_chi(&l, &v, &w).unwrap(), -vw);
    }

    #[test]
    fn twisted_chern_inverts(v in mukai2(), b in divisor2()) {
        let l = base_lattice();
        let ch = mukai::chern_from_mukai(&v);
        let tw = mukai::twisted_chern(&l, &ch, &b).unwrap();
        let back = mukai::twisted_chern(&l, &tw, &b.scale(&rat(-1))).unwrap();
        prop_assert_eq!(back.ch0, ch.ch0);
        prop_assert_eq!(back.ch1, ch.ch1);
        prop_assert_eq!(back.ch2, ch.ch2);
    }

    #[test]
    fn central_charge_is_additive(
        v in mukai2(), w in mukai2(), vol in positive_rat(), b in divisor2()
    ) {
        let l = base_lattice();
        let nu = l.basis_class(0).add(&l.basis_class(1).scale(&rat(2))).unwrap();
        let params = ChargeParams::new(vol, nu, b).unwrap();
        let chv = mukai::chern_from_mukai(&v);
        let chw = mukai::chern_from_mukai(&w);
        let zs = charge::central_charge(&l, &params, &chv.add(&chw).unwrap()).unwrap();
        let z1 = charge::central_charge(&l, &params, &chv).unwrap();
        let z2 = charge::central_charge(&l, &params, &chw).unwrap();
        prop_assert_eq!(zs, z1.add(&z2));
    }

    #[test]
    fn twist_is_involutive_isometry(v in mukai2(), w in mukai2(), t in -4i64..=4) {
        let l = base_lattice();
        let tw = TwistParams::new(&l, &l.basis_class(0), t).unwrap();
        let v1 = twist::twist_mukai(&l, &v, &tw).unwrap();
        prop_assert_eq!(twist::twist_mukai(&l, &v1, &tw).unwrap(), v.clone());
        let w1 = twist::twist_mukai(&l, &w, &tw).unwrap();
        prop_assert_eq!(
            mukai::mukai_pairing(&l, &v1, &w1).unwrap(),
            mukai::mukai_pairing(&l, &v, &w).unwrap()
        );
    }

    #[test]
    fn bg_discriminant_is_twist_invariant(v in mukai2(), t in -4i64..=4) {
        let l = base_lattice();
        let tw = TwistParams::new(&l, &l.basis_class(0), t).unwrap();
        let v1 = twist::twist_mukai(&l, &v, &tw).unwrap();
        prop_assert_eq!(
            walls::bg_discriminant(&l, &v1).unwrap(),
            walls::bg_discriminant(&l, &v).unwrap()
        );
    }

    #[test]
    fn phase_lies_in_half_open_interval(v in mukai2(), vol in positive_rat()) {
        let l = base_lattice();
        let nu = l.basis_class(0).add(&l.basis_class(1).scale(&rat(2))).unwrap();
        let params = ChargeParams::without_b(vol, nu).unwrap();
        let ch = mukai::chern_from_mukai(&v);
        let z = charge::central_charge(&l, &params, &ch).unwrap();
        if let Ok(ph) = charge::phase(&l, &params, &ch, None) {
            prop_assert!(ph.value > 0.0 && ph.value <= 1.0);
            if let Ok(charge::ExtendedRat::Finite(slope)) = charge::slope_of(&z) {
                // slope = -Re/Im on the open upper half-plane.
                prop_assert_eq!(slope * z.im.clone(), -z.re.clone());
            }
        }
    }

    #[test]
    fn rank2_family_always_validates(q in 3i64..=30, half_y in 1i64..=15) {
        let model = build_example_rank2(q, 2 * half_y).unwrap();
        prop_assert!(validate_surface(&model).is_empty());
        let l = &model.lattice;
        prop_assert!(l.pair(&model.nu, &model.curve_c).unwrap().is_zero());
        prop_assert_eq!(
            l.pair(&model.nu, &l.basis_class(1)).unwrap(),
            rat(2 * half_y) * (ratio(q * q, 2) - rat(2))
        );
        prop_assert_eq!(
            l.norm(&model.nu).unwrap(),
            rat(4 * half_y * half_y) * (ratio(q * q, 2) - rat(2))
        );
    }

    #[test]
    fn surface_files_round_trip(q in 3i64..=20, half_y in 1i64..=10) {
        let model = build_example_rank2(q, 2 * half_y).unwrap();
        let text = save_surface(&model);
        let back = load_surface(&text, false).unwrap();
        prop_assert_eq!(back.name, model.name);
        prop_assert_eq!(back.nu, model.nu);
        prop_assert_eq!(back.curve_c, model.curve_c);
        prop_assert_eq!(back.lattice.gram(), model.lattice.gram());
    }

    #[test]
    fn cone_enumeration_size(n in 1usize..=4, h in 0u32..=6) {
        // Nonzero lattice points of the coefficient simplex: C(n+h, n) - 1.
        let expected: u64 = {
            let mut binom = 1u64;
            for i in 1..=n as u64 {
                binom = binom * (h as u64 + i) / i;
            }
            binom - 1
        };
        prop_assert_eq!(enumerate_cone_coefficients(n, h).len() as u64, expected);
    }

    #[test]
    fn wall_value_scales_with_candidate(v in mukai2(), k in 2i64..=5) {
        // Scaling the candidate by a positive constant keeps the wall.
        let model = build_example_rank2(4, 2).unwrap();
        let v_l = MukaiVector::new(rat(1), DivisorClass::from_ints(&[0, 1]), rat(1));
        let w1 = walls::wall_value(&model.lattice, &v, &v_l, &model.nu).unwrap();
        let w2 = walls::wall_value(&model.lattice, &v.scale(&rat(k)), &v_l, &model.nu).unwrap();
        match (w1, w2) {
            (walls::WallOutcome::Wall(a), walls::WallOutcome::Wall(b)) =>
                prop_assert_eq!(a.v_value, b.v_value),
            (a, b) => prop_assert_eq!(a, b),
        }
    }

    #[test]
    fn screen_is_stable_under_height_growth(extra in 0u32..=3) {
        let model = build_example_rank2(4, 2).unwrap();
        let alpha = model.nu.scale(&rat(2));
        let (v1, c1) = walls::semistable_screen(&model, &alpha, 6).unwrap();
        let (v2, c2) = walls::semistable_screen(&model, &alpha, 6 + extra).unwrap();
        prop_assert_eq!(v1, v2);
        prop_assert_eq!(c1.survivors.len(), c2.survivors.len());
        prop_assert_eq!(c1.slope_gap, c2.slope_gap);
    }
}

#[test]
fn chern_character_values_on_twisted_ideal_sheaves() {
    // I_n(-C): ch = (1, -C, C^2/2 - n) = (1, -C, -1 - n), so s = ch2 + ch0 = -n
    // and chi = ch2 + 2 ch0 = 1 - n.
    let l = base_lattice();
    let point = MukaiVector::new(rat(0), DivisorClass::zero(2), rat(1));
    for n in 0i64..=5 {
        let ch = ChernCharacter::new(rat(1), DivisorClass::from_ints(&[-1, 0]), rat(-1 - n));
        let v = mukai::mukai_from_chern(&ch);
        assert_eq!(v.s, -rat(n));
        assert_eq!(mukai::euler_chi(&l, &v, &point).unwrap(), rat(1));
    }
}
