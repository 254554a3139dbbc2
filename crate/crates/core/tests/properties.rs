use std::collections::BTreeSet;

use proptest::prelude::*;

use unavoidable::certificates::figures::fig1;
use unavoidable::certificates::{falsify, verify_certificate, Certificate, Color, Grid};
use unavoidable::deformation::compression::{add_row_moves, row_compression_targets};
use unavoidable::deformation::obligations::{merge_obligations, CoverageObligation};
use unavoidable::deformation::schedule::{verify_schedule, MovementSchedule};
use unavoidable::geometry::{ExactPoint, Square};
use unavoidable::numerics::{trig, Exact, Interval, Verdict};
use unavoidable::packing::{trivial_packing, validate_packing};

fn nested(a: f64, b: f64, t: (f64, f64, f64)) -> (Interval, Interval, f64) {
    let (lo, hi) = (a.min(b), a.max(b));
    let c = lo + (hi - lo) * t.0.min(t.1);
    let d = lo + (hi - lo) * t.0.max(t.1);
    (Interval::new(lo, hi), Interval::new(c, d), c + (d - c) * t.2)
}

fn within(inner: Interval, outer: Interval) -> bool {
    outer.lo() <= inner.lo() && inner.hi() <= outer.hi()
}

fn unit3() -> impl Strategy<Value = (f64, f64, f64)> {
    (0.0..=1.0f64, 0.0..=1.0f64, 0.0..=1.0f64)
}

fn figure1_row2() -> MovementSchedule {
    let base = fig1().unwrap().certificates.remove(0);
    let mut c = row_compression_targets(&base, 2).unwrap();
    add_row_moves(&mut c.schedule, 2, Some(&Exact::from_ratio(1, 10)), &Exact::one()).unwrap();
    c.schedule
}

fn figure1_obligations() -> Vec<CoverageObligation> {
    verify_schedule(&figure1_row2()).unwrap().obligations
}

fn figure1() -> Certificate {
    fig1().unwrap().certificates.remove(0)
}

fn partition(groups: &[unavoidable::deformation::obligations::ObligationGroup]) -> BTreeSet<Vec<String>> {
    groups
        .iter()
        .map(|g| {
            let mut v: Vec<String> = g.classes.iter().map(|c| format!("{}:{}", c.color, c.base)).collect();
            v.sort();
            v
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn arithmetic_is_inclusion_isotone(a in -50.0..50.0f64, b in -50.0..50.0f64, c in 0.25..20.0f64, d in 0.25..20.0f64,
                                       s in unit3(), t in unit3()) {
        let (y1, x1, p1) = nested(a, b, s);
        let (y2, x2, p2) = nested(c, d, t);
        prop_assert!(within(x1 + x2, y1 + y2));
        prop_assert!(within(x1 - x2, y1 - y2));
        prop_assert!(within(x1 * x2, y1 * y2));
        prop_assert!(within(x1 / x2, y1 / y2));
        prop_assert!(within(x1.sqr(), y1.sqr()));
        prop_assert!(within(x2.sqrt().unwrap(), y2.sqrt().unwrap()));
        prop_assert!((x1 + x2).contains(p1 + p2));
        prop_assert!((x1 * x2).contains(p1 * p2));
        prop_assert!((x1 / x2).contains(p1 / p2));
        prop_assert!(x2.sqrt().unwrap().contains(p2.sqrt()));
        prop_assert!(x1.checked_div(&Interval::new(-1.0, 1.0)).is_err());
    }

    #[test]
    fn trig_is_inclusion_isotone(a in -1.5..1.5f64, b in -1.5..1.5f64, s in unit3()) {
        let (y, x, p) = nested(a, b, s);
        let pt = Interval::point(p);
        prop_assert!(within(trig::sin(x).unwrap(), trig::sin(y).unwrap()));
        prop_assert!(within(trig::cos(x).unwrap(), trig::cos(y).unwrap()));
        prop_assert!(within(trig::sin(pt).unwrap(), trig::sin(x).unwrap()));
        prop_assert!(within(trig::cos(pt).unwrap(), trig::cos(x).unwrap()));
        let s2c2 = trig::sin(x).unwrap().sqr() + trig::cos(x).unwrap().sqr();
        prop_assert!(s2c2.contains(1.0));
    }

    #[test]
    fn exact_arithmetic_is_a_field(p in -40i64..40, q in 1i64..40, r in -40i64..40, k in 1i64..6) {
        let x = &Exact::from_ratio(p, q) + &(Exact::from_ratio(r, q + 1) * Exact::sqrt_int(2));
        let y = Exact::from_ratio(k, 3) + Exact::sqrt_int(2);
        prop_assert_eq!(&(&(&x + &y) - &y), &x);
        prop_assert_eq!(&(&(&x * &y) * &(Exact::one() / y.clone())), &x);
        prop_assert!(x.enclosure().contains(x.to_f64()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn merge_ignores_obligation_order(seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let runs = figure1_obligations();
        let reference = merge_obligations(&runs).unwrap();
        let mut shuffled = runs.clone();
        shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let groups = merge_obligations(&shuffled).unwrap();
        prop_assert_eq!(partition(&groups), partition(&reference));
        let mut seen = BTreeSet::new();
        for g in &groups {
            for c in &g.classes {
                prop_assert!(seen.insert(c.clone()), "class {:?} in two groups", c);
            }
            for o in runs.iter().filter(|o| g.classes.contains(&o.class)) {
                prop_assert!(o.path.iter().all(|p| g.contains(p)));
            }
        }
        prop_assert_eq!(seen.len(), runs.iter().map(|o| o.class.clone()).collect::<BTreeSet<_>>().len());
    }

    #[test]
    fn quarter_turn_keeps_packings_valid(m in 2usize..7, missing in 0usize..3, turns in 1usize..4) {
        let n = m * m - missing.min(m * m - 1);
        let mut p = trivial_packing(n, m).unwrap();
        for _ in 0..turns {
            p = p.quarter_turn();
        }
        prop_assert_eq!(validate_packing(&p).verdict, Verdict::True);
        prop_assert_eq!(p.squares.len(), n);
    }

    #[test]
    fn injected_overlap_is_refuted(m in 2usize..7, pick in any::<prop::sample::Index>(),
                                   dx in -0.9..0.9f64, dy in -0.9..0.9f64) {
        let mut p = trivial_packing(m * m - 1, m).unwrap();
        let k = pick.index(p.squares.len());
        let c = p.squares[k].center.clone();
        let x = (c.x.mid() + dx).clamp(0.5, m as f64 - 0.5);
        let y = (c.y.mid() + dy).clamp(0.5, m as f64 - 0.5);
        p.squares.push(Square::axis_aligned(x, y, 1.0));
        prop_assert_eq!(validate_packing(&p).verdict, Verdict::False);
    }

    #[test]
    fn falsifier_witness_refutes_verification(pick in any::<prop::sample::Index>(), dx in -3i64..=3, dy in -3i64..=3, drop in any::<bool>()) {
        let mut cert = figure1();
        let k = pick.index(cert.config.points.len());
        let id = cert.config.points[k].id.clone();
        if drop {
            cert.config = cert.config.without_point(&id);
        } else {
            let p = &mut cert.config.points[k];
            p.pos = ExactPoint::new(&p.pos.x + &Exact::from_ratio(dx, 10), &p.pos.y + &Exact::from_ratio(dy, 10));
        }
        let grid = Grid { step: 0.05, angle_step: 5.0, ..Grid::default() };
        let found = falsify(&cert.config, Color::Red, grid).found;
        let verdict = verify_certificate(&cert).map(|r| r.verdict).unwrap_or(Verdict::False);
        prop_assert!(!found || verdict != Verdict::True, "witness found but {} verifies", id);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn reparametrized_schedule_verifies_alike(p in 1i64..9, q in 1i64..9, r in -20i64..20) {
        let ms = figure1_row2();
        let base = verify_schedule(&ms).unwrap();
        let re = verify_schedule(&ms.reparametrized(&Exact::from_ratio(p, q), &Exact::from_ratio(r, 7))).unwrap();
        prop_assert_eq!(re.verdict, base.verdict);
        prop_assert_eq!(re.pieces.len(), base.pieces.len());
        prop_assert_eq!(re.obligations.len(), base.obligations.len());
        for (a, b) in re.obligations.iter().zip(&base.obligations) {
            prop_assert_eq!(&a.path, &b.path);
        }
    }
}
