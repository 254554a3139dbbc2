//! The f-curve against values computed independently at 40 digits, and
//! against a plain f64 grid search.

use unavoidable::lemmas::fcurve::{cubic, eval_f, f_enclosure};
use unavoidable::numerics::expr::exact_constant;
use unavoidable::numerics::Interval;

/// `(a, f(a), cos theta*)` from a 40-digit multiprecision minimisation.
const FROZEN: &[(&str, f64, f64)] = &[
    ("0.83", 0.998_416_928_244_702_8, 0.711_646_736_081_224_8),
    ("0.85", 0.976_489_842_158_836_1, 0.763_245_987_768_650_9),
    ("sqrt(3)/2", 0.956_408_598_746_730_4, 0.798_665_292_849_78),
    ("0.9", 0.905_230_933_255_707_2, 0.862_740_438_528_651_8),
    ("0.95", 0.798_153_437_834_440_5, 0.939_246_817_865_744_6),
];

fn objective(a: f64, t: f64) -> f64 {
    t.cos() / (1.0 + t.cos()) + (1.0 - a * t.cos()) / t.sin()
}

fn grid_min(a: f64) -> f64 {
    let q = std::f64::consts::FRAC_PI_4;
    (1..=100_000).map(|i| objective(a, q * i as f64 / 100_000.0)).fold(f64::INFINITY, f64::min)
}

fn a_of(s: &str) -> Interval {
    exact_constant(s).unwrap().enclosure()
}

#[test]
fn matches_frozen_values() {
    for &(s, f, c) in FROZEN {
        let p = eval_f(a_of(s)).unwrap();
        assert!(p.f_value.contains(f) || (p.f_value.mid() - f).abs() < 1e-12, "{s}: f {} vs {f}", p.f_value);
        assert!(p.f_value.width() < 1e-9, "{s}: width {}", p.f_value.width());
        assert!((p.cos_star.mid() - c).abs() < 1e-9, "{s}: cos {} vs {c}", p.cos_star);
        assert!(p.residual.lo() >= -1e-9 && p.residual.hi() <= 1e-9, "{s}: residual {}", p.residual);
    }
}

#[test]
fn grid_search_never_beats_the_enclosure() {
    for &(s, _, _) in FROZEN {
        let a = a_of(s);
        let e = f_enclosure(a).unwrap();
        let g = grid_min(a.mid());
        assert!(g >= e.lo() - 1e-12, "{s}: grid {g} below {e}");
        assert!(g - e.hi() < 1e-8, "{s}: grid {g} far above {e}");
    }
}

#[test]
fn cubic_changes_sign_at_the_root() {
    for &(s, _, c) in FROZEN {
        let a = a_of(s);
        let below = cubic(Interval::point(c - 1e-6), a);
        let above = cubic(Interval::point(c + 1e-6), a);
        assert!(below.hi() < 0.0 && above.lo() > 0.0 || below.lo() > 0.0 && above.hi() < 0.0, "{s}: {below} {above}");
    }
}

#[test]
fn decreasing_and_above_half() {
    let mut prev = f64::INFINITY;
    for k in 0..=40 {
        let a = 0.83 + 0.17 * k as f64 / 41.0;
        let e = f_enclosure(Interval::point(a)).unwrap();
        assert!(e.hi() < prev, "not decreasing at {a}");
        assert!(e.lo() > 0.5, "{a}: {e}");
        prev = e.lo();
    }
}
