//! The named inequalities the two proofs rest on, each decided with its
//! certified enclosures. `docs/inequalities.md` lists the same items.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lemmas::fcurve::eval_f;
use crate::lemmas::line::{behind_line_threshold, close_line_radius, max_half_diagonal};
use crate::numerics::{Exact, Interval, Relation};
use crate::report::CheckRecord;

#[derive(Clone, Debug, Serialize)]
pub struct AuditItem {
    pub id: String,
    pub statement: String,
    pub check: CheckRecord,
    pub note: Option<String>,
}

fn x(n: i64, d: i64) -> Exact {
    Exact::from_ratio(n, d)
}

fn int(n: i64) -> Exact {
    Exact::from_int(n)
}

fn r2() -> Exact {
    Exact::sqrt_int(2)
}

fn e() -> Exact {
    r2() - x(1, 2)
}

fn g() -> Exact {
    Exact::sqrt_int(3) / int(2)
}

fn thr() -> Exact {
    int(2) * r2() - int(2)
}

/// Items used by the 33-square proof.
pub const S33_ITEMS: &[&str] = &[
    "compression-bound",
    "f-gap-middle",
    "f-gap-end",
    "f-gap-middle-slide",
    "f-gap-end-slide",
    "shift-critical-distance",
    "shift-small-a",
    "slide-gap",
    "row-triangle",
    "band-rect",
    "top-band-gap",
    "quad-threshold",
    "quad-circle",
    "f-quad",
    "covered-point-distance",
    "behind-line-reach",
    "parallel-boundary",
    "line-count-33",
    "known-lower-33",
];

/// Items used by the 22-square proof.
pub const S22_ITEMS: &[&str] = &[
    "s22-row-gap",
    "s22-shift-small-a",
    "s22-shift-critical-distance",
    "s22-band",
    "pair-diagonal",
    "covered-point-distance",
    "behind-line-reach",
    "parallel-boundary",
    "close-line-identity",
    "line-count-22",
    "known-lower-22",
];

fn exact(id: &str, statement: &str, lhs: Exact, rel: Relation, rhs: Exact) -> AuditItem {
    AuditItem { id: id.into(), statement: statement.into(), check: CheckRecord::exact(statement, &lhs, rel, &rhs), note: None }
}

pub fn audit_item(id: &str) -> Result<AuditItem> {
    use Relation::*;
    let item = match id {
        "compression-bound" => exact(
            id,
            "2(sqrt(2)-1/2) + 2(0.8) + 3(sqrt(3)/2) > 6",
            &(&(int(2) * e()) + &x(8, 5)) + &(int(3) * g()),
            Gt,
            int(6),
        ),
        "f-gap-middle" => exact(id, "(6 - 2(sqrt(2)-1/2) - 3(sqrt(3)/2))/2 <= 0.8", (&(int(6) - int(2) * e()) - &(int(3) * g())) / int(2), Le, x(4, 5)),
        "f-gap-end" => exact(id, "6 - 2(sqrt(2)-1/2) - 4(sqrt(3)/2) <= 0.8", &(int(6) - int(2) * e()) - &(int(4) * g()), Le, x(4, 5)),
        "f-gap-middle-slide" => exact(id, "(6 - 2(sqrt(2)-1/2) - 3(sqrt(3)/2))/2 < 2 sqrt(2) - 2", (&(int(6) - int(2) * e()) - &(int(3) * g())) / int(2), Lt, thr()),
        "f-gap-end-slide" => exact(id, "6 - 2(sqrt(2)-1/2) - 4(sqrt(3)/2) < 2 sqrt(2) - 2", &(int(6) - int(2) * e()) - &(int(4) * g()), Lt, thr()),
        "shift-critical-distance" => exact(id, "0.6^2 + 0.8^2 <= 1", &x(3, 5).sqr() + &x(4, 5).sqr(), Le, int(1)),
        "shift-small-a" => exact(id, "0.8^2 + (1 - 0.4)^2 <= 1", &x(4, 5).sqr() + &x(3, 5).sqr(), Le, int(1)),
        "slide-gap" => exact(id, "0.8 < 2 sqrt(2) - 2", x(4, 5), Lt, thr()),
        "row-triangle" => exact(id, "(1/2)^2 + (sqrt(3)/2)^2 <= 1", &x(1, 2).sqr() + &g().sqr(), Le, int(1)),
        "band-rect" => exact(id, "1 + 2(sqrt(2)-1/2) <= 2 sqrt(2)", int(1) + int(2) * e(), Le, int(2) * r2()),
        "top-band-gap" => exact(id, "6 - (sqrt(2)-1/2) - 5(sqrt(3)/2) <= sqrt(2)-1/2", &(int(6) - e()) - &(int(5) * g()), Le, e()),
        "quad-threshold" => exact(id, "sqrt(3)/2 > 2 sqrt(2) - 2", g(), Gt, thr()),
        "quad-circle" => exact(id, "(sqrt(3)/2)^2 + (1/2 - 1)^2 <= 1", &g().sqr() + &x(1, 2).sqr(), Le, int(1)),
        "f-quad" => {
            let f = eval_f(g().enclosure())?;
            let statement = "f(sqrt(3)/2) > 1/2";
            AuditItem {
                id: id.into(),
                statement: statement.into(),
                check: CheckRecord::interval(statement, f.f_value, Gt, Interval::ratio(1, 2)),
                note: Some("certified minimisation of the f-curve".into()),
            }
        }
        "covered-point-distance" => exact(id, "(sqrt(2)-1/2) - 0.4 > 0.51", e() - x(2, 5), Gt, behind_line_threshold()),
        "behind-line-reach" => exact(id, "0.505 sqrt(2) - 0.51 < (sqrt(2)-1)/2", max_half_diagonal() - behind_line_threshold(), Lt, close_line_radius()),
        "parallel-boundary" => {
            let mut it = exact(id, "2 sqrt(2) - 2(sqrt(2)-1/2) >= 1", int(2) * r2() - int(2) * e(), Ge, int(1));
            it.note = Some("equality: the intersection exceeds 1 strictly because every box has side > 1".into());
            it
        }
        "line-count-33" => exact(id, "6 boxes each cutting > 1 vs length 6", int(6), Ge, int(6)),
        "line-count-22" => exact(id, "5 boxes each cutting > 1 vs length 5", int(5), Ge, int(5)),
        "known-lower-33" => exact(id, "sqrt(24) + 1 < 6", Exact::sqrt_int(24) + int(1), Lt, int(6)),
        "known-lower-22" => exact(id, "sqrt(15) + 1 < 5", Exact::sqrt_int(15) + int(1), Lt, int(5)),
        "s22-row-gap" => exact(id, "0.8 < 2 sqrt(2) - 2", x(4, 5), Lt, thr()),
        "s22-shift-small-a" => exact(id, "0.8^2 + (1 - 0.4)^2 <= 1", &x(4, 5).sqr() + &x(3, 5).sqr(), Le, int(1)),
        "s22-shift-critical-distance" => exact(id, "0.6^2 + 0.8^2 <= 1", &x(3, 5).sqr() + &x(4, 5).sqr(), Le, int(1)),
        "s22-band" => exact(id, "5 - 4.1 = 0.9 <= sqrt(2)-1/2", x(9, 10), Le, e()),
        "pair-diagonal" => exact(id, "1.01 sqrt(2) < 2", x(101, 100) * r2(), Lt, int(2)),
        "close-line-identity" => {
            let lhs = &(x(1, 2) * r2()) - &x(1, 2);
            let mut it = exact(id, "sqrt(2)/2 - 1/2 = (sqrt(2)-1)/2", lhs.clone(), Ge, close_line_radius());
            it.check.verdict = it.check.verdict.and(crate::numerics::Verdict::from_bool(lhs == close_line_radius()));
            it
        }
        _ => return Err(Error::Invalid(format!("unknown audit item {id:?}"))),
    };
    Ok(item)
}

pub fn audit(items: &[impl AsRef<str>]) -> Result<Vec<AuditItem>> {
    items.iter().map(|i| audit_item(i.as_ref())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_item_holds_tightly() {
        for id in S33_ITEMS.iter().chain(S22_ITEMS) {
            let it = audit_item(id).unwrap();
            assert!(it.check.verdict.is_true(), "{id}: {}", it.check);
            assert!(it.check.width() < 1e-9, "{id}: width {}", it.check.width());
        }
        assert!(audit_item("nope").is_err());
    }
}
