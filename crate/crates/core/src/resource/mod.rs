//! Closing arguments: line-resource counting and the regions left for the
//! centre of a box that misses its share of the line.

pub mod line;
pub mod region;

pub use line::{line_resource_contradiction, window_analysis, ClaimReport, CoveredPoint, ResourceLine, ResourceReport, Window};
pub use region::{
    feasible_midpoint_region, region_in_disk, BoundaryPoint, DiskReport, MidpointRegion, RegionConstraint, RegionEnvelope,
};

use crate::error::Result;
use crate::geometry::ExactPoint;
use crate::lemmas::line::{close_line_radius, max_half_diagonal};
use crate::numerics::Exact;

/// Centres of a box that covers `anchor` (left of `l`) and meets `l` only
/// inside `window`: beyond `l` by at least `(sqrt(2)-1)/2`, within
/// `0.505 sqrt(2)` of `anchor`, and at least `1/2` from each denied point
/// other than `keep`.
pub fn window_region(line: &ResourceLine, window: &Window, anchor: &ExactPoint, keep: Option<&ExactPoint>) -> Result<MidpointRegion> {
    let x = &line.segment.a.x;
    let right = anchor.x < *x;
    let edge = if right { x + &close_line_radius() } else { x - &close_line_radius() };
    let mut constraints = vec![
        RegionConstraint::vertical(edge, right),
        RegionConstraint::InsideDisk { center: anchor.clone(), radius: max_half_diagonal() },
    ];
    let mut description = vec![
        "centre beyond l by at least (sqrt(2)-1)/2, else the box cuts more than 1 from l".to_string(),
        "centre within 0.505 sqrt(2) of the covered point".to_string(),
    ];
    for d in &window.denied {
        if Some(d) == keep {
            continue;
        }
        constraints.push(RegionConstraint::OutsideDisk { center: d.clone(), radius: Exact::from_ratio(1, 2) });
        description.push(format!("centre at least 1/2 from denied point ({:.4}, {:.4})", d.x.to_f64(), d.y.to_f64()));
    }
    MidpointRegion::new(constraints, description)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::figures::edge_gap;
    use crate::geometry::ContainerSquare;
    use crate::numerics::Verdict;

    fn setup(k: usize, y: &str) -> (MidpointRegion, ExactPoint) {
        let c = ContainerSquare::new(Exact::from_int(5)).unwrap();
        let l = ResourceLine::vertical(edge_gap(), &c).unwrap();
        let w = window_analysis(&l, 5, k).unwrap();
        let anchor = ExactPoint::parse("0.5", y).unwrap();
        let keep = (k != 3).then(|| w.denied[0].clone());
        (window_region(&l, &w, &anchor, keep.as_ref()).unwrap(), ExactPoint::new(edge_gap(), Exact::one()))
    }

    #[test]
    fn middle_row_region_reaches_the_next_blue_point() {
        let (r, _) = setup(3, "2.5");
        let env = feasible_midpoint_region(&r);
        let pts: Vec<(f64, f64)> = env.vertices.iter().map(|v| v.point.mid()).collect();
        assert_eq!(pts.len(), 4, "{pts:?}");
        assert!(env.vertices.iter().all(|v| v.feasible == Verdict::True));
        let d = region_in_disk(&r, &ExactPoint::parse("1.5", "2.5").unwrap(), &Exact::from_ratio(1, 2)).unwrap();
        assert!(d.verdict.is_true(), "{:?}", d.max_distance);
    }

    #[test]
    fn bottom_row_region_covers_the_denied_point() {
        let (r, target) = setup(1, "0.9");
        let env = feasible_midpoint_region(&r);
        assert_eq!(env.vertices.len(), 2);
        let d = region_in_disk(&r, &target, &Exact::from_ratio(1, 2)).unwrap();
        assert!(d.verdict.is_true(), "{:?}", d.max_distance);
    }
}
