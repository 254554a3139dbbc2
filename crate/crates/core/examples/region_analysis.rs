//! The centre regions left to the box of a deficient row on the line
//! x = sqrt(2)-1/2 in [0,5]^2, and the disks that contain them.

use unavoidable::certificates::figures::edge_gap;
use unavoidable::geometry::{ContainerSquare, ExactPoint};
use unavoidable::numerics::Exact;
use unavoidable::resource::{feasible_midpoint_region, region_in_disk, window_analysis, window_region, ResourceLine};

fn main() -> unavoidable::Result<()> {
    let container = ContainerSquare::new(Exact::from_int(5))?;
    let line = ResourceLine::vertical(edge_gap(), &container)?;
    let cases = [(3, "5/2", ExactPoint::parse("3/2", "5/2")?, false), (1, "9/10", ExactPoint::new(edge_gap(), Exact::one()), true)];
    for (row, y, target, keep) in cases {
        let window = window_analysis(&line, 5, row)?;
        let anchor = ExactPoint::parse("1/2", y)?;
        let region = window_region(&line, &window, &anchor, keep.then_some(&target))?;
        println!("row {row}, covered point (0.5, {y}):");
        for d in &region.description {
            println!("  {d}");
        }
        for v in feasible_midpoint_region(&region).vertices {
            let (x, y) = v.point.mid();
            println!("  vertex ({x:.4}, {y:.4}) between constraints {:?}", v.between);
        }
        let disk = region_in_disk(&region, &target, &Exact::from_ratio(1, 2))?;
        let (tx, ty) = target.to_f64();
        println!("  within 1/2 of ({tx:.4}, {ty:.4}): {} (max distance {})", disk.verdict, disk.max_distance);
    }
    Ok(())
}
