//! Grid search for an empty box: none for the full configuration, one
//! once the point (1, sqrt(2)-1/2) is removed.

use unavoidable::certificates::figures::fig1_configuration;
use unavoidable::certificates::{falsify, Color, Grid};

fn main() {
    let config = fig1_configuration();
    let grid = Grid { step: 0.05, angle_step: 3.0, side: 1.001 };
    let r = falsify(&config, Color::Red, grid);
    println!("full set: found = {} after {} boxes", r.found, r.boxes_scanned);

    let thinned = config.without_point("r1.1");
    let r = falsify(&thinned, Color::Red, Grid::default());
    match r.witness {
        Some(w) => println!(
            "without r1.1: empty box at ({:.3}, {:.3}), angle {:.1} deg, side {} ({} boxes)",
            w.center.0, w.center.1, w.angle_degrees, w.side, r.boxes_scanned
        ),
        None => println!("without r1.1: nothing found ({})", r.note),
    }
}
