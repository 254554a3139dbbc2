//! Certified values of f(a), the least reach of a box of side in (1, 1.01]
//! that covers the quad-lemma corner for edge gap `a`.

use unavoidable::lemmas::fcurve::eval_f;
use unavoidable::numerics::expr::make_constant;

fn main() -> unavoidable::Result<()> {
    for s in ["0.83", "0.85", "sqrt(3)/2", "0.9", "0.95", "0.99"] {
        let p = eval_f(make_constant(s)?)?;
        println!(
            "a = {s:<10} f(a) = {:.12} (+/- {:.1e})  cos theta* = {:.9}  residual {:.1e}  boxes {}",
            p.f_value.mid(),
            p.f_value.width(),
            p.cos_star.mid(),
            p.residual.lo().abs().max(p.residual.hi().abs()),
            p.boxes_explored
        );
    }
    Ok(())
}
