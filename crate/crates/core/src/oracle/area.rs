use crate::model::AgeCurve;

/// Trapezoid-rule integral of an age curve with sub-steps of at most `step`.
///
/// Sample points always include every breakpoint, so on a piecewise-linear
/// curve this agrees with the exact area up to rounding.
pub fn numeric_area(curve: &AgeCurve, step: f64) -> f64 {
    let step = if step > 0.0 { step } else { f64::INFINITY };
    let mut area = 0.0;
    for w in curve.breakpoints.windows(2) {
        let ((t0, a0), (t1, a1)) = (w[0], w[1]);
        let len = t1 - t0;
        if len <= 0.0 {
            continue;
        }
        let pieces = (len / step).ceil().max(1.0) as usize;
        let h = len / pieces as f64;
        let slope = (a1 - a0) / len;
        let mut prev = a0;
        for p in 1..=pieces {
            let next = if p == pieces { a1 } else { a0 + slope * h * p as f64 };
            area += 0.5 * h * (prev + next);
            prev = next;
        }
    }
    area
}
