/// Euclidean projection onto `{x : x ≥ lower, Σx = total}`.
///
/// The solution is `max(lower, v − τ)` for the unique shift `τ` that meets
/// the sum; `τ` is found by walking the sorted breakpoints `vᵢ − lowerᵢ`.
/// Requires `Σ lower ≤ total`.
pub(super) fn project_capped_simplex(v: &[f64], lower: &[f64], total: f64) -> Vec<f64> {
    let room = total - lower.iter().sum::<f64>();
    let mut excess: Vec<f64> = v.iter().zip(lower).map(|(a, l)| a - l).collect();
    excess.sort_unstable_by(|a, b| b.total_cmp(a));
    let mut tau = excess[0];
    let mut acc = 0.0;
    for (k, &b) in excess.iter().enumerate() {
        acc += b;
        let candidate = (acc - room) / (k + 1) as f64;
        if b > candidate {
            tau = candidate;
        } else {
            break;
        }
    }
    v.iter().zip(lower).map(|(a, l)| (a - tau).max(*l)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn already_inside() {
        let p = project_capped_simplex(&[2., 3.], &[0., 0.], 5.);
        assert_eq!(p, vec![2., 3.]);
    }

    #[test]
    fn shift_and_clamp() {
        // Shift by 3 would push the second entry below its bound.
        let p = project_capped_simplex(&[10., 1.], &[0., 0.], 5.);
        assert_eq!(p, vec![5., 0.]);
        let p = project_capped_simplex(&[1., 1., 1.], &[0., 2., 0.], 4.);
        assert_eq!(p, vec![1., 2., 1.]);
    }

    #[test]
    fn zero_room_pins_to_bounds() {
        let p = project_capped_simplex(&[7., -3.], &[1., 2.], 3.);
        assert_eq!(p, vec![1., 2.]);
    }
}
