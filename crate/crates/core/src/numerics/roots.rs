use crate::scalar::Real;

/// Bisection on a bracket `[lo, hi]` whose endpoints satisfy
/// `inside(lo) != inside(hi)`. Returns the midpoint of the final bracket.
pub fn bisect<T: Real, P: Fn(T) -> bool>(inside: P, mut lo: T, mut hi: T, tol: T) -> T {
    let lo_inside = inside(lo);
    debug_assert_ne!(lo_inside, inside(hi));
    for _ in 0..400 {
        let mid = T::lit(0.5) * (lo + hi);
        if (hi - lo).abs() <= tol || mid == lo || mid == hi {
            break;
        }
        if inside(mid) == lo_inside {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    T::lit(0.5) * (lo + hi)
}

/// Walks outward from `origin` in direction `dir` (+1 or -1) and returns the
/// first point where `inside` turns false, or `None` if it stays true up to
/// distance `limit`. Brackets grow geometrically: `[0, 1], [1, 2], [2, 4], ...`.
pub fn first_exit<T: Real, P: Fn(T) -> bool>(inside: P, origin: T, dir: T, limit: T, tol: T) -> Option<T> {
    let mut prev = T::zero();
    let mut step = T::one();
    while prev < limit {
        let next = step.min(limit);
        if !inside(origin + dir * next) {
            let p = |d: T| inside(origin + dir * d);
            return Some(origin + dir * bisect(p, prev, next, tol));
        }
        prev = next;
        step = step + step;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let r = bisect(|x: f64| x * x < 2.0, 0.0, 2.0, 1e-14);
        assert!((r - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn first_exit_both_directions() {
        let inside = |s: f64| s > -0.25 && s < 37.5;
        let r = first_exit(inside, 0.0, 1.0, 1e9, 1e-12).unwrap();
        assert!((r - 37.5).abs() < 1e-11);
        let l = first_exit(inside, 0.0, -1.0, 1e9, 1e-12).unwrap();
        assert!((l + 0.25).abs() < 1e-11);
        assert!(first_exit(|_s: f64| true, 0.0, 1.0, 1e9, 1e-12).is_none());
    }
}
