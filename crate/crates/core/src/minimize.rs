//! Bounded scalar minimization: a dense uniform grid locates the basin,
//! golden-section search polishes the minimizer inside the neighbouring
//! grid cells.

/// `1/φ`, the golden-section contraction factor.
const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarMinimum {
    pub x: f64,
    pub value: f64,
    pub evaluations: usize,
}

/// Golden-section search on `[lo, hi]`, stopping once the bracket width
/// falls below `rel_tol · max(|x|, tiny)`.
pub fn golden_section<F>(f: F, mut lo: f64, mut hi: f64, rel_tol: f64) -> ScalarMinimum
where
    F: Fn(f64) -> f64,
{
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut evaluations = 2;

    // 200 contractions shrink any finite bracket below f64 resolution
    for _ in 0..200 {
        let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
        if hi - lo <= rel_tol * scale {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
        evaluations += 1;
    }

    let (x, value) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    ScalarMinimum { x, value, evaluations }
}

/// Uniform grid of `grid_points` samples over `[lo, hi]`, then golden
/// section on the two cells around the best sample. NaN samples are skipped.
pub fn grid_then_golden<F>(f: F, lo: f64, hi: f64, grid_points: usize, rel_tol: f64) -> ScalarMinimum
where
    F: Fn(f64) -> f64,
{
    assert!(grid_points >= 3, "grid needs at least three points");
    assert!(hi > lo, "empty interval");
    let h = (hi - lo) / (grid_points - 1) as f64;
    let at = |i: usize| if i == grid_points - 1 { hi } else { lo + h * i as f64 };

    let mut best_i = 0;
    let mut best_v = f64::INFINITY;
    for i in 0..grid_points {
        let v = f(at(i));
        if v < best_v {
            best_v = v;
            best_i = i;
        }
    }

    let left = at(best_i.saturating_sub(1));
    let right = at((best_i + 1).min(grid_points - 1));
    let refined = golden_section(&f, left, right, rel_tol);
    let evaluations = grid_points + refined.evaluations;
    if refined.value <= best_v {
        ScalarMinimum { evaluations, ..refined }
    } else {
        ScalarMinimum {
            x: at(best_i),
            value: best_v,
            evaluations,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bracketed() {
        let m = golden_section(|x| (x - 0.2).powi(2), -1.0, 1.0, 1e-12);
        assert!((m.x - 0.2).abs() <= 1e-9);
    }

    #[test]
    fn grid_escapes_local_minimum() {
        // local min near x = -1, global min near x = 2
        let f = |x: f64| (x + 1.0).powi(2) * (x - 2.0).powi(2) + 0.5 * (x - 2.0).powi(2);
        let m = grid_then_golden(f, -3.0, 3.0, 1000, 1e-12);
        assert!((m.x - 2.0).abs() <= 1e-6, "{m:?}");
    }

    #[test]
    fn minimum_at_endpoint() {
        let m = grid_then_golden(|x| x, 1.0, 2.0, 100, 1e-12);
        assert!((m.x - 1.0).abs() <= 1e-9);
    }
}
