use crate::geometry::{hull_indices, orient, ring_external_angle, Point, PointSet, StackingOrder};

use super::OrderDiagnostics;

/// Angles closer than this are treated as tied.
const TIE_TOL: f64 = 1e-12;

fn ring_points(points: &[Point], ring: &[usize]) -> Vec<Point> {
    ring.iter().map(|&i| points[i]).collect()
}

/// Index into `ring` of the vertex with the largest external angle, ties
/// going to the smallest point index. Returns the position and the angle.
fn pick_vertex(points: &[Point], ring: &[usize]) -> (usize, f64) {
    let pts = ring_points(points, ring);
    let angles: Vec<f64> = (0..ring.len()).map(|i| ring_external_angle(&pts, i)).collect();
    let best = angles.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let pos = (0..ring.len())
        .filter(|&i| angles[i] >= best - TIE_TOL)
        .min_by_key(|&i| ring[i])
        .expect("ring is non-empty");
    (pos, angles[pos])
}

/// Removes `ring[pos]` from a hull ring of at least three vertices and
/// patches the hole with the hull of the points it uncovers. Returns `None`
/// when the patched ring degenerates.
fn remove_vertex(points: &[Point], alive: &[bool], ring: &[usize], pos: usize) -> Option<Vec<usize>> {
    let n = ring.len();
    let a = ring[(pos + n - 1) % n];
    let b = ring[(pos + 1) % n];
    let (pa, pb) = (points[a], points[b]);
    // The removed vertex lies right of a → b; so do the uncovered points.
    let mut pocket: Vec<usize> = (0..points.len())
        .filter(|&q| alive[q] && q != a && q != b && orient(pa, pb, points[q]) < 0)
        .collect();
    pocket.push(a);
    pocket.push(b);
    let sub = hull_indices(points, &pocket);
    let start = sub.iter().position(|&i| i == a)?;
    if !sub.contains(&b) {
        return None;
    }
    let chain: Vec<usize> = sub
        .iter()
        .cycle()
        .skip(start + 1)
        .take_while(|&&i| i != b)
        .take(sub.len())
        .copied()
        .collect();

    let mut out = Vec::with_capacity(n + chain.len());
    for k in 0..n {
        if k == pos {
            out.extend_from_slice(&chain);
        } else {
            out.push(ring[k]);
        }
    }
    // a and b may have become collinear with their new neighbours.
    for v in [a, b] {
        let m = out.len();
        if m < 3 {
            return None;
        }
        let k = out.iter().position(|&i| i == v)?;
        let prev = points[out[(k + m - 1) % m]];
        let next = points[out[(k + 1) % m]];
        if orient(prev, points[v], next) <= 0 {
            out.remove(k);
        }
    }
    (out.len() >= 3).then_some(out)
}

/// Back-to-front greedy: repeatedly take the hull vertex of the remaining
/// points with the largest external angle and place it behind everything
/// chosen so far. Ties go to the smallest point index.
///
/// The external angle at the chosen vertex is exactly the angle that point
/// contributes to the contracted-limit perimeter, so the diagnostics record
/// the smallest and largest step angle (the front disk's 2π excluded).
pub fn greedy_order(ps: &PointSet) -> (StackingOrder, OrderDiagnostics) {
    let points = ps.points();
    let n = points.len();
    let mut alive = vec![true; n];
    let mut back_to_front = Vec::with_capacity(n);
    let all: Vec<usize> = (0..n).collect();
    let mut ring = hull_indices(points, &all);
    let mut min_tau = f64::INFINITY;
    let mut max_tau: f64 = 0.0;
    let mut remaining = n;

    while remaining > 0 {
        if remaining == 1 {
            let last = (0..n).find(|&i| alive[i]).expect("one point left");
            back_to_front.push(last);
            break;
        }
        let (pos, tau) = pick_vertex(points, &ring);
        let v = ring[pos];
        min_tau = min_tau.min(tau);
        max_tau = max_tau.max(tau);
        alive[v] = false;
        remaining -= 1;
        back_to_front.push(v);

        let patched = if ring.len() >= 3 {
            remove_vertex(points, &alive, &ring, pos)
        } else {
            None
        };
        ring = match patched {
            Some(r) => r,
            None => {
                let rest: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
                hull_indices(points, &rest)
            }
        };
    }

    back_to_front.reverse();
    let mut diag = OrderDiagnostics::new("greedy");
    if n >= 2 {
        diag = diag.count("min_step_angle", min_tau).count("max_step_angle", max_tau);
    }
    (
        StackingOrder::from_sequence(back_to_front).expect("every point chosen once"),
        diag,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{grid, random_dense};
    use crate::orders::optimal_order_bruteforce;
    use crate::orders::Metric;
    use crate::visibility::limit_visible_perimeter;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    /// Greedy that recomputes the hull of the remaining points from scratch.
    fn naive_greedy(points: &[Point]) -> Vec<usize> {
        let mut rest: Vec<usize> = (0..points.len()).collect();
        let mut back = Vec::new();
        while !rest.is_empty() {
            let ring = hull_indices(points, &rest);
            let (pos, _) = pick_vertex(points, &ring);
            let v = ring[pos];
            back.push(v);
            rest.retain(|&i| i != v);
        }
        back.reverse();
        back
    }

    #[test]
    fn single_point_is_identity() {
        let ps = PointSet::new(vec![Point::new(2.0, 2.0)]).unwrap();
        assert_eq!(greedy_order(&ps).0, StackingOrder::identity(1));
    }

    #[test]
    fn unit_square_reaches_optimum() {
        let ps = grid(2).unwrap();
        let (f, _) = greedy_order(&ps);
        let (lim, _) = limit_visible_perimeter(&ps, &f).unwrap();
        let (_, best) = optimal_order_bruteforce(&ps, Metric::Limit).unwrap();
        assert!((lim - 17.0 * PI / 4.0).abs() < 1e-12);
        assert!((best - lim).abs() < 1e-12);
    }

    #[test]
    fn step_angles_match_limit_trace() {
        let ps = random_dense(40, 2.0, 11).unwrap();
        let (f, diag) = greedy_order(&ps);
        let (_, trace) = limit_visible_perimeter(&ps, &f).unwrap();
        let min_trace = trace.taus[1..].iter().copied().fold(f64::INFINITY, f64::min);
        assert!((diag.get("min_step_angle").unwrap() - min_trace).abs() < 1e-9);
    }

    #[test]
    fn grids_match_naive() {
        for k in [3, 5, 8] {
            let g = grid(k).unwrap();
            assert_eq!(greedy_order(&g).0.sequence(), &naive_greedy(g.points())[..]);
        }
    }

    proptest! {
        #[test]
        fn matches_naive_recomputation(seed in 0u64..500, n in 1usize..60) {
            let ps = random_dense(n, 2.0, seed).unwrap();
            let (f, _) = greedy_order(&ps);
            prop_assert_eq!(f.sequence(), &naive_greedy(ps.points())[..]);
        }

        #[test]
        fn small_integer_sets_match_naive(pts in prop::collection::vec((0i32..7, 0i32..7), 1..30)) {
            let mut pts: Vec<Point> = pts.into_iter().map(|(x, y)| Point::new(x as f64, y as f64)).collect();
            pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
            pts.dedup();
            let ps = PointSet::new(pts).unwrap();
            let (f, _) = greedy_order(&ps);
            prop_assert_eq!(f.sequence(), &naive_greedy(ps.points())[..]);
        }
    }
}
