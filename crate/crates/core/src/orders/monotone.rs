use crate::geometry::{Point, PointSet, StackingOrder};

use super::OrderDiagnostics;

/// Positions of a longest non-decreasing subsequence of `keys`.
fn longest_non_decreasing(keys: &[f64]) -> Vec<usize> {
    // tails[l] = position ending the best run of length l + 1 found so far.
    let mut tails: Vec<usize> = Vec::new();
    let mut prev: Vec<Option<usize>> = vec![None; keys.len()];
    for (pos, &key) in keys.iter().enumerate() {
        let l = tails.partition_point(|&t| keys[t] <= key);
        prev[pos] = l.checked_sub(1).map(|j| tails[j]);
        if l == tails.len() {
            tails.push(pos);
        } else {
            tails[l] = pos;
        }
    }
    let mut out = Vec::with_capacity(tails.len());
    let mut cur = tails.last().copied();
    while let Some(pos) = cur {
        out.push(pos);
        cur = prev[pos];
    }
    out.reverse();
    out
}

/// Longest chain of points with `x` non-decreasing and `y` monotone in one
/// direction, as indices in chain order.
///
/// Any `n` points contain such a chain of length at least `⌈√n⌉`. Ties
/// between the increasing and decreasing chain go to the increasing one.
pub fn longest_monotone_chain(points: &[Point]) -> Vec<usize> {
    let chain_for = |y_sign: f64| -> Vec<usize> {
        let mut idx: Vec<usize> = (0..points.len()).collect();
        idx.sort_by(|&i, &j| {
            let (a, b) = (points[i], points[j]);
            a.x.total_cmp(&b.x)
                .then((y_sign * a.y).total_cmp(&(y_sign * b.y)))
                .then(i.cmp(&j))
        });
        let keys: Vec<f64> = idx.iter().map(|&i| y_sign * points[i].y).collect();
        longest_non_decreasing(&keys)
            .into_iter()
            .map(|pos| idx[pos])
            .collect()
    };
    let up = chain_for(1.0);
    let down = chain_for(-1.0);
    if down.len() > up.len() {
        down
    } else {
        up
    }
}

/// Puts a longest monotone chain in front, in chain order, followed by the
/// remaining disks by index.
///
/// Each chain disk keeps a quarter of its boundary visible at any scale (the
/// quadrant facing away from its predecessors), so the visible perimeter is
/// at least `(π/2)·m` for chain length `m`.
pub fn monotone_order(ps: &PointSet) -> (StackingOrder, OrderDiagnostics) {
    let n = ps.len();
    let chain = longest_monotone_chain(ps.points());
    let mut in_chain = vec![false; n];
    for &i in &chain {
        in_chain[i] = true;
    }
    let mut seq = chain.clone();
    seq.extend((0..n).filter(|&i| !in_chain[i]));
    let floor = (n as f64).sqrt().ceil();
    let diag = OrderDiagnostics::new("monotone")
        .count("chain_length", chain.len() as f64)
        .count("guarantee", floor);
    (
        StackingOrder::from_sequence(seq).expect("chain plus remainder is a permutation"),
        diag,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::grid;
    use proptest::prelude::*;

    /// Longest monotone chain by checking every subset in sorted order.
    fn brute_chain_length(points: &[Point]) -> usize {
        let n = points.len();
        let mut best = 0;
        for mask in 1u32..(1 << n) {
            let mut sel: Vec<Point> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| points[i]).collect();
            for sign in [1.0, -1.0] {
                sel.sort_by(|a, b| a.x.total_cmp(&b.x).then((sign * a.y).total_cmp(&(sign * b.y))));
                if sel.windows(2).all(|w| sign * w[0].y <= sign * w[1].y) {
                    best = best.max(sel.len());
                }
            }
        }
        best
    }

    fn is_monotone(points: &[Point], chain: &[usize]) -> bool {
        let xs_ok = chain.windows(2).all(|w| points[w[0]].x <= points[w[1]].x);
        let up = chain.windows(2).all(|w| points[w[0]].y <= points[w[1]].y);
        let down = chain.windows(2).all(|w| points[w[0]].y >= points[w[1]].y);
        xs_ok && (up || down)
    }

    #[test]
    fn increasing_line_is_one_chain() {
        let ps = PointSet::new((0..9).map(|i| Point::new(i as f64, 0.5 * i as f64)).collect()).unwrap();
        let (f, d) = monotone_order(&ps);
        assert_eq!(d.get("chain_length"), Some(9.0));
        assert_eq!(f.sequence(), &(0..9).collect::<Vec<_>>()[..]);
    }

    #[test]
    fn convex_quadruple_meets_floor() {
        // A diamond: no three points form a monotone chain.
        let ps = PointSet::new(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(1.5, -1.0),
            Point::new(2.5, 0.0),
        ])
        .unwrap();
        let (_, d) = monotone_order(&ps);
        assert_eq!(brute_chain_length(ps.points()), 2);
        assert_eq!(d.get("chain_length"), Some(2.0));
    }

    #[test]
    fn grid_chain_matches_enumeration() {
        let g = grid(5).unwrap();
        let chain = longest_monotone_chain(g.points());
        assert!(is_monotone(g.points(), &chain));
        // Staircase from corner to corner with non-strict steps.
        assert_eq!(chain.len(), 9);
        let g4 = grid(4).unwrap();
        assert_eq!(longest_monotone_chain(g4.points()).len(), brute_chain_length(g4.points()));
        assert!(chain.len() >= 5);
    }

    proptest! {
        #[test]
        fn chain_is_longest_and_monotone(
            pts in prop::collection::vec((0i32..6, 0i32..6), 1..12)
        ) {
            let mut pts: Vec<Point> = pts.into_iter().map(|(x, y)| Point::new(x as f64, y as f64)).collect();
            pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
            pts.dedup();
            let chain = longest_monotone_chain(&pts);
            prop_assert!(is_monotone(&pts, &chain));
            prop_assert_eq!(chain.len(), brute_chain_length(&pts));
            prop_assert!(chain.len() as f64 >= (pts.len() as f64).sqrt().ceil());
        }
    }
}
