use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::geometry::{push_coverage, ArcIntervalSet, HullState, Point, PointSet, StackingOrder};

use super::Metric;

/// Largest instance [`optimal_order_bruteforce`] accepts.
pub const BRUTE_FORCE_LIMIT: usize = 8;

/// A prefix score can only beat the incumbent by more than this.
const IMPROVE_TOL: f64 = 1e-12;

struct Search<'a, S> {
    n: usize,
    step: &'a dyn Fn(&S, &[usize], usize) -> (S, f64),
    prefix: Vec<usize>,
    best: Option<(Vec<usize>, f64)>,
}

impl<S> Search<'_, S> {
    fn visit(&mut self, used: u32, state: &S, acc: f64) {
        if self.prefix.len() == self.n {
            let better = self.best.as_ref().map_or(true, |(_, b)| acc > b + IMPROVE_TOL);
            if better {
                self.best = Some((self.prefix.clone(), acc));
            }
            return;
        }
        for disk in 0..self.n {
            if used >> disk & 1 == 1 {
                continue;
            }
            let (next, gain) = (self.step)(state, &self.prefix, disk);
            self.prefix.push(disk);
            self.visit(used | 1 << disk, &next, acc + gain);
            self.prefix.pop();
        }
    }
}

fn exact_gain(points: &[Point], front: &[usize], disk: usize) -> f64 {
    let mut pieces = Vec::new();
    for &j in front {
        push_coverage(points[disk], points[j], &mut pieces);
    }
    TAU - ArcIntervalSet::from_pieces(pieces).measure()
}

/// Best stacking order by exhaustive search over all `n!` orders.
///
/// Orders are enumerated as front-to-back disk sequences in lexicographic
/// order and an order replaces the incumbent only when it is better by more
/// than 1e-12, so ties resolve to the lexicographically smallest sequence.
/// Prefixes share work: each disk's contribution depends only on the disks
/// in front of it.
pub fn optimal_order_bruteforce(ps: &PointSet, metric: Metric) -> Result<(StackingOrder, f64)> {
    let n = ps.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let points = ps.points();
    let best = match metric {
        Metric::Exact => {
            let step = |_: &(), front: &[usize], disk: usize| ((), exact_gain(points, front, disk));
            let mut search = Search { n, step: &step, prefix: Vec::new(), best: None };
            search.visit(0, &(), 0.0);
            search.best
        }
        Metric::Limit => {
            let step = |hull: &Option<HullState>, _: &[usize], disk: usize| match hull {
                None => (Some(HullState::from_point(points[disk])), TAU),
                Some(h) => {
                    let (next, _, tau) = h.inserted(points[disk]);
                    (Some(next), tau)
                }
            };
            let mut search = Search { n, step: &step, prefix: Vec::new(), best: None };
            search.visit(0, &None, 0.0);
            search.best
        }
    };
    let (seq, value) = best.expect("at least one order");
    Ok((StackingOrder::from_sequence(seq)?, value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{grid, random_dense};
    use crate::visibility::{limit_visible_perimeter, visible_perimeter};
    use std::f64::consts::PI;

    /// Every permutation in lexicographic order, by Heap-free recursion.
    fn all_orders(n: usize) -> Vec<Vec<usize>> {
        fn rec(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            for d in 0..n {
                if !cur.contains(&d) {
                    cur.push(d);
                    rec(n, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn single_disk() {
        let ps = PointSet::new(vec![Point::new(0.0, 0.0)]).unwrap();
        for m in [Metric::Exact, Metric::Limit] {
            let (f, v) = optimal_order_bruteforce(&ps, m).unwrap();
            assert_eq!(f, StackingOrder::identity(1));
            assert_eq!(v, TAU);
        }
    }

    #[test]
    fn two_disks_closed_form() {
        for d in [0.3, 1.0, 1.7] {
            let ps = PointSet::new(vec![Point::new(0.0, 0.0), Point::new(d, 0.0)]).unwrap();
            let (f, v) = optimal_order_bruteforce(&ps, Metric::Exact).unwrap();
            let want = TAU + (TAU - 2.0 * (d / 2.0).acos());
            assert!((v - want).abs() < 1e-12);
            // Both orders tie; the smaller sequence wins.
            assert_eq!(f.sequence(), &[0, 1]);
        }
    }

    #[test]
    fn unit_square_limit_optimum() {
        let (_, v) = optimal_order_bruteforce(&grid(2).unwrap(), Metric::Limit).unwrap();
        assert!((v - 17.0 * PI / 4.0).abs() < 1e-12);
    }

    #[test]
    fn agrees_with_independent_enumeration() {
        for seed in 0..4 {
            let ps = random_dense(5, 2.0, seed).unwrap().scaled(0.6).unwrap();
            for metric in [Metric::Exact, Metric::Limit] {
                let (f, v) = optimal_order_bruteforce(&ps, metric).unwrap();
                let mut best: Option<(Vec<usize>, f64)> = None;
                for seq in all_orders(5) {
                    let g = StackingOrder::from_sequence(seq.clone()).unwrap();
                    let val = match metric {
                        Metric::Exact => visible_perimeter(&ps, &g).unwrap().total,
                        Metric::Limit => limit_visible_perimeter(&ps, &g).unwrap().0,
                    };
                    if best.as_ref().map_or(true, |(_, b)| val > b + 1e-9) {
                        best = Some((seq, val));
                    }
                }
                let (_, want) = best.unwrap();
                assert!((v - want).abs() < 1e-9, "{metric}: {v} vs {want}");
                assert!((metric.evaluate(&ps, &f).unwrap() - v).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn rejects_large_instances() {
        let ps = grid(3).unwrap();
        assert!(matches!(
            optimal_order_bruteforce(&ps, Metric::Limit),
            Err(Error::TooLarge { n: 9, limit: 8 })
        ));
    }
}
