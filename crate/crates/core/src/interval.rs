//! Finite unions of closed intervals on the real line.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "interval [{lo}, {hi}] is reversed");
        Self { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_degenerate(&self) -> bool {
        self.hi == self.lo
    }

    pub fn contains(&self, x: f64, tol: f64) -> bool {
        self.lo - tol <= x && x <= self.hi + tol
    }
}

/// An open gap `(lo, hi)` with any isolated points (flat bands) inside or on
/// its closure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gap {
    pub lo: f64,
    pub hi: f64,
    pub flat_bands: Vec<f64>,
}

impl Gap {
    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Sorted disjoint closed intervals. Degenerate members `[μ, μ]` are
/// isolated points: they carry no measure and never split a gap.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    /// Union of `items`. Intervals that overlap, touch, or are separated by
    /// at most `merge_tol` are merged; points covered by an interval vanish.
    pub fn from_intervals(items: impl IntoIterator<Item = Interval>, merge_tol: f64) -> Self {
        let mut v: Vec<Interval> = items.into_iter().collect();
        v.sort_by(|a, b| a.lo.total_cmp(&b.lo).then(a.hi.total_cmp(&b.hi)));
        let mut out: Vec<Interval> = Vec::with_capacity(v.len());
        for iv in v {
            match out.last_mut() {
                Some(last) if iv.lo <= last.hi + merge_tol => {
                    // a lone point only absorbs into a genuine segment or an equal point
                    if last.is_degenerate() && iv.is_degenerate() && iv.lo > last.hi {
                        out.push(iv);
                    } else {
                        last.hi = last.hi.max(iv.hi);
                    }
                }
                _ => out.push(iv),
            }
        }
        Self { intervals: out }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    /// Non-degenerate members.
    pub fn segments(&self) -> impl Iterator<Item = &Interval> {
        self.intervals.iter().filter(|i| !i.is_degenerate())
    }

    /// Degenerate members (isolated points).
    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        self.intervals.iter().filter(|i| i.is_degenerate()).map(|i| i.lo)
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Lebesgue measure.
    pub fn measure(&self) -> f64 {
        self.segments().map(Interval::len).sum()
    }

    pub fn contains(&self, x: f64, tol: f64) -> bool {
        self.intervals.iter().any(|i| i.contains(x, tol))
    }

    pub fn segment_contains(&self, x: f64, tol: f64) -> bool {
        self.segments().any(|i| i.contains(x, tol))
    }

    pub fn min(&self) -> Option<f64> {
        self.intervals.first().map(|i| i.lo)
    }

    pub fn max(&self) -> Option<f64> {
        self.intervals.last().map(|i| i.hi)
    }

    /// Components of `hull` minus the non-degenerate segments, each annotated
    /// with the isolated points of this set lying in its closure. Components
    /// no longer than `tol` are dropped.
    pub fn gaps(&self, hull: Interval, tol: f64) -> Vec<Gap> {
        let pts: Vec<f64> = self.points().collect();
        gaps_with_points(self, hull, &pts, tol)
    }

    /// Image under a monotone increasing map.
    pub fn map_increasing(&self, f: impl Fn(f64) -> f64) -> Self {
        Self { intervals: self.intervals.iter().map(|i| Interval::new(f(i.lo), f(i.hi))).collect() }
    }

    /// Image under `x ↦ center2 − x`.
    pub fn reflect(&self, center2: f64) -> Self {
        let mut v: Vec<Interval> = self.intervals.iter().map(|i| Interval::new(center2 - i.hi, center2 - i.lo)).collect();
        v.reverse();
        Self { intervals: v }
    }

    /// Intersection with `[lo, hi]`.
    pub fn clip(&self, lo: f64, hi: f64) -> Self {
        Self {
            intervals: self
                .intervals
                .iter()
                .filter(|i| i.hi >= lo && i.lo <= hi)
                .map(|i| Interval::new(i.lo.max(lo), i.hi.min(hi)))
                .collect(),
        }
    }

    /// Distance from `x` to the set.
    pub fn distance(&self, x: f64) -> f64 {
        self.intervals
            .iter()
            .map(|i| if x < i.lo { i.lo - x } else if x > i.hi { x - i.hi } else { 0.0 })
            .fold(f64::INFINITY, f64::min)
    }

    /// Hausdorff distance between two non-empty sets.
    pub fn hausdorff(&self, other: &Self) -> f64 {
        fn directed(a: &IntervalSet, b: &IntervalSet) -> f64 {
            let mut worst: f64 = 0.0;
            for i in a.intervals() {
                let mut candidates = vec![i.lo, i.hi];
                // the farthest point of a segment from b sits at an endpoint or
                // at the midpoint of a hole of b
                for w in b.intervals.windows(2) {
                    let mid = 0.5 * (w[0].hi + w[1].lo);
                    if i.contains(mid, 0.0) {
                        candidates.push(mid);
                    }
                }
                for x in candidates {
                    worst = worst.max(b.distance(x));
                }
            }
            worst
        }
        if self.is_empty() || other.is_empty() {
            return if self.is_empty() && other.is_empty() { 0.0 } else { f64::INFINITY };
        }
        directed(self, other).max(directed(other, self))
    }
}

/// Gaps of `set` inside `hull` longer than `tol`, annotated with the given
/// flat points (those not lying on a segment, within `tol`).
pub fn gaps_with_points(set: &IntervalSet, hull: Interval, points: &[f64], tol: f64) -> Vec<Gap> {
    let mut out = Vec::new();
    let mut cursor = hull.lo;
    let push = |lo: f64, hi: f64, out: &mut Vec<Gap>| {
        if hi - lo > tol {
            let flat_bands = points
                .iter()
                .copied()
                .filter(|&p| lo - tol <= p && p <= hi + tol && !set.segment_contains(p, tol))
                .collect();
            out.push(Gap { lo, hi, flat_bands });
        }
    };
    for s in set.segments() {
        if s.lo > cursor {
            push(cursor, s.lo.min(hull.hi), &mut out);
        }
        cursor = cursor.max(s.hi);
    }
    if hull.hi > cursor {
        push(cursor, hull.hi, &mut out);
    }
    out
}
