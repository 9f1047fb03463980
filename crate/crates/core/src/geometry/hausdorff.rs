//! Hausdorff distance between finite unions of segments.

use super::quad::golden_max;

pub type Segment = [[f64; 2]; 2];

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SegmentSet {
    segments: Vec<Segment>,
}

impl SegmentSet {
    pub fn new(segments: Vec<Segment>) -> Self {
        SegmentSet { segments }
    }

    pub fn from_polyline(points: &[[f64; 2]]) -> Self {
        if points.len() == 1 {
            return SegmentSet::new(vec![[points[0], points[0]]]);
        }
        SegmentSet::new(points.windows(2).map(|w| [w[0], w[1]]).collect())
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn scaled(&self, c: f64) -> SegmentSet {
        SegmentSet::new(self.segments.iter().map(|[p, q]| [[p[0] * c, p[1] * c], [q[0] * c, q[1] * c]]).collect())
    }

    fn diameter(&self) -> f64 {
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for s in &self.segments {
            for p in s {
                for k in 0..2 {
                    lo[k] = lo[k].min(p[k]);
                    hi[k] = hi[k].max(p[k]);
                }
            }
        }
        (hi[0] - lo[0]).hypot(hi[1] - lo[1])
    }

    pub fn distance_to_point(&self, p: [f64; 2]) -> f64 {
        self.segments.iter().map(|s| point_segment_distance(p, s)).fold(f64::INFINITY, f64::min)
    }
}

fn point_segment_distance(p: [f64; 2], [a, b]: &Segment) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    let t = if len2 == 0.0 { 0.0 } else { (((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / len2).clamp(0.0, 1.0) };
    (p[0] - a[0] - t * d[0]).hypot(p[1] - a[1] - t * d[1])
}

/// `sup_{p∈from} dist(p, to)`. The distance to a union of segments is not
/// unimodal along a segment, so each segment is sampled and the best sample
/// is polished by golden-section search in its neighbourhood.
pub fn directed_hausdorff(from: &SegmentSet, to: &SegmentSet) -> f64 {
    if from.is_empty() || to.is_empty() {
        return if from.is_empty() { 0.0 } else { f64::INFINITY };
    }
    let spacing = from.diameter().max(to.diameter()) / 512.0;
    let mut worst = 0.0f64;
    for seg @ [a, b] in from.segments() {
        if to.segments.iter().any(|t| t == seg || (t[0] == *b && t[1] == *a)) {
            continue;
        }
        let len = (b[0] - a[0]).hypot(b[1] - a[1]);
        let n = if spacing > 0.0 { ((len / spacing).ceil() as usize).clamp(2, 64) } else { 2 };
        let at = |t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
        let mut best = (0.0, f64::NEG_INFINITY);
        for i in 0..=n {
            let t = i as f64 / n as f64;
            let v = to.distance_to_point(at(t));
            if v > best.1 {
                best = (t, v);
            }
        }
        let step = 1.0 / n as f64;
        let (_, refined) =
            golden_max(|t| to.distance_to_point(at(t)), (best.0 - step).max(0.0), (best.0 + step).min(1.0));
        worst = worst.max(best.1).max(refined);
    }
    worst
}

pub fn hausdorff(a: &SegmentSet, b: &SegmentSet) -> f64 {
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}
