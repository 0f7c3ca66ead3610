use serde::Serialize;

use super::GeometryError;

/// Axis-parallel rectangle `[x1, x2] × [y1, y2]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Brick {
    pub x1: f64,
    pub x2: f64,
    pub y1: f64,
    pub y2: f64,
}

impl Brick {
    pub fn new(x1: f64, x2: f64, y1: f64, y2: f64) -> Result<Self, GeometryError> {
        if !(x1 < x2 && y1 < y2) || ![x1, x2, y1, y2].iter().all(|v| v.is_finite()) {
            return Err(GeometryError::BadBrick { index: 0, message: format!("[{x1},{x2}]x[{y1},{y2}] is not a proper brick") });
        }
        Ok(Brick { x1, x2, y1, y2 })
    }

    pub fn width(&self) -> f64 {
        self.x2 - self.x1
    }

    pub fn height(&self) -> f64 {
        self.y2 - self.y1
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn sum(&self, o: &Brick) -> Brick {
        Brick { x1: self.x1 + o.x1, x2: self.x2 + o.x2, y1: self.y1 + o.y1, y2: self.y2 + o.y2 }
    }

    fn shifted(&self, axis: Axis, d: f64) -> Brick {
        match axis {
            Axis::X => Brick { x1: self.x1 + d, x2: self.x2 + d, ..*self },
            Axis::Y => Brick { y1: self.y1 + d, y2: self.y2 + d, ..*self },
        }
    }

    fn span(&self, axis: Axis) -> (f64, f64) {
        match axis {
            Axis::X => (self.x1, self.x2),
            Axis::Y => (self.y1, self.y2),
        }
    }

    /// Parts below and above the line `axis = c`.
    fn split(&self, axis: Axis, c: f64) -> (Option<Brick>, Option<Brick>) {
        let (lo, hi) = self.span(axis);
        let clip = |a: f64, b: f64| {
            (a < b).then(|| match axis {
                Axis::X => Brick { x1: a, x2: b, ..*self },
                Axis::Y => Brick { y1: a, y2: b, ..*self },
            })
        };
        (clip(lo, hi.min(c)), clip(lo.max(c), hi))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
}

/// A finite union of bricks with disjoint interiors.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BrickRegion {
    pub bricks: Vec<Brick>,
}

impl BrickRegion {
    pub fn new(bricks: Vec<Brick>) -> Result<Self, GeometryError> {
        if bricks.is_empty() {
            return Err(GeometryError::EmptyRegion);
        }
        for (i, a) in bricks.iter().enumerate() {
            if !(a.x1 < a.x2 && a.y1 < a.y2) {
                return Err(GeometryError::BadBrick { index: i, message: "expected x1 < x2 and y1 < y2".into() });
            }
            for (j, b) in bricks.iter().enumerate().skip(i + 1) {
                if a.x1 < b.x2 && b.x1 < a.x2 && a.y1 < b.y2 && b.y1 < a.y2 {
                    return Err(GeometryError::BadBrick { index: j, message: format!("overlaps brick {i}") });
                }
            }
        }
        Ok(BrickRegion { bricks })
    }

    pub fn single(b: Brick) -> Self {
        BrickRegion { bricks: vec![b] }
    }

    pub fn len(&self) -> usize {
        self.bricks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bricks.is_empty()
    }

    pub fn area(&self) -> f64 {
        self.bricks.iter().map(Brick::area).sum()
    }

    /// True when the region is, as a set, a single rectangle.
    pub fn is_rectangle(&self, tol: f64) -> bool {
        let bb = self.bounding_box();
        (bb.area() - self.area()).abs() <= tol * bb.area().max(1.0)
    }

    pub fn bounding_box(&self) -> Brick {
        self.bricks.iter().skip(1).fold(self.bricks[0], |a, b| Brick { x1: a.x1.min(b.x1), x2: a.x2.max(b.x2), y1: a.y1.min(b.y1), y2: a.y2.max(b.y2) })
    }

    fn shifted(&self, axis: Axis, d: f64) -> Self {
        BrickRegion { bricks: self.bricks.iter().map(|b| b.shifted(axis, d)).collect() }
    }

    fn split(&self, axis: Axis, c: f64) -> (BrickRegion, BrickRegion) {
        let (mut lo, mut hi) = (Vec::new(), Vec::new());
        for b in &self.bricks {
            let (l, h) = b.split(axis, c);
            lo.extend(l);
            hi.extend(h);
        }
        (BrickRegion { bricks: lo }, BrickRegion { bricks: hi })
    }

    /// Area below the line `axis = c`.
    fn area_below(&self, axis: Axis, c: f64) -> f64 {
        self.bricks.iter().map(|b| b.split(axis, c).0.map_or(0.0, |p| p.area())).sum()
    }
}

/// Area of a union of possibly overlapping bricks, by coordinate compression.
pub fn brick_area(bricks: &[Brick]) -> f64 {
    let mut xs: Vec<f64> = bricks.iter().flat_map(|b| [b.x1, b.x2]).collect();
    let mut ys: Vec<f64> = bricks.iter().flat_map(|b| [b.y1, b.y2]).collect();
    for v in [&mut xs, &mut ys] {
        v.sort_by(f64::total_cmp);
        v.dedup();
    }
    let (nx, ny) = (xs.len().saturating_sub(1), ys.len().saturating_sub(1));
    let mut covered = vec![false; nx * ny];
    let index = |v: &[f64], x: f64| v.partition_point(|&t| t < x);
    for b in bricks {
        for i in index(&xs, b.x1)..index(&xs, b.x2) {
            for j in index(&ys, b.y1)..index(&ys, b.y2) {
                covered[i * ny + j] = true;
            }
        }
    }
    let mut area = 0.0;
    for i in 0..nx {
        for j in 0..ny {
            if covered[i * ny + j] {
                area += (xs[i + 1] - xs[i]) * (ys[j + 1] - ys[j]);
            }
        }
    }
    area
}

/// Pairwise brick sums; their union is `A + B`.
pub fn brick_minkowski_sum(a: &BrickRegion, b: &BrickRegion) -> Vec<Brick> {
    a.bricks.iter().flat_map(|p| b.bricks.iter().map(move |q| p.sum(q))).collect()
}

pub const BM_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct BmReport {
    pub area_a: f64,
    pub area_b: f64,
    pub area_sum: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// `sqrt(area(A+B)) - sqrt(area(A)) - sqrt(area(B))`.
    pub slack: f64,
    pub equality: bool,
    pub holds: bool,
}

pub fn bm_verify(a: &BrickRegion, b: &BrickRegion) -> Result<BmReport, GeometryError> {
    if a.is_empty() || b.is_empty() {
        return Err(GeometryError::EmptyRegion);
    }
    let area_a = a.area();
    let area_b = b.area();
    let area_sum = brick_area(&brick_minkowski_sum(a, b));
    Ok(bm_report(area_a, area_b, area_sum))
}

fn bm_report(area_a: f64, area_b: f64, area_sum: f64) -> BmReport {
    let lhs = area_sum.sqrt();
    let rhs = area_a.sqrt() + area_b.sqrt();
    let slack = lhs - rhs;
    let tol = BM_TOL * lhs.max(1.0);
    BmReport { area_a, area_b, area_sum, lhs, rhs, slack, equality: slack.abs() <= tol, holds: slack >= -tol }
}

/// One node of the splitting recursion. Leaves are pairs of single bricks.
#[derive(Clone, Debug, Serialize)]
pub struct SplitNode {
    pub depth: usize,
    pub bricks_a: usize,
    pub bricks_b: usize,
    pub report: BmReport,
    pub split: Option<SplitStep>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitStep {
    pub axis: Axis,
    /// Which region the line separates.
    pub separates: char,
    pub theta: f64,
    /// `area(A+B) >= area(A_1+B_1) + area(A_2+B_2)`.
    pub area_sum: f64,
    pub parts_sum: f64,
    pub superadditive: bool,
    pub children: [Box<SplitNode>; 2],
}

impl SplitNode {
    pub fn nodes(&self) -> usize {
        1 + self.split.as_ref().map_or(0, |s| s.children.iter().map(|c| c.nodes()).sum())
    }

    pub fn depth(&self) -> usize {
        self.split.as_ref().map_or(0, |s| 1 + s.children.iter().map(|c| c.depth()).max().unwrap_or(0))
    }

    pub fn all_hold(&self) -> bool {
        self.report.holds && self.split.as_ref().map_or(true, |s| s.superadditive && s.children.iter().all(|c| c.all_hold()))
    }
}

/// Replays the induction: cut the region with more than one brick along an
/// axis line, slide the other region so the line divides its area in the
/// same ratio, and recurse on both halves.
pub fn bm_split_trace(a: &BrickRegion, b: &BrickRegion) -> Result<SplitNode, GeometryError> {
    if a.is_empty() || b.is_empty() {
        return Err(GeometryError::EmptyRegion);
    }
    Ok(trace(a.clone(), b.clone(), 0))
}

fn trace(a: BrickRegion, b: BrickRegion, depth: usize) -> SplitNode {
    let report = bm_verify(&a, &b).expect("nonempty regions");
    let (bricks_a, bricks_b) = (a.len(), b.len());
    let swap = a.len() < 2;
    if a.len() < 2 && b.len() < 2 {
        return SplitNode { depth, bricks_a, bricks_b, report, split: None };
    }
    let (cut, other) = if swap { (&b, &a) } else { (&a, &b) };
    let (axis, c) = choose_line(cut);
    let cut = cut.shifted(axis, -c);
    let (c1, c2) = cut.split(axis, 0.0);
    let theta = c1.area() / cut.area();
    let target = theta * other.area();
    let line = solve_ratio(other, axis, target);
    let other = other.shifted(axis, -line);
    let (o1, o2) = other.split(axis, 0.0);
    if o1.is_empty() || o2.is_empty() {
        return SplitNode { depth, bricks_a, bricks_b, report, split: None };
    }
    let ((a1, b1), (a2, b2)) = if swap { ((o1, c1), (o2, c2)) } else { ((c1, o1), (c2, o2)) };
    let parts_sum = brick_area(&brick_minkowski_sum(&a1, &b1)) + brick_area(&brick_minkowski_sum(&a2, &b2));
    let superadditive = report.area_sum >= parts_sum - BM_TOL * report.area_sum.max(1.0);
    let children = [Box::new(trace(a1, b1, depth + 1)), Box::new(trace(a2, b2, depth + 1))];
    SplitNode {
        depth,
        bricks_a,
        bricks_b,
        report: report.clone(),
        split: Some(SplitStep { axis, separates: if swap { 'B' } else { 'A' }, theta, area_sum: report.area_sum, parts_sum, superadditive, children }),
    }
}

/// An axis line leaving whole bricks on both sides. Prefers a line that
/// cuts no brick; otherwise takes the smallest upper edge, which still
/// leaves strictly fewer bricks on each side.
fn choose_line(r: &BrickRegion) -> (Axis, f64) {
    let mut fallback = None;
    for axis in [Axis::X, Axis::Y] {
        let spans: Vec<(f64, f64)> = r.bricks.iter().map(|b| b.span(axis)).collect();
        let mut ends: Vec<f64> = spans.iter().map(|s| s.1).collect();
        ends.sort_by(f64::total_cmp);
        for &c in &ends {
            let below = spans.iter().any(|s| s.1 <= c);
            let above = spans.iter().any(|s| s.0 >= c);
            let crossing = spans.iter().any(|s| s.0 < c && c < s.1);
            if below && above && !crossing {
                return (axis, c);
            }
            if below && above && fallback.is_none() {
                fallback = Some((axis, c));
            }
        }
    }
    fallback.expect("disjoint bricks are separated along some axis")
}

/// The line `axis = c` below which `r` has area `target`, snapped to a brick
/// edge when within rounding of one so that no sliver bricks appear.
fn solve_ratio(r: &BrickRegion, axis: Axis, target: f64) -> f64 {
    let mut knots: Vec<f64> = r.bricks.iter().flat_map(|b| { let (p, q) = b.span(axis); [p, q] }).collect();
    knots.sort_by(f64::total_cmp);
    knots.dedup();
    let scale = knots.iter().fold(1.0f64, |a, x| a.max(x.abs()));
    for w in knots.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let (fa, fb) = (r.area_below(axis, lo), r.area_below(axis, hi));
        if fb >= target {
            let c = if fb > fa { lo + (target - fa) / (fb - fa) * (hi - lo) } else { lo };
            return if c - lo <= 1e-12 * scale { lo } else if hi - c <= 1e-12 * scale { hi } else { c };
        }
    }
    *knots.last().expect("nonempty region")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brick(x1: f64, x2: f64, y1: f64, y2: f64) -> Brick {
        Brick::new(x1, x2, y1, y2).unwrap()
    }

    fn unit() -> BrickRegion {
        BrickRegion::single(brick(0.0, 1.0, 0.0, 1.0))
    }

    fn l_shape() -> BrickRegion {
        BrickRegion::new(vec![brick(0.0, 2.0, 0.0, 1.0), brick(0.0, 1.0, 1.0, 2.0)]).unwrap()
    }

    #[test]
    fn union_area_counts_overlap_once() {
        assert_eq!(brick_area(&[brick(0.0, 2.0, 0.0, 2.0), brick(1.0, 3.0, 1.0, 3.0)]), 7.0);
        assert_eq!(brick_area(&brick_minkowski_sum(&l_shape(), &unit())), 8.0);
    }

    #[test]
    fn unit_squares_give_equality() {
        let r = bm_verify(&unit(), &unit()).unwrap();
        assert_eq!(r.lhs, 2.0);
        assert!(r.equality && r.holds);
    }

    #[test]
    fn single_bricks() {
        let r = bm_verify(&BrickRegion::single(brick(0.0, 1.0, 0.0, 1.0)), &BrickRegion::single(brick(0.0, 2.0, 0.0, 3.0))).unwrap();
        assert!((r.lhs - 12f64.sqrt()).abs() < 1e-12);
        assert!((r.rhs - (1.0 + 6f64.sqrt())).abs() < 1e-12);
        assert!(r.holds && !r.equality);
    }

    #[test]
    fn l_shape_trace() {
        let t = bm_split_trace(&l_shape(), &unit()).unwrap();
        assert!(t.all_hold());
        assert_eq!(t.depth(), 1);
        assert_eq!(t.nodes(), 3);
        let s = t.split.as_ref().unwrap();
        assert!((s.theta - 2.0 / 3.0).abs() < 1e-12 || (s.theta - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn pinwheel_needs_a_cutting_line() {
        let p = BrickRegion::new(vec![
            brick(0.0, 2.0, 0.0, 1.0),
            brick(2.0, 3.0, 0.0, 2.0),
            brick(1.0, 3.0, 2.0, 3.0),
            brick(0.0, 1.0, 1.0, 3.0),
            brick(1.0, 2.0, 1.0, 2.0),
        ])
        .unwrap();
        assert!((p.area() - 9.0).abs() < 1e-12);
        let t = bm_split_trace(&p, &l_shape()).unwrap();
        assert!(t.all_hold());
        assert!(bm_verify(&p, &unit()).unwrap().equality);
    }

    #[test]
    fn rejects_overlaps() {
        assert!(BrickRegion::new(vec![brick(0.0, 2.0, 0.0, 2.0), brick(1.0, 3.0, 1.0, 3.0)]).is_err());
        assert!(BrickRegion::new(vec![]).is_err());
        assert!(Brick::new(1.0, 1.0, 0.0, 1.0).is_err());
    }
}
