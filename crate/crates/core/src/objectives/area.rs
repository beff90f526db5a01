use crate::oracle::SetFunction;
use crate::set::{ElementId, GroundSet};

/// Axis-aligned rectangle `[x0, x1] × [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Rect {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        assert!(x0 <= x1 && y0 <= y1, "degenerate rectangle");
        Rect { x0, y0, x1, y1 }
    }

    pub fn area(&self) -> f64 {
        (self.x1 - self.x0) * (self.y1 - self.y0)
    }
}

/// `f(S)` = area of the union of the rectangles in `S`, computed exactly by
/// coordinate compression.
#[derive(Debug, Clone)]
pub struct AreaCoverageObjective {
    rects: Vec<Rect>,
    labels: Option<Vec<String>>,
}

impl AreaCoverageObjective {
    pub fn new(rects: Vec<Rect>) -> Self {
        AreaCoverageObjective {
            rects,
            labels: None,
        }
    }

    pub fn labelled(rects: Vec<(String, Rect)>) -> Self {
        let (labels, rects) = rects.into_iter().unzip();
        AreaCoverageObjective {
            rects,
            labels: Some(labels),
        }
    }

    pub fn ground(&self) -> GroundSet {
        match &self.labels {
            Some(l) => GroundSet::with_labels(l.clone()),
            None => GroundSet::new(self.rects.len()),
        }
        .expect("non-empty rectangle list")
    }

    pub fn rect(&self, e: ElementId) -> Rect {
        self.rects[e.index()]
    }
}

/// Exact area of a union of rectangles.
pub fn union_area(rects: &[Rect]) -> f64 {
    if rects.is_empty() {
        return 0.0;
    }
    let mut xs: Vec<f64> = rects.iter().flat_map(|r| [r.x0, r.x1]).collect();
    let mut ys: Vec<f64> = rects.iter().flat_map(|r| [r.y0, r.y1]).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    ys.sort_by(f64::total_cmp);
    ys.dedup();
    let mut area = 0.0;
    for wx in xs.windows(2) {
        for wy in ys.windows(2) {
            let (cx, cy) = (0.5 * (wx[0] + wx[1]), 0.5 * (wy[0] + wy[1]));
            if rects
                .iter()
                .any(|r| r.x0 <= cx && cx <= r.x1 && r.y0 <= cy && cy <= r.y1)
            {
                area += (wx[1] - wx[0]) * (wy[1] - wy[0]);
            }
        }
    }
    area
}

impl SetFunction for AreaCoverageObjective {
    fn ground_size(&self) -> usize {
        self.rects.len()
    }

    fn eval(&self, set: &[ElementId]) -> f64 {
        let rs: Vec<Rect> = set.iter().map(|e| self.rects[e.index()]).collect();
        union_area(&rs)
    }
}

/// The six-rectangle instance on which the best-augmentation value is not submodular.
///
/// Points are `A=(0,0) B=(0.25,0) C=(1,0) D=(1,1) E=(1,2) F=(1,3)` on the right
/// and `J=(0,1) I=(0.25,1) H=(0.25,2) G=(0.25,3)`, so that `AC = CD = DE = EF = 1`
/// and `BC = 0.75`. Each rectangle is named by its corners.
pub fn build_counterexample() -> AreaCoverageObjective {
    let r = |name: &str, x0, y0, x1, y1| (name.to_string(), Rect::new(x0, y0, x1, y1));
    AreaCoverageObjective::labelled(vec![
        r("ABIJ", 0.0, 0.0, 0.25, 1.0),
        r("BCDI", 0.25, 0.0, 1.0, 1.0),
        r("ACDJ", 0.0, 0.0, 1.0, 1.0),
        r("IDEH", 0.25, 1.0, 1.0, 2.0),
        r("HEFG", 0.25, 2.0, 1.0, 3.0),
        r("BCEH", 0.25, 0.0, 1.0, 2.0),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::ElementId;

    fn ids(f: &AreaCoverageObjective, names: &[&str]) -> Vec<ElementId> {
        let g = f.ground();
        names.iter().map(|n| g.find(n).unwrap()).collect()
    }

    #[test]
    fn single_rectangle_areas() {
        let f = build_counterexample();
        let areas: Vec<f64> = (0..6).map(|i| f.rect(ElementId(i)).area()).collect();
        assert_eq!(areas, vec![0.25, 0.75, 1.0, 0.75, 0.75, 1.5]);
        assert_eq!(f.eval(&ids(&f, &["BCEH"])), 1.5);
    }

    #[test]
    fn union_areas_match_the_figure() {
        let f = build_counterexample();
        assert_eq!(f.eval(&ids(&f, &["ACDJ", "IDEH"])), 1.75);
        assert_eq!(f.eval(&ids(&f, &["IDEH", "ACDJ", "HEFG"])), 2.5);
        assert_eq!(f.eval(&ids(&f, &["ACDJ", "BCEH"])), 1.75);
        assert_eq!(f.eval(&ids(&f, &["ABIJ", "BCDI"])), 1.0);
        assert_eq!(f.eval(&[]), 0.0);
    }

    #[test]
    fn overlapping_union() {
        let rs = [Rect::new(0.0, 0.0, 2.0, 2.0), Rect::new(1.0, 1.0, 3.0, 3.0)];
        assert_eq!(union_area(&rs), 7.0);
    }
}
