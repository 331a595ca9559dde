//! Minimal SVG rendering of a scene: characteristic-area boundary as a thin
//! outline (component areas in two tones when a union is drawn), tree edges
//! at medium weight, the minimal inner spanning tree as a thick blue
//! polyline, terminals as labelled dots.

use std::fmt::Write as _;

use chardom_core::area::Region;
use chardom_core::geom::Point;
use chardom_core::spanning::MistResult;
use chardom_core::tree::SteinerTree;

const AREA_FILLS: [&str; 2] = ["#aec6e8", "#b5d9a8"];
const AREA_STROKE: &str = "#50586c";
const TREE_STROKE: &str = "#444444";
const MIST_STROKE: &str = "#1f62c4";
const TERMINAL_FILL: &str = "#202020";
const STEINER_FILL: &str = "#a03030";

struct Canvas {
    min_x: f64,
    min_y: f64,
    max_x: f64,
    max_y: f64,
    width: f64,
}

impl Canvas {
    fn fit(points: impl Iterator<Item = Point>) -> Canvas {
        let mut min_x = f64::INFINITY;
        let mut min_y = f64::INFINITY;
        let mut max_x = f64::NEG_INFINITY;
        let mut max_y = f64::NEG_INFINITY;
        for p in points {
            min_x = min_x.min(p.x);
            min_y = min_y.min(p.y);
            max_x = max_x.max(p.x);
            max_y = max_y.max(p.y);
        }
        if !min_x.is_finite() {
            (min_x, min_y, max_x, max_y) = (0.0, 0.0, 1.0, 1.0);
        }
        let pad = 0.08 * ((max_x - min_x).max(max_y - min_y)).max(1e-6);
        Canvas {
            min_x: min_x - pad,
            min_y: min_y - pad,
            max_x: max_x + pad,
            max_y: max_y + pad,
            width: 800.0,
        }
    }

    fn scale(&self) -> f64 {
        self.width / (self.max_x - self.min_x)
    }

    fn height(&self) -> f64 {
        (self.max_y - self.min_y) * self.scale()
    }

    /// Scene coordinates to SVG pixels (y grows downward in SVG).
    fn map(&self, p: Point) -> (f64, f64) {
        let s = self.scale();
        ((p.x - self.min_x) * s, (self.max_y - p.y) * s)
    }
}

fn polygon_points(canvas: &Canvas, pts: &[Point]) -> String {
    let mut out = String::new();
    for p in pts {
        let (x, y) = canvas.map(*p);
        let _ = write!(out, "{x:.2},{y:.2} ");
    }
    out.trim_end().to_string()
}

pub fn render_svg(tree: &SteinerTree, region: Option<&Region>, mist: Option<&MistResult>) -> String {
    let mut all_points: Vec<Point> = tree.positions();
    if let Some(region) = region {
        for area in &region.areas {
            all_points.extend_from_slice(&area.walk);
        }
    }
    let canvas = Canvas::fit(all_points.into_iter());
    let stroke_w = 2.0;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0}\" height=\"{:.0}\" viewBox=\"0 0 {:.0} {:.0}\">",
        canvas.width,
        canvas.height(),
        canvas.width,
        canvas.height()
    );
    let _ = writeln!(svg, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");

    if let Some(region) = region {
        for (i, area) in region.areas.iter().enumerate() {
            let fill = AREA_FILLS[i % AREA_FILLS.len()];
            if area.walk.len() >= 3 {
                let _ = writeln!(
                    svg,
                    "<polygon points=\"{}\" fill=\"{fill}\" fill-opacity=\"0.45\" stroke=\"{AREA_STROKE}\" stroke-width=\"{:.1}\"/>",
                    polygon_points(&canvas, &area.walk),
                    stroke_w * 0.5
                );
            } else if area.walk.len() == 2 {
                let (x1, y1) = canvas.map(area.walk[0]);
                let (x2, y2) = canvas.map(area.walk[1]);
                let _ = writeln!(
                    svg,
                    "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"{AREA_STROKE}\" stroke-width=\"{:.1}\"/>",
                    stroke_w * 0.5
                );
            }
        }
    }

    for &(u, v) in &tree.edges {
        let (x1, y1) = canvas.map(tree.vertex(u));
        let (x2, y2) = canvas.map(tree.vertex(v));
        let _ = writeln!(
            svg,
            "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"{TREE_STROKE}\" stroke-width=\"{stroke_w:.1}\"/>"
        );
    }

    if let Some(mist) = mist {
        for &(i, j) in &mist.edges {
            let (x1, y1) = canvas.map(tree.terminals[i]);
            let (x2, y2) = canvas.map(tree.terminals[j]);
            let _ = writeln!(
                svg,
                "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"{MIST_STROKE}\" stroke-width=\"{:.1}\" stroke-linecap=\"round\"/>",
                stroke_w * 2.5
            );
        }
    }

    for (i, p) in tree.terminals.iter().enumerate() {
        let (x, y) = canvas.map(*p);
        let _ = writeln!(
            svg,
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"5\" fill=\"{TERMINAL_FILL}\"/>"
        );
        let _ = writeln!(
            svg,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"14\" font-family=\"sans-serif\">{i}</text>",
            x + 7.0,
            y - 7.0
        );
    }
    for p in &tree.steiner_points {
        let (x, y) = canvas.map(*p);
        let _ = writeln!(
            svg,
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3.5\" fill=\"{STEINER_FILL}\"/>"
        );
    }

    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use chardom_core::geom::Tolerance;

    #[test]
    fn renders_wellformed_svg() {
        let tree = SteinerTree::new(
            vec![
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(0.5, 0.8660254037844386),
            ],
            vec![Point::new(0.5, 0.28867513459481287)],
            vec![(0, 3), (1, 3), (2, 3)],
        )
        .unwrap();
        let tol = Tolerance::default();
        let area = chardom_core::area::char_area_full(&tree, &tol).unwrap();
        let region = Region::single(area);
        let mist = chardom_core::spanning::mist(&tree.terminals, &region, &tol);
        let svg = render_svg(&tree, Some(&region), Some(&mist));
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert!(svg.contains("<polygon"));
        assert!(svg.matches("<circle").count() >= 4);
    }
}
