//! Self-contained SVG line charts, no dependencies.

use crate::error::{Error, Result};
use crate::table::format_significant;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 160.0;
const MARGIN_TOP: f64 = 50.0;
const MARGIN_BOTTOM: f64 = 60.0;

const COLORS: &[&str] = &["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// A named polyline.
#[derive(Debug, Clone)]
pub struct PlotSeries {
    pub name: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl PlotSeries {
    pub fn new(name: &str, x: Vec<f64>, y: Vec<f64>) -> Self {
        PlotSeries { name: name.to_string(), x, y }
    }
}

/// A labeled marker.
#[derive(Debug, Clone)]
pub struct PlotPoint {
    pub name: String,
    pub x: f64,
    pub y: f64,
}

impl PlotPoint {
    pub fn new(name: &str, x: f64, y: f64) -> Self {
        PlotPoint { name: name.to_string(), x, y }
    }
}

struct Axes {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Axes {
    fn from_data(series: &[PlotSeries], points: &[PlotPoint]) -> Result<Axes> {
        let mut x_min = f64::INFINITY;
        let mut x_max = f64::NEG_INFINITY;
        let mut y_min = f64::INFINITY;
        let mut y_max = f64::NEG_INFINITY;
        let mut any = false;
        for s in series {
            for (&x, &y) in s.x.iter().zip(&s.y) {
                x_min = x_min.min(x);
                x_max = x_max.max(x);
                y_min = y_min.min(y);
                y_max = y_max.max(y);
                any = true;
            }
        }
        for p in points {
            x_min = x_min.min(p.x);
            x_max = x_max.max(p.x);
            y_min = y_min.min(p.y);
            y_max = y_max.max(p.y);
            any = true;
        }
        if !any {
            return Err(Error::EmptySeries);
        }
        // 5% data margins; degenerate spans widen to a unit box.
        let x_span = if x_max > x_min { x_max - x_min } else { 1.0 };
        let y_span = if y_max > y_min { y_max - y_min } else { 1.0 };
        Ok(Axes {
            x_min: x_min - 0.05 * x_span,
            x_max: x_max + 0.05 * x_span,
            y_min: y_min - 0.05 * y_span,
            y_max: y_max + 0.05 * y_span,
        })
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN_LEFT + (x - self.x_min) / (self.x_max - self.x_min) * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN_BOTTOM
            - (y - self.y_min) / (self.y_max - self.y_min) * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    }
}

fn fmt_coord(v: f64) -> String {
    format_significant(v, 8)
}

fn tick_label(v: f64) -> String {
    format_significant(v, 4)
}

/// Render a chart with polylines, optional labeled markers, and a legend.
pub fn line_chart_with_points(
    series: &[PlotSeries],
    points: &[PlotPoint],
    title: &str,
    x_label: &str,
    y_label: &str,
) -> Result<String> {
    for s in series {
        if s.x.is_empty() || s.x.len() != s.y.len() {
            return Err(Error::EmptySeries);
        }
    }
    if series.is_empty() && points.is_empty() {
        return Err(Error::EmptySeries);
    }
    let axes = Axes::from_data(series, points)?;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"18\">{}</text>\n",
        WIDTH / 2.0,
        title
    ));

    // Axis frame.
    let x0 = MARGIN_LEFT;
    let x1 = WIDTH - MARGIN_RIGHT;
    let y0 = HEIGHT - MARGIN_BOTTOM;
    let y1 = MARGIN_TOP;
    svg.push_str(&format!(
        "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y0}\" stroke=\"black\"/>\n"
    ));
    svg.push_str(&format!(
        "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"{y1}\" stroke=\"black\"/>\n"
    ));

    // Ticks.
    for i in 0..=5 {
        let fx = axes.x_min + (axes.x_max - axes.x_min) * i as f64 / 5.0;
        let px = axes.px(fx);
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"{y0}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
            fmt_coord(px),
            fmt_coord(px),
            y0 + 6.0
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
            fmt_coord(px),
            y0 + 22.0,
            tick_label(fx)
        ));
        let fy = axes.y_min + (axes.y_max - axes.y_min) * i as f64 / 5.0;
        let py = axes.py(fy);
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{x0}\" y2=\"{}\" stroke=\"black\"/>\n",
            x0 - 6.0,
            fmt_coord(py),
            fmt_coord(py)
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
            x0 - 10.0,
            fmt_coord(py + 4.0),
            tick_label(fy)
        ));
    }

    // Axis labels.
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">{}</text>\n",
        (x0 + x1) / 2.0,
        HEIGHT - 15.0,
        x_label
    ));
    svg.push_str(&format!(
        "<text x=\"20\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" transform=\"rotate(-90 20 {})\">{}</text>\n",
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0,
        y_label
    ));

    // Series.
    for (i, s) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let pts: Vec<String> = s
            .x
            .iter()
            .zip(&s.y)
            .map(|(&x, &y)| format!("{},{}", fmt_coord(axes.px(x)), fmt_coord(axes.py(y))))
            .collect();
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"2\" points=\"{}\"/>\n",
            pts.join(" ")
        ));
    }

    // Markers.
    for (i, p) in points.iter().enumerate() {
        let color = COLORS[(series.len() + i) % COLORS.len()];
        let cx = axes.px(p.x);
        let cy = axes.py(p.y);
        svg.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"5\" fill=\"{color}\"/>\n",
            fmt_coord(cx),
            fmt_coord(cy)
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
            fmt_coord(cx + 8.0),
            fmt_coord(cy - 6.0),
            p.name
        ));
    }

    // Legend.
    let legend_x = WIDTH - MARGIN_RIGHT + 15.0;
    let mut legend_y = MARGIN_TOP + 10.0;
    for (i, s) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        svg.push_str(&format!(
            "<line x1=\"{legend_x}\" y1=\"{legend_y}\" x2=\"{}\" y2=\"{legend_y}\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
            legend_x + 24.0
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
            legend_x + 30.0,
            legend_y + 4.0,
            s.name
        ));
        legend_y += 20.0;
    }
    for (i, p) in points.iter().enumerate() {
        let color = COLORS[(series.len() + i) % COLORS.len()];
        svg.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{legend_y}\" r=\"5\" fill=\"{color}\"/>\n",
            legend_x + 12.0
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
            legend_x + 30.0,
            legend_y + 4.0,
            p.name
        ));
        legend_y += 20.0;
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Render one or more series as a plain line chart.
pub fn line_chart(series: &[PlotSeries], title: &str, x_label: &str, y_label: &str) -> Result<String> {
    line_chart_with_points(series, &[], title, x_label, y_label)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_series_has_one_polyline() {
        let s = PlotSeries::new("s", vec![0.0, 1.0], vec![0.0, 1.0]);
        let svg = line_chart(&[s], "t", "x", "y").unwrap();
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn empty_series_is_an_error() {
        assert!(line_chart(&[], "t", "x", "y").is_err());
        let s = PlotSeries::new("s", vec![], vec![]);
        assert!(line_chart(&[s], "t", "x", "y").is_err());
    }

    #[test]
    fn points_render_as_circles() {
        let budget = PlotSeries::new("budget", vec![0.0, 24.0], vec![24.0, 0.0]);
        let pts = vec![
            PlotPoint::new("naive", 12.0, 12.0),
            PlotPoint::new("nash", 14.0, 10.0),
            PlotPoint::new("efficient", 18.0, 6.0),
        ];
        let svg = line_chart_with_points(&[budget], &pts, "t", "L", "C").unwrap();
        // 3 markers + 3 legend swatches.
        assert_eq!(svg.matches("<circle").count(), 6);
        assert!(svg.contains("naive"));
    }

    #[test]
    fn deterministic_output() {
        let s = PlotSeries::new("s", vec![0.0, 0.5, 1.0], vec![0.1, 0.9, 0.4]);
        let a = line_chart(std::slice::from_ref(&s), "t", "x", "y").unwrap();
        let b = line_chart(&[s], "t", "x", "y").unwrap();
        assert_eq!(a, b);
    }
}
