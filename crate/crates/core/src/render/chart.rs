use super::color::{Rgb, BLACK};
use super::svg::{points, Svg};
use crate::error::{Error, Result};
use crate::layout::format_tick;

/// A single-series line chart, used for k-selection curves.
#[derive(Debug, Clone, PartialEq)]
pub struct LineChart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub points: Vec<(f64, f64)>,
    pub width: f64,
    pub height: f64,
}

const MARGIN_LEFT: f64 = 60.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 45.0;
const FONT: f64 = 10.0;
const STROKE: Rgb = Rgb::new(0x21, 0x91, 0x8C);

fn span(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), v| {
        (l.min(v), h.max(v))
    });
    if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

pub fn render_line_chart(chart: &LineChart) -> Result<String> {
    if chart.points.is_empty() {
        return Err(Error::invalid("line chart", "no points"));
    }
    if chart
        .points
        .iter()
        .any(|(x, y)| !x.is_finite() || !y.is_finite())
    {
        return Err(Error::invalid("line chart", "non-finite point"));
    }
    let plot_w = chart.width - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = chart.height - MARGIN_TOP - MARGIN_BOTTOM;
    if !(plot_w > 0.0 && plot_h > 0.0) {
        return Err(Error::invalid(
            "line chart",
            format!("canvas {} x {} too small", chart.width, chart.height),
        ));
    }
    let (x0, x1) = span(chart.points.iter().map(|p| p.0));
    let (y0, y1) = span(chart.points.iter().map(|p| p.1));
    let px = |x: f64| MARGIN_LEFT + plot_w * (0.05 + 0.9 * (x - x0) / (x1 - x0));
    let py = |y: f64| MARGIN_TOP + plot_h * (0.95 - 0.9 * (y - y0) / (y1 - y0));

    let mut svg = Svg::new(chart.width, chart.height);
    svg.leaf(
        "rect",
        vec![
            ("class", "background".into()),
            ("fill", "#FFFFFF".into()),
            ("height", chart.height.into()),
            ("width", chart.width.into()),
            ("x", 0.0.into()),
            ("y", 0.0.into()),
        ],
    );
    let bottom = MARGIN_TOP + plot_h;
    let axis = |svg: &mut Svg, x1: f64, y1: f64, x2: f64, y2: f64| {
        svg.leaf(
            "line",
            vec![
                ("class", "axis-line".into()),
                ("stroke", BLACK.to_hex().into()),
                ("stroke-width", 1.0.into()),
                ("x1", x1.into()),
                ("x2", x2.into()),
                ("y1", y1.into()),
                ("y2", y2.into()),
            ],
        );
    };
    let label = |svg: &mut Svg, x: f64, y: f64, anchor: &str, rotate: bool, text: &str| {
        let mut attrs = vec![
            ("dominant-baseline", "central".into()),
            ("fill", BLACK.to_hex().into()),
            ("font-size", FONT.into()),
            ("text-anchor", anchor.to_string().into()),
            ("x", x.into()),
            ("y", y.into()),
        ];
        if rotate {
            attrs.push((
                "transform",
                format!(
                    "rotate(-90.0000 {} {})",
                    super::svg::num(x),
                    super::svg::num(y)
                )
                .into(),
            ));
        }
        svg.text(attrs, text);
    };
    axis(&mut svg, MARGIN_LEFT, bottom, MARGIN_LEFT + plot_w, bottom);
    axis(&mut svg, MARGIN_LEFT, MARGIN_TOP, MARGIN_LEFT, bottom);
    for &(x, _) in &chart.points {
        axis(&mut svg, px(x), bottom, px(x), bottom + 4.0);
        label(
            &mut svg,
            px(x),
            bottom + 12.0,
            "middle",
            false,
            &format_tick(x),
        );
    }
    for y in [y0, (y0 + y1) / 2.0, y1] {
        axis(&mut svg, MARGIN_LEFT - 4.0, py(y), MARGIN_LEFT, py(y));
        label(
            &mut svg,
            MARGIN_LEFT - 6.0,
            py(y),
            "end",
            false,
            &format_tick(y),
        );
    }
    label(
        &mut svg,
        MARGIN_LEFT + plot_w / 2.0,
        chart.height - 12.0,
        "middle",
        false,
        &chart.x_label,
    );
    label(
        &mut svg,
        14.0,
        MARGIN_TOP + plot_h / 2.0,
        "middle",
        true,
        &chart.y_label,
    );
    label(
        &mut svg,
        chart.width / 2.0,
        MARGIN_TOP / 2.0,
        "middle",
        false,
        &chart.title,
    );

    let pts: Vec<(f64, f64)> = chart.points.iter().map(|&(x, y)| (px(x), py(y))).collect();
    if pts.len() > 1 {
        svg.leaf(
            "polyline",
            vec![
                ("class", "line".into()),
                ("fill", "none".into()),
                ("points", points(&pts).into()),
                ("stroke", STROKE.to_hex().into()),
                ("stroke-width", 1.5.into()),
            ],
        );
    }
    for (x, y) in pts {
        svg.leaf(
            "circle",
            vec![
                ("class", "point".into()),
                ("cx", x.into()),
                ("cy", y.into()),
                ("fill", STROKE.to_hex().into()),
                ("r", 3.0.into()),
            ],
        );
    }
    Ok(svg.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_circle_per_point() {
        let chart = LineChart {
            title: "t".into(),
            x_label: "k".into(),
            y_label: "J".into(),
            points: vec![(2.0, 0.5), (3.0, 0.9), (4.0, 0.7)],
            width: 400.0,
            height: 300.0,
        };
        let svg = render_line_chart(&chart).unwrap();
        assert_eq!(svg.matches("<circle").count(), 3);
        assert_eq!(svg.matches("<polyline").count(), 1);
    }

    #[test]
    fn rejects_empty() {
        let chart = LineChart {
            title: String::new(),
            x_label: String::new(),
            y_label: String::new(),
            points: vec![],
            width: 400.0,
            height: 300.0,
        };
        assert!(render_line_chart(&chart).is_err());
    }
}
