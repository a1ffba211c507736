use std::str::FromStr;

use super::color::{ColorScale, Rgb, BLACK};
use super::stats::{local_linear, BoxplotStats};
use super::svg::{points, Attr, Svg};
use crate::clustering::{Dendrogram, Membership};
use crate::data::{AdjacentSeries, LabeledMatrix, PlotType};
use crate::error::{Error, Result};
use crate::layout::text::rotated_extent;
use crate::layout::{
    compute_layout, dendrogram_geometry, format_tick, label_texts, panel_range, panel_ticks,
    resolve_label_mode, AxisInfo, AxisSide, DendrogramOrientation, FigureSpec, HeatmapAxes,
    Interval, LabelMode, LabelStyle, LegendPosition, Pane, PaneRole, PanelLayout, Rect,
    TICK_LENGTH,
};
use crate::smoothing::SmoothedMatrix;

/// Values drawn in the heatmap pane.
#[derive(Debug, Clone, PartialEq)]
pub enum Cells {
    Raw(LabeledMatrix<f64>),
    Smoothed(SmoothedMatrix<f64>),
}

/// Everything a figure draws besides the spec: cells, axes in display order
/// and dendrograms whose leaves are indexed by display position.
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub axes: HeatmapAxes,
    pub cells: Cells,
    pub row_dendrogram: Option<Dendrogram<f64>>,
    pub col_dendrogram: Option<Dendrogram<f64>>,
}

impl Scene {
    pub fn raw(m: LabeledMatrix<f64>) -> Self {
        Self {
            axes: HeatmapAxes::from_matrix(&m, None, None),
            cells: Cells::Raw(m),
            row_dendrogram: None,
            col_dendrogram: None,
        }
    }

    fn value_range(&self) -> Option<(f64, f64)> {
        match &self.cells {
            Cells::Raw(m) => m.value_range(),
            Cells::Smoothed(s) => s.value_range(),
        }
    }
}

const DEFAULT_BAR: Rgb = Rgb::new(190, 190, 190);
const LEGEND_SWATCHES: usize = 64;

/// Heatmap color scale: explicit breaks when given, otherwise the palette
/// spread over the range of the drawn values.
pub fn color_scale(spec: &FigureSpec, scene: &Scene) -> Result<ColorScale> {
    match &spec.palette_breaks {
        Some(b) => ColorScale::with_breaks(spec.palette.clone(), b.clone(), spec.na_color),
        None => {
            let domain = scene.value_range().unwrap_or((0.0, 0.0));
            ColorScale::new(spec.palette.clone(), domain, spec.na_color)
        }
    }
}

/// Computes the layout and renders the figure.
pub fn render_figure(spec: &FigureSpec, scene: &Scene) -> Result<String> {
    let layout = compute_layout(spec, &scene.axes)?;
    render_scene(&layout, spec, scene)
}

fn check_membership(info: &AxisInfo, which: &str) -> Result<()> {
    if let Some(m) = &info.membership {
        if m.len() != info.len() {
            return Err(Error::dim(format!(
                "{which} membership covers {} objects, axis has {}",
                m.len(),
                info.len()
            )));
        }
        if !m.is_contiguous() {
            return Err(Error::invalid(
                "membership",
                format!("{which} axis is not grouped cluster by cluster in label order"),
            ));
        }
    }
    Ok(())
}

fn check_dendrogram(t: Option<&Dendrogram<f64>>, n: usize, which: &str) -> Result<()> {
    match t {
        None => Err(Error::invalid(
            "dendrogram",
            format!("{which} dendrogram requested but none supplied"),
        )),
        Some(t) if t.n_leaves() != n => Err(Error::dim(format!(
            "{which} dendrogram has {} leaves, axis has {n}",
            t.n_leaves()
        ))),
        Some(_) => Ok(()),
    }
}

fn validate(layout: &PanelLayout, spec: &FigureSpec, scene: &Scene) -> Result<()> {
    let axes = &scene.axes;
    let (nr, nc) = (axes.rows.len(), axes.cols.len());
    let heat = layout.heatmap();
    if heat.x_map.as_ref().map(Vec::len) != Some(nc)
        || heat.y_map.as_ref().map(Vec::len) != Some(nr)
    {
        return Err(Error::dim(
            "layout was computed for a different heatmap shape",
        ));
    }
    check_membership(&axes.rows, "row")?;
    check_membership(&axes.cols, "column")?;
    match &scene.cells {
        Cells::Raw(m) => {
            if m.dims() != (nr, nc) {
                return Err(Error::dim(format!(
                    "matrix is {}x{} but the axes are {nr}x{nc}",
                    m.n_rows(),
                    m.n_cols()
                )));
            }
        }
        Cells::Smoothed(s) => {
            let (rm, cm) = (&axes.rows.membership, &axes.cols.membership);
            let ok = s.source_dims() == (nr, nc)
                && rm.as_ref().map(Membership::k) == Some(s.k_rows())
                && cm.as_ref().map(Membership::k) == Some(s.k_cols());
            if !ok {
                return Err(Error::dim(
                    "smoothed blocks do not match the axis memberships",
                ));
            }
        }
    }
    if (layout.row_blocks.is_some() != axes.rows.membership.is_some())
        || (layout.col_blocks.is_some() != axes.cols.membership.is_some())
    {
        return Err(Error::dim(
            "layout blocks do not match the axis memberships",
        ));
    }
    let needs = [
        (spec.top_panel.is_some(), PaneRole::TopPlot),
        (spec.right_panel.is_some(), PaneRole::RightPlot),
        (spec.row_dendrogram, PaneRole::RowDendrogram),
        (spec.col_dendrogram, PaneRole::ColDendrogram),
    ];
    for (wanted, role) in needs {
        if wanted && layout.pane(role).is_none() {
            return Err(Error::dim(format!("layout has no {role:?} pane")));
        }
    }
    if spec.row_dendrogram {
        check_dendrogram(scene.row_dendrogram.as_ref(), nr, "row")?;
    }
    if spec.col_dendrogram {
        check_dendrogram(scene.col_dendrogram.as_ref(), nc, "column")?;
    }
    for (panel, info, tree, which) in [
        (
            &spec.top_panel,
            &axes.cols,
            scene.col_dendrogram.as_ref(),
            "top",
        ),
        (
            &spec.right_panel,
            &axes.rows,
            scene.row_dendrogram.as_ref(),
            "right",
        ),
    ] {
        let Some(p) = panel else { continue };
        p.validate(info.len())?;
        match p.plot_type {
            PlotType::Dendrogram => check_dendrogram(tree, info.len(), which)?,
            PlotType::Boxplot if info.membership.is_none() => {
                return Err(Error::invalid(
                    "boxplot",
                    format!("{which} panel boxplots need a membership on that axis"),
                ))
            }
            _ => {}
        }
        parse_colors(&p.point_colors)?;
        parse_colors(&p.bar_colors)?;
    }
    Ok(())
}

fn parse_colors(c: &Option<Vec<String>>) -> Result<Option<Vec<Rgb>>> {
    c.as_ref()
        .map(|v| v.iter().map(|s| Rgb::from_str(s)).collect())
        .transpose()
}

fn pick(colors: &Option<Vec<Rgb>>, i: usize, default: Rgb) -> Rgb {
    match colors {
        Some(c) if c.len() == 1 => c[0],
        Some(c) => c[i],
        None => default,
    }
}

/// Renders the figure described by `spec` into `layout`. Everything is
/// validated before the first element is emitted.
pub fn render_scene(layout: &PanelLayout, spec: &FigureSpec, scene: &Scene) -> Result<String> {
    validate(layout, spec, scene)?;
    let scale = color_scale(spec, scene)?;
    let left_mode = resolve_label_mode(spec.left_label, &scene.axes.rows, "left")?;
    let bottom_mode = resolve_label_mode(spec.bottom_label, &scene.axes.cols, "bottom")?;

    let mut svg = Svg::new(layout.width, layout.height);
    svg.leaf(
        "rect",
        vec![
            ("class", "background".into()),
            ("fill", "#FFFFFF".into()),
            ("height", layout.height.into()),
            ("width", layout.width.into()),
            ("x", 0.0.into()),
            ("y", 0.0.into()),
        ],
    );

    let heat = layout.heatmap();
    let xs = heat.x_map.as_deref().expect("validated");
    let ys = heat.y_map.as_deref().expect("validated");
    draw_cells(&mut svg, layout, scene, &scale, xs, ys);
    draw_grid(&mut svg, layout, spec, xs, ys);

    if let Some(p) = layout.pane(PaneRole::LeftLabel) {
        let iv = label_intervals(left_mode, ys, layout.row_blocks.as_deref());
        let texts = label_texts(left_mode, &scene.axes.rows);
        draw_labels(
            &mut svg,
            p,
            &iv,
            &texts,
            &spec.left_label_style,
            spec.label_padding,
            LabelEdge::Left,
        );
    }
    if let Some(p) = layout.pane(PaneRole::BottomLabel) {
        let iv = label_intervals(bottom_mode, xs, layout.col_blocks.as_deref());
        let texts = label_texts(bottom_mode, &scene.axes.cols);
        draw_labels(
            &mut svg,
            p,
            &iv,
            &texts,
            &spec.bottom_label_style,
            spec.label_padding,
            LabelEdge::Bottom,
        );
    }

    if let (Some(series), Some(pane)) = (&spec.top_panel, layout.pane(PaneRole::TopPlot)) {
        let ctx = PanelCtx {
            rect: pane.rect,
            cells: pane.x_map.as_deref().expect("top pane maps columns"),
            blocks: layout.col_blocks.as_deref(),
            membership: scene.axes.cols.membership.as_ref(),
            tree: scene.col_dendrogram.as_ref(),
            orientation: DendrogramOrientation::Top,
        };
        draw_panel(&mut svg, &ctx, series, spec)?;
        draw_top_axis(&mut svg, &pane.rect, series, spec);
    }
    if let (Some(series), Some(pane)) = (&spec.right_panel, layout.pane(PaneRole::RightPlot)) {
        let ctx = PanelCtx {
            rect: pane.rect,
            cells: pane.y_map.as_deref().expect("right pane maps rows"),
            blocks: layout.row_blocks.as_deref(),
            membership: scene.axes.rows.membership.as_ref(),
            tree: scene.row_dendrogram.as_ref(),
            orientation: DendrogramOrientation::Right,
        };
        draw_panel(&mut svg, &ctx, series, spec)?;
        draw_right_axis(&mut svg, &pane.rect, series, spec);
    }

    if let (Some(pane), Some(t)) = (layout.pane(PaneRole::ColDendrogram), &scene.col_dendrogram) {
        let segs = dendrogram_geometry(
            t,
            &pane.rect,
            pane.x_map.as_deref().expect("maps columns"),
            DendrogramOrientation::Top,
        )?;
        draw_segments(&mut svg, &segs);
    }
    if let (Some(pane), Some(t)) = (layout.pane(PaneRole::RowDendrogram), &scene.row_dendrogram) {
        let segs = dendrogram_geometry(
            t,
            &pane.rect,
            pane.y_map.as_deref().expect("maps rows"),
            DendrogramOrientation::Right,
        )?;
        draw_segments(&mut svg, &segs);
    }

    if let (Some(p), Some(t)) = (layout.pane(PaneRole::RowTitle), &spec.row_title) {
        let (cx, cy) = (p.rect.x + p.rect.w / 2.0, p.rect.y + p.rect.h / 2.0);
        title(&mut svg, cx, cy, t, spec.title_size, Some(90.0));
    }
    if let (Some(p), Some(t)) = (layout.pane(PaneRole::ColTitle), &spec.column_title) {
        let (cx, cy) = (p.rect.x + p.rect.w / 2.0, p.rect.y + p.rect.h / 2.0);
        title(&mut svg, cx, cy, t, spec.title_size, None);
    }
    if let Some(p) = layout.pane(PaneRole::Legend) {
        draw_legend(&mut svg, p, &scale, spec);
    }
    Ok(svg.finish())
}

fn rect_attrs(class: &str, x: f64, y: f64, w: f64, h: f64, fill: Rgb) -> Vec<(&'static str, Attr)> {
    vec![
        ("class", class.to_string().into()),
        ("fill", fill.to_hex().into()),
        ("height", h.into()),
        ("width", w.into()),
        ("x", x.into()),
        ("y", y.into()),
    ]
}

fn draw_cells(
    svg: &mut Svg,
    layout: &PanelLayout,
    scene: &Scene,
    scale: &ColorScale,
    xs: &[Interval],
    ys: &[Interval],
) {
    svg.group(vec![("class", "heatmap".into())]);
    match &scene.cells {
        Cells::Raw(m) => {
            for (r, yi) in ys.iter().enumerate() {
                for (c, xi) in xs.iter().enumerate() {
                    let fill = scale.map(m.get(r, c));
                    svg.leaf(
                        "rect",
                        rect_attrs("cell", xi.lo, yi.lo, xi.len(), yi.len(), fill),
                    );
                }
            }
        }
        Cells::Smoothed(s) => {
            let rb = layout.row_blocks.as_deref().expect("validated");
            let cb = layout.col_blocks.as_deref().expect("validated");
            for (r, yi) in rb.iter().enumerate() {
                for (c, xi) in cb.iter().enumerate() {
                    let fill = scale.map(s.block(r, c));
                    svg.leaf(
                        "rect",
                        rect_attrs("cell", xi.lo, yi.lo, xi.len(), yi.len(), fill),
                    );
                }
            }
        }
    }
    svg.end_group();
}

fn interior_bounds(iv: &[Interval]) -> Vec<f64> {
    iv.iter().skip(1).map(|i| i.lo).collect()
}

fn draw_grid(
    svg: &mut Svg,
    layout: &PanelLayout,
    spec: &FigureSpec,
    xs: &[Interval],
    ys: &[Interval],
) {
    let r = layout.heatmap().rect;
    if let Some(col) = spec.grid_hline_color {
        let bounds = interior_bounds(layout.row_blocks.as_deref().unwrap_or(ys));
        for y in bounds {
            line(svg, "grid", r.x, y, r.right(), y, col);
        }
    }
    if let Some(col) = spec.grid_vline_color {
        let bounds = interior_bounds(layout.col_blocks.as_deref().unwrap_or(xs));
        for x in bounds {
            line(svg, "grid", x, r.y, x, r.bottom(), col);
        }
    }
}

fn line(svg: &mut Svg, class: &str, x1: f64, y1: f64, x2: f64, y2: f64, color: Rgb) {
    svg.leaf(
        "line",
        vec![
            ("class", class.to_string().into()),
            ("stroke", color.to_hex().into()),
            ("stroke-width", 1.0.into()),
            ("x1", x1.into()),
            ("x2", x2.into()),
            ("y1", y1.into()),
            ("y2", y2.into()),
        ],
    );
}

fn label_intervals(
    mode: LabelMode,
    cells: &[Interval],
    blocks: Option<&[Interval]>,
) -> Vec<Interval> {
    match (mode, blocks) {
        (LabelMode::Cluster, Some(b)) => b.to_vec(),
        _ => cells.to_vec(),
    }
}

#[derive(Clone, Copy)]
enum LabelEdge {
    Left,
    Bottom,
}

fn draw_labels(
    svg: &mut Svg,
    pane: &Pane,
    intervals: &[Interval],
    texts: &[String],
    style: &LabelStyle,
    pad: f64,
    edge: LabelEdge,
) {
    let r = pane.rect;
    svg.group(vec![("class", "labels".into())]);
    for (i, (iv, text)) in intervals.iter().zip(texts).enumerate() {
        let bg = style.background[i % style.background.len()];
        let (bx, by, bw, bh) = match edge {
            LabelEdge::Left => (r.x, iv.lo, r.w, iv.len()),
            LabelEdge::Bottom => (iv.lo, r.y, iv.len(), r.h),
        };
        let mut attrs = rect_attrs("label-bg", bx, by, bw, bh, bg);
        attrs.push(("fill-opacity", style.background_alpha.into()));
        attrs.push(("stroke", "#FFFFFF".into()));
        attrs.push(("stroke-width", 0.5.into()));
        svg.leaf("rect", attrs);

        let (w, h) = rotated_extent(text, style.font_size, style.angle);
        // offset of the text center from the far edge, measured inward
        let (depth, own) = match edge {
            LabelEdge::Left => (r.w, w),
            LabelEdge::Bottom => (r.h, h),
        };
        let inward = match style.alignment {
            crate::layout::Alignment::Left => pad + own / 2.0,
            crate::layout::Alignment::Center => depth / 2.0,
            crate::layout::Alignment::Right => depth - pad - own / 2.0,
        };
        let (cx, cy) = match edge {
            LabelEdge::Left => (r.x + inward, iv.mid()),
            LabelEdge::Bottom => (iv.mid(), r.bottom() - inward),
        };
        let mut attrs: Vec<(&str, Attr)> = vec![
            ("class", "label".into()),
            ("dominant-baseline", "central".into()),
            ("fill", style.text_color.to_hex().into()),
            ("font-size", style.font_size.into()),
            ("text-anchor", "middle".into()),
            ("x", cx.into()),
            ("y", cy.into()),
        ];
        if style.angle != 0.0 {
            attrs.push((
                "transform",
                format!(
                    "rotate({} {} {})",
                    super::svg::num(-style.angle),
                    super::svg::num(cx),
                    super::svg::num(cy)
                )
                .into(),
            ));
        }
        svg.text(attrs, text);
    }
    svg.end_group();
}

struct PanelCtx<'a> {
    rect: Rect,
    cells: &'a [Interval],
    blocks: Option<&'a [Interval]>,
    membership: Option<&'a Membership>,
    tree: Option<&'a Dendrogram<f64>>,
    orientation: DendrogramOrientation,
}

impl PanelCtx<'_> {
    fn depth(&self) -> f64 {
        match self.orientation {
            DendrogramOrientation::Top => self.rect.h,
            DendrogramOrientation::Right => self.rect.w,
        }
    }

    /// Canvas point for a position along the heatmap axis and a depth
    /// measured from the panel baseline (bottom edge of a top pane, left
    /// edge of a right pane).
    fn point(&self, along: f64, depth: f64) -> (f64, f64) {
        match self.orientation {
            DendrogramOrientation::Top => (along, self.rect.bottom() - depth),
            DendrogramOrientation::Right => (self.rect.x + depth, along),
        }
    }
}

/// Depth inside a panel for value `v`, leaving 5% margins.
fn value_depth(v: f64, range: (f64, f64), depth: f64) -> f64 {
    let (lo, hi) = range;
    depth * (0.05 + 0.9 * (v - lo) / (hi - lo))
}

fn glyph_radius(cells: &[Interval]) -> f64 {
    let min = cells
        .iter()
        .map(Interval::len)
        .fold(f64::INFINITY, f64::min);
    (0.4 * min).clamp(0.5, 3.0)
}

fn draw_panel(
    svg: &mut Svg,
    ctx: &PanelCtx,
    series: &AdjacentSeries,
    spec: &FigureSpec,
) -> Result<()> {
    let class = match ctx.orientation {
        DendrogramOrientation::Top => "top-panel",
        DendrogramOrientation::Right => "right-panel",
    };
    svg.group(vec![("class", class.into())]);
    if series.plot_type == PlotType::Dendrogram {
        let t = ctx.tree.expect("validated");
        let segs = dendrogram_geometry(t, &ctx.rect, ctx.cells, ctx.orientation)?;
        draw_segments(svg, &segs);
        svg.end_group();
        return Ok(());
    }
    let Some(range) = panel_range(series) else {
        svg.end_group();
        return Ok(());
    };
    let depth = ctx.depth();
    let vd = |v: f64| value_depth(v, range, depth);
    let point_colors = parse_colors(&series.point_colors)?;
    let bar_colors = parse_colors(&series.bar_colors)?;
    let present: Vec<(usize, f64)> = series
        .values
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| (i, v)))
        .collect();
    let pts: Vec<(f64, f64)> = present
        .iter()
        .map(|&(i, v)| ctx.point(ctx.cells[i].mid(), vd(v)))
        .collect();
    let r = glyph_radius(ctx.cells);

    let polyline = |svg: &mut Svg, class: &str, pts: &[(f64, f64)]| {
        if pts.len() >= 2 {
            svg.leaf(
                "polyline",
                vec![
                    ("class", class.to_string().into()),
                    ("fill", "none".into()),
                    ("points", points(pts).into()),
                    ("stroke", BLACK.to_hex().into()),
                    ("stroke-width", 1.0.into()),
                ],
            );
        }
    };
    let circles = |svg: &mut Svg| {
        for (&(i, _), &(x, y)) in present.iter().zip(&pts) {
            svg.leaf(
                "circle",
                vec![
                    ("class", "point".into()),
                    ("cx", x.into()),
                    ("cy", y.into()),
                    ("fill", pick(&point_colors, i, BLACK).to_hex().into()),
                    ("fill-opacity", series.point_alpha.into()),
                    ("r", r.into()),
                ],
            );
        }
    };
    let smooth = |svg: &mut Svg| {
        let along: Vec<f64> = present.iter().map(|&(i, _)| ctx.cells[i].mid()).collect();
        let vals: Vec<f64> = present.iter().map(|&(_, v)| v).collect();
        let fit = local_linear(&along, &vals, spec.smooth_span);
        let curve: Vec<(f64, f64)> = along
            .iter()
            .zip(&fit)
            .map(|(&a, &v)| ctx.point(a, vd(v).clamp(0.0, depth)))
            .collect();
        polyline(svg, "smooth", &curve);
    };

    match series.plot_type {
        PlotType::Scatter => circles(svg),
        PlotType::ScatterLine => {
            polyline(svg, "line", &pts);
            circles(svg);
        }
        PlotType::ScatterSmooth => {
            circles(svg);
            smooth(svg);
        }
        PlotType::Smooth => smooth(svg),
        PlotType::Line => polyline(svg, "line", &pts),
        PlotType::Bar => {
            let base = vd(0.0);
            for &(i, v) in &present {
                let iv = ctx.cells[i];
                let half = 0.4 * iv.len();
                let (d0, d1) = (base.min(vd(v)), base.max(vd(v)));
                let (x, y, w, h) = match ctx.orientation {
                    DendrogramOrientation::Top => {
                        (iv.mid() - half, ctx.rect.bottom() - d1, 2.0 * half, d1 - d0)
                    }
                    DendrogramOrientation::Right => {
                        (ctx.rect.x + d0, iv.mid() - half, d1 - d0, 2.0 * half)
                    }
                };
                svg.leaf(
                    "rect",
                    rect_attrs("bar", x, y, w, h, pick(&bar_colors, i, DEFAULT_BAR)),
                );
            }
        }
        PlotType::Boxplot => {
            let m = ctx.membership.expect("validated");
            let blocks = ctx.blocks.expect("membership implies blocks");
            for (c, block) in blocks.iter().enumerate() {
                let vals: Vec<f64> = m
                    .members(c)
                    .iter()
                    .filter_map(|&i| series.values[i])
                    .collect();
                if vals.is_empty() {
                    continue;
                }
                let b = BoxplotStats::from_values(&vals)?;
                draw_box(
                    svg,
                    ctx,
                    block,
                    &b,
                    &vd,
                    r,
                    pick(&bar_colors, c, DEFAULT_BAR),
                );
            }
        }
        PlotType::Dendrogram => unreachable!("handled above"),
    }
    svg.end_group();
    Ok(())
}

fn draw_box(
    svg: &mut Svg,
    ctx: &PanelCtx,
    block: &Interval,
    b: &BoxplotStats,
    vd: &dyn Fn(f64) -> f64,
    r: f64,
    fill: Rgb,
) {
    let half = 0.3 * block.len();
    let mid = block.mid();
    let (q1, q3) = (vd(b.q1), vd(b.q3));
    let (x, y, w, h) = match ctx.orientation {
        DendrogramOrientation::Top => (mid - half, ctx.rect.bottom() - q3, 2.0 * half, q3 - q1),
        DendrogramOrientation::Right => (ctx.rect.x + q1, mid - half, q3 - q1, 2.0 * half),
    };
    let mut attrs = rect_attrs("box", x, y, w, h, fill);
    attrs.push(("stroke", BLACK.to_hex().into()));
    attrs.push(("stroke-width", 1.0.into()));
    svg.leaf("rect", attrs);
    let seg = |svg: &mut Svg, class: &str, a0: f64, d0: f64, a1: f64, d1: f64| {
        let (x1, y1) = ctx.point(a0, d0);
        let (x2, y2) = ctx.point(a1, d1);
        line(svg, class, x1, y1, x2, y2, BLACK);
    };
    let med = vd(b.median);
    seg(svg, "median", mid - half, med, mid + half, med);
    seg(svg, "whisker", mid, q3, mid, vd(b.whisker_high));
    seg(svg, "whisker", mid, q1, mid, vd(b.whisker_low));
    let cap = half / 2.0;
    for w in [vd(b.whisker_low), vd(b.whisker_high)] {
        seg(svg, "whisker", mid - cap, w, mid + cap, w);
    }
    for &o in &b.outliers {
        let (cx, cy) = ctx.point(mid, vd(o));
        svg.leaf(
            "circle",
            vec![
                ("class", "outlier".into()),
                ("cx", cx.into()),
                ("cy", cy.into()),
                ("fill", "none".into()),
                ("r", r.into()),
                ("stroke", BLACK.to_hex().into()),
            ],
        );
    }
}

fn draw_segments(svg: &mut Svg, segs: &[crate::layout::Segment]) {
    svg.group(vec![("class", "dendrogram".into())]);
    for s in segs {
        line(svg, "branch", s.x1, s.y1, s.x2, s.y2, BLACK);
    }
    svg.end_group();
}

fn small_text(
    svg: &mut Svg,
    class: &str,
    x: f64,
    y: f64,
    size: f64,
    anchor: &str,
    rotate: Option<f64>,
    text: &str,
) {
    let mut attrs: Vec<(&str, Attr)> = vec![
        ("class", class.to_string().into()),
        ("dominant-baseline", "central".into()),
        ("fill", BLACK.to_hex().into()),
        ("font-size", size.into()),
        ("text-anchor", anchor.to_string().into()),
        ("x", x.into()),
        ("y", y.into()),
    ];
    if let Some(a) = rotate {
        attrs.push((
            "transform",
            format!(
                "rotate({} {} {})",
                super::svg::num(-a),
                super::svg::num(x),
                super::svg::num(y)
            )
            .into(),
        ));
    }
    svg.text(attrs, text);
}

fn title(svg: &mut Svg, x: f64, y: f64, text: &str, size: f64, rotate: Option<f64>) {
    small_text(svg, "title", x, y, size, "middle", rotate, text);
}

/// Value axis of the top panel, drawn in the gutter beside it.
fn draw_top_axis(svg: &mut Svg, pane: &Rect, series: &AdjacentSeries, spec: &FigureSpec) {
    let ticks = panel_ticks(series);
    let Some(range) = panel_range(series) else {
        return;
    };
    if ticks.is_empty() {
        return;
    }
    let pad = spec.label_padding;
    let fs = spec.axis_font_size;
    let tick_w = ticks
        .iter()
        .map(|(_, t)| crate::layout::text::text_width(t, fs))
        .fold(0.0, f64::max);
    let (x0, dir, anchor) = match spec.top_axis_side {
        AxisSide::Left => (pane.x - pad, -1.0, "end"),
        AxisSide::Right => (pane.right() + pad, 1.0, "start"),
    };
    svg.group(vec![("class", "axis".into())]);
    let y = |v: f64| pane.bottom() - value_depth(v, range, pane.h);
    line(svg, "axis-line", x0, y(range.0), x0, y(range.1), BLACK);
    for (v, t) in &ticks {
        line(svg, "tick", x0, y(*v), x0 + dir * TICK_LENGTH, y(*v), BLACK);
        small_text(
            svg,
            "tick-label",
            x0 + dir * (TICK_LENGTH + pad),
            y(*v),
            fs,
            anchor,
            None,
            t,
        );
    }
    if !series.axis_name.is_empty() {
        let x = x0 + dir * (TICK_LENGTH + 2.0 * pad + tick_w + fs / 2.0);
        small_text(
            svg,
            "axis-name",
            x,
            pane.y + pane.h / 2.0,
            fs,
            "middle",
            Some(90.0),
            &series.axis_name,
        );
    }
    svg.end_group();
}

/// Value axis of the right panel, drawn below it.
fn draw_right_axis(svg: &mut Svg, pane: &Rect, series: &AdjacentSeries, spec: &FigureSpec) {
    let ticks = panel_ticks(series);
    let Some(range) = panel_range(series) else {
        return;
    };
    if ticks.is_empty() {
        return;
    }
    let pad = spec.label_padding;
    let fs = spec.axis_font_size;
    let y0 = pane.bottom() + pad;
    let x = |v: f64| pane.x + value_depth(v, range, pane.w);
    svg.group(vec![("class", "axis".into())]);
    line(svg, "axis-line", x(range.0), y0, x(range.1), y0, BLACK);
    for (v, t) in &ticks {
        line(svg, "tick", x(*v), y0, x(*v), y0 + TICK_LENGTH, BLACK);
        small_text(
            svg,
            "tick-label",
            x(*v),
            y0 + TICK_LENGTH + pad + fs / 2.0,
            fs,
            "middle",
            None,
            t,
        );
    }
    if !series.axis_name.is_empty() {
        let y = y0 + TICK_LENGTH + 2.0 * pad + fs + fs / 2.0;
        small_text(
            svg,
            "axis-name",
            pane.x + pane.w / 2.0,
            y,
            fs,
            "middle",
            None,
            &series.axis_name,
        );
    }
    svg.end_group();
}

fn draw_legend(svg: &mut Svg, pane: &Pane, scale: &ColorScale, spec: &FigureSpec) {
    let r = pane.rect;
    let (lo, hi) = scale.domain();
    let pad = spec.label_padding;
    let fs = spec.axis_font_size;
    svg.group(vec![("class", "legend".into())]);
    let value_at = |t: f64| lo + (hi - lo) * t;
    let n = LEGEND_SWATCHES;
    match spec.legend_position {
        LegendPosition::BottomCenter => {
            let bar_h = (r.h - 3.0 * pad - fs).max(r.h * 0.3);
            let w = r.w / n as f64;
            for i in 0..n {
                let fill = scale.map(Some(value_at((i as f64 + 0.5) / n as f64)));
                svg.leaf(
                    "rect",
                    rect_attrs(
                        "legend-swatch",
                        r.x + w * i as f64,
                        r.y + pad,
                        w,
                        bar_h,
                        fill,
                    ),
                );
            }
            let ty = (r.y + pad + bar_h + pad + fs / 2.0).min(r.bottom() - fs / 2.0);
            for (t, anchor) in [(0.0, "start"), (0.5, "middle"), (1.0, "end")] {
                small_text(
                    svg,
                    "legend-label",
                    r.x + r.w * t,
                    ty,
                    fs,
                    anchor,
                    None,
                    &format_tick(value_at(t)),
                );
            }
        }
        LegendPosition::Right => {
            let bar_w = (r.w * 0.3).max(1.0);
            let h = r.h / n as f64;
            for i in 0..n {
                // high values at the top
                let fill = scale.map(Some(value_at(1.0 - (i as f64 + 0.5) / n as f64)));
                svg.leaf(
                    "rect",
                    rect_attrs(
                        "legend-swatch",
                        r.x + pad,
                        r.y + h * i as f64,
                        bar_w,
                        h,
                        fill,
                    ),
                );
            }
            let tx = r.x + 2.0 * pad + bar_w;
            for t in [0.0, 0.5, 1.0] {
                small_text(
                    svg,
                    "legend-label",
                    tx,
                    r.bottom() - r.h * t,
                    fs,
                    "start",
                    None,
                    &format_tick(value_at(t)),
                );
            }
        }
    }
    svg.end_group();
}
