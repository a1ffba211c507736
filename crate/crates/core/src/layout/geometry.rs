use super::spec::{
    AxisInfo, AxisSide, FigureSpec, HeatmapAxes, LabelMode, LabelStyle, LegendPosition,
};
use super::text::{rotated_extent, text_width};
use crate::clustering::{Dendrogram, Membership};
use crate::data::{AdjacentSeries, PlotType};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
}

impl Rect {
    pub fn right(&self) -> f64 {
        self.x + self.w
    }

    pub fn bottom(&self) -> f64 {
        self.y + self.h
    }

    /// Interiors intersect (touching edges do not count).
    pub fn overlaps(&self, other: &Rect, tol: f64) -> bool {
        self.x + tol < other.right()
            && other.x + tol < self.right()
            && self.y + tol < other.bottom()
            && other.y + tol < self.bottom()
    }
}

/// Half-open pixel interval `[lo, hi)` (the last one of a partition is
/// closed).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn mid(&self) -> f64 {
        (self.lo + self.hi) / 2.0
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PaneRole {
    Heatmap,
    LeftLabel,
    BottomLabel,
    TopPlot,
    RightPlot,
    RowDendrogram,
    ColDendrogram,
    RowTitle,
    ColTitle,
    Legend,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pane {
    pub role: PaneRole,
    pub rect: Rect,
    /// Column index to x interval, for panes aligned with the columns.
    pub x_map: Option<Vec<Interval>>,
    /// Row index to y interval, for panes aligned with the rows.
    pub y_map: Option<Vec<Interval>>,
}

/// Resolved geometry of every pane on the canvas.
#[derive(Debug, Clone, PartialEq)]
pub struct PanelLayout {
    pub width: f64,
    pub height: f64,
    pub panes: Vec<Pane>,
    /// Per-cluster column spans when the columns have a membership.
    pub col_blocks: Option<Vec<Interval>>,
    pub row_blocks: Option<Vec<Interval>>,
}

impl PanelLayout {
    pub fn pane(&self, role: PaneRole) -> Option<&Pane> {
        self.panes.iter().find(|p| p.role == role)
    }

    pub fn heatmap(&self) -> &Pane {
        self.pane(PaneRole::Heatmap)
            .expect("layout always has a heatmap")
    }
}

/// Splits `[start, start + extent]` into `n` equal intervals, or, with a
/// membership, into one interval per cluster (in label order) sized in
/// proportion to the cluster.
pub fn axis_map(
    start: f64,
    extent: f64,
    n: usize,
    groups: Option<&Membership>,
) -> Result<Vec<Interval>> {
    if n == 0 {
        return Err(Error::dim("axis_map over zero indices"));
    }
    let counts: Vec<usize> = match groups {
        None => vec![1; n],
        Some(m) => {
            if m.len() != n {
                return Err(Error::dim(format!(
                    "membership over {} objects on an axis of {n}",
                    m.len()
                )));
            }
            m.sizes()
        }
    };
    let total = n as f64;
    let end = start + extent;
    let mut out = Vec::with_capacity(counts.len());
    let mut cum = 0usize;
    let mut lo = start;
    for (i, c) in counts.iter().enumerate() {
        cum += c;
        let hi = if i + 1 == counts.len() {
            end
        } else {
            start + extent * (cum as f64 / total)
        };
        out.push(Interval { lo, hi });
        lo = hi;
    }
    Ok(out)
}

pub(crate) fn resolve_label_mode(
    mode: LabelMode,
    axis: &AxisInfo,
    which: &str,
) -> Result<LabelMode> {
    match mode {
        LabelMode::Auto if axis.membership.is_some() => Ok(LabelMode::Cluster),
        LabelMode::Auto => Ok(LabelMode::Variable),
        LabelMode::Cluster if axis.membership.is_none() => Err(Error::invalid(
            "labels",
            format!("{which} labels set to cluster but that axis has no membership"),
        )),
        m => Ok(m),
    }
}

/// Label strings shown on an axis in the resolved mode.
pub(crate) fn label_texts(mode: LabelMode, axis: &AxisInfo) -> Vec<String> {
    match (mode, &axis.membership) {
        (LabelMode::Cluster, Some(m)) => (0..m.k()).map(|c| m.label_name(c)).collect(),
        (LabelMode::Variable, _) => axis.names.clone(),
        _ => Vec::new(),
    }
}

/// Short, stable tick label.
pub fn format_tick(v: f64) -> String {
    let a = v.abs();
    let s = if a != 0.0 && !(0.01..1e5).contains(&a) {
        format!("{v:.1e}")
    } else {
        let s = format!("{v:.2}");
        let s = s.trim_end_matches('0').trim_end_matches('.').to_string();
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

/// Data range plotted by a panel: present values, widened to include zero
/// for bars and to a unit span when constant.
pub fn panel_range(series: &AdjacentSeries) -> Option<(f64, f64)> {
    let mut it = series.values.iter().flatten().copied();
    let first = it.next()?;
    let (mut lo, mut hi) = it.fold((first, first), |(l, h), v| (l.min(v), h.max(v)));
    if series.plot_type == PlotType::Bar {
        lo = lo.min(0.0);
        hi = hi.max(0.0);
    }
    if lo == hi {
        lo -= 0.5;
        hi += 0.5;
    }
    Some((lo, hi))
}

pub fn panel_ticks(series: &AdjacentSeries) -> Vec<(f64, String)> {
    match (series.plot_type, panel_range(series)) {
        (PlotType::Dendrogram, _) | (_, None) => Vec::new(),
        (_, Some((lo, hi))) => [lo, (lo + hi) / 2.0, hi]
            .into_iter()
            .map(|v| (v, format_tick(v)))
            .collect(),
    }
}

pub(crate) const TICK_LENGTH: f64 = 4.0;

/// Room needed beside a panel for its value axis (ticks plus axis name).
fn axis_gutter(spec: &FigureSpec, series: &AdjacentSeries) -> f64 {
    if series.plot_type == PlotType::Dendrogram {
        return 0.0;
    }
    let ticks = panel_ticks(series)
        .iter()
        .map(|(_, t)| text_width(t, spec.axis_font_size))
        .fold(0.0, f64::max);
    let name = if series.axis_name.is_empty() {
        0.0
    } else {
        spec.axis_font_size + spec.label_padding
    };
    ticks + TICK_LENGTH + 2.0 * spec.label_padding + name
}

/// Same as [`axis_gutter`] but measured along the other direction, for a
/// right panel whose value axis runs horizontally below it.
fn axis_gutter_below(spec: &FigureSpec, series: &AdjacentSeries) -> f64 {
    if series.plot_type == PlotType::Dendrogram {
        return 0.0;
    }
    let name = if series.axis_name.is_empty() {
        0.0
    } else {
        spec.axis_font_size + spec.label_padding
    };
    spec.axis_font_size + TICK_LENGTH + 2.0 * spec.label_padding + name
}

fn label_depth(texts: &[String], style: &LabelStyle, padding: f64, horizontal_pane: bool) -> f64 {
    let max = texts
        .iter()
        .map(|t| {
            let (w, h) = rotated_extent(t, style.font_size, style.angle);
            if horizontal_pane {
                w
            } else {
                h
            }
        })
        .fold(0.0, f64::max);
    max + 2.0 * padding
}

/// Lays out every pane of the figure.
///
/// Fixed-size elements (titles, label panes, axis gutters, legend) are
/// placed first; the heatmap takes what remains, with adjacent plots and
/// dendrograms sized as fractions of it.
pub fn compute_layout(spec: &FigureSpec, axes: &HeatmapAxes) -> Result<PanelLayout> {
    spec.validate()?;
    let (n_rows, n_cols) = (axes.rows.len(), axes.cols.len());
    if n_rows == 0 || n_cols == 0 {
        return Err(Error::dim("heatmap has an empty axis"));
    }
    for (axis, which) in [(&axes.rows, "row"), (&axes.cols, "column")] {
        if let Some(m) = &axis.membership {
            if m.len() != axis.len() {
                return Err(Error::dim(format!(
                    "{which} membership covers {} objects, axis has {}",
                    m.len(),
                    axis.len()
                )));
            }
        }
    }
    if let Some(p) = &spec.top_panel {
        p.validate(n_cols)?;
    }
    if let Some(p) = &spec.right_panel {
        p.validate(n_rows)?;
    }

    let pad = spec.label_padding;
    let left_mode = resolve_label_mode(spec.left_label, &axes.rows, "left")?;
    let bottom_mode = resolve_label_mode(spec.bottom_label, &axes.cols, "bottom")?;
    let left_label_w = match left_mode {
        LabelMode::None => 0.0,
        m => label_depth(
            &label_texts(m, &axes.rows),
            &spec.left_label_style,
            pad,
            true,
        ),
    };
    let bottom_label_h = match bottom_mode {
        LabelMode::None => 0.0,
        m => label_depth(
            &label_texts(m, &axes.cols),
            &spec.bottom_label_style,
            pad,
            false,
        ),
    };
    let title_depth = spec.title_size + 2.0 * pad;
    let row_title_w = if spec.row_title.is_some() {
        title_depth
    } else {
        0.0
    };
    let col_title_h = if spec.column_title.is_some() {
        title_depth
    } else {
        0.0
    };

    let top_gutter = spec
        .top_panel
        .as_ref()
        .map_or(0.0, |p| axis_gutter(spec, p));
    let (left_need, right_fixed) = match spec.top_axis_side {
        AxisSide::Left => (top_gutter, 0.0),
        AxisSide::Right => (0.0, top_gutter),
    };
    let left_col_w = left_label_w.max(left_need);
    let bottom_row_h = bottom_label_h.max(
        spec.right_panel
            .as_ref()
            .map_or(0.0, |p| axis_gutter_below(spec, p)),
    );
    let (legend_bottom_h, legend_right_w) = match (spec.legend, spec.legend_position) {
        (false, _) => (0.0, 0.0),
        (true, LegendPosition::BottomCenter) => (spec.legend_extent, 0.0),
        (true, LegendPosition::Right) => (0.0, spec.legend_extent * 1.5),
    };

    let has_top = spec.top_panel.is_some();
    let has_right = spec.right_panel.is_some();
    let p = spec.plot_proportion;
    let dp = spec.dendrogram_proportion;
    let flag = |b: bool| if b { 1.0 } else { 0.0 };

    let avail_w = spec.width - row_title_w - left_col_w - right_fixed - legend_right_w;
    let avail_h = spec.height - bottom_row_h - col_title_h - legend_bottom_h;
    let heat_w = avail_w / (1.0 + p * flag(has_right) + dp * flag(spec.row_dendrogram));
    let heat_h = avail_h / (1.0 + p * flag(has_top) + dp * flag(spec.col_dendrogram));
    if !(heat_w > 0.0 && heat_h > 0.0) {
        return Err(Error::invalid(
            "layout",
            format!("no room left for the heatmap ({heat_w:.2} x {heat_h:.2})"),
        ));
    }

    let top_h = if has_top { p * heat_h } else { 0.0 };
    let col_dendro_h = if spec.col_dendrogram {
        dp * heat_h
    } else {
        0.0
    };
    let right_w = if has_right { p * heat_w } else { 0.0 };
    let row_dendro_w = if spec.row_dendrogram {
        dp * heat_w
    } else {
        0.0
    };

    let heat_x = row_title_w + left_col_w;
    let heat_y = col_dendro_h + top_h;
    let heat = Rect {
        x: heat_x,
        y: heat_y,
        w: heat_w,
        h: heat_h,
    };

    let col_cells = |r: &Rect| axis_map(r.x, r.w, n_cols, None);
    let row_cells = |r: &Rect| axis_map(r.y, r.h, n_rows, None);

    let mut panes = vec![Pane {
        role: PaneRole::Heatmap,
        rect: heat,
        x_map: Some(col_cells(&heat)?),
        y_map: Some(row_cells(&heat)?),
    }];
    let mut push = |role, rect: Rect, x: bool, y: bool| -> Result<()> {
        if rect.w > 0.0 && rect.h > 0.0 {
            panes.push(Pane {
                role,
                rect,
                x_map: if x { Some(col_cells(&rect)?) } else { None },
                y_map: if y { Some(row_cells(&rect)?) } else { None },
            });
        }
        Ok(())
    };
    push(
        PaneRole::TopPlot,
        Rect {
            x: heat_x,
            y: col_dendro_h,
            w: heat_w,
            h: top_h,
        },
        true,
        false,
    )?;
    push(
        PaneRole::ColDendrogram,
        Rect {
            x: heat_x,
            y: 0.0,
            w: heat_w,
            h: col_dendro_h,
        },
        true,
        false,
    )?;
    push(
        PaneRole::RightPlot,
        Rect {
            x: heat.right(),
            y: heat_y,
            w: right_w,
            h: heat_h,
        },
        false,
        true,
    )?;
    push(
        PaneRole::RowDendrogram,
        Rect {
            x: heat.right() + right_w,
            y: heat_y,
            w: row_dendro_w,
            h: heat_h,
        },
        false,
        true,
    )?;
    push(
        PaneRole::LeftLabel,
        Rect {
            x: heat_x - left_label_w,
            y: heat_y,
            w: left_label_w,
            h: heat_h,
        },
        false,
        true,
    )?;
    push(
        PaneRole::BottomLabel,
        Rect {
            x: heat_x,
            y: heat.bottom(),
            w: heat_w,
            h: bottom_label_h,
        },
        true,
        false,
    )?;
    push(
        PaneRole::RowTitle,
        Rect {
            x: 0.0,
            y: heat_y,
            w: row_title_w,
            h: heat_h,
        },
        false,
        false,
    )?;
    push(
        PaneRole::ColTitle,
        Rect {
            x: heat_x,
            y: heat.bottom() + bottom_row_h,
            w: heat_w,
            h: col_title_h,
        },
        false,
        false,
    )?;
    match spec.legend_position {
        LegendPosition::BottomCenter => push(
            PaneRole::Legend,
            Rect {
                x: heat_x + 0.2 * heat_w,
                y: heat.bottom() + bottom_row_h + col_title_h,
                w: 0.6 * heat_w,
                h: legend_bottom_h,
            },
            false,
            false,
        )?,
        LegendPosition::Right => push(
            PaneRole::Legend,
            Rect {
                x: spec.width - legend_right_w,
                y: heat_y,
                w: legend_right_w,
                h: heat_h,
            },
            false,
            false,
        )?,
    }

    let blocks = |info: &AxisInfo, start: f64, extent: f64| -> Result<Option<Vec<Interval>>> {
        info.membership
            .as_ref()
            .map(|m| axis_map(start, extent, info.len(), Some(m)))
            .transpose()
    };
    Ok(PanelLayout {
        width: spec.width,
        height: spec.height,
        col_blocks: blocks(&axes.cols, heat.x, heat.w)?,
        row_blocks: blocks(&axes.rows, heat.y, heat.h)?,
        panes,
    })
}

/// Where a dendrogram grows from: leaves on the edge facing the heatmap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DendrogramOrientation {
    /// Above the columns: leaves on the bottom edge, root toward the top.
    Top,
    /// Right of the rows: leaves on the left edge, root toward the right.
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub x1: f64,
    pub y1: f64,
    pub x2: f64,
    pub y2: f64,
}

/// Rectilinear dendrogram drawing: three segments per merge (two verticals
/// from the children, one bar at the merge height). Leaf `leaf_order[p]`
/// sits at the midpoint of `leaf_intervals[p]`; heights scale linearly so
/// the root reaches the far edge of the pane.
pub fn dendrogram_geometry<F: Scalar>(
    t: &Dendrogram<F>,
    pane: &Rect,
    leaf_intervals: &[Interval],
    orientation: DendrogramOrientation,
) -> Result<Vec<Segment>> {
    let n = t.n_leaves();
    if leaf_intervals.len() != n {
        return Err(Error::dim(format!(
            "dendrogram has {n} leaves but the axis has {} positions",
            leaf_intervals.len()
        )));
    }
    let max_h = t.max_height().as_f64();
    let depth = match orientation {
        DendrogramOrientation::Top => pane.h,
        DendrogramOrientation::Right => pane.w,
    };
    let scale = |h: f64| {
        if max_h > 0.0 {
            h / max_h * depth
        } else {
            depth
        }
    };
    let leaf_depth = |h: f64, is_leaf: bool| if is_leaf { 0.0 } else { scale(h) };

    // position along the leaf axis for every node
    let mut pos = vec![0.0; 2 * n - 1];
    for (p, &leaf) in t.leaf_order().iter().enumerate() {
        pos[leaf] = leaf_intervals[p].mid();
    }
    let mut segs = Vec::with_capacity(3 * (n - 1));
    for (s, m) in t.merges().iter().enumerate() {
        let node = n + s;
        pos[node] = (pos[m.left] + pos[m.right]) / 2.0;
        let h = scale(m.height.as_f64());
        let hl = leaf_depth(t.height(m.left).as_f64(), m.left < n);
        let hr = leaf_depth(t.height(m.right).as_f64(), m.right < n);
        let (a, b) = (pos[m.left], pos[m.right]);
        let pts = [(a, hl, a, h), (a, h, b, h), (b, h, b, hr)];
        for (u1, d1, u2, d2) in pts {
            segs.push(match orientation {
                DendrogramOrientation::Top => Segment {
                    x1: u1,
                    y1: pane.bottom() - d1,
                    x2: u2,
                    y2: pane.bottom() - d2,
                },
                DendrogramOrientation::Right => Segment {
                    x1: pane.x + d1,
                    y1: u1,
                    x2: pane.x + d2,
                    y2: u2,
                },
            });
        }
    }
    Ok(segs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clustering::{hcluster, DistanceMatrix, Linkage};
    use crate::data::Side;

    fn axes(r: usize, c: usize) -> HeatmapAxes {
        HeatmapAxes {
            rows: AxisInfo {
                names: (0..r).map(|i| format!("r{i}")).collect(),
                membership: None,
            },
            cols: AxisInfo {
                names: (0..c).map(|i| format!("c{i}")).collect(),
                membership: None,
            },
            smoothed: false,
        }
    }

    #[test]
    fn equal_partition() {
        let iv = axis_map(0.0, 100.0, 4, None).unwrap();
        let bounds: Vec<(f64, f64)> = iv.iter().map(|i| (i.lo, i.hi)).collect();
        assert_eq!(
            bounds,
            vec![(0.0, 25.0), (25.0, 50.0), (50.0, 75.0), (75.0, 100.0)]
        );
        assert_eq!(
            axis_map(10.0, 5.0, 1, None).unwrap(),
            vec![Interval { lo: 10.0, hi: 15.0 }]
        );
        assert!(axis_map(0.0, 1.0, 0, None).is_err());
    }

    #[test]
    fn proportional_blocks() {
        let m = Membership::new(vec![0, 0, 0, 1], 2).unwrap();
        let iv = axis_map(0.0, 100.0, 4, Some(&m)).unwrap();
        assert_eq!(iv[0].len(), 75.0);
        assert_eq!(iv[1].len(), 25.0);
    }

    #[test]
    fn bare_spec_fills_canvas() {
        let l = compute_layout(&FigureSpec::bare(640.0, 480.0), &axes(3, 4)).unwrap();
        assert_eq!(l.panes.len(), 1);
        assert_eq!(
            l.heatmap().rect,
            Rect {
                x: 0.0,
                y: 0.0,
                w: 640.0,
                h: 480.0
            }
        );
    }

    #[test]
    fn top_panel_takes_thirty_percent_of_heatmap() {
        let mut spec = FigureSpec::bare(1000.0, 1000.0);
        let mut s = AdjacentSeries::new(Side::Top, vec![Some(1.0), Some(2.0)], PlotType::Scatter);
        s.axis_name = "total".into();
        spec.top_panel = Some(s);
        let l = compute_layout(&spec, &axes(2, 2)).unwrap();
        let top = l.pane(PaneRole::TopPlot).unwrap().rect;
        let heat = l.heatmap().rect;
        assert!((top.h - 1000.0 * 0.30 / 1.30).abs() < 1e-9);
        assert!((heat.h - 1000.0 / 1.30).abs() < 1e-9);
        assert_eq!((top.x, top.w), (heat.x, heat.w));
        assert_eq!(top.bottom(), heat.y);
    }

    #[test]
    fn left_label_width_is_text_plus_padding() {
        let mut spec = FigureSpec::bare(500.0, 500.0);
        spec.left_label = LabelMode::Variable;
        let mut ax = axes(2, 2);
        ax.rows.names = vec!["ab".into(), "abcdef".into()];
        let l = compute_layout(&spec, &ax).unwrap();
        let left = l.pane(PaneRole::LeftLabel).unwrap().rect;
        let w = text_width("abcdef", spec.left_label_style.font_size);
        assert_eq!(left.w, w + 2.0 * spec.label_padding);
        assert_eq!(left.right(), l.heatmap().rect.x);
    }

    #[test]
    fn cluster_labels_need_membership() {
        let mut spec = FigureSpec::bare(500.0, 500.0);
        spec.left_label = LabelMode::Cluster;
        assert!(compute_layout(&spec, &axes(2, 2)).is_err());
    }

    #[test]
    fn series_length_mismatch_names_panel() {
        let mut spec = FigureSpec::bare(500.0, 500.0);
        spec.right_panel = Some(AdjacentSeries::new(
            Side::Right,
            vec![Some(1.0)],
            PlotType::Bar,
        ));
        let err = compute_layout(&spec, &axes(3, 2)).unwrap_err().to_string();
        assert!(err.contains("right panel"), "{err}");
    }

    #[test]
    fn crowded_canvas_is_an_error() {
        let mut spec = FigureSpec::bare(20.0, 500.0);
        spec.left_label = LabelMode::Variable;
        let mut ax = axes(2, 2);
        ax.rows.names = vec!["a very long row label indeed".into(), "x".into()];
        assert!(compute_layout(&spec, &ax).is_err());
    }

    fn three_leaf_tree() -> Dendrogram<f64> {
        let d = DistanceMatrix::from_full(3, vec![0.0, 1.0, 5.0, 1.0, 0.0, 5.0, 5.0, 5.0, 0.0])
            .unwrap();
        hcluster(&d, Linkage::Complete).unwrap()
    }

    #[test]
    fn two_leaf_join() {
        let d = DistanceMatrix::from_full(2, vec![0.0, 2.0, 2.0, 0.0]).unwrap();
        let t = hcluster(&d, Linkage::Complete).unwrap();
        let pane = Rect {
            x: 0.0,
            y: 0.0,
            w: 100.0,
            h: 50.0,
        };
        let iv = axis_map(0.0, 100.0, 2, None).unwrap();
        let s = dendrogram_geometry(&t, &pane, &iv, DendrogramOrientation::Top).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(
            s[0],
            Segment {
                x1: 25.0,
                y1: 50.0,
                x2: 25.0,
                y2: 0.0
            }
        );
        assert_eq!(
            s[1],
            Segment {
                x1: 25.0,
                y1: 0.0,
                x2: 75.0,
                y2: 0.0
            }
        );
        assert_eq!(
            s[2],
            Segment {
                x1: 75.0,
                y1: 0.0,
                x2: 75.0,
                y2: 50.0
            }
        );
    }

    #[test]
    fn heights_scale_to_pane_depth() {
        let t = three_leaf_tree();
        let pane = Rect {
            x: 0.0,
            y: 0.0,
            w: 90.0,
            h: 100.0,
        };
        let iv = axis_map(0.0, 90.0, 3, None).unwrap();
        let s = dendrogram_geometry(&t, &pane, &iv, DendrogramOrientation::Top).unwrap();
        assert_eq!(s.len(), 6);
        // first join bar at 1/5 of the depth, second at full depth
        assert!((pane.bottom() - s[1].y1 - 20.0).abs() < 1e-12);
        assert_eq!(s[4].y1, 0.0);
        // second join starts from the first join's bar
        assert_eq!(s[3].y1, s[1].y1);
        assert_eq!(s[3].x1, 30.0);
    }

    #[test]
    fn equal_heights_reach_far_edge() {
        let d = DistanceMatrix::from_fn(4, |_, _| 1.0).unwrap();
        let t = hcluster(&d, Linkage::Average).unwrap();
        let pane = Rect {
            x: 10.0,
            y: 0.0,
            w: 40.0,
            h: 80.0,
        };
        let iv = axis_map(0.0, 80.0, 4, None).unwrap();
        let s = dendrogram_geometry(&t, &pane, &iv, DendrogramOrientation::Right).unwrap();
        for bar in s.iter().skip(1).step_by(3) {
            assert_eq!(bar.x1, pane.right());
            assert_eq!(bar.x2, pane.right());
        }
    }

    #[test]
    fn leaf_count_mismatch() {
        let t = three_leaf_tree();
        let pane = Rect {
            x: 0.0,
            y: 0.0,
            w: 1.0,
            h: 1.0,
        };
        let iv = axis_map(0.0, 1.0, 2, None).unwrap();
        assert!(dendrogram_geometry(&t, &pane, &iv, DendrogramOrientation::Top).is_err());
    }

    #[test]
    fn tick_format() {
        assert_eq!(format_tick(0.5), "0.5");
        assert_eq!(format_tick(2.0), "2");
        assert_eq!(format_tick(-0.0), "0");
        assert_eq!(format_tick(123456.0), "1.2e5");
        assert_eq!(format_tick(0.001), "1.0e-3");
    }
}
