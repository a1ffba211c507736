use crate::clustering::Membership;
use crate::data::{AdjacentSeries, LabeledMatrix, Side};
use crate::error::{Error, Result};
use crate::render::color::{viridis, Rgb, BLACK, WHITE};
use crate::scalar::Scalar;
use crate::smoothing::SmoothedMatrix;

/// What a label pane shows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LabelMode {
    /// Cluster labels when the axis has a membership, else variable names.
    #[default]
    Auto,
    Variable,
    Cluster,
    None,
}

/// Placement of label text across the depth of its pane: `Left` is the
/// edge away from the heatmap, `Right` the edge touching it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Alignment {
    Left,
    #[default]
    Center,
    Right,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabelStyle {
    /// One color for every label, or one per label.
    pub background: Vec<Rgb>,
    pub background_alpha: f64,
    /// Counter-clockwise rotation in degrees, in `[0, 360)`.
    pub angle: f64,
    pub alignment: Alignment,
    pub font_size: f64,
    pub text_color: Rgb,
}

impl Default for LabelStyle {
    fn default() -> Self {
        Self {
            background: vec![Rgb::new(0xF2, 0xF2, 0xF2)],
            background_alpha: 1.0,
            angle: 0.0,
            alignment: Alignment::Center,
            font_size: 10.0,
            text_color: BLACK,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AxisSide {
    #[default]
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LegendPosition {
    #[default]
    BottomCenter,
    Right,
}

/// Declarative description of a full figure.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureSpec {
    pub width: f64,
    pub height: f64,
    pub palette: Vec<Rgb>,
    pub palette_breaks: Option<Vec<f64>>,
    pub na_color: Rgb,
    pub smooth_heat: bool,
    pub row_dendrogram: bool,
    pub col_dendrogram: bool,
    pub top_panel: Option<AdjacentSeries>,
    pub right_panel: Option<AdjacentSeries>,
    pub left_label: LabelMode,
    pub bottom_label: LabelMode,
    pub left_label_style: LabelStyle,
    pub bottom_label_style: LabelStyle,
    pub grid_hline_color: Option<Rgb>,
    pub grid_vline_color: Option<Rgb>,
    pub row_title: Option<String>,
    pub column_title: Option<String>,
    pub legend: bool,
    pub legend_position: LegendPosition,
    /// Adjacent plot depth as a fraction of the heatmap extent.
    pub plot_proportion: f64,
    /// Dendrogram depth as a fraction of the heatmap extent.
    pub dendrogram_proportion: f64,
    pub label_padding: f64,
    pub title_size: f64,
    pub axis_font_size: f64,
    pub legend_extent: f64,
    /// Fraction of points in each local fit of the `smooth` glyph.
    pub smooth_span: f64,
    pub top_axis_side: AxisSide,
}

impl Default for FigureSpec {
    fn default() -> Self {
        Self {
            width: 800.0,
            height: 800.0,
            palette: viridis(),
            palette_breaks: None,
            na_color: WHITE,
            smooth_heat: false,
            row_dendrogram: false,
            col_dendrogram: false,
            top_panel: None,
            right_panel: None,
            left_label: LabelMode::Auto,
            bottom_label: LabelMode::Auto,
            left_label_style: LabelStyle::default(),
            bottom_label_style: LabelStyle::default(),
            grid_hline_color: None,
            grid_vline_color: None,
            row_title: None,
            column_title: None,
            legend: true,
            legend_position: LegendPosition::BottomCenter,
            plot_proportion: 0.30,
            dendrogram_proportion: 0.15,
            label_padding: 4.0,
            title_size: 12.0,
            axis_font_size: 8.0,
            legend_extent: 40.0,
            smooth_span: 0.75,
            top_axis_side: AxisSide::Left,
        }
    }
}

impl FigureSpec {
    /// Nothing but the heatmap: no labels, panels, titles or legend.
    pub fn bare(width: f64, height: f64) -> Self {
        Self {
            width,
            height,
            left_label: LabelMode::None,
            bottom_label: LabelMode::None,
            legend: false,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &'static str, why: String| Err(Error::invalid(what, why));
        if !(self.width > 0.0
            && self.height > 0.0
            && self.width.is_finite()
            && self.height.is_finite())
        {
            return bad("canvas", format!("{} x {}", self.width, self.height));
        }
        if self.palette.len() < 2 {
            return bad("palette", "needs at least 2 colors".into());
        }
        if let Some(b) = &self.palette_breaks {
            if b.len() != self.palette.len() {
                return bad(
                    "palette breaks",
                    format!("{} breaks for {} colors", b.len(), self.palette.len()),
                );
            }
            if b.windows(2).any(|w| !(w[0] < w[1])) {
                return bad("palette breaks", "must be strictly ascending".into());
            }
        }
        for (name, style) in [
            ("left label", &self.left_label_style),
            ("bottom label", &self.bottom_label_style),
        ] {
            if !(0.0..360.0).contains(&style.angle) {
                return bad(
                    "label angle",
                    format!("{name}: {} not in [0, 360)", style.angle),
                );
            }
            if !(0.0..=1.0).contains(&style.background_alpha) {
                return bad("label alpha", format!("{name}: {}", style.background_alpha));
            }
            if !(style.font_size > 0.0) {
                return bad("label font size", format!("{name}: {}", style.font_size));
            }
        }
        for (name, v) in [
            ("plot proportion", self.plot_proportion),
            ("dendrogram proportion", self.dendrogram_proportion),
            ("label padding", self.label_padding),
            ("legend extent", self.legend_extent),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return bad("figure spec", format!("{name} = {v}"));
            }
        }
        if !(self.smooth_span > 0.0 && self.smooth_span <= 1.0) {
            return bad("smooth span", format!("{}", self.smooth_span));
        }
        if let Some(p) = &self.top_panel {
            if p.side != Side::Top {
                return bad("top panel", "series is not a top series".into());
            }
        }
        if let Some(p) = &self.right_panel {
            if p.side != Side::Right {
                return bad("right panel", "series is not a right series".into());
            }
        }
        Ok(())
    }
}

/// Names and optional membership for one displayed axis, in display order.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisInfo {
    pub names: Vec<String>,
    pub membership: Option<Membership>,
}

impl AxisInfo {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// The two axes of the heatmap as they will be drawn.
#[derive(Debug, Clone, PartialEq)]
pub struct HeatmapAxes {
    pub rows: AxisInfo,
    pub cols: AxisInfo,
    /// Cells are drawn per cluster block rather than per cell.
    pub smoothed: bool,
}

impl HeatmapAxes {
    pub fn from_matrix<F: Scalar>(
        m: &LabeledMatrix<F>,
        row_membership: Option<Membership>,
        col_membership: Option<Membership>,
    ) -> Self {
        Self {
            rows: AxisInfo {
                names: m.row_names().to_vec(),
                membership: row_membership,
            },
            cols: AxisInfo {
                names: m.col_names().to_vec(),
                membership: col_membership,
            },
            smoothed: false,
        }
    }

    pub fn from_smoothed<F: Scalar>(
        s: &SmoothedMatrix<F>,
        row_names: Vec<String>,
        col_names: Vec<String>,
    ) -> Self {
        Self {
            rows: AxisInfo {
                names: row_names,
                membership: Some(s.row_membership().clone()),
            },
            cols: AxisInfo {
                names: col_names,
                membership: Some(s.col_membership().clone()),
            },
            smoothed: true,
        }
    }
}
