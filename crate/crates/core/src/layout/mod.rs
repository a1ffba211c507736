//! Pane geometry for a figure: where the heatmap, labels, adjacent panels,
//! dendrograms, titles and legend sit on the canvas.

mod geometry;
mod spec;
pub mod text;

pub use geometry::{
    axis_map, compute_layout, dendrogram_geometry, format_tick, panel_range, panel_ticks,
    DendrogramOrientation, Interval, Pane, PaneRole, PanelLayout, Rect, Segment,
};
pub(crate) use geometry::{label_texts, resolve_label_mode, TICK_LENGTH};
pub use spec::{
    Alignment, AxisInfo, AxisSide, FigureSpec, HeatmapAxes, LabelMode, LabelStyle, LegendPosition,
};
