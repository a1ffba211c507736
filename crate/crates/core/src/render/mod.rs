//! Deterministic SVG output: color scales, panel statistics and the scene
//! renderer.

mod chart;
pub mod color;
mod scene;
pub mod stats;
mod svg;
mod viridis;

pub use chart::{render_line_chart, LineChart};
pub use color::{map_color, named_palette, viridis, ColorScale, Rgb};
pub use scene::{color_scale, render_figure, render_scene, Cells, Scene};
pub use stats::{local_linear, quantile_sorted, BoxplotStats};
pub use svg::{escape, num as format_number};
pub use viridis::VIRIDIS;
