//! Command pipelines: every output is computed in memory first and only
//! written once the whole command has succeeded.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use supergrid::clustering::{
    cosine_distance, cut_dendrogram, hcluster, kmeans, pam, DistanceKind, DistanceMatrix,
    KMeansConfig, Linkage, Membership,
};
use supergrid::data::{
    apply_ordering, order_by_col_mean, order_by_row_mean, AdjacentSeries, Axis, AxisOrder,
    LabeledMatrix, PlotType, Side, SortDirection,
};
use supergrid::diagnostics::{
    silhouette, stability_curve, StabilityConfig, StabilityMethod, StabilityReport,
};
use supergrid::io::{
    read_matrix, read_membership, read_series, read_series_column, write_matrix, CsvOptions,
};
use supergrid::layout::{
    Alignment, AxisSide, FigureSpec, HeatmapAxes, LabelMode, LabelStyle, LegendPosition,
};
use supergrid::render::{
    named_palette, render_figure, render_line_chart, Cells, LineChart, Rgb, Scene,
};
use supergrid::smoothing::{smooth_by_cluster, SmoothStat};
use supergrid::{Error, Tree};

use crate::config::{
    AlignName, DistanceName, LabelName, LegendName, LinkageName, Loaded, Method, OneOrMany,
    OrderRule, OrderSpec, RunConfig, SideName, SmoothType,
};
use crate::error::CliError;
use crate::output::{sha256_hex, FileEntry, Outputs};

/// Command-line values that take precedence over the config file.
#[derive(Debug, Clone, Default)]
pub struct Flags {
    pub matrix: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
}

/// A finished computation waiting to be written.
#[derive(Debug)]
pub struct Run {
    pub command: &'static str,
    pub seed: u64,
    pub primary: PathBuf,
    pub inputs: Vec<FileEntry>,
    pub outputs: Outputs,
}

/// Reads input files, remembering their hashes for the manifest.
struct Inputs<'a> {
    base_dir: &'a Path,
    seen: Vec<FileEntry>,
}

impl<'a> Inputs<'a> {
    fn new(base_dir: &'a Path) -> Self {
        Self {
            base_dir,
            seen: Vec::new(),
        }
    }

    fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    fn read(&mut self, path: &Path) -> Result<Vec<u8>, CliError> {
        let bytes = std::fs::read(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let entry = FileEntry {
            path: path.display().to_string(),
            sha256: sha256_hex(&bytes),
        };
        if !self.seen.iter().any(|e| e.path == entry.path) {
            self.seen.push(entry);
        }
        Ok(bytes)
    }

    /// The heatmap matrix: `--matrix` is taken relative to the working
    /// directory, the config's `matrix` relative to the config file.
    fn matrix(&mut self, cfg: &RunConfig, flags: &Flags) -> Result<LabeledMatrix<f64>, CliError> {
        let path = match (&flags.matrix, &cfg.matrix) {
            (Some(p), _) => p.clone(),
            (None, Some(p)) => self.resolve(p),
            (None, None) => {
                return Err(CliError::Config(
                    "no input matrix: set `matrix` or pass --matrix".into(),
                ))
            }
        };
        let bytes = self.read(&path)?;
        let loaded = read_matrix::<f64, _>(&bytes[..], &CsvOptions::default())?;
        for w in &loaded.warnings {
            log::warn!("{}: {w}", path.display());
        }
        Ok(loaded.matrix)
    }
}

fn out_path(cfg: &RunConfig, flags: &Flags, inputs: &Inputs) -> Result<PathBuf, CliError> {
    match (&flags.out, &cfg.out) {
        (Some(p), _) => Ok(p.clone()),
        (None, Some(p)) => Ok(inputs.resolve(p)),
        (None, None) => Err(CliError::Config(
            "no output path: set `out` or pass --out".into(),
        )),
    }
}

fn config_err(field: &str, why: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("config field `{field}`: {why}"))
}

fn linkage(l: LinkageName) -> Linkage {
    match l {
        LinkageName::Single => Linkage::Single,
        LinkageName::Complete => Linkage::Complete,
        LinkageName::Average => Linkage::Average,
    }
}

/// Dissimilarities between the objects of one axis.
fn distances(
    objects: &LabeledMatrix<f64>,
    kind: DistanceName,
) -> Result<DistanceMatrix<f64>, CliError> {
    Ok(match kind {
        DistanceName::Euclidean => DistanceMatrix::from_rows(objects, DistanceKind::Euclidean)?,
        DistanceName::Cosine => DistanceMatrix::from_rows(objects, DistanceKind::Cosine)?,
        DistanceName::Similarity => similarity_distances(objects)?,
    })
}

fn similarity_distances(s: &LabeledMatrix<f64>) -> Result<DistanceMatrix<f64>, CliError> {
    let n = s.n_rows();
    if s.n_cols() != n {
        return Err(Error::Dimension(format!(
            "a similarity matrix must be square, got {} x {}",
            n,
            s.n_cols()
        ))
        .into());
    }
    let rows = s.dense_rows("similarity distance")?;
    let mut values = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            values.push(if i == j {
                0.0
            } else {
                cosine_distance(v.clamp(-1.0, 1.0))
            });
        }
    }
    Ok(DistanceMatrix::from_full(n, values)?)
}

/// Matrix whose rows are the objects of `axis`.
fn objects(m: &LabeledMatrix<f64>, axis: Axis) -> LabeledMatrix<f64> {
    match axis {
        Axis::Row => m.clone(),
        Axis::Column => m.transpose(),
    }
}

fn axis_name(axis: Axis) -> &'static str {
    match axis {
        Axis::Row => "rows",
        Axis::Column => "cols",
    }
}

/// How one axis is grouped before display.
enum Grouping {
    None,
    Clusters(Membership),
    Tree(Tree),
}

impl Grouping {
    fn membership(&self) -> Option<&Membership> {
        match self {
            Grouping::Clusters(m) => Some(m),
            _ => None,
        }
    }
}

fn cluster(
    m: &LabeledMatrix<f64>,
    axis: Axis,
    k: usize,
    cfg: &RunConfig,
    seed: u64,
) -> Result<Membership, CliError> {
    let obj = objects(m, axis);
    Ok(match cfg.clustering_method {
        Method::Kmeans => {
            if cfg.distance != DistanceName::Euclidean {
                log::info!(
                    "k-means clusters raw {} vectors; `distance` is ignored",
                    axis_name(axis)
                );
            }
            kmeans(&obj, &KMeansConfig::new(k, seed))?.membership
        }
        Method::Pam => {
            let fit = pam(&distances(&obj, cfg.distance)?, k)?;
            let names = fit
                .medoids()
                .iter()
                .map(|&i| obj.row_names()[i].clone())
                .collect();
            fit.membership.with_label_names(names)?
        }
        Method::Hierarchical => cut_dendrogram(
            &hcluster(&distances(&obj, cfg.distance)?, linkage(cfg.linkage))?,
            k,
        )?,
    })
}

fn grouping(
    m: &LabeledMatrix<f64>,
    axis: Axis,
    cfg: &RunConfig,
    seed: u64,
    inputs: &mut Inputs,
) -> Result<Grouping, CliError> {
    let (file, clusters, dendro) = match axis {
        Axis::Row => (
            &cfg.membership_rows,
            cfg.n_clusters_rows,
            cfg.row_dendrogram,
        ),
        Axis::Column => (
            &cfg.membership_cols,
            cfg.n_clusters_cols,
            cfg.col_dendrogram,
        ),
    };
    if let Some(p) = file {
        let path = inputs.resolve(p);
        let bytes = inputs.read(&path)?;
        let (names, mem) = read_membership(&bytes[..])?;
        let expected = m.names(axis);
        if names.len() != expected.len() {
            return Err(Error::Dimension(format!(
                "{} lists {} objects but the matrix has {} {}",
                path.display(),
                names.len(),
                expected.len(),
                axis_name(axis)
            ))
            .into());
        }
        if let Some(i) = names.iter().zip(expected).position(|(a, b)| a != b) {
            log::warn!(
                "{}: object {i} is named {:?} but matrix {} {i} is {:?}; aligning by position",
                path.display(),
                names[i],
                axis_name(axis),
                expected[i]
            );
        }
        return Ok(Grouping::Clusters(mem));
    }
    if let Some(k) = clusters {
        return Ok(Grouping::Clusters(cluster(m, axis, k, cfg, seed)?));
    }
    if dendro {
        let d = distances(&objects(m, axis), cfg.distance)?;
        return Ok(Grouping::Tree(hcluster(&d, linkage(cfg.linkage))?));
    }
    Ok(Grouping::None)
}

/// Per-object silhouette widths for the objects of `axis`.
fn silhouette_values(
    m: &LabeledMatrix<f64>,
    axis: Axis,
    mem: Option<&Membership>,
    cfg: &RunConfig,
    field: &str,
) -> Result<Vec<f64>, CliError> {
    let mem = mem.ok_or_else(|| config_err(field, "silhouette needs a membership on that axis"))?;
    let d = distances(&objects(m, axis), cfg.distance)?;
    Ok(silhouette(&d, mem)?.sil)
}

/// Display order of one axis (indices into the input), and the grouping
/// moved into display positions.
fn display_order(
    m: &LabeledMatrix<f64>,
    axis: Axis,
    grouping: &Grouping,
    spec: Option<&OrderSpec>,
    cfg: &RunConfig,
) -> Result<AxisOrder, CliError> {
    let field = format!("order_{}", axis_name(axis));
    if let Grouping::Tree(t) = grouping {
        return Ok(AxisOrder::new(axis, t.leaf_order().to_vec())?);
    }
    let base = match spec {
        None => AxisOrder::identity(axis, m.len(axis)),
        Some(OrderSpec::Indices(v)) => {
            AxisOrder::new(axis, v.clone()).map_err(|e| config_err(&field, e))?
        }
        Some(OrderSpec::Rule(OrderRule::MeanAsc)) => mean_order(m, axis, SortDirection::Ascending)?,
        Some(OrderSpec::Rule(OrderRule::MeanDesc)) => {
            mean_order(m, axis, SortDirection::Descending)?
        }
        Some(OrderSpec::Rule(OrderRule::Silhouette)) => {
            let sil = silhouette_values(m, axis, grouping.membership(), cfg, &field)?;
            let mut perm: Vec<usize> = (0..sil.len()).collect();
            perm.sort_by(|&a, &b| sil[a].total_cmp(&sil[b]));
            AxisOrder::new(axis, perm)?
        }
    };
    match grouping.membership() {
        Some(mem) => {
            // keep each cluster contiguous, clusters in label order
            let mut perm = base.permutation().to_vec();
            perm.sort_by_key(|&i| mem.labels()[i]);
            Ok(AxisOrder::new(axis, perm)?)
        }
        None => Ok(base),
    }
}

fn mean_order(
    m: &LabeledMatrix<f64>,
    axis: Axis,
    dir: SortDirection,
) -> Result<AxisOrder, CliError> {
    Ok(match axis {
        Axis::Row => order_by_row_mean(m, dir)?,
        Axis::Column => order_by_col_mean(m, dir)?,
    })
}

fn color(field: &str, s: &str) -> Result<Rgb, CliError> {
    Rgb::from_str(s).map_err(|e| config_err(field, e))
}

fn colors(field: &str, c: &OneOrMany) -> Result<Vec<Rgb>, CliError> {
    c.clone()
        .into_vec()
        .iter()
        .map(|s| color(field, s))
        .collect()
}

fn palette(cfg: &RunConfig) -> Result<Vec<Rgb>, CliError> {
    match &cfg.heat_pal {
        None => Ok(supergrid::render::viridis()),
        Some(OneOrMany::One(name)) => named_palette(name).ok_or_else(|| {
            config_err(
                "heat_pal",
                format!(
                    "unknown palette {name:?} (use viridis, BuPu, RdBu, greys or a color list)"
                ),
            )
        }),
        Some(many) => colors("heat_pal", many),
    }
}

struct SeriesKeys<'a> {
    prefix: &'static str,
    source: &'a Option<String>,
    column: &'a Option<String>,
    plot_type: &'a Option<String>,
    axis_name: &'a Option<String>,
    obs_col: &'a Option<OneOrMany>,
    point_alpha: Option<f64>,
    bar_col: &'a Option<OneOrMany>,
}

fn series_keys(cfg: &RunConfig, side: Side) -> SeriesKeys<'_> {
    match side {
        Side::Top => SeriesKeys {
            prefix: "yt",
            source: &cfg.yt,
            column: &cfg.yt_column,
            plot_type: &cfg.yt_plot_type,
            axis_name: &cfg.yt_axis_name,
            obs_col: &cfg.yt_obs_col,
            point_alpha: cfg.yt_point_alpha,
            bar_col: &cfg.yt_bar_col,
        },
        Side::Right => SeriesKeys {
            prefix: "yr",
            source: &cfg.yr,
            column: &cfg.yr_column,
            plot_type: &cfg.yr_plot_type,
            axis_name: &cfg.yr_axis_name,
            obs_col: &cfg.yr_obs_col,
            point_alpha: cfg.yr_point_alpha,
            bar_col: &cfg.yr_bar_col,
        },
    }
}

/// Adjacent series in input order. `"silhouette"` plots the silhouette
/// width of every object on that axis.
fn adjacent_series(
    m: &LabeledMatrix<f64>,
    side: Side,
    mem: Option<&Membership>,
    cfg: &RunConfig,
    inputs: &mut Inputs,
) -> Result<Option<AdjacentSeries>, CliError> {
    let keys = series_keys(cfg, side);
    let Some(source) = keys.source else {
        return Ok(None);
    };
    let axis = side.axis();
    let field = |k: &str| format!("{}_{k}", keys.prefix);
    let is_sil = source == "silhouette";
    let values = if is_sil {
        silhouette_values(m, axis, mem, cfg, keys.prefix)?
            .into_iter()
            .map(Some)
            .collect()
    } else {
        let path = inputs.resolve(Path::new(source));
        let bytes = inputs.read(&path)?;
        let opts = CsvOptions::default();
        match keys.column {
            Some(col) => read_series_column(&bytes[..], col, &opts)?,
            None => {
                let pairs = read_series(&bytes[..], &opts)?;
                let names = m.names(axis);
                if pairs.len() == names.len() {
                    if let Some(i) = pairs.iter().zip(names).position(|((a, _), b)| a != b) {
                        log::warn!(
                            "{}: entry {i} is named {:?} but matrix {} {i} is {:?}; aligning by position",
                            path.display(),
                            pairs[i].0,
                            axis_name(axis),
                            names[i]
                        );
                    }
                }
                pairs.into_iter().map(|(_, v)| v).collect()
            }
        }
    };
    let plot_type = match keys.plot_type {
        Some(t) => PlotType::from_str(t).map_err(|e| config_err(&field("plot_type"), e))?,
        None if is_sil => PlotType::Bar,
        None => PlotType::Scatter,
    };
    if plot_type == PlotType::Dendrogram {
        return Err(config_err(
            &field("plot_type"),
            "draw dendrograms with row_dendrogram / col_dendrogram",
        ));
    }
    let mut series = AdjacentSeries::new(side, values, plot_type);
    series.axis_name = keys.axis_name.clone().unwrap_or_else(|| {
        if is_sil {
            "silhouette".into()
        } else {
            String::new()
        }
    });
    series.point_alpha = keys.point_alpha.unwrap_or(1.0);
    for (key, src, dst) in [
        ("obs_col", keys.obs_col, &mut series.point_colors),
        ("bar_col", keys.bar_col, &mut series.bar_colors),
    ] {
        if let Some(c) = src {
            let list = c.clone().into_vec();
            for s in &list {
                color(&field(key), s)?;
            }
            *dst = Some(list);
        }
    }
    series.validate(m.len(axis))?;
    Ok(Some(series))
}

fn label_mode(l: LabelName) -> LabelMode {
    match l {
        LabelName::Auto => LabelMode::Auto,
        LabelName::Variable => LabelMode::Variable,
        LabelName::Cluster => LabelMode::Cluster,
        LabelName::None => LabelMode::None,
    }
}

fn alignment(a: AlignName) -> Alignment {
    match a {
        AlignName::Left => Alignment::Left,
        AlignName::Center => Alignment::Center,
        AlignName::Right => Alignment::Right,
    }
}

#[allow(clippy::too_many_arguments)]
fn label_style(
    prefix: &str,
    col: &Option<OneOrMany>,
    alpha: Option<f64>,
    text_col: &Option<String>,
    angle: Option<f64>,
    align: AlignName,
    size: Option<f64>,
    order: &AxisOrder,
) -> Result<LabelStyle, CliError> {
    let mut style = LabelStyle::default();
    if let Some(c) = col {
        let list = colors(&format!("{prefix}_label_col"), c)?;
        // per-object colors follow their objects; anything else is used as given
        style.background = if list.len() == order.len() && list.len() > 1 {
            order.apply_to(&list)?
        } else {
            list
        };
    }
    if let Some(a) = alpha {
        style.background_alpha = a;
    }
    if let Some(t) = text_col {
        style.text_color = color(&format!("{prefix}_label_text_col"), t)?;
    }
    if let Some(a) = angle {
        style.angle = a.rem_euclid(360.0);
    }
    style.alignment = alignment(align);
    if let Some(s) = size {
        style.font_size = s;
    }
    Ok(style)
}

/// Everything `render` draws, before layout.
struct Prepared {
    spec: FigureSpec,
    scene: Scene,
}

fn prepare_render(
    cfg: &RunConfig,
    m: &LabeledMatrix<f64>,
    seed: u64,
    inputs: &mut Inputs,
) -> Result<Prepared, CliError> {
    let rg = grouping(m, Axis::Row, cfg, seed, inputs)?;
    let cg = grouping(m, Axis::Column, cfg, seed, inputs)?;
    let top = adjacent_series(m, Side::Top, cg.membership(), cfg, inputs)?;
    let right = adjacent_series(m, Side::Right, rg.membership(), cfg, inputs)?;

    let ro = display_order(m, Axis::Row, &rg, cfg.order_rows.as_ref(), cfg)?;
    let co = display_order(m, Axis::Column, &cg, cfg.order_cols.as_ref(), cfg)?;
    let shown = apply_ordering(m, Some(&ro), Some(&co))?;

    let moved =
        |g: &Grouping, o: &AxisOrder| -> Result<(Option<Membership>, Option<Tree>), CliError> {
            Ok(match g {
                Grouping::None => (None, None),
                Grouping::Clusters(mem) => (Some(mem.reordered(o)?), None),
                Grouping::Tree(t) => (None, Some(t.relabeled(o.inverse().permutation())?)),
            })
        };
    let (row_mem, row_tree) = moved(&rg, &ro)?;
    let (col_mem, col_tree) = moved(&cg, &co)?;

    let spec = FigureSpec {
        width: cfg.width,
        height: cfg.height,
        palette: palette(cfg)?,
        palette_breaks: cfg.heat_pal_values.clone(),
        na_color: match &cfg.heat_na_col {
            Some(c) => color("heat_na_col", c)?,
            None => Rgb::new(255, 255, 255),
        },
        smooth_heat: cfg.smooth_heat,
        row_dendrogram: row_tree.is_some(),
        col_dendrogram: col_tree.is_some(),
        top_panel: top.map(|s| s.reordered(&co)).transpose()?,
        right_panel: right.map(|s| s.reordered(&ro)).transpose()?,
        left_label: label_mode(cfg.left_label),
        bottom_label: label_mode(cfg.bottom_label),
        left_label_style: label_style(
            "left",
            &cfg.left_label_col,
            cfg.left_label_alpha,
            &cfg.left_label_text_col,
            cfg.left_label_text_angle,
            cfg.left_label_text_alignment,
            cfg.left_label_text_size,
            &ro,
        )?,
        bottom_label_style: label_style(
            "bottom",
            &cfg.bottom_label_col,
            cfg.bottom_label_alpha,
            &cfg.bottom_label_text_col,
            cfg.bottom_label_text_angle,
            cfg.bottom_label_text_alignment,
            cfg.bottom_label_text_size,
            &co,
        )?,
        grid_hline_color: cfg
            .grid_hline_col
            .as_deref()
            .map(|c| color("grid_hline_col", c))
            .transpose()?,
        grid_vline_color: cfg
            .grid_vline_col
            .as_deref()
            .map(|c| color("grid_vline_col", c))
            .transpose()?,
        row_title: cfg.row_title.clone(),
        column_title: cfg.column_title.clone(),
        legend: cfg.legend,
        legend_position: match cfg.legend_position {
            LegendName::Bottom => LegendPosition::BottomCenter,
            LegendName::Right => LegendPosition::Right,
        },
        smooth_span: cfg.smooth_span,
        top_axis_side: match cfg.yt_axis_side {
            SideName::Left => AxisSide::Left,
            SideName::Right => AxisSide::Right,
        },
        ..FigureSpec::default()
    };
    spec.validate()
        .map_err(|e| CliError::Config(e.to_string()))?;

    let scene = if cfg.smooth_heat {
        let singletons =
            |names: &[String]| Membership::singletons(names.len()).with_label_names(names.to_vec());
        let rm = match &row_mem {
            Some(mm) => mm.clone(),
            None => singletons(shown.row_names())?,
        };
        let cm = match &col_mem {
            Some(mm) => mm.clone(),
            None => singletons(shown.col_names())?,
        };
        let s = smooth_by_cluster(&shown, &rm, &cm, smooth_stat(cfg.smooth_heat_type))?;
        Scene {
            axes: HeatmapAxes::from_smoothed(
                &s,
                shown.row_names().to_vec(),
                shown.col_names().to_vec(),
            ),
            cells: Cells::Smoothed(s),
            row_dendrogram: row_tree,
            col_dendrogram: col_tree,
        }
    } else {
        Scene {
            axes: HeatmapAxes::from_matrix(&shown, row_mem, col_mem),
            cells: Cells::Raw(shown),
            row_dendrogram: row_tree,
            col_dendrogram: col_tree,
        }
    };
    Ok(Prepared { spec, scene })
}

fn smooth_stat(t: SmoothType) -> SmoothStat {
    match t {
        SmoothType::Median => SmoothStat::Median,
        SmoothType::Mean => SmoothStat::Mean,
    }
}

pub fn render(loaded: &Loaded, flags: &Flags) -> Result<Run, CliError> {
    let cfg = &loaded.config;
    let seed = cfg.resolve_seed(flags.seed)?;
    let mut inputs = Inputs::new(&loaded.base_dir);
    let out = out_path(cfg, flags, &inputs)?;
    let m = inputs.matrix(cfg, flags)?;
    let p = prepare_render(cfg, &m, seed, &mut inputs)?;
    let svg = render_figure(&p.spec, &p.scene)?;
    let mut outputs = Outputs::default();
    outputs.add(out.clone(), svg);
    Ok(finish("render", seed, out, inputs, outputs, loaded))
}

fn finish(
    command: &'static str,
    seed: u64,
    primary: PathBuf,
    inputs: Inputs,
    outputs: Outputs,
    loaded: &Loaded,
) -> Run {
    let mut entries = Vec::new();
    if let Some(p) = &loaded.config_path {
        if let Ok(bytes) = std::fs::read(p) {
            entries.push(FileEntry {
                path: p.display().to_string(),
                sha256: sha256_hex(&bytes),
            });
        }
    }
    entries.extend(inputs.seen);
    Run {
        command,
        seed,
        primary,
        inputs: entries,
        outputs,
    }
}

/// `k,mean_jaccard,mean_silhouette` with six decimals.
pub fn stability_csv(reports: &[StabilityReport]) -> String {
    let mut s = String::from("k,mean_jaccard,mean_silhouette\n");
    for r in reports {
        s.push_str(&format!(
            "{},{:.6},{:.6}\n",
            r.k, r.mean_pairwise_jaccard, r.mean_silhouette
        ));
    }
    s
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    path.with_file_name(format!("{stem}{suffix}"))
}

pub fn diagnose(loaded: &Loaded, flags: &Flags) -> Result<Run, CliError> {
    let cfg = &loaded.config;
    let seed = cfg.resolve_seed(flags.seed)?;
    let mut inputs = Inputs::new(&loaded.base_dir);
    let out = out_path(cfg, flags, &inputs)?;
    let m = inputs.matrix(cfg, flags)?;
    let method = match cfg.diagnose_method.unwrap_or(cfg.clustering_method) {
        Method::Kmeans => StabilityMethod::KMeans,
        Method::Pam => StabilityMethod::Pam,
        Method::Hierarchical => {
            return Err(config_err(
                "diagnose_method",
                "stability curves support kmeans and pam",
            ));
        }
    };
    let distance = match cfg.diagnose_distance.unwrap_or(cfg.distance) {
        DistanceName::Euclidean => DistanceKind::Euclidean,
        DistanceName::Cosine => DistanceKind::Cosine,
        DistanceName::Similarity => {
            return Err(config_err(
                "diagnose_distance",
                "subsampling needs row vectors; use euclidean or cosine",
            ));
        }
    };
    let reports = stability_curve(
        &m,
        &StabilityConfig {
            k_min: cfg.k_min,
            k_max: cfg.k_max,
            method,
            subsamples: cfg.subsamples,
            fraction: cfg.subsample_fraction,
            seed,
            distance,
            ..StabilityConfig::default()
        },
    )?;
    let chart = |title: &str, y_label: &str, f: fn(&StabilityReport) -> f64| {
        render_line_chart(&LineChart {
            title: title.to_string(),
            x_label: "number of clusters k".into(),
            y_label: y_label.to_string(),
            points: reports.iter().map(|r| (r.k as f64, f(r))).collect(),
            width: 640.0,
            height: 400.0,
        })
    };
    let label = format!(
        "{} {:.0}% subsamples",
        cfg.subsamples,
        cfg.subsample_fraction * 100.0
    );
    let jac = chart(
        &format!("Average pairwise Jaccard similarity, {label}"),
        "mean Jaccard",
        |r| r.mean_pairwise_jaccard,
    )?;
    let sil = chart(
        &format!("Average silhouette width, {label}"),
        "mean silhouette",
        |r| r.mean_silhouette,
    )?;
    let mut outputs = Outputs::default();
    outputs.add(out.clone(), stability_csv(&reports));
    outputs.add(sibling(&out, "_jaccard.svg"), jac);
    outputs.add(sibling(&out, "_silhouette.svg"), sil);
    Ok(finish("diagnose", seed, out, inputs, outputs, loaded))
}

pub fn smooth(loaded: &Loaded, flags: &Flags) -> Result<Run, CliError> {
    let cfg = &loaded.config;
    let seed = cfg.resolve_seed(flags.seed)?;
    let mut inputs = Inputs::new(&loaded.base_dir);
    let out = out_path(cfg, flags, &inputs)?;
    let m = inputs.matrix(cfg, flags)?;
    let mut mems = Vec::with_capacity(2);
    for axis in [Axis::Row, Axis::Column] {
        mems.push(match grouping(&m, axis, cfg, seed, &mut inputs)? {
            Grouping::Clusters(mem) => mem,
            Grouping::None => {
                let names = m.names(axis).to_vec();
                Membership::singletons(names.len()).with_label_names(names)?
            }
            Grouping::Tree(_) => {
                return Err(config_err(
                    &format!(
                        "{}_dendrogram",
                        if axis == Axis::Row { "row" } else { "col" }
                    ),
                    "smooth needs clusters; set n_clusters instead",
                ))
            }
        });
    }
    let s = smooth_by_cluster(&m, &mems[0], &mems[1], smooth_stat(cfg.smooth_heat_type))?;
    let mut csv = Vec::new();
    write_matrix(&s.to_labeled()?, &mut csv)?;
    let mut outputs = Outputs::default();
    outputs.add(out.clone(), csv);
    Ok(finish("smooth", seed, out, inputs, outputs, loaded))
}
