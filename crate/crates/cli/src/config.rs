//! Run configuration: a JSON document whose keys follow the superheat
//! argument names with dots replaced by underscores (`heat.pal` becomes
//! `heat_pal`), plus `--key=value` overrides from the command line.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::{Map, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum OneOrMany {
    One(String),
    Many(Vec<String>),
}

impl OneOrMany {
    pub fn into_vec(self) -> Vec<String> {
        match self {
            OneOrMany::One(s) => vec![s],
            OneOrMany::Many(v) => v,
        }
    }
}

/// Axis ordering: explicit 0-based indices or a named rule.
#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum OrderSpec {
    Indices(Vec<usize>),
    Rule(OrderRule),
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum OrderRule {
    MeanAsc,
    MeanDesc,
    /// Ascending cosine-silhouette width (square similarity input).
    Silhouette,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    #[default]
    Kmeans,
    Pam,
    Hierarchical,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "snake_case")]
pub enum DistanceName {
    #[default]
    Euclidean,
    Cosine,
    /// The matrix itself holds cosine similarities; `d = arccos(s) / pi`.
    Similarity,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "snake_case")]
pub enum LinkageName {
    Single,
    #[default]
    Complete,
    Average,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "snake_case")]
pub enum SmoothType {
    #[default]
    Median,
    Mean,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "snake_case")]
pub enum LabelName {
    #[default]
    Auto,
    Variable,
    Cluster,
    None,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "snake_case")]
pub enum AlignName {
    Left,
    #[default]
    Center,
    Right,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "snake_case")]
pub enum SideName {
    #[default]
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "snake_case")]
pub enum LegendName {
    #[default]
    Bottom,
    Right,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub matrix: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,

    pub order_rows: Option<OrderSpec>,
    pub order_cols: Option<OrderSpec>,
    pub membership_rows: Option<PathBuf>,
    pub membership_cols: Option<PathBuf>,
    pub n_clusters_rows: Option<usize>,
    pub n_clusters_cols: Option<usize>,
    pub row_dendrogram: bool,
    pub col_dendrogram: bool,
    pub clustering_method: Method,
    pub distance: DistanceName,
    pub linkage: LinkageName,

    pub smooth_heat: bool,
    pub smooth_heat_type: SmoothType,

    pub heat_pal: Option<OneOrMany>,
    pub heat_pal_values: Option<Vec<f64>>,
    pub heat_na_col: Option<String>,

    /// Series file, or `"silhouette"`.
    pub yt: Option<String>,
    pub yt_column: Option<String>,
    pub yt_plot_type: Option<String>,
    pub yt_axis_name: Option<String>,
    pub yt_obs_col: Option<OneOrMany>,
    pub yt_point_alpha: Option<f64>,
    pub yt_bar_col: Option<OneOrMany>,
    pub yt_axis_side: SideName,
    pub yr: Option<String>,
    pub yr_column: Option<String>,
    pub yr_plot_type: Option<String>,
    pub yr_axis_name: Option<String>,
    pub yr_obs_col: Option<OneOrMany>,
    pub yr_point_alpha: Option<f64>,
    pub yr_bar_col: Option<OneOrMany>,

    pub left_label: LabelName,
    pub bottom_label: LabelName,
    pub left_label_col: Option<OneOrMany>,
    pub bottom_label_col: Option<OneOrMany>,
    pub left_label_alpha: Option<f64>,
    pub bottom_label_alpha: Option<f64>,
    pub left_label_text_col: Option<String>,
    pub bottom_label_text_col: Option<String>,
    pub left_label_text_angle: Option<f64>,
    pub bottom_label_text_angle: Option<f64>,
    pub left_label_text_alignment: AlignName,
    pub bottom_label_text_alignment: AlignName,
    pub left_label_text_size: Option<f64>,
    pub bottom_label_text_size: Option<f64>,

    pub grid_hline_col: Option<String>,
    pub grid_vline_col: Option<String>,
    pub row_title: Option<String>,
    pub column_title: Option<String>,
    pub legend: bool,
    pub legend_position: LegendName,
    pub width: f64,
    pub height: f64,
    pub smooth_span: f64,

    pub k_min: usize,
    pub k_max: usize,
    pub subsamples: usize,
    pub subsample_fraction: f64,
    pub diagnose_method: Option<Method>,
    pub diagnose_distance: Option<DistanceName>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            matrix: None,
            out: None,
            seed: None,
            order_rows: None,
            order_cols: None,
            membership_rows: None,
            membership_cols: None,
            n_clusters_rows: None,
            n_clusters_cols: None,
            row_dendrogram: false,
            col_dendrogram: false,
            clustering_method: Method::Kmeans,
            distance: DistanceName::Euclidean,
            linkage: LinkageName::Complete,
            smooth_heat: false,
            smooth_heat_type: SmoothType::Median,
            heat_pal: None,
            heat_pal_values: None,
            heat_na_col: None,
            yt: None,
            yt_column: None,
            yt_plot_type: None,
            yt_axis_name: None,
            yt_obs_col: None,
            yt_point_alpha: None,
            yt_bar_col: None,
            yt_axis_side: SideName::Left,
            yr: None,
            yr_column: None,
            yr_plot_type: None,
            yr_axis_name: None,
            yr_obs_col: None,
            yr_point_alpha: None,
            yr_bar_col: None,
            left_label: LabelName::Auto,
            bottom_label: LabelName::Auto,
            left_label_col: None,
            bottom_label_col: None,
            left_label_alpha: None,
            bottom_label_alpha: None,
            left_label_text_col: None,
            bottom_label_text_col: None,
            left_label_text_angle: None,
            bottom_label_text_angle: None,
            left_label_text_alignment: AlignName::Center,
            bottom_label_text_alignment: AlignName::Center,
            left_label_text_size: None,
            bottom_label_text_size: None,
            grid_hline_col: None,
            grid_vline_col: None,
            row_title: None,
            column_title: None,
            legend: true,
            legend_position: LegendName::Bottom,
            width: 800.0,
            height: 800.0,
            smooth_span: 0.75,
            k_min: 2,
            k_max: 6,
            subsamples: 100,
            subsample_fraction: 0.9,
            diagnose_method: None,
            diagnose_distance: None,
        }
    }
}

/// Canonical config key for a command-line flag name: `heat.pal`,
/// `heat-pal` and `heat_pal` all name the same key.
pub fn normalize_key(key: &str) -> String {
    key.replace(['.', '-'], "_")
}

/// Override values are read as JSON when they parse, else as plain strings
/// (so `--heat_pal=RdBu` and `--width=640` both work).
pub fn override_value(raw: &str) -> Value {
    serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()))
}

/// Loaded configuration plus the directory relative paths resolve against.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub config: RunConfig,
    pub base_dir: PathBuf,
    pub config_path: Option<PathBuf>,
}

pub fn load(path: Option<&Path>, overrides: &[(String, String)]) -> Result<Loaded, CliError> {
    let (mut doc, base_dir) = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| {
                CliError::Config(format!("cannot read config {}: {e}", p.display()))
            })?;
            let doc: Value = serde_json::from_str(&text)
                .map_err(|e| CliError::Config(format!("{}: invalid JSON: {e}", p.display())))?;
            let dir = p.parent().map(Path::to_path_buf).unwrap_or_default();
            (doc, dir)
        }
        None => (Value::Object(Map::new()), PathBuf::new()),
    };
    let Value::Object(map) = &mut doc else {
        return Err(CliError::Config("config must be a JSON object".into()));
    };
    for (k, v) in overrides {
        map.insert(normalize_key(k), override_value(v));
    }
    let config: RunConfig = serde_path_to_error::deserialize(doc).map_err(|e| {
        let at = e.path().to_string();
        CliError::Config(format!("config field `{at}`: {}", e.into_inner()))
    })?;
    config.check()?;
    Ok(Loaded {
        config,
        base_dir,
        config_path: path.map(Path::to_path_buf),
    })
}

impl RunConfig {
    fn check(&self) -> Result<(), CliError> {
        let bad = |field: &str, why: String| {
            Err(CliError::Config(format!("config field `{field}`: {why}")))
        };
        for (axis, membership, clusters, dendro, order) in [
            (
                "rows",
                &self.membership_rows,
                self.n_clusters_rows,
                self.row_dendrogram,
                &self.order_rows,
            ),
            (
                "cols",
                &self.membership_cols,
                self.n_clusters_cols,
                self.col_dendrogram,
                &self.order_cols,
            ),
        ] {
            let set = usize::from(membership.is_some())
                + usize::from(clusters.is_some())
                + usize::from(dendro);
            if set > 1 {
                return bad(
                    &format!("membership_{axis}"),
                    "set at most one of membership, cluster count and dendrogram per axis".into(),
                );
            }
            if dendro && order.is_some() {
                return bad(
                    &format!("order_{axis}"),
                    "a dendrogram already orders this axis".into(),
                );
            }
            if clusters == Some(0) {
                return bad(&format!("n_clusters_{axis}"), "must be at least 1".into());
            }
        }
        if !(self.width > 0.0 && self.height > 0.0) {
            return bad(
                "width",
                format!("canvas {} x {} is empty", self.width, self.height),
            );
        }
        if !(self.subsample_fraction > 0.0 && self.subsample_fraction <= 1.0) {
            return bad(
                "subsample_fraction",
                format!("{} is outside (0, 1]", self.subsample_fraction),
            );
        }
        if self.k_min > self.k_max {
            return bad(
                "k_min",
                format!("{} exceeds k_max {}", self.k_min, self.k_max),
            );
        }
        for (field, v) in [
            ("yt_point_alpha", self.yt_point_alpha),
            ("yr_point_alpha", self.yr_point_alpha),
        ] {
            if let Some(a) = v {
                if !(0.0..=1.0).contains(&a) {
                    return bad(field, format!("{a} is outside [0, 1]"));
                }
            }
        }
        Ok(())
    }

    /// Resolves the seed: explicit flag, then config, then the
    /// `SUPERGRID_SEED` environment variable, then 0.
    pub fn resolve_seed(&self, flag: Option<u64>) -> Result<u64, CliError> {
        if let Some(s) = flag.or(self.seed) {
            return Ok(s);
        }
        match std::env::var("SUPERGRID_SEED") {
            Ok(v) => v.trim().parse().map_err(|_| {
                CliError::Config(format!("SUPERGRID_SEED={v:?} is not an unsigned integer"))
            }),
            Err(_) => Ok(0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(json: &str) -> Result<RunConfig, CliError> {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.json");
        std::fs::write(&p, json).unwrap();
        load(Some(&p), &[]).map(|l| l.config)
    }

    #[test]
    fn defaults() {
        let c = parse("{}").unwrap();
        assert_eq!(c, RunConfig::default());
        assert!(c.legend);
    }

    #[test]
    fn unknown_key_names_the_field() {
        let err = parse(r#"{"heat_pall": "x"}"#).unwrap_err();
        assert!(err.to_string().contains("heat_pall"), "{err}");
    }

    #[test]
    fn wrong_type_names_the_path() {
        let err = parse(r#"{"order_rows": [0, "x"]}"#)
            .unwrap_err()
            .to_string();
        assert!(err.contains("order_rows"), "{err}");
        let err = parse(r#"{"width": "wide"}"#).unwrap_err().to_string();
        assert!(err.contains("width"), "{err}");
    }

    #[test]
    fn palette_forms() {
        let c = parse(r##"{"heat_pal": "RdBu", "order_cols": "mean_desc"}"##).unwrap();
        assert_eq!(c.heat_pal, Some(OneOrMany::One("RdBu".into())));
        assert_eq!(c.order_cols, Some(OrderSpec::Rule(OrderRule::MeanDesc)));
        let c = parse(r##"{"heat_pal": ["#000000", "white"], "order_rows": [1, 0]}"##).unwrap();
        assert_eq!(c.heat_pal.unwrap().into_vec().len(), 2);
        assert_eq!(c.order_rows, Some(OrderSpec::Indices(vec![1, 0])));
    }

    #[test]
    fn one_clustering_source_per_axis() {
        assert!(parse(r#"{"n_clusters_rows": 2, "row_dendrogram": true}"#).is_err());
        assert!(parse(r#"{"n_clusters_rows": 2, "col_dendrogram": true}"#).is_ok());
    }

    #[test]
    fn overrides_win() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.json");
        std::fs::write(&p, r#"{"width": 100, "row_title": "a"}"#).unwrap();
        let o = vec![
            ("width".to_string(), "640".to_string()),
            ("row.title".to_string(), "Rows".to_string()),
            ("heat-pal".to_string(), "BuPu".to_string()),
        ];
        let c = load(Some(&p), &o).unwrap().config;
        assert_eq!(c.width, 640.0);
        assert_eq!(c.row_title.as_deref(), Some("Rows"));
        assert_eq!(c.heat_pal, Some(OneOrMany::One("BuPu".into())));
    }

    #[test]
    fn seed_precedence() {
        let c = RunConfig {
            seed: Some(5),
            ..RunConfig::default()
        };
        assert_eq!(c.resolve_seed(Some(9)).unwrap(), 9);
        assert_eq!(c.resolve_seed(None).unwrap(), 5);
    }
}
