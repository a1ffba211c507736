//! Synthetic stand-ins for the case-study datasets, generated from fixed
//! seeds so every run writes identical bytes.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde_json::{json, Value};
use supergrid::clustering::cosine_similarity;
use supergrid::data::LabeledMatrix;
use supergrid::io::write_matrix;

use crate::error::CliError;

const THEMES: &[[&str; 7]] = &[
    ["cat", "dog", "horse", "cow", "sheep", "goat", "pig"],
    [
        "red", "blue", "green", "yellow", "purple", "orange", "brown",
    ],
    [
        "paris", "london", "berlin", "madrid", "rome", "vienna", "prague",
    ],
    [
        "apple", "banana", "cherry", "grape", "lemon", "mango", "peach",
    ],
    [
        "hammer", "saw", "drill", "wrench", "chisel", "pliers", "shovel",
    ],
    ["car", "bus", "truck", "train", "bicycle", "tram", "ferry"],
    [
        "soccer", "tennis", "golf", "hockey", "rugby", "cricket", "boxing",
    ],
    [
        "piano", "guitar", "violin", "drum", "flute", "cello", "harp",
    ],
    ["rain", "snow", "wind", "storm", "fog", "hail", "frost"],
    ["hand", "foot", "head", "knee", "elbow", "wrist", "ankle"],
    ["iron", "copper", "silver", "gold", "zinc", "nickel", "tin"],
    ["joy", "anger", "fear", "pride", "grief", "shame", "envy"],
];

const SYLLABLES: &[&str] = &[
    "Al", "Bar", "Cor", "Den", "Eri", "Fal", "Gan", "Hol", "Ist", "Jor", "Kal", "Lun", "Mor",
    "Nor", "Ost", "Par", "Ros", "Sal", "Tor", "Val",
];

const REGION_COLORS: [&str; 4] = ["#1B9E77", "#D95F02", "#7570B3", "#E7298A"];

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn normal(sd: f64) -> Normal<f64> {
    Normal::new(0.0, sd).expect("positive standard deviation")
}

fn round_to(v: f64, digits: i32) -> f64 {
    let s = 10f64.powi(digits);
    (v * s).round() / s
}

/// Cosine similarities between noisy copies of one random direction per
/// group: `names[i]` belongs to group `groups[i]`.
pub fn grouped_similarity(
    names: Vec<String>,
    groups: &[usize],
    dim: usize,
    noise: f64,
    seed: u64,
) -> LabeledMatrix<f64> {
    let mut r = rng(seed);
    let z = normal(1.0);
    let n_groups = groups.iter().max().map_or(0, |g| g + 1);
    let centers: Vec<Vec<f64>> = (0..n_groups)
        .map(|_| (0..dim).map(|_| z.sample(&mut r)).collect())
        .collect();
    let e = normal(noise);
    let vectors: Vec<Vec<Option<f64>>> = groups
        .iter()
        .map(|&g| {
            centers[g]
                .iter()
                .map(|c| Some(c + e.sample(&mut r)))
                .collect()
        })
        .collect();
    let dims: Vec<String> = (0..dim).map(|d| format!("d{d}")).collect();
    let m = LabeledMatrix::new(vectors, names.clone(), dims).expect("rectangular");
    let s = cosine_similarity(&m).expect("non-zero vectors");
    let n = names.len();
    let values = (0..n * n)
        .map(|i| {
            Some(if i / n == i % n {
                1.0
            } else {
                round_to(s.get(i / n, i % n), 6)
            })
        })
        .collect();
    LabeledMatrix::from_row_major(n, n, values, names.clone(), names).expect("square")
}

/// A word-similarity-shaped matrix of any size: `n` objects spread over
/// `groups` clusters, in shuffled order.
pub fn word_similarity(n: usize, groups: usize, seed: u64) -> LabeledMatrix<f64> {
    let mut labels: Vec<usize> = (0..n).map(|i| i % groups).collect();
    labels.shuffle(&mut rng(seed ^ 0x5eed));
    let names = (0..n).map(|i| format!("word{i:04}")).collect();
    grouped_similarity(names, &labels, 50, 0.8, seed)
}

fn themed_words(themes: usize, per_theme: usize, seed: u64) -> (Vec<String>, Vec<usize>) {
    let mut items: Vec<(String, usize)> = (0..themes)
        .flat_map(|t| {
            THEMES[t][..per_theme]
                .iter()
                .map(move |w| (w.to_string(), t))
        })
        .collect();
    items.shuffle(&mut rng(seed));
    items.into_iter().unzip()
}

fn country_name(i: usize) -> String {
    let suffix = ["ia", "land", "istan"][i % 3];
    let second = SYLLABLES[(7 * i + 3) % SYLLABLES.len()].to_ascii_lowercase();
    format!("{}{second}{suffix}", SYLLABLES[i % SYLLABLES.len()])
}

fn csv_bytes(m: &LabeledMatrix<f64>) -> Result<Vec<u8>, CliError> {
    let mut out = Vec::new();
    write_matrix(m, &mut out)?;
    Ok(out)
}

fn series_csv(names: &[String], values: &[f64]) -> Vec<u8> {
    let mut s = String::from("name,value\n");
    for (n, v) in names.iter().zip(values) {
        s.push_str(&format!("{n},{v}\n"));
    }
    s.into_bytes()
}

fn config(v: Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s.into_bytes()
}

/// Transplant-style panel: countries by years with one missing cell, an
/// HDI-rank bar per country and a yearly average on top.
fn organs(files: &mut Vec<(String, Vec<u8>)>) -> Result<(), CliError> {
    const N: usize = 58;
    const YEARS: usize = 9;
    let mut r = rng(58);
    let names: Vec<String> = (0..N).map(country_name).collect();
    let years: Vec<String> = (0..YEARS).map(|y| (2006 + y).to_string()).collect();
    let region: Vec<usize> = (0..N).map(|_| r.gen_range(0..4)).collect();
    let level: Vec<f64> = (0..N)
        .map(|_| (2.7 + normal(0.8).sample(&mut r)).exp())
        .collect();
    let noise = normal(0.08);
    let mut values = Vec::with_capacity(N * YEARS);
    for &base in &level {
        let slope = 0.03 + normal(0.04).sample(&mut r);
        for y in 0..YEARS {
            let v = base * (slope * y as f64).exp() * (1.0 + noise.sample(&mut r));
            values.push(Some(round_to(v.max(0.0), 1)));
        }
    }
    values[17 * YEARS + 3] = None;
    let m = LabeledMatrix::from_row_major(N, YEARS, values, names.clone(), years.clone())?;

    // rank 1 = highest development; loosely tied to the transplant level
    let score: Vec<f64> = level
        .iter()
        .map(|l| l.ln() + normal(0.5).sample(&mut r))
        .collect();
    let mut by_score: Vec<usize> = (0..N).collect();
    by_score.sort_by(|&a, &b| score[b].total_cmp(&score[a]));
    let mut rank = vec![0.0; N];
    for (pos, &i) in by_score.iter().enumerate() {
        rank[i] = (pos + 1) as f64;
    }
    let yearly: Vec<f64> = (0..YEARS)
        .map(|y| {
            let present: Vec<f64> = (0..N).filter_map(|i| m.get(i, y)).collect();
            round_to(present.iter().sum::<f64>() / present.len() as f64, 3)
        })
        .collect();
    let colors: Vec<&str> = region.iter().map(|&g| REGION_COLORS[g]).collect();

    files.push(("organs.csv".into(), csv_bytes(&m)?));
    files.push(("organs_hdi.csv".into(), series_csv(&names, &rank)));
    files.push(("organs_year.csv".into(), series_csv(&years, &yearly)));
    files.push((
        "organs.json".into(),
        config(json!({
            "matrix": "organs.csv",
            "out": "organs.svg",
            "order_rows": "mean_asc",
            "heat_pal": "BuPu",
            "heat_na_col": "white",
            "yr": "organs_hdi.csv",
            "yr_plot_type": "bar",
            "yr_axis_name": "HDI rank",
            "yr_bar_col": colors,
            "yt": "organs_year.csv",
            "yt_plot_type": "scatterline",
            "yt_axis_name": "Average transplants",
            "left_label_col": colors,
            "left_label_alpha": 0.3,
            "bottom_label_text_angle": 90,
            "bottom_label_text_alignment": "right",
            "width": 700,
            "height": 1100
        })),
    ));
    Ok(())
}

fn word35(files: &mut Vec<(String, Vec<u8>)>) -> Result<(), CliError> {
    let (names, groups) = themed_words(5, 7, 35);
    let m = grouped_similarity(names, &groups, 30, 0.9, 35);
    files.push(("word35.csv".into(), csv_bytes(&m)?));
    files.push((
        "word35.json".into(),
        config(json!({
            "matrix": "word35.csv",
            "out": "word35.svg",
            "row_dendrogram": true,
            "col_dendrogram": true,
            "distance": "similarity",
            "linkage": "complete",
            "grid_hline_col": "white",
            "grid_vline_col": "white",
            "bottom_label_text_angle": 90,
            "width": 800,
            "height": 800
        })),
    ));
    Ok(())
}

fn word60(files: &mut Vec<(String, Vec<u8>)>) -> Result<(), CliError> {
    let (names, groups) = themed_words(12, 5, 60);
    let m = grouped_similarity(names, &groups, 40, 1.0, 60);
    files.push(("word60.csv".into(), csv_bytes(&m)?));
    files.push((
        "word60.json".into(),
        config(json!({
            "matrix": "word60.csv",
            "out": "word60.svg",
            "clustering_method": "pam",
            "distance": "similarity",
            "n_clusters_rows": 12,
            "n_clusters_cols": 12,
            "smooth_heat": true,
            "yt": "silhouette",
            "yt_plot_type": "bar",
            "yt_bar_col": "grey35",
            "yt_axis_name": "silhouette",
            "bottom_label_text_angle": 90,
            "width": 800,
            "height": 800
        })),
    ));
    Ok(())
}

/// Two image groups by two voxel groups with opposite responses, plus a
/// per-voxel prediction score.
fn voxels(files: &mut Vec<(String, Vec<u8>)>) -> Result<(), CliError> {
    const IMAGES: usize = 120;
    const VOXELS: usize = 200;
    let mut r = rng(120);
    let mut row_group: Vec<usize> = (0..IMAGES).map(|i| usize::from(i >= 70)).collect();
    let mut col_group: Vec<usize> = (0..VOXELS).map(|j| usize::from(j >= 90)).collect();
    row_group.shuffle(&mut r);
    col_group.shuffle(&mut r);
    let means = [[1.0, -0.5], [-0.8, 0.6]];
    let e = normal(0.6);
    let values = (0..IMAGES * VOXELS)
        .map(|i| {
            let mu = means[row_group[i / VOXELS]][col_group[i % VOXELS]];
            Some(round_to(mu + e.sample(&mut r), 4))
        })
        .collect();
    let rows: Vec<String> = (0..IMAGES).map(|i| format!("img{:03}", i + 1)).collect();
    let cols: Vec<String> = (0..VOXELS).map(|j| format!("v{:03}", j + 1)).collect();
    let m = LabeledMatrix::from_row_major(IMAGES, VOXELS, values, rows, cols.clone())?;
    let perf_noise = normal(0.08);
    let perf: Vec<f64> = col_group
        .iter()
        .map(|&g| round_to([0.35, 0.15][g] + perf_noise.sample(&mut r), 4))
        .collect();
    files.push(("voxels.csv".into(), csv_bytes(&m)?));
    files.push(("voxels_perf.csv".into(), series_csv(&cols, &perf)));
    let base = json!({
        "matrix": "voxels.csv",
        "heat_pal": "RdBu",
        "clustering_method": "kmeans",
        "n_clusters_rows": 2,
        "n_clusters_cols": 2,
        "yt": "voxels_perf.csv",
        "yt_axis_name": "Prediction performance",
        "yt_obs_col": "slategray4",
        "yt_point_alpha": 0.6,
        "left_label": "none",
        "bottom_label": "none",
        "row_title": "Validation images (120)",
        "column_title": "Voxels (200)",
        "grid_hline_col": "white",
        "grid_vline_col": "white",
        "seed": 2017
    });
    let with = |extra: Value| {
        let mut v = base.clone();
        v.as_object_mut()
            .unwrap()
            .extend(extra.as_object().unwrap().clone());
        config(v)
    };
    files.push((
        "voxels.json".into(),
        with(json!({"out": "voxels.svg", "yt_plot_type": "scatter"})),
    ));
    files.push((
        "voxels_smooth.json".into(),
        with(json!({"out": "voxels_smooth.svg", "smooth_heat": true, "yt_plot_type": "boxplot"})),
    ));
    files.push((
        "voxels_blocks.json".into(),
        with(json!({"out": "voxels_blocks.csv"})),
    ));
    Ok(())
}

/// Three tight blobs on an equilateral triangle of side 10.
pub fn blobs3(seed: u64) -> LabeledMatrix<f64> {
    let centers = [(0.0, 0.0), (10.0, 0.0), (5.0, 5.0 * 3f64.sqrt())];
    let mut r = rng(seed);
    let e = normal(0.05);
    let mut values = Vec::with_capacity(60);
    for &(cx, cy) in &centers {
        for _ in 0..10 {
            values.push(Some(round_to(cx + e.sample(&mut r), 6)));
            values.push(Some(round_to(cy + e.sample(&mut r), 6)));
        }
    }
    let names = (0..30).map(|i| format!("p{:02}", i + 1)).collect();
    LabeledMatrix::from_row_major(30, 2, values, names, vec!["x".into(), "y".into()])
        .expect("rectangular")
}

fn blobs(files: &mut Vec<(String, Vec<u8>)>) -> Result<(), CliError> {
    files.push(("blobs3.csv".into(), csv_bytes(&blobs3(3))?));
    files.push((
        "blobs3.json".into(),
        config(json!({
            "matrix": "blobs3.csv",
            "out": "blobs3_stability.csv",
            "diagnose_method": "kmeans",
            "distance": "euclidean",
            "seed": 7,
            "k_min": 2,
            "k_max": 6,
            "subsamples": 100,
            "subsample_fraction": 0.9
        })),
    ));
    Ok(())
}

/// Every fixture file as (file name, bytes).
pub fn all() -> Result<Vec<(String, Vec<u8>)>, CliError> {
    let mut files = Vec::new();
    organs(&mut files)?;
    word35(&mut files)?;
    word60(&mut files)?;
    voxels(&mut files)?;
    blobs(&mut files)?;
    Ok(files)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let names: std::collections::BTreeSet<String> = (0..58).map(country_name).collect();
        assert_eq!(names.len(), 58);
    }

    #[test]
    fn deterministic() {
        assert_eq!(all().unwrap(), all().unwrap());
    }

    #[test]
    fn similarity_shape() {
        let m = word_similarity(40, 4, 1);
        assert_eq!(m.dims(), (40, 40));
        for i in 0..40 {
            assert_eq!(m.get(i, i), Some(1.0));
            for j in 0..40 {
                assert_eq!(m.get(i, j), m.get(j, i));
            }
        }
    }
}
