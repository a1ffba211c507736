//! Labeled matrices, axis orderings and adjacent-panel series.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Which axis of a matrix an ordering or membership refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Row,
    Column,
}

/// Numeric matrix with row/column names and explicit missing cells.
///
/// Values are stored row-major. Identity is positional: duplicate names are
/// permitted.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledMatrix<F> {
    n_rows: usize,
    n_cols: usize,
    values: Vec<Option<F>>,
    row_names: Vec<String>,
    col_names: Vec<String>,
}

/// Position of a missing cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct MissingCell {
    pub row: usize,
    pub col: usize,
}

impl<F: Scalar> LabeledMatrix<F> {
    pub fn new(
        rows: Vec<Vec<Option<F>>>,
        row_names: Vec<String>,
        col_names: Vec<String>,
    ) -> Result<Self> {
        let n_rows = rows.len();
        if n_rows == 0 {
            return Err(Error::dim("matrix needs at least one row"));
        }
        let n_cols = rows[0].len();
        if n_cols == 0 {
            return Err(Error::dim("matrix needs at least one column"));
        }
        let mut values = Vec::with_capacity(n_rows * n_cols);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != n_cols {
                return Err(Error::dim(format!(
                    "row {r} has {} values, expected {n_cols}",
                    row.len()
                )));
            }
            values.extend(row);
        }
        Self::from_row_major(n_rows, n_cols, values, row_names, col_names)
    }

    pub fn from_row_major(
        n_rows: usize,
        n_cols: usize,
        values: Vec<Option<F>>,
        row_names: Vec<String>,
        col_names: Vec<String>,
    ) -> Result<Self> {
        if n_rows == 0 || n_cols == 0 {
            return Err(Error::dim("matrix needs at least one row and one column"));
        }
        if values.len() != n_rows * n_cols {
            return Err(Error::dim(format!(
                "{} values for a {n_rows}x{n_cols} matrix",
                values.len()
            )));
        }
        if row_names.len() != n_rows {
            return Err(Error::dim(format!(
                "{} row names for {n_rows} rows",
                row_names.len()
            )));
        }
        if col_names.len() != n_cols {
            return Err(Error::dim(format!(
                "{} column names for {n_cols} columns",
                col_names.len()
            )));
        }
        if let Some(pos) = values
            .iter()
            .position(|v| matches!(v, Some(x) if !x.is_finite()))
        {
            return Err(Error::invalid(
                "matrix",
                format!(
                    "non-finite value at row {}, column {}",
                    pos / n_cols,
                    pos % n_cols
                ),
            ));
        }
        Ok(Self {
            n_rows,
            n_cols,
            values,
            row_names,
            col_names,
        })
    }

    /// Dense matrix with generated names (`r1..`, `c1..`).
    pub fn from_dense(rows: Vec<Vec<F>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(Some).collect())
            .collect();
        Self::new(rows, default_names("r", n_rows), default_names("c", n_cols))
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.n_rows, self.n_cols)
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Option<F> {
        self.values[row * self.n_cols + col]
    }

    pub fn row(&self, row: usize) -> &[Option<F>] {
        &self.values[row * self.n_cols..(row + 1) * self.n_cols]
    }

    pub fn values(&self) -> &[Option<F>] {
        &self.values
    }

    pub fn row_names(&self) -> &[String] {
        &self.row_names
    }

    pub fn col_names(&self) -> &[String] {
        &self.col_names
    }

    pub fn names(&self, axis: Axis) -> &[String] {
        match axis {
            Axis::Row => &self.row_names,
            Axis::Column => &self.col_names,
        }
    }

    pub fn len(&self, axis: Axis) -> usize {
        match axis {
            Axis::Row => self.n_rows,
            Axis::Column => self.n_cols,
        }
    }

    pub fn missing_cells(&self) -> Vec<MissingCell> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_none())
            .map(|(i, _)| MissingCell {
                row: i / self.n_cols,
                col: i % self.n_cols,
            })
            .collect()
    }

    pub fn missing_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_none()).count()
    }

    pub fn present_values(&self) -> impl Iterator<Item = F> + '_ {
        self.values.iter().flatten().copied()
    }

    /// (min, max) over present values, `None` if every cell is missing.
    pub fn value_range(&self) -> Option<(F, F)> {
        self.present_values().fold(None, |acc, v| match acc {
            None => Some((v, v)),
            Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
        })
    }

    /// Rows as dense vectors; fails if any cell is missing.
    pub fn dense_rows(&self, context: &'static str) -> Result<Vec<Vec<F>>> {
        (0..self.n_rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|v| v.ok_or(Error::MissingValues(context)))
                    .collect()
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut values = Vec::with_capacity(self.values.len());
        for c in 0..self.n_cols {
            for r in 0..self.n_rows {
                values.push(self.get(r, c));
            }
        }
        Self {
            n_rows: self.n_cols,
            n_cols: self.n_rows,
            values,
            row_names: self.col_names.clone(),
            col_names: self.row_names.clone(),
        }
    }

    pub fn cast<G: Scalar>(&self) -> LabeledMatrix<G> {
        LabeledMatrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            values: self
                .values
                .iter()
                .map(|v| v.map(|x| G::of(x.as_f64())))
                .collect(),
            row_names: self.row_names.clone(),
            col_names: self.col_names.clone(),
        }
    }

    /// Duplicate names on one axis, as `name -> positions`.
    pub fn duplicate_names(&self, axis: Axis) -> BTreeMap<String, Vec<usize>> {
        let mut seen: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for (i, name) in self.names(axis).iter().enumerate() {
            seen.entry(name.clone()).or_default().push(i);
        }
        seen.retain(|_, v| v.len() > 1);
        seen
    }
}

pub(crate) fn default_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// A permutation of one matrix axis: position `p` of the result shows the
/// original index `permutation[p]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisOrder {
    axis: Axis,
    permutation: Vec<usize>,
}

impl AxisOrder {
    pub fn new(axis: Axis, permutation: Vec<usize>) -> Result<Self> {
        let n = permutation.len();
        let mut seen = vec![false; n];
        for &i in &permutation {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::invalid(
                    "ordering",
                    format!("{permutation:?} is not a permutation of 0..{n}"),
                ));
            }
        }
        Ok(Self { axis, permutation })
    }

    pub fn identity(axis: Axis, n: usize) -> Self {
        Self {
            axis,
            permutation: (0..n).collect(),
        }
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn len(&self) -> usize {
        self.permutation.len()
    }

    pub fn is_empty(&self) -> bool {
        self.permutation.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.permutation.iter().enumerate().all(|(p, &i)| p == i)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.permutation.len()];
        for (p, &i) in self.permutation.iter().enumerate() {
            inv[i] = p;
        }
        Self {
            axis: self.axis,
            permutation: inv,
        }
    }

    /// Applies `self` first, then `next` (which indexes into the already
    /// reordered axis).
    pub fn then(&self, next: &AxisOrder) -> Result<Self> {
        if next.len() != self.len() {
            return Err(Error::dim(format!(
                "cannot compose orderings of length {} and {}",
                self.len(),
                next.len()
            )));
        }
        Ok(Self {
            axis: self.axis,
            permutation: next
                .permutation
                .iter()
                .map(|&p| self.permutation[p])
                .collect(),
        })
    }

    /// Reorders any per-index slice along this ordering.
    pub fn apply_to<T: Clone>(&self, items: &[T]) -> Result<Vec<T>> {
        if items.len() != self.len() {
            return Err(Error::dim(format!(
                "ordering of length {} applied to {} items",
                self.len(),
                items.len()
            )));
        }
        Ok(self.permutation.iter().map(|&i| items[i].clone()).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SortDirection {
    #[default]
    Ascending,
    Descending,
}

/// Orders rows by their mean over present cells. Ties keep original order.
pub fn order_by_row_mean<F: Scalar>(
    m: &LabeledMatrix<F>,
    direction: SortDirection,
) -> Result<AxisOrder> {
    let means = (0..m.n_rows())
        .map(|r| {
            let (sum, count) = m
                .row(r)
                .iter()
                .flatten()
                .fold((F::zero(), 0usize), |(s, c), &v| (s + v, c + 1));
            if count == 0 {
                Err(Error::EmptyRow {
                    index: r,
                    name: m.row_names()[r].clone(),
                })
            } else {
                Ok(sum / F::of(count as f64))
            }
        })
        .collect::<Result<Vec<F>>>()?;
    let mut perm: Vec<usize> = (0..means.len()).collect();
    perm.sort_by(|&a, &b| {
        let ord = means[a].partial_cmp(&means[b]).expect("finite means");
        match direction {
            SortDirection::Ascending => ord,
            SortDirection::Descending => ord.reverse(),
        }
    });
    AxisOrder::new(Axis::Row, perm)
}

/// Orders columns by their mean over present cells.
pub fn order_by_col_mean<F: Scalar>(
    m: &LabeledMatrix<F>,
    direction: SortDirection,
) -> Result<AxisOrder> {
    let order = order_by_row_mean(&m.transpose(), direction)?;
    AxisOrder::new(Axis::Column, order.permutation)
}

/// Permutes rows and/or columns, carrying names and missing cells along.
pub fn apply_ordering<F: Scalar>(
    m: &LabeledMatrix<F>,
    rows: Option<&AxisOrder>,
    cols: Option<&AxisOrder>,
) -> Result<LabeledMatrix<F>> {
    let row_perm: Vec<usize> = match rows {
        Some(o) => {
            check_order(o, Axis::Row, m.n_rows())?;
            o.permutation.clone()
        }
        None => (0..m.n_rows()).collect(),
    };
    let col_perm: Vec<usize> = match cols {
        Some(o) => {
            check_order(o, Axis::Column, m.n_cols())?;
            o.permutation.clone()
        }
        None => (0..m.n_cols()).collect(),
    };
    let mut values = Vec::with_capacity(m.values.len());
    for &r in &row_perm {
        let row = m.row(r);
        values.extend(col_perm.iter().map(|&c| row[c]));
    }
    Ok(LabeledMatrix {
        n_rows: m.n_rows,
        n_cols: m.n_cols,
        values,
        row_names: row_perm.iter().map(|&r| m.row_names[r].clone()).collect(),
        col_names: col_perm.iter().map(|&c| m.col_names[c].clone()).collect(),
    })
}

fn check_order(o: &AxisOrder, axis: Axis, n: usize) -> Result<()> {
    if o.axis != axis {
        return Err(Error::invalid(
            "ordering",
            format!("expected a {axis:?} ordering, got {:?}", o.axis),
        ));
    }
    if o.len() != n {
        return Err(Error::dim(format!(
            "{axis:?} ordering has length {}, axis has {n}",
            o.len()
        )));
    }
    Ok(())
}

/// Side of the heatmap an adjacent panel sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Above the columns; one value per column.
    Top,
    /// Right of the rows; one value per row.
    Right,
}

impl Side {
    pub fn axis(self) -> Axis {
        match self {
            Side::Top => Axis::Column,
            Side::Right => Axis::Row,
        }
    }
}

/// Glyph vocabulary for adjacent panels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PlotType {
    #[default]
    Scatter,
    ScatterLine,
    ScatterSmooth,
    Smooth,
    Bar,
    Line,
    Boxplot,
    Dendrogram,
}

impl std::str::FromStr for PlotType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "scatter" => PlotType::Scatter,
            "scatterline" => PlotType::ScatterLine,
            "scattersmooth" => PlotType::ScatterSmooth,
            "smooth" => PlotType::Smooth,
            "bar" => PlotType::Bar,
            "line" => PlotType::Line,
            "boxplot" => PlotType::Boxplot,
            "dendrogram" => PlotType::Dendrogram,
            other => return Err(Error::invalid("plot type", other.to_string())),
        })
    }
}

/// One value per column (top) or row (right), plotted next to the heatmap.
///
/// Values are aligned by position with the displayed axis; callers reorder
/// them together with the matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjacentSeries {
    pub side: Side,
    pub values: Vec<Option<f64>>,
    pub plot_type: PlotType,
    pub axis_name: String,
    pub point_colors: Option<Vec<String>>,
    pub point_alpha: f64,
    pub bar_colors: Option<Vec<String>>,
}

impl AdjacentSeries {
    pub fn new(side: Side, values: Vec<Option<f64>>, plot_type: PlotType) -> Self {
        Self {
            side,
            values,
            plot_type,
            axis_name: String::new(),
            point_colors: None,
            point_alpha: 1.0,
            bar_colors: None,
        }
    }

    pub fn validate(&self, axis_len: usize) -> Result<()> {
        let panel = match self.side {
            Side::Top => "top panel",
            Side::Right => "right panel",
        };
        if self.plot_type != PlotType::Dendrogram && self.values.len() != axis_len {
            return Err(Error::dim(format!(
                "{panel} has {} values but the axis has {axis_len}",
                self.values.len()
            )));
        }
        if !(0.0..=1.0).contains(&self.point_alpha) {
            return Err(Error::invalid(
                "point alpha",
                format!("{panel}: {} not in [0, 1]", self.point_alpha),
            ));
        }
        if self.values.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::invalid(
                "series",
                format!("{panel} has non-finite values"),
            ));
        }
        for (what, colors) in [
            ("point colors", &self.point_colors),
            ("bar colors", &self.bar_colors),
        ] {
            if let Some(c) = colors {
                if c.len() != 1 && c.len() != axis_len {
                    return Err(Error::dim(format!(
                        "{panel} {what}: {} colors for {axis_len} observations",
                        c.len()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Reorders values and per-observation colors along `order`.
    pub fn reordered(&self, order: &AxisOrder) -> Result<Self> {
        let recolor = |c: &Option<Vec<String>>| -> Result<Option<Vec<String>>> {
            match c {
                Some(v) if v.len() == order.len() && v.len() > 1 => Ok(Some(order.apply_to(v)?)),
                other => Ok(other.clone()),
            }
        };
        Ok(Self {
            values: order.apply_to(&self.values)?,
            point_colors: recolor(&self.point_colors)?,
            bar_colors: recolor(&self.bar_colors)?,
            ..self.clone()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: Vec<Vec<Option<f64>>>) -> LabeledMatrix<f64> {
        let r = rows.len();
        let c = rows[0].len();
        LabeledMatrix::new(rows, default_names("r", r), default_names("c", c)).unwrap()
    }

    #[test]
    fn row_mean_ascending() {
        let x = m(vec![vec![Some(3.0)], vec![Some(1.0)], vec![Some(2.0)]]);
        let o = order_by_row_mean(&x, SortDirection::Ascending).unwrap();
        assert_eq!(o.permutation(), &[1, 2, 0]);
    }

    #[test]
    fn row_mean_ties_are_stable() {
        let x = m(vec![vec![Some(1.0)]; 4]);
        let o = order_by_row_mean(&x, SortDirection::Ascending).unwrap();
        assert!(o.is_identity());
        let o = order_by_row_mean(&x, SortDirection::Descending).unwrap();
        assert!(o.is_identity());
    }

    #[test]
    fn row_mean_descending_with_missing() {
        // row 1 has mean 1.0 over its single present value
        let x = m(vec![
            vec![Some(1.0), Some(1.0)],
            vec![None, Some(1.0)],
            vec![Some(0.5), Some(0.5)],
        ]);
        let o = order_by_row_mean(&x, SortDirection::Descending).unwrap();
        assert_eq!(o.permutation(), &[0, 1, 2]);
    }

    #[test]
    fn row_mean_all_missing_row_is_error() {
        let x = m(vec![vec![Some(1.0), None], vec![None, None]]);
        let err = order_by_row_mean(&x, SortDirection::Ascending).unwrap_err();
        assert!(matches!(err, Error::EmptyRow { index: 1, .. }), "{err}");
        assert!(err.to_string().contains("r2"));
    }

    #[test]
    fn swap_rows() {
        let x = m(vec![vec![Some(1.0), Some(2.0)], vec![Some(3.0), Some(4.0)]]);
        let o = AxisOrder::new(Axis::Row, vec![1, 0]).unwrap();
        let y = apply_ordering(&x, Some(&o), None).unwrap();
        assert_eq!(y.row(0), &[Some(3.0), Some(4.0)]);
        assert_eq!(y.row(1), &[Some(1.0), Some(2.0)]);
        assert_eq!(y.row_names(), &["r2", "r1"]);
        assert_eq!(y.col_names(), x.col_names());
    }

    #[test]
    fn identity_ordering_is_noop() {
        let x = m(vec![vec![Some(1.0), None], vec![Some(3.0), Some(4.0)]]);
        let y = apply_ordering(
            &x,
            Some(&AxisOrder::identity(Axis::Row, 2)),
            Some(&AxisOrder::identity(Axis::Column, 2)),
        )
        .unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn ordering_length_mismatch() {
        let x = m(vec![vec![Some(1.0), Some(2.0)]]);
        let o = AxisOrder::identity(Axis::Column, 3);
        assert!(matches!(
            apply_ordering(&x, None, Some(&o)),
            Err(Error::Dimension(_))
        ));
        let wrong_axis = AxisOrder::identity(Axis::Row, 2);
        assert!(apply_ordering(&x, None, Some(&wrong_axis)).is_err());
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(AxisOrder::new(Axis::Row, vec![0, 0]).is_err());
        assert!(AxisOrder::new(Axis::Row, vec![0, 2]).is_err());
    }

    #[test]
    fn compose_then_inverse() {
        let a = AxisOrder::new(Axis::Row, vec![2, 0, 1]).unwrap();
        assert!(a.then(&a.inverse()).unwrap().is_identity());
        let items = ["a", "b", "c"];
        assert_eq!(a.apply_to(&items).unwrap(), vec!["c", "a", "b"]);
    }

    #[test]
    fn rejects_non_finite() {
        let err = LabeledMatrix::<f64>::from_dense(vec![vec![1.0, f64::NAN]]).unwrap_err();
        assert!(err.to_string().contains("non-finite"));
    }

    #[test]
    fn series_validation_names_panel() {
        let s = AdjacentSeries::new(Side::Right, vec![Some(1.0)], PlotType::Bar);
        let err = s.validate(3).unwrap_err().to_string();
        assert!(err.contains("right panel"), "{err}");
    }
}
