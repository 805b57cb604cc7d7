use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{FunctionModel, GridForm, Interpolation};
use crate::seqset::PointSet;

/// Reads a two-column `x,fx` grid (header required) as a linearly
/// interpolated model.
pub fn read_grid_csv(path: &Path) -> Result<FunctionModel> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_path(path)?;
    let headers = rdr.headers()?.clone();
    if headers.len() != 2 {
        return Err(Error::parse(0, format!("grid CSV needs columns x,fx; got {} columns", headers.len())));
    }
    let (mut knots, mut values) = (Vec::new(), Vec::new());
    for (row, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let num = |k: usize| -> Result<f64> {
            rec[k].parse().map_err(|_| Error::parse(row + 1, format!("'{}' is not a number", &rec[k])))
        };
        knots.push(num(0)?);
        values.push(num(1)?);
    }
    Ok(FunctionModel::from_grid(GridForm::new(knots, values, Interpolation::Linear)?))
}

/// Reads a one- or two-column point file. A first row that does not parse
/// as numbers is taken as a header.
pub fn read_points_csv(path: &Path) -> Result<PointSet> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(false)
        .from_path(path)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (row, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let parsed: std::result::Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(v) => rows.push(v),
            Err(_) if row == 0 => continue,
            Err(_) => return Err(Error::parse(row, "point rows must be numeric")),
        }
    }
    match rows.first().map(Vec::len) {
        Some(1) => Ok(PointSet::Line(rows.into_iter().map(|r| r[0]).collect())),
        Some(2) => Ok(PointSet::Plane(rows.into_iter().map(|r| [r[0], r[1]]).collect())),
        Some(n) => Err(Error::parse(0, format!("point CSV needs 1 or 2 columns, got {n}"))),
        None => Err(Error::parse(0, "point CSV is empty")),
    }
}

/// Writes `x,value` rows.
pub fn write_plot_csv(path: &Path, rows: &[(f64, f64)]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["x", "value"])?;
    for &(x, v) in rows {
        w.write_record([x.to_string(), v.to_string()])?;
    }
    w.flush()?;
    Ok(())
}
