use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

use super::analysis::{FitResult, RatioSeries};
use super::series::{CountRow, CountSeries};

/// CSV with header `L,count,normalized,complete`.
pub fn write_series_csv<W: Write>(series: &CountSeries, out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in &series.rows {
        writer.serialize(row)?;
    }
    writer.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

pub fn series_csv(series: &CountSeries) -> String {
    let mut buf = Vec::new();
    write_series_csv(series, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}

pub fn read_series_csv(path: &Path) -> Result<CountSeries> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::Reader::from_reader(file);
    let headers = reader.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["L", "count", "normalized", "complete"] {
        return Err(Error::Config(format!(
            "{}: expected header L,count,normalized,complete",
            path.display()
        )));
    }
    let rows = reader
        .deserialize::<CountRow>()
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CountSeries { config: None, rows })
}

/// CSV with header `L,n1,n2,ratio`; the ratio is empty where undefined.
pub fn write_ratio_csv<W: Write>(ratio: &RatioSeries, out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in &ratio.rows {
        writer.serialize(row)?;
    }
    writer.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

#[derive(Serialize)]
struct FitJson<'a> {
    slope: f64,
    intercept: f64,
    r_squared: f64,
    window: &'a (u32, u32),
}

/// JSON object with keys `slope`, `intercept`, `r_squared`, `window`.
pub fn fit_json(fit: &FitResult) -> String {
    serde_json::to_string_pretty(&FitJson {
        slope: fit.slope,
        intercept: fit.intercept,
        r_squared: fit.r_squared,
        window: &fit.window,
    })
    .expect("fit serializes")
}

/// Something [`export`] can write.
pub enum Exportable<'a> {
    Series(&'a CountSeries),
    Fit(&'a FitResult),
    Ratio(&'a RatioSeries),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Writes series and ratios as CSV and fits as JSON.
pub fn export(item: Exportable<'_>, path: &Path, format: Format) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    match (item, format) {
        (Exportable::Series(s), Format::Csv) => write_series_csv(s, &mut out)?,
        (Exportable::Ratio(r), Format::Csv) => write_ratio_csv(r, &mut out)?,
        (Exportable::Fit(f), Format::Json) => {
            writeln!(out, "{}", fit_json(f)).map_err(|e| Error::io(path, e))?
        }
        _ => {
            return Err(Error::Config(
                "series and ratios export as csv, fits as json".into(),
            ))
        }
    }
    out.flush().map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{ratio_series, CountRow};

    fn series() -> CountSeries {
        CountSeries {
            config: None,
            rows: vec![
                CountRow {
                    l: 0,
                    count: 0,
                    normalized: 0.0,
                    complete: true,
                },
                CountRow {
                    l: 1,
                    count: 2,
                    normalized: 2.0,
                    complete: true,
                },
                CountRow {
                    l: 2,
                    count: 4,
                    normalized: 1.0,
                    complete: false,
                },
            ],
        }
    }

    #[test]
    fn series_format() {
        assert_eq!(
            series_csv(&series()),
            "L,count,normalized,complete\n0,0,0.0,true\n1,2,2.0,true\n2,4,1.0,false\n"
        );
    }

    #[test]
    fn series_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.csv");
        export(Exportable::Series(&series()), &path, Format::Csv).unwrap();
        assert_eq!(read_series_csv(&path).unwrap(), series());
    }

    #[test]
    fn ratio_format() {
        let r = ratio_series(&series(), &series()).unwrap();
        let mut buf = Vec::new();
        write_ratio_csv(&r, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "L,n1,n2,ratio\n0,0,0,\n1,2,2,1.0\n2,4,4,1.0\n"
        );
    }

    #[test]
    fn fit_keys() {
        let fit = FitResult {
            slope: 2.0,
            intercept: 0.5,
            r_squared: 1.0,
            window: (7, 14),
        };
        let value: serde_json::Value = serde_json::from_str(&fit_json(&fit)).unwrap();
        let keys: Vec<&String> = value.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 4);
        assert_eq!(value["window"], serde_json::json!([7, 14]));
        assert_eq!(value["slope"], 2.0);
    }
}
