use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet, StackingOrder};

use super::ExperimentRecord;

/// Tabular output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    /// One JSON object per line.
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::UnknownName {
                kind: "format",
                name: other.to_string(),
                valid: vec!["csv", "json"],
            }),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PointRow {
    x: f64,
    y: f64,
}

#[derive(Serialize, Deserialize)]
struct OrderRow {
    rank: usize,
}

/// Writes `x,y` rows with the shortest decimals that parse back exactly.
pub fn write_points<W: Write>(ps: &PointSet, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for p in ps.points() {
        w.serialize(PointRow { x: p.x, y: p.y })?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_points<R: Read>(input: R) -> Result<PointSet> {
    let mut r = csv::Reader::from_reader(input);
    let points = r
        .deserialize()
        .map(|row| row.map(|PointRow { x, y }| Point::new(x, y)))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    PointSet::new(points)
}

/// Writes a `rank` column listing 0-based disk indices, front to back.
pub fn write_order<W: Write>(f: &StackingOrder, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for &disk in f.sequence() {
        w.serialize(OrderRow { rank: disk })?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_order<R: Read>(input: R) -> Result<StackingOrder> {
    let mut r = csv::Reader::from_reader(input);
    let seq = r
        .deserialize()
        .map(|row| row.map(|OrderRow { rank }| rank))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    StackingOrder::from_sequence(seq)
}

pub fn save_points(ps: &PointSet, path: impl AsRef<Path>) -> Result<()> {
    write_points(ps, BufWriter::new(File::create(path)?))
}

pub fn load_points(path: impl AsRef<Path>) -> Result<PointSet> {
    read_points(BufReader::new(File::open(path)?))
}

pub fn save_order(f: &StackingOrder, path: impl AsRef<Path>) -> Result<()> {
    write_order(f, BufWriter::new(File::create(path)?))
}

pub fn load_order(path: impl AsRef<Path>) -> Result<StackingOrder> {
    read_order(BufReader::new(File::open(path)?))
}

/// Writes experiment records. Wall time is included only when `timing` is
/// set.
pub fn write_records<W: Write>(records: &[ExperimentRecord], format: Format, timing: bool, mut out: W) -> Result<()> {
    let rows = records.iter().map(|r| ExperimentRecord {
        wall_time_s: if timing { r.wall_time_s } else { None },
        ..r.clone()
    });
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let mut header = vec!["generator", "n", "strategy", "metric", "value", "seed"];
            if timing {
                header.push("wall_time_s");
            }
            w.write_record(&header)?;
            for r in rows {
                let mut fields = vec![
                    r.generator,
                    r.n.to_string(),
                    r.strategy,
                    r.metric.to_string(),
                    format!("{:?}", r.value),
                    r.seed.to_string(),
                ];
                if timing {
                    fields.push(r.wall_time_s.map(|t| format!("{t:?}")).unwrap_or_default());
                }
                w.write_record(&fields)?;
            }
            w.flush()?;
        }
        Format::Json => {
            for r in rows {
                serde_json::to_writer(&mut out, &r)?;
                out.write_all(b"\n")?;
            }
            out.flush()?;
        }
    }
    Ok(())
}

/// Reads records written by [`write_records`], with or without timing.
pub fn read_records<R: Read>(input: R, format: Format) -> Result<Vec<ExperimentRecord>> {
    match format {
        Format::Csv => {
            let mut r = csv::Reader::from_reader(input);
            let rows = r.deserialize().collect::<std::result::Result<Vec<_>, _>>()?;
            Ok(rows)
        }
        Format::Json => BufReader::new(input)
            .lines()
            .filter(|l| l.as_ref().map_or(true, |l| !l.trim().is_empty()))
            .map(|line| Ok(serde_json::from_str(&line?)?))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::random_dense;
    use crate::orders::{random_order, Metric};
    use proptest::prelude::*;

    fn points_bytes(ps: &PointSet) -> Vec<u8> {
        let mut buf = Vec::new();
        write_points(ps, &mut buf).unwrap();
        buf
    }

    #[test]
    fn points_file_layout() {
        let ps = PointSet::new(vec![Point::new(0.0, 1.5), Point::new(0.1, -2e-20)]).unwrap();
        let text = String::from_utf8(points_bytes(&ps)).unwrap();
        assert_eq!(text, "x,y\n0.0,1.5\n0.1,-2e-20\n");
        assert_eq!(read_points(text.as_bytes()).unwrap(), ps);
    }

    #[test]
    fn order_file_layout() {
        let f = StackingOrder::from_sequence(vec![2, 0, 1]).unwrap();
        let mut buf = Vec::new();
        write_order(&f, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "rank\n2\n0\n1\n");
        assert_eq!(read_order(&buf[..]).unwrap(), f);
        assert!(read_order("rank\n0\n0\n".as_bytes()).is_err());
    }

    #[test]
    fn files_on_disk() {
        let dir = tempfile::tempdir().unwrap();
        let ps = random_dense(30, 2.0, 4).unwrap();
        let f = random_order(30, 4);
        save_points(&ps, dir.path().join("p.csv")).unwrap();
        save_order(&f, dir.path().join("f.csv")).unwrap();
        assert_eq!(load_points(dir.path().join("p.csv")).unwrap(), ps);
        assert_eq!(load_order(dir.path().join("f.csv")).unwrap(), f);
        assert!(load_points(dir.path().join("missing.csv")).is_err());
    }

    #[test]
    fn records_round_trip() {
        let recs = vec![
            ExperimentRecord {
                generator: "random_dense:n=5,c=2,seed=1".into(),
                n: 5,
                strategy: "greedy".into(),
                metric: Metric::Exact,
                value: 12.345678901234567,
                seed: 1,
                wall_time_s: Some(0.25),
            },
            ExperimentRecord {
                generator: "grid:k=3".into(),
                n: 9,
                strategy: "lexicographic".into(),
                metric: Metric::Limit,
                value: 20.0,
                seed: 2,
                wall_time_s: Some(0.5),
            },
        ];
        for format in [Format::Csv, Format::Json] {
            for timing in [false, true] {
                let mut buf = Vec::new();
                write_records(&recs, format, timing, &mut buf).unwrap();
                let back = read_records(&buf[..], format).unwrap();
                assert_eq!(back.len(), 2);
                for (a, b) in back.iter().zip(&recs) {
                    assert_eq!(a.value, b.value);
                    assert_eq!(a.generator, b.generator);
                    assert_eq!(a.wall_time_s, if timing { b.wall_time_s } else { None });
                }
            }
        }
        let mut csv = Vec::new();
        write_records(&recs, Format::Csv, false, &mut csv).unwrap();
        assert!(String::from_utf8(csv).unwrap().starts_with("generator,n,strategy,metric,value,seed\n"));
    }

    #[test]
    fn format_names() {
        assert_eq!("json".parse::<Format>().unwrap(), Format::Json);
        assert!("xml".parse::<Format>().unwrap_err().to_string().contains("csv"));
    }

    proptest! {
        #[test]
        fn points_round_trip_bytes(coords in prop::collection::vec((-1e6f64..1e6, -1e6f64..1e6), 1..40)) {
            let mut pts: Vec<Point> = coords.into_iter().map(|(x, y)| Point::new(x, y)).collect();
            pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
            pts.dedup();
            let ps = PointSet::new(pts).unwrap();
            let bytes = points_bytes(&ps);
            let back = read_points(&bytes[..]).unwrap();
            prop_assert_eq!(&back, &ps);
            prop_assert_eq!(points_bytes(&back), bytes);
        }
    }
}
