//! `t,x,y` CSV path files.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::PlanarPath;
use crate::error::{Error, Result};
use crate::geometry::Point;

/// 17 significant digits round-trip every f64.
pub(crate) fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_path_to<W: Write>(w: W, path: &PlanarPath) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["t", "x", "y"])?;
    for (t, p) in path.times().iter().zip(path.points()) {
        wtr.write_record([fmt_f64(*t), fmt_f64(p.x), fmt_f64(p.y)])?;
    }
    wtr.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_path_csv(file: impl AsRef<Path>, path: &PlanarPath) -> Result<()> {
    let file = file.as_ref();
    let f = File::create(file).map_err(|e| Error::io(file, e))?;
    write_path_to(BufWriter::new(f), path).map_err(|e| match e {
        Error::Csv(c) => Error::Parse { path: file.into(), message: c.to_string() },
        other => other,
    })
}

pub fn read_path_from<R: Read>(r: R) -> Result<PlanarPath> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r);
    let headers = rdr.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["t", "x", "y"] {
        return Err(Error::InvalidPath(format!("expected header `t,x,y`, got `{}`", headers.iter().collect::<Vec<_>>().join(","))));
    }
    let mut times = Vec::new();
    let mut points = Vec::new();
    for (row, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let field = |k: usize| -> Result<f64> {
            rec.get(k)
                .and_then(|s| s.parse::<f64>().ok())
                .ok_or_else(|| Error::InvalidPath(format!("row {}: bad number in column {}", row + 1, k + 1)))
        };
        times.push(field(0)?);
        points.push(Point::new(field(1)?, field(2)?));
    }
    PlanarPath::new(times, points)
}

pub fn read_path_csv(file: impl AsRef<Path>) -> Result<PlanarPath> {
    let file = file.as_ref();
    let f = File::open(file).map_err(|e| Error::io(file, e))?;
    read_path_from(BufReader::new(f)).map_err(|e| match e {
        Error::Io { .. } => e,
        other => Error::Parse { path: file.into(), message: other.to_string() },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::sample_brownian;
    use crate::RngSeed;

    #[test]
    fn round_trip_is_bit_exact() {
        let p = sample_brownian(8, RngSeed(1)).unwrap();
        let mut buf = Vec::new();
        write_path_to(&mut buf, &p).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("t,x,y\n"));
        assert_eq!(text.lines().count(), 10);
        assert_eq!(read_path_from(&buf[..]).unwrap(), p);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(read_path_from("a,b,c\n0,0,0\n1,1,1\n".as_bytes()).is_err());
        assert!(read_path_from("t,x,y\n0,0,zz\n1,1,1\n".as_bytes()).is_err());
        assert!(read_path_from("t,x,y\n0,0,0\n".as_bytes()).is_err());
        let err = read_path_csv("/nonexistent/dir/p.csv").unwrap_err();
        assert!(err.to_string().contains("/nonexistent/dir/p.csv"));
    }
}
