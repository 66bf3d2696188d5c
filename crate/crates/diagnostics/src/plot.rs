use std::io::Write;

use serde::Serialize;

use crate::error::Result;

/// One plot-data row.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct XyPoint {
    pub x: f64,
    pub y: f64,
    pub stderr: f64,
}

impl XyPoint {
    pub fn new(x: f64, y: f64, stderr: f64) -> Self {
        XyPoint { x, y, stderr }
    }
}

/// Writes `x,y,stderr` rows with a header.
pub fn write_xy_csv<W: Write>(points: &[XyPoint], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for p in points {
        w.serialize(p)?;
    }
    w.flush()?;
    Ok(())
}
