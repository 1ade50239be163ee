//! CSV writers. Every file starts with a header row; floats are written with
//! 17 significant digits.

use std::io::{self, Write};

use crate::bidisk::BidiskPoint;
use crate::dirichlet::FaceWitness;
use crate::equidistant::Witness;
use crate::hplane::HPoint;
use crate::sqhyperbola::CurveSample;

/// 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_points<W: Write>(mut w: W, points: &[HPoint]) -> io::Result<()> {
    writeln!(w, "x,y")?;
    for p in points {
        writeln!(w, "{},{}", fmt_f64(p.x()), fmt_f64(p.y()))?;
    }
    Ok(())
}

pub fn write_curve_samples<W: Write>(mut w: W, samples: &[CurveSample]) -> io::Result<()> {
    writeln!(w, "t,branch,x,y")?;
    for s in samples {
        writeln!(
            w,
            "{},{},{},{}",
            fmt_f64(s.t),
            s.branch.name(),
            fmt_f64(s.point.x()),
            fmt_f64(s.point.y())
        )?;
    }
    Ok(())
}

pub fn write_bidisk_points<W: Write>(mut w: W, points: &[BidiskPoint]) -> io::Result<()> {
    writeln!(w, "x1,y1,x2,y2")?;
    for p in points {
        writeln!(w, "{}", bidisk_fields(p))?;
    }
    Ok(())
}

fn bidisk_fields(p: &BidiskPoint) -> String {
    format!(
        "{},{},{},{}",
        fmt_f64(p.first.x()),
        fmt_f64(p.first.y()),
        fmt_f64(p.second.x()),
        fmt_f64(p.second.y())
    )
}

pub const EXPERIMENT_HEADER: &str = "n,k,t1,t2,branch1,branch2,x1,y1,x2,y2,residual";

pub fn write_face_witnesses<W: Write>(mut w: W, witnesses: &[FaceWitness]) -> io::Result<()> {
    writeln!(w, "{EXPERIMENT_HEADER}")?;
    for f in witnesses {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            f.n,
            fmt_f64(f.k),
            fmt_f64(f.t1),
            fmt_f64(f.t2),
            f.branch1.name(),
            f.branch2.name(),
            bidisk_fields(&f.point),
            fmt_f64(f.residual)
        )?;
    }
    Ok(())
}

/// Grid-search witnesses; the leading column holds the second level `l`.
pub fn write_intersection_witnesses<W: Write>(mut w: W, witnesses: &[Witness]) -> io::Result<()> {
    writeln!(w, "l,k,t1,t2,branch1,branch2,x1,y1,x2,y2,residual")?;
    for x in witnesses {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            fmt_f64(x.l),
            fmt_f64(x.k),
            fmt_f64(x.t1),
            fmt_f64(x.t2),
            x.branch1.name(),
            x.branch2.name(),
            bidisk_fields(&x.point),
            fmt_f64(x.residual)
        )?;
    }
    Ok(())
}
