//! CSV export of trajectories.
//!
//! Header is exactly `n,x,z,y,w,t`. Absent components are left empty. Values carry 17
//! significant digits. A truncated trajectory ends with one comment line starting with
//! [`TRUNCATION_MARKER`].

use std::io::{self, Write};

use crate::solver::Trajectory;

pub const CSV_HEADER: &str = "n,x,z,y,w,t";
pub const TRUNCATION_MARKER: &str = "# truncated";

pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_csv(traj: &Trajectory, mut out: impl Write) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    let comps = traj.components.as_ref();
    let cell = |col: Option<&Vec<Option<f64>>>, i: usize| -> String {
        col.and_then(|c| c.get(i).copied().flatten())
            .map(format_value)
            .unwrap_or_default()
    };
    for (i, (n, x)) in traj.x.iter().enumerate() {
        writeln!(
            out,
            "{n},{},{},{},{},{}",
            format_value(x),
            cell(comps.map(|c| &c.z), i),
            cell(comps.map(|c| &c.y), i),
            cell(comps.map(|c| &c.w), i),
            cell(comps.map(|c| &c.t), i),
        )?;
    }
    if let Some(tr) = traj.truncation {
        writeln!(
            out,
            "{TRUNCATION_MARKER}: non-finite value at step {}, x_{} and later not computed",
            tr.step, tr.index
        )?;
    }
    Ok(())
}
