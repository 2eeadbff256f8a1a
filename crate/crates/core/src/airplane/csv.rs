//! Trace export as `step,time_ms,dir,roll,yaw,goal` rows.

use std::io::{self, Write};

use super::model::status_records;
use crate::ensemble::SystemState;

pub const CSV_HEADER: &str = "step,time_ms,dir,roll,yaw,goal";

/// Writes one row per status record of each state after the first.
///
/// `step` is the synchronous step that produced the record and `time_ms`
/// the model time at the end of the fast round that produced it. Reals are
/// printed in their shortest exact form.
pub fn write_csv<'a>(
    mut w: impl Write,
    states: impl IntoIterator<Item = &'a SystemState>,
) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    let mut states = states.into_iter().peekable();
    let Some(first) = states.next() else {
        return Ok(());
    };
    let period = first.root.period_ms();
    let mut prev_elapsed = first.elapsed_ms;
    for s in states {
        let records = status_records(s);
        let start = s.elapsed_ms.saturating_sub(period).max(prev_elapsed);
        let slice = if records.is_empty() {
            0
        } else {
            (s.elapsed_ms - start) / records.len() as u64
        };
        let step = s.elapsed_ms / period.max(1);
        for (i, r) in records.iter().enumerate() {
            let t = start + slice * (i as u64 + 1);
            writeln!(w, "{step},{t},{},{},{},{}", r.dir, r.roll, r.yaw, r.goal)?;
        }
        prev_elapsed = s.elapsed_ms;
    }
    Ok(())
}
