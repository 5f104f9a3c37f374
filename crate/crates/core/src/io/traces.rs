//! CSV serialization of degauss traces.
//!
//! Format: header `trial,dot_1,...,dot_N`, one row per degauss with state
//! codes 0=OFF, 1=SDR, 2=SDL, 3=VCW, 4=VCCW.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::model::{DegaussTrace, MagneticState};

pub fn write_traces<W: Write>(mut writer: W, traces: &[DegaussTrace]) -> Result<()> {
    let n = traces.first().map_or(0, DegaussTrace::len);
    let mut header = String::from("trial");
    for k in 1..=n {
        header.push_str(&format!(",dot_{k}"));
    }
    writeln!(writer, "{header}")?;
    for trace in traces {
        if trace.len() != n {
            return Err(Error::LengthMismatch(n, trace.len()));
        }
        let mut row = trace.trial_index.to_string();
        for state in &trace.states {
            row.push(',');
            row.push_str(&state.code().to_string());
        }
        writeln!(writer, "{row}")?;
    }
    Ok(())
}

pub fn traces_to_csv(traces: &[DegaussTrace]) -> Result<String> {
    let mut out = Vec::new();
    write_traces(&mut out, traces)?;
    Ok(String::from_utf8(out).expect("ASCII CSV"))
}

pub fn read_traces<R: Read>(reader: R) -> Result<Vec<DegaussTrace>> {
    let mut csv_reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(reader);
    let headers = csv_reader.headers()?.clone();
    if headers.get(0) != Some("trial") {
        return Err(Error::Schema("trace CSV must start with a `trial` column".into()));
    }
    let mut traces = Vec::new();
    for record in csv_reader.records() {
        let record = record?;
        let trial_index = record
            .get(0)
            .and_then(|s| s.parse::<u64>().ok())
            .ok_or_else(|| Error::Schema("bad trial index".into()))?;
        let states = record
            .iter()
            .skip(1)
            .map(|cell| {
                cell.parse::<u8>()
                    .map_err(|_| Error::Schema(format!("bad state code `{cell}`")))
                    .and_then(MagneticState::from_code)
            })
            .collect::<Result<Vec<_>>>()?;
        traces.push(DegaussTrace {
            trial_index,
            states,
        });
    }
    Ok(traces)
}
