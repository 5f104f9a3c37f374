//! Pretty JSON writer that renders every float with six decimal places, so
//! probabilities serialize with full stated precision and files are
//! byte-stable across runs.

use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter, Serializer};

pub struct SixDecimalFormatter<'a> {
    inner: PrettyFormatter<'a>,
}

impl Default for SixDecimalFormatter<'_> {
    fn default() -> Self {
        SixDecimalFormatter {
            inner: PrettyFormatter::new(),
        }
    }
}

impl Formatter for SixDecimalFormatter<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.6}")
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_array(writer)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.inner.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object(writer)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.inner.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object_value(writer)
    }
}

/// Serializes a value as pretty JSON with 6-decimal floats and a trailing
/// newline.
pub fn to_json_string<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut out = Vec::new();
    let mut serializer = Serializer::with_formatter(&mut out, SixDecimalFormatter::default());
    value.serialize(&mut serializer)?;
    out.push(b'\n');
    Ok(String::from_utf8(out).expect("serde_json emits UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_carry_six_decimals() {
        #[derive(Serialize)]
        struct Probe {
            p: f64,
            v: f64,
            n: u32,
        }
        let s = to_json_string(&Probe {
            p: 0.6129,
            v: -10.0,
            n: 100,
        })
        .unwrap();
        assert!(s.contains("0.612900"), "{s}");
        assert!(s.contains("-10.000000"), "{s}");
        assert!(s.contains("\"n\": 100"), "{s}");
        assert!(s.ends_with('\n'));
    }
}
