//! Report serialization: compact JSON with 17 significant digits, and CSV.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;

/// Writes every float as `{:.16e}` (17 significant digits); non-finite
/// values become `null`.
struct SigDigits;

impl Formatter for SigDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write_float(writer, value)
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        write_float(writer, value as f64)
    }
}

fn write_float<W: ?Sized + io::Write>(writer: &mut W, value: f64) -> io::Result<()> {
    if value.is_finite() {
        write!(writer, "{value:.16e}")
    } else {
        writer.write_all(b"null")
    }
}

pub fn format_number(value: f64) -> String {
    let mut buf = Vec::new();
    write_float(&mut buf, value).expect("write to vec");
    String::from_utf8(buf).expect("ascii")
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigDigits);
    value.serialize(&mut ser).expect("report serializes");
    String::from_utf8(buf).expect("json is utf-8")
}

pub fn to_csv(header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("write to vec");
    for row in rows {
        w.write_record(row.iter().map(|&x| format_number(x)))
            .expect("write to vec");
    }
    String::from_utf8(w.into_inner().expect("flush to vec")).expect("csv is utf-8")
}
