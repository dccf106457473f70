//! Output formatting: JSON with every float at 17 significant digits
//! (exactly round-trippable), and small CSV helpers.

use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};
use std::io;

/// Compact JSON, except floats print as `{:.16e}` (all other tokens keep
/// the `Formatter` defaults).
struct SigDigits17;

impl Formatter for SigDigits17 {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:e}")
    }
}

/// Serialize to compact JSON with floats at 17 significant digits.
pub fn to_json_17<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut serializer = Serializer::with_formatter(&mut out, SigDigits17);
    value
        .serialize(&mut serializer)
        .expect("payloads serialize without IO errors");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

/// One float at 17 significant digits, for CSV columns.
pub fn full(value: f64) -> String {
    format!("{value:.16e}")
}

/// Five decimals, truncated toward zero (the table presentation).
pub fn trunc5(value: f64) -> String {
    format!("{:.5}", (value * 1e5).trunc() / 1e5)
}
