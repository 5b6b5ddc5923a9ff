//! Report formatting: every float is printed with 17 significant digits
//! (round-trippable doubles, diff-stable goldens), in CSV and JSON alike.

use serde::Serialize;
use std::io;

/// 17-significant-digit scientific rendering of a float.
pub(crate) fn g17(x: f64) -> String {
    format!("{x:.16e}")
}

/// serde_json formatter that routes every f64 through [`g17`].
struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serialize to a single-line JSON string with 17-significant-digit floats.
pub(crate) fn to_json_g17<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
    value.serialize(&mut ser).expect("report serialization cannot fail");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}
