use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter, Serializer};

use crate::error::{Error, Result};
use crate::linalg::Mat4;

/// Floats with 17 significant digits, which round-trip exactly; non-finite
/// values become `null`.
struct Digits17;

impl Formatter for Digits17 {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }

    fn write_null<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        CompactFormatter.write_null(writer)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    value.serialize(&mut Serializer::with_formatter(&mut out, Digits17))?;
    Ok(String::from_utf8(out).expect("serde_json emits UTF-8"))
}

/// Write `value` as JSON to `path`, or to standard output when `path` is `-`.
pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let mut text = to_json(value)?;
    text.push('\n');
    write_text(&text, path)
}

pub(super) fn write_text(text: &str, path: &Path) -> Result<()> {
    if path.as_os_str() == "-" {
        io::stdout().write_all(text.as_bytes())?;
    } else {
        std::fs::write(path, text)?;
    }
    Ok(())
}

pub fn matrix_to_json(m: &Mat4) -> Result<String> {
    to_json(m)
}

pub fn matrix_from_json(text: &str) -> Result<Mat4> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("matrix JSON: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_unitary4;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn seventeen_digits() {
        assert_eq!(
            to_json(&std::f64::consts::FRAC_PI_4).unwrap(),
            "7.8539816339744828e-1"
        );
        assert_eq!(to_json(&f64::INFINITY).unwrap(), "null");
        assert_eq!(
            to_json(&[0.0, -1.0]).unwrap(),
            "[0.0000000000000000e0,-1.0000000000000000e0]"
        );
    }

    #[test]
    fn matrix_roundtrip_is_bit_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let m = random_unitary4(&mut rng);
            let back = matrix_from_json(&matrix_to_json(&m).unwrap()).unwrap();
            assert_eq!(back, m);
        }
    }

    #[test]
    fn malformed_matrix() {
        assert!(matches!(matrix_from_json("[[1,0]]"), Err(Error::Parse(_))));
        assert!(matches!(matrix_from_json("nope"), Err(Error::Parse(_))));
    }
}
