//! Small helpers shared by the CSV and config readers/writers.
//!
//! All numeric output goes through `f64`'s `Display`, which prints the
//! shortest representation that round-trips exactly; files written twice
//! from the same data are byte-identical, and write-then-read restores the
//! original values bit for bit.

use crate::error::{Error, Result};

/// Parses a `# key = value` metadata line; returns `None` for anything
/// else.
pub(crate) fn header_kv(line: &str) -> Option<(&str, &str)> {
    let rest = line.strip_prefix('#')?;
    let (k, v) = rest.split_once('=')?;
    Some((k.trim(), v.trim()))
}

pub(crate) fn parse_f64(path: &str, line: usize, field: &str, s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::parse(path, line, format!("expected a real for `{field}`, got `{s}`")))
}

pub(crate) fn parse_usize(path: &str, line: usize, field: &str, s: &str) -> Result<usize> {
    s.trim().parse::<usize>().map_err(|_| {
        Error::parse(
            path,
            line,
            format!("expected a non-negative integer for `{field}`, got `{s}`"),
        )
    })
}

pub(crate) fn parse_u64(path: &str, line: usize, field: &str, s: &str) -> Result<u64> {
    s.trim().parse::<u64>().map_err(|_| {
        Error::parse(
            path,
            line,
            format!("expected an unsigned integer for `{field}`, got `{s}`"),
        )
    })
}

pub(crate) fn parse_bool(path: &str, line: usize, field: &str, s: &str) -> Result<bool> {
    match s.trim() {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(Error::parse(
            path,
            line,
            format!("expected `true` or `false` for `{field}`, got `{s}`"),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_round_trips() {
        for v in [0.1, 1.0, -3.5e-17, f64::MAX, 2.0 / 3.0] {
            let s = format!("{v}");
            assert_eq!(s.parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn header_kv_shapes() {
        assert_eq!(header_kv("# R = 2"), Some(("R", "2")));
        assert_eq!(header_kv("#seed=9"), Some(("seed", "9")));
        assert_eq!(header_kv("k,mu_k"), None);
    }
}
