//! Inclusive ranges such as `1..3`, `1..=3`, `2` or `1,3,5`.

pub fn parse_range(s: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bounds = part.split_once("..=").or_else(|| part.split_once(".."));
        let (lo, hi) = match bounds {
            Some((a, b)) => (number(a)?, number(b)?),
            None => {
                let v = number(part)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range `{part}`"));
        }
        out.extend(lo..=hi);
    }
    if out.is_empty() {
        return Err("empty range".into());
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn number(s: &str) -> Result<usize, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("`{s}` is not a non-negative integer"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(parse_range("1..2").unwrap(), [1, 2]);
        assert_eq!(parse_range("0..=3").unwrap(), [0, 1, 2, 3]);
        assert_eq!(parse_range("3").unwrap(), [3]);
        assert_eq!(parse_range("1,3").unwrap(), [1, 3]);
        assert_eq!(parse_range("3,1..2").unwrap(), [1, 2, 3]);
        assert!(parse_range("2..1").is_err());
        assert!(parse_range("a..2").is_err());
        assert!(parse_range("").is_err());
    }
}
