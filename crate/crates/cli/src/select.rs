//! Parsing of `--n/--l/--j` selectors and state enumeration.

use crate::failure::Failure;

fn parse_range<F: Fn(&str) -> Result<i64, String>>(flag: &str, text: &str, item: F) -> Result<Vec<i64>, Failure> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = |why: String| Failure::usage(format!("--{flag}: {why}"));
        if let Some((a, b)) = part.split_once("..") {
            let (lo, hi) = (item(a.trim()).map_err(bad)?, item(b.trim()).map_err(bad)?);
            if lo > hi {
                return Err(Failure::usage(format!("--{flag}: empty range {part}")));
            }
            out.extend(lo..=hi);
        } else {
            out.push(item(part).map_err(bad)?);
        }
    }
    if out.is_empty() {
        return Err(Failure::usage(format!("--{flag}: no values given")));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn integer(text: &str) -> Result<i64, String> {
    match text.parse::<i64>() {
        Ok(v) if v >= 0 => Ok(v),
        _ => Err(format!("expected a non-negative integer, got {text:?}")),
    }
}

/// Half-integer as its double: `0.5`, `3/2`, `1.5e0`.
pub fn twice_half_integer(text: &str) -> Result<i64, String> {
    let value = match text.split_once('/') {
        Some((num, "2")) => num.trim().parse::<f64>().map(|v| v / 2.0),
        Some(_) => return Err(format!("expected a half-integer, got {text:?}")),
        None => text.parse::<f64>(),
    }
    .map_err(|_| format!("expected a half-integer, got {text:?}"))?;
    let twice = 2.0 * value;
    if !(twice.fract() == 0.0 && twice > 0.0 && (twice as i64) % 2 == 1) {
        return Err(format!("expected a positive half-odd-integer, got {text:?}"));
    }
    Ok(twice as i64)
}

pub fn integers(flag: &str, text: &str) -> Result<Vec<u32>, Failure> {
    Ok(parse_range(flag, text, integer)?.into_iter().map(|v| v as u32).collect())
}

/// Doubled half-integers; `a..b` steps by one.
pub fn doubled_halves(flag: &str, text: &str) -> Result<Vec<u32>, Failure> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = |why: String| Failure::usage(format!("--{flag}: {why}"));
        if let Some((a, b)) = part.split_once("..") {
            let (lo, hi) = (twice_half_integer(a.trim()).map_err(bad)?, twice_half_integer(b.trim()).map_err(bad)?);
            if lo > hi {
                return Err(Failure::usage(format!("--{flag}: empty range {part}")));
            }
            out.extend((lo..=hi).step_by(2).map(|v| v as u32));
        } else {
            out.push(twice_half_integer(part).map_err(bad)? as u32);
        }
    }
    if out.is_empty() {
        return Err(Failure::usage(format!("--{flag}: no values given")));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct State {
    pub n: u32,
    pub two_j: u32,
    pub l: u32,
}

/// Every valid `(n, l, j)` passing the filters, ordered by `(n, 2j, l)`.
pub fn states(sel: &crate::args::Selectors) -> Result<Vec<State>, Failure> {
    let ns = match &sel.n {
        Some(text) => integers("n", text)?,
        None => {
            if sel.n_max < 1 {
                return Err(Failure::usage("--n-max must be at least 1"));
            }
            (1..=sel.n_max).collect()
        }
    };
    if ns.contains(&0) {
        return Err(Failure::usage("--n: principal number must be at least 1"));
    }
    if ns.iter().any(|&n| n > 50) {
        return Err(Failure::usage("--n: principal numbers above 50 are not supported"));
    }
    let ls = sel.l.as_deref().map(|t| integers("l", t)).transpose()?;
    let js = sel.j.as_deref().map(|t| doubled_halves("j", t)).transpose()?;
    let mut out = Vec::new();
    for &n in &ns {
        for two_j in (1..2 * n).step_by(2) {
            if js.as_ref().is_some_and(|js| !js.contains(&two_j)) {
                continue;
            }
            for l in [(two_j - 1) / 2, two_j.div_ceil(2)] {
                if l >= n || ls.as_ref().is_some_and(|ls| !ls.contains(&l)) {
                    continue;
                }
                out.push(State { n, two_j, l });
            }
        }
    }
    if out.is_empty() {
        return Err(Failure::usage("no valid (n, l, j) state matches --n/--l/--j"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::args::Selectors;

    fn sel(n: Option<&str>, l: Option<&str>, j: Option<&str>) -> Selectors {
        Selectors { n_max: 3, n: n.map(Into::into), l: l.map(Into::into), j: j.map(Into::into) }
    }

    #[test]
    fn half_integers() {
        assert_eq!(twice_half_integer("0.5"), Ok(1));
        assert_eq!(twice_half_integer("3/2"), Ok(3));
        assert!(twice_half_integer("1").is_err());
        assert!(twice_half_integer("-0.5").is_err());
        assert!(twice_half_integer("x").is_err());
    }

    #[test]
    fn enumeration() {
        assert_eq!(states(&sel(None, None, None)).unwrap().len(), 9);
        let s = states(&sel(Some("2"), None, Some("0.5"))).unwrap();
        assert_eq!(s, vec![State { n: 2, two_j: 1, l: 0 }, State { n: 2, two_j: 1, l: 1 }]);
        assert_eq!(states(&sel(Some("1..4"), Some("0"), None)).unwrap().len(), 4);
        assert!(states(&sel(Some("1"), Some("2"), None)).is_err());
        assert_eq!(doubled_halves("j", "0.5..2.5").unwrap(), vec![1, 3, 5]);
    }
}
