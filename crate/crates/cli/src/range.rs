use std::fmt;
use std::str::FromStr;

/// An inclusive integer range `a..b`, a single value, or a comma list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Range(Vec<i64>);

impl Range {
    pub fn single(v: i64) -> Self {
        Range(vec![v])
    }

    pub fn span(a: i64, b: i64) -> Self {
        Range((a..=b).collect())
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn max(&self) -> i64 {
        *self.0.iter().max().expect("nonempty")
    }

    pub fn at_least(&self, lo: i64, name: &str) -> Result<(), String> {
        match self.0.iter().find(|&&v| v < lo) {
            Some(v) => Err(format!("--{name} must be >= {lo}, got {v}")),
            None => Ok(()),
        }
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let num = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("not an integer: {t:?}"));
        if let Some((a, b)) = s.split_once("..") {
            let a = num(a)?;
            let b = num(b.trim_start_matches('='))?;
            if a > b {
                return Err(format!("empty range {s}"));
            }
            if b - a > 10_000 {
                return Err(format!("range {s} is too long"));
            }
            return Ok(Range::span(a, b));
        }
        let mut v = s.split(',').map(num).collect::<Result<Vec<_>, _>>()?;
        v.sort_unstable();
        v.dedup();
        Ok(Range(v))
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = &self.0;
        let contiguous = v.windows(2).all(|w| w[1] == w[0] + 1);
        if v.len() > 1 && contiguous {
            write!(f, "{}..{}", v[0], v[v.len() - 1])
        } else {
            let s: Vec<String> = v.iter().map(i64::to_string).collect();
            write!(f, "{}", s.join(","))
        }
    }
}
