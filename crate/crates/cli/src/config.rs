//! `key = value` files mirroring the command-line flags.

use std::fs;
use std::path::Path;

/// Flags read from a config file, in file order.
pub fn read(path: &Path) -> Result<Vec<String>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("config line {}: expected key = value", no + 1));
        };
        let key = key.trim().trim_start_matches('-');
        let value = value.trim().trim_matches('"');
        if key.is_empty() || key == "config" {
            return Err(format!("config line {}: bad key {key:?}", no + 1));
        }
        match value {
            "true" => out.push(format!("--{key}")),
            "false" => {}
            v => {
                out.push(format!("--{key}"));
                out.push(v.to_string());
            }
        }
    }
    Ok(out)
}

/// Splices config flags in right after the subcommand so that explicit flags win.
pub fn splice(argv: Vec<String>, subcommands: &[&str]) -> Result<Vec<String>, String> {
    let mut path = None;
    let mut rest = Vec::with_capacity(argv.len());
    let mut it = argv.into_iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            path = Some(it.next().ok_or("--config needs a file")?);
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(path) = path else { return Ok(rest) };
    let flags = read(Path::new(&path))?;
    let pos = rest.iter().position(|a| subcommands.contains(&a.as_str())).map_or(rest.len(), |p| p + 1);
    rest.splice(pos..pos, flags);
    Ok(rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs() {
        let f = parse("# grid\nm = 1..2\nA = true\ncsv = false\n\n--kmax=3\n").unwrap();
        assert_eq!(f, vec!["--m", "1..2", "--A", "--kmax", "3"]);
        assert!(parse("oops").is_err());
    }
}
