//! Run-configuration resolution: a flat `key = value` file merged with
//! command-line flags, with unknown keys rejected before anything runs.

use std::collections::BTreeMap;
use std::path::PathBuf;

use crate::CliError;

/// Keys understood outside any single command.
const META_KEYS: &[&str] = &["command", "seed", "format", "output"];

/// Parameter keys each command accepts; anything else is rejected.
pub fn known_keys(command: &str) -> Option<&'static [&'static str]> {
    match command {
        "witness" => Some(&["epsilon", "delta", "truncation", "grid"]),
        "constants" => Some(&["alpha", "gamma", "n", "M", "C", "K", "pi_norm", "r"]),
        "findim" => Some(&["task", "algebra", "degree", "samples", "budget", "r"]),
        "cvp" => Some(&["group", "p", "samples"]),
        _ => None,
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub enum Format {
    Json,
    Csv,
}

/// A fully resolved run: everything needed to execute and serialize.
#[derive(Debug)]
pub struct Resolved {
    pub command: String,
    pub seed: u64,
    pub format: Format,
    pub output: Option<PathBuf>,
    /// Merged string parameters; typed parsing happens per command.
    pub params: BTreeMap<String, String>,
}

/// Parses `key = value` lines. `#` starts a comment; blank lines are
/// skipped; duplicate keys are rejected rather than silently overwritten.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Config(format!("config line {lineno}: expected `key = value`, got `{line}`"))
        })?;
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if key.is_empty() {
            return Err(CliError::Config(format!("config line {lineno}: empty key")));
        }
        if map.insert(key.clone(), value).is_some() {
            return Err(CliError::Config(format!("config line {lineno}: duplicate key `{key}`")));
        }
    }
    Ok(map)
}

/// Merges an optional config file with the flags of an optional subcommand.
/// The subcommand (when given) decides what runs; flag values override file
/// values key by key; file keys foreign to the resolved command are errors.
pub fn resolve(
    flag_parts: Option<(&'static str, BTreeMap<String, String>)>,
    file: Option<&BTreeMap<String, String>>,
    seed_flag: Option<u64>,
    format_flag: Option<Format>,
    output_flag: Option<PathBuf>,
) -> Result<Resolved, CliError> {
    let command = match (&flag_parts, file.and_then(|f| f.get("command"))) {
        (Some((name, _)), _) => (*name).to_string(),
        (None, Some(name)) => name.clone(),
        (None, None) => {
            return Err(CliError::Config(
                "no command given: pass a subcommand or set `command` in the config file".into(),
            ))
        }
    };
    let known = known_keys(&command)
        .ok_or_else(|| CliError::Config(format!("unknown command `{command}`")))?;

    let mut params = BTreeMap::new();
    if let Some(file) = file {
        for (key, value) in file {
            if META_KEYS.contains(&key.as_str()) {
                continue;
            }
            if !known.contains(&key.as_str()) {
                return Err(CliError::Config(format!(
                    "unknown key `{key}` for command `{command}`"
                )));
            }
            params.insert(key.clone(), value.clone());
        }
    }
    if let Some((_, flags)) = flag_parts {
        for (key, value) in flags {
            params.insert(key, value);
        }
    }

    let seed = match (seed_flag, file.and_then(|f| f.get("seed"))) {
        (Some(s), _) => s,
        (None, Some(raw)) => raw
            .parse::<u64>()
            .map_err(|_| CliError::Config(format!("seed must be a nonnegative integer, got `{raw}`")))?,
        (None, None) => 0,
    };
    let format = match (format_flag, file.and_then(|f| f.get("format"))) {
        (Some(f), _) => f,
        (None, Some(raw)) => match raw.as_str() {
            "json" => Format::Json,
            "csv" => Format::Csv,
            other => {
                return Err(CliError::Config(format!(
                    "format must be json or csv, got `{other}`"
                )))
            }
        },
        (None, None) => Format::Json,
    };
    let output = match (output_flag, file.and_then(|f| f.get("output"))) {
        (Some(p), _) => Some(p),
        (None, Some(raw)) => Some(PathBuf::from(raw)),
        (None, None) => None,
    };

    Ok(Resolved { command, seed, format, output, params })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_text_parses_comments_and_blanks() {
        let map = parse_config_text("# full line\ncommand = witness\n\nepsilon = 0.6 # trailing\n").unwrap();
        assert_eq!(map.get("command").map(String::as_str), Some("witness"));
        assert_eq!(map.get("epsilon").map(String::as_str), Some("0.6"));
        assert_eq!(map.len(), 2);
    }

    #[test]
    fn config_text_rejects_malformed_lines() {
        assert!(parse_config_text("just words\n").is_err());
        assert!(parse_config_text("= 3\n").is_err());
        assert!(parse_config_text("a = 1\na = 2\n").is_err());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let file = parse_config_text("command = witness\nepsilom = 0.6\n").unwrap();
        let err = resolve(None, Some(&file), None, None, None).unwrap_err();
        match err {
            CliError::Config(msg) => assert!(msg.contains("epsilom"), "{msg}"),
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn flags_override_file_values() {
        let file = parse_config_text("command = witness\nepsilon = 0.3\nseed = 7\n").unwrap();
        let mut flags = BTreeMap::new();
        flags.insert("epsilon".to_string(), "0.6".to_string());
        let r = resolve(Some(("witness", flags)), Some(&file), Some(9), None, None).unwrap();
        assert_eq!(r.command, "witness");
        assert_eq!(r.params.get("epsilon").map(String::as_str), Some("0.6"));
        assert_eq!(r.seed, 9);
    }

    #[test]
    fn file_supplies_command_seed_and_format() {
        let file = parse_config_text("command = constants\nseed = 11\nformat = csv\nn = 2\n").unwrap();
        let r = resolve(None, Some(&file), None, None, None).unwrap();
        assert_eq!(r.command, "constants");
        assert_eq!(r.seed, 11);
        assert_eq!(r.format, Format::Csv);
        assert_eq!(r.params.get("n").map(String::as_str), Some("2"));
    }

    #[test]
    fn missing_command_is_an_error() {
        let file = parse_config_text("epsilon = 0.6\n").unwrap();
        assert!(resolve(None, Some(&file), None, None, None).is_err());
        assert!(resolve(None, None, None, None, None).is_err());
    }
}
