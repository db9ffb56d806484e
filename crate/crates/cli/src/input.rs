use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use ladders_core::rational::{parse_rational, Rational};
use serde::de::DeserializeOwned;

/// Malformed input; always exit code 64.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl InputError {
    pub fn new(msg: impl Into<String>) -> Self {
        InputError(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, InputError>;

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

/// Parses JSON, naming the key path on failure.
pub fn parse_json<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        if path == "." {
            InputError(format!("{origin}: {}", e.inner()))
        } else {
            InputError(format!("{origin}: key `{path}`: {}", e.inner()))
        }
    })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    parse_json(&read_text(path)?, &path.display().to_string())
}

/// A JSON argument given inline (`{…}` or `[…]`) or as a file path.
pub fn json_arg<T: DeserializeOwned>(arg: &str, flag: &str) -> Result<T> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        parse_json(arg, flag)
    } else {
        read_json(Path::new(arg))
    }
}

pub fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("artifacts serialize");
    text.push('\n');
    fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

pub fn rational_arg(text: &str, flag: &str) -> Result<Rational> {
    parse_rational(text.trim()).map_err(|e| InputError(format!("{flag}: {e}")))
}

pub fn rational_list(text: &str, flag: &str) -> Result<Vec<Rational>> {
    text.split(',').map(|t| rational_arg(t, flag)).collect()
}

pub fn u32_list(text: &str, flag: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| InputError(format!("{flag}: `{}` is not a non-negative integer", t.trim())))
        })
        .collect()
}

/// Resolves `rel` against the directory holding `base`.
pub fn relative_to(base: &Path, rel: &str) -> PathBuf {
    let p = Path::new(rel);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.parent().unwrap_or(Path::new(".")).join(p)
    }
}
