use std::path::Path;

use quatgeo::exact::{parse_rat, Rat};
use quatgeo::Error;

pub const PRIME_BOUND_ENV: &str = "QUATGEO_PRIME_BOUND";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub a: i64,
    pub b: i64,
    pub eta_norm_bound: Rat,
    pub prime_search_bound: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            a: -2,
            b: 13,
            eta_norm_bound: Rat::from_integer(50.into()),
            prime_search_bound: 1_000_000,
        }
    }
}

fn bad(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("config line {line}: {msg}"))
}

impl Config {
    /// `key = value` lines; `#` starts a comment.
    pub fn apply_file_text(&mut self, text: &str) -> Result<(), Error> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| bad(i + 1, "expected key = value"))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "a" => self.a = value.parse().map_err(|e| bad(i + 1, e))?,
                "b" => self.b = value.parse().map_err(|e| bad(i + 1, e))?,
                "order" => {
                    if !value.eq_ignore_ascii_case("i0") {
                        return Err(bad(i + 1, format!("unsupported order {value:?}; only I0")));
                    }
                }
                "eta_norm_bound" => self.eta_norm_bound = parse_rat(value)?,
                "prime_search_bound" => {
                    self.prime_search_bound = value.parse().map_err(|e| bad(i + 1, e))?
                }
                other => return Err(bad(i + 1, format!("unknown key {other:?}"))),
            }
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), Error> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        self.apply_file_text(&text)
    }

    pub fn apply_env(&mut self) -> Result<(), Error> {
        if let Ok(v) = std::env::var(PRIME_BOUND_ENV) {
            self.prime_search_bound = v
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("{PRIME_BOUND_ENV}={v:?}: {e}")))?;
        }
        Ok(())
    }
}
