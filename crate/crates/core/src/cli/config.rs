//! Layered run configuration: command-line flags over a `key=value` file over
//! the environment over built-in defaults.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::moments::Params;
use crate::numerics::{BigReal, PrecisionContext, DEFAULT_TARGET_DIGITS};

use super::CliError;

/// Environment variable holding the default target digits.
pub const DIGITS_ENV: &str = "SEXTIC_FREUD_DIGITS";

/// Smallest accepted `--digits`.
pub const MIN_TARGET_DIGITS: u32 = 15;

/// Keys accepted in a config file (same spelling as the long flags).
pub const FILE_KEYS: &[&str] = &[
    "t1", "t2", "digits", "guard", "format", "output", "max-order", "n", "check", "tol", "step", "quantity", "n-list",
    "t1-range", "t2-range",
];

/// Parses `key = value` lines. `#` starts a comment; underscores in keys are
/// read as dashes.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Usage(format!("config line {}: expected key=value", lineno + 1)));
        };
        let key = key.trim().replace('_', "-");
        if !FILE_KEYS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!("config line {}: unknown key '{key}'", lineno + 1)));
        }
        out.insert(key, value.trim().to_string());
    }
    Ok(out)
}

pub fn load_config_file(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config file {}: {e}", path.display())))?;
    parse_config_text(&text)
}

/// Resolved settings plus the echo of every value actually used.
#[derive(Debug, Default)]
pub struct Layers {
    file: BTreeMap<String, String>,
    echo: BTreeMap<String, String>,
}

impl Layers {
    pub fn new(file: BTreeMap<String, String>) -> Self {
        Self {
            file,
            echo: BTreeMap::new(),
        }
    }

    /// Flag, then file. Records the result in the echo.
    pub fn get(&mut self, key: &str, flag: Option<String>) -> Option<String> {
        let value = flag.or_else(|| self.file.get(key).cloned());
        if let Some(v) = &value {
            self.echo.insert(key.to_string(), v.clone());
        }
        value
    }

    pub fn get_or(&mut self, key: &str, flag: Option<String>, default: &str) -> String {
        let value = self.get(key, flag).unwrap_or_else(|| default.to_string());
        self.echo.insert(key.to_string(), value.clone());
        value
    }

    pub fn parsed<T>(&mut self, key: &str, flag: Option<T>, default: T) -> Result<T, CliError>
    where
        T: std::str::FromStr + ToString,
    {
        let text = self.get_or(key, flag.map(|v| v.to_string()), &default.to_string());
        text.parse::<T>()
            .map_err(|_| CliError::Usage(format!("invalid value '{text}' for {key}")))
    }

    pub fn record(&mut self, key: &str, value: impl Into<String>) {
        self.echo.insert(key.to_string(), value.into());
    }

    pub fn echo(&self) -> BTreeMap<String, String> {
        self.echo.clone()
    }

    /// Target digits from flag, file, environment, then default.
    pub fn target_digits(&mut self, flag: Option<u32>) -> Result<u32, CliError> {
        let from_env = std::env::var(DIGITS_ENV).ok().filter(|s| !s.trim().is_empty());
        let text = self
            .get("digits", flag.map(|d| d.to_string()))
            .or(from_env)
            .unwrap_or_else(|| DEFAULT_TARGET_DIGITS.to_string());
        let digits: u32 = text
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("invalid digit count '{text}'")))?;
        if digits < MIN_TARGET_DIGITS {
            return Err(CliError::Usage(format!("--digits must be at least {MIN_TARGET_DIGITS}, got {digits}")));
        }
        self.record("digits", digits.to_string());
        Ok(digits)
    }

    /// Precision for work up to order `n`: explicit guard digits, or the
    /// automatic policy raised until `min_working` digits are available.
    pub fn context(&mut self, digits: Option<u32>, guard: Option<u32>, n: usize, min_working: u32) -> Result<PrecisionContext, CliError> {
        let target = self.target_digits(digits)?;
        let guard = match self.get("guard", guard.map(|g| g.to_string())) {
            Some(text) => text
                .parse::<u32>()
                .map_err(|_| CliError::Usage(format!("invalid guard digit count '{text}'")))?,
            None => PrecisionContext::auto_guard_digits(n).max(min_working.saturating_sub(target)),
        };
        self.record("guard", guard.to_string());
        PrecisionContext::new(target, guard).map_err(|e| CliError::Usage(e.to_string()))
    }

    pub fn params(&mut self, t1: Option<String>, t2: Option<String>, ctx: &PrecisionContext) -> Result<Params, CliError> {
        let t1 = self.get_or("t1", t1, "0");
        let t2 = self.get_or("t2", t2, "0");
        Params::parse(&t1, &t2, ctx).map_err(|e| CliError::Usage(e.to_string()))
    }
}

/// `"32,64"` into a strictly increasing list of positive integers.
pub fn parse_n_list(text: &str) -> Result<Vec<usize>, CliError> {
    let list = text
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Usage(format!("invalid n list '{text}'")))?;
    if list.is_empty() || list[0] == 0 || list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::Usage(format!("n list '{text}' must be positive and strictly increasing")));
    }
    Ok(list)
}

/// `start:stop:count` into `count` evenly spaced values (`count = 1` gives `start`).
pub fn parse_range(text: &str, ctx: &PrecisionContext) -> Result<Vec<BigReal>, CliError> {
    let bad = || CliError::Usage(format!("invalid range '{text}', expected start:stop:count"));
    let parts: Vec<&str> = text.split(':').collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err(bad());
    };
    let start = ctx.parse(start.trim()).map_err(|_| bad())?;
    let stop = ctx.parse(stop.trim()).map_err(|_| bad())?;
    let count: usize = count.trim().parse().map_err(|_| bad())?;
    if count == 0 {
        return Err(bad());
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    let step = ctx.real(&stop - &start) / (count as u64 - 1);
    Ok((0..count)
        .map(|i| {
            if i + 1 == count {
                stop.clone()
            } else {
                ctx.real(&step * i as u64) + &start
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_text() {
        let map = parse_config_text("# run\nt1 = -1\nmax_order=8  # trailing\n\n").unwrap();
        assert_eq!(map["t1"], "-1");
        assert_eq!(map["max-order"], "8");
        assert!(parse_config_text("bogus = 1").is_err());
        assert!(parse_config_text("t1").is_err());
    }

    #[test]
    fn flags_win_over_file() {
        let mut layers = Layers::new(parse_config_text("t1 = 2\nt2 = 3").unwrap());
        assert_eq!(layers.get_or("t1", Some("5".into()), "0"), "5");
        assert_eq!(layers.get_or("t2", None, "0"), "3");
        assert_eq!(layers.get_or("n", None, "10"), "10");
        let echo = layers.echo();
        assert_eq!(echo["t1"], "5");
        assert_eq!(echo["n"], "10");
    }

    #[test]
    fn n_lists() {
        assert_eq!(parse_n_list("32, 64").unwrap(), vec![32, 64]);
        assert!(parse_n_list("64,32").is_err());
        assert!(parse_n_list("0,1").is_err());
        assert!(parse_n_list("a").is_err());
    }

    #[test]
    fn ranges() {
        let ctx = PrecisionContext::default();
        let r = parse_range("-1:1:3", &ctx).unwrap();
        assert_eq!(r, vec![ctx.real(-1), ctx.zero(), ctx.one()]);
        assert_eq!(parse_range("0.5:9:1", &ctx).unwrap(), vec![ctx.ratio(1, 2)]);
        assert!(parse_range("0:1", &ctx).is_err());
        assert!(parse_range("0:1:0", &ctx).is_err());
    }

    #[test]
    fn auto_guard_reaches_minimum() {
        let mut layers = Layers::default();
        let ctx = layers.context(Some(30), None, 4, 60).unwrap();
        assert!(ctx.working_digits() >= 60);
        let ctx = layers.context(Some(50), None, 100, 0).unwrap();
        assert_eq!(ctx.guard_digits(), 120);
        assert!(layers.context(Some(10), None, 4, 0).is_err());
    }
}
