use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, int, parse_rational, rat, Rational};

/// Settings shared by all commands. Keys in the config file match the field
/// names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub a: Rational,
    pub lambda: Rational,
    pub nu: Rational,
    /// `(m1, m2)` for a single intertwiner; `m3` is the dimension of the
    /// nilpotent block used by `structure`.
    pub jordan_sizes: (usize, usize, usize),
    /// Window `[-window, window]` in powers of `x`.
    pub window: i64,
    pub log_cutoff: u32,
    pub weight_bound: u32,
    /// Highest level for `character`.
    pub levels: u32,
    pub cache_path: Option<PathBuf>,
    pub out: Option<PathBuf>,
    /// `verify-intertwiner` runs the grid below instead of one spec.
    pub grid: bool,
    pub size_grid: Vec<usize>,
    pub lambda_grid: Vec<Rational>,
    pub nu_grid: Vec<Rational>,
    /// Bracket modes `h(n)` for `|n| <= brackets`.
    pub brackets: u32,
    /// Sample inputs up to this level.
    pub sample_level: u32,
    pub corrupt_t: bool,
    /// `(m, n)` pairs for `hidden` and `fusion`.
    pub pairs: Vec<(u32, u32)>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            a: int(0),
            lambda: int(0),
            nu: int(0),
            jordan_sizes: (2, 2, 2),
            window: 4,
            log_cutoff: 5,
            weight_bound: 4,
            levels: 10,
            cache_path: None,
            out: None,
            grid: true,
            size_grid: vec![1, 2, 3],
            lambda_grid: vec![int(0), int(1), rat(1, 2)],
            nu_grid: vec![int(0), int(1), rat(1, 2)],
            brackets: 2,
            sample_level: 1,
            corrupt_t: false,
            pairs: vec![(0, 0), (1, 1)],
        }
    }
}

fn list<T, F: Fn(&str) -> std::result::Result<T, String>>(v: &str, f: F) -> std::result::Result<Vec<T>, String> {
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(f)
        .collect()
}

fn number<T: std::str::FromStr>(s: &str) -> std::result::Result<T, String> {
    s.parse().map_err(|_| format!("`{s}` is not a valid number"))
}

fn rational(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn boolean(s: &str) -> std::result::Result<bool, String> {
    match s {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(format!("`{s}` is not a boolean")),
    }
}

fn positive(n: usize) -> std::result::Result<usize, String> {
    if n == 0 {
        Err("Jordan sizes must be >= 1".into())
    } else {
        Ok(n)
    }
}

impl RunConfig {
    /// Sets one key. `line` is reported in errors (0 for `--set`).
    pub fn set(&mut self, key: &str, value: &str, line: usize) -> Result<()> {
        let v = value.trim();
        let res: std::result::Result<(), String> = (|| {
            match key {
                "a" => self.a = rational(v)?,
                "lambda" => self.lambda = rational(v)?,
                "nu" => self.nu = rational(v)?,
                "jordan_sizes" => {
                    let s = list(v, |x| number::<usize>(x).and_then(positive))?;
                    self.jordan_sizes = match s.as_slice() {
                        [m1, m2] => (*m1, *m2, self.jordan_sizes.2),
                        [m1, m2, m3] => (*m1, *m2, *m3),
                        _ => return Err("expected `m1,m2` or `m1,m2,m3`".into()),
                    };
                }
                "window" => {
                    let n: i64 = number(v)?;
                    if n < 1 {
                        return Err("window span must be >= 1".into());
                    }
                    self.window = n;
                }
                "log_cutoff" => self.log_cutoff = number(v)?,
                "weight_bound" => self.weight_bound = number(v)?,
                "levels" => self.levels = number(v)?,
                "cache_path" => self.cache_path = (!v.is_empty()).then(|| PathBuf::from(v)),
                "out" => self.out = (!v.is_empty()).then(|| PathBuf::from(v)),
                "grid" => self.grid = boolean(v)?,
                "size_grid" => self.size_grid = list(v, |x| number::<usize>(x).and_then(positive))?,
                "lambda_grid" => self.lambda_grid = list(v, rational)?,
                "nu_grid" => self.nu_grid = list(v, rational)?,
                "brackets" => self.brackets = number(v)?,
                "sample_level" => self.sample_level = number(v)?,
                "corrupt_t" => self.corrupt_t = boolean(v)?,
                "pairs" => {
                    self.pairs = v
                        .split(';')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(|p| match list(p, number::<u32>)?.as_slice() {
                            [m, n] => Ok((*m, *n)),
                            _ => Err(format!("pair `{p}` must be `m,n`")),
                        })
                        .collect::<std::result::Result<_, _>>()?;
                }
                _ => return Err("unknown key".into()),
            }
            Ok(())
        })();
        res.map_err(|message| Error::Config {
            line,
            key: key.to_string(),
            message,
        })
    }

    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(Error::Config {
                    line: i + 1,
                    key: line.to_string(),
                    message: "expected `key = value`".into(),
                });
            };
            cfg.set(k.trim(), v, i + 1)?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config {
            line: 0,
            key: "--config".into(),
            message: format!("{}: {e}", path.display()),
        })?;
        Self::parse(&text)
    }

    /// Applies `key=value` overrides.
    pub fn apply_overrides(&mut self, overrides: &[String]) -> Result<()> {
        for o in overrides {
            let Some((k, v)) = o.split_once('=') else {
                return Err(Error::Config {
                    line: 0,
                    key: o.clone(),
                    message: "--set expects key=value".into(),
                });
            };
            self.set(k.trim(), v, 0)?;
        }
        Ok(())
    }

    /// Config echo for reports.
    pub fn to_json(&self) -> Map<String, Value> {
        let r = |x: &Rational| format_rational(x);
        let rs = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
        let mut m = Map::new();
        m.insert("a".into(), json!(r(&self.a)));
        m.insert("lambda".into(), json!(r(&self.lambda)));
        m.insert("nu".into(), json!(r(&self.nu)));
        let (m1, m2, m3) = self.jordan_sizes;
        m.insert("jordan_sizes".into(), json!([m1, m2, m3]));
        m.insert("window".into(), json!(self.window));
        m.insert("log_cutoff".into(), json!(self.log_cutoff));
        m.insert("weight_bound".into(), json!(self.weight_bound));
        m.insert("levels".into(), json!(self.levels));
        m.insert(
            "cache_path".into(),
            json!(self.cache_path.as_ref().map(|p| p.display().to_string())),
        );
        m.insert("grid".into(), json!(self.grid));
        m.insert("size_grid".into(), json!(self.size_grid));
        m.insert("lambda_grid".into(), json!(rs(&self.lambda_grid)));
        m.insert("nu_grid".into(), json!(rs(&self.nu_grid)));
        m.insert("brackets".into(), json!(self.brackets));
        m.insert("sample_level".into(), json!(self.sample_level));
        m.insert("corrupt_t".into(), json!(self.corrupt_t));
        m.insert("pairs".into(), json!(self.pairs));
        m
    }
}
