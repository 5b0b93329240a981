//! Evaluation grids written as `start:stop:count`, optionally suffixed with
//! `:lin` or `:log`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn linear(start: f64, stop: f64, count: usize) -> Self {
        Self { start, stop, count, spacing: Spacing::Linear }
    }

    pub fn log(start: f64, stop: f64, count: usize) -> Self {
        Self { start, stop, count, spacing: Spacing::Log }
    }

    pub fn points(&self) -> Result<Vec<f64>> {
        match self.spacing {
            Spacing::Linear => linspace(self.start, self.stop, self.count),
            Spacing::Log => logspace(self.start, self.stop, self.count),
        }
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidConfig(format!("grid '{s}' is not start:stop:count[:lin|:log]"));
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(bad());
        }
        let start = parts[0].parse().map_err(|_| bad())?;
        let stop = parts[1].parse().map_err(|_| bad())?;
        let count = parts[2].parse().map_err(|_| bad())?;
        let spacing = match parts.get(3) {
            None | Some(&"lin") => Spacing::Linear,
            Some(&"log") => Spacing::Log,
            Some(_) => return Err(bad()),
        };
        let spec = GridSpec { start, stop, count, spacing };
        spec.points()?;
        Ok(spec)
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sp = match self.spacing {
            Spacing::Linear => "lin",
            Spacing::Log => "log",
        };
        write!(f, "{}:{}:{}:{sp}", self.start, self.stop, self.count)
    }
}

/// `count` evenly spaced points including both ends. Endpoints are exact.
pub fn linspace(start: f64, stop: f64, count: usize) -> Result<Vec<f64>> {
    check(start, stop, count)?;
    if count == 1 {
        return Ok(vec![start]);
    }
    let step = (stop - start) / (count - 1) as f64;
    let mut v: Vec<f64> = (0..count).map(|i| start + step * i as f64).collect();
    v[count - 1] = stop;
    Ok(v)
}

/// `count` log-spaced points on `[start, stop]`, both positive.
pub fn logspace(start: f64, stop: f64, count: usize) -> Result<Vec<f64>> {
    if start <= 0.0 || stop <= 0.0 {
        return Err(Error::InvalidConfig("log grid needs positive endpoints".into()));
    }
    let mut v: Vec<f64> = linspace(start.ln(), stop.ln(), count)?.into_iter().map(f64::exp).collect();
    v[0] = start;
    v[count - 1] = stop;
    Ok(v)
}

fn check(start: f64, stop: f64, count: usize) -> Result<()> {
    if count == 0 || !start.is_finite() || !stop.is_finite() {
        return Err(Error::InvalidConfig("grid needs finite endpoints and count >= 1".into()));
    }
    if count > 1 && stop <= start {
        return Err(Error::InvalidConfig("grid must be increasing".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_specs() {
        let g: GridSpec = "1960:2014:55".parse().unwrap();
        let p = g.points().unwrap();
        assert_eq!(p.len(), 55);
        assert_eq!(p[0], 1960.0);
        assert_eq!(p[54], 2014.0);
        assert_eq!(p[10], 1970.0);

        let g: GridSpec = "1:1000:200:log".parse().unwrap();
        let p = g.points().unwrap();
        assert_eq!((p[0], p[199]), (1.0, 1000.0));
        assert!(p.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn rejects_bad_specs() {
        for s in ["1:2", "a:2:3", "1:2:0", "2:1:5", "0:1:3:log", "1:2:3:cubic"] {
            assert!(s.parse::<GridSpec>().is_err(), "{s}");
        }
    }
}
