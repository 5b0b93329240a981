//! Economic time series: CSV ingest, linear interpolation, LOESS smoothing and
//! growth-rate transforms.
//!
//! Times are decimal years throughout. A series is immutable once built and
//! every transform returns a new value.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use chrono::{Datelike, NaiveDate};
use nalgebra::{DMatrix, DVector};

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    name: String,
    units: String,
    t: Vec<f64>,
    v: Vec<f64>,
}

impl TimeSeries {
    /// Builds a series from `(t, v)` points already in time order.
    pub fn new(name: impl Into<String>, points: Vec<(f64, f64)>) -> Result<Self> {
        let (t, v): (Vec<f64>, Vec<f64>) = points.into_iter().unzip();
        Self::from_columns(name, t, v)
    }

    pub fn from_columns(name: impl Into<String>, t: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if t.len() != v.len() {
            return Err(Error::InvalidSeries(format!(
                "{} timestamps but {} values",
                t.len(),
                v.len()
            )));
        }
        if let Some(i) = t.iter().zip(&v).position(|(a, b)| !a.is_finite() || !b.is_finite()) {
            return Err(Error::InvalidSeries(format!("non-finite sample at index {i}")));
        }
        if let Some(i) = t.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::InvalidSeries(format!(
                "timestamps not strictly increasing at index {}",
                i + 1
            )));
        }
        Ok(Self { name: name.into(), units: String::new(), t, v })
    }

    pub fn with_units(mut self, units: impl Into<String>) -> Self {
        self.units = units.into();
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn units(&self) -> &str {
        &self.units
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn times(&self) -> &[f64] {
        &self.t
    }

    pub fn values(&self) -> &[f64] {
        &self.v
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.t.iter().copied().zip(self.v.iter().copied())
    }

    /// `(first, last)` timestamps. Panics on an empty series.
    pub fn span(&self) -> (f64, f64) {
        (self.t[0], self.t[self.t.len() - 1])
    }

    fn require_len(&self, need: usize) -> Result<()> {
        if self.len() < need {
            return Err(Error::TooShort { need, got: self.len() });
        }
        Ok(())
    }

    /// Linear interpolation; exact at knots and no extrapolation.
    pub fn interp_linear(&self, t: f64) -> Result<f64> {
        self.require_len(2)?;
        let (lo, hi) = self.span();
        if !(lo..=hi).contains(&t) {
            return Err(Error::OutOfRange { t, lo, hi });
        }
        // first knot strictly greater than t
        let j = self.t.partition_point(|&x| x <= t);
        let i = j - 1;
        if self.t[i] == t || j == self.len() {
            return Ok(self.v[i]);
        }
        let w = (t - self.t[i]) / (self.t[j] - self.t[i]);
        Ok(self.v[i] + (self.v[j] - self.v[i]) * w)
    }

    /// Resamples onto `grid` by linear interpolation.
    pub fn resample(&self, grid: &[f64]) -> Result<TimeSeries> {
        let v = grid.iter().map(|&t| self.interp_linear(t)).collect::<Result<Vec<_>>>()?;
        Ok(TimeSeries::from_columns(self.name.clone(), grid.to_vec(), v)?
            .with_units(self.units.clone()))
    }

    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> Result<TimeSeries> {
        let v = self.v.iter().map(|&x| f(x)).collect();
        Ok(TimeSeries::from_columns(self.name.clone(), self.t.clone(), v)?
            .with_units(self.units.clone()))
    }

    /// Combines two series sampled on identical timestamps.
    pub fn zip_with(
        &self,
        other: &TimeSeries,
        f: impl Fn(f64, f64) -> f64,
    ) -> Result<TimeSeries> {
        if self.t != other.t {
            return Err(Error::InvalidSeries(format!(
                "'{}' and '{}' are sampled on different timestamps",
                self.name, other.name
            )));
        }
        let v = self.v.iter().zip(&other.v).map(|(&a, &b)| f(a, b)).collect();
        TimeSeries::from_columns(self.name.clone(), self.t.clone(), v)
    }

    /// Writes the series as `date,value` with decimal-year dates.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "date,value")?;
        for (t, v) in self.points() {
            writeln!(out, "{t},{v}")?;
        }
        Ok(())
    }

    pub fn save_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let io = |source| Error::Io { path: path.to_path_buf(), source };
        let mut file = std::io::BufWriter::new(File::create(path).map_err(io)?);
        self.write_csv(&mut file).map_err(io)?;
        file.flush().map_err(io)
    }
}

/// Which columns of a CSV file hold the date and the value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Column {
    Index(usize),
    Name(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvSchema {
    pub date: Column,
    pub value: Column,
}

impl Default for CsvSchema {
    fn default() -> Self {
        Self { date: Column::Name("date".into()), value: Column::Name("value".into()) }
    }
}

impl CsvSchema {
    /// First two columns, whatever the header says (FRED exports name the
    /// value column after the series id).
    pub fn positional() -> Self {
        Self { date: Column::Index(0), value: Column::Index(1) }
    }

    fn resolve(&self, header: &csv::StringRecord) -> Result<(usize, usize)> {
        let find = |c: &Column| match c {
            Column::Index(i) if *i < header.len() => Ok(*i),
            Column::Index(i) => Err(Error::Parse { line: 1, msg: format!("no column {i}") }),
            Column::Name(n) => header
                .iter()
                .position(|h| h.trim().eq_ignore_ascii_case(n))
                .ok_or_else(|| Error::Parse { line: 1, msg: format!("missing column '{n}'") }),
        };
        Ok((find(&self.date)?, find(&self.value)?))
    }
}

/// `year + (day_of_year - 1) / days_in_year`.
pub fn decimal_year(date: NaiveDate) -> f64 {
    let year = date.year();
    let days = if NaiveDate::from_ymd_opt(year, 2, 29).is_some() { 366.0 } else { 365.0 };
    f64::from(year) + f64::from(date.ordinal0()) / days
}

/// Parses an ISO-8601 date or a bare decimal year.
pub fn parse_time(field: &str) -> Option<f64> {
    let field = field.trim();
    if let Ok(d) = NaiveDate::parse_from_str(field, "%Y-%m-%d") {
        return Some(decimal_year(d));
    }
    field.parse::<f64>().ok().filter(|t| t.is_finite())
}

/// Reads a `date,value` CSV. `#` lines are comments; rows may be unsorted.
pub fn read_csv<R: Read>(reader: R, name: &str, schema: &CsvSchema) -> Result<TimeSeries> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);
    let header = rdr
        .headers()
        .map_err(|e| Error::Parse { line: 1, msg: e.to_string() })?
        .clone();
    if header.is_empty() {
        return Err(Error::Empty);
    }
    let (ti, vi) = schema.resolve(&header)?;

    let mut rows: Vec<(f64, f64, u64)> = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line()),
            msg: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        let field = |i: usize| {
            record
                .get(i)
                .ok_or_else(|| Error::Parse { line, msg: format!("missing field {}", i + 1) })
        };
        let t = parse_time(field(ti)?)
            .ok_or_else(|| Error::Parse { line, msg: format!("bad date '{}'", &record[ti]) })?;
        let raw = field(vi)?;
        let v = raw
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::Parse { line, msg: format!("bad value '{raw}'") })?;
        rows.push((t, v, line));
    }
    if rows.is_empty() {
        return Err(Error::Empty);
    }
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    if let Some(w) = rows.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::DuplicateTimestamp { line: w[0].2.max(w[1].2), t: w[1].0 });
    }
    TimeSeries::new(name, rows.into_iter().map(|(t, v, _)| (t, v)).collect())
}

pub fn load_csv(path: impl AsRef<Path>, schema: &CsvSchema) -> Result<TimeSeries> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("series");
    read_csv(std::io::BufReader::new(file), name, schema)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoessConfig {
    pub degree: usize,
    pub span: f64,
}

impl Default for LoessConfig {
    fn default() -> Self {
        Self { degree: 2, span: 1.0 }
    }
}

impl LoessConfig {
    pub fn new(degree: usize, span: f64) -> Result<Self> {
        if !(1..=2).contains(&degree) {
            return Err(Error::InvalidConfig(format!("LOESS degree must be 1 or 2, got {degree}")));
        }
        if !(span > 0.0 && span <= 1.0) {
            return Err(Error::InvalidConfig(format!("LOESS span must be in (0, 1], got {span}")));
        }
        Ok(Self { degree, span })
    }

    /// Number of points in each local neighbourhood for a series of length `n`.
    pub fn neighbourhood(&self, n: usize) -> usize {
        ((self.span * n as f64).ceil() as usize).clamp(1, n)
    }

    fn check(&self, n: usize) -> Result<()> {
        Self::new(self.degree, self.span)?;
        if (self.span * n as f64) < (self.degree + 1) as f64 {
            return Err(Error::InvalidConfig(format!(
                "span {} too small for degree {} on {n} points",
                self.span, self.degree
            )));
        }
        Ok(())
    }
}

/// Tricube kernel on a distance already scaled to `[0, 1]`.
pub fn tricube(u: f64) -> f64 {
    let u = u.abs();
    if u >= 1.0 {
        0.0
    } else {
        let c = 1.0 - u * u * u;
        c * c * c
    }
}

/// Local weights for a fit centred on `x0`: tricube of the distance divided by
/// the distance to the `q`-th nearest point. Points outside the neighbourhood
/// get zero weight.
pub fn loess_weights(t: &[f64], x0: f64, q: usize) -> Vec<f64> {
    let mut dist: Vec<f64> = t.iter().map(|&x| (x - x0).abs()).collect();
    let mut sorted = dist.clone();
    sorted.sort_by(f64::total_cmp);
    let dmax = sorted[q - 1];
    for d in &mut dist {
        *d = if dmax > 0.0 { tricube(*d / dmax) } else if *d == 0.0 { 1.0 } else { 0.0 };
    }
    dist
}

/// LOESS smoothing evaluated at each input timestamp.
pub fn loess_smooth(ts: &TimeSeries, cfg: &LoessConfig) -> Result<TimeSeries> {
    let n = ts.len();
    cfg.check(n)?;
    let q = cfg.neighbourhood(n);
    let ncoef = cfg.degree + 1;

    let mut out = Vec::with_capacity(n);
    for &x0 in ts.times() {
        let w = loess_weights(ts.times(), x0, q);
        let active: Vec<usize> = (0..n).filter(|&i| w[i] > 0.0).collect();
        if active.len() < ncoef {
            return Err(Error::SingularFit);
        }
        let scale = active.iter().map(|&i| (ts.t[i] - x0).abs()).fold(0.0, f64::max);
        let scale = if scale > 0.0 { scale } else { 1.0 };

        // Weighted least squares via QR of sqrt(w)-scaled design, centred at x0.
        let design = DMatrix::from_fn(active.len(), ncoef, |r, c| {
            let i = active[r];
            let u = (ts.t[i] - x0) / scale;
            w[i].sqrt() * u.powi(c as i32)
        });
        let rhs = DVector::from_iterator(active.len(), active.iter().map(|&i| w[i].sqrt() * ts.v[i]));
        let qr = design.qr();
        let r = qr.r();
        let rmax = (0..ncoef).map(|k| r[(k, k)].abs()).fold(0.0, f64::max);
        if (0..ncoef).any(|k| r[(k, k)].abs() <= 1e-12 * rmax) || rmax == 0.0 {
            return Err(Error::SingularFit);
        }
        let qtb = qr.q().transpose() * rhs;
        let coef = r.solve_upper_triangular(&qtb).ok_or(Error::SingularFit)?;
        out.push(coef[0]);
    }
    Ok(TimeSeries::from_columns(ts.name.clone(), ts.t.clone(), out)?.with_units(ts.units.clone()))
}

/// Time derivative of `log v`: centred differences inside, one-sided at the
/// ends. Dividing by the timestep in years gives annualized rates.
pub fn log_growth(ts: &TimeSeries) -> Result<TimeSeries> {
    ts.require_len(2)?;
    if let Some((t, v)) = ts.points().find(|&(_, v)| v <= 0.0) {
        return Err(domain(format!("log growth of non-positive value {v} at t = {t}")));
    }
    let lv: Vec<f64> = ts.v.iter().map(|v| v.ln()).collect();
    let t = &ts.t;
    let n = t.len();
    let g = (0..n)
        .map(|i| {
            let (a, b) = match i {
                0 => (0, 1),
                i if i == n - 1 => (n - 2, n - 1),
                i => (i - 1, i + 1),
            };
            (lv[b] - lv[a]) / (t[b] - t[a])
        })
        .collect();
    TimeSeries::from_columns(format!("{} growth", ts.name), t.clone(), g)
}

/// Samples both series on `grid`, returning `(t, a(t), b(t))`.
pub fn align(a: &TimeSeries, b: &TimeSeries, grid: &[f64]) -> Result<Vec<(f64, f64, f64)>> {
    grid.iter()
        .map(|&t| Ok((t, a.interp_linear(t)?, b.interp_linear(t)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(points: &[(f64, f64)]) -> TimeSeries {
        TimeSeries::new("x", points.to_vec()).unwrap()
    }

    #[test]
    fn parses_iso_dates_to_decimal_years() {
        let csv = "date,value\n2009-01-01,100.0\n2010-01-01,102.0\n";
        let ts = read_csv(csv.as_bytes(), "gdp", &CsvSchema::default()).unwrap();
        assert_eq!(ts.times(), &[2009.0, 2010.0]);
        assert_eq!(ts.values(), &[100.0, 102.0]);
    }

    #[test]
    fn decimal_year_is_leap_aware() {
        let d = |y, m, day| decimal_year(NaiveDate::from_ymd_opt(y, m, day).unwrap());
        assert_eq!(d(2001, 7, 1), 2001.0 + 181.0 / 365.0);
        assert_eq!(d(2000, 7, 1), 2000.0 + 182.0 / 366.0);
        assert_eq!(parse_time("1999.5"), Some(1999.5));
    }

    #[test]
    fn unsorted_rows_are_sorted() {
        let csv = "date,value\n2011.0,3\n2009.0,1\n2010.0,2\n";
        let ts = read_csv(csv.as_bytes(), "x", &CsvSchema::default()).unwrap();
        assert_eq!(ts.values(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn duplicate_dates_are_rejected() {
        let csv = "date,value\n2009-01-01,1\n2010-01-01,2\n2009-01-01,3\n";
        let err = read_csv(csv.as_bytes(), "x", &CsvSchema::default()).unwrap_err();
        assert!(matches!(err, Error::DuplicateTimestamp { line: 4, .. }), "{err:?}");
    }

    #[test]
    fn malformed_row_reports_line() {
        let csv = "# comment\ndate,value\n2009-01-01,1\n2010-01-01,abc\n";
        match read_csv(csv.as_bytes(), "x", &CsvSchema::default()).unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 4),
            e => panic!("unexpected {e:?}"),
        }
        let fred_missing = "date,value\n2009-01-01,.\n";
        assert!(matches!(
            read_csv(fred_missing.as_bytes(), "x", &CsvSchema::default()),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn empty_file_is_an_error() {
        assert!(matches!(read_csv("".as_bytes(), "x", &CsvSchema::default()), Err(Error::Empty)));
        assert!(matches!(
            read_csv("date,value\n".as_bytes(), "x", &CsvSchema::default()),
            Err(Error::Empty)
        ));
    }

    #[test]
    fn positional_schema_reads_fred_headers() {
        let csv = "observation_date,GDP\n2009-01-01,1\n2009-04-01,2\n";
        assert!(read_csv(csv.as_bytes(), "x", &CsvSchema::default()).is_err());
        let ts = read_csv(csv.as_bytes(), "x", &CsvSchema::positional()).unwrap();
        assert_eq!(ts.len(), 2);
    }

    #[test]
    fn interpolation_examples() {
        let ts = series(&[(0.0, 1.0), (1.0, 3.0)]);
        assert_eq!(ts.interp_linear(0.0).unwrap(), 1.0);
        assert_eq!(ts.interp_linear(0.5).unwrap(), 2.0);
        assert_eq!(ts.interp_linear(1.0).unwrap(), 3.0);
        let ts = series(&[(0.0, 1.0), (1.0, 3.0), (2.0, 0.0)]);
        assert_eq!(ts.interp_linear(1.25).unwrap(), 2.25);
        assert!(matches!(ts.interp_linear(2.5), Err(Error::OutOfRange { .. })));
        assert!(matches!(ts.interp_linear(-0.1), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn invalid_series_are_rejected() {
        assert!(TimeSeries::new("x", vec![(1.0, 1.0), (1.0, 2.0)]).is_err());
        assert!(TimeSeries::new("x", vec![(0.0, f64::NAN)]).is_err());
        assert!(matches!(
            series(&[(0.0, 1.0)]).interp_linear(0.0),
            Err(Error::TooShort { need: 2, got: 1 })
        ));
    }

    #[test]
    fn loess_keeps_constants() {
        let ts = series(&(0..9).map(|i| (i as f64, 4.5)).collect::<Vec<_>>());
        for cfg in [LoessConfig { degree: 1, span: 0.6 }, LoessConfig::default()] {
            let s = loess_smooth(&ts, &cfg).unwrap();
            assert_eq!(s.times(), ts.times());
            for v in s.values() {
                assert!((v - 4.5).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn loess_rejects_bad_config() {
        assert!(LoessConfig::new(3, 1.0).is_err());
        assert!(LoessConfig::new(2, 0.0).is_err());
        assert!(LoessConfig::new(2, 1.5).is_err());
        let ts = series(&[(0.0, 1.0), (1.0, 2.0), (2.0, 3.0), (3.0, 5.0)]);
        assert!(matches!(
            loess_smooth(&ts, &LoessConfig { degree: 2, span: 0.5 }),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn loess_with_too_few_weighted_points_is_singular() {
        // three points, middle fit: both neighbours sit at the span distance
        let ts = series(&[(0.0, 1.0), (1.0, 2.0), (2.0, 0.0)]);
        assert!(matches!(loess_smooth(&ts, &LoessConfig::default()), Err(Error::SingularFit)));
    }

    #[test]
    fn log_growth_examples() {
        let ts = series(&[(0.0, 1.0), (1.0, 2.0), (2.0, 4.0)]);
        let g = log_growth(&ts).unwrap();
        assert!((g.values()[1] - 2f64.ln()).abs() < 1e-15);
        let flat = series(&[(0.0, 3.0), (0.25, 3.0), (0.5, 3.0)]);
        assert!(log_growth(&flat).unwrap().values().iter().all(|&g| g == 0.0));
        let bad = series(&[(0.0, 1.0), (1.0, 0.0)]);
        assert!(matches!(log_growth(&bad), Err(Error::Domain(_))));
    }

    #[test]
    fn align_examples() {
        let a = series(&[(0.0, 0.0), (2.0, 2.0)]);
        let b = series(&[(0.0, 4.0), (2.0, 0.0)]);
        assert_eq!(align(&a, &b, &[1.0]).unwrap(), vec![(1.0, 1.0, 2.0)]);
        assert!(align(&a, &b, &[3.0]).is_err());
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let ts = series(&[(2000.1, 1.0 / 3.0), (2001.7, 2.0f64.sqrt())]);
        let mut buf = Vec::new();
        ts.write_csv(&mut buf).unwrap();
        let back = read_csv(buf.as_slice(), "x", &CsvSchema::default()).unwrap();
        assert_eq!(back.times(), ts.times());
        assert_eq!(back.values(), ts.values());
    }
}
