"""Regenerate the bundled approximate US macro snapshots.

The values below are rounded annual levels typed in by hand; they track the
published FRED series to within a few percent but are NOT an official vintage.
Quarterly rows are produced by log-linear interpolation between the anchors,
so intra-year movements (and most recessions) are smoothed out.
"""
import math
from pathlib import Path

OUT = Path(__file__).resolve().parent

ANCHORS = {
    # FRED GDP, nominal, G$ (SAAR)
    "gdp_us": ("G$", [
        (1947, 249.0), (1950, 300.0), (1953, 389.0), (1954, 391.0), (1955, 426.0),
        (1958, 467.0), (1960, 543.0), (1965, 743.0), (1970, 1073.0), (1974, 1549.0),
        (1975, 1688.0), (1980, 2857.0), (1982, 3343.0), (1985, 4339.0), (1990, 5963.0),
        (1991, 6158.0), (1995, 7640.0), (2000, 10252.0), (2001, 10582.0), (2005, 13037.0),
        (2007, 14452.0), (2008, 14713.0), (2009, 14449.0), (2010, 14992.0), (2011, 15543.0),
        (2012, 16197.0), (2013, 16785.0), (2014, 17527.0), (2015, 18238.0)]),
    # FRED MBCURRCIR, currency component of the base, G$
    "mbcurrcir_us": ("G$", [
        (1960, 32.0), (1965, 39.7), (1970, 57.1), (1975, 86.7), (1980, 131.0),
        (1985, 187.0), (1990, 270.0), (1995, 403.0), (2000, 585.0), (2005, 760.0),
        (2008, 850.0), (2010, 975.0), (2012, 1135.0), (2014, 1340.0), (2015, 1420.0)]),
    # FRED AMBSL, adjusted monetary base, G$
    "ambsl_us": ("G$", [
        (1960, 50.0), (1965, 58.0), (1970, 80.0), (1975, 108.0), (1980, 160.0),
        (1985, 225.0), (1990, 315.0), (1995, 435.0), (2000, 600.0), (2005, 790.0),
        (2007, 850.0), (2008, 1100.0), (2009, 1900.0), (2010, 2000.0), (2011, 2600.0),
        (2012, 2650.0), (2013, 3700.0), (2014, 4000.0), (2015, 3900.0)]),
    # FRED PCEPILFE, core PCE price index, 2009 = 100
    "pcepilfe_us": ("index 2009=100", [
        (1960, 18.5), (1965, 20.0), (1970, 24.5), (1975, 33.0), (1980, 45.0),
        (1985, 57.5), (1990, 67.0), (1995, 76.0), (2000, 83.0), (2005, 93.0),
        (2009, 100.0), (2010, 101.3), (2012, 105.0), (2014, 108.0), (2015, 109.5)]),
    # FRED GS10, 10-year constant maturity, percent
    "gs10_us": ("percent", [
        (1960, 4.1), (1965, 4.3), (1970, 7.4), (1975, 8.0), (1980, 11.4),
        (1981, 13.9), (1985, 10.6), (1990, 8.55), (1995, 6.6), (2000, 6.0),
        (2005, 4.3), (2008, 3.7), (2010, 3.2), (2012, 1.8), (2014, 2.5), (2015, 2.1)]),
    # FRED TB3MS, 3-month bill, percent
    "tb3ms_us": ("percent", [
        (1960, 2.9), (1965, 3.9), (1970, 6.4), (1975, 5.8), (1980, 11.4),
        (1981, 14.0), (1985, 7.5), (1990, 7.5), (1995, 5.5), (2000, 5.8),
        (2003, 1.0), (2005, 3.2), (2007, 4.4), (2008, 1.4), (2009, 0.15),
        (2010, 0.14), (2012, 0.09), (2014, 0.03), (2015, 0.05)]),
    # FRED CPILFESL, core CPI, 1982-84 = 100
    "cpilfesl_us": ("index 1982-84=100", [
        (1960, 30.6), (1965, 32.7), (1970, 40.8), (1975, 53.9), (1980, 80.8),
        (1985, 111.7), (1990, 135.5), (1995, 161.2), (2000, 178.6), (2005, 200.0),
        (2010, 220.0), (2015, 242.0)]),
    # Nonfarm business hours worked, index 2009 = 100
    "hours_us": ("index 2009=100", [
        (1960, 66.0), (1965, 71.0), (1970, 75.0), (1975, 76.0), (1980, 85.0),
        (1985, 91.0), (1990, 99.0), (1995, 106.0), (2000, 116.0), (2005, 113.0),
        (2007, 116.0), (2009, 100.0), (2010, 101.0), (2012, 105.0), (2015, 112.0)]),
}

# FRED RKNANPUSA666NRUG, real capital stock, millions of 2011 US$ (annual)
CAPITAL = ("M$ 2011", [
    (1960, 1.70e7), (1970, 2.30e7), (1980, 3.05e7), (1990, 3.85e7),
    (2000, 4.95e7), (2010, 6.10e7), (2014, 6.50e7)])


def interp(anchors, t):
    for (t0, v0), (t1, v1) in zip(anchors, anchors[1:]):
        if t0 <= t <= t1:
            w = (t - t0) / (t1 - t0)
            return math.exp((1 - w) * math.log(v0) + w * math.log(v1))
    raise ValueError(t)


def write(name, units, rows):
    path = OUT / f"{name}.csv"
    with path.open("w") as fh:
        fh.write(f"# {name}: approximate snapshot, units {units}\n")
        fh.write(f"# rows: {len(rows)}\n")
        fh.write("date,value\n")
        for date, value in rows:
            fh.write(f"{date},{value:.4f}\n")


def quarterly(anchors):
    first, last = anchors[0][0], anchors[-1][0]
    rows = []
    for year in range(first, last + 1):
        for q, month in enumerate((1, 4, 7, 10)):
            t = year + q * 0.25
            if t > last:
                break
            rows.append((f"{year}-{month:02d}-01", interp(anchors, t)))
    return rows


for name, (units, anchors) in ANCHORS.items():
    write(name, units, quarterly(anchors))

units, anchors = CAPITAL
write("rknanpusa_us", units,
      [(f"{y}-01-01", interp(anchors, y)) for y in range(anchors[0][0], anchors[-1][0] + 1)])
