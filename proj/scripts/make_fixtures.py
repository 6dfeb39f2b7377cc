#!/usr/bin/env python3
"""Generate committed test fixtures and reference values.

Series data are seeded numpy draws; reference statistics are computed with
statsmodels/scipy so the C++ test suite can compare against an independent
implementation. Everything is deterministic: rerunning the script rewrites
identical files.

Outputs:
  tests/fixtures/fixture_*.json      seeded series + reference statistics
  tests/fixtures/distributions.json  F / normal / t reference probabilities
  tests/fixtures/weekly_agg.json     weekly series + day-weighted monthly values
  tests/fixtures/pipeline/           four synthetic countries (CSV + config)
  tests/fixtures/pipeline_oracle.json  end-to-end reference numbers per country
"""

import json
import pathlib
import warnings
from datetime import date, timedelta

import numpy as np
import statsmodels.api as sm
from scipy import stats
from statsmodels.tsa.api import VAR
from statsmodels.tsa.stattools import adfuller, kpss

ROOT = pathlib.Path(__file__).resolve().parent.parent
FIXDIR = ROOT / "tests" / "fixtures"
PIPEDIR = FIXDIR / "pipeline"


def auto_bandwidth(n: int) -> int:
    return int(4.0 * (n / 100.0) ** (2.0 / 9.0))


def adf_stat(y, lags, regression):
    return float(adfuller(np.asarray(y), maxlag=lags, regression=regression, autolag=None)[0])


def kpss_stat(y, regression, bw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return float(kpss(np.asarray(y), regression=regression, nlags=bw)[0])


def stationarity_oracle(y, lags=3):
    y = np.asarray(y)
    n = len(y)
    bw = auto_bandwidth(n)
    return {
        "n": n,
        "adf_lags": lags,
        "kpss_bandwidth": bw,
        "adf_c": adf_stat(y, lags, "c"),
        "adf_ct": adf_stat(y, lags, "ct"),
        "kpss_c": kpss_stat(y, "c", bw),
        "kpss_ct": kpss_stat(y, "ct", bw),
    }


def var_design(data, p):
    """Rows t = p..n-1; columns: const, then lag 1 block, lag 2 block, ..."""
    n, k = data.shape
    cols = [np.ones(n - p)]
    owner = [-1]
    for lag in range(1, p + 1):
        for v in range(k):
            cols.append(data[p - lag : n - lag, v])
            owner.append(v)
    return np.column_stack(cols), np.asarray(owner)


def granger_oracle(data, p, cause, effect):
    X, owner = var_design(data, p)
    y = data[p:, effect]
    keep = [i for i in range(X.shape[1]) if owner[i] != cause]
    fu = sm.OLS(y, X).fit()
    fr = sm.OLS(y, X[:, keep]).fit()
    fstat, pval, q = fu.compare_f_test(fr)
    return {"f_stat": float(fstat), "p_value": float(pval), "q": int(q),
            "df2": int(fu.df_resid)}


def var_oracle(data, p):
    res = VAR(np.asarray(data)).fit(p, trend="c")
    return {
        "p": p,
        "intercepts": [float(v) for v in res.params[0, :]],
        "coefs": res.coefs.tolist(),  # coefs[lag-1][equation][variable]
        "granger_0_to_1": granger_oracle(data, p, cause=0, effect=1),
        "granger_1_to_0": granger_oracle(data, p, cause=1, effect=0),
    }


def nowcast_oracle(dur, dgi, pub_lag=3, max_lag=12):
    dur = np.asarray(dur)
    dgi = np.asarray(dgi)
    n = len(dur)
    t0 = max_lag
    y = dur[t0:]
    cols = [np.ones(n - t0)]
    for i in range(pub_lag, max_lag + 1):
        cols.append(dur[t0 - i : n - i])
    k_own = len(cols)
    for j in range(0, max_lag + 1):
        cols.append(dgi[t0 - j : n - j])
    X = np.column_stack(cols)
    fu = sm.OLS(y, X).fit()
    fr = sm.OLS(y, X[:, :k_own]).fit()
    fstat, pval, q = fu.compare_f_test(fr)
    return {
        "publication_lag": pub_lag,
        "max_lag": max_lag,
        "n_eff": int(n - t0),
        "q": int(q),
        "f_stat": float(fstat),
        "p_value": float(pval),
        "adj_r2_with": float(fu.rsquared_adj),
        "adj_r2_without": float(fr.rsquared_adj),
    }


def elasticity_oracle(dur, dgi, bw=None):
    dur = np.asarray(dur)
    dgi = np.asarray(dgi)
    if bw is None:
        bw = auto_bandwidth(len(dur))
    X = sm.add_constant(dgi)
    fit = sm.OLS(dur, X).fit(cov_type="HAC",
                             cov_kwds={"maxlags": bw, "use_correction": False})
    plain = sm.OLS(dur, X).fit()
    return {
        "n": int(len(dur)),
        "hac_bandwidth": int(bw),
        "intercept": float(fit.params[0]),
        "slope": float(fit.params[1]),
        "se_hac": float(fit.bse[1]),
        "se_ols": float(plain.bse[1]),
    }


def dump(path, obj):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1, sort_keys=True)
        fh.write("\n")
    print(f"wrote {path.relative_to(ROOT)}")


# ---------------------------------------------------------------------------
# univariate / bivariate seeded fixtures with reference statistics
# ---------------------------------------------------------------------------

def make_unit_fixtures():
    # 1. white noise
    rng = np.random.default_rng(11)
    wn = rng.standard_normal(200)
    dump(FIXDIR / "fixture_white_noise.json",
         {"name": "white_noise", "seed": 11, "y": wn.tolist(),
          "oracle": stationarity_oracle(wn)})

    # 2. driftless random walk (seed picked so the draw shows the canonical
    #    pattern: ADF fails to reject, KPSS rejects at 1%, for both specs)
    rng = np.random.default_rng(23)
    rw = np.cumsum(rng.standard_normal(200))
    dump(FIXDIR / "fixture_random_walk.json",
         {"name": "random_walk", "seed": 23, "y": rw.tolist(),
          "oracle": stationarity_oracle(rw)})

    # 3. stationary AR(1), rho = 0.5
    rng = np.random.default_rng(33)
    e = rng.standard_normal(200)
    ar = np.empty(200)
    ar[0] = e[0]
    for t in range(1, 200):
        ar[t] = 0.5 * ar[t - 1] + e[t]
    dump(FIXDIR / "fixture_ar1.json",
         {"name": "ar1", "seed": 33, "y": ar.tolist(),
          "oracle": stationarity_oracle(ar)})

    # 4. coupled bivariate VAR(1) DGP, fitted with p = 3
    rng = np.random.default_rng(44)
    n = 200
    A = np.array([[0.5, 0.3], [0.0, 0.4]])
    eps = rng.standard_normal((n, 2))
    z = np.zeros((n, 2))
    for t in range(1, n):
        z[t] = A @ z[t - 1] + eps[t]
    dump(FIXDIR / "fixture_var_coupled.json",
         {"name": "var_coupled", "seed": 44,
          "y0": z[:, 0].tolist(), "y1": z[:, 1].tolist(),
          "oracle": var_oracle(z, 3)})

    # 5. decoupled pair (independent AR(1) processes), fitted with p = 2
    rng = np.random.default_rng(55)
    n = 150
    e = rng.standard_normal((n, 2))
    z = np.zeros((n, 2))
    for t in range(1, n):
        z[t, 0] = 0.5 * z[t - 1, 0] + e[t, 0]
        z[t, 1] = 0.4 * z[t - 1, 1] + e[t, 1]
    dump(FIXDIR / "fixture_var_decoupled.json",
         {"name": "var_decoupled", "seed": 55,
          "y0": z[:, 0].tolist(), "y1": z[:, 1].tolist(),
          "oracle": var_oracle(z, 2)})

    # 6. nowcasting pair: dur depends on dgi at lags 0 and 1
    rng = np.random.default_rng(66)
    n = 132
    dgi = np.empty(n)
    eg = rng.standard_normal(n) * 0.08
    dgi[0] = eg[0]
    for t in range(1, n):
        dgi[t] = 0.2 * dgi[t - 1] + eg[t]
    dur = np.empty(n)
    eu = rng.standard_normal(n) * 0.08
    dur[0] = eu[0]
    for t in range(1, n):
        dur[t] = 0.3 * dur[t - 1] + 0.6 * dgi[t] + 0.5 * dgi[t - 1] + eu[t]
    data = np.column_stack([dur, dgi])
    dump(FIXDIR / "fixture_nowcast.json",
         {"name": "nowcast", "seed": 66,
          "dur": dur.tolist(), "dgi": dgi.tolist(),
          "oracle": {
              "nowcast": nowcast_oracle(dur, dgi),
              "var12": var_oracle(data, 12),
              "elasticity": elasticity_oracle(dur, dgi),
          }})


# ---------------------------------------------------------------------------
# distribution reference values
# ---------------------------------------------------------------------------

def make_distribution_fixture():
    f_cases = []
    for f, d1, d2 in [(3.5, 1, 7), (2.37, 12, 83), (1.0, 13, 107), (0.5, 2, 30),
                      (5.0, 3, 12), (10.0, 1, 1), (2.0, 24, 50), (0.01, 6, 100),
                      (0.2534, 13, 94), (7.7, 12, 95)]:
        f_cases.append({"f": f, "d1": d1, "d2": d2,
                        "sf": float(stats.f.sf(f, d1, d2))})
    n_cases = [{"x": float(x), "cdf": float(stats.norm.cdf(x))}
               for x in (-4, -3, -2, -1, -0.5, 0, 0.3, 1, 2, 2.3, 4)]
    t_cases = [{"t": float(t), "df": int(df),
                "two_sided": float(2 * stats.t.sf(abs(t), df))}
               for t, df in [(2.0, 10), (-1.5, 117), (3.2, 95), (0.7, 5)]]
    dump(FIXDIR / "distributions.json",
         {"f_sf": f_cases, "norm_cdf": n_cases, "t_two_sided": t_cases})


# ---------------------------------------------------------------------------
# weekly -> monthly aggregation fixture (day-expansion oracle)
# ---------------------------------------------------------------------------

def aggregate_daily(week_starts, values):
    """Independent route: expand each week to its 7 days, average per month."""
    daily = {}
    for start, v in zip(week_starts, values):
        for i in range(7):
            daily[start + timedelta(days=i)] = v
    first, last = min(daily), max(daily)
    months = {}
    m = date(first.year, first.month, 1)
    while m <= last:
        nxt = date(m.year + (m.month == 12), m.month % 12 + 1, 1)
        ndays = (nxt - m).days
        vals = [daily.get(m + timedelta(days=i)) for i in range(ndays)]
        if all(v is not None for v in vals):
            months[m.strftime("%Y-%m")] = float(np.mean(vals))
        m = nxt
    return months


def make_weekly_fixture():
    rng = np.random.default_rng(77)
    start = date(2004, 1, 4)  # a Sunday
    n_weeks = 52
    week_starts = [start + timedelta(days=7 * i) for i in range(n_weeks)]
    values = [float(round(v, 4)) for v in rng.uniform(5.0, 95.0, n_weeks)]
    months = aggregate_daily(week_starts, values)
    dump(FIXDIR / "weekly_agg.json",
         {"start": start.isoformat(), "values": values,
          "monthly": months, "april_2004": months["2004-04"]})


# ---------------------------------------------------------------------------
# pipeline fixtures: four synthetic countries
# ---------------------------------------------------------------------------

COUNTRIES = {
    # code: (seed, contemporaneous coupling, lag-1 coupling)
    "AA": (101, 1.0, 1.8),
    "BB": (202, 0.8, 1.2),
    "CC": (303, 0.6, 0.9),
    "DD": (404, 0.0, 0.0),
}

SAMPLE_MONTHS = [(y, m) for y in range(2004, 2014) for m in range(1, 13)]


def gen_country(code, seed, c0, c1):
    rng = np.random.default_rng(seed)
    wk_start = date(2003, 12, 28)  # covers 2004-01-01
    wk_end = date(2013, 12, 29)    # covers 2013-12-31
    n_weeks = (wk_end - wk_start).days // 7 + 1
    week_starts = [wk_start + timedelta(days=7 * i) for i in range(n_weeks)]

    # weekly search intensity: AR(1) around log 50 with an annual cycle
    lg = np.empty(n_weeks)
    lg[0] = np.log(50.0)
    eps = rng.standard_normal(n_weeks) * 0.05
    for t in range(1, n_weeks):
        seasonal = 0.12 * np.sin(2 * np.pi * (t % 52) / 52.0)
        lg[t] = np.log(50.0) + 0.85 * (lg[t - 1] - np.log(50.0)) + seasonal * 0.15 + eps[t]
    gi_weekly = [float(round(v, 4)) for v in np.exp(lg)]
    assert all(0.0 < v <= 100.0 for v in gi_weekly), (code, min(gi_weekly), max(gi_weekly))

    monthly = aggregate_daily(week_starts, gi_weekly)
    keys = [f"{y:04d}-{m:02d}" for y, m in SAMPLE_MONTHS]
    assert keys[0] in monthly and keys[-1] in monthly
    gi_monthly = np.array([monthly[k] for k in keys])
    dlgi = np.diff(np.log(gi_monthly))  # 119 values, Feb 2004 onward

    # monthly unemployment: d(ur) driven by its own lag and by dlgi
    n = len(keys)
    dur = np.empty(n - 1)
    eta = rng.standard_normal(n - 1) * 0.05
    for t in range(n - 1):
        own = 0.3 * dur[t - 1] if t > 0 else 0.0
        lagged = c1 * dlgi[t - 1] if t > 0 else 0.0
        dur[t] = own + c0 * dlgi[t] + lagged + eta[t]
    ur = np.empty(n)
    ur[0] = 9.0
    for t in range(1, n):
        ur[t] = ur[t - 1] + dur[t - 1]
    ur = np.round(ur, 6)
    assert ur.min() > 0.5 and ur.max() < 99.0, (code, ur.min(), ur.max())

    return week_starts, gi_weekly, keys, ur


def make_pipeline_fixtures():
    PIPEDIR.mkdir(parents=True, exist_ok=True)
    oracle = {}
    for code, (seed, c0, c1) in COUNTRIES.items():
        week_starts, gi_weekly, keys, ur = gen_country(code, seed, c0, c1)

        with open(PIPEDIR / f"{code}_unemployment.csv", "w") as fh:
            fh.write("month,rate\n")
            for k, v in zip(keys, ur):
                fh.write(f"{k},{v:.6f}\n")
        with open(PIPEDIR / f"{code}_trends.csv", "w") as fh:
            fh.write("week_start,value\n")
            for d, v in zip(week_starts, gi_weekly):
                fh.write(f"{d.isoformat()},{v:.4f}\n")

        # re-read exactly what was written so the oracle sees the same bits
        ur = np.array([float(f"{v:.6f}") for v in ur])
        gi_weekly = [float(f"{v:.4f}") for v in gi_weekly]

        monthly = aggregate_daily(week_starts, gi_weekly)
        gi = np.array([monthly[k] for k in keys])
        dur = np.diff(ur)
        dlgi = np.diff(np.log(gi))

        entry = {
            "seed": seed, "coupling": [c0, c1],
            "gi_monthly_first": gi[0], "gi_monthly_last": gi[-1],
            "stationarity": {
                "ur_level": stationarity_oracle(ur),
                "ur_diff": stationarity_oracle(dur),
                "gi_level": stationarity_oracle(gi),
                "gi_log": stationarity_oracle(np.log(gi)),
                "gi_diff": stationarity_oracle(np.diff(gi)),
                "gi_logdiff": stationarity_oracle(dlgi),
            },
            "elasticity": elasticity_oracle(dur, dlgi),
            "nowcast": nowcast_oracle(dur, dlgi),
            "var12": var_oracle(np.column_stack([dur, dlgi]), 12),
        }
        oracle[code] = entry
        print(f"  {code}: elasticity={entry['elasticity']['slope']:+.4f} "
              f"nowcast_p={entry['nowcast']['p_value']:.4f} "
              f"granger_gi->ur_p={entry['var12']['granger_1_to_0']['p_value']:.4f} "
              f"granger_ur->gi_p={entry['var12']['granger_0_to_1']['p_value']:.4f} "
              f"ur_range=[{ur.min():.2f},{ur.max():.2f}]")

    dump(FIXDIR / "pipeline_oracle.json", oracle)

    conf = [
        "# synthetic four-country test configuration",
        "sample_start = 2004-01",
        "sample_end = 2013-12",
        "train_end = 2012-12",
        "forecast_start = 2013-01",
        "forecast_end = 2013-12",
        "adf_lags = 3",
        "var_p = 12",
        "publication_lag = 3",
        "nowcast_max_lag = 12",
        "",
    ]
    for code in COUNTRIES:
        conf += [f"[{code}]",
                 f"unemployment_csv = {code}_unemployment.csv",
                 f"trends_csv = {code}_trends.csv",
                 f"search_terms = synthetic-{code.lower()}",
                 ""]
    (PIPEDIR / "pipeline.conf").write_text("\n".join(conf))
    print(f"wrote {(PIPEDIR / 'pipeline.conf').relative_to(ROOT)}")


if __name__ == "__main__":
    make_unit_fixtures()
    make_distribution_fixture()
    make_weekly_fixture()
    make_pipeline_fixtures()
