#!/usr/bin/env python3
"""Monte Carlo quantiles of the DF-GLS t-statistic under the unit-root null.

Simulates driftless Gaussian random walks, applies GLS demeaning (cbar = -7)
or GLS detrending (cbar = -13.5), runs the zero-lag Dickey-Fuller regression
without deterministic terms and tabulates the t-ratio quantiles. The output
is pasted into src/econometrics/dfgls_table.cpp.
"""
import argparse

import numpy as np

PROBS = [0.001, 0.005, 0.01, 0.025, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.40,
         0.50, 0.60, 0.70, 0.75, 0.80, 0.85, 0.90, 0.95, 0.975, 0.99, 0.995,
         0.999]


def dfgls_stats(rng, reps, n, trend):
    cbar = -13.5 if trend else -7.0
    a = 1.0 + cbar / n
    y = np.cumsum(rng.standard_normal((reps, n)), axis=1)
    ya = np.empty_like(y)
    ya[:, 0] = y[:, 0]
    ya[:, 1:] = y[:, 1:] - a * y[:, :-1]
    t = np.arange(1, n + 1, dtype=float)
    z = np.ones((n, 2 if trend else 1))
    if trend:
        z[:, 1] = t
    za = np.empty_like(z)
    za[0] = z[0]
    za[1:] = z[1:] - a * z[:-1]
    coef = np.linalg.solve(za.T @ za, za.T @ ya.T)  # k x reps
    yd = y - (z @ coef).T
    dy = np.diff(yd, axis=1)
    lag = yd[:, :-1]
    rho = np.sum(lag * dy, axis=1) / np.sum(lag * lag, axis=1)
    resid = dy - rho[:, None] * lag
    s2 = np.sum(resid * resid, axis=1) / (n - 2)
    return rho / np.sqrt(s2 / np.sum(lag * lag, axis=1))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--reps", type=int, default=200_000)
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=20130102)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    for trend in (False, True):
        chunks = [dfgls_stats(rng, 4000, args.n, trend)
                  for _ in range(args.reps // 4000)]
        stats = np.concatenate(chunks)
        q = np.quantile(stats, PROBS)
        name = "trend" if trend else "constant"
        print(f"// {name}")
        for p, v in zip(PROBS, q):
            print(f"    {{{p:.3f}, {v:.4f}}},")


if __name__ == "__main__":
    main()
