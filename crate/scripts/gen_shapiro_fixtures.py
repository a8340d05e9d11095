"""Regenerate crates/core/tests/fixtures/shapiro_wilk.json from scipy.stats.shapiro."""
import json
import pathlib

import numpy as np
from scipy import stats

OUT = pathlib.Path(__file__).resolve().parent.parent / "crates/core/tests/fixtures/shapiro_wilk.json"


def main():
    rng = np.random.default_rng(20211)
    cases = []
    kinds = ["normal", "exponential", "uniform"]
    sizes = np.linspace(10, 100, 20).round().astype(int)
    for i, n in enumerate(sizes):
        kind = kinds[i % 3]
        if kind == "normal":
            x = rng.normal(50.0, 10.0, n)
        elif kind == "exponential":
            x = rng.exponential(2.0, n)
        else:
            x = rng.uniform(-1.0, 1.0, n)
        x = [float(round(v, 6)) for v in x]
        w, p = stats.shapiro(x)
        cases.append({"name": f"{kind}_{n}", "values": x, "w": float(w), "p": float(p)})
    x = [1.0, 1.0, 1.0, 2.0]
    w, p = stats.shapiro(x)
    extra = {"name": "near_degenerate", "values": x, "w": float(w), "p": float(p)}
    OUT.write_text(json.dumps({"reference": f"scipy {__import__('scipy').__version__} stats.shapiro",
                               "cases": cases, "near_degenerate": extra}, indent=1) + "\n")


if __name__ == "__main__":
    main()
