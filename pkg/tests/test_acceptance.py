"""Acceptance criteria 1-8, one test each.

Every test prints a single ``criterion N: PASS|FAIL ...`` line; the lines
are repeated in the terminal summary. Run standalone with
``python tests/test_acceptance.py`` or through pytest.
"""

import math
import os
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES, impulse_image  # noqa: E402
from wavefuse.cli import main as cli_main  # noqa: E402
from wavefuse.core import Image, load_image, save_image  # noqa: E402
from wavefuse.dtcwt import dtcwt2_forward, dtcwt2_inverse, dualtree_filters  # noqa: E402
from wavefuse.dtcwt import shift_invariance_score as dtcwt_score  # noqa: E402
from wavefuse.dwt import circular_shift, dwt2_forward, dwt2_inverse  # noqa: E402
from wavefuse.dwt import shift_invariance_score as dwt_score  # noqa: E402
from wavefuse.filterbank import BANK_NAMES, builtin_bank  # noqa: E402
from wavefuse.fusion import METHODS, Method, fuse_images  # noqa: E402
from wavefuse.lwt import lwt2_forward, lwt2_inverse  # noqa: E402
from wavefuse.metrics import (  # noqa: E402
    UndefinedMetricError,
    entropy,
    iqi,
    mean_sd,
    psnr,
    psnr_from_rmse,
    report,
    rmse,
)
from wavefuse.swt import shift_invariance_score as swt_score  # noqa: E402
from wavefuse.swt import swt2_forward, swt2_inverse  # noqa: E402

SIZES = (16, 24, 32, 48, 64)
SHIFT_SWEEP = ((1, 0), (-1, 0), (0, 1), (0, -1), (2, 2), (-2, 2), (2, -2), (-2, -2))


def verdict(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def rms(a, b):
    return float(np.sqrt(np.mean((np.asarray(a, float) - np.asarray(b, float)) ** 2)))


def phantom_pair(n=64):
    """Registered synthetic pair: a bright ring on one image, soft blobs on the other."""
    y, x = (np.indices((n, n)) - n / 2) / (n / 2)
    r = np.hypot(x, y)
    ct = 20 + 220 * ((r > 0.7) & (r < 0.85)) + 40 * (r < 0.3)
    mri = 30 + 150 * np.exp(-((x - 0.2) ** 2 + y**2) / 0.08) + 80 * np.exp(-((x + 0.3) ** 2 + (y - 0.3) ** 2) / 0.02)
    return np.round(ct).astype(float), np.clip(np.round(mri), 0, 255)


def test_criterion_1_perfect_reconstruction():
    start = time.perf_counter()
    rng = np.random.default_rng(1)
    worst = {"dwt": 0.0, "swt": 0.0, "dtcwt": 0.0, "qshift": 0.0, "ilwt": 0}
    for n in SIZES:
        img = rng.integers(0, 256, (n, n)).astype(float)
        for levels in (1, 2, 3, 4):
            for name in BANK_NAMES:
                bank = builtin_bank(name)
                worst["dwt"] = max(worst["dwt"], rms(dwt2_inverse(dwt2_forward(img, bank, levels)).samples, img))
                worst["swt"] = max(worst["swt"], rms(swt2_inverse(swt2_forward(img, bank, levels)).samples, img))
            for key, variant in (("dtcwt", "original"), ("qshift", "qshift")):
                f = dualtree_filters(variant)
                worst[key] = max(worst[key], rms(dtcwt2_inverse(dtcwt2_forward(img, f, levels), f).samples, img))
            err = np.max(np.abs(lwt2_inverse(lwt2_forward(img, levels=levels)).samples - img))
            worst["ilwt"] = max(worst["ilwt"], err)
    elapsed = time.perf_counter() - start
    ok = (
        worst["dwt"] < 1e-9
        and worst["swt"] < 1e-9
        and worst["dtcwt"] < 1e-8
        and worst["qshift"] < 1e-8
        and worst["ilwt"] == 0
        and elapsed < 30
    )
    detail = ", ".join(f"{k} {v:.2e}" for k, v in worst.items())
    verdict(1, ok, f"worst RMS {detail}; {elapsed:.2f}s")


def test_criterion_2_swt_equivariance():
    rng = np.random.default_rng(2)
    bank = builtin_bank("db4")
    worst = 0.0
    for _ in range(20):
        img = rng.integers(0, 256, (32, 32)).astype(float)
        base = swt2_forward(img, bank, 4)
        for shift in SHIFT_SWEEP:
            moved = swt2_forward(circular_shift(img, shift), bank, 4)
            for (_, _, b0), (_, _, b1) in zip(base.bands(), moved.bands()):
                worst = max(worst, float(np.max(np.abs(b1 - circular_shift(b0, shift)))))
    x = np.zeros((8, 8))
    x[4, 4] = 255.0
    dwt_change = float(np.max(dwt_score(x, bank, (1, 0), levels=1)))
    ok = worst <= 1e-12 and dwt_change > 0.05
    verdict(2, ok, f"SWT max band deviation {worst:.1e} over 20 images x {len(SHIFT_SWEEP)} shifts; "
            f"DWT impulse energy change {dwt_change:.1%}")


def test_criterion_3_dtcwt_between_swt_and_dwt():
    x = impulse_image(64)
    bank = builtin_bank("db4")
    sweep = SHIFT_SWEEP + ((1, 1), (3, 1), (4, 4))
    s = max(float(np.max(swt_score(x, bank, sh))) for sh in sweep)
    q = max(float(np.max(dtcwt_score(x, dualtree_filters("qshift"), sh))) for sh in sweep)
    o = max(float(np.max(dtcwt_score(x, dualtree_filters("original"), sh))) for sh in sweep)
    d = max(float(np.max(dwt_score(x, bank, sh))) for sh in sweep)
    ok = s == 0.0 and s <= q < d and o < d
    verdict(3, ok, f"max relative energy change SWT {s:.1e} <= Q-shift {q:.3f} (original {o:.3f}) < DWT {d:.3f}")


def test_criterion_4_psnr_oracle():
    value = psnr_from_rmse(4.3158)
    verdict(4, abs(value - 35.4296) <= 0.01, f"PSNR(4.3158) = {value:.4f} dB, target 35.4296 +- 0.01")


def test_criterion_5_method_all_report(tmp_path, capsys):
    ct, mri = phantom_pair()
    save_image(Image(ct), tmp_path / "ct.pgm")
    save_image(Image(mri), tmp_path / "mri.pgm")
    code = cli_main(["fuse", "--method", "all", str(tmp_path / "ct.pgm"), str(tmp_path / "mri.pgm"), "-o", str(tmp_path / "out")])
    capsys.readouterr()
    lines = (tmp_path / "out" / "report.csv").read_text().splitlines()
    rows = [ln.split(",") for ln in lines[1:]]
    values = [[float(v) for v in r[1:]] for r in rows]
    finite = all(math.isfinite(v) for r in values for v in r)
    in_range = all(-1 <= r[3] <= 1 and 0 <= r[0] <= 8 for r in values)
    images = all((tmp_path / "out" / f"fused_{m}.pgm").exists() for m in METHODS)
    same = cli_main(["fuse", "--method", "all", str(tmp_path / "ct.pgm"), str(tmp_path / "ct.pgm"), "-o", str(tmp_path / "same")])
    capsys.readouterr()
    same_rows = [ln.split(",") for ln in (tmp_path / "same" / "report.csv").read_text().splitlines()[1:]]
    inf_only_when_identical = all(r[2] == "inf" for r in same_rows if r[0] == "ilwt")
    ok = code == 0 and same == 0 and len(rows) == 5 and [r[0] for r in rows] == list(METHODS)
    ok = ok and finite and in_range and images and inf_only_when_identical
    table = "; ".join(f"{r[0]} EN {r[1]} PSNR {r[2]} IQI {r[4]}" for r in rows)
    verdict(5, ok, f"5 rows, finite, IQI in [-1,1], EN in [0,8]: {table}")


def test_criterion_6_idempotence():
    rng = np.random.default_rng(6)
    worst = {m: 0.0 for m in METHODS}
    exact = True
    for _ in range(10):
        img = Image(rng.integers(0, 256, (32, 32)))
        for m in METHODS:
            out = fuse_images(img, img, Method(m))
            if m == "ilwt":
                exact &= out == img
            else:
                worst[m] = max(worst[m], rms(out.samples, img.samples))
    ok = exact and all(v < 1e-8 for k, v in worst.items() if k != "ilwt")
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items() if k != "ilwt")
    verdict(6, ok, f"ilwt bit-exact={exact}; RMS {detail}")


def test_criterion_7_metric_examples():
    checks = {}
    checks["entropy constant"] = entropy(np.full((4, 4), 9.0)) == 0.0
    checks["entropy [0,0,1,1]"] = entropy(np.array([[0, 0], [1, 1]])) == 1.0
    x = np.arange(16.0).reshape(4, 4)
    checks["rmse identical"] = rmse(x, x) == 0.0
    checks["rmse 0 vs 255"] = rmse(np.zeros((2, 2)), np.full((2, 2), 255.0)) == 255.0
    checks["rmse single 2"] = rmse([[0, 0], [0, 0]], [[2, 0], [0, 0]]) == 1.0
    checks["psnr 4.3158"] = abs(psnr_from_rmse(4.3158) - 35.4296) <= 0.01
    checks["psnr rmse 255"] = psnr_from_rmse(255.0) == 0.0
    checks["psnr identical"] = psnr(x, x) == math.inf
    checks["iqi identical"] = abs(iqi(x, x) - 1.0) < 1e-12
    try:
        iqi(np.full((2, 2), 3.0), np.full((2, 2), 5.0))
        checks["iqi constant"] = False
    except UndefinedMetricError:
        checks["iqi constant"] = True
    # pinned from direct statistics: means 2.5/5, variances 1.25/5, covariance 2.5
    checks["iqi 2x2 pinned 0.64"] = abs(iqi([[1, 2], [3, 4]], [[2, 4], [6, 8]]) - 0.64) < 1e-12
    checks["mean_sd constant"] = mean_sd(np.full((3, 3), 4.0)) == (4.0, 0.0)
    i, j = np.indices((4, 4))
    checks["mean_sd checkerboard"] = mean_sd(255.0 * ((i + j) % 2)) == (127.5, 127.5)
    r = report(x, x, x)
    checks["report identical"] = r.rmse == 0 and r.psnr_db == math.inf and abs(r.iqi - 1) < 1e-12
    y = x[::-1]
    checks["report policies differ"] = report(x, x, y, "vs_source1").rmse != report(x, x, y).rmse
    failed = [k for k, v in checks.items() if not v]
    verdict(7, not failed, f"{len(checks) - len(failed)}/{len(checks)} metric examples" + (f"; failed {failed}" if failed else ""))


def test_criterion_8_property_suites_fast():
    here = Path(__file__).parent
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", str(here), "--ignore", str(Path(__file__))],
        capture_output=True,
        text=True,
        cwd=here.parent,
        env={**os.environ, "PYTHONDONTWRITEBYTECODE": "1"},
    )
    elapsed = time.perf_counter() - start
    summary = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr[-200:]
    verdict(8, proc.returncode == 0 and elapsed < 60, f"property and unit suites: {summary} in {elapsed:.1f}s")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
