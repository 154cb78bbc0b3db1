import json
import math

import pytest

from cevian import io as cio
from cevian.cli import build_parser, run
from cevian.density import DensityCertificate, verify


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_selfsim(capsys):
    code, out, _ = call(capsys, "selfsim")
    assert code == 0
    classes = json.loads(out)["classes"]
    assert len(classes) == 2
    got = {tuple(round(d) for d in c["degrees"]): c["self_similar_indices"] for c in classes}
    assert got == {(36, 72, 72): [3, 4], (40, 60, 80): [5]}


def test_density_example(capsys):
    code, out, _ = call(
        capsys,
        "density",
        "--start", "1.0472,1.0472,1.0472",
        "--target", "0.7854,0.7854,1.5708",
        "--epsilon", "0.01",
    )
    assert code == 0
    d = json.loads(out)
    assert d["verified"] is True
    assert verify(DensityCertificate.from_dict(d))
    assert d["config"]["epsilon"] == 0.01


def test_density_degrees_no_early_exit(capsys):
    code, out, _ = call(
        capsys, "density", "--degrees", "--start", "60,60,60", "--target", "45,45,90",
        "--epsilon", "1e-3", "--no-early-exit",
    )
    assert code == 0
    d = json.loads(out)
    assert len(d["word"]) == d["k_bound"]


def test_cdf_example(capsys, tmp_path):
    path = tmp_path / "cdf.csv"
    code, _, _ = call(capsys, "cdf", "--n", "3", "--grid", "512", "--out", str(path))
    assert code == 0
    meta, b = cio.read_cdf_csv(path.read_text())
    assert len(b.thetas) == 512 and meta["n"] == "3"
    k = max(i for i, t in enumerate(b.thetas) if t <= 0.39)
    assert b.upper[k] <= 215 / 216


def test_subdivide(capsys):
    code, out, _ = call(capsys, "subdivide", "--strategy", "gergonne", "--start", "50,60,70", "--degrees")
    assert code == 0
    _, kids = cio.read_triples_csv(out)
    assert kids.shape == (6, 3)
    code, out, _ = call(capsys, "subdivide", "--format", "json")
    assert len(json.loads(out)["daughters"]) == 6


def test_enumerate_and_budget(capsys):
    code, out, _ = call(capsys, "enumerate", "--n", "3", "--strategy", "lemoine")
    assert code == 0
    _, pts = cio.read_triples_csv(out)
    assert pts.shape == (216, 3)
    code, out, err = call(capsys, "enumerate", "--n", "12")
    assert code == 1
    assert err.startswith("error: BudgetExceeded") and err.count("\n") == 1


def test_sample_requires_seed(capsys):
    code, _, err = call(capsys, "sample", "--n", "3", "--m", "4")
    assert code == 2
    assert err.startswith("error: UsageError") and err.count("\n") == 1


def test_hist_requires_seed_with_m(capsys):
    code, _, err = call(capsys, "hist", "--n", "3", "--bins", "4", "--m", "10")
    assert code == 2


def test_bad_triple_is_one_line_error(capsys):
    code, _, err = call(capsys, "subdivide", "--start", "1,1,1")
    assert code == 1
    assert err.startswith("error: SumViolation") and err.count("\n") == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["sample", "--n", "5", "--m", "100", "--seed", "7", "--strategy", "centroid"],
        ["hist", "--n", "6", "--bins", "10", "--m", "2000", "--seed", "7"],
        ["hist", "--n", "4", "--bins", "10", "--format", "pgm"],
        ["flatness", "--n", "2,4", "--m", "500", "--delta", "0.35", "--seed", "7", "--strategy", "centroid"],
        ["cdf", "--n", "2", "--grid", "16"],
        ["selfsim"],
    ],
)
def test_byte_identical_reruns(tmp_path, argv):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(argv + ["--out", str(a)]) == 0
    assert run(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_outputs_reparse(tmp_path):
    p = tmp_path / "h.csv"
    run(["hist", "--n", "5", "--bins", "6", "--out", str(p)])
    meta, grid = cio.read_histogram_csv(p.read_text())
    assert grid.total == 6**5
    assert meta["command"] == "hist" and meta["strategy"] == "incenter"
    p = tmp_path / "h.pgm"
    run(["hist", "--n", "5", "--bins", "6", "--m", "100", "--seed", "1", "--format", "pgm", "--out", str(p)])
    meta, img, _ = cio.read_pgm(p.read_text())
    assert meta["seed"] == "1" and meta["generator"] == "numpy.random.PCG64"
    p = tmp_path / "s.csv"
    run(["sample", "--n", "5", "--m", "30", "--seed", "2", "--out", str(p)])
    meta, pts = cio.read_triples_csv(p.read_text())
    assert pts.shape == (30, 3)
    assert abs(pts.sum(axis=1) - math.pi).max() < 1e-12
    for key in ("strategy", "start", "n", "m", "seed", "generator"):
        assert key in meta


def test_flatness_output(capsys):
    code, out, _ = call(
        capsys, "flatness", "--strategy", "centroid", "--n", "5,10", "--m", "2000",
        "--delta", "0.35", "--seed", "1",
    )
    assert code == 0
    rows = [line for line in out.splitlines() if not line.startswith("#")]
    assert rows[0] == "n,fraction" and len(rows) == 3


def test_help_lists_commands():
    text = build_parser().format_help()
    for cmd in ("subdivide", "density", "enumerate", "sample", "hist", "cdf", "selfsim", "flatness"):
        assert cmd in text
