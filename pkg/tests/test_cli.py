import numpy as np
import pytest

from cogregion import cli
from cogregion.catalog import catalog_for, instantiate, project_to_totals
from cogregion.channel import SplittingParams, sample_params_batch
from cogregion.errors import SingularSubmatrix
from cogregion.explorer import zero_all_coupling
from cogregion.gaussian import build_covariance, read_covariance_csv
from cogregion.polytope import enumerate_vertices, pareto3d
from cogregion.verify import SuiteResult

V1_NAMES = ("Y1", "Y2", "Y3", "W0", "W1", "U0", "U2", "V0", "V3")


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("model,lines", [("cms2", 10), ("pms2", 10), ("cms1", 36), ("pms1", 36)])
def test_catalog_listing(capsys, model, lines):
    code, out, _ = run(capsys, "catalog", "--model", model)
    assert code == 0
    assert len(out.splitlines()) == lines
    assert out.splitlines()[0].startswith("bound 1: ")


def test_region_outputs_and_determinism(tmp_path, capsys):
    outs = []
    for threads, name in ((1, "a"), (2, "b"), (1, "c")):
        code, stdout, _ = run(capsys, "region", "--draws", 5000, "--seed", 3, "--threads", threads,
                              "--out", tmp_path / name)
        assert code == 0 and "max_r1=" in stdout
        outs.append({f: (tmp_path / name / f).read_bytes()
                     for f in ("pareto.csv", "metrics.txt", "slice_R1_0.csv")})
    assert outs[0] == outs[1] == outs[2]
    pareto = outs[0]["pareto.csv"].decode()
    assert pareto.startswith("R1,R2,R3\n") and "\r" not in pareto
    rows = np.loadtxt(tmp_path / "a" / "pareto.csv", delimiter=",", skiprows=1)
    assert rows.shape[1] == 3
    metrics = dict(line.split("=") for line in outs[0]["metrics.txt"].decode().splitlines())
    assert list(metrics) == ["max_r1", "max_r2", "max_r3", "max_sum", "draws", "draws_vacuous", "seed"]
    assert float(metrics["max_r1"]) == rows[:, 0].max()
    assert metrics["draws"] == "5000" and metrics["seed"] == "3"
    assert outs[0]["slice_R1_0.csv"].startswith(b"R2,R3\n")


def test_trivial_single_draw_counts_vertices(tmp_path, capsys):
    code, _, _ = run(capsys, "region", "--draws", 1, "--seed", 17, "--zero-coupling", "--out", tmp_path)
    assert code == 0
    rows = np.loadtxt(tmp_path / "pareto.csv", delimiter=",", skiprows=1, ndmin=2)
    spec = cli.RunConfig.from_values({}).spec
    raw = zero_all_coupling(sample_params_batch(spec.variant, 17, 0, 1))
    m = build_covariance(spec, SplittingParams.from_array(raw[0]))
    verts = enumerate_vertices(project_to_totals(instantiate(catalog_for("cms2"), m)))
    assert len(rows) == len(pareto3d(verts))


def test_config_file_and_overrides(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# setup\nmodel = pms2\np1 = 20  # dB\nq2=2\ndraws=10\nzero-coupling = yes\n")
    args = cli.build_parser().parse_args(["region", "--config", str(cfg), "--draws", "7", "--a13", "0.1"])
    rc = cli.load_config(args)
    assert rc.model.name == "pms2"
    assert rc.spec.p1 == pytest.approx(100.0) and rc.spec.p2 == pytest.approx(10.0)
    assert rc.spec.q2 == 2.0 and rc.spec.a13 == 0.1 and rc.spec.a12 == 0.55
    assert rc.draws == 7 and rc.zero_coupling


@pytest.mark.parametrize("argv", [
    ["region", "--model", "cms9"],
    ["region", "--bogus"],
    ["region", "--draws", "0"],
    ["region", "--threads", "0"],
    ["region", "--model", "cms1"],
    ["frobnicate"],
    ["region", "--config", "/nonexistent/run.cfg"],
])
def test_usage_errors_exit_1(capsys, tmp_path, argv):
    if argv[0] == "region":
        argv = argv + ["--out", str(tmp_path)]
    try:
        code = cli.main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 1


def test_bad_config_lines(tmp_path, capsys):
    for body in ("model\n", "colour=blue\n", "p1=abc\n", "q1=-1\n", "a31=nan\n"):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text(body)
        code, _, err = run(capsys, "catalog", "--config", cfg)
        assert code == 1 and err.startswith("cogregion:")


def test_numeric_failure_exit_3(monkeypatch, tmp_path, capsys):
    def boom(*a, **k):
        raise SingularSubmatrix("forced")

    monkeypatch.setattr(cli, "explore", boom)
    code, _, err = run(capsys, "region", "--draws", 1, "--out", tmp_path)
    assert code == 3 and "numeric" in err


def test_verify_exit_codes(monkeypatch, capsys):
    import cogregion.verify as verify

    ok = SuiteResult("alpha", True, 0.0, "fine", 0.1)
    bad = SuiteResult("beta", False, 1.0, "theta[5,5] = E(U1U1) off", 0.1)
    monkeypatch.setattr(verify, "run_all", lambda spec, threads=1: [ok])
    code, out, _ = run(capsys, "verify")
    assert code == 0 and out.startswith("PASS alpha")
    monkeypatch.setattr(verify, "run_all", lambda spec, threads=1: [ok, bad])
    code, out, _ = run(capsys, "verify")
    assert code == 2 and "FAIL beta" in out and "theta[5,5]" in out


def test_dump_sigma(tmp_path, capsys):
    code, out, _ = run(capsys, "dump-sigma", "--seed", 4, "--index", 2)
    assert code == 0
    path = tmp_path / "s.csv"
    path.write_text(out)
    sigma, names = read_covariance_csv(path)
    assert names[0] == "Y1" and sigma.shape == (8, 8)
    code, _, _ = run(capsys, "dump-sigma", "--seed", 4, "--index", 2, "--out", tmp_path / "d")
    assert (tmp_path / "d" / "sigma.csv").read_text() == out


def test_variant1_region_from_external_covariance(tmp_path, capsys):
    rng = np.random.default_rng(3)
    g = rng.normal(size=(9, 9)) * 0.3 + np.eye(9) * 2
    sigma = g @ g.T
    path = tmp_path / "cov.csv"
    path.write_text(",".join(V1_NAMES) + "\n" + "\n".join(",".join(repr(float(x)) for x in r) for r in sigma) + "\n")
    code, out, _ = run(capsys, "region", "--model", "cms1", "--cov", path, "--out", tmp_path / "o")
    assert code == 0 and "draws=1" in out
    assert (tmp_path / "o" / "pareto.csv").exists()
    # missing variables in the covariance are a configuration error
    short = tmp_path / "short.csv"
    short.write_text("A,B\n1,0\n0,1\n")
    code, _, _ = run(capsys, "region", "--model", "cms1", "--cov", short, "--out", tmp_path / "o")
    assert code == 1
