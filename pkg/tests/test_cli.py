"""Command-line interface tests: exit codes, report schema, file
outputs, and seeded determinism."""

import json

import pytest

from opstar.cli import main
from opstar.staralg import cyclic_group_algebra, diagonal_algebra


def run(args, tmp_path, sub="out"):
    out = tmp_path / sub
    code = main(list(args) + ["--out", str(out)])
    return code, out


def load_report(out, name):
    with open(out / f"{name}.json") as fh:
        return json.load(fh)


def test_certify_s_cli(tmp_path):
    code, out = run(
        ["dn", "certify", "--space", "s", "--q", "1", "--r", "2", "--dims", "64,256,1024",
         "--max-constant", "1.0000000001"],
        tmp_path,
    )
    assert code == 0
    rep = load_report(out, "dn-certify")
    assert rep["schema"] == "opstar-report/1"
    assert rep["passed"] is True
    assert rep["data"]["certificate"]["verdict"] == "certified-bounded"
    csv = (out / "dn-certify__certificate.csv").read_text().splitlines()
    assert csv[0] == "dim,q,r,C,excluded_count"
    assert len(csv) == 4
    assert (out / "dn-certify__certificate.png").exists()


def test_gallery_ainf_cli_monotone_table(tmp_path):
    code, out = run(["gallery", "ainf", "--n-max", "40", "--p", "3", "--seed", "7"], tmp_path)
    assert code == 0
    rep = load_report(out, "gallery-ainf")
    rows = rep["data"]["counterexample"]["rows"]
    ratios = [r["ratio"] for r in rows]
    assert all(b > a for a, b in zip(ratios[4:], ratios[5:]))
    names = {c["name"] for c in rep["checks"]}
    assert "fitted-exponent~1" in names and rep["passed"]


def test_algebra_check_good_and_bad_spec(tmp_path):
    good = tmp_path / "z4.json"
    good.write_text(json.dumps(cyclic_group_algebra(4).to_json()))
    code, out = run(["algebra", "check", str(good)], tmp_path)
    assert code == 0
    rep = load_report(out, "algebra-check")
    assert rep["data"]["alpha_defect"] <= 1e-10

    bad = tmp_path / "bad.json"
    record = cyclic_group_algebra(3).to_json()
    record["structure"][0][1][2] = [0.5, 0.0]
    bad.write_text(json.dumps(record))
    code, _ = run(["algebra", "check", str(bad)], tmp_path, sub="out2")
    assert code == 1


def test_algebra_check_missing_file_exit_1(tmp_path):
    code, _ = run(["algebra", "check", str(tmp_path / "nope.json")], tmp_path)
    assert code == 1


def test_check_failure_exit_2(tmp_path):
    code, out = run(
        ["dn", "certify", "--space", "s", "--q", "1", "--r", "2", "--dims", "16,32",
         "--max-constant", "0.5"],
        tmp_path,
    )
    assert code == 2
    rep = load_report(out, "dn-certify")
    assert rep["passed"] is False


def test_embed_run_emits_matrices(tmp_path):
    spec = tmp_path / "diag.json"
    spec.write_text(json.dumps(diagonal_algebra(3).to_json()))
    code, out = run(
        ["embed", "run", str(spec), "--ambient", "12", "--emit-matrices"], tmp_path
    )
    assert code == 0
    rep = load_report(out, "embed-run")
    mats = rep["data"]["matrices"]
    assert len(mats["phi"]) == 12 and len(mats["phi"][0]) == 3
    assert len(mats["images"]) == 3


def test_gallery_torus_cli(tmp_path):
    code, out = run(["gallery", "torus", "--torus-dim", "1", "--count", "2000"], tmp_path)
    assert code == 0
    rep = load_report(out, "gallery-torus")
    assert rep["data"]["eigenvalue_head"][:7] == [0, 1, 1, 4, 4, 9, 9]


def test_gallery_lambda_unit_cli(tmp_path):
    code, out = run(
        ["gallery", "lambda-unit", "--dims", "32,64", "--probes", "70", "--s", "1"],
        tmp_path,
    )
    assert code == 0
    rep = load_report(out, "gallery-lambda-unit")
    assert rep["data"]["gamma"] == 2
    assert rep["passed"]


def test_run_config_dispatch(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(
        json.dumps(
            {
                "command": "gallery ainf",
                "n_max": 12,
                "p": 3,
                "seed": 9,
                "out": str(tmp_path / "cfgout"),
            }
        )
    )
    code = main(["run", "--config", str(cfg)])
    assert code == 0
    assert (tmp_path / "cfgout" / "gallery-ainf.json").exists()


def test_tolerances_and_probe_counts_self_described(tmp_path):
    code, out = run(
        ["dn", "certify", "--space", "s", "--q", "2", "--r", "4", "--dims", "16,32"],
        tmp_path,
    )
    assert code == 0
    rep = load_report(out, "dn-certify")
    assert "tol" in rep["tolerances"]
    assert rep["params"]["probes"] == 200
    assert rep["rng"].startswith("philox")


def strip_timestamp(text: str) -> str:
    return "\n".join(
        line for line in text.splitlines() if '"created_utc"' not in line
    )


@pytest.mark.parametrize(
    "args,name",
    [
        (["gallery", "ainf", "--n-max", "15", "--p", "3", "--seed", "7"], "gallery-ainf"),
        (
            ["dn", "certify", "--space", "s", "--q", "1", "--r", "2", "--dims", "16,64",
             "--probes", "50", "--seed", "3"],
            "dn-certify",
        ),
        (
            ["gallery", "lambda-unit", "--dims", "16,32", "--probes", "35", "--s", "1",
             "--seed", "11"],
            "gallery-lambda-unit",
        ),
    ],
)
def test_determinism_byte_identical_reports(tmp_path, args, name):
    _, out1 = run(args + ["--no-plot"], tmp_path, sub="a")
    _, out2 = run(args + ["--no-plot"], tmp_path, sub="b")
    j1 = strip_timestamp((out1 / f"{name}.json").read_text())
    j2 = strip_timestamp((out2 / f"{name}.json").read_text())
    assert j1 == j2
    for csv in sorted(p.name for p in out1.glob("*.csv")):
        assert (out1 / csv).read_bytes() == (out2 / csv).read_bytes()


def test_alpha_file_record(tmp_path):
    alpha = tmp_path / "alpha.json"
    alpha.write_text(json.dumps({"kind": "linear", "params": {"scale": 1.0}, "dim": 8}))
    code, out = run(
        ["gallery", "lambda-unit", "--dims", "16,32", "--probes", "35", "--s", "1",
         "--alpha-file", str(alpha)],
        tmp_path,
    )
    assert code == 0
    assert load_report(out, "gallery-lambda-unit")["data"]["gamma"] == 2
    # explicit lists refuse to extrapolate past their length
    short = tmp_path / "short.json"
    short.write_text(json.dumps({"kind": "explicit", "params": {"values": [1.0, 2.0]}, "dim": 2}))
    code, _ = run(
        ["gallery", "lambda-unit", "--dims", "16,32", "--probes", "35", "--s", "1",
         "--alpha-file", str(short)],
        tmp_path,
        sub="out2",
    )
    assert code == 1


def test_overflow_exit_code_3(tmp_path, monkeypatch):
    from opstar.gallery.ainf import AinfReport
    import opstar.cli as cli_mod

    def fake_counterexample(n_max, p, threshold=1e3):
        rep = AinfReport(p=p, threshold=threshold)
        rep.overflow = True
        return rep

    monkeypatch.setattr(cli_mod.gallery, "ainf_counterexample", fake_counterexample)
    code, out = run(["gallery", "ainf", "--n-max", "5", "--p", "3"], tmp_path)
    assert code == 3
    assert load_report(out, "gallery-ainf")["overflow"] is True


@pytest.mark.parametrize(
    "args,name",
    [
        (["dn", "falsify", "--family", "ainf", "--p", "3", "--n-max", "32"], "dn-falsify"),
        (["dn", "falsify", "--family", "basis", "--q", "1", "--n-max", "20"], "dn-falsify"),
        (["gallery", "legendre", "--max-degree", "20"], "gallery-legendre"),
        (["gallery", "nikolskii", "--count", "60", "--max-degree", "15"], "gallery-nikolskii"),
        (["gallery", "hadamard", "--count", "8", "--max-degree", "6"], "gallery-hadamard"),
        (["gallery", "taylor-tail", "--count", "6", "--degree", "12", "--n-min", "5",
          "--n-max", "8"], "gallery-taylor-tail"),
        (["gallery", "kinf-unit", "--k", "1", "--dims", "8,16", "--probes", "20"],
         "gallery-kinf-unit"),
        (["gallery", "bump", "--orders", "1", "--scales", "1,0.5"], "gallery-bump"),
        (["gallery", "torus", "--torus-dim", "2", "--count", "3000"], "gallery-torus"),
    ],
)
def test_every_subcommand_passes(tmp_path, args, name):
    code, out = run(args, tmp_path)
    assert code == 0
    rep = load_report(out, name)
    assert rep["passed"] is True
    assert rep["schema"] == "opstar-report/1"
    # each command emits at least one delimited curve with a figure
    assert list(out.glob(f"{name}__*.csv"))
    assert list(out.glob(f"{name}__*.png"))
