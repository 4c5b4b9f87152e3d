import json

import pytest

from ffjac.cli import main
from ffjac.divisors import Divisor, finite_places_above
from ffjac.fieldgen import read_field
from ffjac.jacobian import JacobianCtx
from ffjac.polys import Poly

GENUS_HEADER = ("genus"
                " linear_no_caching_milliseconds_per_addition"
                " linear_caching_milliseconds_per_addition"
                " binary_no_caching_milliseconds_per_addition"
                " binary_caching_milliseconds_per_addition")


def gen_one(tmp_path, seed="7"):
    out = tmp_path / "fields"
    main(["gen", "--method", "tang", "--p", "32771", "--n", "3",
          "--cf", "2", "--count", "1", "--seed", seed,
          "--out", str(out)])
    return out / "field_tang_p32771_n3_cf2_0.json"


def test_gen_is_deterministic(tmp_path, capsys):
    p1 = gen_one(tmp_path / "a")
    p2 = gen_one(tmp_path / "b")
    assert json.load(open(p1)) == json.load(open(p2))
    d = json.load(open(p1))
    assert d["meta"]["genus"] == 4
    assert d["meta"]["genus_bound_attained"] is True
    capsys.readouterr()


def test_gen_adhoc_with_genus(tmp_path, capsys):
    rc = main(["gen", "--method", "adhoc", "--p", "32771", "--n", "2",
               "--cf-max", "4", "--genus", "2", "--out", str(tmp_path)])
    assert rc == 0
    path = tmp_path / "field_adhoc_p32771_n2_0.json"
    F, meta = read_field(path)
    assert F.genus() == 2 and meta["method"] == "adhoc"
    capsys.readouterr()


def test_bench_dat_format(tmp_path, capsys):
    field = gen_one(tmp_path)
    out = tmp_path / "run.dat"
    rc = main(["bench", "--fields", str(field), "--chains", "1",
               "--chain-length", "8", "--seed", "3", "--out", str(out)])
    assert rc == 0
    capsys.readouterr()
    lines = out.read_text().splitlines()
    comments = [l for l in lines if l.startswith("#")]
    assert any("seed" in l for l in comments)
    assert any("sweep" in l for l in comments)
    assert any("artifact" in l for l in comments)
    header = next(l for l in lines if not l.startswith("#"))
    assert header.startswith(GENUS_HEADER)
    cols = header.split()
    assert cols[5:] == ["linear_no_caching_ssrr_calls_mean",
                        "linear_caching_ssrr_calls_mean",
                        "binary_no_caching_ssrr_calls_mean",
                        "binary_caching_ssrr_calls_mean"]
    row = lines[lines.index(header) + 1].split()
    assert len(row) == len(cols)
    assert int(row[0]) == 4
    for v in row[1:5]:
        assert float(v) > 0.0


def test_bench_counter_columns_reproduce(tmp_path, capsys):
    field = gen_one(tmp_path)
    rows = []
    for name in ("r1.dat", "r2.dat"):
        out = tmp_path / name
        main(["bench", "--fields", str(field), "--chains", "1",
              "--chain-length", "8", "--seed", "5", "--out", str(out)])
        rows.append(out.read_text().splitlines()[-1].split())
    capsys.readouterr()
    assert rows[0][0] == rows[1][0]
    assert rows[0][5:] == rows[1][5:]


def test_bench_requires_a_sweep(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bench", "--out", str(tmp_path / "x.dat")])
    assert exc.value.code == 2
    capsys.readouterr()


def test_selftest_quick_passes(capsys):
    rc = main(["selftest", "--level", "quick"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "FAIL" not in out
    assert out.count("PASS") >= 4


def test_reduce_zero_divisor(tmp_path, capsys, monkeypatch):
    import io
    field_path = gen_one(tmp_path)
    F, _ = read_field(field_path)
    zero = Divisor.zero(F)
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(zero.to_dict())))
    rc = main(["reduce", "--field", str(field_path), "--divisor", "-"])
    rep = json.loads(capsys.readouterr().out.splitlines()[-1])
    assert rc == 0
    assert rep["r"] == 0


def test_reduce_matches_library(tmp_path, capsys):
    field_path = gen_one(tmp_path)
    F, _ = read_field(field_path)
    ctx = JacobianCtx(F)
    pl = finite_places_above(F, Poly([3, 1], 32771))[0]
    D = Divisor.from_place(pl) - Divisor.from_place(ctx.A, pl.degree())
    dpath = tmp_path / "div.json"
    dpath.write_text(json.dumps(D.to_dict()))
    want = ctx.reduce_divisor(D)
    rc = main(["reduce", "--field", str(field_path),
               "--divisor", str(dpath), "--strategy", "binary"])
    rep = json.loads(capsys.readouterr().out.splitlines()[-1])
    assert rc == 0
    assert rep["r"] == want.r
    assert Divisor.from_dict(F, rep["reduced_divisor"]) == \
        want.reduced_divisor()
