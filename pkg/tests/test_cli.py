"""CLI subcommands, exit codes, and serialization round-trips."""

import json

import pytest

import tripencil as tp
from tripencil import serialize
from tripencil.cli import main
from support import build_pencil, extreme_pair


@pytest.fixture
def workdir(tmp_path):
    return tmp_path


def write_pencil(path, pencil):
    serialize.save_json(path, serialize.encode_pencil(pencil))


def test_generate_solve_verify_chain(workdir, capsys):
    assert main(["generate", "--n", "4", "--k", "2", "--seed", "7",
                 "--out", str(workdir)]) == 0
    assert main(["solve", str(workdir / "instance.json"),
                 "--out", str(workdir / "result.json")]) == 0
    capsys.readouterr()
    assert main(["verify", "--truth", str(workdir / "truth.json"),
                 "--result", str(workdir / "result.json")]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["passed"] is True
    result = json.loads((workdir / "result.json").read_text())
    assert "residual_lambda" in result


def test_solve_real_pole_ratio_exits_2(workdir, capsys, rng):
    truth = build_pencil(rng, 3, real_b_at=(1,))
    lam, mu = extreme_pair(truth)
    inst = tp.instance_from_truth(truth, 1, lam, mu)
    serialize.save_json(workdir / "bad.json", serialize.encode_instance(inst))
    code = main(["solve", str(workdir / "bad.json")])
    err = capsys.readouterr().err
    assert code == 2
    assert "Delta" in err
    assert "1" in err


def test_direct_scalar_convergent(workdir, capsys):
    pencil = tp.Pencil(tp.SymmetricTridiagonal((1.0,), ()),
                       tp.HermitianTridiagonal((0.0,), ()))
    write_pencil(workdir / "p.json", pencil)
    assert main(["direct", str(workdir / "p.json"), "--at", "2.0", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["S"] == [0.5, 0.0]


def test_direct_spectrum(workdir, capsys, rng):
    pencil = build_pencil(rng, 3)
    write_pencil(workdir / "p.json", pencil)
    assert main(["direct", str(workdir / "p.json"), "--spectrum", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert len(out["eigenvalues"]) == 4


def test_mfun_reconstruct(workdir, capsys, rng):
    pencil = build_pencil(rng, 4)
    lam, _ = extreme_pair(pencil)
    write_pencil(workdir / "p.json", pencil)
    assert main(["mfun", str(workdir / "p.json"), "--omega", f"{lam + 2.0},0",
                 "--k", "1", "--reconstruct", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    for got, want in zip(out["reconstructed_a"], out["truth_a"]):
        assert abs(got - want) < 1e-7


def test_missing_file_exits_1(capsys):
    assert main(["solve", "/nonexistent/instance.json"]) == 1


def test_schema_error_exits_1(workdir, capsys):
    (workdir / "broken.json").write_text('{"n": 2, "c": [1, 2, 3]}')
    assert main(["solve", str(workdir / "broken.json")]) == 1


def test_tampered_result_exits_3(workdir, capsys):
    assert main(["generate", "--n", "3", "--k", "1", "--seed", "11",
                 "--out", str(workdir)]) == 0
    assert main(["solve", str(workdir / "instance.json"),
                 "--out", str(workdir / "result.json")]) == 0
    doc = json.loads((workdir / "result.json").read_text())
    doc["a"][-1] += 0.01
    (workdir / "result.json").write_text(json.dumps(doc))
    capsys.readouterr()
    assert main(["verify", "--truth", str(workdir / "truth.json"),
                 "--result", str(workdir / "result.json")]) == 3
    report = json.loads(capsys.readouterr().out)
    assert report["passed"] is False


class TestSerializationRoundTrip:
    def test_pencil_bitwise(self, rng):
        pencil = build_pencil(rng, 5)
        doc = json.loads(json.dumps(serialize.encode_pencil(pencil)))
        assert serialize.decode_pencil(doc) == pencil

    def test_instance_bitwise(self, rng):
        truth = build_pencil(rng, 4)
        lam, mu = extreme_pair(truth)
        inst = tp.instance_from_truth(truth, 2, lam, mu)
        doc = json.loads(json.dumps(serialize.encode_instance(inst)))
        assert serialize.decode_instance(doc) == inst

    def test_result_bitwise(self):
        truth, inst = tp.generate_instance(tp.GeneratorConfig(n=4, k=1, seed=2))
        result = tp.solve(inst)
        doc = json.loads(json.dumps(serialize.encode_result(result)))
        assert serialize.decode_result(doc) == result

    def test_files_round_trip(self, workdir, rng):
        pencil = build_pencil(rng, 3)
        serialize.save_json(workdir / "p.json", serialize.encode_pencil(pencil))
        again = serialize.decode_pencil(serialize.load_json(workdir / "p.json"))
        assert again == pencil
