import json

import pytest

from q2dpoly.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_eval_first_family(capsys):
    code, out = run(capsys, "eval", "--family", "H", "--m", "1", "--n", "1",
                    "--z1", "1", "--z2", "1", "--q", "1/2")
    assert code == 0 and out.strip() == "1/2"


def test_eval_complex_point(capsys):
    code, out = run(capsys, "eval", "--family", "h", "--m", "1", "--n", "1",
                    "--z1", "3/2,1/2", "--z2", "3/2,-1/2", "--q", "2/5")
    assert code == 0 and out.strip() == "2/5"  # q*|z|^2 - (1-q) = 2/5*(5/2) - 3/5


def test_coeffs_constant(capsys):
    code, out = run(capsys, "coeffs", "--family", "p", "--m", "0", "--n", "0",
                    "--b", "1/3")
    doc = json.loads(out)
    assert code == 0 and doc["coeffs"] == [[0, 0, "1", "0"]]


def test_verify_exact_exit_zero(capsys):
    code, out = run(capsys, "verify", "--id", "H-TTR-a", "--q", "2/5",
                    "--max-m", "3", "--max-n", "3", "--format", "json")
    assert code == 0
    docs = json.loads(out)
    assert all(d["pass"] for d in docs)


def test_verify_reports_byte_identical(capsys):
    args = ("verify", "--id", "h-MULT", "--q", "2/5", "--max-m", "3",
            "--max-n", "3", "--format", "json", "--seed", "7")
    _, out1 = run(capsys, *args)
    _, out2 = run(capsys, *args)
    assert out1 == out2


def test_verify_seed_recorded(capsys):
    code, out = run(capsys, "verify", "--id", "H-MULT", "--q", "2/5",
                    "--max-m", "2", "--max-n", "2", "--format", "json",
                    "--seed", "11")
    docs = json.loads(out)
    assert code == 0 and all(d["extra"]["seed"] == 11 for d in docs)


def test_verify_needs_sqrt_config_error(capsys):
    # h-GF at q = 2/5 on the exact backend has no rational square root;
    # the sweep isolates it as a failing report -> exit 1
    code, out = run(capsys, "verify", "--id", "h-GF", "--q", "2/5",
                    "--format", "json")
    assert code == 1


def test_verify_without_selector_is_config_error(capsys):
    code = main(["verify", "--q", "1/2"])
    assert code == 2


def test_zeros_json_schema(capsys):
    code, out = run(capsys, "zeros", "--family", "H", "--m", "2", "--n", "2",
                    "--q", "1/4")
    doc = json.loads(out)
    assert code == 0
    for key in ("family", "m", "n", "radii", "certified_width"):
        assert key in doc
    assert len(doc["radii"]) == 2


def test_aqzeros(capsys):
    code, out = run(capsys, "aqzeros", "--count", "2", "--q", "1/4")
    doc = json.loads(out)
    assert code == 0 and len(doc["zeros"]) == 2


def test_gram_cli(capsys):
    code, out = run(capsys, "gram", "--kind", "doh", "--N", "3", "--z", "1,1",
                    "--q", "2/5", "--format", "json")
    assert code == 0


def test_asym_csv(capsys):
    code, out = run(capsys, "asym", "--target", "Hmn_inf", "--sizes", "4,8,16",
                    "--q", "1/2", "--z1", "2", "--z2", "2", "--format", "csv")
    assert code == 0 and out.startswith("size,error")


def test_bad_q_is_config_error(capsys):
    code = main(["eval", "--family", "H", "--m", "0", "--n", "0",
                 "--z1", "1", "--z2", "1", "--q", "3/2"])
    assert code == 2


def test_config_file_defaults(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"q": "1/2"}))
    code, out = run(capsys, "eval", "--family", "H", "--m", "1", "--n", "1",
                    "--z1", "1", "--z2", "1", "--config", str(cfg))
    assert code == 0 and out.strip() == "1/2"
    # explicit flag wins over the config file
    code, out = run(capsys, "eval", "--family", "H", "--m", "1", "--n", "1",
                    "--z1", "1", "--z2", "1", "--q", "1/4", "--config", str(cfg))
    assert code == 0 and out.strip() == "1/4"


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, _ = run(capsys, "coeffs", "--family", "H", "--m", "1", "--n", "0",
                  "--output", str(target))
    assert code == 0 and json.loads(target.read_text())["m"] == 1


def test_verify_all_exact_exit_zero(capsys):
    # needs_sqrt series entries are excluded (with a notice) when q has no
    # rational square root; everything else must pass with residual 0
    code, out = run(capsys, "verify", "--all-exact", "--q", "2/5",
                    "--max-m", "2", "--max-n", "2", "--format", "json")
    assert code == 0
    docs = json.loads(out)
    assert all(d["pass"] and d["residual"] == "0" for d in docs)


def test_verify_cli_matches_library_sweep(capsys):
    from fractions import Fraction as F

    from q2dpoly.context import QContext
    from q2dpoly.identities import sweep

    code, out = run(capsys, "verify", "--id", "H-ROD", "--q", "2/5",
                    "--max-m", "2", "--max-n", "2", "--format", "json")
    lib = sweep(QContext(F(2, 5)), ["H-ROD"], {"max_m": 2, "max_n": 2})
    assert json.loads(out) == [r.to_dict() for r in lib]
