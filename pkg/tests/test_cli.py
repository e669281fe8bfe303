import io
import json

import pytest

from weierstab.charge import curve_charge
from weierstab.cli import main
from weierstab.config import ENV_VAR, ConfigError, config_from_mapping, load_config
from weierstab.exact import LaurentPoly
from weierstab.fourier_mukai import phi
from weierstab.surface import ChernClass, SurfaceParams


@pytest.fixture(autouse=True)
def isolated(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv(ENV_VAR, raising=False)
    return tmp_path


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv)
    assert code == 0, err
    return json.loads(out)


ONE = '{"n":"1","d":"0","c":"0","s":"0"}'


def test_transform_example():
    assert run_json("transform", "--functor", "phi", "--class", ONE) == {"n": "0", "d": "-1", "c": "0", "s": "0"}


def test_identity_example():
    got = run_json("identity-check", "--class", '{"n":"1","d":"2","c":"3","s":"4"}')
    assert got == {"status": "PASS", "residual": "0"}


def test_classify_example():
    got = run_json("phase", "classify", "--class", '{"n":"0","d":"0","c":"1","s":"0"}')
    assert got == {"phase": "1/2", "attained": True}


def test_outputs_round_trip():
    p = SurfaceParams(1, 2, 3, 4)
    params = json.dumps(p.to_json())
    x = ChernClass.of(2, 1, "1/3", 5)
    cls = json.dumps(x.to_json())
    got = run_json("--params", params, "transform", "--functor", "phi", "--class", cls)
    assert ChernClass.from_json(got) == phi(x, p)
    got = run_json("charge", "--class", cls, "--params", params)
    cc = curve_charge(x, p)
    assert LaurentPoly.from_json(got["curve"]["real"]) == cc.real_part
    assert LaurentPoly.from_json(got["curve"]["imag"]) == cc.imag_part
    got = run_json("phase", "compare", "--left", '{"n":"0","d":"1","c":"0","s":"0"}', "--right", cls, "--params", params)
    assert got["ordering"] in {"Precedes", "Succeeds", "EventuallyEqual"}
    assert isinstance(LaurentPoly.from_json(got["cross"]), LaurentPoly)


def test_charge_at_point():
    got = run_json("charge", "--class", ONE, "--at", "u=1/2")
    # v(1/2) = 3/(1/2) - 2 (1/2) = 5, Re = 2/4 + 5/2 = 3
    assert got == {"u": "1/2", "v": "5", "real": "3", "imag": "0"}


def test_walls_box_and_out_file(isolated):
    got = run_json("walls", "--class", ONE, "--box", "n=0..0,d=0..0,c=0..2,s2=-2..2")
    assert got["candidates"] == 15 and len(got["reports"]) == 15
    run_json("walls", "--class", ONE, "--box", "n=0..0,d=0..0,c=0..2,s2=-2..2", "--out", "r.json")
    assert json.loads((isolated / "r.json").read_text()) == got


def test_slope_with_factors(isolated):
    (isolated / "f.json").write_text(json.dumps([{"n": "1", "d": "0", "c": "1", "s": "0"}]))
    got = run_json("slope", "--class", '{"n":"1","d":"0","c":"1","s":"0"}', "--factors", "f.json")
    assert got["F_l"] == {"status": "Violated", "index": 0}
    assert got["T_l"] == {"status": "Satisfied"}
    assert got["mu_f"] == "0"


def test_phase_scan(isolated):
    (isolated / "cands.json").write_text(json.dumps([{"n": "0", "d": "0", "c": "1", "s": "0"}]))
    got = run_json("phase", "scan", "--class", '{"n":"1","d":"0","c":"1","s":"0"}', "--candidates", "cands.json")
    assert got["entries"][0]["verdict"]["ordering"] == "Precedes"
    assert got["destabilizers"] == []


def test_table_format_anywhere():
    point = '{"n":"0","d":"0","c":"0","s":"1"}'
    code, out, _ = run("--format", "table", "phase", "classify", "--class", point)
    assert code == 0 and "phase" in out and not out.lstrip().startswith("{")
    code, out2, _ = run("phase", "classify", "--format", "table", "--class", point)
    assert code == 0 and out2 == out


def test_domain_errors_exit_1():
    code, out, err = run("transform", "--functor", "phi", "--class", '{"n":"1","d":"x"}')
    assert code == 1 and out == ""
    payload = json.loads(err)
    assert {"d", "c", "s"} <= set(payload["fields"])
    code, _, err = run("phase", "classify", "--class", '{"n":"0","d":"0","c":"0","s":"-1"}')
    assert code == 1 and json.loads(err)["error"] == "InadmissibleChargeError"
    code, _, err = run("--params", '{"e":"5","m":"2","alpha":"1","lambda":"1"}', "identity-check", "--class", ONE)
    assert code == 1 and "m + alpha - e" in json.loads(err)["message"]


def test_usage_errors_exit_2(capsys):
    assert run("frobnicate")[0] == 2
    assert run("transform", "--class", ONE)[0] == 2
    assert run("walls", "--class", ONE)[0] == 2


# --- configuration ----------------------------------------------------------


def test_defaults():
    cfg = load_config()
    assert cfg.params == SurfaceParams(0, 2, 1, 1)
    assert cfg.seed == 42 and cfg.output_format == "json"


def test_toml_and_json_files(isolated):
    (isolated / "weier-stab.json").write_text(json.dumps({"params": {"e": "1"}, "seed": 7}))
    assert load_config().params.e == 1 and load_config().seed == 7
    (isolated / "weier-stab.toml").write_text('u_max = "1/2"\n[params]\nm = "3"\n')
    cfg = load_config()  # toml wins over json in the same directory
    assert cfg.params.m == 3 and cfg.params.e == 0 and str(cfg.u_max) == "1/2"


def test_env_and_flag_precedence(isolated, monkeypatch):
    (isolated / "weier-stab.json").write_text(json.dumps({"params": {"e": "1"}}))
    (isolated / "env.json").write_text(json.dumps({"params": {"e": "-1"}}))
    (isolated / "flag.json").write_text(json.dumps({"params": {"e": "2"}}))
    monkeypatch.setenv(ENV_VAR, str(isolated / "env.json"))
    assert load_config().params.e == -1
    assert load_config("flag.json").params.e == 2
    got = run_json("--config", "flag.json", "--params", '{"e":"0","m":"2","alpha":"1","lambda":"1"}',
                   "transform", "--functor", "phi", "--class", ONE)
    assert got == {"n": "0", "d": "-1", "c": "0", "s": "0"}


def test_load_time_rejection(isolated):
    with pytest.raises(ConfigError, match="m \\+ alpha - e"):
        config_from_mapping({"params": {"e": "4", "m": "2", "alpha": "1", "lambda": "1"}})
    with pytest.raises(ConfigError, match="unknown keys"):
        config_from_mapping({"colour": "red"})
    (isolated / "weier-stab.toml").write_text('[params]\ne = "9"\n')
    code, _, err = run("verify")
    assert code == 1 and json.loads(err)["error"] == "config"


def test_class_from_file(isolated):
    (isolated / "x.json").write_text(ONE)
    assert run_json("transform", "--functor", "phihat", "--class", "@x.json") == {"n": "0", "d": "-1", "c": "0", "s": "0"}
