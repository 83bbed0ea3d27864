"""End-to-end checks of the command line client and the HTTP service."""

import json
import warnings

from click.testing import CliRunner

from flagtrop.cli import main
from flagtrop.service import app

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient


def run(*args, env=None):
    return CliRunner().invoke(main, list(args), env=env)


def test_tropical_text_and_json_agree():
    # [PAPER] lambda-tilde = (7,5,0): arrow values (a..f) = (1,2,1,3,2,2)
    r = run("tropical", "--n", "3", "--weight", "7,5,0")
    assert r.exit_code == 0
    assert "letters (a..f): 1 2 1 3 2 2" in r.output
    rj = run("tropical", "--n", "3", "--weight", "7,5,0", "--format", "json")
    assert rj.exit_code == 0
    data = json.loads(rj.output)
    assert data["sigma_letters"] == ["1", "2", "1", "3", "2", "2"]
    # same numbers in both formats
    for v in data["sigma"].values():
        assert v in r.output


def test_tropical_dot_flag():
    r = run("tropical", "--n", "3", "--weight", "2,1,0", "--dot")
    assert r.exit_code == 0
    assert "digraph" in r.output


def test_integral_false_case():
    # [PAPER] (6,3,-2) has the non-integral filling (3/2, 13/6, 13/6)
    r = run("integral", "--n", "3", "--weight", "6,3,-2", "--format", "json")
    assert r.exit_code == 0
    data = json.loads(r.output)
    assert data["integral"] is False
    assert data["filling"][0] == ["3/2", "13/6"]
    assert data["filling"][1] == ["13/6"]
    rt = run("integral", "--n", "3", "--weight", "6,3,-2")
    assert "integral: False" in rt.output and "13/6" in rt.output


def test_conjecture_fixture():
    # [PAPER] lambda = 2w1+5w2, i=(212): nu = nu_vee = (2,3,2)
    r = run(
        "conjecture", "--n", "3", "--weight", "2w1+5w2", "--word", "212",
        "--format", "json",
    )
    assert r.exit_code == 0
    data = json.loads(r.output)
    assert data["equal"] is True
    assert data["nu"] == [2, 3, 2] and data["nu_vee"] == [2, 3, 2]


def test_string_polytope_rho():
    r = run(
        "string-polytope", "--n", "3", "--weight", "1w1+1w2", "--word", "212",
        "--format", "json",
    )
    assert r.exit_code == 0
    data = json.loads(r.output)
    assert len(data["A"]) == 6
    assert len(data["lattice_points"]) == 8


def test_puiseux_env_override():
    r = run(
        "puiseux", "--n", "3", "--weight", "3,1,0", "--format", "json",
        env={"FLAGTROP_PUISEUX_K": "4"},
    )
    assert r.exit_code == 0
    assert json.loads(r.output)["truncation_order"] == 4
    # an explicit -K beats the environment
    r = run(
        "puiseux", "--n", "3", "--weight", "3,1,0", "-K", "6",
        "--format", "json", env={"FLAGTROP_PUISEUX_K": "4"},
    )
    assert json.loads(r.output)["truncation_order"] == 6


def test_domain_error_exit_code_and_json():
    r = run("tropical", "--n", "3", "--weight", "bogus")
    assert r.exit_code == 1
    data = json.loads(r.output)
    assert data["error"] and "bogus" in data["message"]
    # a non-reduced word is a domain error too
    r = run("nu-vee", "--n", "3", "--weight", "1w1", "--word", "211")
    assert r.exit_code == 1
    assert json.loads(r.output)["error"]


def test_usage_error_exit_code():
    r = run("tropical", "--n", "3")  # missing --weight
    assert r.exit_code == 2


def test_sweep_text_summary():
    r = run("sweep", "--n", "3", "--max-coeff", "1", "--word", "212",
            "--workers", "1")
    assert r.exit_code == 0
    assert "cases=4 verified=" in r.output


def test_service_health_and_error_shape():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        client = TestClient(app, raise_server_exceptions=False)
    assert client.get("/health").json() == {"status": "ok"}
    r = client.post("/nu", json={"n": 3, "weight": "6,3,-2", "word": "212"})
    assert r.status_code == 422
    body = r.json()
    assert body["error"] == "NotIntegral"
    r = client.post("/ffl", json={"n": 3, "weight": "2,1,0"})
    assert r.status_code == 200
    assert r.json()["member"] is True
