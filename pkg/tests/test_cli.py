import json
import subprocess
import sys

import pytest

from hdbuchi import parse_automaton
from hdbuchi.cli import run

from conftest import FIG1_TEXT

T_ACC = "parity 1 2\nalphabet a\nstates s\ninitial s\ntrans s a 2 s\n"
T_REJ = "parity 1 2\nalphabet a\nstates s\ninitial s\ntrans s a 1 s\n"
NOT_HD = "parity 1 2\nalphabet a b\nstates s x y\ninitial s\ntrans s a 1 x\ntrans s a 1 y\n" \
    "trans x a 2 s\ntrans x b 1 s\ntrans y a 1 s\ntrans y b 2 s\ntrans s b 1 s\n"


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in {"fig1": FIG1_TEXT, "tacc": T_ACC, "trej": T_REJ, "nothd": NOT_HD,
                       "bad": "parity 1 2\nalphabet a\nstates s\ninitial s\ntrans s z 2 s\n"}.items():
        path = tmp_path / f"{name}.taf"
        path.write_text(text)
        out[name] = str(path)
    out["dir"] = tmp_path
    return out


def invoke(capsys, *argv):
    code = run([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_check_hd(capsys, files):
    assert invoke(capsys, "check-hd", files["tacc"]) == (0, "HD\n", "")
    code, out, _ = invoke(capsys, "check-hd", files["nothd"])
    assert (code, out) == (1, "not-HD\n")


def test_check_hd_refuses_parity(capsys, files):
    code, out, err = invoke(capsys, "check-hd", files["fig1"])
    assert code == 2 and out == "" and "Büchi" in err


def test_check_hd_witness(capsys, files):
    code, out, _ = invoke(capsys, "check-hd", files["tacc"], "--witness", "--json")
    data = json.loads(out)
    assert code == 0 and data["hd"] and data["witness"]
    code, out, _ = invoke(capsys, "--json", "check-hd", files["nothd"], "--witness")
    data = json.loads(out)
    assert code == 1 and not data["hd"] and data["witness"]


def test_fig1_games(capsys, files):
    assert invoke(capsys, "solve-game", "--game", "joker-fixed", "--strategy", "switch", files["fig1"])[:2] == (0, "Eve\n")
    assert invoke(capsys, "solve-game", "--game", "hd-adam", "--letters", "p=a,q=b", files["fig1"])[:2] == (0, "Adam\n")
    assert invoke(capsys, "solve-game", "--game", "joker-fixed", "--strategy", "stay", files["fig1"])[:2] == (0, "Adam\n")


@pytest.mark.parametrize("game", ["g1", "joker", "k-token", "simulation", "stepahead", "sprint", "lookahead"])
def test_solve_game_json(capsys, files, game):
    code, out, _ = invoke(capsys, "solve-game", files["tacc"], files["trej"], "--game", game, "--json")
    data = json.loads(out)
    assert code == 0
    assert set(data) == {"winner_initial", "rank_initial", "vertices", "edges", "time_ms"}
    assert data["winner_initial"] == "Eve"


def test_solve_game_dump(capsys, files):
    code, out, _ = invoke(capsys, "solve-game", files["tacc"], "--dump", "-")
    assert code == 0 and out.startswith("V 0 Adam")


def test_determinize(capsys, files):
    out_path = files["dir"] / "d.taf"
    trace = files["dir"] / "trace.json"
    code, out, _ = invoke(capsys, "determinize", files["tacc"], "-o", out_path, "--trace", trace)
    assert code == 0 and out == ""
    D = parse_automaton(out_path.read_text())
    assert D.n == 1 and D.transitions == ((0, 0, 2, 0),)
    assert json.loads(trace.read_text())["terminated_at"] == 0


def test_determinize_not_hd(capsys, files):
    code, out, _ = invoke(capsys, "determinize", files["nothd"], "--json")
    assert code == 1 and json.loads(out)["certificate"]


def test_verify_equiv(capsys, files):
    code, out, _ = invoke(capsys, "verify-equiv", files["tacc"], files["trej"], "--method", "lasso", "--bound", "4,4")
    assert code == 1 and "u=;v=a" in out
    code, out, _ = invoke(capsys, "verify-equiv", files["tacc"], files["tacc"], "--method", "exact-hd", "--json")
    assert code == 0 and json.loads(out) == {"equivalent": True, "exact": True, "counterexample": None}


def test_gen_and_delay(capsys, files):
    a, w = files["dir"] / "a.taf", files["dir"] / "w.taf"
    code, _, _ = invoke(capsys, "gen", "--kind", "dba_copies", "--states", 3, "--seed", 7, "-o", a, "--witness", w)
    assert code == 0
    first = a.read_text()
    invoke(capsys, "--seed", 7, "gen", "--kind", "dba_copies", "--states", 3, "-o", a)
    assert a.read_text() == first
    assert parse_automaton(w.read_text()).n == 3
    code, out, _ = invoke(capsys, "delay", files["tacc"], "-k", 2)
    assert code == 0 and parse_automaton(out).n == 3
    assert invoke(capsys, "gen", "--kind", "raw_random", "--states", 2, "--witness", w)[0] == 2


def test_make_good_and_normalize(capsys, files):
    good = files["dir"] / "good.taf"
    assert invoke(capsys, "make-good", files["tacc"], "-o", good)[0] == 0
    code, out, _ = invoke(capsys, "normalize", good)
    assert code == 0 and parse_automaton(out).n == 1
    assert invoke(capsys, "make-good", files["nothd"])[0] == 2


def test_stats(capsys, files):
    code, out, _ = invoke(capsys, "stats", files["fig1"], "--json")
    data = json.loads(out)
    assert code == 0 and data[files["fig1"]]["index"] == [1, 3]


def test_stats_plot(capsys, files):
    png = files["dir"] / "t.png"
    code, out, _ = invoke(capsys, "stats", "--sizes", "2,3", "--samples", "1", "--plot", png, "--json")
    assert code == 0 and png.stat().st_size > 0
    assert len(json.loads(out)["complexity"]["rows"]) == 2


@pytest.mark.parametrize(
    "argv, code",
    [
        ([], 2),
        (["frobnicate"], 2),
        (["check-hd"], 2),
        (["check-hd", "missing.taf"], 2),
        (["check-hd", "{bad}"], 2),
        (["check-hd", "{tacc}", "--bogus"], 2),
        (["solve-game", "{tacc}", "--game", "k-token", "--k", "3", "--cap", "1"], 3),
        (["delay", "{fig1}", "-k", "4", "--cap", "10"], 3),
        (["verify-equiv", "{tacc}", "{trej}", "--bound", "x"], 2),
        (["verify-equiv", "{tacc}", "{fig1}"], 2),
        (["solve-game", "{fig1}", "--game", "hd-adam"], 2),
        (["solve-game", "{fig1}", "--game", "hd-adam", "--letters", "p=a"], 2),
    ],
)
def test_exit_codes(capsys, files, argv, code):
    got, out, _ = invoke(capsys, *[a.format(**files) for a in argv])
    assert got == code
    assert out == ""


def test_integrity_exit_code(capsys, files, monkeypatch):
    from hdbuchi import determinize
    from hdbuchi.errors import IntegrityError

    def broken(H):
        raise IntegrityError("simulated")

    monkeypatch.setattr(determinize, "build_d", broken)
    assert invoke(capsys, "determinize", files["tacc"])[0] == 4


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "hdbuchi", "check-hd", files["tacc"]], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "HD\n"
