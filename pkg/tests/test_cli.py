import json

from cmprime import cli
from cmprime.prover15 import Certificate


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_test15_prime_exit0(capsys):
    code, out, _ = run_cli(capsys, "test15", "--k", "9")
    assert code == 0
    assert "F_9 is prime" in out


def test_test15_composite_exit1(capsys):
    code, out, _ = run_cli(capsys, "test15", "--k", "19")
    assert code == 1
    assert "F_19 is composite" in out
    assert "reason:" in out


def test_test15_domain_exit2(capsys):
    code, out, _ = run_cli(capsys, "test15", "--k", "27")
    assert code == 2
    assert "domain error" in out


def test_usage_error_exit2(capsys):
    assert run_cli(capsys, "test15")[0] == 2
    assert run_cli(capsys, "nonsense")[0] == 2


def test_test15_strict_torsion_flag(capsys):
    code, out, _ = run_cli(capsys, "test15", "--k", "9", "--strict-torsion")
    assert code == 0
    assert "strict-torsion: ok" in out


def test_certificate_roundtrip_via_cli(capsys, tmp_path):
    cert_path = tmp_path / "k9.json"
    code, _, err = run_cli(capsys, "test15", "--k", "9", "--cert", str(cert_path))
    assert code == 0
    assert cert_path.exists()
    code, out, _ = run_cli(capsys, "verify", "--cert", str(cert_path),
                           "--strict-torsion")
    assert code == 0
    assert "certificate valid" in out
    assert "strict-torsion: ok" in out


def test_verify_rejects_tampered_cert(capsys, tmp_path):
    cert_path = tmp_path / "k9.json"
    run_cli(capsys, "test15", "--k", "9", "--cert", str(cert_path))
    doc = json.loads(cert_path.read_text())
    doc["d"] = str((int(doc["d"]) + 1) % int(doc["F"]))
    cert_path.write_text(json.dumps(doc))
    code, out, _ = run_cli(capsys, "verify", "--cert", str(cert_path))
    assert code == 1
    assert "INVALID" in out


def test_verify_missing_file_exit2(capsys, tmp_path):
    code, _, err = run_cli(capsys, "verify", "--cert", str(tmp_path / "nope.json"))
    assert code == 2


def test_verify_malformed_file_exit2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    code, _, err = run_cli(capsys, "verify", "--cert", str(bad))
    assert code == 2


def test_test2_subcommand(capsys):
    code, out, _ = run_cli(capsys, "test2", "--k", "17")
    assert code == 0 and "is prime" in out
    code, out, _ = run_cli(capsys, "test2", "--k", "25")
    assert code == 1 and "is composite" in out
    code, out, _ = run_cli(capsys, "test2", "--k", "9")
    assert code == 2


def test_sieve_stdout_and_file(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "sieve", "--kmax", "240", "--bound", "61",
                           "--log")
    assert code == 0
    assert "k=9\n" in out
    assert "elim k=181 p=61" in out
    out_path = tmp_path / "sieve.txt"
    code, out, _ = run_cli(capsys, "sieve", "--kmax", "240", "--bound", "61",
                           "--out", str(out_path))
    assert code == 0
    assert "k=9" in out_path.read_text().splitlines()


def test_search_finds_9_and_123(capsys, tmp_path):
    certdir = tmp_path / "certs"
    code, out, _ = run_cli(capsys, "search", "--kmax", "300", "--bound",
                           "100000", "--certdir", str(certdir))
    assert code == 0
    assert out.splitlines() == ["k=9", "k=123"]
    cert = Certificate.load(certdir / "cm15-cert-k123.json")
    assert cert.k == 123


def test_search_jobs_deterministic(capsys):
    code1, out1, _ = run_cli(capsys, "search", "--kmax", "300", "--bound", "20000")
    code2, out2, _ = run_cli(capsys, "search", "--kmax", "300", "--bound",
                             "20000", "--jobs", "2")
    assert code1 == code2 == 0
    assert out1 == out2


def test_check_theorems_subset(capsys):
    code, out, _ = run_cli(capsys, "check-theorems", "--k", "9")
    assert code == 0
    assert "PASS set-identity" in out
    assert "FAIL" not in out


def test_internal_inconsistency_exit3(capsys, monkeypatch):
    import cmprime.cli as cli_mod

    def boom(k):
        raise RuntimeError("synthetic inconsistency")

    monkeypatch.setattr(cli_mod, "test15", boom)
    code, _, err = run_cli(capsys, "test15", "--k", "9")
    assert code == 3
    assert "internal inconsistency" in err
