import json
import subprocess
import sys


from hyperramsey.core import TwoColoring, coloring_to_json, hypergraph_to_json
from hyperramsey.constructions import loose_path_lb, tau_lower_construction
from hyperramsey.cli import main


def run_cli(args, tmp_path=None):
    proc = subprocess.run([sys.executable, "-m", "hyperramsey.cli", *args],
                          capture_output=True, text=True)
    return proc


def write_json(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


class TestConstruct:
    def test_burr_with_manifest(self, tmp_path):
        out = tmp_path / "c.json"
        man = tmp_path / "m.json"
        rc = main(["construct", "burr", "--param", "k=3", "--param", "chi=2",
                   "--param", "sigma=2", "--param", "vG=4",
                   "--out", str(out), "--manifest-out", str(man)])
        assert rc == 0
        col = json.loads(out.read_text())
        assert col["n"] == 4 and col["encoding"] == "colex-v1"
        manifest = json.loads(man.read_text())
        assert manifest["parameters"]["chi"] == 2
        assert len(manifest["partition"]) == 2

    def test_bad_params_exit_1(self, capsys):
        # the ell >= 2 construction rejects loose paths
        rc = main(["construct", "ell-path", "--param", "k=3", "--param", "ell=1",
                   "--param", "n=5", "--param", "chi=2"])
        assert rc == 1
        capsys.readouterr()


class TestVerify:
    def test_free_instance(self, tmp_path):
        aux = tau_lower_construction(2, 3)
        inst = loose_path_lb(3, 2, 11, 3, aux)
        cpath = write_json(tmp_path, "c.json", coloring_to_json(inst.coloring))
        hpath = write_json(tmp_path, "h.json", hypergraph_to_json(inst.blue_target))
        out = tmp_path / "cert.json"
        rc = main(["verify", "--coloring", cpath, "--red-pattern", "path:3:1:11",
                   "--blue-target", hpath, "--out", str(out)])
        assert rc == 0
        cert = json.loads(out.read_text())
        assert cert["kind"] == "free"

    def test_pattern_target(self, tmp_path):
        col = TwoColoring.all_red(3, 5)
        cpath = write_json(tmp_path, "c.json", coloring_to_json(col))
        out = tmp_path / "cert.json"
        rc = main(["verify", "--coloring", cpath, "--red-pattern", "path:3:2:4",
                   "--blue-target", "edge:3", "--out", str(out)])
        assert rc == 0
        assert json.loads(out.read_text())["kind"] == "not_free"


class TestRamsey:
    def test_edge_edge(self, tmp_path):
        out = tmp_path / "r.json"
        rc = main(["ramsey", "--red", "edge:3", "--blue", "edge:3", "--out", str(out)])
        assert rc == 0
        payload = json.loads(out.read_text())
        assert payload["value"] == 3
        assert payload["lower_witness"]["n"] == 2


class TestTauAndDramsey:
    def test_tau(self, tmp_path):
        out = tmp_path / "t.json"
        assert main(["tau", "--k", "3", "--alpha", "4", "--out", str(out)]) == 0
        payload = json.loads(out.read_text())
        assert payload["value"] == 5 and payload["witness"]["n"] == 5

    def test_dramsey(self, tmp_path):
        out = tmp_path / "d.json"
        assert main(["dramsey", "--chi", "3", "--out", str(out)]) == 0
        payload = json.loads(out.read_text())
        assert payload["value"] == 4 and payload["witness"]["n"] == 3


class TestChainAndEngine:
    def test_chain_assemble(self, tmp_path):
        col = TwoColoring.all_red(3, 14)
        cpath = write_json(tmp_path, "c.json", coloring_to_json(col))
        bpath = write_json(tmp_path, "b.json", [list(range(7)), list(range(7, 14))])
        out = tmp_path / "chains.json"
        rc = main(["chain", "assemble", "--coloring", cpath, "--blocks", bpath,
                   "--ell", "1", "--alpha", "2", "--out", str(out)])
        assert rc == 0
        payload = json.loads(out.read_text())
        assert not payload["stalled"]
        assert payload["chains"][0]["kind"] == "closed"

    def test_engine_loose(self, tmp_path):
        col = TwoColoring.random(3, 13, 0.95, seed=42)
        cpath = write_json(tmp_path, "c.json", coloring_to_json(col))
        out = tmp_path / "e.json"
        rc = main(["engine", "loose", "--coloring", cpath, "--target", "13",
                   "--blue-target", "tth:2:2", "--block-size", "5", "--out", str(out)])
        assert rc == 0
        payload = json.loads(out.read_text())
        assert payload["outcome"] == "red_witness"

    def test_engine_tight(self, tmp_path):
        col = TwoColoring.random(3, 13, 0.95, seed=0)
        cpath = write_json(tmp_path, "c.json", coloring_to_json(col))
        out = tmp_path / "e.json"
        rc = main(["engine", "tight", "--coloring", cpath, "--target", "10",
                   "--tth", "2:2", "--block-size", "6", "--out", str(out)])
        assert rc == 0
        assert json.loads(out.read_text())["outcome"] == "red_witness"


class TestCheck:
    def make_red_path_cert(self, tmp_path):
        col = TwoColoring.all_red(3, 7)
        cpath = write_json(tmp_path, "c.json", coloring_to_json(col))
        cert = {"kind": "red_path", "witness": [0, 1, 2, 3, 4], "stats": {},
                "detail": {"ell": 1, "k": 3}}
        return col, cpath, cert

    def test_valid_certificate(self, tmp_path):
        _, cpath, cert = self.make_red_path_cert(tmp_path)
        certpath = write_json(tmp_path, "cert.json", cert)
        assert main(["check", "--certificate", certpath, "--coloring", cpath]) == 0

    def test_tampered_certificate_exit_3(self, tmp_path):
        col, _, cert = self.make_red_path_cert(tmp_path)
        # flip one witness edge blue
        from hyperramsey.core import colex_rank
        bits = col.red_bits & ~(1 << colex_rank((0, 1, 2)))
        tampered = TwoColoring(3, 7, bits)
        cpath = write_json(tmp_path, "c.json", coloring_to_json(tampered))
        certpath = write_json(tmp_path, "cert.json", cert)
        assert main(["check", "--certificate", certpath, "--coloring", cpath]) == 3

    def test_embedding_certificate(self, tmp_path):
        col = TwoColoring.all_blue(3, 6)
        cpath = write_json(tmp_path, "c.json", coloring_to_json(col))
        from hyperramsey.core import complete_hypergraph
        cert = {"kind": "blue_embedding", "witness": [0, 1, 2, 3], "stats": {},
                "detail": {"target": hypergraph_to_json(complete_hypergraph(3, 4))}}
        certpath = write_json(tmp_path, "cert.json", cert)
        assert main(["check", "--certificate", certpath, "--coloring", cpath]) == 0

    def test_missing_file_exit_1(self):
        assert main(["check", "--certificate", "/nonexistent/cert.json"]) == 1


class TestTableDeterminism:
    def test_byte_identical_runs_and_jobs(self, tmp_path):
        # two invocations, plus --jobs 1 vs --jobs 8, all byte-identical
        outs = []
        for i, jobs in enumerate(("1", "1", "8")):
            out = tmp_path / f"t{i}.json"
            rc = main(["--jobs", jobs, "table", "--json-out", str(out)])
            assert rc == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1] == outs[2]

    def test_text_mode_runs(self, capsys):
        assert main(["table"]) == 0
        text = capsys.readouterr().out
        assert "pass" in text and "FAIL" not in text


class TestGuardExit:
    def test_enumeration_ceiling_exit_2(self, capsys):
        # the pair resolves past the enumeration ceiling: n = 8 needs
        # C(8,3) = 56 > 36 colouring bits
        rc = main(["ramsey", "--red", "path:3:2:8", "--blue", "clique:3:4", "--cap", "10"])
        assert rc == 2
        capsys.readouterr()


class TestConstructAllNames:
    def test_loose_path(self, tmp_path):
        out = tmp_path / "c.json"
        rc = main(["construct", "loose-path", "--param", "k=3", "--param", "chi=2",
                   "--param", "n=11", "--param", "t=3", "--out", str(out)])
        assert rc == 0 and json.loads(out.read_text())["n"] == 10

    def test_loose_cycle_pencil(self, tmp_path):
        out = tmp_path / "c.json"
        rc = main(["construct", "loose-cycle", "--param", "k=3", "--param", "chi=2",
                   "--param", "n=6", "--param", "t=2", "--param", "q=2",
                   "--param", "variant=pencil", "--out", str(out)])
        assert rc == 0 and json.loads(out.read_text())["n"] == 7

    def test_non_transitive(self, tmp_path):
        out = tmp_path / "c.json"
        rc = main(["construct", "non-transitive", "--param", "m=3", "--param", "t=4",
                   "--out", str(out)])
        assert rc == 0 and json.loads(out.read_text())["n"] == 8

    def test_transitive(self, tmp_path):
        out = tmp_path / "c.json"
        rc = main(["construct", "transitive", "--param", "n=9", "--out", str(out)])
        assert rc == 0 and json.loads(out.read_text())["n"] == 12

    def test_ell_path_with_manifest_hashes(self, tmp_path):
        out = tmp_path / "c.json"
        man = tmp_path / "run.json"
        rc = main(["--manifest", str(man), "construct", "ell-path",
                   "--param", "k=3", "--param", "ell=2", "--param", "n=8",
                   "--param", "chi=2", "--out", str(out)])
        assert rc == 0
        manifest = json.loads(man.read_text())
        import hashlib
        assert manifest["output_sha256"]["out"] == hashlib.sha256(out.read_bytes()).hexdigest()


class TestVerifyThenCheckRoundTrip:
    def test_free_certificate_accepted_as_attestation(self, tmp_path):
        col = TwoColoring.all_red(3, 4)
        cpath = write_json(tmp_path, "c.json", coloring_to_json(col))
        cert_out = tmp_path / "cert.json"
        rc = main(["verify", "--coloring", cpath, "--red-pattern", "path:3:2:8",
                   "--blue-target", "edge:3", "--out", str(cert_out)])
        assert rc == 0
        assert json.loads(cert_out.read_text())["kind"] == "free"
        rc = main(["check", "--certificate", str(cert_out), "--coloring", cpath])
        assert rc == 0

    def test_not_free_certificate_revalidates_inner_witness(self, tmp_path):
        col = TwoColoring.all_red(3, 5)
        cpath = write_json(tmp_path, "c.json", coloring_to_json(col))
        cert_out = tmp_path / "cert.json"
        rc = main(["verify", "--coloring", cpath, "--red-pattern", "path:3:2:4",
                   "--blue-target", "edge:3", "--out", str(cert_out)])
        assert rc == 0
        assert json.loads(cert_out.read_text())["kind"] == "not_free"
        rc = main(["check", "--certificate", str(cert_out), "--coloring", cpath])
        assert rc == 0


class TestEngineCycleKind:
    def test_cycle_target_through_cli(self, tmp_path):
        col = TwoColoring.all_red(3, 12)
        cpath = write_json(tmp_path, "c.json", coloring_to_json(col))
        out = tmp_path / "e.json"
        rc = main(["engine", "loose", "--coloring", cpath, "--target", "10",
                   "--target-kind", "cycle", "--blue-target", "tth:2:2",
                   "--block-size", "6", "--out", str(out)])
        assert rc == 0
        payload = json.loads(out.read_text())
        if payload["outcome"] == "red_witness":
            assert payload["certificate"]["kind"] == "red_cycle"

    def test_params_file_overrides(self, tmp_path):
        col = TwoColoring.all_blue(3, 10)
        cpath = write_json(tmp_path, "c.json", coloring_to_json(col))
        ppath = write_json(tmp_path, "p.json", {"block_size": 4, "trials": 8})
        out = tmp_path / "e.json"
        rc = main(["engine", "tight", "--coloring", cpath, "--target", "9",
                   "--tth", "2:2", "--params", ppath, "--out", str(out)])
        assert rc == 0
        assert json.loads(out.read_text())["outcome"] == "blue_witness"
