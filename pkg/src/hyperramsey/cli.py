"""Command-line interface: construct, verify, ramsey, tau, dramsey, chain,
engine, table, check.

Output is deterministic given inputs and seed: anything timing-related goes to
stderr or to the optional run manifest, never into the payload on stdout.
Exit codes: 0 ok, 1 invalid input, 2 guard exceeded, 3 certificate invalid.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import core
from .core import (
    BLUE,
    GuardExceeded,
    Hypergraph,
    RED,
    Tournament,
    TwoColoring,
    coloring_from_json,
    coloring_to_json,
    hypergraph_from_json,
    hypergraph_to_json,
    ramsey_profile,
)
from . import constructions
from .search import (
    Certificate,
    pattern_hypergraph,
    validate_embedding,
    validate_mono_cycle,
    validate_mono_path,
    verify_free,
)
from .exact import (
    directed_ramsey_exact,
    goodness_gap,
    ramsey_exact,
    tau_exact,
)
from .chains import (
    CliqueChain,
    assemble_chains,
    build_path_system,
    validate_chain,
)
from .engines import EngineParams, loose_witness_engine, tight_witness_engine

EXIT_OK = 0
EXIT_INVALID_INPUT = 1
EXIT_GUARD = 2
EXIT_BAD_CERTIFICATE = 3


def _load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _dump(obj, path: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _sha256_file(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _write_manifest(path: str | None, args, argv: list[str], started: float) -> None:
    """Hashes of every file argument plus the parameter record: re-running
    the recorded command against matching inputs reproduces the outputs."""
    if not path:
        return
    input_keys = ("coloring", "blocks", "certificate", "params", "blue_target", "blue")
    output_keys = ("out", "manifest_out", "json_out")
    inputs = {}
    outputs = {}
    for key in input_keys:
        value = getattr(args, key, None)
        if isinstance(value, str):
            try:
                inputs[key] = _sha256_file(value)
            except OSError:
                pass
    for key in output_keys:
        value = getattr(args, key, None)
        if isinstance(value, str):
            try:
                outputs[key] = _sha256_file(value)
            except OSError:
                pass
    manifest = {
        "command": argv,
        "seed": getattr(args, "seed", None),
        "input_sha256": inputs,
        "output_sha256": outputs,
        "wall_time_s": round(time.time() - started, 3),
    }
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _target_from_args(value: str) -> Hypergraph:
    """A blue target is either a pattern string or a hypergraph JSON file."""
    if ":" in value or value in ("fano",):
        return pattern_hypergraph(value)
    return hypergraph_from_json(_load_json(value))


# ---------------------------------------------------------------------------
# subcommands


def cmd_construct(args) -> int:
    params = dict(kv.split("=", 1) for kv in args.param)
    ival = {key: int(v) for key, v in params.items() if v.lstrip("-").isdigit()}
    name = args.name
    if name == "burr":
        inst = constructions.burr_coloring(ival["k"], ival["chi"], ival["sigma"], ival["vG"])
    elif name == "ell-path":
        inst = constructions.ell_path_lb(ival["k"], ival["ell"], ival["n"], ival["chi"])
    elif name == "loose-path":
        aux = constructions.tau_lower_construction(ival["k"] - 1, ival["t"])
        inst = constructions.loose_path_lb(ival["k"], ival["chi"], ival["n"], ival["t"], aux)
    elif name == "loose-cycle":
        variant = params.get("variant", "pencil")
        aux = None
        if variant == "tau":
            aux = constructions.tau_lower_construction(ival["k"] - 1, ival["t"])
        inst = constructions.loose_cycle_lb(ival["k"], ival["chi"], ival["n"], ival["t"],
                                            variant, q=ival.get("q"), aux=aux)
    elif name == "non-transitive":
        inst = constructions.non_transitive_lb(ival["m"], ival["t"])
    elif name == "transitive":
        t = Tournament.cyclic_triangle() if params.get("tournament", "c3") == "c3" \
            else tournament_from_file(params["tournament"])
        inst = constructions.transitive_lb(t, ival["n"])
    else:
        print(f"unknown construction {name!r}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    _dump(coloring_to_json(inst.coloring), args.out)
    if args.manifest_out:
        _dump(inst.manifest(), args.manifest_out)
    return EXIT_OK


def tournament_from_file(path: str) -> Tournament:
    return core.tournament_from_json(_load_json(path))


def cmd_verify(args) -> int:
    col = coloring_from_json(_load_json(args.coloring))
    target = _target_from_args(args.blue_target)
    cert = verify_free(col, args.red_pattern, target)
    _dump(cert.to_json(), args.out)
    return EXIT_OK


def cmd_ramsey(args) -> int:
    target = _target_from_args(args.blue)
    result = ramsey_exact(args.red, target, args.cap)
    rp = ramsey_profile(target)
    report = goodness_gap(args.red, target, result, rp)
    payload = {
        "red_pattern": args.red,
        "value": result.value,
        "lower_bound": result.lower_bound,
        "exact": result.exact,
        "burr_bound": report.burr,
        "verdict": report.verdict,
        "lower_witness": coloring_to_json(result.lower_witness) if result.lower_witness else None,
        "search_nodes": result.stats.get("nodes"),
    }
    _dump(payload, args.out)
    return EXIT_OK


def cmd_tau(args) -> int:
    result = tau_exact(args.k, args.alpha, n_cap=args.cap)
    payload = {
        "k": args.k,
        "alpha": args.alpha,
        "value": result.value,
        "lower": result.lower,
        "upper": result.upper,
        "exact": result.exact,
        "flags": list(result.flags),
        "witness": hypergraph_to_json(result.witness) if result.witness else None,
    }
    _dump(payload, args.out)
    return EXIT_OK


def cmd_dramsey(args) -> int:
    result = directed_ramsey_exact(args.chi, n_cap=args.cap)
    payload = {
        "chi": args.chi,
        "value": result.value,
        "lower_bound": result.lower_bound,
        "exact": result.exact,
        "witness": core.tournament_to_json(result.witness) if result.witness else None,
    }
    _dump(payload, args.out)
    return EXIT_OK


def cmd_chain(args) -> int:
    col = coloring_from_json(_load_json(args.coloring))
    blocks = [tuple(b) for b in _load_json(args.blocks)]
    system = build_path_system(col, blocks, ell=args.ell, alpha=args.alpha, epsilon=args.epsilon)
    if system.stalled:
        _dump({"stalled": True, "diagnostic": system.diagnostic}, args.out)
        return EXIT_OK
    report = assemble_chains(col, blocks, system, epsilon=args.epsilon)
    payload = {
        "stalled": False,
        "chains": [
            {"kind": c.kind, "k": c.k, "ell": c.ell,
             "vertices": list(c.vertices), "intervals": [list(i) for i in c.intervals]}
            for c in report.chains
        ],
        "leftover": list(report.leftover),
    }
    _dump(payload, args.out)
    return EXIT_OK


def cmd_engine(args) -> int:
    col = coloring_from_json(_load_json(args.coloring))
    params = EngineParams(n_target=args.target, block_size=args.block_size,
                          seed=args.seed, target_kind=args.target_kind)
    if args.params:
        overrides = _load_json(args.params)
        for key, value in overrides.items():
            setattr(params, key, value)
    if args.mode == "loose":
        target = _target_from_args(args.blue_target)
        report = loose_witness_engine(col, target, params)
    else:
        chi, m = (int(x) for x in args.tth.split(":"))
        report = tight_witness_engine(col, chi, m, params)
    payload = {
        "outcome": report.outcome,
        "certificate": report.certificate.to_json() if report.certificate else None,
        "stall": report.stall,
        "log": report.log,
    }
    _dump(payload, args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    cert = Certificate.from_json(_load_json(args.certificate))
    col = coloring_from_json(_load_json(args.coloring)) if args.coloring else None
    ok, reason = check_certificate(cert, col)
    print(json.dumps({"valid": ok, "reason": reason}))
    return EXIT_OK if ok else EXIT_BAD_CERTIFICATE


def check_certificate(cert: Certificate, col: TwoColoring | None) -> tuple[bool, str]:
    """Re-validate any certificate in one pass against the host colouring."""
    kind = cert.kind
    if kind in ("red_path", "blue_path"):
        if col is None:
            return False, "path certificates need the colouring"
        colour = RED if kind.startswith("red") else BLUE
        ell = cert.detail.get("ell")
        if cert.witness is None or ell is None:
            return False, "missing witness or ell"
        if not cert.witness:
            return True, "empty path is trivially valid"
        ok = validate_mono_path(col, cert.witness, ell, colour)
        return ok, "revalidated" if ok else "path windows are not all the right colour"
    if kind in ("red_cycle", "blue_cycle"):
        if col is None:
            return False, "cycle certificates need the colouring"
        colour = RED if kind.startswith("red") else BLUE
        seq = cert.detail.get("sequence", cert.witness)
        ok = validate_mono_cycle(col, seq, cert.detail.get("ell"), colour)
        return ok, "revalidated" if ok else "cycle windows are not all the right colour"
    if kind in ("red_embedding", "blue_embedding"):
        if col is None:
            return False, "embedding certificates need the colouring"
        colour = RED if kind.startswith("red") else BLUE
        target_json = cert.detail.get("target")
        if isinstance(target_json, dict):
            target = hypergraph_from_json(target_json)
        elif target_json == "tth":
            target, _ = core.transitive_tournament_hypergraph(cert.detail["chi"], cert.detail["m"])
        elif isinstance(target_json, str):
            target = pattern_hypergraph(target_json)
        else:
            return False, "embedding certificate lacks its target"
        if cert.witness is None:
            return False, "absence attestations cannot be re-validated in one pass"
        ok = validate_embedding(col, target, cert.witness, colour)
        return ok, "revalidated" if ok else "embedding misses an edge of the right colour"
    if kind == "independent_set":
        return cert.witness is not None, "structure check only"
    if kind == "chain":
        if col is None:
            return False, "chain certificates need the colouring"
        w = cert.witness
        chain = CliqueChain(w["kind"], w["k"], w["ell"], tuple(w["vertices"]),
                            tuple(tuple(i) for i in w["intervals"]))
        out = validate_chain(chain, col)
        return out.detail["valid"], "; ".join(out.detail["problems"]) or "revalidated"
    if kind in ("free", "not_free", "tt_embedding", "blue_crossing_attestation"):
        if kind == "not_free" and col is not None:
            side = cert.detail.get("side")
            inner = Certificate.from_json(cert.detail.get("inner", {}))
            return check_certificate(inner, col)
        return True, "attestation accepted (carries search statistics, not a witness)"
    return False, f"unknown certificate kind {kind!r}"


def cmd_table(args) -> int:
    from .table import reproduction_table, render_text

    rows = reproduction_table(jobs=args.jobs)
    if args.json_out:
        _dump(rows, args.json_out)
    else:
        print(render_text(rows))
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hyperramsey",
                                 description="Desk-scale Ramsey goodness computations for uniform hypergraphs")
    ap.add_argument("--jobs", type=int, default=1,
                    help="worker hint for parallelisable searches; results are identical for any value")
    ap.add_argument("--manifest", default=None, help="write a run manifest (hashes, wall time) here")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit a lower-bound colouring and its manifest")
    p.add_argument("name", choices=["burr", "ell-path", "loose-path", "loose-cycle",
                                    "non-transitive", "transitive"])
    p.add_argument("--param", action="append", default=[], metavar="key=value")
    p.add_argument("--out", default=None)
    p.add_argument("--manifest-out", default=None)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="freeness certificate for a colouring")
    p.add_argument("--coloring", required=True)
    p.add_argument("--red-pattern", required=True)
    p.add_argument("--blue-target", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("ramsey", help="exact Ramsey number by exhaustive search")
    p.add_argument("--red", required=True)
    p.add_argument("--blue", required=True)
    p.add_argument("--cap", type=int, default=7)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_ramsey)

    p = sub.add_parser("tau", help="largest order with independence < alpha and no two-edge loose path")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("dramsey", help="directed Ramsey number of the transitive tournament")
    p.add_argument("--chi", type=int, required=True)
    p.add_argument("--cap", type=int, default=9)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_dramsey)

    p = sub.add_parser("chain", help="build a path system over blocks and assemble clique chains")
    p.add_argument("action", choices=["assemble"])
    p.add_argument("--coloring", required=True)
    p.add_argument("--blocks", required=True, help="JSON list of vertex lists")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--epsilon", type=float, default=0.25)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("engine", help="run the loose or tight witness engine")
    p.add_argument("mode", choices=["loose", "tight"])
    p.add_argument("--coloring", required=True)
    p.add_argument("--target", type=int, required=True, help="red path/cycle order")
    p.add_argument("--target-kind", choices=["path", "cycle"], default="path")
    p.add_argument("--blue-target", default=None, help="loose mode: pattern or hypergraph JSON file")
    p.add_argument("--tth", default=None, help="tight mode: chi:m")
    p.add_argument("--block-size", type=int, default=6)
    p.add_argument("--params", default=None, help="JSON file of EngineParams overrides")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_engine)

    p = sub.add_parser("table", help="the desk-scale reproduction table")
    p.add_argument("--json-out", default=None)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("check", help="re-validate a certificate; exit 3 when invalid")
    p.add_argument("--certificate", required=True)
    p.add_argument("--coloring", default=None)
    p.set_defaults(func=cmd_check)

    return ap


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    ap = build_parser()
    args = ap.parse_args(argv)
    started = time.time()
    try:
        rc = args.func(args)
    except GuardExceeded as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    if args.manifest:
        _write_manifest(args.manifest, args, argv, started)
    return rc


if __name__ == "__main__":
    sys.exit(main())
