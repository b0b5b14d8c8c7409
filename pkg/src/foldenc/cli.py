"""Command-line front end: encode, reduce, export, solve, verify, pipeline."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import csp, reduction
from .diamond import choose_lambdas_diamond, encode_diamond
from .encoding import Encoding
from .lattice import Instance, fold_names, parse_instance
from .pbpoly import PBPoly, dumps, loads
from .solve import anneal, attach_fold, attach_placement, exhaustive_min, verify_encoding
from .turn_ancilla import Penalties, choose_lambda, encode
from .turn_circuit import encode_circuit

ENCODINGS = ("turn-ancilla", "turn-circuit", "diamond")
FORMATS = ("poly", "qubo", "ising", "wcnf", "lp")


class CliError(Exception):
    pass


@dataclass
class PipelineConfig:
    encoding: str = "turn-ancilla"
    lambda_overlap: int | None = None
    cutoff: int | None = None
    to: str = "poly"
    solver: str = "none"
    seed: int = 0
    out_dir: Path = Path(".")
    allow_large: bool = False


def load_instance(args) -> Instance:
    if args.model == "file":
        if not args.j_file:
            raise CliError("--model file needs --j-file")
        return parse_instance(Path(args.j_file).read_text())
    if not args.seq:
        raise CliError("--seq is required unless --model file is used")
    if args.model == "hp":
        return Instance.hp(args.seq)
    if args.model == "mj":
        return Instance.mj(args.seq)
    raise CliError(f"unknown model {args.model!r}")


def build_encoding(inst: Instance, cfg: PipelineConfig, warn=print) -> Encoding:
    lam = cfg.lambda_overlap
    if cfg.encoding == "diamond":
        auto = choose_lambdas_diamond(inst)
        if lam is not None and lam < auto["lambda_overlap"]:
            warn(f"warning: lambda-overlap {lam} is below the safe value {auto['lambda_overlap']}")
        over = None if lam is None else {"lambda_connect": lam, "lambda_overlap": lam}
        return encode_diamond(inst, cfg.cutoff, over)
    auto = choose_lambda(inst).lambda_overlap
    if lam is not None and lam < auto:
        warn(f"warning: lambda-overlap {lam} is below the safe value {auto}")
    pen = None if lam is None else Penalties(lam)
    if cfg.encoding == "turn-ancilla":
        return encode(inst, pen)
    if cfg.encoding == "turn-circuit":
        return encode_circuit(inst, pen, allow_large=cfg.allow_large)
    raise CliError(f"unknown encoding {cfg.encoding!r}")


def _write(out_dir: Path, name: str, text: str) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / name
    path.write_text(text)
    return path


def _summary(enc: Encoding) -> list[str]:
    counts = {}
    for r in enc.layout.roles():
        counts[r["role"]] = counts.get(r["role"], 0) + 1
    roles = ", ".join(f"{k} {v}" for k, v in counts.items())
    return [
        f"encoding {enc.kind}, sequence {''.join(enc.instance.sequence)}",
        f"variables {enc.nvars} ({roles})",
        f"terms {len(enc.poly)}, degree {enc.poly.degree()}",
    ]


def run_pipeline(inst: Instance | None, cfg: PipelineConfig, poly: PBPoly | None = None, out=print) -> dict:
    """Encode (or take ``poly``), optionally reduce, export and solve."""
    enc = None
    if poly is None:
        enc = build_encoding(inst, cfg, warn=lambda m: print(m, file=sys.stderr))
        poly, nvars = enc.poly, enc.nvars
        for line in _summary(enc):
            out(line)
    else:
        nvars = poly.max_var()
        out(f"polynomial: variables {nvars}, terms {len(poly)}, degree {poly.degree()}")
    written = []
    if enc is not None:
        written.append(_write(cfg.out_dir, "poly.json", enc.poly_text()))
        written.append(_write(cfg.out_dir, "layout.json", enc.sidecar_text()))
    elif cfg.to == "poly":
        written.append(_write(cfg.out_dir, "poly.json", dumps(poly, nvars)))

    qubo = rmap = None
    if cfg.to in ("qubo", "ising") or cfg.solver == "anneal":
        if not poly.is_integral():
            raise CliError("reduction needs integer coefficients")
        qubo, rmap = reduction.reduce_to_2local(poly, nvars)
        out(f"reduced: {qubo.n} variables ({len(rmap.gadgets)} gadgets), constant {qubo.constant}")
        written.append(_write(cfg.out_dir, "qubo.txt", reduction.format_qubo(qubo)))
        written.append(_write(cfg.out_dir, "qubo_dense.txt", reduction.format_dense(qubo)))
        gadgets = [{"pair": [g.i, g.j], "ancilla": g.n, "delta": g.delta} for g in rmap.gadgets]
        written.append(_write(cfg.out_dir, "gadgets.json", json.dumps(gadgets, indent=1) + "\n"))
        if cfg.to == "ising":
            written.append(_write(cfg.out_dir, "ising.txt", reduction.format_ising(reduction.qubo_to_ising(qubo))))
    if cfg.to in ("wcnf", "lp"):
        if not poly.is_integral():
            raise CliError("WCNF export needs integer coefficients")
        w = csp.pb_to_wcnf(poly, nvars)
        written.append(_write(cfg.out_dir, "problem.wcnf", csp.format_wcnf(w)))
        if cfg.to == "lp":
            written.append(_write(cfg.out_dir, "problem.lp", csp.format_lp(csp.wcnf_to_ilp(w))))
        out(f"wcnf: {len(w.clauses)} clauses, offset {w.offset}")

    report = {"files": [str(p) for p in written]}
    if cfg.solver != "none":
        layout = enc.layout if enc is not None else None
        if cfg.solver == "exhaustive":
            target = poly if qubo is None else qubo.to_poly()
            res = exhaustive_min(target, layout, nvars=nvars)
        elif cfg.solver == "anneal":
            res = anneal(qubo, seed=cfg.seed)
            if layout is not None and hasattr(layout, "N") and enc.kind != "diamond":
                attach_fold(res, layout.N)
        else:
            raise CliError(f"unknown solver {cfg.solver!r}")
        if enc is not None and enc.kind == "diamond" and res.coords is None:
            attach_placement(res, enc.layout)
        rep = res.report()
        written.append(_write(cfg.out_dir, "solution.json", res.report_text()))
        out(f"energy {res.value}")
        if res.fold:
            out("fold " + ",".join(fold_names(res.fold)) + ("" if res.valid else " (invalid)"))
        report.update(rep)
    for p in written:
        out(f"wrote {p}")
    return report


def _add_instance_args(p: argparse.ArgumentParser):
    p.add_argument("--encoding", choices=ENCODINGS, default="turn-ancilla")
    p.add_argument("--seq", help="residue sequence, e.g. HPPHP")
    p.add_argument("--model", choices=("hp", "mj", "file"), default="hp")
    p.add_argument("--j-file", help="instance file (sequence plus J block) for --model file")
    p.add_argument("--lambda-overlap", type=int, help="overlap/back penalty (default: automatic)")
    p.add_argument("--cutoff", type=int, help="diamond radius cutoff")
    p.add_argument("--allow-large", action="store_true", help="lift the turn-circuit size cap")
    p.add_argument("--out-dir", default=".", help="directory for written files")
    p.add_argument("--poly", help="read a polynomial file instead of encoding an instance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="foldenc", description="Lattice folding to pseudo-boolean, QUBO, WCNF and ILP.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (("encode", "write the energy polynomial and layout"),
                        ("reduce", "quadratize to QUBO (and Ising)"),
                        ("export", "write one representation"),
                        ("solve", "solve at desk scale"),
                        ("pipeline", "encode, reduce, export and solve"),
                        ("verify", "check an encoding against exhaustive folding")):
        p = sub.add_parser(name, help=help_)
        _add_instance_args(p)
        if name in ("export", "pipeline"):
            p.add_argument("--to", choices=FORMATS, default="poly")
        if name in ("solve", "pipeline"):
            p.add_argument("--solve", choices=("exhaustive", "anneal", "none"),
                           default="exhaustive" if name == "solve" else "none")
            p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = PipelineConfig(
        encoding=args.encoding,
        lambda_overlap=args.lambda_overlap,
        cutoff=args.cutoff,
        to=getattr(args, "to", "poly"),
        solver=getattr(args, "solve", "none"),
        seed=getattr(args, "seed", 0),
        out_dir=Path(args.out_dir),
        allow_large=args.allow_large,
    )
    if args.command == "reduce":
        cfg.to = "qubo"
    try:
        if args.command == "verify":
            rep = verify_encoding(load_instance(args), args.encoding, args.cutoff,
                                  _explicit_penalties(args))
            print(rep.summary())
            return 0 if rep.passed else 1
        poly = loads(Path(args.poly).read_text()) if args.poly else None
        inst = None if poly is not None else load_instance(args)
        run_pipeline(inst, cfg, poly)
    except (CliError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def _explicit_penalties(args):
    if args.lambda_overlap is None:
        return None
    if args.encoding == "diamond":
        return {"lambda_connect": args.lambda_overlap, "lambda_overlap": args.lambda_overlap}
    return Penalties(args.lambda_overlap)


if __name__ == "__main__":
    sys.exit(main())
