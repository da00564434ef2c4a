"""``moltype`` command line: validate, info, convert, sample, coin-demo, config.

Exit status: 0 success, 1 validation failures, 2 usage or I/O error,
3 parse error.  Every command accepts ``--json`` for a machine-readable
report on stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Optional, Sequence

import numpy as np

from .formats.canonical import MolSyntaxError, SemanticError, dumps_line, parse_molecule, serialize_molecule
from .formats.sdf import UnrepresentableInSdf, read_sdf, write_sdf
from .geometry import bond_length
from .inference import InferenceError, ZeroInitialWeight, metropolis_hastings, rejection_sample
from .models import coin_model, molecule_model, parse_coin_observations
from .molecule import Molecule, bonded_pairs, dietz_constitution, lint_molecule, net_charge
from .orbitals import UnsupportedZ, compact_config, ground_state_config, validate_shells

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_USAGE = 2
EXIT_PARSE = 3

FORMATS = ("canonical", "sdf")
HIST_BINS = 20


class _Failure(Exception):
    def __init__(self, status: int, message: str, details: Optional[dict] = None):
        self.status = status
        self.message = message
        self.details = details or {}
        super().__init__(message)


def _color(code: str, text: str) -> str:
    if os.environ.get("MOLTYPE_NO_COLOR") or not sys.stdout.isatty():
        return text
    return f"\033[{code}m{text}\033[0m"


def _emit(args: argparse.Namespace, report: dict, human: str) -> None:
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    elif human:
        print(human)


def detect_format(path: str, explicit: Optional[str] = None) -> str:
    if explicit:
        return explicit
    return "sdf" if Path(path).suffix.lower() in (".sdf", ".mol") else "canonical"


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise _Failure(EXIT_USAGE, f"cannot read {path}: {exc}") from None


def _error_report(exc: Exception) -> dict:
    cause = exc.cause if isinstance(exc, SemanticError) else exc
    out: dict[str, Any] = {"error": type(cause).__name__, "message": str(exc)}
    for key in ("line", "column", "expected", "found"):
        if getattr(exc, key, None) is not None:
            out[key] = getattr(exc, key)
    return out


def load_molecules(path: str, fmt: Optional[str] = None) -> tuple[list[Molecule], list[str]]:
    """Molecules and warnings from a file.

    Raises :class:`_Failure` with exit 3 for syntax errors and exit 1 for
    documents that parse but describe invalid molecules.
    """
    fmt = detect_format(path, fmt)
    text = _read_text(path)
    notes: list[str] = []
    if fmt == "canonical":
        try:
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always")
                molecule = parse_molecule(text)
        except MolSyntaxError as exc:
            raise _Failure(EXIT_PARSE, str(exc), _error_report(exc)) from None
        except SemanticError as exc:
            raise _Failure(EXIT_VIOLATIONS, str(exc), _error_report(exc)) from None
        notes.extend(str(w.message) for w in caught)
        return [molecule], notes
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        records = read_sdf(text)
    notes.extend(str(w.message) for w in caught)
    molecules = []
    for record in records:
        notes.extend(f"record {record.index}: {n}" for n in record.notes)
        if record.error is not None:
            raise _Failure(
                EXIT_PARSE, f"record {record.index}: {record.error}", {"record": record.index, **_error_report(record.error)}
            )
        molecules.append(record.molecule)
    return molecules, notes


# -- commands -------------------------------------------------------------


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        molecules, notes = load_molecules(args.path, args.format)
    except _Failure as failure:
        if failure.status != EXIT_VIOLATIONS:
            raise
        violation = {"rule": failure.details.get("error", "SemanticError"), "message": failure.message}
        report = {"path": args.path, "ok": False, "violations": [violation], "warnings": []}
        _emit(args, report, _color("31", f"{violation['rule']}: {failure.message}"))
        return EXIT_VIOLATIONS
    violations = []
    for index, m in enumerate(molecules):
        for atom in sorted(m.atoms, key=lambda a: a.atom_id):
            for v in validate_shells(atom.shells):
                violations.append(
                    {"molecule": index, "atom": atom.atom_id, "rule": v.rule, "location": v.location, "message": v.detail}
                )
        notes.extend(f"molecule {index}: {n}" for n in lint_molecule(m))
    ok = not violations
    report = {"path": args.path, "ok": ok, "molecules": len(molecules), "violations": violations, "warnings": notes}
    lines = [f"warning: {n}" for n in notes]
    lines += [f"{v['rule']}: atom {v['atom']} {v['location']}: {v['message']}" for v in violations]
    lines.append(_color("32", "ok") if ok else _color("31", f"{len(violations)} violation(s)"))
    _emit(args, report, "\n".join(lines))
    return EXIT_OK if ok else EXIT_VIOLATIONS


def molecule_info(m: Molecule) -> dict:
    orders = bonded_pairs(m)
    bonds = [
        {
            "atoms": [i, j],
            "symbols": [m.atom(i).symbol.value, m.atom(j).symbol.value],
            "order": str(order),
            "length": bond_length(m, i, j),
        }
        for (i, j), order in sorted(orders.items())
    ]
    return {
        "atoms": len(m.atoms),
        "systems": len(m.systems),
        "net_charge": net_charge(m),
        "bonds": bonds,
        "dietz": dietz_constitution(m).render(),
    }


def cmd_info(args: argparse.Namespace) -> int:
    molecules, notes = load_molecules(args.path, args.format)
    infos = [molecule_info(m) for m in molecules]
    lines = []
    for index, info in enumerate(infos):
        if len(infos) > 1:
            lines.append(f"# molecule {index}")
        lines.append(f"atoms: {info['atoms']}")
        lines.append(f"systems: {info['systems']}")
        lines.append(f"net charge: {info['net_charge']}")
        if info["bonds"]:
            lines.append("bond      order   length/A")
            for b in info["bonds"]:
                pair = f"{b['symbols'][0]}{b['atoms'][0]}-{b['symbols'][1]}{b['atoms'][1]}"
                lines.append(f"{pair:<9} {b['order']:<7} {b['length']:.4f}")
        lines.append(info["dietz"])
    lines += [f"warning: {n}" for n in notes]
    _emit(args, {"path": args.path, "molecules": infos, "warnings": notes}, "\n".join(lines))
    return EXIT_OK


def cmd_convert(args: argparse.Namespace) -> int:
    source = detect_format(args.in_path, args.from_format)
    target = detect_format(args.out_path, args.to_format)
    molecules, notes = load_molecules(args.in_path, source)
    if target == "canonical":
        if len(molecules) != 1:
            raise _Failure(EXIT_USAGE, f"a canonical document holds one molecule, input has {len(molecules)}")
        text = serialize_molecule(molecules[0])
    else:
        try:
            text = write_sdf(molecules)
        except UnrepresentableInSdf as exc:
            raise _Failure(EXIT_VIOLATIONS, str(exc), {"error": "UnrepresentableInSdf"}) from None
        notes.append("SDF output rounds coordinates to 4 decimals and drops shells")
    if source == "sdf":
        notes.append("aromatic bonds were mapped to delocalized systems heuristically")
    try:
        Path(args.out_path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise _Failure(EXIT_USAGE, f"cannot write {args.out_path}: {exc}") from None
    report = {"from": source, "to": target, "molecules": len(molecules), "out": args.out_path, "warnings": notes}
    lines = [f"wrote {len(molecules)} molecule(s) to {args.out_path} ({source} -> {target})"]
    lines += [f"note: {n}" for n in notes]
    _emit(args, report, "\n".join(lines))
    return EXIT_OK


def chain_seeds(seed: int, chains: int) -> list[int]:
    """Chain 0 uses ``seed`` itself; further chains get spawned seeds."""
    if chains == 1:
        return [seed]
    children = np.random.SeedSequence(seed).spawn(chains - 1)
    return [seed] + [int(c.generate_state(1, dtype=np.uint64)[0]) for c in children]


def run_chain(observed_doc: str, jitter: float, samples: int, burnin: int, seed: int) -> list[str]:
    observed = parse_molecule(observed_doc)
    chain = metropolis_hastings(molecule_model(observed), jitter, samples, burnin, seed)
    return [f"{dumps_line(m)}\t{logw!r}" for m, logw in chain]


def cmd_sample(args: argparse.Namespace) -> int:
    if args.samples < 0 or args.burnin < 0 or not 0 < args.jitter <= 1 or args.chains < 1:
        raise _Failure(EXIT_USAGE, "need samples >= 0, burnin >= 0, 0 < jitter <= 1 and chains >= 1")
    if not 0 <= args.seed < 2**64:
        raise _Failure(EXIT_USAGE, "seed must be an unsigned 64-bit integer")
    molecules, _ = load_molecules(args.observed, args.format)
    if len(molecules) != 1 or not molecules[0].atoms:
        raise _Failure(EXIT_USAGE, "the observed file must hold exactly one non-empty molecule")
    doc = serialize_molecule(molecules[0])
    seeds = chain_seeds(args.seed, args.chains)
    jobs = [(doc, args.jitter, args.samples, args.burnin, s) for s in seeds]
    try:
        if args.chains == 1:
            results = [run_chain(*jobs[0])]
        else:
            with ProcessPoolExecutor(max_workers=min(args.chains, os.cpu_count() or 1)) as pool:
                results = list(pool.map(run_chain, *zip(*jobs)))
    except ZeroInitialWeight as exc:
        raise _Failure(EXIT_VIOLATIONS, str(exc), {"error": "ZeroInitialWeight"}) from None
    records = []
    for chain, lines in enumerate(results):
        records.extend(lines if args.chains == 1 else [f"{chain}\t{line}" for line in lines])
    payload = "".join(line + "\n" for line in records)
    if args.out:
        try:
            Path(args.out).write_text(payload, encoding="utf-8")
        except OSError as exc:
            raise _Failure(EXIT_USAGE, f"cannot write {args.out}: {exc}") from None
    report = {
        "samples": args.samples,
        "burnin": args.burnin,
        "jitter": args.jitter,
        "seeds": seeds,
        "records": len(records),
        "out": args.out,
    }
    if args.json:
        if not args.out:
            report["lines"] = records
        _emit(args, report, "")
    elif not args.out:
        sys.stdout.write(payload)
    else:
        print(f"wrote {len(records)} records to {args.out}", file=sys.stderr)
    return EXIT_OK


def histogram(values: Sequence[float], bins: int = HIST_BINS) -> list[int]:
    counts, _ = np.histogram(np.asarray(values, dtype=float), bins=bins, range=(0.0, 1.0))
    return [int(c) for c in counts]


def cmd_coin_demo(args: argparse.Namespace) -> int:
    try:
        observations = parse_coin_observations(args.observations)
    except ValueError as exc:
        raise _Failure(EXIT_USAGE, str(exc)) from None
    if args.samples < 1:
        raise _Failure(EXIT_USAGE, "--samples must be at least 1")
    if args.method == "rejection":
        values = rejection_sample(coin_model(observations, hard=True), args.samples, args.seed)
    else:
        chain = metropolis_hastings(coin_model(observations), args.jitter, args.samples, args.burnin, args.seed)
        values = [v for v, _ in chain]
    counts = histogram(values)
    mean = float(np.mean(values))
    mode = int(np.argmax(counts))
    width = 1.0 / HIST_BINS
    report = {
        "observations": args.observations,
        "method": args.method,
        "samples": len(values),
        "mean": mean,
        "bins": [[round(k * width, 10), round((k + 1) * width, 10), c] for k, c in enumerate(counts)],
        "mode_bin": [round(mode * width, 10), round((mode + 1) * width, 10)],
    }
    top = max(counts) or 1
    lines = [f"posterior over the bias after {args.observations} ({args.method}, {len(values)} samples)"]
    for k, c in enumerate(counts):
        bar = "#" * round(40 * c / top)
        close = "]" if k == HIST_BINS - 1 else ")"
        lines.append(f"[{k * width:.2f}, {(k + 1) * width:.2f}{close} {c:6d} {bar}")
    lines.append(f"mean {mean:.4f}; mode bin [{mode * width:.2f}, {(mode + 1) * width:.2f})")
    _emit(args, report, "\n".join(lines))
    return EXIT_OK


def cmd_config(args: argparse.Namespace) -> int:
    try:
        shells = ground_state_config(args.z)
    except UnsupportedZ as exc:
        raise _Failure(EXIT_USAGE, str(exc)) from None
    table = []
    for shell in shells:
        for kind, sub in shell.subshells():
            table.append(
                {
                    "subshell": f"{shell.n}{kind}",
                    "orbitals": {o.label.value: o.electron_count for o in sub.orbitals},
                }
            )
    config = compact_config(shells)
    lines = [config]
    for row in table:
        occupancy = " ".join(f"{label}:{count}" for label, count in row["orbitals"].items())
        lines.append(f"{row['subshell']:<4} {occupancy}")
    _emit(args, {"z": args.z, "config": config, "subshells": table}, "\n".join(lines))
    return EXIT_OK


# -- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report on stdout")
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=FORMATS, help="input format (default: from the extension)")

    parser = argparse.ArgumentParser(prog="moltype", description="Typed molecule representation toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common, fmt], help="check a molecule file")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("info", parents=[common, fmt], help="summarize a molecule file")
    p.add_argument("path")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("convert", parents=[common], help="convert between sdf and canonical text")
    p.add_argument("in_path")
    p.add_argument("out_path")
    p.add_argument("--from", dest="from_format", choices=FORMATS)
    p.add_argument("--to", dest="to_format", choices=FORMATS)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("sample", parents=[common, fmt], help="Metropolis-Hastings over three-atom molecules")
    p.add_argument("--observed", required=True)
    p.add_argument("--burnin", type=int, default=1000)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--jitter", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--chains", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("coin-demo", parents=[common], help="posterior over a coin's bias")
    p.add_argument("--observations", default="HTHH")
    p.add_argument("--method", choices=("mh", "rejection"), default="rejection")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--burnin", type=int, default=1000)
    p.add_argument("--jitter", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_coin_demo)

    p = sub.add_parser("config", parents=[common], help="ground-state electron configuration")
    p.add_argument("--z", type=int, required=True)
    p.set_defaults(func=cmd_config)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _Failure as failure:
        if args.json:
            print(json.dumps({"ok": False, "status": failure.status, "message": failure.message, **failure.details}))
        print(f"moltype: {failure.message}", file=sys.stderr)
        return failure.status
    except InferenceError as exc:
        print(f"moltype: {exc}", file=sys.stderr)
        return EXIT_VIOLATIONS


if __name__ == "__main__":
    sys.exit(main())
