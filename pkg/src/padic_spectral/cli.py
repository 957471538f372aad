"""Command-line front end: analyze / classify / enumerate / verify / tree /
measure / oracle.

Exit codes: 0 when the computed property holds (verified, spectral, no
disagreement), 1 when it is falsified, 2 for usage or parse errors.  All
numeric output is exact: rationals as "num/den", p-adic values as "u*p^v" or
fraction text.  Output is byte-deterministic for a fixed command line and
seed.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass
from multiprocessing import Pool

from . import cyclic, measures, spectra
from .padic import parse_literal
from .sets import SetSyntaxError, parse_set

JOBS_ENV = "PADIC_SPECTRAL_JOBS"


@dataclass
class RunConfig:
    subcommand: str
    source: str | None = None  # inline text
    path: str | None = None
    use_stdin: bool = False
    fmt: str = "json"
    oracle: bool = False
    jobs: int = 1
    seed: int = 0

    def read_input(self) -> str:
        picked = [
            s for s in (self.source is not None, self.path is not None, self.use_stdin) if s
        ]
        if len(picked) != 1:
            raise ValueError("exactly one input source is required")
        if self.source is not None:
            return self.source
        if self.path is not None:
            with open(self.path, "r", encoding="utf-8") as fh:
                return fh.read()
        return sys.stdin.read()


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, separators=(", ", ": ")) + "\n")


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# subcommands


def _cmd_analyze(cfg: RunConfig) -> int:
    omega = parse_set(cfg.read_input())
    out = spectra.full_analysis(omega)
    _emit(out)
    return 0 if out["homogeneous"] else 1


def _cmd_tree(cfg: RunConfig) -> int:
    omega = parse_set(cfg.read_input())
    tree = omega.build_tree()
    if cfg.fmt == "dot":
        sys.stdout.write(tree.to_dot(omega.homogeneity()))
    else:
        _emit(tree.to_json())
    return 0


def _parse_digit_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip() != ""]


def _cmd_classify(args) -> int:
    ds = cyclic.DigitSet.from_elements(args.p, args.gamma, _parse_digit_list(args.set))
    verdict = cyclic.classify(ds, use_oracles=args.oracle)
    _emit(verdict.to_json())
    return 0 if verdict.spectral else 1


def _cmd_enumerate(args) -> int:
    branch = _parse_digit_list(args.branch_levels) if args.branch_levels else []
    choice = args.choice if args.choice else "all"
    if choice in measures._NAMED_CHOICES:
        choice = measures._NAMED_CHOICES[choice]
    for ds in cyclic.enumerate_homogeneous(args.p, args.gamma, branch, choice):
        verdict = cyclic.classify(ds, use_oracles=args.oracle)
        _emit(verdict.to_json())
    return 0


def _cmd_verify(cfg: RunConfig, args) -> int:
    omega = parse_set(cfg.read_input())
    if (args.spectrum is None) == (args.complement is None):
        raise ValueError("provide exactly one of --spectrum / --complement")

    def load(blob: str) -> dict:
        if blob.startswith("@"):
            with open(blob[1:], "r", encoding="utf-8") as fh:
                return json.load(fh)
        return json.loads(blob)

    if args.spectrum is not None:
        cand = spectra.LatticePeriodicSet.from_json(load(args.spectrum), omega.p)
        result = spectra.verify_spectral_pair(omega, cand)
    else:
        cand = spectra.LatticePeriodicSet.from_json(load(args.complement), omega.p)
        result = spectra.verify_tiling_pair(omega, cand)
    if args.certificate:
        with open(args.certificate, "w", encoding="utf-8") as fh:
            json.dump(result.to_json(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    _emit({"kind": result.kind, "ok": result.ok, "detail": result.detail})
    return 0 if result.ok else 1


def _cmd_measure(args) -> int:
    blob = args.spec
    if blob.startswith("@"):
        with open(blob[1:], "r", encoding="utf-8") as fh:
            blob = fh.read()
    spec = measures.SingularMeasureSpec.from_json(json.loads(blob))
    digit_set, omega = spec.truncate(args.gamma)
    m = omega.haar_measure()
    out = {
        "p": spec.p,
        "gamma": args.gamma,
        "digit_set": list(digit_set.elements),
        "branch_levels": list(spec.branch_levels(args.gamma)),
        "measure": f"{m.numerator}/{m.denominator}",
        "spectrum_window": [
            x.to_rational_text() for x in spec.spectrum_window(args.gamma)
        ],
    }
    status = 0
    if args.verify is not None:
        ok = measures.verify_truncation_spectrum(spec, args.verify, args.gamma)
        out["truncation_verified"] = ok
        out["gamma0"] = args.verify
        status = 0 if ok else 1
    _emit(out)
    return status


def _oracle_chunk(payload) -> tuple[int, int, list[str]]:
    p, gamma, masks = payload
    spectral = 0
    disagreements: list[str] = []
    for mask in masks:
        ds = cyclic.DigitSet(p, gamma, mask)
        try:
            verdict = cyclic.classify(ds, use_oracles=True)
            if verdict.spectral:
                spectral += 1
        except cyclic.EquivalenceError as exc:  # pragma: no cover - defect path
            disagreements.append(str(exc))
    return len(masks), spectral, disagreements


def _cmd_oracle(args) -> int:
    n = args.p**args.gamma
    top = 1 << n
    if args.samples is not None:
        rng = random.Random(args.seed)
        masks = [rng.randrange(1, top) for _ in range(args.samples)]
        mode = "sampled"
    else:
        masks = list(range(1, top))
        mode = "exhaustive"
    jobs = args.jobs or _default_jobs()
    chunks = [
        (args.p, args.gamma, masks[i : i + 2048]) for i in range(0, len(masks), 2048)
    ]
    total = spectral = 0
    disagreements: list[str] = []
    if jobs > 1 and len(chunks) > 1:
        with Pool(jobs) as pool:
            for cnt, spec_cnt, bad in pool.imap(_oracle_chunk, chunks):
                total += cnt
                spectral += spec_cnt
                disagreements.extend(bad)
    else:
        for chunk in chunks:
            cnt, spec_cnt, bad = _oracle_chunk(chunk)
            total += cnt
            spectral += spec_cnt
            disagreements.extend(bad)
    _emit(
        {
            "p": args.p,
            "gamma": args.gamma,
            "mode": mode,
            "seed": args.seed if mode == "sampled" else None,
            "count": total,
            "spectral": spectral,
            "disagreements": sorted(disagreements),
        }
    )
    return 0 if not disagreements else 1


# ---------------------------------------------------------------------------
# argument parsing


def _add_input_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("text", nargs="?", help="inline set expression")
    sub.add_argument("--file", help="read the set expression from a file")
    sub.add_argument("--stdin", action="store_true", help="read the set from stdin")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padic-spectral",
        description="Exact spectral-set / tiling analysis in the p-adic numbers",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    s = sub.add_parser("analyze", help="full analysis of a compact open set")
    _add_input_args(s)

    s = sub.add_parser("tree", help="emit the ball tree of a set")
    _add_input_args(s)
    s.add_argument("--format", choices=["dot", "json"], default="dot")

    s = sub.add_parser("classify", help="classify a digit set in Z/p^gamma Z")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--gamma", type=int, required=True)
    s.add_argument("--set", required=True, help="comma-separated digits")
    s.add_argument("--oracle", action="store_true", help="run brute-force oracles")

    s = sub.add_parser(
        "enumerate", help="stream homogeneous digit sets with given branching levels"
    )
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--gamma", type=int, required=True)
    s.add_argument(
        "--branch-levels", default="", help="comma-separated branching levels"
    )
    s.add_argument(
        "--choice",
        default=None,
        help="digit rule at pinned levels: 'zero' or 'repeat' (default: all sets)",
    )
    s.add_argument("--oracle", action="store_true")

    s = sub.add_parser("verify", help="verify a candidate spectrum or complement")
    _add_input_args(s)
    s.add_argument("--set", dest="set_inline", help=argparse.SUPPRESS)
    s.add_argument("--spectrum", help="candidate spectrum JSON (or @file)")
    s.add_argument("--complement", help="candidate tiling complement JSON (or @file)")
    s.add_argument("--certificate", help="write the full certificate JSON here")

    s = sub.add_parser("measure", help="truncations of a singular measure spec")
    s.add_argument("--spec", required=True, help="spec JSON (or @file)")
    s.add_argument("--gamma", type=int, required=True)
    s.add_argument(
        "--verify", type=int, default=None, metavar="GAMMA0",
        help="certify the depth-GAMMA0 spectrum piece against the truncation",
    )

    s = sub.add_parser(
        "oracle", help="sweep digit sets, checking fast path against both oracles"
    )
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--gamma", type=int, required=True)
    s.add_argument("--samples", type=int, default=None)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--jobs", type=int, default=None)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.subcommand in ("analyze", "tree", "verify"):
            text = args.text
            if args.subcommand == "verify" and text is None and args.set_inline:
                text = args.set_inline
            cfg = RunConfig(
                args.subcommand,
                source=text,
                path=args.file,
                use_stdin=args.stdin,
                fmt=getattr(args, "format", "json"),
            )
            if args.subcommand == "analyze":
                return _cmd_analyze(cfg)
            if args.subcommand == "tree":
                return _cmd_tree(cfg)
            return _cmd_verify(cfg, args)
        if args.subcommand == "classify":
            return _cmd_classify(args)
        if args.subcommand == "enumerate":
            return _cmd_enumerate(args)
        if args.subcommand == "measure":
            return _cmd_measure(args)
        if args.subcommand == "oracle":
            return _cmd_oracle(args)
        parser.error(f"unknown subcommand {args.subcommand}")
    except (SetSyntaxError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
