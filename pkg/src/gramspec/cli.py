"""Command-line interface.

Exit status: 0 on success, 1 when a verification check fails (the failing
check is named on stderr), 2 on invalid input or usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from math import comb
from typing import Optional, Sequence

from . import __version__
from .bounds import common_real_root_certificate, density_experiment, diagram, max_polyhedral_dim, render_diagram
from .construction import (
    ConstructionCertificate,
    ScalarPicker,
    hermitian_simplex_face,
    symmetric_simplex_face,
)
from .errors import GramSpecError, InvalidInput, MixedFlavors, VerificationError
from .extreme import count_rank_one, enumerate_rank_one, face_from_factorization, low_rank_selection
from .forms import INF, RootList
from .gram import FaceReport, GramTensor, supporting_face
from .sampling import random_subspace
from .subspaces import Subspace, conj_product, product

SEED_ENV = "GRAMSPEC_SEED"
SEED_MAX = 2**64 - 1

SYMMETRIC_ASSUMPTION = (
    "assumes f has no rank-one Gram points and no positive-dimensional faces of rank 3"
)


class CheckFailed(VerificationError):
    pass


# ---------------------------------------------------------------------------
# input helpers


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path} is not valid JSON: {exc}") from exc


def _load_roots(path: str) -> RootList:
    data = _load_json(path)
    if isinstance(data, dict) and "f" in data and isinstance(data["f"], dict):
        data = data["f"].get("roots", data)  # a certificate file
    if not isinstance(data, dict):
        raise InvalidInput("roots file must hold an object with 'lead' and 'points'")
    return RootList.from_json(data)


def _load_tensors(path: str) -> list[GramTensor]:
    data = _load_json(path)
    if isinstance(data, dict):
        data = data.get("tensors", data.get("generators"))
    if not isinstance(data, list) or not data:
        raise InvalidInput("tensors file must hold a non-empty list of tensors")
    return [GramTensor.from_json(t) for t in data]


def _load_subspace(path: str) -> Subspace:
    data = _load_json(path)
    if not isinstance(data, dict):
        raise InvalidInput("subspace file must hold an object with 'degree' and 'basis'")
    return Subspace.from_json(data)


# ---------------------------------------------------------------------------
# text rendering


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _report_text(rep: FaceReport) -> list[str]:
    lines = [
        f"flavor: {rep.flavor}",
        f"rank: {rep.rank}",
        f"dimension: {rep.dimension} (kernel cross-check: {rep.dimension_by_kernel})",
        f"polyhedral: {_yes(rep.polyhedral)}",
        f"simplex: {_yes(rep.simplex)}",
        f"generators: {len(rep.generators)}",
        "face subspace basis:",
    ]
    lines += [f"  {p}" for p in rep.face_subspace.forms()]
    lines += [f"note: {n}" for n in rep.notes]
    return lines


def _certificate_text(cert: ConstructionCertificate) -> list[str]:
    lines = [
        f"{cert.flavor} simplex face, k={cert.k}, variant={cert.variant}",
        f"d: {cert.degree}",
        f"f: {cert.f}",
        "roots: " + ", ".join(str(p) for p in cert.f_roots.points),
        f"rank: {cert.face.rank}",
        f"dimension: {cert.face.dimension} (kernel cross-check: {cert.face.dimension_by_kernel})",
        f"polyhedral: {_yes(cert.face.polyhedral)}",
        f"simplex: {_yes(cert.face.simplex)}",
        "generator forms:",
    ]
    lines += [f"  p{j}: {p}" for j, p in enumerate(cert.forms)]
    lines += [f"check passed: {c}" for c in cert.checks]
    return lines


# ---------------------------------------------------------------------------
# commands; each returns (json_payload, text_lines)


def cmd_construct(args) -> tuple[object, list[str]]:
    picker = ScalarPicker(seed=args.seed) if args.random_scalars else ScalarPicker()
    if args.k < 1:
        raise InvalidInput("--k must be at least 1")
    if args.flavor == "hermitian":
        cert = hermitian_simplex_face(args.k, args.variant, picker)
    else:
        cert = symmetric_simplex_face(args.k, picker)
    return cert.to_json(), _certificate_text(cert)


def cmd_analyze(args) -> tuple[object, list[str]]:
    tensors = _load_tensors(args.tensors)
    if args.flavor and any(t.flavor != args.flavor for t in tensors):
        raise MixedFlavors(f"tensors are not all {args.flavor}")
    rep = supporting_face(tensors)
    return rep.to_json(), _report_text(rep)


def cmd_rank_one(args) -> tuple[object, list[str]]:
    roots = _load_roots(args.roots)
    if args.low_rank is not None:
        tensors = low_rank_selection(roots, args.low_rank)
        total = tensors[0]
        for t in tensors[1:]:
            total = total + t
        s = args.low_rank
        bound = (s - 1).bit_length() + 1  # ceil(log2 s) + 1
        payload = {
            "s": s,
            "sum_rank": total.rank(),
            "bound": bound,
            "tensors": [t.to_json() for t in tensors],
        }
        if total.rank() > bound:
            raise CheckFailed(f"low-rank selection: sum rank {total.rank()} exceeds {bound}")
        return payload, [f"s: {s}", f"sum rank: {total.rank()} (bound {bound})"]
    if args.enumerate:
        items = list(enumerate_rank_one(roots))
        payload = {"count": len(items), "members": [{"p": p.to_json(), "tensor": t.to_json()} for p, t in items]}
        lines = [f"count: {len(items)}"] + [f"  {p}" for p, _ in items]
        return payload, lines
    n = count_rank_one(roots)
    return {"d": roots.degree // 2, "count": n}, [f"count: {n}"]


def cmd_factor_face(args) -> tuple[object, list[str]]:
    roots = _load_roots(args.roots)
    rep = face_from_factorization(roots, args.r)
    return rep.to_json(), _report_text(rep)


def cmd_diagram(args) -> tuple[object, list[str]]:
    rows = diagram(args.d, args.flavor)
    bound_flavor = "hermitian" if args.flavor == "hermitian" else "symmetric_generic"
    kmax = max_polyhedral_dim(args.d, bound_flavor)
    payload = {
        "d": args.d,
        "flavor": args.flavor,
        "rows": [r.to_json() for r in rows],
        "max_polyhedral_dim": kmax,
    }
    lines = render_diagram(rows, args.d, args.flavor).rstrip("\n").split("\n")
    if args.flavor == "symmetric":
        payload["assumption"] = SYMMETRIC_ASSUMPTION
        lines.append(f"max polyhedral face dimension (generic f): {kmax}; {SYMMETRIC_ASSUMPTION}")
    else:
        lines.append(f"max polyhedral face dimension: {kmax}")
    return payload, lines


def cmd_root_certificate(args) -> tuple[object, list[str]]:
    U = _load_subspace(args.subspace)
    cert = common_real_root_certificate(U)
    payload = cert.to_json()
    lines = [f"gcd: {cert.gcd}"]
    if cert.kind == "point":
        lines.append("point: (1:0)" if cert.point is INF else f"point: ({cert.point}:1)")
    else:
        lo, hi = cert.interval
        lines.append(f"isolating interval: ({lo}, {hi}]")
    return payload, lines


# -- verify suites ----------------------------------------------------------


def _suite_constructions(args, record) -> None:
    for k in range(1, 5):
        for variant in ("plain", "qi"):
            name = f"hermitian k={k} {variant}"
            try:
                c = hermitian_simplex_face(k, variant)
                record(name, c.face.rank == k + 1 and c.face.dimension == k and c.face.simplex)
            except VerificationError as exc:
                record(name, False, str(exc))
    for k in (1, 2):
        name = f"symmetric k={k}"
        try:
            c = symmetric_simplex_face(k)
            record(name, c.face.rank == 2 * (k + 1) and c.face.dimension == k and c.face.simplex)
        except VerificationError as exc:
            record(name, False, str(exc))


def _suite_bounds(args, record) -> None:
    for flavor in ("symmetric", "hermitian"):
        for d in range(1, 11):
            rows = diagram(d, flavor)
            ok = all(r.lower <= r.upper and all(r.lower <= v <= r.upper for v in r.excluded) for r in rows)
            record(f"diagram rows consistent d={d} {flavor}", ok)
    for k in range(1, 4):
        c = hermitian_simplex_face(k)
        d = c.degree
        row = diagram(d, "hermitian")[c.face.rank - 1]
        record(f"hermitian k={k} inside diagram", row.lower <= c.face.dimension <= row.upper)
        record(f"hermitian k={k} degree bound tight", comb(k + 1, 2) == d and max_polyhedral_dim(d, "hermitian") == k)
    for k in (1, 2):
        c = symmetric_simplex_face(k)
        d = c.degree
        row = diagram(d, "symmetric")[c.face.rank - 1]
        inside = row.lower <= c.face.dimension <= row.upper and c.face.dimension not in row.excluded
        record(f"symmetric k={k} inside diagram", inside)
        record(f"symmetric k={k} degree bounds", comb(k + 3, 2) <= 2 * d - 2 and (k + 1) ** 2 <= d)
    rng = random.Random(args.seed)
    bad = []
    for i in range(args.samples):
        d = rng.randint(2, 8)
        U = random_subspace(d, rng.randint(1, d + 1), rng, real=rng.random() < 0.5)
        n = U.dim
        if product(U, U).dim < 2 * n - 1 or conj_product(U).dim < 2 * n - 1:
            bad.append(i)
    record(f"product lower bound on {args.samples} random subspaces", not bad, f"samples {bad[:5]}")


def _suite_density(args, record) -> None:
    rep = density_experiment(2, args.samples, args.seed, "hermitian")
    record(f"density hermitian k=2 ratio {rep.ratio}", rep.ratio == 1.0, json.dumps(rep.failures[:3]))
    rep = density_experiment(1, args.samples, args.seed, "symmetric")
    record(f"density symmetric k=1 ratio {rep.ratio}", rep.ratio == 1.0, json.dumps(rep.failures[:3]))


SUITES = {"bounds": _suite_bounds, "constructions": _suite_constructions, "density": _suite_density}


def cmd_verify(args) -> tuple[object, list[str]]:
    if args.samples < 1:
        raise InvalidInput("--samples must be at least 1")
    results: list[dict] = []

    def record(name: str, ok: bool, detail: str = "") -> None:
        results.append({"check": name, "passed": bool(ok), **({"detail": detail} if not ok and detail else {})})

    SUITES[args.suite](args, record)
    failed = [r for r in results if not r["passed"]]
    payload = {"suite": args.suite, "seed": args.seed, "passed": not failed, "checks": results}
    lines = [("PASS " if r["passed"] else "FAIL ") + r["check"] for r in results]
    if failed:
        raise CheckFailed("; ".join(r["check"] for r in failed), payload, lines)
    return payload, lines


# ---------------------------------------------------------------------------
# argument parsing


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= v <= SEED_MAX:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _default_seed() -> int:
    env = os.environ.get(SEED_ENV)
    if env is None or env == "":
        return 0
    try:
        return _seed(env)
    except argparse.ArgumentTypeError as exc:
        raise InvalidInput(f"{SEED_ENV}: {exc}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(2)


def build_parser(default_seed: int = 0) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")
    common.add_argument("--seed", type=_seed, default=default_seed, help=f"default 0 or ${SEED_ENV}")

    parser = _Parser(prog="gramspec", description="Faces of Gram spectrahedra of binary forms.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", parents=[common], help="build a simplex-face certificate")
    p.add_argument("--flavor", choices=("hermitian", "symmetric"), required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--variant", choices=("plain", "qi"), default="plain")
    p.add_argument("--random-scalars", action="store_true", help="seeded random scalar picker")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("analyze", parents=[common], help="report on the face supported by tensors")
    p.add_argument("--tensors", required=True, metavar="FILE")
    p.add_argument("--flavor", choices=("hermitian", "symmetric"))
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("rank-one", parents=[common], help="rank-one Hermitian Gram points")
    p.add_argument("--roots", required=True, metavar="FILE")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true")
    mode.add_argument("--enumerate", action="store_true")
    mode.add_argument("--low-rank", type=int, metavar="S")
    p.set_defaults(func=cmd_rank_one)

    p = sub.add_parser("factor-face", parents=[common], help="face of rank r from a factorization")
    p.add_argument("--roots", required=True, metavar="FILE")
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_factor_face)

    p = sub.add_parser("diagram", parents=[common], help="rank/dimension ranges of faces")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--flavor", choices=("hermitian", "symmetric"), required=True)
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("root-certificate", parents=[common], help="common real root of a subspace")
    p.add_argument("--subspace", required=True, metavar="FILE")
    p.set_defaults(func=cmd_root_certificate)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", choices=tuple(SUITES), required=True)
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(func=cmd_verify)
    return parser


def dumps(obj, indent: int = 0) -> str:
    """Indented JSON that keeps lists of plain values (scalars, tuples) on one line."""
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {dumps(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return json.dumps(list(obj))
        items = [inner + dumps(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(obj)


def _render(payload, lines: list[str], fmt: str) -> str:
    if fmt == "json":
        return dumps(payload) + "\n"
    return "\n".join(lines) + "\n"


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        parser = build_parser(_default_seed())
    except InvalidInput as exc:
        sys.stderr.write(f"gramspec: invalid input: {exc}\n")
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload, lines = args.func(args)
    except CheckFailed as exc:
        if len(exc.args) == 3:
            _, payload, lines = exc.args
            _emit(_render(payload, lines, args.format), args.out)
        sys.stderr.write(f"gramspec: verification failed: {exc.args[0]}\n")
        return 1
    except VerificationError as exc:
        sys.stderr.write(f"gramspec: verification failed: {exc}\n")
        return 1
    except (InvalidInput, ValueError) as exc:
        sys.stderr.write(f"gramspec: invalid input: {exc}\n")
        return 2
    except GramSpecError as exc:
        sys.stderr.write(f"gramspec: error: {exc}\n")
        return 2
    try:
        _emit(_render(payload, lines, args.format), args.out)
    except OSError as exc:
        sys.stderr.write(f"gramspec: cannot write output: {exc}\n")
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
