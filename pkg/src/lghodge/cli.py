"""Command line interface.

Exit codes: 0 success, 1 domain error or failed check, 2 usage error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import lattice
from .hodge import check_all
from .les import ExactSequenceSpec, MalformedSpec, Status, format_solution, solve
from .linalg import LinalgError, Matrix, determinant
from .nilpotent import format_partition, jordan_profile, verify_filtration_axioms, weight_filtration
from .report import dumps, report_text, reports_json, surface_json, surface_text, use_color
from .surface import build_surface_model

log = logging.getLogger("lghodge")

COMMANDS = ("report", "surface", "lattice", "les", "weight-filtration", "jordan")


@dataclass(frozen=True)
class RunConfig:
    command: str
    ds: tuple[int, ...] = ()
    path: Path | None = None
    fmt: str = "plain"
    center: int | None = None
    verbosity: int = 0


def _d(text: str) -> int:
    try:
        d = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= d <= 9:
        raise argparse.ArgumentTypeError(f"d must lie in 0..9, got {d}")
    return d


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lghodge", description="Landau-Ginzburg Hodge numbers for I_d elliptic surfaces")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("report", help="Hodge tables and conjecture checks")
    g = r.add_mutually_exclusive_group(required=True)
    g.add_argument("--d", type=_d)
    g.add_argument("--all", action="store_true")
    r.add_argument("--format", choices=("json", "markdown", "plain"), default="plain")

    s = sub.add_parser("surface", help="cohomology tables and relative monodromy")
    s.add_argument("--d", type=_d, required=True)
    s.add_argument("--json", action="store_true")

    la = sub.add_parser("lattice", help="wheel Gram matrix and section determinant")
    la.add_argument("--d", type=_d, required=True)
    la.add_argument("--json", action="store_true")

    les = sub.add_parser("les", help="long exact sequence tools")
    les_sub = les.add_subparsers(dest="les_command", required=True)
    ls = les_sub.add_parser("solve", help="solve a sequence spec (JSON)")
    ls.add_argument("file", type=Path)
    ls.add_argument("--json", action="store_true")

    w = sub.add_parser("weight-filtration", help="weight filtration of a nilpotent matrix (JSON)")
    w.add_argument("file", type=Path)
    w.add_argument("--center", type=int, required=True)
    w.add_argument("--json", action="store_true")

    j = sub.add_parser("jordan", help="Jordan partition of a nilpotent matrix (JSON)")
    j.add_argument("file", type=Path)
    j.add_argument("--json", action="store_true")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    fmt = getattr(ns, "format", None) or ("json" if getattr(ns, "json", False) else "plain")
    ds: tuple[int, ...] = ()
    if getattr(ns, "all", False):
        ds = tuple(range(10))
    elif getattr(ns, "d", None) is not None:
        ds = (ns.d,)
    return RunConfig(ns.command, ds, getattr(ns, "file", None), fmt, getattr(ns, "center", None), ns.verbose)


def _read(path: Path) -> str:
    try:
        return path.read_text()
    except OSError as exc:
        raise LinalgError(f"cannot read {path}: {exc.strerror}") from None


def _report(cfg: RunConfig, out) -> int:
    reports = [check_all(d) for d in cfg.ds]
    if cfg.fmt == "json":
        out.write(reports_json(reports))
    else:
        color = cfg.fmt == "plain" and use_color(out)
        out.write("\n".join(report_text(r, markdown=cfg.fmt == "markdown", color=color) for r in reports))
    failed = [(r.d, f) for r in reports for f in r.failures()]
    for d, f in failed:
        log.error("d = %d: check %s failed", d, f)
    return 1 if failed else 0


def _surface(cfg: RunConfig, out) -> int:
    model = build_surface_model(cfg.ds[0])
    out.write(dumps(surface_json(model)) if cfg.fmt == "json" else surface_text(model))
    return 0


def _lattice(cfg: RunConfig, out) -> int:
    d = cfg.ds[0]
    cert = lattice.restriction_surjective(d)
    if d < 2:
        obj = {"d": d, "gram": None, "augmented": None, "surjective": cert.surjective, "certificate": cert.axiom}
        text = f"d = {d}: no wheel (irreducible fiber)\nrestriction H^2(Z) -> H^2(D) surjective: {cert.axiom}\n"
    else:
        gram = lattice.wheel_gram(d).gram
        aug = lattice.section_augmented_matrix(d)
        obj = {
            "d": d,
            "gram": gram.to_json_obj(),
            "gram_det": str(determinant(gram)),
            "augmented": aug.to_json_obj(),
            "augmented_det": str(cert.determinant),
            "expected_det": lattice.expected_section_det(d),
            "surjective": cert.surjective,
        }
        if d == 2:
            obj["note"] = lattice.D2_CONVENTION_NOTE
        text = "\n".join(
            [
                f"d = {d}",
                "Gram matrix (D_i . D_j):",
                gram.pretty(),
                f"det = {determinant(gram)}",
                "section-augmented matrix (F_i . D_j):",
                aug.pretty(),
                f"det = {cert.determinant}   (expected (-1)^(d-1) d = {lattice.expected_section_det(d)})",
                f"restriction H^2(Z) -> H^2(D) surjective: {cert.surjective}",
            ]
            + ([f"note: {lattice.D2_CONVENTION_NOTE}"] if d == 2 else [])
        ) + "\n"
    out.write(dumps(obj) if cfg.fmt == "json" else text)
    return 0


def _les(cfg: RunConfig, out) -> int:
    spec = ExactSequenceSpec.from_json(_read(cfg.path))
    sol = solve(spec)
    if cfg.fmt == "json":
        out.write(
            dumps(
                {
                    "status": sol.status.value,
                    "dims": sol.dims,
                    "ranks": sol.ranks,
                    "free": list(sol.free),
                    "witness": sol.witness,
                }
            )
        )
    else:
        out.write(format_solution(spec, sol) + "\n")
    return 1 if sol.status is Status.INCONSISTENT else 0


def _matrix(cfg: RunConfig) -> Matrix:
    return Matrix.from_json(_read(cfg.path))


def _weight(cfg: RunConfig, out) -> int:
    n = _matrix(cfg)
    w = weight_filtration(n, cfg.center)
    rep = verify_filtration_axioms(n, w)
    if cfg.fmt == "json":
        obj = w.to_json_obj()
        obj["axioms_ok"] = rep.ok
        out.write(dumps(obj))
    else:
        out.write(f"center {w.center}\ngraded dims: {list(w.graded_dims)}\n")
        for k, sub in enumerate(w.subspaces):
            out.write(f"W_{k}: dim {sub.dim}\n")
        out.write(f"axioms: {'ok' if rep.ok else 'FAILED'}\n")
    return 0 if rep.ok else 1


def _jordan(cfg: RunConfig, out) -> int:
    prof = jordan_profile(_matrix(cfg))
    if cfg.fmt == "json":
        out.write(
            dumps(
                {
                    "dim": prof.dim,
                    "power_ranks": list(prof.power_ranks),
                    "partition": list(prof.partition),
                    "chains": [[[str(x) for x in v] for v in c] for c in prof.chains],
                }
            )
        )
    else:
        out.write(f"partition: {format_partition(prof.partition)}\npower ranks: {list(prof.power_ranks)}\n")
    return 0


_DISPATCH = {
    "report": _report,
    "surface": _surface,
    "lattice": _lattice,
    "les": _les,
    "weight-filtration": _weight,
    "jordan": _jordan,
}


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    try:
        return _DISPATCH[cfg.command](cfg, out)
    except (LinalgError, MalformedSpec, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(ns.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    return run(config_from_args(ns))


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
