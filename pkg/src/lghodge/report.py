"""Rendering of surface models and conjecture reports (plain text / markdown / JSON)."""

from __future__ import annotations

import json
import os
import sys

from .hodge import Check, ConjectureReport, HodgeTable
from .nilpotent import format_partition, jordan_profile
from .surface import SurfaceModel

_COLORS = {"pass": "\033[32m", "fail": "\033[31m", "n/a": "\033[33m"}
_RESET = "\033[0m"


def use_color(stream=None) -> bool:
    """``LGHODGE_COLOR=always|never|auto``; auto honours ``NO_COLOR`` and the tty check."""
    mode = os.environ.get("LGHODGE_COLOR", "auto").lower()
    if mode == "always":
        return True
    if mode == "never" or "NO_COLOR" in os.environ:
        return False
    stream = stream or sys.stdout
    return hasattr(stream, "isatty") and stream.isatty()


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _pad(table, length=5):
    return tuple(table) + (0,) * (length - len(table))


def cohomology_rows(model: SurfaceModel) -> list[list[str]]:
    cols = [model.h_Z, _pad(model.h_D), model.hc_Y, model.h_Y, model.h_rel]
    return [[str(i)] + [str(c[i]) for c in cols] for i in range(5)]


COHOMOLOGY_HEADER = ["i", "h^i(Z)", "h^i(D)", "h^i_c(Y)", "h^i(Y)", "dim H^i(Y,Y_b)"]


def _grid(header: list[str], rows: list[list[str]], markdown: bool) -> str:
    if markdown:
        out = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
        out += ["| " + " | ".join(r) + " |" for r in rows]
        return "\n".join(out)
    widths = [max(len(x) for x in col) for col in zip(header, *rows)]
    fmt = lambda r: "  ".join(x.rjust(w) for x, w in zip(r, widths))  # noqa: E731
    return "\n".join([fmt(header)] + [fmt(r) for r in rows])


def surface_json(model: SurfaceModel) -> dict:
    asm = model.assembly
    return {
        "d": model.d,
        "euler_Z": model.euler_Z,
        "h_Z": list(model.h_Z),
        "h_D": list(model.h_D),
        "hc_Y": list(model.hc_Y),
        "h_Y": list(model.h_Y),
        "h_rel": list(model.h_rel),
        "fiber_monodromy": model.fiber_monodromy.to_json_obj(),
        "ell": asm.ell.to_json_obj(),
        "boundary": asm.boundary.to_json_obj(),
        "T_rel": model.T_rel.to_json_obj(),
        "N_rel": model.N_rel.to_json_obj(),
        "jordan_partition": list(jordan_profile(model.N_rel).partition),
        "invariants": asm.invariant_checks(),
    }


def surface_text(model: SurfaceModel) -> str:
    asm = model.assembly
    parts = [
        f"d = {model.d}   e(Z) = {model.euler_Z}",
        _grid(COHOMOLOGY_HEADER, cohomology_rows(model), markdown=False),
        "",
        "basis of H_2(Y,Y_b): " + ", ".join([f"a{i + 1}" for i in range(asm.a_dim)] + ["e~1", "e~2"]),
        "fiber monodromy on H_1(Y_b):",
        model.fiber_monodromy.pretty(),
        "T_rel:",
        model.T_rel.pretty(),
        "N_rel = log T_rel:",
        model.N_rel.pretty(),
        f"Jordan partition: {format_partition(jordan_profile(model.N_rel).partition)}",
    ]
    parts += [f"  {name}: {'ok' if ok else 'FAILED'}" for name, ok in asm.invariant_checks().items()]
    return "\n".join(parts) + "\n"


def _hodge_rows(r: ConjectureReport) -> list[list[str]]:
    rows = []
    for p in range(3):
        for q in range(3):
            h = "-" if r.h is None else str(r.h[p, q])
            x = "-" if r.x is None else str(r.x[p, 2 - q])
            rows.append([f"({p},{q})", h, str(r.f[p, q]), x])
    return rows


def _status(c: Check, color: bool) -> str:
    if not color:
        return c.value
    return f"{_COLORS[c.value]}{c.value}{_RESET}"


def report_text(r: ConjectureReport, *, markdown: bool = False, color: bool = False) -> str:
    color = color and not markdown
    head = f"## d = {r.d}" if markdown else f"=== d = {r.d} ==="
    fano = "yes" if r.fano_type else "no"
    lines = [
        head,
        "",
        _grid(COHOMOLOGY_HEADER, cohomology_rows(r.model), markdown),
        "",
        f"Jordan partition of N on H^2(Y,Y_b): {format_partition(r.partition)}; Fano type: {fano}",
        "",
        _grid(["(p,q)", "h^{p,q}(Y,w)", "f^{p,q}(Y,w)", "h^{p,2-q}(X)"], _hodge_rows(r), markdown),
        "",
    ]
    check_rows = [[name, _status(c, color)] for name, c in r.checks().items()]
    lines.append(_grid(["check", "result"], check_rows, markdown))
    io = r.i_obstruction
    note = " (extension of the d = 9 argument)" if io.extension and io.divisor else ""
    lines += ["", f"i-obstruction: {io.verdict.value}{note}", f"  {io.reason}", ""]
    return "\n".join(lines)


def reports_json(reports: list[ConjectureReport]) -> str:
    objs = [r.to_json_obj() for r in reports]
    return dumps(objs[0] if len(objs) == 1 else objs)
