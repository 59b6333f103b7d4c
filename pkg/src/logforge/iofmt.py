"""Text exporters: FLINT polynomial strings, y-cruncher series lists, LP files
and the search report with a machine-readable footer."""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from mpmath import libmp

from .multival import MultiValuation, build_system
from .numerics import bits_to_digits, ln_basis
from .search import SearchConfig, SolutionPool, default_bounds, validate_basis
from .series import FlintSeries, YCruncherSeries

DEFAULT_RESULTS = "logresults.txt"
RULE = "-" * 54
FOOTER_BEGIN = "BEGIN LOGFORGE SYSTEM"
FOOTER_END = "END LOGFORGE SYSTEM"


def poly_string(poly: Sequence[int]) -> str:
    return " ".join(str(int(c)) for c in [len(poly), *poly])


def flint_strings(series: FlintSeries) -> tuple[str, str, str, str]:
    return tuple(poly_string(p) for p in (series.polyA, series.polyB, series.polyP, series.polyQ))


def _vec(xs) -> str:
    return "[" + ", ".join(_num(x) for x in xs) + "]"


def _num(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(int(x))


def _g6(x: float) -> str:
    return format(x, ".6g")


def _yc_block(y: YCruncherSeries) -> str:
    return f"[[{y.coefP}, {y.coefD}], {_vec(y.polyP)}, {_vec(y.polyR)}, {_vec(y.polyQ)}]"


# -- y-cruncher -------------------------------------------------------------------


def ycruncher_export(mv: MultiValuation) -> str:
    """Per-series [[coefP, coefD], P, R, Q] lists followed by the log combinations."""
    if mv is None or mv.n == 0:
        raise ValueError("nothing to export: the system has no series")
    lines = ["YCRUNCHER SERIES", f"BASIS {_vec(mv.basis)}"]
    for i, y in enumerate(mv.ycruncher(), 1):
        lines.append(f"S{i} {_yc_block(y)}")
    for p, row in zip(mv.basis, mv.Xinv):
        lines.append(f"LOG {p} = {_vec(row)}")
    lines.append("END")
    return "\n".join(lines) + "\n"


_INT_LIST = re.compile(r"\[([^\[\]]*)\]")


def _ints(s: str) -> tuple[int, ...]:
    s = s.strip()
    return tuple(int(t) for t in s.split(",")) if s else ()


def parse_ycruncher(text: str) -> dict:
    """Inverse of :func:`ycruncher_export`."""
    basis: tuple[int, ...] = ()
    series: list[YCruncherSeries] = []
    logs: dict[int, list[Fraction]] = {}
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("BASIS"):
            basis = _ints(line[len("BASIS"):].strip()[1:-1])
        elif re.match(r"S\d+ ", line):
            groups = _INT_LIST.findall(line)
            if len(groups) != 4:
                raise ValueError(f"malformed series line: {line}")
            cp, cd = _ints(groups[0])
            series.append(YCruncherSeries(cp, cd, _ints(groups[1]), _ints(groups[2]), _ints(groups[3])))
        elif line.startswith("LOG "):
            head, _, body = line[4:].partition("=")
            body = body.strip()[1:-1]
            logs[int(head)] = [Fraction(t.strip()) for t in body.split(",")]
    if not series:
        raise ValueError("no series found")
    return {"basis": basis, "series": series, "logs": logs}


# -- LP file ------------------------------------------------------------------


def _lp_real(x) -> str:
    return format(float(x), ".15g")


def lp_export(
    basis: Sequence[int],
    bits_b: int,
    tol,
    scale=1,
    epsil=Fraction(5, 10 ** 6),
    bounds: Optional[Sequence[int]] = None,
    prec_bits: Optional[int] = None,
) -> str:
    """MILP model: minimise x . log(basis) subject to epsil <= x . log(basis) <= tol."""
    if not basis:
        raise ValueError("basis must not be empty")
    basis = validate_basis(basis)
    if bounds is None:
        bounds = default_bounds(basis, bits_b, scale)
    if len(bounds) != len(basis):
        raise ValueError("one bound per basis element is required")
    prec = prec_bits or max(64, 2 * bits_b)
    digits = bits_to_digits(prec)
    names = [f"x{p}" for p in basis]
    coefs = [libmp.to_str(c._mpf, digits) for c in ln_basis(basis, prec)]
    expr = "".join(f" + {c} {x}" for c, x in zip(coefs, names))
    lines = [
        "Minimize",
        f"obj: {expr}",
        "Subject To",
        f"c1: {expr} <= {_lp_real(tol)}",
        f"c2: {expr} >= {_lp_real(epsil)}",
        "Bounds",
        *(f"-{b} <= {x} <= {b}" for b, x in zip(bounds, names)),
        "Integers",
        "".join(f" {x}" for x in names),
        "End",
    ]
    return "\n".join(lines) + "\n"


# -- report -------------------------------------------------------------------


def _objective_values(mv: MultiValuation, pool: Optional[SolutionPool]) -> list[float]:
    if pool is not None and len(mv.X.pool_indices) == mv.n:
        return [float(pool[i].epsilon) for i in mv.X.pool_indices]
    logs = ln_basis(mv.basis, 128)
    return [abs(float(sum((c * e for c, e in zip(logs, row)), logs[0] * 0))) for row in mv.X.rows]


def footer_payload(mv: MultiValuation, config: Optional[SearchConfig], pool: Optional[SolutionPool]) -> dict:
    data = {
        "basis": list(mv.basis),
        "X": [list(r) for r in mv.X.rows],
        "Xinv": [[_num(c) for c in row] for row in mv.Xinv],
        "costs": [round(c, 12) for c in mv.costs],
    }
    if config is not None:
        data.update(bits=config.bits_b, tol=str(config.tol), scale=str(config.scale))
    if pool is not None:
        data.update(method=pool.method)
        if pool.seed is not None:
            data.update(seed=pool.seed)
    return data


def report(pool: Optional[SolutionPool], mv: MultiValuation, config: Optional[SearchConfig]) -> str:
    out: list[str] = [RULE]
    if config is not None:
        bounds = list(config.bounds()) if config.scale > 0 or config.bounds_override else None
        method = pool.method if pool is not None else "given"
        out.append(
            f"({_vec(config.basis)}, bounds = {bounds if bounds else []}, bits = {config.bits_b}, "
            f"tol = {_g6(float(config.tol))}, scale = {config.scale}, method = {method}"
            + (f", nmax = {config.nmax}" if method == "lll" else "")
            + ")"
        )
    if pool is not None and pool.seed is not None:
        out += ["", "SEED", str(pool.seed), "", "TRAP (k, ds)", str(list(pool.trap or ()))]
    out += ["", "INTEGERS", _vec(mv.basis)]
    bits_b = config.bits_b if config is not None else max(mv.bits) + 1
    if config is not None and (config.scale > 0 or config.bounds_override):
        out += ["", "POWER BOUNDS", _vec(config.bounds())]
    out += ["", "BITS REQUIRED", f"{bits_b} - bit"]
    out += ["", "BITS OBTAINED", f"{_vec(mv.bits)} - bit"]
    out += [
        "",
        "BINARY SPLITTING COSTS. SERIES, TOTAL & PER COMPUTED LOG",
        "[" + ", ".join(_g6(c) for c in mv.costs) + "]",
        _g6(mv.total_cost),
        _g6(mv.per_log_cost),
    ]
    d = _objective_values(mv, pool)
    diffs = [d[0]] + [d[i] - d[i - 1] for i in range(1, len(d))]
    rel = [1.0] + [1 - d[i - 1] / d[i] for i in range(1, len(d))]
    out += [
        "",
        "OPTIMAL OBJECTIVE FUNCTION VALUES",
        "[" + ", ".join(_g6(x) for x in d) + "]",
        "",
        "OPTIMAL DIFFERENCE FUNCTION VALUES",
        "[" + ", ".join(_g6(x) for x in diffs) + "]",
        f"MINIMUM GAP = [{_g6(min(diffs))}]",
        "",
        "OPTIMAL RELATIVE DIFFERENCES",
        "[" + ", ".join(_g6(x) for x in rel) + "]",
    ]
    if pool is not None:
        out += ["", f"POOL SIZE = {len(pool)}"]
    out += ["", "SOLUTION X = [x_ij] MATRIX", *(_vec(r) for r in mv.X.rows)]
    out += ["", "LINEAR COMBINATION COEFFICIENTS X^(-1)", *(_vec(r) for r in mv.Xinv)]
    out += ["", "FLINT HYPERGEOMETRIC POLYNOMIALS [PolA, PolB, PolP, PolQ]"]
    out += ["[" + ", ".join(f'"{s}"' for s in flint_strings(f)) + "]" for f in mv.flint]
    out += ["", "Y-CRUNCHER HYPERGEOMETRIC POLYNOMIALS [[CoefP, CoefD], PolP, PolR, PolQ]"]
    out += [_yc_block(y) for y in mv.ycruncher()]
    out += ["", "HYPERGEOMETRIC SERIES PARAMETERS [Alpha, Beta, Gamma, Nu, Delta]"]
    out += [_vec(p.as_tuple()) for p in mv.params]
    out += ["", FOOTER_BEGIN, json.dumps(footer_payload(mv, config, pool), sort_keys=True), FOOTER_END]
    out.append(RULE)
    return "\n".join(out) + "\n"


def append_report(text: str, path: str | Path = DEFAULT_RESULTS) -> Path:
    path = Path(path)
    with path.open("a", encoding="ascii") as fh:
        fh.write(text)
    return path


def parse_footers(text: str) -> list[dict]:
    """Every footer payload in a (possibly multi-report) results file, in order."""
    found = []
    pattern = re.compile(re.escape(FOOTER_BEGIN) + r"\s*\n(.*?)\n\s*" + re.escape(FOOTER_END), re.S)
    for m in pattern.finditer(text):
        found.append(json.loads(m.group(1)))
    return found


def load_system(path: str | Path, basis: Optional[Sequence[int]] = None) -> MultiValuation:
    """Rebuild the last stored system, or the last one over ``basis`` when given."""
    footers = parse_footers(Path(path).read_text(encoding="ascii"))
    if basis is not None:
        want = list(basis)
        footers = [f for f in footers if f["basis"] == want]
    if not footers:
        raise ValueError(f"no stored system found in {path}")
    f = footers[-1]
    return build_system(f["basis"], f["X"])
