"""Command-line front end.

Exit codes: 0 ok, 2 bad parameters, 3 unreadable input, 10 a checked
necessary condition is violated (or the expected RFK minimizer lost).
Every run writes its result file and a ``<result>.manifest.json`` into
``--out-dir``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np
import scipy

from . import __version__
from .eigen1d import eigen_frac1d
from .errors import DomainError, FracSpecError, ParameterError
from .fraclap import eigen_residual, fraclap_matrix_1d, fraclap_matrix_2d, lambda1
from .grids import DomainMask2D, Grid1D, GridFn1D
from .inequalities import hartman_wintner_check, lyapunov_check, rfk_sweep
from .kernel import KernelParams, eval_G, eval_K, sup_G_diag
from .shapes import builtin_mask

EXIT_OK = 0
EXIT_PARAM = 2
EXIT_IO = 3
EXIT_VIOLATED = 10


class InputError(FracSpecError):
    """An input file could not be read or parsed."""


@dataclass
class RunManifest:
    command: str
    parameters: dict
    versions: str
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())
    outputs: list[str] = field(default_factory=list)


def _versions() -> str:
    return f"fracspec {__version__}; numpy {np.__version__}; scipy {scipy.__version__}"


def _emit(args, command: str, filename: str, text: str) -> None:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / filename
    path.write_text(text)
    params = {k: v for k, v in vars(args).items() if k not in ("func", "out_dir")}
    params["argv"] = list(args.argv)
    manifest = RunManifest(command, params, _versions(), outputs=[str(path)])
    (out_dir / f"{filename}.manifest.json").write_text(
        json.dumps(asdict(manifest), indent=2, sort_keys=True) + "\n"
    )
    sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


# -- kernel -------------------------------------------------------------------


def cmd_kernel(args) -> int:
    p = KernelParams(args.alpha, args.a, args.b)
    if args.diag_sup:
        x_star, value = sup_G_diag(p)
        result = {"x_star": x_star, "value": value}
    else:
        if args.x is None or args.t is None:
            raise ParameterError("give both --x and --t, or --diag-sup")
        ev = (eval_G if args.kernel == "G" else eval_K)(p, args.x, args.t)
        result = {"kernel": args.kernel, **asdict(ev)}
    _emit(args, "kernel", "kernel.json", _json(result))
    return EXIT_OK


# -- eigen --------------------------------------------------------------------


def _table(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def cmd_eigen_frac1d(args) -> int:
    p = KernelParams(args.alpha, args.a, args.b)
    res = eigen_frac1d(p, args.n, args.k, grading=args.grading)
    rows = [(j + 1, float(m), float(r)) for j, (m, r) in enumerate(zip(res.eigenvalues, res.residuals))]
    _emit(args, "eigen frac1d", "eigen_frac1d.csv", _table(["index", "eigenvalue", "residual"], rows))
    return EXIT_OK


def _load_mask(path) -> DomainMask2D:
    try:
        return DomainMask2D.load(path)
    except OSError as exc:
        raise InputError(f"cannot read mask file {path}: {exc}") from exc
    except ParameterError as exc:
        raise InputError(f"malformed mask file {path}: {exc}") from exc


def cmd_eigen_fraclap(args) -> int:
    if args.mask is not None:
        m = fraclap_matrix_2d(_load_mask(args.mask), args.s)
    else:
        if args.length is None:
            raise ParameterError("give --length (with --n) or --mask")
        m = fraclap_matrix_1d(args.n, args.s, args.length)
    lam, phi = lambda1(m)
    resid = eigen_residual(m, lam, phi)
    _emit(args, "eigen fraclap", "eigen_fraclap.csv", _table(["index", "eigenvalue", "residual"], [(1, lam, resid)]))
    return EXIT_OK


# -- check --------------------------------------------------------------------


def _read_profile(path) -> GridFn1D:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read potential file {path}: {exc}") from exc
    try:
        reader = csv.DictReader(io.StringIO(text))
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != ["x", "q"]:
            raise ValueError("header must be 'x,q'")
        rows = [(float(r["x"]), float(r["q"])) for r in reader]
        if len(rows) < 3:
            raise ValueError("need at least 3 rows")
        x, q = np.array(rows).T
        return GridFn1D(Grid1D(x), q)
    except (ValueError, KeyError, TypeError, ParameterError) as exc:
        raise InputError(f"malformed potential file {path}: {exc}") from exc


def cmd_check(args) -> int:
    if args.q_file is not None:
        q = _read_profile(args.q_file)
    elif args.q_const is not None:
        grid = Grid1D.uniform(args.a, args.b, args.n)
        q = GridFn1D(grid, np.full(grid.n, float(args.q_const)))
    else:
        raise ParameterError("give --q-const or --q-file")
    check = lyapunov_check if args.which == "lyapunov" else hartman_wintner_check
    report = check(q, args.alpha, args.lambda1, interval=(args.a, args.b))
    _emit(args, f"check {args.which}", f"check_{args.which}.json", report.to_json() + "\n")
    return EXIT_OK if report.satisfied else EXIT_VIOLATED


# -- rfk ----------------------------------------------------------------------


def _expected_minimizer(ids) -> str | None:
    if "disk" in ids:
        return "disk"
    if "square" in ids:
        return "square"
    return None


def cmd_rfk(args) -> int:
    if args.shapes is not None:
        files = sorted(Path(args.shapes).glob("*.txt"))
        if not files:
            raise InputError(f"no mask files (*.txt) in {args.shapes}")
        shapes = {f.stem: _load_mask(f) for f in files}
    elif args.builtin is not None:
        if args.cells is None:
            raise ParameterError("--builtin needs --cells")
        names = [s.strip() for s in args.builtin.split(",") if s.strip()]
        shapes = {name: builtin_mask(name, args.cells, args.h) for name in names}
    else:
        raise ParameterError("give --shapes DIR or --builtin LIST")
    table = rfk_sweep(shapes, (args.a, args.b), args.alpha, args.s, n_1d=args.n_1d)
    _emit(args, "rfk", "rfk.csv", table.to_csv())
    expected = _expected_minimizer(shapes)
    if expected is not None and table.minimizer != expected:
        print(f"expected minimizer {expected!r}, got {table.minimizer!r}", file=sys.stderr)
        return EXIT_VIOLATED
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def _interval(p: argparse.ArgumentParser, alpha=True):
    if alpha:
        p.add_argument("--alpha", type=float, required=True, help="fractional order in (1/2, 1]")
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--b", type=float, default=1.0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fracspec", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=_versions())
    parser.add_argument("--out-dir", default=".", help="directory for result and manifest files")
    sub = parser.add_subparsers(dest="command", required=True)

    k = sub.add_parser("kernel", help="evaluate K or G, or the supremum of G on the diagonal")
    _interval(k)
    k.add_argument("--x", type=float)
    k.add_argument("--t", type=float)
    k.add_argument("--kernel", choices=("K", "G"), default="K")
    k.add_argument("--diag-sup", action="store_true")
    k.set_defaults(func=cmd_kernel)

    e = sub.add_parser("eigen", help="eigenvalue solvers")
    esub = e.add_subparsers(dest="solver", required=True)
    f1 = esub.add_parser("frac1d", help="Dirichlet eigenvalues of the 1D fractional operator")
    _interval(f1)
    f1.add_argument("--n", type=int, default=256)
    f1.add_argument("--k", type=int, default=1)
    f1.add_argument("--grading", type=float, default=1.0)
    f1.set_defaults(func=cmd_eigen_frac1d)
    fl = esub.add_parser("fraclap", help="first eigenvalue of the fractional Laplacian")
    fl.add_argument("--s", type=float, required=True)
    fl.add_argument("--length", type=float)
    fl.add_argument("--n", type=int, default=512)
    fl.add_argument("--mask", help="mask file (header h=<real>, rows of 0/1)")
    fl.set_defaults(func=cmd_eigen_fraclap)

    c = sub.add_parser("check", help="audit the Lyapunov or Hartman-Wintner inequality")
    c.add_argument("which", choices=("lyapunov", "hartman-wintner"))
    _interval(c)
    c.add_argument("--lambda1", type=float, required=True)
    c.add_argument("--q-const", type=float)
    c.add_argument("--q-file", help="CSV with header x,q")
    c.add_argument("--n", type=int, default=1001, help="grid nodes for --q-const")
    c.set_defaults(func=cmd_check)

    r = sub.add_parser("rfk", help="first eigenvalues over cross-sections of equal measure")
    _interval(r)
    r.add_argument("--s", type=float, required=True)
    r.add_argument("--shapes", help="directory of mask files (*.txt)")
    r.add_argument("--builtin", help="comma list from disk,square,rect<r>")
    r.add_argument("--cells", type=int)
    r.add_argument("--h", type=float, default=1 / 24)
    r.add_argument("--n-1d", type=int, default=128)
    r.set_defaults(func=cmd_rfk)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.argv = argv
    try:
        return args.func(args)
    except InputError as exc:
        print(f"fracspec: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ParameterError, DomainError) as exc:
        # points outside the interval are bad arguments too
        print(f"fracspec: {exc}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
