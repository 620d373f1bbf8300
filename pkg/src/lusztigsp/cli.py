"""Command-line front end.

Every subcommand prints one report. Exit status is 0 on success and 2 when an
input is rejected or a size cap is hit; mismatches reported inside a
successful run never change the exit status.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import lusztig, orbits, padic, qforms
from .ffield import DEFAULT_TOL, FieldSpec
from .liealg import NotInAlgebra, NotNilpotent

SIG_DIGITS = 12


class InputError(ValueError):
    pass


# -- serialization ----------------------------------------------------------------


def canonical(obj):
    """Plain JSON-able data with rounded floats and complex numbers as {re, im}."""
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": canonical(obj.real), "im": canonical(obj.imag)}
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return str(x)
        x = float(f"{x:.{SIG_DIGITS}g}")
        return 0.0 if x == 0 else x
    return obj


def dumps_json(payload) -> str:
    return json.dumps(canonical(payload), sort_keys=True, indent=2) + "\n"


def _cell(v):
    v = canonical(v)
    return json.dumps(v, sort_keys=True, separators=(",", ":")) if isinstance(v, (dict, list)) else v


def dumps_csv(records: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in records:
        w.writerow([_cell(r.get(c)) for c in columns])
    return buf.getvalue()


def dumps_text(records: list[dict], columns: list[str]) -> str:
    rows = [[str(_cell(r.get(c))) for c in columns] for r in records]
    widths = [max([len(c)] + [len(row[i]) for row in rows]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines += ["  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip() for row in rows]
    return "\n".join(lines) + "\n"


class Report:
    """A JSON payload plus a flat table view for csv/text output."""

    def __init__(self, payload, records=None, columns=None):
        self.payload = payload
        if records is None:
            records = [{"key": k, "value": v} for k, v in sorted(payload.items())]
            columns = ["key", "value"]
        self.records = records
        self.columns = columns or sorted({k for r in records for k in r})

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return dumps_json(self.payload)
        if fmt == "csv":
            return dumps_csv(self.records, self.columns)
        return dumps_text(self.records, self.columns)


# -- helpers -----------------------------------------------------------------------


def _spec(args, rank=None) -> FieldSpec:
    if args.p is None:
        raise InputError("--p is required")
    return FieldSpec(args.p, rank)


def _need_n(args) -> int:
    if args.n is None:
        raise InputError("--n is required")
    if args.n < 1:
        raise InputError("n must be >= 1")
    return args.n


def _load_matrix(path: str, p: int) -> np.ndarray:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read matrix file: {exc.strerror}") from None
    except json.JSONDecodeError:
        raise InputError("matrix file is not valid JSON") from None
    if (
        not isinstance(data, list)
        or not data
        or not all(isinstance(row, list) and len(row) == len(data) for row in data)
        or not all(isinstance(x, int) and not isinstance(x, bool) for row in data for x in row)
    ):
        raise InputError("matrix must be a square JSON array of integer arrays")
    if len(data) % 2:
        raise InputError("matrix size must be even")
    return np.array(data, dtype=np.int64) % p


def _label_record(label) -> dict:
    return {
        "partition": str(label.partition),
        "forms": " ".join(f"Q{j}={Q}" for j, Q in label.nonempty_forms()),
    }


# -- subcommands -----------------------------------------------------------------


def cmd_orbits(args) -> Report:
    n = _need_n(args)
    spec = _spec(args, n)
    atlas = orbits.build_atlas(n, spec)
    payload = atlas.to_json()
    payload["num_orbits"] = len(atlas.entries)
    records = [
        {**_label_record(L), "size": size, "representative": rep.reshape(-1).tolist()}
        for L, rep, size in atlas.entries
    ]
    return Report(payload, records, ["partition", "forms", "size", "representative"])


def cmd_classify(args) -> Report:
    spec = _spec(args)
    X = _load_matrix(args.matrix_file, spec.p)
    label = orbits.classify_nilpotent(X, spec)
    return Report(label.to_json(), [_label_record(label)], ["partition", "forms"])


def cmd_lusztig(args) -> Report:
    n = _need_n(args)
    spec = _spec(args, n)
    coeffs = lusztig.lusztig_coefficients(n, spec)
    entries = [{**L.to_json(), "coefficient": c} for L, c in coeffs.items()]
    payload = {
        "n": n,
        "p": spec.p,
        "partition": lusztig.lusztig_partition(n).to_json(),
        "coefficients": entries,
        "predicted_eigenvalue": lusztig.predicted_eigenvalue(n, spec),
    }
    records = [{**_label_record(L), "coefficient": c} for L, c in coeffs.items()]
    return Report(payload, records, ["partition", "forms", "coefficient"])


def _parse_product(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise InputError("--product expects two integers, e.g. 1,1") from None
    return a, b


def cmd_ft_check(args) -> Report:
    if (args.n is None) == (args.product is None):
        raise InputError("give exactly one of --n and --product")
    if args.product is not None:
        d1, d2 = _parse_product(args.product)
        for d in (d1, d2):
            if not lusztig.is_triangular(d) or d < 1:
                raise lusztig.NotTriangular(f"{d} is not a positive triangular number")
        spec = _spec(args, max(d1, d2))
        f = lusztig.product_lusztig_function(d1, d2, spec)
        mode = {"mode": "product", "ranks": [d1, d2]}
    else:
        n = _need_n(args)
        lusztig.lusztig_partition(n)
        spec = _spec(args, n)
        f = lusztig.lusztig_function(n, spec, materialize=True)
        mode = {"mode": "single", "ranks": [n]}
    report = lusztig.eigen_check(f, spec, args.tolerance)
    payload = {**report.to_json(), **mode, "p": spec.p}
    return Report(payload)


def cmd_census(args) -> Report:
    if args.n_max is None or args.n_max < 1:
        raise InputError("n_max must be >= 1")
    rows = padic.census(args.n_max)
    records = [r.as_dict() for r in rows]
    payload = {
        "n_max": args.n_max,
        "rows": records,
        "mismatch_count": sum(r.mismatch for r in rows),
    }
    return Report(payload, records, list(padic.CensusRow.FIELDS))


def cmd_padic_catalog(args) -> Report:
    n = _need_n(args)
    p_mod_4 = _spec(args).p % 4
    dists = padic.lusztig_distributions(n, p_mod_4)
    records = [d.to_json() for d in dists]
    payload = {
        "n": n,
        "p_mod_4": p_mod_4,
        "distributions": records,
        "eigenspace_dim": len(dists),
        "stable_dim": padic.stable_subspace_dim(n),
    }
    return Report(payload, records, ["n", "vertex", "quotient", "deltas", "eigenvalue", "stable"])


def cmd_hilbert(args) -> Report:
    spec = _spec(args)
    a, b = (qforms.parse_entry(t, spec) for t in (args.a, args.b))
    value = qforms.hilbert_symbol(a.square_class, b.square_class, spec)
    return Report({"a": str(a.square_class), "b": str(b.square_class), "p": spec.p, "symbol": value})


def cmd_normalize_form(args) -> Report:
    spec = _spec(args)
    entries = [qforms.parse_entry(t, spec) for t in args.entries]
    cls = qforms.classify_diagonal_padic(entries, spec)
    m, row = qforms.padic_witt_decompose(entries, spec)
    payload = {
        "p": spec.p,
        "input": [str(e) for e in entries],
        "class": cls.to_json(),
        "hyperbolic_planes": m,
        "anisotropic": [str(e) for e in row],
        "normal_form": [str(e) for e in qforms.padic_representative(cls, spec)],
    }
    return Report(payload)


COMMANDS = {
    "orbits": (cmd_orbits, "atlas of rational nilpotent orbits with oracle sizes"),
    "classify": (cmd_classify, "orbit label of a nilpotent matrix read from a JSON file"),
    "lusztig": (cmd_lusztig, "orbit coefficients of the Lusztig function"),
    "ft-check": (cmd_ft_check, "Fourier eigenfunction check of a Lusztig function"),
    "census": (cmd_census, "counting census of p-adic Lusztig functions"),
    "padic-catalog": (cmd_padic_catalog, "p-adic Lusztig functions and their distributions"),
    "hilbert": (cmd_hilbert, "Hilbert symbol of two p-adic square classes"),
    "normalize-form": (cmd_normalize_form, "normal form of a diagonal p-adic quadratic form"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="rank (sp_2n)")
    common.add_argument("--p", type=int, help="odd prime")
    common.add_argument("--n-max", type=int, default=padic.DEFAULT_N_MAX, help="census bound")
    common.add_argument("--format", choices=["json", "csv", "text"], default="json")
    common.add_argument("--tolerance", type=float, default=DEFAULT_TOL)
    common.add_argument("--output", help="write here instead of stdout")

    parser = argparse.ArgumentParser(prog="lusztigsp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    subs = {name: sub.add_parser(name, parents=[common], help=h) for name, (_, h) in COMMANDS.items()}
    subs["classify"].add_argument("matrix_file", help="JSON array of integer rows")
    subs["ft-check"].add_argument("--product", help="two triangular ranks, e.g. 1,1")
    subs["hilbert"].add_argument("a", help="square class token, e.g. eps or -pi^-1")
    subs["hilbert"].add_argument("b")
    subs["normalize-form"].add_argument(
        "entries", nargs="+", help="diagonal entries as tokens; put -- before any starting with -"
    )
    return parser


def _message(exc: Exception) -> str:
    if isinstance(exc, NotNilpotent):
        return f"not nilpotent: {exc}"
    if isinstance(exc, NotInAlgebra):
        return f"not in sp_2n: {exc}"
    if isinstance(exc, orbits.TooLarge):
        return f"cap exceeded: {exc}"
    return str(exc)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.tolerance > 0:
        parser.error("tolerance must be > 0")
    handler = COMMANDS[args.command][0]
    try:
        report = handler(args)
    except ValueError as exc:
        print(f"error: {_message(exc)}", file=sys.stderr)
        return 2
    text = report.render(args.format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
