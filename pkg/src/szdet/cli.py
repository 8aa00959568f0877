"""Command-line surface: parse orbifold documents, compute, verify.

Subcommands
    mn      --orbifold DOC --n-max N        trivial-zero multiplicity table
    detsq   --orbifold DOC --z RE[,IM]      det^2 and its constituents
    verify  SUITE                           run invariant suites

Common flags: --prec <bits> (default 256), --cutoff-norm <real>
(default 1e6), --format json|csv (default json).

Exit codes: 0 ok, 2 domain error, 64 usage, 70 internal.

The orbifold document is JSON:

    {
      "schema": 1,
      "genus": 0, "cusps": 1, "rep_dim": 1,
      "elliptic": [{"order": 2, "exponents": [0]},
                   {"order": 3, "exponents": [0]}],
      "cusp_data": [{"fixed_dim": 1, "angles": []}],
      "scattering": {"model": "modular"}          // or {"model": "generic",
                                                  //     "file": "terms.dat"}
    }

"modular" scattering is permitted only with the modular signature and a
trivial one-dimensional representation.  Every numeric cell in the output
carries its precision in bits and a certified digit count; rows with a
truncation tail carry it in the ``tail`` column.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import Optional

from mpmath import mp, mpc, mpf

from . import regdet, verify, zetas
from .elliptic import m_n_floor, m_n_spectral
from .errors import SZDetError
from .gfuncs import log_g1
from .numerics import DEFAULT_PREC, to_scalar
from .orbifold import (
    CuspData,
    OrbifoldData,
    RepresentationData,
    Signature,
    modular_signature,
    trivial_rep,
)

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_USAGE = 64
EXIT_INTERNAL = 70


class UsageError(Exception):
    pass


class DocumentError(Exception):
    """Orbifold document failed validation; message carries the field path."""


@dataclass
class ResultRow:
    label: str
    value: object  # mpf/mpc/int
    prec_bits: int
    tail: Optional[object] = None

    def digits(self) -> int:
        """Certified decimal digits: from the tail bound when present."""
        full = int(self.prec_bits * 0.30103)
        if self.tail is None:
            return full
        with mp.workprec(64):
            t = abs(to_scalar(self.tail, 64))
            if t == 0:
                return full
            v = abs(to_scalar(self.value, 64))
            if v == 0:
                return 0
            rel = t / v
            if rel >= 1:
                return 0
            return min(full, int(-mp.log10(rel)))


def _row_dict(row: ResultRow) -> dict:
    with mp.workprec(row.prec_bits):
        v = mp.mpc(to_scalar(row.value, row.prec_bits))
        digits = int(row.prec_bits * 0.30103) + 2
        out = {
            "label": row.label,
            "re": mp.nstr(v.real, digits),
            "im": mp.nstr(v.imag, digits),
            "prec_bits": row.prec_bits,
            "certified_digits": row.digits(),
            "tail": mp.nstr(to_scalar(row.tail, 64), 4) if row.tail is not None else None,
        }
    return out


def emit_table(rows: list[ResultRow], fmt: str, meta: dict) -> str:
    dicts = [_row_dict(r) for r in rows]
    if fmt == "json":
        return json.dumps({"schema": 1, **meta, "rows": dicts}, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(
        buf, fieldnames=["label", "re", "im", "prec_bits", "certified_digits", "tail"]
    )
    writer.writeheader()
    for d in dicts:
        writer.writerow(d)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Orbifold document
# ---------------------------------------------------------------------------


def parse_orbifold_document(doc: dict):
    """Validate a JSON document into (OrbifoldData, scattering model or None)."""

    def fail(path, msg):
        raise DocumentError(f"{path}: {msg}")

    if not isinstance(doc, dict):
        fail("$", "document must be a JSON object")
    if doc.get("schema", 1) != 1:
        fail("schema", f"unsupported schema version {doc.get('schema')}")
    for key in ("genus", "cusps", "rep_dim"):
        if key not in doc:
            fail(key, "missing required field")
        if not isinstance(doc[key], int):
            fail(key, f"expected an integer, got {doc[key]!r}")
    elliptic_spec = doc.get("elliptic", [])
    orders, exponents = [], []
    for i, e in enumerate(elliptic_spec):
        if "order" not in e or "exponents" not in e:
            fail(f"elliptic[{i}]", "needs 'order' and 'exponents'")
        orders.append(e["order"])
        exponents.append(tuple(e["exponents"]))
    h = doc["rep_dim"]
    cusp_spec = doc.get(
        "cusp_data", [{"fixed_dim": h, "angles": []}] * doc["cusps"]
    )
    cusps = []
    for i, cd in enumerate(cusp_spec):
        if "fixed_dim" not in cd:
            fail(f"cusp_data[{i}]", "needs 'fixed_dim'")
        cusps.append(CuspData(cd["fixed_dim"], tuple(cd.get("angles", ()))))
    try:
        sig = Signature(doc["genus"], doc["cusps"], tuple(orders))
        rep = RepresentationData(h, tuple(exponents), tuple(cusps))
        orb = OrbifoldData(sig, rep)
    except SZDetError as exc:
        raise DocumentError(f"orbifold: {exc}") from exc

    scattering = None
    sc = doc.get("scattering")
    if sc is not None:
        model = sc.get("model")
        if model == "modular":
            if sig != modular_signature() or rep != trivial_rep(sig, 1):
                fail(
                    "scattering.model",
                    "'modular' requires the modular signature (0;1;2,3) "
                    "with the trivial 1-dimensional representation",
                )
            scattering = zetas.ModularScattering()
        elif model == "generic":
            if "file" not in sc:
                fail("scattering.file", "generic scattering needs a data file")
            try:
                scattering = zetas.load_generic_scattering(sc["file"])
            except (OSError, SZDetError, ValueError) as exc:
                fail("scattering.file", str(exc))
        else:
            fail("scattering.model", f"unknown model {model!r}")
    return orb, scattering


def _load_document(path: str):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise DocumentError(f"orbifold file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DocumentError(f"orbifold file line {exc.lineno}: {exc.msg}") from exc
    return parse_orbifold_document(doc)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_mn(orb: OrbifoldData, n_max: int, prec: int, fmt: str) -> str:
    rows = []
    for n in range(n_max + 1):
        fl = m_n_floor(orb, n)
        sp = m_n_spectral(orb, n, prec)
        rows.append(ResultRow(f"m_{n}", fl, prec))
        rows.append(ResultRow(f"spectral_residual_{n}", sp - fl, prec))
    return emit_table(rows, fmt, {"command": "mn", "precision_bits": prec})


def _parse_z(text: str):
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return mpf(parts[0])
        if len(parts) == 2:
            return mpc(mpf(parts[0]), mpf(parts[1]))
    except ValueError:
        pass
    raise UsageError(f"cannot parse --z value {text!r}; use RE or RE,IM")


def cmd_detsq(orb, scattering, z, prec: int, cutoff, fmt: str) -> str:
    if scattering is None:
        raise DocumentError(
            "scattering: detsq needs a scattering model in the document"
        )
    with mp.workprec(prec + 8):
        zz = to_scalar(z, prec + 8)
        if (zz.real if isinstance(zz, mpc) else zz) <= 1:
            raise SZDetError("Euler-product domain requires Re(z)>1")
    ctx = regdet.SurfaceContext(
        orb, zetas.ModularGeodesicSource(dim=orb.dim), scattering,
        prec=prec, cutoff_norm=cutoff,
    )
    with mp.workprec(prec + 8):
        logz = ctx.log_z(to_scalar(z, prec))
        det = regdet.det_squared(ctx, z)
        dp = regdet.d_plus(ctx, z)
        dm = regdet.d_minus(ctx, z)
        phi = zetas.scattering_phi(scattering, z, prec)
        g1 = mp.exp(log_g1(orb, to_scalar(z, prec + 8), prec))
        two_path = abs(det - dp * dm) / abs(det)
        ok = two_path < mpf(2) ** (-prec // 2)
    rows = [
        ResultRow("det_squared", det, prec, tail=logz.tail_bound),
        ResultRow("d_plus", dp, prec, tail=logz.tail_bound),
        ResultRow("d_minus", dm, prec, tail=logz.tail_bound),
        ResultRow("phi", phi, prec),
        ResultRow("selberg_z_truncated", mp.exp(logz.value), prec, tail=logz.tail_bound),
        ResultRow("g1", g1, prec),
        ResultRow("log_z_tail_bound", logz.tail_bound, prec),
        ResultRow("two_path_residual", two_path, prec),
        ResultRow("two_path_ok", 1 if ok else 0, prec),
    ]
    return emit_table(rows, fmt, {"command": "detsq", "precision_bits": prec})


def cmd_verify(suite: str, prec: int, out=None) -> int:
    out = out if out is not None else sys.stdout
    try:
        results = verify.run_suite(suite, prec)
    except KeyError:
        raise UsageError(
            f"unknown suite {suite!r}; choose from elliptic, special, "
            "scattering, regdet, all"
        )
    failed = 0
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        detail = f"  ({r.detail})" if r.detail else ""
        print(f"[{status}] {r.name}{detail}", file=out)
        failed += 0 if r.ok else 1
    print(f"{len(results) - failed}/{len(results)} checks passed", file=out)
    return EXIT_OK if failed == 0 else 1


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> _Parser:
    p = _Parser(prog="szdet", description=__doc__,
                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--prec", type=int, default=DEFAULT_PREC,
                        help="working precision in bits (default 256)")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--orbifold", required=True,
                        help="path to the orbifold JSON document")

    mn = sub.add_parser("mn", help="trivial-zero multiplicity table")
    common(mn)
    mn.add_argument("--n-max", type=int, default=10)

    dq = sub.add_parser("detsq", help="regularized determinant at z")
    common(dq)
    dq.add_argument("--z", required=True, help="evaluation point RE or RE,IM")
    dq.add_argument("--cutoff-norm", type=float, default=1e6,
                    help="Euler-product norm cutoff (default 1e6)")

    vf = sub.add_parser("verify", help="run invariant suites")
    vf.add_argument("suite",
                    help="elliptic | special | scattering | regdet | all")
    vf.add_argument("--prec", type=int, default=192)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "verify":
            return cmd_verify(args.suite, args.prec)
        orb, scattering = _load_document(args.orbifold)
        if args.command == "mn":
            if args.n_max < 0:
                raise UsageError("--n-max must be nonnegative")
            sys.stdout.write(cmd_mn(orb, args.n_max, args.prec, args.format))
            return EXIT_OK
        if args.command == "detsq":
            z = _parse_z(args.z)
            sys.stdout.write(
                cmd_detsq(orb, scattering, z, args.prec, args.cutoff_norm,
                          args.format)
            )
            return EXIT_OK
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SZDetError, DocumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except Exception as exc:  # pragma: no cover - internal failure path
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
