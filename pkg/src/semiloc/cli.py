"""Command-line entry point: ``semiloc <command> ...``.

Exit status: 0 on success, 1 when a check or certificate fails, 2 for
usage errors and invalid input.
"""

import argparse
import json
import sys

import numpy as np

from . import __version__
from . import generators as _gen
from . import io as _io
from . import local as _loc
from . import modules as _m
from . import radical as _rad
from . import suites as _suites
from .algebra import DEFAULT_BUDGET
from .errors import BudgetExceeded, CertificateFailure, ParseError, SemilocError, ValidationError

OK, FAILED, USAGE = 0, 1, 2


def _kv(key, value):
    if isinstance(value, bool):
        value = "true" if value else "false"
    elif isinstance(value, (list, tuple)):
        value = " ".join(str(v) for v in value)
    print(f"{key} = {value}")


def _vec(v):
    return [int(x) for x in np.asarray(v).reshape(-1)]


def _first(path, kind):
    return _io.load(path).first(kind)


# ---------------------------------------------------------------- commands


def cmd_validate(args):
    doc = _io.load(args.file)
    for inst in doc.instances:
        o = inst.obj
        dims = getattr(o, "dim", None)
        if dims is None:
            dims = "x".join(str(s) for s in o.matrix.shape)
        _kv(f"{inst.kind}.{inst.name}", f"ok dim={dims}")
    _kv("instances", len(doc.instances))
    return OK


def cmd_radical(args):
    A = _first(args.file, "algebra")
    rep = _rad.radical(A, args.budget)
    _kv("algebra", A.name)
    _kv("dim", A.dim)
    _kv("method", rep.method)
    _kv("radical.dim", rep.radical.dim)
    _kv("nilpotency_index", rep.nilpotency_index)
    for i, row in enumerate(rep.radical.basis):
        _kv(f"radical.basis[{i}]", _vec(row))
    return OK


def cmd_decompose(args):
    A = _first(args.file, "algebra")
    st = _rad.structure(A, args.budget)
    st.decomposition.verify()
    _kv("algebra", A.name)
    _kv("radical.dim", st.radical.dim)
    _kv("codim", st.decomposition.codim)
    _kv("blocks", len(st.blocks))
    for i, b in enumerate(st.blocks):
        _kv(f"block[{i}].n", b.n)
        _kv(f"block[{i}].k", b.k)
        _kv(f"block[{i}].central_idempotent", _vec(st.central_lifts[i]))
        _kv(f"block[{i}].primitive_idempotent", _vec(st.primitive_lifts[i]))
    for e in st.central_lifts + st.primitive_lifts:
        if not np.array_equal(A.mul(e, e), e):
            raise CertificateFailure("a lifted idempotent is not idempotent")
    return OK


def cmd_endo(args):
    M = _first(args.file, "module")
    E = _m.endo_algebra(M)
    _kv("module", M.name)
    _kv("module.dim", M.dim)
    _kv("end.dim", E.dim)
    if E.dim:
        st = _rad.structure(E.algebra, args.budget)
        _kv("end.radical.dim", st.radical.dim)
        _kv("end.codim", st.decomposition.codim)
        _kv("end.blocks", [f"{b.n}x{b.k}" for b in st.blocks])
        _kv("end.local", len(st.blocks) == 1 and st.blocks[0].n == 1)
    if args.emit:
        sys.stdout.write(_io.serialize(_io.document_for(E.algebra, name="End")))
    return OK


def cmd_dims(args):
    M = _first(args.file, "module")
    s = _m.structural_series(M, args.budget)
    _kv("module", M.name)
    _kv("module.dim", M.dim)
    _kv("goldie_dim", s.socle_length)
    _kv("dual_goldie_dim", s.top_length)
    _kv("socle.dim", s.socle.dim)
    _kv("radical_submodule.dim", s.radical_sub.dim)
    _kv("socle_multiplicities", list(s.socle_multiplicities))
    _kv("top_multiplicities", list(s.top_multiplicities))
    return OK


def cmd_check_local(args):
    phi = _first(args.file, "morphism")
    rep = _loc.is_local(phi, args.budget, seed=args.seed)
    _kv("verdict", rep.verdict)
    _kv("method", rep.method)
    _kv("elements_checked", rep.elements_checked)
    if rep.witness is not None:
        _kv("witness", list(rep.witness))
    return OK


def cmd_producte(args):
    phi = _first(args.file, "morphism")
    res = _loc.producte_decompose(phi, args.budget)
    _kv("m", res.m)
    _kv("indices", list(res.indices))
    _kv("residue_dims", list(res.residue_dims))
    for i, K in enumerate(res.maximal_ideals):
        _kv(f"maximal_ideal[{i}].dim", K.dim)
    for k in sorted(res.checks):
        _kv(f"check.{k}", res.checks[k])
    return OK if all(res.checks.values()) else FAILED


def _params(tokens):
    out = {}
    for t in tokens:
        if "=" not in t:
            raise ValidationError(f"parameter {t!r} is not key=value")
        k, v = t.split("=", 1)
        out[k.replace("-", "_")] = v
    return out


def cmd_gen(args):
    insts = _gen.generate(args.family, _params(args.params), args.seed, args.count)
    sys.stdout.write(_io.serialize(_io.Document(insts)))
    return OK


def _progress(rec):
    print(f"# {rec.index} {'pass' if rec.ok else 'FAIL'} {rec.error}".rstrip(), file=sys.stderr)


def cmd_verify(args):
    if args.suite not in _suites.SUITES:
        print(f"unknown suite {args.suite!r}; known: {' '.join(_suites.SUITES)}", file=sys.stderr)
        return USAGE
    rep = _suites.run_suite(
        args.suite, args.count, args.seed, args.budget, args.fail_fast, _progress if args.verbose else None
    )
    sys.stdout.write(rep.to_text())
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(rep.to_json())
    return OK if rep.ok else FAILED


def cmd_report(args):
    ids = args.suites or list(_suites.SUITES)
    bad = [sid for sid in ids if sid not in _suites.SUITES]
    if bad:
        print(f"unknown suite {bad[0]!r}", file=sys.stderr)
        return USAGE
    reports = []
    with open(args.out, "w") as fh:
        for sid in ids:
            rep = _suites.run_suite(sid, args.count, args.seed, args.budget)
            fh.write(rep.to_text())
            fh.write("\n")
            reports.append(rep)
            print(f"{sid}: {rep.passed}/{len(rep.records)} passed ({rep.wall_time:.1f}s)")
    summary = {
        "seed": args.seed,
        "count": args.count,
        "budget": args.budget,
        "suites": {r.suite: {"passed": r.passed, "failed": r.failed, "census": r.census} for r in reports},
    }
    with open(args.out + ".json", "w") as fh:
        json.dump(summary, fh, indent=1, sort_keys=True)
    return OK if all(r.ok for r in reports) else FAILED


# ---------------------------------------------------------------- parser


def build_parser():
    ap = argparse.ArgumentParser(prog="semiloc", description="Finite algebras, local morphisms and endomorphism rings.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def with_budget(p):
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="enumeration budget (elements)")
        return p

    p = sub.add_parser("validate", help="parse and validate an instance file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    for name, fn, what in (
        ("radical", cmd_radical, "Jacobson radical of the first algebra"),
        ("decompose", cmd_decompose, "Wedderburn block data and lifted idempotents"),
    ):
        p = with_budget(sub.add_parser(name, help=what))
        p.add_argument("file")
        p.set_defaults(func=fn)

    p = with_budget(sub.add_parser("endo", help="endomorphism algebra of the first module"))
    p.add_argument("file")
    p.add_argument("--emit", action="store_true", help="also print End(M) as an instance file")
    p.set_defaults(func=cmd_endo)

    p = with_budget(sub.add_parser("dims", help="Goldie and dual Goldie dimension of the first module"))
    p.add_argument("file")
    p.set_defaults(func=cmd_dims)

    p = with_budget(sub.add_parser("check-local", help="decide locality of the first morphism"))
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=0, help="seed for sampling above the budget")
    p.set_defaults(func=cmd_check_local)

    p = with_budget(sub.add_parser("producte", help="support-induction decomposition into field factors"))
    p.add_argument("file")
    p.set_defaults(func=cmd_producte)

    p = sub.add_parser("gen", help="generate instances of an algebra family")
    p.add_argument("family", choices=sorted(_gen.FAMILIES))
    p.add_argument("params", nargs="*", help="key=value family parameters")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(func=cmd_gen)

    p = with_budget(sub.add_parser("verify", help="run one verification suite"))
    p.add_argument("suite", help=" ".join(_suites.SUITES))
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fail-fast", action="store_true")
    p.add_argument("--json", metavar="PATH", help="also write the JSON report here")
    p.add_argument("-v", "--verbose", action="store_true", help="per-instance progress on stderr")
    p.set_defaults(func=cmd_verify)

    p = with_budget(sub.add_parser("report", help="run suites and write a combined report"))
    p.add_argument("--out", required=True)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--suites", nargs="*", help="subset of suite ids (default: all)")
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE
    try:
        return args.func(args)
    except (CertificateFailure, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED
    except (ValidationError, ParseError, BudgetExceeded, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except SemilocError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return FAILED


def main_exit():
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_exit()
