"""Command-line front end.

Every verb reads a ring or monoid description, dispatches to the library,
and writes a versioned JSON document (or DOT / plain text) with a manifest
recording the input digest, the bounds used, and the certificate kind of
every reported fact.  Identical (config, seed) pairs produce byte-identical
output.  Exit codes: 0 success, 2 invalid configuration, 3 a verdict came
back unknown (never conflated with false), 4 internal invariant breach.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import kernels
from .common import Verdict
from .matrices import Idem, Mat, format_matrix, parse_matrix
from .monoids import (INF, LambdaSigma, chain_monoid, check_cu_axioms,
                      compacts, natbar_monoid, natbar_power, natural_monoid,
                      nsd_monoid, zero_infinity_monoid, zero_infinity_table)
from .rings import RingError, parse_ring_spec, ring_from_spec_text, \
    ring_to_spec_text
from .seqcp import (OPEN, STABILIZED, ColIdem, SeqElem, idem_to_seq,
                    is_compact_seq, seq_leq, seq_sup, seq_to_idem,
                    splitting_check, validate_seq)
from .subequiv import precsim1
from . import diagonal, dot, shift, states, wr

SCHEMA = "ringcomp/1"

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_UNKNOWN = 3
EXIT_BREACH = 4


class ConfigError(Exception):
    pass


class UnknownVerdict(Exception):
    pass


# -- serialization -------------------------------------------------------


def jsonable(obj):
    """Recursive conversion to JSON-compatible values, deterministically."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return "inf" if math.isinf(obj) else obj
    if isinstance(obj, Fraction):
        return {"num": obj.numerator, "den": obj.denominator}
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [jsonable(x) for x in obj.tolist()]
    if isinstance(obj, Verdict):
        return {"verdict": obj.status, "note": obj.note,
                "witness": jsonable(obj.witness)}
    if isinstance(obj, Mat):
        return format_matrix(obj)
    if isinstance(obj, Idem):
        return format_matrix(obj.base)
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in sorted(
            obj.items(), key=lambda kv: str(kv[0]))}
    if hasattr(obj, "__dict__"):
        return {k: jsonable(v) for k, v in sorted(vars(obj).items())}
    return str(obj)


def emit(args, payload, text=None, dot_text=None):
    doc = {"schema": SCHEMA, "verb": args.verb, "config": _manifest(args)}
    doc.update(payload)
    if args.out == "json":
        out = json.dumps(jsonable(doc), sort_keys=True, indent=2) + "\n"
    elif args.out == "dot":
        if dot_text is None:
            raise ConfigError(f"verb {args.verb!r} has no DOT form")
        out = dot_text
    else:
        out = text if text is not None else \
            json.dumps(jsonable(doc), sort_keys=True, indent=2) + "\n"
    sys.stdout.write(out)


def _manifest(args):
    m = {"seed": getattr(args, "seed", None),
         "budget": getattr(args, "budget", None),
         "jobs": getattr(args, "jobs", 1),
         "backend": kernels.BACKEND}
    ring = getattr(args, "_ring", None)
    if ring is not None:
        spec = ring_to_spec_text(ring)
        m["ring"] = ring.spec_string()
        m["ring_digest"] = hashlib.sha256(spec.encode()).hexdigest()
    for k in ("kmax", "bound", "monoid", "variant", "tail", "depth"):
        if getattr(args, k, None) is not None:
            m[k] = getattr(args, k)
    return m


# -- input parsing -------------------------------------------------------


def load_ring(args):
    if getattr(args, "ring_file", None):
        with open(args.ring_file) as fh:
            ring = ring_from_spec_text(fh.read())
    elif getattr(args, "ring", None):
        ring = parse_ring_spec(args.ring)
    else:
        raise ConfigError("a ring is required (--ring or --ring-file)")
    args._ring = ring
    return ring


def load_monoid(name: str):
    if name == "N":
        return natural_monoid()
    if name == "Nbar":
        return natbar_monoid()
    if name.startswith("Nbar^"):
        return natbar_power(int(name[5:]))
    if name == "ZeroInf":
        return zero_infinity_monoid()
    if name == "ZeroInfTable":
        return zero_infinity_table()
    if name == "NSD":
        return nsd_monoid()
    if name.startswith("chain:"):
        return chain_monoid(int(name[6:]))
    raise ConfigError(f"unknown monoid {name!r}")


def parse_seq(ring, text: str) -> SeqElem:
    """Sequence literal: ``stages: m1 ; m2 / witnesses: w2 / tail: mode``.

    Matrix literals are the usual row-list form and are ';'-separated.
    """
    parts = {"tail": STABILIZED}
    for chunk in text.split("/"):
        chunk = chunk.strip()
        if not chunk:
            continue
        key, _, val = chunk.partition(":")
        parts[key.strip()] = val.strip()
    if "stages" not in parts:
        raise ConfigError("sequence literal needs a 'stages:' part")

    def mats(s):
        s = s.strip()
        if not s:
            return ()
        return tuple(parse_matrix(ring, lit.strip()) for lit in s.split(";"))

    stages = mats(parts["stages"])
    wits = mats(parts.get("witnesses", ""))
    tail = parts["tail"]
    if tail not in (STABILIZED, OPEN):
        raise ConfigError(f"unknown tail mode {tail!r}")
    try:
        return SeqElem(ring, stages, wits, tail)
    except ValueError as exc:
        raise ConfigError(str(exc))


def _require_known(v: Verdict, what: str):
    if v.is_unknown:
        raise UnknownVerdict(f"{what}: {v.note or 'search budget exhausted'}")
    return v


# -- verbs ---------------------------------------------------------------


def cmd_precsim(args):
    ring = load_ring(args)
    a = parse_matrix(ring, args.a)
    b = parse_matrix(ring, args.b)
    v = _require_known(precsim1(a, b, args.budget), "precsim")
    emit(args, {"result": jsonable(v)},
         text=f"{v.status}\n")


def _w_payload(w):
    labels = [format_matrix(r) for r in w.reps]
    add = {f"{i},{j}": w.add[(i, j)] for i, j in sorted(w.add)}
    cert = {f"{i},{j}": w.add_cert[(i, j)] for i, j in sorted(w.add_cert)}
    return {
        "n_classes": w.n_classes(),
        "reps": labels,
        "class_sizes": w.class_sizes,
        "leq": [[bool(x) for x in row] for row in w.leq],
        "hasse_edges": w.hasse_edges(),
        "add": add,
        "add_certificates": cert,
        "zero_class": w.zero_class,
    }


def cmd_compute_w(args):
    ring = load_ring(args)
    w = wr.build_W(ring, args.kmax, args.budget)
    labels = [format_matrix(r) for r in w.reps]
    emit(args, {"result": _w_payload(w)},
         dot_text=dot.hasse_dot(labels, w.hasse_edges(),
                                title=f"W({ring.spec_string()})"))


def cmd_compute_v(args):
    ring = load_ring(args)
    vm = wr.build_V(ring, args.kmax, args.budget)
    payload = {
        "n_classes": vm.n_classes(),
        "reps": [format_matrix(e.base) for e in vm.reps],
        "iota": vm.iota,
        "add": {f"{i},{j}": vm.add[(i, j)] for i, j in sorted(vm.add)},
        "add_certificates": {f"{i},{j}": vm.add_cert[(i, j)]
                             for i, j in sorted(vm.add_cert)},
        "w": _w_payload(vm.w),
    }
    emit(args, {"result": payload})


def cmd_compute_lambda(args):
    from .monoids import lambda_of_ring

    ring = load_ring(args)
    w = wr.build_W(ring, args.kmax, args.budget)
    frag = lambda_of_ring(w)
    n = frag.n_intervals()
    payload = {
        "n_intervals": n,
        "interval_tops": [format_matrix(r) for r in w.reps],
        "leq": [[frag.leq(i, j) for j in range(n)] for i in range(n)],
        "add": {f"{i},{j}": frag.add(i, j)
                for i in range(n) for j in range(n)},
        "add_certificates": {f"{i},{j}": frag.add_certificate(i, j)
                             for i in range(n) for j in range(n)},
        "note": "principal intervals of the certified truncation",
    }
    labels = [format_matrix(r) for r in w.reps]
    emit(args, {"result": payload},
         dot_text=dot.hasse_dot(labels, w.hasse_edges(),
                                title=f"Lambda({ring.spec_string()})"))


def cmd_check_cu(args):
    m = load_monoid(args.monoid)
    if args.interval_completion:
        from .monoids import FiniteMonoid

        if not isinstance(m, FiniteMonoid) and m.kind != "N":
            raise ConfigError(
                "interval completion supports finite tables and N")
        m = LambdaSigma(m)
    report = check_cu_axioms(m, bound=args.bound)
    verdicts = {k: report[k]["verdict"] for k in ("O1", "O2", "O3", "O4")}
    if any(v == "unknown" for v in verdicts.values()):
        raise UnknownVerdict("an axiom check was inconclusive")
    emit(args, {"result": jsonable(report)},
         text="".join(f"{k}: {v}\n" for k, v in sorted(verdicts.items())))


def cmd_compacts(args):
    m = load_monoid(args.monoid)
    if args.interval_completion:
        m = LambdaSigma(m)
    res = compacts(m, bound=args.bound)
    emit(args, {"result": {"description": res.description,
                           "sample": [str(x) for x in res.sample]}})


def cmd_states(args):
    if args.monoid:
        m = load_monoid(args.monoid)
        unit = tuple(int(x) for x in (args.unit or "1,0").split(","))
    else:
        ring = load_ring(args)
        w = wr.build_W(ring, args.kmax, args.budget)
        m = w
        unit_mat = parse_matrix(ring, args.unit) if args.unit else \
            parse_matrix(ring, f"[[{ring.one}]]")
        unit = w.classify(unit_mat, args.budget)
        if unit is None:
            raise ConfigError("the unit matrix matches no certified class")
    pol = states.state_polytope(m, unit, variant=args.variant,
                                seed=args.seed or 0)
    emit(args, {"result": pol.to_jsonable()})


def cmd_seq_validate(args):
    ring = load_ring(args)
    s = parse_seq(ring, args.seq)
    v = _require_known(validate_seq(s, args.budget), "seq-validate")
    emit(args, {"result": jsonable(v)}, text=f"{v.status}\n")


def cmd_seq_to_idem(args):
    ring = load_ring(args)
    s = parse_seq(ring, args.seq)
    y1 = parse_matrix(ring, args.y1) if args.y1 else None
    E = seq_to_idem(s, y1=y1, budget=args.budget)
    emit(args, {"result": {
        "matrix": format_matrix(E.matrix),
        "corner_sizes": list(E.sizes),
        "corners": [format_matrix(z) for z in E.corners]}})


def cmd_idem_to_seq(args):
    ring = load_ring(args)
    if args.idem:
        E = ColIdem(ring, explicit=Idem(parse_matrix(ring, args.idem)))
    elif args.corners:
        corners = tuple(parse_matrix(ring, lit.strip())
                        for lit in args.corners.split(";"))
        sizes = (corners[0].cols,) + tuple(z.rows for z in corners)
        E = ColIdem(ring, corners, sizes)
    else:
        raise ConfigError("need --idem or --corners")
    s = idem_to_seq(E, budget=args.budget)
    emit(args, {"result": {
        "stages": [format_matrix(x) for x in s.stages],
        "witnesses": [format_matrix(y) for y in s.witnesses],
        "tail": s.tail}})


def cmd_seq_sup(args):
    ring = load_ring(args)
    members = [parse_seq(ring, lit) for lit in args.member]
    if len(members) < 1:
        raise ConfigError("need at least one --member")
    try:
        sup = seq_sup(members, args.budget)
    except ValueError as exc:
        raise ConfigError(str(exc))
    emit(args, {"result": {
        "stages": [format_matrix(x) for x in sup.stages],
        "witnesses": [format_matrix(y) for y in sup.witnesses],
        "tail": sup.tail}})


def cmd_seq_compact(args):
    ring = load_ring(args)
    s = parse_seq(ring, args.seq)
    v = _require_known(
        is_compact_seq(s, search_bound=args.size_bound, budget=args.budget),
        "seq-compact")
    payload = {"verdict": v.status, "note": v.note}
    if v.witness is not None:
        payload["z"] = format_matrix(v.witness.z)
        payload["s"] = format_matrix(v.witness.s)
        payload["construction"] = v.witness.note
    emit(args, {"result": payload}, text=f"{v.status}\n")


def cmd_diagonalize(args):
    ring = load_ring(args)
    a = parse_matrix(ring, args.a)
    cert = diagonal.diagonalize(a, seed=args.seed)
    if not cert.verify():
        raise AssertionError("certificate failed re-verification")
    emit(args, {"result": {
        "D": format_matrix(cert.D),
        "U": format_matrix(cert.U),
        "V": format_matrix(cert.V),
        "valuations": list(diagonal.valuation_multiset(a, seed=args.seed)),
        "psi": list(diagonal.psi_rank(a, seed=args.seed)),
        "verified": True}})


def cmd_shift(args):
    p, d, D = args.p, args.d, args.degree
    if args.op == "nf":
        word = shift.parse_monomial(args.mono)
        nf = shift.normal_form(word, d)
        emit(args, {"result": {"normal_form": shift.format_monomial(nf)}},
             text=shift.format_monomial(nf) + "\n")
    elif args.op == "st":
        word = shift.normal_form(shift.parse_monomial(args.mono), d)
        emit(args, {"result": {"st": shift.st_of(word)}},
             text=f"{shift.st_of(word)}\n")
    elif args.op == "mul":
        a = shift.parse_poly(args.p1, p, d, D)
        b = shift.parse_poly(args.p2, p, d, D)
        try:
            prod = a * b
        except shift.DegreeOverflow as exc:
            raise ConfigError(str(exc))
        emit(args, {"result": {"product": shift.format_poly(prod)}},
             text=shift.format_poly(prod) + "\n")
    else:  # compact-search
        rep = shift.search_compact_solutions(d, D, p=p, size=args.size,
                                             side=args.side)
        rep["nonzero_solutions"] = [
            [[shift.format_poly(e) for e in row] for row in z]
            for z in rep["nonzero_solutions"]]
        emit(args, {"result": jsonable(rep)})


# -- argument parsing ----------------------------------------------------


def build_parser():
    top = argparse.ArgumentParser(
        prog="ringcomp",
        description="comparison invariants of finite and symbolic rings")
    sub = top.add_subparsers(dest="verb", required=True)

    def common(p, ring=True):
        p.add_argument("--budget", type=int, default=kernels.DEFAULT_BUDGET)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--jobs", type=int, default=1,
                       help="accepted for interface stability; execution is "
                            "serial and deterministic")
        p.add_argument("--out", choices=("json", "dot", "text"),
                       default="json")
        p.add_argument("--config", default=None,
                       help="key = value file supplying argument defaults")
        if ring:
            p.add_argument("--ring", default=None,
                           help="inline spec, e.g. 'zmod(4)' or "
                                "'matrix_ring(gf(2),2)'")
            p.add_argument("--ring-file", default=None,
                           help="path to a key/value ring spec file")

    p = sub.add_parser("precsim", help="decide a = r b t")
    common(p)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(fn=cmd_precsim)

    for name, fn in (("compute-w", cmd_compute_w),
                     ("compute-v", cmd_compute_v),
                     ("compute-lambda", cmd_compute_lambda)):
        p = sub.add_parser(name)
        common(p)
        p.add_argument("--kmax", type=int, default=2)
        p.set_defaults(fn=fn)

    p = sub.add_parser("check-cu", help="axioms O1-O4 on a carrier")
    common(p, ring=False)
    p.add_argument("--monoid", required=True)
    p.add_argument("--bound", type=int, default=3)
    p.add_argument("--interval-completion", action="store_true")
    p.set_defaults(fn=cmd_check_cu)

    p = sub.add_parser("compacts")
    common(p, ring=False)
    p.add_argument("--monoid", required=True)
    p.add_argument("--bound", type=int, default=4)
    p.add_argument("--interval-completion", action="store_true")
    p.set_defaults(fn=cmd_compacts)

    p = sub.add_parser("states")
    common(p)
    p.add_argument("--monoid", default=None)
    p.add_argument("--unit", default=None,
                   help="matrix literal (ring mode) or 'r,s' (NSD)")
    p.add_argument("--kmax", type=int, default=2)
    p.add_argument("--variant", choices=("dimension", "sylvester"),
                   default="dimension")
    p.set_defaults(fn=cmd_states)

    p = sub.add_parser("seq-validate")
    common(p)
    p.add_argument("--seq", required=True,
                   help="'stages: m1 ; m2 / witnesses: w2 / tail: stabilized'")
    p.set_defaults(fn=cmd_seq_validate)

    p = sub.add_parser("seq-to-idem")
    common(p)
    p.add_argument("--seq", required=True)
    p.add_argument("--y1", default=None)
    p.set_defaults(fn=cmd_seq_to_idem)

    p = sub.add_parser("idem-to-seq")
    common(p)
    p.add_argument("--idem", default=None)
    p.add_argument("--corners", default=None,
                   help="';'-separated corner matrices Z_0 ; Z_1 ; ...")
    p.set_defaults(fn=cmd_idem_to_seq)

    p = sub.add_parser("seq-sup")
    common(p)
    p.add_argument("--member", action="append", default=[],
                   help="sequence literal; repeat per chain member")
    p.set_defaults(fn=cmd_seq_sup)

    p = sub.add_parser("seq-compact")
    common(p)
    p.add_argument("--seq", required=True)
    p.add_argument("--size-bound", type=int, default=2)
    p.set_defaults(fn=cmd_seq_compact)

    p = sub.add_parser("diagonalize")
    common(p)
    p.add_argument("--a", required=True)
    p.set_defaults(fn=cmd_diagonalize)

    p = sub.add_parser("shift")
    common(p, ring=False)
    p.add_argument("op", choices=("nf", "mul", "st", "compact-search"))
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--mono", default=None)
    p.add_argument("--p1", default=None)
    p.add_argument("--p2", default=None)
    p.add_argument("--size", type=int, default=1)
    p.add_argument("--side", choices=("right", "left"), default="right")
    p.set_defaults(fn=cmd_shift)

    return top


def _apply_config_file(args):
    if not getattr(args, "config", None):
        return
    with open(args.config) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"bad config line {line!r}")
            key, _, val = line.partition("=")
            key = key.strip().replace("-", "_")
            if not hasattr(args, key):
                raise ConfigError(f"unknown config key {key!r}")
            cur = getattr(args, key)
            if isinstance(cur, bool):
                val = val.strip().lower() in ("1", "true", "yes")
            elif isinstance(cur, int):
                val = int(val)
            else:
                val = val.strip()
            setattr(args, key, val)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _apply_config_file(args)
        for name in ("budget", "kmax", "bound", "size_bound", "d", "degree"):
            if getattr(args, name, 1) is not None and \
                    getattr(args, name, 1) <= 0:
                raise ConfigError(f"--{name.replace('_', '-')} must be "
                                  "positive")
        args.fn(args)
        return EXIT_OK
    except (ConfigError, RingError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except UnknownVerdict as exc:
        print(f"unknown: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except AssertionError as exc:
        print(f"invariant breach: {exc}", file=sys.stderr)
        return EXIT_BREACH


if __name__ == "__main__":
    sys.exit(main())
