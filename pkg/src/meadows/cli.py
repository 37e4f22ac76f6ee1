"""Command-line front end.

Usage: ``meadows <verb> <spec> [flags]`` where ``<spec>`` is a ring-spec
string such as ``zn:6`` or ``custom-lattice <path.json>``.

Exit codes: 0 success, 1 domain error, 2 verification failure, 64 usage.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import construct, meadow
from .checks import DEFAULT_SEED, SAMPLE_SIZE
from .directed_lattice import load_json
from .dsl import parse_ring
from .errors import MeadowError
from .finite_ring import (DEFAULT_CAP, check_ring_axioms, idempotents, primitive_idempotents,
                          units)
from .ideals import enumerate_ideals, is_local_ring, maximal_ideals
from .lattice import lattice_from_ideals, to_dot as lattice_dot

EXIT_OK, EXIT_DOMAIN, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2, 64
SCHEMA = 1
CUSTOM = "custom-lattice"
VERBS = ("ring-info", "ideals", "meadow-build", "meadow-check", "meadow-atoms",
         "meadow-decompose", "meadow-product", "lattice-dot", CUSTOM)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _parser():
    p = _Parser(prog="meadows", description="Common meadows from finite commutative rings.")
    sub = p.add_subparsers(dest="verb", metavar="verb", required=True)
    for verb in VERBS:
        sp = sub.add_parser(verb)
        sp.add_argument("spec", nargs="+",
                        help="ring spec, or 'custom-lattice PATH'" if verb != CUSTOM
                        else "path to a custom-lattice JSON file")
        fmt = sp.add_mutually_exclusive_group()
        fmt.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
        fmt.add_argument("--json", action="store_true", help="emit JSON")
        sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="ring size cap")
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED, help="sampling seed")
        sp.add_argument("--sampled", action="store_true",
                        help="sample axiom tuples instead of sweeping all of them")
    return p


def _split_specs(tokens):
    """Group tokens into specs: ``custom-lattice PATH`` or a single ring string."""
    specs, k = [], 0
    while k < len(tokens):
        if tokens[k] == CUSTOM:
            if k + 1 >= len(tokens):
                raise UsageError(f"{CUSTOM} needs a JSON path")
            specs.append((CUSTOM, tokens[k + 1]))
            k += 2
        else:
            specs.append(("ring", tokens[k]))
            k += 1
    return specs


def _load_meadow(spec, cap):
    kind, text = spec
    if kind == CUSTOM:
        try:
            dl = load_json(text, cap=cap)
        except OSError as exc:
            raise MeadowError(f"cannot read {text}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise MeadowError(f"{text} is not valid JSON: {exc}") from None
        return meadow.Meadow(dl, name=text)
    return construct.build_M(parse_ring(text, cap=cap), cap=cap)


def _ring(spec, cap):
    kind, text = spec
    if kind == CUSTOM:
        raise UsageError("this verb takes a ring spec, not a custom lattice")
    return parse_ring(text, cap=cap)


def _dump(obj):
    return json.dumps(obj, indent=2) + "\n"


def _report_json(rep):
    return {"title": rep.title, "ok": rep.ok,
            "results": [{"name": r.name, "passed": r.passed, "checked": r.checked,
                         "sampled": r.sampled, "detail": r.detail} for r in rep.results]}


# -- verbs ------------------------------------------------------------------------


def _ring_info(args, specs, out):
    r = _ring(specs[0], args.cap)
    rep = check_ring_axioms(r, seed=args.seed)
    info = {
        "schema": SCHEMA, "name": r.name, "descriptor": r.descriptor, "order": r.order,
        "field": bool(r.is_field), "local": is_local_ring(r),
        "units": [r.label(x) for x in sorted(units(r))],
        "idempotents": [r.label(x) for x in sorted(idempotents(r))],
        "primitive_idempotents": [r.label(x) for x in primitive_idempotents(r)],
        "ring_axioms": _report_json(rep),
    }
    if args.json:
        out.write(_dump(info))
    else:
        out.write(f"{r.name} ({r.descriptor}), order {r.order}\n")
        for key in ("field", "local"):
            out.write(f"{key}: {str(info[key]).lower()}\n")
        for key in ("units", "idempotents", "primitive_idempotents"):
            out.write(f"{key.replace('_', ' ')}: {', '.join(info[key])}\n")
        out.write(str(rep) + "\n")
    return EXIT_OK if rep.ok else EXIT_VERIFY


def _ideals(args, specs, out):
    r = _ring(specs[0], args.cap)
    ids = enumerate_ideals(r, cap=args.cap)
    maximal = {i.members for i in maximal_ideals(r, ids)}
    rows = [{"label": i.label(), "order": len(i), "members": [r.label(x) for x in i.members],
             "maximal": i.members in maximal} for i in ids]
    if args.dot:
        out.write(lattice_dot(lattice_from_ideals(ids), name="ideals"))
    elif args.json:
        out.write(_dump({"schema": SCHEMA, "ring": r.descriptor, "ideals": rows}))
    else:
        out.write(f"{len(ids)} ideals of {r.name}\n")
        for row in rows:
            mark = "  maximal" if row["maximal"] else ""
            out.write(f"{row['label']}: order {row['order']} {{{', '.join(row['members'])}}}{mark}\n")
    return EXIT_OK


def _summary(m, out):
    res = meadow.is_common(m)
    out.write(f"{m.name}: {m.dl.size} vertices, {m.size} elements\n")
    for v in range(m.dl.size):
        shown = "{a}" if v == m.dl.bottom else m.vertex_label(v)
        out.write(f"  {shown}: {m.rings[v].name}, order {m.rings[v].order}\n")
    out.write(res.describe() + "\n")


def _meadow_build(args, specs, out):
    m = _load_meadow(specs[0], args.cap)
    if args.dot:
        out.write(meadow.to_dot(m))
    elif args.json:
        out.write(_dump(meadow.to_json(m)))
    else:
        _summary(m, out)
    return EXIT_OK


def _meadow_check(args, specs, out):
    m = _load_meadow(specs[0], args.cap)
    opts = dict(sampled=args.sampled, samples=SAMPLE_SIZE, seed=args.seed)
    pre = meadow.check_pre_meadow(m, **opts)
    common = meadow.check_common(m, **opts)
    trans = meadow.check_transition_maps(m)
    res = meadow.is_common(m)
    if args.json:
        body = {"schema": SCHEMA, "meadow": m.name, "common": bool(res),
                "pre_meadow": _report_json(pre), "common_axioms": _report_json(common),
                "transition_maps": _report_json(trans)}
        if not res:
            body["witness"] = {"element": str(res.witness),
                               "maximal": [m.vertex_label(v) for v in res.maximal]}
        out.write(_dump(body))
    else:
        for rep in (pre, common, trans):
            out.write(str(rep) + "\n")
        if not res:
            out.write(f"witness: {res.witness}\n")
            out.write("maximal invertibility vertices: "
                      + ", ".join(m.vertex_label(v) for v in res.maximal) + "\n")
    return EXIT_OK if pre.ok and common.ok and trans.ok else EXIT_VERIFY


def _meadow_atoms(args, specs, out):
    m = _load_meadow(specs[0], args.cap)
    at = meadow.meadow_atoms(m)
    local = meadow.is_local(m)
    names = [m.vertex_label(x.vertex) for x in at]
    if args.json:
        out.write(_dump({"schema": SCHEMA, "meadow": m.name, "atoms": names, "local": local}))
    else:
        out.write(f"{len(at)} atoms: {', '.join(names)}\n")
        out.write(f"local: {str(local).lower()}\n")
    return EXIT_OK


def _meadow_decompose(args, specs, out):
    m = _load_meadow(specs[0], args.cap)
    d = construct.decompose_local(m)
    out.write(_dump(d.to_json()))
    return EXIT_OK if d.report.ok else EXIT_VERIFY


def _meadow_product(args, specs, out):
    if len(specs) < 2:
        raise UsageError("meadow-product needs at least two specs")
    factors = [_load_meadow(s, args.cap) for s in specs]
    p = construct.meadow_product(*factors)
    rep = construct.check_product_structure(p)
    if args.dot:
        out.write(meadow.to_dot(p))
    elif args.json:
        body = meadow.to_json(p)
        body["factors_common"] = [bool(meadow.is_common(f)) for f in factors]
        body["structure"] = _report_json(rep)
        out.write(_dump(body))
    else:
        _summary(p, out)
        for f in factors:
            out.write(f"factor {f.name}: {'common' if meadow.is_common(f) else 'not common'}\n")
        out.write(str(rep) + "\n")
    return EXIT_OK if rep.ok else EXIT_VERIFY


def _lattice_dot(args, specs, out):
    kind, _ = specs[0]
    if kind == CUSTOM:
        m = _load_meadow(specs[0], args.cap)
        out.write(meadow.to_dot(m, name="lattice"))
    else:
        r = _ring(specs[0], args.cap)
        out.write(lattice_dot(lattice_from_ideals(enumerate_ideals(r, cap=args.cap)),
                              name="lattice"))
    return EXIT_OK


def _custom_lattice(args, specs, out):
    if len(args.spec) != 1:
        raise UsageError("custom-lattice takes exactly one JSON path")
    return _meadow_build(args, [(CUSTOM, args.spec[0])], out)


HANDLERS = {
    "ring-info": _ring_info, "ideals": _ideals, "meadow-build": _meadow_build,
    "meadow-check": _meadow_check, "meadow-atoms": _meadow_atoms,
    "meadow-decompose": _meadow_decompose, "meadow-product": _meadow_product,
    "lattice-dot": _lattice_dot, CUSTOM: _custom_lattice,
}


def run(argv=None, out=None, err=None):
    """Run one command and return its exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = _parser().parse_args(argv)
        specs = [] if args.verb == CUSTOM else _split_specs(args.spec)
        if args.verb not in ("meadow-product", CUSTOM) and len(specs) != 1:
            raise UsageError(f"{args.verb} takes exactly one spec")
        return HANDLERS[args.verb](args, specs, out)
    except UsageError as exc:
        text = str(exc)
        err.write(text if text.startswith("usage") else f"usage error: {text}")
        err.write("\n")
        return EXIT_USAGE
    except MeadowError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    except SystemExit as exc:
        # argparse exits on --help
        return exc.code if isinstance(exc.code, int) else EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
