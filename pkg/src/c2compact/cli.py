"""Command-line front end: every subcommand prints one canonical JSON document."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .errors import C2Error, SchemaError
from .field import cyclotomic_cap, max_cyclotomic
from .fileio import (SurfaceFile, dumps, format_fraction, format_semidegree_json,
                     parse_surface_file)
from .keyforms import classify_semidegree, key_forms
from .laurent import format_poly, parse_poly
from .semidegree import Semidegree
from .series import format_dwps, parse_dwps


def _int_vector(text):
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _load(path) -> SurfaceFile:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from None
    return parse_surface_file(text)


def _semidegrees(args):
    if getattr(args, "phi", None) is not None:
        if args.r is None:
            raise SchemaError("--phi needs --r")
        return [Semidegree(parse_dwps(args.phi), Fraction(args.r))]
    sf = _load(args.surface)
    if sf.semidegrees is not None:
        return sf.semidegrees
    surface, _ = sf.build()
    return list(surface.semidegrees)


def _surface(args):
    if getattr(args, "branch", None):
        from .surface import from_one_place_branch
        return from_one_place_branch(parse_dwps(args.branch[0]))
    if not args.surface:
        raise SchemaError("a surface file (-s) is required")
    return _load(args.surface[0] if isinstance(args.surface, list) else args.surface).build()


def _check_d(surface, d):
    if len(d) != surface.N:
        raise SchemaError(f"divisor class has {len(d)} entries, the surface has {surface.N}")


def _poly(f):
    return format_poly(f)


# -- subcommands ------------------------------------------------------------------

def cmd_classify(args):
    from .keyforms import classify_surface

    cls = classify_surface(_semidegrees(args))
    return {"S_num": cls.in_S_num, "S_pol": cls.in_S_pol, "S_pol_plus": cls.in_S_pol_plus,
            "semidegrees": [{"index": k, "last_polynomial": c.last_polynomial,
                             "delta_of_last": c.delta_of_last, "nonneg": c.nonneg}
                            for k, c in enumerate(cls.per_semidegree)]}


def cmd_keyforms(args):
    out = []
    for k, d in enumerate(_semidegrees(args)):
        seq = key_forms(d)
        c = classify_semidegree(d, seq)
        out.append({"index": k, "phi": format_dwps(d.phi), "r": str(d.r),
                    "forms": [_poly(f) for f in seq.forms],
                    "last_polynomial": c.last_polynomial, "all_polynomial": seq.all_polynomial,
                    "delta_of_last": c.delta_of_last})
    return {"keyforms": out}


def cmd_delta(args):
    f = parse_poly(args.poly)
    out = []
    for k, d in enumerate(_semidegrees(args)):
        e, lc = d.leading(f)
        out.append({"index": k, "value": int(e * d.p_tilde), "lc": str(lc)})
    return {"poly": _poly(f), "values": out}


def cmd_dim(args):
    from .sections import enumerate_sections

    surface, _ = _surface(args)
    _check_d(surface, args.d)
    return {"dim": enumerate_sections(surface, args.d, args.threads).dim}


def _index_json(surface, n):
    from .sections import section_index

    alpha, beta, gamma = section_index(surface, n)
    return {"alpha": alpha, "beta": beta,
            "gamma": [{"i": i, "j": j, "k": k} for (i, j), k in sorted(gamma.items()) if k]}


def cmd_basis(args):
    from .sections import enumerate_sections, monomial

    surface, _ = _surface(args)
    _check_d(surface, args.d)
    en = enumerate_sections(surface, args.d, args.threads)
    rows = []
    for (a, b), n in en.E_prime.items():
        row = {"a": a, "b": b, "poly": _poly(monomial(surface, n))}
        row.update(_index_json(surface, n))
        rows.append(row)
    return {"dim": en.dim, "basis": rows}


def cmd_enriques(args):
    from .sections import enumerate_sections

    surface, _ = _surface(args)
    _check_d(surface, args.d)
    en = enumerate_sections(surface, args.d, args.threads)
    member = bool(en.exponents) and en.M == en.d
    return {"member": member, "d": list(en.d), "M": list(en.M),
            "witnesses": [_index_json(surface, n) for n in en.M_witness] if member else None}


def cmd_zariski_bpf(args):
    from .zariski import is_bpf_at_infinity, zariski_data

    surface, _ = _surface(args)
    _check_d(surface, args.d)
    rep = is_bpf_at_infinity(surface, args.d, args.threads)
    out = rep.to_json()
    out["omega"] = [list(r) for r in surface.omega]
    if rep.a is not None:
        zd = zariski_data(surface, rep.a)
        out["m"] = list(zd.m)
    return out


def cmd_zariski_member(args):
    from .zariski import semigroup_member_bounded

    surface, _ = _surface(args)
    _check_d(surface, args.d)
    res = semigroup_member_bounded(surface, args.d, args.bound)
    cert = [list(p) for p in res.certificate] if res.certificate is not None else None
    return {"status": res.status, "certificate": cert, "bound": args.bound}


def cmd_tropical(args):
    from .sections import tropical_closure

    surface, _ = _surface(args)
    box = args.box if len(args.box) == surface.N else args.box * surface.N
    _check_d(surface, box)
    pts = tropical_closure(surface.values, box)
    return {"box": list(box), "count": len(pts), "points": [list(p) for p in sorted(pts)]}


def cmd_compare(args):
    from .zariski import equisingular_compare

    branches = []
    for text in args.branch or []:
        branches.append(parse_dwps(text))
    for path in args.surface or []:
        sf = _load(path)
        if sf.branch is None:
            raise SchemaError(f"{path} does not describe a branch")
        branches.append(sf.branch)
    if len(branches) != 2:
        raise SchemaError("compare-equisingular needs exactly two branches")
    side = args.box[0]
    rep = equisingular_compare(branches[0], branches[1], side, sample=args.sample, seed=args.seed)
    return {"identical": rep.identical, "checked": rep.checked, "exhaustive": rep.exhaustive,
            "mismatches": [{"d": list(d), "a": ra, "b": rb} for d, ra, rb in rep.mismatches]}


def cmd_from_branch(args):
    surface, data = _surface(args)
    return {
        "semidegrees": [format_semidegree_json(d) for d in surface.semidegrees],
        "series": [{"phi": format_dwps(d.phi), "r": format_fraction(d.r)}
                   for d in surface.semidegrees],
        "g": [_poly(g) for g in data.g],
        "e": [{"k1": a, "k2": b, "value": format_fraction(v)} for (a, b), v in sorted(data.e.items())],
        "B": sorted(data.B),
        "l": list(data.l),
        "j_nodes": list(data.j_nodes),
        "i_nodes": list(data.i_nodes),
        "i_prime": list(data.i_prime),
        "positions": [list(p) for p in data.positions],
        "omega": [list(r) for r in surface.omega],
    }


# -- parser -----------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="enumeration worker processes")
    common.add_argument("--max-cyclotomic", type=int, default=None,
                        help="largest cyclotomic order allowed in coefficients")

    parser = argparse.ArgumentParser(prog="c2compact", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, needs_d=False, semis=False, multi=False):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if semis:
            p.add_argument("-s", "--surface", help="surface file")
            p.add_argument("--phi", help="series of a single semidegree, e.g. 'x^(5/2)'")
            p.add_argument("--r", help="exponent r of that semidegree, e.g. --r=-1")
        else:
            p.add_argument("-s", "--surface", action="append", help="surface file")
            p.add_argument("--branch", action="append", help="branch series, e.g. 'x^(2/3)'")
        if needs_d:
            p.add_argument("-d", type=_int_vector, required=True, help="divisor class, e.g. 6,6")
        p.set_defaults(func=func)
        return p

    add("classify", cmd_classify, "membership in S_num, S_pol and S_pol+", semis=True)
    add("keyforms", cmd_keyforms, "key forms of each semidegree", semis=True)
    p = add("delta", cmd_delta, "semidegree values and leading coefficients", semis=True)
    p.add_argument("-f", "--poly", required=True, help="polynomial, e.g. 'y^2-x^3'")
    add("dim", cmd_dim, "dimension of the space of sections", needs_d=True)
    add("basis", cmd_basis, "monomial basis of the space of sections", needs_d=True)
    add("enriques", cmd_enriques, "Enriques semigroup membership", needs_d=True)
    add("zariski-bpf", cmd_zariski_bpf, "base-point-freeness at infinity", needs_d=True)
    p = add("zariski-member", cmd_zariski_member, "bounded Zariski semigroup search",
            needs_d=True)
    p.add_argument("--bound", type=int, default=20)
    p = add("tropical", cmd_tropical, "tropical closure of generator values")
    p.add_argument("--box", type=_int_vector, required=True, help="upper bounds, e.g. 20,20")
    p = add("compare-equisingular", cmd_compare, "compare two equisingular branches")
    p.add_argument("--box", type=_int_vector, default=(15,), help="box side")
    p.add_argument("--sample", type=int, default=400, help="max points before sampling")
    p.add_argument("--seed", type=int, default=0)
    add("from-branch", cmd_from_branch, "surface resolving a branch at infinity")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with cyclotomic_cap(args.max_cyclotomic or max_cyclotomic()):
            result = args.func(args)
    except C2Error as exc:
        print(dumps(exc.to_json()))
        return 1
    print(dumps(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
