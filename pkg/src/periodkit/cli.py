"""Command line front end: ``periodkit <group> <command> [flags]``.

Exit codes: 0 success, 2 domain error (structured JSON on stdout), 64 usage
error, 65 malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Sequence

from .errors import DomainError
from .qfield import DEFAULT_DISC, check_disc

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_USAGE = 64
EXIT_DATA = 65


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with status 2, which is reserved for domain errors
        raise UsageError(f"{self.prog}: {message}")

    def exit(self, status=0, message=None):
        if message:
            sys.stderr.write(message)
        raise SystemExit(status)


@dataclass(frozen=True)
class RunConfig:
    n: int | None
    disc: int
    precision: int
    output: str
    seed: int


def _config(args) -> RunConfig:
    if args.n is not None and args.n < 1:
        raise UsageError("--n must be at least 1")
    if args.digits < 10:
        raise UsageError("--digits must be at least 10")
    try:
        disc = check_disc(args.disc)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    return RunConfig(args.n, disc, args.digits, args.output, args.seed)


# input parsing --------------------------------------------------------------------

def _load_json(text: str) -> Any:
    path = Path(text[1:]) if text.startswith("@") else None
    try:
        return json.loads(path.read_text() if path else text)
    except (json.JSONDecodeError, OSError) as exc:
        raise InputError(f"malformed JSON input: {exc}") from None


def _levi(args, cfg: RunConfig, attr: str = "levi"):
    from .levi import LeviLabel

    text = getattr(args, attr)
    if text is None:
        raise UsageError(f"--{attr.replace('_', '-')} is required")
    try:
        M = LeviLabel.parse(text)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"malformed Levi label {text!r}: {exc}") from None
    if cfg.n is not None and cfg.n != M.n:
        from .errors import DimensionError

        raise DimensionError(f"--n {cfg.n} disagrees with Levi {M} of rank {M.n}")
    return M


def _perm(text: str, what: str):
    from .weyl import SignedPerm

    data = _load_json(text)
    try:
        return SignedPerm.from_json(data)
    except DomainError:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"malformed {what}: {exc}") from None


def _weyl_element(args, M):
    """--w as an element of W_n, or --j as block data lifted into W(M, M')."""
    from .errors import DimensionError
    from .levi import lift

    if args.w is not None:
        w = _perm(args.w, "--w")
        if w.n != M.n:
            raise DimensionError(f"--w lives in W_{w.n} but the Levi has rank {M.n}")
        return w
    if getattr(args, "j", None) is not None:
        j = _perm(args.j, "--j")
        if j.n != M.k:
            raise DimensionError(f"--j lives in W_{j.n} but the Levi has {M.k} blocks")
        return lift(M, j)
    raise UsageError("one of --w or --j is required")


def _vector(text: str) -> list[Fraction]:
    text = text.strip()
    try:
        if text.startswith("["):
            data = _load_json(text)
            return [Fraction(str(v)) for v in data]
        return [Fraction(v) for v in text.split(",") if v.strip()]
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"malformed vector {text!r}: {exc}") from None


def _n(cfg: RunConfig) -> int:
    return cfg.n if cfg.n is not None else 2


# handlers ------------------------------------------------------------------------------

def _q(v) -> list[str]:
    return [str(x) for x in v]


def h_weyl_roots(args, cfg):
    from .weyl import positive_roots, simple_roots

    n = _n(cfg)
    return {"n": n, "simple": [_q(a) for a in simple_roots(n)], "positive": [_q(a) for a in positive_roots(n)]}


def h_weyl_involutions(args, cfg):
    from .weyl import involutions

    return [w.to_json() for w in involutions(_n(cfg))]


def h_weyl_minimal(args, cfg):
    from .weyl import minimal_involutions

    return [w.to_json() for w in minimal_involutions(_n(cfg))]


def h_weyl_profile(args, cfg):
    from .weyl import length, profile

    if args.w is None:
        raise UsageError("--w is required")
    w = _perm(args.w, "--w")
    return {"w": w.to_json(), "length": length(w), **profile(w).to_json()}


def h_levi_list(args, cfg):
    from .levi import enumerate_levis, project, rho, simple_root_indices

    out = []
    for M in enumerate_levis(_n(cfg)):
        r = rho(M)
        out.append({"M": M.to_json(), "simple_root_indices": simple_root_indices(M), "rho_P": _q(r), "rho_P_M": _q(project(M, r))})
    return out


def h_levi_reps(args, cfg):
    from .levi import double_coset_reps

    M = _levi(args, cfg)
    Mp = _levi(args, cfg, "levi2") if args.levi2 else M
    return [w.to_json() for w in double_coset_reps(M, Mp)]


def h_levi_jmap(args, cfg):
    from .levi import jmap_with_target

    M = _levi(args, cfg)
    w = _weyl_element(args, M)
    j, tgt = jmap_with_target(M, w)
    return {"M": M.to_json(), "w": w.to_json(), "j": j.to_json(), "target": tgt.to_json()}


def h_levi_rho(args, cfg):
    from .levi import project, rho

    M = _levi(args, cfg)
    r = rho(M)
    return {"M": M.to_json(), "rho_P": _q(r), "rho_P_M": _q(project(M, r))}


def h_orbit_classify(args, cfg):
    from .orbit import classify

    M = _levi(args, cfg)
    return classify(M, _weyl_element(args, M)).to_json()


def h_orbit_rep(args, cfg):
    from .orbit import representative

    M = _levi(args, cfg)
    x = representative(M, _weyl_element(args, M), cfg.disc)
    return {"M": M.to_json(), "disc": cfg.disc, "x": x.x.to_json(), "sign_pattern": list(x.pattern)}


def h_orbit_eigensplit(args, cfg):
    from .orbit import eigensplit

    M = _levi(args, cfg)
    return eigensplit(M, _weyl_element(args, M)).to_json()


def h_orbit_rhox(args, cfg):
    from .orbit import rho_x

    M = _levi(args, cfg)
    return {"M": M.to_json(), "rho_x": rho_x(M, _weyl_element(args, M), cfg.disc).to_json()}


def h_orbit_stabilizer(args, cfg):
    from .orbit import stabilizer_profile

    M = _levi(args, cfg)
    return stabilizer_profile(M, _weyl_element(args, M), cfg.disc).to_json()


def _vertex(args, cfg):
    from .graph import Vertex, make_vertex
    from .orbit import representative

    if args.vertex is not None:
        data = _load_json(args.vertex)
        try:
            return Vertex.from_json(data, cfg.disc)
        except DomainError:
            raise
        except (ValueError, KeyError, TypeError) as exc:
            raise InputError(f"malformed vertex: {exc}") from None
    M = _levi(args, cfg)
    return make_vertex(M, representative(M, _weyl_element(args, M), cfg.disc).x)


def h_graph_edges(args, cfg):
    from .graph import edges_from

    return [e.to_json() for e in edges_from(_vertex(args, cfg))]


def h_graph_reduce(args, cfg):
    from .graph import check_path_covariance, check_rho_covariance, reduce

    v = _vertex(args, cfg)
    red = reduce(v)
    out = red.to_json()
    out["edge_covariance"] = [check_rho_covariance(e) for e in red.path]
    out["path_covariance"] = check_path_covariance(v, red)
    return out


def h_graph_audit(args, cfg):
    from .audit import audit

    return audit(_n(cfg), jobs=args.jobs, only=["graph.reduction", "graph.rho-covariance"])


def h_spectrum_support(args, cfg):
    from .spectra import support_ledger

    return [row.to_json() for row in support_ledger(_n(cfg), cfg.disc)]


def h_spectrum_cfactor(args, cfg):
    from .zeta import c_factor, pairings

    if args.w is None or args.nu is None:
        raise UsageError("--w and --nu are required")
    w = _perm(args.w, "--w")
    nu = _vector(args.nu)
    if len(nu) != w.n:
        from .errors import DimensionError

        raise DimensionError(f"nu has {len(nu)} coordinates, w lives in W_{w.n}")
    val = c_factor(w, nu, cfg.precision)
    return {"w": w.to_json(), "nu": _q(nu), "pairings": _q(pairings(w, nu)), **val.to_json()}


def h_spectrum_chamber(args, cfg):
    from .spectra import chamber, chamber_contains

    M = _levi(args, cfg)
    ch = chamber(M, _weyl_element(args, M), _vector(args.gamma)[0], cfg.disc)
    out = ch.to_json()
    if args.lam is not None:
        out["lambda"] = _q(_vector(args.lam))
        out["contains"] = chamber_contains(ch, _vector(args.lam))
    return out


def h_spectrum_split(args, cfg):
    from .levi import LeviLabel
    from .spectra import AffineSubspace, SubspaceClass, distinguished_classes, split_classes

    if args.classes is None:
        raise UsageError("--classes is required")
    data = _load_json(args.classes)
    try:
        classes = []
        for i, item in enumerate(data):
            M = LeviLabel.from_json(item["M"])
            sub = AffineSubspace(M, [Fraction(str(v)) for v in item["origin"]], [[Fraction(str(v)) for v in d] for d in item.get("directions", [])])
            classes.append(SubspaceClass(M, item.get("pi", "pi"), sub, item.get("tag", str(i))))
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"malformed class list: {exc}") from None
    n = classes[0].M.n if classes else _n(cfg)
    circ, hdist = split_classes(classes, distinguished_classes(n, disc=cfg.disc))
    return {"circ": [c.tag for c in circ], "hdist": [c.tag for c in hdist]}


def h_audit(args, cfg):
    from .audit import audit

    return audit(_n(cfg), jobs=args.jobs, mutation=args.mutation, only=args.check or None)


def h_corpus(args, cfg):
    results = {}
    for path in sorted(Path(args.dir).glob("*.json")):
        case = json.loads(path.read_text())
        code, out = run(case["argv"])
        ok = code == case["exit"] and (case.get("stdout") is None or json.loads(out) == case["stdout"])
        results[path.name] = ok
    return {"cases": results, "all_pass": all(results.values())}


# parser ----------------------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--n", type=int, default=None, help="rank parameter n of U_2n")
    p.add_argument("--disc", type=int, default=DEFAULT_DISC, help="square-free d with E = Q(sqrt d)")
    p.add_argument("--digits", type=int, default=30, help="decimal digits for numeric output")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")
    p.add_argument("--output", choices=["json", "table"], default="json")
    return p


def _leaf(sub, name: str, handler: Callable, common, help: str, *opts: str):
    p = sub.add_parser(name, parents=[common], help=help)
    p.set_defaults(handler=handler)
    for opt in opts:
        if opt == "levi":
            p.add_argument("--levi", help='Levi label "n1,n2;r" or JSON')
        elif opt == "levi2":
            p.add_argument("--levi2", help="second Levi label (defaults to --levi)")
        elif opt == "w":
            p.add_argument("--w", help='signed permutation JSON {"n","tau","c"}')
        elif opt == "j":
            p.add_argument("--j", help="block data in W_k, lifted into W(M, M')")
        elif opt == "vertex":
            p.add_argument("--vertex", help='vertex JSON {"M": ..., "x": ...}')
        elif opt == "jobs":
            p.add_argument("--jobs", type=int, default=1)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    root = _Parser(prog="periodkit", description=__doc__.splitlines()[0])
    groups = root.add_subparsers(dest="group", required=True, parser_class=_Parser)

    weyl = groups.add_parser("weyl").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    _leaf(weyl, "roots", h_weyl_roots, common, "simple and positive roots")
    _leaf(weyl, "involutions", h_weyl_involutions, common, "all involutions of W_n")
    _leaf(weyl, "minimal", h_weyl_minimal, common, "minimal involutions of W_n")
    _leaf(weyl, "profile", h_weyl_profile, common, "c_+, c_-, c_neq, c_< of an involution", "w")

    levi = groups.add_parser("levi").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    _leaf(levi, "list", h_levi_list, common, "standard Levis with simple roots and rho_P")
    _leaf(levi, "reps", h_levi_reps, common, "minimal double coset representatives", "levi", "levi2")
    _leaf(levi, "jmap", h_levi_jmap, common, "block data of an element of W(M)", "levi", "w", "j")
    _leaf(levi, "rho", h_levi_rho, common, "rho_P", "levi")

    orbit = groups.add_parser("orbit").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    _leaf(orbit, "classify", h_orbit_classify, common, "orbit class of w in W(M, M)", "levi", "w", "j")
    _leaf(orbit, "rep", h_orbit_rep, common, "explicit representative x_w", "levi", "w", "j")
    _leaf(orbit, "eigensplit", h_orbit_eigensplit, common, "+-1 eigenspaces on A_M^*", "levi", "w", "j")
    _leaf(orbit, "rhox", h_orbit_rhox, common, "rho_x", "levi", "w", "j")
    _leaf(orbit, "stabilizer", h_orbit_stabilizer, common, "stabilizer factors and dimension", "levi", "w", "j")

    graph = groups.add_parser("graph").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    _leaf(graph, "edges", h_graph_edges, common, "edges out of a vertex", "vertex", "levi", "w", "j")
    _leaf(graph, "reduce", h_graph_reduce, common, "descend to an M-minimal vertex", "vertex", "levi", "w", "j")
    _leaf(graph, "audit", h_graph_audit, common, "exhaustive rho covariance sweep", "jobs")

    spectrum = groups.add_parser("spectrum").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    _leaf(spectrum, "support", h_spectrum_support, common, "distinguished support ledger")
    p = _leaf(spectrum, "cfactor", h_spectrum_cfactor, common, "Gindikin-Karpelevich factor", "w")
    p.add_argument("--nu", help="comma separated or JSON list")
    p = _leaf(spectrum, "chamber", h_spectrum_chamber, common, "convergence chamber test", "levi", "w", "j")
    p.add_argument("--gamma", default="0")
    p.add_argument("--lambda", dest="lam")
    p = _leaf(spectrum, "split", h_spectrum_split, common, "split subspace classes into circ / hdist")
    p.add_argument("--classes", help="JSON list (or @file) of {M, pi, origin, directions, tag}")

    p = _leaf(groups, "audit", h_audit, common, "run every exhaustive check", "jobs")
    p.add_argument("--mutation", choices=["rep-sign-flip"], default=None)
    p.add_argument("--check", action="append", help="restrict to the named check (repeatable)")
    p = _leaf(groups, "corpus", h_corpus, common, "replay golden CLI cases")
    p.add_argument("--dir", default="tests/golden")
    return root


def _table(obj: Any) -> str:
    if isinstance(obj, list):
        return "\n".join(json.dumps(item, sort_keys=True) for item in obj)
    if isinstance(obj, dict):
        width = max((len(k) for k in obj), default=0)
        return "\n".join(f"{k.ljust(width)}  {json.dumps(v, sort_keys=True)}" for k, v in sorted(obj.items()))
    return str(obj)


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Execute one command; return (exit code, text for stdout)."""
    try:
        args = build_parser().parse_args(list(argv))
        cfg = _config(args)
        result = args.handler(args, cfg)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE, ""
    except SystemExit as exc:  # --help
        return (EXIT_OK if not exc.code else EXIT_USAGE), ""
    except DomainError as exc:
        return EXIT_DOMAIN, json.dumps(exc.to_json(), sort_keys=True)
    except InputError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_DATA, ""
    if cfg.output == "table":
        return EXIT_OK, _table(result)
    return EXIT_OK, json.dumps(result, sort_keys=True, indent=2)


def main(argv: Sequence[str] | None = None) -> int:
    code, out = run(sys.argv[1:] if argv is None else argv)
    if out:
        sys.stdout.write(out + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
