"""``hm-forge``: build, verify and export the graphs of this package.

Exit status is 0 on success, 1 when a verifier finds a violation and 2 for
configuration or I/O errors.  Every subcommand prints a short human summary,
or a JSON document with ``--json``.  ``--config FILE`` reads flat
``key=value`` lines (keys are long option names); flags on the command line
win over the file.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import coloring, csequence, graphprops, growthbuild, guessing, hmbuild, serialize, specker, types
from .ordinal import Universe, parse_ordinal


class ConfigError(Exception):
    pass


# -- small parsers ---------------------------------------------------------


def _int_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    return tuple(int(x) for x in text.split(",") if x.strip()) if text else ()


def _f_table(text: str) -> dict[int, int]:
    out = {}
    for part in text.split(","):
        if not part.strip():
            continue
        k, _, v = part.partition(":")
        out[int(k)] = int(v)
    return out


def _type_arg(text: str) -> types.DisjointType:
    return types.DisjointType.parse(text)


def _set_arg(text: str) -> tuple[int, ...]:
    return tuple(sorted(int(x) for x in text.strip("{}").split(",") if x.strip()))


def _bool(text) -> bool:
    if isinstance(text, bool):
        return text
    low = str(text).strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


def read_config(path: str) -> dict[str, str]:
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    for num, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, eq, value = line.partition("=")
        if not eq:
            raise ConfigError(f"{path}:{num}: expected key=value")
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def load_coloring(path: str) -> dict:
    """A limit coloring from JSON (``{"w*3": 1, ...}``) or ``key=value`` lines."""
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ConfigError(f"cannot read coloring {path}: {e}") from e
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        doc = {}
        for line in text.splitlines():
            if line.strip() and not line.startswith("#"):
                k, _, v = line.partition("=")
                doc[k.strip()] = v.strip()
    return {parse_ordinal(k): int(v) for k, v in doc.items()}


def _coloring_fn(spec: str | None, path: str | None):
    """``const:K``, ``mod:Q`` (``w*j -> j mod Q``), ``injective`` or a file."""
    if path:
        table = load_coloring(path)
        return lambda a: table.get(a, 0)
    spec = spec or "const:0"
    kind, _, arg = spec.partition(":")
    if kind == "const":
        k = int(arg or 0)
        return lambda a: k
    if kind == "mod":
        q = int(arg)
        return lambda a: a.as_omega_mul()[0] % q
    if kind == "injective":
        return lambda a: a.as_omega_mul()[0]
    raise ConfigError(f"unknown coloring {spec!r}")


# -- shared option groups --------------------------------------------------


def _universe_opts(p, m=32, w=16):
    p.add_argument("--m", type=int, default=m, help="universe bound w*M")
    p.add_argument("--w", type=int, default=w, help="stored ladder prefix width")
    p.add_argument("--seed", type=int, default=None, help="seed (required for seeded ladders and streams)")
    p.add_argument(
        "--ladders", default="seeded", help="seeded, canonical, or a ladder JSON file"
    )
    p.add_argument("--span", type=int, default=None, help="block span for seeded ladders")


def _out_opts(p):
    p.add_argument("--out-dir", default=".", help="directory for artifacts")


def _universe(args) -> Universe:
    if args.m < 2:
        raise ConfigError("--m must be at least 2")
    if args.w < 1:
        raise ConfigError("--w must be positive")
    return Universe(args.m, args.w)


def _need_seed(args) -> int:
    if args.seed is None:
        raise ConfigError("--seed is required (no wall-clock entropy is used)")
    if not 0 <= args.seed < 2**64:
        raise ConfigError("--seed must be a 64-bit unsigned integer")
    return args.seed


def _ladders(args, u: Universe) -> csequence.LadderSystem:
    kind = args.ladders
    if kind == "canonical":
        return csequence.canonical_ladders(u)
    if kind == "seeded":
        return csequence.seeded_ladders(u, _need_seed(args), args.span)
    try:
        return csequence.LadderSystem.from_json(Path(kind).read_text(), u)
    except OSError as e:
        raise ConfigError(f"cannot read ladders {kind}: {e}") from e


def _write(out_dir: str, name: str, text: str) -> str:
    d = Path(out_dir)
    try:
        d.mkdir(parents=True, exist_ok=True)
        (d / name).write_text(text)
    except OSError as e:
        raise ConfigError(f"cannot write {d / name}: {e}") from e
    return str(d / name)


def _emit(args, doc: dict, human: str):
    if args.json:
        sys.stdout.write(serialize.dumps(serialize.jsonable(doc)))
    else:
        print(human)


def _check(name, ok, witness=None):
    return {"check": name, "ok": bool(ok), "witness": serialize.jsonable(witness)}


def _hm_checks(G, ladders, n, s, k_max, tree=False) -> list[dict]:
    L = 2 * s + 1
    odd = graphprops.shortest_odd_cycle_upto(G, L)
    special = graphprops.find_special_cycle(G)
    level = G.level
    image = {v: ladders.prefix(level(v), n) for v in G.vertices}
    hom = graphprops.homomorphism_violations(G, image, types.specker_type(n, s))
    bounds = {v: [ladders.at(level(v), k) for k in range(k_max)] for v in G.vertices}
    sparse = graphprops.check_hm_sparseness(G, bounds, k_max)
    out = [
        _check("sparseness", not sparse, sparse[:5]),
        _check("special-cycle-free", special is None, special),
        _check("homomorphism", not hom, hom[:5]),
        _check(f"no-odd-cycle-upto-{L}", odd is None, odd),
    ]
    if not tree:
        covered = [b for b in G.vertices if graphprops.is_delta_covered(G, b, ladders.at(b, n))]
        out.append(_check("not-covered", not covered, covered[:5]))
    return out


# -- subcommands -----------------------------------------------------------


def cmd_types(args) -> int:
    op = args.op
    vals = args.values
    try:
        if op == "depth":
            t = _type_arg(vals[0])
            res = types.depth(t)
        elif op == "width":
            res = types.width(_type_arg(vals[0]))
        elif op == "opposite":
            res = types.opposite(_type_arg(vals[0])).word
        elif op == "concat":
            res = types.concat(*(_type_arg(v) for v in vals)).word
        elif op == "specker":
            res = types.specker_type(int(vals[0]), int(vals[1])).word
        elif op == "of":
            res = types.type_of(_set_arg(vals[0]), _set_arg(vals[1])).word
        elif op == "realize":
            a, b = types.realize(_type_arg(vals[0]))
            res = [list(a), list(b)]
        else:
            raise ConfigError(f"unknown types operation {op}")
    except (IndexError, ValueError) as e:
        raise ConfigError(f"types {op}: {e}") from e
    _emit(args, {"op": op, "result": res}, str(res) if not isinstance(res, list) else json.dumps(res))
    return 0


def cmd_specker(args) -> int:
    try:
        G = specker.specker_graph(args.n, args.s, args.N)
    except ValueError as e:
        raise ConfigError(str(e)) from e
    doc = {"n": args.n, "s": args.s, "N": args.N, "vertices": G.vertex_count, "edges": G.edge_count}
    status = 0
    if args.odd:
        odd = graphprops.shortest_odd_cycle_upto(G, args.odd)
        doc["odd_cycle"] = serialize.jsonable(odd and [odd[0], [serialize.spell(v) for v in odd[1]]])
        status = 1 if odd else 0
    if args.chromatic:
        res = coloring.exact_chromatic(G, args.budget)
        doc["chi"] = res.chi
    if args.out:
        text = serialize.dumps(serialize.graph_doc(G)) if args.format == "json" else serialize.to_dot(serialize.graph_doc(G))
        _write(str(Path(args.out).parent), Path(args.out).name, text)
    human = f"S^{args.n}_{args.s} on N={args.N}: {doc['vertices']} vertices, {doc['edges']} edges"
    if "odd_cycle" in doc:
        human += f"; odd cycle <= {args.odd}: {'none' if doc['odd_cycle'] is None else doc['odd_cycle'][0]}"
    if "chi" in doc:
        human += f"; chi = {doc['chi']}"
    _emit(args, doc, human)
    return status


def _check_nsk(args, u):
    if args.n > u.width:
        raise ConfigError(f"--n {args.n} exceeds --w {u.width}")
    k_max = u.width if args.kmax is None else args.kmax
    if k_max > u.width:
        raise ConfigError(f"--kmax {k_max} exceeds --w {u.width}")
    if args.s < 1 or args.n < 2 * args.s * args.s + 1:
        raise ConfigError(f"need s >= 1 and n >= 2s^2+1 (got n={args.n}, s={args.s})")
    return k_max


def cmd_build_hm(args) -> int:
    u = _universe(args)
    k_max = _check_nsk(args, u)
    seed = _need_seed(args)
    L = _ladders(args, u)
    r = hmbuild.Stream(seed, _int_list(args.stream_prefix or ""), args.stream_base, args.stream_slope)
    forced = None
    if args.inject_f:
        f = _coloring_fn(None, args.inject_f)
        forced = hmbuild.force_monochromatic_edge(u, L, r.head(len(r.prefix)), f, args.n, args.s, k_max)
        if forced is not None:
            r = r.with_prefix(forced.prefix)
    build = hmbuild.build_cohen_hm(u, L, r, args.n, args.s, k_max)
    G = build.graph
    report = {"edges": G.edge_count, "stream": r.config(), "checks": []}
    if forced is not None:
        report["forced"] = {"beta": forced.beta, "alpha": forced.alpha, "color": forced.color,
                            "present": forced.alpha in G.lower_neighbors(forced.beta)}
    elif args.inject_f:
        report["forced"] = None
    if args.verify == "all":
        report["checks"] = _hm_checks(G, L, args.n, args.s, k_max)
        same = serialize.graph_doc(hmbuild.replay(build.trace, u)) == serialize.graph_doc(G)
        report["checks"].append(_check("replay", same))
    ok = all(c["ok"] for c in report["checks"])
    report["ok"] = ok
    _write(args.out_dir, "graph.json", serialize.dumps(serialize.graph_doc(G)))
    _write(args.out_dir, "trace.json", serialize.dumps(build.trace.to_dict()))
    _write(args.out_dir, "ladders.json", L.to_json() + "\n")
    _write(args.out_dir, "report.json", serialize.dumps(serialize.jsonable(report)))
    human = f"built {len(G.vertices)} limits, {G.edge_count} edges; " + (
        "all checks passed" if ok else "FAILED: " + ", ".join(c["check"] for c in report["checks"] if not c["ok"])
    )
    _emit(args, report, human)
    return 0 if ok else 1


def cmd_build_tree_hm(args) -> int:
    u = _universe(args)
    k_max = _check_nsk(args, u)
    seed = _need_seed(args)
    L = _ladders(args, u)
    branches = hmbuild.seeded_branches(u, args.branches, seed, args.value_range)
    if args.diag_mod:
        q = args.diag_mod
        c = lambda node: (node.level.as_omega_mul()[0] + sum(node.values)) % q  # noqa: E731
        branches.append(hmbuild.diagonal_branch(u, c))
    build = hmbuild.build_tree_hm(u, L, branches, args.n, args.s, k_max)
    G = build.graph
    report = {"nodes": len(G.vertices), "edges": G.edge_count, "checks": []}
    if args.verify == "all":
        report["checks"] = _hm_checks(G, L, args.n, args.s, k_max, tree=True)
    if args.diag_mod:
        report["diagonal_monochromatic_edges"] = [
            [lo, hi, k] for lo, hi, k in hmbuild.diagonal_hits(build, branches[-1], c)
        ]
    ok = all(ch["ok"] for ch in report["checks"])
    report["ok"] = ok
    _write(args.out_dir, "graph.json", serialize.dumps(serialize.graph_doc(G)))
    _write(args.out_dir, "report.json", serialize.dumps(serialize.jsonable(report)))
    _emit(args, report, f"tree graph: {len(G.vertices)} nodes, {G.edge_count} edges; " + ("ok" if ok else "FAILED"))
    return 0 if ok else 1


def _growth_build(args):
    u = _universe(args)
    seed = _need_seed(args)
    L = _ladders(args, u)
    r = hmbuild.Stream(seed, _int_list(args.stream_prefix or ""), args.stream_base, args.stream_slope)
    f = None
    if not args.name_mode:
        if args.f_file:
            try:
                f = _f_table(Path(args.f_file).read_text().replace("\n", ","))
            except OSError as e:
                raise ConfigError(f"cannot read {args.f_file}: {e}") from e
        elif args.f:
            f = _f_table(args.f)
        else:
            raise ConfigError("give --f, --f-file or --name-mode")
        missing = [k for k in range(args.kmax + 1) if k not in f]
        if missing:
            raise ConfigError(f"f is undefined at {missing}")
    try:
        return growthbuild.build_growth_hm(u, L, r, f, args.kmax, args.name_mode), f
    except ValueError as e:
        raise ConfigError(str(e)) from e


def cmd_build_growth(args) -> int:
    build, _ = _growth_build(args)
    G = build.graph
    bad_layers = growthbuild.layer_functional(G, build.labels)
    report = {"edges": G.edge_count, "params": build.params.rows(), "layer_violations": bad_layers}
    _write(args.out_dir, "graph.json", serialize.dumps(serialize.graph_doc(G, build.labels)))
    _write(args.out_dir, "report.json", serialize.dumps(serialize.jsonable(report)))
    _emit(args, report, f"growth graph: {G.edge_count} labelled edges")
    return 1 if bad_layers else 0


def cmd_growth_report(args) -> int:
    build, _ = _growth_build(args)
    fvals = build.params.f
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "f(k)", "bound", "max_observed_chi", "samples"])
    ok = True
    rows = []
    for k in range(args.kmax + 1):
        rep = coloring.verify_growth_bound(
            build.graph, lambda j: fvals[j], k, args.samples, _need_seed(args) + k, build.labels, args.budget
        )
        w.writerow(rep.csv_row())
        rows.append({"k": k, "ok": rep.ok, "max_chi": rep.max_chi, "skipped": rep.skipped})
        ok = ok and rep.ok
    _write(args.out_dir, "growth.csv", buf.getvalue())
    _emit(args, {"rows": rows, "ok": ok}, buf.getvalue().rstrip())
    return 0 if ok else 1


def _load_graph(path: str):
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read graph {path}: {e}") from e
    return serialize.graph_from_doc(doc)


def cmd_verify(args) -> int:
    G, _ = _load_graph(args.graph)
    checks = []
    odd = graphprops.shortest_odd_cycle_upto(G, args.odd)
    checks.append(_check(f"no-odd-cycle-upto-{args.odd}", odd is None, odd))
    special = graphprops.find_special_cycle(G)
    checks.append(_check("special-cycle-free", special is None, special))
    if args.ladders_file:
        if args.n is None or args.s is None:
            raise ConfigError("homomorphism check needs --n and --s")
        try:
            L = csequence.LadderSystem.from_json(Path(args.ladders_file).read_text())
        except OSError as e:
            raise ConfigError(str(e)) from e
        image = {v: L.prefix(G.level(v), args.n) for v in G.vertices}
        hom = graphprops.homomorphism_violations(G, image, types.specker_type(args.n, args.s))
        checks.append(_check("homomorphism", not hom, hom[:5]))
    ok = all(c["ok"] for c in checks)
    _emit(args, {"checks": checks, "ok": ok},
          "\n".join(f"{c['check']}: {'ok' if c['ok'] else 'FAIL'}" for c in checks))
    return 0 if ok else 1


def cmd_chromatic(args) -> int:
    if args.graph:
        G, _ = _load_graph(args.graph)
    elif args.specker:
        n, s, N = args.specker
        try:
            G = specker.specker_graph(n, s, N)
        except ValueError as e:
            raise ConfigError(str(e)) from e
    else:
        raise ConfigError("give a graph file or --specker n s N")
    try:
        res = coloring.exact_chromatic(G, args.budget)
    except coloring.BudgetExceeded as e:
        _emit(args, {"budget_exceeded": True, "lower": e.lower, "upper": e.upper},
              f"budget exceeded: {e.lower} <= chi <= {e.upper}")
        return 1
    doc = {"chi": res.chi, "coloring": serialize.coloring_doc(res.coloring), "nodes": res.nodes}
    _emit(args, doc, f"chi = {res.chi}")
    return 0


def _type_sequence(text: str) -> guessing.TypeSequence:
    try:
        return guessing.TypeSequence([types.DisjointType.parse(t) for t in text.split(",") if t.strip()])
    except ValueError as e:
        raise ConfigError(str(e)) from e


def cmd_guess(args) -> int:
    u = _universe(args)
    if args.family:
        fam = [
            [parse_ordinal(x) for x in part.split(";") if x.strip()]
            for part in args.family.split("/") if part.strip()
        ]
        try:
            L = csequence.rich_ladders(u, fam)
        except csequence.LadderError as e:
            raise ConfigError(str(e)) from e
    else:
        L = _ladders(args, u)
    T = _type_sequence(args.types)
    try:
        if args.mode == "check":
            f = _coloring_fn(args.coloring, args.coloring_file)
            w = guessing.check_guessing(L, T, f)
            doc = {"witness": w and list(w)}
            human = "no witness" if w is None else f"witness: alpha={w[0]} beta={w[1]} k={w[2]}"
        elif args.mode == "strong":
            f = _coloring_fn(args.coloring, args.coloring_file)
            w = guessing.check_strong_guessing(L, T, f, args.witnesses)
            doc = {"witness": w and {"beta": w[0], "k": w[1], "alphas": w[2]}}
            human = "no witness" if w is None else f"beta={w[0]} k={w[1]} partners={', '.join(map(str, w[2]))}"
        else:
            start = guessing.PosetCondition(frozenset(parse_ordinal(x) for x in _split(args.x)))
            p = guessing.antibuild(L, T, start)
            viol = guessing.validate_condition(p, L, T)
            w = guessing.check_guessing(L, T, p.f)
            doc = {"condition": json.loads(p.to_json()), "violations": viol, "witness": w and list(w)}
            human = p.to_json() + ("\nvalid; defeats guessing" if not viol and w is None else "\nFAILED")
            _emit(args, doc, human)
            return 0 if not viol and w is None else 1
    except (guessing.GuessingError, guessing.NoAdmissibleType) as e:
        raise ConfigError(str(e)) from e
    _emit(args, doc, human)
    return 0


def _split(text):
    return [x for x in (text or "").split(",") if x.strip()]


def cmd_export(args) -> int:
    G, labels = _load_graph(args.graph)
    doc = serialize.graph_doc(G, labels or None)
    text = serialize.dumps(doc) if args.format == "json" else serialize.to_dot(doc)
    if args.out:
        _write(str(Path(args.out).parent), Path(args.out).name, text)
    else:
        sys.stdout.write(text)
    return 0


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--config", help="key=value file of option defaults")

    p = argparse.ArgumentParser(prog="hm-forge", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("types", parents=[common], help="disjoint type algebra")
    t.add_argument("op", choices=["depth", "width", "opposite", "concat", "specker", "of", "realize"])
    t.add_argument("values", nargs="*")
    t.set_defaults(func=cmd_types)

    s = sub.add_parser("specker", parents=[common], help="materialize S^n_s over n-subsets of N")
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--s", type=int, default=1)
    s.add_argument("--N", type=int, default=8)
    s.add_argument("--odd", type=int, default=None, help="search odd cycles up to this length")
    s.add_argument("--chromatic", action="store_true")
    s.add_argument("--budget", type=int, default=coloring.DEFAULT_BUDGET)
    s.add_argument("--out")
    s.add_argument("--format", choices=["json", "dot"], default="json")
    s.set_defaults(func=cmd_specker)

    def stream_opts(q):
        q.add_argument("--stream-prefix", default="", help="comma-separated stream prefix")
        q.add_argument("--stream-base", type=int, default=8)
        q.add_argument("--stream-slope", type=int, default=2)

    b = sub.add_parser("build-hm", parents=[common], help="stream-driven HM construction")
    _universe_opts(b)
    b.add_argument("--n", type=int, default=3)
    b.add_argument("--s", type=int, default=1)
    b.add_argument("--kmax", type=int, default=None)
    stream_opts(b)
    b.add_argument("--inject-f", default=None, help="coloring file; force a monochromatic edge")
    b.add_argument("--verify", choices=["all", "none"], default="all")
    _out_opts(b)
    b.set_defaults(func=cmd_build_hm)

    tr = sub.add_parser("build-tree-hm", parents=[common], help="tree HM construction on seeded branches")
    _universe_opts(tr)
    tr.add_argument("--n", type=int, default=3)
    tr.add_argument("--s", type=int, default=1)
    tr.add_argument("--kmax", type=int, default=None)
    tr.add_argument("--branches", type=int, default=9)
    tr.add_argument("--value-range", type=int, default=4)
    tr.add_argument("--diag-mod", type=int, default=3, help="add a diagonal branch for c = (j + sum) mod Q; 0 to skip")
    tr.add_argument("--verify", choices=["all", "none"], default="all")
    _out_opts(tr)
    tr.set_defaults(func=cmd_build_tree_hm)

    def growth_opts(q):
        _universe_opts(q, m=48, w=32)
        q.add_argument("--f", default=None, help='f table "k:v,k:v,..."')
        q.add_argument("--f-file", default=None)
        q.add_argument("--kmax", type=int, default=2)
        q.add_argument("--name-mode", action="store_true")
        stream_opts(q)
        _out_opts(q)

    g = sub.add_parser("build-growth", parents=[common], help="slow-growth HM construction")
    growth_opts(g)
    g.set_defaults(func=cmd_build_growth)

    gr = sub.add_parser("growth-report", parents=[common], help="sampled chi bounds as CSV")
    growth_opts(gr)
    gr.add_argument("--samples", type=int, default=200)
    gr.add_argument("--budget", type=int, default=coloring.DEFAULT_BUDGET)
    gr.set_defaults(func=cmd_growth_report)

    v = sub.add_parser("verify", parents=[common], help="verify an exported graph")
    v.add_argument("graph")
    v.add_argument("--odd", type=int, default=3)
    v.add_argument("--ladders-file", default=None)
    v.add_argument("--n", type=int, default=None)
    v.add_argument("--s", type=int, default=None)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("chromatic", parents=[common], help="exact chromatic number")
    c.add_argument("graph", nargs="?")
    c.add_argument("--specker", type=int, nargs=3, metavar=("N_", "S", "NN"))
    c.add_argument("--budget", type=int, default=coloring.DEFAULT_BUDGET)
    c.set_defaults(func=cmd_chromatic)

    gu = sub.add_parser("guess", parents=[common], help="type guessing checks and the anti-guessing build")
    gu.add_argument("mode", choices=["check", "strong", "antibuild"])
    _universe_opts(gu, m=16, w=16)
    gu.add_argument("--types", default="t^3_1", help="comma-separated type sequence")
    gu.add_argument("--family", default=None, help='initial segments "0;1;3/2;4;5" for rich ladders')
    gu.add_argument("--coloring", default=None, help="const:K, mod:Q or injective")
    gu.add_argument("--coloring-file", default=None)
    gu.add_argument("--witnesses", type=int, default=1)
    gu.add_argument("--x", default="", help="ordinals of x_p for antibuild")
    gu.set_defaults(func=cmd_guess)

    e = sub.add_parser("export", parents=[common], help="convert a graph document")
    e.add_argument("graph")
    e.add_argument("--format", choices=["json", "dot"], default="dot")
    e.add_argument("--out")
    e.set_defaults(func=cmd_export)
    return p


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    values = read_config(known.config)
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    for subparser in sub.choices.values():
        dests = {a.dest: a for a in subparser._actions}
        defaults = {}
        for key, val in values.items():
            act = dests.get(key)
            if act is None:
                continue
            if isinstance(act, argparse._StoreTrueAction):
                defaults[key] = _bool(val)
            elif act.nargs not in (None, "?"):
                defaults[key] = [act.type(x) if act.type else x for x in val.split()]
            else:
                defaults[key] = act.type(val) if act.type else val
        subparser.set_defaults(**defaults)
    known_keys = {a.dest for sp in sub.choices.values() for a in sp._actions}
    unknown = sorted(set(values) - known_keys)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        return args.func(args)
    except ConfigError as e:
        print(f"hm-forge: {e}", file=sys.stderr)
        return 2
    except (csequence.HorizonError, csequence.LadderError, types.InvalidType) as e:
        print(f"hm-forge: {e}", file=sys.stderr)
        return 2
    except SystemExit as e:  # argparse usage errors
        return int(e.code) if isinstance(e.code, int) else 2


if __name__ == "__main__":
    sys.exit(main())
