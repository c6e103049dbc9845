"""Check, construct and certify extension-preservation objects on finite graphs.

Exit codes: 0 claim verified / computation done, 1 claim refuted, 2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .cliquewidth import CliqueExpression, eval_clique_expression, expression_to_h, hn_clique_expression
from .constructions import (
    build_gadget, build_gadget_prime, build_H, build_half_graph, half_graph_sides,
)
from .embedding import find_embeddings
from .flip import (
    bottleneck_cover, exact_type_oracle, flipflat_probe, signature_type_oracle, theorem_constants,
    verify_cover, verify_flat_witness,
)
from .graph import Flip, GraphError, LabeledStructure, apply_flip, flip_sum, relabel
from .graphio import GraphDocument, load_document
from .logic import (
    Definitions, EvaluationError, Evaluator, FormulaSyntaxError, TransformError, evaluate_reference,
    free_vars, parse_formula, to_text, translate_flip,
)
from .phi import NotAModel, chain_certificate, check_minimal, check_phi, preservation_fuzz
from .sctree import SCTree, double_sc_tree, eval_sc_tree


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _digest(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


class Ctx:
    def __init__(self, argv: list[str], args, out):
        self.argv = argv
        self.args = args
        self.out = out
        self.inputs: dict[str, str] = {}

    def doc(self, path: str) -> GraphDocument:
        self.inputs[path] = _digest(path)
        return load_document(path)

    def read_json(self, path: str):
        self.inputs[path] = _digest(path)
        return json.loads(Path(path).read_text(encoding="utf-8"))

    def emit(self, verdict, witnesses: dict, human: str, seed=None) -> None:
        if self.args.json:
            cert = {
                "command": ["prescheck"] + self.argv,
                "inputs": dict(sorted(self.inputs.items())),
                "verdict": verdict,
                "witnesses": witnesses,
                "seed": seed,
                "version": __version__,
            }
            self.out.write(json.dumps(cert, sort_keys=True, indent=2) + "\n")
        else:
            self.out.write(human.rstrip("\n") + "\n")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


# --- subcommands ------------------------------------------------------------

FAMILIES = ("H", "gadget", "gadget-prime", "half-graph")


def cmd_construct(ctx: Ctx) -> int:
    a = ctx.args
    if a.family == "H":
        ng = build_H(a.n if a.n is not None else 7)
    elif a.family == "gadget":
        ng = build_gadget()
    elif a.family == "gadget-prime":
        ng = build_gadget_prime()
    else:
        ng = build_half_graph(a.n if a.n is not None else 4)
    part = half_graph_sides(ng.graph.order // 2) if a.family == "half-graph" else None
    doc = GraphDocument(ng.graph, ng.names, part).to_json()
    ctx.emit(True, {"graph": doc}, _dump(doc))
    return 0


def _phi_opts(a) -> dict:
    return {"literal_v": a.literal_v, "unique_guard_both": a.unique_guard != "inner"}


def cmd_check_phi(ctx: Ctx) -> int:
    G = ctx.doc(ctx.args.graph).graph
    ok, w = check_phi(G, **_phi_opts(ctx.args))
    wit = {"tuple": None}
    if w is not None:
        wit = w.to_json()
        if ok:
            wit["chains"] = chain_certificate(G, w).to_json()
    ctx.emit(ok, wit, f"{'true' if ok else 'false'}")
    return 0 if ok else 1


def cmd_minimal_model(ctx: Ctx) -> int:
    a = ctx.args
    G = ctx.doc(a.graph).graph
    mode = "full-enumeration" if a.full else "vertex-deletion"
    try:
        ok = check_minimal(G, mode, threads=a.threads, **_phi_opts(a))
    except NotAModel:
        ctx.emit(False, {"mode": mode, "model": False}, "false (not a model)")
        return 1
    ctx.emit(ok, {"mode": mode, "model": True}, "true" if ok else "false")
    return 0 if ok else 1


def cmd_embeddings(ctx: Ctx) -> int:
    a = ctx.args
    P = ctx.doc(a.pattern).graph
    H = ctx.doc(a.host).graph
    embs = find_embeddings(P, H, limit=a.limit)
    pairs = [e.pairs() for e in embs]
    human = str(len(embs)) if a.count_only else _dump(pairs)
    ctx.emit(len(embs), {"count": len(embs), "embeddings": [] if a.count_only else pairs}, human)
    return 0


def _flip_inputs(ctx: Ctx):
    d = ctx.doc(ctx.args.graph)
    if d.partition is None or d.flip is None:
        raise UsageError("graph document needs 'partition' and 'flip'")
    return d


def cmd_flip(ctx: Ctx) -> int:
    d = _flip_inputs(ctx)
    out = GraphDocument(apply_flip(d.graph, d.partition, d.flip), d.labels, d.partition).to_json()
    ctx.emit(True, {"graph": out}, _dump(out))
    return 0


def cmd_flipsum(ctx: Ctx) -> int:
    d = _flip_inputs(ctx)
    G = flip_sum(d.graph, d.partition, d.flip)
    out = GraphDocument(G).to_json()
    ctx.emit(True, {"graph": out}, _dump(out))
    return 0


def _formula_text(ctx: Ctx) -> str:
    a = ctx.args
    if a.formula_file:
        ctx.inputs[a.formula_file] = _digest(a.formula_file)
        return Path(a.formula_file).read_text(encoding="utf-8")
    if a.formula is None:
        raise UsageError("give --formula or --formula-file")
    return a.formula


def cmd_translate(ctx: Ctx) -> int:
    a = ctx.args
    pairs = json.loads(a.flip)
    F = Flip(a.k, frozenset((int(i), int(j)) for i, j in pairs))
    f = parse_formula(_formula_text(ctx))
    g = translate_flip(f, a.k, F, literal=a.literal)
    text = to_text(g)
    ctx.emit(True, {"formula": text}, text)
    return 0


def cmd_eval(ctx: Ctx) -> int:
    a = ctx.args
    d = ctx.doc(a.graph)
    f = parse_formula(_formula_text(ctx), Definitions(max_part=d.partition.k if d.partition else None))
    assignment = {}
    for item in a.assign or []:
        name, _, val = item.partition("=")
        if not val.lstrip("-").isdigit():
            raise UsageError(f"bad assignment {item!r}")
        assignment[name] = int(val)
    missing = free_vars(f) - set(assignment)
    if missing:
        raise UsageError(f"unassigned free variables {sorted(missing)}")
    S = LabeledStructure(d.graph, d.partition, d.labels)
    ok = evaluate_reference(S, f, assignment) if a.reference else Evaluator(S).evaluate(f, assignment)
    ctx.emit(ok, {"evaluator": "reference" if a.reference else "compiled"}, "true" if ok else "false")
    return 0 if ok else 1


def cmd_cover(ctx: Ctx) -> int:
    a = ctx.args
    d = ctx.doc(a.graph)
    S = LabeledStructure(d.graph, d.partition)
    make = exact_type_oracle if a.oracle == "exact" else signature_type_oracle
    cert = bottleneck_cover(S, make(a.q, a.d, a.headroom), a.d, a.n)
    problems = verify_cover(S, cert)
    wit = cert.to_json()
    wit["problems"] = problems
    ctx.emit(not problems, wit, _dump(wit))
    return 0 if not problems else 1


def cmd_constants(ctx: Ctx) -> int:
    a = ctx.args
    c = theorem_constants(a.rho, a.s, a.gamma, a.ell, a.p)
    ctx.emit(c.equations_hold(), c.to_json(), _dump(c.to_json()))
    return 0


def cmd_flipflat(ctx: Ctx) -> int:
    a = ctx.args
    G = ctx.doc(a.graph).graph
    w = flipflat_probe(G, a.r, a.k, a.budget, a.seed)
    wit = w.to_json()
    ok = verify_flat_witness(G, w.partition, w.flip, w.independent, a.r, a.m)
    wit["m"] = a.m
    ctx.emit(ok, wit, _dump(wit), seed=a.seed)
    return 0 if ok else 1


def cmd_fuzz(ctx: Ctx) -> int:
    a = ctx.args
    sizes = tuple(int(x) for x in a.sizes.split(","))
    rep = preservation_fuzz(a.trials, sizes, a.seed, a.max_extra, hn_only=a.hn_only)
    ok = not rep["violations"]
    ctx.emit(ok, rep, _dump(rep), seed=a.seed)
    return 0 if ok else 1


def cmd_sc(ctx: Ctx) -> int:
    a = ctx.args
    T = SCTree.from_json(ctx.read_json(a.tree))
    G = eval_sc_tree(T)
    wit = {"graph": GraphDocument(G).to_json(), "height": T.height()}
    if a.path is None:
        ctx.emit(True, wit, _dump(wit["graph"]))
        return 0
    steps = [int(x) for x in a.path.split(",") if x != ""]
    T2, P, F = double_sc_tree(T, steps)
    same = eval_sc_tree(T2) == flip_sum(G, P, F)
    wit.update({"doubled": T2.to_json(), "partition": list(P.part_of), "k": P.k,
                "flip": [list(p) for p in F.sorted_pairs()], "matches_flip_sum": same,
                "doubled_height": T2.height()})
    ctx.emit(same, wit, _dump(wit))
    return 0 if same else 1


def cmd_cw(ctx: Ctx) -> int:
    a = ctx.args
    if a.expression:
        doc = ctx.read_json(a.expression)
        # accept the output of `cw --n` (plain or certificate) as well as a bare expression
        doc = doc.get("witnesses", doc)
        e = CliqueExpression.from_json(doc.get("expression", doc))
        G, labels = eval_clique_expression(e)
        wit = {"graph": GraphDocument(G).to_json(), "width": e.width(), "linear": e.is_linear()}
        ctx.emit(True, wit, _dump(wit))
        return 0
    if a.n is None:
        raise UsageError("give --n or an expression file")
    e = hn_clique_expression(a.n)
    G, to_h = expression_to_h(a.n)
    same = relabel(G, [to_h[i] for i in range(G.order)]) == build_H(a.n).graph
    ok = same and e.width() <= 4
    wit = {"expression": e.to_json(), "width": e.width(), "linear": e.is_linear(),
           "matches_H": same}
    ctx.emit(ok, wit, _dump(wit))
    return 0 if ok else 1


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="prescheck", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--json", action="store_true", help="emit a JSON certificate")
        sp.set_defaults(fn=fn)
        return sp

    def phi_flags(sp):
        sp.add_argument("--literal-v", action="store_true",
                        help="read the V guard as non-neighbours of v1 only")
        sp.add_argument("--unique-guard", choices=("both", "inner"), default="both")

    sp = add("construct", cmd_construct, "emit a graph family member")
    sp.add_argument("family", choices=FAMILIES)
    sp.add_argument("--n", type=int)

    sp = add("check-phi", cmd_check_phi, "model-check the order-encoding sentence")
    sp.add_argument("graph")
    phi_flags(sp)

    sp = add("minimal-model", cmd_minimal_model, "check minimality among induced subgraphs")
    sp.add_argument("graph")
    sp.add_argument("--full", action="store_true", help="enumerate all gadget-containing subsets")
    sp.add_argument("--threads", type=int, default=1)
    phi_flags(sp)

    sp = add("embeddings", cmd_embeddings, "list induced embeddings")
    sp.add_argument("pattern")
    sp.add_argument("host")
    sp.add_argument("--limit", type=int)
    sp.add_argument("--count-only", action="store_true")

    sp = add("flip", cmd_flip, "apply the document's flip")
    sp.add_argument("graph")
    sp = add("flipsum", cmd_flipsum, "flip-sum of the document's graph")
    sp.add_argument("graph")

    sp = add("translate", cmd_translate, "replace edge atoms by flipped edge formulas")
    sp.add_argument("--formula")
    sp.add_argument("--formula-file")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--flip", default="[]", help="JSON list of 0-based part pairs")
    sp.add_argument("--literal", action="store_true",
                    help="bare XOR chain, without the x != y guard for diagonal pairs")

    sp = add("eval", cmd_eval, "evaluate a formula on a graph document")
    sp.add_argument("graph")
    sp.add_argument("--formula")
    sp.add_argument("--formula-file")
    sp.add_argument("--assign", action="append", help="var=vertex")
    sp.add_argument("--reference", action="store_true", help="use the unoptimised evaluator")

    sp = add("cover", cmd_cover, "bottleneck covering certificate")
    sp.add_argument("graph")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--oracle", choices=("signature", "exact"), default="signature")
    sp.add_argument("--headroom", type=int, default=0)

    sp = add("constants", cmd_constants, "constant schedule")
    for flag in ("--rho", "--s", "--gamma", "--ell", "--p"):
        sp.add_argument(flag, type=int, required=True)

    sp = add("flipflat", cmd_flipflat, "search for a flip with a large r-independent set")
    sp.add_argument("graph")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--budget", type=int, default=1000)
    sp.add_argument("--m", type=int, default=0)
    sp.add_argument("--seed", type=int, required=True)

    sp = add("preservation-fuzz", cmd_fuzz, "random extension pairs")
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--sizes", default="7,8,9,10")
    sp.add_argument("--max-extra", type=int, default=4)
    sp.add_argument("--hn-only", action="store_true", help="only H_n bases")

    sp = add("sc", cmd_sc, "evaluate or double an SC tree")
    sp.add_argument("tree")
    sp.add_argument("--path", help="comma-separated child indices from the root")

    sp = add("cw", cmd_cw, "clique-width expressions")
    sp.add_argument("expression", nargs="?")
    sp.add_argument("--n", type=int)

    for sp in sub.choices.values():
        if "--threads" not in sp._option_string_actions:
            sp.add_argument("--threads", type=int, default=1, help="worker threads (default 1)")
    return p


def run(argv: list[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.threads < 1:
            raise UsageError("--threads must be positive")
        return args.fn(Ctx(list(argv), args, out))
    except UsageError as exc:
        err.write(f"prescheck: error: {exc}\n")
        return 2
    except (GraphError, FormulaSyntaxError, TransformError, EvaluationError, OSError,
            json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        err.write(f"prescheck: error: {exc}\n")
        return 2


def main(argv=None) -> int:
    try:
        return run(sys.argv[1:] if argv is None else list(argv))
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
