"""The ``qm`` command line.

Exit status is 0 on success (``unknown`` verdicts included), 1 on a domain
error (printed as ``error: <code>: <detail>``) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from collections.abc import Sequence

from . import catalog
from .convergence import (
    Trajectory,
    af_divergence_gadget,
    classify_af,
    classify_lf,
    lf_divergence_gadget,
    strong_certificate,
    weak_certificate,
)
from .encoding import lf_decode, lf_encode
from .errors import MalformedInput, QuiverError
from .fraisse import GenericQuiver, back_and_forth, steer_toward
from .framing import c_vector, color, frame, mutate_framed_word
from .linking import build_sequence_from_family, is_linked
from .mutclass import explore_class
from .properties import (
    Abundant,
    Acyclic,
    Connected,
    Finite,
    HasWeightIn,
    MutationAcyclicWithin,
    TameWithin,
    check_property,
)
from .quiver import GENERATORS, Quiver, QuiverGenerator, mutate_word
from .sequences import REGISTRY, descriptor_from_json
from .words import parse_word, reduce_word, reduction_trace


# -- input helpers --------------------------------------------------------------


def _load_json(text: str):
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"not JSON and not a readable file: {exc.msg}") from None


def load_quiver(spec: str, *, allow_generator: bool = False) -> Quiver | QuiverGenerator:
    if spec in catalog.NAMED:
        return catalog.NAMED[spec]()
    if spec in GENERATORS:
        if not allow_generator:
            raise MalformedInput(f"{spec} is infinite; this command needs a finite quiver")
        return GENERATORS[spec]()
    return Quiver.from_json(_load_json(spec))


def load_descriptor(spec: str):
    name, _, arg = spec.partition(":")
    if name in REGISTRY and not spec.lstrip().startswith("{"):
        if name == "family_concat":
            raise MalformedInput("give family_concat as JSON")
        if not arg:
            return descriptor_from_json({"kind": "generator", "id": name, "params": {}})
        key = {"shifted_ray": "k", "repeat": "i", "periodic": "word"}.get(name)
        if key is None:
            raise MalformedInput(f"{name} takes no parameter")
        value = list(parse_word(arg)) if key == "word" else int(arg)
        return descriptor_from_json({"kind": "generator", "id": name, "params": {key: value}})
    return descriptor_from_json(_load_json(spec))


def parse_vertex_set(text: str) -> frozenset[int]:
    out: set[int] = set()
    for part in text.replace(" ", "").split(","):
        if not part:
            continue
        lo, sep, hi = part.partition("..")
        try:
            out.update(range(int(lo), int(hi) + 1) if sep else [int(lo)])
        except ValueError:
            raise MalformedInput(f"bad vertex set {text!r}") from None
    return frozenset(out)


def _word(text: str):
    try:
        return parse_word(text)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from None


def _jsonable(x):
    if isinstance(x, float) and math.isinf(x):
        return "omega"
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


# -- commands ---------------------------------------------------------------------


def _emit_quiver(q: Quiver, fmt: str) -> str:
    return q.to_dot() if fmt == "dot" else q.dumps()


def cmd_mutate(a):
    q = load_quiver(a.quiver)
    return _emit_quiver(mutate_word(q, _word(a.at)), a.format)


def cmd_check(a):
    props = {
        "finite": lambda: Finite(),
        "connected": lambda: Connected(),
        "acyclic": lambda: Acyclic(),
        "abundant": lambda: Abundant(),
        "has-weight": lambda: HasWeightIn(parse_vertex_set(a.weights or "")),
        "mutation-acyclic": lambda: MutationAcyclicWithin(a.depth),
        "tame": lambda: TameWithin(a.depth),
    }
    if a.prop not in props:
        raise MalformedInput(f"unknown property {a.prop!r}; known: {', '.join(props)}")
    try:
        prop = props[a.prop]()
    except ValueError as exc:
        raise MalformedInput(str(exc)) from None
    return check_property(load_quiver(a.quiver), prop).value


def cmd_encode(a):
    return lf_encode(load_quiver(a.quiver), a.window)


def cmd_decode(a):
    try:
        codes = [int(c) for c in a.codes.split(",") if c.strip()]
    except ValueError:
        raise MalformedInput(f"codes must be integers, got {a.codes!r}") from None
    return _emit_quiver(lf_decode(codes), a.format)


def cmd_reduce(a):
    return list(reduce_word(_word(a.word)))


def cmd_trace(a):
    tr = reduction_trace(_word(a.word), a.max_stages)
    return {
        "stages": [list(s) for s in tr.stages],
        "rank": tr.rank,
        "letter_ranks": {str(k): v for k, v in sorted(tr.letter_ranks.items())},
    }


def cmd_linking(a):
    return is_linked(load_descriptor(a.desc), parse_vertex_set(a.set), a.horizon).value


def cmd_build_seq(a):
    family = _load_json(a.family)
    if not isinstance(family, list) or not all(isinstance(s, list) for s in family):
        raise MalformedInput("a family is a JSON list of integer lists")
    d = build_sequence_from_family(family)
    return {"descriptor": d.to_json(), "word": list(d.prefix(a.horizon))}


def cmd_cvec(a):
    fq = mutate_framed_word(frame(load_quiver(a.quiver)), _word(a.word))
    vertices = sorted(fq.mutable) if a.vertex is None else [a.vertex]
    out = {}
    for x in vertices:
        entry = {"c_vector": c_vector(fq, x).to_json()}
        try:
            entry["color"] = color(fq, x).value
        except QuiverError:
            entry["color"] = None
        out[str(x)] = entry
    return out


def _trajectory(a) -> Trajectory:
    return Trajectory(load_quiver(a.quiver, allow_generator=True), load_descriptor(a.desc))


def _snapshot(t: Trajectory, window):
    return t.view(window) if window else t.current


def cmd_trajectory(a):
    t = _trajectory(a)
    window = parse_vertex_set(a.window) if a.window else None
    if window is None and isinstance(t.initial, QuiverGenerator):
        raise MalformedInput("an infinite initial quiver needs --window")
    frames = [{"step": 0, "quiver": _snapshot(t, window).to_json()}]
    for k in range(1, a.steps + 1):
        t.step()
        if k == a.steps or (a.emit_every and k % a.emit_every == 0):
            frames.append({"step": k, "quiver": _snapshot(t, window).to_json()})
    return frames


def cmd_certify(a):
    t = _trajectory(a)
    fn = strong_certificate if a.mode == "strong" else weak_certificate
    return fn(t, parse_vertex_set(a.window), a.horizon).to_json()


def cmd_classify_lf(a):
    return classify_lf(load_descriptor(a.desc), a.horizon).to_json()


def cmd_classify_af(a):
    return classify_af(load_descriptor(a.desc)).to_json()


def cmd_gadget(a):
    d = load_descriptor(a.desc)
    v = parse_vertex_set(a.protect)
    q = load_quiver(a.quiver) if a.quiver else Quiver()
    if a.kind == "af":
        g = af_divergence_gadget(q, v, d, steps=a.steps)
    else:
        g = lf_divergence_gadget(d, v, a.segments, q=q, anchor=a.anchor, horizon=a.horizon)
    if a.format == "dot":
        return g.quiver.to_dot()
    return g.to_json()


def cmd_fraisse(a):
    g = GenericQuiver(a.seed)
    if a.action == "steer":
        target = load_quiver(a.target, allow_generator=True)
        return steer_toward(g, target, a.radius).to_json()
    return [p.to_json() for p in back_and_forth(g, a.at, a.stages)]


def cmd_mutclass(a):
    node = explore_class(load_quiver(a.quiver), a.max_weight, a.max_nodes)
    if a.dot:
        with open(a.dot, "w", encoding="utf-8") as fh:
            fh.write(node.representative.to_dot())
    return node.to_json()


def cmd_examples(a):
    if not a.paper:
        return "\n".join(sorted(catalog.NAMED))
    results = catalog.run_worked_examples()
    lines = [f"{'PASS' if ok else 'FAIL'} {name}" + (f"  ({why})" if why else "") for name, ok, why in results]
    failed = sum(1 for _, ok, _ in results if not ok)
    lines.append(f"{len(results) - failed}/{len(results)} passed")
    return _Exit("\n".join(lines), 1 if failed else 0)


class _Exit:
    def __init__(self, text: str, code: int):
        self.text, self.code = text, code


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def globals_parser(suppress: bool) -> argparse.ArgumentParser:
        # Subcommands repeat the global flags with suppressed defaults, so a
        # flag given before the verb is not overwritten.
        g = argparse.ArgumentParser(add_help=False)
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        g.add_argument("--seed", type=int, default=d(0), help="seed for anything random (default 0)")
        g.add_argument("--horizon", type=int, default=d(200), help="letters to scan or steps to run (default 200)")
        g.add_argument("--format", choices=["json", "dot", "text"], default=d("json"))
        g.add_argument("--out", default=d(None), help="write the result here instead of standard output")
        return g

    common = globals_parser(False)
    local = globals_parser(True)

    p = argparse.ArgumentParser(prog="qm", description="Quiver mutation toolkit.", parents=[common])
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text, parents=[local])
        sp.set_defaults(fn=fn)
        return sp

    s = verb("mutate", cmd_mutate, "mutate a quiver along a word")
    s.add_argument("--quiver", required=True)
    s.add_argument("--at", required=True, help="vertex or comma-separated word")

    s = verb("check", cmd_check, "check a property")
    s.add_argument("--quiver", required=True)
    s.add_argument("--prop", required=True)
    s.add_argument("--depth", type=int, default=4)
    s.add_argument("--weights", help="weights for has-weight, e.g. 2,3")

    s = verb("encode", cmd_encode, "integer codes of a quiver window")
    s.add_argument("--quiver", required=True)
    s.add_argument("--window", type=int, required=True)

    s = verb("decode", cmd_decode, "quiver from integer codes")
    s.add_argument("--codes", required=True)

    s = verb("reduce", cmd_reduce, "reduce a word")
    s.add_argument("--word", required=True)

    s = verb("trace", cmd_trace, "one-step reduction stages and ranks")
    s.add_argument("--word", required=True)
    s.add_argument("--max-stages", type=int)

    s = verb("linking", cmd_linking, "whether a vertex set is linked")
    s.add_argument("--desc", required=True)
    s.add_argument("--set", required=True)

    s = verb("build-seq", cmd_build_seq, "sequence whose minimal linked sets are a given antichain")
    s.add_argument("--family", required=True)

    s = verb("cvec", cmd_cvec, "c-vectors after a framed mutation word")
    s.add_argument("--quiver", required=True)
    s.add_argument("--word", required=True)
    s.add_argument("--vertex", type=int)

    s = verb("trajectory", cmd_trajectory, "run a sequence on a quiver")
    s.add_argument("--quiver", required=True)
    s.add_argument("--desc", required=True)
    s.add_argument("--steps", type=int, required=True)
    s.add_argument("--emit-every", type=int)
    s.add_argument("--window", help="vertex set to report, required for infinite quivers")

    s = verb("certify", cmd_certify, "weak or strong stabilization certificate")
    s.add_argument("--quiver", required=True)
    s.add_argument("--desc", required=True)
    s.add_argument("--mode", choices=["weak", "strong"], required=True)
    s.add_argument("--window", required=True)

    s = verb("classify-lf", cmd_classify_lf, "convergence classification on locally finite quivers")
    s.add_argument("--desc", required=True)

    s = verb("classify-af", cmd_classify_af, "density verdicts on arrow-finite quivers")
    s.add_argument("--desc", required=True)

    s = verb("gadget", cmd_gadget, "build a divergence gadget")
    s.add_argument("--kind", choices=["af", "lf"], required=True)
    s.add_argument("--desc", required=True)
    s.add_argument("--protect", default="", help="protected vertex set")
    s.add_argument("--quiver", help="finite quiver supported on the protected set")
    s.add_argument("--segments", type=int, default=3)
    s.add_argument("--anchor", type=int)
    s.add_argument("--steps", type=int, default=50)

    s = verb("fraisse", cmd_fraisse, "generic quiver: steering or back-and-forth")
    s.add_argument("action", choices=["steer", "baf"])
    s.add_argument("--target")
    s.add_argument("--radius", type=int, default=3)
    s.add_argument("--at", type=int, default=1)
    s.add_argument("--stages", type=int, default=4)

    s = verb("mutclass", cmd_mutclass, "explore a mutation class up to isomorphism")
    s.add_argument("--quiver", required=True)
    s.add_argument("--max-weight", type=int, default=4)
    s.add_argument("--max-nodes", type=int, default=200)
    s.add_argument("--dot", help="write the representative as DOT to this path")

    s = verb("examples", cmd_examples, "named quivers, or rerun the worked examples")
    s.add_argument("--paper", action="store_true")
    return p


def _render(result, fmt: str) -> str:
    if isinstance(result, str):
        return result
    if fmt == "text" and isinstance(result, list) and all(isinstance(x, int) for x in result):
        return " ".join(map(str, result))
    return json.dumps(_jsonable(result), separators=(",", ":"), sort_keys=True)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verb == "fraisse" and args.action == "steer" and not args.target:
        parser.error("fraisse steer needs --target")
    try:
        result = args.fn(args)
    except QuiverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    code = 0
    if isinstance(result, _Exit):
        result, code = result.text, result.code
    text = _render(result, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
