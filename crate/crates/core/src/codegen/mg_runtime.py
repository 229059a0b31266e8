"""Runtime shared by programs emitted by mglite.

It defines the errors raised by emitted code, builds test domains from the
host type hooks, samples oracle inputs exactly like the compiler's own
runner, and renders oracle reports in the same text and JSON forms.

Command line:
    python mg_runtime.py call PROGRAM OP [--arg TEXT | --arg-file PATH]...
    python mg_runtime.py probe PROGRAM BUDGET SEED
    python mg_runtime.py batch PROGRAM OP FILE

`batch` reads a JSON list of argument lists (texts of the non-out
arguments) and prints a JSON list of outcomes, one per call.
"""

import importlib
import itertools
import json
import os
import sys
import time

MASK = (1 << 64) - 1


class GuardViolation(Exception):
    """A guarded operation was called outside its guard."""

    def __init__(self, op):
        super().__init__("guard of `%s` violated" % op)
        self.op = op


class Unbound(Exception):
    """An operation bound to another backend was called."""


class Discard(Exception):
    def __init__(self, op):
        super().__init__(op)
        self.op = op


class AssertFailed(Exception):
    def __init__(self, location):
        super().__init__(location)
        self.location = location


def check(cond, location):
    if not cond:
        raise AssertFailed(location)


def direct(name, guard, fn, *args):
    """Calls fn from an axiom body: an unmet guard discards the input."""
    if not guard(*args):
        raise Discard(name)
    return fn(*args)


def load(path):
    return importlib.import_module(path)


def eq_predicate(a, b):
    return a == b


def show_predicate(v):
    return "true" if v else "false"


def hooks_of(program, ty):
    inst, host_name, _ = program.TYPES[ty]
    return inst.types[host_name]


def shower(program, ty):
    if ty == "Predicate":
        return show_predicate
    if ty not in program.TYPES:
        return lambda v: "unset" if v is None else repr(v)
    show = hooks_of(program, ty).show
    return lambda v: "unset" if v is None else show(v)


# ---------------------------------------------------------------- sampling

def fnv1a64(data):
    h = 0xCBF29CE484222325
    for b in data:
        h ^= b
        h = (h * 0x100000001B3) & MASK
    return h


class SplitMix64:
    def __init__(self, seed):
        self.state = seed & MASK

    def next_u64(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)


class MissingGenerator(Exception):
    pass


def domain(types, ty, limit=None, _stack=()):
    """Test domain of program type `ty`, mirroring the compiler's rules."""
    if ty == "Predicate":
        return [False, True][:limit]
    if ty in _stack or ty not in types:
        raise MissingGenerator(ty)
    inst, host_name, reqs = types[ty]
    hooks = inst.types.get(host_name)
    if hooks is None or hooks.enumerate is None:
        raise MissingGenerator(ty)
    params = {}
    for local, actual in sorted(reqs.items()):
        try:
            params[local] = domain(types, actual, None, _stack + (ty,))
        except MissingGenerator:
            pass
    return hooks.enumerate(limit, params)


def inputs(domains, budget, seed, name):
    size = 1
    for d in domains:
        size *= len(d)
    if size <= budget:
        return [list(t) for t in itertools.product(*domains)]
    rng = SplitMix64(seed ^ fnv1a64(name.encode()))
    return [[d[rng.next_u64() % len(d)] for d in domains] for _ in range(budget)]


# ----------------------------------------------------------------- oracles

class Oracle:
    def __init__(self, name, satisfaction, params, fn):
        self.name = name
        self.satisfaction = satisfaction
        self.params = params
        self.fn = fn


def run_oracle(program, o, budget, seed, max_discard_ratio=0.9, timeout=5.0):
    rec = {
        "name": o.name,
        "satisfaction": o.satisfaction,
        "params": ["%s: %s" % p for p in o.params],
        "verdict": "pass",
        "attempted": 0,
        "pass": 0,
        "fail": 0,
        "discard": 0,
        "witness": None,
        "failed_assert": None,
        "message": None,
    }
    types = program.TYPES
    doms = [domain(types, ty) for _, ty in o.params]
    copies = [copier(program, ty) for _, ty in o.params]
    shows = [shower(program, ty) for _, ty in o.params]

    def witness(inp):
        return ["%s = %s" % (p[0], sh(v)) for p, sh, v in zip(o.params, shows, inp)]

    deadline = time.monotonic() + timeout
    for inp in inputs(doms, budget, seed, o.name):
        if time.monotonic() >= deadline:
            rec["verdict"] = "timeout"
            rec["message"] = "exceeded %ss" % timeout
            return rec
        args = [c(v) for c, v in zip(copies, inp)]
        try:
            o.fn(*args)
            rec["pass"] += 1
        except Discard:
            rec["discard"] += 1
        except AssertFailed as e:
            rec["fail"] += 1
            if rec["witness"] is None:
                rec["witness"] = witness(inp)
                rec["failed_assert"] = e.location
        except GuardViolation as e:
            rec["fail"] += 1
            if rec["witness"] is None:
                rec["witness"] = witness(inp)
                rec["message"] = "guard of `%s` violated inside the program" % e.op
        except Exception as e:  # host fault
            rec["verdict"] = "fault"
            rec["witness"] = witness(inp)
            rec["message"] = "%s: %s" % (type(e).__name__, e)
            return rec
    rec["attempted"] = rec["pass"] + rec["fail"] + rec["discard"]
    if rec["fail"]:
        rec["verdict"] = "fail"
    elif rec["attempted"] == 0 or rec["discard"] > max_discard_ratio * rec["attempted"]:
        rec["verdict"] = "inconclusive"
    return rec


def copier(program, ty):
    if ty == "Predicate" or ty not in program.TYPES:
        return lambda v: v
    return hooks_of(program, ty).copy


def report_text(report):
    out = []
    for r in report["results"]:
        out.append("oracle %s(%s) from %s: %s" % (
            r["name"], ", ".join(r["params"]), r["satisfaction"], r["verdict"]))
        out.append("  attempted %d pass %d fail %d discard %d" % (
            r["attempted"], r["pass"], r["fail"], r["discard"]))
        if r["witness"] is not None:
            out.append("  witness: %s" % (", ".join(r["witness"]) or "()"))
        if r["failed_assert"] is not None:
            out.append("  failed assert at %s" % r["failed_assert"])
        if r["message"] is not None:
            out.append("  %s" % r["message"])
    count = lambda v: sum(1 for r in report["results"] if r["verdict"] == v)
    out.append(
        "%d oracles: %d passed, %d failed, %d inconclusive, %d timed out, %d faulted (budget %d, seed %d)" % (
            len(report["results"]), count("pass"), count("fail"), count("inconclusive"),
            count("timeout"), count("fault"), report["budget"], report["seed"]))
    return "\n".join(out) + "\n"


def oracle_main(program, oracles, argv=None):
    """Entry point of an emitted oracle harness; returns the exit code."""
    import argparse

    ap = argparse.ArgumentParser(description="Run the axiom oracles of %s." % program.__name__)
    ap.add_argument("--budget", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--report", help="write the JSON report here")
    ap.add_argument("--timeout", type=float, default=5.0)
    ap.add_argument("--satisfaction", action="append",
                    help="only run oracles of this satisfaction (repeatable)")
    a = ap.parse_args(argv)
    if a.satisfaction:
        unknown = set(a.satisfaction) - {o.satisfaction for o in oracles}
        if unknown:
            sys.stderr.write("error: no oracles for %s\n" % ", ".join(sorted(unknown)))
            return 2
        oracles = [o for o in oracles if o.satisfaction in a.satisfaction]
    try:
        results = [run_oracle(program, o, a.budget, a.seed, timeout=a.timeout) for o in oracles]
    except MissingGenerator as e:
        sys.stderr.write("error: no test generator for type %s\n" % e)
        return 1
    report = {"budget": a.budget, "seed": a.seed, "results": results}
    sys.stdout.write(report_text(report))
    if a.report:
        with open(a.report, "w") as f:
            json.dump(report, f, indent=2)
    if any(r["verdict"] == "fault" for r in results):
        return 3
    return 0 if all(r["verdict"] == "pass" for r in results) else 1


# ------------------------------------------------------- program execution

def result_types(kind, params, ret):
    if kind == "procedure":
        return [ty for mode, _, ty in params if mode != "obs"]
    return [ret]


def outcome(program, fn, kind, params, ret, args):
    """Runs one call; returns shown results or the kind of failure."""
    try:
        r = fn(*args)
    except GuardViolation as e:
        return {"guard": e.op}
    except Exception as e:
        return {"fault": "%s: %s" % (type(e).__name__, e)}
    if kind != "procedure":
        r = (r,)
    tys = result_types(kind, params, ret)
    return {"ok": [shower(program, t)(v) for t, v in zip(tys, r)]}


def probe(program, budget, seed):
    """Calls every operation whose inputs can be generated on a seeded
    sample of inputs. Records match the compiler's interpreter probe."""
    records = []
    for mangled, (kind, name, params, ret) in sorted(program.OPS.items()):
        try:
            doms = [[None] if mode == "out" else domain(program.TYPES, ty)
                    for mode, _, ty in params]
        except MissingGenerator:
            continue
        fn = getattr(program, mangled)
        for i, inp in enumerate(inputs(doms, budget, seed, mangled)):
            args = [copier(program, ty)(v) for (_, _, ty), v in zip(params, inp)]
            rec = {"op": mangled, "input": i,
                   "args": [shower(program, ty)(v) for (_, _, ty), v in zip(params, inp)]}
            rec.update(outcome(program, fn, kind, params, ret, args))
            records.append(rec)
    return records


def parse_arg(program, ty, text):
    if ty == "Predicate":
        return {"true": True, "false": False}[text.strip()]
    hooks = hooks_of(program, ty)
    if hooks.parse is None:
        raise ValueError("type %s cannot be parsed from text" % ty)
    return hooks.parse(text)


def call_texts(program, mangled, texts):
    kind, _, params, ret = program.OPS[mangled]
    args = []
    it = iter(texts)
    for mode, pname, ty in params:
        if mode == "out":
            args.append(None)
            continue
        t = next(it, None)
        if t is None:
            raise ValueError("missing argument `%s`" % pname)
        args.append(parse_arg(program, ty, t))
    return outcome(program, getattr(program, mangled), kind, params, ret, args)


def main(argv):
    here = os.path.dirname(os.path.abspath(__file__))
    if here not in sys.path:
        sys.path.insert(0, here)
    if len(argv) >= 3 and argv[0] == "call":
        program = importlib.import_module(argv[1])
        mangled = argv[2]
        texts = []
        rest = argv[3:]
        while rest:
            flag, value, rest = rest[0], rest[1], rest[2:]
            if flag == "--arg-file":
                with open(value) as f:
                    texts.append(f.read())
            else:
                texts.append(value)
        try:
            r = call_texts(program, mangled, texts)
        except ValueError as e:
            sys.stderr.write("error: %s\n" % e)
            return 2
        if "ok" in r:
            for line in r["ok"]:
                print(line)
            return 0
        if "guard" in r:
            sys.stderr.write("error: guard of `%s` violated\n" % r["guard"])
        else:
            sys.stderr.write("error: %s\n" % r["fault"])
        return 3
    if len(argv) == 4 and argv[0] == "batch":
        program = importlib.import_module(argv[1])
        with open(argv[3]) as f:
            calls = json.load(f)
        json.dump([call_texts(program, argv[2], texts) for texts in calls], sys.stdout)
        return 0
    if len(argv) == 4 and argv[0] == "probe":
        program = importlib.import_module(argv[1])
        json.dump(probe(program, int(argv[2]), int(argv[3])), sys.stdout)
        return 0
    sys.stderr.write(__doc__)
    return 2


if __name__ == "__main__":
    # Emitted programs import this file as `mg_runtime`; share one copy so
    # that their exceptions are the ones caught here.
    sys.modules.setdefault("mg_runtime", sys.modules[__name__])
    sys.exit(main(sys.argv[1:]))
