"""Command-line entry point.

Subcommands take JSON descriptions of tiled/graded orders, run the
checkers, and emit a report.  ``--json`` prints the report as canonical
JSON (sorted keys, no timings) so identical inputs give byte-identical
output; without it a short human-readable account is printed instead.

Exit codes: 0 = verdict positive / all assertions pass, 1 = verdict
negative or an assertion failed, 2 = invalid input.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from importlib import resources

from .base_rings import (
    ZZ,
    ZI,
    BaseRing,
    FractionalIdealR,
    KElem,
    MaximalIdeal,
    RingError,
    ideal_from_json,
    maximal_ideals_above,
    parse_gaussian,
)
from .graded import (
    GradedError,
    GradedOrder,
    CrossedProductDatum,
    Monomial,
    construct_crossed_product,
    construct_from_pic,
    corner_graded_order,
    graded_order,
    inner_classification,
    is_crossed_product,
    validate_strong_grading,
    LocalBase,
    LocalComponent,
)
from .groups import (
    FiniteGroup,
    GroupError,
    Subgroup,
    group_from_json,
    perm_from_cycles,
    perm_to_cycles,
    sylow_subgroup,
    symmetric_group,
)
from .oracle import OracleError, RankCapExceeded, oracle_report
from .pic import NotHereditary, PicClass, construct_class_representative, picent_global
from .semiprime import main_hereditary_verdict, orbit_decompose
from .tiled import (
    ExponentMatrix,
    GlobalTiledOrder,
    OrderError,
    hereditary_staircase,
    ideal_multiply,
    order_ideal,
    radical,
    validate_global_order,
    validate_order,
)

SCHEMA_VERSION = "1"


class InputError(Exception):
    """Bad or malformed input; maps to exit code 2."""


# ---------------------------------------------------------------------------
# JSON parsing


def _parse_ring(obj) -> BaseRing:
    kind = obj.get("ring", "Z")
    if kind == "Z":
        return ZZ
    if kind == "Zi":
        return ZI
    raise InputError(f"ring: unknown ring {kind!r}")


def _parse_place(ring: BaseRing, text: str) -> MaximalIdeal:
    text = text.strip().strip("()")
    try:
        z = parse_gaussian(text)
    except RingError as e:
        raise InputError(f"prime: {e}") from None
    if ring.kind == "Z":
        if z.im != 0:
            raise InputError(f"prime: {text!r} is not a rational prime")
        for m in maximal_ideals_above(ZZ, abs(z.re)):
            return m
        raise InputError(f"prime: {text!r} is not prime")
    # over Z[i] the place is the one whose generator is an associate of z
    p = z.norm() if z.im else abs(z.re)
    for m in maximal_ideals_above(ring, p):
        q, r = divmod(z, m.generator)
        if r.re == 0 and r.im == 0 and q.norm() == 1:
            return m
    raise InputError(f"prime: cannot identify the place of {text!r}")


def _entries_matrix(obj) -> list[list[int]]:
    entries = obj.get("entries")
    if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
        raise InputError("entries: expected a matrix (list of lists)")
    return entries


def parse_tiled_local(obj) -> ExponentMatrix:
    ring = _parse_ring(obj)
    if "prime" not in obj:
        raise InputError("prime: required for a local tiled order")
    place = _parse_place(ring, str(obj["prime"]))
    if "staircase" in obj:
        return hereditary_staircase(tuple(obj["staircase"]), ring, place)
    try:
        return validate_order(_entries_matrix(obj), ring, place)
    except OrderError as e:
        raise InputError(f"entries: {e}") from None


def parse_tiled_global(obj) -> GlobalTiledOrder:
    ring = _parse_ring(obj)
    entries = _entries_matrix(obj)
    try:
        rows = [[ideal_from_json(ring, cell) for cell in row] for row in entries]
        return validate_global_order(ring, rows)
    except (RingError, OrderError) as e:
        raise InputError(f"entries: {e}") from None


def _parse_delta(obj):
    if not isinstance(obj, dict):
        raise InputError("delta: expected an object")
    if "prime" in obj or "staircase" in obj:
        return parse_tiled_local(obj)
    return parse_tiled_global(obj)


def _pic_bimodule(delta, spec):
    """The grading bimodule of a pic-construction: a radical power for a
    local base, or a Picard class table for a global one."""
    if isinstance(delta, ExponentMatrix):
        k = int(spec.get("radpower", 1))
        x = order_ideal(delta)
        r = radical(delta)
        for _ in range(k):
            x = ideal_multiply(x, r)
        return x
    table = spec.get("class")
    if not isinstance(table, dict):
        raise InputError("class: pic-construction over a global base needs a class table")
    classes = {}
    for text, k in table.items():
        classes[_parse_place(delta.ring, text)] = int(k)
    return construct_class_representative(delta, PicClass.of(classes))


def _parse_explicit(obj, delta) -> GradedOrder:
    if not isinstance(delta, ExponentMatrix):
        raise InputError("kind: explicit graded orders are supported over local bases")
    group = group_from_json(obj.get("group", {}))
    base = LocalBase((delta,))
    comps = {}
    for key, cobj in obj.get("components", {}).items():
        g = perm_from_cycles(key, group.degree)
        mats = cobj["mats"] if "mats" in cobj else [cobj["entries"]]
        comps[g] = LocalComponent(
            tuple(cobj.get("perm", [0])),
            tuple(tuple(tuple(r) for r in mat) for mat in mats),
        )
    gamma = {}
    for key, scalars in obj.get("gamma", {}).items():
        gk, hk = key.split("|")
        g = perm_from_cycles(gk, group.degree)
        h = perm_from_cycles(hk, group.degree)
        gamma[(g, h)] = tuple(
            KElem.from_gaussian(parse_gaussian(str(s))) for s in scalars
        )
    return graded_order(group, base, comps, gamma)


def _parse_crossed(obj, delta) -> GradedOrder:
    if not isinstance(delta, ExponentMatrix):
        raise InputError("kind: crossed products are supported over local bases")
    copies = int(obj.get("copies", 1))
    group = group_from_json(obj.get("group", {}))
    if group.degree != copies:
        raise InputError("group: degree must match the number of summands")
    base = LocalBase(tuple(delta for _ in range(copies)))
    one = KElem.of(1, 0)
    idm = Monomial(tuple(range(delta.n)), tuple(one for _ in range(delta.n)))
    action = {g: (g, tuple(idm for _ in range(copies))) for g in group.elements}
    return construct_crossed_product(base, group, CrossedProductDatum(action))


def parse_graded(obj) -> GradedOrder:
    if not isinstance(obj, dict):
        raise InputError("input: expected a JSON object")
    kind = obj.get("kind", "pic-construction")
    delta = _parse_delta(obj.get("delta", {}))
    try:
        if kind == "pic-construction":
            x = _pic_bimodule(delta, obj)
            return construct_from_pic(delta, x, obj.get("n"))
        if kind == "crossed-product":
            return _parse_crossed(obj, delta)
        if kind == "explicit":
            return _parse_explicit(obj, delta)
    except (GradedError, GroupError, OrderError, RingError) as e:
        raise InputError(str(e)) from None
    raise InputError(f"kind: unknown construction {kind!r}")


# ---------------------------------------------------------------------------
# Reports


def _digest(obj) -> str:
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _report(command: str, raw_input, body: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "input_digest": _digest(raw_input),
        "report": body,
    }


def _emit(args, report: dict, prose: list[str], elapsed: float) -> None:
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        for line in prose:
            print(line)
        print(f"[{report['command']} {report['input_digest']} in {elapsed:.2f}s]")


def _verdict_body(v) -> dict:
    breakdown = []
    for e in v.breakdown:
        breakdown.append(
            {
                "orbit": e.orbit,
                "p": e.prime,
                "place": str(e.place),
                "sylow": sorted(perm_to_cycles(h) for h in e.sylow.elements),
                "inner_witness": (
                    perm_to_cycles(e.inner_witness)
                    if e.inner_witness is not None
                    else None
                ),
            }
        )
    return {
        "hereditary": v.hereditary,
        "delta_hereditary": v.delta_hereditary,
        "breakdown": breakdown,
    }


def _load(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON at line {e.lineno}") from None


# ---------------------------------------------------------------------------
# Subcommands


def cmd_check(args) -> int:
    raw = _load(args.input)
    order = parse_graded(raw)
    v = main_hereditary_verdict(order)
    body = _verdict_body(v)
    rep = _report("check", raw, body)
    prose = [f"hereditary: {v.hereditary} (identity component: {v.delta_hereditary})"]
    for e in v.breakdown:
        w = (
            f"inner witness {perm_to_cycles(e.inner_witness)}"
            if e.inner_witness is not None
            else "outer"
        )
        prose.append(f"  orbit {e.orbit}, p = {e.prime} at {e.place}: {w}")
    _emit(args, rep, prose, args._elapsed())
    return 0 if v.hereditary else 1


def cmd_picent(args) -> int:
    raw = _load(args.input)
    order = parse_tiled_global(raw)
    try:
        pg = picent_global(order)
    except NotHereditary as e:
        raise InputError(str(e)) from None
    body = {
        "factors": [
            {"cyclic_order": lp.cyclic_order, "place": str(m)}
            for m, lp in pg.components
        ]
    }
    rep = _report("picent", raw, body)
    _emit(args, rep, [str(pg)], args._elapsed())
    return 0


def cmd_classify(args) -> int:
    raw = _load(args.input)
    order = parse_graded(raw)
    group = order.group
    full = Subgroup(group, tuple(group.elements))
    place = None
    if args.place:
        ring = order.base.ring
        place = _parse_place(ring, args.place)
    ic = inner_classification(order, full, place)
    body = {
        "context": ic.context,
        "inner": sorted(perm_to_cycles(h) for h in ic.inner_elements),
        "outer": ic.is_outer,
    }
    rep = _report("classify", raw, body)
    prose = [
        f"inner elements ({ic.context}): "
        + (", ".join(body["inner"]) or "none"),
        f"outer grading: {ic.is_outer}",
    ]
    _emit(args, rep, prose, args._elapsed())
    return 0


def cmd_oracle_check(args) -> int:
    raw = _load(args.input)
    order = parse_graded(raw)
    places = order.places()
    if args.place:
        ring = order.base.ring
        places = (_parse_place(ring, args.place),)
    reports = []
    try:
        for m in places:
            reports.append(oracle_report(order, m))
    except RankCapExceeded as e:
        raise InputError(str(e)) from None
    body = {"places": reports, "agree": all(r["agree"] for r in reports)}
    rep = _report("oracle-check", raw, body)
    prose = [
        f"  {r['place']}: rank {r['rank']}, oracle {r['oracle']}, "
        f"engine {r['engine']}, agree {r['agree']}"
        for r in reports
    ]
    _emit(args, rep, prose, args._elapsed())
    return 0 if body["agree"] else 1


# ---------------------------------------------------------------------------
# Bundled examples


def load_fixture(name: str):
    ref = resources.files("gradedorders") / "fixtures" / f"{name}.json"
    try:
        return json.loads(ref.read_text())
    except FileNotFoundError:
        raise InputError(f"no bundled fixture {name!r}") from None


def _assertions_outer(raw):
    order = parse_graded(raw)
    delta = _parse_delta(raw["delta"])
    pg = picent_global(delta)
    yield "Picent(delta) = Z/5 + Z/5", [lp.cyclic_order for _, lp in pg.components] == [5, 5]
    full = Subgroup(order.group, tuple(order.group.elements))
    yield "grading outer globally", inner_classification(order, full).is_outer
    supp = order.places()
    inner_at = {
        str(m): len(inner_classification(order, full, m).inner_elements)
        for m in supp
    }
    yield "grading inner at one completion", sorted(inner_at.values()) == [1, 5]
    v = main_hereditary_verdict(order)
    yield "not hereditary", not v.hereditary
    witness_places = {
        str(e.place) for e in v.breakdown if e.inner_witness is not None
    }
    yield "witness at a place over 5", witness_places and all(
        m.residue_char == 5 for m in supp if str(m) in witness_places
    )
    reports = [oracle_report(order, m) for m in supp]
    for r in reports:
        yield f"oracle agrees at {r['place']}", r["agree"]
    yield "some completion fails the oracle", not all(r["oracle"] for r in reports)


def _assertions_nonbasic(raw):
    order = parse_graded(raw)
    yield "strongly graded", validate_strong_grading(order)[0]
    ok, _ = is_crossed_product(order)
    yield "not a crossed product", not ok
    corner = corner_graded_order(order, (0, order.base.blocks[0].n - 1))
    ok_c, _ = is_crossed_product(corner)
    yield "basic corner is a crossed product", ok_c


def _assertions_semiprime(raw, d: int):
    raw = dict(raw)
    raw["copies"] = d
    g = symmetric_group(d)
    raw["group"] = {"degree": d, "gens": [perm_to_cycles(p) for p in g.generators]}
    order = parse_graded(raw)
    yield "strongly graded", validate_strong_grading(order)[0]
    corners = orbit_decompose(order)
    yield "one orbit", len(corners) == 1
    stab = corners[0].data.stabilizer
    yield f"stabilizer = S_{d-1}", stab.order == symmetric_group(d - 1).order
    corner = corners[0].corner
    yield "corner is the stabilizer group ring", all(
        corner.components[h].mats[0] == corner.base.blocks[0].entries
        for h in stab.elements
    )
    p = corner.base.place.residue_char
    syl = sylow_subgroup(stab.as_group(), p)
    syl_in_G = Subgroup(order.group, tuple(syl.elements))
    ic_corner = inner_classification(corner, Subgroup(corner.group, tuple(syl.elements)))
    yield "corner Inn(P) = P", set(ic_corner.inner_elements) == set(syl.elements)
    ic_full = inner_classification(order, syl_in_G)
    yield "full-order Inn(P) = 1", len(ic_full.inner_elements) == 1
    v = main_hereditary_verdict(order)
    yield "not hereditary", not v.hereditary


def cmd_example(args) -> int:
    name = args.name
    if name not in ("nonbasic", "outer", "semiprime"):
        raise InputError(f"unknown example {name!r}")
    raw = load_fixture(name)
    if name == "outer":
        gen = _assertions_outer(raw)
    elif name == "nonbasic":
        gen = _assertions_nonbasic(raw)
    else:
        gen = _assertions_semiprime(raw, args.d)
    results = [(label, bool(ok)) for label, ok in gen]
    body = {"example": name, "assertions": [
        {"assertion": label, "pass": ok} for label, ok in results
    ]}
    rep = _report("example", {"name": name, "d": args.d}, body)
    prose = [f"{'PASS' if ok else 'FAIL'}  {label}" for label, ok in results]
    _emit(args, rep, prose, args._elapsed())
    return 0 if all(ok for _, ok in results) else 1


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gradedorders",
        description="Strongly graded tiled orders: construction and hereditariness checks",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, with_input=True):
        if with_input:
            p.add_argument("input", help="path to a JSON description")
        p.add_argument("--json", action="store_true", help="emit canonical JSON")

    p = sub.add_parser("check", help="hereditariness verdict for a graded order")
    common(p)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("picent", help="Picard group of a global tiled order")
    common(p)
    p.set_defaults(fn=cmd_picent)

    p = sub.add_parser("classify", help="inner/outer classification of the grading")
    common(p)
    p.add_argument("--place", help="classify at one place instead of globally")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("oracle-check", help="independent structure-constant cross-check")
    common(p)
    p.add_argument("--place", help="check a single place")
    p.set_defaults(fn=cmd_oracle_check)

    p = sub.add_parser("example", help="run a bundled worked example")
    p.add_argument("name", help="nonbasic | outer | semiprime")
    p.add_argument("--d", type=int, default=3, help="degree for the semiprime example")
    p.add_argument("--json", action="store_true", help="emit canonical JSON")
    p.set_defaults(fn=cmd_example)
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    t0 = time.monotonic()
    args._elapsed = lambda: time.monotonic() - t0
    try:
        return args.fn(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (OracleError, NotHereditary, OrderError, GradedError, RingError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
