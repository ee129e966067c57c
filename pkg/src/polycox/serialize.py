"""JSON schemas and text renderers for the engine's value types.

Words serialize as strings of generator names, "."-separated whenever any
generator name of the presentation exceeds one character; both forms are
accepted on input.  Output dictionaries keep ids sorted so golden files
stay diff-stable.
"""

from __future__ import annotations

from .completion import Polygraph31, Sphere3, SphereEntry, ThreeCell
from .coxeter import CoxeterMatrix
from .errors import InputError
from .paths import Path2, Step2
from .tietze import (
    CollapsiblePart,
    OrderWitness,
    SphereCollapse,
    ThreeCollapse,
    TwoCollapse,
)
from .words import Polygraph2, Rule, Word


def word_to_str(p: Polygraph2, w: Word) -> str:
    return p.word_str(w)


def word_from_str(p: Polygraph2, s: str) -> Word:
    if s == "":
        return ()
    if "." in s:
        names = s.split(".")
    elif any(len(n) != 1 for n in p.generators):
        names = [s]  # dots separate letters, so a dotless word is one name
    else:
        names = list(s)
    try:
        return tuple(p.generators.index(n) for n in names)
    except ValueError as exc:
        raise InputError(f"unknown generator in word {s!r}") from exc


def polygraph2_to_dict(p: Polygraph2) -> dict:
    return {
        "generators": list(p.generators),
        "rules": [
            {"id": r.name, "lhs": word_to_str(p, r.lhs), "rhs": word_to_str(p, r.rhs)}
            for r in p.rules
        ],
    }


def polygraph2_from_dict(d: dict) -> Polygraph2:
    try:
        gens = list(d["generators"])
        rules = d["rules"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad polygraph document: {exc}") from exc
    p = Polygraph2(gens)
    for r in rules:
        try:
            name, lhs, rhs = r["id"], r["lhs"], r["rhs"]
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad rule entry {r!r}") from exc
        p.add_rule(Rule(name, word_from_str(p, lhs), word_from_str(p, rhs)))
    return p


def path_to_dict(path: Path2) -> dict:
    p = path.pg
    return {
        "source": word_to_str(p, path.source),
        "steps": [
            {"rule": p.rules[s.rule].name, "dir": s.dir, "at": s.pos}
            for s in path.steps
        ],
    }


def path_from_dict(d: dict, p: Polygraph2) -> Path2:
    try:
        source = word_from_str(p, d["source"])
        steps = tuple(
            Step2(p.rule_index(s["rule"]), int(s["dir"]), int(s["at"]))
            for s in d["steps"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad path document: {exc}") from exc
    return Path2(p, source, steps)


def polygraph31_to_dict(p31: Polygraph31, meta: dict | None = None) -> dict:
    d = polygraph2_to_dict(p31.base)
    d["three_cells"] = [
        {"id": c.name, "src": path_to_dict(c.src), "tgt": path_to_dict(c.tgt)}
        for c in p31.cells
    ]
    if meta is not None:
        d["meta"] = meta
    return d


def polygraph31_from_dict(d: dict) -> Polygraph31:
    base = polygraph2_from_dict(d)
    cells = []
    for c in d.get("three_cells", ()):
        try:
            cells.append(
                ThreeCell(
                    c["id"],
                    path_from_dict(c["src"], base),
                    path_from_dict(c["tgt"], base),
                )
            )
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad 3-cell entry: {exc}") from exc
    return Polygraph31(base, cells)


def matrix_to_dict(m: CoxeterMatrix) -> dict:
    return {"generators": list(m.names), "m": [list(row) for row in m.m]}


def matrix_from_dict(d: dict) -> CoxeterMatrix:
    try:
        return CoxeterMatrix(tuple(d["generators"]), tuple(map(tuple, d["m"])))
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad Coxeter matrix document: {exc}") from exc


def sphere_to_dict(sp: Sphere3, p31: Polygraph31) -> dict:
    def entry(e: SphereEntry) -> dict:
        return {
            "cell": p31.cells[e.cell].name,
            "dir": e.dir,
            "left": word_to_str(p31.base, e.left),
            "right": word_to_str(p31.base, e.right),
            "pre": path_to_dict(e.pre),
            "post": path_to_dict(e.post),
        }

    return {
        "source": path_to_dict(sp.source),
        "target": path_to_dict(sp.target),
        "lhs": [entry(e) for e in sp.lhs],
        "rhs": [entry(e) for e in sp.rhs],
    }


def sphere_from_dict(d: dict, p31: Polygraph31) -> Sphere3:
    base = p31.base

    def entry(e: dict) -> SphereEntry:
        return SphereEntry(
            p31.cell_index(e["cell"]),
            int(e["dir"]),
            word_from_str(base, e["left"]),
            word_from_str(base, e["right"]),
            path_from_dict(e["pre"], base),
            path_from_dict(e["post"], base),
        )

    try:
        return Sphere3(
            path_from_dict(d["source"], base),
            path_from_dict(d["target"], base),
            tuple(entry(e) for e in d["lhs"]),
            tuple(entry(e) for e in d["rhs"]),
        )
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad sphere document: {exc}") from exc


def _ranked_names(rank: dict, names: list[str]) -> list[str]:
    return [names[k] for k in sorted(rank, key=lambda k: (rank[k], k))]


def part_to_dict(part: CollapsiblePart, p31: Polygraph31) -> dict:
    base = p31.base
    return {
        "two_cells": [
            {
                "rule": base.rules[tc.rule].name,
                **(
                    {"redundant": base.generators[tc.redundant]}
                    if tc.redundant is not None
                    else {}
                ),
            }
            for tc in part.two_cells
        ],
        "three_cells": [
            {
                "cell": p31.cells[tc.cell].name,
                "redundant": base.rules[tc.redundant].name,
            }
            for tc in part.three_cells
        ],
        "spheres": [
            {
                **sphere_to_dict(sc.sphere, p31),
                "redundant": p31.cells[sc.redundant].name,
            }
            for sc in part.spheres
        ],
        "order": {
            "generators": _ranked_names(part.order.gen_rank, base.generators),
            "rules": _ranked_names(part.order.rule_rank, [r.name for r in base.rules]),
            "cells": _ranked_names(part.order.cell_rank, [c.name for c in p31.cells]),
        },
    }


def part_from_dict(d: dict, p31: Polygraph31) -> CollapsiblePart:
    base = p31.base
    try:
        two = tuple(
            TwoCollapse(
                base.rule_index(tc["rule"]),
                (
                    base.generators.index(tc["redundant"])
                    if "redundant" in tc
                    else None
                ),
            )
            for tc in d.get("two_cells", ())
        )
        three = tuple(
            ThreeCollapse(
                p31.cell_index(tc["cell"]), base.rule_index(tc["redundant"])
            )
            for tc in d.get("three_cells", ())
        )
        spheres = tuple(
            SphereCollapse(sphere_from_dict(sc, p31), p31.cell_index(sc["redundant"]))
            for sc in d.get("spheres", ())
        )
        order = d.get("order", {})
        gen_rank = {
            base.generators.index(n): i
            for i, n in enumerate(order.get("generators", ()))
        }
        rule_rank = {
            base.rule_index(n): i for i, n in enumerate(order.get("rules", ()))
        }
        cell_rank = {
            p31.cell_index(n): i for i, n in enumerate(order.get("cells", ()))
        }
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad collapsible part document: {exc}") from exc
    return CollapsiblePart(two, three, spheres, OrderWitness(gen_rank, rule_rank, cell_rank))


def render_step(path: Path2, k: int) -> str:
    """One whiskered step, e.g. "sa.b(st).a" with a trailing - for reverses."""
    pg = path.pg
    s = path.steps[k]
    w = path.words()[k]
    rule = pg.rules[s.rule]
    consumed = len(rule.lhs) if s.dir > 0 else len(rule.rhs)
    left = pg.word_str(w[: s.pos])
    right = pg.word_str(w[s.pos + consumed :])
    mid = rule.name + ("" if s.dir > 0 else "-")
    return "·".join(x for x in (left, mid, right) if x)


def render_path(path: Path2) -> str:
    if not path.steps:
        return f"1_{path.pg.word_str(path.source)}"
    return " ⋆ ".join(render_step(path, k) for k in range(len(path.steps)))
