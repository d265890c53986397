"""Bundled example algebras and the expected-versus-computed table."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .lattice import group_order, smith_normal_form
from .presentation import AlgebraPresentation, parse_presentation
from .quiver import LinearOrder
from .rewriting import AlgebraBasis, build_algebra
from .stratification import analyze, block_split_check


def data_text(name: str) -> str:
    return resources.files("cartan_strat").joinpath("data", name).read_text(encoding="utf-8")


def load_presentation(name: str) -> AlgebraPresentation:
    return parse_presentation(data_text(f"{name}.alg"))


@lru_cache(maxsize=None)
def load_algebra(name: str) -> AlgebraBasis:
    return build_algebra(load_presentation(name))


def expected_rows() -> list[dict]:
    return json.loads(data_text("expected.json"))["checks"]


def _report(name: str, order: str):
    return analyze(load_algebra(name), LinearOrder.parse(order))


def compute(row: dict):
    """Value of ``row['quantity']`` for the named example and order."""
    name, qty = row["example"], row["quantity"]
    order = row.get("order")
    b = load_algebra(name)
    if qty == "cartan":
        return _report(name, order).cartan
    if qty == "delta_cartan":
        return _report(name, order).delta_cartan
    if qty == "cartan_group":
        return _report(name, order).cartan_group.to_dict()
    if qty == "cartan_row":
        return _report(name, order).cartan[row["row"]]
    if qty == "smith_diagonal":
        return smith_normal_form(_report(name, order).cartan).diagonal
    if qty in ("standardly_stratified", "quasi_hereditary", "weakly_triangular"):
        return _report(name, order).flags[qty]
    if qty == "delta_cartan_equals_cartan":
        r = _report(name, order)
        return r.delta_cartan == r.cartan
    if qty == "group_order_equals_projective_end_product":
        g = _report(name, order).cartan_group
        product = math.prod(len(b.normal_forms(v, v)) for v in b.quiver.vertices)
        return group_order(g) == product
    if qty == "group_order":
        g = _report(name, order).cartan_group
        return group_order(g)
    if qty == "same_group_as":
        other = row["other"]
        return _report(name, order).cartan_group == _report(other, order).cartan_group
    if qty == "cartan_differs_from":
        other = row["other"]
        return _report(name, order).cartan != _report(other, order).cartan
    if qty == "block_split_all":
        o = LinearOrder.parse(order)
        return all(block_split_check(b, o, i).passes for i in range(1, len(o)))
    if qty == "identity_checks_hold":
        return _report(name, order).all_checks_hold
    raise KeyError(f"unknown quantity {qty!r}")


@dataclass
class GoldenRow:
    example: str
    quantity: str
    order: str | None
    expected: object
    computed: object

    @property
    def passed(self) -> bool:
        return self.expected == self.computed

    def to_dict(self) -> dict:
        return {
            "example": self.example,
            "quantity": self.quantity,
            "order": self.order,
            "expected": self.expected,
            "computed": self.computed,
            "pass": self.passed,
        }


def run_golden() -> list[GoldenRow]:
    out = []
    for row in expected_rows():
        try:
            got = compute(row)
        except Exception as exc:  # report, do not abort the table
            got = f"error: {exc}"
        label = row["quantity"] + (f"[{row['row']}]" if "row" in row else "")
        if "other" in row:
            label += f"({row['other']})"
        out.append(GoldenRow(row["example"], label, row.get("order"), row["expected"], got))
    return out

