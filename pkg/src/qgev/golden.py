"""Reference objects, shipped as JSON resources."""

from __future__ import annotations

import json
from importlib import resources

from .linalg import ExactMatrix
from .poly import UniPoly


def _load(name: str):
    return json.loads(resources.files("qgev.data").joinpath(name).read_text())


def witness() -> ExactMatrix:
    return ExactMatrix.from_json(_load("witness.json"))


def rho1() -> ExactMatrix:
    return ExactMatrix.from_json(_load("rho1.json"))


def charpoly_rho1() -> UniPoly:
    return UniPoly.from_json(_load("charpoly_rho1.json"))


def charpoly_rho1_gamma() -> UniPoly:
    return UniPoly.from_json(_load("charpoly_rho1_gamma.json"))
