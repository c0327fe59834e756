"""The tri-qubit witness built from Woronowicz's positive map M_2 -> M_4,
and the closed forms of its three single-qubit Choi maps."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .linalg import ExactMatrix, ShapeError
from .tensor import PartitionSpec, choi_from_blocks

DIMS = (2, 2, 2)
MAPS = ("A_BC", "B_CA", "C_AB")
SUBSYSTEM = {"A_BC": 1, "B_CA": 2, "C_AB": 3}


def partition(which: str) -> PartitionSpec:
    return PartitionSpec(DIMS, (SUBSYSTEM[which],))


def _phi_a_bc(x, y, z, w):
    o = x * 0
    return [
        [4 * x - 2 * (y + z) + 3 * w, -2 * x + 2 * z, o, o],
        [-2 * x + 2 * y, 2 * x, z, o],
        [o, y, 2 * w, -2 * z - w],
        [o, o, -2 * y - w, 4 * x + 2 * w],
    ]


def _phi_b_ca(x, y, z, w):
    o = x * 0
    return [
        [4 * x, -2 * x, -2 * x, z],
        [-2 * x, 2 * x + 4 * w, 2 * x - 2 * w, o],
        [-2 * x, 2 * x - 2 * w, 3 * x + 2 * w, -w],
        [y, o, -w, 2 * w],
    ]


def _phi_c_ab(x, y, z, w):
    o = x * 0
    return [
        [4 * x - 2 * (y + z) + 2 * w, o, -2 * x + 2 * z, o],
        [o, 4 * w, y, -2 * z],
        [-2 * x + 2 * y, z, 3 * x, o],
        [o, -2 * y, o, 2 * x - y - z + 2 * w],
    ]


_FORMULAS: dict[str, Callable] = {"A_BC": _phi_a_bc, "B_CA": _phi_b_ca, "C_AB": _phi_c_ab}


def map_entries(which: str, x, y, z, w) -> list[list]:
    """Closed-form image of ``[[x, y], [z, w]]`` as a nested list; entries may
    be any ring elements (scalars or symbolic polynomials)."""
    try:
        return _FORMULAS[which](x, y, z, w)
    except KeyError:
        raise ValueError(f"unknown map {which!r}; expected one of {MAPS}") from None


def map_image(which: str, X: ExactMatrix) -> ExactMatrix:
    if X.shape != (2, 2):
        raise ShapeError(f"map input must be 2x2, got {X.shape}")
    (x, y), (z, w) = X.entries
    return ExactMatrix(map_entries(which, x, y, z, w))


@dataclass(frozen=True)
class WitnessBundle:
    W: ExactMatrix

    def image(self, which: str, X: ExactMatrix) -> ExactMatrix:
        return map_image(which, X)


def build_witness() -> WitnessBundle:
    """Assemble W as the Choi matrix of the closed-form A -> BC map.

    This route is independent of the stored reference matrix, which is
    compared against it in the verification pipeline.
    """
    W = choi_from_blocks(partition("A_BC"), lambda X: map_image("A_BC", X))
    return WitnessBundle(W)
