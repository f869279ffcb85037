"""Builders for the bundled datasets.

The lattices below were derived by hand from the blow-up descriptions; the
functions are kept so the JSON files can be regenerated and so the tests can
compare the files against an independent construction.
"""
from __future__ import annotations

from importlib import resources
from pathlib import Path

from .effectivity import EffectivityOracle, cone_facets
from .model import (
    AFFINE,
    EXCEPTIONAL,
    IDEAL,
    ExceptionalGeometry,
    PrimeDivisorEntry,
    ResolutionData,
    dumps,
    from_intersection_matrix,
    make_example2,
    to_dict,
)

BUNDLED = ("cusp.json", "aad14-ideal.json", "example1.json", "example2-d3.json")


def cusp_shortcut() -> dict:
    """Minimal resolution of y^2 = x^3 as an intersection-matrix document."""
    return {
        "matrix": {
            "E1": {"E1": -3, "E3": 1},
            "E2": {"E2": -2, "E3": 1},
            "E3": {"E1": 1, "E2": 1, "E3": -1},
        },
        "affine_rows": {"D_aff": {"E3": 1}},
        "e": {"D_aff": 1, "E1": 2, "E2": 3, "E3": 6},
        "k": {"D_aff": 0, "E1": 1, "E2": 2, "E3": 4},
    }


def aad14_shortcut() -> dict:
    """Minimal log resolution of (x^2y^2, x^5, y^5, xy^4, x^4y).

    Toric: the exceptional curves are the rays (1,1), (1,2), (2,3), (2,1),
    (3,2), forming the chain E2 - E3 - E1 - E5 - E4.
    """
    return {
        "input_kind": "ideal",
        "num_generators": 5,
        "ambient_dim": 2,
        "matrix": {
            "E1": {"E1": -5, "E3": 1, "E5": 1},
            "E2": {"E2": -2, "E3": 1},
            "E3": {"E1": 1, "E2": 1, "E3": -1},
            "E4": {"E4": -2, "E5": 1},
            "E5": {"E1": 1, "E4": 1, "E5": -1},
        },
        "affine_rows": {},
        "e": {"E1": 4, "E2": 5, "E3": 10, "E4": 5, "E5": 10},
        "k": {"E1": 1, "E2": 2, "E3": 4, "E4": 2, "E5": 4},
    }


def _geometry(owner, basis, restrictions, generators, labels):
    restr = {lab: tuple(restrictions.get(lab, (0,) * len(basis))) for lab in labels}
    gens = tuple(tuple(g) for g in generators)
    oracle = EffectivityOracle(generators=gens, necessary=tuple(cone_facets(gens)))
    return ExceptionalGeometry(owner, len(basis), tuple(basis), restr, True, oracle)


def make_example1() -> ResolutionData:
    """Six point blow-ups over the plane curve germ of the first threefold example.

    E1, E2, E3 are blow-ups of P^2 at 2, 5 and 1 points (with infinitely
    near points), E4, E5, E6 are P^2's.  Classes are written in the basis
    (line, exceptional curves) of each surface.
    """
    labels = ["D_aff", "E1", "E2", "E3", "E4", "E5", "E6"]
    primes = (
        PrimeDivisorEntry("D_aff", AFFINE, 1, 0),
        PrimeDivisorEntry("E1", EXCEPTIONAL, 5, 2),
        PrimeDivisorEntry("E2", EXCEPTIONAL, 9, 4),
        PrimeDivisorEntry("E3", EXCEPTIONAL, 16, 8),
        PrimeDivisorEntry("E4", EXCEPTIONAL, 27, 14),
        PrimeDivisorEntry("E5", EXCEPTIONAL, 11, 6),
        PrimeDivisorEntry("E6", EXCEPTIONAL, 11, 6),
    )
    g1 = _geometry(
        "E1", ("line", "e1", "e2"),
        {"D_aff": (5, -4, -2), "E1": (-1, -1, -1), "E2": (0, 1, -1), "E3": (0, 0, 1)},
        [(0, 1, -1), (0, 0, 1), (1, -1, -1)],
        labels,
    )
    g2 = _geometry(
        "E2", ("line", "a3", "a4", "a5", "a6"),
        {
            "D_aff": (4, -2, -2, -2, -2),
            "E1": (1, -1, 0, 0, 0),
            "E2": (-1, -1, -1, -1, -1),
            "E3": (0, 1, -1, 0, 0),
            "E4": (0, 0, 1, 0, 0),
            "E5": (0, 0, 0, 1, 0),
            "E6": (0, 0, 0, 0, 1),
        },
        [
            (0, 1, -1, 0, 0), (0, 0, 1, 0, 0), (0, 0, 0, 1, 0), (0, 0, 0, 0, 1),
            (1, -1, -1, 0, 0), (1, -1, 0, -1, 0), (1, -1, 0, 0, -1), (1, 0, 0, -1, -1),
        ],
        labels,
    )
    g3 = _geometry(
        "E3", ("line", "e"),
        {"D_aff": (2, -2), "E1": (1, 0), "E2": (1, -1), "E3": (-1, -1), "E4": (0, 1)},
        [(0, 1), (1, -1)],
        labels,
    )
    g4 = _geometry("E4", ("line",), {"D_aff": (2,), "E2": (1,), "E3": (1,), "E4": (-1,)}, [(1,)], labels)
    g5 = _geometry("E5", ("line",), {"D_aff": (2,), "E2": (1,), "E5": (-1,)}, [(1,)], labels)
    g6 = _geometry("E6", ("line",), {"D_aff": (2,), "E2": (1,), "E6": (-1,)}, [(1,)], labels)
    pairs = (("E1", "E2"), ("E1", "E3"), ("E2", "E3"), ("E2", "E4"), ("E3", "E4"), ("E2", "E5"), ("E2", "E6"))
    return ResolutionData(
        primes=primes,
        geometries=(g1, g2, g3, g4, g5, g6),
        input_kind="divisor",
        ambient_dim=3,
        intersection_connected=pairs,
    )


def build_all() -> dict:
    """File name -> JSON text for every bundled dataset."""
    import json

    return {
        "cusp.json": json.dumps(cusp_shortcut(), indent=2) + "\n",
        "aad14-ideal.json": json.dumps(aad14_shortcut(), indent=2) + "\n",
        "example1.json": dumps(make_example1()),
        "example2-d3.json": dumps(make_example2(3)),
    }


def write_all(directory) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name, text in build_all().items():
        (directory / name).write_text(text)


def data_path(name: str) -> Path:
    """Path of a bundled dataset."""
    return Path(str(resources.files("jnum") / "data" / name))


if __name__ == "__main__":
    write_all(Path(__file__).parent / "data")
