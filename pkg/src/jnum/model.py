"""Resolution data, divisors and lattice restrictions.

A :class:`ResolutionData` is the combinatorial record of a log resolution:
the prime divisors with their multiplicities ``e`` in ``F`` and their
discrepancies ``k`` in ``K_pi``, and for every exceptional prime a Picard
lattice, the restriction map of every prime into that lattice, and an
effectivity oracle.  Everything is exact (Python ints and ``Fraction``).
"""
from __future__ import annotations

import json
import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple

from .effectivity import EffectivityOracle, Inequality, NOT_EFFECTIVE, PicClass, decide_effective
from .errors import (
    AsymmetricMatrix,
    ConsistencyError,
    DTooSmall,
    PositiveSelfIntersection,
    SchemaError,
    UnknownLabel,
)

EXCEPTIONAL = "exceptional"
AFFINE = "affine"
DIVISOR = "divisor"
IDEAL = "ideal"


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a ``Fraction``."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if isinstance(text, str):
        s = text.strip()
        if s and all(ch in "0123456789-+/ " for ch in s):
            try:
                return Fraction(s.replace(" ", ""))
            except (ValueError, ZeroDivisionError):
                pass
    raise ValueError(f"not an exact rational: {text!r}")


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


class Divisor(Mapping):
    """Integer divisor as a sparse label -> coefficient map.

    Missing labels read as 0; zero coefficients are never stored.
    """

    __slots__ = ("_c",)

    def __init__(self, coefficients=None, **kw):
        items = dict(coefficients or {})
        items.update(kw)
        self._c = {str(k): int(v) for k, v in items.items() if int(v) != 0}

    def __getitem__(self, label):
        return self._c.get(label, 0)

    def __contains__(self, label):
        return label in self._c

    def __iter__(self):
        return iter(self._c)

    def __len__(self):
        return len(self._c)

    def __eq__(self, other):
        if isinstance(other, Divisor):
            return self._c == other._c
        if isinstance(other, Mapping):
            return self._c == {k: v for k, v in other.items() if v != 0}
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other):
        out = dict(self._c)
        for k, v in other.items():
            out[k] = out.get(k, 0) + v
        return Divisor(out)

    def __sub__(self, other):
        return self + (-Divisor(other))

    def __neg__(self):
        return Divisor({k: -v for k, v in self._c.items()})

    def __le__(self, other):
        keys = set(self._c) | set(other)
        return all(self[k] <= other.get(k, 0) for k in keys)

    def __ge__(self, other):
        return Divisor(other) <= self

    def support(self):
        return frozenset(self._c)

    def meet(self, other):
        keys = set(self._c) | set(other)
        return Divisor({k: min(self[k], other.get(k, 0)) for k in keys})

    def format(self, order: Optional[Iterable[str]] = None) -> str:
        labels = list(order) if order is not None else sorted(self._c)
        shown = [f"{lab}:{self._c[lab]}" for lab in labels if lab in self._c]
        return " ".join(shown) if shown else "0"

    def __repr__(self):
        return f"Divisor({self._c!r})"

    @classmethod
    def parse(cls, text: str) -> "Divisor":
        """Parse ``"E2:1,E4:1"`` (commas or spaces between terms)."""
        out: Dict[str, int] = {}
        text = text.strip()
        if not text or text == "0":
            return cls()
        for term in text.replace(",", " ").split():
            if ":" not in term:
                raise ValueError(f"divisor term {term!r} is not label:int")
            lab, _, val = term.rpartition(":")
            out[lab] = out.get(lab, 0) + int(val)
        return cls(out)


class QDivisor(Mapping):
    """Rational divisor; only used to build and round down ``lambda * F``."""

    __slots__ = ("_c",)

    def __init__(self, coefficients=None):
        self._c = {k: Fraction(v) for k, v in (coefficients or {}).items() if Fraction(v) != 0}

    def __getitem__(self, label):
        return self._c.get(label, Fraction(0))

    def __iter__(self):
        return iter(self._c)

    def __len__(self):
        return len(self._c)

    def round_down(self) -> Divisor:
        return Divisor({k: math.floor(v) for k, v in self._c.items()})

    def round_up(self) -> Divisor:
        return Divisor({k: math.ceil(v) for k, v in self._c.items()})


@dataclass(frozen=True)
class PrimeDivisorEntry:
    label: str
    kind: str
    e: int
    k: int
    count: int = 1
    orbit_disjoint: bool = False

    @property
    def exceptional(self):
        return self.kind == EXCEPTIONAL


@dataclass(frozen=True)
class ExceptionalGeometry:
    owner: str
    pic_rank: int
    basis_labels: Tuple[str, ...]
    restrictions: Dict[str, PicClass]
    faithful_for_triviality: bool
    oracle: EffectivityOracle

    __hash__ = None


@dataclass(frozen=True)
class ResolutionData:
    primes: Tuple[PrimeDivisorEntry, ...]
    geometries: Tuple[ExceptionalGeometry, ...]
    input_kind: str = DIVISOR
    ambient_dim: int = 2
    num_generators: Optional[int] = None
    adjacency_overrides: Tuple[Tuple[str, str], ...] = ()
    intersection_connected: Tuple[Tuple[str, str], ...] = ()
    _by_label: Dict[str, PrimeDivisorEntry] = field(default=None, init=False, repr=False, compare=False)
    _geom: Dict[str, ExceptionalGeometry] = field(default=None, init=False, repr=False, compare=False)

    __hash__ = None

    def __post_init__(self):
        object.__setattr__(self, "primes", tuple(self.primes))
        object.__setattr__(self, "geometries", tuple(self.geometries))
        object.__setattr__(self, "adjacency_overrides", tuple(tuple(p) for p in self.adjacency_overrides))
        object.__setattr__(self, "intersection_connected", tuple(tuple(p) for p in self.intersection_connected))
        object.__setattr__(self, "_by_label", {p.label: p for p in self.primes})
        object.__setattr__(self, "_geom", {g.owner: g for g in self.geometries})

    @property
    def labels(self) -> List[str]:
        return [p.label for p in self.primes]

    @property
    def exceptional_labels(self) -> List[str]:
        return [p.label for p in self.primes if p.exceptional]

    @property
    def affine_labels(self) -> List[str]:
        return [p.label for p in self.primes if not p.exceptional]

    def prime(self, label) -> PrimeDivisorEntry:
        try:
            return self._by_label[label]
        except KeyError:
            raise UnknownLabel(f"unknown prime divisor label {label!r}") from None

    def geometry(self, label) -> ExceptionalGeometry:
        if label not in self._geom:
            if label in self._by_label:
                raise UnknownLabel(f"{label!r} is not an exceptional divisor with geometry data")
            raise UnknownLabel(f"unknown prime divisor label {label!r}")
        return self._geom[label]

    @property
    def F(self) -> Divisor:
        return Divisor({p.label: p.e for p in self.primes})

    @property
    def K(self) -> Divisor:
        return Divisor({p.label: p.k for p in self.primes})

    @property
    def skoda_threshold(self) -> int:
        """min(dim X, number of generators) for ideals; 1 for divisors."""
        if self.input_kind == DIVISOR:
            return 1
        if self.num_generators is None:
            return self.ambient_dim
        return min(self.ambient_dim, self.num_generators)


@dataclass
class ValidationReport:
    errors: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    @property
    def ok(self):
        return not self.errors

    def format(self) -> str:
        lines = [f"error: {m}" for m in self.errors] + [f"warning: {m}" for m in self.warnings]
        if not lines:
            lines = ["ok"]
        return "\n".join(lines)


# -- basic operations -------------------------------------------------------------

def restrict(r: ResolutionData, D: Mapping, E: str) -> PicClass:
    """Class of ``D|_E`` in the lattice of the exceptional divisor ``E``.

    Orbit entries carry the class of the sum of their members on foreign
    divisors and the class of a single member on their own geometry, so
    the restriction is plain linear in the (shared) orbit coefficient.
    """
    geom = r.geometry(E)
    out = [0] * geom.pic_rank
    for label, coeff in D.items():
        if coeff == 0:
            continue
        if label not in geom.restrictions:
            r.prime(label)
            raise UnknownLabel(f"no restriction of {label!r} to {E!r}")
        for i, v in enumerate(geom.restrictions[label]):
            out[i] += coeff * v
    return tuple(out)


def twist_divisor(r: ResolutionData, lam) -> Divisor:
    """``floor(lam * F) - K_pi`` with exact integer floors."""
    lam = Fraction(lam)
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    p, q = lam.numerator, lam.denominator
    return Divisor({e.label: (p * e.e) // q - e.k for e in r.primes})


def adjacency(r: ResolutionData) -> Dict[str, set]:
    """Undirected adjacency: nonzero restriction in either direction, plus overrides."""
    graph = {lab: set() for lab in r.labels}
    for geom in r.geometries:
        for label, cls in geom.restrictions.items():
            if label != geom.owner and any(cls) and label in graph:
                graph[geom.owner].add(label)
                graph[label].add(geom.owner)
    for a, b in r.adjacency_overrides:
        if a in graph and b in graph and a != b:
            graph[a].add(b)
            graph[b].add(a)
    return graph


def connected_components(graph: Mapping, nodes: Iterable[str]) -> List[frozenset]:
    """Components of the subgraph induced on ``nodes``, in first-seen order."""
    nodes = list(dict.fromkeys(nodes))
    allowed = set(nodes)
    seen = set()
    comps = []
    for start in nodes:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in graph.get(v, ()):
                if w in allowed and w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


# -- validation ---------------------------------------------------------------------

def validate(r: ResolutionData) -> ValidationReport:
    """Collect invariant violations (errors) and soft findings (warnings)."""
    rep = ValidationReport()
    err = rep.errors.append
    labels = r.labels
    if len(set(labels)) != len(labels):
        dup = sorted({x for x in labels if labels.count(x) > 1})
        err(f"duplicate prime labels: {', '.join(dup)}")
    if r.input_kind not in (DIVISOR, IDEAL):
        err(f"input_kind must be 'divisor' or 'ideal', got {r.input_kind!r}")
    if r.ambient_dim < 2:
        err(f"ambient_dim must be >= 2, got {r.ambient_dim}")
    if r.num_generators is not None and r.num_generators < 1:
        err(f"num_generators must be positive, got {r.num_generators}")

    for p in r.primes:
        if p.kind not in (EXCEPTIONAL, AFFINE):
            err(f"{p.label}: kind must be exceptional or affine, got {p.kind!r}")
        if p.e < 0 or p.k < 0:
            err(f"{p.label}: e and k must be nonnegative")
        if p.kind == AFFINE and p.k != 0:
            err(f"{p.label}: affine component must have k = 0, got k = {p.k}")
        if p.count < 1:
            err(f"{p.label}: count must be positive")
        if p.count > 1 and not p.orbit_disjoint:
            err(f"{p.label}: count = {p.count} requires orbit_disjoint")
    if not any(p.e >= 1 for p in r.primes):
        err("no prime divisor has e >= 1")
    if r.input_kind == DIVISOR and not any(p.kind == AFFINE and p.e >= 1 for p in r.primes):
        err("divisor input needs an affine component with e >= 1")

    label_set = set(labels)
    owners = [g.owner for g in r.geometries]
    for p in r.primes:
        if p.exceptional and owners.count(p.label) != 1:
            err(f"{p.label}: expected exactly one geometry, found {owners.count(p.label)}")
    for g in r.geometries:
        if g.owner not in label_set:
            err(f"geometry owner {g.owner!r} is not a prime label")
            continue
        if not r.prime(g.owner).exceptional:
            err(f"{g.owner}: geometry attached to a non-exceptional prime")
        _validate_geometry(r, g, label_set, err)

    # adjacency symmetry between exceptional primes
    exc = r.exceptional_labels
    for i, a in enumerate(exc):
        for b in exc[i + 1:]:
            ga, gb = r._geom.get(a), r._geom.get(b)
            if ga is None or gb is None or b not in ga.restrictions or a not in gb.restrictions:
                continue
            if any(ga.restrictions[b]) != any(gb.restrictions[a]):
                err(f"asymmetric adjacency between {a} and {b}")

    for key, pairs in (("adjacency_overrides", r.adjacency_overrides), ("intersection_connected", r.intersection_connected)):
        for pair in pairs:
            if len(pair) != 2 or any(x not in label_set for x in pair):
                err(f"{key}: bad pair {list(pair)}")

    if rep.errors:
        return rep

    graph = adjacency(r)
    for a, b in r.intersection_connected:
        if b not in graph[a]:
            rep.warnings.append(f"intersection_connected pair {a}-{b} is not adjacent")

    if r.input_kind == IDEAL:
        from .unloading import is_antieffective

        verdict, decisions = is_antieffective(r, r.F)
        if verdict != "Effective":
            bad = sorted(k for k, d in decisions.items() if d.verdict != "Effective")
            rep.warnings.append(
                f"F is not decidably pi-antieffective ({verdict} on {', '.join(bad)}); "
                "an ideal's F should restrict to effective classes"
            )
    else:
        # a pulled-back divisor is trivial on every exceptional prime; the
        # period-1 rule relies on this
        F = r.F
        off = [E for E in exc if any(restrict(r, F, E))]
        if off:
            rep.warnings.append(
                f"F restricts nontrivially to {', '.join(off)}; periodicity (R2) assumes a pulled-back divisor"
            )
    return rep


def _validate_geometry(r, g, label_set, err):
    if g.pic_rank < 1:
        err(f"{g.owner}: pic_rank must be positive")
        return
    if len(g.basis_labels) != g.pic_rank:
        err(f"{g.owner}: basis_labels has {len(g.basis_labels)} entries, pic_rank is {g.pic_rank}")
    keys = set(g.restrictions)
    for missing in sorted(label_set - keys):
        err(f"{g.owner}: missing restriction of {missing}")
    for extra in sorted(keys - label_set):
        err(f"{g.owner}: restriction given for unknown label {extra}")
    for lab, cls in g.restrictions.items():
        if len(cls) != g.pic_rank:
            err(f"{g.owner}: restriction of {lab} has length {len(cls)}, pic_rank is {g.pic_rank}")
            return
    dims = g.oracle.dims()
    if dims and dims != {g.pic_rank}:
        err(f"{g.owner}: oracle dimension {sorted(dims)} does not match pic_rank {g.pic_rank}")
        return
    for gen, phi in g.oracle.inconsistencies():
        err(f"{g.owner}: oracle inconsistency: generator {list(gen)} violates necessary covector {list(phi)}")
    if g.oracle.inconsistencies():
        return
    for lab, cls in g.restrictions.items():
        if lab == g.owner or not any(cls) or lab not in label_set:
            continue
        d = decide_effective(g.oracle, cls)
        if d.verdict == NOT_EFFECTIVE:
            err(f"{g.owner}: restriction of {lab} {list(cls)} is refuted by covector {list(d.covector)}")


# -- (de)serialization ---------------------------------------------------------------

def to_dict(r: ResolutionData) -> dict:
    doc = {
        "ambient_dim": r.ambient_dim,
        "input_kind": r.input_kind,
    }
    if r.num_generators is not None:
        doc["num_generators"] = r.num_generators
    primes = []
    for p in r.primes:
        item = {"label": p.label, "kind": p.kind}
        if p.count != 1:
            item["count"] = p.count
        if p.orbit_disjoint:
            item["orbit_disjoint"] = True
        item["e"] = p.e
        item["k"] = p.k
        primes.append(item)
    doc["primes"] = primes
    doc["geometries"] = [
        {
            "owner": g.owner,
            "pic_rank": g.pic_rank,
            "basis_labels": list(g.basis_labels),
            "restrictions": {lab: list(g.restrictions[lab]) for lab in r.labels if lab in g.restrictions},
            "faithful_for_triviality": g.faithful_for_triviality,
            "oracle": g.oracle.to_json(),
        }
        for g in r.geometries
    ]
    if r.adjacency_overrides:
        doc["adjacency_overrides"] = [list(p) for p in r.adjacency_overrides]
    if r.intersection_connected:
        doc["intersection_connected"] = [list(p) for p in r.intersection_connected]
    return doc


def dumps(r: ResolutionData) -> str:
    return _compact_json(to_dict(r)) + "\n"


def _compact_json(doc, indent=0):
    # lists of scalars stay on one line so lattice vectors remain readable
    pad = "  " * indent
    if isinstance(doc, dict):
        if not doc:
            return "{}"
        items = [f'{pad}  {json.dumps(k)}: {_compact_json(v, indent + 1)}' for k, v in doc.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(doc, list):
        if all(not isinstance(x, (dict, list)) for x in doc) or all(
            isinstance(x, list) and all(not isinstance(y, (dict, list)) for y in x) for x in doc
        ):
            return json.dumps(doc)
        items = [f"{pad}  {_compact_json(v, indent + 1)}" for v in doc]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(doc)


def _req(doc, key, types, where):
    if key not in doc:
        raise SchemaError(f"{where}: missing key {key!r}")
    val = doc[key]
    if not isinstance(val, types) or isinstance(val, bool) and bool not in _as_tuple(types):
        raise SchemaError(f"{where}: key {key!r} has wrong type {type(val).__name__}")
    return val


def _as_tuple(t):
    return t if isinstance(t, tuple) else (t,)


def _int_list(val, where):
    if not isinstance(val, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in val):
        raise SchemaError(f"{where}: expected a list of integers")
    return tuple(val)


def from_dict(doc) -> ResolutionData:
    """Build ResolutionData from a parsed JSON document (either schema)."""
    if not isinstance(doc, dict):
        raise SchemaError("top level must be a JSON object")
    if "matrix" in doc:
        return _from_shortcut_dict(doc)
    primes = []
    for i, item in enumerate(_req(doc, "primes", list, "document")):
        where = f"primes[{i}]"
        if not isinstance(item, dict):
            raise SchemaError(f"{where}: expected an object")
        label = _req(item, "label", str, where)
        where = f"prime {label}"
        primes.append(
            PrimeDivisorEntry(
                label=label,
                kind=_req(item, "kind", str, where),
                e=_req(item, "e", int, where),
                k=_req(item, "k", int, where),
                count=item.get("count", 1),
                orbit_disjoint=bool(item.get("orbit_disjoint", False)),
            )
        )
    geoms = []
    for i, item in enumerate(_req(doc, "geometries", list, "document")):
        where = f"geometries[{i}]"
        if not isinstance(item, dict):
            raise SchemaError(f"{where}: expected an object")
        owner = _req(item, "owner", str, where)
        where = f"geometry {owner}"
        restr = _req(item, "restrictions", dict, where)
        oracle_doc = _req(item, "oracle", dict, where)
        geoms.append(
            ExceptionalGeometry(
                owner=owner,
                pic_rank=_req(item, "pic_rank", int, where),
                basis_labels=tuple(_req(item, "basis_labels", list, where)),
                restrictions={lab: _int_list(v, f"{where} restriction {lab}") for lab, v in restr.items()},
                faithful_for_triviality=bool(_req(item, "faithful_for_triviality", bool, where)),
                oracle=_oracle_from_dict(oracle_doc, where),
            )
        )
    return ResolutionData(
        primes=tuple(primes),
        geometries=tuple(geoms),
        input_kind=_req(doc, "input_kind", str, "document"),
        ambient_dim=_req(doc, "ambient_dim", int, "document"),
        num_generators=doc.get("num_generators"),
        adjacency_overrides=tuple(tuple(p) for p in doc.get("adjacency_overrides", [])),
        intersection_connected=tuple(tuple(p) for p in doc.get("intersection_connected", [])),
    )


def _oracle_from_dict(doc, where):
    gens = [_int_list(g, f"{where} generator") for g in doc.get("generators", [])]
    nec = [_int_list(n, f"{where} necessary") for n in doc.get("necessary", [])]
    systems = []
    for s in doc.get("sufficient_systems", []):
        if not isinstance(s, list):
            raise SchemaError(f"{where}: sufficient system must be a list")
        rows = []
        for q in s:
            if not isinstance(q, dict) or "covector" not in q:
                raise SchemaError(f"{where}: sufficient inequality needs a covector")
            rows.append(Inequality(_int_list(q["covector"], f"{where} covector"), bool(q.get("strict", False))))
        systems.append(tuple(rows))
    return EffectivityOracle(tuple(gens), tuple(nec), tuple(systems))


def _from_shortcut_dict(doc) -> ResolutionData:
    for key in ("matrix", "e", "k"):
        if not isinstance(doc.get(key), dict):
            raise SchemaError(f"2-D shortcut: key {key!r} must be an object")
    return from_intersection_matrix(
        doc["matrix"],
        doc.get("affine_rows", {}),
        doc["e"],
        doc["k"],
        input_kind=doc.get("input_kind", DIVISOR),
        num_generators=doc.get("num_generators"),
        ambient_dim=doc.get("ambient_dim", 2),
    )


def load_resolution(path) -> ResolutionData:
    """Read a file into ResolutionData without semantic validation."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON: {exc}") from exc
    try:
        return from_dict(doc)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(f"{path}: {exc}") from exc


def parse_resolution(path) -> ResolutionData:
    """Load and validate; raises ConsistencyError naming the first offending label."""
    r = load_resolution(path)
    rep = validate(r)
    if rep.errors:
        msg = rep.errors[0]
        label = msg.split(":", 1)[0] if ":" in msg else None
        raise ConsistencyError(msg, label=label)
    return r


# -- constructors ---------------------------------------------------------------------

def from_intersection_matrix(
    M,
    affine_rows,
    e,
    k,
    *,
    input_kind=DIVISOR,
    num_generators=None,
    ambient_dim=2,
) -> ResolutionData:
    """Surface data from an intersection matrix.

    ``M`` maps exceptional label -> {label: intersection number} (missing
    entries are 0); ``affine_rows`` maps affine label -> {exceptional label:
    intersection number}.  Each exceptional curve gets a rank-1 lattice
    (degree) whose oracle is the sign test, so decisions are never Unknown.
    """
    exc = [str(x) for x in M]
    aff = [str(x) for x in affine_rows]

    def entry(a, b):
        return int(M[a].get(b, 0))

    for a in exc:
        for b in M[a]:
            if b not in M:
                raise ConsistencyError(f"{a}: matrix column {b!r} is not an exceptional label", label=a)
    for a in exc:
        if entry(a, a) >= 0:
            raise PositiveSelfIntersection(f"{a}: self-intersection {entry(a, a)} is not negative", label=a)
        for b in exc:
            if entry(a, b) != entry(b, a):
                raise AsymmetricMatrix(f"{a}: {a}.{b} = {entry(a, b)} but {b}.{a} = {entry(b, a)}", label=a)
            if a != b and entry(a, b) < 0:
                raise ConsistencyError(f"{a}: negative intersection with {b}", label=a)
    for a in aff:
        for b, v in affine_rows[a].items():
            if b not in M:
                raise ConsistencyError(f"{a}: affine row refers to unknown curve {b!r}", label=a)
            if int(v) < 0:
                raise ConsistencyError(f"{a}: negative intersection with {b}", label=a)

    e = dict(e)
    k = dict(k)
    primes = [PrimeDivisorEntry(a, AFFINE, int(e.get(a, 0)), int(k.get(a, 0))) for a in aff]
    primes += [PrimeDivisorEntry(a, EXCEPTIONAL, int(e.get(a, 0)), int(k.get(a, 0))) for a in exc]
    for lab in list(e) + list(k):
        if lab not in M and lab not in affine_rows:
            raise UnknownLabel(f"multiplicity given for unknown label {lab!r}")

    oracle = EffectivityOracle(generators=((1,),), necessary=((1,),))
    geoms = []
    for i in exc:
        restr = {a: (int(affine_rows[a].get(i, 0)),) for a in aff}
        restr.update({j: (entry(j, i),) for j in exc})
        geoms.append(ExceptionalGeometry(i, 1, ("degree",), restr, False, oracle))
    return ResolutionData(
        primes=tuple(primes),
        geometries=tuple(geoms),
        input_kind=input_kind,
        ambient_dim=ambient_dim,
        num_generators=num_generators,
    )


def make_example2(d: int) -> ResolutionData:
    """Threefold resolution of (x^d+y^d+z^d)^2 + g, deg g = 2d+1, d >= 3.

    Primes: D_aff, E1 (blow-up of the origin), Ep (orbit of the d(2d+1)
    point blow-ups), E2 and E3 (ruled surfaces over the plane curve C).
    Lattices are compressed: E1 uses (line, sum of the exceptional curves),
    Ep the full Picard group (line, e1, e2) of one member, and E2, E3 the
    quotient (section, fibre degree).
    """
    if d < 3:
        raise DTooSmall(f"d must be >= 3, got {d}")
    npts = d * (2 * d + 1)
    primes = (
        PrimeDivisorEntry("D_aff", AFFINE, 1, 0),
        PrimeDivisorEntry("E1", EXCEPTIONAL, 2 * d, 2),
        PrimeDivisorEntry("Ep", EXCEPTIONAL, 2 * d + 2, 4, count=npts, orbit_disjoint=True),
        PrimeDivisorEntry("E2", EXCEPTIONAL, 2 * d + 1, 3),
        PrimeDivisorEntry("E3", EXCEPTIONAL, 4 * d + 2, 6),
    )
    ge = lambda *cov: Inequality(tuple(cov), False)  # noqa: E731
    gt = lambda *cov: Inequality(tuple(cov), True)  # noqa: E731
    e1 = ExceptionalGeometry(
        "E1", 2, ("line", "exc_sum"),
        {"D_aff": (0, 0), "E1": (-(2 * d + 1), 1), "Ep": (0, 1), "E2": (0, 0), "E3": (d, -1)},
        False,
        EffectivityOracle(
            generators=((1, 0), (0, 1), (d, -1)),
            necessary=((1, 0),),
            sufficient_systems=((ge(1, 0), ge(1, d)),),
        ),
    )
    ep = ExceptionalGeometry(
        "Ep", 3, ("line", "e1", "e2"),
        {"D_aff": (2, -1, -1), "E1": (1, -1, -1), "Ep": (-1, 0, 0), "E2": (0, 1, -1), "E3": (0, 0, 1)},
        True,
        EffectivityOracle(
            generators=((1, -1, 0), (0, 1, -1), (0, 0, 1)),
            necessary=((1, 0, 0), (1, 1, 0), (2, 1, 1)),
            sufficient_systems=((ge(1, 0, 0), ge(1, 1, 0), ge(2, 1, 1)),),
        ),
    )
    e2 = ExceptionalGeometry(
        "E2", 2, ("section", "fiber_degree"),
        {"D_aff": (0, 0), "E1": (0, 0), "Ep": (0, npts), "E2": (-2, -2 * d * (d + 1)), "E3": (1, 0)},
        False,
        EffectivityOracle(
            generators=((1, 0),),
            necessary=((1, 0),),
            sufficient_systems=((ge(1, 0), ge(0, 1)),),
        ),
    )
    e3 = ExceptionalGeometry(
        "E3", 2, ("section", "fiber_degree"),
        {"D_aff": (1, 0), "E1": (1, 0), "Ep": (0, npts), "E2": (1, 0), "E3": (-1, -d * (d + 1))},
        False,
        EffectivityOracle(
            generators=((1, 0),),
            necessary=((1, 0),),
            # strict fibre condition as stated for this surface, then the cone form
            sufficient_systems=((ge(1, 0), gt(0, 1)), (ge(1, 0), ge(0, 1))),
        ),
    )
    return ResolutionData(
        primes=primes,
        geometries=(e1, ep, e2, e3),
        input_kind=DIVISOR,
        ambient_dim=3,
        intersection_connected=(("E1", "E3"), ("E2", "E3")),
    )
