"""
Mated species: vertex decorations, mating, ideal edge expansions
"""

import itertools
import logging

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from pydantic import ValidationError

from .exceptions import InvalidGroup, MalformedGraph, MateIncompatible, NotSupported, UsageError
from .models.groups import GroupTableFile, GroupValidationReport
from .utils import read_json_file

logger = logging.getLogger(__name__)


class SpeciesTag(str, Enum):
    CC = "cc"
    AA = "aa"
    KK = "kk"
    GROUP = "group"


@dataclass(frozen=True)
class GroupPresentation:
    """Finite group with an anti-involution, elements addressed by index"""
    element_names: Tuple[str, ...]
    unit: int
    mul: Tuple[Tuple[int, ...], ...]
    star: Tuple[int, ...]
    name: str = field(default="custom", compare=False)

    @property
    def order(self) -> int:
        return len(self.element_names)

    def product(self, g: int, h: int) -> int:
        return self.mul[g][h]

    def inverse(self, g: int) -> int:
        for h in range(self.order):
            if self.mul[g][h] == self.unit:
                return h
        raise InvalidGroup([f"{self.element_names[g]} has no inverse"])

    def conj(self, g: int) -> int:
        return self.star[g]

    @classmethod
    def from_table(cls, elements: Sequence[str], unit: int, mul: Sequence[Sequence[int]],
                   star: Sequence[int], name: str = "custom") -> "GroupPresentation":
        return cls(tuple(elements), unit, tuple(tuple(row) for row in mul), tuple(star), name)


def validate_group(p: GroupPresentation) -> GroupValidationReport:
    """Scan every group and star axiom; violations are returned, not raised"""
    violations: List[str] = []
    n = p.order
    names = p.element_names
    shape_ok = (
        len(p.mul) == n
        and all(len(row) == n for row in p.mul)
        and all(0 <= x < n for row in p.mul for x in row)
        and len(p.star) == n
        and all(0 <= x < n for x in p.star)
        and 0 <= p.unit < n
    )
    if not shape_ok:
        return GroupValidationReport(group=p.name, order=n, violations=["table shape"])

    for g, h, k in itertools.product(range(n), repeat=3):
        if p.mul[p.mul[g][h]][k] != p.mul[g][p.mul[h][k]]:
            violations.append(f"associativity fails at ({names[g]}, {names[h]}, {names[k]})")
            break
    for g in range(n):
        if p.mul[p.unit][g] != g or p.mul[g][p.unit] != g:
            violations.append(f"unit law fails at {names[g]}")
        if not any(p.mul[g][h] == p.unit and p.mul[h][g] == p.unit for h in range(n)):
            violations.append(f"{names[g]} has no inverse")
    if p.star[p.unit] != p.unit:
        violations.append("star(unit) != unit")
    for g, h in itertools.product(range(n), repeat=2):
        if p.star[p.mul[g][h]] != p.mul[p.star[h]][p.star[g]]:
            violations.append(f"star is not an anti-homomorphism at ({names[g]}, {names[h]})")
            break
    for g in range(n):
        if p.star[p.star[g]] != g:
            violations.append(f"star is not an involution at {names[g]}")
            break
    return GroupValidationReport(group=p.name, order=n, violations=violations)


def _cyclic_group(m: int, star_inverse: bool, name: str) -> GroupPresentation:
    names = ["1"] + ([f"g{i}" for i in range(1, m)] if m > 2 else ["s"])
    mul = [[(i + j) % m for j in range(m)] for i in range(m)]
    star = [(-i) % m for i in range(m)] if star_inverse else list(range(m))
    return GroupPresentation.from_table(names, 0, mul, star, name)


def _symmetric_group_3(star_inverse: bool, name: str) -> GroupPresentation:
    perms = list(itertools.permutations(range(3)))
    index = {perm: i for i, perm in enumerate(perms)}
    names = ["".join(str(x + 1) for x in perm) for perm in perms]
    mul = [[index[tuple(a[b[x]] for x in range(3))] for b in perms] for a in perms]
    inv = [index[tuple(sorted(range(3), key=lambda x: a[x]))] for a in perms]
    star = inv if star_inverse else list(range(len(perms)))
    return GroupPresentation.from_table(names, index[(0, 1, 2)], mul, star, name)


BUILTIN_GROUPS = {
    "trivial": lambda: GroupPresentation.from_table(["1"], 0, [[0]], [0], "trivial"),
    "z2": lambda: _cyclic_group(2, False, "z2"),
    "z2-inv": lambda: _cyclic_group(2, True, "z2-inv"),
    "z3": lambda: _cyclic_group(3, False, "z3"),
    "z3-inv": lambda: _cyclic_group(3, True, "z3-inv"),
    "s3": lambda: _symmetric_group_3(False, "s3"),
    "s3-inv": lambda: _symmetric_group_3(True, "s3-inv"),
}


def lookup_group(name: str) -> GroupPresentation:
    try:
        return BUILTIN_GROUPS[name]()
    except KeyError:
        raise UsageError(f"unknown group {name!r}; known groups: {', '.join(sorted(BUILTIN_GROUPS))}")


def load_group_table(path: Union[str, Path], star: str = "table") -> GroupPresentation:
    """Load a group table file; star is 'id', 'inv' or 'table'"""
    try:
        table = GroupTableFile(**read_json_file(path))
    except ValidationError as e:
        raise UsageError(f"invalid group table {path}: {e}")
    except TypeError:
        raise UsageError(f"group table {path} must be a JSON object")

    presentation = GroupPresentation.from_table(table.elements, table.unit, table.mul,
                                                range(len(table.elements)), Path(path).stem)
    if star == "id":
        star_map = list(range(presentation.order))
    elif star == "inv":
        try:
            star_map = [presentation.inverse(g) for g in range(presentation.order)]
        except InvalidGroup as e:
            raise UsageError(str(e))
    elif star == "table":
        if table.star is None:
            raise UsageError(f"group table {path} has no star column; use --star id or --star inv")
        star_map = table.star
    else:
        raise UsageError(f"unknown star mode {star!r}")
    presentation = GroupPresentation.from_table(presentation.element_names, presentation.unit,
                                                presentation.mul, star_map, presentation.name)
    report = validate_group(presentation)
    if not report.valid:
        raise InvalidGroup(report.violations)
    logger.info(f"Loaded group table {path}: order {presentation.order}, star={star}")
    return presentation


@dataclass(frozen=True)
class SpeciesId:
    tag: SpeciesTag
    group: Optional[GroupPresentation] = None

    def __post_init__(self):
        if self.tag == SpeciesTag.GROUP:
            if self.group is None:
                raise InvalidGroup(["GROUP species requires a group presentation"])
            report = validate_group(self.group)
            if not report.valid:
                raise InvalidGroup(report.violations)
        elif self.group is not None:
            raise UsageError(f"species {self.tag.value} takes no group")

    @property
    def key(self) -> str:
        if self.tag == SpeciesTag.GROUP:
            return f"group:{self.group.name}"
        return self.tag.value

    def __str__(self) -> str:
        return self.key


CC = SpeciesId(SpeciesTag.CC)
AA = SpeciesId(SpeciesTag.AA)
KK = SpeciesId(SpeciesTag.KK)


def group_species(name_or_group: Union[str, GroupPresentation]) -> SpeciesId:
    group = lookup_group(name_or_group) if isinstance(name_or_group, str) else name_or_group
    return SpeciesId(SpeciesTag.GROUP, group)


def parse_species(text: str, group_table: Optional[str] = None, star: str = "table") -> SpeciesId:
    """Parse cc, aa, kk, group:NAME, or group with an explicit table file"""
    text = text.strip().lower()
    if text in ("cc", "aa", "kk"):
        if group_table:
            raise UsageError("--group-table only applies to group species")
        return SpeciesId(SpeciesTag(text))
    if text == "group":
        if not group_table:
            raise UsageError("species 'group' needs --group-table FILE")
        return group_species(load_group_table(group_table, star))
    if text.startswith("group:"):
        return group_species(text.split(":", 1)[1])
    raise UsageError(f"unknown species {text!r}")


@dataclass(frozen=True)
class VertexStructure:
    """Species structure on the darts of one vertex.

    CC: darts sorted, no payload. AA: darts in cyclic order, smallest first.
    KK: darts sorted, payload is the sorted chord tuple. GROUP: darts are
    (tail, head) in normal form, payload the element index.
    """
    species: SpeciesId
    darts: Tuple[int, ...]
    payload: Any = None

    @property
    def valence(self) -> int:
        return len(self.darts)


def _rotate_min_first(order: Sequence[int]) -> Tuple[int, ...]:
    i = min(range(len(order)), key=lambda j: order[j])
    return tuple(order[i:]) + tuple(order[:i])


def _group_normal_form(group: GroupPresentation, g: int, tail: int, head: int) -> Tuple[Tuple[int, int], int]:
    candidates = [(g, tail, head), (group.conj(g), head, tail)]
    label, t, h = min(candidates, key=lambda c: (group.element_names[c[0]], c[1], c[2]))
    return (t, h), label


def make_structure(species: SpeciesId, darts: Sequence[int], payload: Any = None) -> VertexStructure:
    """Build a normalized structure.

    AA takes the cyclic order as darts; KK takes chords as payload; GROUP
    takes darts as (tail, head) and the element index as payload.
    """
    darts = tuple(darts)
    if len(set(darts)) != len(darts):
        raise MalformedGraph(f"repeated dart in vertex {darts}")
    tag = species.tag
    if tag == SpeciesTag.CC:
        if len(darts) < 2:
            raise MalformedGraph("CC vertices need at least two darts")
        return VertexStructure(species, tuple(sorted(darts)))
    if tag == SpeciesTag.AA:
        if len(darts) < 2:
            raise MalformedGraph("AA vertices need at least two darts")
        return VertexStructure(species, _rotate_min_first(darts))
    if tag == SpeciesTag.KK:
        if len(darts) < 2 or len(darts) % 2:
            raise MalformedGraph("KK vertices need an even number of darts")
        chords = tuple(sorted(tuple(sorted(chord)) for chord in payload or ()))
        covered = sorted(d for chord in chords for d in chord)
        if covered != sorted(darts) or any(len(chord) != 2 for chord in chords):
            raise MalformedGraph(f"chords {chords} are not a perfect matching of {darts}")
        return VertexStructure(species, tuple(sorted(darts)), chords)
    if len(darts) != 2:
        raise MalformedGraph("GROUP vertices have exactly two darts")
    if payload is None or not 0 <= payload < species.group.order:
        raise MalformedGraph(f"bad group label {payload!r}")
    (tail, head), label = _group_normal_form(species.group, payload, darts[0], darts[1])
    return VertexStructure(species, (tail, head), label)


def relabel(v: VertexStructure, mapping: Dict[int, int]) -> VertexStructure:
    tag = v.species.tag
    if tag == SpeciesTag.KK:
        chords = [(mapping[a], mapping[b]) for a, b in v.payload]
        return make_structure(v.species, [mapping[d] for d in v.darts], chords)
    return make_structure(v.species, [mapping[d] for d in v.darts], v.payload)


def group_label(v: VertexStructure, tail: int) -> int:
    """Label of the GROUP vertex presented with the given tail"""
    return v.payload if v.darts[0] == tail else v.species.group.conj(v.payload)


def chord_partner(v: VertexStructure, dart: int) -> int:
    for a, b in v.payload:
        if a == dart:
            return b
        if b == dart:
            return a
    raise MateIncompatible(f"dart {dart} not in chord diagram")


def next_dart(v: VertexStructure, dart: int) -> int:
    i = v.darts.index(dart)
    return v.darts[(i + 1) % len(v.darts)]


def dart_neighbor(v: VertexStructure, dart: int) -> Optional[int]:
    """Dart tied to this one by the payload: AA successor, KK chord partner"""
    if v.species.tag == SpeciesTag.AA:
        return next_dart(v, dart)
    if v.species.tag == SpeciesTag.KK:
        return chord_partner(v, dart)
    return None


def dart_role(v: VertexStructure, dart: int) -> Tuple[int, int]:
    """Relabeling-invariant colour of a dart inside its vertex"""
    if v.species.tag != SpeciesTag.GROUP:
        return (v.valence, 0)
    group = v.species.group
    if group.conj(v.payload) == v.payload:
        return (v.payload, 0)
    # stored label is the name-smaller of g and g*, so darts[0] is its tail
    return (v.payload, 0 if dart == v.darts[0] else 1)


def is_fake(v: VertexStructure) -> bool:
    if v.species.tag == SpeciesTag.GROUP:
        return v.payload == v.species.group.unit
    return v.valence == 2


def _perfect_matchings(darts: Sequence[int]) -> Iterator[List[Tuple[int, int]]]:
    if not darts:
        yield []
        return
    first = darts[0]
    for i in range(1, len(darts)):
        rest = list(darts[1:i]) + list(darts[i + 1:])
        for matching in _perfect_matchings(rest):
            yield [(first, darts[i])] + matching


def list_structures(species: SpeciesId, darts: Sequence[int]) -> List[VertexStructure]:
    darts = list(darts)
    m = len(darts)
    tag = species.tag
    if m == 0:
        return []
    if tag == SpeciesTag.CC:
        return [make_structure(species, darts)] if m >= 2 else []
    if tag == SpeciesTag.AA:
        if m < 2:
            return []
        first = min(darts)
        rest = [d for d in darts if d != first]
        return [make_structure(species, [first] + list(perm)) for perm in itertools.permutations(rest)]
    if tag == SpeciesTag.KK:
        if m < 2 or m % 2:
            return []
        return [make_structure(species, darts, matching) for matching in _perfect_matchings(sorted(darts))]
    if m != 2:
        return []
    return [make_structure(species, darts, g) for g in range(species.group.order)]


def mate(a: VertexStructure, dart_a: int, b: VertexStructure, dart_b: int) -> VertexStructure:
    """Glue a at dart_a to b at dart_b; both darts disappear"""
    if a.species != b.species:
        raise MateIncompatible(f"cannot mate {a.species} with {b.species}")
    if dart_a not in a.darts:
        raise MateIncompatible(f"dart {dart_a} not in {a.darts}")
    if dart_b not in b.darts:
        raise MateIncompatible(f"dart {dart_b} not in {b.darts}")
    rest_a = [d for d in a.darts if d != dart_a]
    rest_b = [d for d in b.darts if d != dart_b]
    if set(rest_a) & set(rest_b):
        raise MateIncompatible("mated vertices share darts")

    species = a.species
    tag = species.tag
    if tag == SpeciesTag.CC:
        return make_structure(species, rest_a + rest_b)
    if tag == SpeciesTag.AA:
        i, j = a.darts.index(dart_a), b.darts.index(dart_b)
        after_a = a.darts[i + 1:] + a.darts[:i]
        after_b = b.darts[j + 1:] + b.darts[:j]
        return make_structure(species, after_a + after_b)
    if tag == SpeciesTag.KK:
        partner_a, partner_b = chord_partner(a, dart_a), chord_partner(b, dart_b)
        chords = [c for c in a.payload if dart_a not in c] + [c for c in b.payload if dart_b not in c]
        chords.append((partner_a, partner_b))
        return make_structure(species, rest_a + rest_b, chords)

    group = species.group
    x, y = rest_a[0], rest_b[0]
    into_a = group_label(a, x)          # a presented as x -> dart_a
    out_of_b = group_label(b, dart_b)   # b presented as dart_b -> y
    return make_structure(species, (x, y), group.product(into_a, out_of_b))


@dataclass(frozen=True)
class ExpansionSplit:
    side_a: Tuple[int, ...]
    side_b: Tuple[int, ...]
    payload_a: VertexStructure
    payload_b: VertexStructure
    new_darts: Tuple[int, int]
    multiplicity: int = 1


def ideal_expansions(v: VertexStructure, new_darts: Optional[Tuple[int, int]] = None) -> List[ExpansionSplit]:
    """All ideal edges of v; payload_a carries new_darts[0], payload_b new_darts[1]"""
    if new_darts is None:
        top = max(v.darts)
        new_darts = (top + 1, top + 2)
    na, nb = new_darts
    species = v.species
    tag = species.tag
    splits: List[ExpansionSplit] = []

    if tag == SpeciesTag.CC:
        first, others = v.darts[0], v.darts[1:]
        for mask in range(2 ** len(others) - 1):
            side_a = (first,) + tuple(d for i, d in enumerate(others) if mask >> i & 1)
            side_b = tuple(d for d in v.darts if d not in side_a)
            splits.append(ExpansionSplit(side_a, side_b,
                                         make_structure(species, side_a + (na,)),
                                         make_structure(species, side_b + (nb,)),
                                         new_darts))
        return splits

    if tag == SpeciesTag.AA:
        order = v.darts
        m = len(order)
        for i, j in itertools.combinations(range(m), 2):
            arc_a = order[i:j]
            arc_b = order[j:] + order[:i]
            splits.append(ExpansionSplit(arc_a, arc_b,
                                         make_structure(species, (na,) + arc_a),
                                         make_structure(species, (nb,) + arc_b),
                                         new_darts))
        return splits

    if tag == SpeciesTag.GROUP:
        group = species.group
        tail, head = v.darts
        # every factorization g = g1 g2, unit factors included: mate undoes each one
        for g1 in range(group.order):
            g2 = group.product(group.inverse(g1), v.payload)
            splits.append(ExpansionSplit((tail,), (head,),
                                         make_structure(species, (tail, na), g1),
                                         make_structure(species, (nb, head), g2),
                                         new_darts))
        return splits

    raise NotSupported(f"ideal edge expansions are not implemented for {species}")


def structure_isomorphisms(v: VertexStructure, w: VertexStructure) -> Iterator[Dict[int, int]]:
    """Dart bijections carrying the structure of v onto that of w"""
    if v.species != w.species or v.valence != w.valence:
        return
    tag = v.species.tag
    if tag == SpeciesTag.CC:
        for image in itertools.permutations(w.darts):
            yield dict(zip(v.darts, image))
        return
    if tag == SpeciesTag.AA:
        m = v.valence
        for shift in range(m):
            yield {v.darts[i]: w.darts[(i + shift) % m] for i in range(m)}
        return
    if tag == SpeciesTag.KK:
        for chords in itertools.permutations(w.payload):
            for flips in itertools.product((False, True), repeat=len(chords)):
                mapping = {}
                for (a, b), (c, d), flip in zip(v.payload, chords, flips):
                    mapping[a], mapping[b] = (d, c) if flip else (c, d)
                yield mapping
        return
    for image in (w.darts, w.darts[::-1]):
        mapping = dict(zip(v.darts, image))
        if relabel(v, mapping) == w:
            yield mapping


def payload_document(v: VertexStructure) -> Any:
    tag = v.species.tag
    if tag == SpeciesTag.AA:
        return {"cyclic": list(v.darts)}
    if tag == SpeciesTag.KK:
        return {"chords": [list(chord) for chord in v.payload]}
    if tag == SpeciesTag.GROUP:
        return {"element": v.species.group.element_names[v.payload], "tail": v.darts[0]}
    return None


def structure_from_document(species: SpeciesId, darts: Sequence[int], payload: Any) -> VertexStructure:
    tag = species.tag
    try:
        if tag == SpeciesTag.AA:
            order = (payload or {}).get("cyclic", darts)
            if sorted(order) != sorted(darts):
                raise MalformedGraph(f"cyclic order {order} does not cover {list(darts)}")
            return make_structure(species, order)
        if tag == SpeciesTag.KK:
            return make_structure(species, darts, [tuple(c) for c in payload["chords"]])
        if tag == SpeciesTag.GROUP:
            names = species.group.element_names
            g = names.index(payload["element"])
            tail = payload.get("tail", darts[0])
            head = next(d for d in darts if d != tail)
            return make_structure(species, (tail, head), g)
    except (KeyError, ValueError, TypeError, StopIteration) as e:
        raise MalformedGraph(f"bad payload {payload!r} for {species}: {e}")
    return make_structure(species, darts)
