"""Text encodings for distributions, spaces, maps and isomorphisms.

Rationals are integers or ``"p"``/``"p/q"`` strings and are always written
back as strings. A DistFn is an array of ``[t, v]`` pairs (``[]`` is
H_inf), or ``{"heaviside": t}`` where t may be ``"inf"``. Metric keys are
``"p|q"``; a pair given in one order is mirrored and the diagonal defaults
to H_0.
"""

import logging
import math
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple, Union

from .distributions import H0, DistFn, heaviside
from .errors import AxiomError, PmsError, PreconditionError, SchemaError
from .lipschitz import LipMap
from .monoid import IsoWitness, MonoidIsoOracle
from .spaces import Point, ProbGroup, ProbSpace, symmetric_table, validate_invariant_group, validate_space
from .tnorms import TriangleFn
from .utils.file_operations import load_document, parse_document, read_structured_file

logger = logging.getLogger(__name__)

RATIONAL_PATTERN = re.compile(r'^\s*[+-]?\d+(\s*/\s*\d+)?\s*$')
PAIR_SEPARATOR = "|"

Space = Union[ProbSpace, ProbGroup]


def parse_rational(value: Any, field: Optional[str] = None, source: Optional[str] = None,
                   allow_inf: bool = False) -> Union[Fraction, float]:
    """Decode an integer or ``"p/q"`` string; ``"inf"`` only when ``allow_inf``.

    Raises:
        SchemaError: For floats, booleans, malformed strings and zero denominators
    """
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise SchemaError(f"Expected an integer or 'p/q' string, got {value!r}", source, field=field)
    if isinstance(value, int):
        return Fraction(value)
    if allow_inf and value.strip().lower() in ('inf', '+inf'):
        return math.inf
    if not RATIONAL_PATTERN.match(value):
        raise SchemaError(f"Not a rational: {value!r}", source, field=field)
    try:
        return Fraction(value.replace(' ', ''))
    except ZeroDivisionError:
        raise SchemaError(f"Zero denominator in {value!r}", source, field=field) from None


def encode_rational(x: Fraction) -> str:
    return str(x)


def _label(value: Any, field: str, source: Optional[str]) -> str:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise SchemaError(f"Point labels must be strings or integers, got {value!r}", source, field=field)
    return str(value)


def decode_distfn(obj: Any, field: str = "dist", source: Optional[str] = None) -> DistFn:
    """Decode a DistFn from its JSON form.

    Raises:
        SchemaError: If the jump list is malformed or not a distribution
    """
    if isinstance(obj, dict) and set(obj) == {'heaviside'}:
        a = parse_rational(obj['heaviside'], f"{field}.heaviside", source, allow_inf=True)
        try:
            return heaviside(a)
        except ValueError as e:
            raise SchemaError(str(e), source, field=f"{field}.heaviside") from None
    if not isinstance(obj, list):
        raise SchemaError("A distribution must be a list of [t, v] pairs", source, field=field)
    pairs = []
    for i, item in enumerate(obj):
        if not isinstance(item, list) or len(item) != 2:
            raise SchemaError("Each jump must be a [t, v] pair", source, field=f"{field}[{i}]")
        pairs.append((parse_rational(item[0], f"{field}[{i}][0]", source),
                      parse_rational(item[1], f"{field}[{i}][1]", source)))
    try:
        return DistFn.of(pairs)
    except ValueError as e:
        raise SchemaError(str(e), source, field=field) from None


def encode_distfn(F: DistFn) -> list:
    return [[encode_rational(t), encode_rational(v)] for t, v in F.jumps]


def decode_distfn_document(doc: Any, source: Optional[str] = None) -> DistFn:
    """A DistFn file: a bare encoding or ``{"dist": ...}``."""
    if isinstance(doc, dict) and 'dist' in doc:
        return decode_distfn(doc['dist'], "dist", source)
    return decode_distfn(doc, "dist", source)


def load_distfn(argument: Union[str, Path]) -> DistFn:
    """Read a DistFn from a file, or from the argument as inline JSON."""
    return decode_distfn_document(load_document(argument), str(argument))


def _require_mapping(doc: Any, field: str, source: Optional[str]) -> Mapping[str, Any]:
    if not isinstance(doc, dict):
        raise SchemaError("Expected an object", source, field=field)
    return doc


def _pair_key(key: str, source: Optional[str]) -> Tuple[str, str]:
    parts = key.split(PAIR_SEPARATOR)
    if len(parts) != 2:
        raise SchemaError(f"Metric keys look like 'p{PAIR_SEPARATOR}q', got {key!r}", source, field=f"metric.{key}")
    return parts[0], parts[1]


def parse_space_document(doc: Any, source: Optional[str] = None, validate: bool = True) -> Space:
    """Build a ProbSpace, or a ProbGroup when a ``group`` section is present.

    Args:
        doc: Parsed JSON/YAML document
        source: Name used in error messages
        validate: Run the space axioms (and group axioms) and raise on failure

    Raises:
        SchemaError: If the document does not match the schema
        AxiomError: If ``validate`` is set and an axiom fails
    """
    doc = _require_mapping(doc, "", source)
    for key in ('points', 'tf', 'metric'):
        if key not in doc:
            raise SchemaError(f"Missing required field '{key}'", source, field=key)

    raw_points = doc['points']
    if not isinstance(raw_points, list) or not raw_points:
        raise SchemaError("'points' must be a nonempty list", source, field="points")
    points = tuple(_label(p, f"points[{i}]", source) for i, p in enumerate(raw_points))
    if len(set(points)) != len(points):
        raise SchemaError("Duplicate point labels", source, field="points")

    if not isinstance(doc['tf'], str):
        raise SchemaError("'tf' must be a string such as 'sup:min'", source, field="tf")
    try:
        tf = TriangleFn.parse(doc['tf'])
    except ValueError as e:
        raise SchemaError(str(e), source, field="tf") from None

    metric_doc = _require_mapping(doc['metric'], "metric", source)
    entries = {_pair_key(k, source): decode_distfn(v, f"metric.{k}", source) for k, v in metric_doc.items()}
    try:
        table = symmetric_table(points, entries, H0)
    except PreconditionError as e:
        raise SchemaError(str(e), source, field="metric") from None
    space = ProbSpace(points, table, tf)

    result: Space = space
    if 'group' in doc:
        result = _parse_group(doc['group'], space, source)

    if validate:
        report = validate_space(space)
        if isinstance(result, ProbGroup):
            report = report.merge(validate_invariant_group(result))
        if not report.passed:
            v = report.first()
            raise AxiomError(f"{source or '<input>'}: {v.axiom} fails at {v.witness}", report)
    return result


def _parse_group(doc: Any, space: ProbSpace, source: Optional[str]) -> ProbGroup:
    doc = _require_mapping(doc, "group", source)
    rows = doc.get('table')
    n = len(space.points)
    if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise SchemaError(f"'group.table' must be a {n}x{n} list of rows", source, field="group.table")
    op_table = {}
    for i, p in enumerate(space.points):
        for j, q in enumerate(space.points):
            op_table[(p, q)] = _label(rows[i][j], f"group.table[{i}][{j}]", source)
    identity = doc.get('identity')
    if identity is not None:
        identity = _label(identity, "group.identity", source)
        if identity not in space:
            raise SchemaError(f"Identity {identity!r} is not a point", source, field="group.identity")
    try:
        return ProbGroup.from_table(space, op_table, identity)
    except PreconditionError as e:
        raise SchemaError(str(e), source, field="group.table") from None


def parse_space_file(text: str, source: str = "<input>", fmt: str = 'json', validate: bool = True) -> Space:
    return parse_space_document(parse_document(text, source, fmt), source, validate)


def load_space(path: Union[str, Path], validate: bool = True) -> Space:
    path = Path(path)
    return parse_space_document(read_structured_file(path), str(path), validate)


def load_group(path: Union[str, Path]) -> ProbGroup:
    """Load a space file that must carry a ``group`` section."""
    result = load_space(path)
    if not isinstance(result, ProbGroup):
        raise SchemaError("Expected a group file with a 'group' section", str(path), field="group")
    return result


def encode_space(s: Space) -> Dict[str, Any]:
    """Encode a space or group; unordered pairs are written once unless asymmetric."""
    space = s.space if isinstance(s, ProbGroup) else s
    points = space.points
    metric = {}
    for i, p in enumerate(points):
        if space.metric[(p, p)] != H0:
            metric[f"{p}{PAIR_SEPARATOR}{p}"] = encode_distfn(space.metric[(p, p)])
        for q in points[i + 1:]:
            metric[f"{p}{PAIR_SEPARATOR}{q}"] = encode_distfn(space.metric[(p, q)])
            if space.metric[(q, p)] != space.metric[(p, q)]:
                metric[f"{q}{PAIR_SEPARATOR}{p}"] = encode_distfn(space.metric[(q, p)])
    doc: Dict[str, Any] = {'points': list(points), 'tf': space.tf.tag, 'metric': metric}
    if isinstance(s, ProbGroup):
        doc['group'] = {
            'table': [[s.op_table[(p, q)] for q in points] for p in points],
            'identity': s.identity,
        }
    return doc


def parse_map_values(doc: Any, space: ProbSpace, source: Optional[str] = None) -> Dict[Point, DistFn]:
    """Decode ``values`` of a map file; partial maps list only their domain.

    Raises:
        SchemaError: If a key is not a point of the space
    """
    values_doc = _require_mapping(_require_mapping(doc, "", source).get('values'), "values", source)
    values = {}
    for key, encoded in values_doc.items():
        if key not in space:
            raise SchemaError(f"{key!r} is not a point of the space", source, field=f"values.{key}")
        values[key] = decode_distfn(encoded, f"values.{key}", source)
    return values


def load_map(path: Union[str, Path], space: Optional[ProbSpace] = None) -> Tuple[ProbSpace, Dict[Point, DistFn]]:
    """Read a map file, resolving its ``space`` reference when none is given.

    A string ``space`` is a path relative to the map file; an object is an
    inline space document.
    """
    path = Path(path)
    doc = _require_mapping(read_structured_file(path), "", str(path))
    if space is None:
        ref = doc.get('space')
        if isinstance(ref, str):
            loaded = load_space(path.parent / ref)
        elif isinstance(ref, dict):
            loaded = parse_space_document(ref, f"{path}:space")
        else:
            raise SchemaError("Map file needs a 'space' path or inline object", str(path), field="space")
        space = loaded.space if isinstance(loaded, ProbGroup) else loaded
    return space, parse_map_values(doc, space, str(path))


def encode_lipmap(f: Union[LipMap, Mapping[Point, DistFn]]) -> Dict[str, Any]:
    values = f.values if isinstance(f, LipMap) else f
    return {'values': {str(p): encode_distfn(F) for p, F in values.items()}}


def parse_iso_document(doc: Any, source: Optional[str] = None) -> IsoWitness:
    forward_doc = _require_mapping(_require_mapping(doc, "", source).get('forward'), "forward", source)
    forward = {str(k): _label(v, f"forward.{k}", source) for k, v in forward_doc.items()}
    return IsoWitness.from_forward(forward)


def load_iso(path: Union[str, Path]) -> IsoWitness:
    path = Path(path)
    return parse_iso_document(read_structured_file(path), str(path))


def encode_iso(iso: IsoWitness) -> Dict[str, Any]:
    return {'forward': dict(iso.forward)}


def parse_phi_document(doc: Any, gA: ProbGroup, gB: ProbGroup, source: Optional[str] = None) -> MonoidIsoOracle:
    """Decode ``{"images": {"a": {"y": DistFn}}}`` into an oracle on delta maps.

    Raises:
        SchemaError: If an image is missing or not a total map over gB
    """
    images_doc = _require_mapping(_require_mapping(doc, "", source).get('images'), "images", source)
    images = {}
    for a, image in images_doc.items():
        images[a] = parse_map_values({'values': image}, gB.space, source)
    try:
        return MonoidIsoOracle.from_delta_images(gA, gB, images)
    except (PmsError, ValueError) as e:
        raise SchemaError(str(e), source, field="images") from None


def load_phi(path: Union[str, Path], gA: ProbGroup, gB: ProbGroup) -> MonoidIsoOracle:
    path = Path(path)
    return parse_phi_document(read_structured_file(path), gA, gB, str(path))
