"""Mirrorforge Serialization

JSON documents read and written by the command line.

Coefficients are sympy expression strings in the ring variables and s, the
rational stand-in for the Novikov parameter. A generator reference is the
string "A|B/name" of a generator of hom(A, B).

Schemas:
    polytope   {"name", "dim", "facets": [{"normal", "constant"}], "basepoint"}
    category   {"kind": "clifford", "n", "w", "u", "ring"} or
               {"kind": "table", "objects", "homs": {"A|B": [{"name", "deg"}]},
                "m": [{"k", "inputs", "output", "object"?}], "units", "ring", "kmax"}
    mf         {"ring", "W", "ranks", "Q01", "Q10", "mode": "exact" | {"adic": d}}
    bundle     {"name", "summands": {label: {object: mf}}, "elements": {label: [expr]}}
    cochain    [{"len", "inputs", "output", "object"?}]
    setup      {"shipped", "n"} or {"family" | "category" + "q", "parameter",
                "reference": {"object", "b"}, "objects": {label: {"object", "b"}}}

Example:
    >>> from mirrorforge.core.serialize import category_from_json
    >>> C = category_from_json({"kind": "clifford", "n": 1, "u": ["1"]})
    >>> [str(g) for g in C.generators]
    ['L|L/1', 'L|L/e1']

Author: Sackey Ezekiel Etrue (https://github.com/djoezeke) & Mirrorforge Contributors
License: MIT
"""

import json
import logging
from pathlib import Path
from typing import Any, Hashable, Mapping, Optional, Sequence, Union

from sympy import SympifyError, sympify

from mirrorforge.core.coeff import FIELD, S
from mirrorforge.core.exceptions import InputError, ParseError, UnknownVariable
from mirrorforge.core.multilinear import Gen, TableMap, Vector
from mirrorforge.mirror.bulk import BulkDatum, bulk_from_family
from mirrorforge.mirror.examples import shipped
from mirrorforge.mirror.lmfunctor import MirrorSetup
from mirrorforge.structures.ainfty import AInfCategory, curved_clifford
from mirrorforge.structures.hoch import HochschildCochain
from mirrorforge.structures.mf import MatrixFactorization, MFCategory, mf_ring

__all__ = [
    "load_json",
    "parse_coefficient",
    "format_coefficient",
    "ring_from_json",
    "ring_to_json",
    "vector_from_json",
    "vector_to_json",
    "category_from_json",
    "category_to_json",
    "mf_from_json",
    "mf_to_json",
    "bundle_from_json",
    "cochain_from_json",
    "cochain_to_json",
    "setup_from_json",
]

LOGGER = logging.getLogger(__name__)

Document = Union[str, Path, Mapping, list]


def load_json(source: Document) -> Any:
    """
    Parsed JSON from a path, or the value itself when it is already parsed.

    Raises:
        ParseError: For malformed JSON, with the character position.
        InputError: When the file cannot be read.
    """
    if isinstance(source, (Mapping, list)):
        return source
    path = Path(source)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON in {path}: {exc.msg}", exc.pos, text) from exc


def _require(data: Mapping, key: str, what: str) -> Any:
    try:
        return data[key]
    except (KeyError, TypeError):
        raise InputError(f"{what} is missing the field {key!r}") from None


# region Coefficients and rings


def parse_coefficient(value: Any, domain: Any) -> Any:
    """
    A domain element from an int or an expression string.

    Raises:
        UnknownVariable: For a symbol that is neither s nor a ring variable.
        InputError: For text sympy cannot parse.
    """
    if isinstance(value, int):
        return domain.convert(value)
    try:
        expr = sympify(str(value))
    except (SympifyError, SyntaxError, TypeError) as exc:
        raise InputError(f"cannot parse coefficient {value!r}") from exc
    allowed = {str(sym) for sym in getattr(domain, "symbols", ())} | {str(S)}
    for sym in expr.free_symbols:
        if str(sym) not in allowed:
            raise UnknownVariable(str(sym))
    return domain.from_sympy(expr)


def format_coefficient(value: Any, domain: Any) -> str:
    return str(domain.to_sympy(value))


def ring_from_json(data: Optional[Mapping]) -> Any:
    """Q(s) without variables, Q(s)[vars] otherwise."""
    variables = list((data or {}).get("vars", []))
    return mf_ring(variables) if variables else FIELD


def ring_to_json(domain: Any) -> dict:
    return {"vars": [str(sym) for sym in getattr(domain, "symbols", ())]}


def _gen_index(gens: Sequence[Gen]) -> dict[str, Gen]:
    return {str(gen): gen for gen in gens}


def _gen(ref: str, index: Mapping[str, Gen]) -> Gen:
    try:
        return index[ref]
    except KeyError:
        raise InputError(f"unknown generator {ref!r}") from None


def vector_from_json(pairs: Sequence, index: Mapping[str, Gen], domain: Any) -> Vector:
    result = Vector()
    for ref, coeff in pairs:
        result.add_term(_gen(ref, index), parse_coefficient(coeff, domain))
    return result


def vector_to_json(vec: Vector, domain: Any) -> list:
    return [[str(gen), format_coefficient(value, domain)] for gen, value in vec.sorted_items()]


# endregion

# region Categories


def _clifford_from_json(data: Mapping) -> AInfCategory:
    domain = ring_from_json(data.get("ring"))
    n = int(_require(data, "n", "clifford category"))
    u = data.get("u", ["1"] * n)
    if len(u) != n:
        raise InputError(f"expected {n} squares u_i, got {len(u)}")
    w = parse_coefficient(data.get("w", 0), domain)
    return curved_clifford(w, [parse_coefficient(value, domain) for value in u], domain, data.get("object", "L"))


def _table_from_json(data: Mapping) -> AInfCategory:
    domain = ring_from_json(data.get("ring"))
    objects = list(_require(data, "objects", "table category"))
    homs = {}
    for key, entries in _require(data, "homs", "table category").items():
        source, _, target = key.partition("|")
        if source not in objects or target not in objects:
            raise InputError(f"hom space {key!r} between unknown objects")
        homs[(source, target)] = [Gen(entry["name"], source, target, int(entry["deg"]) % 2) for entry in entries]
    index = _gen_index(gen for gens in homs.values() for gen in gens)
    table, curvature = {}, {}
    for entry in data.get("m", []):
        output = vector_from_json(entry.get("output", []), index, domain)
        inputs = tuple(_gen(ref, index) for ref in entry.get("inputs", []))
        if len(inputs) != int(entry.get("k", len(inputs))):
            raise InputError(f"operation entry declares k={entry['k']} but lists {len(inputs)} inputs")
        if inputs:
            table[inputs] = output
        else:
            curvature[_require(entry, "object", "curvature entry")] = output
    units = {X: vector_from_json(pairs, index, domain) for X, pairs in data.get("units", {}).items()}
    ops = TableMap(table, curvature, 1, domain)
    kmax = int(data.get("kmax", max(ops.max_arity(), 2)))
    return AInfCategory(data.get("name", "C"), objects, homs, domain, ops, units, kmax, bool(data.get("complete", True)))


def category_from_json(source: Document) -> AInfCategory:
    """
    A category from a clifford or table document.

    Raises:
        InputError: For an unknown kind or inconsistent references.
    """
    data = load_json(source)
    kind = data.get("kind", "table")
    LOGGER.debug("reading a %s category", kind)
    if kind == "clifford":
        return _clifford_from_json(data)
    if kind == "table":
        return _table_from_json(data)
    raise InputError(f"unknown category kind {kind!r}; use 'clifford' or 'table'")


def category_to_json(C: AInfCategory, kmax: Optional[int] = None) -> dict:
    """The table document of C, operations tabulated up to kmax."""
    table = C.tabulate(kmax)
    entries = [
        {"k": 0, "inputs": [], "object": str(X), "output": vector_to_json(value, C.domain)}
        for X, value in table.curvature.items()
    ]
    entries += [
        {"k": len(gens), "inputs": [str(g) for g in gens], "output": vector_to_json(value, C.domain)}
        for gens, value in table.table.items()
    ]
    return {
        "kind": "table",
        "name": C.name,
        "ring": ring_to_json(C.domain),
        "objects": [str(X) for X in C.objects],
        "homs": {f"{X}|{Y}": [{"name": str(g.name), "deg": g.deg} for g in gens] for (X, Y), gens in C.homs.items()},
        "m": entries,
        "units": {str(X): vector_to_json(e, C.domain) for X, e in C.units.items()},
        "kmax": table.max_arity() if kmax is None else kmax,
        "complete": C.complete,
    }


# endregion

# region Matrix factorizations


def _matrix(rows: Sequence[Sequence[Any]], domain: Any) -> list[list[Any]]:
    return [[parse_coefficient(value, domain) for value in row] for row in rows]


def mf_from_json(source: Document, name: str = "E") -> MatrixFactorization:
    data = load_json(source)
    domain = ring_from_json(data.get("ring"))
    mode = data.get("mode", "exact")
    adic = None if mode == "exact" else int(_require(mode, "adic", "mode"))
    ranks = data.get("ranks")
    return MatrixFactorization(
        domain,
        parse_coefficient(_require(data, "W", "matrix factorization"), domain),
        _matrix(_require(data, "Q01", "matrix factorization"), domain),
        _matrix(_require(data, "Q10", "matrix factorization"), domain),
        tuple(ranks) if ranks else None,
        adic,
        1,
        data.get("name", name),
    )


def mf_to_json(M: MatrixFactorization) -> dict:
    def rows(block):
        return [[format_coefficient(value, M.ring) for value in row] for row in block.to_list()]

    return {
        "name": M.name,
        "ring": ring_to_json(M.ring),
        "W": format_coefficient(M.W, M.ring),
        "ranks": list(M.ranks),
        "Q01": rows(M.Q01),
        "Q10": rows(M.Q10),
        "mode": M.mode,
    }


def bundle_from_json(source: Document) -> tuple[MFCategory, dict]:
    """An MF category with summands and, per summand, the ring elements to test gamma on."""
    data = load_json(source)
    summands = {}
    for label, objects in _require(data, "summands", "MF bundle").items():
        summands[label] = {X: mf_from_json(entry, X) for X, entry in objects.items()}
    C = MFCategory(data.get("name", "MF"), summands)
    elements = {
        label: [parse_coefficient(value, C.domain) for value in values]
        for label, values in data.get("elements", {}).items()
    }
    return C, elements


# endregion

# region Cochains


def cochain_from_json(source: Document, C: AInfCategory, name: str = "phi", degree: int = 1) -> HochschildCochain:
    index = _gen_index(C.generators)
    table, curvature = {}, {}
    for entry in load_json(source):
        inputs = tuple(_gen(ref, index) for ref in entry.get("inputs", []))
        if len(inputs) != int(entry.get("len", len(inputs))):
            raise InputError(f"cochain entry declares len={entry['len']} but lists {len(inputs)} inputs")
        output = vector_from_json(entry.get("output", []), index, C.domain)
        if inputs:
            table[inputs] = output
        else:
            curvature[_require(entry, "object", "length-zero cochain entry")] = output
    return HochschildCochain(C, TableMap(table, curvature, degree, C.domain), name)


def cochain_to_json(phi: HochschildCochain, lmax: int) -> list:
    C = phi.category
    result = []
    for length in range(lmax + 1):
        for X, gens in C.basis_tuples(length):
            value = phi.map.evaluate(gens, X)
            if not value:
                continue
            entry = {"len": length, "inputs": [str(g) for g in gens], "output": vector_to_json(value, C.domain)}
            if not gens:
                entry["object"] = str(X)
            result.append(entry)
    return result


# endregion

# region Setups


def _assignment(data: Mapping, index: Mapping[str, Gen], domain: Any) -> tuple[Hashable, Vector]:
    return _require(data, "object", "object assignment"), vector_from_json(data.get("b", []), index, domain)


def setup_from_json(source: Document) -> tuple[MirrorSetup, BulkDatum]:
    """
    (MirrorSetup, BulkDatum) from a setup document.

    A document either names a shipped setup ({"shipped": name, "n": k}), or gives
    a one-parameter family whose t-derivative is the bulk datum, or gives a
    category together with an explicit q-cochain.

    Raises:
        InputError: For missing fields or unknown references.
        FamilyNotAInfty: When the family fails the A-infinity relation.
    """
    data = load_json(source)
    if "shipped" in data:
        return shipped(data["shipped"], int(data.get("n", 1)))
    name = data.get("name", "alpha")
    if "family" in data:
        datum = bulk_from_family(category_from_json(data["family"]), data.get("parameter", "t"), name)
        C = datum.category
    else:
        C = category_from_json(_require(data, "category", "setup"))
        q = cochain_from_json(_require(data, "q", "setup without a family"), C, f"q({name})")
        datum = BulkDatum(name, C, q.map)
    index = _gen_index(C.generators)
    reference = _assignment(_require(data, "reference", "setup"), index, C.domain)
    objects = {label: _assignment(entry, index, C.domain) for label, entry in _require(data, "objects", "setup").items()}
    return MirrorSetup(C, reference, objects, data.get("setup_name", "mirror")), datum


# endregion
