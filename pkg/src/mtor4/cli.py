"""Command line front end.

Reads one JSON manifold description per invocation, builds the mapping
torus it describes, and dispatches to the computation modules.  Output
is either a human-readable block or, with --json, a machine-readable
report whose bytes depend only on the document and the flags.

The document schema is versioned (currently "1") and strict: unknown
keys are rejected with the path of the offending field.  Matrix, vector
and curve entries are accepted as JSON integers or decimal strings and
are always emitted as decimal strings, so entries survive consumers with
fixed-width integers.  Rational numbers travel as "p/q" strings.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

from .errors import (
    GenusMismatch,
    IncompatibleAutomorphism,
    InvalidAutomorphism,
    Mtor4Error,
    NotSymplectic,
    NotUnimodular,
    NotVirtuallySymplectic,
    ParseError,
    UnknownVirtualFibering,
    UnsupportedDescription,
    ValidationError,
)
from .fourfold import (
    CoverEntry,
    EulerComponent,
    IdentityMonodromy,
    MappingTorus4,
    Monodromy,
    SurfaceBundleAut,
    SymbolicPeriodic,
    ThreeTorusAut,
    TorusBundleAut,
    betti_numbers_4d,
    vb1_fourfold,
)
from .monodromy import Sl2Kind, TwistLetter, TwistWord, classify_sl2z
from .symplectic import (
    SymplecticDecision,
    SymplecticStatus,
    decide_symplectic,
    kodaira_dimension,
    luttinger_plan,
    verify_surgery_plan,
    virtual_kodaira,
)
from .threefold import (
    Fiber,
    Hyperbolic,
    JsjGraph,
    JsjPieceKind,
    NielsenThurstonType,
    S1xS2,
    Seifert,
    Spherical,
    SurfaceBundle,
    TorusBundle,
    VB1Kind,
    VB1Result,
    orbifold_euler,
    vb1_threefold,
)
from .zlinalg import IntMatrix

SCHEMA_VERSION = "1"
DEFAULT_MAX_COVER_INDEX = 12

_INT_RE = re.compile(r"-?[0-9]+")


# ---------------------------------------------------------------------------
# field readers
#
# Every reader takes the raw JSON value and the dotted path of the field
# it came from, and raises ParseError mentioning that path.  booleans are
# checked before ints because bool is an int subclass in Python.


def _read_int(value: Any, path: str) -> int:
    if isinstance(value, bool):
        raise ParseError(f"{path}: expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        if _INT_RE.fullmatch(value):
            return int(value)
        raise ParseError(f"{path}: {value!r} is not a decimal integer")
    raise ParseError(
        f"{path}: expected an integer or decimal string, "
        f"got {type(value).__name__}"
    )


def _read_bool(value: Any, path: str) -> bool:
    if isinstance(value, bool):
        return value
    raise ParseError(f"{path}: expected true or false, got {type(value).__name__}")


def _read_str(value: Any, path: str) -> str:
    if isinstance(value, str):
        return value
    raise ParseError(f"{path}: expected a string, got {type(value).__name__}")


def _read_obj(value: Any, path: str) -> dict:
    if isinstance(value, dict):
        return value
    raise ParseError(f"{path}: expected an object, got {type(value).__name__}")


def _read_array(value: Any, path: str) -> list:
    if isinstance(value, list):
        return value
    raise ParseError(f"{path}: expected an array, got {type(value).__name__}")


def _read_fraction(value: Any, path: str) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"{path}: expected a rational number, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"{path}: {value!r} is not a rational 'p/q': {exc}")
    raise ParseError(
        f"{path}: expected an integer or 'p/q' string, got {type(value).__name__}"
    )


def _read_vector(value: Any, path: str, length: int | None = None) -> tuple[int, ...]:
    arr = _read_array(value, path)
    vec = tuple(_read_int(entry, f"{path}[{i}]") for i, entry in enumerate(arr))
    if length is not None and len(vec) != length:
        raise ParseError(f"{path}: expected {length} entries, got {len(vec)}")
    return vec


def _read_matrix(value: Any, path: str, size: int) -> IntMatrix:
    arr = _read_array(value, path)
    if len(arr) != size:
        raise ParseError(f"{path}: expected {size} rows, got {len(arr)}")
    rows = [_read_vector(row, f"{path}[{i}]", size) for i, row in enumerate(arr)]
    return IntMatrix(rows)


def _no_extra_keys(obj: dict, allowed: Sequence[str], path: str) -> None:
    extra = sorted(set(obj) - set(allowed))
    if extra:
        raise ParseError(
            f"{path}: unknown keys {extra}; allowed keys are {sorted(allowed)}"
        )


def _enum_member(value: Any, path: str, enum_cls) -> Any:
    name = _read_str(value, path)
    try:
        return enum_cls(name)
    except ValueError:
        choices = sorted(member.value for member in enum_cls)
        raise ParseError(f"{path}: {name!r} is not one of {choices}")


def _domain(path: str, build: Callable[[], Any]) -> Any:
    """Run a domain constructor, prefixing its complaint with the field path.

    Schema-level problems have already been caught; whatever the
    dataclass validators raise here names a violated invariant, so the
    type is preserved and only the message gains an address.
    """
    try:
        return build()
    except (Mtor4Error, ValueError) as exc:
        raise type(exc)(f"{path}: {exc}") from None


# ---------------------------------------------------------------------------
# document schema


@dataclass(frozen=True)
class ManifoldDoc:
    """A parsed, validated manifold description.

    max_cover_index is the document's own option; command-line flags may
    override it at computation time without touching the canonical form.
    """

    fiber: Fiber
    monodromy: Monodromy
    max_cover_index: int = DEFAULT_MAX_COVER_INDEX

    def mapping_torus(self) -> MappingTorus4:
        return MappingTorus4(self.fiber, self.monodromy)


def _parse_word(value: Any, path: str) -> TwistWord:
    obj = _read_obj(value, path)
    _no_extra_keys(obj, ("genus", "letters"), path)
    if "genus" not in obj:
        raise ParseError(f"{path}: missing key 'genus'")
    genus = _read_int(obj["genus"], f"{path}.genus")
    letters = []
    for i, raw in enumerate(_read_array(obj.get("letters", []), f"{path}.letters")):
        lpath = f"{path}.letters[{i}]"
        lobj = _read_obj(raw, lpath)
        _no_extra_keys(lobj, ("curve", "exponent", "label"), lpath)
        for key in ("curve", "exponent"):
            if key not in lobj:
                raise ParseError(f"{lpath}: missing key '{key}'")
        curve = _read_vector(lobj["curve"], f"{lpath}.curve")
        exponent = _read_int(lobj["exponent"], f"{lpath}.exponent")
        label = None
        if lobj.get("label") is not None:
            label = _read_str(lobj["label"], f"{lpath}.label")
        letters.append(
            _domain(lpath, lambda c=curve, e=exponent, l=label: TwistLetter(c, e, l))
        )
    return _domain(path, lambda: TwistWord(genus=genus, letters=tuple(letters)))


def _parse_fiber(value: Any, path: str) -> Fiber:
    obj = _read_obj(value, path)
    if "kind" not in obj:
        raise ParseError(f"{path}: missing key 'kind'")
    kind = _read_str(obj["kind"], f"{path}.kind")

    if kind == "spherical":
        _no_extra_keys(obj, ("kind",), path)
        return Spherical()
    if kind == "s1xs2":
        _no_extra_keys(obj, ("kind",), path)
        return S1xS2()
    if kind == "torus-bundle":
        _no_extra_keys(obj, ("kind", "matrix"), path)
        if "matrix" not in obj:
            raise ParseError(f"{path}: missing key 'matrix'")
        m = _read_matrix(obj["matrix"], f"{path}.matrix", 2)
        return _domain(f"{path}.matrix", lambda: TorusBundle(m))
    if kind == "seifert":
        _no_extra_keys(
            obj,
            ("kind", "base_genus", "base_orientable", "cone_orders", "euler_number"),
            path,
        )
        for key in ("base_genus", "base_orientable"):
            if key not in obj:
                raise ParseError(f"{path}: missing key '{key}'")
        base_genus = _read_int(obj["base_genus"], f"{path}.base_genus")
        orientable = _read_bool(obj["base_orientable"], f"{path}.base_orientable")
        cone_orders = tuple(
            _read_int(o, f"{path}.cone_orders[{i}]")
            for i, o in enumerate(_read_array(obj.get("cone_orders", []), f"{path}.cone_orders"))
        )
        euler = _read_fraction(obj.get("euler_number", 0), f"{path}.euler_number")
        return _domain(
            path, lambda: Seifert(base_genus, orientable, cone_orders, euler)
        )
    if kind == "surface-bundle":
        _no_extra_keys(obj, ("kind", "genus", "nt_type", "word"), path)
        for key in ("genus", "nt_type", "word"):
            if key not in obj:
                raise ParseError(f"{path}: missing key '{key}'")
        genus = _read_int(obj["genus"], f"{path}.genus")
        nt = _enum_member(obj["nt_type"], f"{path}.nt_type", NielsenThurstonType)
        word = _parse_word(obj["word"], f"{path}.word")
        return _domain(path, lambda: SurfaceBundle(genus, word, nt))
    if kind == "hyperbolic":
        _no_extra_keys(obj, ("kind",), path)
        return Hyperbolic()
    if kind == "jsj":
        _no_extra_keys(obj, ("kind", "pieces", "tori"), path)
        for key in ("pieces", "tori"):
            if key not in obj:
                raise ParseError(f"{path}: missing key '{key}'")
        pieces = tuple(
            _enum_member(p, f"{path}.pieces[{i}]", JsjPieceKind)
            for i, p in enumerate(_read_array(obj["pieces"], f"{path}.pieces"))
        )
        tori = _read_int(obj["tori"], f"{path}.tori")
        return _domain(path, lambda: JsjGraph(pieces, tori))

    raise ParseError(
        f"{path}.kind: {kind!r} is not one of ['hyperbolic', 'jsj', 's1xs2', "
        "'seifert', 'spherical', 'surface-bundle', 'torus-bundle']"
    )


def _parse_monodromy(value: Any, path: str) -> Monodromy:
    obj = _read_obj(value, path)
    if "kind" not in obj:
        raise ParseError(f"{path}: missing key 'kind'")
    kind = _read_str(obj["kind"], f"{path}.kind")

    if kind == "identity":
        _no_extra_keys(obj, ("kind",), path)
        return IdentityMonodromy()
    if kind == "periodic":
        _no_extra_keys(obj, ("kind", "order"), path)
        if "order" not in obj:
            raise ParseError(f"{path}: missing key 'order'")
        order = _read_int(obj["order"], f"{path}.order")
        return _domain(path, lambda: SymbolicPeriodic(order))
    if kind == "torus-aut":
        _no_extra_keys(obj, ("kind", "fiber_action", "translation", "base_degree"), path)
        if "fiber_action" not in obj:
            raise ParseError(f"{path}: missing key 'fiber_action'")
        action = _read_matrix(obj["fiber_action"], f"{path}.fiber_action", 2)
        translation = _read_vector(
            obj.get("translation", [0, 0]), f"{path}.translation", 2
        )
        degree = _read_int(obj.get("base_degree", 1), f"{path}.base_degree")
        return _domain(path, lambda: TorusBundleAut(action, translation, degree))
    if kind == "h1-aut":
        _no_extra_keys(obj, ("kind", "matrix"), path)
        if "matrix" not in obj:
            raise ParseError(f"{path}: missing key 'matrix'")
        m = _read_matrix(obj["matrix"], f"{path}.matrix", 3)
        return _domain(f"{path}.matrix", lambda: ThreeTorusAut(m))
    if kind == "surface-aut":
        _no_extra_keys(
            obj, ("kind", "word", "base_degree", "translation", "euler_dual"), path
        )
        if "word" not in obj:
            raise ParseError(f"{path}: missing key 'word'")
        word = _parse_word(obj["word"], f"{path}.word")
        degree = _read_int(obj.get("base_degree", 1), f"{path}.base_degree")
        translation = None
        if obj.get("translation") is not None:
            translation = _read_vector(obj["translation"], f"{path}.translation")
        components = []
        for i, raw in enumerate(
            _read_array(obj.get("euler_dual", []), f"{path}.euler_dual")
        ):
            cpath = f"{path}.euler_dual[{i}]"
            cobj = _read_obj(raw, cpath)
            _no_extra_keys(cobj, ("label", "multiplicity", "curve"), cpath)
            if "label" not in cobj:
                raise ParseError(f"{cpath}: missing key 'label'")
            label = _read_str(cobj["label"], f"{cpath}.label")
            mult = _read_int(cobj.get("multiplicity", 1), f"{cpath}.multiplicity")
            curve = None
            if cobj.get("curve") is not None:
                curve = _read_vector(cobj["curve"], f"{cpath}.curve")
            components.append(
                _domain(cpath, lambda l=label, m=mult, c=curve: EulerComponent(l, m, c))
            )
        return _domain(
            path,
            lambda: SurfaceBundleAut(word, degree, translation, tuple(components)),
        )

    raise ParseError(
        f"{path}.kind: {kind!r} is not one of ['h1-aut', 'identity', "
        "'periodic', 'surface-aut', 'torus-aut']"
    )


def parse_document(text: str, source: str = "document") -> ManifoldDoc:
    """Parse and validate a JSON manifold description.

    Schema problems raise ParseError with the dotted path of the field;
    semantic problems raise the domain error naming the violated
    invariant.  The fiber/monodromy pairing itself is validated by the
    commands when they build the mapping torus.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: not valid JSON: {exc}")
    obj = _read_obj(raw, source)
    _no_extra_keys(obj, ("version", "fiber", "monodromy", "options"), source)
    for key in ("version", "fiber", "monodromy"):
        if key not in obj:
            raise ParseError(f"{source}: missing key '{key}'")
    version = _read_str(obj["version"], f"{source}.version")
    if version != SCHEMA_VERSION:
        raise ParseError(
            f"{source}.version: {version!r} is not the supported "
            f"schema version {SCHEMA_VERSION!r}"
        )
    fiber = _parse_fiber(obj["fiber"], f"{source}.fiber")
    monodromy = _parse_monodromy(obj["monodromy"], f"{source}.monodromy")
    max_cover_index = DEFAULT_MAX_COVER_INDEX
    if "options" in obj:
        opts = _read_obj(obj["options"], f"{source}.options")
        _no_extra_keys(opts, ("max_cover_index",), f"{source}.options")
        if "max_cover_index" in opts:
            max_cover_index = _read_int(
                opts["max_cover_index"], f"{source}.options.max_cover_index"
            )
            if max_cover_index < 1:
                raise ParseError(
                    f"{source}.options.max_cover_index: must be at least 1"
                )
    return ManifoldDoc(fiber, monodromy, max_cover_index)


# ---------------------------------------------------------------------------
# canonical serialization
#
# Wide integers (matrix, vector and curve entries, twist exponents) are
# emitted as decimal strings; structural counts stay JSON integers.


def _ser_int(n: int) -> str:
    return str(n)


def _ser_vector(vec: Sequence[int]) -> list[str]:
    return [_ser_int(c) for c in vec]


def _ser_matrix(m: IntMatrix) -> list[list[str]]:
    return [[_ser_int(c) for c in row] for row in m.entries()]


def _ser_fraction(q: Fraction) -> str:
    return str(q)


def _ser_word(word: TwistWord) -> dict:
    return {
        "genus": word.genus,
        "letters": [
            {
                "curve": _ser_vector(l.curve),
                "exponent": _ser_int(l.exponent),
                "label": l.label,
            }
            for l in word.letters
        ],
    }


def _ser_fiber(y: Fiber) -> dict:
    if isinstance(y, Spherical):
        return {"kind": "spherical"}
    if isinstance(y, S1xS2):
        return {"kind": "s1xs2"}
    if isinstance(y, TorusBundle):
        return {"kind": "torus-bundle", "matrix": _ser_matrix(y.monodromy)}
    if isinstance(y, Seifert):
        return {
            "kind": "seifert",
            "base_genus": y.base_genus,
            "base_orientable": y.base_orientable,
            "cone_orders": list(y.cone_orders),
            "euler_number": _ser_fraction(y.euler_number),
        }
    if isinstance(y, SurfaceBundle):
        return {
            "kind": "surface-bundle",
            "genus": y.genus,
            "nt_type": y.nt_type.value,
            "word": _ser_word(y.word),
        }
    if isinstance(y, Hyperbolic):
        return {"kind": "hyperbolic"}
    assert isinstance(y, JsjGraph)
    return {
        "kind": "jsj",
        "pieces": [p.value for p in y.pieces],
        "tori": y.tori,
    }


def _ser_monodromy(f: Monodromy) -> dict:
    if isinstance(f, IdentityMonodromy):
        return {"kind": "identity"}
    if isinstance(f, SymbolicPeriodic):
        return {"kind": "periodic", "order": f.order}
    if isinstance(f, TorusBundleAut):
        return {
            "kind": "torus-aut",
            "fiber_action": _ser_matrix(f.fiber_action),
            "translation": _ser_vector(f.translation),
            "base_degree": f.base_degree,
        }
    if isinstance(f, ThreeTorusAut):
        return {"kind": "h1-aut", "matrix": _ser_matrix(f.matrix)}
    assert isinstance(f, SurfaceBundleAut)
    return {
        "kind": "surface-aut",
        "word": _ser_word(f.word),
        "base_degree": f.base_degree,
        "translation": None if f.translation is None else _ser_vector(f.translation),
        "euler_dual": [
            {
                "label": c.label,
                "multiplicity": c.multiplicity,
                "curve": None if c.curve is None else _ser_vector(c.curve),
            }
            for c in f.euler_dual
        ],
    }


def serialize_document(doc: ManifoldDoc) -> dict:
    """Canonical JSON form of a document; parse . serialize is idempotent."""
    return {
        "version": SCHEMA_VERSION,
        "fiber": _ser_fiber(doc.fiber),
        "monodromy": _ser_monodromy(doc.monodromy),
        "options": {"max_cover_index": doc.max_cover_index},
    }


# ---------------------------------------------------------------------------
# report serialization


def _ser_witness(w: object) -> object:
    if w is None:
        return None
    if isinstance(w, CoverEntry):
        return {
            "b1": w.b1,
            "base_power": w.base_power,
            "cover_monodromy": _ser_matrix(w.cover_monodromy),
            "degree": w.degree(),
            "fiber_index": w.fiber_index,
            "lattice": _ser_matrix(w.lattice),
            "lifted_aut": {
                "base_degree": w.lifted_aut.base_degree,
                "fiber_action": _ser_matrix(w.lifted_aut.fiber_action),
                "translation": _ser_vector(w.lifted_aut.translation),
            },
            "monodromy_power": w.monodromy_power,
        }
    if isinstance(w, dict):
        return {str(k): (v if isinstance(v, str) else int(v)) for k, v in w.items()}
    if isinstance(w, (tuple, list)):
        return _ser_vector(w)
    raise TypeError(f"unserializable witness {type(w).__name__}")


def _ser_vb1(r: VB1Result) -> dict:
    return {
        "kind": r.kind.value,
        "value": r.value,
        "bound": r.bound,
        "saturated": r.saturated,
        "certificate": r.certificate,
        "witness": _ser_witness(r.witness),
    }


def _ser_decision(d: SymplecticDecision) -> dict:
    return {
        "status": d.status.value,
        "virtually": d.virtually,
        "reason": d.reason,
        "b1": d.b1,
        "fiber_class": None if d.fiber_class is None else _ser_vector(d.fiber_class),
        "cover": _ser_witness(d.cover),
        "fibered_genus": d.fibered_genus,
    }


def _vb1_text(r: VB1Result) -> str:
    if r.kind is VB1Kind.INFINITE:
        return "infinite"
    if r.kind is VB1Kind.EXACT:
        return f"{r.value} (exact)"
    if r.saturated:
        return f"{r.value} (enumerated; stable under the cover search)"
    return f">= {r.value} (enumerated; universal bound {r.bound})"


def _report_skeleton(command: str, doc: ManifoldDoc) -> dict:
    return {
        "command": command,
        "document": serialize_document(doc),
        "classification": None,
        "invariants": None,
        "vb1": None,
        "symplectic": None,
        "kodaira": None,
        "virtual_kodaira": None,
        "surgery_plan": None,
        "certificates": [],
        "warnings": [],
    }


# ---------------------------------------------------------------------------
# commands
#
# Each command returns (report, text_lines).  text_lines is the human
# output; entries marked as detail are dropped under --quiet.

_DETAIL = object()


def _fiber_headline(y: Fiber) -> str:
    if isinstance(y, Spherical):
        return "spherical fiber"
    if isinstance(y, S1xS2):
        return "sphere-times-circle fiber"
    if isinstance(y, TorusBundle):
        cls = classify_sl2z(y.monodromy)
        if cls.kind is Sl2Kind.ANOSOV:
            return "Anosov"
        if cls.kind is Sl2Kind.PERIODIC:
            return f"Periodic order {cls.order}"
        return f"Reducible (unipotent power {cls.unipotent_power})"
    if isinstance(y, Seifert):
        return (
            f"Seifert fibered (chi_orb = {orbifold_euler(y)}, "
            f"e = {y.euler_number})"
        )
    if isinstance(y, SurfaceBundle):
        return f"Surface bundle of genus {y.genus} ({y.nt_type.value})"
    if isinstance(y, Hyperbolic):
        return "Hyperbolic"
    assert isinstance(y, JsjGraph)
    pieces = f"{len(y.pieces)} piece" + ("s" if len(y.pieces) != 1 else "")
    tori = f"{y.tori} " + ("torus" if y.tori == 1 else "tori")
    return f"JSJ graph ({pieces}, {tori})"


def cmd_classify(doc: ManifoldDoc, max_cover_index: int) -> tuple[dict, list]:
    doc.mapping_torus()
    report = _report_skeleton("classify", doc)
    y = doc.fiber
    vb1 = vb1_threefold(y)
    headline = _fiber_headline(y)
    vb1_value = "infinite" if vb1.kind is VB1Kind.INFINITE else str(vb1.value)
    summary = f"{headline}; vb1(Y) = {vb1_value}"

    block: dict[str, object] = {
        "fiber_kind": _ser_fiber(y)["kind"],
        "monodromy_kind": _ser_monodromy(doc.monodromy)["kind"],
        "summary": summary,
        "fiber_vb1": _ser_vb1(vb1),
    }
    if isinstance(y, TorusBundle):
        cls = classify_sl2z(y.monodromy)
        block["monodromy_class"] = {
            "kind": cls.kind.value,
            "order": cls.order,
            "unipotent_power": cls.unipotent_power,
        }
    report["classification"] = block
    report["certificates"] = [summary, vb1.certificate]

    lines = [f"classification: {summary}"]
    lines.append((_DETAIL, f"fiber kind: {block['fiber_kind']}"))
    lines.append((_DETAIL, f"monodromy kind: {block['monodromy_kind']}"))
    lines.append((_DETAIL, f"certificate: {vb1.certificate}"))
    return report, lines


def cmd_invariants(doc: ManifoldDoc, max_cover_index: int) -> tuple[dict, list]:
    x = doc.mapping_torus()
    report = _report_skeleton("invariants", doc)
    lines: list = []

    try:
        betti = betti_numbers_4d(x)
    except UnsupportedDescription as exc:
        report["warnings"].append(f"betti numbers unavailable: {exc}")
        lines.append("invariants: unavailable (see warnings)")
    else:
        report["invariants"] = {
            "b1": betti.b1,
            "b2": betti.b2,
            "chi": betti.euler,
            "sigma": betti.signature,
        }
        k1 = betti.b1 - 1
        cert = (
            f"b1 = 1 + k1 and b2 = 2 k1 with k1 = {k1} the fixed rank of the "
            "monodromy on the rational first homology of the fiber; Euler "
            "characteristic and signature vanish for oriented mapping tori"
        )
        report["certificates"].append(cert)
        lines += [
            f"b1 = {betti.b1}",
            f"b2 = {betti.b2}",
            f"chi = {betti.euler}",
            f"sigma = {betti.signature}",
            (_DETAIL, f"certificate: {cert}"),
        ]

    vb1 = vb1_fourfold(x, max_index=max_cover_index)
    report["vb1"] = _ser_vb1(vb1)
    report["certificates"].append(vb1.certificate)
    if vb1.kind is VB1Kind.BOUNDED_ABOVE and not vb1.saturated:
        report["warnings"].append(
            f"cover enumeration up to index {max_cover_index} was still "
            f"growing; vb1 is reported as the best witness found, the "
            f"universal bound is {vb1.bound}"
        )
    lines.append(f"vb1 = {_vb1_text(vb1)}")
    lines.append((_DETAIL, f"certificate: {vb1.certificate}"))
    return report, lines


def cmd_symplectic(doc: ManifoldDoc, max_cover_index: int) -> tuple[dict, list]:
    x = doc.mapping_torus()
    report = _report_skeleton("symplectic", doc)
    decision = decide_symplectic(x, max_cover_index=max_cover_index)
    report["symplectic"] = _ser_decision(decision)
    report["certificates"].append(decision.reason)

    lines: list = [f"symplectic: {decision.status.value}"]
    if decision.b1 is not None:
        lines.append(f"b1 = {decision.b1}")
    lines.append((_DETAIL, f"reason: {decision.reason}"))

    try:
        kod = kodaira_dimension(x, decision=decision, max_cover_index=max_cover_index)
    except NotSymplectic as exc:
        report["warnings"].append(f"kodaira dimension undefined: {exc}")
        lines.append("kodaira dimension: undefined (not symplectic)")
    else:
        report["kodaira"] = kod.value
        cert = (
            f"kodaira dimension {kod.value}: the certifying fibration over "
            f"the 2-torus has fiber genus {decision.fibered_genus}"
        )
        report["certificates"].append(cert)
        lines.append(f"kodaira dimension: {kod.value}")
        lines.append((_DETAIL, f"certificate: {cert}"))

    try:
        virtual_kod = virtual_kodaira(x, max_index=max_cover_index)
    except NotVirtuallySymplectic as exc:
        report["warnings"].append(f"no symplectic finite cover: {exc}")
        lines.append("virtual kodaira dimension: undefined (see warnings)")
    except UnknownVirtualFibering as exc:
        report["warnings"].append(f"virtual kodaira dimension undetermined: {exc}")
        lines.append("virtual kodaira dimension: unknown (see warnings)")
    else:
        report["virtual_kodaira"] = virtual_kod.value
        cert = (
            f"virtual kodaira dimension {virtual_kod.value} is the kodaira "
            "dimension of a symplectic finite cover"
        )
        report["certificates"].append(cert)
        lines.append(f"virtual kodaira dimension: {virtual_kod.value}")
        lines.append((_DETAIL, f"certificate: {cert}"))
    return report, lines


def cmd_surgery_plan(doc: ManifoldDoc, max_cover_index: int) -> tuple[dict, list]:
    x = doc.mapping_torus()
    y = doc.fiber
    if not isinstance(y, SurfaceBundle):
        raise UnsupportedDescription(
            "surgery plans need a surface-bundle fiber, got "
            f"'{_ser_fiber(y)['kind']}'"
        )
    f = x.monodromy
    if isinstance(f, IdentityMonodromy) or (
        isinstance(f, SymbolicPeriodic) and f.order == 1
    ):
        q_word = TwistWord(genus=y.genus)
        euler_dual: tuple[EulerComponent, ...] = ()
    elif isinstance(f, SurfaceBundleAut):
        q_word = f.word
        euler_dual = f.euler_dual
    else:
        raise UnsupportedDescription(
            "a periodic monodromy known only by its order carries no twist "
            "word, so no surgery plan can be written down"
        )

    plan = luttinger_plan(y.genus, y.word, q_word, euler_dual)
    verified = verify_surgery_plan(plan, y.word, q_word, euler_dual)

    report = _report_skeleton("surgery-plan", doc)
    report["surgery_plan"] = {
        "genus": plan.genus,
        "base": plan.base,
        "canonical_pairing": plan.canonical_pairing,
        "tori": [
            {
                "family": t.family,
                "label": t.label,
                "axis": t.axis,
                "marker": t.marker,
                "coefficient": _ser_int(t.coefficient),
                "curve": None if t.curve is None else _ser_vector(t.curve),
            }
            for t in plan.tori
        ],
        "verified": verified,
    }
    report["certificates"] += [
        "the plan's twist-word families reconstruct the declared fiber and "
        "monodromy homology actions exactly",
        f"canonical pairing {plan.canonical_pairing} = 2 * {plan.genus} - 2",
    ]

    lines: list = [
        f"surgery plan on the {plan.base}",
        f"tori: {len(plan.tori)}",
        f"canonical pairing: {plan.canonical_pairing}",
    ]
    for t in plan.tori:
        curve = "unspecified" if t.curve is None else "(" + ", ".join(map(str, t.curve)) + ")"
        lines.append(
            (
                _DETAIL,
                f"  [{t.family}] {t.label}: axis {t.axis}, marker {t.marker}, "
                f"coefficient {t.coefficient}, curve {curve}",
            )
        )
    lines.append("verified: reconstructed homology action matches the input")
    return report, lines


_COMMANDS = {
    "classify": cmd_classify,
    "invariants": cmd_invariants,
    "symplectic": cmd_symplectic,
    "surgery-plan": cmd_surgery_plan,
}


# ---------------------------------------------------------------------------
# driver


def _load(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"{path}: cannot read document: {exc}")


def _emit(report: dict, lines: list, as_json: bool, quiet: bool, out) -> None:
    if as_json:
        out.write(json.dumps(report, sort_keys=True, indent=2))
        out.write("\n")
        return
    for line in lines:
        if isinstance(line, tuple):
            if quiet:
                continue
            line = line[1]
        out.write(line + "\n")
    for warning in report["warnings"]:
        out.write(f"warning: {warning}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mtor4",
        description=(
            "invariants of 4-dimensional mapping tori of 3-manifolds, "
            "from symbolic descriptions"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("classify", "monodromy class and fiber geometry"),
        ("invariants", "betti numbers and virtual b1"),
        ("symplectic", "symplectic decision and kodaira dimensions"),
        ("surgery-plan", "Lagrangian torus surgery construction plan"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("path", help="document path, or - for standard input")
        cmd.add_argument(
            "--json", action="store_true", help="machine-readable report"
        )
        cmd.add_argument(
            "--max-cover-index",
            type=int,
            default=None,
            metavar="N",
            help=(
                "cover enumeration depth (overrides the document option; "
                f"default {DEFAULT_MAX_COVER_INDEX})"
            ),
        )
        cmd.add_argument(
            "--quiet", action="store_true", help="suppress certificate detail"
        )
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = parse_document(_load(args.path), source="document")
        max_cover_index = args.max_cover_index
        if max_cover_index is None:
            max_cover_index = doc.max_cover_index
        if max_cover_index < 1:
            raise ValidationError("--max-cover-index must be at least 1")
        report, lines = _COMMANDS[args.command](doc, max_cover_index)
    except ParseError as exc:
        print(f"error[ParseError]: {exc}", file=sys.stderr)
        return 2
    except UnsupportedDescription as exc:
        print(f"error[UnsupportedDescription]: {exc}", file=sys.stderr)
        return 3
    except Mtor4Error as exc:
        print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error[ValidationError]: {exc}", file=sys.stderr)
        return 2
    _emit(report, lines, args.json, args.quiet, sys.stdout)
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
