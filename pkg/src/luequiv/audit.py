"""State-set documents and the all-pairs audit.

Document format (UTF-8 JSON, amplitudes row-major with index i*dB + j)::

    {"dims": [dA, dB], "renormalize": false,
     "states": [{"name": "psi1", "amplitudes": [[re, im], ...]}, ...]}
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field

import jsonschema
import numpy as np

from . import bipartite as bp
from . import equivalence as eq
from .errors import InputError, NumericalError, ParseError, SchemaError, ValidationError

DEFAULT_TOL = 1e-8

CLASSIFICATIONS = (
    "BOPEE-maximal",
    "BOPEE-partial",
    "orthogonal-unequal-entanglement",
    "non-orthogonal",
)

_number = {"type": "number"}
DOCUMENT_SCHEMA = {
    "type": "object",
    "required": ["dims", "states"],
    "additionalProperties": False,
    "properties": {
        "dims": {
            "type": "array",
            "items": {"type": "integer", "minimum": 1},
            "minItems": 2,
            "maxItems": 2,
        },
        "renormalize": {"type": "boolean"},
        "states": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["name", "amplitudes"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string", "minLength": 1},
                    "amplitudes": {
                        "type": "array",
                        "items": {"type": "array", "items": _number, "minItems": 2, "maxItems": 2},
                    },
                },
            },
        },
    },
}


@dataclass(frozen=True, eq=False)
class StateSetDocument:
    dims: tuple[int, int]
    names: tuple[str, ...]
    states: tuple[bp.StateVector, ...]
    renormalize: bool = False

    def __len__(self) -> int:
        return len(self.states)

    def get(self, name: str) -> bp.StateVector:
        try:
            return self.states[self.names.index(name)]
        except ValueError:
            raise ValidationError(f"no state named {name!r} (have: {', '.join(self.names)})") from None

    def permuted(self, order) -> "StateSetDocument":
        order = list(order)
        return StateSetDocument(
            dims=self.dims,
            names=tuple(self.names[i] for i in order),
            states=tuple(self.states[i] for i in order),
            renormalize=self.renormalize,
        )


def parse_document(text, tol: float = 1e-9) -> StateSetDocument:
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8 (byte {exc.start})") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        jsonschema.validate(raw, DOCUMENT_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"{where}: {exc.message}") from None

    dim_a, dim_b = raw["dims"]
    renorm = bool(raw.get("renormalize", False))
    names, states = [], []
    for entry in raw["states"]:
        name = entry["name"]
        if name in names:
            raise ValidationError(f"duplicate state name {name!r}")
        amps = [complex(re, im) for re, im in entry["amplitudes"]]
        try:
            psi = bp.make_state(dim_a, dim_b, amps, tol=tol, renormalize=renorm)
        except InputError as exc:
            raise ValidationError(f"state {name!r}: {exc}") from None
        names.append(name)
        states.append(psi)
    return StateSetDocument((dim_a, dim_b), tuple(names), tuple(states), renorm)


def document_to_dict(doc: StateSetDocument) -> dict:
    return {
        "dims": list(doc.dims),
        "renormalize": doc.renormalize,
        "states": [
            {"name": name, "amplitudes": [[float(z.real), float(z.imag)] for z in psi.amplitudes]}
            for name, psi in zip(doc.names, doc.states)
        ],
    }


def serialize_document(doc: StateSetDocument) -> str:
    return json.dumps(document_to_dict(doc), indent=2)


@dataclass
class PairResult:
    source: str
    target: str
    overlap_abs: float
    one_sided_a: bool
    one_sided_b: bool
    two_sided: bool
    max_overlap_a: float
    max_overlap_b: float
    error: str | None = None


@dataclass
class AuditReport:
    dims: tuple[int, int]
    tol: float
    names: list[str]
    classification: str
    orthogonal: bool
    max_offdiag_overlap: float
    equally_entangled: bool
    maximally_entangled: bool
    entropy_equal_spectrum_different: bool
    spectra: dict[str, list[float]]
    entropies: dict[str, float]
    pairs: list[PairResult] = field(default_factory=list)

    def pair(self, source: str, target: str) -> PairResult:
        for p in self.pairs:
            if p.source == source and p.target == target:
                return p
        raise KeyError((source, target))

    def to_dict(self, digits: int = 12) -> dict:
        r = lambda x: round(float(x), digits) + 0.0  # noqa: E731  (+0.0 drops -0.0)
        return {
            "dims": list(self.dims),
            "tol": self.tol,
            "classification": self.classification,
            "orthogonal": {"value": self.orthogonal, "max_offdiag_overlap": r(self.max_offdiag_overlap)},
            "equally_entangled": {
                "value": self.equally_entangled,
                "entropy_equal_spectrum_different": self.entropy_equal_spectrum_different,
                "spectra": {k: [r(x) for x in v] for k, v in self.spectra.items()},
                "entropies_bits": {k: r(v) for k, v in self.entropies.items()},
            },
            "maximally_entangled": self.maximally_entangled,
            "pairs": [
                {
                    "from": p.source,
                    "to": p.target,
                    "overlap_abs": r(p.overlap_abs),
                    "one_sided_A": p.one_sided_a,
                    "one_sided_B": p.one_sided_b,
                    "two_sided": p.two_sided,
                    "max_overlap_one_sided_A": r(p.max_overlap_a),
                    "max_overlap_one_sided_B": r(p.max_overlap_b),
                    **({"error": p.error} if p.error else {}),
                }
                for p in self.pairs
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    def render(self) -> str:
        lines = [
            f"classification: {self.classification}",
            f"states: {len(self.names)}  dims: {self.dims[0]}x{self.dims[1]}  tol: {self.tol:g}",
            f"orthogonal: {_yn(self.orthogonal)} (max off-diagonal |<i|j>| = {self.max_offdiag_overlap:.3e})",
            f"equally entangled: {_yn(self.equally_entangled)}",
            f"maximally entangled: {_yn(self.maximally_entangled)}",
        ]
        if self.entropy_equal_spectrum_different:
            lines.append("note: entropies agree but Schmidt spectra differ")
        lines.append("spectra:")
        for name, lam in self.spectra.items():
            vals = ", ".join(f"{x:.6f}" for x in lam)
            lines.append(f"  {name}: ({vals})  S = {self.entropies[name]:.6f} bits")
        lines.append("pairs (from -> to): one-sided A / one-sided B / two-sided / max one-sided overlap A, B")
        for p in self.pairs:
            if p.source == p.target:
                continue
            row = (f"  {p.source} -> {p.target}: {_yn(p.one_sided_a)} / {_yn(p.one_sided_b)} / "
                   f"{_yn(p.two_sided)} / {p.max_overlap_a:.6f}, {p.max_overlap_b:.6f}")
            if p.error:
                row += f"  [error: {p.error}]"
            lines.append(row)
        return "\n".join(lines)


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def _pair(name_i, name_j, psi_i, psi_j, tol) -> PairResult:
    if psi_i is psi_j:
        return PairResult(name_i, name_j, 1.0, True, True, True, 1.0, 1.0)
    ov = abs(bp.overlap(psi_i, psi_j))
    try:
        return PairResult(
            source=name_i,
            target=name_j,
            overlap_abs=ov,
            one_sided_a=bool(eq.one_sided_witness(psi_i, psi_j, "A", tol)),
            one_sided_b=bool(eq.one_sided_witness(psi_i, psi_j, "B", tol)),
            two_sided=bool(eq.two_sided_witness(psi_i, psi_j, tol)),
            max_overlap_a=eq.max_overlap_one_sided(psi_i, psi_j, "A")[0],
            max_overlap_b=eq.max_overlap_one_sided(psi_i, psi_j, "B")[0],
        )
    except NumericalError as exc:
        return PairResult(name_i, name_j, ov, False, False, False, math.nan, math.nan, error=str(exc))


def audit(doc: StateSetDocument, tol: float = DEFAULT_TOL) -> AuditReport:
    names = list(doc.names)
    states = list(doc.states)
    n = len(states)

    spectra = {nm: bp.schmidt_coefficients(s) for nm, s in zip(names, states)}
    entropies = {nm: bp.entanglement_entropy(s) for nm, s in zip(names, states)}

    max_off = 0.0
    for i, j in itertools.combinations(range(n), 2):
        max_off = max(max_off, abs(bp.overlap(states[i], states[j])))
    orthogonal = max_off < tol

    ref = spectra[names[0]]
    equal = all(float(np.max(np.abs(lam - ref))) < tol for lam in spectra.values())
    ent_ref = entropies[names[0]]
    entropy_equal = all(abs(s - ent_ref) < tol for s in entropies.values())
    maximal = all(bp.is_maximally_entangled(s, tol) for s in states)

    if not orthogonal:
        cls = "non-orthogonal"
    elif not equal:
        cls = "orthogonal-unequal-entanglement"
    elif maximal:
        cls = "BOPEE-maximal"
    else:
        cls = "BOPEE-partial"

    pairs = [_pair(names[i], names[j], states[i], states[j], tol)
             for i in range(n) for j in range(n)]

    return AuditReport(
        dims=doc.dims,
        tol=tol,
        names=names,
        classification=cls,
        orthogonal=orthogonal,
        max_offdiag_overlap=max_off,
        equally_entangled=equal,
        maximally_entangled=maximal,
        entropy_equal_spectrum_different=entropy_equal and not equal,
        spectra={k: [float(x) for x in v] for k, v in spectra.items()},
        entropies=entropies,
        pairs=pairs,
    )
