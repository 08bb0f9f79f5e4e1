"""The versioned ``seqcurve/1`` certificate file format.

JSON with every rational written as a "num/den" (or integer) string, never as
a JSON number, so no reader can round it.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .curves import AffinePoint, Family, SequenceSpec
from .elliptic import ECPoint, OrderCertificate, WeierstrassCurve
from .exact import format_rat, parse_rat

FORMAT = "seqcurve/1"


class FormatError(ValueError):
    pass


@dataclass
class CertificateFile:
    spec: SequenceSpec
    certificates: list
    generator: dict = field(default_factory=dict)
    version: str = FORMAT


def encode(value):
    """Turn library values into JSON-safe data with rationals as strings."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return format_rat(value)
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        return value
    if isinstance(value, ECPoint):
        return None if value.is_infinity else [encode(value.x), encode(value.y)]
    if isinstance(value, AffinePoint):
        return [encode(value.x), encode(value.y)]
    if isinstance(value, WeierstrassCurve):
        return {"a2": encode(value.a2), "a4": encode(value.a4), "a6": encode(value.a6)}
    if isinstance(value, OrderCertificate):
        return {
            "verdict": value.verdict,
            "order": value.order,
            "multiple": value.multiple,
            "coordinate": encode(value.coordinate),
            "scale": value.scale,
            "evidence": value.evidence,
        }
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    return str(value)


def _rat(text):
    if not isinstance(text, str):
        raise FormatError(f"expected a rational string, got {text!r}")
    try:
        return parse_rat(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {text!r}: {exc}") from None


def _decode_loose(value):
    # provenance and metadata: strings are rationals, lists are tuples
    if isinstance(value, str):
        try:
            return parse_rat(value)
        except (ValueError, ZeroDivisionError):
            return value
    if isinstance(value, list):
        return tuple(_decode_loose(v) for v in value)
    if isinstance(value, dict):
        return {k: _decode_loose(v) for k, v in value.items()}
    return value


def _decode_order(data):
    if data is None:
        return None
    coord = data.get("coordinate")
    if coord is not None:
        coord = (coord[0], _rat(coord[1]))
    return OrderCertificate(data["verdict"], data.get("order"), data.get("multiple"), coord, data.get("scale", 1))


def spec_to_dict(spec: SequenceSpec) -> dict:
    return {
        "family": spec.family.value,
        "values": encode(spec.values),
        "extra": encode(spec.extra),
        "coordinate": spec.coordinate,
    }


def spec_from_dict(data: dict) -> SequenceSpec:
    return SequenceSpec(
        Family.parse(data["family"]),
        tuple(_rat(v) for v in data["values"]),
        {k: _rat(v) for k, v in data.get("extra", {}).items()},
        data.get("coordinate", "x"),
    )


def certificate_to_dict(cert) -> dict:
    return {
        "family": cert.family.value,
        "params": encode(cert.params),
        "values": encode(cert.values),
        "witnesses": encode(cert.witnesses),
        "coordinate": cert.coordinate,
        "provenance": encode(cert.provenance),
        "order": encode(cert.order),
    }


def certificate_from_dict(data: dict):
    from .families import CurveCertificate

    return CurveCertificate(
        family=Family.parse(data["family"]),
        params={k: _rat(v) for k, v in data["params"].items()},
        values=tuple(_rat(v) for v in data["values"]),
        witnesses=tuple(AffinePoint(_rat(x), _rat(y)) for x, y in data["witnesses"]),
        provenance=_decode_loose(data.get("provenance", {})),
        order=_decode_order(data.get("order")),
        coordinate=data.get("coordinate", "x"),
    )


def dumps(cf: CertificateFile) -> str:
    doc = {
        "format": cf.version,
        "spec": spec_to_dict(cf.spec),
        "generator": encode(cf.generator),
        "certificates": [certificate_to_dict(c) for c in cf.certificates],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> CertificateFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise FormatError(f"unsupported format tag {doc.get('format') if isinstance(doc, dict) else None!r}")
    try:
        spec = spec_from_dict(doc["spec"])
        certs = [certificate_from_dict(c) for c in doc.get("certificates", [])]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"malformed certificate file: {exc}") from None
    return CertificateFile(spec, certs, _decode_loose(doc.get("generator", {})), doc["format"])


def from_result(result) -> CertificateFile:
    meta = dict(result.method)
    meta["requested"] = result.requested
    meta["skipped"] = [list(s) for s in result.skipped]
    # metadata is free-form, so keep it in the same plain shape a reader gets back
    return CertificateFile(result.spec, list(result.certificates), _decode_loose(encode(meta)))


def read(path) -> CertificateFile:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def write(path, cf: CertificateFile) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(cf))
