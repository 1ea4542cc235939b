"""
Certificate documents (schema "v1").

Documents are plain JSON with sorted keys and two-space indentation, so a
fixed (q, gamma, g, seed) always produces the same bytes. Verification never
trusts derived data in the document: the instance is rebuilt from
(q, gamma, g), f is recomputed from the stored tuple, and every stored
value is compared with its recomputation.
"""
import json
import logging
from typing import Any, Dict

from . import __version__
from .algebra import FieldSpec, UniPoly
from .construct import assemble_f, build_instance
from .errors import CurveError, SchemaError, VerificationError
from .verify import Certificate, certify

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "v1"

REQUIRED_KEYS = {
    "schema": str,
    "field": dict,
    "gamma": int,
    "genus": int,
    "profile": dict,
    "right": dict,
    "beta": list,
    "gTuple": list,
    "f": list,
    "polygon": list,
    "checks": dict,
    "meta": dict,
}

CHECK_KEYS = ("discriminant", "fibres", "polygonInterior", "N1", "gonality", "genus")


def certificate_document(cert: Certificate) -> Dict[str, Any]:
    instance = cert.instance
    return {
        "schema": SCHEMA_VERSION,
        "field": instance.field.to_json(),
        "gamma": instance.gamma,
        "genus": instance.genus,
        "profile": instance.profile.to_json(),
        "right": instance.right.to_json(),
        "beta": instance.beta.to_list(),
        "gTuple": [g.to_list() for g in cert.g_tuple],
        "f": [fi.to_list() for fi in cert.f.f],
        "polygon": cert.polygon.to_json(),
        "checks": {
            "discriminant": cert.disc_checks,
            "fibres": [fc.to_json() for fc in cert.fibres],
            "polygonInterior": cert.interior,
            "N1": cert.n1,
            "gonality": cert.gonality,
            "genus": cert.genus,
        },
        "meta": {
            "seed": instance.seed,
            "budget": instance.budget,
            "trials": cert.trials,
            "toolVersion": __version__,
        },
    }


def dump_certificate(cert: Certificate) -> str:
    return json.dumps(certificate_document(cert), sort_keys=True, indent=2) + "\n"


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _int_lists(value) -> bool:
    return isinstance(value, list) and all(isinstance(row, list) and all(_is_int(c) for c in row) for row in value)


def load_document(text: str) -> Dict[str, Any]:
    """Parse and validate the v1 layout; SchemaError on any violation"""
    try:
        doc = json.loads(text)
    except ValueError as e:
        raise SchemaError(f"certificate is not valid JSON: {e}")
    if not isinstance(doc, dict):
        raise SchemaError("certificate must be a JSON object")
    for key, kind in REQUIRED_KEYS.items():
        if key not in doc:
            raise SchemaError(f"missing key {key!r}")
        if kind is int and not _is_int(doc[key]) or kind is not int and not isinstance(doc[key], kind):
            raise SchemaError(f"key {key!r} must be of type {kind.__name__}")
    if doc["schema"] != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema {doc['schema']!r}")
    for key in ("gTuple", "f", "polygon"):
        if not _int_lists(doc[key]):
            raise SchemaError(f"key {key!r} must be a list of integer lists")
    if not all(_is_int(c) for c in doc["beta"]):
        raise SchemaError("key 'beta' must be an integer list")
    missing = [k for k in CHECK_KEYS if k not in doc["checks"]]
    if missing:
        raise SchemaError(f"checks lack {missing}")
    for key in ("seed", "trials"):
        if not _is_int(doc["meta"].get(key)):
            raise SchemaError(f"meta.{key} must be an integer")
    return doc


def _expect(stored, computed, check: str) -> None:
    if stored != computed:
        logger.error(f"Certificate check {check!r} failed")
        raise VerificationError(f"stored {check} differs from its recomputation", check=check)


def verify_document(doc: Dict[str, Any]) -> Certificate:
    """Rebuild and re-check everything; VerificationError names the first failed check"""
    try:
        field = FieldSpec.from_json(doc["field"])
    except (CurveError, KeyError, TypeError, ValueError) as e:
        raise SchemaError(f"invalid field description: {e}")
    meta = doc["meta"]
    budget = meta.get("budget", meta["trials"])
    try:
        instance = build_instance(field, doc["gamma"], doc["genus"], meta["seed"], budget)
    except CurveError as e:
        raise VerificationError(f"instance: {e.message}", check="instance") from e

    _expect(doc["profile"], instance.profile.to_json(), "profile")
    _expect(doc["right"], instance.right.to_json(), "right")
    _expect(doc["beta"], instance.beta.to_list(), "beta")
    _expect(doc["polygon"], instance.polygon.to_json(), "polygon")

    try:
        g_tuple = tuple(UniPoly(field, coeffs) for coeffs in doc["gTuple"])
        f = assemble_f(instance, g_tuple)
    except CurveError as e:
        raise VerificationError(f"gTuple: {e.message}", check="gTuple") from e
    _expect(doc["f"], [fi.to_list() for fi in f.f], "f")

    cert = certify(instance, g_tuple, f, meta["trials"])
    recomputed = certificate_document(cert)["checks"]
    for key in CHECK_KEYS:
        _expect(doc["checks"][key], recomputed[key], f"checks.{key}")
    logger.info(f"Certificate for q={instance.q} gamma={instance.gamma} g={instance.genus} verified")
    return cert
