"""JSON element, sequence and relation files."""

from __future__ import annotations

import json
import os

from .errors import ParseError
from .field import ResidueField
from .tower import TowerConfig, TowerElement
from .twistrec import TwistRelation, TwistSequence


def precision_override() -> int | None:
    raw = os.environ.get("AX_PRECISION")
    if raw is None or raw == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ParseError(f"AX_PRECISION must be an integer, got {raw!r}") from None
    if value < 2:
        raise ParseError("AX_PRECISION must be at least 2")
    return value


def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def parse_json_text(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{what}: {exc.msg}") from None


def field_from_json(d: dict) -> ResidueField:
    try:
        p = int(d["p"])
        f = int(d.get("f", 1))
        modulus = tuple(int(c) for c in d.get("modulus", [0, 1] if f == 1 else []))
        return ResidueField(p, f, modulus)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad field description: {exc}") from None


def config_from_json(d: dict, precision: int | None = None) -> TowerConfig:
    k = field_from_json(d)
    try:
        e = int(d.get("e", 1))
        eis = d.get("eisenstein")
        P = precision or int(d.get("precision_P", 8))
        return TowerConfig(k, e, None if eis is None else tuple(tuple(c) if isinstance(c, list) else c for c in eis), P)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad tower configuration: {exc}") from None


def element_from_json(d: dict, precision: int | None = None) -> TowerElement:
    """Canonical form {config, level, shift, coeffs}; also {config, level, digits: {i: coords}}."""
    if not isinstance(d, dict):
        raise ParseError("an element must be a JSON object with config and level")
    try:
        cfg = config_from_json(d["config"], precision)
        level = int(d["level"])
        if level < 0:
            raise ValueError("level must be non-negative")
        if "digits" in d:
            terms = {int(i): cfg.field(c) for i, c in d["digits"].items()}
            return TowerElement.from_terms(cfg, level, terms)
        if "terms" in d:
            terms = {int(i): c for i, c in d["terms"].items()}
            return TowerElement.from_terms(cfg, level, terms)
        coeffs = d["coeffs"]
        if len(coeffs) != cfg.N(level):
            raise ValueError(f"expected {cfg.N(level)} coefficients, got {len(coeffs)}")
        el = TowerElement(cfg, level, int(d["shift"]), tuple(cfg.w(c) for c in coeffs))
        known = d.get("known")
        return el if known is None else TowerElement(cfg, level, el.shift, el.coeffs, False, int(known))
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ParseError(f"bad element: {exc}") from None


def load_element(path: str) -> TowerElement:
    return element_from_json(load_json(path), precision_override())


def _elements(field: ResidueField, data, what: str) -> tuple:
    if not isinstance(data, list):
        raise ParseError(f"{what} must be a list of coordinate lists")
    try:
        return tuple(field(c) for c in data)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad {what}: {exc}") from None


def sequence_from_json(field: ResidueField, data) -> TwistSequence:
    return TwistSequence(field, _elements(field, data, "sequence"))


def relation_from_json(field: ResidueField, data) -> TwistRelation:
    coeffs = _elements(field, data, "relation")
    if not coeffs or all(c.is_zero() for c in coeffs):
        raise ParseError("a relation needs a nonzero coefficient")
    return TwistRelation(field, coeffs)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
