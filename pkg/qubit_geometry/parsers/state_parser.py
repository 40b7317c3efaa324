"""
Parser for state specification documents (JSON, UTF-8).

Three kinds are accepted:
- pure:     {"kind": "pure", "sector": "s0", "theta": 1.0, "phi": 0.5}
- ensemble: {"kind": "ensemble", "terms": [{"weight": 0.5, "sector": "s0", "theta": ..., "phi": ...}, ...]}
- matrix:   {"kind": "matrix", "entries": [32 reals, row-major, re/im interleaved]}

Angles are radians unless degrees=True. Parsing never raises on malformed
input; problems come back in the error list.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Any, List, Optional, Tuple
import json
import math

from qubit_geometry.models.errors import QubitGeometryError
from qubit_geometry.models.spinops import Sector
from qubit_geometry.models.states import (
    DensityMatrix,
    Ensemble,
    EnsembleTerm,
    PureStateParams,
    density_from_pure,
    ensemble_density,
    pure_state,
)

KINDS = ('pure', 'ensemble', 'matrix')
PURE_KEYS = {'kind', 'sector', 'theta', 'phi'}
TERM_KEYS = {'weight', 'sector', 'theta', 'phi'}
ENSEMBLE_KEYS = {'kind', 'terms'}
MATRIX_KEYS = {'kind', 'entries'}
MATRIX_ENTRIES = 32


@dataclass(frozen=True)
class StateSpec:
    """A parsed state: exactly one of params / ensemble / matrix is set"""
    kind: str
    params: Optional[PureStateParams] = None
    ensemble: Optional[Ensemble] = None
    matrix: Optional[DensityMatrix] = None

    def __str__(self):
        if self.kind == 'pure':
            return f"pure {self.params}"
        if self.kind == 'ensemble':
            return str(self.ensemble)
        return "density matrix"

    def density(self) -> DensityMatrix:
        if self.kind == 'pure':
            return density_from_pure(pure_state(self.params))
        if self.kind == 'ensemble':
            return ensemble_density(self.ensemble)
        return self.matrix


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _number(data: dict, key: str, where: str, errors: List[str]) -> Optional[float]:
    if key not in data:
        errors.append(f"{where}: missing '{key}'")
        return None
    value = data[key]
    if not _is_number(value) or not math.isfinite(value):
        errors.append(f"{where}: '{key}' must be a finite number, got {value!r}")
        return None
    return float(value)


def _sector(data: dict, where: str, errors: List[str]) -> Optional[Sector]:
    value = data.get('sector')
    if not isinstance(value, str):
        errors.append(f"{where}: 'sector' must be \"s0\" or \"s1\"")
        return None
    try:
        return Sector(value.strip().lower())
    except ValueError:
        errors.append(f"{where}: unknown sector {value!r}")
        return None


def _unknown_keys(data: dict, allowed: set, where: str, errors: List[str]):
    extra = sorted(set(data) - allowed)
    if extra:
        errors.append(f"{where}: unknown key(s) {', '.join(extra)}")


def _parse_params(data: dict, where: str, degrees: bool, errors: List[str]) -> Optional[PureStateParams]:
    before = len(errors)
    sector = _sector(data, where, errors)
    theta = _number(data, 'theta', where, errors)
    phi = _number(data, 'phi', where, errors)
    if len(errors) > before:
        return None

    if degrees:
        theta = math.radians(theta)
        phi = math.radians(phi)
    try:
        return PureStateParams(sector, theta, phi)
    except QubitGeometryError as e:
        errors.append(f"{where}: {e}")
        return None


def _parse_pure(data: dict, degrees: bool, errors: List[str]) -> Optional[StateSpec]:
    _unknown_keys(data, PURE_KEYS, "pure", errors)
    params = _parse_params(data, "pure", degrees, errors)
    if params is None or errors:
        return None
    return StateSpec(kind='pure', params=params)


def _parse_ensemble(data: dict, degrees: bool, errors: List[str]) -> Optional[StateSpec]:
    _unknown_keys(data, ENSEMBLE_KEYS, "ensemble", errors)
    raw_terms = data.get('terms')
    if not isinstance(raw_terms, list) or not raw_terms:
        errors.append("ensemble: 'terms' must be a non-empty list")
        return None

    terms: List[EnsembleTerm] = []
    for i, raw in enumerate(raw_terms):
        where = f"terms[{i}]"
        if not isinstance(raw, dict):
            errors.append(f"{where}: expected an object")
            continue
        _unknown_keys(raw, TERM_KEYS, where, errors)
        weight = _number(raw, 'weight', where, errors)
        params = _parse_params(raw, where, degrees, errors)
        if weight is None or params is None:
            continue
        try:
            terms.append(EnsembleTerm(weight, params))
        except QubitGeometryError as e:
            errors.append(f"{where}: {e}")

    if errors:
        return None
    try:
        return StateSpec(kind='ensemble', ensemble=Ensemble(tuple(terms)))
    except QubitGeometryError as e:
        errors.append(f"ensemble: {e}")
        return None


def _parse_matrix(data: dict, errors: List[str]) -> Optional[StateSpec]:
    _unknown_keys(data, MATRIX_KEYS, "matrix", errors)
    entries = data.get('entries')
    if not isinstance(entries, list) or len(entries) != MATRIX_ENTRIES:
        errors.append(f"matrix: 'entries' must be a list of {MATRIX_ENTRIES} numbers")
        return None
    bad = [i for i, value in enumerate(entries) if not _is_number(value) or not math.isfinite(value)]
    if bad:
        errors.append(f"matrix: entries {bad[:5]} are not finite numbers")
        return None
    if errors:
        return None
    try:
        return StateSpec(kind='matrix', matrix=DensityMatrix.from_entries(entries))
    except QubitGeometryError as e:
        errors.append(f"matrix: {e}")
        return None


def parse_state_spec(data: Any, degrees: bool = False) -> Tuple[Optional[StateSpec], List[str]]:
    """
    Build a StateSpec from decoded JSON.

    Returns:
        Tuple of (StateSpec or None, list of error messages)
    """
    errors: List[str] = []
    if not isinstance(data, dict):
        return None, ["State specification must be a JSON object"]

    kind = data.get('kind')
    if kind not in KINDS:
        return None, [f"'kind' must be one of {', '.join(KINDS)}, got {kind!r}"]

    if kind == 'pure':
        spec = _parse_pure(data, degrees, errors)
    elif kind == 'ensemble':
        spec = _parse_ensemble(data, degrees, errors)
    else:
        spec = _parse_matrix(data, errors)
    return spec, errors


def parse_state_text(text: str, degrees: bool = False) -> Tuple[Optional[StateSpec], List[str]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        return None, [f"Invalid JSON: {e.msg} (line {e.lineno}, column {e.colno})"]
    return parse_state_spec(data, degrees)


def parse_state_file(file_path: str, degrees: bool = False) -> Tuple[Optional[StateSpec], List[str]]:
    """Read and parse a UTF-8 state specification file"""
    path = Path(file_path)
    if not path.exists():
        return None, [f"File not found: {file_path}"]
    try:
        text = path.read_text(encoding='utf-8')
    except (OSError, UnicodeDecodeError) as e:
        return None, [f"Could not read {file_path}: {e}"]
    return parse_state_text(text, degrees)
