"""
Job Payload Forms for Toral Mix

This module turns the JSON document a command receives into a validated
``JobDescription``. The document has the shape

    {"dim": 2,
     "matrices": [[["0", "-1"], ["1", "0"]], ...],
     "options": {"max_exponent": 12, "seed": 0, ...},
     ...command-specific fields...}

Matrix entries are decimal strings (or plain JSON integers), so big integers
survive the trip without loss. The ``options`` object is validated with a
WTForms form, which gives the same declarative validators and error
messages a web form would get:

- NumberRange: keeps every integer knob inside the range the engine accepts
- Optional: lets any knob be omitted so configuration defaults apply
- AnyOf: restricts the family kind for ``gen-example``

Malformed input raises ``PayloadError`` (exit status 2). Well-formed input
that describes an invalid family (a singular matrix, mismatched dimensions)
raises ``ContractViolation`` from the model layer instead.
"""
import json
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import click
from werkzeug.datastructures import MultiDict
from wtforms import BooleanField, Form, IntegerField, StringField
from wtforms.validators import AnyOf, NumberRange, Optional as Omittable, ValidationError

from toralmix.engine.cyclo import is_prime
from toralmix.errors import ContractViolation
from toralmix.models.boxes import BoxSet
from toralmix.models.episet import EpiSet
from toralmix.models.families import FamilyKind
from toralmix.models.trigpoly import ComplexRational, TrigPoly


class PayloadError(click.ClickException):
    """The job payload could not be parsed or failed option validation."""
    exit_code = 2


class JobOptionsForm(Form):
    """
    Options accepted in the ``options`` object of a payload.

    Every field may be omitted. Integer fields carry the range the engine
    accepts; booleans follow the HTML convention of being present ('y') or
    absent.
    """
    max_exponent = IntegerField('max_exponent', validators=[
        Omittable(), NumberRange(min=1, max=10000, message="max_exponent must be between 1 and 10000")
    ])
    seed = IntegerField('seed', validators=[
        Omittable(), NumberRange(min=0, max=2 ** 63 - 1, message="seed must be a non-negative 64-bit integer")
    ])
    height = IntegerField('height', validators=[
        Omittable(), NumberRange(min=1, max=64, message="height must be between 1 and 64")
    ])
    horizon = IntegerField('horizon', validators=[
        Omittable(), NumberRange(min=1, max=100000, message="horizon must be between 1 and 100000")
    ])
    word_len = IntegerField('word_len', validators=[
        Omittable(), NumberRange(min=0, max=64, message="word_len must be between 0 and 64")
    ])
    min_hits = IntegerField('min_hits', validators=[
        Omittable(), NumberRange(min=1, max=100000, message="min_hits must be positive")
    ])
    residue = IntegerField('residue', validators=[
        Omittable(), NumberRange(min=0, message="residue must be non-negative")
    ])
    samples = IntegerField('samples', validators=[
        Omittable(), NumberRange(min=1, max=10 ** 9, message="samples must be between 1 and 10^9")
    ])
    workers = IntegerField('workers', validators=[
        Omittable(), NumberRange(min=1, max=512, message="workers must be between 1 and 512")
    ])
    order = IntegerField('order', validators=[
        Omittable(), NumberRange(min=2, max=8, message="order must be between 2 and 8")
    ])
    count = IntegerField('count', validators=[
        Omittable(), NumberRange(min=1, max=1000, message="count must be between 1 and 1000")
    ])
    cap = IntegerField('cap', validators=[
        Omittable(), NumberRange(min=1, max=10 ** 7, message="cap must be between 1 and 10^7")
    ])
    n = IntegerField('n', validators=[
        Omittable(), NumberRange(min=0, max=10 ** 6, message="n must be between 0 and 10^6")
    ])
    depth = IntegerField('depth', validators=[
        Omittable(), NumberRange(min=1, max=10000, message="depth must be between 1 and 10000")
    ])
    grid = IntegerField('grid', validators=[
        Omittable(), NumberRange(min=1, max=4096, message="grid must be between 1 and 4096")
    ])
    kind = StringField('kind', validators=[
        Omittable(), AnyOf([k.value for k in FamilyKind], message="unknown family kind")
    ])
    d = IntegerField('d', validators=[Omittable(), NumberRange(min=1, max=32, message="d must be between 1 and 32")])
    s = IntegerField('s', validators=[Omittable(), NumberRange(min=2, max=33, message="s must be between 2 and 33")])
    q = IntegerField('q', validators=[Omittable(), NumberRange(min=2, message="q must be at least 2")])
    d2 = IntegerField('d2', validators=[Omittable(), NumberRange(min=2, max=32, message="d2 must be between 2 and 32")])
    use_inverses = BooleanField('use_inverses')

    def validate_q(self, q):
        """
        A given Eisenstein prime must be prime; the generator searches upward
        from it only when the sign conditions fail.
        """
        if q.data is not None and not is_prime(q.data):
            raise ValidationError(f"q must be prime, got {q.data}")


@dataclass(frozen=True)
class JobDescription:
    """
    A parsed job.

    Attributes:
        command (str): The subcommand the payload was read for
        family (EpiSet or None): The maps, absent for ``gen-example``
        options (dict): Validated options that were present in the payload
        functions (tuple): Trigonometric polynomials, one per map, for ``limit``
        boxes (tuple): Boxes, one per map, for ``oracle-mc``
        chi (tuple or None): The character for ``orbit-scan``
        certificate (dict or None): The certificate for ``verify-cert``
        extra (dict): Remaining top-level fields (``gamma``, ``delta`` ...)
    """
    command: str
    family: Optional[EpiSet]
    options: Dict[str, Any] = field(default_factory=dict)
    functions: Tuple[TrigPoly, ...] = ()
    boxes: Tuple[BoxSet, ...] = ()
    chi: Optional[Tuple[int, ...]] = None
    certificate: Optional[Dict[str, Any]] = None
    extra: Dict[str, Any] = field(default_factory=dict)


def _parse_int(value: Any, where: str) -> int:
    if isinstance(value, bool):
        raise PayloadError(f"{where}: expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip(), 10)
        except ValueError:
            pass
    raise PayloadError(f"{where}: expected an integer or decimal string, got {value!r}")


def _parse_vector(value: Any, where: str) -> Tuple[int, ...]:
    if not isinstance(value, list):
        raise PayloadError(f"{where}: expected a list")
    return tuple(_parse_int(x, f"{where}[{i}]") for i, x in enumerate(value))


def parse_matrix(value: Any, where: str) -> Tuple[Tuple[int, ...], ...]:
    if not isinstance(value, list) or not all(isinstance(row, list) for row in value):
        raise PayloadError(f"{where}: expected a list of rows")
    if not value or any(len(row) != len(value) for row in value):
        raise PayloadError(f"{where}: expected a square matrix, got row lengths {[len(row) for row in value]}")
    return tuple(_parse_vector(row, f"{where}[{i}]") for i, row in enumerate(value))


def _options_formdata(options: Dict[str, Any]) -> MultiDict:
    data = MultiDict()
    for key, value in options.items():
        if isinstance(value, bool):
            if value:
                data[key] = 'y'
        elif isinstance(value, (int, str)):
            data[key] = str(value)
        elif value is not None:
            raise PayloadError(f"options.{key}: expected a scalar, got {value!r}")
    return data


def validate_options(options: Dict[str, Any]) -> Dict[str, Any]:
    """
    Run ``options`` through ``JobOptionsForm``.

    Returns:
        dict: The options that were present, converted to their field types

    Raises:
        PayloadError: On an unknown key or a failed validator
    """
    if not isinstance(options, dict):
        raise PayloadError("options must be an object")
    form = JobOptionsForm(_options_formdata(options))
    unknown = sorted(set(options) - {f.name for f in form})
    if unknown:
        raise PayloadError(f"Unknown options: {', '.join(unknown)}")
    if not form.validate():
        messages = [f"{name}: {'; '.join(errors)}" for name, errors in sorted(form.errors.items())]
        raise PayloadError("Invalid options: " + ', '.join(messages))
    return {name: form[name].data for name in options}


def _parse_functions(raw: Any, dim: int) -> Tuple[TrigPoly, ...]:
    if not isinstance(raw, list):
        raise PayloadError("functions must be a list")
    functions = []
    for index, f in enumerate(raw):
        terms = f.get('terms') if isinstance(f, dict) else None
        if not isinstance(terms, list):
            raise PayloadError(f"functions[{index}]: expected an object with a terms list")
        parsed = {}
        for t, term in enumerate(terms):
            if not isinstance(term, dict) or 'char' not in term:
                raise PayloadError(f"functions[{index}].terms[{t}]: expected {{char, re, im}}")
            chi = _parse_vector(term['char'], f"functions[{index}].terms[{t}].char")
            try:
                coeff = ComplexRational.of({'re': str(term.get('re', 0)), 'im': str(term.get('im', 0))})
                parsed[chi] = parsed.get(chi, 0) + coeff
            except (ValueError, ZeroDivisionError):
                raise PayloadError(f"functions[{index}].terms[{t}]: coefficients must be rationals")
        functions.append(TrigPoly(dim, parsed))
    return tuple(functions)


def _parse_boxes(raw: Any) -> Tuple[BoxSet, ...]:
    if not isinstance(raw, list):
        raise PayloadError("boxes must be a list")
    boxes = []
    for index, box in enumerate(raw):
        if not isinstance(box, list) or not all(isinstance(p, list) and len(p) == 2 for p in box):
            raise PayloadError(f"boxes[{index}]: expected a list of [a, b] pairs")
        try:
            boxes.append(BoxSet.of(box))
        except (ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, ContractViolation):
                raise
            raise PayloadError(f"boxes[{index}]: endpoints must be rationals")
    return tuple(boxes)


def parse_payload(text: str, command: str = '', require_matrices: bool = True) -> JobDescription:
    """
    Parse and validate a job payload.

    Args:
        text: The JSON document; empty input is an empty object
        command: The subcommand, recorded on the job
        require_matrices: Whether ``dim`` and ``matrices`` must be present

    Returns:
        JobDescription: The validated job

    Raises:
        PayloadError: If the document is not valid JSON or a field is malformed
        ContractViolation: If the matrices do not form a valid epimorphism set
    """
    try:
        document = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as exc:
        raise PayloadError(f"Payload is not valid JSON: {exc.msg} at line {exc.lineno}")
    if not isinstance(document, dict):
        raise PayloadError("Payload must be a JSON object")

    family = None
    if require_matrices or 'matrices' in document:
        if 'dim' not in document or 'matrices' not in document:
            raise PayloadError("Payload needs both 'dim' and 'matrices'")
        dim = _parse_int(document['dim'], 'dim')
        raw = document['matrices']
        if not isinstance(raw, list) or not raw:
            raise PayloadError("matrices must be a non-empty list")
        matrices = [parse_matrix(m, f"matrices[{i}]") for i, m in enumerate(raw)]
        family = EpiSet.of(matrices, dim)

    options = validate_options(document.get('options', {}))
    dim = family.dim if family is not None else None

    functions: Tuple[TrigPoly, ...] = ()
    if 'functions' in document:
        if dim is None:
            raise PayloadError("functions need matrices")
        functions = _parse_functions(document['functions'], dim)
    elif 'characters' in document:
        if dim is None:
            raise PayloadError("characters need matrices")
        raw = document['characters']
        if not isinstance(raw, list):
            raise PayloadError("characters must be a list")
        functions = tuple(TrigPoly.character(_parse_vector(c, f"characters[{i}]")) for i, c in enumerate(raw))
        if any(f.dim != dim for f in functions):
            raise ContractViolation(f"Characters must have dimension {dim}")

    boxes = _parse_boxes(document['boxes']) if 'boxes' in document else ()
    chi = _parse_vector(document['chi'], 'chi') if 'chi' in document else None

    certificate = None
    if 'certificate' in document:
        raw = document['certificate']
        if not isinstance(raw, dict) or 'witness' not in raw or 'exponent' not in raw:
            raise PayloadError("certificate needs 'exponent' and 'witness'")
        witness = raw['witness']
        if not isinstance(witness, list):
            raise PayloadError("certificate.witness must be a list")
        certificate = {
            'exponent': _parse_int(raw['exponent'], 'certificate.exponent'),
            'witness': [_parse_vector(x, f"certificate.witness[{i}]") for i, x in enumerate(witness)],
        }

    known = {'dim', 'matrices', 'options', 'functions', 'characters', 'boxes', 'chi', 'certificate'}
    extra = {k: v for k, v in document.items() if k not in known}
    return JobDescription(command, family, options, functions, boxes, chi, certificate, extra)

