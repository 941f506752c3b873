"""Parameter files and certificates (JSON)."""
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
import json
import math

from jsonschema import Draft7Validator

from .exact import ExactAngle, parse_rational
from .immersions import Family, Mode, make_params, specialize_isotropy2
from .torus import isotropy2_exact_angles

CHECK_NAMES = ("horizontal", "totally_real", "flat_isometric", "harmonic", "isotropy", "det", "torus")


class SchemaError(ValueError):
    """Parameter file failed validation; ``errors`` lists 'path: message' strings."""

    def __init__(self, errors):
        super().__init__("; ".join(errors))
        self.errors = list(errors)


def load_schema():
    text = resources.files("hp3flat").joinpath("params.schema.json").read_text()
    return json.loads(text)


def _path(err):
    return "/" + "/".join(str(p) for p in err.absolute_path)


def validate_document(doc):
    v = Draft7Validator(load_schema())
    errors = sorted(v.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        raise SchemaError([f"{_path(e)}: {e.message}" for e in errors])


def _angle(spec):
    if "cos" in spec:
        c = parse_rational(spec["cos"])
        return math.acos(float(c)), c
    return float(spec["radians"]), None


def _weight(x):
    if isinstance(x, str):
        q = parse_rational(x)
        return float(q), q
    return float(x), None


@dataclass
class ParamsFile:
    family: Family
    mode: Mode
    w: complex
    theta: float = None
    r: float = None
    theta1: float = None
    theta2: float = None
    free_weights: tuple = None
    cos_theta: Fraction = None
    cos_theta1: Fraction = None
    cos_theta2: Fraction = None
    r_exact: Fraction = None
    z: complex = 0j
    checks: list = field(default_factory=lambda: list(CHECK_NAMES[:-1]))
    output: str = None
    source: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, doc):
        validate_document(doc)
        out = cls(Family(doc["family"]), Mode(doc["mode"]), complex(*doc["w"]), source=doc)
        if out.mode is Mode.ISOTROPY2:
            out.theta, out.cos_theta = _angle(doc["theta"])
            out.r, out.r_exact = _weight(doc["r"])
        else:
            out.theta1, out.cos_theta1 = _angle(doc["theta1"])
            out.theta2, out.cos_theta2 = _angle(doc["theta2"])
            out.free_weights = tuple(_weight(x)[0] for x in doc["free_weights"])
        if "z" in doc:
            out.z = complex(*doc["z"])
        if "checks" in doc:
            out.checks = list(doc["checks"])
        out.output = doc.get("output")
        return out

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise SchemaError([f"/: invalid JSON ({exc})"]) from exc
        return cls.from_dict(doc)

    def to_params(self):
        if self.mode is Mode.ISOTROPY2:
            return specialize_isotropy2(self.family, self.theta, self.r, self.w)
        return make_params(self.family, self.theta1, self.theta2, self.free_weights, self.w)

    def exact_angles(self):
        """(theta1, theta2) as ExactAngle, or None if any angle was given in radians."""
        if self.mode is Mode.ISOTROPY2:
            if self.cos_theta is None:
                return None
            return isotropy2_exact_angles(self.family, self.cos_theta)
        if self.cos_theta1 is None or self.cos_theta2 is None:
            return None
        return ExactAngle(self.cos_theta1), ExactAngle(self.cos_theta2)

    def float_angles(self):
        if self.mode is Mode.ISOTROPY2:
            from .immersions import isotropy2_angles
            return isotropy2_angles(self.family, self.theta)
        return self.theta1, self.theta2


@dataclass
class Certificate:
    tool: str
    version: str
    seed: int
    input: dict
    report: dict = None
    torus: dict = None

    def to_json(self):
        return json.dumps(
            {"tool": self.tool, "version": self.version, "seed": self.seed, "input": self.input,
             "report": self.report, "torus": self.torus},
            indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        return cls(d["tool"], d["version"], d["seed"], d["input"], d.get("report"), d.get("torus"))
