"""Scenario files: a YAML tree describing a state, observables, and tasks.

Schema (see the shipped files under ``skewbounds/scenarios/`` for normative
instances):

    metric: "wy" | "wyd:<alpha>" | "sld"
    theta: <float>                  # optional default for the placeholder
    state:
      bloch: [rx, ry, rz]           # qubit only, |r| <= 1
      # or  pure: [[re, im], ...]   # normalized amplitude vector
      # or  density: [[[re, im], ...], ...]
    observables:
      <name>: [[[re, im], ...], ...]
    tasks:
      - product: {A: <name>, B: <name>}
      - chain:   {A: <name>, B: <name>}
      - sum:     {observables: [<name>, ...]}
      - sweep:   {param: theta, range: [lo, hi], steps: <int>}

Scalars inside ``state`` may be expression strings in the placeholder
``theta`` (e.g. "sqrt(3)/2*cos(theta)"); angles are radians.  Observable
entries are numeric [re, im] pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import yaml

from .errors import ParseError, ValidationError
from .linalg import DensityMatrix, as_observable
from .metrics import MetricSpec, parse_metric

_EXPR_NAMES = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "sqrt": math.sqrt,
    "exp": math.exp,
    "abs": abs,
    "pi": math.pi,
}


def eval_scalar(value, theta: float | None = None) -> float:
    """Evaluate a numeric literal or an expression string in theta."""
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        names = dict(_EXPR_NAMES)
        if theta is not None:
            names["theta"] = theta
        elif "theta" in value:
            raise ValidationError(
                f"expression {value!r} uses theta but no theta value is bound"
            )
        try:
            return float(eval(value, {"__builtins__": {}}, names))
        except ValidationError:
            raise
        except Exception as exc:
            raise ValidationError(f"bad expression {value!r}: {exc}") from exc
    raise ValidationError(f"expected number or expression, got {value!r}")


def _uses_theta(value) -> bool:
    if isinstance(value, str):
        return "theta" in value
    if isinstance(value, (list, tuple)):
        return any(_uses_theta(v) for v in value)
    return False


@dataclass(frozen=True)
class PairTask:
    kind: str  # "product" | "chain"
    a: str
    b: str


@dataclass(frozen=True)
class SumTask:
    names: tuple[str, ...]


@dataclass(frozen=True)
class SweepTask:
    param: str
    lo: float
    hi: float
    steps: int


Task = PairTask | SumTask | SweepTask


@dataclass(frozen=True)
class Scenario:
    state_kind: str  # "bloch" | "pure" | "density"
    state_spec: tuple  # raw entries: numbers / expression strings, nested
    observables: dict[str, np.ndarray] = field(repr=False)
    metric_label: str = "wy"
    metric: MetricSpec = None
    theta: float | None = None
    tasks: tuple[Task, ...] = ()

    def uses_theta(self) -> bool:
        return _uses_theta(self.state_spec)

    def build_state(self, theta: float | None = None) -> DensityMatrix:
        """Bind the placeholder and validate the state."""
        if theta is None:
            theta = self.theta
        if self.state_kind == "bloch":
            r = [eval_scalar(v, theta) for v in self.state_spec]
            return DensityMatrix.from_bloch(r)
        if self.state_kind == "pure":
            amps = [
                complex(eval_scalar(re, theta), eval_scalar(im, theta))
                for re, im in self.state_spec
            ]
            return DensityMatrix.from_pure(amps)
        rows = [
            [
                complex(eval_scalar(re, theta), eval_scalar(im, theta))
                for re, im in row
            ]
            for row in self.state_spec
        ]
        return DensityMatrix.from_matrix(rows)


def _complex_entry(entry, where: str):
    if isinstance(entry, (int, float)):
        return (float(entry), 0.0)
    if isinstance(entry, list) and len(entry) == 2:
        return entry
    raise ParseError(f"{where}: entry {entry!r} is not a number or [re, im] pair")


def _parse_observable(name: str, rows) -> np.ndarray:
    if not isinstance(rows, list) or not rows:
        raise ParseError(f"observable {name!r}: expected a list of rows")
    mat = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != len(rows):
            raise ParseError(f"observable {name!r}: row {i} is not length {len(rows)}")
        mat.append(
            [
                complex(*map(float, _complex_entry(e, f"observable {name!r} row {i}")))
                for e in row
            ]
        )
    try:
        return as_observable(mat)
    except Exception as exc:
        raise ValidationError(f"observable {name!r}: {exc}") from exc


def _parse_task(entry) -> Task:
    if not isinstance(entry, dict) or len(entry) != 1:
        raise ParseError(f"task entry {entry!r} must be a single-key mapping")
    (kind, body), = entry.items()
    if kind in ("product", "chain"):
        try:
            return PairTask(kind=kind, a=body["A"], b=body["B"])
        except (TypeError, KeyError) as exc:
            raise ParseError(f"{kind} task needs A and B: {entry!r}") from exc
    if kind == "sum":
        try:
            names = tuple(body["observables"])
        except (TypeError, KeyError) as exc:
            raise ParseError(f"sum task needs an observables list: {entry!r}") from exc
        if len(names) < 2:
            raise ParseError("sum task needs at least 2 observables")
        return SumTask(names=names)
    if kind == "sweep":
        try:
            lo, hi = body["range"]
            return SweepTask(
                param=body.get("param", "theta"),
                lo=float(lo),
                hi=float(hi),
                steps=int(body["steps"]),
            )
        except (TypeError, KeyError, ValueError) as exc:
            raise ParseError(f"sweep task needs param/range/steps: {entry!r}") from exc
    raise ParseError(f"unknown task kind {kind!r}")


def _freeze(value):
    if isinstance(value, list):
        return tuple(_freeze(v) for v in value)
    return value


def parse_scenario_text(text: str, source: str = "<string>") -> Scenario:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ParseError(f"{source}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{source}: top level must be a mapping")

    try:
        state = doc["state"]
        obs_raw = doc["observables"]
        tasks_raw = doc.get("tasks", [])
    except KeyError as exc:
        raise ParseError(f"{source}: missing section {exc}") from exc

    if not isinstance(state, dict) or len(state) != 1:
        raise ParseError(f"{source}: state must have exactly one of bloch/pure/density")
    (state_kind, state_spec), = state.items()
    if state_kind not in ("bloch", "pure", "density"):
        raise ParseError(f"{source}: unknown state kind {state_kind!r}")
    if state_kind == "pure":
        state_spec = [
            _complex_entry(e, f"{source}: pure amplitude {i}")
            for i, e in enumerate(state_spec)
        ]
    elif state_kind == "density":
        state_spec = [
            [_complex_entry(e, f"{source}: density row {i}") for e in row]
            for i, row in enumerate(state_spec)
        ]

    metric_label = str(doc.get("metric", "wy"))
    metric = parse_metric(metric_label)
    theta = doc.get("theta")
    if theta is not None:
        theta = float(theta)

    observables = {
        str(name): _parse_observable(str(name), rows)
        for name, rows in obs_raw.items()
    }
    tasks = tuple(_parse_task(t) for t in tasks_raw)
    for t in tasks:
        wanted = (t.a, t.b) if isinstance(t, PairTask) else (
            t.names if isinstance(t, SumTask) else ()
        )
        for name in wanted:
            if name not in observables:
                raise ParseError(f"{source}: task references unknown observable {name!r}")

    scenario = Scenario(
        state_kind=state_kind,
        state_spec=_freeze(state_spec),
        observables=observables,
        metric_label=metric_label,
        metric=metric,
        theta=theta,
        tasks=tasks,
    )
    # validate the state now, at the default placeholder binding
    scenario.build_state(theta if theta is not None else 0.0)
    return scenario


def parse_scenario(path) -> Scenario:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_scenario_text(text, source=str(path))


def _thaw(value):
    if isinstance(value, tuple):
        return [_thaw(v) for v in value]
    return value


def write_scenario(s: Scenario) -> str:
    """Serialize back to YAML; parse_scenario_text round-trips the result."""
    doc = {
        "metric": s.metric_label,
        "state": {s.state_kind: _thaw(s.state_spec)},
        "observables": {
            name: [[[float(e.real), float(e.imag)] for e in row] for row in mat]
            for name, mat in s.observables.items()
        },
        "tasks": [],
    }
    if s.theta is not None:
        doc["theta"] = s.theta
    for t in s.tasks:
        if isinstance(t, PairTask):
            doc["tasks"].append({t.kind: {"A": t.a, "B": t.b}})
        elif isinstance(t, SumTask):
            doc["tasks"].append({"sum": {"observables": list(t.names)}})
        else:
            doc["tasks"].append(
                {"sweep": {"param": t.param, "range": [t.lo, t.hi], "steps": t.steps}}
            )
    return yaml.safe_dump(doc, sort_keys=False)
