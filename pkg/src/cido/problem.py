"""Problem files: ``{"n": int, "polynomials": [...], "options": {...}}``."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .qpoly import RingSpec


class ProblemError(ValueError):
    pass


@dataclass(frozen=True)
class ProblemFile:
    n: int
    polynomials: tuple
    options: dict = field(default_factory=dict)
    source: str = ""

    @property
    def allow_unchecked_smoothness(self) -> bool:
        return bool(self.options.get("allow_unchecked_smoothness", False))

    def ring(self) -> RingSpec:
        try:
            return RingSpec.from_strings(self.n, list(self.polynomials))
        except ValueError as exc:
            raise ProblemError(f"{self.source or 'problem'}: {exc}") from exc

    def to_json(self) -> dict:
        return {"n": self.n, "polynomials": list(self.polynomials), "options": dict(self.options)}


def problem_from_dict(data: dict, source: str = "") -> ProblemFile:
    if not isinstance(data, dict):
        raise ProblemError("problem file must be a JSON object")
    n = data.get("n")
    polys = data.get("polynomials")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ProblemError("'n' must be a nonnegative integer")
    if not isinstance(polys, list) or not polys or not all(isinstance(p, str) for p in polys):
        raise ProblemError("'polynomials' must be a nonempty list of strings")
    options = data.get("options", {}) or {}
    if not isinstance(options, dict):
        raise ProblemError("'options' must be an object")
    return ProblemFile(n, tuple(polys), options, source)


def load_problem(path: str | Path) -> ProblemFile:
    """Load a problem file; a bare name such as ``fermat-cubic`` resolves to the bundled examples."""
    p = Path(path)
    if not p.exists():
        name = p.name if p.suffix == ".json" else p.name + ".json"
        bundled = resources.files("cido") / "problems" / name
        if bundled.is_file():
            return problem_from_dict(json.loads(bundled.read_text()), name)
        raise ProblemError(f"no such problem file: {path}")
    try:
        data = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ProblemError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    return problem_from_dict(data, str(path))


def bundled_problem(name: str) -> ProblemFile:
    bundled = resources.files("cido") / "problems" / f"{name}.json"
    return problem_from_dict(json.loads(bundled.read_text()), name)
