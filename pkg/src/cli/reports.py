"""
Run configuration and report emission for the command line.

A report is a list of check results under the configuration that produced
them. JSON output uses sorted keys and no timestamps, so a fixed
configuration gives byte-identical reports unless timings are requested.
"""

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import structlog

from src.config.settings import Settings
from src.linalg import Ring

logger = structlog.get_logger(__name__)

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"

EXIT_OK = 0
EXIT_CONTRADICTION = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3

COMMANDS = ("coformality", "char2", "dioperad")


@dataclass
class RunConfig:
    """
    Everything a command reads.

    Attributes:
        command: One of COMMANDS
        n: Calabi-Yau dimension of the sphere
        field: Coefficient field tag (q, f2 or fp:<p>)
        t_max: Truncation bound D of the loop algebra
        weight_max: Largest weight of the window
        outputs_max: Largest level (outputs - 1) of the window
        input_bound: Largest total input exponent of the window
        input_margin: Extra exponent budget for alpha
        persistence: Look-ahead used to drop top-window cocycles
        max_legs: Largest l + N of the dimension table
        genus_bound: Vertex bound of the genus sweep (0 skips it)
        seed: Seed for sampled deformations
        samples: Sampled deformations per weight
        report_format: "json" or "text"
        timings: Record wall-clock time per check
    """

    command: str
    n: int = 2
    field: str = "q"
    t_max: int = 10
    weight_max: int = 6
    outputs_max: int = 4
    input_bound: int = 4
    input_margin: int = 2
    persistence: int = 1
    max_legs: int = 6
    genus_bound: int = 5
    seed: int = 0
    samples: int = 1
    report_format: str = "json"
    timings: bool = False

    @classmethod
    def from_settings(cls, command: str, settings: Settings, **overrides: Any) -> "RunConfig":
        """Defaults from the settings sections; None overrides are ignored."""
        values: Dict[str, Any] = {
            "n": settings.algebra.sphere_dimension,
            "field": settings.algebra.field,
            "t_max": settings.algebra.truncation,
            "weight_max": settings.window.weight_max,
            "outputs_max": settings.window.outputs_max,
            "input_bound": settings.window.input_bound,
            "input_margin": settings.window.input_margin,
            "persistence": settings.window.persistence_delta,
            "max_legs": settings.diagrams.max_legs,
            "genus_bound": settings.diagrams.genus_vertex_bound,
            "report_format": settings.report.report_format,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(command=command, **values)

    @property
    def ring(self) -> Ring:
        return Ring.from_tag(self.field)

    def validate(self) -> None:
        """
        Check the per-command constraints.

        Raises:
            ValueError: If the configuration cannot run the command
        """
        if self.command not in COMMANDS:
            raise ValueError(f"Command must be one of {list(COMMANDS)}, got {self.command!r}")
        ring = self.ring
        if self.report_format not in ("json", "text"):
            raise ValueError(f"Report format must be one of ['json', 'text'], got {self.report_format!r}")
        if self.samples < 0:
            raise ValueError(f"samples must be >= 0, got {self.samples}")

        if self.command == "coformality" and not ring.is_rational:
            raise ValueError(f"coformality runs over Q, got {ring.tag}")
        if self.command == "char2":
            if ring.characteristic != 2:
                raise ValueError(f"char2 runs over F2, got {ring.tag}")
            if self.n % 2:
                raise ValueError(f"char2 needs even n, got n={self.n}")
        if self.command == "dioperad":
            if not 0 <= self.max_legs <= 7:
                raise ValueError(f"max_legs must be in [0, 7], got {self.max_legs}")
            if not 0 <= self.genus_bound <= 6:
                raise ValueError(f"genus_bound must be in [0, 6], got {self.genus_bound}")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class CheckResult:
    """One named check with the evidence behind its status."""

    check: str
    status: str
    witness: Optional[Dict[str, Any]] = None
    certificate: Optional[Dict[str, Any]] = None
    detail: Optional[Dict[str, Any]] = None
    timing_ms: int = 0

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "check": self.check,
            "status": self.status,
            "timing_ms": self.timing_ms,
        }
        for key in ("witness", "certificate", "detail"):
            value = getattr(self, key)
            if value is not None:
                payload[key] = value
        return payload


@dataclass
class Report:
    """All results of one command run."""

    config: RunConfig
    results: List[CheckResult] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        statuses = {r.status for r in self.results}
        if FAIL in statuses:
            return EXIT_CONTRADICTION
        if INCONCLUSIVE in statuses:
            return EXIT_INCONCLUSIVE
        return EXIT_OK

    def to_dict(self) -> Dict[str, Any]:
        return {
            "config": self.config.to_dict(),
            "results": [r.to_dict() for r in self.results],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, default=str) + "\n"

    def to_text(self) -> str:
        lines = [f"precy {self.config.command}  n={self.config.n}  field={self.config.ring.tag}"]
        width = max((len(r.check) for r in self.results), default=0)
        for r in self.results:
            line = f"  {r.check.ljust(width)}  {r.status.upper()}"
            if self.config.timings:
                line += f"  ({r.timing_ms} ms)"
            lines.append(line)
        if not self.results:
            lines.append("  (no checks in this bound)")
        lines.append(f"exit code {self.exit_code}")
        return "\n".join(lines) + "\n"

    def render(self) -> str:
        return self.to_json() if self.config.report_format == "json" else self.to_text()


def write_report(report: Report, out: Optional[str]) -> str:
    """
    Render the report and write it to ``out`` (stdout when None).

    Returns:
        The rendered text
    """
    text = report.render()
    if out is None:
        print(text, end="")
        return text
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info("report_written", path=str(path), results=len(report.results))
    return text
