"""Base classes for report emitters."""

from abc import ABC, abstractmethod
from pathlib import Path

from tgbi.metrics import EvaluationReport


class BaseReporter(ABC):
    """Abstract base class for comparison report emitters."""

    filename: str = "comparison"

    @abstractmethod
    def render(self, reports: list[EvaluationReport]) -> str:
        """
        Render the reports as text.

        Args:
            reports: One EvaluationReport per backend, in column order
        """
        pass

    def emit(self, reports: list[EvaluationReport], output_dir: Path) -> Path:
        """Render and write the report into output_dir."""
        output_dir.mkdir(parents=True, exist_ok=True)
        path = output_dir / self.filename
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(self.render(reports))
        return path
