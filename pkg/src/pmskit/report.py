"""Validation outcome shared by every axiom checker."""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Optional, Tuple


@dataclass(frozen=True)
class Violation:
    """One failed check.

    ``lhs``/``rhs`` hold the two sides that were compared, when the check
    is a comparison of distribution functions.
    """
    axiom: str
    witness: Tuple[Any, ...]
    lhs: Any = None
    rhs: Any = None

    def to_dict(self) -> Dict[str, Any]:
        from .codec import encode_distfn
        return {
            'axiom': self.axiom,
            'witness': [str(w) for w in self.witness],
            'lhs': None if self.lhs is None else encode_distfn(self.lhs),
            'rhs': None if self.rhs is None else encode_distfn(self.rhs),
        }


@dataclass(frozen=True)
class Report:
    """Result of a validation run.

    Provides the list of checks that were run and every violation found,
    with enough witness data to reproduce each one.
    """
    violations: Tuple[Violation, ...] = ()
    checked: Tuple[str, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return not self.violations

    def merge(self, other: 'Report') -> 'Report':
        """Combine two reports, keeping check order and dropping duplicate check names."""
        checked = self.checked + tuple(c for c in other.checked if c not in self.checked)
        return Report(self.violations + other.violations, checked)

    def first(self, axiom: Optional[str] = None) -> Optional[Violation]:
        """Return the first violation, optionally of one axiom only."""
        for v in self.violations:
            if axiom is None or v.axiom == axiom:
                return v
        return None

    def axioms_violated(self) -> Tuple[str, ...]:
        seen = []
        for v in self.violations:
            if v.axiom not in seen:
                seen.append(v.axiom)
        return tuple(seen)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'passed': self.passed,
            'checked': list(self.checked),
            'violations': [v.to_dict() for v in self.violations],
        }

    def __repr__(self) -> str:
        return f"Report(passed={self.passed}, violations={len(self.violations)})"


class ReportBuilder:
    """Accumulates violations while a checker enumerates its tuples."""

    def __init__(self, *checked: str) -> None:
        self._checked = list(checked)
        self._violations = []

    def check(self, name: str) -> None:
        if name not in self._checked:
            self._checked.append(name)

    def fail(self, axiom: str, witness: Iterable[Any], lhs: Any = None, rhs: Any = None) -> None:
        self.check(axiom)
        self._violations.append(Violation(axiom, tuple(witness), lhs, rhs))

    def build(self) -> Report:
        return Report(tuple(self._violations), tuple(self._checked))
