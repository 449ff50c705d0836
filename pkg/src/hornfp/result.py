from __future__ import annotations

from dataclasses import dataclass, field

METHODS = frozenset(
    {"series", "single-integral", "double-integral", "loop-integral", "closed-form"}
)


@dataclass(frozen=True)
class EvalResult:
    """A computed value with a nonnegative error estimate.

    ``terms_or_nodes`` counts series terms or quadrature nodes used.
    ``status`` is "ok" unless a side computation was skipped (see ``notes``).
    """

    value: complex
    err_estimate: float
    method: str
    terms_or_nodes: int = 0
    status: str = "ok"
    notes: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method tag {self.method!r}")
        if not self.err_estimate >= 0:
            raise ValueError("err_estimate must be nonnegative")
        object.__setattr__(self, "value", complex(self.value))
        object.__setattr__(self, "err_estimate", float(self.err_estimate))

    def __complex__(self):
        return self.value

    def scaled(self, factor, factor_err=0.0, method=None) -> "EvalResult":
        """Multiply by a (closed-form) prefactor, propagating the error."""
        factor = complex(factor)
        return EvalResult(
            self.value * factor,
            self.err_estimate * abs(factor) + abs(self.value) * factor_err,
            method or self.method,
            self.terms_or_nodes,
            self.status,
            self.notes,
        )
