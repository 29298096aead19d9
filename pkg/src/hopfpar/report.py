"""Verification reports: per-axiom pass/fail records with exact witnesses.

A failing check carries the first basis multi-index where the identity breaks
and the residual (lhs - rhs) tensor; passing checks carry neither.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import LinearMap, Tensor


@dataclass
class Check:
    axiom_id: str
    passed: bool
    witness: tuple | None = None
    residual: Tensor | None = None
    detail: str = ""

    def to_dict(self):
        d = {"axiom": self.axiom_id, "passed": self.passed}
        if self.witness is not None:
            d["witness"] = list(self.witness)
        if self.residual is not None:
            d["residual"] = {
                "shape": list(self.residual.shape),
                "entries": [str(a) for a in self.residual.data],
            }
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class VerificationReport:
    subject: str
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, check: Check):
        self.checks.append(check)
        return check

    def note(self, text: str):
        self.notes.append(text)

    def extend(self, other: "VerificationReport", prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.axiom_id, c.passed,
                                     c.witness, c.residual, c.detail))
        self.notes.extend(other.notes)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def n_passed(self) -> int:
        return sum(1 for c in self.checks if c.passed)

    @property
    def n_failed(self) -> int:
        return sum(1 for c in self.checks if not c.passed)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def __bool__(self):
        return self.passed

    def to_dict(self):
        return {
            "subject": self.subject,
            "passed": self.passed,
            "summary": {"passed": self.n_passed, "failed": self.n_failed},
            "notes": list(self.notes),
            "checks": [c.to_dict() for c in self.checks],
        }

    def render_text(self) -> str:
        lines = ["== %s ==" % self.subject]
        for note in self.notes:
            lines.append("# " + note)
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            line = "%s  %s" % (status, c.axiom_id)
            if not c.passed and c.witness is not None:
                line += "  witness=%s" % (c.witness,)
            if c.detail:
                line += "  [%s]" % c.detail
            lines.append(line)
        lines.append("summary: %d passed, %d failed" % (self.n_passed,
                                                        self.n_failed))
        return "\n".join(lines)


def _first_difference(lhs: LinearMap, rhs: LinearMap):
    for i in range(lhs.codomain_dim):
        for j in range(lhs.domain_dim):
            if lhs.rows[i][j] != rhs.rows[i][j]:
                return (i, j)
    return None


def check_map_equal(axiom_id: str, lhs: LinearMap, rhs: LinearMap,
                    in_shape=None, out_shape=None, detail: str = "") -> Check:
    """Compare two linear maps; on failure report a basis multi-index witness.

    in_shape/out_shape optionally factor the domain/codomain as tensor
    products so the witness is reported as a multi-index.
    """
    assert lhs.codomain_dim == rhs.codomain_dim, axiom_id
    assert lhs.domain_dim == rhs.domain_dim, axiom_id
    pos = _first_difference(lhs, rhs)
    if pos is None:
        return Check(axiom_id, True, detail=detail)
    i, j = pos
    witness = _unflatten(j, in_shape) if in_shape else (j,)
    witness += _unflatten(i, out_shape) if out_shape else (i,)
    residual = (lhs - rhs).matrix
    return Check(axiom_id, False, witness=witness, residual=residual,
                 detail=detail)


def check_vector_equal(axiom_id: str, lhs, rhs, detail: str = "") -> Check:
    lhs, rhs = list(lhs), list(rhs)
    assert len(lhs) == len(rhs)
    for i, (a, b) in enumerate(zip(lhs, rhs)):
        if a != b:
            residual = Tensor((len(lhs),), [x - y for x, y in zip(lhs, rhs)])
            return Check(axiom_id, False, witness=(i,), residual=residual,
                         detail=detail)
    return Check(axiom_id, True, detail=detail)


def check_true(axiom_id: str, value: bool, detail: str = "") -> Check:
    return Check(axiom_id, bool(value), detail=detail)


def _unflatten(flat, shape):
    idx = []
    for d in reversed(shape):
        idx.append(flat % d)
        flat //= d
    return tuple(reversed(idx))
