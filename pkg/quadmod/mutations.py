"""Fixed catalogue of single-entry corruptions of H_{2,2}.

Each mutation changes exactly one exact entry of one structure tensor; the
axiom and finite-type checks must catch every one of them.
"""
import logging
from dataclasses import dataclass, replace

from .exact import ExactMatrix
from .quad_module import build_example_mn
from .reports import ValidationReport
from .validation import validate_axioms, verify_finite_type

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Mutation:
    name: str
    field: str
    index: int
    position: tuple
    value: int
    description: str

    def apply(self, spec):
        target = getattr(spec, self.field)
        if self.index is None:
            return spec.with_changes(**{self.field: replace(target, matrix=_set_entry(target.matrix, self.position,
                                                                                       self.value))})
        changed = list(target)
        changed[self.index] = _set_entry(changed[self.index], self.position, self.value)
        return spec.with_changes(**{self.field: tuple(changed)})


def _set_entry(matrix, position, value):
    rows = matrix.entries()
    i, j = position
    rows[i][j] = value
    return ExactMatrix.from_rows(rows, cols=matrix.cols)


CATALOGUE = (
    Mutation('phi1_drops_entry', 'phi1', 0, (0, 0), 0, 'φ₁(f₁) loses a diagonal entry, so φ₁ is not unital'),
    Mutation('phi2_not_idempotent', 'phi2', 1, (3, 3), 2, 'φ₂(e₂) gets a 2 on the diagonal'),
    Mutation('varphi1_off_diagonal', 'varphi1', 0, (0, 1), 1, 'ϕ₁(f₁) gains an off-diagonal entry'),
    Mutation('inner_a_not_hermitian', 'inner_a', 0, (0, 1), 1, '⟨·|·⟩_A loses hermitian symmetry'),
    Mutation('inner_b1_rescaled', 'inner_b1', 1, (1, 1), 2, 'one value of ⟨·|·⟩_B1 is doubled'),
    Mutation('basis_u_rescaled', 'basis_u', 0, (0, 0), 2, 'u₁ gets a coordinate 2'),
    Mutation('basis_v_truncated', 'basis_v', 1, (3, 0), 0, 'v₂ loses a coordinate'),
    Mutation('embed1_not_unital', 'embed1', None, (1, 0), 0, 'ι₁(1) misses a coordinate'),
    Mutation('psi2_rescaled', 'psi2', None, (0, 0), 2, 'ψ₂ is no longer multiplicative'),
    Mutation('right_a_not_unital', 'right_a', 0, (2, 2), 0, 'the right A-action of 1 loses an entry'),
)


def detect(spec):
    """First failing check of the axiom and finite-type passes, or None."""

    for report in (validate_axioms(spec), verify_finite_type(spec)):
        failures = report.failures()
        if failures:
            return failures[0]
    return None


def mutation_suite(spec=None, catalogue=CATALOGUE):
    """Apply every mutation to H_{2,2} and record which check caught it."""

    spec = spec or build_example_mn(2, 2)
    report = ValidationReport(f'mutation sensitivity of {spec.label}')
    for mutation in catalogue:
        caught = detect(mutation.apply(spec))
        detected = caught is not None and caught.witness is not None
        report.add(f'mutation_{mutation.name}', mutation.description, detected,
                   {'mutation': mutation.name}, note=f'caught by {caught.identity}' if caught else 'not caught')
        logger.debug('mutation %s caught by %s', mutation.name, caught.identity if caught else None)
    return report
