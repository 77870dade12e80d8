"""The stages behind the quadmod command and the report they produce."""
import json
import logging
from dataclasses import dataclass, field

import numpy as np
from django.conf import settings

from .algebras import parse_cycles
from .ck import (build_ck_generators, ck_matrix, ck_matrix_from_generators, column_amalgamation, is_aperiodic,
                 verify_ck_relations, verify_twisted_isometries)
from .exceptions import AssumptionsViolated, LambdaNotFaithful, NotHermitian, NotInSubalgebra, SingularMatrix
from .fock import build_fock, fock_identities, gauge_check, grading_report, projection_report
from .ktheory import cokernel, identity_matrix, k_groups, k_groups_from_matrix, lambda_circ, snf_property_suite
from .relations import (compute_pi, filtration_report, fixed_point_check, make_generators,
                        verify_core_relations, verify_generator_relations, verify_universal_relations)
from .reports import ValidationReport, collect, render_grid
from .serialization import MN_BUILTIN, PERM_BUILTIN, parse_spec_source
from .validation import (default_strong_bases, derive_lambda, derive_right_a_basis, validate_axioms,
                         verify_finite_type, verify_strongly_finite_type)

logger = logging.getLogger(__name__)

COMMANDS = ('validate', 'fock', 'ck', 'ktheory', 'full')
FOCK_COMMANDS = ('fock', 'ck', 'full')
STAGES = {
    'validate': ('validate',),
    'fock': ('validate', 'fock'),
    'ck': ('ck',),
    'ktheory': ('ktheory',),
    'full': ('validate', 'fock', 'relations', 'ck', 'ktheory'),
}
LAMBDA_ERRORS = (NotInSubalgebra, LambdaNotFaithful, NotHermitian, SingularMatrix)


@dataclass(frozen=True)
class RunConfig:
    command: str
    source: str
    depth: int = None
    output_format: str = 'text'
    output: str = None
    seed: int = None


@dataclass
class RunResult:
    """Reports of one run, in stage order, with the headline values of each stage."""

    config: RunConfig
    label: str
    depth: int = None
    sections: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(section.passed for section in self.sections)

    @property
    def exit_code(self):
        return 0 if self.passed else 1

    def to_json(self):
        return {
            'spec': self.label,
            'command': self.config.command,
            'depth': self.depth,
            'pass': self.passed,
            'sections': [section.to_json() for section in self.sections],
            'summary': self.summary,
        }

    def render_text(self):
        header = f'{self.label}: {self.config.command}'
        if self.depth is not None:
            header += f' at depth K = {self.depth}'
        lines = [header, '']
        for section in self.sections:
            lines.append(section.render())
            lines.append('')
        if self.config.command == 'full':
            lines.append('== summary ==')
            for section in self.sections:
                passed = sum(1 for check in section.checks if check.passed)
                lines.append(f'{section.title}: {passed}/{len(section.checks)}')
        for key, value in self.summary.items():
            if key == 'K1' and 'K0' in self.summary:
                continue
            if key == 'K0' and 'K1' in self.summary:
                lines.append(f'K0 = {value}, K1 = {self.summary["K1"]}')
            elif isinstance(value, list) and value and isinstance(value[0], list):
                lines.append(f'{key} =')
                lines.append(render_grid(value))
            else:
                lines.append(f'{key} = {value}')
        lines.append('PASS' if self.passed else 'FAIL')
        return '\n'.join(lines)

    def render(self, output_format='text'):
        if output_format == 'json':
            return json.dumps(self.to_json(), indent=2, ensure_ascii=False)
        return self.render_text()


def dimension_bound(spec, depth):
    """Upper bound Σ_n dim H·(M+N)^(n−1) on the dimension of levels 1..K."""

    return sum(spec.dim_h * (spec.m + spec.n) ** (level - 1) for level in range(1, depth + 1))


def auto_depth(spec):
    if spec.m <= 3 and spec.n <= 3:
        return settings.QUADMOD_DEFAULT_DEPTH
    depth = 2
    while dimension_bound(spec, depth + 1) <= settings.QUADMOD_DIM_BUDGET:
        depth += 1
    return depth


@dataclass
class _RunState:
    """What the stages of one run hand to each other."""

    config: RunConfig
    spec: object
    depth: int
    result: RunResult
    lambdas: object = None
    fock: object = None
    gen: object = None
    mn: tuple = None
    perm: tuple = None


def _validate_stage(state):
    spec = state.spec
    sections = [validate_axioms(spec), verify_finite_type(spec)]
    try:
        lambdas = derive_lambda(spec)
    except LAMBDA_ERRORS as error:
        report = ValidationReport(f'lambda maps of {spec.label}')
        report.add('lambda_derivation', 'λ₁, λ₂ are defined and faithful', False,
                   {'error': type(error).__name__, 'message': str(error)})
        sections.append(report)
    else:
        state.lambdas = lambdas
        e_basis, f_basis = default_strong_bases(spec, lambdas)
        sections.append(lambdas.report)
        sections.append(verify_strongly_finite_type(spec, e_basis, f_basis, lambdas))
        sections.append(derive_right_a_basis(spec, e_basis, f_basis).report)
    state.result.sections.extend(sections)


def _fock_stage(state):
    fock = build_fock(state.spec, state.depth, state.lambdas)
    state.fock = fock
    state.result.sections.extend([
        fock.checks,
        collect('Fock identities', fock_identities(fock)),
        projection_report(fock),
        gauge_check(fock),
        grading_report(fock),
    ])
    state.result.summary['level_dims'] = fock.level_dims
    state.result.summary['total_dim'] = fock.total_dim


def _generators(state):
    if state.gen is None:
        state.fock = state.fock or build_fock(state.spec, state.depth, state.lambdas)
        state.gen = make_generators(state.fock)
    return state.gen


def _relations_stage(state):
    gen = _generators(state)
    pi_reports = []
    for p in gen.bcirc.idempotents:
        pi_reports.extend(compute_pi(gen, p.matrix).reports)
    dims, nested = filtration_report(gen, min(1, gen.depth - 2))
    state.result.sections.extend([
        collect('generators', gen.reports),
        collect('generator relations', verify_generator_relations(gen)),
        collect('universal relations', verify_universal_relations(gen)),
        collect('core relations', verify_core_relations(gen)),
        collect('representation of B_∘', pi_reports),
        collect('core filtration', [nested, fixed_point_check(gen)]),
    ])
    state.result.summary['bcirc_dim'] = gen.bcirc.dim
    state.result.summary['filtration_dims'] = dims


def _ck_matrix_report(m, n):
    bundle = ck_matrix(m, n)
    report = ValidationReport(f'Cuntz-Krieger matrix of H_({m},{n})')
    aperiodic, exponent = is_aperiodic(bundle.h)
    size = bundle.h.shape[0]
    report.add('h_aperiodic', 'some power of H is entrywise positive', aperiodic,
               {'wielandt_bound': (size - 1) ** 2 + 1}, note=f'exponent {exponent}')
    merged = column_amalgamation(bundle.h)
    expected = bundle.a + bundle.b
    report.add('amalgamation_is_a_plus_b', 'the column amalgamation of H is A + B',
               merged.shape == expected.shape and np.array_equal(merged, expected), {'amalgamated': merged.tolist()})
    left = cokernel(bundle.h - identity_matrix(size))
    right = cokernel(expected - identity_matrix(m * n))
    report.add('amalgamation_preserves_k0', 'coker(H − I) ≅ coker(A + B − I)', left == right,
               {'h': str(left), 'a_plus_b': str(right)})
    return bundle, report


def _ck_stage(state):
    if state.mn is not None:
        m, n = state.mn
        ck = build_ck_generators(m, n, state.depth, gen=_generators(state))
        derived, derived_report = ck_matrix_from_generators(ck)
        bundle, matrix_report = _ck_matrix_report(m, n)
        state.result.sections.extend([
            collect('Cuntz-Krieger generators', ck.reports),
            collect('Cuntz-Krieger relations', verify_ck_relations(ck) + [derived_report]),
            matrix_report,
        ])
        state.result.summary['H'] = bundle.h.tolist()
    elif state.perm is not None:
        d, sigma, tau = state.perm
        if all(sigma[tau[j]] == tau[sigma[j]] for j in range(d)):
            state.result.sections.append(collect('twisted isometries',
                                                 verify_twisted_isometries(d, sigma, tau, state.depth)))
        else:
            state.result.summary['ck'] = 'skipped: the permutations do not commute'
    else:
        state.result.summary['ck'] = 'skipped: needs a builtin example'


def _ktheory_stage(state):
    summary = state.result.summary
    if state.mn is not None:
        k0, k1 = k_groups(*state.mn)
        summary['K0'], summary['K1'] = str(k0), str(k1)
        if state.config.command == 'full':
            state.result.sections.append(_lambda_route(state, (k0, k1)))
    else:
        state.result.sections.append(_lambda_route(state, None))
    if state.config.seed is not None:
        state.result.sections.append(snf_property_suite(seed=state.config.seed))


def _lambda_route(state, expected):
    """K-groups through λ_∘ on K₀(B_∘), compared with the block presentation when there is one."""

    spec = state.spec
    report = ValidationReport(f'λ_∘ route for {spec.label}')
    try:
        state.fock = state.fock or build_fock(spec, state.depth, state.lambdas)
        bundle = lambda_circ(spec, state.depth, state.fock)
    except AssumptionsViolated as error:
        report.add('lambda_circ_assumptions', 'S_i, T_k partial isometries with ranges commuting with B_∘',
                   False, error.witness)
        return report
    report.extend(bundle.reports)
    k0, k1 = k_groups_from_matrix(bundle.matrix)
    state.result.summary['lambda_circ'] = bundle.matrix.tolist()
    if expected is None:
        state.result.summary['K0'], state.result.summary['K1'] = str(k0), str(k1)
    else:
        report.add('lambda_route_agrees', 'coker(I − λ_∘) and ker(I − λ_∘) match the A + B − I presentation',
                   (k0, k1) == expected, {'lambda_route': [str(k0), str(k1)],
                                          'presentation': [str(g) for g in expected]})
    return report


STAGE_FUNCTIONS = {
    'validate': _validate_stage,
    'fock': _fock_stage,
    'relations': _relations_stage,
    'ck': _ck_stage,
    'ktheory': _ktheory_stage,
}


def _builtin_parameters(source):
    source = source.strip()
    match = MN_BUILTIN.match(source)
    if match:
        return (int(match.group(1)), int(match.group(2))), None
    match = PERM_BUILTIN.match(source)
    if match:
        d = int(match.group(1))
        return None, (d, parse_cycles(match.group(2), d), parse_cycles(match.group(3), d))
    return None, None


def run(config, progress=None):
    """Run the stages of config.command; verification failures stay in the report.

    progress, when given, is called with (stage, position, count) before each stage.
    """
    spec = parse_spec_source(config.source)
    uses_fock = config.command in FOCK_COMMANDS or (
        config.command == 'ktheory' and not MN_BUILTIN.match(config.source.strip()))
    depth = None
    if uses_fock:
        depth = config.depth if config.depth is not None else auto_depth(spec)
    result = RunResult(config, spec.label, depth)
    mn, perm = _builtin_parameters(config.source)
    state = _RunState(config, spec, depth, result, mn=mn, perm=perm)
    stages = STAGES[config.command]
    for position, stage in enumerate(stages, start=1):
        if progress:
            progress(stage, position, len(stages))
        logger.info('%s: running %s', spec.label, stage)
        STAGE_FUNCTIONS[stage](state)
    logger.info('%s: %s finished, %s', spec.label, config.command, 'pass' if result.passed else 'FAIL')
    return result
