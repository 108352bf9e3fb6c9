"""
Command-line interface for equicode.

Every subcommand reads one JSON problem spec (--spec), or falls back to the
worked Z_4 instance, or to a random instance when --seed is given.

Example usage:
    python -m equicode.cli paper-example --out text
    python -m equicode.cli mw-check --flavor cwe --seed 7
    python -m equicode.cli theta --spec problem.json --genus 2 --cutoff 4
    python -m equicode.cli sweep --check hayden --count 200 --seed 1
"""

import argparse
import json
import logging
import random
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from .config import ENV_MAX_ENUM, get_config
from .enumerators import cwe_g, cwe_h, h_weight_enum, jacobi_poly
from .errors import EquicodeError, SpecError
from .fixtures import EXAMPLES, Z4_SPEC
from .gcode import dual, h_dual, project_theta, verify_hayden, verify_orbit_matrix
from .harmonic import z_poly
from .io_utils import (
    Problem,
    build_problem,
    create_run_directory,
    dumps_canonical,
    load_problem_spec,
    parse_problem_spec,
    render_reports,
    write_error_log,
    write_run_metadata,
    write_sweep_summary,
)
from .lattice import (
    construction_a,
    lambda0,
    orbit_construction_a,
    project_lattice,
    verify_glattice_correspondence,
    verify_lattice_hayden,
)
from .macwilliams import FLAVORS, check_identity, default_harmonic
from .models import Report
from .permgrp import orbit_length_matrix
from .sweep import CHECKS, random_instance, run_sweep
from .theta import jacobi_formula_check, theta_lattice, verify_jacobi_correspondence, verify_theta_correspondence

logger = logging.getLogger(__name__)

ENUM_FLAVORS = ("hamming", "cwe", "cweg", "harmonic", "jacobi")


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point; returns the process exit code."""
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    if not args.command:
        parser.print_help()
        return 2

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        return COMMANDS[args.command](args)
    except SpecError as e:
        print(f"Spec error: {e}", file=sys.stderr)
        return 2
    except EquicodeError as e:
        print(f"Error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        print("\nInterrupted by user", file=sys.stderr)
        return 1


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument('--spec', type=Path, help='JSON problem spec (default: the worked Z_4 instance)')
    p.add_argument('--seed', type=int, help='Use a random instance drawn with this seed instead of a spec')
    p.add_argument('--modulus', type=int, default=3, help='Modulus of random instances (default: 3)')
    p.add_argument('--length', type=int, default=4, help='Length of random instances (default: 4)')
    p.add_argument('--out', choices=['json', 'text'], default='json', help='Output format (default: json)')
    p.add_argument('--max-enum', type=int, help=f'Enumeration bound (overrides {ENV_MAX_ENUM} and config)')
    p.add_argument('--verbose', '-v', action='store_true', help='Enable debug logging on stderr')


def create_parser() -> argparse.ArgumentParser:
    """Create the argument parser."""
    parser = argparse.ArgumentParser(
        prog="equicode",
        description="Equivariant codes over Z_k: Hayden projections, MacWilliams identities, lattices",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s paper-example --out text
  %(prog)s orbits --spec problem.json
  %(prog)s mw-check --flavor jacobi --cross-validate
  %(prog)s jacobi-formula --tol 1e-9 --z 2
        """
    )
    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    for name, help_text in [
        ('orbits', 'Show the orbits of the acting subgroup and its orbit-length matrix'),
        ('project', 'Compute the projection Cθ_H'),
        ('dual', 'Compute the dual code and the H-dual of Cθ_H'),
        ('hayden-check', "Verify Hayden's decomposition of the dual of Cθ_H"),
        ('orbit-matrix-check', 'Verify the orbit-length matrix identity'),
        ('jacobi-theta', 'Verify the Jacobi polynomial / Jacobi theta series correspondence'),
    ]:
        sub = subparsers.add_parser(name, help=help_text)
        _add_common(sub)
        if name == 'jacobi-theta':
            sub.add_argument('--cutoff', type=str, help='Largest q-exponent kept (default: config)')

    enum_parser = subparsers.add_parser('enum', help='Weight enumerator of Cθ_H')
    _add_common(enum_parser)
    enum_parser.add_argument('--flavor', choices=ENUM_FLAVORS, default='hamming')

    mw_parser = subparsers.add_parser('mw-check', help='Check a MacWilliams identity on Cθ_H')
    _add_common(mw_parser)
    mw_parser.add_argument('--flavor', choices=FLAVORS + ('cweg',), default='hamming')
    mw_parser.add_argument('--cross-validate', action='store_true',
                           help='Also compute the H-dual through the dual of C')

    lattice_parser = subparsers.add_parser('lattice', help='Construction-A lattice data')
    _add_common(lattice_parser)
    which = lattice_parser.add_mutually_exclusive_group()
    which.add_argument('--construction-a', dest='which', action='store_const', const='code',
                       help='Lattice of the code itself (default)')
    which.add_argument('--orbit', dest='which', action='store_const', const='orbit',
                       help='Construction A of Cθ_H in orbit coordinates')
    lattice_parser.set_defaults(which='code')
    lattice_parser.add_argument('--verify', action='store_true',
                                help='Run the G-lattice and lattice Hayden checks')

    theta_parser = subparsers.add_parser('theta', help='Verify the theta series / enumerator correspondence')
    _add_common(theta_parser)
    theta_parser.add_argument('--genus', type=int, choices=[1, 2], default=1)
    theta_parser.add_argument('--cutoff', type=str, help='Largest q-exponent kept (default: config)')
    theta_parser.add_argument('--series', action='store_true', help='Print the lattice theta series only')

    formula_parser = subparsers.add_parser('jacobi-formula', help='Numerically check the Jacobi transformation')
    _add_common(formula_parser)
    formula_parser.add_argument('--tol', type=float, help='Absolute tolerance (default: config)')
    formula_parser.add_argument('--z', type=float, default=1.0, help='Evaluate at z = i·Z (default: 1)')
    formula_parser.add_argument('--projected', action='store_true',
                                help='Use the rank-t lattice Λ₀θ_H instead of Λ(C)')

    example_parser = subparsers.add_parser('paper-example', help='Reproduce every value of a worked instance')
    example_parser.add_argument('--instance', choices=sorted(EXAMPLES), default='z4',
                              help='Worked instance to run (default: the Z_4 instance)')
    example_parser.add_argument('--out', choices=['json', 'text'], default='json')
    example_parser.add_argument('--verbose', '-v', action='store_true')

    sweep_parser = subparsers.add_parser('sweep', help='Run a randomized verification sweep')
    sweep_parser.add_argument('--check', choices=sorted(CHECKS), default='hayden')
    sweep_parser.add_argument('--count', type=int, help='Number of instances (default: config)')
    sweep_parser.add_argument('--seed', type=int, default=0)
    sweep_parser.add_argument('--log', type=str, help='Run directory (default: auto-generated under ./runs)')
    sweep_parser.add_argument('--verbose', '-v', action='store_true')

    return parser


def load_problem(args) -> Problem:
    """The problem selected by --spec, --seed or the worked instance."""
    if args.spec is not None:
        spec = load_problem_spec(args.spec)
    elif args.seed is not None:
        code, group, op = random_instance(random.Random(args.seed), args.modulus, args.length)
        spec = parse_problem_spec({
            "modulus": code.ring.k,
            "length": code.n,
            "generators": [list(g) for g in code.generators],
            "group": [g.cycle_string() for g in group.generators],
            "subgroup": [h.cycle_string() for h in op.group.generators],
        })
    else:
        spec = parse_problem_spec(Z4_SPEC)
    return build_problem(spec, args.max_enum)


def _emit_data(data: Dict[str, Any], fmt: str) -> None:
    if fmt == 'text':
        for key in sorted(data):
            value = data[key]
            text = value if isinstance(value, str) else json.dumps(value, sort_keys=True, ensure_ascii=False)
            print(f"{key}: {text}")
    else:
        print(dumps_canonical(data))


def _emit_reports(reports: List[Report], fmt: str) -> int:
    print(render_reports(reports, fmt))
    failed = [r for r in reports if not r.passed]
    if failed:
        print(f"First failing identity: {failed[0].flavor}", file=sys.stderr)
        return 1
    return 0


def cmd_orbits(args) -> int:
    problem = load_problem(args)
    p = problem.partition
    _emit_data({
        "group_order": problem.group.order,
        "subgroup_order": problem.subgroup.order,
        "orbits": p.describe(),
        "orbit_lengths": list(p.lengths),
        "orbit_length_matrix": orbit_length_matrix(p).describe(),
    }, args.out)
    return 0


def cmd_project(args) -> int:
    problem = load_problem(args)
    projected = project_theta(problem.code, problem.op)
    _emit_data({"code": problem.code.summary(), "projection": projected.summary()}, args.out)
    return 0


def cmd_dual(args) -> int:
    problem = load_problem(args)
    data = {"dual": dual(problem.code, args.max_enum).summary(), "h_dual": None}
    if problem.has_projection():
        data["h_dual"] = h_dual(project_theta(problem.code, problem.op), args.max_enum).summary()
    else:
        logger.warning(f"|H| = {problem.subgroup.order} is not a unit in {problem.ring.label}; no H-dual")
    _emit_data(data, args.out)
    return 0


def cmd_enum(args) -> int:
    problem = load_problem(args)
    d = project_theta(problem.code, problem.op)
    if args.flavor == 'hamming':
        poly = h_weight_enum(d)
    elif args.flavor == 'cwe':
        poly = cwe_h(d)
    elif args.flavor == 'cweg':
        poly = cwe_g(d, problem.spec.genus, args.max_enum)
    elif args.flavor == 'harmonic':
        f = problem.harmonic() or default_harmonic(d.t, problem.spec.harmonic_degree)
        poly = z_poly(d, f)
    else:
        poly = jacobi_poly(d, problem.jacobi_set())
    if args.out == 'text':
        print(poly.to_text())
    else:
        print(dumps_canonical({"flavor": args.flavor, "text": poly.to_text(), "poly": poly.to_json()}))
    return 0


def cmd_mw_check(args) -> int:
    problem = load_problem(args)
    flavor = 'cwe_g' if args.flavor == 'cweg' else args.flavor
    report = check_identity(
        flavor,
        problem.code,
        problem.op,
        genus=problem.spec.genus,
        harmonic=problem.harmonic(),
        harmonic_degree=problem.spec.harmonic_degree,
        jacobi_set=problem.jacobi_set(),
        cross_validate=args.cross_validate,
        max_enum=args.max_enum,
    )
    return _emit_reports([report], args.out)


def cmd_hayden_check(args) -> int:
    problem = load_problem(args)
    return _emit_reports([verify_hayden(problem.code, problem.op, args.max_enum)], args.out)


def cmd_orbit_matrix_check(args) -> int:
    problem = load_problem(args)
    return _emit_reports([verify_orbit_matrix(problem.code, problem.op, args.max_enum)], args.out)


def cmd_lattice(args) -> int:
    problem = load_problem(args)
    if args.which == 'orbit':
        lattice = orbit_construction_a(project_theta(problem.code, problem.op))
    else:
        lattice = construction_a(problem.code)
    data = {
        "basis": lattice.to_json(),
        "rank": lattice.rank,
        "gram_determinant": str(lattice.gram_determinant()),
        "determinant": lattice.determinant(),
        "integral": lattice.is_integral(),
        "even": lattice.is_even(),
    }
    if not args.verify:
        _emit_data(data, args.out)
        return 0
    reports = [
        verify_glattice_correspondence(problem.code, problem.group, problem.op),
        verify_lattice_hayden(construction_a(problem.code), problem.op.matrix_real, problem.op.partition),
    ]
    return _emit_reports(reports, args.out)


def cmd_theta(args) -> int:
    problem = load_problem(args)
    if args.series:
        lattice = orbit_construction_a(project_theta(problem.code, problem.op))
        cutoff = args.cutoff if args.cutoff is not None else get_config().theta.default_cutoff
        series = theta_lattice(lattice, cutoff)
        print(series.to_text() if args.out == 'text' else dumps_canonical(series.to_json()))
        return 0
    report = verify_theta_correspondence(problem.code, problem.op, args.genus, args.cutoff)
    return _emit_reports([report], args.out)


def cmd_jacobi_theta(args) -> int:
    problem = load_problem(args)
    report = verify_jacobi_correspondence(problem.code, problem.op, problem.jacobi_set(), args.cutoff)
    return _emit_reports([report], args.out)


def cmd_jacobi_formula(args) -> int:
    problem = load_problem(args)
    lattice = construction_a(problem.code)
    if args.projected:
        theta = problem.op.matrix_real
        lattice = project_lattice(lambda0(lattice, theta), theta)
    report = jacobi_formula_check(lattice, complex(0, args.z), args.tol)
    return _emit_reports([report], args.out)


def cmd_worked_example(args) -> int:
    return _emit_reports(EXAMPLES[args.instance](), args.out)


def cmd_sweep(args) -> int:
    if args.log:
        run_dir = Path(args.log)
        run_dir.mkdir(parents=True, exist_ok=True)
    else:
        run_dir = create_run_directory(args.check, args.seed)
    write_run_metadata(run_dir, args.check, args.seed, args.count)
    try:
        summary = run_sweep(args.check, args.count, args.seed)
    except EquicodeError as e:
        write_error_log(e, run_dir, args.check, args.seed)
        raise
    path = write_sweep_summary(summary, run_dir)
    print(dumps_canonical(summary.model_dump()))
    print(f"Summary written to: {path}", file=sys.stderr)
    return 0 if summary.all_passed else 1


COMMANDS = {
    'orbits': cmd_orbits,
    'project': cmd_project,
    'dual': cmd_dual,
    'enum': cmd_enum,
    'mw-check': cmd_mw_check,
    'hayden-check': cmd_hayden_check,
    'orbit-matrix-check': cmd_orbit_matrix_check,
    'lattice': cmd_lattice,
    'theta': cmd_theta,
    'jacobi-theta': cmd_jacobi_theta,
    'jacobi-formula': cmd_jacobi_formula,
    'paper-example': cmd_worked_example,
    'sweep': cmd_sweep,
}


if __name__ == '__main__':
    sys.exit(main())
