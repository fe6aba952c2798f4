#!/usr/bin/env python3
"""
Bosonic Stabilizer Toolkit - Main Entry Point

Exact simulation and symmetry analysis of linear optical circuits:
Fock-state evolution, suppression laws, stabilizer measurements and the
m-copy dual-rail Bell-state discrimination scheme.

Results go to stdout (or --output); logs go to stderr.
"""

import argparse
import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent))

from colorama import Fore, Style, init as colorama_init

from config import load_config
from errors import BsfError, ConsistencyError
from orchestrator import Orchestrator
from reports.generator import FORMATS, ReportGenerator
from utils.logger import log_error, log_info, setup_logger


def parse_args(argv=None):
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(
        description="Bosonic Stabilizer Toolkit - symmetry analysis of linear optics",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Hong-Ou-Mandel: two photons on a balanced beam splitter
  python3 src/main.py evolve --circuit "fourier(2)@0,1" --input 1,1

  # Outcomes forbidden by the cyclic symmetry of a 4-mode Fourier circuit
  python3 src/main.py suppress --circuit "fourier(4)" --generators "pauli_x(4)" --photons 4

  # Stabilizer measurement of the half scheme for m=2
  python3 src/main.py measure --circuit "tensor(identity(2), fourier(2))" \\
      --generators "tensor(identity(2), pauli_x(2))" --input "beta+*beta-" --rail-major

  # Success probability table as CSV
  python3 src/main.py --emit csv bell --table --m-max 12

  # Brute-force instrument reconstruction
  python3 src/main.py bell --m 2 --oracle
        """
    )

    parser.add_argument('--emit', choices=FORMATS, default='text', help='Output format (default: text)')
    parser.add_argument('--threads', type=int, help='Worker threads (default: BSF_THREADS)')
    parser.add_argument('--force', action='store_true', help='Lift the oracle size guard')
    parser.add_argument('--seed', type=int, default=0, help='Seed for randomized checks (default: 0)')
    parser.add_argument('--output', help='Write the result document to this file instead of stdout')
    parser.add_argument('--progress', action='store_true', help='Show progress bars on stderr')

    commands = parser.add_subparsers(dest='command', required=True)

    evolve = commands.add_parser('evolve', help='Detection statistics of a Fock input')
    evolve.add_argument('--circuit', required=True, help='Circuit description')
    evolve.add_argument('--input', required=True, help="Occupation list '1,1', named state, or '*' product")
    evolve.add_argument('--method', choices=['permanent', 'expansion'], default='permanent')

    suppress = commands.add_parser('suppress', help='Outcomes forbidden by a stabilizer symmetry')
    suppress.add_argument('--circuit', required=True, help='Circuit description')
    suppress.add_argument('--generators', required=True, help="Monomial generators separated by ';'")
    suppress.add_argument('--character', help="Eigenvalues per generator, e.g. '1,-1,e(1/3)' (default: all 1)")
    suppress.add_argument('--photons', type=int, required=True, help='Photon number')

    measure = commands.add_parser('measure', help='Stabilizer measurement probabilities')
    measure.add_argument('--circuit', required=True, help='Circuit description')
    measure.add_argument('--generators', required=True, help="Monomial generators separated by ';'")
    measure.add_argument('--input', required=True, help='Input state')
    measure.add_argument(
        '--rail-major',
        action='store_true',
        help='Reorder a product of two-mode pairs from modes (2j, 2j+1) to (j, m+j)',
    )

    bell = commands.add_parser('bell', help='m-copy Bell-state discrimination scheme')
    bell.add_argument('--m', type=int, help='Copies per rail group (default: --m-max, else 8)')
    bell.add_argument('--table', action='store_true', help='P and E for every m up to --m-max')
    bell.add_argument('--m-max', type=int, help='Last table row (default: --m)')
    bell.add_argument('--povm', action='store_true', help='Include Kraus rows and POVM elements')
    bell.add_argument('--oracle', action='store_true', help='Rebuild the instrument by simulation')

    verify = commands.add_parser('verify', help='Randomized self-check of the formalism')
    verify.add_argument('--trials', type=int, default=10, help='Random trials (default: 10)')

    return parser.parse_args(argv)


def dispatch(orchestrator, args):
    """Run the selected subcommand and return its ResultDocument."""
    if args.command == 'evolve':
        return orchestrator.run_evolve(args.circuit, args.input, method=args.method)
    if args.command == 'suppress':
        return orchestrator.run_suppress(args.circuit, args.generators, args.character, args.photons)
    if args.command == 'measure':
        return orchestrator.run_measure(args.circuit, args.generators, args.input, rail_major=args.rail_major)
    if args.command == 'bell':
        m = args.m or args.m_max or 8
        return orchestrator.run_bell(m, table=args.table, m_max=args.m_max, povm=args.povm, oracle=args.oracle)
    if args.command == 'verify':
        return orchestrator.run_verify(seed=args.seed, trials=args.trials)
    raise ValueError(f"Unknown command: {args.command}")


def report_status(status):
    """Colored PASS/FAIL line on stderr."""
    color = Fore.GREEN if status == 'PASS' else Fore.RED
    print(f"{color}{status}{Style.RESET_ALL}", file=sys.stderr)


def main(argv=None):
    """Main entry point."""
    colorama_init()
    args = parse_args(argv)

    # Load configuration
    try:
        config = load_config()
    except Exception as e:
        print(f"Failed to load configuration: {e}", file=sys.stderr)
        return 1

    # Setup logging
    setup_logger(config)
    log_info(f"Running {args.command}")

    orchestrator = Orchestrator(config, threads=args.threads, force=args.force, progress=args.progress)
    generator = ReportGenerator(config)

    try:
        document = dispatch(orchestrator, args)
    except BsfError as e:
        log_error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code

    if args.output:
        generator.write(document, args.emit, args.output)
    else:
        sys.stdout.write(generator.render(document, args.emit))

    if document.status:
        report_status(document.status)
        if document.status == 'FAIL':
            return ConsistencyError.exit_code
    return 0


if __name__ == '__main__':
    sys.exit(main())
