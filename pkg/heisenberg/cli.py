"""
Command-line plumbing shared by the management commands.

Each subcommand is a management command under heisenberg/management/commands.
They all derive from HeisenbergCommand, which resolves the algebra flags into
a CommandConfig, renders text or JSON, and maps library errors to exit codes:

    0 success, 1 usage, 2 computation error, 3 verification mismatch
"""

import json
import logging
import sys
from dataclasses import dataclass
from io import StringIO
from typing import Dict, Optional, Sequence, Tuple

from django.core.management import call_command
from django.core.management.base import BaseCommand, CommandError
from rest_framework.renderers import JSONRenderer

from .coeff import GENERIC, Mode
from .exceptions import ExpressionSyntaxError, HeisenbergError, SpecValidationError, UnknownGeneratorError
from .ncalg import KINDS as PRESETS
from .ncalg import AlgebraPreset
from .poisson import PointData
from .skewnf import AlgebraSpec, SkewMatrix

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COMPUTATION = 2
EXIT_MISMATCH = 3

COMMANDS = (
    "canon",
    "degree",
    "center",
    "normal_order",
    "central",
    "poisson_oracle",
    "leaf_dim",
    "good_point",
    "flow",
    "rep",
    "dkp",
    "coeffs",
)
ALIASES = {name.replace("_", "-"): name for name in COMMANDS}

# malformed input is a usage error, everything else raised by the library is a computation error
INPUT_ERRORS = (SpecValidationError, ExpressionSyntaxError, UnknownGeneratorError)


class UsageError(CommandError):
    def __init__(self, message: str):
        super().__init__(message, returncode=EXIT_USAGE)


class MismatchError(CommandError):
    """Raised after the output has been written, when a verification fails."""

    def __init__(self, message: str):
        super().__init__(message, returncode=EXIT_MISMATCH)


@dataclass
class CommandConfig:
    """Algebra and IO flags of one invocation."""

    subcommand: str
    preset: Optional[str] = None
    N: Optional[int] = None
    m: Optional[int] = None
    matrix: Optional[str] = None
    spec: Optional[str] = None
    json: bool = False
    out: Optional[str] = None

    @classmethod
    def from_options(cls, subcommand: str, options: Dict) -> "CommandConfig":
        return cls(
            subcommand=subcommand,
            preset=options.get("preset"),
            N=options.get("N"),
            m=options.get("m"),
            matrix=options.get("matrix"),
            spec=options.get("spec"),
            json=bool(options.get("json")),
            out=options.get("out"),
        )

    def mode(self) -> Mode:
        return GENERIC if self.m is None else Mode.root_of_unity(self.m)

    def require_m(self) -> int:
        if self.m is None:
            raise UsageError(f"{self.subcommand} needs --m")
        return self.m

    def require_N(self) -> int:
        if self.N is None:
            raise UsageError(f"{self.subcommand} needs --N")
        return self.N

    def load_matrix(self) -> SkewMatrix:
        if not self.matrix:
            raise UsageError(f"{self.subcommand} needs --matrix FILE")
        try:
            with open(self.matrix, encoding="utf-8") as handle:
                payload = json.load(handle)
        except (OSError, ValueError) as e:
            raise UsageError(f"Cannot read matrix file {self.matrix}: {e}")
        if isinstance(payload, list):
            return SkewMatrix.from_rows(payload)
        return SkewMatrix.from_json(payload)

    def algebra(self) -> AlgebraPreset:
        """The single algebra preset named by --preset (with --N or --matrix)."""
        if not self.preset:
            raise UsageError(f"{self.subcommand} needs --preset ({', '.join(PRESETS)})")
        if self.preset not in PRESETS:
            raise UsageError(f"Unknown preset {self.preset!r}; expected one of {', '.join(PRESETS)}")
        if self.preset == "torus":
            return AlgebraPreset.torus(self.load_matrix())
        return AlgebraPreset.from_name(self.preset, self.require_N())

    def algebra_spec(self) -> AlgebraSpec:
        """Matrix commands take --spec, --matrix, or a preset with --N."""
        if self.spec:
            return AlgebraSpec.parse(self.spec)
        if self.matrix and self.preset in (None, "torus"):
            return AlgebraSpec.explicit(self.load_matrix())
        if self.preset in ("frt", "frtbar"):
            return AlgebraSpec.frtbar(self.require_N())
        if self.preset == "oh":
            return AlgebraSpec.oh(self.require_N())
        if self.preset == "ohloc":
            return AlgebraSpec.oh_localized(self.require_N())
        raise UsageError(f"{self.subcommand} needs --spec, --matrix FILE or --preset with --N")

    def point(self, text: Optional[str]) -> PointData:
        if not text:
            raise UsageError(f"{self.subcommand} needs --point")
        return PointData.parse(self.require_N(), text)


def render_json(data) -> str:
    """Compact, byte-stable JSON."""
    return JSONRenderer().render(data).decode("utf-8")


def _usage_error(parser, message: str):
    if getattr(parser, "called_from_command_line", False):
        parser.print_usage(sys.stderr)
        parser.exit(EXIT_USAGE, f"{parser.prog}: error: {message}\n")
    raise UsageError(f"Error: {message}")


class HeisenbergCommand(BaseCommand):
    """
    Base class of every subcommand.

    Subclasses declare their own arguments in add_command_arguments and
    implement compute, which returns (text, data, ok). data is rendered when
    --json is given; ok False turns into exit status 3.
    """

    preset_flags = True
    matrix_flags = False

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        parser.error = lambda message: _usage_error(parser, message)
        return parser

    def add_arguments(self, parser):
        if self.preset_flags:
            parser.add_argument("--preset", type=str, help=f"Algebra preset: {', '.join(PRESETS)}")
            parser.add_argument("--N", type=int, help="Number of generator pairs")
            parser.add_argument("--m", type=int, help="Odd order of the root of unity q")
            parser.add_argument("--matrix", type=str, help="JSON file with a skew-symmetric integer matrix")
        if self.matrix_flags:
            parser.add_argument("--spec", type=str, help="Algebra spec such as frtbar:3, lup:1,1 or ldown:0,1")
        parser.add_argument("--json", action="store_true", help="Machine readable JSON output")
        parser.add_argument("--out", type=str, help="Write the output to this file instead of stdout")
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def compute(self, config: CommandConfig, options: Dict) -> Tuple[str, object, bool]:
        raise NotImplementedError

    def handle(self, *args, **options):
        name = self.__class__.__module__.rsplit(".", 1)[-1]
        config = CommandConfig.from_options(name, options)
        try:
            text, data, ok = self.compute(config, options)
        except CommandError:
            raise
        except INPUT_ERRORS as e:
            logger.warning(f"{name} rejected its input: {e}")
            raise UsageError(f"{type(e).__name__}: {e}")
        except HeisenbergError as e:
            logger.error(f"{name} failed: {e}", exc_info=True)
            raise CommandError(f"{type(e).__name__}: {e}", returncode=EXIT_COMPUTATION)

        output = render_json(data) if config.json else text
        if config.out:
            try:
                with open(config.out, "w", encoding="utf-8") as handle:
                    handle.write(output + "\n")
            except OSError as e:
                raise UsageError(f"Cannot write {config.out}: {e}")
        else:
            self.stdout.write(output)
        if not ok:
            raise MismatchError(f"{name}: verification failed")


def run(argv: Sequence[str]) -> Tuple[int, str]:
    """
    Run one subcommand in-process and capture its output.

    Hyphenated names (normal-order, leaf-dim, ...) are accepted as aliases.

    Returns:
        (exit code, captured stdout)
    """
    if not argv:
        return EXIT_USAGE, f"Usage: <command> [options]; commands: {', '.join(ALIASES)}\n"
    name = ALIASES.get(argv[0], argv[0])
    if name not in COMMANDS:
        return EXIT_USAGE, f"Unknown command {argv[0]!r}\n"
    buffer = StringIO()
    try:
        call_command(name, *argv[1:], stdout=buffer)
    except CommandError as e:
        logger.info(f"{name} exited with status {e.returncode}: {e}")
        return e.returncode, buffer.getvalue()
    return EXIT_OK, buffer.getvalue()

