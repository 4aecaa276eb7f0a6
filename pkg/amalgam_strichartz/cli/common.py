# The MIT License (MIT)
# Copyright (c) 2021 by the amalgam-strichartz development team and contributors
#
# Permission is hereby granted, free of charge, to any person obtaining a copy of
# this software and associated documentation files (the "Software"), to deal in
# the Software without restriction, including without limitation the rights to
# use, copy, modify, merge, publish, distribute, sublicense, and/or sell copies
# of the Software, and to permit persons to whom the Software is furnished to do
# so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

import logging
import math
import sys

import click

from amalgam_strichartz.core.errors import AmalgamError, ConfigError

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_OS = 4
EXIT_INTERNAL = 5


def new_cli_ctx_obj():
    return {
        "traceback": False,
        "verbose": 0,
    }


def cli_option_traceback(func):
    """Decorator for adding a pre-defined, reusable CLI option `--traceback`."""

    # noinspection PyUnusedLocal
    def _callback(ctx: click.Context, param: click.Option, value: bool):
        ctx_obj = ctx.ensure_object(dict)
        if ctx_obj is not None:
            ctx_obj["traceback"] = value
        return value

    return click.option(
        '--traceback',
        is_flag=True,
        is_eager=True,
        help="Enable tracing back errors by dumping the Python call stack. "
             "Pass as very first option to also trace back error during command-line validation.",
        callback=_callback)(func)


def cli_option_verbose(func):
    """Decorator for adding `-v/--verbose`; once for INFO, twice for DEBUG."""

    # noinspection PyUnusedLocal
    def _callback(ctx: click.Context, param: click.Option, value: int):
        ctx_obj = ctx.ensure_object(dict)
        ctx_obj["verbose"] = value
        level = logging.WARNING if value == 0 else logging.INFO if value == 1 else logging.DEBUG
        logging.basicConfig(format='%(asctime)s %(levelname)s %(name)s: %(message)s')
        logging.getLogger('amalgam_strichartz').setLevel(level)
        return value

    return click.option('--verbose', '-v', count=True, help="Increase logging verbosity.", callback=_callback)(func)


class ExponentType(click.ParamType):
    """A Lebesgue exponent in [1, inf]; 'inf' denotes infinity."""
    name = 'exponent'

    def convert(self, value, param, ctx):
        if isinstance(value, float):
            return value
        try:
            exponent = float(value)
        except ValueError:
            self.fail(f"{value!r} is not a number or 'inf'", param, ctx)
        if not (exponent > 0 or math.isinf(exponent)):
            self.fail(f"{value!r} must be positive", param, ctx)
        return exponent


EXPONENT = ExponentType()


def handle_cli_exception(e: BaseException, exit_code: int = None, traceback_mode: bool = False) -> int:
    if isinstance(e, click.Abort):
        print('Aborted!', file=sys.stderr)
        exit_code = exit_code or EXIT_FAILED
    elif isinstance(e, click.ClickException):
        e.show(file=sys.stderr)
        exit_code = exit_code or e.exit_code
    elif isinstance(e, ConfigError):
        print(f'Configuration error: {e}', file=sys.stderr)
        exit_code = exit_code or EXIT_USAGE
    elif isinstance(e, AmalgamError):
        print(f'Error: {e}', file=sys.stderr)
        exit_code = exit_code or EXIT_DOMAIN
    elif isinstance(e, OSError):
        print(f'OS error: {e}', file=sys.stderr)
        exit_code = exit_code or EXIT_OS
    else:
        print(f'Internal error: {e}', file=sys.stderr)
        exit_code = exit_code or EXIT_INTERNAL
    if traceback_mode:
        import traceback
        traceback.print_exc(file=sys.stderr)
    return exit_code
