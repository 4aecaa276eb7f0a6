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

import sys

import click

from amalgam_strichartz.cli.common import cli_option_traceback, cli_option_verbose, handle_cli_exception, \
    new_cli_ctx_obj
from amalgam_strichartz.cli.commands import COMMANDS
from amalgam_strichartz.version import version


# noinspection PyShadowingBuiltins,PyUnusedLocal
@click.group(name='amalgam')
@click.version_option(version)
@cli_option_traceback
@cli_option_verbose
def cli(traceback=False, verbose=0):
    """
    Wiener amalgam Strichartz estimate toolkit
    """


for command in COMMANDS:
    cli.add_command(command)


def main(args=None):
    ctx_obj = new_cli_ctx_obj()
    # noinspection PyBroadException
    try:
        exit_code = cli.main(args=args, obj=ctx_obj, standalone_mode=False)
    except BaseException as e:
        exit_code = handle_cli_exception(e, traceback_mode=ctx_obj.get("traceback", False))
    sys.exit(exit_code or 0)


if __name__ == '__main__':
    main()
