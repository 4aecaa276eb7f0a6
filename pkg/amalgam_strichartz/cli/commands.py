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
import time

import click

from amalgam_strichartz.cli.common import EXIT_FAILED, EXIT_OK, EXPONENT
from amalgam_strichartz.defaults import SHARPNESS_CLAIMS

LOG = logging.getLogger(__name__)


def run_options(func):
    """Options shared by all experiment commands."""
    options = [
        click.option('--dim', '--d', 'dim', type=click.IntRange(1, 3), help="Space dimension d."),
        click.option('--grid-n', 'grid_n', type=int, help="Grid points per axis, a power of two."),
        click.option('--grid-l', 'grid_l', type=float, help="Grid extent per axis."),
        click.option('--seed', type=int, help="Seed of all random constructions."),
        click.option('--out', 'output_dir', metavar='DIR', help="Output directory."),
        click.option('--jobs', type=int, help="Number of parallel cases."),
        click.option('--tol-slope', 'tol_slope', type=float, help="Slope tolerance [0.05]."),
        click.option('--tol-norm', 'tol_norm', type=float, help="Relative norm tolerance [0.02]."),
        click.option('--dump-fields', 'dump_fields', is_flag=True, default=None,
                     help="Write binary field snapshots."),
        click.option('--config', 'config_file', metavar='FILE', type=click.Path(exists=True, dir_okay=False),
                     help="Configuration file with AMALGAM_* keys."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _run_experiment(ctx: click.Context, experiment: str, config_file=None, query=None, **flags):
    from amalgam_strichartz.core.config import RunConfig
    from amalgam_strichartz.core.suites import run

    config = RunConfig.from_sources(config_file, flags=dict(flags, experiment=experiment))
    start = time.perf_counter()
    report = run(config, query)
    wall_time = time.perf_counter() - start
    report.write(config.output_dir, wall_time=wall_time)
    summary = report.summary
    LOG.info("%s finished in %.1f s", experiment, wall_time)
    click.echo(f"{experiment}: {summary['passed']} of {summary['total']} cases passed, "
               f"report written to {config.output_dir}")
    for row in report.rows:
        if not row.passed:
            click.echo(f"  FAILED {row.experiment}/{row.case}: measured {row.measured}, predicted {row.predicted}"
                       + (f" ({row.note})" if row.note else ''))
    ctx.exit(EXIT_OK if report.passed else EXIT_FAILED)


def _experiment_command(name: str, help_text: str):
    @click.command(name=name, help=help_text)
    @run_options
    @click.pass_context
    def command(ctx, **kwargs):
        _run_experiment(ctx, name, **kwargs)

    return command


norms = _experiment_command('norms', "Compare numeric amalgam norms with the closed-form Gaussian values.")
fixed_time = _experiment_command('fixed-time', "Verify the fixed-time estimates and their decay rates.")
strichartz = _experiment_command('strichartz', "Verify Strichartz boundedness over admissible exponents.")
potential = _experiment_command('potential', "Run the solver and contraction checks with rough potentials.")
run_all = _experiment_command('all', "Run every suite.")


@click.command(name='sharpness')
@run_options
@click.option('--claim', type=click.Choice(SHARPNESS_CLAIMS), help="Run a single scaling claim.")
@click.option('--r', 'r', type=EXPONENT, help="Exponent r of r_ge_2, z2, z3, s2 and s3.")
@click.option('--r1', 'r1', type=EXPONENT, help="Exponent r1 of dd3, dd3bis, dd5, dd6 and q2.")
@click.option('--r2', 'r2', type=EXPONENT, help="Exponent r2 of dd3, dd3bis, dd5, dd6 and q2.")
@click.option('--q1', 'q1', type=EXPONENT, help="Exponent q1 of dd5, dd6 and q2.")
@click.option('--q2', 'q2', type=EXPONENT, help="Exponent q2 of dd5, dd6 and q2.")
@click.option('--alpha', type=float, help="Envelope power for z2 or inner time exponent for s2 and s3.")
@click.option('--beta', type=float, help="Outer time exponent for s2 and s3.")
@click.pass_context
def sharpness(ctx, claim, r, r1, r2, q1, q2, alpha, beta, **kwargs):
    """Verify the scaling laws behind the necessary exponent conditions.

    Without --claim the whole suite runs, including the boundary-crossing
    cases. With --claim only that claim is evaluated, e.g.

        amalgam sharpness --claim z3 --r 4 --d 1
    """
    query = None
    if claim is not None:
        from amalgam_strichartz.core.suites import SharpnessQuery
        query = SharpnessQuery(claim, r=r, r1=r1, r2=r2, q1=q1, q2=q2, alpha=alpha, beta=beta)
    _run_experiment(ctx, 'sharpness', query=query, **kwargs)


@click.command(name='region')
@click.option('--dim', '--d', 'dim', type=click.IntRange(1, 3), help="Space dimension d.")
@click.option('--resolution', type=click.IntRange(2, None), default=101, show_default=True,
              help="Raster points per axis.")
@click.option('--out', 'output_dir', metavar='DIR', help="Output directory.")
@click.option('--config', 'config_file', metavar='FILE', type=click.Path(exists=True, dir_okay=False),
              help="Configuration file with AMALGAM_* keys.")
def region(dim, resolution, output_dir, config_file):
    """Write the admissible exponent region as a CSV raster."""
    from amalgam_strichartz.core.config import RunConfig
    from amalgam_strichartz.core.suites import run_region

    config = RunConfig.from_sources(config_file, flags={"dim": dim, "output_dir": output_dir})
    path = run_region(config.dim, config.output_dir, resolution)
    click.echo(f"region written to {path}")


COMMANDS = (norms, fixed_time, strichartz, sharpness, potential, region, run_all)
