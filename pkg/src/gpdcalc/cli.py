"""Command-line front end.

Exit codes: 0 pass, 1 verification failure, 2 usage or parse error,
3 degree or frame mismatch.
"""

import sys

import click

from .errors import ChartMismatch, DegreeError, FrameMismatch, GpdcalcError, ModelFileError
from .exterior import de_rham_d, koszul_bracket, schouten_bracket
from .modelfile import check_model, load_model_file
from .sampling import sample_bounds
from .suites import SUITES, run_suite

EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_TYPE = 3

TYPE_ERRORS = (DegreeError, FrameMismatch, ChartMismatch)


def _fail(message, code):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load(path):
    try:
        return load_model_file(path)
    except ModelFileError as exc:
        _fail(str(exc), EXIT_USAGE)


def _lookup(model, name):
    try:
        return model.get(name)
    except ModelFileError as exc:
        _fail(str(exc), EXIT_USAGE)


def _emit(report, as_json):
    click.echo(report.to_json() if as_json else report.to_text())
    sys.exit(0 if report.passed else EXIT_FAIL)


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Exact calculus of forms, multivectors and Lie algebroids."""


@main.command()
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Emit the report as JSON.")
def check(file, as_json):
    """Validate every algebroid, object and pair declared in FILE."""
    model = _load(file)
    try:
        report = check_model(model)
    except TYPE_ERRORS as exc:
        _fail(str(exc), EXIT_TYPE)
    _emit(report, as_json)


@main.command()
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--poisson", "poisson", default=None, help="Name of the bivector P.")
@click.option("--left", required=True, help="Name of the left operand.")
@click.option("--right", required=True, help="Name of the right operand.")
@click.option("--schouten", is_flag=True, help="Schouten bracket of multivectors instead of the Koszul bracket.")
def bracket(file, poisson, left, right, schouten):
    """Print [left, right]_P (or the Schouten bracket) in canonical form."""
    model = _load(file)
    a, b = _lookup(model, left), _lookup(model, right)
    try:
        if schouten:
            for obj in (a, b):
                if obj.kind != "multivector":
                    raise DegreeError(f"{obj.name} is a {obj.kind}, the Schouten bracket takes multivectors")
            out = schouten_bracket(a.element, b.element)
        else:
            if poisson is None:
                _fail("--poisson is required for the Koszul bracket", EXIT_USAGE)
            P = _lookup(model, poisson)
            if P.kind != "multivector" or P.element.degree != 2:
                raise DegreeError(f"{P.name} must be a bivector")
            for obj in (a, b):
                if obj.kind != "form":
                    raise DegreeError(f"{obj.name} is a {obj.kind}, the Koszul bracket takes forms")
            out = koszul_bracket(P.element, a.element, b.element)
    except TYPE_ERRORS as exc:
        _fail(str(exc), EXIT_TYPE)
    click.echo(str(out))


@main.command()
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--object", "name", required=True, help="Name of the form to differentiate.")
def d(file, name):
    """Print the exterior derivative of a form."""
    model = _load(file)
    obj = _lookup(model, name)
    try:
        if obj.kind != "form":
            raise DegreeError(f"{obj.name} is a {obj.kind}; d acts on forms on the chart")
        out = de_rham_d(obj.element)
    except TYPE_ERRORS as exc:
        _fail(str(exc), EXIT_TYPE)
    click.echo(str(out))


@main.command()
@click.argument("suite", type=click.Choice(SUITES))
@click.option("--n", "n", default=1, show_default=True, type=click.IntRange(min=1), help="Base dimension of T*M.")
@click.option("--trials", default=20, show_default=True, type=click.IntRange(min=0))
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--json", "as_json", is_flag=True, help="Emit the report as JSON.")
@click.option("--timing", is_flag=True, help="Include wall-clock time in the report.")
@click.option("--verbatim", is_flag=True, help="Check the literal closing-example lines and morphism sign.")
@click.option("--max-degree", default=None, type=click.IntRange(min=0), help="Degree bound of random polynomials.")
@click.option("--coeff-range", default=None, type=click.IntRange(min=1), help="Coefficients are drawn from [-c, c].")
def verify(suite, n, trials, seed, as_json, timing, verbatim, max_degree, coeff_range):
    """Run a verification suite and print its report."""
    try:
        with sample_bounds(max_degree, coeff_range):
            report = run_suite(suite, n=n, trials=trials, seed=seed, verbatim=verbatim, timing=timing)
    except TYPE_ERRORS as exc:
        _fail(str(exc), EXIT_TYPE)
    except GpdcalcError as exc:
        _fail(str(exc), EXIT_FAIL)
    _emit(report, as_json)


if __name__ == "__main__":
    main()
