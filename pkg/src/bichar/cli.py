"""``bichar`` command line front end.

Exit codes: 0 success, 1 usage or parse error, 2 domain error, 3 failed
verification.  Text output uses the canonical term order; ``--json`` output
has sorted keys so it is byte-stable for a given config, seed and command.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction

import click

from . import verify as verify_mod
from .bicharacter import BicharSpec, check_symmetric, convolve, grouplike_root, symmetrize
from .config import SessionConfig, bichar_to_dict, load_config
from .errors import BicharError, ConfigError, ParseError, UnknownGenerator
from .heisenberg import FieldWord, field_state, fock_bicharacter, normal_ordered_apply, twisted_bullet_state, vacuum
from .hopf import HopfElement
from .lattice import Lattice, flm_series, run_flm_example
from .parsing import parse_element
from .quadop import QuadraticOperator, apply_exp_q
from .twisting import bullet_word, eq_map, twisted_product

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3
USAGE_ERRORS = (ParseError, UnknownGenerator, ConfigError)


class VerifyFailed(Exception):
    pass


def _emit(ctx: click.Context, payload: dict, text: str) -> None:
    if ctx.obj["json"]:
        click.echo(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        click.echo(text)


def _element_payload(command: str, elem: HopfElement, **extra) -> dict:
    return {"command": command, "result": elem.to_json(), "text": str(elem), **extra}


def _bichar_text(table: dict) -> str:
    lines = ["gg = " + json.dumps(table["gg"])]
    for key, fields in (("gp", ("i", "m")), ("pg", ("m", "i")), ("pp", ("m", "n"))):
        for entry in table[key]:
            args = ", ".join(str(entry[f]) if f != "i" else f"a{entry['i']}" for f in fields)
            lines.append(f"{key}({args}) = {entry['value']}")
    return "\n".join(lines)


def _parse_window(value: str | None):
    if value is None:
        return None
    lo, sep, hi = value.partition("..")
    if not sep:
        raise click.BadParameter("expected LO..HI", param_hint="--window")
    try:
        return Fraction(lo), Fraction(hi)
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"bad window {value!r}", param_hint="--window") from None


def common_options(fn):
    fn = click.option("--json", "as_json", is_flag=True, help="Emit JSON instead of text.")(fn)
    fn = click.option("--depth", type=click.IntRange(min=1), default=None, help="Lattice mode depth D.")(fn)
    fn = click.option("--order", type=click.IntRange(min=0), default=None, help="Series truncation order N.")(fn)
    fn = click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None, help="Session config (TOML or JSON).")(fn)
    return fn


def _setup(ctx: click.Context, as_json: bool, config_path, order, depth) -> SessionConfig | None:
    ctx.ensure_object(dict)
    ctx.obj["json"] = as_json
    if config_path is None:
        return None
    return load_config(config_path, order=order, depth=depth)


def _need(cfg: SessionConfig | None) -> SessionConfig:
    if cfg is None:
        raise click.UsageError("this command needs --config")
    return cfg


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(package_name="artifact")
def cli():
    """Exact bicharacter, twisting and quadratic-operator computations."""


@cli.command("eq")
@common_options
@click.option("--bichar", "name", default=None, help="Bicharacter name from the config.")
@click.argument("expr")
@click.pass_context
def eq_cmd(ctx, as_json, config_path, order, depth, name, expr):
    """EQ_r(a) = r(a' (x) a'') a'''."""
    cfg = _need(_setup(ctx, as_json, config_path, order, depth))
    r = cfg.bichar(name)
    out = eq_map(r, parse_element(expr, cfg.signature))
    _emit(ctx, _element_payload("eq", out), str(out))


@cli.command("expq")
@common_options
@click.option("--bichar", "name", default=None)
@click.argument("expr")
@click.pass_context
def expq_cmd(ctx, as_json, config_path, order, depth, name, expr):
    """Apply exp(Q) for the quadratic operator of r."""
    cfg = _need(_setup(ctx, as_json, config_path, order, depth))
    out = apply_exp_q(QuadraticOperator(cfg.bichar(name)), parse_element(expr, cfg.signature))
    _emit(ctx, _element_payload("expq", out), str(out))


@cli.command("bullet")
@common_options
@click.option("--bichar", "name", default=None)
@click.option("--direct", is_flag=True, help="Use the named bicharacter itself (must be symmetric).")
@click.argument("exprs", nargs=-1, required=True)
@click.pass_context
def bullet_cmd(ctx, as_json, config_path, order, depth, name, direct, exprs):
    """Left-folded bullet product of the given elements.

    By default the product uses the symmetrization of the named bicharacter.
    """
    cfg = _need(_setup(ctx, as_json, config_path, order, depth))
    r = cfg.bichar(name)
    if direct:
        check_symmetric(r)
        s = r
    else:
        s = symmetrize(r)
    out = bullet_word([parse_element(e, cfg.signature) for e in exprs], s)
    _emit(ctx, _element_payload("bullet", out), str(out))


@cli.command("twist")
@common_options
@click.option("--bichar", "name", default=None)
@click.argument("left")
@click.argument("right")
@click.pass_context
def twist_cmd(ctx, as_json, config_path, order, depth, name, left, right):
    """Twisted product r(a' (x) b') a'' b''."""
    cfg = _need(_setup(ctx, as_json, config_path, order, depth))
    a = parse_element(left, cfg.signature)
    b = parse_element(right, cfg.signature)
    out = twisted_product(cfg.bichar(name), a, b)
    _emit(ctx, _element_payload("twist", out), str(out))


def _emit_bichar(ctx, command: str, r: BicharSpec):
    table = bichar_to_dict(r)
    _emit(ctx, {"command": command, "result": table}, _bichar_text(table))


@cli.command("convolve")
@common_options
@click.option("--bichar", "names", multiple=True, required=True, help="Repeat for each factor, in order.")
@click.pass_context
def convolve_cmd(ctx, as_json, config_path, order, depth, names):
    """Convolution product of the named bicharacters."""
    cfg = _need(_setup(ctx, as_json, config_path, order, depth))
    out = cfg.bichar(names[0])
    for n in names[1:]:
        out = convolve(out, cfg.bichar(n))
    _emit_bichar(ctx, "convolve", out)


@cli.command("symmetrize")
@common_options
@click.option("--bichar", "name", default=None)
@click.pass_context
def symmetrize_cmd(ctx, as_json, config_path, order, depth, name):
    """s = r o r^t."""
    cfg = _need(_setup(ctx, as_json, config_path, order, depth))
    _emit_bichar(ctx, "symmetrize", symmetrize(cfg.bichar(name)))


@cli.command("root")
@common_options
@click.option("--bichar", "name", default=None)
@click.pass_context
def root_cmd(ctx, as_json, config_path, order, depth, name):
    """Find r with symmetrize(r) equal to the named symmetric bicharacter."""
    cfg = _need(_setup(ctx, as_json, config_path, order, depth))
    _emit_bichar(ctx, "root", grouplike_root(cfg.bichar(name)))


@cli.command("flm-series")
@common_options
@click.pass_context
def flm_series_cmd(ctx, as_json, config_path, order, depth):
    """Coefficients c_mn of -log((sqrt(1+x/z) + sqrt(1+y/z))/2)."""
    cfg = _setup(ctx, as_json, config_path, order, depth)
    if order is None:
        order = cfg.series_order if cfg and cfg.series_order is not None else 4
    c = flm_series(order)
    rows = c.to_json()
    text = "\n".join(f"c{row['m']}{row['n']} = {row['text']}" for row in rows)
    _emit(ctx, {"command": "flm-series", "order": order, "result": rows}, text)


def _parse_gram(value: str) -> Lattice:
    try:
        rows = json.loads(value)
        gram = tuple(tuple(Fraction(str(v)) for v in row) for row in rows)
    except (ValueError, TypeError):
        raise click.BadParameter("expected a JSON matrix such as [[2,-1],[-1,2]]", param_hint="--gram") from None
    return Lattice(len(gram), gram)


@cli.command("flm-example")
@common_options
@click.option("--gram", default=None, help="Gram matrix as JSON, e.g. '[[2,-1],[-1,2]]'.")
@click.pass_context
def flm_example_cmd(ctx, as_json, config_path, order, depth, gram):
    """Check the worked lattice example identities on a lattice."""
    cfg = _setup(ctx, as_json, config_path, order, depth)
    if gram is not None:
        lat = _parse_gram(gram)
    elif cfg is not None and cfg.lattice is not None:
        lat = cfg.lattice
        order = cfg.series_order if order is None else order
        depth = cfg.depth if depth is None else depth
    else:
        raise click.UsageError("flm-example needs --gram or a config with a [lattice] section")
    report = run_flm_example(lat, order=order if order is not None else 4, depth=depth or 1)
    lines = [f"rank {report['rank']}, gram {report['gram']}"]
    lines += [f"{k} = {v}" for k, v in report["series"].items()]
    for sv in report["s_values"]:
        lines.append(f"{'ok ' if sv['equal'] else 'BAD'} {sv['pair']} = {sv['value']}")
    for ident in report["identities"]:
        lines.append(f"{'ok ' if ident['equal'] else 'BAD'} {ident['name']} = {ident['lhs']}")
    lines.append("all identities hold" if report["all_equal"] else "SOME IDENTITIES FAIL")
    _emit(ctx, {"command": "flm-example", "result": report}, "\n".join(lines))
    if not report["all_equal"]:
        raise VerifyFailed("flm-example identities fail")


@cli.command("field-state")
@common_options
@click.option("--twisted", is_flag=True, help="Use half-integer (twisted) modes.")
@click.option("--window", default=None, metavar="LO..HI", help="Report z-coefficients in this exponent window.")
@click.argument("orders", nargs=-1, type=click.IntRange(min=0), required=True)
@click.pass_context
def field_state_cmd(ctx, as_json, config_path, order, depth, twisted, window, orders):
    """Normal ordered word of derivative orders d1 d2 ... applied to the vacuum.

    Without --window, prints the z^0 coefficient (the state of the word).
    """
    _setup(ctx, as_json, config_path, order, depth)
    w = FieldWord.of(orders, twisted)
    win = _parse_window(window)
    if win is None:
        out = field_state(w)
        _emit(ctx, _element_payload("field-state", out), str(out))
        return
    coeffs = normal_ordered_apply(w, vacuum(twisted), win)
    rows = [{"exponent": str(e), "result": v.to_json(), "text": str(v)} for e, v in sorted(coeffs.items())]
    text = "\n".join(f"z^{e}: {v}" for e, v in sorted(coeffs.items())) or "0"
    _emit(ctx, {"command": "field-state", "window": [str(x) for x in win], "result": rows}, text)


@cli.command("twisted-bullet")
@common_options
@click.argument("orders", nargs=-1, type=click.IntRange(min=0), required=True)
@click.pass_context
def twisted_bullet_cmd(ctx, as_json, config_path, order, depth, orders):
    """State EQ_{r^-1}(x_{d1+1} ...) of a twisted word under the log-sqrt series bicharacter."""
    _setup(ctx, as_json, config_path, order, depth)
    depth = depth or max(orders) + 1
    order = order if order is not None else 2 * depth
    r = fock_bicharacter(flm_series(order), depth)
    out = twisted_bullet_state(FieldWord.of(orders, True), r)
    _emit(ctx, _element_payload("twisted-bullet", out), str(out))


@cli.command("verify")
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, show_default=True)
@click.option("--cases", type=click.IntRange(min=1), default=200, show_default=True)
@click.option("--suite", "suites", multiple=True, type=click.Choice([*verify_mod.SUITES, "heisenberg"]))
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def verify_cmd(ctx, seed, cases, suites, as_json):
    """Run the property suites with seeded random cases."""
    ctx.ensure_object(dict)
    ctx.obj["json"] = as_json
    results = verify_mod.run_all(seed=seed, cases=cases, names=suites or None)
    payload = {
        "command": "verify",
        "seed": seed,
        "suites": [
            {"name": r.name, "passed": r.passed, "cases": r.cases, "failures": r.failures[:5]}
            for r in results
        ],
    }
    lines = [r.line() for r in results]
    for r in results:
        lines += [f"  {f}" for f in r.failures[:5]]
    _emit(ctx, payload, "\n".join(lines))
    if not all(r.passed for r in results):
        raise VerifyFailed("some suites failed")


def _report_error(kind: str, message: str, as_json: bool) -> None:
    if as_json:
        click.echo(json.dumps({"error": {"type": kind, "message": message}}, sort_keys=True), err=True)
    else:
        click.echo(f"error[{kind}]: {message}", err=True)


def main(argv=None) -> int:
    args = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in args
    try:
        cli.main(args=args, prog_name="bichar", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.Abort:
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except VerifyFailed:
        return EXIT_VERIFY
    except USAGE_ERRORS as exc:
        _report_error(type(exc).__name__, str(exc), as_json)
        return EXIT_USAGE
    except BicharError as exc:
        _report_error(type(exc).__name__, str(exc), as_json)
        return EXIT_DOMAIN
    except ValueError as exc:
        _report_error("ValueError", str(exc), as_json)
        return EXIT_USAGE
    return EXIT_OK


def run() -> None:
    sys.exit(main())


__all__ = ["cli", "main", "run"]
