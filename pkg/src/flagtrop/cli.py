"""Command line front end.

A thin client over the HTTP service: by default the requests run against
the FastAPI app in-process (no server needed); --server points them at a
running instance instead.  Exit codes: 0 success, 1 domain error (the
error JSON is printed), 2 usage error.
"""

from __future__ import annotations

import json
import sys

import click
import httpx


def _client(server):
    if server:
        return httpx.Client(base_url=server, timeout=None)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service import app

    return TestClient(app, raise_server_exceptions=False)


def _call(ctx, path, payload):
    with _client(ctx.obj.get("server")) as client:
        r = client.post(path, json=payload)
    try:
        data = r.json()
    except ValueError:
        click.echo(json.dumps({"error": "BadResponse", "message": r.text}))
        sys.exit(1)
    if r.status_code != 200:
        if "error" not in data:  # e.g. pydantic validation detail
            data = {"error": "ValidationError", "message": json.dumps(data)}
        click.echo(json.dumps(data))
        sys.exit(1)
    return data


def _emit(data, fmt, text_fn):
    if fmt == "json":
        click.echo(json.dumps(data, indent=2, sort_keys=True))
    else:
        click.echo(text_fn(data))


fmt_option = click.option(
    "--format",
    "fmt",
    type=click.Choice(["json", "text"]),
    default="text",
    show_default=True,
)
n_option = click.option("--n", type=int, required=True)
weight_option = click.option(
    "--weight",
    required=True,
    help='lift "7,5,0" or fundamental coefficients "2w1+5w2"',
)
word_option = click.option(
    "--word", required=True, help='reduced word, e.g. "212"'
)


@click.group()
@click.option("--server", default=None, help="base URL of a running service")
@click.pass_context
def main(ctx, server):
    """Tropical critical points, polytopes, and canonical sections."""
    ctx.ensure_object(dict)
    ctx.obj["server"] = server


@main.command()
@n_option
@weight_option
@click.option("--dot", is_flag=True, help="also print the quiver in DOT form")
@fmt_option
@click.pass_context
def tropical(ctx, n, weight, dot, fmt):
    """Arrow values of the tropical critical point."""
    data = _call(ctx, "/tropical", {"n": n, "weight": weight})
    if dot:
        data["dot"] = _call(ctx, "/quiver", {"n": n})["dot"]

    def text(d):
        lines = ["arrow  sigma"]
        for name, v in d["sigma"].items():
            lines.append(f"{name:<6} {v}")
        if "sigma_letters" in d:
            lines.append("letters (a..f): " + " ".join(d["sigma_letters"]))
        if "dot" in d:
            lines.append(d["dot"])
        return "\n".join(lines)

    _emit(data, fmt, text)


@main.command()
@n_option
@weight_option
@fmt_option
@click.pass_context
def filling(ctx, n, weight, fmt):
    """Ideal filling of the weight."""
    data = _call(ctx, "/filling", {"n": n, "weight": weight})
    _emit(data, fmt, lambda d: d["pretty"] + f"\nis_integral: {d['is_integral']}")


@main.command()
@n_option
@weight_option
@fmt_option
@click.pass_context
def integral(ctx, n, weight, fmt):
    """Integrality of the tropical critical point."""
    data = _call(ctx, "/integral", {"n": n, "weight": weight})
    _emit(data, fmt, lambda d: f"integral: {d['integral']}\n" + d["pretty"])


@main.command()
@n_option
@weight_option
@fmt_option
@click.pass_context
def chain(ctx, n, weight, fmt):
    """Chain decomposition into parabolic weights."""
    data = _call(ctx, "/chain", {"n": n, "weight": weight})

    def text(d):
        return "\n".join(
            f"I_P={c['I_P']}  coefficient={c['coefficient']}"
            for c in d["chain"]
        ) or "(empty chain)"

    _emit(data, fmt, text)


@main.command()
@n_option
@weight_option
@click.option("--truncation", "-K", "k", type=int, default=None,
              help="truncation order (env FLAGTROP_PUISEUX_K overrides default)")
@fmt_option
@click.pass_context
def puiseux(ctx, n, weight, k, fmt):
    """Puiseux expansion of the critical point."""
    data = _call(ctx, "/puiseux", {"n": n, "weight": weight, "K": k})

    def text(d):
        lines = [f"grid denominator: {d['grid_denominator']}",
                 f"truncation order: {d['truncation_order']}",
                 f"residual: {d['residual']:.3e}"]
        for name, s in d["pretty"].items():
            lines.append(f"{name}: {s}")
        return "\n".join(lines)

    _emit(data, fmt, text)


@main.command("string-polytope")
@n_option
@weight_option
@word_option
@fmt_option
@click.pass_context
def string_polytope_cmd(ctx, n, weight, word, fmt):
    """Inequalities and lattice points of the string polytope."""
    data = _call(
        ctx, "/string-polytope", {"n": n, "weight": weight, "word": word}
    )

    def text(d):
        lines = [f"inequalities ({len(d['A'])}):"]
        for row, b in zip(d["A"], d["b"]):
            lines.append(f"  {row} . c + {b} >= 0")
        lines.append(f"lattice points ({len(d['lattice_points'])}):")
        for p in d["lattice_points"]:
            lines.append(f"  {tuple(p)}")
        return "\n".join(lines)

    _emit(data, fmt, text)


@main.command("nu-vee")
@n_option
@weight_option
@word_option
@fmt_option
@click.pass_context
def nu_vee_cmd(ctx, n, weight, word, fmt):
    """Valuation of the critical point in the word chart."""
    data = _call(ctx, "/nu-vee", {"n": n, "weight": weight, "word": word})
    _emit(data, fmt, lambda d: "nu_vee: (" + ", ".join(d["nu_vee"]) + ")")


@main.command("nu")
@n_option
@weight_option
@word_option
@fmt_option
@click.pass_context
def nu_cmd(ctx, n, weight, word, fmt):
    """Valuation of the canonical section."""
    data = _call(ctx, "/nu", {"n": n, "weight": weight, "word": word})
    _emit(
        data,
        fmt,
        lambda d: f"omega_inv: {d['omega_inv']}\nnu: {tuple(d['nu'])}",
    )


@main.command("borel-weil")
@n_option
@weight_option
@word_option
@fmt_option
@click.pass_context
def borel_weil_cmd(ctx, n, weight, word, fmt):
    """Valuation image of the full section space."""
    data = _call(ctx, "/borel-weil", {"n": n, "weight": weight, "word": word})
    _emit(
        data,
        fmt,
        lambda d: "\n".join(str(tuple(p)) for p in d["points"]),
    )


@main.command()
@n_option
@weight_option
@word_option
@fmt_option
@click.pass_context
def conjecture(ctx, n, weight, word, fmt):
    """Compare nu and nu_vee for one weight and word."""
    data = _call(ctx, "/conjecture", {"n": n, "weight": weight, "word": word})

    def text(d):
        lines = [
            f"nu:     {d['nu']}",
            f"nu_vee: {d['nu_vee']}",
            f"equal:  {d['equal']}",
        ]
        for e in d["errors"]:
            lines.append(f"error: {e}")
        return "\n".join(lines)

    _emit(data, fmt, text)


@main.command()
@n_option
@weight_option
@click.option("--point", default=None,
              help="comma-separated coordinates; default: ideal-filling point")
@fmt_option
@click.pass_context
def ffl(ctx, n, weight, point, fmt):
    """Membership in the FFL polytope."""
    payload = {"n": n, "weight": weight}
    if point is not None:
        payload["point"] = [p.strip() for p in point.split(",")]
    data = _call(ctx, "/ffl", payload)

    def text(d):
        lines = [f"member: {d['member']}"]
        for v in d["violations"]:
            lines.append("violated: " + " ".join(v))
        return "\n".join(lines)

    _emit(data, fmt, text)


@main.command()
@n_option
@click.option("--max-coeff", type=int, required=True)
@click.option("--word", default="all", show_default=True,
              help='"all" or one reduced word like "212"')
@click.option("--workers", type=int, default=None)
@fmt_option
@click.pass_context
def sweep(ctx, n, max_coeff, word, workers, fmt):
    """Grid sweep of conjecture checks; failures collected, not fail-fast."""
    payload = {"n": n, "max_coeff": max_coeff, "workers": workers}
    if word != "all":
        payload["words"] = [[int(c) for c in word.replace(",", "")]]
    data = _call(ctx, "/sweep", payload)

    def text(d):
        lines = []
        for r in d["reports"]:
            lines.append(json.dumps(r, sort_keys=True))
        lines.append(
            f"cases={d['cases']} verified={d['verified']} "
            f"failures={len(d['failures'])}"
        )
        for r in d["failures"]:
            tag = "unequal" if r["equal"] is False else "; ".join(r["errors"])
            lines.append(f"  failure lambda={r['lambda']} word={r['word']}: {tag}")
        return "\n".join(lines)

    _emit(data, fmt, text)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
