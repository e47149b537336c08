"""Command-line surface: reproducible, machine-readable batch commands.

Exit codes: 0 ok, 1 computation failure (snap/calibration/verification), 2
usage error. Identical config and seed produce byte-identical output
regardless of parallelism degree; JSON is emitted with sorted keys and CSV
rows in ascending parameter order.
"""

from __future__ import annotations

import csv
import io
import json
import random
import sys
from fractions import Fraction

import click

from . import __version__
from .analytic_hgm import clausen_complex_check, euler_period_check, ode_residual
from .character_sums import (CalibrationError, HpCalibration, SnapError,
                             calibrate_hp_weight, clausen_sweep, datum_table,
                             hp_sum)
from .curve_lab import (BabaGranath, ConicX6, GenLegendre, Hesse, JacobiQuartic,
                        Legendre, PicardSub, UniversalJ, baba_granath_qm_scan,
                        count_points, count_via_characters, frobenius_quartic_data)
from .field_core import FieldError, cached_ctx, is_prime
from .hgm_data import OO, hg_datum, level, row_by_signature, table_json, triangle_table
from .modform_oracle import FixtureError, fetch_fixture, load_fixture
from .trace_engine import (a_gamma_sweep, calibrate_legendre_relation,
                           fm_identity_holds, hecke_trace, legendre_cover_map)

SCHEMA_VERSION = 1


def _emit_json(payload: dict):
    click.echo(json.dumps(payload, indent=2, sort_keys=True, default=str))


def _parse_group(text: str):
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 3:
        raise click.UsageError(f"group must have three entries, got {text!r}")
    try:
        return row_by_signature(parts)
    except KeyError as exc:
        raise click.UsageError(str(exc))


def _parse_primes(prime, prime_range):
    if prime is not None and prime_range:
        raise click.UsageError("give either --prime or --prime-range")
    if prime is not None:
        return [prime]
    if prime_range:
        try:
            lo, hi = (int(x) for x in prime_range.split(":"))
        except ValueError:
            raise click.UsageError("--prime-range expects LO:HI")
        return [p for p in range(lo, hi + 1) if is_prime(p)]
    raise click.UsageError("a prime or prime range is required")


def _parse_fraction_list(text: str):
    return tuple(Fraction(s.strip()) for s in text.split(","))


@click.group()
@click.version_option(version=__version__, prog_name="hgtrace")
def main():
    """Finite-field hypergeometric character sums and Hecke trace reports."""


# ---------------------------------------------------------------------------
# trace


@main.command()
@click.option("--group", required=True, help="triangle-group signature, e.g. 2,4,6 or 2,3,oo")
@click.option("--weight", required=True, type=int, help="modular-form weight k+2 (even)")
@click.option("--prime", type=int, default=None)
@click.option("--prime-range", default=None, help="LO:HI inclusive")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.option("--parallelism", type=int, default=1)
def trace(group, weight, prime, prime_range, fmt, parallelism):
    """Hecke trace reports -Tr(T_p | S_weight) for a table row."""
    row = _parse_group(group)
    primes = _parse_primes(prime, prime_range)
    if weight % 2 or weight < 4:
        raise click.UsageError("--weight must be even and >= 4")
    k = weight - 2
    config = {"command": "trace", "group": row.name, "weight": weight,
              "primes": primes, "parallelism": parallelism,
              "schema_version": SCHEMA_VERSION}
    reports = []
    for p in primes:
        if (p - 1) % level(row.hd) or p <= 5:
            click.echo(f"skipping p = {p}: needs p > 5 with p = 1 mod "
                       f"{level(row.hd)}", err=True)
            continue
        try:
            rep = hecke_trace(row, cached_ctx(p), k, parallelism=parallelism)
        except (SnapError, CalibrationError) as exc:
            click.echo(f"computation failure at p = {p}: {exc}", err=True)
            sys.exit(1)
        reports.append(rep)
    if fmt == "json":
        _emit_json({"config": config, "reports": [r.to_json() for r in reports]})
    else:
        out = io.StringIO()
        w = csv.writer(out)
        w.writerow(["signature", "p", "weight", "generic_sum", "cusp_sum",
                    "elliptic_sum", "total", "partial", "oracle", "residual", "flags"])
        for r in reports:
            w.writerow([r.signature, r.p, r.weight, r.generic_sum, r.cusp_sum,
                        r.elliptic_sum, r.total, r.partial, r.oracle, r.residual,
                        ";".join(r.flags)])
        click.echo(out.getvalue().rstrip("\n"))


# ---------------------------------------------------------------------------
# sum


@main.group("sum")
def sum_group():
    """Raw character sums."""


@sum_group.command("np")
@click.option("--alpha", required=True, help="comma list of rationals, e.g. 1/2,1/2")
@click.option("--beta", required=True, help="comma list of rationals starting with 1")
@click.option("--prime", required=True, type=int)
@click.option("--lambda", "lam", required=True, type=int)
def sum_np(alpha, beta, prime, lam):
    """The period sum of the datum at lambda."""
    try:
        hd = hg_datum(_parse_fraction_list(alpha), _parse_fraction_list(beta))
        ctx = cached_ctx(prime)
        table = datum_table(hd, ctx)
    except (ValueError, FieldError) as exc:
        raise click.UsageError(str(exc))
    from .character_sums import AlgebraicValue, snap_tolerance
    val = AlgebraicValue.from_complex(table.raw_value(lam), snap_tolerance(prime, hd.n))
    _emit_json({"config": {"command": "sum np", "alpha": alpha, "beta": beta,
                           "prime": prime, "lambda": lam,
                           "schema_version": SCHEMA_VERSION},
                "value": {"re": val.z.real, "im": val.z.imag,
                          "snapped": val.snapped}})


@sum_group.command("hp")
@click.option("--group", required=True)
@click.option("--prime", required=True, type=int)
@click.option("--t", required=True, type=int)
def sum_hp(group, prime, t):
    """Calibrated H_p of a table row's datum at t."""
    row = _parse_group(group)
    try:
        ctx = cached_ctx(prime)
        calib = HpCalibration(sign=row.hp_sign, weight=row.hp_weight, primes=())
        val = hp_sum(row.hd, ctx, t, calibration=calib)
    except (FieldError, ValueError) as exc:
        click.echo(f"computation failure: {exc}", err=True)
        sys.exit(1)
    _emit_json({"config": {"command": "sum hp", "group": row.name, "prime": prime,
                           "t": t, "schema_version": SCHEMA_VERSION},
                "value": {"re": val.z.real, "im": val.z.imag,
                          "snapped": str(val.snapped)}})


# ---------------------------------------------------------------------------
# count


_FAMILIES = {
    "legendre": (Legendre, ("lam",)),
    "universal-j": (UniversalJ, ("j",)),
    "jacobi-quartic": (JacobiQuartic, ("sigma",)),
    "hesse": (Hesse, ("mu",)),
    "genlegendre": (GenLegendre, ("N", "a", "b", "c", "lam")),
    "picard": (PicardSub, ("lam",)),
    "baba-granath": (BabaGranath, ("j", "branch")),
    "conic": (ConicX6, ()),
}


def _lambda_selection(text: str, p: int) -> list[int]:
    """Lambda range notation: 'all', a single value, or a comma list."""
    if text is None:
        raise click.UsageError("--lambda required")
    if text.strip().lower() == "all":
        return list(range(p))
    try:
        return [int(s) % p for s in text.split(",")]
    except ValueError:
        raise click.UsageError(f"bad lambda selection {text!r}")


@main.command()
@click.argument("family", type=click.Choice(sorted(_FAMILIES)))
@click.option("--prime", required=True, type=int)
@click.option("--lambda", "lam", default=None,
              help="'all', a value, or a comma list")
@click.option("--j", type=int, default=None)
@click.option("--sigma", type=int, default=None)
@click.option("--mu", type=int, default=None)
@click.option("--n", "n_", type=int, default=None, help="superelliptic exponent N")
@click.option("--exps", default=None, help="a,b,c for genlegendre")
@click.option("--branch", type=int, default=1)
@click.option("--fp2", is_flag=True, help="count over F_{p^2} instead")
def count(family, prime, lam, j, sigma, mu, n_, exps, branch, fp2):
    """Brute-force point counts; CSV: family, params, p, q, n_points, trace, flags."""
    cls, names = _FAMILIES[family]
    base = {}
    lam_values = [None]
    for name in names:
        if name == "lam":
            lam_values = _lambda_selection(lam, prime)
        elif name == "j":
            if j is None:
                raise click.UsageError("--j required")
            base["j"] = j
        elif name == "sigma":
            if sigma is None:
                raise click.UsageError("--sigma required")
            base["sigma"] = sigma
        elif name == "mu":
            if mu is None:
                raise click.UsageError("--mu required")
            base["mu"] = mu
        elif name == "N":
            if n_ is None or exps is None:
                raise click.UsageError("--n and --exps required for genlegendre")
            base["N"] = n_
            a, b, c = (int(x) for x in exps.split(","))
            base.update(a=a, b=b, c=c)
        elif name == "branch":
            base["branch"] = branch
    rows = []
    try:
        ctx = cached_ctx(prime)
        fieldctx = ctx
        if fp2:
            from .field_core import build_quad_ext
            fieldctx = build_quad_ext(ctx)
        for lv in lam_values:
            kwargs = dict(base)
            if lv is not None:
                kwargs["lam"] = lv
            cc = count_points(cls(**kwargs), fieldctx)
            rows.append((kwargs, cc))
    except (FieldError, TypeError) as exc:
        click.echo(f"computation failure: {exc}", err=True)
        sys.exit(1)
    out = io.StringIO()
    w = csv.writer(out)
    w.writerow(["family", "params", "p", "q", "n_points", "trace", "flags"])
    for kwargs, cc in rows:
        w.writerow([family, json.dumps(kwargs, sort_keys=True), prime, cc.q,
                    cc.n_points, cc.trace, ";".join(cc.flags)])
    click.echo(out.getvalue().rstrip("\n"))


# ---------------------------------------------------------------------------
# verify


@main.command()
@click.argument("suite", type=click.Choice(
    ["clausen", "weil", "fm", "legendre", "genlegendre", "qm", "analytic", "all"]))
@click.option("--prime", type=int, default=None)
@click.option("--max-prime", type=int, default=61)
@click.option("--seed", type=int, default=0)
def verify(suite, prime, max_prime, seed):
    """Run an invariant suite; deterministic given the seed."""
    suites = [suite] if suite != "all" else ["clausen", "weil", "fm", "legendre",
                                             "genlegendre", "qm", "analytic"]
    results = []
    ok = True
    for name in suites:
        passed, detail = _run_suite(name, prime, max_prime, seed)
        results.append({"suite": name, "passed": passed, "detail": detail})
        ok = ok and passed
    _emit_json({"config": {"command": "verify", "suite": suite, "prime": prime,
                           "max_prime": max_prime, "seed": seed,
                           "schema_version": SCHEMA_VERSION},
                "results": results})
    sys.exit(0 if ok else 1)


def _run_suite(name, prime, max_prime, seed):
    rng = random.Random(seed)
    if name == "clausen":
        primes = [prime] if prime else [11, 13]
        bad = 0
        total = 0
        for p in primes:
            for rep in clausen_sweep(cached_ctx(p)):
                total += 1
                if rep.passed is False:
                    bad += 1
        return bad == 0, f"{total} admissible checks, {bad} failures over {primes}"
    if name == "fm":
        for m in range(1, 11):
            for _ in range(100):
                u, v = rng.randint(-50, 50), rng.randint(-50, 50)
                if not fm_identity_holds(m, u, v):
                    return False, f"identity fails at m={m}, ({u},{v})"
        return True, "m <= 10, 100 random pairs each"
    if name == "weil":
        bad = []
        from .character_sums import al_square_decompose
        for row in triangle_table():
            M = level(row.hd)
            for p in [q for q in range(7, max_prime + 1) if is_prime(q) and (q - 1) % M == 0]:
                avals = a_gamma_sweep(row, cached_ctx(p))
                for lam, a in avals.items():
                    if al_square_decompose(a, p, row.al_divisors) is None:
                        bad.append((row.name, p, lam, a))
        return not bad, f"{len(bad)} violations" + (f", first {bad[:3]}" if bad else "")
    if name == "legendre":
        calib = calibrate_legendre_relation()
        cover = legendre_cover_map(calib.map_label)
        row = row_by_signature((2, OO, OO))
        from .curve_lab import legendre_trace_sweep
        for p in [q for q in range(7, max_prime + 1) if is_prime(q)]:
            ctx = cached_ctx(p)
            a_row = a_gamma_sweep(row, ctx)
            a_e = legendre_trace_sweep(ctx)
            specials = row.finite_specials_mod_p(p)
            for lamp in range(2, p):
                target = cover(lamp, p, ctx.inv)
                if target in specials:
                    continue
                if a_row[target] != int(a_e[lamp]) ** 2 - p:
                    return False, f"mismatch p={p} lam'={lamp}"
        return True, f"map {calib.map_label}, all odd p <= {max_prime}"
    if name == "genlegendre":
        primes = [prime] if prime else [7, 13, 19]
        for p in primes:
            ctx = cached_ctx(p)
            for lam in range(2, p):
                direct = count_points(GenLegendre(6, 4, 3, 1, lam), ctx)
                chars, _sums, _new = count_via_characters(ctx, 6, 4, 3, 1, lam)
                if direct.n_points != chars.n_points:
                    return False, f"count mismatch p={p} lam={lam}"
        return True, f"both methods agree over {primes}"
    if name == "qm":
        primes = [prime] if prime else [29]
        found = 0
        for p in primes:
            ctx = cached_ctx(p)
            for j in range(1, p):
                for branch, res in baba_granath_qm_scan(ctx, j):
                    if res.passed:
                        found += 1
        return found > 0, f"{found} passing (j, branch) pairs over {primes}"
    if name == "analytic":
        rows = _analytic_rows()
        bad = [r for r in rows if not r[-1]]
        return not bad, f"{len(rows)} checks, {len(bad)} failures"
    raise click.UsageError(f"unknown suite {name}")


def _analytic_rows():
    rows = []
    for row in triangle_table():
        r = ode_residual(row.hd, 0.3, 80)
        rows.append(("ode", row.name, 0.3, r, r < 1e-10))
    for lam in (0.1, 0.3, 0.5, 0.7, 0.9):
        rep = euler_period_check(lam)
        tol = 1e-8 if lam <= 0.8 else 1e-6
        rows.append(("euler", "", lam, rep.difference, rep.difference < tol))
    rng = random.Random(0)
    for _ in range(20):
        a = Fraction(rng.randint(1, 5), rng.randint(6, 9))
        b = Fraction(rng.randint(1, 5), rng.randint(6, 11))
        t = rng.uniform(0.05, 0.45)
        rep = clausen_complex_check(a, b, t)
        rows.append(("clausen", f"{a},{b}", t, rep.difference, rep.difference < 1e-10))
    return rows


@main.command()
def analytic():
    """Analytic suite results as CSV."""
    out = io.StringIO()
    w = csv.writer(out)
    w.writerow(["check", "params", "t", "residual", "pass"])
    ok = True
    for row in _analytic_rows():
        w.writerow(row)
        ok = ok and row[-1]
    click.echo(out.getvalue().rstrip("\n"))
    sys.exit(0 if ok else 1)


# ---------------------------------------------------------------------------
# fixture / table / calibrate


@main.group()
def fixture():
    """Newform coefficient fixtures."""


@fixture.command("fetch")
@click.argument("label")
@click.option("--out", "out_path", default=None)
def fixture_fetch(label, out_path):
    """Fetch a fixture from the public database (opt-in network)."""
    out_path = out_path or f"{label}.json"
    try:
        fx = fetch_fixture(label, out_path)
    except FixtureError as exc:
        click.echo(str(exc), err=True)
        sys.exit(1)
    click.echo(f"wrote {out_path} ({len(fx.ap)} coefficients)")


@fixture.command("validate")
@click.argument("path")
def fixture_validate(path):
    try:
        fx = load_fixture(path)
    except (FixtureError, OSError, json.JSONDecodeError) as exc:
        click.echo(f"INVALID: {exc}", err=True)
        sys.exit(1)
    click.echo(f"OK: {fx.label} (level {fx.level}, weight {fx.weight}, "
               f"{len(fx.ap)} coefficients)")


@main.command()
@click.option("--format", "fmt", type=click.Choice(["json"]), default="json")
def table(fmt):
    """The five triangle-group rows with data and lambda charts."""
    click.echo(table_json())


@main.group()
def calibrate():
    """Calibration protocols (normalization, identifications)."""


@calibrate.command("hp")
@click.option("--group", required=True)
def calibrate_hp(group):
    row = _parse_group(group)
    try:
        calib = calibrate_hp_weight(row.hd)
    except CalibrationError as exc:
        click.echo(f"calibration failure: {exc}", err=True)
        sys.exit(1)
    agree = calib.sign == row.hp_sign and calib.weight == row.hp_weight
    _emit_json({"config": {"command": "calibrate hp", "group": row.name,
                           "schema_version": SCHEMA_VERSION},
                "sign": calib.sign, "weight": calib.weight,
                "primes": list(calib.primes), "matches_table": agree})
    if not agree:
        sys.exit(1)


@calibrate.command("legendre")
def calibrate_legendre():
    try:
        calib = calibrate_legendre_relation()
    except CalibrationError as exc:
        click.echo(f"calibration failure: {exc}", err=True)
        sys.exit(1)
    _emit_json({"config": {"command": "calibrate legendre",
                           "schema_version": SCHEMA_VERSION},
                "map": calib.map_label, "primes": list(calib.primes)})


@calibrate.command("bg-lambda")
@click.option("--prime", required=True, type=int)
def calibrate_bg_lambda(prime):
    """Research sweep: match the compact-row coordinate against the genus-2
    family parameter by comparing a_Gamma + p with the Frobenius square data.

    Reports the best linear match lambda = c * j; no outcome is asserted.
    """
    p = prime
    ctx = cached_ctx(p)
    row = row_by_signature((2, 4, 6))
    if (p - 1) % 12:
        raise click.UsageError("prime must be 1 mod 12")
    a_row = a_gamma_sweep(row, ctx)
    data = {}
    for j in range(1, p):
        try:
            _n1, _n2, s2 = frobenius_quartic_data(ctx, j)
        except FieldError:
            continue
        data[j] = s2 // 2  # candidate u^2 + ubar^2 up to sign
    best = None
    for c in range(1, p):
        hits = 0
        for j, T in data.items():
            lam = c * j % p
            if lam in a_row and a_row[lam] in (T + p, -T + p):
                hits += 1
        if best is None or hits > best[1]:
            best = (c, hits)
    _emit_json({"config": {"command": "calibrate bg-lambda", "prime": p,
                           "schema_version": SCHEMA_VERSION},
                "best_linear_map": {"c": best[0], "matches": best[1],
                                    "out_of": len(data)},
                "c_equals_81_over_16": best[0] == 81 * pow(16, p - 2, p) % p,
                "note": "research sweep; no outcome asserted"})


if __name__ == "__main__":
    main()
