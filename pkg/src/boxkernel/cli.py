"""Command-line front end: kernel evaluation, method comparison, verification
suites, and convergence sweeps, with CSV or human-readable output.

Exit codes
----------
0   success; every requested check passed its tolerance
1   at least one requested check exceeded its tolerance
2   usage error (malformed flags)
3   domain error (theta outside (0, pi), lambda <= 0, nu < 1/2)
4   spectral truncation policy unresolvable (term cap reached)

Output is deterministic: identical invocations produce byte-identical
output, floats are printed with 17 significant digits, and CSV row order
follows the grid order, never completion order.
"""

import argparse
import math
import sys

from .errors import DomainError, PolicyUnresolvableError, require_lambda, require_nu, require_theta
from .pathsum import PathSumConfig, kernel_pathsum_general, kernel_pathsum_nu2, reflection_phase
from .spectral import TruncationPolicy, kernel_spectral
from .verify import (
    EvalConfig,
    METHODS,
    check_gaussian_bessel_link,
    check_orthonormality,
    check_semigroup,
    compare_methods,
    evaluate_method,
    gauss_legendre_on_0_pi,
)
from .closedform import addition_formula_lhs, addition_formula_rhs

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_POLICY = 4

_METHOD_ALIASES = {
    "spectral": "spectral",
    "closed": "closed_form",
    "closed-form": "closed_form",
    "closed_form": "closed_form",
    "pathsum-nu1": "path_sum_nu1",
    "path-sum-nu1": "path_sum_nu1",
    "path_sum_nu1": "path_sum_nu1",
    "pathsum_nu1": "path_sum_nu1",
    "pathsum-nu2": "path_sum_nu2",
    "path-sum-nu2": "path_sum_nu2",
    "path_sum_nu2": "path_sum_nu2",
    "pathsum_nu2": "path_sum_nu2",
    "pathsum-general": "path_sum_general",
    "path-sum-general": "path_sum_general",
    "path_sum_general": "path_sum_general",
    "pathsum_general": "path_sum_general",
}

_SUITES = (
    "orthonormality",
    "addition",
    "bessel-link",
    "nu1-exact",
    "phases",
    "nu2-decomposition",
    "general-decomposition",
    "semigroup",
    "closed-form-order",
)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _parse_method(label: str) -> str:
    key = label.strip().lower()
    if key not in _METHOD_ALIASES:
        raise DomainError(f"unknown method {label!r}; expected one of {', '.join(sorted(set(_METHOD_ALIASES)))}")
    return _METHOD_ALIASES[key]


def _parse_chain(text: str) -> list[float]:
    try:
        chain = [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise DomainError(f"--lambda-chain must be comma-separated floats: {exc}") from None
    if not chain:
        raise DomainError("--lambda-chain is empty")
    return chain


def _emit(lines: list[str], path: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _eval_config(args) -> EvalConfig:
    if args.n_terms is not None:
        policy = TruncationPolicy.fixed(args.n_terms)
    else:
        policy = TruncationPolicy.to_tail(args.epsilon_tail, args.n_cap)
    return EvalConfig(policy=policy, path=PathSumConfig(k_max=args.k_max, prescription=args.prescription))


def _add_eval_flags(sub) -> None:
    sub.add_argument("--n-terms", type=int, default=None, help="fixed spectral term count (default: resolve from --epsilon-tail)")
    sub.add_argument("--epsilon-tail", type=float, default=1e-12, help="spectral tail target (default 1e-12)")
    sub.add_argument("--n-cap", type=int, default=4096, help="spectral term cap (default 4096)")
    sub.add_argument("--k-max", type=int, default=8, help="reflection sum truncation |k| <= k_max (default 8)")
    sub.add_argument("--prescription", choices=("A", "B"), default="A", help="reflection phase prescription (default A)")
    sub.add_argument("--output", choices=("csv", "pretty"), default="pretty", help="output format")
    sub.add_argument("--output-path", default=None, help="write output to a file instead of stdout")


def _grid_points(args) -> list[tuple[float, float]]:
    if args.grid_n is not None:
        if args.grid_n < 1:
            raise DomainError("--grid-n must be >= 1")
        margin = args.grid_margin
        if not (0.0 < margin < math.pi / 2.0):
            raise DomainError("--grid-margin must lie in (0, pi/2)")
        step = (math.pi - 2.0 * margin) / (args.grid_n - 1) if args.grid_n > 1 else 0.0
        axis = [margin + i * step for i in range(args.grid_n)]
        return [(a, b) for a in axis for b in axis]
    if args.theta is None or args.theta_p is None:
        raise DomainError("provide either --grid-n or both --theta and --theta-p")
    return [(args.theta, args.theta_p)]


def _cmd_kernel(args) -> int:
    nu = require_nu(args.nu)
    theta = require_theta(args.theta, "--theta")
    theta_p = require_theta(args.theta_p, "--theta-p")
    lam = require_lambda(args.lam, "--lambda")
    method = _parse_method(args.method)
    est = evaluate_method(method, nu, theta, theta_p, lam, _eval_config(args))
    if args.output == "csv":
        lines = ["value_re,value_im", f"{_fmt(est.value.real)},{_fmt(est.value.imag)}"]
    else:
        lines = [
            f"method: {est.method}",
            f"value_re: {_fmt(est.value.real)}",
            f"value_im: {_fmt(est.value.imag)}",
            f"terms_used: {est.terms_used}",
        ]
        if est.tail_bound is not None:
            lines.append(f"tail_bound: {_fmt(est.tail_bound)}")
        if est.near_boundary:
            lines.append("near_boundary: true")
    _emit(lines, args.output_path)
    return EXIT_OK


_COMPARE_HEADER = (
    "theta,theta_p,lambda,method_a,method_b,"
    "value_a_re,value_a_im,value_b_re,value_b_im,abs_dev,rel_dev"
)


def _compare_csv(report) -> list[str]:
    lines = [_COMPARE_HEADER]
    for (theta, theta_p, lam), va, vb, ad, rd in zip(
        report.grid, report.value_a, report.value_b, report.abs_dev, report.rel_dev
    ):
        lines.append(
            f"{_fmt(theta)},{_fmt(theta_p)},{_fmt(lam)},{report.method_a},{report.method_b},"
            f"{_fmt(va.real)},{_fmt(va.imag)},{_fmt(vb.real)},{_fmt(vb.imag)},{_fmt(ad)},{_fmt(rd)}"
        )
    return lines


def _run_comparison(args) -> tuple:
    nu = require_nu(args.nu)
    methods = [_parse_method(m) for m in args.methods.split(",") if m.strip()]
    if len(methods) != 2:
        raise DomainError("--methods needs exactly two comma-separated method tags")
    chain = [require_lambda(l, "--lambda-chain") for l in _parse_chain(args.lambda_chain)]
    grid = [
        (require_theta(a, "--theta/--grid-n"), require_theta(b, "--theta-p/--grid-n"))
        for a, b in _grid_points(args)
    ]
    report = compare_methods(nu, grid, chain, methods[0], methods[1], _eval_config(args))
    return report, chain


def _cmd_compare(args) -> int:
    report, _ = _run_comparison(args)
    if args.output == "csv":
        lines = _compare_csv(report)
    else:
        lines = [
            f"compare {report.method_a} vs {report.method_b}: {len(report.grid)} rows",
            f"max_abs_dev: {_fmt(report.max_abs_dev)}",
            f"max_rel_dev: {_fmt(report.max_rel_dev)}",
        ]
        if report.convergence_ratios is not None:
            lines.append("convergence_ratios: " + ",".join(_fmt(r) for r in report.convergence_ratios))
    _emit(lines, args.output_path)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    report, chain = _run_comparison(args)
    rows_per_lambda = len(report.grid) // len(chain)
    per_lambda_rel = []
    per_lambda_abs = []
    for i in range(len(chain)):
        block = slice(i * rows_per_lambda, (i + 1) * rows_per_lambda)
        per_lambda_rel.append(max(report.rel_dev[block]))
        per_lambda_abs.append(max(report.abs_dev[block]))
    lines = ["lambda,max_abs_dev,max_rel_dev,ratio"]
    for i, lam in enumerate(chain):
        ratio = "" if i == 0 else _fmt(per_lambda_rel[i - 1] / per_lambda_rel[i]) if per_lambda_rel[i] > 0 else "inf"
        lines.append(f"{_fmt(lam)},{_fmt(per_lambda_abs[i])},{_fmt(per_lambda_rel[i])},{ratio}")
    if args.output == "pretty":
        lines = ["sweep " + report.method_a + " vs " + report.method_b] + lines
    _emit(lines, args.output_path)
    return EXIT_OK


def _verify_rows(suites, nu: float, config: EvalConfig):
    """Run the requested invariant suites; yield (suite, check, measured, tolerance, passed)."""
    canonical_points = ((1.0, 1.0), (0.7, 0.9), (2.0, 1.4))
    if "orthonormality" in suites:
        rule = gauss_legendre_on_0_pi(2 * 40 + 30)
        dev = check_orthonormality(nu, 40, rule)
        yield ("orthonormality", f"gram nmax=40 nu={nu:g}", dev, 1e-10, dev <= 1e-10)
    if "addition" in suites:
        import numpy as np

        rng = np.random.default_rng(20240)
        worst = 0.0
        for _ in range(40):
            snu = rng.uniform(0.5, 4.0)
            lam = 1.0 / rng.uniform(0.5, 100.0)
            ta = rng.uniform(0.2, math.pi - 0.2)
            delta = rng.uniform(-1.0, 1.0) * min(1.0, 3.0 * math.sqrt(lam))
            tb = min(max(ta + delta, 0.1), math.pi - 0.1)
            lhs = addition_formula_lhs(snu, ta, tb, lam)
            rhs = addition_formula_rhs(snu, ta, tb, lam)
            worst = max(worst, abs(lhs - rhs) / abs(rhs))
        yield ("addition", "lhs vs rhs, 40 samples", worst, 1e-8, worst <= 1e-8)
    if "bessel-link" in suites:
        dev0 = check_gaussian_bessel_link(0, 0.5, 0.01)
        yield ("bessel-link", "n=0 nu=1/2 lambda=0.01", dev0, 1e-3, dev0 <= 1e-3)
        devs = [check_gaussian_bessel_link(0, nu, lam) for lam in (0.1, 0.05, 0.025)]
        mono = devs[0] > devs[1] > devs[2]
        yield ("bessel-link", f"decreasing in lambda at nu={nu:g}", devs[-1], math.inf, mono)
    if "nu1-exact" in suites:
        worst = 0.0
        grid = [math.pi * i / 10.0 for i in range(1, 10)]
        for lam in (0.1, 0.5, 2.0):
            for ta in grid:
                for tb in grid:
                    s = kernel_spectral(1.0, ta, tb, lam, config.policy).real
                    p = evaluate_method("path_sum_nu1", 1.0, ta, tb, lam, config).value.real
                    worst = max(worst, abs(s - p))
        yield ("nu1-exact", "max |spectral - images|, 9x9 grid", worst, 1e-10, worst <= 1e-10)
    if "phases" in suites:
        exact = True
        for inu in (1, 2, 3, 4, 5):
            expect = -1.0 if inu % 2 else 1.0
            for presc in ("A", "B"):
                for k in range(-3, 4):
                    if reflection_phase(k, "even", float(inu), presc) != 1.0 + 0.0j:
                        exact = False
                    if reflection_phase(k, "odd", float(inu), presc) != complex(expect, 0.0):
                        exact = False
        yield ("phases", "integer-nu collapse, both prescriptions", 0.0 if exact else 1.0, 0.0, exact)
    if "nu2-decomposition" in suites:
        ok = True
        worst_final = 0.0
        for ta, tb in canonical_points:
            devs = []
            for lam in (0.4, 0.2, 0.1, 0.05):
                s = kernel_spectral(2.0, ta, tb, lam, config.policy).real
                p = kernel_pathsum_nu2(ta, tb, lam, config.path).value.real
                devs.append(abs(s - p) / abs(s))
            ok = ok and all(devs[i] > devs[i + 1] for i in range(len(devs) - 1))
            worst_final = max(worst_final, devs[-1])
            g = kernel_pathsum_general(2.0, ta, tb, 0.1, config.path).value
            p = kernel_pathsum_nu2(ta, tb, 0.1, config.path).value
            ok = ok and (g == p)
        yield ("nu2-decomposition", "monotone + exact nu2==general", worst_final, math.inf, ok)
    if "general-decomposition" in suites:
        ok = True
        for gnu in (0.75, 1.3, 2.5):
            for ta, tb in canonical_points:
                devs, imre = [], []
                for lam in (0.4, 0.2, 0.1, 0.05):
                    s = kernel_spectral(gnu, ta, tb, lam, config.policy).real
                    v = kernel_pathsum_general(gnu, ta, tb, lam, config.path).value
                    devs.append(abs(v.real - s) / abs(s))
                    imre.append(abs(v.imag) / abs(v.real))
                ok = ok and all(devs[i] > devs[i + 1] for i in range(len(devs) - 1))
                ok = ok and all(imre[i] > imre[i + 1] for i in range(len(imre) - 1))
        yield ("general-decomposition", "Re dev and |Im/Re| decreasing", 0.0 if ok else 1.0, math.inf, ok)
    if "semigroup" in suites:
        rule = gauss_legendre_on_0_pi(160)
        worst = 0.0
        for l1, l2 in ((0.5, 0.5), (0.3, 0.7)):
            worst = max(worst, check_semigroup(nu, l1, l2, 1.1, 2.0, rule, config.policy))
        yield ("semigroup", f"composition nu={nu:g}", worst, 1e-8, worst <= 1e-8)
    if "closed-form-order" in suites:
        ok = True
        worst = []
        for cnu, th, chain in ((1.0, 0.7, (0.4, 0.2, 0.1, 0.05)),
                               (2.0, 1.2, (0.4, 0.2, 0.1, 0.05)),
                               (3.0, 1.2, (0.2, 0.1, 0.05, 0.025))):
            devs = []
            for lam in chain:
                s = kernel_spectral(cnu, th, th, lam, config.policy).real
                c = evaluate_method("closed_form", cnu, th, th, lam, config).value.real
                devs.append(abs(c - s) / abs(s))
            ratios = [devs[i] / devs[i + 1] for i in range(len(devs) - 1)]
            worst.extend(ratios)
            ok = ok and all(2.0 <= r <= 8.0 for r in ratios)
        yield ("closed-form-order", "halving ratios in [2, 8]", min(worst), math.inf, ok)


def _cmd_verify(args) -> int:
    nu = require_nu(args.nu)
    suites = _SUITES if args.suite == "all" else (args.suite,)
    config = _eval_config(args)
    rows = list(_verify_rows(suites, nu, config))
    all_pass = all(r[4] for r in rows)
    if args.output == "csv":
        lines = ["suite,check,measured,tolerance,status"]
        for suite, check, measured, tol, passed in rows:
            tol_text = "" if math.isinf(tol) else _fmt(tol)
            lines.append(f"{suite},\"{check}\",{_fmt(measured)},{tol_text},{'pass' if passed else 'FAIL'}")
    else:
        lines = []
        for suite, check, measured, tol, passed in rows:
            tol_text = "structural" if math.isinf(tol) else _fmt(tol)
            lines.append(
                f"[{'pass' if passed else 'FAIL'}] {suite}: {check} "
                f"(measured {measured:.3e}, tolerance {tol_text})"
            )
        lines.append("all suites passed" if all_pass else "FAILURES detected")
    _emit(lines, args.output_path)
    return EXIT_OK if all_pass else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boxkernel",
        description="Euclidean kernels for a particle in a box with an inverse-sine-squared potential.",
        epilog=(
            "exit codes: 0 ok; 1 check failed; 2 usage error; "
            "3 domain error (theta outside (0,pi), lambda <= 0, nu < 1/2); "
            "4 spectral truncation cap reached"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_kernel = sub.add_parser("kernel", help="evaluate one kernel value")
    p_kernel.add_argument("--nu", type=float, required=True)
    p_kernel.add_argument("--lambda", dest="lam", type=float, required=True)
    p_kernel.add_argument("--theta", type=float, required=True)
    p_kernel.add_argument("--theta-p", type=float, required=True)
    p_kernel.add_argument("--method", required=True, help="spectral | closed-form | pathsum-nu1 | pathsum-nu2 | pathsum-general")
    _add_eval_flags(p_kernel)
    p_kernel.set_defaults(func=_cmd_kernel)

    for name, helptext, func in (
        ("compare", "compare two methods over a grid and lambda chain", _cmd_compare),
        ("sweep", "lambda-chain deviations and convergence ratios", _cmd_sweep),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--nu", type=float, required=True)
        p.add_argument("--methods", required=True, help="two comma-separated method tags")
        p.add_argument("--lambda-chain", required=True, help="comma-separated, strictly decreasing")
        p.add_argument("--theta", type=float, default=None)
        p.add_argument("--theta-p", type=float, default=None)
        p.add_argument("--grid-n", type=int, default=None, help="use an N x N interior grid instead of a single point")
        p.add_argument("--grid-margin", type=float, default=math.pi / 10.0, help="grid inset from the walls")
        _add_eval_flags(p)
        p.set_defaults(func=func)

    p_verify = sub.add_parser("verify", help="run the invariant suites and print a pass/fail table")
    p_verify.add_argument("--suite", choices=("all",) + _SUITES, default="all")
    p_verify.add_argument("--nu", type=float, default=1.0, help="coupling for the nu-parameterised suites (default 1)")
    _add_eval_flags(p_verify)
    p_verify.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except PolicyUnresolvableError as exc:
        print(f"truncation policy unresolvable: {exc}", file=sys.stderr)
        return EXIT_POLICY


if __name__ == "__main__":
    sys.exit(main())
