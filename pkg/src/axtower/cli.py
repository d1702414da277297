"""Command-line front end.

Exit status: 0 on success, 1 on a domain error (its name is printed), 2 on
malformed input.  ``--machine`` switches to one ``key=value`` per line.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import apf, ax, cohomology as coh, twistrec as tw
from .errors import AxError, ParseError, SupportViolation
from .field import ResidueField
from .io import (dumps, load_element, load_json, parse_json_text, precision_override, relation_from_json,
                 sequence_from_json)
from .newton import has_integral_root, has_positive_valuation_root, newton_polygon
from .oracle import cyclotomic_oracle_oscillation
from .tower import TowerConfig
from .valuation import fmt_rational, parse_valuation


class Report:
    def __init__(self):
        self.lines: list[str] = []
        self.pairs: list[tuple[str, str]] = []

    def say(self, line: str):
        self.lines.append(line)

    def put(self, key: str, value):
        self.pairs.append((key, str(value)))

    def render(self, machine: bool) -> str:
        if machine:
            return "".join(f"{k}={v}\n" for k, v in self.pairs)
        return "".join(line + "\n" for line in self.lines)


def fmt_elems(xs) -> str:
    return " ".join(repr(x) for x in xs)


def fmt_relation(rel: tw.TwistRelation) -> str:
    return dumps(rel.to_json())


def fmt_bool(b: bool) -> str:
    return "true" if b else "false"


def fmt_digits(d: dict) -> str:
    return " ".join(f"{i}:{c!r}" for i, c in sorted(d.items())) or "0"


# --- argument helpers -------------------------------------------------------------

def _json_arg(value: str):
    """Inline JSON (starting with '[' or '{') or a path to a JSON file."""
    if value.lstrip().startswith(("[", "{")):
        return parse_json_text(value, "inline argument")
    return load_json(value)


def _field(args) -> ResidueField:
    try:
        if args.modulus:
            mod = tuple(int(c) for c in args.modulus.split(","))
            return ResidueField(args.p, len(mod) - 1, mod)
        return ResidueField.prime(args.p)
    except ValueError as exc:
        raise ParseError(f"bad field flags: {exc}") from None


def _config(args) -> TowerConfig:
    P = precision_override() or args.precision
    return TowerConfig(_field(args), 1, None, P)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}") from None


def _add_field_flags(sp, precision=False):
    sp.add_argument("--p", type=int, required=True, help="residue characteristic")
    sp.add_argument("--modulus", help="comma-separated monic modulus, low degree first (default: F_p)")
    if precision:
        sp.add_argument("--precision", type=int, default=12, help="precision_P for tower computations")


# --- ax-engine ------------------------------------------------------------------------

def cmd_osc(args, rep: Report):
    x = load_element(args.element)
    r = ax.galois_oscillation(x)
    rep.say(str(r.oscillation))
    rep.put("oscillation", r.oscillation)
    rep.put("argmin", "none" if r.argmin_index is None else r.argmin_index)
    for i, t in sorted(r.per_index_terms.items()):
        rep.put(f"term[{i}]", t)


def cmd_approx(args, rep: Report):
    x = load_element(args.element)
    y = ax.best_approximant(x, args.m)
    d = ax.approximation_defect(x, args.m)
    rep.say(str(d))
    rep.put("m", args.m)
    rep.put("defect", d)
    rep.put("approximant", dumps(y.to_json()))


def cmd_identity(args, rep: Report):
    x = load_element(args.element)
    lhs, rhs = ax.oscillation_identity(x)
    rep.say(f"lhs={lhs} rhs={rhs} {'OK' if lhs == rhs else 'MISMATCH'}")
    rep.put("lhs", lhs)
    rep.put("rhs", rhs)
    rep.put("agree", fmt_bool(lhs == rhs))


def cmd_oracle(args, rep: Report):
    x = load_element(args.element)
    v = cyclotomic_oracle_oscillation(x)
    formula = ax.galois_oscillation(x).oscillation
    rep.say(str(v))
    rep.put("oracle", v)
    rep.put("formula", formula)
    rep.put("agree", fmt_bool(v == formula))


def cmd_constants(args, rep: Report):
    opt, orig = ax.ax_constants(args.p, args.m)
    rep.say(f"optimal={fmt_rational(opt)} ax={fmt_rational(orig)}")
    rep.put("optimal", fmt_rational(opt))
    rep.put("ax", fmt_rational(orig))


def cmd_bound(args, rep: Report):
    x = load_element(args.element)
    a, b = ax.theorem_1_7_check(x, _rational(args.A))
    rep.say(f"oscillation>=A: {fmt_bool(a)} approximation: {fmt_bool(b)}")
    rep.put("oscillation_side", fmt_bool(a))
    rep.put("approximation_side", fmt_bool(b))


# --- apf ------------------------------------------------------------------------------

def cmd_apf(args, rep: Report):
    p, e, n = args.p, args.e, args.n
    breaks = [apf.ramification_break(j, p, e) for j in range(1, n + 1)]
    diff = apf.different_valuation(n, p, e)
    integral = apf.herbrand_integral_check(n, p, e)
    rep.say("breaks " + (" ".join(fmt_rational(b) for b in breaks) or "-"))
    rep.say(f"different derivative={fmt_rational(diff.derivative)} closed_form={fmt_rational(diff.closed_form)}")
    rep.say(f"integral={fmt_rational(integral)}")
    for j, b in enumerate(breaks, start=1):
        rep.put(f"mu[{j}]", fmt_rational(b))
    rep.put("different_derivative", fmt_rational(diff.derivative))
    rep.put("different_closed_form", fmt_rational(diff.closed_form))
    rep.put("integral", fmt_rational(integral))
    if diff.notice:
        rep.say(diff.notice)
        rep.put("notice", diff.notice)
    if integral != diff.derivative:
        notice = f"MISMATCH: integral {fmt_rational(integral)} != derivative {fmt_rational(diff.derivative)}"
        rep.say(notice)
        rep.put("integral_notice", notice)


# --- twistrec -------------------------------------------------------------------------

def cmd_twist_check(args, rep: Report):
    k = _field(args)
    seq = sequence_from_json(k, _json_arg(args.sequence))
    rel = relation_from_json(k, _json_arg(args.relation))
    ok = tw.check_relation(seq, rel)
    rep.say(fmt_bool(ok))
    rep.put("holds", fmt_bool(ok))


def cmd_twist_find(args, rep: Report):
    k = _field(args)
    seq = sequence_from_json(k, _json_arg(args.sequence))
    rel = tw.find_relation(seq, args.r_max)
    rep.say("none" if rel is None else fmt_relation(rel))
    rep.put("relation", "none" if rel is None else fmt_relation(rel))
    if rel is not None:
        rep.put("order", rel.order)


def cmd_twist_gen(args, rep: Report):
    k = _field(args)
    rel = relation_from_json(k, _json_arg(args.relation))
    seed = sequence_from_json(k, _json_arg(args.initial)).terms
    seq = tw.extend_sequence(rel, list(seed), args.count)
    rep.say(dumps(seq.to_json()))
    rep.put("sequence", dumps(seq.to_json()))


def cmd_twist_count(args, rep: Report):
    k = _field(args)
    rel = relation_from_json(k, _json_arg(args.relation))
    n = tw.solution_count(rel, args.length)
    rep.say(str(n))
    rep.put("count", n)


# --- cohomology -------------------------------------------------------------------------

def cmd_coh_validate(args, rep: Report):
    x = load_element(args.element)
    cls = coh.validate_invariant(x)
    osc = ax.galois_oscillation(x).oscillation
    v = cls.rep.valuation()
    rep.say(f"validated={fmt_bool(cls.validated)} oscillation={osc} valuation={v}")
    rep.put("validated", fmt_bool(cls.validated))
    rep.put("oscillation", osc)
    rep.put("valuation", v)


def _validated(path: str) -> coh.InvariantClass:
    cls = coh.validate_invariant(load_element(path))
    if not cls.validated:
        raise SupportViolation("element is not an invariant class (oscillation < 0)")
    return cls


def cmd_coh_psi(args, rep: Report):
    cls = _validated(args.element)
    count = args.count if args.count is not None else cls.level
    digits = coh.psi_digits(cls, count)
    if cls.config.e == 1:
        rep.say(fmt_elems(digits))
        rep.put("digits", dumps([d.to_json() for d in digits]))
    else:
        for j, fam in enumerate(digits, start=1):
            rep.say(f"j={j}: {fmt_elems(fam)}")
            rep.put(f"family[{j}]", dumps([d.to_json() for d in fam]))


def cmd_coh_torsion(args, rep: Report):
    cls = _validated(args.element)
    n = coh.torsion_check(cls)
    bound = coh.torsion_bound(cls.config.p, cls.config.e)
    rep.say(f"n={n} bound={bound}")
    rep.put("n", n)
    rep.put("bound", bound)


def cmd_coh_xiseq(args, rep: Report):
    cls = _validated(args.element)
    for s, xi in enumerate(coh.xi_tower_sequence(cls, args.s_max)):
        digits = coh.psi_digits(coh.validate_invariant(xi), cls.level)
        rep.say(f"s={s} v={xi.valuation()} digits={fmt_elems(digits)}")
        rep.put(f"xi[{s}].valuation", xi.valuation())
        rep.put(f"xi[{s}].digits", dumps([d.to_json() for d in digits]))


def cmd_coh_deps(args, rep: Report):
    cls = _validated(args.element)
    xis = coh.xi_tower_sequence(cls, args.r_max)
    rel = coh.find_K_linear_dependence(xis, args.r_max)
    digits = tw.TwistSequence(cls.config.field, tuple(coh.psi_digits(cls, cls.level)))
    ok = tw.check_relation(digits, rel)
    rep.say(f"{fmt_relation(rel)} annihilates_digits={fmt_bool(ok)}")
    rep.put("relation", fmt_relation(rel))
    rep.put("annihilates_digits", fmt_bool(ok))


def _witness(args) -> coh.AdditiveWitnessPolynomial:
    cfg = _config(args)
    rel = relation_from_json(cfg.field, _json_arg(args.relation))
    digits = sequence_from_json(cfg.field, _json_arg(args.digits)).terms
    return coh.build_witness_polynomial(rel, digits, cfg)


def cmd_coh_witness(args, rep: Report):
    P = _witness(args)
    c = P.constant
    digits = c.teichmuller_expand(stop=0)
    rep.say(f"support={' '.join(map(str, P.support()))} constant_valuation={c.valuation()}")
    rep.say(f"constant digits (level {c.level}): {fmt_digits(digits)}")
    rep.put("support", dumps(P.support()))
    rep.put("constant_level", c.level)
    rep.put("constant_valuation", c.valuation())
    rep.put("constant_digits", fmt_digits(digits))


def cmd_coh_defect(args, rep: Report):
    P = _witness(args)
    for n in range(1, args.n + 1):
        v = coh.approximate_root_defect(P, n)
        bound = Fraction(-1, P.config.p ** (n + 1))
        rep.say(f"n={n} defect={v} bound={fmt_rational(bound)}")
        rep.put(f"defect[{n}]", v)


def cmd_coh_newton(args, rep: Report):
    if args.vals is not None:
        try:
            vals = {j: parse_valuation(t) for j, t in enumerate(args.vals.split(","))}
        except ValueError as exc:
            raise ParseError(f"bad valuation list: {exc}") from None
        segments = newton_polygon(vals)
        pos, integral = has_positive_valuation_root(vals), has_integral_root(vals)
    else:
        if args.relation is None or args.digits is None or args.n is None:
            raise ParseError("newton needs --vals, or --relation, --digits and --n")
        cert = coh.stage_newton_certificate(_witness(args), args.n)
        segments, pos, integral = cert.segments, cert.positive_root, cert.integral_root
        for j, v in sorted(cert.valuations.items()):
            rep.put(f"v[{j}]", v)
    seg_text = " ".join(f"({fmt_rational(s)},{n})" for s, n in segments) or "-"
    rep.say(f"segments {seg_text} positive_root={fmt_bool(pos)} integral_root={fmt_bool(integral)}")
    rep.put("segments", seg_text)
    rep.put("positive_root", fmt_bool(pos))
    rep.put("integral_root", fmt_bool(integral))


def cmd_indices(args, rep: Report):
    s = coh.index_sets(args.p, args.e, args.r)
    pairs = " ".join(f"({i},{g})" for i, g in s.pairs_r)
    verdict = "OK" if s.within_bound else "EXCEEDS"
    rep.say(f"{pairs + ' ' if pairs else ''}|I_r|={len(s.pairs_r)} bound={fmt_rational(s.bound)} {verdict}")
    rep.put("tau", s.tau)
    rep.put("rho", s.rho)
    rep.put("I_r", pairs or "-")
    rep.put("size", len(s.pairs_r))
    rep.put("bound", fmt_rational(s.bound))
    rep.put("within_bound", fmt_bool(s.within_bound))


def cmd_coh_support(args, rep: Report):
    cls = _validated(args.element)
    support = coh.ramified_support(cls)
    if not support:
        rep.say("empty")
    for (i, g), beta in sorted(support.items()):
        digits = fmt_digits(beta.teichmuller_expand(stop=beta.lead_index() + cls.config.e))
        rep.say(f"({i},{g}) {digits}")
        rep.put(f"beta[{i},{g}]", digits)
    rep.put("size", len(support))


# --- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="axtower", description="Exact computations in Kummer towers.")
    parser.add_argument("--machine", action="store_true", help="print key=value lines")
    sub = parser.add_subparsers(dest="command", required=True)

    def element_cmd(name, func, help_text, parent=sub):
        sp = parent.add_parser(name, help=help_text)
        sp.add_argument("element", help="element JSON file")
        sp.set_defaults(func=func)
        return sp

    element_cmd("osc", cmd_osc, "Galois oscillation of an element")
    element_cmd("approx", cmd_approx, "best approximant in K_m and its defect").add_argument(
        "--m", type=int, required=True)
    element_cmd("identity", cmd_identity, "both sides of the oscillation/approximation identity")
    element_cmd("oracle", cmd_oracle, "oscillation by brute-force cyclotomic norms")
    element_cmd("bound", cmd_bound, "both sides of the equivalence for a bound A").add_argument(
        "--A", required=True)

    sp = sub.add_parser("constants", help="optimal and original Ax constants")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--m", type=int, default=0)
    sp.set_defaults(func=cmd_constants)

    sp = sub.add_parser("apf", help="ramification breaks, differents and the Herbrand integral")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--e", type=int, default=1)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_apf)

    twist = sub.add_parser("twist", help="twist-recurrent sequences").add_subparsers(dest="twist_cmd", required=True)
    sp = twist.add_parser("check")
    sp.add_argument("sequence")
    sp.add_argument("relation")
    _add_field_flags(sp)
    sp.set_defaults(func=cmd_twist_check)
    sp = twist.add_parser("find")
    sp.add_argument("sequence")
    sp.add_argument("--r-max", type=int, default=2)
    _add_field_flags(sp)
    sp.set_defaults(func=cmd_twist_find)
    sp = twist.add_parser("gen")
    sp.add_argument("relation")
    sp.add_argument("--initial", required=True, help="the r starting terms")
    sp.add_argument("--count", type=int, required=True)
    _add_field_flags(sp)
    sp.set_defaults(func=cmd_twist_gen)
    sp = twist.add_parser("count")
    sp.add_argument("relation")
    sp.add_argument("--length", type=int, required=True)
    _add_field_flags(sp)
    sp.set_defaults(func=cmd_twist_count)

    c = sub.add_parser("coh", help="invariant classes and the digit map").add_subparsers(dest="coh_cmd", required=True)
    element_cmd("validate", cmd_coh_validate, "check invariance and normalize", c)
    element_cmd("psi", cmd_coh_psi, "digits of an invariant class", c).add_argument("--count", type=int)
    element_cmd("torsion", cmd_coh_torsion, "smallest n killing the class", c)
    element_cmd("xiseq", cmd_coh_xiseq, "the sequence xi_s", c).add_argument("--s-max", type=int, default=2)
    element_cmd("deps", cmd_coh_deps, "relation among the xi_s", c).add_argument("--r-max", type=int, default=2)
    element_cmd("support", cmd_coh_support, "ramified support decomposition", c)
    for name, func in (("witness", cmd_coh_witness), ("defect", cmd_coh_defect)):
        sp = c.add_parser(name)
        sp.add_argument("relation")
        sp.add_argument("--digits", required=True, help="digit prefix x_1..x_2r")
        _add_field_flags(sp, precision=True)
        if name == "defect":
            sp.add_argument("--n", type=int, required=True)
        sp.set_defaults(func=func)
    sp = c.add_parser("newton")
    sp.add_argument("--vals", help="comma-separated coefficient valuations, low degree first")
    sp.add_argument("--relation")
    sp.add_argument("--digits")
    sp.add_argument("--n", type=int)
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--modulus")
    sp.add_argument("--precision", type=int, default=12)
    sp.set_defaults(func=cmd_coh_newton)
    for parent in (c, sub):
        sp = parent.add_parser("indices", help="the index sets I and I_r")
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--e", type=int, required=True)
        sp.add_argument("--r", type=int, required=True)
        sp.set_defaults(func=cmd_indices)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    rep = Report()
    try:
        args.func(args, rep)
    except ParseError as exc:
        print(f"ParseError: {exc}", file=sys.stderr)
        return 2
    except AxError as exc:
        sys.stdout.write(rep.render(args.machine))
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"ValueError: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(rep.render(args.machine))
    return 0


if __name__ == "__main__":
    sys.exit(main())
