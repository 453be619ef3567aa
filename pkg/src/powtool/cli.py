"""Problem-file DSL, command orchestration and report output.

A problem file is line oriented: ``key value`` lines plus repeatable ``L``
and ``W`` equation lines.  Coefficients in L lines are expressions in
l1..lm over ``+ - * / ^ ( )`` and integers; W lines are Laurent polynomials
in y1..y{n+l} with integer (possibly negative) exponents.

    lambdas 1
    lambda_values 1.4142135623730950488
    precision 128
    n 2
    l 0
    L x1 - l1*x2 = 0
    W y1 + y2 - 1
    height 2
    torsion 2

Commands: analyze | delta | quotient | cert | solve | confine | gbdim.
Reports print as stable text or, with --json, as canonical JSON; identical
inputs, flags and seed produce byte-identical output.

Numeric lambda values are taken at face value: the symbolic layer treats
the lambdas as algebraically independent and nothing certifies that the
supplied reals are.  Conclusions are sound under that assumption only.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp

from .errors import (BudgetExceeded, EmptyVariety, MarginInfeasible,
                     NotContained, NotOnVariety, NotRealEmbedded, ParseError,
                     PowtoolError)
from .exponent_field import EmbeddingSpec, ExponentScalar
from .polynomials import GRLEX, Poly
from .predimension import (Configuration, KernelSpec, build_phi_certificate,
                           classify_pair, delta_of, eval_phi_certificate,
                           quotient_pair)
from .solver import BallSpec, CosetReport, SolveReport, confinement_detect, ec_search
from .subspaces import KLinearSubspace, QLinearSubspace
from .toric import LaurentIdeal, buchberger_basis, dim_variety, specialize

SCHEMA = "powtool.report/1"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_PRECONDITION = 4


# ---------------------------------------------------------------------------
# Tokenizer and expression parser
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"(?P<ws>\s+)|(?P<int>\d+)|(?P<name>[a-z][a-z0-9]*)"
                       r"|(?P<op>[-+*/^()=])|(?P<bad>\S)")


def _tokenize(text: str, line_no: int):
    tokens = []
    for match in _TOKEN_RE.finditer(text):
        kind = match.lastgroup
        if kind == "ws":
            continue
        col = match.start() + 1
        if kind == "bad":
            raise ParseError(f"unexpected character {match.group()!r}",
                             line_no, col)
        tokens.append((kind, match.group(), line_no, col))
    return tokens


class _ExprParser:
    """Recursive-descent parser shared by L-coefficients and W-generators.

    The value domain is pluggable: a handler object supplies constants,
    variables and arithmetic, raising ParseError for out-of-domain shapes
    (nonlinear L terms, division by a non-monomial, unknown variables).
    """

    def __init__(self, tokens, handler):
        self.tokens = tokens
        self.pos = 0
        self.handler = handler

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else (None, "", 0, 0)
            raise ParseError("unexpected end of expression", last[2], last[3])
        self.pos += 1
        return tok

    def expect_op(self, op):
        tok = self.next()
        if tok[0] != "op" or tok[1] != op:
            raise ParseError(f"expected {op!r}", tok[2], tok[3])

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"trailing input {tok[1]!r}", tok[2], tok[3])
        return value

    def expr(self):
        tok = self.peek()
        negate = False
        if tok and tok[0] == "op" and tok[1] in "+-":
            self.next()
            negate = tok[1] == "-"
        value = self.term()
        if negate:
            value = self.handler.neg(value)
        while True:
            tok = self.peek()
            if tok is None or tok[0] != "op" or tok[1] not in "+-":
                return value
            self.next()
            rhs = self.term()
            value = self.handler.add(value, rhs) if tok[1] == "+" \
                else self.handler.sub(value, rhs)

    def term(self):
        value = self.power()
        while True:
            tok = self.peek()
            if tok is None or tok[0] != "op" or tok[1] not in "*/":
                return value
            self.next()
            rhs = self.power()
            value = self.handler.mul(value, rhs, tok) if tok[1] == "*" \
                else self.handler.div(value, rhs, tok)

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.next()
            sign = 1
            tok2 = self.next()
            if tok2[0] == "op" and tok2[1] == "-":
                sign = -1
                tok2 = self.next()
            if tok2[0] != "int":
                raise ParseError("exponent must be an integer", tok2[2], tok2[3])
            return self.handler.pow(base, sign * int(tok2[1]), tok2)
        return base

    def atom(self):
        tok = self.next()
        if tok[0] == "int":
            return self.handler.const(int(tok[1]))
        if tok[0] == "name":
            return self.handler.variable(tok)
        if tok[0] == "op" and tok[1] == "(":
            value = self.expr()
            self.expect_op(")")
            return value
        if tok[0] == "op" and tok[1] == "-":
            return self.handler.neg(self.atom())
        raise ParseError(f"unexpected token {tok[1]!r}", tok[2], tok[3])


class _LinearHandler:
    """Values are (coeff map var-index -> ExponentScalar, constant scalar)."""

    def __init__(self, nlambdas, n, l):
        self.m = nlambdas
        self.n = n
        self.l = l

    def const(self, value):
        return ({}, ExponentScalar.from_fraction(self.m, value))

    def variable(self, tok):
        name = tok[1]
        kind, idx = _split_name(name, tok)
        if kind == "l":
            if idx > self.m:
                raise ParseError(f"lambda index out of range: {name}", tok[2], tok[3])
            return ({}, ExponentScalar.lam(self.m, idx - 1))
        if kind == "x":
            if idx > self.n:
                raise ParseError(f"variable out of range: {name}", tok[2], tok[3])
            return ({idx - 1: ExponentScalar.one(self.m)},
                    ExponentScalar.zero(self.m))
        if kind == "a":
            if idx > self.l:
                raise ParseError(f"parameter out of range: {name}", tok[2], tok[3])
            return ({self.n + idx - 1: ExponentScalar.one(self.m)},
                    ExponentScalar.zero(self.m))
        raise ParseError(f"unknown variable {name!r} in a linear equation",
                         tok[2], tok[3])

    def neg(self, v):
        coeffs, const = v
        return ({k: -c for k, c in coeffs.items()}, -const)

    def add(self, a, b):
        coeffs = dict(a[0])
        for k, c in b[0].items():
            coeffs[k] = coeffs.get(k, ExponentScalar.zero(self.m)) + c
        return (coeffs, a[1] + b[1])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b, tok):
        if a[0] and b[0]:
            raise ParseError("nonlinear product of variables", tok[2], tok[3])
        if b[0]:
            a, b = b, a
        scalar = b[1]
        return ({k: c * scalar for k, c in a[0].items()}, a[1] * scalar)

    def div(self, a, b, tok):
        if b[0]:
            raise ParseError("cannot divide by a variable expression", tok[2], tok[3])
        if b[1].is_zero:
            raise ParseError("division by zero", tok[2], tok[3])
        inv = ExponentScalar.one(self.m) / b[1]
        return ({k: c * inv for k, c in a[0].items()}, a[1] * inv)

    def pow(self, base, k, tok):
        if base[0]:
            raise ParseError("cannot raise a variable expression to a power",
                             tok[2], tok[3])
        return ({}, base[1] ** k)


class _LaurentHandler:
    """Values are Laurent polynomials (Poly with possibly negative exponents)."""

    def __init__(self, nvars):
        self.nvars = nvars

    def const(self, value):
        return Poly.const(self.nvars, value)

    def variable(self, tok):
        name = tok[1]
        kind, idx = _split_name(name, tok)
        if kind != "y":
            raise ParseError(f"only y-variables may appear in W: {name!r}",
                             tok[2], tok[3])
        if idx > self.nvars:
            raise ParseError(f"variable out of range: {name}", tok[2], tok[3])
        return Poly.variable(self.nvars, idx - 1)

    def neg(self, v):
        return -v

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b, tok):
        return a * b

    def div(self, a, b, tok):
        if b.is_zero:
            raise ParseError("division by zero", tok[2], tok[3])
        if len(b.terms) != 1:
            raise ParseError("division only by monomials in W", tok[2], tok[3])
        (mon, coeff), = b.terms.items()
        return a.mul_monomial(tuple(-e for e in mon), 1 / coeff)

    def pow(self, base, k, tok):
        if len(base.terms) == 1:
            (mon, coeff), = base.terms.items()
            scaled = coeff ** k if k >= 0 else Fraction(1) / coeff ** (-k)
            return Poly.monomial(self.nvars, tuple(e * k for e in mon), scaled)
        if k < 0:
            raise ParseError("negative power of a non-monomial", tok[2], tok[3])
        return base ** k


def _split_name(name, tok):
    match = re.fullmatch(r"([a-z]+)(\d+)", name)
    if not match or match.group(1) not in ("l", "x", "a", "y"):
        raise ParseError(f"unknown identifier {name!r}", tok[2], tok[3])
    idx = int(match.group(2))
    if idx < 1:
        raise ParseError(f"indices start at 1: {name!r}", tok[2], tok[3])
    return match.group(1), idx


# ---------------------------------------------------------------------------
# Problem files
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProblemFile:
    nlambdas: int
    n: int
    l: int
    L: KLinearSubspace
    W: LaurentIdeal
    lambda_values: tuple | None = None
    precision: int = 128
    params: tuple | None = None
    kernel: str = "symbolic"
    height: int = 1
    torsion: int = 2
    M: QLinearSubspace | None = None
    candidates: tuple = ()

    def configuration(self) -> Configuration:
        return Configuration(self.L, self.W, params=self.params)

    def embedding(self) -> EmbeddingSpec:
        if self.lambda_values is None:
            raise NotRealEmbedded("problem file carries no lambda_values")
        return EmbeddingSpec(self.lambda_values, self.precision)

    def to_text(self) -> str:
        lines = [f"lambdas {self.nlambdas}"]
        if self.lambda_values is not None:
            lines.append("lambda_values " + " ".join(self.lambda_values))
        lines.append(f"precision {self.precision}")
        lines.append(f"n {self.n}")
        lines.append(f"l {self.l}")
        xnames = [f"x{i+1}" for i in range(self.n)] + \
                 [f"a{s+1}" for s in range(self.l)]
        for row in self.L.matrix.rows:
            lines.append("L " + _format_linear(row, xnames) + " = 0")
        ynames = [f"y{i+1}" for i in range(self.n + self.l)]
        for g in self.W.generators:
            lines.append("W " + g.to_string(ynames, GRLEX))
        if self.params is not None:
            lines.append("params " + " ".join(str(p) for p in self.params))
        lines.append(f"kernel {self.kernel}")
        lines.append(f"height {self.height}")
        lines.append(f"torsion {self.torsion}")
        if self.M is not None:
            lines.append("M " + _format_int_rows(self.M))
        for cand in self.candidates:
            lines.append("candidate " + _format_int_rows(cand))
        return "\n".join(lines) + "\n"


def _format_linear(row, names) -> str:
    parts = []
    for coeff, name in zip(row, names):
        if coeff.is_zero:
            continue
        if coeff == 1:
            parts.append(("+", name))
        elif coeff == -1:
            parts.append(("-", name))
        else:
            parts.append(("+", f"({coeff})*{name}"))
    if not parts:
        return "0"
    sign, frag = parts[0]
    out = ("-" if sign == "-" else "") + frag
    for sign, frag in parts[1:]:
        out += f" {sign} {frag}"
    return out


def _format_int_rows(sub: QLinearSubspace) -> str:
    rows = sub.matrix.int_rows()
    if not rows:
        return ";"
    return " ; ".join(" ".join(str(v) for v in row) for row in rows)


def _parse_int_rows(rest: str, n: int, line_no: int) -> QLinearSubspace:
    rows = []
    for chunk in rest.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            row = [int(v) for v in chunk.split()]
        except ValueError:
            raise ParseError("subspace rows must be integers", line_no, None)
        if len(row) != n:
            raise ParseError(f"subspace row needs {n} entries", line_no, None)
        rows.append(row)
    if not rows:
        return QLinearSubspace.full_space(n)
    return QLinearSubspace.from_rows(n, rows)


def _parse_fraction(text: str, line_no: int) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational value {text!r}", line_no, None)


def parse_problem(text: str) -> ProblemFile:
    """Parse a problem file; raises ParseError with a location on bad input."""
    settings: dict = {"l": 0, "precision": 128, "kernel": "symbolic",
                      "height": 1, "torsion": 2}
    l_lines, w_lines, cand_lines = [], [], []
    m_line = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key in ("lambdas", "n", "l", "precision", "height", "torsion"):
            try:
                settings[key] = int(rest)
            except ValueError:
                raise ParseError(f"{key} needs an integer", line_no, None)
        elif key == "lambda_values":
            values = rest.replace(",", " ").split()
            for v in values:
                try:
                    mp.mpf(v)
                except ValueError:
                    raise ParseError(f"bad numeric value {v!r}", line_no, None)
            settings["lambda_values"] = tuple(values)
        elif key == "params":
            settings["params"] = tuple(
                _parse_fraction(v, line_no) for v in rest.replace(",", " ").split())
        elif key == "kernel":
            if rest not in ("symbolic", "numeric"):
                raise ParseError("kernel must be symbolic or numeric", line_no, None)
            settings["kernel"] = rest
        elif key == "L":
            l_lines.append((line_no, raw, rest))
        elif key == "W":
            w_lines.append((line_no, raw, rest))
        elif key == "M":
            m_line = (line_no, rest)
        elif key == "candidate":
            cand_lines.append((line_no, rest))
        else:
            raise ParseError(f"unknown directive {key!r}", line_no, 1)
    for required in ("lambdas", "n"):
        if required not in settings:
            raise ParseError(f"missing required directive {required!r}", None, None)
    nlambdas = settings["lambdas"]
    n, l = settings["n"], settings["l"]
    if nlambdas < 0 or n < 1 or l < 0:
        raise ParseError("lambdas, n, l must be sensible nonnegative sizes",
                         None, None)
    if "lambda_values" in settings and len(settings["lambda_values"]) != nlambdas:
        raise ParseError("lambda_values count must equal lambdas", None, None)
    if not w_lines:
        raise ParseError("at least one W generator is required", None, None)

    rows = []
    for line_no, raw, rest in l_lines:
        offset = raw.index(rest) if rest else 0
        tokens = _adjust_cols(_tokenize(rest, line_no), offset)
        eq_index = next((i for i, t in enumerate(tokens)
                         if t[0] == "op" and t[1] == "="), None)
        handler = _LinearHandler(nlambdas, n, l)
        if eq_index is None:
            lhs = _ExprParser(tokens, handler).parse()
            value = lhs
        else:
            lhs = _ExprParser(tokens[:eq_index], handler).parse()
            rhs = _ExprParser(tokens[eq_index + 1:], handler).parse()
            value = handler.sub(lhs, rhs)
        coeffs, const = value
        if not const.is_zero:
            raise ParseError("linear equation has a nonzero constant term",
                             line_no, None)
        row = [coeffs.get(j, ExponentScalar.zero(nlambdas)) for j in range(n + l)]
        rows.append(row)
    L = KLinearSubspace.from_equations(nlambdas, n, l, rows)

    gens = []
    for line_no, raw, rest in w_lines:
        offset = raw.index(rest) if rest else 0
        tokens = _adjust_cols(_tokenize(rest, line_no), offset)
        gens.append(_ExprParser(tokens, _LaurentHandler(n + l)).parse())
    W = LaurentIdeal.make(n + l, gens)

    params = settings.get("params")
    if params is not None and len(params) != l:
        raise ParseError("params count must equal l", None, None)
    M = _parse_int_rows(m_line[1], n, m_line[0]) if m_line else None
    candidates = tuple(_parse_int_rows(rest, n, line_no)
                       for line_no, rest in cand_lines)
    return ProblemFile(nlambdas=nlambdas, n=n, l=l, L=L, W=W,
                       lambda_values=settings.get("lambda_values"),
                       precision=settings["precision"], params=params,
                       kernel=settings["kernel"], height=settings["height"],
                       torsion=settings["torsion"], M=M, candidates=candidates)


def _adjust_cols(tokens, offset):
    return [(k, v, ln, col + offset) for (k, v, ln, col) in tokens]


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

@dataclass
class Report:
    command: str
    input_digest: str
    results: dict
    warnings: list = field(default_factory=list)

    def to_json(self) -> str:
        payload = {"schema": SCHEMA, "command": self.command,
                   "input_digest": self.input_digest,
                   "results": self.results, "warnings": list(self.warnings)}
        return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"

    def to_text(self) -> str:
        lines = [f"powtool {self.command} report",
                 f"input_digest: {self.input_digest}"]
        lines.extend(_render_value("results", self.results, 0))
        if self.warnings:
            lines.append("warnings:")
            lines.extend(f"  - {w}" for w in self.warnings)
        return "\n".join(lines) + "\n"


def _render_value(key, value, depth):
    pad = "  " * depth
    if isinstance(value, dict):
        out = [f"{pad}{key}:"]
        for k in sorted(value):
            out.extend(_render_value(k, value[k], depth + 1))
        return out
    if isinstance(value, (list, tuple)):
        out = [f"{pad}{key}:"]
        for item in value:
            if isinstance(item, (dict, list, tuple)):
                out.extend(_render_value("-", item, depth + 1))
            else:
                out.append(f"{pad}  - {item}")
        return out
    return [f"{pad}{key}: {value}"]


def _digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode()).hexdigest()[:16]


def _subspace_rows(sub: QLinearSubspace):
    return [list(r) for r in sub.matrix.int_rows()]


def _k_equations(L: KLinearSubspace, n, l):
    names = [f"x{i+1}" for i in range(n)] + [f"a{s+1}" for s in range(l)]
    return [_format_linear(row, names) + " = 0" for row in L.matrix.rows]


def _w_generators(W: LaurentIdeal):
    names = [f"y{i+1}" for i in range(W.nvars)]
    return [g.to_string(names, GRLEX) for g in W.generators]


def _mp_str(x, digits=30):
    return mp.nstr(x, digits, strip_zeros=False)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

INDEPENDENCE_WARNING = ("numeric lambda values are assumed algebraically "
                        "independent; symbolic verdicts rely on that assumption")


def run_command(command: str, problem: ProblemFile, flags: dict) -> Report:
    """Execute one subcommand against a parsed problem (thin shell over the library)."""
    digest = flags.get("digest", _digest(problem.to_text()))
    height = flags.get("height") or problem.height
    torsion = flags.get("torsion") or problem.torsion
    precision = flags.get("precision") or problem.precision
    warnings = []
    config = problem.configuration()

    if command == "analyze":
        cls = classify_pair(config, height_bound=height)
        if not cls.normal_verdict.is_violated:
            warnings.append(f"normality verified only up to height {height}")
        results = {
            "n": problem.n, "l": problem.l,
            "dim_L": cls.dim_L, "dim_W": cls.dim_W,
            "delta": cls.delta,
            "is_free": cls.is_free, "is_special": cls.is_special,
            "normal": cls.normal_verdict.describe(),
            "envelope_rows": _subspace_rows(cls.envelope),
            "N_L_rows": _subspace_rows(cls.N_L),
        }
        if cls.normal_verdict.is_violated:
            results["normality_witness"] = _subspace_rows(
                cls.normal_verdict.violated_by)
        return Report("analyze", digest, results, warnings)

    if command == "delta":
        value = delta_of(config)
        return Report("delta", digest, {"delta": value}, warnings)

    if command == "quotient":
        if problem.M is None:
            raise ValueError("quotient needs an M section in the problem file")
        out = quotient_pair(config, problem.M)
        results = {
            "n": out.n, "l": out.l,
            "dim_L_quotient": out.L.dim if out.l == 0 else None,
            "L_equations": _k_equations(out.L, out.n, out.l),
            "W_generators": _w_generators(out.W),
            "M_rows": _subspace_rows(problem.M),
        }
        results = {k: v for k, v in results.items() if v is not None}
        return Report("quotient", digest, results, warnings)

    if command == "cert":
        cert = build_phi_certificate(config, list(problem.candidates),
                                     torsion_bound=torsion)
        disjuncts = []
        for d in cert.disjuncts:
            entry = {"kind": d.kind, "M_rows": _subspace_rows(d.subspace)}
            if d.generic_dim is not None:
                entry["generic_fiber_dim"] = d.generic_dim
            if d.kind == "torsion_cosets":
                entry["cosets"] = [
                    {"order": zeta.order, "exponents": list(zeta.exponents)}
                    for _, zeta in d.cosets]
            disjuncts.append(entry)
        results = {"subspaces": [_subspace_rows(M) for M in cert.subspaces],
                   "disjuncts": disjuncts,
                   "torsion_bound": torsion}
        return Report("cert", digest, results, warnings)

    if command == "gbdim":
        W = config.specialized_variety() if problem.l else problem.W
        gb = buchberger_basis(W)
        dim = dim_variety(W)
        names = [f"y{i+1}" for i in range(W.nvars)]
        results = {"dimension": "empty" if dim is None else dim,
                   "order": gb.order_name,
                   "basis": [g.to_string(names, GRLEX) for g in gb.polys]}
        return Report("gbdim", digest, results, warnings)

    if command in ("solve", "confine"):
        seed = flags.get("seed")
        if seed is None:
            raise ValueError(f"{command} requires --seed for reproducibility")
        if problem.lambda_values is None:
            raise NotRealEmbedded("solve needs lambda_values in the problem file")
        emb = EmbeddingSpec(problem.lambda_values, precision)
        warnings.append(INDEPENDENCE_WARNING)
        radius = flags.get("radius") or 8.0
        budget = flags.get("budget") or 200
        tol = flags.get("tol") or 1e-12
        report = ec_search(config, emb, region=None if radius is None else
                           BallSpec((0.0,) * _domain_dim(config), radius),
                           budget=budget, seed=seed, tol=tol,
                           height_bound=height)
        solve_results = _solve_results(report)
        if command == "solve":
            return Report("solve", digest, solve_results, warnings)
        if not report.solutions:
            results = {"solve": solve_results, "cosets": [],
                       "uncovered": [], "note": "no solutions to confine"}
            return Report("confine", digest, results, warnings)
        coset = confinement_detect(report.solutions, height_bound=height,
                                   tol=flags.get("ctol") or 1e-8,
                                   precision_bits=precision)
        results = {"solve": solve_results,
                   "cosets": [{"row": list(e.row),
                               "shift_re": _mp_str(e.shift[0]),
                               "shift_im": _mp_str(e.shift[1]),
                               "members": list(e.members)} for e in coset.entries],
                   "uncovered": list(coset.uncovered),
                   "height_bound": coset.height_bound}
        return Report("confine", digest, results, warnings)

    raise ValueError(f"unknown command {command!r}")


def _domain_dim(config: Configuration) -> int:
    from .subspaces import dim_fiber
    return dim_fiber(config.L) if config.l else config.L.dim


def _solve_results(report: SolveReport) -> dict:
    status_counts: dict = {}
    for rec in report.records:
        status_counts[rec.status] = status_counts.get(rec.status, 0) + 1
    return {
        "solutions": [[[_mp_str(mp.re(x)), _mp_str(mp.im(x))] for x in z]
                      for z in report.solutions],
        "residuals": [_mp_str(r, 8) for r in report.residuals],
        "attempts": report.attempts,
        "statuses": dict(sorted(status_counts.items())),
        "seed": report.seed,
        "precision_bits": report.precision_bits,
        "ball_center": [repr(c) for c in report.ball.center],
        "ball_radius": repr(report.ball.radius),
        "filtered": report.filtered,
        "escaped_count": len(report.escaped_real_parts),
    }


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def _build_argparser():
    parser = argparse.ArgumentParser(
        prog="powtool",
        description="Exact analysis and high-precision solving of "
                    "exponential-sum systems")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("analyze", "delta", "quotient", "cert", "solve",
                 "confine", "gbdim"):
        p = sub.add_parser(name)
        p.add_argument("file", help="problem file")
        p.add_argument("--height", type=int, default=None)
        p.add_argument("--torsion", type=int, default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--precision", type=int, default=None)
        p.add_argument("--radius", type=float, default=None)
        p.add_argument("--budget", type=int, default=None)
        p.add_argument("--json", action="store_true")
    return parser


def main(argv=None) -> int:
    args = _build_argparser().parse_args(argv)
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    flags = {"height": args.height, "torsion": args.torsion,
             "seed": args.seed, "precision": args.precision,
             "radius": args.radius, "budget": args.budget,
             "digest": _digest(text)}
    try:
        problem = parse_problem(text)
        report = run_command(args.command, problem, flags)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (EmptyVariety, NotContained, NotOnVariety, NotRealEmbedded,
            MarginInfeasible, ValueError, ZeroDivisionError) as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except PowtoolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    sys.stdout.write(report.to_json() if args.json else report.to_text())
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
