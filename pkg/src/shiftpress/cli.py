"""Command-line surface: shift-spec files, dispatch, traces, reports.

Shift spec grammar (line-oriented, '#' comments allowed):

    alphabet <d>
    sft
    forbidden: <word> <word> ...
  | sofic
    edge: <src> <dst> <label>     (one line per edge)
  | coded
    generators: <word> <word> ...
  | coded
    family: sgap evens|odds|explicit v1 v2 ...
    family: ggap d=<d> S0=(v,..) S1=(v,..) ... perms=id|all|p1;p2
    family: beta rational <p/q>
    family: beta algebraic <poly in x> [lo,hi]
    family: powerpair <word> <word>

Exit codes: 0 converged, 1 usage or parse error, 2 budget exhausted
(the best certified enclosure is still printed).
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from .coded import CodedShift, GeneratorStream, coded_pressure
from .core import (
    Alphabet,
    LocallyConstantPotential,
    PotentialOracle,
    parse_potential,
    word,
    word_str,
)
from .errors import (
    ExpansionIsEventuallyPeriodicError,
    ParseError,
    ShiftPressError,
)
from .families import (
    BetaNumber,
    SSet,
    beta_expansion,
    beta_shift,
    beta_sofic_graph,
    generalized_gap_shift,
    power_pair_shift,
    s_gap_shift,
)
from .pressure import sft_pressure, sofic_pressure
from .sft import VertexShift, language_oracle, vertex_shift_from_language
from .sofic import LabeledGraph, bouquet, sofic_language_oracle
from .witness import build_witness, format_report


@dataclass(frozen=True)
class ShiftSpec:
    kind: str  # sft | sofic | coded
    alphabet: int
    payload: object


def _clean_lines(text: str):
    out = []
    for i, raw in enumerate(text.splitlines()):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((i + 1, line))
    return out


def parse_shift_spec(text: str) -> ShiftSpec:
    lines = _clean_lines(text)
    if not lines:
        raise ParseError(1, "empty shift spec")
    no, first = lines[0]
    parts = first.split()
    if len(parts) != 2 or parts[0] != "alphabet":
        raise ParseError(no, f"expected 'alphabet <d>', got {first!r}")
    try:
        d = int(parts[1])
    except ValueError:
        raise ParseError(no, f"bad alphabet size {parts[1]!r}") from None
    if d < 1:
        raise ParseError(no, "alphabet size must be positive")
    if len(lines) < 2:
        raise ParseError(no, "missing shift kind line")
    no, kind = lines[1]
    if kind not in ("sft", "sofic", "coded"):
        raise ParseError(no, f"unknown stanza {kind!r}")
    body = lines[2:]
    alphabet = Alphabet(d)
    if kind == "sft":
        return ShiftSpec("sft", d, _parse_sft_body(alphabet, body))
    if kind == "sofic":
        return ShiftSpec("sofic", d, _parse_sofic_body(alphabet, body))
    return ShiftSpec("coded", d, _parse_coded_body(alphabet, body))


def _parse_word(no, text, alphabet):
    try:
        w = word(text)
    except ValueError:
        raise ParseError(no, f"bad word {text!r}") from None
    if not alphabet.valid_word(w):
        raise ParseError(no, f"symbol out of alphabet in {text!r}")
    return w


def _parse_sft_body(alphabet, body):
    if not body:
        raise ParseError(0, "sft stanza needs a 'forbidden:' line")
    no, line = body[0]
    if not line.startswith("forbidden:"):
        raise ParseError(no, f"expected 'forbidden: ...', got {line!r}")
    words = tuple(
        _parse_word(no, tok, alphabet) for tok in line[len("forbidden:"):].split()
    )
    if len(body) > 1:
        raise ParseError(body[1][0], "unexpected extra line in sft stanza")
    return words


def _parse_sofic_body(alphabet, body):
    if not body:
        raise ParseError(0, "sofic stanza needs 'edge:' lines")
    edges = []
    for no, line in body:
        if not line.startswith("edge:"):
            raise ParseError(no, f"expected 'edge: src dst label', got {line!r}")
        parts = line[len("edge:"):].split()
        if len(parts) != 3:
            raise ParseError(no, f"expected 'edge: src dst label', got {line!r}")
        src, dst, label = parts
        try:
            lab = int(label)
        except ValueError:
            raise ParseError(no, f"bad label {label!r}") from None
        if not 0 <= lab < alphabet.size:
            raise ParseError(no, f"symbol {lab} out of alphabet")
        edges.append((src, dst, lab))
    return tuple(edges)


def _parse_coded_body(alphabet, body):
    if not body:
        raise ParseError(0, "coded stanza needs 'generators:' or 'family:'")
    no, line = body[0]
    if len(body) > 1:
        raise ParseError(body[1][0], "unexpected extra line in coded stanza")
    if line.startswith("generators:"):
        words = tuple(
            _parse_word(no, tok, alphabet)
            for tok in line[len("generators:"):].split()
        )
        if not words:
            raise ParseError(no, "need at least one generator")
        return ("generators", words)
    if line.startswith("family:"):
        return ("family", _parse_family(no, line[len("family:"):].split(), alphabet))
    raise ParseError(no, f"expected 'generators:' or 'family:', got {line!r}")


def _parse_family(no, toks, alphabet):
    if not toks:
        raise ParseError(no, "empty family spec")
    name = toks[0]
    if name == "sgap":
        if len(toks) < 2:
            raise ParseError(no, "sgap needs a mode: evens, odds, or explicit")
        mode = toks[1]
        if mode == "evens":
            return ("sgap", "evens", ())
        if mode == "odds":
            return ("sgap", "odds", ())
        if mode == "explicit":
            try:
                vals = tuple(sorted({int(t) for t in toks[2:]}))
            except ValueError:
                raise ParseError(no, "explicit sgap values must be integers") from None
            if not vals:
                raise ParseError(no, "explicit sgap needs at least one value")
            return ("sgap", "explicit", vals)
        raise ParseError(no, f"unknown sgap mode {mode!r}")
    if name == "ggap":
        return _parse_ggap(no, toks[1:])
    if name == "beta":
        return _parse_beta(no, toks[1:])
    if name == "powerpair":
        if len(toks) != 3:
            raise ParseError(no, "powerpair needs two block words")
        return ("powerpair", _parse_word(no, toks[1], alphabet),
                _parse_word(no, toks[2], alphabet))
    raise ParseError(no, f"unknown family {name!r}")


def _parse_ggap(no, toks):
    d = None
    sets = {}
    perms = None
    for tok in toks:
        if tok.startswith("d="):
            d = int(tok[2:])
        elif tok.startswith("S") and "=" in tok:
            idx_str, val = tok[1:].split("=", 1)
            m = re.fullmatch(r"\(([\d,]*)\)", val)
            if not m:
                raise ParseError(no, f"bad gap set {tok!r}")
            vals = tuple(int(x) for x in m.group(1).split(",") if x != "")
            sets[int(idx_str)] = vals
        elif tok.startswith("perms="):
            perms = tok[len("perms="):]
        else:
            raise ParseError(no, f"unknown ggap token {tok!r}")
    if d is None or perms is None or set(sets) != set(range(d)):
        raise ParseError(no, "ggap needs d=, S0=..S{d-1}=, and perms=")
    if perms == "id":
        plist = (tuple(range(d)),)
    elif perms == "all":
        import itertools

        plist = tuple(sorted(itertools.permutations(range(d))))
    else:
        plist = tuple(
            sorted(tuple(int(c) for c in p) for p in perms.split(";"))
        )
    return ("ggap", d, tuple(sets[i] for i in range(d)), plist)


_POLY_TERM = re.compile(r"([+-]?\d*)(?:\*?x(?:\^(\d+))?)?")


def parse_polynomial(no, text):
    """Integer-coefficient polynomial in x, low-to-high coefficients."""
    coeffs: dict[int, int] = {}
    pos = 0
    text = text.replace(" ", "")
    while pos < len(text):
        m = _POLY_TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(no, f"bad polynomial near {text[pos:]!r}")
        coef_str, exp_str = m.groups()
        has_x = "x" in text[pos : m.end()]
        if coef_str in ("", "+", "-"):
            coef = 1 if coef_str != "-" else -1
            if not has_x:
                raise ParseError(no, f"dangling sign in {text!r}")
        else:
            coef = int(coef_str)
        exp = 0
        if has_x:
            exp = int(exp_str) if exp_str else 1
        coeffs[exp] = coeffs.get(exp, 0) + coef
        pos = m.end()
    deg = max(coeffs)
    return [coeffs.get(i, 0) for i in range(deg + 1)]


def _parse_beta(no, toks):
    if not toks:
        raise ParseError(no, "beta needs 'rational <q>' or 'algebraic <poly> [lo,hi]'")
    mode = toks[0]
    if mode == "rational":
        if len(toks) != 2:
            raise ParseError(no, "beta rational needs one value")
        try:
            q = Fraction(toks[1])
        except (ValueError, ZeroDivisionError):
            raise ParseError(no, f"malformed rational {toks[1]!r}") from None
        if q <= 1:
            raise ParseError(no, "beta must exceed 1")
        return ("beta", "rational", q)
    if mode == "algebraic":
        if len(toks) != 3:
            raise ParseError(no, "beta algebraic needs <poly> [lo,hi]")
        coeffs = parse_polynomial(no, toks[1])
        m = re.fullmatch(r"\[([^,\]]+),([^,\]]+)\]", toks[2])
        if not m:
            raise ParseError(no, f"bad isolating interval {toks[2]!r}")
        try:
            lo, hi = Fraction(m.group(1)), Fraction(m.group(2))
        except (ValueError, ZeroDivisionError):
            raise ParseError(no, "malformed interval endpoints") from None
        return ("beta", "algebraic", tuple(coeffs), (lo, hi))
    raise ParseError(no, f"unknown beta mode {mode!r}")


def format_shift_spec(spec: ShiftSpec) -> str:
    lines = [f"alphabet {spec.alphabet}", spec.kind]
    if spec.kind == "sft":
        lines.append("forbidden: " + " ".join(word_str(w) for w in spec.payload))
    elif spec.kind == "sofic":
        for src, dst, label in spec.payload:
            lines.append(f"edge: {src} {dst} {label}")
    else:
        tag = spec.payload[0]
        if tag == "generators":
            lines.append(
                "generators: " + " ".join(word_str(w) for w in spec.payload[1])
            )
        else:
            fam = spec.payload[1]
            if fam[0] == "sgap":
                if fam[1] == "explicit":
                    lines.append(
                        "family: sgap explicit " + " ".join(map(str, fam[2]))
                    )
                else:
                    lines.append(f"family: sgap {fam[1]}")
            elif fam[0] == "ggap":
                _, d, sets, perms = fam
                toks = [f"d={d}"]
                for i, vals in enumerate(sets):
                    toks.append(f"S{i}=({','.join(map(str, vals))})")
                toks.append("perms=" + ";".join("".join(map(str, p)) for p in perms))
                lines.append("family: ggap " + " ".join(toks))
            elif fam[0] == "beta":
                if fam[1] == "rational":
                    lines.append(f"family: beta rational {fam[2]}")
                else:
                    poly = _format_poly(fam[2])
                    lo, hi = fam[3]
                    lines.append(f"family: beta algebraic {poly} [{lo},{hi}]")
            elif fam[0] == "powerpair":
                lines.append(
                    f"family: powerpair {word_str(fam[1])} {word_str(fam[2])}"
                )
    return "\n".join(lines) + "\n"


def _format_poly(coeffs) -> str:
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if terms else "")
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            xs = "x" if e == 1 else f"x^{e}"
            body = xs if mag == 1 else f"{mag}{xs}"
        terms.append(sign + body)
    return "".join(terms) or "0"


def resolve_shift(spec: ShiftSpec):
    """Build the concrete system: VertexShift, LabeledGraph, or CodedShift."""
    alphabet = Alphabet(spec.alphabet)
    if spec.kind == "sft":
        from .sft import sft_from_forbidden

        return sft_from_forbidden(alphabet, spec.payload)
    if spec.kind == "sofic":
        from .sofic import make_essential

        return make_essential(LabeledGraph.from_named_edges(alphabet, spec.payload))
    tag = spec.payload[0]
    if tag == "generators":
        words = spec.payload[1]
        stream = GeneratorStream.from_words(alphabet, words)
        oracle = sofic_language_oracle(bouquet(words))
        return CodedShift(alphabet, stream, oracle, name="renewal")
    fam = spec.payload[1]
    if fam[0] == "sgap":
        s = {
            "evens": SSet.evens,
            "odds": SSet.odds,
        }.get(fam[1], lambda: SSet.explicit(fam[2]))()
        return s_gap_shift(s)
    if fam[0] == "ggap":
        _, d, sets, perms = fam
        return generalized_gap_shift([SSet.explicit(v) for v in sets], perms)
    if fam[0] == "powerpair":
        return power_pair_shift(fam[1], fam[2])
    # beta: eventually periodic expansions fall back to a sofic presentation
    if fam[1] == "rational":
        beta = BetaNumber.rational(fam[2])
    else:
        beta = BetaNumber.algebraic(fam[2], fam[3])
    try:
        return beta_shift(beta)
    except ExpansionIsEventuallyPeriodicError as exc:
        return beta_sofic_graph(exc.preperiod, exc.period)


# ---------------------------------------------------------------------------
# Rendering


def fraction_decimal(q: Fraction, digits: int, round_up: bool) -> str:
    """Exact decimal rendering with directed rounding."""
    scale = 10**digits
    scaled = q * scale
    if round_up:
        n = -((-scaled.numerator) // scaled.denominator)
    else:
        n = scaled.numerator // scaled.denominator
    sign = "-" if n < 0 else ""
    n = abs(n)
    whole, frac = divmod(n, scale)
    return f"{sign}{whole}.{frac:0{digits}d}"


def render_interval(iv, digits: int = 12) -> str:
    lo = fraction_decimal(iv.lo, digits, round_up=False)
    hi = fraction_decimal(iv.hi, digits, round_up=True)
    return f"interval {iv.lo} {iv.hi}\ndecimal [{lo}, {hi}]"


def write_trace(path, upper_trace, lower_trace):
    rows = ["kind,index,lo,hi"]
    for idx, iv in upper_trace:
        rows.append(f"n,{idx},{iv.lo},{iv.hi}")
    for idx, bound in lower_trace:
        rows.append(f"m,{idx},{bound},{bound}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(rows) + "\n")


# ---------------------------------------------------------------------------
# Commands


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="shiftpress", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, potential=True):
        p.add_argument("--shift", required=True, help="shift spec file")
        if potential:
            p.add_argument("--potential", help="potential file (default: zero)")
        p.add_argument("--precision", type=int, default=16,
                       help="target width 2^-p")
        p.add_argument("--max-upper", type=int, default=40,
                       help="upper-stage budget (window lengths)")
        p.add_argument("--max-gen", type=int, default=24,
                       help="generator budget for coded shifts")
        p.add_argument("--trace", help="write a bound-trace CSV here")
        p.add_argument("--out", help="write the report here as well")

    common(sub.add_parser("entropy", help="entropy enclosure"), potential=False)
    common(sub.add_parser("pressure", help="pressure enclosure"))

    w = sub.add_parser("witness", help="orbit-pinned same-language witness")
    w.add_argument("--shift", required=True)
    w.add_argument("--potential")
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--epsilon", default="1/16")
    w.add_argument("--out")

    b = sub.add_parser("beta-expand", help="greedy expansion digits of 1")
    b.add_argument("--beta", required=True, help="rational beta, e.g. 3/2")
    b.add_argument("--digits", type=int, required=True)

    a = sub.add_parser("approx", help="emit the m-generator sofic presentation")
    a.add_argument("--shift", required=True)
    a.add_argument("--max-gen", type=int, required=True)
    a.add_argument("--out")
    return parser


def _load_shift(path):
    with open(path, encoding="utf-8") as fh:
        return resolve_shift(parse_shift_spec(fh.read()))


def _load_potential(path, alphabet) -> LocallyConstantPotential:
    if path is None:
        return LocallyConstantPotential.zero(alphabet)
    with open(path, encoding="utf-8") as fh:
        return parse_potential(fh.read(), alphabet)


def _emit(text, out_path):
    print(text)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _pressure_command(args) -> int:
    system = _load_shift(args.shift)
    alphabet = (
        system.alphabet if not isinstance(system, CodedShift) else system.alphabet
    )
    phi = _load_potential(getattr(args, "potential", None), alphabet)
    p = args.precision
    if isinstance(system, VertexShift):
        iv = sft_pressure(system, phi, p)
        status, upper_trace, lower_trace = "converged", (), ()
    elif isinstance(system, LabeledGraph):
        iv = sofic_pressure(system, phi, p)
        status, upper_trace, lower_trace = "converged", (), ()
    else:
        enc = coded_pressure(
            system,
            PotentialOracle.from_exact(phi),
            p,
            (args.max_upper, args.max_gen),
        )
        iv, status = enc.interval, enc.status
        upper_trace, lower_trace = enc.upper_trace, enc.lower_trace
    if args.trace:
        write_trace(args.trace, upper_trace, lower_trace)
    _emit(f"status {status}\n{render_interval(iv)}", args.out)
    return 0 if status == "converged" else 2


def _witness_command(args) -> int:
    system = _load_shift(args.shift)
    if isinstance(system, VertexShift):
        lang = language_oracle(system)
        alphabet = system.alphabet
    elif isinstance(system, LabeledGraph):
        lang = sofic_language_oracle(system)
        alphabet = system.alphabet
    else:
        lang = system.language
        alphabet = system.alphabet
    phi = _load_potential(args.potential, alphabet)
    v = vertex_shift_from_language(lang, args.n)
    report = build_witness(v, phi, args.n, epsilon=Fraction(args.epsilon))
    _emit(format_report(report).rstrip("\n"), args.out)
    return 0


def _beta_expand_command(args) -> int:
    try:
        q = Fraction(args.beta)
    except (ValueError, ZeroDivisionError):
        raise _UsageError(f"malformed beta {args.beta!r}") from None
    try:
        digits = beta_expansion(BetaNumber.rational(q), args.digits)
    except ExpansionIsEventuallyPeriodicError as exc:
        print(
            "eventually periodic: preperiod="
            + word_str(exc.preperiod)
            + " period="
            + word_str(exc.period)
        )
        return 0
    print(word_str(digits))
    return 0


def _approx_command(args) -> int:
    system = _load_shift(args.shift)
    if not isinstance(system, CodedShift):
        raise _UsageError("approx needs a coded shift spec")
    graph = bouquet(system.generators.first(args.max_gen))
    lines = [f"alphabet {system.alphabet.size}", "sofic"]
    for src, dst, label in graph.edges:
        lines.append(
            f"edge: {graph.vertices[src]} {graph.vertices[dst]} {label}"
        )
    _emit("\n".join(lines), args.out)
    return 0


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command in ("entropy", "pressure"):
            return _pressure_command(args)
        if args.command == "witness":
            return _witness_command(args)
        if args.command == "beta-expand":
            return _beta_expand_command(args)
        if args.command == "approx":
            return _approx_command(args)
        raise _UsageError(f"unknown command {args.command!r}")
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ParseError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ShiftPressError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
