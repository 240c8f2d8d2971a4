"""Command-line entry point: ``qhecke <command> [options]``.

Every command prints text by default and a JSON document with ``--json``.
The exit code is 0 exactly when every check the command performs passes.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .charpoly import CharPoly
from .coalg import a_shape, comultiply, delta, format_tensor, graded_coalgebra, is_grouplike, is_parabolic
from .comod import character, check_exact_sequence, weight_module
from .exactmath import ParamSpec, QHeckeError, fmt_scalar, to_scalar
from .expr import parse
from .freealg import (
    algebra,
    basis,
    check_diamond,
    check_shape,
    determinant_commutation_defects,
    format_word,
    quantum_determinant,
    word_to_omega,
)
from .functors import apply_word, check_preaction_diagrams
from .heckedem import compare_character, demazure_word, hecke_of_word
from .schur import schur_algebra


@dataclass(frozen=True)
class Config:
    n: int = 3
    r: int = 2
    alpha: Fraction = Fraction(1)
    beta: Fraction = Fraction(1)
    output: str = "text"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.r < 0:
            raise ValueError("r must be non-negative")
        if not self.alpha or not self.beta:
            raise ValueError("alpha and beta must be nonzero")

    @property
    def params(self) -> ParamSpec:
        return ParamSpec(self.alpha, self.beta)


def _ints(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    text = text.strip()
    if not text:
        return ()
    return tuple(int(x) for x in text.replace(" ", "").split(","))


def _rational(text: str) -> Fraction:
    try:
        return to_scalar(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


class _Out:
    """Collects text lines or a JSON payload, plus an overall pass flag."""

    def __init__(self, cfg: Config):
        self.cfg = cfg
        self.lines: list[str] = []
        self.data: dict = {}
        self.ok = True

    def line(self, s: str = ""):
        self.lines.append(s)

    def emit(self):
        if self.cfg.output == "json":
            print(json.dumps(self.data, indent=2, sort_keys=False))
        else:
            print("\n".join(self.lines))
        return 0 if self.ok else 1


def _shape(args, n):
    return check_shape(n, _ints(args.shape))


def cmd_nf(cfg: Config, args, out: _Out):
    b = _shape(args, cfg.n)
    combo = parse(args.expr, cfg.n)
    x = algebra(cfg.n, b, cfg.params).reduce(combo)
    out.data = x.to_json()
    out.line(str(x))


def cmd_diamond(cfg: Config, args, out: _Out):
    rep = check_diamond(cfg.n, _shape(args, cfg.n), cfg.params)
    out.ok = rep.passed
    out.data = rep.to_json()
    out.line(f"{rep.checked} ambiguities checked: {'pass' if rep.passed else 'fail'}")
    for w, l, r in rep.failures:
        out.line(f"  {format_word(w)}: {l} != {r}")


def cmd_basis(cfg: Config, args, out: _Out):
    b = _shape(args, cfg.n)
    words = basis(cfg.n, b, cfg.r)
    out.data = {
        "n": cfg.n,
        "shape": list(b) if b else None,
        "r": cfg.r,
        "dim": len(words),
        "basis": [[list(row) for row in word_to_omega(w, cfg.n)] for w in words],
    }
    out.line(f"dim = {len(words)}")
    for w in words:
        out.line("  " + format_word(w))


def cmd_det(cfg: Config, args, out: _Out):
    b = _shape(args, cfg.n)
    d = quantum_determinant(cfg.n, cfg.params, b)
    bad = determinant_commutation_defects(cfg.n, cfg.params, b)
    grouplike = is_grouplike(d) if b is None or is_parabolic(b) else None
    out.ok = not bad and grouplike is not False
    out.data = {
        "det": d.to_json(),
        "row_equals_column": True,
        "grouplike": grouplike,
        "commutation_failures": [list(g) for g in bad],
    }
    out.line(f"d = {d}")
    out.line("row and column expansions agree")
    if grouplike is not None:
        out.line(f"Delta(d) = d (x) d: {grouplike}")
    out.line("commutation: " + ("ok" if not bad else f"fails at {bad}"))


def cmd_delta(cfg: Config, args, out: _Out):
    b = _shape(args, cfg.n)
    x = algebra(cfg.n, b, cfg.params).reduce(parse(args.expr, cfg.n))
    terms = comultiply(x)
    out.data = {
        "element": x.to_json(),
        "coproduct": [
            {"left": [list(g) for g in w1], "right": [list(g) for g in w2], "coeff": fmt_scalar(c)}
            for (w1, w2), c in sorted(terms.items())
        ],
    }
    out.line(f"Delta({x}) = {format_tensor(terms)}")


def _weight(args, cfg: Config) -> tuple[int, ...]:
    lam = _ints(args.weight)
    if lam is None:
        raise ValueError("--weight is required")
    if len(lam) != cfg.n:
        raise ValueError(f"--weight needs {cfg.n} entries")
    return lam


def cmd_apply(cfg: Config, args, out: _Out):
    lam = _weight(args, cfg)
    word = _ints(args.word) or ()
    M = apply_word(weight_module(lam, cfg.params), word)
    ch = character(M)
    out.data = {"word": list(word), "weight": list(lam), "dim": M.dim, "comodule": M.to_json(), "character": ch.to_json()}
    out.line(f"dim = {M.dim}")
    out.line(f"character = {ch}")
    out.lines.extend(M.describe())


def cmd_char(cfg: Config, args, out: _Out):
    lam = _weight(args, cfg)
    rep = compare_character(_ints(args.word) or (), lam, cfg.n, cfg.params)
    out.ok = rep.status != "fail"
    out.data = rep.to_json()
    out.line(f"ch = {rep.character}")
    out.line(f"demazure = {rep.expected}")
    out.line(f"status: {rep.status}")


def cmd_demazure(cfg: Config, args, out: _Out):
    lam = _weight(args, cfg)
    word = _ints(args.word) or ()
    f = demazure_word(word, CharPoly.monomial(lam))
    h = hecke_of_word(word, cfg.n)
    out.data = {"word": list(word), "weight": list(lam), "hecke": list(h.perm.word), "result": f.to_json()}
    out.line(f"{h}: {f}")


def cmd_diagrams(cfg: Config, args, out: _Out):
    mods = [weight_module(a, cfg.params) for a in product(range(cfg.r + 1), repeat=cfg.n) if sum(a) == cfg.r]
    rep = check_preaction_diagrams(cfg.n, cfg.r, mods)
    out.ok = rep.passed
    out.data = {"n": cfg.n, "r": cfg.r, "families": sorted(rep.families()), "passed": rep.passed, "results": rep.to_json()}
    fams = sorted(rep.families())
    for fam in fams:
        rs = [x for x in rep.results if x.family == fam]
        good = sum(x.status == "pass" for x in rs)
        out.line(f"family {fam}: {good}/{len(rs)} pass")
    if not fams:
        out.line("no applicable families")
    for x in rep.results:
        if x.status != "pass":
            out.line(f"  {x.family} {x.indices} {x.module}: {x.status} {x.detail}")


def cmd_exactseq(cfg: Config, args, out: _Out):
    b = _shape(args, cfg.n) or delta(cfg.n)
    rep = check_exact_sequence(b, args.l, cfg.r, cfg.params)
    out.ok = rep.passed
    out.data = rep.to_json()
    out.line(f"dims {rep.dims}, ranks {rep.ranks}")
    for name, ok in rep.checks.items():
        out.line(f"  {name}: {'ok' if ok else 'FAIL'}")


def cmd_schur(cfg: Config, args, out: _Out):
    A = schur_algebra(cfg.n, cfg.r, cfg.params, check=False)
    data = A.to_json()
    out.ok = data["associative"] and data["unit_ok"]
    out.data = data
    out.line(f"dim = {A.dim}, associative = {data['associative']}, unit = {data['unit_ok']}")
    for (p, q), v in sorted(A.table.items()):
        rhs = " + ".join(("" if c == 1 else f"({fmt_scalar(c)}) ") + A.label(k) for k, c in sorted(v.items()))
        out.line(f"  {A.label(p)} {A.label(q)} = {rhs}")


COMMANDS = {
    "nf": (cmd_nf, "normal form of an expression"),
    "diamond": (cmd_diamond, "resolve all overlap ambiguities"),
    "basis": (cmd_basis, "normal monomials of degree r"),
    "det": (cmd_det, "quantum determinant and its properties"),
    "delta": (cmd_delta, "coproduct of an expression"),
    "apply": (cmd_apply, "apply a word of induction functors to k_weight"),
    "char": (cmd_char, "compare a character with the Demazure word"),
    "demazure": (cmd_demazure, "apply Demazure operators to x^weight"),
    "diagrams": (cmd_diagrams, "check the commuting diagrams on k_a, |a| = r"),
    "exactseq": (cmd_exactseq, "check the graded short exact sequence"),
    "schur": (cmd_schur, "structure constants of the dual algebra"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=3)
    common.add_argument("--r", type=int, default=2)
    common.add_argument("--alpha", type=_rational, default=Fraction(1))
    common.add_argument("--beta", type=_rational, default=Fraction(1))
    common.add_argument("--shape", help="comma separated, e.g. 1,2,3")
    common.add_argument("--json", action="store_true")
    p = argparse.ArgumentParser(prog="qhecke", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        s = sub.add_parser(name, parents=[common], help=help_)
        if name in ("nf", "delta"):
            s.add_argument("expr")
        if name in ("apply", "char", "demazure"):
            s.add_argument("--word", default="", help="functor letters in application order, e.g. 2,1")
            s.add_argument("--weight")
        if name == "exactseq":
            s.add_argument("--l", type=int, required=True)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = Config(args.n, args.r, args.alpha, args.beta, "json" if args.json else "text")
        out = _Out(cfg)
        COMMANDS[args.command][0](cfg, args, out)
    except (QHeckeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return out.emit()


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
