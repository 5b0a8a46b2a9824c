"""Command-line interface.

Exit codes: 0 success, 1 a verification failed (including the synthesis
self-check), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .errors import LoomgenError, NotPureDifference, SelfCheckFailed
from .exact_linalg import to_fractions
from .poly import Polynomial, classify_pure_difference, exponent_vector, parse_system
from .render import FORMATS, LoopDocument, frac_str, load_matrix, render
from .synthesis import (
    SynthesisReport,
    canonical_generators,
    conjugate,
    ideal_chain,
    synthesize_polynomials,
    transform_polynomials,
)
from .verify import (
    DEFAULT_ITERS,
    Fail,
    PassBounded,
    PassSymbolic,
    SymbolicFail,
    VerificationOutcome,
    verify_bounded,
    verify_symbolic_diagonal,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")


def _fmt_vec(v) -> str:
    return "(" + ", ".join(frac_str(x) for x in v) + ")"


def synthesize_system(
    names: Sequence[str],
    polys: Sequence[Polynomial],
    S=None,
    check_iters: int = DEFAULT_ITERS,
) -> tuple[SynthesisReport, list[Polynomial]]:
    """Synthesise and self-check; returns the report and the polynomials it was checked on.

    With a transform ``S`` the polynomials are taken in the original frame
    and moved by ``q(x') = p(S^-1 x')``.  If those images are not binomial
    but the polynomials already are, the system is read as the binomial
    images and the original polynomials are recovered as ``p(a) = q(S a)``.
    """
    if S is None:
        report = synthesize_polynomials(polys, names)
        symbolic = verify_symbolic_diagonal(report.A, report.loop, report.binomials)
        bounded = verify_bounded(report.loop, polys, check_iters) if polys else VerificationOutcome(())
        if not (symbolic.passed and bounded.passed):
            raise SelfCheckFailed("synthesised loop failed its own verification")
        return report, list(polys)

    S = to_fractions(S)
    images = transform_polynomials(polys, S)
    try:
        report = synthesize_polynomials(images, names)
        originals = list(polys)
    except NotPureDifference:
        try:
            report = synthesize_polynomials(polys, names)
        except NotPureDifference:
            raise NotPureDifference(
                "neither the system nor its image under the transform consists of pure difference binomials"
            ) from None
        originals = [q.substitute_linear(S) for q in polys]
    report = conjugate(report, S)
    bounded = verify_bounded(report.loop, originals, check_iters) if originals else VerificationOutcome(())
    if not bounded.passed:
        raise SelfCheckFailed("conjugated loop failed bounded verification on the original polynomials")
    return report, originals


def cmd_synth(args) -> int:
    names, polys = parse_system(_read(args.system))
    S = load_matrix(_read(args.transform)) if args.transform else None
    try:
        report, _ = synthesize_system(names, polys, S, args.check_iters)
    except NotPureDifference as exc:
        print(f"error: {exc}", file=sys.stderr)
        if S is None:
            print("hint: a non-binomial system may become binomial after a change of "
                  "coordinates; supply one with --transform S.json", file=sys.stderr)
        return EXIT_USAGE
    text = render(report.loop, args.format, report)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    print(f"exactness: {report.exactness.level.name} ({report.exactness.justification}); "
          f"nontrivial: {str(report.nontrivial).lower()}", file=sys.stderr)
    return EXIT_OK


def verify_document(doc: LoopDocument, names: Sequence[str], polys: Sequence[Polynomial], iters: int):
    """Per-polynomial statuses; symbolic where the loop shape allows it, bounded otherwise."""
    if list(doc.vars) != list(names):
        raise LoomgenError(f"loop variables {list(doc.vars)} differ from system variables {list(names)}")
    loop = doc.to_loop()
    statuses = list(verify_bounded(loop, polys, iters).statuses) if polys else []
    A = doc.metadata.get("A")
    if A and not doc.metadata.get("transform") and loop.is_diagonal() and all(x == 1 for x in loop.init):
        A = tuple(tuple(int(x) for x in row) for row in A)
        for i, p in enumerate(polys):
            if not isinstance(statuses[i], PassBounded):
                continue
            try:
                b = classify_pure_difference(p)
                sym = verify_symbolic_diagonal(A, loop, [b]).statuses[0]
            except LoomgenError:
                continue
            if isinstance(sym, PassSymbolic):
                statuses[i] = sym
    return VerificationOutcome(tuple(statuses))


def cmd_verify(args) -> int:
    doc = LoopDocument.loads(_read(args.loop))
    names, polys = parse_system(_read(args.system))
    outcome = verify_document(doc, names, polys, args.iters)
    for p, status in zip(polys, outcome.statuses):
        text = p.format(names)
        if isinstance(status, PassSymbolic):
            print(f"PASS_SYMBOLIC {text}")
        elif isinstance(status, PassBounded):
            print(f"PASS_BOUNDED({status.n_max}) {text}  [bounded check, not a proof]")
        elif isinstance(status, Fail):
            print(f"FAIL {text}: n = {status.iteration}, point {_fmt_vec(status.point)}, "
                  f"value {frac_str(status.value)}")
        elif isinstance(status, SymbolicFail):
            print(f"FAIL {text}: exponent vector {status.vector}, A v = {status.residual}")
    return EXIT_OK if outcome.passed else EXIT_FAIL


def cmd_report(args) -> int:
    names, polys = parse_system(_read(args.system))
    try:
        report = synthesize_polynomials(polys, names)
    except NotPureDifference as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = []
    out.append("input I: " + ("<" + ", ".join(p.format(names) for p in polys) + ">" if polys else "<0>"))
    out.append("exponent vectors B: "
               + (", ".join(str(exponent_vector(b)) for b in report.binomials) or "{0}"))
    out.append("canonical generators J: "
               + ("<" + ", ".join(q.format(names) for q in canonical_generators(report.binomials)) + ">"
                  if polys else "<0>"))
    out.append(f"lattice L basis: {list(report.lattice.basis)}")
    out.append(f"rank L: {report.lattice.rank} (d = {len(names)})")
    out.append(f"Sat(L) basis: {list(report.saturation.saturated.basis)}")
    out.append(f"L saturated: {str(report.lattice == report.saturation.saturated).lower()}")
    out.append(f"A: {list(report.A)}")
    out.append("lambda: " + _fmt_vec(report.lambdas))
    i_j, j_l, l_s = ideal_chain(report.binomials, report.lattice)
    rel = lambda ok: "=" if ok else "⊆"
    out.append(f"chain: I {rel(i_j)} J {rel(j_l)} I_L {rel(l_s)} I_Sat(L)   (⊆: equality not certified)")
    out.append(f"exactness: {report.exactness.level.name} ({report.exactness.justification})")
    out.append(f"nontrivial: {str(report.nontrivial).lower()}")
    print("\n".join(out))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loomgen",
        description="Synthesise linear loops whose invariants include a given pure difference ideal. "
                    "Scalar multiples c(x^a - x^b) are accepted and normalised.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="synthesise a loop for a system")
    p.add_argument("system")
    p.add_argument("--transform", metavar="S.json", help='change of basis {"matrix": [["p/q", ...], ...]}')
    p.add_argument("--check-iters", type=int, default=DEFAULT_ITERS, metavar="N")
    p.add_argument("--format", choices=FORMATS, default="pseudo")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("verify", help="check a system's polynomials on a loop document")
    p.add_argument("loop")
    p.add_argument("system")
    p.add_argument("--iters", type=int, default=DEFAULT_ITERS, metavar="N")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="print the synthesis steps without emitting a loop")
    p.add_argument("system")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    for name in ("check_iters", "iters"):
        if getattr(args, name, 1) < 1:
            print(f"error: --{name.replace('_', '-')} must be at least 1", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except SelfCheckFailed as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (LoomgenError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
