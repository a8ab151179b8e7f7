"""Command-line front end.

Spaces are read from JSON documents::

    {"n": 3, "M": [[0], [1], [2], [0, 1]], "B": [[], [0], [0, 1, 2]],
     "T": [...], "O_base": true, "map": [0, 0, 1], "codomain": {...}}

``B`` and ``T`` are optional. The hypertopology is ``O_B`` when ``B`` is
given and either ``O_base`` is true or ``T`` is absent; otherwise it is the
Tychonoff topology ``O_T``.

Exit codes: 0 the checked property holds, 1 it fails, 2 bad input, unmet
hypothesis, unknown predicate or exceeded cap, 3 internal disagreement.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from dataclasses import dataclass
from importlib import resources
from typing import Callable

from .embed import SubspaceContext, build_iAX, is_2_comb_embedded, is_2B_comb_embedded, is_O_commutative, is_O_HS
from .enumeration import Caps, census, enumerate_tspaces, named_family
from .errors import HypertopError, HypothesisError, InternalConsistencyError
from .hprops import (
    PropertyReport,
    density,
    density_report,
    hyper_compactness,
    hyper_is_p_infinity,
    hyper_is_t0,
    hyper_is_t1,
    is_p_infinity,
    isolated_points_report,
    singleton_embedding,
    t0_sufficient,
    t1_characterization,
    weight,
)
from .hypergen import (
    GroundTopology,
    HyperTopology,
    b_of,
    check_U1,
    generate_hypertopology,
    generates_topology,
    is_m_base,
    is_m_closed,
    is_m_cover,
    is_network,
    is_tychonoff,
    is_tychonoff_type,
    m_closed_violation,
    mb_conditions,
    mb_violation,
    t_of,
    topologies_equal_CO,
    tychonoff_hypertopology,
)
from .setcore import Subset, SubsetFamily, Universe, elements
from .tspaces import HTObject, SpaceMap, TSpace, alpha, beta, is_ht_morphism, is_th_morphism, pullback_plus

__all__ = ["main", "run", "PREDICATES", "SpaceDocument", "render_text", "golden_runs", "GOLDENS"]

EXIT_HOLDS, EXIT_FAILS, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3
DEFAULT_CAP_M = 24


def _ids(mask: int) -> list[int]:
    return list(elements(mask))


def _fam(F: SubsetFamily) -> list[list[int]]:
    return [_ids(m) for m in F.masks]


def _hyper(O: HyperTopology, hmask: int) -> list[list[int]]:
    return [_ids(O.family.masks[i]) for i in elements(hmask)]


# -- documents ----------------------------------------------------------------


@dataclass
class SpaceDocument:
    """A parsed space file."""

    universe: Universe
    M: SubsetFamily
    B: SubsetFamily | None = None
    T: GroundTopology | None = None
    O_base: bool = False
    map: tuple[int, ...] | None = None
    codomain: SpaceDocument | None = None

    @classmethod
    def from_dict(cls, d: dict, cap_m: int = DEFAULT_CAP_M) -> SpaceDocument:
        if not isinstance(d, dict):
            raise HypertopError("a space document must be a JSON object")
        unknown = set(d) - {"n", "M", "B", "T", "O_base", "map", "codomain"}
        if unknown:
            raise HypertopError(f"unknown document fields: {sorted(unknown)}")
        if "n" not in d or "M" not in d:
            raise HypertopError("a space document needs the fields n and M")
        u = Universe(d["n"])

        def family(key):
            raw = d[key]
            if not isinstance(raw, list) or not all(isinstance(s, list) for s in raw):
                raise HypertopError(f"field {key} must be a list of element-id lists")
            return u.family(raw)

        M = family("M")
        if len(M) > cap_m:
            raise HypertopError(f"|M| = {len(M)} exceeds the cap of {cap_m}")
        B = family("B") if "B" in d else None
        T = GroundTopology(u, family("T")) if "T" in d else None
        cod = cls.from_dict(d["codomain"], cap_m) if "codomain" in d else None
        fmap = None
        if "map" in d:
            if cod is None:
                raise HypertopError("a map needs a codomain document")
            fmap = tuple(d["map"])
            SpaceMap(u, cod.universe, fmap)
        return cls(u, M, B, T, bool(d.get("O_base", False)), fmap, cod)

    @classmethod
    def load(cls, path: str, cap_m: int = DEFAULT_CAP_M) -> SpaceDocument:
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise HypertopError(f"cannot read {path}: {exc.strerror}") from exc
        except json.JSONDecodeError as exc:
            raise HypertopError(f"malformed JSON in {path}: {exc.msg} at line {exc.lineno}") from exc
        return cls.from_dict(data, cap_m)

    def need_B(self) -> SubsetFamily:
        if self.B is None:
            raise HypertopError("this command needs the field B")
        return self.B

    def need_T(self) -> GroundTopology:
        if self.T is None:
            raise HypertopError("this command needs the field T")
        return self.T

    def hypertopology(self) -> HyperTopology:
        if self.B is not None and (self.O_base or self.T is None):
            return generate_hypertopology(self.B, self.M)
        if self.T is not None:
            return tychonoff_hypertopology(self.T, self.M)
        raise HypertopError("a hypertopology needs B or T")

    def ground(self) -> GroundTopology:
        """``T`` when given, else ``T_O``."""
        return self.T if self.T is not None else t_of(self.hypertopology())

    def space_map(self) -> SpaceMap:
        if self.map is None:
            raise HypertopError("this command needs the fields map and codomain")
        return SpaceMap(self.universe, self.codomain.universe, self.map)


# -- predicate registry -------------------------------------------------------


@dataclass(frozen=True)
class Predicate:
    name: str
    func: Callable
    run: Callable  # (doc, args) -> PropertyReport
    summary: str


def _bool(name, holds, witness=None, **details) -> PropertyReport:
    return PropertyReport(name, bool(holds), witness=None if holds else witness, details=details)


def _subset_arg(u: Universe, args) -> Subset:
    if args.subset is None:
        raise HypertopError("this predicate needs --subset, e.g. --subset 0,1")
    text = args.subset.strip()
    ids = [int(t) for t in text.split(",")] if text else []
    return u.subset(ids)


def _p_generates(doc, args):
    bad = mb_violation(doc.need_B(), doc.M)
    wit = None if bad is None else {"condition": bad[0], "sets": [_ids(m) for m in bad[1]]}
    return _bool("generates", bad is None, wit)


def _p_mb_literal(doc, args):
    bad = mb_violation(doc.need_B(), doc.M, literal=True)
    wit = None if bad is None else {"condition": bad[0], "sets": [_ids(m) for m in bad[1]]}
    return _bool("mb_conditions", bad is None, wit)


def _p_tychonoff(doc, args):
    v = is_tychonoff(doc.hypertopology(), cap_n=args.cap_n)
    rep = PropertyReport("tychonoff", v.holds, details={"method": v.method})
    if v.holds:
        rep.details["witnesses"] = [_fam(T.opens) for T in v.witnesses]
    else:
        O = doc.hypertopology()
        if is_tychonoff_type(O):
            rep.witness = {"B_O": _fam(b_of(O)), "T_O": _fam(t_of(O).opens)}
    return rep


def _p_m_closed(doc, args):
    bad = m_closed_violation(doc.need_B(), doc.M)
    return _bool("m_closed", bad is None, {"covered_but_missing": _ids(bad) if bad is not None else None})


def _p_t1_char(doc, args):
    return t1_characterization(HTObject(doc.hypertopology()))


def _loose(doc):
    return HTObject(doc.hypertopology(), validate=False)


def _cl_hyper(doc):
    T = doc.need_T()
    if doc.M != T.nonempty_closed():
        raise HypothesisError("M must be CL(X), the nonempty closed sets of T")
    return T, doc.hypertopology()


def _p_iax(doc, args):
    T, O = _cl_hyper(doc)
    A = _subset_arg(doc.universe, args)
    rep = build_iAX(SubspaceContext(T, A, b_of(O)), O)
    d = rep.to_dict()
    return PropertyReport("iAX", rep.embedding, witness=None if rep.embedding else {"A": d["A"]}, details=d)


def _p_tspace(doc, args):
    try:
        TSpace(doc.need_B(), doc.M)
    except HypothesisError:
        raise
    except HypertopError as exc:
        if "needs the field" in str(exc):
            raise
        return PropertyReport("tspace", False, witness={"reason": str(exc)})
    return PropertyReport("tspace", True)


def _morphism_pair(doc):
    f = doc.space_map()
    src = HTObject(doc.hypertopology())
    dst = HTObject(doc.codomain.hypertopology())
    return f, src, dst


def _p_ht(doc, args):
    f, src, dst = _morphism_pair(doc)
    return _bool("ht_morphism", is_ht_morphism(f, src, dst), {"map": list(f.image)})


def _p_th(doc, args):
    f, src, dst = _morphism_pair(doc)
    return _bool("th_morphism", is_th_morphism(f, alpha(src), alpha(dst)), {"map": list(f.image)})


def _p_pullback(doc, args):
    f = doc.space_map()
    A2 = _subset_arg(doc.codomain.universe, args)
    left, right = pullback_plus(f, A2, doc.M, doc.codomain.M)
    M = doc.M
    details = {"f_m_preimage": [_ids(M.masks[i]) for i in elements(left.mask)],
               "plus_of_preimage": [_ids(M.masks[i]) for i in elements(right.mask)]}
    return _bool("pullback", left == right, {"A_prime": _ids(A2.mask)}, **details)


def _reg(name, func, run, summary):
    return name, Predicate(name, func, run, summary)


PREDICATES: dict[str, Predicate] = dict(
    [
        _reg("generates", generates_topology, _p_generates, "B generates a topology on M (MB1, MB2)"),
        _reg("mb-conditions", mb_conditions, _p_mb_literal, "MB1 and MB2 with U3 inside U1 ∩ U2"),
        _reg("tychonoff-type", is_tychonoff_type,
             lambda d, a: _bool("tychonoff_type", is_tychonoff_type(d.hypertopology())),
             "plus-set opens form a base"),
        _reg("tychonoff", is_tychonoff, _p_tychonoff, "generated by a topology on X"),
        _reg("m-closed", is_m_closed, _p_m_closed, "B contains every set it M-covers"),
        _reg("m-cover", is_m_cover,
             lambda d, a: _bool("m_cover", is_m_cover(d.need_B(), _subset_arg(d.universe, a), d.M)),
             "B is an M-cover of --subset"),
        _reg("m-base", is_m_base, lambda d, a: _bool("m_base", is_m_base(d.need_B(), d.need_T(), d.M)),
             "B is an M-base of T"),
        _reg("network", is_network, lambda d, a: _bool("network", is_network(d.M, d.ground())),
             "M is a network for T (or T_O)"),
        _reg("u1", check_U1, lambda d, a: _bool("u1", check_U1(d.need_B(), d.M)),
             "every point of every B-member sits in an M-member inside it"),
        _reg("co-equal", topologies_equal_CO,
             lambda d, a: _bool("co_equal", topologies_equal_CO(d.need_B(), d.need_T().opens, d.M)),
             "B and the opens of T generate the same topology on M"),
        _reg("t0", hyper_is_t0, lambda d, a: hyper_is_t0(d.hypertopology()), "hyperspace is T0"),
        _reg("t1", hyper_is_t1, lambda d, a: hyper_is_t1(d.hypertopology()), "hyperspace is T1"),
        _reg("t0-sufficient", t0_sufficient,
             lambda d, a: _bool("t0_sufficient", t0_sufficient(d.need_B(), d.M)),
             "base-level sufficient condition for T0"),
        _reg("t1-characterization", t1_characterization, _p_t1_char, "T1 iff T_O is T1 and M is the singletons"),
        _reg("compactness", hyper_compactness, lambda d, a: hyper_compactness(_loose(d)), "hyperspace compactness"),
        _reg("p-infinity", hyper_is_p_infinity, lambda d, a: hyper_is_p_infinity(_loose(d)),
             "P-infinity at the family, hyperspace and ground levels"),
        _reg("family-p-infinity", is_p_infinity, lambda d, a: _bool("family_p_infinity", is_p_infinity(d.need_B())),
             "B is closed under intersections"),
        _reg("density", density_report, lambda d, a: density_report(_loose(d)), "d(M, O) = d(X, T_O)"),
        _reg("isolated-points", isolated_points_report, lambda d, a: isolated_points_report(_loose(d)),
             "isolated points on both sides or neither"),
        _reg("singleton-embedding", singleton_embedding, lambda d, a: singleton_embedding(_loose(d)),
             "x -> {x} is a homeomorphic embedding"),
        _reg("2-comb", is_2_comb_embedded,
             lambda d, a: is_2_comb_embedded(_subset_arg(d.universe, a), d.need_T()),
             "--subset is 2-combinatorially embedded"),
        _reg("2B-comb", is_2B_comb_embedded,
             lambda d, a: is_2B_comb_embedded(_subset_arg(d.universe, a), d.need_B(), d.need_T()),
             "--subset is 2_B-combinatorially embedded"),
        _reg("iax", build_iAX, _p_iax, "i_{A,X} is a homeomorphic embedding for A = --subset"),
        _reg("o-hs", is_O_HS, lambda d, a: is_O_HS(*_cl_hyper(d)), "every i_{A,X} is continuous"),
        _reg("o-commutative", is_O_commutative, lambda d, a: is_O_commutative(*_cl_hyper(d)),
             "every i_{A,X} is an embedding"),
        _reg("tspace", TSpace, _p_tspace, "(X, B, M) is a T-space"),
        _reg("ht-morphism", is_ht_morphism, _p_ht, "map is an HT morphism"),
        _reg("th-morphism", is_th_morphism, _p_th, "map is a TH morphism between the images under alpha"),
        _reg("pullback", pullback_plus, _p_pullback, "plus-set pullback identity at A' = --subset"),
    ]
)


# -- rendering ----------------------------------------------------------------


def _render_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, list):
        return "{" + ",".join(_render_value(x) for x in v) + "}" if all(
            isinstance(x, int) and not isinstance(x, bool) for x in v
        ) else "[" + ", ".join(_render_value(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_render_value(x)}" for k, x in sorted(v.items())) + "}"
    return str(v)


def render_text(rep: PropertyReport) -> str:
    """Human-readable report; subsets print as ``{0,1}``."""
    lines = [f"property: {rep.name}", f"holds: {_render_value(rep.holds)}"]
    for title, block in (("witness", rep.witness), ("details", rep.details)):
        if block:
            lines.append(f"{title}:")
            lines.extend(f"  {k}: {_render_value(v)}" for k, v in sorted(block.items()))
    if rep.hypothesis_violations:
        lines.append("hypothesis violations: " + ", ".join(rep.hypothesis_violations))
    lines.extend(f"note: {n}" for n in rep.notes)
    return "\n".join(lines) + "\n"


def render_json(rep: PropertyReport) -> str:
    return json.dumps(rep.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- commands -----------------------------------------------------------------


def _doc(args) -> SpaceDocument:
    if not args.space:
        raise HypertopError("this command needs --space <file>")
    return SpaceDocument.load(args.space, args.cap_m)


def cmd_validate(args) -> PropertyReport:
    doc = _doc(args)
    details = {"n": doc.universe.n, "M_size": len(doc.M), "M_natural": doc.M.is_natural,
               "M_contains_empty": doc.M.contains_empty}
    witness = None
    if doc.B is not None:
        bad = mb_violation(doc.B, doc.M)
        details["B_generates"] = bad is None
        if bad is not None:
            witness = {"condition": bad[0], "sets": [_ids(m) for m in bad[1]]}
    if doc.T is not None:
        details["T_valid"] = True
    if doc.codomain is not None:
        details["codomain_n"] = doc.codomain.universe.n
    return PropertyReport("validate", witness is None, witness=witness, details=details)


def cmd_derive(args) -> PropertyReport:
    doc = _doc(args)
    O = doc.hypertopology()
    details = {
        "O": [_hyper(O, o) for o in O.sorted_opens()],
        "tychonoff_type": is_tychonoff_type(O),
    }
    if details["tychonoff_type"]:
        T_O = t_of(O)
        details.update(
            B_O=_fam(b_of(O)),
            T_O=_fam(T_O.opens),
            weight_hyper=weight(O),
            weight_ground=weight(T_O),
            density_hyper=density(O),
            density_ground=density(T_O),
        )
    if doc.B is not None:
        details["O_B_from_B"] = O.generating_base == doc.B
    return PropertyReport("derive", True, details=details)


def cmd_check(args) -> PropertyReport:
    name = args.predicate_pos or args.predicate
    if not name:
        raise HypertopError("check needs a predicate name")
    if name not in PREDICATES:
        raise HypertopError(f"unknown predicate {name!r}; known: {', '.join(sorted(PREDICATES))}")
    return PREDICATES[name].run(_doc(args), args)


def cmd_bijection(args) -> PropertyReport:
    doc = _doc(args)
    obj = HTObject(doc.hypertopology())
    ts = alpha(obj)
    back = beta(ts)
    again = alpha(back)
    holds = back == obj and again == ts
    details = {
        "B_O": _fam(ts.B),
        "O_size": len(obj.O),
        "beta_alpha_identity": back == obj,
        "alpha_beta_identity": again == ts,
    }
    return PropertyReport("bijection", holds, details=details)


def cmd_morphism(args) -> PropertyReport:
    doc = _doc(args)
    f, src, dst = _morphism_pair(doc)
    ht = is_ht_morphism(f, src, dst)
    th = is_th_morphism(f, alpha(src), alpha(dst))
    if ht != th:
        raise InternalConsistencyError("HT and TH morphism verdicts disagree")
    return PropertyReport("morphism", ht, details={"map": list(f.image), "ht_morphism": ht, "th_morphism": th})


def cmd_enumerate(args) -> PropertyReport:
    if args.n is None:
        raise HypertopError("enumerate needs --n")
    caps = Caps(n=args.cap_n)
    if args.m == "file":
        doc = _doc(args)
        if doc.universe.n != args.n:
            raise HypertopError("--n does not match the document")
        M, desc = doc.M, "file"
    else:
        u = Universe(args.n)
        M, desc = named_family(u, args.m), args.m
    if args.census:
        c = census(args.n, M, desc, caps)
        counts = c.to_dict()["counts"]
        holds = not M.is_natural or counts["t_spaces"] == counts["tychonoff_type"]
        return PropertyReport("census", holds, details=c.to_dict())
    spaces = [_fam(ts.B) for ts in enumerate_tspaces(args.n, M, cap_n=caps.n)]
    return PropertyReport("tspaces", True, details={"n": args.n, "M": desc, "count": len(spaces), "B": spaces})


def cmd_suite(args):
    from .suite import run_suite

    results = run_suite(workers=args.workers)
    if args.format == "json":
        out = [{"criterion": r.number, "title": r.title, "passed": r.passed, "stats": r.stats} for r in results]
        sys.stdout.write(json.dumps(out, sort_keys=True, indent=2) + "\n")
    else:
        for r in results:
            sys.stdout.write(r.line() + "\n")
    return EXIT_HOLDS if all(r.passed for r in results) else EXIT_FAILS


COMMANDS = {
    "validate": cmd_validate,
    "derive": cmd_derive,
    "check": cmd_check,
    "bijection": cmd_bijection,
    "morphism": cmd_morphism,
    "enumerate": cmd_enumerate,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--space", help="space document (JSON)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--cap-n", type=int, default=4, help="largest ground set for exhaustive searches")
    common.add_argument("--cap-m", type=int, default=DEFAULT_CAP_M, help="largest M accepted from a document")

    parser = argparse.ArgumentParser(prog="hypertop", description="Tychonoff-type hypertopologies on finite sets")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="parse a document and check its invariants")
    sub.add_parser("derive", parents=[common], help="print O, B_O, T_O and cardinal invariants")
    chk = sub.add_parser("check", parents=[common], help="evaluate a named predicate")
    chk.add_argument("predicate_pos", nargs="?", metavar="predicate")
    chk.add_argument("--predicate")
    chk.add_argument("--subset", help="comma-separated element ids")
    sub.add_parser("bijection", parents=[common], help="alpha/beta round trip on the document")
    sub.add_parser("morphism", parents=[common], help="HT and TH verdicts for the embedded map")
    en = sub.add_parser("enumerate", parents=[common], help="enumerate T-spaces or print a census")
    en.add_argument("--n", type=int)
    en.add_argument("--m", choices=("natural-min", "fin2", "nonempty", "file"), default="natural-min")
    en.add_argument("--census", action="store_true")
    sub.add_parser("suite", parents=[common], help="run the verification suite")
    return parser


def run(argv) -> int:
    """Run one command; output goes to stdout, diagnostics to stderr."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_HOLDS
    try:
        if args.command == "suite":
            return cmd_suite(args)
        rep = COMMANDS[args.command](args)
    except InternalConsistencyError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (HypertopError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(render_json(rep) if args.format == "json" else render_text(rep))
    return EXIT_HOLDS if rep.holds else EXIT_FAILS


def main(argv=None) -> None:
    sys.exit(run(sys.argv[1:] if argv is None else argv))


# -- goldens ------------------------------------------------------------------

# (name, argv with {example} for the bundled document, expected exit code)
GOLDENS = [
    ("check_t0", ["check", "t0", "--space", "{example}"], EXIT_FAILS),
    ("bijection", ["bijection", "--space", "{example}"], EXIT_HOLDS),
    ("census_n2", ["enumerate", "--n", "2", "--m", "natural-min", "--census"], EXIT_HOLDS),
]


def _data(name: str):
    return resources.files("hypertop").joinpath("data", name)


def capture(argv) -> tuple[int, str]:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = run(argv)
    return code, buf.getvalue()


def golden_runs() -> dict[str, bool]:
    """Run each golden command and compare output bytes and exit code."""
    out = {}
    with resources.as_file(_data("example3.json")) as example:
        for name, argv, code in GOLDENS:
            got_code, text = capture([a.replace("{example}", str(example)) for a in argv])
            expected = _data(f"golden_{name}.txt").read_text(encoding="utf-8")
            out[name] = got_code == code and text == expected
    return out
