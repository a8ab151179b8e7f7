"""Exhaustive and sampled verification sweeps.

Each ``criterion_*`` function runs one sweep and returns a
:class:`CriterionResult`; :func:`run_suite` runs them all, optionally in
worker processes. Sampling uses fixed seeds so every run sees the same
instances.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

from .embed import SubspaceContext, build_iAX, is_2_comb_embedded, is_2B_comb_embedded, is_O_commutative, is_O_HS
from .enumeration import (
    DEFAULT_CAPS,
    enumerate_hypertopologies,
    enumerate_topologies,
    enumerate_tspaces,
    named_family,
    topology_masks,
)
from .errors import InternalConsistencyError
from .hprops import (
    density_report,
    ground_is_t0,
    hyper_compactness,
    hyper_is_p_infinity,
    hyper_is_t0,
    hyper_is_t1,
    isolated_points_report,
    singleton_embedding,
    t0_sufficient,
    t1_characterization,
    weight,
)
from .hypergen import (
    GroundTopology,
    b_of,
    generate_hypertopology,
    generates_topology,
    is_m_closed,
    is_tychonoff,
    is_tychonoff_type,
    m_covered_sets,
    t_of,
    tychonoff_hypertopology,
)
from .setcore import Subset, SubsetFamily, Universe, intersection_closure, union_closure
from .tspaces import HTObject, SpaceMap, alpha, functor_roundtrip_objects, is_ht_morphism, is_th_morphism, pullback_plus

__all__ = ["CriterionResult", "CRITERIA", "run_suite", "SEED"]

SEED = 20010819


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    stats: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        stats = ", ".join(f"{k}={v}" for k, v in self.stats.items())
        return f"[{mark}] {self.number}. {self.title} ({stats}; {self.elapsed:.2f}s)"


# -- instance pools -----------------------------------------------------------


def all_families(u: Universe) -> list[SubsetFamily]:
    size = 1 << u.n
    return [SubsetFamily(u, [s for s in range(size) if pick >> s & 1]) for pick in range(1 << size)]


def natural_families(u: Universe) -> list[SubsetFamily]:
    singles = [1 << i for i in range(u.n)]
    rest = [m for m in range(1 << u.n) if m.bit_count() != 1]
    return [
        SubsetFamily(u, singles + [r for j, r in enumerate(rest) if pick >> j & 1]) for pick in range(1 << len(rest))
    ]


def ht_objects(u: Universe, families=None) -> list[HTObject]:
    fams = natural_families(u) if families is None else families
    return [HTObject(O, validate=False) for M in fams for O in enumerate_hypertopologies(u.n, M, mode="plus")]


def all_maps(dom: Universe, cod: Universe):
    for img in product(range(cod.n), repeat=dom.n):
        yield SpaceMap(dom, cod, img)


def _random_family(rng: random.Random, u: Universe) -> SubsetFamily:
    return SubsetFamily(u, [s for s in range(1 << u.n) if rng.random() < 0.5])


def _timed(number, title, fn) -> CriterionResult:
    t0 = time.perf_counter()
    passed, stats = fn()
    return CriterionResult(number, title, passed, stats, time.perf_counter() - t0)


# -- criteria -----------------------------------------------------------------


def criterion_bijection() -> CriterionResult:
    def run():
        t0 = time.perf_counter()
        rep = functor_roundtrip_objects(3)
        dt = time.perf_counter() - t0
        stats = {
            "t_spaces": rep.tspaces_checked,
            "objects": rep.objects_checked,
            "counterexamples": len(rep.counterexamples),
        }
        return rep.ok and dt < 60, stats

    return _timed(1, "alpha/beta are mutually inverse", run)


def criterion_morphisms() -> CriterionResult:
    def run():
        checked = 0
        bad = 0
        objs = {n: ht_objects(Universe(n)) for n in (1, 2)}
        ts = {id(o): alpha(o) for n in objs for o in objs[n]}
        for n, n2 in product((1, 2), repeat=2):
            for src in objs[n]:
                for dst in objs[n2]:
                    for f in all_maps(src.universe, dst.universe):
                        checked += 1
                        if is_ht_morphism(f, src, dst) != is_th_morphism(f, ts[id(src)], ts[id(dst)]):
                            bad += 1
        rng = random.Random(SEED)
        u3 = Universe(3)
        pool = ht_objects(u3, [named_family(u3, k) for k in ("natural-min", "fin2", "nonempty")])
        sampled = 0
        while sampled < 200:
            src, dst = rng.choice(pool), rng.choice(pool)
            f = SpaceMap(u3, u3, [rng.randrange(3) for _ in range(3)])
            sampled += 1
            if is_ht_morphism(f, src, dst) != is_th_morphism(f, alpha(src), alpha(dst)):
                bad += 1
        return bad == 0, {"exhaustive": checked, "sampled": sampled, "counterexamples": bad}

    return _timed(2, "HT morphisms correspond to TH morphisms", run)


def _admissible(f: SpaceMap, M: SubsetFamily, M2: SubsetFamily) -> bool:
    return all(f.image_mask(m) in M2 for m in M.masks)


def criterion_pullback() -> CriterionResult:
    def run():
        checked = 0
        bad = 0
        fams = {n: all_families(Universe(n)) for n in (1, 2)}
        for n, n2 in product((1, 2), repeat=2):
            u, u2 = Universe(n), Universe(n2)
            for f in all_maps(u, u2):
                for M in fams[n]:
                    for M2 in fams[n2]:
                        if not _admissible(f, M, M2):
                            continue
                        for a in range(1 << n2):
                            left, right = pullback_plus(f, Subset(u2, a), M, M2)
                            checked += 1
                            bad += left != right
        rng = random.Random(SEED + 3)
        u3 = Universe(3)
        for _ in range(1000):
            f = SpaceMap(u3, u3, [rng.randrange(3) for _ in range(3)])
            M = _random_family(rng, u3)
            M2 = SubsetFamily(u3, set(_random_family(rng, u3).masks) | {f.image_mask(m) for m in M.masks})
            left, right = pullback_plus(f, Subset(u3, rng.randrange(8)), M, M2)
            bad += left != right
        return bad == 0, {"exhaustive": checked, "sampled": 1000, "counterexamples": bad}

    return _timed(3, "plus-sets pull back along induced maps", run)


def _example_fixture():
    u = Universe(3)
    M = u.nonempty_subsets()
    B = u.family([[], [0], [1], [2], [0, 1, 2]])
    return u, M, B, generate_hypertopology(B, M)


def criterion_fixtures() -> CriterionResult:
    def run():
        checks = {}
        u, M, B, O = _example_fixture()
        listed = {0, M.full_hyper}
        for a in range(8):
            h = 0
            for x in range(3):
                if a >> x & 1:
                    h |= 1 << M.index(1 << x)
            listed.add(h)
        checks["three_point_listing"] = O.opens == frozenset(listed)
        checks["three_point_tychonoff_type"] = is_tychonoff_type(O)
        checks["three_point_not_tychonoff"] = not is_tychonoff(O).holds
        checks["three_point_not_t0"] = not hyper_is_t0(O).holds
        checks["three_point_p_infinity"] = hyper_is_p_infinity(HTObject(O)).holds
        checks["three_point_B_O"] = b_of(O) == B
        checks["three_point_T_O_discrete"] = t_of(O) == GroundTopology.discrete(u)
        pairs = [m for m in range(8) if m.bit_count() == 2]
        closed_for = [
            is_m_closed(B, SubsetFamily(u, [1, 2, 4] + pairs + extra))
            for extra in ([], [7])
        ]
        checks["three_point_B_O_closed_for_larger_natural_M"] = all(closed_for)

        u2 = Universe(2)
        fa = u2.family([[0]])
        checks["single_cell_generates"] = generates_topology(fa, fa)
        checks["single_cell_union_not_X"] = fa.union().mask != u2.full
        u3 = Universe(3)
        fb = u3.family([[0, 1], [0, 2]])
        checks["two_cells_generates"] = generates_topology(fb, fb)
        checks["two_cells_union_is_X"] = fb.union().mask == u3.full
        checks["two_cells_not_a_base"] = not _is_base_on_x(fb)

        T = GroundTopology.indiscrete(u2)
        M2 = u2.family([[], [0, 1]])
        O2 = tychonoff_hypertopology(T, M2)
        checks["two_point_hyper_t0"] = hyper_is_t0(O2).holds
        checks["two_point_ground_not_t0"] = not ground_is_t0(T)
        failed = [k for k, v in checks.items() if not v]
        return not failed, {"checks": len(checks), "failed": failed or "none"}

    return _timed(4, "fixture verdicts match the worked examples", run)


def _is_base_on_x(B: SubsetFamily) -> bool:
    """Base axioms for a topology on ``X``: covers ``X``, and each point of ``U1 ∩ U2`` has a member between."""
    if B.union().mask != B.universe.full:
        return False
    for u1 in B.masks:
        for u2 in B.masks:
            meet = u1 & u2
            for x in range(B.universe.n):
                if meet >> x & 1 and not any(b >> x & 1 and b & ~meet == 0 for b in B.masks):
                    return False
    return True


def _sample_objects(rng: random.Random, u: Universe, count: int) -> list[HTObject]:
    fams = natural_families(u)
    cache: dict[int, list] = {}
    out = []
    while len(out) < count:
        j = rng.randrange(len(fams))
        if j not in cache:
            cache[j] = list(enumerate_tspaces(u.n, fams[j]))
        ts = rng.choice(cache[j])
        out.append(HTObject(generate_hypertopology(ts.B, ts.M), validate=False))
    return out


def _object_checks(obj: HTObject, tally: dict):
    """Dual computations on one HT object; any disagreement is tallied.

    The report builders raise on a disagreement, so most checks only need to run.
    """

    def attempt(key, fn):
        tally[key] = tally.get(key, 0) + 1
        try:
            ok = fn()
        except InternalConsistencyError:
            ok = False
        if not ok:
            tally["disagreements"] += 1

    O = obj.O

    def compact():
        d = hyper_compactness(obj).details
        return d["direct"] == d["characterization"]

    def embedding():
        rep = singleton_embedding(obj)
        return rep.holds and rep.details["t0_transfer"] and rep.details["weight_inequality"]

    attempt("t1_char", lambda: t1_characterization(obj) is not None)
    attempt("compactness", compact)
    attempt("p_infinity", lambda: hyper_is_p_infinity(obj) is not None)
    attempt("weight", lambda: weight(t_of(O)) <= weight(O))
    attempt("embedding", embedding)
    if not O.family.contains_empty:
        attempt("density", lambda: density_report(obj).holds)
        attempt("isolated", lambda: isolated_points_report(obj).holds)


def _separation_checks(B: SubsetFamily, M: SubsetFamily, tally: dict):
    O = generate_hypertopology(B, M)
    tally["separation"] = tally.get("separation", 0) + 1
    try:
        t0 = hyper_is_t0(O).holds
        hyper_is_t1(O)
        if t0_sufficient(B, M) and not t0:
            tally["disagreements"] += 1
    except InternalConsistencyError:
        tally["disagreements"] += 1


def criterion_characterizations() -> CriterionResult:
    def run():
        tally = {"disagreements": 0}
        u2 = Universe(2)
        fams2 = all_families(u2)
        for M in fams2:
            for B in fams2:
                if generates_topology(B, M):
                    _separation_checks(B, M, tally)
        for obj in ht_objects(u2):
            _object_checks(obj, tally)
        exhaustive = dict(tally)

        rng = random.Random(SEED + 5)
        u3 = Universe(3)
        sep = 0
        while sep < 500:
            M, B = _random_family(rng, u3), _random_family(rng, u3)
            if generates_topology(B, M):
                _separation_checks(B, M, tally)
                sep += 1
        for obj in _sample_objects(rng, u3, 500):
            _object_checks(obj, tally)
        stats = {
            "n2_instances": sum(v for k, v in exhaustive.items() if k != "disagreements"),
            "n3_separation_samples": sep,
            "n3_object_samples": 500,
            "disagreements": tally["disagreements"],
        }
        return tally["disagreements"] == 0, stats

    return _timed(5, "base characterizations agree with direct computation", run)


def criterion_derived_families() -> CriterionResult:
    def run():
        counts = {"uniqueness": 0, "covered_B_O": 0, "T_of_O_B": 0, "B_of_O_B": 0, "BO_M_closed": 0}
        bad = []
        for n in (1, 2, 3):
            u = Universe(n)
            tops = list(enumerate_topologies(n))
            for M in natural_families(u):
                for T in tops:
                    opens = T.opens.masks
                    O_T = tychonoff_hypertopology(T, M)
                    counts["uniqueness"] += 1
                    if b_of(O_T).masks != opens:
                        bad.append(("uniqueness", M, T))
                    for pick in range(1 << len(opens)):
                        B = SubsetFamily(u, [o for j, o in enumerate(opens) if pick >> j & 1])
                        if not generates_topology(B, M):
                            continue
                        bo = b_of(generate_hypertopology(B, M))
                        counts["covered_B_O"] += 1
                        cap = set(intersection_closure(B.masks))
                        if bo != m_covered_sets(B, M) or not cap <= set(bo.masks) or not bo <= T.opens:
                            bad.append(("covered_B_O", M, T, B))
                        if union_closure(B.masks) == set(opens):
                            counts["T_of_O_B"] += 1
                            if t_of(generate_hypertopology(B, M)) != T:
                                bad.append(("T_of_O_B", M, T, B))
                            if is_m_closed(B, M):
                                counts["B_of_O_B"] += 1
                                closed = set(intersection_closure(B.masks)) == set(B.masks)
                                if bo != B or u.full not in B or not closed:
                                    bad.append(("B_of_O_B", M, T, B))
                for O in enumerate_hypertopologies(n, M, mode="plus"):
                    counts["BO_M_closed"] += 1
                    if not is_m_closed(b_of(O), M):
                        bad.append(("BO_M_closed", M, O))
        return not bad, {**counts, "counterexamples": len(bad)}

    return _timed(6, "B_O / T_O derived-family identities on every natural-M instance", run)


def criterion_subspaces() -> CriterionResult:
    def run():
        t0 = time.perf_counter()
        stats = {"comb_pairs": 0, "iAX_maps": 0, "commutativity_spaces": 0, "tychonoff_maps": 0, "counterexamples": 0}
        # informational: the (<=) direction on non-T1 ambients, O the Tychonoff topology on CL(X)
        non_t1 = {"maps": 0, "comb_without_inverse": 0, "inverse_without_comb": 0}
        for n in (1, 2, 3):
            u = Universe(n)
            for T in enumerate_topologies(n):
                for a in range(1 << n):
                    A = Subset(u, a)
                    stats["comb_pairs"] += 1
                    if is_2_comb_embedded(A, T).holds != is_2B_comb_embedded(A, T.opens, T).holds:
                        stats["counterexamples"] += 1
                if T.is_discrete():
                    continue
                O_T = tychonoff_hypertopology(T, T.nonempty_closed())
                B_O = b_of(O_T)
                for a in range(1 << n):
                    rep = build_iAX(SubspaceContext(T, Subset(u, a), B_O), O_T)
                    non_t1["maps"] += 1
                    non_t1["comb_without_inverse"] += rep.comb_2B and not rep.inverse_continuous
                    non_t1["inverse_without_comb"] += rep.inverse_continuous and not rep.comb_2B
            T = GroundTopology.discrete(u)
            CL = T.nonempty_closed()
            O_T = tychonoff_hypertopology(T, CL)
            for O in enumerate_hypertopologies(n, CL, mode="plus"):
                B_O = b_of(O)
                all_comb = True
                for a in range(1 << n):
                    A = Subset(u, a)
                    stats["iAX_maps"] += 1
                    try:
                        rep = build_iAX(SubspaceContext(T, A, B_O), O)
                    except InternalConsistencyError:
                        stats["counterexamples"] += 1
                        continue
                    all_comb &= rep.comb_2B
                    if O == O_T:
                        stats["tychonoff_maps"] += 1
                        if rep.inverse_continuous != is_2_comb_embedded(A, T).holds:
                            stats["counterexamples"] += 1
                stats["commutativity_spaces"] += 1
                if is_O_commutative(T, O).holds != (is_O_HS(T, O).holds and all_comb):
                    stats["counterexamples"] += 1
        dt = time.perf_counter() - t0
        stats["non_t1_info"] = non_t1
        return stats["counterexamples"] == 0 and dt < 120, stats

    return _timed(7, "subspace embedding equivalences", run)


def criterion_enumeration() -> CriterionResult:
    def run():
        mismatches = []
        u = Universe(2)
        for M in natural_families(u):
            direct = enumerate_hypertopologies(2, M, mode="direct")
            bij = enumerate_hypertopologies(2, M, mode="bijection")
            plus = enumerate_hypertopologies(2, M, mode="plus")
            if set(direct) != set(bij) or set(direct) != set(plus):
                mismatches.append(("hyper", M))
        counts = {}
        for n in range(1, 4):
            a, b = topology_masks(n, "filter"), topology_masks(n, "closure")
            counts[n] = len(a)
            if set(a) != set(b):
                mismatches.append(("topologies", n))
        return not mismatches, {"topology_counts": counts, "mismatches": len(mismatches)}

    return _timed(8, "independent enumeration routes agree", run)


def criterion_cli_goldens() -> CriterionResult:
    def run():
        from .cli import golden_runs

        results = golden_runs()
        failed = [name for name, ok in results.items() if not ok]
        return not failed, {"goldens": len(results), "failed": failed or "none"}

    return _timed(9, "CLI reports match the goldens", run)


CRITERIA = {
    1: criterion_bijection,
    2: criterion_morphisms,
    3: criterion_pullback,
    4: criterion_fixtures,
    5: criterion_characterizations,
    6: criterion_derived_families,
    7: criterion_subspaces,
    8: criterion_enumeration,
    9: criterion_cli_goldens,
}


def _run_one(number: int) -> CriterionResult:
    return CRITERIA[number]()


def run_suite(workers: int = 1, only=None) -> list[CriterionResult]:
    numbers = sorted(only or CRITERIA)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, numbers))
    else:
        results = [_run_one(k) for k in numbers]
    return sorted(results, key=lambda r: r.number)
