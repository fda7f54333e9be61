"""Batch checks over ranges of q and d, shared by the CLI and the acceptance tests.

Every check returns a :class:`Check`; on failure ``detail`` holds the first
counterexample found.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import curve, gaps, iso, maps
from .errors import CaseNotApplicable

MAXIMALITY_QS = (9, 13, 17, 25, 29, 37, 49)
ORACLE_QS = (5, 9, 13)
MAP_QS = (13, 17, 25)
AUT_QS = (9, 13, 17, 25, 29)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    cases: int = 0

    def as_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed, "detail": self.detail}


@dataclass
class _Run:
    """Accumulates cases for one check and stops at the first failure."""

    name: str
    cases: int = 0
    failure: str = ""
    start: float = field(default_factory=time.perf_counter)

    def expect(self, ok: bool, what) -> bool:
        self.cases += 1
        if not ok and not self.failure:
            self.failure = what() if callable(what) else str(what)
        return ok

    def done(self, extra: str = "") -> Check:
        secs = time.perf_counter() - self.start
        detail = self.failure or f"{self.cases} cases{extra}"
        return Check(self.name, not self.failure, detail, secs, self.cases)


def check_maximality(qs=MAXIMALITY_QS) -> Check:
    run = _Run("maximality")
    for q in qs:
        for c in curve.valid_curves(q):
            n, bound = curve.count_places(c), curve.hasse_weil_bound(q, c.genus)
            run.expect(n == bound, lambda: f"q={q} i={c.i}: N={n}, bound={bound}")
    return run.done()


def check_oracle(qs=ORACLE_QS) -> Check:
    run = _Run("fast_vs_naive_count")
    for q in qs:
        for c in curve.valid_curves(q):
            fast, naive = curve.count_places(c, "fast"), curve.count_places(c, "naive")
            run.expect(fast == naive, lambda: f"q={q} i={c.i}: fast={fast}, naive={naive}")
    return run.done()


def check_lattice(qs=MAXIMALITY_QS) -> Check:
    run = _Run("lattice_points")
    for q in qs:
        for c in curve.valid_curves(q):
            delta, d1, d2 = gaps.triangles_for(c)
            direct, pick = len(gaps.interior_points(delta)), gaps.pick_interior_count(delta)
            run.expect(
                direct == pick == q - 1,
                lambda: f"q={q} i={c.i}: enumeration {direct}, Pick {pick}, want {q - 1}",
            )
            n1, n2 = len(gaps.interior_points(d1)), len(gaps.interior_points(d2))
            run.expect(
                n1 == n2 == (q - 1) // 4 and 4 * n1 == q - 1,
                lambda: f"q={q} i={c.i}: sub-triangles {n1}, {n2}, want {(q - 1) / 4}",
            )
    return run.done()


def check_gap_sequences(qs=MAXIMALITY_QS) -> Check:
    run = _Run("gap_sequences")
    for q in qs:
        for c in curve.valid_curves(q):
            for pc in gaps.PlaceClass:
                first, second = gaps.gap_parts(c, pc)
                run.expect(
                    not set(first) & set(second) and len(set(first)) == len(first),
                    lambda: f"q={q} i={c.i} {pc.value}: constituents overlap",
                )
                g = gaps.gap_set(c, pc)
                run.expect(len(g) == q - 1, lambda: f"q={q} i={c.i} {pc.value}: {len(g)} gaps")
                run.expect(
                    all(1 <= n <= 2 * q - 3 for n in g),
                    lambda: f"q={q} i={c.i} {pc.value}: gap outside [1, 2q-3]: {g.gaps}",
                )
                ng = gaps.nongaps(c, pc)
                run.expect(
                    gaps.is_numerical_semigroup(ng, c.genus),
                    lambda: f"q={q} i={c.i} {pc.value}: nongaps {ng} not closed",
                )
    return run.done()


def check_corollary(qs=MAXIMALITY_QS) -> Check:
    run = _Run("d_plus_2_gap_corollary")
    for q in qs:
        c = curve.validate_index(q, 1)
        n = c.d + 2
        g0, ga, gi = (gaps.gap_set(c, pc) for pc in ("zero", "alpha", "inf"))
        run.expect(
            n in g0 and n in ga and n not in gi,
            lambda: f"q={q}: d+2={n} in G0={n in g0}, Galpha={n in ga}, Ginf={n in gi}",
        )
    return run.done()


def check_counting(max_d_counts: int = 99_999, max_d_classes: int = 9_999) -> Check:
    run = _Run("counting_formulas")
    for d in range(7, max_d_counts + 1, 2):
        p1, p2 = iso.pi_count(d), iso.pi_count(d, "brute_force")
        run.expect(p1 == p2, lambda: f"d={d}: pi closed form {p1}, brute force {p2}")
        f1, f2 = iso.phi2(d), iso.phi2(d, "brute_force")
        run.expect(f1 == f2, lambda: f"d={d}: phi2 closed form {f1}, brute force {f2}")
    for d in range(7, max_d_classes + 1, 2):
        n1, n2 = iso.class_count(d), iso.class_count(d, "enumeration")
        run.expect(n1 == n2, lambda: f"d={d}: N formula {n1}, enumeration {n2}")
    return run.done()


def _expected_singletons(d: int) -> tuple[int, ...]:
    i = np.arange(1, (d - 1) // 2 + 1, dtype=np.int64)
    return tuple(i[(i * (i + 1) + 1) % d == 0].tolist())


def _structure_into(run: _Run, d: int) -> None:
    st = iso.class_stats(d)
    want = _expected_singletons(d)
    run.expect(st.singletons == want, lambda: f"d={d}: singletons {st.singletons}, want {want}")
    run.expect(
        st.pairs == ((1, (d - 1) // 2),),
        lambda: f"d={d}: pair classes {st.pairs}, want {((1, (d - 1) // 2),)}",
    )
    run.expect(set(st.size_histogram) <= {1, 2, 3}, lambda: f"d={d}: class sizes {st.size_histogram}")


def check_class_structure(max_d: int = 9_999, min_d: int = 7) -> Check:
    run = _Run("class_structure")
    for d in range(min_d, max_d + 1, 2):
        _structure_into(run, d)
    return run.done()


def check_counting_for(d: int) -> Check:
    run = _Run("counting_formulas")
    for fn, mode_a, mode_b in (
        (iso.pi_count, "closed_form", "brute_force"),
        (iso.phi2, "closed_form", "brute_force"),
        (iso.class_count, "formula", "enumeration"),
    ):
        a, b = fn(d, mode_a), fn(d, mode_b)
        run.expect(a == b, f"d={d}: {fn.__name__} {mode_a}={a}, {mode_b}={b}")
    return run.done()


ISO_KINDS = (("iso1", 0), ("iso3", 1), ("iso2", 2), ("iso4", 3))  # index into congruences()


def check_maps(qs=MAP_QS) -> Check:
    run = _Run("map_verification")
    for q in qs:
        F = curve.build_field(q)
        cs = curve.valid_curves(q)
        idx = [c.i for c in cs]
        for i in idx:
            for j in idx:
                cong = iso.congruences(i, j, cs[0].d)
                for kind, k in ISO_KINDS:
                    if cong[k]:
                        m = maps.standard_map(kind, {"i": i, "j": j}, F)
                        run.expect(maps.preserves_relation(m), lambda: f"q={q}: {kind}({i},{j}) fails")
        for c in cs:
            hs = maps.h_group(c)
            run.expect(len(hs) == 2 * (q + 1), lambda: f"q={q} i={c.i}: |H| = {len(hs)}")
            for h in hs:
                run.expect(maps.preserves_relation(h, c, c), lambda: f"q={q} i={c.i}: {h.label} fails")
            neg = maps.standard_map("negative_control", {"e": c.i}, F)
            run.expect(not maps.preserves_relation(neg), lambda: f"q={q} i={c.i}: negative control passes")
            if (c.i * c.i + c.i + 1) % c.d == 0:
                w = maps.standard_map("omega", {"i": c.i}, F)
                o = maps.order_on_curve(w, c)
                run.expect(o == 3, lambda: f"q={q} i={c.i}: omega has order {o}")
                cyc = maps.conjugation_cycle(w, c)
                run.expect(maps.is_three_cycle(cyc), lambda: f"q={q} i={c.i}: omega conjugation {cyc}")
            if c.i == 1:
                for kind in ("pi", "pi_prime"):
                    m = maps.standard_map(kind, {}, F)
                    o = maps.order_on_curve(m, c)
                    run.expect(o == 2, lambda: f"q={q}: {kind} has order {o}")
                    run.expect(not maps.in_h(m, c), lambda: f"q={q}: {kind} lies in H_1")
                run.expect(pi_from_omega1(c), lambda: f"q={q}: omega1 * H does not give pi, pi'")
    return run.done()


def pi_from_omega1(c: maps.CurveIndex) -> bool:
    """omega1 followed by (x, y) -> (+-x, y/a^2) gives exactly {pi, pi'}."""
    F = c.field
    _, a = F.special_elements()
    w1 = maps.standard_map("omega1", {}, F)
    got = [
        maps.compose(maps.standard_map("h", {"sign": s, "b": (a * a).inverse(), "i": 1}, F), w1)
        for s in (1, -1)
    ]
    want = [maps.standard_map("pi", {}, F), maps.standard_map("pi_prime", {}, F)]
    return all(maps.maps_equal_on_curve(g, w, c) for g, w in zip(got, want))


def expected_pattern(i: int, d: int) -> iso.SubfieldPattern:
    if (i * i + i + 1) % d == 0:
        return iso.SubfieldPattern.ALL_EQUAL
    if i == 1:
        return iso.SubfieldPattern.TWO_EQUAL
    return iso.SubfieldPattern.ALL_DISTINCT


SUBFIELD_CASES = ("Sigma0", "Case1", "Case2", "Case3", "Case4")


def check_subfields(max_d: int = 99, qs=MAP_QS) -> Check:
    """Pattern of the three subfields for d <= max_d, then generator relations for each q."""
    run = check_subfield_patterns(7, max_d)
    gen = _Run("subfield_profiles")
    gen.cases, gen.failure = run.cases, "" if run.passed else run.detail
    for q in qs:
        for c in curve.valid_curves(q):
            applied = 0
            for case in SUBFIELD_CASES:
                try:
                    maps.subfield_generators(c, case)
                    applied += 1
                except CaseNotApplicable:
                    pass
            gen.expect(applied == 3, lambda: f"q={q} i={c.i}: {applied} applicable cases")
    return gen.done()


def check_aut_orders(qs=AUT_QS) -> Check:
    run = _Run("aut_orders")
    run.expect(maps.aut_order(5, 1) == 360, "q=5: aut order is not 360")
    for q in qs:
        d = (q + 1) // 2
        for c in curve.valid_curves(q):
            i = c.i
            if i in (1, (d - 1) // 2):
                want = 4 * (q + 1)
            elif (i * i + i + 1) % d == 0:
                want = 3 * (q + 1)
            else:
                want = q + 1
            got = maps.aut_order(q, i)
            run.expect(got == want, lambda: f"q={q} i={i}: aut_order {got}, want {want}")
    return run.done()


ACCEPTANCE = (
    ("1 maximality", check_maximality),
    ("2 oracle equivalence", check_oracle),
    ("3 genus/lattice", check_lattice),
    ("4 gap sequences", check_gap_sequences),
    ("5 corollary d+2", check_corollary),
    ("6 counting formulas", check_counting),
    ("7 class structure", check_class_structure),
    ("8 map verification", check_maps),
    ("9 subfield profiles", check_subfields),
    ("10 automorphism orders", check_aut_orders),
)


def check_subfield_patterns(min_d: int, max_d: int) -> Check:
    run = _Run("subfield_patterns")
    for d in range(min_d, max_d + 1, 2):
        # the lemma covers 1 <= i <= (d-3)/2; (d-1)/2 names a copy of F_1
        for i in iso.valid_indices(d):
            if i > (d - 3) // 2:
                continue
            prof = iso.subfield_indices(i, d)
            want = expected_pattern(i, d)
            run.expect(prof.pattern is want, lambda: f"d={d} i={i}: {prof}, want {want.value}")
            run.expect(
                prof.has_roquette == (i == 1),
                lambda: f"d={d} i={i}: F_(d-1) present = {prof.has_roquette}",
            )
    return run.done()


def checks_for_q(q: int) -> list[Check]:
    """Every acceptance check restricted to one q (and its d = (q+1)/2)."""
    d = (q + 1) // 2
    out = [check_maximality((q,)), check_lattice((q,)), check_gap_sequences((q,))]
    if q <= curve.NAIVE_Q_LIMIT:
        out.append(check_oracle((q,)))
    if q > 5:
        out += [check_corollary((q,)), check_maps((q,)), check_subfields(0, (q,))]
    if d >= 7:
        out += [check_counting_for(d), check_class_structure(d, d), check_subfield_patterns(d, d)]
    out.append(check_aut_orders((q,) if q > 5 else ()))
    return out
