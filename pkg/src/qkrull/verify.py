"""Seeded property checks over a corpus of quotient rings.

Every property is evaluated on every corpus ring; inapplicable pairs are
reported as skips with a machine-readable reason.  Verdicts and the report
are fully determined by the :class:`CorpusSpec`.
"""
from __future__ import annotations

import random
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations_with_replacement
from typing import Callable

from .content import content_q_lemma_check, dm_check, t_degree
from .errors import PreconditionNotMet
from .groebner import PolyIdeal
from .monomial_ideals import MonomialIdeal
from .poly import PolyRing
from .qring import (QuotientRing, RIdeal, analyze, extend_poly, extend_prime, height,
                    is_tau_q_vnr, krull_dimension, minimal_primes, q_closure,
                    q_closure_member, q_dim, q_dim_chain_oracle, q_max, quotient_by_nil,
                    tau_q_vnr_views)

# Each property id with the claim it checks.
CLAIMS = {
    "P-QLEQ": "q-dim(R) <= dim(R)",
    "P-VNR": "R is tau_q-von Neumann regular iff R is reduced with q-dim(R) = 0",
    "P-NIL": "q-dim(R) >= q-dim(R/Nil(R))",
    "P-MIN": "Min(R) is compact (finite and nonempty for Noetherian R)",
    "P-COR25": "with property A, q-dim(R) = sup of heights of associated primes",
    "P-REM28": "k[x,y_1..y_n]/(x^2, x*y_i) has q-dim n while its reduction has q-dim 0",
    "P-DM": "Dedekind-Mertens: c(g)^(k+1) c(f) = c(g)^k c(gf) for some k <= deg f",
    "P-CQL": "c(gf)_q = c(f)_q whenever g is a non-zero-divisor of R[t]",
    "P-MAXEXT": "the maximal q-ideals of R[t] are exactly p[t] for p maximal q-ideals of R",
    "P-BOUNDS": "q-dim(R) <= q-dim(R[t]) <= 2 q-dim(R)",
    "P-NOETH": "for tau_q-Noetherian R, q-dim(R[t]) = q-dim(R)",
    "P-HTEXT": "ht(m[t]) = ht(m) for maximal q-ideals m",
    "P-CLOSURE": "q-closure is extensive, idempotent, monotone and matches the membership test",
}
PROPERTY_IDS = tuple(CLAIMS)
DEFAULT_FAMILIES = ("rem28(1)", "rem28(2)", "rem28(3)", "rem28(4)", "cross", "field", "field5")
_VAR_NAMES = ("x", "y", "z", "w")


@dataclass(frozen=True)
class CorpusSpec:
    seed: int = 42
    n_random: int = 100
    nvars: int = 4
    max_deg: int = 4
    max_gens: int = 6
    named_families: tuple[str, ...] = DEFAULT_FAMILIES
    draws: int = 200            # (g, f) draws per named ring for P-DM / P-CQL
    random_draws: int = 20      # the same, per random ring
    closure_ideals: int = 3     # test ideals per ring for P-CLOSURE
    closure_max_deg: int = 4

    def __post_init__(self):
        if not 1 <= self.nvars <= 4 or not 1 <= self.max_deg <= 4 or not 0 <= self.max_gens <= 6:
            raise ValueError("corpus caps: nvars <= 4, max_deg <= 4, max_gens <= 6")
        if self.n_random < 0:
            raise ValueError("n_random must be non-negative")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["named_families"] = list(self.named_families)
        return d


@dataclass
class Verdict:
    property: str
    ring: str
    status: str  # "pass" | "fail" | "skip"
    reason: str | None = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"property": self.property, "ring": self.ring, "status": self.status,
                "reason": self.reason, "details": self.details}


class Skip(Exception):
    pass


# -- corpus ------------------------------------------------------------------

def rem28_ring(n: int, modulus: int = 2) -> QuotientRing:
    names = ["x"] + [f"y{i}" for i in range(1, n + 1)]
    gens = ["x^2"] + [f"x*y{i}" for i in range(1, n + 1)]
    return QuotientRing.from_strings(modulus, names, gens, name=f"rem28({n})")


def named_ring(family: str) -> QuotientRing:
    if family.startswith("rem28(") and family.endswith(")"):
        return rem28_ring(int(family[6:-1]))
    if family == "cross":
        return QuotientRing.from_strings(2, ["x", "y"], ["x*y"], name="cross")
    if family == "field":
        return QuotientRing(PolyIdeal(PolyRing(2, []), []), name="field")
    if family == "field5":
        return QuotientRing(PolyIdeal(PolyRing(5, []), []), name="field5")
    raise ValueError(f"unknown ring family {family!r}")


def _monomials_of_degree(n: int, d: int) -> list[tuple]:
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def gen_random_monomial_ring(seed: int, spec: CorpusSpec, name: str | None = None) -> QuotientRing:
    """A proper monomial quotient, deterministic in ``seed``."""
    rng = random.Random(seed)
    n = rng.randint(1, spec.nvars)
    ngens = rng.randint(min(1, spec.max_gens), spec.max_gens)
    gens = []
    for _ in range(ngens):
        d = rng.randint(1, spec.max_deg)  # degree >= 1 keeps the ideal proper
        gens.append(rng.choice(_monomials_of_degree(n, d)))
    mono = MonomialIdeal(n, gens)
    ring = PolyRing(2, _VAR_NAMES[:n])
    return QuotientRing(mono.to_poly_ideal(ring), name=name)


@dataclass(frozen=True)
class CorpusEntry:
    ring_id: str
    family: str  # a named family or "random"
    seed: int

    def build(self, spec: CorpusSpec) -> QuotientRing:
        if self.family == "random":
            return gen_random_monomial_ring(self.seed, spec, name=self.ring_id)
        return named_ring(self.family)

    @property
    def named(self) -> bool:
        return self.family != "random"


def _derive_seed(seed: int, *parts) -> int:
    return random.Random(f"{seed}/" + "/".join(map(str, parts))).getrandbits(64)


def corpus_entries(spec: CorpusSpec) -> list[CorpusEntry]:
    entries = [CorpusEntry(fam, fam, _derive_seed(spec.seed, fam)) for fam in spec.named_families]
    entries += [CorpusEntry(f"rand-{i:03d}", "random", _derive_seed(spec.seed, "random", i))
                for i in range(spec.n_random)]
    return entries


# -- random draws ------------------------------------------------------------

def random_coefficient(rng: random.Random, ring: PolyRing, max_deg: int = 2):
    terms = []
    for _ in range(rng.randint(1, 3)):
        d = rng.randint(0, max_deg if ring.nvars else 0)
        terms.append((rng.choice(_monomials_of_degree(ring.nvars, d)), rng.randint(1, ring.modulus - 1)))
    return ring.from_terms(terms)


def random_tpoly(rng: random.Random, ring: PolyRing, max_tdeg: int = 3, max_deg: int = 2):
    return [random_coefficient(rng, ring, max_deg) for _ in range(rng.randint(0, max_tdeg) + 1)]


def draw_pairs(R: QuotientRing, seed: int, count: int):
    rng = random.Random(seed)
    return [(random_tpoly(rng, R.ambient), random_tpoly(rng, R.ambient)) for _ in range(count)]


# -- properties --------------------------------------------------------------

def _p_qleq(R, entry, spec):
    qd, d = q_dim(R), krull_dimension(R)
    return qd <= d, {"q_dim": qd, "dim": d}


def _p_vnr(R, entry, spec):
    views = tau_q_vnr_views(R)
    return len(set(views.values())) == 1, {**views, "dim": krull_dimension(R), "q_dim": q_dim(R)}


def _p_nil(R, entry, spec):
    N = quotient_by_nil(R)
    qd, qn = q_dim(R), q_dim(N)
    ok = qd >= qn
    strict_required = entry.family.startswith("rem28")
    if strict_required:
        ok = ok and qd > qn
    return ok, {"q_dim": qd, "q_dim_nil_quotient": qn, "strict_required": strict_required}


def _p_min(R, entry, spec):
    count = len(minimal_primes(R))
    return count > 0, {"min_count": count}


def _p_cor25(R, entry, spec):
    qd, oracle = q_dim(R), q_dim_chain_oracle(R)
    return qd == oracle, {"q_dim": qd, "chain_oracle": oracle}


def _p_rem28(R, entry, spec):
    if not entry.family.startswith("rem28("):
        raise Skip("applies only to the (x^2, x*y_i) family")
    n = int(entry.family[6:-1])
    a = analyze(R)
    N = quotient_by_nil(R)
    got = {"n": n, "q_dim": a.q_dim, "dim": a.dim, "reduced": a.reduced,
           "nil_quotient_q_dim": q_dim(N), "nil_quotient_tau_q_vnr": is_tau_q_vnr(N)}
    ok = (a.q_dim == n and a.dim == n and a.reduced is False
          and got["nil_quotient_q_dim"] == 0 and got["nil_quotient_tau_q_vnr"] is True)
    return ok, got


def _draw_count(entry, spec):
    count = spec.draws if entry.named else spec.random_draws
    if count <= 0:
        raise Skip("no (g, f) draws configured for this ring")
    return count


def _p_dm(R, entry, spec):
    count = _draw_count(entry, spec)
    hist: dict[str, int] = {}
    for g, f in draw_pairs(R, _derive_seed(entry.seed, "draws"), count):
        k = dm_check(R, g, f)
        if k > max(t_degree(f), 0):
            return False, {"g": [str(c) for c in g], "f": [str(c) for c in f], "k": k}
        hist[str(k)] = hist.get(str(k), 0) + 1
    return True, {"draws": count, "k_histogram": dict(sorted(hist.items()))}


def _p_cql(R, entry, spec):
    count = _draw_count(entry, spec)
    applicable = skipped = 0
    for g, f in draw_pairs(R, _derive_seed(entry.seed, "draws"), count):
        try:
            ok = content_q_lemma_check(R, g, f)
        except PreconditionNotMet:
            skipped += 1
            continue
        applicable += 1
        if not ok:
            return False, {"g": [str(c) for c in g], "f": [str(c) for c in f]}
    if not applicable:
        raise Skip("c(g) was not semiregular for any draw")
    return True, {"draws": count, "applicable": applicable, "skipped": skipped,
                  "skip_rate": round(skipped / count, 4)}


def _p_maxext(R, entry, spec):
    S = extend_poly(R)
    expected = sorted(str(extend_prime(S, m)) for m in q_max(R))
    got = sorted(str(m) for m in q_max(S))
    return expected == got, {"q_max_extension": got, "expected": expected}


def _p_bounds(R, entry, spec):
    qd, qs = q_dim(R), q_dim(extend_poly(R))
    return qd <= qs <= 2 * qd, {"q_dim": qd, "q_dim_extension": qs}


def _p_noeth(R, entry, spec):
    qd, qs = q_dim(R), q_dim(extend_poly(R))
    return qd == qs, {"q_dim": qd, "q_dim_extension": qs}


def _p_htext(R, entry, spec):
    S = extend_poly(R)
    rows = {str(m): [height(R, m), height(S, extend_prime(S, m))] for m in q_max(R)}
    return all(a == b for a, b in rows.values()), {"heights": rows}


def closure_test_ideals(R: QuotientRing, seed: int, count: int) -> list[tuple[RIdeal, RIdeal]]:
    """Pairs A ⊆ B of monomial ideals of R, each adding random monomials to I."""
    rng = random.Random(seed)
    n = R.nvars
    I = R.monomial_ideal
    pairs = []
    if n == 0:
        return pairs
    for _ in range(count):
        extra = [rng.choice(_monomials_of_degree(n, rng.randint(1, 3))) for _ in range(rng.randint(0, 2))]
        more = [rng.choice(_monomials_of_degree(n, rng.randint(1, 3))) for _ in range(rng.randint(1, 2))]
        A = I.add(extra)
        B = A.add(more)
        if B.is_unit():
            B = A
        if A.is_unit():
            continue
        pairs.append((RIdeal(R, A.to_poly_ideal(R.ambient), check=False),
                      RIdeal(R, B.to_poly_ideal(R.ambient), check=False)))
    return pairs


def check_closure_laws(R: QuotientRing, A: RIdeal, B: RIdeal, max_deg: int) -> dict:
    """Closure laws plus element-wise agreement; returns the failed law names (empty = pass)."""
    cA, cB = q_closure(R, A), q_closure(R, B)
    failures = []
    if not A.issubset(cA):
        failures.append("extensive")
    if q_closure(R, cA) != cA:
        failures.append("idempotent")
    if A.issubset(B) and not cA.issubset(cB):
        failures.append("monotone")
    mismatches = []
    for d in range(max_deg + 1):
        for m in _monomials_of_degree(R.nvars, d):
            r = R.ambient.monomial(m)
            if cA.contains(r) != q_closure_member(R, A, r, method="annihilator"):
                mismatches.append(str(r) if d else "1")
    if mismatches:
        failures.append("membership")
    return {"ideal": str(A), "closure": str(cA), "failed": failures, "mismatches": mismatches}


def _p_closure(R, entry, spec):
    if not R.is_monomial:
        raise Skip("ideal-level q-closure needs a monomial ring")
    pairs = closure_test_ideals(R, _derive_seed(entry.seed, "closure"), spec.closure_ideals)
    pairs.insert(0, (RIdeal(R, R.ideal, check=False), RIdeal(R, R.ideal, check=False)))
    rows = [check_closure_laws(R, A, B, spec.closure_max_deg) for A, B in pairs]
    return all(not r["failed"] for r in rows), {"checked": rows}


PROPERTIES: dict[str, Callable] = {
    "P-QLEQ": _p_qleq, "P-VNR": _p_vnr, "P-NIL": _p_nil, "P-MIN": _p_min,
    "P-COR25": _p_cor25, "P-REM28": _p_rem28, "P-DM": _p_dm, "P-CQL": _p_cql,
    "P-MAXEXT": _p_maxext, "P-BOUNDS": _p_bounds, "P-NOETH": _p_noeth,
    "P-HTEXT": _p_htext, "P-CLOSURE": _p_closure,
}


def run_property(R: QuotientRing, pid: str, entry: CorpusEntry | None = None,
                 spec: CorpusSpec | None = None) -> Verdict:
    spec = spec or CorpusSpec()
    entry = entry or CorpusEntry(R.name or "ring", R.name if R.name in spec.named_families else "custom",
                                 _derive_seed(spec.seed, R.presentation()))
    ring_id = entry.ring_id
    try:
        ok, details = PROPERTIES[pid](R, entry, spec)
    except Skip as exc:
        return Verdict(pid, ring_id, "skip", str(exc))
    except Exception as exc:  # internal errors are failures, never silent skips
        return Verdict(pid, ring_id, "fail", f"{type(exc).__name__}: {exc}",
                       {"ring": R.presentation(), "traceback": traceback.format_exc(limit=3)})
    if ok:
        return Verdict(pid, ring_id, "pass", None, details)
    return Verdict(pid, ring_id, "fail", "property violated", {"ring": R.presentation(), **details})


def _run_entry(args) -> list[Verdict]:
    entry, spec, pids = args
    R = entry.build(spec)
    return [run_property(R, pid, entry, spec) for pid in pids]


def run_corpus(spec: CorpusSpec, suite: list[str] | None = None, jobs: int = 1) -> dict:
    """Evaluate every (ring, property) pair; the report is canonical in ``spec``."""
    pids = list(suite) if suite else list(PROPERTY_IDS)
    unknown = [p for p in pids if p not in PROPERTIES]
    if unknown:
        raise ValueError(f"unknown property ids: {unknown}")
    entries = corpus_entries(spec)
    tasks = [(e, spec, pids) for e in entries]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_entry, tasks, chunksize=4))
    else:
        results = [_run_entry(t) for t in tasks]
    verdicts = [v for batch in results for v in batch]
    # coverage: every grid cell must be accounted for
    seen = {(v.ring, v.property) for v in verdicts}
    for e in entries:
        for pid in pids:
            if (e.ring_id, pid) not in seen:
                verdicts.append(Verdict(pid, e.ring_id, "fail", "coverage gap: pair not evaluated"))
    verdicts.sort(key=lambda v: (v.ring, v.property))
    summary = {s: sum(v.status == s for v in verdicts) for s in ("pass", "fail", "skip")}
    return {
        "corpus": spec.to_dict(),
        "properties": {pid: CLAIMS[pid] for pid in pids},
        "rings": {e.ring_id: e.build(spec).presentation() for e in entries},
        "verdicts": [v.to_dict() for v in verdicts],
        "summary": summary,
    }


def format_table(report: dict) -> str:
    rows = [("ring", "property", "status", "reason")]
    for v in report["verdicts"]:
        rows.append((v["ring"], v["property"], v["status"], v["reason"] or ""))
    widths = [max(len(r[i]) for r in rows) for i in range(3)]
    lines = ["  ".join(r[i].ljust(widths[i]) for i in range(3)) + "  " + r[3] for r in rows]
    s = report["summary"]
    lines.append(f"\npass {s['pass']}  fail {s['fail']}  skip {s['skip']}")
    return "\n".join(line.rstrip() for line in lines)
