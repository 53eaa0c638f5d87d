"""Run the full battery of formula/oracle and structural checks on graphs."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from . import lemmas
from .bipartite import is_bipartite, predicted_mm_plus, verify_parity_identities
from .graph import (
    Graph,
    Kind,
    _cycle_data,
    classify,
    edge_laplacian,
    incidence_matrix,
    parity_matrix,
    signless_laplacian,
)
from .linalg import (
    VERTEX,
    RationalMatrix,
    first_difference,
    format_entry,
    inverse,
    penrose_check,
    pseudoinverse_oracle,
    rank,
)
from .tree import mp_edge_laplacian, mp_incidence, mp_signless_laplacian, tree_mm_plus
from .unicyclic import (
    cycle_diagnostics,
    inv_edge_laplacian,
    inv_incidence,
    inv_signless_laplacian,
)

PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"
THREADS_ENV = "GRAPH_MPINV_THREADS"


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status != FAIL


@dataclass
class VerificationReport:
    title: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def render(self) -> str:
        lines = [self.title]
        for c in self.checks:
            lines.append(f"{c.status} {c.name}" + (f": {c.detail}" if c.detail else ""))
        passed = sum(c.status == PASS for c in self.checks)
        skipped = sum(c.status == SKIP for c in self.checks)
        lines.append(
            f"summary: {passed} passed, {len(self.checks) - passed - skipped} failed, {skipped} skipped"
        )
        return "\n".join(lines) + "\n"


def _label(kind: str, idx: int) -> str:
    return ("v" if kind == VERTEX else "e" if kind == "edge" else "#") + str(idx + 1)


def _compare(name: str, got: RationalMatrix, want: RationalMatrix, got_as="formula", want_as="oracle") -> Check:
    if got.shape != want.shape:
        return Check(name, FAIL, f"shape {got.rows}x{got.cols} vs {want.rows}x{want.cols}")
    where = first_difference(got, want)
    if where is None:
        return Check(name, PASS)
    i, j = where
    return Check(
        name,
        FAIL,
        f"first difference at ({_label(got.row_kind, i)}, {_label(got.col_kind, j)}): "
        f"{got_as} {format_entry(got[i, j])}, {want_as} {format_entry(want[i, j])}",
    )


def _penrose(name: str, a: RationalMatrix, x: RationalMatrix) -> Check:
    rep = penrose_check(a, x)
    if rep.all_hold:
        return Check(name, PASS)
    eq, i, j = rep.first_failure
    return Check(name, FAIL, f"{eq} fails first at ({i + 1}, {j + 1})")


def _lemma(name: str, fn: Callable[[Graph], object], g: Graph) -> Check:
    bad = fn(g)
    if bad is None:
        return Check(name, PASS)
    return Check(name, FAIL, "counterexample " + " ".join(str(x) for x in bad))


def _set_check(name: str, got: Iterable[int], want: Iterable[int], prefix: str) -> Check:
    got, want = set(got), set(want)
    if got == want:
        return Check(name, PASS)
    fmt = lambda s: "{" + ",".join(f"{prefix}{x}" for x in sorted(s)) + "}"
    return Check(name, FAIL, f"recovered {fmt(got)}, expected {fmt(want)}")


def _corrupt(a: RationalMatrix) -> RationalMatrix:
    if a.rows == 0 or a.cols == 0:
        return a
    rows = a.tolist()
    rows[0][0] += 1
    return RationalMatrix(rows, a.row_kind, a.col_kind, shape=a.shape)


def _tree_checks(t: Graph, fault: bool) -> list[Check]:
    m = incidence_matrix(t)
    q = signless_laplacian(t)
    s = edge_laplacian(t)
    h = mp_incidence(t)
    if fault:
        h = _corrupt(h)
    qp = mp_signless_laplacian(t)
    sp = mp_edge_laplacian(t)
    p = parity_matrix(t)
    n = t.n
    checks = [
        _compare("M+ formula = oracle", h, pseudoinverse_oracle(m)),
        _compare("Q+ formula = oracle", qp, pseudoinverse_oracle(q)),
        _compare("S+ formula = oracle", sp, pseudoinverse_oracle(s)),
        _penrose("Penrose (M, M+)", m, h),
        _penrose("Penrose (Q, Q+)", q, qp),
        _penrose("Penrose (S, S+)", s, sp),
        _compare("H M = I", h @ m, RationalMatrix.identity(n - 1, "edge"), "H M", "I"),
        _compare("M M+ = I - P/n", m @ h, tree_mm_plus(t), "M H", "I - P/n"),
        _compare("Q+ = H^T H", qp, h.T @ h, "Q+", "H^T H"),
        _compare("S+ = H H^T", sp, h @ h.T, "S+", "H H^T"),
        _lemma("lemma: spanning forest sum = n-1", lemmas.spanning_forest_counterexample, t),
        _lemma("lemma: edge on i-j path and parity", lemmas.tree_path_counterexample, t),
        _lemma("lemma: edge-pair component parity", lemmas.tree_edge_pair_counterexample, t),
        _compare("corollary: M+ P = 0", h @ p, RationalMatrix.zeros(n - 1, n, "edge", VERTEX), "M+ P", "0"),
        _compare("corollary: P^2 = n P", p @ p, p.scale(n), "P^2", "n P"),
    ]
    r = rank(m)
    checks.append(Check("rank M = n-1", PASS if r == n - 1 else FAIL, "" if r == n - 1 else f"rank {r}"))
    return checks


def _unicyclic_checks(u: Graph, fault: bool) -> list[Check]:
    m = incidence_matrix(u)
    q = signless_laplacian(u)
    s = edge_laplacian(u)
    a = inv_incidence(u)
    if fault:
        a = _corrupt(a)
    qi = inv_signless_laplacian(u)
    si = inv_edge_laplacian(u)
    n = u.n
    eye_v = RationalMatrix.identity(n, VERTEX)
    cd = _cycle_data(u)
    checks = [
        _compare("M^-1 formula = exact inverse", a, inverse(m), "formula", "inverse"),
        _compare("Q^-1 formula = exact inverse", qi, inverse(q), "formula", "inverse"),
        _compare("S^-1 formula = exact inverse", si, inverse(s), "formula", "inverse"),
        _penrose("Penrose (M, M^-1)", m, a),
        _penrose("Penrose (Q, Q^-1)", q, qi),
        _penrose("Penrose (S, S^-1)", s, si),
        _compare("M M^-1 = I", m @ a, eye_v, "M A", "I"),
        _compare("M^-1 M = I", a @ m, RationalMatrix.identity(n, "edge"), "A M", "I"),
        _compare("M M+ = I (odd cycle)", m @ a, predicted_mm_plus(u), "M A", "predicted"),
        _compare("Q^-1 = A^T A", qi, a.T @ a, "Q^-1", "A^T A"),
        _compare("S^-1 = A A^T", si, a @ a.T, "S^-1", "A A^T"),
        _lemma("lemma: cycle-distance parity", lemmas.cycle_distance_counterexample, u),
        _lemma("lemma: edge-pair parity (a)-(d)", lemmas.unicyclic_edge_pair_counterexample, u),
    ]
    diag = cycle_diagnostics(u, qi, si)
    checks.append(_set_check("corollary: cycle vertices from Q^-1 diagonal", diag.cycle_vertices, cd.cycle_vertices, "v"))
    quarter = Fraction(n, 4)
    off = [k for k in cd.cycle_edges if si[k - 1, k - 1] != quarter]
    checks.append(
        Check("corollary: cycle edges have s_ii = n/4", FAIL if off else PASS, f"e{min(off)}" if off else "")
    )
    checks.append(_set_check("corollary: cycle edges from S^-1 diagonal", diag.cycle_edges, cd.cycle_edges, "e"))
    pendant = {k for k, (x, y) in enumerate(u.edges, start=1) if u.degree(x) == 1 or u.degree(y) == 1}
    missing = pendant - diag.pendant_edges
    checks.append(
        Check("corollary: pendant edges have s_ii = 1", FAIL if missing else PASS, f"e{min(missing)}" if missing else "")
    )
    if n != 4:
        checks.append(_set_check("corollary: pendant edges from S^-1 diagonal", diag.pendant_edges, pendant, "e"))
    else:
        checks.append(Check("corollary: pendant edges from S^-1 diagonal", SKIP, "n = 4"))
    r = rank(m)
    checks.append(Check("rank M = n", PASS if r == n else FAIL, "" if r == n else f"rank {r}"))
    return checks


def _general_checks(g: Graph, fault: bool) -> list[Check]:
    m = incidence_matrix(g)
    mp = pseudoinverse_oracle(m)
    if fault:
        mp = _corrupt(mp)
    checks = [_penrose("Penrose (M, oracle M+)", m, mp)]
    if not g.is_connected:
        checks.append(Check("M M+ structure", SKIP, "disconnected"))
        return checks
    bip = is_bipartite(g)
    checks.append(_compare("M M+ structure", m @ mp, predicted_mm_plus(g), "M M+", "predicted"))
    r = rank(m)
    want = g.n - 1 if bip else g.n
    checks.append(Check("rank M = n-1 iff bipartite", PASS if r == want else FAIL, "" if r == want else f"rank {r}"))
    if bip:
        zero, square = verify_parity_identities(g, mp)
        checks.append(Check("corollary: M+ P = 0", PASS if zero else FAIL))
        checks.append(Check("corollary: P^2 = n P", PASS if square else FAIL))
    return checks


def describe(g: Graph) -> str:
    gc = classify(g)
    if gc.kind is Kind.UNSUPPORTED:
        return f"unsupported n={g.n} m={g.m} ({gc.detail})"
    if gc.kind is Kind.TREE:
        return f"tree n={g.n} m={g.m}"
    return f"odd-unicyclic n={g.n} cycle={len(_cycle_data(g).cycle_vertices)}"


def verify_graph(g: Graph, inject_fault: bool = False) -> VerificationReport:
    kind = classify(g).kind
    if kind is Kind.TREE:
        checks = _tree_checks(g, inject_fault)
    elif kind is Kind.ODD_UNICYCLIC:
        checks = _unicyclic_checks(g, inject_fault)
    else:
        checks = _general_checks(g, inject_fault)
    return VerificationReport(describe(g), checks)


def _verify_one(args):
    g, fault = args
    return verify_graph(g, fault)


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


def verify_many(graphs: Iterable[Graph], inject_fault: bool = False, workers: int | None = None) -> list[VerificationReport]:
    """Reports in instance order regardless of how many worker processes run."""
    jobs = [(g, inject_fault) for g in graphs]
    workers = thread_count() if workers is None else workers
    if workers <= 1 or len(jobs) <= 1:
        return [_verify_one(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as ex:
        return list(ex.map(_verify_one, jobs))


def render_many(reports: list[VerificationReport], header: str) -> str:
    """Per-check tallies across instances, then one line per failing instance."""
    lines = [header]
    order: list[str] = []
    tally: dict[str, list] = {}
    for idx, rep in enumerate(reports):
        for c in rep.checks:
            if c.name not in tally:
                order.append(c.name)
                tally[c.name] = [0, 0, 0, None]
            t = tally[c.name]
            t[{PASS: 0, FAIL: 1, SKIP: 2}[c.status]] += 1
            if c.status == FAIL and t[3] is None:
                t[3] = f"instance {idx} ({rep.title}): {c.detail}".rstrip(": ")
    for name in order:
        ok, bad, skip, first = tally[name]
        status = FAIL if bad else PASS
        line = f"{status} {name} ({ok}/{ok + bad} passed" + (f", {skip} skipped" if skip else "") + ")"
        if first:
            line += f"; first counterexample: {first}"
        lines.append(line)
    failed = [i for i, r in enumerate(reports) if not r.ok]
    for i in failed:
        names = ", ".join(c.name for c in reports[i].failures())
        lines.append(f"instance {i} FAILED: {reports[i].title}: {names}")
    lines.append(f"summary: {len(reports) - len(failed)}/{len(reports)} instances passed all checks")
    return "\n".join(lines) + "\n"
