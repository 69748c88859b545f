"""Query execution and the text / machine report formats.

Machine format: a ``format: 1`` header, then ``key: value`` lines in a fixed
order.  Keys are dotted paths (``query.2.a_part.1``); values never contain
newlines, so the file can be read back line by line.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from ..cm import s_cm_test
from ..grade import classical_grade, check_weak_sequence, ext_grade, format_value, koszul_grade, named_depths
from .evaluate import BoundQuery, Program
from .lexer import ENGINE_ERROR, NO_QUERIES, ORACLE_DISAGREEMENT
from .syntax import query_text

EXIT_OK, EXIT_USAGE, EXIT_ENGINE, EXIT_ORACLE = 0, 1, 2, 3


@dataclass
class Flags:
    seed: int = 0
    budget: int = 64
    oracle: bool = False
    timing: bool = False


@dataclass
class Report:
    index: int
    kind: str
    text: str
    span: str
    status: str = "ok"  # ok | error | oracle-disagreement
    fields: list = field(default_factory=list)  # ordered (key, value) pairs
    warnings: list = field(default_factory=list)
    elapsed: float | None = field(default=None, compare=False)

    def get(self, key: str, default=None):
        for k, v in self.fields:
            if k == key:
                return v
        return default

    def put(self, key: str, value):
        self.fields.append((key, _str(value)))


def _str(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float) and math.isinf(v):
        return format_value(v)
    if v is None:
        return "none"
    return str(v).replace("\n", " ")


def _prime_str(P, names) -> str:
    return "(" + ",".join(names[i] for i in sorted(P)) + ")" if P else "(0)"


# ---------------------------------------------------------------------------
# per-query handlers


def _q_grade(bq: BoundQuery, rep: Report, flags: Flags):
    route = bq.node.route or "koszul"
    if route == "koszul":
        g = koszul_grade(bq.a, bq.module, bq.klass)
    elif route == "ext":
        g = ext_grade(bq.a, bq.module, bq.klass)
    else:
        g = classical_grade(bq.a, bq.module, bq.klass, seed=flags.seed, budget=flags.budget)
    rep.put("value", g.value)
    rep.put("route", g.route)
    rep.put("class", bq.klass)
    if route == "sequence":
        for k, w in enumerate(g.witnesses, 1):
            rep.put(f"witness.{k}", w)
        rep.put("seed", flags.seed)
    else:
        for w in g.witnesses:
            rep.put(f"layer.{w['i']}", f"dim {w['dim']}, {'in' if w['in_class'] else 'not in'} class")
    for note in g.notes:
        if "failed" in note:
            rep.warnings.append(note)


def _q_depth(bq: BoundQuery, rep: Report, flags: Flags):
    kind = {"fdepth": "f_depth", "gdepth": "g_depth", "tjdepth": "tj_depth", "tbgrade": "tb_grade"}[bq.node.kind]
    g = named_depths(kind, bq.a, bq.module, j=bq.node.j, b=bq.b)
    rep.put("value", g.value)
    rep.put("route", g.route)
    rep.put("class", g.klass)
    for w in g.witnesses:
        rep.put(f"layer.{w['i']}", f"dim {w['dim']}, {'in' if w['in_class'] else 'not in'} class")


def _q_checkseq(bq: BoundQuery, rep: Report, flags: Flags):
    r = check_weak_sequence(bq.elements, bq.module, bq.klass)
    rep.put("weak", r.is_weak)
    rep.put("quotient_in_class", r.quotient_in_class)
    rep.put("s_sequence", r.is_s_sequence)
    rep.put("failed_at", r.failed_at)
    for k, st in enumerate(r.steps, 1):
        rep.put(f"step.{k}", f"dim {st['dim']}, {'in' if st['in_class'] else 'not in'} class")


def _oracle_verdicts(bq: BoundQuery):
    from ..oracle import as_monomial_ideal, enumerate_check_thm35, thm314_check

    I = as_monomial_ideal(bq.module)
    p = bq.module.ring.p
    return enumerate_check_thm35(I, bq.klass, p), thm314_check(I, bq.klass, p)


def _is_monomial(bq: BoundQuery) -> bool:
    from ..oracle import UnsupportedOracleInput, as_monomial_ideal

    try:
        as_monomial_ideal(bq.module)
    except UnsupportedOracleInput:
        return False
    return bq.module.ring.nvars <= 6


def _q_cm(bq: BoundQuery, rep: Report, flags: Flags):
    r = s_cm_test(bq.module, bq.klass)
    rep.put("verdict", r.verdict)
    rep.put("route", r.route)
    rep.put("class", bq.klass)
    rep.put("dim", r.dim)
    rep.put("a", r.a)
    for part in r.parts:
        rep.put(f"a_part.{part.index}", f"Ann Ext^{part.ext_index}(M,S) = {part.ideal}")
    rep.put("quotient_dim", r.quotient_dim)
    if flags.oracle:
        if _is_monomial(bq):
            t35, t314 = _oracle_verdicts(bq)
            rep.put("oracle.thm35", t35)
            rep.put("oracle.thm314", t314)
            if not (t35 == t314 == r.verdict):
                rep.status = "oracle-disagreement"
        else:
            rep.put("oracle", "skipped (not a monomial cyclic module)")


def _q_oracle(bq: BoundQuery, rep: Report, flags: Flags):
    from ..oracle import as_monomial_ideal, monomial_depth, ncm_locus_monomial

    I = as_monomial_ideal(bq.module)
    names = bq.module.ring.variables
    p = bq.module.ring.p
    ass = sorted(I.associated_primes(), key=lambda P: (len(P), sorted(P)))
    mins = sorted(I.minimal_primes(), key=lambda P: (len(P), sorted(P)))
    rep.put("ass", " ".join(_prime_str(P, names) for P in ass) or "none")
    rep.put("min", " ".join(_prime_str(P, names) for P in mins) or "none")
    rep.put("dim", I.dimension())
    rep.put("depth", monomial_depth(I, p))
    rep.put("ncm_locus", ncm_locus_monomial(I, p).to_string(names))
    t35, t314 = _oracle_verdicts(bq)
    rep.put("thm35", t35)
    rep.put("thm314", t314)
    rep.put("class", bq.klass)
    if flags.oracle:
        engine = s_cm_test(bq.module, bq.klass).verdict
        rep.put("engine", engine)
        if not (t35 == t314 == engine):
            rep.status = "oracle-disagreement"


HANDLERS = {
    "grade": _q_grade,
    "fdepth": _q_depth,
    "gdepth": _q_depth,
    "tjdepth": _q_depth,
    "tbgrade": _q_depth,
    "checkseq": _q_checkseq,
    "cm": _q_cm,
    "oracle": _q_oracle,
}


def run(program: Program, flags: Flags | None = None) -> list[Report]:
    flags = flags or Flags()
    reports = []
    for k, bq in enumerate(program.queries, 1):
        q = bq.node
        rep = Report(k, q.kind, query_text(q), str(q.span))
        t0 = time.perf_counter()
        try:
            HANDLERS[q.kind](bq, rep, flags)
        except Exception as exc:  # every engine failure becomes a code-2 report
            rep.status = "error"
            rep.fields = [("error", f"{ENGINE_ERROR} {type(exc).__name__}: {_str(exc)}")]
        if flags.timing:
            rep.elapsed = time.perf_counter() - t0
        reports.append(rep)
    return reports


def exit_code(reports: list[Report]) -> int:
    if any(r.status == "error" for r in reports):
        return EXIT_ENGINE
    if any(r.status == "oracle-disagreement" for r in reports):
        return EXIT_ORACLE
    return EXIT_OK


# ---------------------------------------------------------------------------
# formats


def to_machine(reports: list[Report], warnings: list[str] = ()) -> str:
    lines = ["format: 1", f"queries: {len(reports)}"]
    for r in reports:
        pre = f"query.{r.index}"
        lines.append(f"{pre}.kind: {r.kind}")
        lines.append(f"{pre}.text: {r.text}")
        lines.append(f"{pre}.span: {r.span}")
        lines.append(f"{pre}.status: {r.status}")
        for key, value in r.fields:
            lines.append(f"{pre}.{key}: {value}")
        for k, w in enumerate(r.warnings, 1):
            lines.append(f"{pre}.warning.{k}: {w}")
    for k, w in enumerate(warnings, 1):
        lines.append(f"warning.{k}: {w}")
    return "\n".join(lines) + "\n"


def from_machine(text: str) -> tuple[list[Report], list[str]]:
    """Inverse of ``to_machine``."""
    lines = text.splitlines()
    if not lines or lines[0] != "format: 1":
        raise ValueError("missing 'format: 1' header")
    reports: dict[int, Report] = {}
    warnings = []
    for line in lines[2:]:
        key, _, value = line.partition(": ")
        parts = key.split(".")
        if parts[0] == "warning":
            warnings.append(value)
            continue
        idx = int(parts[1])
        rest = ".".join(parts[2:])
        rep = reports.setdefault(idx, Report(idx, "", "", ""))
        if rest in ("kind", "text", "span", "status"):
            setattr(rep, rest, value)
        elif rest.startswith("warning."):
            rep.warnings.append(value)
        else:
            rep.fields.append((rest, value))
    return [reports[i] for i in sorted(reports)], warnings


def _class_phrase(klass: str, qdim: str) -> str:
    if klass.startswith("dim_le("):
        j = int(klass[len("dim_le("):-1])
        d = int(qdim)
        return f"dim S/a(M)={d} {'≤' if d <= j else '>'} {j}"
    if klass == "zero":
        return "S/a(M)=0" if qdim == "-1" else "S/a(M)≠0"
    return None


def to_text(reports: list[Report], warnings: list[str] = (), timing: bool = False) -> str:
    out = []
    for r in reports:
        head = r.text
        if r.status == "error":
            line = f"{head}: {r.get('error')}"
        elif r.kind == "cm":
            verdict = r.get("verdict")
            extras = [f"route {r.get('route')}", f"a(M)={r.get('a').replace(', ', ',')}"]
            phrase = _class_phrase(r.get("class"), r.get("quotient_dim"))
            if phrase is None:
                phrase = f"V(a(M)) {'⊆' if verdict == 'true' else '⊄'} V(b)"
            extras.append(phrase)
            line = f"{head}: {verdict} ({', '.join(extras)})"
        elif r.kind == "checkseq":
            if r.get("weak") == "true":
                state = "weak S-sequence" if r.get("s_sequence") == "true" else "weak, M/xM in class"
            else:
                state = f"not weak (fails at {r.get('failed_at')})"
            line = f"{head}: {state}"
        elif r.kind == "oracle":
            line = (
                f"{head}: thm35 {r.get('thm35')}, thm314 {r.get('thm314')} "
                f"(ass {r.get('ass')}; dim {r.get('dim')}; depth {r.get('depth')}; ncm {r.get('ncm_locus')})"
            )
        else:
            extras = [f"route {r.get('route')}", f"class {r.get('class')}"]
            wit = [v for k, v in r.fields if k.startswith("witness.")]
            if wit:
                extras.append("witnesses [" + ", ".join(wit) + "]")
            line = f"{head}: {r.get('value')} ({', '.join(extras)})"
        if r.status == "oracle-disagreement":
            line += f"  [{ORACLE_DISAGREEMENT} oracle disagreement]"
        if timing and r.elapsed is not None:
            line += f"  [{r.elapsed:.3f}s]"
        out.append(line)
        for w in r.warnings:
            out.append(f"  warning: {w}")
    for w in warnings:
        out.append(f"warning: {w}")
    return "".join(line + "\n" for line in out)


def no_queries_warning() -> str:
    return f"{NO_QUERIES} no queries"


__all__ = [
    "EXIT_ENGINE",
    "EXIT_OK",
    "EXIT_ORACLE",
    "EXIT_USAGE",
    "Flags",
    "Report",
    "exit_code",
    "from_machine",
    "no_queries_warning",
    "run",
    "to_machine",
    "to_text",
]
