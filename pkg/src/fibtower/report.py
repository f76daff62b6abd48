"""Grid sweeps over tower specs and machine-readable reports.

Reports are byte-deterministic for a fixed tool version and seed: rows are
ordered by (n, k, m) regardless of how many workers evaluated them, JSON
keys are sorted, and every integer is serialized as a decimal string since
the values routinely exceed 64-bit ranges.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product

from . import __version__
from .errors import BudgetExceeded, CapExceeded, FactorBudgetExceeded
from .modfib import DEFAULT_FACTOR_SEED
from .tower import AnalysisReport, CaseTag, TowerSpec, analyze, branch_label

STATUS_OK = "ok"
STATUS_MISMATCH = "mismatch"
STATUS_BUDGET = "budget_exceeded"


def parse_range(text: str) -> tuple[int, int]:
    """Parse 'A..B' (or a bare 'A') into an inclusive range."""
    lo, sep, hi = text.partition("..")
    try:
        low = int(lo)
        high = int(hi) if sep else low
    except ValueError:
        raise ValueError(f"bad range {text!r}; expected A..B") from None
    if low < 1 or high < low:
        raise ValueError(f"empty or invalid range {text!r}")
    return low, high

CSV_COLUMNS = (
    "n",
    "k",
    "m",
    "fn",
    "expected_valuation",
    "divisibility_ok",
    "unit_residue",
    "exact",
    "case",
    "predicted_residue",
    "match",
    "status",
)


@dataclass(frozen=True)
class SweepRow:
    spec: TowerSpec
    report: AnalysisReport | None
    status: str


@dataclass(frozen=True)
class SweepReport:
    tool_version: str
    seed: int
    k_range: tuple[int, int]
    n_range: tuple[int, int]
    m_range: tuple[int, int]
    rows: tuple[SweepRow, ...]

    def summary(self) -> dict[str, dict[str, int]]:
        by_status: dict[str, int] = {}
        by_case: dict[str, int] = {}
        by_branch: dict[str, int] = {}
        for row in self.rows:
            by_status[row.status] = by_status.get(row.status, 0) + 1
            if row.report is not None:
                tag = row.report.case.value
                by_case[tag] = by_case.get(tag, 0) + 1
                label = branch_label(row.spec)
                if label is not None:
                    by_branch[label] = by_branch.get(label, 0) + 1
        return {"status": by_status, "case": by_case, "branch": by_branch}


def _evaluate_point(point: tuple[int, int, int]) -> SweepRow:
    n, k, m = point
    spec = TowerSpec(k=k, n=n, m=m)
    try:
        report = analyze(spec)
    except (BudgetExceeded, FactorBudgetExceeded, CapExceeded):
        return SweepRow(spec=spec, report=None, status=STATUS_BUDGET)
    ok = report.divisibility_ok and report.match
    return SweepRow(spec=spec, report=report, status=STATUS_OK if ok else STATUS_MISMATCH)


def run_sweep(
    k_range: tuple[int, int],
    n_range: tuple[int, int],
    m_range: tuple[int, int],
    jobs: int = 1,
) -> SweepReport:
    """Analyze every grid point; rows come back in (n, k, m) order.

    With jobs > 1 the points are mapped over a process pool; map order is
    preserved, so the report is identical to a serial run.
    """
    for lo, hi in (k_range, n_range, m_range):
        if lo > hi or lo < 1:
            raise ValueError("ranges must be nonempty and start at 1 or above")
    points = list(
        product(
            range(n_range[0], n_range[1] + 1),
            range(k_range[0], k_range[1] + 1),
            range(m_range[0], m_range[1] + 1),
        )
    )
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunk = max(1, len(points) // (jobs * 4))
            rows = tuple(pool.map(_evaluate_point, points, chunksize=chunk))
    else:
        rows = tuple(_evaluate_point(p) for p in points)
    return SweepReport(
        tool_version=__version__,
        seed=DEFAULT_FACTOR_SEED,
        k_range=k_range,
        n_range=n_range,
        m_range=m_range,
        rows=rows,
    )


# ------------------------------ serialization ------------------------------


def _opt(value: int | None) -> str | None:
    return None if value is None else str(value)


def _row_dict(row: SweepRow) -> dict:
    out: dict = {
        "n": str(row.spec.n),
        "k": str(row.spec.k),
        "m": str(row.spec.m),
        "status": row.status,
    }
    rep = row.report
    if rep is None:
        out.update(
            fn=None,
            expected_valuation=None,
            divisibility_ok=None,
            unit_residue=None,
            exact=None,
            case=None,
            predicted_residue=None,
            match=None,
            trivial_base=None,
            chain=None,
        )
        return out
    out.update(
        fn=str(rep.fn_value),
        expected_valuation=str(rep.expected_valuation),
        divisibility_ok=rep.divisibility_ok,
        unit_residue=_opt(rep.unit_residue),
        exact=rep.exact,
        case=rep.case.value,
        predicted_residue=_opt(rep.predicted_residue),
        match=rep.match,
        trivial_base=rep.trivial_base,
        chain=[
            {"modulus": str(mod), "period": str(per)} for mod, per in rep.chain_summary
        ],
    )
    return out


def analysis_to_dict(report: AnalysisReport) -> dict:
    """JSON-ready dict for a single analysis (decimal-string integers)."""
    status = STATUS_OK if report.divisibility_ok and report.match else STATUS_MISMATCH
    return _row_dict(SweepRow(spec=report.spec, report=report, status=status))


def render_json(report: SweepReport) -> str:
    payload = {
        "tool_version": report.tool_version,
        "seed": str(report.seed),
        "grid": {
            "k": [str(report.k_range[0]), str(report.k_range[1])],
            "n": [str(report.n_range[0]), str(report.n_range[1])],
            "m": [str(report.m_range[0]), str(report.m_range[1])],
        },
        "rows": [_row_dict(r) for r in report.rows],
        "summary": {
            group: {key: str(count) for key, count in counts.items()}
            for group, counts in report.summary().items()
        },
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _parse_row(obj: dict) -> SweepRow:
    spec = TowerSpec(k=int(obj["k"]), n=int(obj["n"]), m=int(obj["m"]))
    if obj["fn"] is None:
        return SweepRow(spec=spec, report=None, status=obj["status"])
    report = AnalysisReport(
        spec=spec,
        fn_value=int(obj["fn"]),
        expected_valuation=int(obj["expected_valuation"]),
        divisibility_ok=obj["divisibility_ok"],
        unit_residue=None if obj["unit_residue"] is None else int(obj["unit_residue"]),
        exact=obj["exact"],
        case=CaseTag(obj["case"]),
        predicted_residue=(
            None if obj["predicted_residue"] is None else int(obj["predicted_residue"])
        ),
        match=obj["match"],
        trivial_base=obj["trivial_base"],
        chain_summary=tuple(
            (int(lvl["modulus"]), int(lvl["period"])) for lvl in obj["chain"]
        ),
    )
    return SweepRow(spec=spec, report=report, status=obj["status"])


def parse_json(text: str) -> SweepReport:
    """Inverse of render_json; validates the stored summary against the rows."""
    payload = json.loads(text)
    report = SweepReport(
        tool_version=payload["tool_version"],
        seed=int(payload["seed"]),
        k_range=(int(payload["grid"]["k"][0]), int(payload["grid"]["k"][1])),
        n_range=(int(payload["grid"]["n"][0]), int(payload["grid"]["n"][1])),
        m_range=(int(payload["grid"]["m"][0]), int(payload["grid"]["m"][1])),
        rows=tuple(_parse_row(r) for r in payload["rows"]),
    )
    stored = {
        group: {key: str(count) for key, count in counts.items()}
        for group, counts in report.summary().items()
    }
    if stored != payload["summary"]:
        raise ValueError("summary does not match row tallies")
    return report


def render_csv(report: SweepReport) -> str:
    def cell(value) -> str:
        if value is None:
            return ""
        if isinstance(value, bool):
            return "true" if value else "false"
        return str(value)

    lines = [",".join(CSV_COLUMNS)]
    for row in report.rows:
        d = _row_dict(row)
        lines.append(",".join(cell(d[col]) for col in CSV_COLUMNS))
    return "\n".join(lines) + "\n"
