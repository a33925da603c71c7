import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Sequence, TextIO, Tuple

from services.errors import DomainError
from services.export_service import ExportService, ScanRecord
from services.hypothesis_service import HypothesisService

logger = logging.getLogger(__name__)

FORMATS = ('jsonl', 'csv')


def parse_range(text: str) -> List[int]:
    """'5,7,11' or '2..20' or a mix like '5,11..13' -> sorted unique ints."""
    values = set()
    for part in (p.strip() for p in text.split(',')):
        if not part:
            continue
        if '..' in part:
            lo, hi = part.split('..', 1)
            try:
                lo, hi = int(lo), int(hi)
            except ValueError:
                raise DomainError(f"bad range {part!r}")
            values.update(range(lo, hi + 1))
        else:
            try:
                values.add(int(part))
            except ValueError:
                raise DomainError(f"bad integer {part!r}")
    if not values:
        raise DomainError(f"range {text!r} is empty")
    return sorted(values)


class ScanService:
    """Evaluates a (t, B) grid on a worker pool.

    Records come back t-major then B, whatever order the workers finish in;
    a single writer emits them.
    """

    def __init__(self, hypothesis_service: HypothesisService, export_service: ExportService, threads: int = 1):
        self.hypothesis_service = hypothesis_service
        self.export_service = export_service
        self.threads = max(1, threads)

    def _evaluate(self, item: Tuple[int, int]) -> ScanRecord:
        t, B = item
        return ScanRecord.from_verdict(self.hypothesis_service.evaluate_corollary(t, B))

    def records(self, ts: Sequence[int], bs: Sequence[int]) -> List[ScanRecord]:
        items = [(t, B) for t in ts for B in bs]
        if not items:
            raise DomainError("scan grid is empty")
        logger.info("scanning %d (t, B) pairs on %d thread(s)", len(items), self.threads)
        for t in ts:
            self.hypothesis_service.good_prime(t)
        if self.threads == 1:
            return [self._evaluate(i) for i in items]
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            return list(pool.map(self._evaluate, items))

    def write(self, ts: Sequence[int], bs: Sequence[int], stream: TextIO, fmt: str = 'jsonl') -> Dict[str, int]:
        if fmt not in FORMATS:
            raise DomainError(f"unknown scan format {fmt!r}")
        records = self.records(ts, bs)
        if fmt == 'csv':
            stream.write(self.export_service.csv_header())
        render = (self.export_service.render_csv_record if fmt == 'csv'
                  else self.export_service.render_jsonl_record)
        for record in records:
            stream.write(render(record))
        return self.summarize(records)

    @staticmethod
    def summarize(records: Sequence[ScanRecord]) -> Dict[str, int]:
        summary = {'records': len(records)}
        for r in records:
            summary[r.conclusion] = summary.get(r.conclusion, 0) + 1
        return summary
