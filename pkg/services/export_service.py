import csv
import json
import platform
from dataclasses import dataclass, field
from datetime import datetime, timezone
from importlib.metadata import PackageNotFoundError, version
from io import BytesIO, StringIO
from typing import Dict, List, Optional, Tuple
from xml.sax.saxutils import escape

from reportlab.lib import colors
from reportlab.lib.pagesizes import letter
from reportlab.lib.styles import getSampleStyleSheet
from reportlab.lib.units import inch
from reportlab.platypus import Paragraph, SimpleDocTemplate, Spacer, Table, TableStyle

from services.bernoulli_service import Assumption, IrregularityReport
from services.errors import DomainError
from services.hypothesis_service import HypothesisService, HypothesisVerdict
from services.search_service import ConsistencyReport

SCHEMA_VERSION = '1'
PACKAGE_NAME = 'flt-certify'
PACKAGE_VERSION = '1.0.0'

SCAN_FIELDS = ['t', 'B', 'conclusion', 'first_failing_condition', 'failing_level',
               'good_prime_branch', 'assumptions']


def _installed(dist: str) -> Optional[str]:
    try:
        return version(dist)
    except PackageNotFoundError:
        return None


def toolchain_versions() -> Dict[str, Optional[str]]:
    versions = {PACKAGE_NAME: PACKAGE_VERSION, 'python': platform.python_version()}
    for dist in ('click', 'gmpy2', 'reportlab'):
        versions[dist] = _installed(dist)
    return versions


@dataclass(frozen=True)
class Certificate:
    schema_version: str
    timestamp: str
    inputs: dict
    verdict: HypothesisVerdict
    irregularity: Optional[IrregularityReport]
    search_evidence: Optional[ConsistencyReport]
    assumptions: Tuple[Assumption, ...] = field(default_factory=tuple)
    toolchain: dict = field(default_factory=dict)

    def to_dict(self) -> Dict:
        return {
            'schema_version': self.schema_version,
            'timestamp': self.timestamp,
            'inputs': dict(self.inputs),
            'verdict': self.verdict.to_dict(),
            'irregularity': self.irregularity.to_dict() if self.irregularity else None,
            'search_evidence': self.search_evidence.to_dict() if self.search_evidence else None,
            'assumptions': [a.to_dict() for a in self.assumptions],
            'toolchain': dict(self.toolchain),
        }

    @classmethod
    def from_dict(cls, data: Dict) -> 'Certificate':
        if data.get('schema_version') != SCHEMA_VERSION:
            raise DomainError(f"unsupported certificate schema {data.get('schema_version')!r}")
        verdict = HypothesisVerdict.from_dict(data['verdict'])
        irregularity = data.get('irregularity')
        evidence = data.get('search_evidence')
        return cls(
            schema_version=data['schema_version'],
            timestamp=data['timestamp'],
            inputs=dict(data['inputs']),
            verdict=verdict,
            irregularity=IrregularityReport.from_dict(irregularity) if irregularity else None,
            search_evidence=(
                ConsistencyReport.from_dict(evidence, verdict.t, verdict.B) if evidence else None
            ),
            assumptions=tuple(Assumption.from_dict(a) for a in data.get('assumptions', [])),
            toolchain=dict(data.get('toolchain', {})),
        )


@dataclass(frozen=True)
class ScanRecord:
    t: int
    B: int
    conclusion: str
    first_failing_condition: Optional[str]
    failing_level: Optional[str]
    good_prime_branch: Optional[str]
    assumptions: Tuple[str, ...] = ()

    @classmethod
    def from_verdict(cls, verdict: HypothesisVerdict) -> 'ScanRecord':
        failure = verdict.first_failure()
        return cls(
            t=verdict.t,
            B=verdict.B,
            conclusion=verdict.conclusion.value,
            first_failing_condition=failure.name if failure else None,
            failing_level=failure.level if failure else None,
            good_prime_branch=verdict.good_prime_branch,
            assumptions=tuple(a.name for a in verdict.assumptions),
        )

    def to_dict(self) -> Dict:
        return {
            't': self.t,
            'B': self.B,
            'conclusion': self.conclusion,
            'first_failing_condition': self.first_failing_condition,
            'failing_level': self.failing_level,
            'good_prime_branch': self.good_prime_branch,
            'assumptions': list(self.assumptions),
        }


class ExportService:
    def build_certificate(
        self,
        verdict: HypothesisVerdict,
        irregularity: Optional[IrregularityReport] = None,
        search_evidence: Optional[ConsistencyReport] = None,
        inputs: Optional[Dict] = None,
        now: Optional[datetime] = None,
    ) -> Certificate:
        now = now or datetime.now(timezone.utc)
        return Certificate(
            schema_version=SCHEMA_VERSION,
            timestamp=now.isoformat(),
            inputs=inputs or {'t': verdict.t, 'B': verdict.B},
            verdict=verdict,
            irregularity=irregularity,
            search_evidence=search_evidence,
            assumptions=verdict.assumptions,
            toolchain=toolchain_versions(),
        )

    def render_json(self, certificate: Certificate) -> str:
        return json.dumps(certificate.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + '\n'

    def parse_certificate(self, text: str) -> Certificate:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise DomainError(f"certificate is not valid JSON: {e}")
        try:
            return Certificate.from_dict(data)
        except (KeyError, TypeError, ValueError) as e:
            raise DomainError(f"malformed certificate: {e}")

    def render_jsonl_record(self, record: ScanRecord) -> str:
        return json.dumps(record.to_dict(), sort_keys=True, separators=(',', ':')) + '\n'

    def csv_header(self) -> str:
        output = StringIO()
        csv.writer(output, lineterminator='\n').writerow(SCAN_FIELDS)
        return output.getvalue()

    def render_csv_record(self, record: ScanRecord) -> str:
        row = record.to_dict()
        row['assumptions'] = ';'.join(row['assumptions'])
        output = StringIO()
        csv.writer(output, lineterminator='\n').writerow(
            ['' if row[f] is None else row[f] for f in SCAN_FIELDS]
        )
        return output.getvalue()

    def render_text(self, certificate: Certificate) -> str:
        v = certificate.verdict
        lines = [
            f"X^{v.t} + Y^{v.t} = {v.B}·Z^{v.t}",
            f"conclusion: {v.conclusion.value}: {v.statement}",
            '',
        ]
        for c in v.conditions:
            mark = 'ok  ' if c.holds else 'FAIL'
            lines.append(f"  [{mark}] {c.name} ({c.level}): {c.evidence}")
        if certificate.search_evidence:
            ev = certificate.search_evidence
            lines.append('')
            lines.append(f"bounded search H={ev.H}: {ev.status}, {len(ev.solutions)} solution(s) in the box")
            for s in ev.solutions:
                lines.append(f"  {s.as_tuple()}  t | Z: {s.t_divides_Z}")
        for a in certificate.assumptions:
            lines.append(f"assumes: {a.statement} [{a.source}]")
        return '\n'.join(lines) + '\n'

    def generate_pdf_certificate(self, certificate: Certificate) -> bytes:
        buffer = BytesIO()
        doc = SimpleDocTemplate(buffer, pagesize=letter,
                                leftMargin=0.75 * inch,
                                rightMargin=0.75 * inch,
                                topMargin=0.75 * inch,
                                bottomMargin=0.75 * inch)
        styles = getSampleStyleSheet()
        v = certificate.verdict
        elements = [
            Paragraph(f"Insolvability certificate for X<super>{v.t}</super> + Y<super>{v.t}</super> "
                      f"= {v.B}&middot;Z<super>{v.t}</super>", styles['Title']),
            Paragraph(f"Conclusion: <b>{v.conclusion.value}</b> &mdash; {escape(v.statement)}", styles['Normal']),
            Paragraph(f"Generated {certificate.timestamp}, schema {certificate.schema_version}",
                      styles['Normal']),
            Spacer(1, 0.2 * inch),
        ]

        data = [['Condition', 'Level', 'Holds', 'Evidence']]
        for c in v.conditions:
            data.append([c.name, c.level, 'yes' if c.holds else 'NO',
                         Paragraph(escape(c.evidence), styles['BodyText'])])
        table = Table(data, colWidths=[2.0 * inch, 0.8 * inch, 0.6 * inch, 3.6 * inch], hAlign='LEFT')
        table.setStyle(TableStyle([
            ('BACKGROUND', (0, 0), (-1, 0), colors.grey),
            ('TEXTCOLOR', (0, 0), (-1, 0), colors.whitesmoke),
            ('FONTNAME', (0, 0), (-1, 0), 'Helvetica-Bold'),
            ('FONTSIZE', (0, 0), (-1, -1), 8),
            ('VALIGN', (0, 0), (-1, -1), 'TOP'),
            ('GRID', (0, 0), (-1, -1), 0.5, colors.black),
        ]))
        elements.append(table)

        if certificate.search_evidence:
            ev = certificate.search_evidence
            elements.append(Spacer(1, 0.2 * inch))
            elements.append(Paragraph(
                f"Bounded search, max(|X|, |Y|) &le; {ev.H}: {ev.status}; "
                f"{len(ev.solutions)} solution(s) in the box. {escape(ev.note)}", styles['Normal']))

        if certificate.assumptions:
            elements.append(Spacer(1, 0.2 * inch))
            elements.append(Paragraph('Assumptions imported from the literature', styles['Heading3']))
            for a in certificate.assumptions:
                elements.append(Paragraph(f"&ldquo;{escape(a.statement)}&rdquo; ({escape(a.source)})", styles['BodyText']))

        doc.build(elements)
        buffer.seek(0)
        return buffer.getvalue()

    def recheck_certificate(
        self, certificate: Certificate, hypothesis_service: HypothesisService,
    ) -> List[str]:
        """Re-evaluate the recorded inputs; returns the names of rows that differ."""
        v = certificate.verdict
        if certificate.inputs.get('mode') == 'theorem':
            fresh = hypothesis_service.evaluate_theorem(v.t, v.B)
        else:
            fresh = hypothesis_service.evaluate_corollary(v.t, v.B)
        if fresh == v:
            return []
        recorded = {c.name: c for c in v.conditions}
        recomputed = {c.name: c for c in fresh.conditions}
        differing = sorted(n for n in recorded.keys() | recomputed.keys()
                           if recorded.get(n) != recomputed.get(n))
        if fresh.conclusion != v.conclusion:
            differing.append('conclusion')
        if fresh.assumptions != v.assumptions:
            differing.append('assumptions')
        return differing or ['verdict']
