"""Unit tests for ExportService"""

import csv
import json
from datetime import datetime, timezone
from io import StringIO

import pytest

from services.errors import DomainError
from services.export_service import (
    SCAN_FIELDS,
    SCHEMA_VERSION,
    Certificate,
    ExportService,
    ScanRecord,
    toolchain_versions,
)
from tests.fixtures.factories import ConditionFactory, HypothesisVerdictFactory


class TestExportService:
    """Test suite for ExportService"""

    @pytest.fixture
    def service(self):
        return ExportService()

    @pytest.fixture
    def certificate(self, service, hypothesis_service, search_service, frozen_time):
        verdict = hypothesis_service.evaluate_corollary(5, 3)
        evidence = search_service.consistency_check(5, 3, 20)
        return service.build_certificate(
            verdict, hypothesis_service.irregularity(5), evidence,
            inputs={'t': 5, 'B': 3, 'mode': 'corollary', 'full_scan': False, 'bound': 20},
        )

    # Test build_certificate
    def test_build_certificate(self, certificate):
        assert certificate.schema_version == SCHEMA_VERSION
        assert certificate.timestamp == '2024-01-08T10:00:00+00:00'
        assert certificate.assumptions == certificate.verdict.assumptions
        assert certificate.toolchain['flt-certify']

    def test_build_certificate_default_inputs(self, service):
        verdict = HypothesisVerdictFactory()
        cert = service.build_certificate(verdict, now=datetime(2024, 1, 1, tzinfo=timezone.utc))
        assert cert.inputs == {'t': 5, 'B': 3}
        assert cert.timestamp.startswith('2024-01-01')

    # Test render_json / parse_certificate
    def test_json_round_trip(self, service, certificate):
        text = service.render_json(certificate)
        assert service.parse_certificate(text) == certificate

    def test_json_is_canonical(self, service, certificate):
        text = service.render_json(certificate)
        data = json.loads(text)
        assert data['schema_version'] == '1'
        assert data['verdict']['conclusion'] == 'CorollaryHolds'
        assert list(data) == sorted(data)
        assert text == service.render_json(service.parse_certificate(text))

    def test_parse_rejects_garbage(self, service):
        with pytest.raises(DomainError):
            service.parse_certificate('not json')

    def test_parse_rejects_other_schema(self, service, certificate):
        data = json.loads(service.render_json(certificate))
        data['schema_version'] = '2'
        with pytest.raises(DomainError):
            service.parse_certificate(json.dumps(data))

    def test_parse_rejects_missing_keys(self, service):
        with pytest.raises(DomainError):
            service.parse_certificate(json.dumps({'schema_version': '1'}))

    # Test scan record rendering
    def test_jsonl_record(self, service, hypothesis_service):
        record = ScanRecord.from_verdict(hypothesis_service.evaluate_corollary(5, 7))
        line = service.render_jsonl_record(record)
        assert line.endswith('\n') and line.count('\n') == 1
        data = json.loads(line)
        assert data['first_failing_condition'] == 'nontrivial_fermat_quotient_divisor'
        assert data['failing_level'] == 'corollary'
        assert data['conclusion'] == 'TheoremHolds'

    def test_csv_record(self, service, hypothesis_service):
        record = ScanRecord.from_verdict(hypothesis_service.evaluate_corollary(5, 3))
        text = service.csv_header() + service.render_csv_record(record)
        rows = list(csv.DictReader(StringIO(text)))
        assert list(rows[0]) == SCAN_FIELDS
        assert rows[0]['first_failing_condition'] == ''
        assert rows[0]['assumptions'] == 't_prime_to_z_case'

    # Test render_text
    def test_render_text(self, service, certificate):
        text = service.render_text(certificate)
        assert 'conclusion: CorollaryHolds' in text
        assert '[ok  ] nontrivial_fermat_quotient_divisor' in text
        assert 'bounded search H=20: PASS' in text
        assert 'assumes:' in text

    def test_render_text_marks_failures(self, service):
        verdict = HypothesisVerdictFactory(conditions=(ConditionFactory(name='broken', holds=False),))
        text = service.render_text(service.build_certificate(verdict))
        assert '[FAIL] broken' in text

    # Test generate_pdf_certificate
    def test_generate_pdf(self, service, certificate):
        pdf = service.generate_pdf_certificate(certificate)
        assert pdf.startswith(b'%PDF')
        assert len(pdf) > 1000

    def test_generate_pdf_escapes_markup(self, service):
        verdict = HypothesisVerdictFactory(
            conditions=(ConditionFactory(evidence='ord(2 mod 5) < 4 & <b>'),))
        assert service.generate_pdf_certificate(service.build_certificate(verdict)).startswith(b'%PDF')

    # Test recheck_certificate
    def test_recheck_matches(self, service, certificate, hypothesis_service):
        assert service.recheck_certificate(certificate, hypothesis_service) == []

    def test_recheck_theorem_mode(self, service, hypothesis_service):
        verdict = hypothesis_service.evaluate_theorem(5, 2)
        cert = service.build_certificate(verdict, inputs={'t': 5, 'B': 2, 'mode': 'theorem'})
        assert service.recheck_certificate(cert, hypothesis_service) == []

    def test_recheck_detects_tampering(self, service, certificate, hypothesis_service):
        data = certificate.to_dict()
        data['verdict']['conditions'][-1]['holds'] = False
        data['verdict']['conclusion'] = 'TheoremHolds'
        tampered = Certificate.from_dict(data)
        differing = service.recheck_certificate(tampered, hypothesis_service)
        assert 'nontrivial_fermat_quotient_divisor' in differing
        assert 'conclusion' in differing


def test_toolchain_versions_lists_runtime_packages():
    versions = toolchain_versions()
    assert set(versions) >= {'flt-certify', 'python', 'click', 'gmpy2', 'reportlab'}
