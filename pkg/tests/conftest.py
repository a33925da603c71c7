"""
Pytest configuration and shared fixtures for all tests.
"""
import os
import sys

import pytest
from click.testing import CliRunner
from freezegun import freeze_time

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from app import create_app
from commands import create_cli
from config import TestingConfig
from services.bernoulli_service import BernoulliService
from services.export_service import ExportService
from services.hypothesis_service import HypothesisService
from services.search_service import SearchService


@pytest.fixture(scope='session')
def app():
    """Create an app wired with the testing configuration."""
    return create_app(TestingConfig)


@pytest.fixture(scope='session')
def cli():
    """The click group, built against the testing configuration."""
    return create_cli(TestingConfig)


@pytest.fixture(scope='function')
def runner():
    """Create a test runner for the click commands."""
    return CliRunner(mix_stderr=False)


@pytest.fixture(scope='session')
def bernoulli_service():
    """Shared so the exact-value memo and good-prime verdicts are computed once."""
    return BernoulliService()


@pytest.fixture(scope='session')
def hypothesis_service(bernoulli_service):
    return HypothesisService(bernoulli_service)


@pytest.fixture
def search_service(hypothesis_service):
    return SearchService(hypothesis_service, threads=1)


@pytest.fixture
def export_service():
    return ExportService()


@pytest.fixture
def frozen_time():
    """Freeze time for consistent certificate timestamps."""
    with freeze_time("2024-01-08 10:00:00") as frozen:
        yield frozen


# Markers for test categorization
def pytest_configure(config):
    """Register custom markers."""
    config.addinivalue_line("markers", "unit: Unit tests")
    config.addinivalue_line("markers", "integration: Integration tests")
    config.addinivalue_line("markers", "e2e: Certify, verify and scan workflows")
    config.addinivalue_line("markers", "performance: Arithmetic and search benchmarks")
    config.addinivalue_line("markers", "slow: Irregular-prime scans and full self-test runs")
