import logging
import sys

from config import Config
from services.bernoulli_service import BernoulliService
from services.export_service import ExportService
from services.hypothesis_service import HypothesisService
from services.scan_service import ScanService
from services.search_service import SearchService
from services.selftest_service import SelftestService


class App:
    """Holds configuration and the wired services for one invocation."""

    def __init__(self, config):
        self.config = config
        self.logger = logging.getLogger('flt_certify')

        self.bernoulli = BernoulliService(
            exact_cap=config['EXACT_BERNOULLI_CAP'],
            vandiver_bound=config['VANDIVER_BOUND'],
            cube_bound=config['BERNOULLI_CUBE_BOUND'],
        )
        self.hypotheses = HypothesisService(self.bernoulli, full_scan=config['FULL_SCAN'])
        self.search = SearchService(self.hypotheses, threads=config['THREADS'])
        self.export = ExportService()
        self.scan = ScanService(self.hypotheses, self.export, threads=config['THREADS'])
        self.selftest = SelftestService(
            seed=config['SELFTEST_SEED'],
            cofactor_samples=config['COFACTOR_SAMPLES'],
            alpha_samples=config['ALPHA_SAMPLES'],
            sample_bound=config['SAMPLE_BOUND'],
        )


def load_config(config_class=Config, **overrides):
    config = {key: getattr(config_class, key) for key in dir(config_class) if key.isupper()}
    config.update({k: v for k, v in overrides.items() if v is not None})
    return config


def create_app(config_class=Config, **overrides):
    config = load_config(config_class, **overrides)

    # Configure logging; stdout stays reserved for command output
    logging.basicConfig(
        level=getattr(logging, str(config['LOG_LEVEL']).upper(), logging.WARNING),
        format=config['LOG_FORMAT'],
        stream=sys.stderr,
    )

    app = App(config)
    app.logger.debug("app created with threads=%s exact_cap=%s",
                     config['THREADS'], config['EXACT_BERNOULLI_CAP'])
    return app
