import logging
import os

logger = logging.getLogger(__name__)


def _threads_from_env():
    raw = os.environ.get('FLT_CERT_THREADS')
    if raw:
        try:
            threads = int(raw)
        except ValueError:
            logger.warning("ignoring FLT_CERT_THREADS=%r: not an integer", raw)
        else:
            if threads >= 1:
                return threads
            logger.warning("ignoring FLT_CERT_THREADS=%r: must be >= 1", raw)
    return os.cpu_count() or 1


class Config:
    EXACT_BERNOULLI_CAP = 2000
    VANDIVER_BOUND = 7_000_000
    BERNOULLI_CUBE_BOUND = 12_000_000
    FULL_SCAN = False

    SELFTEST_T_MAX = 13
    SELFTEST_SEED = 20240613
    COFACTOR_SAMPLES = 500
    ALPHA_SAMPLES = 200
    SAMPLE_BOUND = 100

    THREADS = _threads_from_env()

    LOG_LEVEL = os.environ.get('FLT_CERT_LOG_LEVEL', 'WARNING')
    LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


class TestingConfig(Config):
    THREADS = 1
    LOG_LEVEL = 'DEBUG'
