"""
Run configuration assembled from command options, with settings as defaults.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

from .algebra import FieldSpec, is_prime
from .conf import gonal_setting
from .errors import ConfigError, CurveError

logger = logging.getLogger(__name__)

SEED_LIMIT = 2 ** 64

# Django verbosity -> level of the 'curves' logger
VERBOSITY_LEVELS = {0: logging.ERROR, 1: logging.WARNING, 2: logging.INFO, 3: logging.DEBUG}


def parse_int_list(text: Optional[str], what: str) -> Optional[Tuple[int, ...]]:
    """"3,5,1" -> (3, 5, 1)"""
    if text is None:
        return None
    try:
        return tuple(int(part) for part in str(text).split(',') if part.strip() != '')
    except ValueError:
        raise ConfigError(f"{what} must be a comma-separated integer list, got {text!r}")


@dataclass(frozen=True)
class RunConfig:
    command: str
    p: Optional[int] = None
    e: int = 1
    modulus: Optional[Tuple[int, ...]] = None
    gamma: Optional[int] = None
    genus: Optional[int] = None
    seed: int = 0
    budget: int = 10000
    ext: Optional[int] = None
    ext_max: Optional[int] = None
    truncation_degree: int = 2
    trials: int = 0
    degrees: Optional[Tuple[int, ...]] = None
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    verbosity: int = 1
    jobs: int = 1
    as_json: bool = False

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise ConfigError(f"p must be prime, got {self.p}")
        if self.e < 1:
            raise ConfigError(f"e must be at least 1, got {self.e}")
        if self.gamma is not None and self.gamma < 2:
            raise ConfigError(f"gamma must be at least 2, got {self.gamma}")
        if self.genus is not None and self.genus < 2 and self.command == 'construct':
            raise ConfigError(f"genus must be at least 2, got {self.genus}")
        if not 0 <= self.seed < SEED_LIMIT:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.budget < 1:
            raise ConfigError(f"budget must be positive, got {self.budget}")
        for name in ('ext', 'ext_max'):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ConfigError(f"{name} must be at least 1, got {value}")
        if self.truncation_degree < 1:
            raise ConfigError(f"truncation degree must be at least 1, got {self.truncation_degree}")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be at least 1, got {self.jobs}")
        if self.degrees is not None and any(d < 0 for d in self.degrees):
            raise ConfigError(f"degrees must be nonnegative, got {list(self.degrees)}")

    @classmethod
    def from_options(cls, command: str, options: Dict[str, Any]) -> 'RunConfig':
        def pick(name, setting=None, default=None):
            value = options.get(name)
            if value is None and setting is not None:
                value = gonal_setting(setting)
            return default if value is None else value

        config = cls(
            command=command,
            p=options.get('p'),
            e=pick('e', default=1),
            modulus=parse_int_list(options.get('modulus'), "modulus"),
            gamma=options.get('gamma'),
            genus=options.get('genus'),
            seed=pick('seed', 'GONAL_DEFAULT_SEED', 0),
            budget=pick('budget', 'GONAL_DEFAULT_BUDGET', 10000),
            ext=options.get('ext'),
            ext_max=options.get('ext_max'),
            truncation_degree=pick('max_prime_degree', 'GONAL_TRUNCATION_DEGREE', 2),
            trials=pick('trials', default=0),
            degrees=parse_int_list(options.get('d'), "degree list"),
            input_path=options.get('cert'),
            output_path=options.get('out'),
            verbosity=pick('verbosity', default=1),
            jobs=pick('jobs', 'GONAL_JOBS', 1),
            as_json=bool(options.get('json')),
        )
        logger.debug(f"Run configuration: {config}")
        return config

    def require(self, *names: str) -> None:
        missing = [name for name in names if getattr(self, name) is None]
        if missing:
            raise ConfigError(f"{self.command} needs {', '.join('--' + m.replace('_', '-') for m in missing)}")

    def field_spec(self) -> FieldSpec:
        self.require('p')
        try:
            return FieldSpec.create(self.p, self.e, self.modulus)
        except CurveError as e:
            raise ConfigError(f"invalid field F_{self.p}^{self.e}: {e.message}")

    @property
    def log_level(self) -> int:
        return VERBOSITY_LEVELS.get(self.verbosity, logging.DEBUG)
