import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

PERFORMANCE_CONFIG = {
    'element_budget': 2_000_000,
    'table_limit': 4096,             # largest order with a stored multiplication table
    'exhaustive_axiom_limit': 512,
    'axiom_samples': 10_000,
    'axiom_seed': 0xA5,
    'complement_candidates': 10_000,
    'max_split_primes': 5,
    'product_orthogonality_limit': 32,  # product tables with more classes rely on their factors
    'table_order_budget': 1_000_000,
    'encoding_budget': 5_000_000,
    'structure_realize_limit': 100_000,
    'cross_check_samples': 20,
    'memory_threshold': 2048,        # MB
}

CACHE_CONFIG = {
    'env_var': 'GALCONJ_CACHE',
    'default_dir': '.galconj-cache',
}


@dataclass(frozen=True)
class Settings:
    """Runtime settings resolved from the environment."""
    cache_dir: Path
    element_budget: int
    log_level: str


def load_settings(dotenv_path: Optional[str] = None) -> Settings:
    load_dotenv(dotenv_path=dotenv_path, override=False)
    cache_dir = os.environ.get(CACHE_CONFIG['env_var']) or CACHE_CONFIG['default_dir']
    budget = os.environ.get('GALCONJ_ELEMENT_BUDGET')
    try:
        element_budget = int(budget) if budget else PERFORMANCE_CONFIG['element_budget']
    except ValueError:
        element_budget = PERFORMANCE_CONFIG['element_budget']
    return Settings(
        cache_dir=Path(cache_dir),
        element_budget=element_budget,
        log_level=os.environ.get('GALCONJ_LOG_LEVEL', 'WARNING').upper(),
    )
