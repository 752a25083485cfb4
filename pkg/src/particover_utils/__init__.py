from .io import (append_record, lookup_record, load_records, save_certificate, load_certificate,
                 certificate_path, save_parquet, load_parquet)
from .environment import (validate_environment, get_cache_path, get_budget_seconds, get_max_nodes,
                          get_threads, get_max_order, get_run_id)
from .testing import validate
from . import debug

__all__ = [
    'append_record', 'lookup_record', 'load_records', 'save_certificate', 'load_certificate',
    'certificate_path', 'save_parquet', 'load_parquet',
    'validate_environment', 'get_cache_path', 'get_budget_seconds', 'get_max_nodes',
    'get_threads', 'get_max_order', 'get_run_id',
    'validate',
]
