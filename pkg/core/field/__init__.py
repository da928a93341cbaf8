"""有限域与多项式哈希模块"""

from .gf2m import FieldOpCounter, Gf2mField, field_new, gf_mul, gf_mul_array
from .poly_hash import PolyHash, hash_eval, hash_new

__all__ = [
    'Gf2mField',
    'FieldOpCounter',
    'PolyHash',
    'field_new',
    'gf_mul',
    'gf_mul_array',
    'hash_eval',
    'hash_new',
]
