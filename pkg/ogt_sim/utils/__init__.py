"""
Utility modules
"""

from .storage import (
    format_float,
    read_edges,
    read_gossip_matrix,
    read_matrix,
    read_snapshot,
    write_edges,
    write_matrix,
    write_snapshot,
)

__all__ = [
    'format_float',
    'read_edges',
    'read_gossip_matrix',
    'read_matrix',
    'read_snapshot',
    'write_edges',
    'write_matrix',
    'write_snapshot',
]
