"""Kernel backend selection: compiled extension when available, numpy
fallback otherwise. Set FEEDSIM_PURE_PYTHON=1 to force the fallback."""

import os

from . import py_kernels

if os.environ.get("FEEDSIM_PURE_PYTHON") == "1":
    backend = py_kernels
else:
    try:
        from . import _fastkin as backend  # type: ignore[no-redef]
    except ImportError:
        backend = py_kernels

BACKEND_NAME = backend.BACKEND_NAME

link_matrix = backend.link_matrix
chain_transform = backend.chain_transform
fk_position = backend.fk_position
jacobian_central = backend.jacobian_central
fk_positions_batch = backend.fk_positions_batch
