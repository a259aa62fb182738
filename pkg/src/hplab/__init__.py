"""Numerics for the eta-kernel eigenfunctions F_rho attached to zeta zeros.

Modules, bottom up: ``quadrature`` and ``complex_special`` (self-contained
numerics), ``zeta_zeros`` (the embedded zero table), ``eta_kernel``,
``eigenfunctions``, ``delta_mollifier``, ``reconstruction`` and ``cli``.
"""

__version__ = "0.1.0"
