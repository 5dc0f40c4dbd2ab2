"""Backend selection for the hot kernels.

The compiled Cython module is used when it was built; otherwise the
pure-Python module with identical semantics is used. ``use_backend`` switches
explicitly (the benchmark and the equivalence tests rely on it).
"""

from coinpurse import _pykernels

try:
    from coinpurse import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["compiled"] = _ckernels

_active = "compiled" if _ckernels is not None else "python"


def backend() -> str:
    return _active


def use_backend(name: str) -> None:
    global _active
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}")
    _active = name


def select_payments(wallets, prices, denoms, favor_many=False):
    return BACKENDS[_active].select_payments(wallets, prices, denoms, favor_many)


def min_average_search(num_denominations, modulus):
    return BACKENDS[_active].min_average_search(num_denominations, modulus)
