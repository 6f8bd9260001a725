import operator
import os

DEFAULT_M_CAP = 12
M_CAP_ENV = "TELECLONE_M_CAP"


def m_cap() -> int:
    """Largest copy count accepted; overridable through ``TELECLONE_M_CAP``."""
    raw = os.environ.get(M_CAP_ENV)
    if raw is None or raw == "":
        return DEFAULT_M_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{M_CAP_ENV}={raw!r} is not an integer") from None
    if cap < 1:
        raise ValueError(f"{M_CAP_ENV} must be >= 1, got {cap}")
    return cap


def check_m(m: int, lo: int = 1) -> int:
    cap = m_cap()
    if isinstance(m, bool):
        raise TypeError("copy count must be an int, got bool")
    m = operator.index(m)
    if not lo <= m <= cap:
        raise ValueError(f"copy count m={m} outside [{lo}, {cap}]")
    return m
