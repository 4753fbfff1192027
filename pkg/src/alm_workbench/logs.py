"""Progress lines on stderr and an opt-in debug file.

stdout is reserved for reports and .alm documents, so nothing here prints there.
"""

from __future__ import annotations

import sys
from datetime import datetime
from typing import TYPE_CHECKING

from alm_workbench import config

if TYPE_CHECKING:
    from alm_workbench.algebra import FiniteAlgebra


def _tagged(msg: str, alg: FiniteAlgebra | None) -> str:
    return f"{alg.name} (n={alg.n}): {msg}" if alg is not None else msg


def log(
    msg: str,
    *,
    alg: FiniteAlgebra | None = None,
    debug_only: bool = False,
    to_file: bool = False,
) -> None:
    """Timestamped line on stderr, mirrored to the debug file under ALM_DEBUG."""
    if debug_only and not config.DEBUG:
        return
    line = f"[{datetime.now():%H:%M:%S}] {_tagged(msg, alg)}"
    print(line, file=sys.stderr, flush=True)
    if to_file or config.DEBUG:
        _append(line)


def _append(line: str) -> None:
    try:
        config.DEBUG_LOG_PATH.parent.mkdir(parents=True, exist_ok=True)
        with open(config.DEBUG_LOG_PATH, "a", encoding="utf-8") as f:
            f.write(f"[{datetime.now():%Y-%m-%d %H:%M:%S}] {line}\n")
    except OSError:
        pass  # an unwritable log path never fails a run


def debug_log(msg: str, *, alg: FiniteAlgebra | None = None) -> None:
    """Debug file only; a no-op unless ALM_DEBUG is set."""
    if config.DEBUG:
        _append(_tagged(msg, alg))
