import math
import os
import re
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

import numpy as np
from scipy.special import entr

from etapairing.constants import FLOAT_DIGITS

T = TypeVar("T")
R = TypeVar("R")

angle_regex = re.compile(r"^\s*([+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\s*\*?\s*pi\s*$")


def shannon_entropy(probabilities: Iterable[float]) -> float:
    """
    Shannon entropy in nats, with 0·ln 0 taken as 0.

    :param probabilities: a probability distribution
    :return: -Σ p ln p
    """
    p = np.asarray(list(probabilities), dtype=float)
    return float(np.sum(entr(p)))


def binary_entropy(p: float) -> float:
    return shannon_entropy((p, 1.0 - p))


def parallel_map(
    fn: Callable[[T], R], items: Sequence[T], threads: int | None = None
) -> list[R]:
    """
    Maps ``fn`` over ``items`` with a thread pool, keeping input order. numpy and
    scipy release the GIL inside their kernels, which is where these maps spend
    their time.

    :param fn: function of one argument
    :param items: inputs
    :param threads: worker count; ``None`` means one per CPU, 1 runs inline
    :return: results in the order of ``items``
    """
    if threads is None:
        threads = os.cpu_count() or 1
    if threads < 1:
        raise ValueError(f"threads must be at least 1, got {threads}")
    if threads == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(threads, len(items))) as executor:
        return list(executor.map(fn, items))


def format_float(value: float, digits: int = FLOAT_DIGITS) -> str:
    """
    Formats a float with a fixed number of significant digits. Negative zero is
    written as ``0`` so equal results print identically.
    """
    if value == 0:
        return "0"
    return format(value, f".{digits}g")


def parse_angle(text: str) -> float:
    """
    Parses an angle in radians: a plain float (``1.5``) or a multiple of pi
    (``pi``, ``0.5pi``, ``-2*pi``).

    :param text: the angle as typed on a command line
    :return: angle in radians
    """
    match = angle_regex.match(text.lower())
    if match:
        factor = match.group(1) or ""
        if factor in ("", "+"):
            return math.pi
        if factor == "-":
            return -math.pi
        return float(factor) * math.pi
    return float(text)
