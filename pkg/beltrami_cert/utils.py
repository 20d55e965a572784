from typing import Any, Callable, Iterable, TypeVar
from concurrent.futures import ProcessPoolExecutor
from functools import cache
import os

from viaa.configuration import ConfigParser
from viaa.observability import logging

T = TypeVar("T")
R = TypeVar("R")

THREADS_ENV = "BELTRAMI_CERT_THREADS"


class CertifierError(Exception): ...


class DomainError(CertifierError): ...


class VerificationError(CertifierError): ...


class BranchError(CertifierError): ...


class CoverError(CertifierError): ...


class PrecisionError(CertifierError): ...


class ConfigError(CertifierError): ...


class StageFailure(CertifierError):
    """
    A pipeline stage that did not pass its checks.
    """

    def __init__(self, stage: str, message: str):
        super().__init__(f"failed({stage}): {message}")
        self.stage = stage
        self.message = message

    def to_dict(self) -> dict[str, Any]:
        return {"status": "failed", "stage": self.stage, "message": self.message}


@cache
def get_logger(name: str):
    return logging.get_logger(name, config=ConfigParser())


def fibonacci(n: int) -> int:
    """Return the n-th golden mean return time q_n, with q_0 = q_1 = 1."""
    if n < 0:
        raise DomainError(f"Fibonacci index must be nonnegative, got {n}.")
    a, b = 1, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def resolve_workers(threads: int | None = None) -> int:
    """
    Worker count: the environment variable wins over the flag, the flag over the
    hardware default.
    """
    env_value = os.environ.get(THREADS_ENV)
    if env_value is not None:
        try:
            threads = int(env_value)
        except ValueError:
            raise ConfigError(f"{THREADS_ENV} must be an integer, got '{env_value}'.")
    if threads is None:
        threads = os.cpu_count() or 1
    if threads < 1:
        raise ConfigError(f"Worker count must be positive, got {threads}.")
    return threads


def parallel_map(
    fn: Callable[[T], R], items: Iterable[T], workers: int = 1, chunksize: int = 1
) -> list[R]:
    """
    Map `fn` over `items`, in worker processes when `workers` > 1.

    Results are returned in input order, so reductions over them do not depend
    on the worker count.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items, chunksize=chunksize))
