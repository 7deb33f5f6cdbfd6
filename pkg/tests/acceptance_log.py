"""Shared record of acceptance outcomes, printed in the terminal summary."""

from contextlib import contextmanager

RESULTS = {}


@contextmanager
def criterion(number: int, description: str):
    try:
        yield
    except BaseException:
        RESULTS[number] = (False, description)
        print(f"criterion {number}: FAIL  {description}")
        raise
    RESULTS[number] = (True, description)
    print(f"criterion {number}: PASS  {description}")
