"""Wall-clock budgets shared by the long-running searches."""

import time


class Timeout(RuntimeError):
    """The configured time budget ran out."""


class Deadline:
    """A point in time after which :meth:`check` raises :class:`Timeout`.

    ``Deadline(None)`` never expires.
    """

    __slots__ = ("expires",)

    def __init__(self, seconds=None):
        self.expires = None if seconds is None else time.monotonic() + seconds

    def remaining(self):
        if self.expires is None:
            return float("inf")
        return self.expires - time.monotonic()

    def check(self):
        if self.expires is not None and time.monotonic() > self.expires:
            raise Timeout("time budget exhausted")


NEVER = Deadline(None)
