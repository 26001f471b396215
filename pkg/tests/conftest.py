"""Shared test configuration.

The stage game recurses once per played move, so deep instances need more
headroom than CPython's default recursion limit; the CLI raises the limit
the same way before running. The value stays low enough that hitting it
raises RecursionError cleanly rather than exhausting the C stack.
"""

import sys

sys.setrecursionlimit(10_000)
