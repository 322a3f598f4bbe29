"""`python -m rmflab` dispatches to the campaign CLI."""

from .harness.cli import main

if __name__ == "__main__":
    raise SystemExit(main())
