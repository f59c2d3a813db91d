"""Module entry point: ``python -m modcurve``."""

from modcurve.cli import main

if __name__ == "__main__":
    raise SystemExit(main())
