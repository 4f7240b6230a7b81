#!/usr/bin/env python3
"""Default launcher for the nonbinary polar codec CLI."""

from nbpolar_cli import main


if __name__ == "__main__":
    raise SystemExit(main())
