#!/usr/bin/env python3
"""
Entry point: ``python maxsub_cli.py member --alg '{...}' "y/t^3"``.
"""

from src.cli import main

if __name__ == "__main__":
    raise SystemExit(main())
