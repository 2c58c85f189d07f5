#!/usr/bin/env python3
"""Entry point for running the golden-pair CLI from a source checkout."""

from golden_pair.cli import main

if __name__ == "__main__":
    main()
