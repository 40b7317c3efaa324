"""
Run the qubit-geometry command-line tool from a source checkout

Usage: python run.py <eval|sweep|verify|compare-random> [options]
"""
import os
import sys

# Add project to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from qubit_geometry.main import main


if __name__ == '__main__':
    sys.exit(main())
