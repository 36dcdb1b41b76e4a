#!/usr/bin/env python3
"""Fails when the committed frozen values no longer match a fresh oracle run."""
import subprocess
import sys

fresh = subprocess.run([sys.executable, sys.argv[1]], check=True, capture_output=True, text=True).stdout
with open(sys.argv[2]) as f:
    kept = f.read()
if fresh != kept:
    print("frozen_values.inc differs from a fresh oracle run")
    sys.exit(1)
print("frozen values reproduced")
