#!/usr/bin/env python
"""Format and lint the workspace with ruff"""

import subprocess
import sys
from pathlib import Path

PROJECT_ROOT = Path(__file__).parent.parent
STEPS = [
    (['ruff', 'format', '.'], 'Formatting'),
    (['ruff', 'check', '--fix', '.'], 'Linting and fixing'),
]


def run_step(cmd: list[str], title: str) -> bool:
    print(f'\n== {title}: {" ".join(cmd)}')
    try:
        subprocess.run(cmd, check=True, cwd=PROJECT_ROOT)
    except subprocess.CalledProcessError as e:
        print(f'error: {cmd[0]} exited with {e.returncode}', file=sys.stderr)
        return False
    except FileNotFoundError:
        print(f"error: '{cmd[0]}' not found, install the dev group first", file=sys.stderr)
        return False
    return True


def main() -> int:
    for cmd, title in STEPS:
        if not run_step(cmd, title):
            return 1
    print('\nDone.')
    return 0


if __name__ == '__main__':
    sys.exit(main())
