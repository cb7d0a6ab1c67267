#!/usr/bin/env python
"""Extract, update and compile the CLI translations with pybabel"""

import subprocess
import sys
from pathlib import Path

ROOT_DIR = Path(__file__).parent.parent
SRC_DIR = ROOT_DIR / 'packages' / 'netfig_cli' / 'src'
LOCALES_DIR = SRC_DIR / 'netfig_cli' / 'locales'
BABEL_CFG = ROOT_DIR / 'babel.cfg'
POT_FILE = ROOT_DIR / 'messages.pot'
DOMAIN = 'netfig'
LANGUAGES = ['zh_CN', 'en_US']


def pybabel(*args: str):
    cmd = ['pybabel', *args]
    print(f'$ {" ".join(cmd)}')
    try:
        subprocess.run(cmd, check=True)
    except subprocess.CalledProcessError as e:
        print(f'error: {e}', file=sys.stderr)
        sys.exit(1)


def main():
    LOCALES_DIR.mkdir(parents=True, exist_ok=True)

    print('\n[1/3] extract')
    pybabel('extract', '-F', str(BABEL_CFG), '-o', str(POT_FILE), str(SRC_DIR))

    print('\n[2/3] init / update catalogs')
    for lang in LANGUAGES:
        po_file = LOCALES_DIR / lang / 'LC_MESSAGES' / f'{DOMAIN}.po'
        if po_file.exists():
            pybabel('update', '-i', str(POT_FILE), '-d', str(LOCALES_DIR), '-l', lang, '-D', DOMAIN)
        else:
            pybabel('init', '-i', str(POT_FILE), '-d', str(LOCALES_DIR), '-l', lang, '-D', DOMAIN)

    print('\n[3/3] compile')
    pybabel('compile', '-d', str(LOCALES_DIR), '-D', DOMAIN)


if __name__ == '__main__':
    main()
