#!/usr/bin/env python3
from commands import create_cli

cli = create_cli()

if __name__ == '__main__':
    cli(prog_name='flt-certify')
