"""Allow ``python -m radix_census`` to run the command-line tool."""

from . import cli

if __name__ == "__main__":
    cli()
