"""radix-census: exact radix expansions, digit censuses and Stoneham-number digit checks.

The math lives in flat modules (``radix_core``, ``census``, ``stoneham``,
``conjectures``, ``mahler_series``). ``cli`` is the console-script entry point;
the import of the app module is deferred into the call so ``import radix_census``
does not load the report stack (jsonschema, markdown, xhtml2pdf).
"""


def cli():
    import sys

    from .app import main

    sys.exit(main())
