"""Exact analyzer for Drinfeld F_p[t]-modules over k((pi)).

The heavy lifting lives in the _drinfeld extension; this wrapper adds a
JSON-decoding convenience so callers get dicts instead of report strings.
"""

import json as _json

from ._drinfeld import DrinfeldError, run

__all__ = ["DrinfeldError", "run", "run_json"]


def run_json(command, document, **kwargs):
    """Like run(), but parses the JSON report into a dict."""
    if not isinstance(document, str):
        document = _json.dumps(document)
    return _json.loads(run(command, document, **kwargs))
