"""JSON serialization with floats rendered at 17 significant digits.

Seventeen significant digits preserve IEEE doubles exactly across a text
round trip, so reports are reproducible byte for byte.
"""

import json
from json import encoder as _encoder

import numpy as np


class ReportEncoder(json.JSONEncoder):
    def default(self, obj):
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return float(obj)
        if isinstance(obj, np.bool_):
            return bool(obj)
        return super().default(obj)

    def iterencode(self, o, _one_shot=False):
        markers = {} if self.check_circular else None

        def floatstr(f, _inf=float("inf")):
            if f != f or f == _inf or f == -_inf:
                raise ValueError(f"refusing to serialize non-finite float {f!r}")
            return format(f, ".17g")

        indent = self.indent
        if indent is not None and not isinstance(indent, str):
            indent = " " * indent
        iterencode = _encoder._make_iterencode(
            markers,
            self.default,
            _encoder.encode_basestring_ascii,
            indent,
            floatstr,
            self.key_separator,
            self.item_separator,
            self.sort_keys,
            self.skipkeys,
            _one_shot=False,
        )
        return iterencode(o, 0)


def dumps(obj) -> str:
    return json.dumps(obj, cls=ReportEncoder, indent=2)


def dump(obj, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))
        fh.write("\n")
